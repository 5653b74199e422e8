//! Shipped knot fixtures.
//!
//! One knot per file, line oriented: `name`, `encoding` (braid | pd |
//! wirtinger), `data`, `provenance`, `calibration`. The built-in set is
//! compiled in; the directory can be overridden with the
//! `KNOTCOLOUR_FIXTURES` environment variable.

use super::braid::{BraidSymmetry, BraidWord};
use super::pd::PdCode;
use super::WirtingerCode;
use crate::error::Error;

/// Knot symmetry variants. Obversion is the mirror image, reversion
/// flips the knot's orientation, inversion is both.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KnotSymmetry {
    Identity,
    Inverse,
    Obverse,
    Reverse,
}

impl KnotSymmetry {
    pub const ALL: [KnotSymmetry; 4] = [
        KnotSymmetry::Identity,
        KnotSymmetry::Inverse,
        KnotSymmetry::Obverse,
        KnotSymmetry::Reverse,
    ];

    pub fn parse(text: &str) -> Result<Self, Error> {
        match text.trim() {
            "id" | "identity" => Ok(KnotSymmetry::Identity),
            "inv" | "inverse" => Ok(KnotSymmetry::Inverse),
            "obv" | "obverse" => Ok(KnotSymmetry::Obverse),
            "rev" | "reverse" => Ok(KnotSymmetry::Reverse),
            other => Err(Error::Parse(format!("unknown symmetry {:?}", other))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            KnotSymmetry::Identity => "id",
            KnotSymmetry::Inverse => "inv",
            KnotSymmetry::Obverse => "obv",
            KnotSymmetry::Reverse => "rev",
        }
    }

    /// (mirror, reverse) walker flags.
    pub fn flags(&self) -> (bool, bool) {
        match self {
            KnotSymmetry::Identity => (false, false),
            KnotSymmetry::Inverse => (true, true),
            KnotSymmetry::Obverse => (true, false),
            KnotSymmetry::Reverse => (false, true),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KnotFixture {
    pub name: String,
    pub encoding: String,
    pub data: String,
    pub provenance: String,
    pub calibration: String,
}

pub const FIXTURE_NAMES: [&str; 8] = [
    "unknot",
    "trefoil_left",
    "trefoil_right",
    "fig8",
    "kinoshita_terasaka",
    "conway",
    "bretzel_3_5_7",
    "8_17",
];

fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "unknot" => Some(include_str!("../../fixtures/unknot.knot")),
        "trefoil_left" => Some(include_str!("../../fixtures/trefoil_left.knot")),
        "trefoil_right" => Some(include_str!("../../fixtures/trefoil_right.knot")),
        "fig8" => Some(include_str!("../../fixtures/fig8.knot")),
        "kinoshita_terasaka" => Some(include_str!("../../fixtures/kinoshita_terasaka.knot")),
        "conway" => Some(include_str!("../../fixtures/conway.knot")),
        "bretzel_3_5_7" => Some(include_str!("../../fixtures/bretzel_3_5_7.knot")),
        "8_17" => Some(include_str!("../../fixtures/8_17.knot")),
        _ => None,
    }
}

impl KnotFixture {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut name = None;
        let mut encoding = None;
        let mut data = None;
        let mut provenance = String::new();
        let mut calibration = String::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::FixtureIo(format!("bad fixture line {:?}", line)))?;
            let value = value.trim().to_string();
            match key.trim() {
                "name" => name = Some(value),
                "encoding" => encoding = Some(value),
                "data" => data = Some(value),
                "provenance" => provenance = value,
                "calibration" => calibration = value,
                other => {
                    return Err(Error::FixtureIo(format!("unknown fixture key {:?}", other)))
                }
            }
        }
        Ok(KnotFixture {
            name: name.ok_or_else(|| Error::FixtureIo("missing name".into()))?,
            encoding: encoding.ok_or_else(|| Error::FixtureIo("missing encoding".into()))?,
            data: data.ok_or_else(|| Error::FixtureIo("missing data".into()))?,
            provenance,
            calibration,
        })
    }

    /// The long-knot Wirtinger code of the requested symmetry variant.
    pub fn code(&self, symmetry: KnotSymmetry) -> Result<WirtingerCode, Error> {
        match self.encoding.as_str() {
            "braid" => {
                let braid = BraidWord::parse(&self.data, None)?;
                let braid = match symmetry {
                    KnotSymmetry::Identity => braid,
                    KnotSymmetry::Inverse => braid.symmetry(BraidSymmetry::Inverse),
                    KnotSymmetry::Obverse => braid.symmetry(BraidSymmetry::Obverse),
                    KnotSymmetry::Reverse => braid.symmetry(BraidSymmetry::Reverse),
                };
                braid.to_long_wirtinger()
            }
            "pd" => {
                let pd = PdCode::parse(&self.data)?;
                let (mirror, reverse) = symmetry.flags();
                pd.to_long_wirtinger(None, mirror, reverse)
            }
            "wirtinger" => {
                if symmetry != KnotSymmetry::Identity {
                    return Err(Error::Invalid(
                        "symmetry variants need a braid or pd source".into(),
                    ));
                }
                WirtingerCode::parse(&self.data)
            }
            other => Err(Error::FixtureIo(format!("unknown encoding {:?}", other))),
        }
    }
}

/// Loads a fixture by name, preferring `$KNOTCOLOUR_FIXTURES/<name>.knot`
/// over the compiled-in set.
pub fn load_fixture(name: &str) -> Result<KnotFixture, Error> {
    if let Ok(dir) = std::env::var("KNOTCOLOUR_FIXTURES") {
        let path = std::path::Path::new(&dir).join(format!("{}.knot", name));
        if path.exists() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::FixtureIo(format!("{}: {}", path.display(), e)))?;
            return KnotFixture::parse(&text);
        }
    }
    let text = builtin(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    KnotFixture::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtin_fixtures_load_and_decode() {
        for name in FIXTURE_NAMES {
            let fixture = load_fixture(name).unwrap();
            assert_eq!(fixture.name, name);
            let code = fixture.code(KnotSymmetry::Identity).unwrap();
            if name == "unknot" {
                assert_eq!(code.crossings(), 0);
            } else {
                assert!(code.crossings() > 0, "{} decodes to a nonempty code", name);
            }
        }
    }

    #[test]
    fn corrupt_fixture_rejected() {
        assert!(matches!(
            KnotFixture::parse("just some garbage"),
            Err(Error::FixtureIo(_))
        ));
        assert!(matches!(
            KnotFixture::parse("name: x\nencoding: braid\n"),
            Err(Error::FixtureIo(_)) // missing data
        ));
        assert!(matches!(
            KnotFixture::parse("name: x\nencoding: morse\ndata: y"),
            Ok(_) // encoding validated at decode time
        ));
        let bad = KnotFixture::parse("name: x\nencoding: morse\ndata: y").unwrap();
        assert!(matches!(bad.code(KnotSymmetry::Identity), Err(Error::FixtureIo(_))));
    }

    #[test]
    fn unknown_fixture_rejected() {
        assert!(matches!(
            load_fixture("no_such_knot"),
            Err(Error::UnknownFixture(_))
        ));
    }

    #[test]
    fn trefoil_fixtures_are_mirror_braids() {
        let left = load_fixture("trefoil_left").unwrap();
        let right = load_fixture("trefoil_right").unwrap();
        let l = BraidWord::parse(&left.data, None).unwrap();
        let r = BraidWord::parse(&right.data, None).unwrap();
        assert_eq!(l.symmetry(BraidSymmetry::Obverse), r);
    }
}
