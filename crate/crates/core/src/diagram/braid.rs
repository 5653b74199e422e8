//! Braid words and their closures.

use super::{Axis, Diagram, WirtingerCode};
use crate::error::Error;
use crate::perm::Perm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BraidSymmetry {
    Inverse,
    Reverse,
    Obverse,
}

/// A word in the Artin generators σ_1 … σ_{n-1} of the braid group on
/// `strands` strands. Letters are (index, sign).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self, Error> {
        if strands == 0 {
            return Err(Error::Parse("a braid needs at least one strand".into()));
        }
        for &(i, s) in &letters {
            if i == 0 || i >= strands {
                return Err(Error::Parse(format!(
                    "letter index {} out of range 1..{}",
                    i, strands
                )));
            }
            if s != 1 && s != -1 {
                return Err(Error::Parse("letter sign must be ±1".into()));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses either `s1 s2^-1 s1^3` style or compact `aAbB` style
    /// (a = σ1, A = σ1⁻¹, …). Strand count is max index + 1 unless given.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, Error> {
        let text = text.trim();
        let letters = if text.contains('s') || text.contains('S') {
            Self::parse_generator_style(text)?
        } else {
            Self::parse_compact(text)?
        };
        let min_strands = letters.iter().map(|&(i, _)| i + 1).max().unwrap_or(1);
        let strands = match strands {
            Some(n) => {
                if n < min_strands {
                    return Err(Error::Parse(format!(
                        "strand count {} too small for letter index {}",
                        n,
                        min_strands - 1
                    )));
                }
                n
            }
            None => min_strands,
        };
        BraidWord::new(strands, letters)
    }

    fn parse_generator_style(text: &str) -> Result<Vec<(usize, i8)>, Error> {
        let mut letters = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            let rest = tok
                .strip_prefix('s')
                .or_else(|| tok.strip_prefix('S'))
                .ok_or_else(|| {
                    Error::Parse(format!("token {} ({:?}): expected s<index>", pos + 1, tok))
                })?;
            let (idx_text, exp) = match rest.split_once('^') {
                Some((i, e)) => {
                    let exp: i64 = e.parse().map_err(|_| {
                        Error::Parse(format!("token {} ({:?}): bad exponent", pos + 1, tok))
                    })?;
                    (i, exp)
                }
                None => (rest, 1),
            };
            let idx: usize = idx_text.parse().map_err(|_| {
                Error::Parse(format!("token {} ({:?}): bad index", pos + 1, tok))
            })?;
            if idx == 0 {
                return Err(Error::Parse(format!(
                    "token {} ({:?}): braid indices are 1-based",
                    pos + 1,
                    tok
                )));
            }
            let sign = if exp >= 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((idx, sign));
            }
        }
        Ok(letters)
    }

    fn parse_compact(text: &str) -> Result<Vec<(usize, i8)>, Error> {
        let mut letters = Vec::new();
        for (pos, c) in text.chars().enumerate() {
            if c.is_whitespace() {
                continue;
            }
            if c.is_ascii_lowercase() {
                letters.push((c as usize - 'a' as usize + 1, 1));
            } else if c.is_ascii_uppercase() {
                letters.push((c as usize - 'A' as usize + 1, -1));
            } else {
                return Err(Error::Parse(format!(
                    "position {}: unexpected character {:?}",
                    pos + 1,
                    c
                )));
            }
        }
        Ok(letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return String::new();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut run: Option<(usize, i8, i64)> = None;
        let flush = |parts: &mut Vec<String>, run: Option<(usize, i8, i64)>| {
            if let Some((i, s, k)) = run {
                let exp = s as i64 * k;
                if exp == 1 {
                    parts.push(format!("s{}", i));
                } else {
                    parts.push(format!("s{}^{}", i, exp));
                }
            }
        };
        for &(i, s) in &self.letters {
            match run {
                Some((ri, rs, k)) if ri == i && rs == s => run = Some((ri, rs, k + 1)),
                other => {
                    flush(&mut parts, other);
                    run = Some((i, s, 1));
                }
            }
        }
        flush(&mut parts, run);
        parts.join(" ")
    }

    /// The permutation of strand positions induced by the word.
    pub fn closure_permutation(&self) -> Perm {
        let mut images: Vec<u16> = (0..self.strands as u16).collect();
        // images[k] = final position of the strand starting at position k
        for &(i, _) in &self.letters {
            let (a, b) = (i - 1, i);
            for img in images.iter_mut() {
                if *img as usize == a {
                    *img = b as u16;
                } else if *img as usize == b {
                    *img = a as u16;
                }
            }
        }
        Perm::from_images(images).expect("swaps preserve bijectivity")
    }

    /// Number of components of the closed braid.
    pub fn closure_components(&self) -> usize {
        self.closure_permutation().cycles().len()
            + self
                .closure_permutation()
                .images()
                .iter()
                .enumerate()
                .filter(|&(p, &img)| p as u16 == img)
                .count()
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }

    /// inv: reversed letter order with inverted signs; rev: reversed
    /// letter order, same signs; obv: same order, inverted signs.
    pub fn symmetry(&self, op: BraidSymmetry) -> BraidWord {
        let letters = match op {
            BraidSymmetry::Inverse => self
                .letters
                .iter()
                .rev()
                .map(|&(i, s)| (i, -s))
                .collect(),
            BraidSymmetry::Reverse => self.letters.iter().rev().copied().collect(),
            BraidSymmetry::Obverse => self.letters.iter().map(|&(i, s)| (i, -s)).collect(),
        };
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let strands = self.strands.max(other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands, letters }
    }

    /// Markov stabilization: β ∈ Br_n ↦ β·σ_n^±1 ∈ Br_{n+1}.
    pub fn stabilize(&self, sign: i8) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push((self.strands, sign));
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }

    pub fn conjugate(&self, alpha: &BraidWord) -> BraidWord {
        let inv = alpha.symmetry(BraidSymmetry::Inverse);
        inv.concat(self).concat(alpha)
    }

    /// The closed-braid diagram: strands run west to east, position 1 at
    /// the bottom; eastern ends wrap around to western ends. Returns the
    /// diagram and the closure edge of strand 1 (the long-knot cut).
    pub fn to_diagram(&self) -> Result<(Diagram, usize), Error> {
        if !self.is_knot() {
            return Err(Error::MultiComponent(self.closure_components()));
        }
        let n = self.strands;
        // provisional edge ids; 0..n are the western end edges
        let mut next_edge = n;
        let mut current: Vec<usize> = (0..n).collect();
        let mut ports: Vec<[usize; 4]> = Vec::with_capacity(self.letters.len());
        let mut under_axis = Vec::with_capacity(self.letters.len());
        for &(i, s) in &self.letters {
            let low_in = current[i - 1];
            let high_in = current[i];
            let low_out = next_edge;
            let high_out = next_edge + 1;
            next_edge += 2;
            current[i - 1] = low_out;
            current[i] = high_out;
            // ports ccw; under-strand enters at port 0.
            // σ+ : descending strand (NW→SE) over, under = SW→NE:
            //      [SW, SE, NE, NW] = [low_in, low_out, high_out, high_in]
            // σ- : ascending strand over, under = NW→SE:
            //      [NW, SW, SE, NE] = [high_in, low_in, low_out, high_out]
            if s > 0 {
                ports.push([low_in, low_out, high_out, high_in]);
            } else {
                ports.push([high_in, low_in, low_out, high_out]);
            }
            under_axis.push(Axis::Ports02);
        }
        // closure: eastern end at position k joins western edge k
        let mut canon: Vec<usize> = (0..next_edge).collect();
        for k in 0..n {
            let east = current[k];
            canon[east] = k;
        }
        // compact edge ids
        let mut remap = vec![usize::MAX; next_edge];
        let mut count = 0;
        for cross in &ports {
            for &e in cross {
                let root = canon[e];
                if remap[root] == usize::MAX {
                    remap[root] = count;
                    count += 1;
                }
            }
        }
        let ports: Vec<[usize; 4]> = ports
            .iter()
            .map(|cross| {
                let mut out = [0; 4];
                for (k, &e) in cross.iter().enumerate() {
                    out[k] = remap[canon[e]];
                }
                out
            })
            .collect();
        if ports.is_empty() {
            // unknot: a crossingless diagram with a single closed strand
            let diagram = Diagram::new(Vec::new(), Vec::new(), true)?;
            return Ok((diagram, 0));
        }
        let cut = remap[canon[0]];
        let diagram = Diagram::new(ports, under_axis, true)?;
        Ok((diagram, cut))
    }

    /// The long-knot Wirtinger code of the closure, cut open on strand 1.
    pub fn to_long_wirtinger(&self) -> Result<WirtingerCode, Error> {
        let (diagram, cut) = self.to_diagram()?;
        if diagram.crossings() == 0 {
            return Ok(WirtingerCode::unknot());
        }
        diagram.long_wirtinger(cut, false, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_generator_style() {
        let b = BraidWord::parse("s1^3", None).unwrap();
        assert_eq!(b.strands(), 2);
        assert_eq!(b.letters(), &[(1, 1), (1, 1), (1, 1)]);

        let fig8 = BraidWord::parse("s1 s2^-1 s1 s2^-1", None).unwrap();
        assert_eq!(fig8.strands(), 3);
        assert!(fig8.is_knot());

        assert_eq!(BraidWord::parse("s1^0", None).unwrap().letters().len(), 0);
        assert!(BraidWord::parse("s0", None).is_err());
        assert!(BraidWord::parse("x1", None).is_err());
    }

    #[test]
    fn parse_compact_style() {
        let b = BraidWord::parse("aBaB", None).unwrap();
        assert_eq!(b.letters(), &[(1, 1), (2, -1), (1, 1), (2, -1)]);
    }

    #[test]
    fn render_round_trip() {
        for text in ["s1^3", "s1 s2^-1 s1 s2^-1", "s1^2 s2^-3 s1"] {
            let b = BraidWord::parse(text, None).unwrap();
            assert_eq!(BraidWord::parse(&b.render(), Some(b.strands())).unwrap(), b);
        }
    }

    #[test]
    fn closure_component_counts() {
        assert!(BraidWord::parse("s1^3", None).unwrap().is_knot());
        assert!(!BraidWord::parse("s1^2", None).unwrap().is_knot());
        assert!(BraidWord::parse("s1 s2^-1 s1 s2^-1", None).unwrap().is_knot());
        // σ1 on 3 strands closes to a 2-component link
        assert_eq!(
            BraidWord::parse("s1", Some(3)).unwrap().closure_components(),
            2
        );
    }

    #[test]
    fn symmetry_ops() {
        let b = BraidWord::parse("s1^3", None).unwrap();
        assert_eq!(
            b.symmetry(BraidSymmetry::Obverse).letters(),
            &[(1, -1), (1, -1), (1, -1)]
        );
        let w = BraidWord::parse("s1 s2^-1", None).unwrap();
        assert_eq!(
            w.symmetry(BraidSymmetry::Inverse)
                .symmetry(BraidSymmetry::Inverse),
            w
        );
        // inv = rev∘obv = obv∘rev
        assert_eq!(
            w.symmetry(BraidSymmetry::Inverse),
            w.symmetry(BraidSymmetry::Obverse)
                .symmetry(BraidSymmetry::Reverse)
        );
        assert_eq!(
            w.symmetry(BraidSymmetry::Inverse),
            w.symmetry(BraidSymmetry::Reverse)
                .symmetry(BraidSymmetry::Obverse)
        );
    }

    #[test]
    fn trefoil_wirtinger_structure() {
        let code = BraidWord::parse("s1^3", None).unwrap().to_long_wirtinger().unwrap();
        assert_eq!(code.crossings(), 3);
        // all three crossings share one sign
        let signs: Vec<i8> = (1..=3).map(|i| code.eps(i)).collect();
        assert!(signs.iter().all(|&s| s == signs[0]));
    }

    #[test]
    fn empty_braid_is_unknot() {
        let code = BraidWord::parse("", None).unwrap().to_long_wirtinger().unwrap();
        assert_eq!(code.crossings(), 0);
    }

    #[test]
    fn multi_component_closure_rejected() {
        assert!(BraidWord::parse("s1^2", None)
            .unwrap()
            .to_long_wirtinger()
            .is_err());
    }
}
