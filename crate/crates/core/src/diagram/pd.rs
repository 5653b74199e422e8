//! Planar diagram (PD) codes.
//!
//! A crossing `X[a,b,c,d]` lists the four arc labels counterclockwise
//! starting from the incoming under-strand: the under-strand runs a → c,
//! the over-strand occupies b and d. Arc labels are positive integers and
//! each label appears exactly twice in the code. The orientation of the
//! over-strand is recovered from the walk, not from label arithmetic, so
//! labels need not be consecutive along the knot.

use std::collections::HashMap;

use super::{Axis, Diagram, WirtingerCode};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[usize; 4]>,
}

impl PdCode {
    pub fn new(crossings: Vec<[usize; 4]>) -> Self {
        PdCode { crossings }
    }

    /// Parses `X[1,4,2,5] X[3,8,4,9] …`; parentheses and semicolon or
    /// comma separators between crossings are accepted as well.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut crossings = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let x = rest.find(['X', 'x']).ok_or_else(|| {
                Error::Parse(format!("expected crossing 'X[...]' at {:?}", rest))
            })?;
            rest = &rest[x + 1..];
            let open = rest
                .find(['[', '('])
                .ok_or_else(|| Error::Parse("expected '[' after X".into()))?;
            let close = rest
                .find([']', ')'])
                .ok_or_else(|| Error::Parse("unclosed crossing".into()))?;
            let body = &rest[open + 1..close];
            let labels: Vec<usize> = body
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad arc label {:?}", t)))
                })
                .collect::<Result<_, _>>()?;
            if labels.len() != 4 {
                return Err(Error::Parse(format!(
                    "crossing needs 4 labels, got {}",
                    labels.len()
                )));
            }
            if labels.contains(&0) {
                return Err(Error::Parse("arc labels are positive".into()));
            }
            crossings.push([labels[0], labels[1], labels[2], labels[3]]);
            rest = rest[close + 1..].trim_start_matches([',', ';', ' ', '\t', '\n']);
        }
        Ok(PdCode { crossings })
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn render(&self) -> String {
        self.crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c[0], c[1], c[2], c[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Arc labels in ascending order.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels: Vec<usize> = self.crossings.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// Converts to the internal port-graph form, remembering the original
    /// labels (edge id = position of the label in `labels()`).
    pub fn to_diagram(&self) -> Result<Diagram, Error> {
        let labels = self.labels();
        let to_edge: HashMap<usize, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let ports: Vec<[usize; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let mut out = [0; 4];
                for (k, &l) in c.iter().enumerate() {
                    out[k] = to_edge[&l];
                }
                out
            })
            .collect();
        let axes = vec![Axis::Ports02; ports.len()];
        Diagram::new(ports, axes, true)
    }

    /// Long-knot Wirtinger code, cut open at the arc with label
    /// `cut_label` (any label when `None`).
    pub fn to_long_wirtinger(
        &self,
        cut_label: Option<usize>,
        mirror: bool,
        reverse: bool,
    ) -> Result<WirtingerCode, Error> {
        let labels = self.labels();
        let diagram = self.to_diagram()?;
        if self.crossings.is_empty() {
            return Ok(WirtingerCode::unknot());
        }
        let cut = match cut_label {
            None => 0,
            Some(l) => labels
                .binary_search(&l)
                .map_err(|_| Error::Parse(format!("cut arc {} not in diagram", l)))?,
        };
        diagram.long_wirtinger(cut, mirror, reverse)
    }
}

/// Re-exports a diagram as a PD code: edges are relabelled 1..2n in walk
/// order from edge 0, and each crossing is rotated so its tuple starts
/// with the incoming under-arc.
pub fn export_pd(diagram: &Diagram) -> Result<PdCode, Error> {
    let n = diagram.crossings();
    if n == 0 {
        return Ok(PdCode::new(Vec::new()));
    }
    let passes = diagram
        .walk(0, diagram.canonical_direction(0)?)
        .map_err(|seen| Error::MultiComponent(1 + (diagram.edges() - seen) / 2))?;
    // arc labels along the walk: pass k enters via edge labelled k+1
    let mut edge_label = vec![0usize; diagram.edges()];
    let mut entry_of = vec![[usize::MAX; 4]; n];
    let mut label = 0usize;
    let mut edge = 0usize; // the walk starts on edge 0
    for pass in &passes {
        label += 1;
        edge_label[edge] = label;
        entry_of[pass.crossing][pass.entry_port] = label;
        edge = diagram.ports[pass.crossing][(pass.entry_port + 2) % 4];
    }
    let mut crossings = Vec::with_capacity(n);
    for c in 0..n {
        // the under-in port is the under-axis port that was entered
        let under_in = match diagram.under_axis[c] {
            Axis::Ports02 => {
                if entry_of[c][0] != usize::MAX {
                    0
                } else {
                    2
                }
            }
            Axis::Ports13 => {
                if entry_of[c][1] != usize::MAX {
                    1
                } else {
                    3
                }
            }
        };
        let mut tuple = [0usize; 4];
        for k in 0..4 {
            tuple[k] = edge_label[diagram.ports[c][(under_in + k) % 4]];
        }
        crossings.push(tuple);
    }
    Ok(PdCode::new(crossings))
}

#[cfg(test)]
mod tests {
    use super::*;

    // the standard 3-crossing trefoil PD code
    fn trefoil() -> PdCode {
        PdCode::parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap()
    }

    #[test]
    fn parse_and_render() {
        let pd = trefoil();
        assert_eq!(pd.crossings().len(), 3);
        assert_eq!(pd.render(), "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
        let pd2 = PdCode::parse("X(1,4,2,5), X(3,6,4,1); X(5,2,6,3)").unwrap();
        assert_eq!(pd, pd2);
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(PdCode::parse("X[1,2,3]").is_err());
        // label 5 appears once, label 4 three times
        assert!(PdCode::parse("X[1,4,2,4] X[3,4,2,1]")
            .unwrap()
            .to_diagram()
            .is_err());
    }

    #[test]
    fn trefoil_walk() {
        let code = trefoil().to_long_wirtinger(None, false, false).unwrap();
        assert_eq!(code.crossings(), 3);
        let signs: Vec<i8> = (1..=3).map(|i| code.eps(i)).collect();
        assert!(signs.iter().all(|&s| s == signs[0]));
    }

    #[test]
    fn unknot_pd() {
        let code = PdCode::new(Vec::new())
            .to_long_wirtinger(None, false, false)
            .unwrap();
        assert_eq!(code.crossings(), 0);
    }

    #[test]
    fn export_reimports() {
        let pd = trefoil();
        let diagram = pd.to_diagram().unwrap();
        let exported = export_pd(&diagram).unwrap();
        // arc labels are consecutive along the knot
        assert_eq!(exported.labels(), (1..=6).collect::<Vec<_>>());
        let original = pd.to_long_wirtinger(None, false, false).unwrap();
        let reimported = exported
            .to_diagram()
            .unwrap()
            .long_wirtinger(0, false, false)
            .unwrap();
        // both are 3-crossing codes of the same knot with equal signs
        assert_eq!(original.crossings(), reimported.crossings());
        assert_eq!(original.eps(1), reimported.eps(1));
    }
}
