//! Permutations on `{0, …, degree-1}`, the carrier for every group element.
//!
//! Products use the right-action convention: `(g * h)` means "apply `g`,
//! then `h`", so `p^(g*h) = (p^g)^h`. Cycle notation is 1-based in text
//! form ("(1,2,3)(4,5)") and 0-based internally.

use std::fmt;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Result<Self, Error> {
        let mut seen = vec![false; images.len()];
        for &img in &images {
            let i = img as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image array {:?} is not a bijection",
                    images
                )));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(cycles: &[Vec<u16>], degree: usize) -> Result<Self, Error> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cycle in cycles {
            for k in 0..cycle.len() {
                let from = cycle[k] as usize;
                let to = cycle[(k + 1) % cycle.len()];
                if from >= degree || to as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point out of range for degree {}",
                        degree
                    )));
                }
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    /// Parses 1-based cycle notation like "(1,2,3)(4,5)" or "(1 2 3)".
    /// `degree` may be larger than the largest moved point; if `None`, the
    /// degree is the largest point mentioned.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Self, Error> {
        let text = text.trim();
        if text.is_empty() || text == "()" {
            return Ok(Perm::identity(degree.unwrap_or(0)));
        }
        let mut cycles: Vec<Vec<u16>> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Parse(format!(
                    "expected '(' in cycle notation, found {:?}",
                    rest
                )));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse("unclosed cycle".into()))?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad cycle point {:?}", tok)))?;
                if point == 0 {
                    return Err(Error::Parse("cycle points are 1-based".into()));
                }
                cycle.push((point - 1) as u16);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        let max_point = cycles
            .iter()
            .flat_map(|c| c.iter())
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(0);
        let degree = degree.unwrap_or(max_point).max(max_point);
        Perm::from_cycles(&cycles, degree)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `self` followed by `other`: `p^(self.then(other)) = (p^self)^other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&m| other.images[m as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (p, &img) in self.images.iter().enumerate() {
            images[img as usize] = p as u16;
        }
        Perm { images }
    }

    /// Conjugate `self^other = other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().then(self).then(other)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &img)| p as u16 == img)
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.then(self);
            n += 1;
        }
        n
    }

    pub fn is_even(&self) -> bool {
        // parity from cycle type: a k-cycle contributes k-1 transpositions
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut p = start;
            let mut len = 0;
            while !seen[p] {
                seen[p] = true;
                p = self.apply(p);
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Nontrivial cycles, each rotated to start at its smallest point,
    /// sorted by that point. 0-based.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u16);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_right_action() {
        let g = Perm::parse_cycles("(1,2,3)", Some(3)).unwrap();
        let h = Perm::parse_cycles("(1,2)", Some(3)).unwrap();
        // p^(g*h) = (p^g)^h: 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
        let gh = g.then(&h);
        assert_eq!(gh.apply(0), 0);
        assert_eq!(gh.apply(1), 2);
        assert_eq!(gh.apply(2), 1);
    }

    #[test]
    fn inverse_and_order() {
        let x = Perm::parse_cycles("(1,2,3,4,5)", None).unwrap();
        assert_eq!(x.order(), 5);
        assert!(x.then(&x.inverse()).is_identity());
        assert_eq!(x.inverse().to_string(), "(1,5,4,3,2)");
    }

    #[test]
    fn parity() {
        assert!(Perm::parse_cycles("(1,2,3)", None).unwrap().is_even());
        assert!(!Perm::parse_cycles("(1,2)", None).unwrap().is_even());
        assert!(Perm::parse_cycles("(1,2)(3,4)", None).unwrap().is_even());
    }

    #[test]
    fn display_round_trip() {
        for text in ["(1,2,3)(4,5)", "(1,4)(2,6,3)", "()"] {
            let p = Perm::parse_cycles(text, Some(6)).unwrap();
            let back = Perm::parse_cycles(&p.to_string(), Some(6)).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = Perm::parse_cycles("(1,2,3,4,5)", Some(5)).unwrap();
        let s = Perm::parse_cycles("(2,5)(3,4)", Some(5)).unwrap();
        assert_eq!(x.conjugate_by(&s), x.inverse());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }
}
