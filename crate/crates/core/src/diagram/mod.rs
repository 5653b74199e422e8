//! Knot diagram encodings and conversions.
//!
//! Every encoding (braid word, PD code, tangle assembly) funnels into the
//! long-knot [`WirtingerCode`] that drives colouring: κ maps each
//! crossing to the arc passing over it, ε is the crossing sign. Arcs are
//! numbered 0..n along the knot; the colouring relation at crossing i is
//! x_i = x_{κi}^{-εi} · x_{i-1} · x_{κi}^{εi}.

pub mod braid;
pub mod fixtures;
pub mod pd;
pub mod tangle;

pub use braid::BraidWord;
pub use fixtures::{load_fixture, KnotFixture, KnotSymmetry};
pub use pd::PdCode;

use crate::error::Error;

/// Wirtinger code of a long knot diagram with `n` crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerCode {
    kappa: Vec<usize>,
    eps: Vec<i8>,
}

impl WirtingerCode {
    pub fn new(kappa: Vec<usize>, eps: Vec<i8>) -> Result<Self, Error> {
        if kappa.len() != eps.len() {
            return Err(Error::Invalid("kappa/eps length mismatch".into()));
        }
        let n = kappa.len();
        if let Some(&bad) = kappa.iter().find(|&&k| k > n) {
            return Err(Error::Invalid(format!(
                "kappa value {} out of range 0..={}",
                bad, n
            )));
        }
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Invalid("eps entries must be ±1".into()));
        }
        Ok(WirtingerCode { kappa, eps })
    }

    pub fn unknot() -> Self {
        WirtingerCode {
            kappa: Vec::new(),
            eps: Vec::new(),
        }
    }

    /// Crossing count; the diagram has arcs 0..=n.
    pub fn crossings(&self) -> usize {
        self.kappa.len()
    }

    /// κ(i) for 1-based crossing i.
    pub fn kappa(&self, i: usize) -> usize {
        self.kappa[i - 1]
    }

    /// ε(i) for 1-based crossing i.
    pub fn eps(&self, i: usize) -> i8 {
        self.eps[i - 1]
    }

    /// Text form `κ1ε1 κ2ε2 …`, e.g. `2+ 0+ 1+`.
    pub fn render(&self) -> String {
        (1..=self.crossings())
            .map(|i| format!("{}{}", self.kappa(i), if self.eps(i) > 0 { '+' } else { '-' }))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut kappa = Vec::new();
        let mut eps = Vec::new();
        for tok in text.split_whitespace() {
            let (num, sign) = tok.split_at(tok.len() - 1);
            let e = match sign {
                "+" => 1,
                "-" => -1,
                _ => return Err(Error::Parse(format!("bad wirtinger token {:?}", tok))),
            };
            let k: usize = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad wirtinger token {:?}", tok)))?;
            kappa.push(k);
            eps.push(e);
        }
        WirtingerCode::new(kappa, eps)
    }
}

/// Connected sum: b's arcs are renumbered after a's, fusing a's last arc
/// with b's arc 0.
pub fn connected_sum(a: &WirtingerCode, b: &WirtingerCode) -> WirtingerCode {
    let shift = a.crossings();
    let mut kappa = a.kappa.clone();
    let mut eps = a.eps.clone();
    kappa.extend(b.kappa.iter().map(|&k| k + shift));
    eps.extend_from_slice(&b.eps);
    WirtingerCode { kappa, eps }
}

// ----------------------------------------------------------------------
// port-graph diagrams, the common ground between PD codes, braid
// closures and tangle assemblies

/// Which diagonal of a crossing carries the under-strand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    /// ports 0 and 2
    Ports02,
    /// ports 1 and 3
    Ports13,
}

impl Axis {
    fn flipped(self) -> Axis {
        match self {
            Axis::Ports02 => Axis::Ports13,
            Axis::Ports13 => Axis::Ports02,
        }
    }

    fn contains(self, port: usize) -> bool {
        match self {
            Axis::Ports02 => port % 2 == 0,
            Axis::Ports13 => port % 2 == 1,
        }
    }
}

/// A closed knot diagram as a 4-valent port graph. Each crossing lists
/// the edge at each of its four ports in counterclockwise order; strands
/// run through opposite ports.
#[derive(Clone, Debug)]
pub struct Diagram {
    ports: Vec<[usize; 4]>,
    under_axis: Vec<Axis>,
    edges: usize,
    /// When set (PD-parsed codes), the edge orientation is part of the
    /// data: walking forward must enter every under-strand at port 0.
    oriented: bool,
}

#[derive(Clone, Copy)]
struct Pass {
    crossing: usize,
    entry_port: usize,
}

impl Diagram {
    pub fn new(
        ports: Vec<[usize; 4]>,
        under_axis: Vec<Axis>,
        oriented: bool,
    ) -> Result<Self, Error> {
        let mut count = std::collections::HashMap::new();
        for cross in &ports {
            for &e in cross {
                *count.entry(e).or_insert(0usize) += 1;
            }
        }
        for (&e, &c) in &count {
            if c != 2 {
                return Err(Error::InconsistentPd(format!(
                    "edge {} appears {} times, expected 2",
                    e, c
                )));
            }
        }
        let edges = count.len();
        if !ports.is_empty() {
            let max = *count.keys().max().unwrap();
            if max + 1 != edges {
                return Err(Error::InconsistentPd(
                    "edge ids must be contiguous from 0".into(),
                ));
            }
        }
        Ok(Diagram {
            ports,
            under_axis,
            edges,
            oriented,
        })
    }

    pub fn crossings(&self) -> usize {
        self.ports.len()
    }

    pub fn edges(&self) -> usize {
        self.edges
    }

    fn incidence(&self) -> Vec<[(usize, usize); 2]> {
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.edges];
        for (c, cross) in self.ports.iter().enumerate() {
            for (p, &e) in cross.iter().enumerate() {
                slots[e].push((c, p));
            }
        }
        slots.into_iter().map(|s| [s[0], s[1]]).collect()
    }

    /// Walks the component containing `start_edge`, heading first into
    /// incidence slot `dir` of that edge. Returns the passes in order,
    /// or the number of edges visited if the walk closes early.
    fn walk(&self, start_edge: usize, dir: usize) -> Result<Vec<Pass>, usize> {
        let incidence = self.incidence();
        let mut passes = Vec::with_capacity(2 * self.crossings());
        let mut edges_seen = 0usize;
        let (mut crossing, mut port) = incidence[start_edge][dir];
        loop {
            edges_seen += 1;
            passes.push(Pass {
                crossing,
                entry_port: port,
            });
            let exit = (port + 2) % 4;
            let edge = self.ports[crossing][exit];
            if edge == start_edge {
                break;
            }
            let [a, b] = incidence[edge];
            let next = if a == (crossing, exit) { b } else { a };
            crossing = next.0;
            port = next.1;
        }
        if edges_seen == self.edges {
            Ok(passes)
        } else {
            Err(edges_seen)
        }
    }

    /// Direction (0 or 1) in which all under-strands are entered at
    /// port 0, for oriented (PD) diagrams.
    fn canonical_direction(&self, start_edge: usize) -> Result<usize, Error> {
        if !self.oriented {
            return Ok(0);
        }
        'dirs: for dir in 0..2 {
            match self.walk(start_edge, dir) {
                Ok(passes) => {
                    for pass in &passes {
                        if self.under_axis[pass.crossing].contains(pass.entry_port)
                            && pass.entry_port != 0
                        {
                            continue 'dirs;
                        }
                    }
                    return Ok(dir);
                }
                Err(_) => continue,
            }
        }
        Err(Error::InconsistentPd(
            "no orientation enters every under-strand at its incoming port".into(),
        ))
    }

    /// Converts to the long-knot Wirtinger code, cutting the diagram open
    /// at `cut_edge`. `mirror` swaps over- and under-strands everywhere;
    /// `reverse` walks the knot in the opposite direction.
    pub fn long_wirtinger(
        &self,
        cut_edge: usize,
        mirror: bool,
        reverse: bool,
    ) -> Result<WirtingerCode, Error> {
        if self.crossings() == 0 {
            return Ok(WirtingerCode::unknot());
        }
        if cut_edge >= self.edges {
            return Err(Error::Invalid(format!("cut edge {} out of range", cut_edge)));
        }
        let canonical = self.canonical_direction(cut_edge)?;
        let dir = if reverse { 1 - canonical } else { canonical };
        let passes = self
            .walk(cut_edge, dir)
            .map_err(|seen| Error::MultiComponent(1 + (self.edges - seen) / 2))?;

        let n = self.crossings();
        let mut over_arc = vec![usize::MAX; n];
        let mut over_entry = vec![usize::MAX; n];
        let mut under_entry = vec![usize::MAX; n];
        let mut under_order = Vec::with_capacity(n);
        let mut arc = 0usize;
        for pass in &passes {
            let axis = if mirror {
                self.under_axis[pass.crossing].flipped()
            } else {
                self.under_axis[pass.crossing]
            };
            if axis.contains(pass.entry_port) {
                under_entry[pass.crossing] = pass.entry_port;
                under_order.push(pass.crossing);
                arc += 1;
            } else {
                over_arc[pass.crossing] = arc;
                over_entry[pass.crossing] = pass.entry_port;
            }
        }
        debug_assert_eq!(arc, n);
        debug_assert_eq!(under_order.len(), n);

        let mut kappa = Vec::with_capacity(n);
        let mut eps = Vec::with_capacity(n);
        for &crossing in &under_order {
            kappa.push(over_arc[crossing]);
            eps.push(crossing_sign(under_entry[crossing], over_entry[crossing]));
        }
        WirtingerCode::new(kappa, eps)
    }

    /// Long-knot codes over every cut choice (for invariance checks).
    pub fn all_cuts(&self, mirror: bool, reverse: bool) -> Result<Vec<WirtingerCode>, Error> {
        (0..self.edges)
            .map(|cut| self.long_wirtinger(cut, mirror, reverse))
            .collect()
    }
}

/// Sign of a crossing from the two entry ports: +1 when the under-strand
/// direction is the over-strand direction rotated a quarter turn
/// counterclockwise. Entry from port k heads in direction DIR[k].
fn crossing_sign(under_entry: usize, over_entry: usize) -> i8 {
    const DIR: [(i8, i8); 4] = [(0, 1), (-1, 0), (0, -1), (1, 0)];
    let u = DIR[under_entry];
    let v = DIR[over_entry];
    let ccw = (-v.1, v.0);
    if u == ccw {
        1
    } else {
        debug_assert_eq!(u, (v.1, -v.0));
        -1
    }
}
