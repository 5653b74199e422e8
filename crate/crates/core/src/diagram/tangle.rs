//! 2-string tangle assembly.
//!
//! Tangles are built from the 0- and ∞-tangles by twisting boundary
//! stubs, horizontal sum, and quarter rotations; closing one up yields a
//! port-graph [`Diagram`]. This is how the bretzel family is constructed
//! and how the shipped PD fixtures were originally derived.

use super::{Axis, Diagram};
use crate::error::Error;

#[derive(Clone, Debug)]
struct TCross {
    ports: [usize; 4],
    under_axis: Axis,
}

/// A tangle with four boundary stubs (NW, NE, SW, SE), each referencing a
/// provisional edge. Merged edges are tracked by union-find.
#[derive(Clone, Debug)]
pub struct Tangle {
    crossings: Vec<TCross>,
    parent: Vec<usize>,
    nw: usize,
    ne: usize,
    sw: usize,
    se: usize,
}

impl Tangle {
    /// Two horizontal strands: NW–NE and SW–SE.
    pub fn zero() -> Self {
        Tangle {
            crossings: Vec::new(),
            parent: vec![0, 1],
            nw: 0,
            ne: 0,
            sw: 1,
            se: 1,
        }
    }

    /// Two vertical strands: NW–SW and NE–SE.
    pub fn infinity() -> Self {
        Tangle {
            crossings: Vec::new(),
            parent: vec![0, 1],
            nw: 0,
            ne: 1,
            sw: 0,
            se: 1,
        }
    }

    /// Rational tangle from a twist vector: entries alternately twist the
    /// right side (first entry) and the bottom, continued-fraction style.
    pub fn rational(twists: &[i32]) -> Self {
        let mut t = Tangle::zero();
        for (k, &a) in twists.iter().enumerate() {
            let sign = if a >= 0 { 1 } else { -1 };
            for _ in 0..a.unsigned_abs() {
                if k % 2 == 0 {
                    t.twist_right(sign);
                } else {
                    t.twist_bottom(sign);
                }
            }
        }
        t
    }

    /// Vertical twist region with |p| crossings of handedness sign(p).
    pub fn vertical_twists(p: i32) -> Self {
        let mut t = Tangle::infinity();
        let sign = if p >= 0 { 1 } else { -1 };
        for _ in 0..p.unsigned_abs() {
            t.twist_bottom(sign);
        }
        t
    }

    fn fresh_edge(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        id
    }

    fn find(&self, mut e: usize) -> usize {
        while self.parent[e] != e {
            e = self.parent[e];
        }
        e
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    /// Adds a crossing on the two eastern stubs (NE, SE).
    pub fn twist_right(&mut self, sign: i8) {
        let ne_new = self.fresh_edge();
        let se_new = self.fresh_edge();
        // incoming: old NE stub at the crossing's NW corner, old SE stub
        // at SW; outgoing: NE and SE corners. Ports ccw from SW.
        let ports = [self.se, se_new, ne_new, self.ne];
        let under_axis = if sign > 0 { Axis::Ports13 } else { Axis::Ports02 };
        self.crossings.push(TCross { ports, under_axis });
        self.ne = ne_new;
        self.se = se_new;
    }

    /// Adds a crossing on the two southern stubs (SW, SE).
    pub fn twist_bottom(&mut self, sign: i8) {
        let sw_new = self.fresh_edge();
        let se_new = self.fresh_edge();
        // incoming: old SW stub at the crossing's NW corner, old SE stub
        // at NE; outgoing: SW and SE corners. Ports ccw from SW.
        let ports = [sw_new, se_new, self.se, self.sw];
        let under_axis = if sign > 0 { Axis::Ports13 } else { Axis::Ports02 };
        self.crossings.push(TCross { ports, under_axis });
        self.sw = sw_new;
        self.se = se_new;
    }

    /// Quarter rotation counterclockwise.
    pub fn rotate(&mut self) {
        let (nw, ne, se, sw) = (self.nw, self.ne, self.se, self.sw);
        self.nw = ne;
        self.sw = nw;
        self.se = sw;
        self.ne = se;
    }

    /// π-rotation in the plane (orientation-preserving).
    pub fn rotate_pi(&mut self) {
        std::mem::swap(&mut self.nw, &mut self.se);
        std::mem::swap(&mut self.ne, &mut self.sw);
    }

    /// π-rotation about the horizontal axis: top and bottom stubs swap,
    /// each crossing's cyclic order reverses, over and under swap.
    pub fn flip_horizontal_axis(&mut self) {
        std::mem::swap(&mut self.nw, &mut self.sw);
        std::mem::swap(&mut self.ne, &mut self.se);
        for cross in &mut self.crossings {
            cross.ports = [cross.ports[0], cross.ports[3], cross.ports[2], cross.ports[1]];
            cross.under_axis = cross.under_axis.flipped();
        }
    }

    /// π-rotation about the vertical axis.
    pub fn flip_vertical_axis(&mut self) {
        self.rotate_pi();
        self.flip_horizontal_axis();
    }

    /// Mirror image: every crossing switches which strand is on top.
    pub fn mirror(&mut self) {
        for cross in &mut self.crossings {
            cross.under_axis = cross.under_axis.flipped();
        }
    }

    /// Horizontal sum: glue `other`'s west side onto this tangle's east.
    pub fn sum(mut self, other: &Tangle) -> Tangle {
        let offset = self.parent.len();
        for &p in &other.parent {
            self.parent.push(p + offset);
        }
        for cross in &other.crossings {
            self.crossings.push(TCross {
                ports: [
                    cross.ports[0] + offset,
                    cross.ports[1] + offset,
                    cross.ports[2] + offset,
                    cross.ports[3] + offset,
                ],
                under_axis: cross.under_axis,
            });
        }
        self.union(self.ne, other.nw + offset);
        self.union(self.se, other.sw + offset);
        self.ne = other.ne + offset;
        self.se = other.se + offset;
        self
    }

    /// Numerator closure: join NW–NE and SW–SE.
    pub fn numerator(mut self) -> Result<Diagram, Error> {
        self.union(self.nw, self.ne);
        self.union(self.sw, self.se);
        self.finalize()
    }

    /// Denominator closure: join NW–SW and NE–SE.
    pub fn denominator(mut self) -> Result<Diagram, Error> {
        self.union(self.nw, self.sw);
        self.union(self.ne, self.se);
        self.finalize()
    }

    fn finalize(self) -> Result<Diagram, Error> {
        if self.crossings.is_empty() {
            // closures of the 0- or ∞-tangle: unknot (possibly two circles,
            // which the component check in the walker cannot see; treat the
            // 2-circle case as an error here)
            let roots: std::collections::HashSet<usize> =
                (0..self.parent.len()).map(|e| self.find(e)).collect();
            if roots.len() > 1 {
                return Err(Error::MultiComponent(roots.len()));
            }
            return Diagram::new(Vec::new(), Vec::new(), false);
        }
        // compact edge ids over crossing ports
        let mut remap: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut ports = Vec::with_capacity(self.crossings.len());
        let mut axes = Vec::with_capacity(self.crossings.len());
        for cross in &self.crossings {
            let mut out = [0usize; 4];
            for (k, &e) in cross.ports.iter().enumerate() {
                let root = self.find(e);
                let next = remap.len();
                out[k] = *remap.entry(root).or_insert(next);
            }
            ports.push(out);
            axes.push(cross.under_axis);
        }
        // a closed-off circle that touches no crossing would silently
        // drop a component; reject it
        for e in 0..self.parent.len() {
            if !remap.contains_key(&self.find(e)) {
                return Err(Error::MultiComponent(2));
            }
        }
        Diagram::new(ports, axes, false)
    }
}

impl Tangle {
    fn empty() -> Self {
        Tangle {
            crossings: Vec::new(),
            parent: Vec::new(),
            nw: usize::MAX,
            ne: usize::MAX,
            sw: usize::MAX,
            se: usize::MAX,
        }
    }

    /// Appends another tangle's crossings and edges, returning the edge
    /// offset to translate the other tangle's stub ids.
    fn absorb(&mut self, other: &Tangle) -> usize {
        let offset = self.parent.len();
        for &p in &other.parent {
            self.parent.push(p + offset);
        }
        for cross in &other.crossings {
            self.crossings.push(TCross {
                ports: [
                    cross.ports[0] + offset,
                    cross.ports[1] + offset,
                    cross.ports[2] + offset,
                    cross.ports[3] + offset,
                ],
                under_axis: cross.under_axis,
            });
        }
        offset
    }
}

/// Substitutes six tangles into the vertices of the octahedral basic
/// polyhedron (the template behind Conway's 6*-style knots) and closes
/// the result into a diagram. Slot order: four equatorial vertices in
/// cyclic order, then the inner and outer poles.
pub fn substitute_octahedron(fillings: &[Tangle; 6]) -> Result<Diagram, Error> {
    // rotation system of the octahedron: each vertex lists its four
    // neighbours counterclockwise; ports pair up along the 12 edges
    const EDGES: [((usize, usize), (usize, usize)); 12] = [
        ((0, 0), (4, 2)), // e1-N
        ((0, 1), (1, 1)), // e1-e2
        ((0, 2), (5, 0)), // e1-S
        ((0, 3), (3, 2)), // e1-e4
        ((1, 0), (5, 1)), // e2-S
        ((1, 2), (4, 1)), // e2-N
        ((1, 3), (2, 1)), // e2-e3
        ((2, 0), (5, 2)), // e3-S
        ((2, 2), (4, 0)), // e3-N
        ((2, 3), (3, 0)), // e3-e4
        ((3, 1), (4, 3)), // e4-N
        ((3, 3), (5, 3)), // e4-S
    ];
    let mut acc = Tangle::empty();
    let mut stubs: Vec<[usize; 4]> = Vec::with_capacity(6);
    for filling in fillings {
        let offset = acc.absorb(filling);
        // tangle corners counterclockwise, matching vertex ports
        stubs.push([
            filling.sw + offset,
            filling.se + offset,
            filling.ne + offset,
            filling.nw + offset,
        ]);
    }
    for ((u, pu), (v, pv)) in EDGES {
        acc.union(stubs[u][pu], stubs[v][pv]);
    }
    acc.finalize()
}

/// The bretzel diagram B(p₁, p₂, p₃): three vertical twist regions side
/// by side, closed up. All pᵢ must be odd so the result is a knot.
/// Handedness is calibrated so that B(3,5,7) over M₁₁ reproduces
/// 1 + 11x (see the golden tests).
pub fn bretzel_diagram(p1: i32, p2: i32, p3: i32) -> Result<Diagram, Error> {
    for &p in &[p1, p2, p3] {
        if p % 2 == 0 {
            return Err(Error::Invalid(format!(
                "bretzel parameters must be odd, got {}",
                p
            )));
        }
    }
    let band = |p: i32| Tangle::vertical_twists(p);
    band(p1).sum(&band(p2)).sum(&band(p3)).numerator()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_tangle_closures_have_expected_sizes() {
        // N(rational [3]) is a trefoil diagram
        let d = Tangle::rational(&[3]).numerator().unwrap();
        assert_eq!(d.crossings(), 3);
        assert_eq!(d.edges(), 6);
        // rational [2,2] has fraction 2/5: its numerator closure is a
        // 2-component link, the denominator closure is a figure-eight
        let link = Tangle::rational(&[2, 2]).numerator().unwrap();
        assert!(matches!(
            link.long_wirtinger(0, false, false),
            Err(Error::MultiComponent(_))
        ));
        let d = Tangle::rational(&[2, 2]).denominator().unwrap();
        assert_eq!(d.crossings(), 4);
        let code = d.long_wirtinger(0, false, false).unwrap();
        assert_eq!(code.crossings(), 4);
    }

    #[test]
    fn bretzel_sizes_and_parity() {
        let d = bretzel_diagram(3, 5, 7).unwrap();
        assert_eq!(d.crossings(), 15);
        assert!(d.long_wirtinger(0, false, false).is_ok());
        assert!(bretzel_diagram(2, 3, 5).is_err());
        let trefoil = bretzel_diagram(1, 1, 1).unwrap();
        assert_eq!(trefoil.crossings(), 3);
    }

    #[test]
    fn denominator_of_horizontal_twists_splits() {
        // D(integer tangle) closes each twist into a separate component
        // only for the 0-tangle; a single twist still walks as one knot
        let mut t = Tangle::zero();
        t.twist_right(1);
        assert!(t.denominator().unwrap().long_wirtinger(0, false, false).is_ok());
    }

    #[test]
    fn zero_tangle_numerator_is_unsplit_unknot() {
        assert!(Tangle::zero().numerator().is_err()); // two circles
        assert!(Tangle::infinity().numerator().is_ok()); // one circle
    }

    #[test]
    fn octahedron_with_unit_fillings_is_a_three_component_link() {
        let single = |s: i8| Tangle::rational(&[s as i32]);
        let fillings = [single(1), single(1), single(1), single(1), single(1), single(1)];
        let d = substitute_octahedron(&fillings).unwrap();
        assert_eq!(d.crossings(), 6);
        assert_eq!(d.edges(), 12);
        assert!(matches!(
            d.long_wirtinger(0, false, false),
            Err(Error::MultiComponent(_))
        ));
    }
}
