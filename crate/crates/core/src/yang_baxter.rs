//! Yang-Baxter operators from quandles and the braid-trace presentation
//! of the colouring polynomial.
//!
//! The plain operator c_Q sends a⊗b to b⊗(a∗b); the deformed operator
//! c̃_Q additionally multiplies by the section cocycle value λ(a,b) ∈ Λ.
//! Braid images are monomial matrices over ℤΛ and are never
//! materialized: words act as labelled tuple maps, and traces sum the
//! Λ-eigenvalues of fixed basis tuples — which is exactly a colouring
//! search over the closed braid.

use std::sync::Arc;

use crate::diagram::braid::BraidWord;
use crate::error::Error;
use crate::group::PointedGroup;
use crate::quandle::{cocycle_from_section, Cocycle2, CoveringQuandle, FiniteQuandle};
use crate::ring::RingElement;

/// A quandle-derived Yang-Baxter operator with Λ labels. Labels are the
/// identity for the plain c_Q; for c̃_Q they come from the covering's
/// section cocycle on the basis B = s(Q).
pub struct YbOperator {
    quandle: FiniteQuandle,
    labels: Cocycle2,
    deformed: bool,
}

impl YbOperator {
    /// c_Q for Q = x^G with identity labels.
    pub fn plain(group: &Arc<PointedGroup>) -> Result<Self, Error> {
        let quandle = FiniteQuandle::conjugation(group)?;
        let lambda = group.lambda_as_group()?;
        let labels = Cocycle2::trivial(quandle.size(), lambda);
        Ok(YbOperator {
            quandle,
            labels,
            deformed: false,
        })
    }

    /// c̃_Q with labels λ(a,b) from the covering section; requires Λ
    /// abelian.
    pub fn deformed(group: &Arc<PointedGroup>) -> Result<Self, Error> {
        if !group.longitude_subgroup().is_abelian() {
            return Err(Error::LambdaNotAbelian("the deformed operator".into()));
        }
        let covering = CoveringQuandle::new(group)?;
        let labels = cocycle_from_section(&covering)?;
        Ok(YbOperator {
            quandle: covering.base().clone(),
            labels,
            deformed: true,
        })
    }

    /// A deformed-style operator from an explicit cocycle.
    pub fn from_cocycle(quandle: FiniteQuandle, labels: Cocycle2) -> Result<Self, Error> {
        if labels.q_size() != quandle.size() {
            return Err(Error::Invalid("cocycle size does not match quandle".into()));
        }
        Ok(YbOperator {
            quandle,
            labels,
            deformed: true,
        })
    }

    pub fn basis_size(&self) -> usize {
        self.quandle.size()
    }

    pub fn is_deformed(&self) -> bool {
        self.deformed
    }

    pub fn lambda(&self) -> &Arc<PointedGroup> {
        self.labels.lambda()
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    /// c(a⊗b) = λ(a,b) · b⊗(a∗b).
    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> (usize, usize, usize) {
        (b, self.quandle.star(a, b), self.labels.value(a, b))
    }

    /// c⁻¹(u⊗v) = λ(v⊲u, u)⁻¹ · (v⊲u)⊗u; the label index returned is
    /// the inverse element.
    #[inline]
    pub fn apply_inverse(&self, u: usize, v: usize) -> (usize, usize, usize) {
        let a = self.quandle.wedge(v, u);
        let label = self.labels.value(a, u);
        (a, u, self.lambda().inv(label))
    }

    /// Exhaustive Yang-Baxter equation on basis triples, labels included:
    /// (c⊗id)(id⊗c)(c⊗id) = (id⊗c)(c⊗id)(id⊗c).
    pub fn verify_yang_baxter(&self) -> bool {
        let n = self.basis_size();
        let lam = self.lambda();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // left side: c12, c23, c12
                    let (mut l1, mut l2, mut l3) = (a, b, c);
                    let mut left = lam.identity();
                    let (x, y, w) = self.apply(l1, l2);
                    l1 = x;
                    l2 = y;
                    left = lam.mul(left, w);
                    let (x, y, w) = self.apply(l2, l3);
                    l2 = x;
                    l3 = y;
                    left = lam.mul(left, w);
                    let (x, y, w) = self.apply(l1, l2);
                    l1 = x;
                    l2 = y;
                    left = lam.mul(left, w);
                    // right side: c23, c12, c23
                    let (mut r1, mut r2, mut r3) = (a, b, c);
                    let mut right = lam.identity();
                    let (x, y, w) = self.apply(r2, r3);
                    r2 = x;
                    r3 = y;
                    right = lam.mul(right, w);
                    let (x, y, w) = self.apply(r1, r2);
                    r1 = x;
                    r2 = y;
                    right = lam.mul(right, w);
                    let (x, y, w) = self.apply(r2, r3);
                    r2 = x;
                    r3 = y;
                    right = lam.mul(right, w);
                    if (l1, l2, l3, left) != (r1, r2, r3, right) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Far commutation c₁c₃ = c₃c₁ on basis 4-tuples.
    pub fn verify_far_commutation(&self) -> bool {
        let n = self.basis_size();
        let lam = self.lambda();
        for a in 0..n {
            for b in 0..n {
                let (ab1, ab2, wab) = self.apply(a, b);
                for c in 0..n {
                    for d in 0..n {
                        let (cd1, cd2, wcd) = self.apply(c, d);
                        // both orders must agree
                        let left = (ab1, ab2, cd1, cd2, lam.mul(wab, wcd));
                        let right = (ab1, ab2, cd1, cd2, lam.mul(wcd, wab));
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// tr₂(c^{±1}) = id, entries computed per the matrix definition
    /// g_i^k = Σ_j f_{ij}^{kj} over ℤΛ.
    pub fn verify_trace_condition(&self) -> bool {
        let n = self.basis_size();
        let lam = self.lambda().clone();
        for inverse in [false, true] {
            for i in 0..n {
                for k in 0..n {
                    let mut entry = RingElement::zero(lam.clone());
                    for j in 0..n {
                        let (out1, out2, w) = if inverse {
                            self.apply_inverse(i, j)
                        } else {
                            self.apply(i, j)
                        };
                        if out1 == k && out2 == j {
                            entry.add_term(w, 1);
                        }
                    }
                    let expected = if i == k {
                        RingElement::one(lam.clone())
                    } else {
                        RingElement::zero(lam.clone())
                    };
                    if entry != expected {
                        return false;
                    }
                }
            }
        }
        true
    }
}

// ----------------------------------------------------------------------
// braid evaluation

/// Applies the braid word to a basis tuple, accumulating the Λ label.
/// Letters act on adjacent positions; positive letters apply c, negative
/// ones c⁻¹.
fn run_word(op: &YbOperator, braid: &BraidWord, tuple: &mut [usize]) -> usize {
    let lam = op.lambda();
    let mut label = lam.identity();
    for &(i, s) in braid.letters() {
        let (a, b) = (tuple[i - 1], tuple[i]);
        let (x, y, w) = if s > 0 {
            op.apply(a, b)
        } else {
            op.apply_inverse(a, b)
        };
        tuple[i - 1] = x;
        tuple[i] = y;
        label = lam.mul(label, w);
    }
    label
}

/// The closed-braid trace Σ over fixed basis tuples of their
/// Λ-eigenvalues: F̃_Q(β) ∈ ℤΛ. For the deformed operator this equals
/// P_x^G of the closure times |Q|.
pub fn closed_trace(braid: &BraidWord, op: &YbOperator) -> Result<RingElement, Error> {
    if !braid.is_knot() {
        return Err(Error::MultiComponent(braid.closure_components()));
    }
    let n = braid.strands();
    let size = op.basis_size();
    let lam = op.lambda().clone();
    let mut out = RingElement::zero(lam);
    let mut tuple = vec![0usize; n];
    let mut scratch = vec![0usize; n];
    loop {
        scratch.copy_from_slice(&tuple);
        let label = run_word(op, braid, &mut scratch);
        if scratch == tuple {
            out.add_term(label, 1);
        }
        // odometer over basis tuples
        let mut k = 0;
        loop {
            if k == n {
                return Ok(out);
            }
            tuple[k] += 1;
            if tuple[k] < size {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
}

/// The partial trace over tensor factors 2..n of the braid image on
/// K Q̃: fixes the other coordinates, and returns the ℤΛ scalar by which
/// the first factor is multiplied. The scalar is checked to be the same
/// over every fibre basis vector; a non-scalar result is a hard error.
pub fn long_partial_trace(
    braid: &BraidWord,
    covering: &CoveringQuandle,
) -> Result<RingElement, Error> {
    if !braid.is_knot() {
        return Err(Error::MultiComponent(braid.closure_components()));
    }
    let n = braid.strands();
    let size = covering.size();
    let lam = covering.lambda().clone();
    let letters = braid.letters();

    let run = |tuple: &mut [usize]| {
        for &(i, s) in letters {
            let (a, b) = (tuple[i - 1], tuple[i]);
            if s > 0 {
                let (x, y) = (b, covering.star(a, b));
                tuple[i - 1] = x;
                tuple[i] = y;
            } else {
                let (x, y) = (covering.wedge(b, a), a);
                tuple[i - 1] = x;
                tuple[i] = y;
            }
        }
    };

    let mut reference: Option<RingElement> = None;
    for start in 0..size {
        let mut scalar = RingElement::zero(lam.clone());
        let mut rest = vec![0usize; n - 1];
        'tuples: loop {
            let mut tuple = Vec::with_capacity(n);
            tuple.push(start);
            tuple.extend_from_slice(&rest);
            let input = tuple.clone();
            run(&mut tuple);
            if tuple[1..] == input[1..] {
                // contributes to the endomorphism entry (start -> tuple[0])
                let deck = covering.deck_between(start, tuple[0]).map_err(|_| {
                    Error::NonScalar(format!(
                        "tuple map sends fibre of {} off its fibre",
                        start
                    ))
                })?;
                scalar.add_term(deck, 1);
            }
            let mut k = 0;
            loop {
                if k == n - 1 {
                    break 'tuples;
                }
                rest[k] += 1;
                if rest[k] < size {
                    break;
                }
                rest[k] = 0;
                k += 1;
            }
        }
        match &reference {
            None => reference = Some(scalar),
            Some(existing) => {
                if *existing != scalar {
                    return Err(Error::NonScalar(
                        "per-fibre eigenvalues disagree across basis vectors".into(),
                    ));
                }
            }
        }
    }
    Ok(reference.expect("the covering quandle is nonempty"))
}

/// Markov-move spot check: the closed trace is unchanged under both
/// stabilizations and `trials` random conjugations.
pub struct MarkovReport {
    pub baseline: RingElement,
    pub stabilization_up_ok: bool,
    pub stabilization_down_ok: bool,
    pub conjugations_ok: usize,
    pub trials: usize,
}

impl MarkovReport {
    pub fn all_ok(&self) -> bool {
        self.stabilization_up_ok
            && self.stabilization_down_ok
            && self.conjugations_ok == self.trials
    }
}

pub fn markov_spot_check(
    braid: &BraidWord,
    op: &YbOperator,
    trials: usize,
    seed: u64,
) -> Result<MarkovReport, Error> {
    let baseline = closed_trace(braid, op)?;
    let up = closed_trace(&braid.stabilize(1), op)?;
    let down = closed_trace(&braid.stabilize(-1), op)?;
    let mut rng = seed.max(1);
    let mut next = move || {
        // xorshift64
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };
    let mut conjugations_ok = 0;
    for _ in 0..trials {
        if braid.strands() < 2 {
            // Br_1 is trivial; conjugation is a no-op
            conjugations_ok += 1;
            continue;
        }
        let mut letters = Vec::new();
        let len = 1 + (next() % 4) as usize;
        for _ in 0..len {
            let idx = 1 + (next() as usize) % (braid.strands() - 1);
            let sign = if next() % 2 == 0 { 1 } else { -1 };
            letters.push((idx, sign));
        }
        let alpha = BraidWord::new(braid.strands(), letters)?;
        let conjugated = braid.conjugate(&alpha);
        let value = closed_trace(&conjugated, op)?;
        if value == baseline {
            conjugations_ok += 1;
        }
    }
    Ok(MarkovReport {
        stabilization_up_ok: up == baseline,
        stabilization_down_ok: down == baseline,
        conjugations_ok,
        trials,
        baseline,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{colouring_polynomial, EngineConfig};
    use crate::group::BasepointSpec;

    fn a5() -> Arc<PointedGroup> {
        PointedGroup::alternating(5, &BasepointSpec::Cycles("(1,2,3,4,5)".into())).unwrap()
    }

    fn trefoil_braid() -> BraidWord {
        BraidWord::parse("s1^-3", None).unwrap()
    }

    fn fig8_braid() -> BraidWord {
        BraidWord::parse("s1 s2^-1 s1 s2^-1", None).unwrap()
    }

    #[test]
    fn operators_satisfy_axioms_a5() {
        let g = a5();
        for op in [YbOperator::plain(&g).unwrap(), YbOperator::deformed(&g).unwrap()] {
            assert!(op.verify_yang_baxter());
            assert!(op.verify_far_commutation());
            assert!(op.verify_trace_condition());
        }
    }

    #[test]
    fn deformed_labels_are_normalized() {
        let g = a5();
        let op = YbOperator::deformed(&g).unwrap();
        for a in 0..op.basis_size() {
            let (_, _, w) = op.apply(a, a);
            assert_eq!(w, op.lambda().identity());
        }
    }

    #[test]
    fn closed_trace_identity_braid() {
        let g = a5();
        let op = YbOperator::deformed(&g).unwrap();
        let id = BraidWord::parse("", None).unwrap();
        let trace = closed_trace(&id, &op).unwrap();
        assert_eq!(trace.coefficient(op.lambda().identity()), 12);
    }

    #[test]
    fn closed_trace_matches_polynomial_times_q() {
        let g = a5();
        let op = YbOperator::deformed(&g).unwrap();
        let cfg = EngineConfig::default();
        for braid in [trefoil_braid(), fig8_braid()] {
            let trace = closed_trace(&braid, &op).unwrap();
            let code = braid.to_long_wirtinger().unwrap();
            let poly = colouring_polynomial(&code, &g, &cfg).unwrap();
            let expected = poly.element.scale(op.basis_size() as i64);
            assert_eq!(trace.as_perm_map(), expected.as_perm_map());
        }
    }

    #[test]
    fn plain_trace_counts_colourings() {
        let g = a5();
        let op = YbOperator::plain(&g).unwrap();
        let cfg = EngineConfig::default();
        let trace = closed_trace(&trefoil_braid(), &op).unwrap();
        let code = trefoil_braid().to_long_wirtinger().unwrap();
        let poly = colouring_polynomial(&code, &g, &cfg).unwrap();
        assert_eq!(
            trace.coefficient(op.lambda().identity()),
            poly.element.augmentation() * 12
        );
    }

    #[test]
    fn long_partial_trace_trefoil() {
        let g = a5();
        let covering = CoveringQuandle::new(&g).unwrap();
        let cfg = EngineConfig::default();
        let scalar = long_partial_trace(&trefoil_braid(), &covering).unwrap();
        let code = trefoil_braid().to_long_wirtinger().unwrap();
        let poly = colouring_polynomial(&code, &g, &cfg).unwrap();
        assert_eq!(scalar.as_perm_map(), poly.element.as_perm_map());
    }

    #[test]
    fn empty_braid_partial_trace_is_one() {
        let g = a5();
        let covering = CoveringQuandle::new(&g).unwrap();
        let id = BraidWord::parse("", None).unwrap();
        let scalar = long_partial_trace(&id, &covering).unwrap();
        assert_eq!(scalar.coefficient(covering.lambda().identity()), 1);
        assert_eq!(scalar.augmentation(), 1);
    }

    #[test]
    fn deformation_is_yang_baxter_iff_cocycle() {
        // enumerate every Λ-labelling of the 3-element dihedral quandle
        // with Λ = Z/3 and check that the labelled operator satisfies the
        // braid relation exactly when the label table satisfies the
        // cocycle identity
        let quandle = FiniteQuandle::dihedral(3);
        let lambda = crate::group::PointedGroup::alternating(
            3,
            &crate::group::BasepointSpec::Cycles("(1,2,3)".into()),
        )
        .unwrap();
        let mut ybe_tables = Vec::new();
        let mut cocycle_tables = Vec::new();
        for mask in 0..3u32.pow(9) {
            let mut values = Vec::with_capacity(9);
            let mut m = mask;
            for _ in 0..9 {
                values.push((m % 3) as u16);
                m /= 3;
            }
            let labels = Cocycle2::new(3, lambda.clone(), values).unwrap();
            let satisfies_cocycle = {
                // the cocycle identity alone, without normalization
                let mut ok = true;
                'outer: for a in 0..3 {
                    for b in 0..3 {
                        let ab = quandle.star(a, b);
                        for c in 0..3 {
                            let ac = quandle.star(a, c);
                            let bc = quandle.star(b, c);
                            let mut acc = labels.value(a, c);
                            acc = lambda.mul(acc, lambda.inv(labels.value(a, b)));
                            acc = lambda.mul(acc, labels.value(ac, bc));
                            acc = lambda.mul(acc, lambda.inv(labels.value(ab, c)));
                            if acc != lambda.identity() {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
                ok
            };
            let op = YbOperator::from_cocycle(quandle.clone(), labels).unwrap();
            let satisfies_ybe = op.verify_yang_baxter();
            if satisfies_ybe {
                ybe_tables.push(mask);
            }
            if satisfies_cocycle {
                cocycle_tables.push(mask);
            }
        }
        assert_eq!(ybe_tables, cocycle_tables);
        assert!(!ybe_tables.is_empty());
    }

    #[test]
    fn markov_moves_preserve_trace() {
        let g = a5();
        let op = YbOperator::deformed(&g).unwrap();
        let report = markov_spot_check(&trefoil_braid(), &op, 5, 97).unwrap();
        assert!(report.all_ok());
    }
}
