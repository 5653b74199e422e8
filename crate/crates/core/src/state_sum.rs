//! Quandle 2-cocycle state-sum invariants and the lifting lemmas.
//!
//! A colouring's weight is the product over crossings of λ(a,b)^ε, where
//! a is the incoming under-colour and b the over-colour. The state sum
//! adds the weights of all closed colourings. For the section cocycle of
//! the covering Q̃(G,x) the weight of each colouring equals its longitude,
//! which makes the state sum |Q|·P_x^G — verified here numerically.

use std::sync::Arc;

use crate::colouring::{
    self, enumerate_colourings, longitude_of, ColouringAssignment, EngineConfig, EndRule,
};
use crate::diagram::WirtingerCode;
use crate::error::Error;
use crate::group::PointedGroup;
use crate::quandle::{cocycle_from_section, Augmentation, Cocycle2, CoveringQuandle, FiniteQuandle};
use crate::ring::RingElement;

/// A quandle colouring together with its total weight in Λ.
#[derive(Clone, Debug)]
pub struct WeightedColouring {
    pub colours: Vec<u16>,
    pub weight: usize,
}

/// The total weight Π λ(a,b)^ε over crossings. At a positive crossing
/// a is the incoming under-colour; at a negative crossing the inverse
/// weight is evaluated at the outgoing under-colour (the arc that plays
/// the incoming role for the mirrored positive crossing).
pub fn colouring_weight(code: &WirtingerCode, cocycle: &Cocycle2, colours: &[u16]) -> usize {
    let lambda = cocycle.lambda();
    let mut acc = lambda.identity();
    for i in 1..=code.crossings() {
        let b = colours[code.kappa(i)] as usize;
        if code.eps(i) > 0 {
            let a = colours[i - 1] as usize;
            acc = lambda.mul(acc, cocycle.value(a, b));
        } else {
            let a = colours[i] as usize;
            acc = lambda.mul(acc, lambda.inv(cocycle.value(a, b)));
        }
    }
    acc
}

/// All closed colourings based at `q`, with weights.
pub fn weighted_colourings(
    code: &WirtingerCode,
    quandle: &FiniteQuandle,
    cocycle: &Cocycle2,
    q: u16,
    cfg: &EngineConfig,
) -> Result<Vec<WeightedColouring>, Error> {
    let raw = colouring::quandle_colourings_closed(code, quandle, q, cfg)?;
    Ok(raw
        .into_iter()
        .map(|colours| {
            let weight = colouring_weight(code, cocycle, &colours);
            WeightedColouring { colours, weight }
        })
        .collect())
}

/// The state sum C_Q^λ(D) = Σ_f ⟨λ|f⟩ over all closed colourings, as an
/// element of ℤΛ. For connected Q the sum over basepoints collapses to
/// |Q| times one based sum.
pub fn state_sum(
    code: &WirtingerCode,
    quandle: &FiniteQuandle,
    cocycle: &Cocycle2,
    cfg: &EngineConfig,
) -> Result<RingElement, Error> {
    if cocycle.q_size() != quandle.size() {
        return Err(Error::Invalid("cocycle size does not match quandle".into()));
    }
    if !cocycle.verify(quandle) {
        return Err(Error::QuandleAxiom("invalid 2-cocycle".into()));
    }
    state_sum_unchecked(code, quandle, cocycle, cfg)
}

/// State sum without re-verifying the cocycle (for gauge-invariance
/// sweeps where the cocycle was already checked).
pub fn state_sum_unchecked(
    code: &WirtingerCode,
    quandle: &FiniteQuandle,
    cocycle: &Cocycle2,
    cfg: &EngineConfig,
) -> Result<RingElement, Error> {
    let lambda = cocycle.lambda().clone();
    let mut out = RingElement::zero(lambda);
    if quandle.is_connected() && quandle.size() > 0 {
        let q = quandle.basepoint().unwrap_or(0);
        for wc in weighted_colourings(code, quandle, cocycle, q, cfg)? {
            out.add_term(wc.weight, 1);
        }
        Ok(out.scale(quandle.size() as i64))
    } else {
        for q in 0..quandle.size() {
            for wc in weighted_colourings(code, quandle, cocycle, q as u16, cfg)? {
                out.add_term(wc.weight, 1);
            }
        }
        Ok(out)
    }
}

// ----------------------------------------------------------------------
// lifting

/// Lifts a group colouring through an augmentation to the unique quandle
/// colouring with f̃(0) = q (the quandle's basepoint).
pub fn lift_colouring(
    aug: &Augmentation,
    code: &WirtingerCode,
    colouring: &ColouringAssignment,
) -> Result<Vec<u16>, Error> {
    let group = aug.group();
    let quandle = aug.quandle();
    let q = quandle
        .basepoint()
        .ok_or_else(|| Error::Invalid("augmentation quandle needs a basepoint".into()))?
        as usize;
    let n = code.crossings();
    // partial longitudes ℓ_i; the lift is f̃(i) = q^{ℓ_i}
    let mut lift = Vec::with_capacity(n + 1);
    let mut ell = group.identity();
    lift.push(q as u16);
    for i in 1..=n {
        let prev = colouring.arcs[i - 1];
        let over = colouring.arcs[code.kappa(i)];
        let factor = if code.eps(i) > 0 {
            group.mul(group.inv(prev), over)
        } else {
            group.mul(prev, group.inv(over))
        };
        ell = group.mul(ell, factor);
        lift.push(aug.act(q, ell) as u16);
    }
    if !colouring::verify_assignment(code, quandle, &lift, EndRule::Free) {
        return Err(Error::Invalid("lift violates a crossing relation".into()));
    }
    debug_assert_eq!(lift[n] as usize, aug.act(q, colouring.longitude));
    Ok(lift)
}

/// The subset of group colourings whose longitude stabilizes q
/// (the closed-knot lifting bijection).
pub fn closed_lifting_filter(
    aug: &Augmentation,
    code: &WirtingerCode,
    cfg: &EngineConfig,
) -> Result<Vec<ColouringAssignment>, Error> {
    let group = aug.group();
    let quandle = aug.quandle();
    let q = quandle
        .basepoint()
        .ok_or_else(|| Error::Invalid("augmentation quandle needs a basepoint".into()))?
        as usize;
    if group.basepoint() != aug.phi(q) {
        return Err(Error::Invalid(
            "augmentation basepoints are incompatible: x must be φ(q)".into(),
        ));
    }
    let all = enumerate_colourings(code, group, cfg)?;
    Ok(all
        .into_iter()
        .filter(|c| aug.act(q, c.longitude) == q)
        .collect())
}

// ----------------------------------------------------------------------
// the two translation theorems, checked numerically

/// Builds Q = x^G, Q̃(G,x) and the section cocycle, and checks
/// C_Q^λ(D) = P_x^G(D)·|Q| as ring elements, plus the stronger
/// per-colouring fact that each weight equals the longitude.
pub fn crosscheck_cp_equals_ss(
    group: &Arc<PointedGroup>,
    code: &WirtingerCode,
    cfg: &EngineConfig,
) -> Result<bool, Error> {
    if !group.longitude_subgroup().is_abelian() {
        return Err(Error::LambdaNotAbelian("state-sum presentation".into()));
    }
    let covering = CoveringQuandle::new(group)?;
    let cocycle = cocycle_from_section(&covering)?;
    let quandle = covering.base();
    let ss = state_sum(code, quandle, &cocycle, cfg)?;
    let poly = colouring::colouring_polynomial(code, group, cfg)?;
    if !poly.support_in_lambda {
        return Ok(false);
    }
    // per-colouring: weight = longitude
    let (_, class) = quandle.carrier().unwrap();
    let class_idx: std::collections::HashMap<usize, u16> = class
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i as u16))
        .collect();
    for colouring in enumerate_colourings(code, group, cfg)? {
        let as_class: Vec<u16> = colouring.arcs.iter().map(|a| class_idx[a]).collect();
        let weight = colouring_weight(code, &cocycle, &as_class);
        let weight_in_g = covering.lambda().element(weight);
        if group.index_of(weight_in_g) != Some(colouring.longitude) {
            return Ok(false);
        }
    }
    let expected = poly.element.scale(quandle.size() as i64);
    Ok(ss.as_perm_map() == expected.as_perm_map())
}

/// The constructed data of the specialization theorem: a pointed group
/// G = Inn(Q̃) and the linear map φ: ℤG → ℤΛ.
pub struct Specialization {
    pub extension: FiniteQuandle,
    pub group: Arc<PointedGroup>,
    /// φ per group element: None where q^g ≠ q.
    pub phi: Vec<Option<usize>>,
    pub lambda: Arc<PointedGroup>,
}

/// Builds the central extension Q̃ of (Q, λ), the group G = Inn(Q̃) with
/// basepoint ϱ̃(q̃), and φ(g) = ℓ when q̃^g = ℓ·q̃ (0 when q^g ≠ q).
pub fn build_specialization(
    quandle: &FiniteQuandle,
    cocycle: &Cocycle2,
) -> Result<Specialization, Error> {
    if !quandle.is_connected() {
        return Err(Error::NotConnected);
    }
    if cocycle.q_size() != quandle.size() {
        return Err(Error::Invalid("cocycle size does not match quandle".into()));
    }
    if !cocycle.verify(quandle) {
        return Err(Error::QuandleAxiom("invalid 2-cocycle".into()));
    }
    let lambda = cocycle.lambda().clone();
    let nq = quandle.size();
    let nl = lambda.order();
    let size = nq * nl;
    let q0 = quandle.basepoint().unwrap_or(0) as usize;
    // extension elements (a, s) at index a·|Λ| + s with
    // (a,s)∗(b,t) = (a∗b, s·λ(a,b))
    let mut star = vec![0u16; size * size];
    for a in 0..nq {
        for s in 0..nl {
            let i = a * nl + s;
            for b in 0..nq {
                let ab = quandle.star(a, b);
                let s2 = lambda.mul(s, cocycle.value(a, b));
                for t in 0..nl {
                    let j = b * nl + t;
                    star[i * size + j] = (ab * nl + s2) as u16;
                }
            }
        }
    }
    let q_tilde = (q0 * nl + lambda.identity()) as u16;
    let extension = FiniteQuandle::from_star_table(size, star, Some(q_tilde))?;
    let report = extension.verify_axioms();
    if !report.pass() {
        return Err(Error::QuandleAxiom(format!(
            "cocycle extension is not a quandle: {}",
            report.describe()
        )));
    }
    let group = extension.inner_group()?;
    // φ from the action of Inn(Q̃) ⊆ Sym(Q̃) on q̃
    let phi: Vec<Option<usize>> = group
        .elements()
        .iter()
        .map(|perm| {
            let image = perm.apply(q_tilde as usize);
            let (a, s) = (image / nl, image % nl);
            if a == q0 {
                Some(s)
            } else {
                None
            }
        })
        .collect();
    Ok(Specialization {
        extension,
        group,
        phi,
        lambda,
    })
}

/// φP_x^G(D)·|Q| computed through the constructed group, asserted equal
/// to the direct state sum.
pub fn specialize_ss_to_cp(
    quandle: &FiniteQuandle,
    cocycle: &Cocycle2,
    code: &WirtingerCode,
    cfg: &EngineConfig,
) -> Result<RingElement, Error> {
    let spec = build_specialization(quandle, cocycle)?;
    let poly = colouring::colouring_polynomial(code, &spec.group, cfg)?;
    let mut specialized = RingElement::zero(spec.lambda.clone());
    for (g, c) in poly.element.terms() {
        if let Some(l) = spec.phi[g] {
            specialized.add_term(l, c);
        }
    }
    let result = specialized.scale(quandle.size() as i64);
    let direct = state_sum(code, quandle, cocycle, cfg)?;
    if result.as_perm_map() != direct.as_perm_map() {
        return Err(Error::Invalid(
            "specialized colouring polynomial disagrees with the state sum".into(),
        ));
    }
    Ok(result)
}

/// Longitude of an arc assignment, re-exported for callers enumerating
/// through other pipelines.
pub fn assignment_longitude(code: &WirtingerCode, group: &PointedGroup, arcs: &[usize]) -> usize {
    longitude_of(code, group, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{load_fixture, BraidWord, KnotSymmetry};
    use crate::group::BasepointSpec;
    use crate::quandle::coboundary;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn a5() -> Arc<PointedGroup> {
        PointedGroup::alternating(5, &BasepointSpec::Cycles("(1,2,3,4,5)".into())).unwrap()
    }

    fn trefoil() -> WirtingerCode {
        load_fixture("trefoil_left").unwrap().code(KnotSymmetry::Identity).unwrap()
    }

    fn fig8() -> WirtingerCode {
        BraidWord::parse("s1 s2^-1 s1 s2^-1", None).unwrap().to_long_wirtinger().unwrap()
    }

    #[test]
    fn unknot_state_sum_is_q() {
        let g = a5();
        let cov = CoveringQuandle::new(&g).unwrap();
        let cocycle = cocycle_from_section(&cov).unwrap();
        let cfg = EngineConfig::default();
        let ss = state_sum(&WirtingerCode::unknot(), cov.base(), &cocycle, &cfg).unwrap();
        assert_eq!(ss.augmentation(), 12);
        assert_eq!(ss.coefficient(cov.lambda().identity()), 12);
    }

    #[test]
    fn trefoil_state_sum_equals_p_times_q() {
        let g = a5();
        let cfg = EngineConfig::default();
        assert!(crosscheck_cp_equals_ss(&g, &trefoil(), &cfg).unwrap());
        assert!(crosscheck_cp_equals_ss(&g, &fig8(), &cfg).unwrap());
    }

    #[test]
    fn psl27_crosscheck() {
        let g = PointedGroup::psl2(7, &BasepointSpec::OrderRep(7)).unwrap();
        let cfg = EngineConfig::default();
        assert!(crosscheck_cp_equals_ss(&g, &fig8(), &cfg).unwrap());
    }

    #[test]
    fn gauge_invariance_under_coboundaries() {
        let g = a5();
        let cov = CoveringQuandle::new(&g).unwrap();
        let quandle = cov.base().clone();
        let cocycle = cocycle_from_section(&cov).unwrap();
        let cfg = EngineConfig::default();
        let lam = cov.lambda().clone();
        let baseline = state_sum(&trefoil(), &quandle, &cocycle, &cfg).unwrap();
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..5 {
            let mu: Vec<u16> = (0..quandle.size())
                .map(|_| rng.gen_range(0..lam.order()) as u16)
                .collect();
            let shifted = cocycle
                .product(&coboundary(&quandle, &lam, &mu).unwrap())
                .unwrap();
            let value = state_sum(&trefoil(), &quandle, &shifted, &cfg).unwrap();
            assert_eq!(value.as_perm_map(), baseline.as_perm_map());
        }
    }

    #[test]
    fn based_sums_agree_across_basepoints() {
        // connected Q: the weighted based sum is the same for every q',
        // which is what lets the state sum collapse to |Q| times one sum
        let g = a5();
        let cov = CoveringQuandle::new(&g).unwrap();
        let cocycle = cocycle_from_section(&cov).unwrap();
        let quandle = cov.base();
        let cfg = EngineConfig::default();
        let code = trefoil();
        let reference: Vec<usize> = {
            let mut weights: Vec<usize> =
                weighted_colourings(&code, quandle, &cocycle, 0, &cfg)
                    .unwrap()
                    .into_iter()
                    .map(|w| w.weight)
                    .collect();
            weights.sort_unstable();
            weights
        };
        for q in 1..quandle.size() {
            let mut weights: Vec<usize> =
                weighted_colourings(&code, quandle, &cocycle, q as u16, &cfg)
                    .unwrap()
                    .into_iter()
                    .map(|w| w.weight)
                    .collect();
            weights.sort_unstable();
            assert_eq!(weights, reference, "basepoint {}", q);
        }
    }

    #[test]
    fn transported_colourings_keep_their_weights() {
        // conjugation invariance: the weight of f^g equals the weight of f
        let g = a5();
        let cov = CoveringQuandle::new(&g).unwrap();
        let cocycle = cocycle_from_section(&cov).unwrap();
        let quandle = cov.base().clone();
        let (_, class) = quandle.carrier().unwrap();
        let class = class.clone();
        let class_idx: std::collections::HashMap<usize, u16> = class
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i as u16))
            .collect();
        let cfg = EngineConfig::default();
        let code = trefoil();
        let colourings = enumerate_colourings(&code, &g, &cfg).unwrap();
        for conjugator in g.commutator_cached().members().iter().step_by(7) {
            for colouring in &colourings {
                let original: Vec<u16> =
                    colouring.arcs.iter().map(|a| class_idx[a]).collect();
                let transported: Vec<u16> = colouring
                    .arcs
                    .iter()
                    .map(|&a| class_idx[&g.conj(a, *conjugator)])
                    .collect();
                assert_eq!(
                    colouring_weight(&code, &cocycle, &transported),
                    colouring_weight(&code, &cocycle, &original)
                );
            }
        }
    }

    #[test]
    fn lifting_count_equality() {
        let g = a5();
        let aug = Augmentation::inclusion(&g).unwrap();
        assert!(aug.verify());
        let cfg = EngineConfig::default();
        for code in [trefoil(), fig8()] {
            let group_colourings = enumerate_colourings(&code, &g, &cfg).unwrap();
            let quandle_colourings = colouring::quandle_colourings_based_long(
                &code,
                aug.quandle(),
                aug.quandle().basepoint().unwrap(),
                &cfg,
            )
            .unwrap();
            assert_eq!(group_colourings.len(), quandle_colourings.len());
            // lifts are exactly the based quandle colourings
            let mut lifted: Vec<Vec<u16>> = group_colourings
                .iter()
                .map(|c| lift_colouring(&aug, &code, c).unwrap())
                .collect();
            let mut expected = quandle_colourings;
            lifted.sort();
            expected.sort();
            assert_eq!(lifted, expected);
        }
    }

    #[test]
    fn trivial_colouring_lifts_constantly() {
        let g = a5();
        let aug = Augmentation::inclusion(&g).unwrap();
        let code = trefoil();
        let trivial = ColouringAssignment {
            arcs: vec![g.basepoint(); code.crossings() + 1],
            longitude: g.identity(),
        };
        let lift = lift_colouring(&aug, &code, &trivial).unwrap();
        let q = aug.quandle().basepoint().unwrap();
        assert!(lift.iter().all(|&c| c == q));
    }

    #[test]
    fn closed_filter_keeps_all_for_inner_basepoint() {
        // longitudes lie in C(x), so they stabilize q = x
        let g = a5();
        let aug = Augmentation::inclusion(&g).unwrap();
        let cfg = EngineConfig::default();
        let all = enumerate_colourings(&trefoil(), &g, &cfg).unwrap();
        let kept = closed_lifting_filter(&aug, &trefoil(), &cfg).unwrap();
        assert_eq!(all.len(), kept.len());
    }

    #[test]
    fn closed_filter_cuts_for_the_covering_augmentation() {
        // the inner augmentation on the covering quandle has basepoint
        // q~ = (x,1); deck-nontrivial longitudes move it, so the closed
        // filter keeps strictly fewer colourings and agrees with the
        // closed quandle count
        let g = a5();
        let cov = CoveringQuandle::new(&g).unwrap();
        let q_tilde = cov.as_finite_quandle();
        let aug = Augmentation::inner(&q_tilde).unwrap();
        assert!(aug.verify());
        let cfg = EngineConfig::default();
        let code = trefoil();
        let all = enumerate_colourings(&code, aug.group(), &cfg).unwrap();
        let kept = closed_lifting_filter(&aug, &code, &cfg).unwrap();
        let closed_q = colouring::quandle_colourings_closed(
            &code,
            &q_tilde,
            q_tilde.basepoint().unwrap(),
            &cfg,
        )
        .unwrap();
        assert_eq!(kept.len(), closed_q.len());
        assert!(
            kept.len() < all.len(),
            "filter must cut: kept {} of {}",
            kept.len(),
            all.len()
        );
    }

    #[test]
    fn specialization_round_trip_trefoil() {
        let g = a5();
        let cov = CoveringQuandle::new(&g).unwrap();
        let quandle = cov.base().clone();
        let cocycle = cocycle_from_section(&cov).unwrap();
        let cfg = EngineConfig::default();
        let value = specialize_ss_to_cp(&quandle, &cocycle, &trefoil(), &cfg).unwrap();
        let direct = state_sum(&trefoil(), &quandle, &cocycle, &cfg).unwrap();
        assert_eq!(value.as_perm_map(), direct.as_perm_map());
        // and both equal P·|Q|
        let p = colouring::colouring_polynomial(&trefoil(), &g, &cfg).unwrap();
        assert_eq!(
            value.augmentation(),
            p.element.augmentation() * quandle.size() as i64
        );
    }

    #[test]
    fn specialization_with_trivial_cocycle_counts_colourings() {
        let g = a5();
        let cov = CoveringQuandle::new(&g).unwrap();
        let quandle = cov.base().clone();
        let trivial = Cocycle2::trivial(quandle.size(), cov.lambda().clone());
        let cfg = EngineConfig::default();
        let value = specialize_ss_to_cp(&quandle, &trivial, &trefoil(), &cfg).unwrap();
        // all weights collapse to the identity: the value is a count
        let direct = state_sum(&trefoil(), &quandle, &trivial, &cfg).unwrap();
        assert_eq!(value.as_perm_map(), direct.as_perm_map());
        let lam_id = trivial.lambda().identity();
        assert_eq!(value.coefficient(lam_id), value.augmentation());
    }
}
