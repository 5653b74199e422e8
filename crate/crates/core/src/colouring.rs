//! Colouring enumeration and the colouring polynomial.
//!
//! Colours of a long-knot diagram live in the conjugacy class x^G (every
//! Wirtinger generator is conjugate to the meridian), which is exactly
//! the conjugation quandle of (G,x). The search fixes arc 0 (and, for
//! based long knots, arc n) to the basepoint, seeds a small set of arcs
//! whose colours determine all others by propagation through the
//! crossing relations, and backtracks over seed assignments with checks
//! executed as early as possible.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use crate::diagram::WirtingerCode;
use crate::error::Error;
use crate::group::PointedGroup;
use crate::quandle::FiniteQuandle;
use crate::ring::RingElement;

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub workers: usize,
    pub node_cap: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            workers: 1,
            node_cap: 10_000_000_000,
        }
    }
}

/// Whether arc n is pinned to arc 0's colour (group colourings and
/// closed diagrams) or left free (long-knot quandle colourings).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EndRule {
    Closed,
    Free,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Star,
    Wedge,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Derive {
        target: usize,
        source: usize,
        over: usize,
        op: Op,
    },
    Check {
        arc: usize,
        source: usize,
        over: usize,
        op: Op,
    },
}

#[derive(Clone, Debug)]
struct Stage {
    seed: Option<usize>,
    steps: Vec<Step>,
}

/// A compiled search plan for one diagram.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    arcs: usize, // n+1
    stages: Vec<Stage>,
}

impl SearchPlan {
    pub fn seed_count(&self) -> usize {
        self.stages.iter().filter(|s| s.seed.is_some()).count()
    }
}

/// How many seed subsets the exact planner may simulate before falling
/// back to the greedy choice.
const PLAN_SUBSET_BUDGET: usize = 100_000;

fn crossing_ops(eps: i8) -> (Op, Op) {
    // forward: x_i = x_{ i-1} op x_{κi}; backward inverts the translation
    if eps > 0 {
        (Op::Star, Op::Wedge)
    } else {
        (Op::Wedge, Op::Star)
    }
}

/// Sweeps the crossing relations, deriving every arc that is determined
/// by the known set; emits steps in order.
fn propagate(code: &WirtingerCode, known: &mut [bool], used: &mut [bool], steps: &mut Vec<Step>) {
    let n = code.crossings();
    loop {
        let mut progress = false;
        for i in 1..=n {
            if used[i - 1] {
                continue;
            }
            let over = code.kappa(i);
            if !known[over] {
                continue;
            }
            let (fwd, bwd) = crossing_ops(code.eps(i));
            match (known[i - 1], known[i]) {
                (true, true) => {
                    steps.push(Step::Check {
                        arc: i,
                        source: i - 1,
                        over,
                        op: fwd,
                    });
                    used[i - 1] = true;
                    progress = true;
                }
                (true, false) => {
                    steps.push(Step::Derive {
                        target: i,
                        source: i - 1,
                        over,
                        op: fwd,
                    });
                    known[i] = true;
                    used[i - 1] = true;
                    progress = true;
                }
                (false, true) => {
                    steps.push(Step::Derive {
                        target: i - 1,
                        source: i,
                        over,
                        op: bwd,
                    });
                    known[i - 1] = true;
                    used[i - 1] = true;
                    progress = true;
                }
                (false, false) => {}
            }
        }
        if !progress {
            return;
        }
    }
}

fn simulate_completes(code: &WirtingerCode, base_known: &[bool], extra: &[usize]) -> bool {
    let mut known = base_known.to_vec();
    for &arc in extra {
        known[arc] = true;
    }
    let mut used = vec![false; code.crossings()];
    let mut steps = Vec::new();
    propagate(code, &mut known, &mut used, &mut steps);
    known.iter().all(|&k| k)
}

/// Compiles the propagation plan: stage 0 derives what arc 0 (and arc n,
/// when closed) force; further stages each assign one seed arc. The seed
/// set is minimal when small enough to find exactly.
pub fn plan(code: &WirtingerCode, end: EndRule) -> Result<SearchPlan, Error> {
    let n = code.crossings();
    let arcs = n + 1;
    let mut known = vec![false; arcs];
    known[0] = true;
    if end == EndRule::Closed {
        known[n] = true;
    }
    let mut used = vec![false; n];
    let mut stages = Vec::new();
    let mut steps = Vec::new();
    propagate(code, &mut known, &mut used, &mut steps);
    stages.push(Stage { seed: None, steps });

    // choose seeds for whatever propagation cannot reach
    let unknown: Vec<usize> = (0..arcs).filter(|&a| !known[a]).collect();
    if !unknown.is_empty() {
        let mut seeds: Option<Vec<usize>> = None;
        'sizes: for k in 1..=unknown.len() {
            let count: usize = num_combinations(unknown.len(), k);
            if count > PLAN_SUBSET_BUDGET {
                break 'sizes;
            }
            let mut chosen = None;
            combinations(&unknown, k, &mut |subset| {
                if chosen.is_none() && simulate_completes(code, &known, subset) {
                    chosen = Some(subset.to_vec());
                }
            });
            if let Some(s) = chosen {
                seeds = Some(s);
                break 'sizes;
            }
        }
        let seeds = match seeds {
            Some(s) => s,
            None => greedy_seeds(code, &known),
        };
        for seed in seeds {
            known[seed] = true;
            let mut steps = Vec::new();
            propagate(code, &mut known, &mut used, &mut steps);
            stages.push(Stage {
                seed: Some(seed),
                steps,
            });
        }
    }
    if !known.iter().all(|&k| k) || !used.iter().all(|&u| u) {
        return Err(Error::Invalid("propagation plan failed to cover the diagram".into()));
    }
    Ok(SearchPlan { arcs, stages })
}

fn num_combinations(n: usize, k: usize) -> usize {
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn combinations(items: &[usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    let mut index = (0..k).collect::<Vec<_>>();
    loop {
        let subset: Vec<usize> = index.iter().map(|&i| items[i]).collect();
        visit(&subset);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if index[i] != i + items.len() - k {
                index[i] += 1;
                for j in i + 1..k {
                    index[j] = index[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn greedy_seeds(code: &WirtingerCode, base_known: &[bool]) -> Vec<usize> {
    let mut known = base_known.to_vec();
    let mut seeds = Vec::new();
    while !known.iter().all(|&k| k) {
        let mut best: Option<(usize, usize)> = None; // (newly known, arc)
        for arc in 0..known.len() {
            if known[arc] {
                continue;
            }
            let mut trial = known.clone();
            trial[arc] = true;
            let mut used = vec![false; code.crossings()];
            let mut steps = Vec::new();
            propagate(code, &mut trial, &mut used, &mut steps);
            let newly = trial.iter().filter(|&&k| k).count();
            let better = match best {
                None => true,
                Some((score, _)) => newly > score,
            };
            if better {
                best = Some((newly, arc));
            }
        }
        let (_, arc) = best.expect("some arc is still unknown");
        seeds.push(arc);
        known[arc] = true;
        let mut used = vec![false; code.crossings()];
        let mut steps = Vec::new();
        propagate(code, &mut known, &mut used, &mut steps);
    }
    seeds
}

// ----------------------------------------------------------------------
// execution

struct ExecCtx<'a> {
    quandle: &'a FiniteQuandle,
    stages: &'a [Stage],
    cap: u64,
    nodes: &'a AtomicU64,
}

impl<'a> ExecCtx<'a> {
    #[inline]
    fn op(&self, op: Op, a: usize, b: usize) -> usize {
        match op {
            Op::Star => self.quandle.star(a, b),
            Op::Wedge => self.quandle.wedge(a, b),
        }
    }

    fn exec_stage(&self, stage: &Stage, colours: &mut [u16]) -> Result<bool, Error> {
        let spent = self.nodes.fetch_add(stage.steps.len() as u64, Ordering::Relaxed);
        if spent > self.cap {
            return Err(Error::LimitExceeded(self.cap));
        }
        for step in &stage.steps {
            match *step {
                Step::Derive {
                    target,
                    source,
                    over,
                    op,
                } => {
                    colours[target] =
                        self.op(op, colours[source] as usize, colours[over] as usize) as u16;
                }
                Step::Check {
                    arc,
                    source,
                    over,
                    op,
                } => {
                    let expected =
                        self.op(op, colours[source] as usize, colours[over] as usize) as u16;
                    if colours[arc] != expected {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn recurse(
        &self,
        stage_idx: usize,
        colours: &mut [u16],
        results: &mut Vec<Vec<u16>>,
    ) -> Result<(), Error> {
        if stage_idx == self.stages.len() {
            results.push(colours.to_vec());
            return Ok(());
        }
        let stage = &self.stages[stage_idx];
        match stage.seed {
            None => {
                if self.exec_stage(stage, colours)? {
                    self.recurse(stage_idx + 1, colours, results)?;
                }
            }
            Some(seed_arc) => {
                for value in 0..self.quandle.size() {
                    colours[seed_arc] = value as u16;
                    if self.exec_stage(stage, colours)? {
                        self.recurse(stage_idx + 1, colours, results)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Runs a compiled plan over the given quandle with arc 0 coloured `q0`
/// (and arc n as well when the plan was built with `EndRule::Closed`).
/// Returns accepted colourings as per-arc quandle indices, in
/// lexicographic seed order regardless of worker count.
pub fn run_plan(
    plan: &SearchPlan,
    quandle: &FiniteQuandle,
    q0: u16,
    end: EndRule,
    cfg: &EngineConfig,
) -> Result<Vec<Vec<u16>>, Error> {
    let n = plan.arcs - 1;
    let mut colours = vec![0u16; plan.arcs];
    colours[0] = q0;
    if end == EndRule::Closed {
        colours[n] = q0;
    }
    if n == 0 {
        return Ok(vec![colours]);
    }
    let nodes = AtomicU64::new(0);
    let ctx = ExecCtx {
        quandle,
        stages: &plan.stages,
        cap: cfg.node_cap,
        nodes: &nodes,
    };

    // peel leading seedless stages sequentially
    let mut first_seeded = None;
    for (k, stage) in plan.stages.iter().enumerate() {
        match stage.seed {
            None => {
                if !ctx.exec_stage(stage, &mut colours)? {
                    return Ok(Vec::new());
                }
            }
            Some(_) => {
                first_seeded = Some(k);
                break;
            }
        }
    }
    let Some(first) = first_seeded else {
        return Ok(vec![colours]);
    };

    if cfg.workers <= 1 {
        let mut results = Vec::new();
        ctx.recurse(first, &mut colours, &mut results)?;
        return Ok(results);
    }

    // parallelize over the first seeded stage's colour choices
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {}", e)))?;
    let seed_arc = plan.stages[first].seed.unwrap();
    let branches: Result<Vec<Vec<Vec<u16>>>, Error> = pool.install(|| {
        (0..quandle.size())
            .into_par_iter()
            .map(|value| {
                let mut local = colours.clone();
                local[seed_arc] = value as u16;
                let mut results = Vec::new();
                if ctx.exec_stage(&plan.stages[first], &mut local)? {
                    ctx.recurse(first + 1, &mut local, &mut results)?;
                }
                Ok(results)
            })
            .collect()
    });
    Ok(branches?.into_iter().flatten().collect())
}

/// Post-hoc verification that an assignment satisfies every crossing
/// relation (and the closure condition when `end` is `Closed`).
pub fn verify_assignment(
    code: &WirtingerCode,
    quandle: &FiniteQuandle,
    colours: &[u16],
    end: EndRule,
) -> bool {
    let n = code.crossings();
    if colours.len() != n + 1 {
        return false;
    }
    if end == EndRule::Closed && colours[n] != colours[0] {
        return false;
    }
    (1..=n).all(|i| {
        let a = colours[i - 1] as usize;
        let b = colours[code.kappa(i)] as usize;
        let c = if code.eps(i) > 0 {
            quandle.star(a, b)
        } else {
            quandle.wedge(a, b)
        };
        c == colours[i] as usize
    })
}

// ----------------------------------------------------------------------
// group colourings and the colouring polynomial

/// A group colouring of a long diagram: arc colours (group element
/// indices) and the longitude value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouringAssignment {
    pub arcs: Vec<usize>,
    pub longitude: usize,
}

/// The colouring polynomial together with the support check.
#[derive(Clone, Debug)]
pub struct ColouringPolynomial {
    pub element: RingElement,
    pub support_in_lambda: bool,
}

/// The longitude Π x_{i-1}^{-εi} · x_{κi}^{εi} of an arc assignment.
pub fn longitude_of(code: &WirtingerCode, group: &PointedGroup, arcs: &[usize]) -> usize {
    let mut acc = group.identity();
    for i in 1..=code.crossings() {
        let prev = arcs[i - 1];
        let over = arcs[code.kappa(i)];
        if code.eps(i) > 0 {
            acc = group.mul(acc, group.mul(group.inv(prev), over));
        } else {
            acc = group.mul(acc, group.mul(prev, group.inv(over)));
        }
    }
    acc
}

/// Enumerates all colourings of the long diagram with arc 0 (hence arc n)
/// coloured by the basepoint; colours range over the class x^G.
pub fn enumerate_colourings(
    code: &WirtingerCode,
    group: &Arc<PointedGroup>,
    cfg: &EngineConfig,
) -> Result<Vec<ColouringAssignment>, Error> {
    let quandle = FiniteQuandle::conjugation_unchecked(group);
    enumerate_with_quandle(code, group, &quandle, cfg)
}

fn enumerate_with_quandle(
    code: &WirtingerCode,
    group: &Arc<PointedGroup>,
    quandle: &FiniteQuandle,
    cfg: &EngineConfig,
) -> Result<Vec<ColouringAssignment>, Error> {
    let (_, class) = quandle.carrier().expect("conjugation quandle");
    let class = class.clone();
    let q0 = quandle.basepoint().expect("conjugation quandle is pointed");
    let plan = plan(code, EndRule::Closed)?;
    let raw = run_plan(&plan, quandle, q0, EndRule::Closed, cfg)?;
    Ok(raw
        .into_iter()
        .map(|colours| {
            let arcs: Vec<usize> = colours.iter().map(|&c| class[c as usize]).collect();
            let longitude = longitude_of(code, group, &arcs);
            ColouringAssignment { arcs, longitude }
        })
        .collect())
}

/// P_x^G(K) = Σ over colourings of the longitude, in ℤG.
pub fn colouring_polynomial(
    code: &WirtingerCode,
    group: &Arc<PointedGroup>,
    cfg: &EngineConfig,
) -> Result<ColouringPolynomial, Error> {
    let colourings = enumerate_colourings(code, group, cfg)?;
    let mut element = RingElement::zero(group.clone());
    for colouring in &colourings {
        element.add_term(colouring.longitude, 1);
    }
    let support_in_lambda = element.support_in(group.longitude_subgroup());
    Ok(ColouringPolynomial {
        element,
        support_in_lambda,
    })
}

/// F_x^G(K): the number of colourings.
pub fn colouring_number(
    code: &WirtingerCode,
    group: &Arc<PointedGroup>,
    cfg: &EngineConfig,
) -> Result<i64, Error> {
    Ok(colouring_polynomial(code, group, cfg)?.element.augmentation())
}

/// T_G(K) = Σ_{x∈G} F_x(K), computed per conjugacy class.
pub fn total_colouring_number(
    code: &WirtingerCode,
    group: &Arc<PointedGroup>,
    cfg: &EngineConfig,
) -> Result<i64, Error> {
    let mut total = 0i64;
    for (rep, class_size) in group.class_representatives() {
        let quandle = conjugation_at(group, rep);
        let q0 = quandle.basepoint().unwrap();
        let plan = plan(code, EndRule::Closed)?;
        let raw = run_plan(&plan, &quandle, q0, EndRule::Closed, cfg)?;
        total += raw.len() as i64 * class_size as i64;
    }
    Ok(total)
}

/// Conjugation quandle on the class of an arbitrary element.
pub fn conjugation_at(group: &Arc<PointedGroup>, elem: usize) -> FiniteQuandle {
    let class = group.conjugacy_class(elem);
    let size = class.len();
    let index_of: HashMap<usize, u16> = class
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i as u16))
        .collect();
    let mut star = vec![0u16; size * size];
    for (i, &a) in class.iter().enumerate() {
        for (j, &b) in class.iter().enumerate() {
            star[i * size + j] = index_of[&group.conj(a, b)];
        }
    }
    FiniteQuandle::from_star_table(size, star, Some(index_of[&elem]))
        .expect("conjugation is a quandle")
}

// ----------------------------------------------------------------------
// quandle colouring counts

/// |Col(D,0;Q,q)| for a long diagram: arc 0 fixed, final arc free.
pub fn quandle_colourings_based_long(
    code: &WirtingerCode,
    quandle: &FiniteQuandle,
    q: u16,
    cfg: &EngineConfig,
) -> Result<Vec<Vec<u16>>, Error> {
    let plan = plan(code, EndRule::Free)?;
    run_plan(&plan, quandle, q, EndRule::Free, cfg)
}

/// Closed-diagram colourings based at q: arc n is identified with arc 0.
pub fn quandle_colourings_closed(
    code: &WirtingerCode,
    quandle: &FiniteQuandle,
    q: u16,
    cfg: &EngineConfig,
) -> Result<Vec<Vec<u16>>, Error> {
    let plan = plan(code, EndRule::Closed)?;
    run_plan(&plan, quandle, q, EndRule::Closed, cfg)
}

/// T_Q of the closed diagram: colourings over all basepoints.
pub fn quandle_count_total_closed(
    code: &WirtingerCode,
    quandle: &FiniteQuandle,
    cfg: &EngineConfig,
) -> Result<u64, Error> {
    let plan = plan(code, EndRule::Closed)?;
    let mut total = 0u64;
    for q in 0..quandle.size() {
        total += run_plan(&plan, quandle, q as u16, EndRule::Closed, cfg)?.len() as u64;
    }
    Ok(total)
}

// ----------------------------------------------------------------------
// prime congruence

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeCongruence {
    /// P ≡ 1 mod p for the stated prime.
    Holds(usize),
    Fails(usize),
    /// Conjugation by x is not of prime-power order.
    HypothesisNotMet(usize),
}

/// The congruence P ≡ 1 (mod p) that holds whenever conjugation by the
/// basepoint has prime-power order p^k.
pub fn check_prime_congruence(poly: &RingElement) -> PrimeCongruence {
    let group = poly.group();
    let x = group.basepoint();
    // order of conjugation by x = smallest m with x^m central
    let central = |g: usize| {
        group
            .generators()
            .iter()
            .all(|&h| group.mul(g, h) == group.mul(h, g))
    };
    let mut m = 1usize;
    let mut acc = x;
    while !central(acc) {
        acc = group.mul(acc, x);
        m += 1;
    }
    // m must be a prime power p^k
    let mut p = 0usize;
    for d in 2..=m {
        if m % d == 0 {
            p = d;
            break;
        }
    }
    if p == 0 {
        // m = 1: conjugation trivial; congruence is vacuous mod any p.
        // report with p = 1 hypothesis unmet rather than inventing a prime
        return PrimeCongruence::HypothesisNotMet(1);
    }
    let mut rest = m;
    while rest % p == 0 {
        rest /= p;
    }
    if rest != 1 {
        return PrimeCongruence::HypothesisNotMet(m);
    }
    let ok = poly.terms().all(|(g, c)| {
        let residue = if g == group.identity() { 1 } else { 0 };
        (c - residue).rem_euclid(p as i64) == 0
    }) && poly.coefficient(group.identity()).rem_euclid(p as i64) == 1;
    if ok {
        PrimeCongruence::Holds(p)
    } else {
        PrimeCongruence::Fails(p)
    }
}
