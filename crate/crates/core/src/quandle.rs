//! Finite quandles, the covering quandle Q̃(G,x), 2-cocycles, and
//! augmentations.
//!
//! The conjugation quandle of a pointed group is the conjugacy class
//! Q = x^G with a∗b = b⁻¹ab. Its covering Q̃(G,x) consists of pairs
//! (a,g) with g ∈ G′ and a = x^g, operation (a,g)∗(b,h) = (a∗b, ga⁻¹b);
//! the deck group Λ = C(x)∩G′ acts freely on each fibre by
//! λ·(a,g) = (a,λg). Reading a section's failure to be a homomorphism
//! off the deck group yields a 2-cocycle λ: Q×Q → Λ.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;
use crate::group::{BasepointSpec, GroupKind, PointedGroup};
use crate::perm::Perm;

/// A finite quandle as dense operation tables over indices 0..size.
#[derive(Clone, Debug)]
pub struct FiniteQuandle {
    size: usize,
    star: Vec<u16>,
    wedge: Vec<u16>,
    basepoint: Option<u16>,
    /// For conjugation quandles: the carrier group and, per quandle
    /// element, its group element index.
    carrier: Option<(Arc<PointedGroup>, Vec<usize>)>,
}

/// Outcome of the axiom verification; `None` entries mean "no violation".
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub q1_violation: Option<usize>,
    pub q2_violation: Option<(usize, usize)>,
    pub q3_violation: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.q1_violation.is_none() && self.q2_violation.is_none() && self.q3_violation.is_none()
    }

    pub fn describe(&self) -> String {
        if self.pass() {
            return "quandle axioms (Q1)(Q2)(Q3) hold".into();
        }
        let mut parts = Vec::new();
        if let Some(a) = self.q1_violation {
            parts.push(format!("(Q1) fails at a={}", a));
        }
        if let Some((a, b)) = self.q2_violation {
            parts.push(format!("(Q2) fails at a={}, b={}", a, b));
        }
        if let Some((a, b, c)) = self.q3_violation {
            parts.push(format!("(Q3) fails at a={}, b={}, c={}", a, b, c));
        }
        parts.join("; ")
    }
}

impl FiniteQuandle {
    /// Builds a quandle from its ∗ table; the ⊲ table is inferred by
    /// inverting each right translation.
    pub fn from_star_table(size: usize, star: Vec<u16>, basepoint: Option<u16>) -> Result<Self, Error> {
        if star.len() != size * size {
            return Err(Error::QuandleAxiom("star table size mismatch".into()));
        }
        let mut wedge = vec![0u16; size * size];
        for b in 0..size {
            let mut seen = vec![false; size];
            for a in 0..size {
                let c = star[a * size + b] as usize;
                if c >= size || seen[c] {
                    return Err(Error::QuandleAxiom(format!(
                        "right translation by {} is not a bijection",
                        b
                    )));
                }
                seen[c] = true;
                wedge[c * size + b] = a as u16;
            }
        }
        Ok(FiniteQuandle {
            size,
            star,
            wedge,
            basepoint,
            carrier: None,
        })
    }

    /// The conjugacy class x^G under conjugation, basepoint x.
    /// Errors unless the class generates G.
    pub fn conjugation(group: &Arc<PointedGroup>) -> Result<Self, Error> {
        if !group.is_colouring_group() {
            return Err(Error::NotColouringGroup(
                group.name().to_string(),
                group.element(group.basepoint()).to_string(),
            ));
        }
        Ok(Self::conjugation_unchecked(group))
    }

    /// Conjugation quandle without the colouring-group requirement
    /// (enumeration over x^G is exact for any pointed group).
    pub fn conjugation_unchecked(group: &Arc<PointedGroup>) -> Self {
        let class: Vec<usize> = group.basepoint_class().to_vec();
        let size = class.len();
        let index_of: HashMap<usize, u16> = class
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as u16))
            .collect();
        let mut star = vec![0u16; size * size];
        let mut wedge = vec![0u16; size * size];
        for (i, &a) in class.iter().enumerate() {
            for (j, &b) in class.iter().enumerate() {
                star[i * size + j] = index_of[&group.conj(a, b)];
                let b_inv = group.inv(b);
                wedge[i * size + j] = index_of[&group.conj(a, b_inv)];
            }
        }
        let basepoint = index_of[&group.basepoint()];
        FiniteQuandle {
            size,
            star,
            wedge,
            basepoint: Some(basepoint),
            carrier: Some((group.clone(), class)),
        }
    }

    /// Dihedral quandle on Z/p: a∗b = 2b−a. For odd p ≥ 3 this is the
    /// conjugation quandle on the reflections of the dihedral group.
    pub fn dihedral(p: usize) -> Self {
        let size = p;
        let mut star = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                star[a * size + b] = ((2 * b + p - a % p) % p) as u16;
            }
        }
        let wedge = star.clone(); // involutory: a⊲b = a∗b
        FiniteQuandle {
            size,
            star,
            wedge,
            basepoint: Some(0),
            carrier: None,
        }
    }

    /// The trivial quandle: a∗b = a.
    pub fn trivial(size: usize) -> Self {
        let mut star = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                star[a * size + b] = a as u16;
            }
        }
        FiniteQuandle {
            size,
            star: star.clone(),
            wedge: star,
            basepoint: Some(0),
            carrier: None,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> Option<u16> {
        self.basepoint
    }

    pub fn with_basepoint(mut self, q: u16) -> Self {
        self.basepoint = Some(q);
        self
    }

    pub fn carrier(&self) -> Option<&(Arc<PointedGroup>, Vec<usize>)> {
        self.carrier.as_ref()
    }

    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.star[a * self.size + b] as usize
    }

    #[inline]
    pub fn wedge(&self, a: usize, b: usize) -> usize {
        self.wedge[a * self.size + b] as usize
    }

    pub fn star_table(&self) -> &[u16] {
        &self.star
    }

    pub fn wedge_table(&self) -> &[u16] {
        &self.wedge
    }

    /// Exhaustive check of (Q1), (Q2), (Q3).
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport::default();
        let n = self.size;
        for a in 0..n {
            if self.star(a, a) != a {
                report.q1_violation = Some(a);
                break;
            }
        }
        'q2: for a in 0..n {
            for b in 0..n {
                if self.wedge(self.star(a, b), b) != a || self.star(self.wedge(a, b), b) != a {
                    report.q2_violation = Some((a, b));
                    break 'q2;
                }
            }
        }
        'q3: for a in 0..n {
            for b in 0..n {
                let ab = self.star(a, b);
                for c in 0..n {
                    if self.star(ab, c) != self.star(self.star(a, c), self.star(b, c)) {
                        report.q3_violation = Some((a, b, c));
                        break 'q3;
                    }
                }
            }
        }
        report
    }

    /// Whether the inner automorphism group acts transitively.
    pub fn is_connected(&self) -> bool {
        if self.size == 0 {
            return true;
        }
        let mut seen = vec![false; self.size];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(a) = stack.pop() {
            for b in 0..self.size {
                for next in [self.star(a, b), self.wedge(a, b)] {
                    if !seen[next] {
                        seen[next] = true;
                        count += 1;
                        stack.push(next);
                    }
                }
            }
        }
        count == self.size
    }

    /// Inn(Q) = ⟨ϱ_b⟩ as a permutation group on the quandle's elements,
    /// pointed at ϱ_q (q = basepoint, or element 0).
    pub fn inner_group(&self) -> Result<Arc<PointedGroup>, Error> {
        let n = self.size.max(1);
        let translation = |b: usize| -> Perm {
            let images: Vec<u16> = (0..self.size).map(|a| self.star[a * self.size + b] as u16).collect();
            Perm::from_images(images).expect("right translations are bijections")
        };
        let mut gens: Vec<Perm> = Vec::new();
        for b in 0..self.size {
            let t = translation(b);
            if !gens.contains(&t) {
                gens.push(t);
            }
        }
        let q = self.basepoint.unwrap_or(0) as usize;
        let default = if self.size == 0 {
            Perm::identity(n)
        } else {
            translation(q)
        };
        PointedGroup::from_generators(
            "Inn(Q)",
            GroupKind::Custom,
            n,
            gens,
            &BasepointSpec::Default,
            Some(default),
        )
    }

    /// CSV export: row a, column b, entry a∗b.
    pub fn to_csv(&self) -> String {
        (0..self.size)
            .map(|a| {
                (0..self.size)
                    .map(|b| self.star(a, b).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn from_csv(text: &str) -> Result<Self, Error> {
        let rows: Vec<Vec<u16>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u16>()
                            .map_err(|_| Error::Parse(format!("bad table entry {:?}", t)))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::Parse("quandle CSV must be square".into()));
        }
        let star: Vec<u16> = rows.into_iter().flatten().collect();
        let q = Self::from_star_table(size, star, None)?;
        let report = q.verify_axioms();
        if !report.pass() {
            return Err(Error::QuandleAxiom(report.describe()));
        }
        Ok(q)
    }
}

// ----------------------------------------------------------------------
// covering quandle

/// The covering quandle Q̃(G,x) = {(a,g) ∈ G×G′ | a = x^g}, indexed by
/// g ∈ G′. Operations are table-backed for small G′ and computed through
/// the group otherwise.
pub struct CoveringQuandle {
    group: Arc<PointedGroup>,
    base: FiniteQuandle,
    /// covering element i ↔ pair (x^{g_i}, g_i)
    g_of: Vec<usize>,
    index_of_g: HashMap<usize, usize>,
    base_of: Vec<u16>,
    fibres: Vec<Vec<usize>>,
    section: Vec<usize>,
    lambda: Arc<PointedGroup>,
    /// Λ element index → G element index
    lambda_in_g: Vec<usize>,
    lambda_index_of_g: HashMap<usize, usize>,
    tables: Option<(Vec<u32>, Vec<u32>)>,
}

const COVERING_TABLE_LIMIT: usize = 1024;

impl CoveringQuandle {
    pub fn new(group: &Arc<PointedGroup>) -> Result<Self, Error> {
        let base = FiniteQuandle::conjugation(group)?;
        let x = group.basepoint();
        let commutator = group.commutator_cached();
        let g_of: Vec<usize> = commutator.members().to_vec();
        let index_of_g: HashMap<usize, usize> =
            g_of.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let (_, class) = base.carrier().expect("conjugation quandle has a carrier");
        let class_index: HashMap<usize, u16> = class
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as u16))
            .collect();
        let base_of: Vec<u16> = g_of
            .iter()
            .map(|&g| class_index[&group.conj(x, g)])
            .collect();
        let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); base.size()];
        for (i, &b) in base_of.iter().enumerate() {
            fibres[b as usize].push(i);
        }
        if fibres.iter().any(|f| f.is_empty()) {
            // G' acts transitively on the class of a colouring group, so
            // every fibre is inhabited
            return Err(Error::Invalid("empty covering fibre".into()));
        }
        // section: lexicographically smallest g per fibre; the identity
        // sits in the fibre over x, so s(x) = (x, 1) automatically
        let section: Vec<usize> = fibres
            .iter()
            .map(|fibre| {
                *fibre
                    .iter()
                    .min_by(|&&i, &&j| {
                        group.element(g_of[i]).images().cmp(group.element(g_of[j]).images())
                    })
                    .unwrap()
            })
            .collect();
        let lambda = group.lambda_as_group()?;
        let lambda_in_g: Vec<usize> = lambda
            .elements()
            .iter()
            .map(|perm| group.index_of(perm).expect("Λ is a subgroup of G"))
            .collect();
        let lambda_index_of_g: HashMap<usize, usize> = lambda_in_g
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i))
            .collect();
        let mut covering = CoveringQuandle {
            group: group.clone(),
            base,
            g_of,
            index_of_g,
            base_of,
            fibres,
            section,
            lambda,
            lambda_in_g,
            lambda_index_of_g,
            tables: None,
        };
        if covering.size() <= COVERING_TABLE_LIMIT {
            let n = covering.size();
            let mut star = vec![0u32; n * n];
            let mut wedge = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    star[i * n + j] = covering.star_direct(i, j) as u32;
                    wedge[i * n + j] = covering.wedge_direct(i, j) as u32;
                }
            }
            covering.tables = Some((star, wedge));
        }
        Ok(covering)
    }

    pub fn size(&self) -> usize {
        self.g_of.len()
    }

    pub fn group(&self) -> &Arc<PointedGroup> {
        &self.group
    }

    pub fn base(&self) -> &FiniteQuandle {
        &self.base
    }

    pub fn lambda(&self) -> &Arc<PointedGroup> {
        &self.lambda
    }

    pub fn lambda_order(&self) -> usize {
        self.lambda_in_g.len()
    }

    /// The pair (a, g) of covering element i, as group element indices.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        let g = self.g_of[i];
        (self.group.conj(self.group.basepoint(), g), g)
    }

    /// Projection p(a,g) = a, as a base-quandle index.
    pub fn project(&self, i: usize) -> usize {
        self.base_of[i] as usize
    }

    pub fn section(&self, base: usize) -> usize {
        self.section[base]
    }

    pub fn section_basis(&self) -> &[usize] {
        &self.section
    }

    pub fn fibre(&self, base: usize) -> &[usize] {
        &self.fibres[base]
    }

    fn star_direct(&self, i: usize, j: usize) -> usize {
        let group = &self.group;
        let x = group.basepoint();
        let (gi, gj) = (self.g_of[i], self.g_of[j]);
        let a = group.conj(x, gi);
        let b = group.conj(x, gj);
        let g = group.mul(group.mul(gi, group.inv(a)), b);
        self.index_of_g[&g]
    }

    fn wedge_direct(&self, i: usize, j: usize) -> usize {
        let group = &self.group;
        let x = group.basepoint();
        let (gi, gj) = (self.g_of[i], self.g_of[j]);
        let a = group.conj(x, gi);
        let b = group.conj(x, gj);
        let g = group.mul(group.mul(gi, a), group.inv(b));
        self.index_of_g[&g]
    }

    #[inline]
    pub fn star(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Some((star, _)) => star[i * self.size() + j] as usize,
            None => self.star_direct(i, j),
        }
    }

    #[inline]
    pub fn wedge(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Some((_, wedge)) => wedge[i * self.size() + j] as usize,
            None => self.wedge_direct(i, j),
        }
    }

    /// Deck action λ·(a,g) = (a, λg); `lambda` is a Λ element index.
    pub fn deck_act(&self, lambda: usize, i: usize) -> usize {
        let lg = self.group.mul(self.lambda_in_g[lambda], self.g_of[i]);
        self.index_of_g[&lg]
    }

    /// The deck element sending covering element `from` to `to` (same
    /// fibre), as a Λ element index.
    pub fn deck_between(&self, from: usize, to: usize) -> Result<usize, Error> {
        let g = self.group.mul(self.g_of[to], self.group.inv(self.g_of[from]));
        self.lambda_index_of_g
            .get(&g)
            .copied()
            .ok_or_else(|| Error::Invalid("elements are not in the same fibre".into()))
    }

    /// The whole covering as a plain quandle (for axiom checks).
    pub fn as_finite_quandle(&self) -> FiniteQuandle {
        let n = self.size();
        let mut star = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                star[i * n + j] = self.star(i, j) as u16;
            }
        }
        let basepoint = self.section[self.base.basepoint().unwrap() as usize] as u16;
        FiniteQuandle::from_star_table(n, star, Some(basepoint))
            .expect("covering operations are bijective per translation")
    }

    /// Exhaustive verification of the extension axioms (E1) and (E2).
    pub fn verify_extension_axioms(&self) -> bool {
        let n = self.size();
        let l = self.lambda_order();
        // (E2): Λ acts freely and transitively on each fibre
        for fibre in &self.fibres {
            if fibre.len() != l {
                return false;
            }
            for &i in fibre {
                let mut images: Vec<usize> = (0..l).map(|lam| self.deck_act(lam, i)).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != l || !images.iter().all(|im| fibre.contains(im)) {
                    return false;
                }
            }
        }
        // (E1): λ(x̃∗ỹ) = (λx̃)∗ỹ and x̃∗(λỹ) = x̃∗ỹ
        for lam in 0..l {
            for i in 0..n {
                for j in 0..n {
                    let s = self.star(i, j);
                    if self.star(self.deck_act(lam, i), j) != self.deck_act(lam, s) {
                        return false;
                    }
                    if self.star(i, self.deck_act(lam, j)) != s {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// p is a quandle homomorphism and the G′ right action is transitive.
    pub fn verify_covering_properties(&self) -> bool {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if self.project(self.star(i, j))
                    != self.base.star(self.project(i), self.project(j))
                {
                    return false;
                }
            }
        }
        // transitivity of the right G′ action (a,g)^b = (a^b, gb): orbit
        // of (x,1) is everything because g runs over all of G′
        true
    }
}

// ----------------------------------------------------------------------
// cocycles

/// A 2-cocycle λ: Q×Q → Λ, stored as Λ element indices.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    q_size: usize,
    lambda: Arc<PointedGroup>,
    values: Vec<u16>,
}

impl Cocycle2 {
    pub fn new(q_size: usize, lambda: Arc<PointedGroup>, values: Vec<u16>) -> Result<Self, Error> {
        if values.len() != q_size * q_size {
            return Err(Error::Invalid("cocycle table size mismatch".into()));
        }
        Ok(Cocycle2 {
            q_size,
            lambda,
            values,
        })
    }

    /// The constant-identity cocycle.
    pub fn trivial(q_size: usize, lambda: Arc<PointedGroup>) -> Self {
        let id = lambda.identity() as u16;
        Cocycle2 {
            q_size,
            lambda,
            values: vec![id; q_size * q_size],
        }
    }

    pub fn q_size(&self) -> usize {
        self.q_size
    }

    pub fn lambda(&self) -> &Arc<PointedGroup> {
        &self.lambda
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> usize {
        self.values[a * self.q_size + b] as usize
    }

    /// Pointwise product λ1·λ2 (the group Λ written multiplicatively).
    pub fn product(&self, other: &Cocycle2) -> Result<Cocycle2, Error> {
        if !Arc::ptr_eq(&self.lambda, &other.lambda) || self.q_size != other.q_size {
            return Err(Error::Invalid("cocycles live on different data".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&u, &v)| self.lambda.mul(u as usize, v as usize) as u16)
            .collect();
        Cocycle2::new(self.q_size, self.lambda.clone(), values)
    }

    /// Normalization λ(a,a) = 1 and the cocycle identity
    /// λ(a,c) − λ(a,b) + λ(a^c,b^c) − λ(a^b,c) = 0 on all triples.
    pub fn verify(&self, quandle: &FiniteQuandle) -> bool {
        let n = self.q_size;
        if quandle.size() != n {
            return false;
        }
        let lam = &self.lambda;
        let id = lam.identity();
        for a in 0..n {
            if self.value(a, a) != id {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = quandle.star(a, b);
                for c in 0..n {
                    let ac = quandle.star(a, c);
                    let bc = quandle.star(b, c);
                    // λ(a,c) · λ(a,b)⁻¹ · λ(a^c,b^c) · λ(a^b,c)⁻¹ = 1
                    let mut acc = self.value(a, c);
                    acc = lam.mul(acc, lam.inv(self.value(a, b)));
                    acc = lam.mul(acc, self.value(ac, bc));
                    acc = lam.mul(acc, lam.inv(self.value(ab, c)));
                    if acc != id {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// CSV export of the value table: row a, column b, entry = the
    /// Λ element index of λ(a,b).
    pub fn to_csv(&self) -> String {
        (0..self.q_size)
            .map(|a| {
                (0..self.q_size)
                    .map(|b| self.value(a, b).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Reads a value table in the CSV format; entries index into the
    /// given deck group. The cocycle identity is verified against `quandle`.
    pub fn from_csv(
        text: &str,
        lambda: Arc<PointedGroup>,
        quandle: &FiniteQuandle,
    ) -> Result<Self, Error> {
        let rows: Vec<Vec<u16>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u16>()
                            .map_err(|_| Error::Parse(format!("bad cocycle entry {:?}", t)))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let n = rows.len();
        if n != quandle.size() || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("cocycle CSV must be square and match the quandle".into()));
        }
        if rows.iter().flatten().any(|&v| v as usize >= lambda.order()) {
            return Err(Error::Parse("cocycle entry exceeds the deck group order".into()));
        }
        let values: Vec<u16> = rows.into_iter().flatten().collect();
        let cocycle = Cocycle2::new(n, lambda, values)?;
        if !cocycle.verify(quandle) {
            return Err(Error::QuandleAxiom("CSV table is not a normalized 2-cocycle".into()));
        }
        Ok(cocycle)
    }
}

/// δ¹(μ)(a,b) = μ(a) − μ(a∗b), written multiplicatively.
pub fn coboundary(
    quandle: &FiniteQuandle,
    lambda: &Arc<PointedGroup>,
    mu: &[u16],
) -> Result<Cocycle2, Error> {
    let n = quandle.size();
    if mu.len() != n {
        return Err(Error::Invalid("1-cochain length mismatch".into()));
    }
    let mut values = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let ab = quandle.star(a, b);
            values[a * n + b] =
                lambda.mul(mu[a] as usize, lambda.inv(mu[ab] as usize)) as u16;
        }
    }
    Cocycle2::new(n, lambda.clone(), values)
}

/// Outcome of the cohomology comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomologyVerdict {
    /// A witnessing 1-cochain μ with λ2 = λ1 · δ¹μ.
    Cohomologous(Vec<u16>),
    NotCohomologous,
    /// The solver could not decide (not produced by the propagation
    /// solver, kept for contract completeness).
    Undecided,
}

/// Decides whether λ1 and λ2 differ by a coboundary by solving
/// μ(a) − μ(a∗b) = d(a,b) with per-orbit propagation.
pub fn is_cohomologous(
    quandle: &FiniteQuandle,
    lambda1: &Cocycle2,
    lambda2: &Cocycle2,
) -> Result<CohomologyVerdict, Error> {
    if lambda1.q_size() != quandle.size() || lambda2.q_size() != quandle.size() {
        return Err(Error::Invalid("cocycle/quandle size mismatch".into()));
    }
    if !Arc::ptr_eq(lambda1.lambda(), lambda2.lambda()) {
        return Err(Error::Invalid("cocycles over different deck groups".into()));
    }
    let lam = lambda1.lambda().clone();
    let n = quandle.size();
    // d(a,b) = λ2(a,b) · λ1(a,b)⁻¹ must equal μ(a) · μ(a∗b)⁻¹
    let d = |a: usize, b: usize| {
        lam.mul(lambda2.value(a, b), lam.inv(lambda1.value(a, b)))
    };
    let mut mu: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        if mu[start].is_some() {
            continue;
        }
        // the constant shift per orbit is irrelevant to δ¹μ
        mu[start] = Some(lam.identity());
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            let mu_a = mu[a].unwrap();
            for b in 0..n {
                let ab = quandle.star(a, b);
                // μ(a∗b) = d(a,b)⁻¹ · μ(a)
                let required = lam.mul(lam.inv(d(a, b)), mu_a);
                match mu[ab] {
                    None => {
                        mu[ab] = Some(required);
                        stack.push(ab);
                    }
                    Some(existing) => {
                        if existing != required {
                            return Ok(CohomologyVerdict::NotCohomologous);
                        }
                    }
                }
            }
        }
    }
    let mu: Vec<u16> = mu.into_iter().map(|m| m.unwrap() as u16).collect();
    // final full verification
    let delta = coboundary(quandle, &lam, &mu)?;
    let matches = (0..n).all(|a| {
        (0..n).all(|b| lam.mul(lambda1.value(a, b), delta.value(a, b)) == lambda2.value(a, b))
    });
    if matches {
        Ok(CohomologyVerdict::Cohomologous(mu))
    } else {
        Ok(CohomologyVerdict::NotCohomologous)
    }
}

/// Reads the 2-cocycle off the covering's section:
/// s(a)∗s(b) = λ(a,b)·s(a∗b).
pub fn cocycle_from_section(covering: &CoveringQuandle) -> Result<Cocycle2, Error> {
    if !covering.group().longitude_subgroup().is_abelian() {
        return Err(Error::LambdaNotAbelian("cocycle extraction".into()));
    }
    let base = covering.base();
    let n = base.size();
    let mut values = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let product = covering.star(covering.section(a), covering.section(b));
            let target = covering.section(base.star(a, b));
            values[a * n + b] = covering.deck_between(target, product)? as u16;
        }
    }
    let cocycle = Cocycle2::new(n, covering.lambda().clone(), values)?;
    if !cocycle.verify(base) {
        return Err(Error::Invalid("section cocycle fails the cocycle identity".into()));
    }
    Ok(cocycle)
}

/// A cocycle read off an arbitrary section (per-fibre representatives).
pub fn cocycle_from_custom_section(
    covering: &CoveringQuandle,
    section: &[usize],
) -> Result<Cocycle2, Error> {
    let base = covering.base();
    let n = base.size();
    if section.len() != n {
        return Err(Error::Invalid("section length mismatch".into()));
    }
    for (a, &s) in section.iter().enumerate() {
        if covering.project(s) != a {
            return Err(Error::Invalid("not a section".into()));
        }
    }
    let mut values = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let product = covering.star(section[a], section[b]);
            let target = section[base.star(a, b)];
            values[a * n + b] = covering.deck_between(target, product)? as u16;
        }
    }
    Cocycle2::new(n, covering.lambda().clone(), values)
}

// ----------------------------------------------------------------------
// augmentations

/// A quandle representation φ: Q → G with a compatible right G-action on
/// Q: a∗b = a^{φ(b)} and φ(a^g) = φ(a)^g.
pub struct Augmentation {
    quandle: FiniteQuandle,
    group: Arc<PointedGroup>,
    phi: Vec<usize>,
    /// action[g] is the permutation of Q induced by g
    action: Vec<Vec<u16>>,
}

impl Augmentation {
    pub fn new(
        quandle: FiniteQuandle,
        group: Arc<PointedGroup>,
        phi: Vec<usize>,
        action: Vec<Vec<u16>>,
    ) -> Self {
        Augmentation {
            quandle,
            group,
            phi,
            action,
        }
    }

    /// The inclusion augmentation of a conjugation quandle x^G ↪ G, with
    /// G acting by conjugation.
    pub fn inclusion(group: &Arc<PointedGroup>) -> Result<Self, Error> {
        let quandle = FiniteQuandle::conjugation(group)?;
        let (_, class) = quandle.carrier().unwrap();
        let class = class.clone();
        let class_index: HashMap<usize, u16> = class
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i as u16))
            .collect();
        let phi = class.clone();
        let action: Vec<Vec<u16>> = (0..group.order())
            .map(|g| {
                class
                    .iter()
                    .map(|&a| class_index[&group.conj(a, g)])
                    .collect()
            })
            .collect();
        Ok(Augmentation::new(quandle, group.clone(), phi, action))
    }

    /// The inner augmentation ϱ: Q → Inn(Q).
    pub fn inner(quandle: &FiniteQuandle) -> Result<Self, Error> {
        let inn = quandle.inner_group()?;
        let n = quandle.size();
        let translation_index = |b: usize| -> usize {
            let images: Vec<u16> = (0..n).map(|a| quandle.star(a, b) as u16).collect();
            let perm = Perm::from_images(images).unwrap();
            inn.index_of(&perm).expect("translations generate Inn(Q)")
        };
        let phi: Vec<usize> = (0..n).map(translation_index).collect();
        // g ∈ Inn(Q) ⊆ Sym(Q) acts on quandle elements directly
        let action: Vec<Vec<u16>> = inn
            .elements()
            .iter()
            .map(|perm| (0..n).map(|a| perm.apply(a) as u16).collect())
            .collect();
        Ok(Augmentation::new(quandle.clone(), inn, phi, action))
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn group(&self) -> &Arc<PointedGroup> {
        &self.group
    }

    pub fn phi(&self, a: usize) -> usize {
        self.phi[a]
    }

    pub fn act(&self, a: usize, g: usize) -> usize {
        self.action[g][a] as usize
    }

    /// Exhaustive check of both augmentation squares.
    pub fn verify(&self) -> bool {
        let n = self.quandle.size();
        let order = self.group.order();
        // the action is a right action
        for g in 0..order {
            for h in 0..order {
                let gh = self.group.mul(g, h);
                for a in 0..n {
                    if self.act(self.act(a, g), h) != self.act(a, gh) {
                        return false;
                    }
                }
            }
        }
        // a∗b = a^{φ(b)}
        for a in 0..n {
            for b in 0..n {
                if self.quandle.star(a, b) != self.act(a, self.phi[b]) {
                    return false;
                }
            }
        }
        // φ(a^g) = φ(a)^g
        for a in 0..n {
            for g in 0..order {
                if self.phi[self.act(a, g)] != self.group.conj(self.phi[a], g) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn a5() -> Arc<PointedGroup> {
        PointedGroup::alternating(5, &BasepointSpec::Cycles("(1,2,3,4,5)".into())).unwrap()
    }

    #[test]
    fn conjugation_quandle_a5() {
        let q = FiniteQuandle::conjugation(&a5()).unwrap();
        assert_eq!(q.size(), 12);
        assert!(q.verify_axioms().pass());
        assert!(q.is_connected());
    }

    #[test]
    fn conjugation_rejects_non_colouring_groups() {
        // the class of (1,2)(3,4) in A4 generates only the Klein four group
        let g = PointedGroup::alternating(4, &BasepointSpec::Cycles("(1,2)(3,4)".into())).unwrap();
        assert!(!g.is_colouring_group());
        assert!(matches!(
            FiniteQuandle::conjugation(&g),
            Err(Error::NotColouringGroup(_, _))
        ));
    }

    #[test]
    fn conjugation_quandle_m11_size() {
        let g = PointedGroup::mathieu11(&BasepointSpec::Default).unwrap();
        let q = FiniteQuandle::conjugation(&g).unwrap();
        assert_eq!(q.size(), 720);
    }

    #[test]
    fn trivial_and_broken_quandles() {
        let one = FiniteQuandle::trivial(1);
        assert!(one.verify_axioms().pass());
        assert!(one.is_connected());
        let two = FiniteQuandle::trivial(2);
        assert!(two.verify_axioms().pass());
        assert!(!two.is_connected()); // translations are the identity

        // break (Q1)
        let mut star = vec![0u16; 4];
        star[0] = 1;
        star[1] = 0;
        star[2] = 0;
        star[3] = 1;
        let broken = FiniteQuandle::from_star_table(2, star, None).unwrap();
        let report = broken.verify_axioms();
        assert_eq!(report.q1_violation, Some(0));
    }

    #[test]
    fn dihedral_quandle_axioms() {
        for p in [3usize, 5, 7] {
            let q = FiniteQuandle::dihedral(p);
            assert!(q.verify_axioms().pass());
            assert!(q.is_connected());
        }
    }

    #[test]
    fn inner_group_of_conjugation_quandle() {
        let q = FiniteQuandle::conjugation(&a5()).unwrap();
        let inn = q.inner_group().unwrap();
        // A5 is simple and centerless: Inn(Q) ≅ A5 acting on the class
        assert_eq!(inn.order(), 60);
    }

    #[test]
    fn covering_quandle_a5() {
        let cov = CoveringQuandle::new(&a5()).unwrap();
        assert_eq!(cov.size(), 60);
        assert_eq!(cov.lambda_order(), 5);
        assert_eq!(cov.fibre(0).len(), 5);
        assert!(cov.verify_extension_axioms());
        assert!(cov.verify_covering_properties());
        let as_quandle = cov.as_finite_quandle();
        assert!(as_quandle.verify_axioms().pass());
        assert!(as_quandle.is_connected());
        // s(x) = (x, 1)
        let x_base = cov.base().basepoint().unwrap() as usize;
        let (a, g) = cov.pair(cov.section(x_base));
        assert_eq!(a, a5().basepoint());
        assert_eq!(g, a5().identity());
    }

    #[test]
    fn section_cocycle_a5() {
        let cov = CoveringQuandle::new(&a5()).unwrap();
        let cocycle = cocycle_from_section(&cov).unwrap();
        assert!(cocycle.verify(cov.base()));
        // λ(a,a) = identity comes with (Q1)
        for a in 0..cov.base().size() {
            assert_eq!(cocycle.value(a, a), cocycle.lambda().identity());
        }
    }

    #[test]
    fn two_sections_differ_by_coboundary() {
        let cov = CoveringQuandle::new(&a5()).unwrap();
        let lex = cocycle_from_section(&cov).unwrap();
        // perturb the section away from the basepoint fibre
        let mut section: Vec<usize> = cov.section_basis().to_vec();
        let x_base = cov.base().basepoint().unwrap() as usize;
        for (b, slot) in section.iter_mut().enumerate() {
            if b != x_base {
                *slot = cov.fibre(b)[1];
            }
        }
        let other = cocycle_from_custom_section(&cov, &section).unwrap();
        assert!(other.verify(cov.base()));
        match is_cohomologous(cov.base(), &lex, &other).unwrap() {
            CohomologyVerdict::Cohomologous(_) => {}
            verdict => panic!("expected cohomologous sections, got {:?}", verdict),
        }
    }

    #[test]
    fn coboundary_complex_property() {
        // δ²(δ¹μ) = 0 for random μ, and λ·δ¹μ is cohomologous to λ
        let cov = CoveringQuandle::new(&a5()).unwrap();
        let q = cov.base();
        let lam = cov.lambda().clone();
        let base_cocycle = cocycle_from_section(&cov).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let mu: Vec<u16> = (0..q.size())
                .map(|_| rng.gen_range(0..lam.order()) as u16)
                .collect();
            let delta = coboundary(q, &lam, &mu).unwrap();
            assert!(delta.verify(q), "δ¹μ is a 2-cocycle");
            let shifted = base_cocycle.product(&delta).unwrap();
            match is_cohomologous(q, &base_cocycle, &shifted).unwrap() {
                CohomologyVerdict::Cohomologous(_) => {}
                verdict => panic!("λ·δ¹μ should be cohomologous to λ, got {:?}", verdict),
            }
        }
        // μ ≡ identity gives the zero coboundary
        let mu = vec![lam.identity() as u16; q.size()];
        let delta = coboundary(q, &lam, &mu).unwrap();
        let id = lam.identity();
        assert!((0..q.size()).all(|a| (0..q.size()).all(|b| delta.value(a, b) == id)));
    }

    #[test]
    fn quandle_csv_round_trip() {
        let q = FiniteQuandle::dihedral(5);
        let csv = q.to_csv();
        let back = FiniteQuandle::from_csv(&csv).unwrap();
        assert_eq!(back.size(), 5);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(back.star(a, b), q.star(a, b));
            }
        }
    }

    #[test]
    fn covering_builds_for_nonabelian_lambda_but_cocycle_refuses() {
        // Λ(S6, (1,2)) is non-abelian: the covering quandle still exists,
        // the central-extension cocycle does not
        let g = PointedGroup::symmetric(6, &BasepointSpec::Cycles("(1,2)".into())).unwrap();
        assert!(!g.longitude_subgroup().is_abelian());
        let cov = CoveringQuandle::new(&g).unwrap();
        assert_eq!(cov.size(), 360);
        assert!(cov.verify_extension_axioms());
        assert!(matches!(
            cocycle_from_section(&cov),
            Err(Error::LambdaNotAbelian(_))
        ));
    }

    #[test]
    fn cocycle_csv_round_trip() {
        let cov = CoveringQuandle::new(&a5()).unwrap();
        let cocycle = cocycle_from_section(&cov).unwrap();
        let csv = cocycle.to_csv();
        let back = Cocycle2::from_csv(&csv, cov.lambda().clone(), cov.base()).unwrap();
        for a in 0..cocycle.q_size() {
            for b in 0..cocycle.q_size() {
                assert_eq!(back.value(a, b), cocycle.value(a, b));
            }
        }
        // a corrupted table is rejected
        let mut bad = csv.clone();
        bad.replace_range(0..1, "1");
        assert!(Cocycle2::from_csv(&bad, cov.lambda().clone(), cov.base()).is_err());
    }

    #[test]
    fn inclusion_augmentation_verifies() {
        let aug = Augmentation::inclusion(&a5()).unwrap();
        assert!(aug.verify());
    }

    #[test]
    fn inner_augmentation_verifies() {
        let q = FiniteQuandle::conjugation(&a5()).unwrap();
        let aug = Augmentation::inner(&q).unwrap();
        assert!(aug.verify());
        let dq = FiniteQuandle::dihedral(3);
        let aug = Augmentation::inner(&dq).unwrap();
        assert!(aug.verify());
        let psl = PointedGroup::psl2(7, &BasepointSpec::OrderRep(7)).unwrap();
        let q = FiniteQuandle::conjugation(&psl).unwrap();
        let aug = Augmentation::inner(&q).unwrap();
        assert!(aug.verify());
    }
}
