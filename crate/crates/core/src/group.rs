//! Finite permutation groups with a distinguished basepoint.
//!
//! A [`PointedGroup`] stores its full element list (closure of the
//! generators), a multiplication table when the group is small, and the
//! derived data every other module consumes: conjugacy class of the
//! basepoint, centralizer, commutator subgroup, and the longitude
//! subgroup Λ = C(x) ∩ G′.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::perm::Perm;

/// Dense multiplication tables are kept up to this order; larger groups
/// (A₇, S₇, M₁₁) compose permutations directly.
const MUL_TABLE_LIMIT: usize = 2048;

/// Default order bound for the brute-force automorphism search.
pub const OBVERSION_SEARCH_BOUND: usize = 2000;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize), // parameter p, order 2p
    Psl2(usize),
    Mathieu11,
    Affine(usize),
    Custom,
}

/// A subgroup given by its member indices in the parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    contains: Vec<bool>,
    is_abelian: bool,
    cyclic: Option<(usize, usize)>, // (generator index, order)
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, elem: usize) -> bool {
        self.contains[elem]
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian
    }

    /// A generator of the subgroup when it is cyclic, with its order.
    pub fn cyclic_generator(&self) -> Option<(usize, usize)> {
        self.cyclic
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    Homomorphism,
    AntiHomomorphism,
}

/// A bijective (anti-)homomorphism of a group to itself, as an image array.
#[derive(Clone, Debug)]
pub struct GroupMap {
    images: Vec<usize>,
    kind: MapKind,
}

impl GroupMap {
    pub fn new(images: Vec<usize>, kind: MapKind) -> Self {
        GroupMap { images, kind }
    }

    pub fn apply(&self, elem: usize) -> usize {
        self.images[elem]
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Checks bijectivity and the (anti-)homomorphism law on all pairs.
    pub fn verify(&self, group: &PointedGroup) -> bool {
        let n = group.order();
        if self.images.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &im in &self.images {
            if im >= n || seen[im] {
                return false;
            }
            seen[im] = true;
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = self.images[group.mul(a, b)];
                let rhs = match self.kind {
                    MapKind::Homomorphism => group.mul(self.images[a], self.images[b]),
                    MapKind::AntiHomomorphism => group.mul(self.images[b], self.images[a]),
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// An obversion of (G, x) together with the reversion derived from it.
#[derive(Clone, Debug)]
pub struct ObversionPair {
    pub obversion: GroupMap,
    pub reversion: GroupMap,
}

pub struct PointedGroup {
    name: String,
    kind: GroupKind,
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    identity: usize,
    basepoint: usize,
    generators: Vec<usize>,
    mul_table: Option<Vec<u32>>,
    inv_table: Vec<u32>,
    // caches, populated at construction
    class_of_basepoint: Vec<usize>,
    centralizer_of_basepoint: Subgroup,
    commutator: Subgroup,
    lambda: Subgroup,
}

impl fmt::Debug for PointedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PointedGroup({}, order {}, x = {})",
            self.name,
            self.order(),
            self.elements[self.basepoint]
        )
    }
}

/// Basepoint selection for group construction.
#[derive(Clone, Debug)]
pub enum BasepointSpec {
    /// Cycle notation, e.g. `(1,2,3,4,5)`.
    Cycles(String),
    /// Lexicographically smallest element of the given order.
    OrderRep(usize),
    /// The family's canonical basepoint.
    Default,
}

impl BasepointSpec {
    /// Parses `order:7` or cycle notation; anything else is an error.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("order:") {
            let k: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad order in basepoint {:?}", text)))?;
            return Ok(BasepointSpec::OrderRep(k));
        }
        if text.starts_with('(') {
            return Ok(BasepointSpec::Cycles(text.to_string()));
        }
        Err(Error::Parse(format!("bad basepoint descriptor {:?}", text)))
    }
}

impl PointedGroup {
    // ------------------------------------------------------------------
    // construction

    /// Closure of `generators` inside Sym(degree), with caches populated.
    pub fn from_generators(
        name: &str,
        kind: GroupKind,
        degree: usize,
        generators: Vec<Perm>,
        basepoint: &BasepointSpec,
        default_basepoint: Option<Perm>,
    ) -> Result<Arc<Self>, Error> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in &generators {
                let product = elements[i].then(g);
                if !index.contains_key(&product) {
                    let id = elements.len();
                    index.insert(product.clone(), id);
                    elements.push(product);
                    frontier.push(id);
                }
            }
        }
        let gen_indices = generators.iter().map(|g| index[g]).collect();
        Self::finish(name, kind, degree, elements, index, gen_indices, basepoint, default_basepoint)
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        name: &str,
        kind: GroupKind,
        degree: usize,
        elements: Vec<Perm>,
        index: HashMap<Perm, usize>,
        generators: Vec<usize>,
        basepoint: &BasepointSpec,
        default_basepoint: Option<Perm>,
    ) -> Result<Arc<Self>, Error> {
        let n = elements.len();
        let identity = index[&Perm::identity(degree)];

        let mul_table = if n <= MUL_TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    table[i * n + j] = index[&elements[i].then(&elements[j])] as u32;
                }
            }
            Some(table)
        } else {
            None
        };
        let inv_table: Vec<u32> = elements.iter().map(|e| index[&e.inverse()] as u32).collect();

        let mut group = PointedGroup {
            name: name.to_string(),
            kind,
            degree,
            elements,
            index,
            identity,
            basepoint: identity, // fixed below
            generators,
            mul_table,
            inv_table,
            class_of_basepoint: Vec::new(),
            centralizer_of_basepoint: Subgroup {
                members: vec![],
                contains: vec![],
                is_abelian: true,
                cyclic: None,
            },
            commutator: Subgroup {
                members: vec![],
                contains: vec![],
                is_abelian: true,
                cyclic: None,
            },
            lambda: Subgroup {
                members: vec![],
                contains: vec![],
                is_abelian: true,
                cyclic: None,
            },
        };

        group.basepoint = group.resolve_basepoint(basepoint, default_basepoint)?;
        group.populate_caches();
        Ok(Arc::new(group))
    }

    fn resolve_basepoint(
        &self,
        spec: &BasepointSpec,
        default: Option<Perm>,
    ) -> Result<usize, Error> {
        match spec {
            BasepointSpec::Cycles(text) => {
                let perm = Perm::parse_cycles(text, Some(self.degree))?;
                self.index
                    .get(&perm)
                    .copied()
                    .ok_or_else(|| Error::BasepointNotFound(text.clone()))
            }
            BasepointSpec::OrderRep(k) => {
                // lexicographically smallest element of order k
                let mut best: Option<usize> = None;
                for (i, e) in self.elements.iter().enumerate() {
                    if e.order() == *k {
                        match best {
                            None => best = Some(i),
                            Some(b) => {
                                if e.images() < self.elements[b].images() {
                                    best = Some(i);
                                }
                            }
                        }
                    }
                }
                best.ok_or_else(|| Error::BasepointNotFound(format!("order:{}", k)))
            }
            BasepointSpec::Default => match default {
                Some(perm) => self
                    .index
                    .get(&perm)
                    .copied()
                    .ok_or_else(|| Error::BasepointNotFound(perm.to_string())),
                None => Ok(self.identity),
            },
        }
    }

    fn populate_caches(&mut self) {
        self.class_of_basepoint = self.conjugacy_class(self.basepoint);
        self.centralizer_of_basepoint = self.centralizer(self.basepoint);
        self.commutator = self.commutator_subgroup();
        let lambda: Vec<usize> = self
            .centralizer_of_basepoint
            .members
            .iter()
            .copied()
            .filter(|&m| self.commutator.contains(m))
            .collect();
        self.lambda = self.make_subgroup(lambda);
    }

    fn make_subgroup(&self, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut contains = vec![false; self.order()];
        for &m in &members {
            contains[m] = true;
        }
        // abelian iff a generating set commutes pairwise
        let gens = self.small_generating_set(&members);
        let is_abelian = gens
            .iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)));
        // prefer the basepoint as cyclic generator so that polynomial
        // renderings agree with the basepoint's powers
        let size = members.len();
        let mut cyclic = None;
        let candidates = std::iter::once(self.basepoint)
            .chain(members.iter().copied())
            .filter(|&c| contains[c]);
        for c in candidates {
            if self.element_order(c) == size {
                cyclic = Some((c, size));
                break;
            }
        }
        Subgroup {
            members,
            contains,
            is_abelian,
            cyclic,
        }
    }

    // ------------------------------------------------------------------
    // named families

    pub fn symmetric(n: usize, basepoint: &BasepointSpec) -> Result<Arc<Self>, Error> {
        let gens = if n >= 2 {
            vec![
                Perm::from_cycles(&[vec![0, 1]], n)?,
                Perm::from_cycles(&[(0..n as u16).collect()], n)?,
            ]
        } else {
            vec![]
        };
        let default = Perm::from_cycles(&[(0..n.max(1) as u16).collect()], n.max(1))?;
        Self::from_generators(
            &format!("S{}", n),
            GroupKind::Symmetric(n),
            n.max(1),
            gens,
            basepoint,
            Some(default),
        )
    }

    pub fn alternating(n: usize, basepoint: &BasepointSpec) -> Result<Arc<Self>, Error> {
        let gens = if n >= 3 {
            let long: Vec<u16> = if n % 2 == 1 {
                (0..n as u16).collect()
            } else {
                (1..n as u16).collect()
            };
            vec![
                Perm::from_cycles(&[vec![0, 1, 2]], n)?,
                Perm::from_cycles(&[long], n)?,
            ]
        } else {
            vec![]
        };
        // maximal-length cycle per the usual convention: n odd -> n-cycle
        let default_cycle: Vec<u16> = if n % 2 == 1 {
            (0..n as u16).collect()
        } else {
            (0..n.saturating_sub(1) as u16).collect()
        };
        let default = Perm::from_cycles(&[default_cycle], n.max(1))?;
        Self::from_generators(
            &format!("A{}", n),
            GroupKind::Alternating(n),
            n.max(1),
            gens,
            basepoint,
            Some(default),
        )
    }

    /// Dihedral group of order `2p`, acting on the `p` vertices.
    pub fn dihedral(order: usize, basepoint: &BasepointSpec) -> Result<Arc<Self>, Error> {
        if order < 6 || order % 2 != 0 {
            return Err(Error::UnknownDescriptor(format!(
                "dihedral order must be even and >= 6, got {}",
                order
            )));
        }
        let p = order / 2;
        let rotation = Perm::from_cycles(&[(0..p as u16).collect()], p)?;
        let reflection = {
            let images: Vec<u16> = (0..p as u16).map(|i| ((p as u16) - i) % p as u16).collect();
            Perm::from_images(images)?
        };
        Self::from_generators(
            &format!("D{}", order),
            GroupKind::Dihedral(p),
            p,
            vec![rotation, reflection.clone()],
            basepoint,
            Some(reflection),
        )
    }

    /// PSL₂(p) acting on the projective line (p+1 points; point p is ∞).
    /// Default basepoint is z: t ↦ t+1, the image of [1 1; 0 1].
    pub fn psl2(p: usize, basepoint: &BasepointSpec) -> Result<Arc<Self>, Error> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let degree = p + 1;
        let inf = p as u16;
        // t -> t + 1
        let translation = {
            let mut images: Vec<u16> = (0..degree as u16).collect();
            for t in 0..p {
                images[t] = ((t + 1) % p) as u16;
            }
            images[p] = inf;
            Perm::from_images(images)?
        };
        // t -> -1/t  (image of [0 -1; 1 0])
        let inversion = {
            let mut images: Vec<u16> = vec![0; degree];
            images[0] = inf;
            images[p] = 0;
            for t in 1..p {
                images[t] = ((p - mod_inverse(t, p)) % p) as u16;
            }
            Perm::from_images(images)?
        };
        Self::from_generators(
            &format!("PSL2_{}", p),
            GroupKind::Psl2(p),
            degree,
            vec![translation.clone(), inversion],
            basepoint,
            Some(translation),
        )
    }

    /// The Mathieu group M₁₁ on 11 points, from the generators
    /// x = (1,…,11) and y = (1,2,3,5,10,9,11,4,7,8,6); basepoint x.
    pub fn mathieu11(basepoint: &BasepointSpec) -> Result<Arc<Self>, Error> {
        let x = Perm::from_cycles(&[(0..11).collect()], 11)?;
        let y = Perm::parse_cycles("(1,2,3,5,10,9,11,4,7,8,6)", Some(11))?;
        Self::from_generators(
            "M11",
            GroupKind::Mathieu11,
            11,
            vec![x.clone(), y],
            basepoint,
            Some(x),
        )
    }

    /// Affine group F_p ⋊ F_p^× acting on F_p. Default basepoint is the
    /// map t ↦ ζt + 1 where ζ is the smallest primitive root mod p, whose
    /// multiplier ζ satisfies ζ ≠ ζ⁻¹ for p ≥ 5.
    pub fn affine(p: usize, basepoint: &BasepointSpec) -> Result<Arc<Self>, Error> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let zeta = primitive_root(p);
        let translation = {
            let images: Vec<u16> = (0..p).map(|t| ((t + 1) % p) as u16).collect();
            Perm::from_images(images)?
        };
        let scaling = {
            let images: Vec<u16> = (0..p).map(|t| ((t * zeta) % p) as u16).collect();
            Perm::from_images(images)?
        };
        let default = {
            let images: Vec<u16> = (0..p).map(|t| ((t * zeta + 1) % p) as u16).collect();
            Perm::from_images(images)?
        };
        Self::from_generators(
            &format!("Aff{}", p),
            GroupKind::Affine(p),
            p,
            vec![translation, scaling],
            basepoint,
            Some(default),
        )
    }

    /// Parses a descriptor like `A5`, `S7`, `D6`, `PSL2_7`, `M11`, `Aff5`.
    pub fn build_named(descriptor: &str, basepoint: &BasepointSpec) -> Result<Arc<Self>, Error> {
        let d = descriptor.trim();
        let num = |s: &str| -> Result<usize, Error> {
            s.parse()
                .map_err(|_| Error::UnknownDescriptor(descriptor.to_string()))
        };
        if d == "M11" {
            Self::mathieu11(basepoint)
        } else if let Some(rest) = d.strip_prefix("PSL2_") {
            Self::psl2(num(rest)?, basepoint)
        } else if let Some(rest) = d.strip_prefix("Aff") {
            Self::affine(num(rest)?, basepoint)
        } else if let Some(rest) = d.strip_prefix('A') {
            Self::alternating(num(rest)?, basepoint)
        } else if let Some(rest) = d.strip_prefix('S') {
            Self::symmetric(num(rest)?, basepoint)
        } else if let Some(rest) = d.strip_prefix('D') {
            Self::dihedral(num(rest)?, basepoint)
        } else {
            Err(Error::UnknownDescriptor(descriptor.to_string()))
        }
    }

    // ------------------------------------------------------------------
    // accessors

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, perm: &Perm) -> Option<usize> {
        self.index.get(perm).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(table) => table[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv_table[a] as usize
    }

    /// b⁻¹ · a · b.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut n = 1;
        while acc != self.identity {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    // ------------------------------------------------------------------
    // subgroup machinery

    /// The conjugacy class {g⁻¹ x g : g ∈ G}, as a sorted index set.
    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        // orbit of x under conjugation by generators
        let mut seen = vec![false; self.order()];
        let mut orbit = vec![x];
        seen[x] = true;
        let mut head = 0;
        while head < orbit.len() {
            let a = orbit[head];
            head += 1;
            for &g in &self.generators {
                let c = self.conj(a, g);
                if !seen[c] {
                    seen[c] = true;
                    orbit.push(c);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        self.make_subgroup(members)
    }

    /// Membership closure of the given generators inside this group.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut head = 0;
        while head < members.len() {
            if members.len() == self.order() {
                return (0..self.order()).collect();
            }
            let a = members[head];
            head += 1;
            for &g in gens {
                let p = self.mul(a, g);
                if !seen[p] {
                    seen[p] = true;
                    members.push(p);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Greedy small generating set for a subgroup given by its members.
    fn small_generating_set(&self, members: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut generated = vec![self.identity];
        loop {
            let missing = members.iter().copied().find(|m| {
                // `generated` is kept sorted
                generated.binary_search(m).is_err()
            });
            match missing {
                None => return gens,
                Some(m) => {
                    gens.push(m);
                    generated = self.generated_subgroup(&gens);
                }
            }
        }
    }

    /// G′ as the normal closure of the commutators of the generators.
    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut seeds: Vec<usize> = Vec::new();
        for &a in &self.generators {
            for &b in &self.generators {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != self.identity && !seeds.contains(&c) {
                    seeds.push(c);
                }
            }
        }
        loop {
            let members = self.generated_subgroup(&seeds);
            let mut contains = vec![false; self.order()];
            for &m in &members {
                contains[m] = true;
            }
            let mut new_seed = None;
            'outer: for &m in &members {
                for &g in &self.generators {
                    let c = self.conj(m, g);
                    if !contains[c] {
                        new_seed = Some(c);
                        break 'outer;
                    }
                }
            }
            match new_seed {
                Some(s) => seeds.push(s),
                None => return self.make_subgroup(members),
            }
        }
    }

    /// Λ = C(x) ∩ G′ for the basepoint x (cached).
    pub fn longitude_subgroup(&self) -> &Subgroup {
        &self.lambda
    }

    pub fn basepoint_class(&self) -> &[usize] {
        &self.class_of_basepoint
    }

    pub fn basepoint_centralizer(&self) -> &Subgroup {
        &self.centralizer_of_basepoint
    }

    pub fn commutator_cached(&self) -> &Subgroup {
        &self.commutator
    }

    /// Whether the basepoint's conjugacy class generates the whole group.
    pub fn is_colouring_group(&self) -> bool {
        self.generated_subgroup(&self.class_of_basepoint).len() == self.order()
    }

    /// Stabilized term of the chain G_{i+1} = ⟨x^{G_i}⟩, as a new group.
    pub fn colouring_core(self: &Arc<Self>) -> Result<Arc<Self>, Error> {
        let mut members: Vec<usize> = (0..self.order()).collect();
        loop {
            // class of x under conjugation by the current subgroup only
            let class: Vec<usize> = members.iter().map(|&g| self.conj(self.basepoint, g)).fold(
                Vec::new(),
                |mut acc, c| {
                    if !acc.contains(&c) {
                        acc.push(c);
                    }
                    acc
                },
            );
            let next = self.generated_subgroup(&class);
            if next.len() == members.len() {
                break;
            }
            members = next;
        }
        self.subgroup_as_group(&members, &format!("{}_core", self.name), self.basepoint)
    }

    /// Re-indexes a subgroup as a standalone group; basepoint must belong.
    pub fn subgroup_as_group(
        &self,
        members: &[usize],
        name: &str,
        basepoint: usize,
    ) -> Result<Arc<Self>, Error> {
        if !members.contains(&basepoint) {
            return Err(Error::NotAMember(self.elements[basepoint].to_string()));
        }
        let elements: Vec<Perm> = members.iter().map(|&m| self.elements[m].clone()).collect();
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            index.insert(e.clone(), i);
        }
        let gen_set = self.small_generating_set(members);
        let generators: Vec<usize> = gen_set
            .iter()
            .map(|&m| index[&self.elements[m]])
            .collect();
        let basepoint_perm = self.elements[basepoint].clone();
        Self::finish(
            name,
            GroupKind::Custom,
            self.degree,
            elements,
            index,
            generators,
            &BasepointSpec::Default,
            Some(basepoint_perm),
        )
    }

    /// Λ realized as a standalone pointed group (basepoint: its cyclic
    /// generator when one exists, identity otherwise).
    pub fn lambda_as_group(&self) -> Result<Arc<Self>, Error> {
        let base = self
            .lambda
            .cyclic_generator()
            .map(|(g, _)| g)
            .unwrap_or(self.identity);
        self.subgroup_as_group(
            self.lambda.members(),
            &format!("Lambda({})", self.name),
            base,
        )
    }

    // ------------------------------------------------------------------
    // obversions

    /// Searches for an automorphism sending x to x⁻¹.
    ///
    /// Tries, in order: an inner obversion (conjugation inside G); for the
    /// symmetric, alternating and PSL₂ families, conjugation by a known
    /// external permutation; a brute-force search over all automorphisms
    /// when |G| is within `bound`. Returns Ok(None) only when the search
    /// was exhaustive.
    pub fn find_obversion(&self, bound: usize) -> Result<Option<ObversionPair>, Error> {
        let x = self.basepoint;
        let x_inv = self.inv(x);

        // inner: g with x^g = x⁻¹
        for g in 0..self.order() {
            if self.conj(x, g) == x_inv {
                let images: Vec<usize> = (0..self.order()).map(|a| self.conj(a, g)).collect();
                return Ok(Some(self.obversion_from_images(images)));
            }
        }

        // structural shortcut: conjugation by an external permutation
        let external: Option<Perm> = match self.kind {
            GroupKind::Symmetric(_) | GroupKind::Alternating(_) => {
                Some(cycle_reversal(&self.elements[x]))
            }
            GroupKind::Psl2(p) => {
                // t -> -t, the image of diag(1, -1) in PGL2
                let mut images: Vec<u16> = vec![0; self.degree];
                images[p] = p as u16;
                for t in 0..p {
                    images[t] = ((p - t) % p) as u16;
                }
                Some(Perm::from_images(images).expect("negation is a bijection"))
            }
            _ => None,
        };
        if let Some(sigma) = external {
            if self.elements[x].conjugate_by(&sigma) == self.elements[x_inv] {
                let mut images = Vec::with_capacity(self.order());
                let mut all_inside = true;
                for e in &self.elements {
                    match self.index_of(&e.conjugate_by(&sigma)) {
                        Some(i) => images.push(i),
                        None => {
                            all_inside = false;
                            break;
                        }
                    }
                }
                if all_inside {
                    return Ok(Some(self.obversion_from_images(images)));
                }
            }
        }

        if self.order() > bound {
            return Err(Error::SearchBoundExceeded(self.order()));
        }
        match self.search_automorphism_sending(x, x_inv) {
            Some(images) => Ok(Some(self.obversion_from_images(images))),
            None => Ok(None),
        }
    }

    fn obversion_from_images(&self, images: Vec<usize>) -> ObversionPair {
        let rev_images: Vec<usize> = (0..self.order()).map(|a| images[self.inv(a)]).collect();
        ObversionPair {
            obversion: GroupMap::new(images, MapKind::Homomorphism),
            reversion: GroupMap::new(rev_images, MapKind::AntiHomomorphism),
        }
    }

    /// Exhaustive search for an automorphism with f(from) = to.
    fn search_automorphism_sending(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let gens = &self.generators;
        let orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let candidates: Vec<Vec<usize>> = orders
            .iter()
            .map(|&o| {
                (0..self.order())
                    .filter(|&e| self.element_order(e) == o)
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice
                .iter()
                .zip(&candidates)
                .map(|(&c, cand)| cand[c])
                .collect();
            if let Some(map) = self.extend_to_homomorphism(gens, &images) {
                if map[from] == to {
                    return Some(map);
                }
            }
            // advance the odometer
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return None;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    /// Extends generator images to a full map and verifies it is a
    /// bijective homomorphism; None when inconsistent.
    fn extend_to_homomorphism(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map: Vec<Option<usize>> = vec![None; n];
        map[self.identity] = Some(self.identity);
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            let fa = map[a].unwrap();
            for (k, &g) in gens.iter().enumerate() {
                let ag = self.mul(a, g);
                let f_ag = self.mul(fa, images[k]);
                match map[ag] {
                    None => {
                        map[ag] = Some(f_ag);
                        queue.push(ag);
                    }
                    Some(existing) => {
                        if existing != f_ag {
                            return None;
                        }
                    }
                }
            }
        }
        let map: Vec<usize> = map.into_iter().collect::<Option<Vec<_>>>()?;
        let mut seen = vec![false; n];
        for &im in &map {
            if seen[im] {
                return None;
            }
            seen[im] = true;
        }
        Some(map)
    }

    /// Conjugacy class representatives with class sizes (for T_G).
    pub fn class_representatives(&self) -> Vec<(usize, usize)> {
        let mut assigned = vec![false; self.order()];
        let mut reps = Vec::new();
        for e in 0..self.order() {
            if assigned[e] {
                continue;
            }
            let class = self.conjugacy_class(e);
            for &c in &class {
                assigned[c] = true;
            }
            reps.push((e, class.len()));
        }
        reps
    }
}

/// σ reversing every cycle of x (fixing each cycle's first point), so
/// that x^σ = x⁻¹. May be odd.
fn cycle_reversal(x: &Perm) -> Perm {
    let mut images: Vec<u16> = (0..x.degree() as u16).collect();
    for cycle in x.cycles() {
        let k = cycle.len();
        for (i, &p) in cycle.iter().enumerate() {
            images[p as usize] = cycle[(k - i) % k];
        }
    }
    Perm::from_images(images).expect("cycle reversal is a bijection")
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: usize, p: usize) -> usize {
    // p prime, a != 0 mod p
    let mut result = 1usize;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp % 2 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp /= 2;
    }
    result
}

fn primitive_root(p: usize) -> usize {
    'cand: for zeta in 2..p {
        let mut acc = zeta;
        for _ in 1..p - 2 {
            acc = acc * zeta % p;
            if acc == 1 {
                continue 'cand;
            }
        }
        return zeta;
    }
    1 // p = 2 or 3
}
