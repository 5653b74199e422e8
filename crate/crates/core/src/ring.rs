//! Integer group-ring arithmetic ℤG: the value domain of the invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::group::{GroupMap, PointedGroup, Subgroup};
use crate::perm::Perm;

/// A formal ℤ-linear combination of group elements. Zero coefficients
/// are never stored.
#[derive(Clone)]
pub struct RingElement {
    group: Arc<PointedGroup>,
    terms: BTreeMap<usize, i64>,
}

impl RingElement {
    pub fn zero(group: Arc<PointedGroup>) -> Self {
        RingElement {
            group,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: 1·e.
    pub fn one(group: Arc<PointedGroup>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(group.identity(), 1);
        RingElement { group, terms }
    }

    pub fn from_terms(group: Arc<PointedGroup>, terms: &[(usize, i64)]) -> Self {
        let mut elem = RingElement::zero(group);
        for &(g, c) in terms {
            elem.add_term(g, c);
        }
        elem
    }

    pub fn group(&self) -> &Arc<PointedGroup> {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    pub fn coefficient(&self, elem: usize) -> i64 {
        self.terms.get(&elem).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, elem: usize, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(elem).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&elem);
        }
    }

    fn same_carrier(&self, other: &RingElement) -> Result<(), Error> {
        if Arc::ptr_eq(&self.group, &other.group) {
            return Ok(());
        }
        Err(Error::CarrierMismatch(
            self.group.name().to_string(),
            other.group.name().to_string(),
        ))
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement, Error> {
        self.same_carrier(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> RingElement {
        let mut out = RingElement::zero(self.group.clone());
        for (g, c) in self.terms() {
            out.add_term(g, c * k);
        }
        out
    }

    /// Convolution product Σ aᵤbᵥ·(uv).
    pub fn multiply(&self, other: &RingElement) -> Result<RingElement, Error> {
        self.same_carrier(other)?;
        let mut out = RingElement::zero(self.group.clone());
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(self.group.mul(u, v), a * b);
            }
        }
        Ok(out)
    }

    /// Divides every coefficient by k; None unless the division is exact.
    pub fn divide_exact(&self, k: i64) -> Option<RingElement> {
        if k == 0 {
            return None;
        }
        let mut out = RingElement::zero(self.group.clone());
        for (g, c) in self.terms() {
            if c % k != 0 {
                return None;
            }
            out.add_term(g, c / k);
        }
        Some(out)
    }

    /// Sum of all coefficients (the colouring number when applied to a
    /// colouring polynomial).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Linear extension of g ↦ g⁻¹.
    pub fn apply_inversion(&self) -> RingElement {
        let mut out = RingElement::zero(self.group.clone());
        for (g, c) in self.terms() {
            out.add_term(self.group.inv(g), c);
        }
        out
    }

    /// Linear extension of a group (anti-)automorphism.
    pub fn apply_group_map(&self, map: &GroupMap) -> RingElement {
        let mut out = RingElement::zero(self.group.clone());
        for (g, c) in self.terms() {
            out.add_term(map.apply(g), c);
        }
        out
    }

    /// Linear extension of a partial map; elements outside the map's
    /// domain are sent to zero.
    pub fn apply_projection<F>(&self, f: F) -> RingElement
    where
        F: Fn(usize) -> Option<usize>,
    {
        let mut out = RingElement::zero(self.group.clone());
        for (g, c) in self.terms() {
            if let Some(h) = f(g) {
                out.add_term(h, c);
            }
        }
        out
    }

    /// Re-expresses this element over another group, matching elements by
    /// their underlying permutations. Errors when a supported permutation
    /// is missing from the target.
    pub fn transport(&self, target: Arc<PointedGroup>) -> Result<RingElement, Error> {
        let mut out = RingElement::zero(target.clone());
        for (g, c) in self.terms() {
            let perm = self.group.element(g);
            let h = target
                .index_of(perm)
                .ok_or_else(|| Error::MapUndefined(perm.to_string()))?;
            out.add_term(h, c);
        }
        Ok(out)
    }

    /// Support as permutation → coefficient, for cross-carrier comparison.
    pub fn as_perm_map(&self) -> BTreeMap<Perm, i64> {
        self.terms()
            .map(|(g, c)| (self.group.element(g).clone(), c))
            .collect()
    }

    pub fn support_in(&self, subgroup: &Subgroup) -> bool {
        self.terms.keys().all(|&g| subgroup.contains(g))
    }

    /// Canonical text form. When `cyclic` provides a generator t of order
    /// m and the support lies in ⟨t⟩, terms are rendered as coeff*t^e
    /// with exponents reduced to [0, m) in ascending order; otherwise
    /// each term is rendered with its permutation.
    pub fn render(&self, cyclic: Option<(usize, usize)>) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        if let Some((t, order)) = cyclic {
            if let Some(powers) = self.exponents_in(t, order) {
                let mut parts = Vec::new();
                for (exp, coeff) in powers {
                    if exp == 0 {
                        parts.push(format!("{}", coeff));
                    } else if exp == 1 {
                        parts.push(format!("{}*t", coeff));
                    } else {
                        parts.push(format!("{}*t^{}", coeff, exp));
                    }
                }
                return parts.join(" + ");
            }
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(g, c)| format!("{}*{}", c, self.group.element(g)))
            .collect();
        parts.join(" + ")
    }

    /// Coefficients by exponent of t, ascending, when the support lies in ⟨t⟩.
    pub fn exponents_in(&self, t: usize, order: usize) -> Option<BTreeMap<usize, i64>> {
        let group = &self.group;
        let mut power_index = BTreeMap::new();
        let mut acc = group.identity();
        for e in 0..order {
            power_index.insert(acc, e);
            acc = group.mul(acc, t);
        }
        let mut out = BTreeMap::new();
        for (g, c) in self.terms() {
            let &e = power_index.get(&g)?;
            out.insert(e, c);
        }
        Some(out)
    }

    /// JSON form: `{"group": "...", "terms": [{"elem": "...", "coeff": n}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(g, c)| {
                serde_json::json!({
                    "elem": self.group.element(g).to_string(),
                    "coeff": c,
                })
            })
            .collect();
        serde_json::json!({
            "group": self.group.name(),
            "terms": terms,
        })
    }

    pub fn from_json(group: Arc<PointedGroup>, value: &serde_json::Value) -> Result<Self, Error> {
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Parse("missing terms array".into()))?;
        let mut out = RingElement::zero(group.clone());
        for term in terms {
            let elem_text = term
                .get("elem")
                .and_then(|e| e.as_str())
                .ok_or_else(|| Error::Parse("missing elem".into()))?;
            let coeff = term
                .get("coeff")
                .and_then(|c| c.as_i64())
                .ok_or_else(|| Error::Parse("missing coeff".into()))?;
            let perm = Perm::parse_cycles(elem_text, Some(group.degree()))?;
            let idx = group
                .index_of(&perm)
                .ok_or_else(|| Error::NotAMember(elem_text.to_string()))?;
            out.add_term(idx, coeff);
        }
        Ok(out)
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && Arc::ptr_eq(&self.group, &other.group)
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(None))
    }
}
