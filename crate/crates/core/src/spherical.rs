//! Elements of the spherical Hecke algebra as tables of coefficients indexed
//! by dominant weights, the pre-canonical bases and every change of basis.
//!
//! Canonical-basis coordinates are the pivot: each basis element is first
//! produced in canonical coordinates and every other view is derived from
//! there by a unitriangular solve or a Kostka–Foulkes expansion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde_json::json;

use crate::error::Error;
use crate::kostka::KostkaFoulkes;
use crate::qpoly::QPoly;
use crate::rootsys::{Coords, RootSystem, Weight};
use crate::weyl::{dominant_rep, dominant_rep_fast, stabilizer_poincare, DotOrbit, WeylGroup};

/// Largest root subset accepted by the alternating subset sum.
pub const MAX_SUBSET_ROOTS: usize = 30;

/// A basis of the spherical Hecke algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisId {
    Std,
    Canon,
    /// The `i`-th pre-canonical basis with `2 <= i <= m`, `m` the height of
    /// the highest root. Level 1 is `Std` and levels above `m` are `Canon`.
    PreCanon(usize),
}

impl BasisId {
    /// Resolves the aliases `PreCanon(1) = Std` and `PreCanon(i) = Canon` for `i > m`.
    pub fn normalized(self, max_height: usize) -> BasisId {
        match self {
            BasisId::PreCanon(0) | BasisId::PreCanon(1) => BasisId::Std,
            BasisId::PreCanon(i) if i > max_height => BasisId::Canon,
            b => b,
        }
    }

    pub fn label(&self) -> String {
        match self {
            BasisId::Std => "std".to_string(),
            BasisId::Canon => "canon".to_string(),
            BasisId::PreCanon(i) => format!("precanon:{i}"),
        }
    }

    /// Accepts `std`, `canon`/`canonical` and `precanon:i`.
    pub fn parse(s: &str) -> Result<BasisId, Error> {
        match s {
            "std" | "standard" => Ok(BasisId::Std),
            "canon" | "canonical" => Ok(BasisId::Canon),
            _ => {
                let level = s
                    .strip_prefix("precanon:")
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::Precondition(format!("unknown basis {s:?}")))?;
                if level == 0 {
                    return Err(Error::InvalidLevel { level, max: usize::MAX });
                }
                Ok(BasisId::PreCanon(level))
            }
        }
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An element of the spherical Hecke algebra in the coordinates of one basis.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphElement {
    basis: BasisId,
    terms: BTreeMap<Weight, QPoly>,
}

impl SphElement {
    pub fn zero(basis: BasisId) -> Self {
        SphElement { basis, terms: BTreeMap::new() }
    }

    pub fn monomial(basis: BasisId, w: Weight, c: QPoly) -> Self {
        let mut e = SphElement::zero(basis);
        e.add_term(w, &c);
        e
    }

    pub fn from_terms(basis: BasisId, terms: impl IntoIterator<Item = (Weight, QPoly)>) -> Self {
        let mut e = SphElement::zero(basis);
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn basis(&self) -> BasisId {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Weight, QPoly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Weight) -> QPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Weight, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`; both sides must be in the same basis.
    pub fn add_scaled(&mut self, other: &SphElement, c: &QPoly) {
        assert_eq!(self.basis, other.basis, "adding elements of different bases");
        for (w, p) in &other.terms {
            self.add_term(w.clone(), &(p * c));
        }
    }

    pub fn scaled(&self, c: &QPoly) -> SphElement {
        let mut out = SphElement::zero(self.basis);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> SphElement {
        self.scaled(&QPoly::constant(-1))
    }

    pub fn sub(&self, other: &SphElement) -> SphElement {
        let mut out = self.clone();
        out.add_scaled(other, &QPoly::constant(-1));
        out
    }

    /// Relabels the coordinates without changing them.
    pub fn with_basis(mut self, basis: BasisId) -> SphElement {
        self.basis = basis;
        self
    }

    /// Terms ordered by height descending, then lexicographically.
    pub fn sorted_terms(&self, rs: &RootSystem) -> Vec<(&Weight, &QPoly)> {
        let mut v: Vec<(i64, &Weight, &QPoly)> =
            self.terms.iter().map(|(w, c)| (-rs.scaled_height(w), w, c)).collect();
        v.sort();
        v.into_iter().map(|(_, w, c)| (w, c)).collect()
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms(rs)
            .into_iter()
            .map(|(w, c)| json!({ "weight": w, "coeff": c }))
            .collect();
        json!({ "basis": self.basis.label(), "terms": terms })
    }

    /// Every coefficient lies in `ℕ[q]`.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(QPoly::is_nonneg)
    }
}

impl fmt::Display for SphElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.basis)?;
        if self.terms.is_empty() {
            return f.write_str(" 0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let sep = if k == 0 { " " } else { " + " };
            write!(f, "{sep}({c}){w}")?;
        }
        Ok(())
    }
}

/// `sum_{I subset A} (-q)^{|I|} x^{sum I}` grouped by the value of `sum I`.
#[derive(Debug)]
pub struct SubsetSums {
    /// Distinct subset sums in weight coordinates with the dense coefficient
    /// vector of their `q`-polynomial.
    entries: Vec<(Coords, Vec<i64>)>,
}

impl SubsetSums {
    pub fn new(rank: usize, roots: &[Weight]) -> Result<Self, Error> {
        if roots.len() > MAX_SUBSET_ROOTS {
            return Err(Error::SubsetTooLarge { size: roots.len(), limit: MAX_SUBSET_ROOTS });
        }
        let len = roots.len() + 1;
        let mut table: HashMap<Coords, Vec<i64>> = HashMap::new();
        let mut one = vec![0i64; len];
        one[0] = 1;
        table.insert(Coords::from_elem(0, rank), one);
        for r in roots {
            let snapshot: Vec<(Coords, Vec<i64>)> =
                table.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            for (s, p) in snapshot {
                let t: Coords = s.iter().zip(&r.0).map(|(a, b)| a + b).collect();
                let slot = table.entry(t).or_insert_with(|| vec![0i64; len]);
                for k in 0..len - 1 {
                    slot[k + 1] -= p[k];
                }
            }
        }
        let mut entries: Vec<(Coords, Vec<i64>)> =
            table.into_iter().filter(|(_, p)| p.iter().any(|&c| c != 0)).collect();
        entries.sort();
        Ok(SubsetSums { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_{I} (-q)^{|I|} tildeH(mu - sum I)` in canonical coordinates.
    fn apply(&self, rs: &RootSystem, mu: &Weight) -> SphElement {
        let c = rs.cartan();
        let mut acc: HashMap<Coords, Vec<i64>> = HashMap::new();
        let mut nu: Coords = mu.0.clone();
        for (s, p) in &self.entries {
            for ((x, m), d) in nu.iter_mut().zip(&mu.0).zip(s) {
                *x = m - d;
            }
            if let Some((bar, sign)) = dominant_rep_fast(c, &nu) {
                let slot = acc.entry(bar).or_insert_with(|| vec![0i64; p.len()]);
                if sign > 0 {
                    for (a, b) in slot.iter_mut().zip(p) {
                        *a += b;
                    }
                } else {
                    for (a, b) in slot.iter_mut().zip(p) {
                        *a -= b;
                    }
                }
            }
        }
        let out = SphElement::from_terms(
            BasisId::Canon,
            acc.into_iter().map(|(w, p)| (Weight(w), QPoly::from_i64s(&p))),
        );
        debug_assert!(out.terms.keys().all(|w| rs.same_coset(w, mu)), "term left the coset of {mu}");
        out
    }
}

/// The spherical Hecke algebra of one root system with its caches.
#[derive(Debug)]
pub struct SphericalHecke {
    rs: RootSystem,
    kostka: OnceLock<Result<KostkaFoulkes, Error>>,
    /// Subset sums over the roots of height at least `i`, indexed by `i`.
    level_sums: Vec<OnceLock<Result<Arc<SubsetSums>, Error>>>,
    precanon: RwLock<HashMap<(Weight, usize), Arc<SphElement>>>,
    /// Canonical basis vectors expanded in the standard basis.
    kl_rows: RwLock<HashMap<Weight, Arc<SphElement>>>,
}

type BasisVector<'a> = dyn Fn(&Weight) -> Result<Arc<SphElement>, Error> + 'a;

impl SphericalHecke {
    pub fn new(rs: RootSystem) -> Self {
        let levels = rs.max_height() + 2;
        SphericalHecke {
            rs,
            kostka: OnceLock::new(),
            level_sums: (0..levels).map(|_| OnceLock::new()).collect(),
            precanon: RwLock::new(HashMap::new()),
            kl_rows: RwLock::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Height of the highest root.
    pub fn max_height(&self) -> usize {
        self.rs.max_height()
    }

    /// Drops the cached basis vectors.
    pub fn clear_caches(&self) {
        self.precanon.write().unwrap().clear();
        self.kl_rows.write().unwrap().clear();
    }

    pub fn kostka(&self) -> Result<&KostkaFoulkes, Error> {
        self.kostka
            .get_or_init(|| WeylGroup::enumerate(&self.rs).map(|w| KostkaFoulkes::new(&self.rs, w)))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn kostka_foulkes(&self, lambda: &Weight, mu: &Weight) -> Result<QPoly, Error> {
        Ok(self.kostka()?.kostka_foulkes(&self.rs, lambda, mu))
    }

    pub fn kl_entry(&self, mu: &Weight, lambda: &Weight) -> Result<QPoly, Error> {
        Ok(self.kostka()?.kl_entry(&self.rs, mu, lambda))
    }

    fn check_dominant(&self, w: &Weight) -> Result<(), Error> {
        self.rs.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(())
    }

    /// Weight images of the positive roots of height at least `i`.
    pub fn level_roots(&self, i: usize) -> Vec<Weight> {
        self.rs
            .roots_of_height_at_least(i)
            .into_iter()
            .map(|k| self.rs.positive_roots()[k].weight.clone())
            .collect()
    }

    fn level_sums(&self, i: usize) -> Result<Arc<SubsetSums>, Error> {
        let i = i.min(self.level_sums.len() - 1);
        self.level_sums[i]
            .get_or_init(|| SubsetSums::new(self.rs.rank(), &self.level_roots(i)).map(Arc::new))
            .clone()
    }

    /// The signed dominant representative of `mu` under the dot action, as a
    /// canonical basis element.
    pub fn tilde_h(&self, mu: &Weight) -> SphElement {
        match dominant_rep(&self.rs, mu) {
            DotOrbit::Singular => SphElement::zero(BasisId::Canon),
            DotOrbit::Regular { bar, sign, .. } => {
                SphElement::monomial(BasisId::Canon, bar, QPoly::constant(sign))
            }
        }
    }

    /// `sum_{I subset A} (-q)^{|I|} tildeH(mu - sum I)` for roots `A` given by
    /// their weight coordinates. Negative roots are allowed.
    pub fn m_op(&self, roots: &[Weight], mu: &Weight) -> Result<SphElement, Error> {
        self.rs.check_weight(mu)?;
        for r in roots {
            self.rs.check_weight(r)?;
        }
        Ok(SubsetSums::new(self.rs.rank(), roots)?.apply(&self.rs, mu))
    }

    /// `N^i_lambda` in canonical coordinates.
    pub fn precanonical(&self, lambda: &Weight, i: usize) -> Result<Arc<SphElement>, Error> {
        self.check_dominant(lambda)?;
        if i == 0 {
            return Err(Error::InvalidLevel { level: 0, max: self.max_height() + 1 });
        }
        let level = i.min(self.max_height() + 1);
        let key = (lambda.clone(), level);
        if let Some(v) = self.precanon.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let value = if level > self.max_height() {
            SphElement::monomial(BasisId::Canon, lambda.clone(), QPoly::one())
        } else {
            let raw = self.level_sums(level)?.apply(&self.rs, lambda);
            if level == 1 {
                let pi = stabilizer_poincare(&self.rs, lambda);
                let mut out = SphElement::zero(BasisId::Canon);
                for (w, c) in raw.terms {
                    out.add_term(w, &c.exact_div(&pi)?);
                }
                out
            } else {
                raw
            }
        };
        debug_assert!(value.coeff(lambda).is_one(), "basis vector at {lambda} is not unitriangular");
        let value = Arc::new(value);
        self.precanon.write().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// `H_lambda`-expansion of the canonical basis vector at `lambda`.
    fn kl_row(&self, lambda: &Weight) -> Result<Arc<SphElement>, Error> {
        if let Some(v) = self.kl_rows.read().unwrap().get(lambda) {
            return Ok(v.clone());
        }
        let kf = self.kostka()?;
        let mut row = SphElement::zero(BasisId::Std);
        for mu in self.rs.dominant_below(lambda) {
            row.add_term(mu.clone(), &kf.kostka_foulkes(&self.rs, lambda, &mu));
        }
        let row = Arc::new(row);
        self.kl_rows.write().unwrap().insert(lambda.clone(), row.clone());
        Ok(row)
    }

    fn check_element(&self, e: &SphElement) -> Result<(), Error> {
        for w in e.terms.keys() {
            self.check_dominant(w)?;
        }
        Ok(())
    }

    pub fn canon_to_std(&self, e: &SphElement) -> Result<SphElement, Error> {
        self.require_basis(e, BasisId::Canon)?;
        self.check_element(e)?;
        let mut out = SphElement::zero(BasisId::Std);
        for (w, c) in &e.terms {
            out.add_scaled(&*self.kl_row(w)?, c);
        }
        Ok(out)
    }

    pub fn std_to_canon(&self, e: &SphElement) -> Result<SphElement, Error> {
        self.require_basis(e, BasisId::Std)?;
        self.check_element(e)?;
        let coords = self.triangular_solve(&e.terms, &|w| self.kl_row(w), None)?;
        Ok(SphElement { basis: BasisId::Canon, terms: coords })
    }

    fn require_basis(&self, e: &SphElement, b: BasisId) -> Result<(), Error> {
        if e.basis.normalized(self.max_height()) != b {
            return Err(Error::Precondition(format!("expected basis {b}, got {}", e.basis)));
        }
        Ok(())
    }

    /// Canonical coordinates of `e`, whatever its basis.
    pub fn to_canon(&self, e: &SphElement) -> Result<SphElement, Error> {
        match e.basis.normalized(self.max_height()) {
            BasisId::Canon => Ok(e.clone().with_basis(BasisId::Canon)),
            BasisId::Std => self.std_to_canon(&e.clone().with_basis(BasisId::Std)),
            BasisId::PreCanon(i) => {
                self.check_element(e)?;
                let mut out = SphElement::zero(BasisId::Canon);
                for (w, c) in &e.terms {
                    out.add_scaled(&*self.precanonical(w, i)?, c);
                }
                Ok(out)
            }
        }
    }

    /// Coordinates of `e` in `target`.
    pub fn express(&self, e: &SphElement, target: BasisId) -> Result<SphElement, Error> {
        let canon = self.to_canon(e)?;
        match target.normalized(self.max_height()) {
            BasisId::Canon => Ok(canon),
            BasisId::Std => self.canon_to_std(&canon),
            BasisId::PreCanon(i) => self.expand_in_precanonical(&canon, i),
        }
    }

    /// Coordinates of `e` in the `i`-th pre-canonical basis, by a triangular
    /// solve against `N^i` computed from its definition.
    pub fn expand_in_precanonical(&self, e: &SphElement, i: usize) -> Result<SphElement, Error> {
        if i == 0 {
            return Err(Error::InvalidLevel { level: 0, max: self.max_height() + 1 });
        }
        let canon = self.to_canon(e)?;
        let target = BasisId::PreCanon(i).normalized(self.max_height());
        if target == BasisId::Canon {
            return Ok(canon);
        }
        let coords = self.triangular_solve(&canon.terms, &|w| self.precanonical(w, i), None)?;
        Ok(SphElement { basis: target, terms: coords })
    }

    /// As [`expand_in_precanonical`](Self::expand_in_precanonical), eliminating
    /// at each step the dominance-maximal residual term chosen by `pick`.
    pub fn expand_in_precanonical_with_order(
        &self,
        e: &SphElement,
        i: usize,
        pick: &mut dyn FnMut(usize) -> usize,
    ) -> Result<SphElement, Error> {
        let canon = self.to_canon(e)?;
        let target = BasisId::PreCanon(i).normalized(self.max_height());
        let coords = self.triangular_solve(&canon.terms, &|w| self.precanonical(w, i), Some(pick))?;
        Ok(SphElement { basis: target, terms: coords })
    }

    /// Solves `e = sum_mu x_mu b(mu)` where every `b(mu)` has coefficient 1 at
    /// `mu` and is otherwise supported strictly below `mu`.
    fn triangular_solve(
        &self,
        e: &BTreeMap<Weight, QPoly>,
        basis: &BasisVector<'_>,
        mut pick: Option<&mut dyn FnMut(usize) -> usize>,
    ) -> Result<BTreeMap<Weight, QPoly>, Error> {
        let rs = &self.rs;
        let mut residual: BTreeMap<(i64, Weight), QPoly> =
            e.iter().map(|(w, c)| ((rs.scaled_height(w), w.clone()), c.clone())).collect();
        let mut out = BTreeMap::new();
        while !residual.is_empty() {
            let key = match pick.as_mut() {
                None => residual.keys().next_back().unwrap().clone(),
                Some(choose) => {
                    let keys: Vec<&(i64, Weight)> = residual.keys().collect();
                    let maximal: Vec<&(i64, Weight)> = keys
                        .iter()
                        .filter(|a| !keys.iter().any(|b| b.1 != a.1 && rs.dominance_leq(&a.1, &b.1)))
                        .copied()
                        .collect();
                    maximal[choose(maximal.len()) % maximal.len()].clone()
                }
            };
            let c = residual.remove(&key).unwrap();
            let b = basis(&key.1)?;
            for (w, p) in &b.terms {
                if *w == key.1 {
                    if !p.is_one() {
                        return Err(Error::Precondition(format!(
                            "basis vector at {w} has leading coefficient {p}"
                        )));
                    }
                    continue;
                }
                let k = (rs.scaled_height(w), w.clone());
                let slot = residual.entry(k.clone()).or_default();
                *slot -= &(&c * p);
                if slot.is_zero() {
                    residual.remove(&k);
                }
            }
            out.insert(key.1, c);
        }
        Ok(out)
    }

    /// `N^{i+1}_lambda` in the basis `N^i`, for `1 <= i <= m`.
    pub fn transition(&self, lambda: &Weight, i: usize) -> Result<SphElement, Error> {
        self.check_dominant(lambda)?;
        if i == 0 || i > self.max_height() {
            return Err(Error::InvalidLevel { level: i, max: self.max_height() });
        }
        let upper = self.precanonical(lambda, i + 1)?;
        self.expand_in_precanonical(&upper, i)
    }

    /// The canonical basis vector at `lambda` in the basis `N^2`.
    pub fn atomic_decomposition(&self, lambda: &Weight) -> Result<SphElement, Error> {
        self.check_dominant(lambda)?;
        let e = SphElement::monomial(BasisId::Canon, lambda.clone(), QPoly::one());
        self.expand_in_precanonical(&e, 2)
    }

    /// `sum_{mu <= lambda dominant} q^{ht(lambda - mu)} H_mu`.
    pub fn n_basis_std(&self, lambda: &Weight) -> Result<SphElement, Error> {
        self.check_dominant(lambda)?;
        let mut out = SphElement::zero(BasisId::Std);
        for mu in self.rs.dominant_below(lambda) {
            let h = self.rs.height(&lambda.sub(&mu)).expect("same coset") as usize;
            out.add_term(mu, &QPoly::q_pow(h));
        }
        Ok(out)
    }

    /// `pi_{W_lambda}(q)`, the Poincaré polynomial of the stabilizer of `lambda`.
    pub fn stabilizer_poincare(&self, lambda: &Weight) -> QPoly {
        stabilizer_poincare(&self.rs, lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{dominant_box, Family};
    use proptest::prelude::*;

    fn hecke(fam: Family, n: usize) -> SphericalHecke {
        SphericalHecke::new(RootSystem::new(fam, n).unwrap())
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    fn el(basis: BasisId, terms: &[(&[i64], &[i64])]) -> SphElement {
        SphElement::from_terms(basis, terms.iter().map(|(a, b)| (w(a), QPoly::from_i64s(b))))
    }

    #[test]
    fn basis_aliases() {
        assert_eq!(BasisId::PreCanon(1).normalized(3), BasisId::Std);
        assert_eq!(BasisId::PreCanon(4).normalized(3), BasisId::Canon);
        assert_eq!(BasisId::PreCanon(9).normalized(3), BasisId::Canon);
        assert_eq!(BasisId::PreCanon(3).normalized(3), BasisId::PreCanon(3));
        assert_eq!(BasisId::parse("precanon:3").unwrap(), BasisId::PreCanon(3));
        assert_eq!(BasisId::parse("canonical").unwrap(), BasisId::Canon);
        assert!(BasisId::parse("precanon:0").is_err());
    }

    #[test]
    fn tilde_h_examples() {
        let h = hecke(Family::A, 2);
        assert!(h.tilde_h(&w(&[-1, 0])).is_zero());
        assert_eq!(h.tilde_h(&w(&[-2, 1])), el(BasisId::Canon, &[(&[0, 0], &[-1])]));
        assert_eq!(h.tilde_h(&w(&[2, 1])), el(BasisId::Canon, &[(&[2, 1], &[1])]));
    }

    #[test]
    fn a1_examples() {
        let h = hecke(Family::A, 1);
        let two = w(&[2]);
        assert_eq!(*h.precanonical(&two, 1).unwrap(), el(BasisId::Canon, &[(&[2], &[1]), (&[0], &[0, -1])]));
        let canon = SphElement::monomial(BasisId::Canon, two.clone(), QPoly::one());
        let std = el(BasisId::Std, &[(&[2], &[1]), (&[0], &[0, 1])]);
        assert_eq!(h.canon_to_std(&canon).unwrap(), std);
        assert_eq!(h.std_to_canon(&std).unwrap(), canon);
        assert_eq!(h.n_basis_std(&two).unwrap(), std);
        assert_eq!(h.atomic_decomposition(&two).unwrap(), el(BasisId::Canon, &[(&[2], &[1])]));
    }

    #[test]
    fn a3_examples() {
        let h = hecke(Family::A, 3);
        let lam = w(&[1, 1, 1]);
        let m = h.m_op(&h.level_roots(2), &lam).unwrap();
        assert!(m.coeff(&lam).is_one());
        let canon = SphElement::monomial(BasisId::Canon, lam.clone(), QPoly::one());
        assert_eq!(
            h.expand_in_precanonical(&canon, 3).unwrap(),
            el(BasisId::PreCanon(3), &[(&[1, 1, 1], &[1]), (&[0, 1, 0], &[0, 1])])
        );
        let n3 = h.precanonical(&lam, 3).unwrap();
        assert_eq!(
            h.expand_in_precanonical(&n3, 2).unwrap(),
            el(BasisId::PreCanon(2), &[(&[1, 1, 1], &[1]), (&[0, 0, 2], &[0, 1]), (&[2, 0, 0], &[0, 1])])
        );
        let nb = h.n_basis_std(&w(&[1, 0, 1])).unwrap();
        assert_eq!(nb.coeff(&w(&[0, 0, 0])), QPoly::q_pow(3));
        assert_eq!(nb.coeff(&w(&[1, 0, 1])), QPoly::one());
    }

    #[test]
    fn a4_examples() {
        let h = hecke(Family::A, 4);
        assert_eq!(
            h.transition(&w(&[1, 0, 0, 1]), 4).unwrap(),
            el(BasisId::PreCanon(4), &[(&[1, 0, 0, 1], &[1]), (&[0, 0, 0, 0], &[0, 1])])
        );
        let n2 = h.precanonical(&w(&[1, 0, 0, 1]), 2).unwrap();
        assert_eq!(
            h.expand_in_precanonical(&n2, 3).unwrap(),
            el(BasisId::PreCanon(3), &[(&[1, 0, 0, 1], &[1]), (&[0, 0, 0, 0], &[0, 0, -1, -1])])
        );
        assert!(h.transition(&w(&[1, 0, 0, 1]), 5).is_err());
        assert!(h.transition(&w(&[1, 0, 0, 1]), 0).is_err());
    }

    #[test]
    fn zero_weight_is_fixed() {
        let h = hecke(Family::D, 4);
        for i in 1..=7 {
            assert_eq!(*h.precanonical(&Weight::zero(4), i).unwrap(), el(BasisId::Canon, &[(&[0, 0, 0, 0], &[1])]));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let h = hecke(Family::A, 2);
        assert!(matches!(h.precanonical(&w(&[1]), 2), Err(Error::WeightLength { .. })));
        assert!(matches!(h.precanonical(&w(&[-1, 1]), 2), Err(Error::NotDominant(_))));
        let many: Vec<Weight> = (0..31).map(|_| w(&[2, -1])).collect();
        assert!(matches!(h.m_op(&many, &w(&[0, 0])), Err(Error::SubsetTooLarge { .. })));
    }

    #[test]
    fn json_rendering() {
        let h = hecke(Family::A, 3);
        let e = el(BasisId::PreCanon(3), &[(&[1, 1, 1], &[1]), (&[0, 1, 0], &[0, 1])]);
        let v = e.to_json(h.root_system());
        assert_eq!(
            v,
            json!({"basis": "precanon:3", "terms": [
                {"weight": [1, 1, 1], "coeff": [1]},
                {"weight": [0, 1, 0], "coeff": [0, 1]}
            ]})
        );
    }

    /// Direct bitmask enumeration of the alternating subset sum.
    fn m_op_oracle(h: &SphericalHecke, roots: &[Weight], mu: &Weight) -> SphElement {
        let mut out = SphElement::zero(BasisId::Canon);
        for mask in 0u32..(1 << roots.len()) {
            let mut nu = mu.clone();
            for (k, r) in roots.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    nu = nu.sub(r);
                }
            }
            let size = mask.count_ones() as usize;
            let sign = if size.is_multiple_of(2) { 1 } else { -1 };
            out.add_scaled(&h.tilde_h(&nu), &QPoly::monomial(sign, size));
        }
        out
    }

    #[test]
    fn m_op_matches_bitmask_enumeration() {
        let h = hecke(Family::A, 3);
        for i in 1..=3 {
            let roots = h.level_roots(i);
            for lam in dominant_box(3, 2) {
                assert_eq!(h.m_op(&roots, &lam).unwrap(), m_op_oracle(&h, &roots, &lam));
            }
        }
    }

    #[test]
    fn first_level_is_standard_basis() {
        for (fam, n, b) in [(Family::A, 2, 3), (Family::A, 3, 2), (Family::D, 4, 1)] {
            let h = hecke(fam, n);
            for lam in dominant_box(n, b) {
                let n1 = h.precanonical(&lam, 1).unwrap();
                assert_eq!(
                    h.canon_to_std(&n1).unwrap(),
                    SphElement::monomial(BasisId::Std, lam.clone(), QPoly::one())
                );
                let n2 = h.precanonical(&lam, 2).unwrap();
                assert_eq!(h.canon_to_std(&n2).unwrap(), h.n_basis_std(&lam).unwrap());
            }
        }
    }

    #[test]
    fn views_round_trip() {
        let h = hecke(Family::A, 3);
        let lam = w(&[2, 1, 1]);
        let e = h.precanonical(&lam, 2).unwrap();
        for target in [BasisId::Std, BasisId::PreCanon(2), BasisId::PreCanon(3), BasisId::Canon] {
            let view = h.express(&e, target).unwrap();
            assert_eq!(h.to_canon(&view).unwrap(), *e);
        }
    }

    proptest! {
        #[test]
        fn elimination_order_does_not_matter(c in proptest::collection::vec(0i64..3, 3), i in 1usize..4, seed in any::<u64>()) {
            let h = hecke(Family::A, 3);
            let lam = Weight::new(&c);
            let e = SphElement::monomial(BasisId::Canon, lam, QPoly::one());
            let mut s = seed;
            let mut pick = |n: usize| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) as usize % n
            };
            let shuffled = h.expand_in_precanonical_with_order(&e, i, &mut pick).unwrap();
            prop_assert_eq!(shuffled, h.expand_in_precanonical(&e, i).unwrap());
        }

        #[test]
        fn std_round_trip(c in proptest::collection::vec(0i64..3, 3), coeffs in proptest::collection::vec(-3i64..4, 3)) {
            let h = hecke(Family::A, 3);
            let lam = Weight::new(&c);
            let below = h.root_system().dominant_below(&lam);
            let mut e = SphElement::zero(BasisId::Std);
            for (mu, k) in below.iter().zip(&coeffs) {
                e.add_term(mu.clone(), &QPoly::from_i64s(&[*k, 1]));
            }
            let back = h.canon_to_std(&h.std_to_canon(&e).unwrap()).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn reflection_antisymmetry(mask in 0u32..(1 << 10), c in proptest::collection::vec(-3i64..4, 4), k in 0usize..4) {
            let h = hecke(Family::A, 4);
            let rs = h.root_system();
            let roots: Vec<Weight> = rs.positive_roots().iter().enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0).map(|(_, r)| r.weight.clone()).collect();
            let mu = Weight::new(&c);
            let reflected: Vec<Weight> = roots.iter().map(|r| crate::weyl::reflect(rs, k, r)).collect();
            let lhs = h.m_op(&roots, &mu).unwrap();
            let rhs = h.m_op(&reflected, &crate::weyl::dot_reflect(rs, k, &mu)).unwrap().neg();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
