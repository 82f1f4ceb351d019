//! Lusztig's q-analogue of Kostant's partition function and the
//! Kostka–Foulkes polynomials built from it.

use std::collections::HashMap;
use std::sync::RwLock;

use dashu_int::IBig;

use crate::qpoly::QPoly;
use crate::rootsys::{Coords, RootSystem, Weight};
use crate::weyl::{dominant_linear, WeylGroup};

/// `P_q(beta) = sum over ways of writing beta as a sum of positive roots of
/// q^(number of summands)`, memoized on (prefix length, remainder).
#[derive(Debug)]
pub struct KostantPartition {
    /// Positive roots in simple-root coordinates, in the order they are consumed.
    roots: Vec<Coords>,
    /// `support[m][c]`: one of `roots[..m]` is positive in coordinate `c`.
    support: Vec<Vec<bool>>,
    memo: RwLock<HashMap<(usize, Coords), QPoly>>,
}

impl KostantPartition {
    pub fn new(rs: &RootSystem) -> Self {
        Self::with_roots(rs.positive_roots().iter().map(|r| r.coords.clone()).collect())
    }

    /// Uses the given roots in the given order; the value does not depend on the order.
    pub fn with_roots(roots: Vec<Coords>) -> Self {
        let n = roots.first().map_or(0, |r| r.len());
        let mut support = vec![vec![false; n]];
        for r in &roots {
            let prev = support.last().unwrap().clone();
            support.push(prev.iter().zip(r).map(|(&p, &x)| p || x > 0).collect());
        }
        KostantPartition { roots, support, memo: RwLock::new(HashMap::new()) }
    }

    /// `P_q(beta)` for `beta` in simple-root coordinates.
    pub fn eval(&self, beta: &[i64]) -> QPoly {
        self.eval_prefix(self.roots.len(), &Coords::from_slice(beta))
    }

    fn eval_prefix(&self, m: usize, beta: &Coords) -> QPoly {
        if beta.iter().any(|&x| x < 0) {
            return QPoly::zero();
        }
        if beta.iter().all(|&x| x == 0) {
            return QPoly::one();
        }
        if beta.iter().zip(&self.support[m]).any(|(&x, &s)| x > 0 && !s) {
            return QPoly::zero();
        }
        let key = (m, beta.clone());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let alpha = &self.roots[m - 1];
        let mut total = QPoly::zero();
        let mut rest = beta.clone();
        let mut k = 0usize;
        let one = IBig::ONE;
        loop {
            let sub = self.eval_prefix(m - 1, &rest);
            total.add_scaled_shifted(&sub, &one, k);
            for (r, a) in rest.iter_mut().zip(alpha) {
                *r -= a;
            }
            k += 1;
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        self.memo.write().unwrap().insert(key, total.clone());
        total
    }
}

/// Kostka–Foulkes polynomials `K_{lambda,mu}` through Lusztig's alternating
/// sum over the Weyl group.
#[derive(Debug)]
pub struct KostkaFoulkes {
    weyl: WeylGroup,
    partition: KostantPartition,
    memo: RwLock<HashMap<(Weight, Weight), QPoly>>,
}

impl KostkaFoulkes {
    pub fn new(rs: &RootSystem, weyl: WeylGroup) -> Self {
        KostkaFoulkes {
            weyl,
            partition: KostantPartition::new(rs),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn partition(&self) -> &KostantPartition {
        &self.partition
    }

    /// `K_{lambda,mu} = sum_w (-1)^l(w) P_q(w(lambda+rho) - (mu+rho))`.
    pub fn kostka_foulkes(&self, rs: &RootSystem, lambda: &Weight, mu: &Weight) -> QPoly {
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.memo.read().unwrap().get(&key) {
            return v.clone();
        }
        let value = self.compute(rs, lambda, mu);
        self.memo.write().unwrap().insert(key, value.clone());
        value
    }

    fn compute(&self, rs: &RootSystem, lambda: &Weight, mu: &Weight) -> QPoly {
        let rho = rs.rho();
        let lr = lambda.add(&rho);
        let mr = mu.add(&rho);
        if !rs.same_coset(lambda, mu) {
            return QPoly::zero();
        }
        let mut total = QPoly::zero();
        for w in self.weyl.elements() {
            let beta = w.act(&lr).sub(&mr);
            let Some(rc) = rs.root_coords(&beta) else { continue };
            if rc.iter().any(|&x| x < 0) {
                continue;
            }
            let p = self.partition.eval(&rc);
            if w.sign() > 0 {
                total += &p;
            } else {
                total -= &p;
            }
        }
        total
    }

    /// Entry of the matrix expressing the canonical basis in the standard basis:
    /// `K_{lambda,mu}` when `mu <= lambda`, zero otherwise.
    pub fn kl_entry(&self, rs: &RootSystem, mu: &Weight, lambda: &Weight) -> QPoly {
        if !rs.dominance_leq(mu, lambda) {
            return QPoly::zero();
        }
        self.kostka_foulkes(rs, lambda, mu)
    }
}

/// Weight multiplicities of irreducible modules by Freudenthal's recursion.
///
/// The invariant form is carried as `det * (x, y) = x^T adj(C) y`, which is
/// integral, so the recursion runs in exact integer arithmetic.
#[derive(Debug)]
pub struct Freudenthal<'a> {
    rs: &'a RootSystem,
    lambda: Weight,
    lr_norm: i128,
    memo: HashMap<Weight, i128>,
}

impl<'a> Freudenthal<'a> {
    pub fn new(rs: &'a RootSystem, lambda: &Weight) -> Self {
        let lr = lambda.add(&rs.rho());
        let lr_norm = form(rs, &lr, &lr);
        Freudenthal { rs, lambda: lambda.clone(), lr_norm, memo: HashMap::new() }
    }

    /// `dim V(lambda)_mu`.
    pub fn multiplicity(&mut self, mu: &Weight) -> i128 {
        let dom = dominant_linear(self.rs, mu);
        if !self.rs.dominance_leq(&dom, &self.lambda) {
            return 0;
        }
        if dom == self.lambda {
            return 1;
        }
        if let Some(&v) = self.memo.get(&dom) {
            return v;
        }
        let rs = self.rs;
        let mr = dom.add(&rs.rho());
        let denom = self.lr_norm - form(rs, &mr, &mr);
        let mut num: i128 = 0;
        for root in rs.positive_roots() {
            let mut k = 1i64;
            loop {
                let shifted = dom.add(&root.weight.scaled(k));
                let shifted_dom = dominant_linear(rs, &shifted);
                if !rs.dominance_leq(&shifted_dom, &self.lambda) {
                    break;
                }
                let m = self.multiplicity(&shifted);
                num += m * form(rs, &shifted, &root.weight);
                k += 1;
            }
        }
        num *= 2;
        assert!(denom > 0 && num % denom == 0, "Freudenthal recursion is not integral at {dom}");
        let v = num / denom;
        self.memo.insert(dom, v);
        v
    }
}

fn form(rs: &RootSystem, x: &Weight, y: &Weight) -> i128 {
    let adj = rs.adjugate();
    let n = rs.rank();
    let mut s: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            s += x.0[i] as i128 * adj[i][j] as i128 * y.0[j] as i128;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{dominant_box, Family};
    use proptest::prelude::*;

    fn kf(fam: Family, n: usize) -> (RootSystem, KostkaFoulkes) {
        let rs = RootSystem::new(fam, n).unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        let k = KostkaFoulkes::new(&rs, w);
        (rs, k)
    }

    #[test]
    fn partition_function_small_cases() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let p = KostantPartition::new(&rs);
        assert_eq!(p.eval(&[1, 1]), QPoly::from_i64s(&[0, 1, 1]));
        assert_eq!(p.eval(&[2, 2]), QPoly::from_i64s(&[0, 0, 1, 1, 1]));
        assert_eq!(p.eval(&[0, 0]), QPoly::one());
        assert_eq!(p.eval(&[-1, 2]), QPoly::zero());
    }

    #[test]
    fn known_kostka_foulkes() {
        let (rs, k) = kf(Family::A, 2);
        let w = |c: &[i64]| Weight::new(c);
        assert_eq!(k.kostka_foulkes(&rs, &w(&[1, 1]), &w(&[0, 0])), QPoly::from_i64s(&[0, 1, 1]));
        assert_eq!(k.kostka_foulkes(&rs, &w(&[3, 0]), &w(&[0, 0])), QPoly::from_i64s(&[0, 0, 0, 1]));
        assert_eq!(k.kostka_foulkes(&rs, &w(&[2, 2]), &w(&[1, 1])), QPoly::from_i64s(&[0, 1, 1]));
        let (rs, k) = kf(Family::A, 3);
        assert_eq!(
            k.kostka_foulkes(&rs, &w(&[1, 0, 1]), &w(&[0, 0, 0])),
            QPoly::from_i64s(&[0, 1, 1, 1])
        );
        assert_eq!(k.kl_entry(&rs, &w(&[1, 0, 1]), &w(&[0, 0, 0])), QPoly::zero());
    }

    #[test]
    fn freudenthal_small_cases() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let mut f = Freudenthal::new(&rs, &Weight::new(&[1, 1]));
        assert_eq!(f.multiplicity(&Weight::new(&[0, 0])), 2);
        assert_eq!(f.multiplicity(&Weight::new(&[-1, 2])), 1);
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let mut f = Freudenthal::new(&d4, &Weight::new(&[0, 1, 0, 0]));
        assert_eq!(f.multiplicity(&Weight::zero(4)), 4);
    }

    #[test]
    fn kostka_foulkes_at_one_is_weight_multiplicity() {
        for (fam, n, b) in [(Family::A, 2, 3), (Family::A, 3, 2), (Family::D, 4, 1)] {
            let (rs, k) = kf(fam, n);
            for lam in dominant_box(n, b) {
                let mut f = Freudenthal::new(&rs, &lam);
                for mu in rs.dominant_below(&lam) {
                    let p = k.kostka_foulkes(&rs, &lam, &mu);
                    assert!(p.is_nonneg());
                    assert_eq!(p.eval(1), IBig::from(f.multiplicity(&mu)), "{lam} {mu}");
                    let ht = rs.height(&lam.sub(&mu)).unwrap() as usize;
                    assert_eq!(p.degree(), Some(ht));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn partition_function_is_order_independent(
            beta in proptest::collection::vec(0i64..4, 3),
            perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let rs = RootSystem::new(Family::A, 3).unwrap();
            let roots: Vec<Coords> = rs.positive_roots().iter().map(|r| r.coords.clone()).collect();
            let shuffled: Vec<Coords> = perm.iter().map(|&k| roots[k].clone()).collect();
            prop_assert_eq!(
                KostantPartition::with_roots(roots).eval(&beta),
                KostantPartition::with_roots(shuffled).eval(&beta)
            );
        }
    }
}
