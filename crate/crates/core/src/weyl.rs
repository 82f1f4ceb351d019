//! Weyl group elements, the linear and dot actions on weights, and
//! reduction of weights to the dominant chamber.
//!
//! An element is stored as its integer matrix acting on fundamental-weight
//! coordinates. The simple reflection `s_i` sends `lambda` to
//! `lambda - lambda_i alpha_i`.

use std::collections::HashMap;

use crate::error::Error;
use crate::qpoly::QPoly;
use crate::rootsys::{Coords, Family, RootSystem, Weight};

/// Largest rank for which the full group is ever enumerated.
pub const MAX_ENUM_RANK: usize = 8;

/// Largest group order that is ever enumerated.
pub const MAX_ENUM_ORDER: usize = 500_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major `rank x rank` matrix on weight coordinates.
    pub matrix: Vec<i64>,
    pub length: usize,
    /// A reduced word `[i1, i2, ...]` with the element equal to `s_i1 s_i2 ...`.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, w: &Weight) -> Weight {
        let n = w.rank();
        Weight((0..n).map(|i| (0..n).map(|j| self.matrix[i * n + j] * w.0[j]).sum()).collect())
    }
}

/// The whole Weyl group in breadth-first order, so lengths are nondecreasing.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
}

/// `|W|` from the degrees of the basic invariants, when the family is known.
pub fn order_estimate(family: Family, rank: usize) -> Option<u128> {
    degrees(family, rank).map(|d| d.iter().map(|&x| x as u128).product())
}

/// Degrees of the basic invariants.
pub fn degrees(family: Family, rank: usize) -> Option<Vec<usize>> {
    match family {
        Family::A => Some((2..=rank + 1).collect()),
        Family::D => {
            let mut d: Vec<usize> = (1..rank).map(|k| 2 * k).collect();
            d.push(rank);
            Some(d)
        }
        Family::Custom => None,
    }
}

impl WeylGroup {
    pub fn enumerate(rs: &RootSystem) -> Result<Self, Error> {
        let n = rs.rank();
        let estimate = order_estimate(rs.family(), n);
        let refuse = |est: String| Error::WeylTooLarge { rank: n, estimate: est, cap: MAX_ENUM_ORDER };
        if n > MAX_ENUM_RANK {
            return Err(refuse(estimate.map_or("unknown".into(), |e| e.to_string())));
        }
        if let Some(e) = estimate {
            if e > MAX_ENUM_ORDER as u128 {
                return Err(refuse(e.to_string()));
            }
        }
        let mut id = vec![0i64; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(id.clone(), 0);
        let mut elements = vec![WeylElement { matrix: id, length: 0, word: Vec::new() }];
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            head += 1;
            for g in 0..n {
                let m = left_reflect(rs, g, &cur.matrix);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= MAX_ENUM_ORDER {
                    return Err(refuse(format!("more than {MAX_ENUM_ORDER}")));
                }
                let mut word = vec![g];
                word.extend_from_slice(&cur.word);
                index.insert(m.clone(), elements.len());
                elements.push(WeylElement { matrix: m, length: cur.length + 1, word });
            }
        }
        Ok(WeylGroup { rank: n, elements })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `sum_w q^{l(w)}`.
    pub fn poincare(&self) -> QPoly {
        let mut counts: Vec<i64> = Vec::new();
        for e in &self.elements {
            if counts.len() <= e.length {
                counts.resize(e.length + 1, 0);
            }
            counts[e.length] += 1;
        }
        QPoly::from_i64s(&counts)
    }
}

fn left_reflect(rs: &RootSystem, g: usize, m: &[i64]) -> Vec<i64> {
    let n = rs.rank();
    let c = rs.cartan();
    let mut out = m.to_vec();
    for j in 0..n {
        let top = m[g * n + j];
        if top != 0 {
            for i in 0..n {
                out[i * n + j] -= c[i][g] * top;
            }
        }
    }
    out
}

/// `s_i(w)`.
pub fn reflect(rs: &RootSystem, i: usize, w: &Weight) -> Weight {
    let c = rs.cartan();
    let t = w.0[i];
    Weight(w.0.iter().enumerate().map(|(k, &x)| x - t * c[k][i]).collect())
}

fn reflect_in_place(c: &[Vec<i64>], i: usize, w: &mut Coords) {
    let t = w[i];
    if t != 0 {
        for (k, x) in w.iter_mut().enumerate() {
            *x -= t * c[k][i];
        }
    }
}

/// `w . lambda = w(lambda + rho) - rho`.
pub fn dot_act(rs: &RootSystem, w: &WeylElement, lambda: &Weight) -> Weight {
    let rho = rs.rho();
    w.act(&lambda.add(&rho)).sub(&rho)
}

/// `s_i . lambda`.
pub fn dot_reflect(rs: &RootSystem, i: usize, lambda: &Weight) -> Weight {
    let rho = rs.rho();
    reflect(rs, i, &lambda.add(&rho)).sub(&rho)
}

/// Result of moving a weight into the dominant chamber under the dot action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DotOrbit {
    /// `lambda + rho` lies on a wall.
    Singular,
    /// `lambda = w . bar` with `bar` dominant, `sign = (-1)^{l(w)}` and `length = l(w)`.
    Regular { bar: Weight, sign: i64, length: usize },
}

/// Moves `lambda` to its dominant dot-orbit representative by reflecting at
/// the lowest-index negative coordinate of `lambda + rho`.
pub fn dominant_rep(rs: &RootSystem, lambda: &Weight) -> DotOrbit {
    dominant_rep_with(rs, lambda, |neg| neg[0])
}

/// As [`dominant_rep`], with `choose` picking which negative coordinate to
/// reflect at. The outcome does not depend on the choice.
pub fn dominant_rep_with(
    rs: &RootSystem,
    lambda: &Weight,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> DotOrbit {
    let c = rs.cartan();
    let mut mu: Coords = lambda.0.iter().map(|x| x + 1).collect();
    let mut steps = 0usize;
    let mut neg: Vec<usize> = Vec::new();
    loop {
        if mu.contains(&0) {
            return DotOrbit::Singular;
        }
        neg.clear();
        neg.extend(mu.iter().enumerate().filter(|(_, &x)| x < 0).map(|(k, _)| k));
        if neg.is_empty() {
            let bar = Weight(mu.iter().map(|x| x - 1).collect());
            let sign = if steps.is_multiple_of(2) { 1 } else { -1 };
            return DotOrbit::Regular { bar, sign, length: steps };
        }
        let i = choose(&neg);
        reflect_in_place(c, i, &mut mu);
        steps += 1;
    }
}

/// Fast path of [`dominant_rep`] used in inner loops: returns the dominant
/// representative and sign, or `None` when singular.
pub(crate) fn dominant_rep_fast(c: &[Vec<i64>], lambda: &[i64]) -> Option<(Coords, i64)> {
    let mut mu: Coords = lambda.iter().map(|x| x + 1).collect();
    let mut sign = 1i64;
    loop {
        let mut first = None;
        for (k, &x) in mu.iter().enumerate() {
            if x == 0 {
                return None;
            }
            if x < 0 && first.is_none() {
                first = Some(k);
            }
        }
        match first {
            None => {
                for x in mu.iter_mut() {
                    *x -= 1;
                }
                return Some((mu, sign));
            }
            Some(i) => {
                reflect_in_place(c, i, &mut mu);
                sign = -sign;
            }
        }
    }
}

/// Dominant representative of `w` under the linear action.
pub fn dominant_linear(rs: &RootSystem, w: &Weight) -> Weight {
    let c = rs.cartan();
    let mut mu = w.0.clone();
    while let Some(i) = mu.iter().position(|&x| x < 0) {
        reflect_in_place(c, i, &mut mu);
    }
    Weight(mu)
}

/// Poincaré polynomial of the stabilizer of `lambda` under the linear action,
/// the parabolic subgroup generated by `s_i` with `lambda_i = 0`.
pub fn stabilizer_poincare(rs: &RootSystem, lambda: &Weight) -> QPoly {
    let zero: Vec<usize> = (0..rs.rank()).filter(|&i| lambda.0[i] == 0).collect();
    if zero.is_empty() {
        return QPoly::one();
    }
    let sub: Vec<Vec<i64>> =
        zero.iter().map(|&i| zero.iter().map(|&j| rs.cartan()[i][j]).collect()).collect();
    let mut counts: Vec<i64> = vec![1];
    let n = sub.len();
    let mut id = vec![0i64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(id.clone(), 0);
    let mut frontier = vec![id];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for m in &frontier {
            for g in 0..n {
                let mut out = m.clone();
                for j in 0..n {
                    let top = m[g * n + j];
                    if top != 0 {
                        for i in 0..n {
                            out[i * n + j] -= sub[i][g] * top;
                        }
                    }
                }
                if !seen.contains_key(&out) {
                    seen.insert(out.clone(), depth);
                    next.push(out);
                }
            }
        }
        if !next.is_empty() {
            counts.push(next.len() as i64);
        }
        frontier = next;
    }
    QPoly::from_i64s(&counts)
}

/// `{alpha > 0 : w(alpha) < 0}` as indices into the positive roots.
pub fn phi_minus(rs: &RootSystem, w: &WeylElement) -> Vec<usize> {
    rs.positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| {
            let img = w.act(&r.weight);
            rs.scaled_height(&img) < 0
        })
        .map(|(k, _)| k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poincare_from_degrees(d: &[usize]) -> QPoly {
        let mut p = QPoly::one();
        for &k in d {
            p = &p * &QPoly::from_i64s(&vec![1; k]);
        }
        p
    }

    #[test]
    fn group_orders_and_poincare() {
        for (fam, n) in [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::A, 4), (Family::D, 4), (Family::A, 5)] {
            let rs = RootSystem::new(fam, n).unwrap();
            let w = WeylGroup::enumerate(&rs).unwrap();
            assert_eq!(w.len() as u128, order_estimate(fam, n).unwrap());
            assert_eq!(w.poincare(), poincare_from_degrees(&degrees(fam, n).unwrap()));
        }
    }

    #[test]
    fn refuses_large_groups() {
        let rs = RootSystem::new(Family::D, 8).unwrap();
        assert!(matches!(WeylGroup::enumerate(&rs), Err(Error::WeylTooLarge { .. })));
    }

    #[test]
    fn length_equals_inversions() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        let w = WeylGroup::enumerate(&rs).unwrap();
        for e in w.elements() {
            assert_eq!(phi_minus(&rs, e).len(), e.length);
            let mut m = Weight::new(&[3, 5, 7, 11]);
            for &g in e.word.iter().rev() {
                m = reflect(&rs, g, &m);
            }
            assert_eq!(m, e.act(&Weight::new(&[3, 5, 7, 11])));
        }
    }

    #[test]
    fn dot_action_examples() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(dominant_rep(&rs, &Weight::new(&[-1, 3])), DotOrbit::Singular);
        assert_eq!(
            dominant_rep(&rs, &Weight::new(&[-2, 1])),
            DotOrbit::Regular { bar: Weight::new(&[0, 0]), sign: -1, length: 1 }
        );
        assert_eq!(
            dominant_rep(&rs, &Weight::new(&[-2, -2])),
            DotOrbit::Regular { bar: Weight::new(&[0, 0]), sign: -1, length: 3 }
        );
        assert_eq!(
            dominant_rep(&rs, &Weight::new(&[-3, 0])),
            DotOrbit::Regular { bar: Weight::new(&[0, 0]), sign: 1, length: 2 }
        );
    }

    #[test]
    fn stabilizers() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(stabilizer_poincare(&rs, &Weight::new(&[0, 0, 0])), WeylGroup::enumerate(&rs).unwrap().poincare());
        assert_eq!(stabilizer_poincare(&rs, &Weight::new(&[0, 1, 0])), QPoly::from_i64s(&[1, 2, 1]));
        assert_eq!(stabilizer_poincare(&rs, &Weight::new(&[1, 0, 1])), QPoly::from_i64s(&[1, 1]));
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        assert_eq!(stabilizer_poincare(&d4, &Weight::new(&[0, 1, 0, 0])), QPoly::from_i64s(&[1, 3, 3, 1]));
    }

    proptest! {
        #[test]
        fn dominant_rep_is_choice_independent(c in proptest::collection::vec(-6i64..6, 4), seed in any::<u64>()) {
            let rs = RootSystem::new(Family::D, 4).unwrap();
            let w = Weight::new(&c);
            let mut s = seed;
            let random = dominant_rep_with(&rs, &w, |neg| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                neg[(s >> 33) as usize % neg.len()]
            });
            let canonical = dominant_rep(&rs, &w);
            prop_assert_eq!(&random, &canonical);
            let fast = dominant_rep_fast(rs.cartan(), &c);
            match canonical {
                DotOrbit::Singular => prop_assert!(fast.is_none()),
                DotOrbit::Regular { bar, sign, .. } => prop_assert_eq!(fast, Some((bar.0, sign))),
            }
        }

        #[test]
        fn dominant_rep_inverts_dot_action(c in proptest::collection::vec(0i64..4, 3), k in 0usize..24) {
            let rs = RootSystem::new(Family::A, 3).unwrap();
            let g = WeylGroup::enumerate(&rs).unwrap();
            let e = &g.elements()[k];
            let lam = Weight::new(&c);
            let moved = dot_act(&rs, e, &lam);
            prop_assert_eq!(
                dominant_rep(&rs, &moved),
                DotOrbit::Regular { bar: lam, sign: e.sign(), length: e.length }
            );
        }
    }
}
