//! Simply-laced root systems: Cartan data, positive roots, coordinate changes
//! and the order relations on weights.
//!
//! Weights are stored in the fundamental-weight basis and roots in the
//! simple-root basis. The Cartan matrix convention is
//! `C[i][j] = <alpha_j, alpha_i^vee>`, so column `j` of `C` holds the weight
//! coordinates of `alpha_j`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::Error;

/// Coordinate vector, inline up to rank 8.
pub type Coords = SmallVec<[i64; 8]>;

/// Closure beyond this many positive roots means the matrix is not of finite type.
pub const ROOT_CLOSURE_BOUND: usize = 4096;

/// Default node budget for the bounded root-combination search.
pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::Custom => "Custom",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Unsupported(format!("family {other:?}"))),
        }
    }
}

/// An integral weight in fundamental-weight coordinates.
///
/// The derived order is lexicographic on coordinates; it is only used to make
/// maps and output deterministic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Coords);

impl Weight {
    pub fn new(coords: &[i64]) -> Self {
        Weight(Coords::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Self {
        Weight(Coords::from_elem(0, rank))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A positive root in simple-root coordinates together with its weight image.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Coords,
    pub weight: Weight,
    pub height: usize,
}

#[derive(Serialize)]
struct RootSystemJson<'a> {
    family: String,
    rank: usize,
    positive_roots: Vec<&'a [i64]>,
}

/// A finite simply-laced root system with its positive roots enumerated.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// `adj = det * C^{-1}`.
    adj: Vec<Vec<i64>>,
    det: i64,
    /// Sorted by height ascending, then coordinates descending.
    positive: Vec<Root>,
    root_index: HashMap<Coords, usize>,
    max_height: usize,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        let cartan = match family {
            Family::A => {
                if rank < 1 {
                    return Err(Error::Unsupported("type A needs rank >= 1".into()));
                }
                let mut c = vec![vec![0; rank]; rank];
                for i in 0..rank {
                    c[i][i] = 2;
                    if i + 1 < rank {
                        c[i][i + 1] = -1;
                        c[i + 1][i] = -1;
                    }
                }
                c
            }
            Family::D => {
                if rank < 4 {
                    return Err(Error::Unsupported("type D needs rank >= 4".into()));
                }
                let mut c = vec![vec![0; rank]; rank];
                for i in 0..rank {
                    c[i][i] = 2;
                }
                for i in 0..rank - 2 {
                    c[i][i + 1] = -1;
                    c[i + 1][i] = -1;
                }
                c[rank - 3][rank - 1] = -1;
                c[rank - 1][rank - 3] = -1;
                c
            }
            Family::Custom => {
                return Err(Error::Unsupported(
                    "custom systems are built with RootSystem::from_cartan".into(),
                ))
            }
        };
        Self::build(family, cartan)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, Error> {
        Self::build(Family::Custom, cartan)
    }

    fn build(family: Family, cartan: Vec<Vec<i64>>) -> Result<Self, Error> {
        let n = cartan.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!("row {i} has length {}", row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is {}", row[i])));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if v > 0 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) is positive")));
                }
                if v != cartan[j][i] || v < -1 {
                    return Err(Error::Unsupported(format!(
                        "entry ({i},{j}) = {v} is not simply laced"
                    )));
                }
            }
        }
        let positive = close_positive_roots(&cartan)?;
        let det = det_bareiss(&cartan);
        if det <= 0 {
            return Err(Error::InvalidCartan(format!("determinant {det} is not positive")));
        }
        let adj = adjugate(&cartan);
        let root_index = positive.iter().enumerate().map(|(k, r)| (r.coords.clone(), k)).collect();
        let max_height = positive.iter().map(|r| r.height).max().unwrap_or(0);
        Ok(RootSystem { family, rank: n, cartan, adj, det, positive, root_index, max_height })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn adjugate(&self) -> &[Vec<i64>] {
        &self.adj
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Height of the highest root.
    pub fn max_height(&self) -> usize {
        self.max_height
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    pub fn rho(&self) -> Weight {
        Weight(Coords::from_elem(1, self.rank))
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<(), Error> {
        if w.rank() != self.rank {
            return Err(Error::WeightLength { expected: self.rank, got: w.rank() });
        }
        Ok(())
    }

    /// Weight coordinates of an element of the root lattice.
    pub fn root_to_weight(&self, r: &[i64]) -> Weight {
        Weight((0..self.rank).map(|i| (0..self.rank).map(|j| self.cartan[i][j] * r[j]).sum()).collect())
    }

    /// `det * (root coordinates of w)`, always integral.
    pub fn scaled_root_coords(&self, w: &Weight) -> Coords {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.adj[i][j] * w.0[j]).sum()).collect()
    }

    /// Root coordinates of `w`, or `None` when `w` is outside the root lattice.
    pub fn root_coords(&self, w: &Weight) -> Option<Coords> {
        let s = self.scaled_root_coords(w);
        if s.iter().all(|&c| c % self.det == 0) {
            Some(s.iter().map(|c| c / self.det).collect())
        } else {
            None
        }
    }

    /// `det * ht(w)`, a linear functional that orders weights compatibly with dominance.
    pub fn scaled_height(&self, w: &Weight) -> i64 {
        self.scaled_root_coords(w).iter().sum()
    }

    /// Height of an element of the root lattice.
    pub fn height(&self, w: &Weight) -> Option<i64> {
        self.root_coords(w).map(|c| c.iter().sum())
    }

    /// Residue class of `w` in the weight lattice modulo the root lattice.
    pub fn coset_key(&self, w: &Weight) -> Coords {
        self.scaled_root_coords(w).iter().map(|c| c.rem_euclid(self.det)).collect()
    }

    pub fn same_coset(&self, a: &Weight, b: &Weight) -> bool {
        self.root_coords(&a.sub(b)).is_some()
    }

    pub fn pairing(&self, w: &Weight, root: &Root) -> i64 {
        w.0.iter().zip(&root.coords).map(|(a, b)| a * b).sum()
    }

    /// `mu <= lambda` in the dominance order.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        match self.root_coords(&lambda.sub(mu)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Indices of the positive roots of height exactly `i`.
    pub fn roots_of_height(&self, i: usize) -> Vec<usize> {
        (0..self.positive.len()).filter(|&k| self.positive[k].height == i).collect()
    }

    /// Indices of the positive roots of height at least `i`.
    pub fn roots_of_height_at_least(&self, i: usize) -> Vec<usize> {
        (0..self.positive.len()).filter(|&k| self.positive[k].height >= i).collect()
    }

    /// `mu <=_i lambda`: `lambda - mu` is a nonnegative integer combination of
    /// roots of height exactly `i`. On success returns the nonzero
    /// multiplicities keyed by positive-root index.
    pub fn leq_i(
        &self,
        mu: &Weight,
        lambda: &Weight,
        i: usize,
    ) -> Result<Option<Vec<(usize, u64)>>, Error> {
        let Some(target) = self.root_coords(&lambda.sub(mu)) else {
            return Ok(None);
        };
        if target.iter().any(|&c| c < 0) {
            return Ok(None);
        }
        let idx = self.roots_of_height(i);
        if target.iter().all(|&c| c == 0) {
            return Ok(Some(Vec::new()));
        }
        if idx.is_empty() {
            return Ok(None);
        }
        let vecs: Vec<Coords> = idx.iter().map(|&k| self.positive[k].coords.clone()).collect();
        if let Some(sol) = solve_independent(&vecs, &target) {
            return Ok(sol.map(|m| {
                idx.iter().zip(m).filter(|(_, c)| *c > 0).map(|(&k, c)| (k, c)).collect()
            }));
        }
        let mut found = None;
        combinations(&vecs, &target, DEFAULT_NODE_CAP, |m| {
            found = Some(m.to_vec());
            false
        })?;
        Ok(found.map(|m| idx.iter().zip(m).filter(|(_, c)| *c > 0).map(|(&k, c)| (k, c)).collect()))
    }

    /// All dominant weights `mu <= lambda`, sorted by height of `lambda - mu`
    /// ascending and then lexicographically.
    pub fn dominant_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.clone());
        queue.push_back(lambda.clone());
        while let Some(w) = queue.pop_front() {
            for r in &self.positive {
                let v = w.sub(&r.weight);
                if v.is_dominant() && !seen.contains(&v) {
                    seen.insert(v.clone());
                    queue.push_back(v);
                }
            }
        }
        let top = self.scaled_height(lambda);
        let mut out: Vec<(i64, Weight)> =
            seen.into_iter().map(|w| (top - self.scaled_height(&w), w)).collect();
        out.sort();
        out.into_iter().map(|(_, w)| w).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = RootSystemJson {
            family: self.family.to_string(),
            rank: self.rank,
            positive_roots: self.positive.iter().map(|r| r.coords.as_slice()).collect(),
        };
        serde_json::to_value(doc).expect("root system serializes")
    }
}

/// All dominant weights with every coordinate in `0..=bound`, in lexicographic order.
pub fn dominant_box(rank: usize, bound: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    loop {
        out.push(Weight::new(&cur));
        let mut k = rank;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < bound {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

fn close_positive_roots(cartan: &[Vec<i64>]) -> Result<Vec<Root>, Error> {
    let n = cartan.len();
    let mut known: HashSet<Coords> = HashSet::new();
    let mut layer: BTreeSet<Coords> = BTreeSet::new();
    for i in 0..n {
        let mut e = Coords::from_elem(0, n);
        e[i] = 1;
        layer.insert(e);
    }
    let mut all: Vec<Coords> = Vec::new();
    while !layer.is_empty() {
        for r in &layer {
            known.insert(r.clone());
        }
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0i64;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        all.extend(layer);
        if all.len() + next.len() > ROOT_CLOSURE_BOUND {
            return Err(Error::NotFiniteType { bound: ROOT_CLOSURE_BOUND });
        }
        layer = next;
    }
    let mut roots: Vec<Root> = all
        .into_iter()
        .map(|c| {
            let height = c.iter().sum::<i64>() as usize;
            let weight =
                Weight((0..n).map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum()).collect());
            Root { coords: c, weight, height }
        })
        .collect();
    roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| b.coords.cmp(&a.coords)));
    Ok(roots)
}

fn det_bareiss(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = sign * det_bareiss(&minor);
        }
    }
    adj
}

/// Solves `sum_k m_k v_k = target` when the `v_k` are linearly independent.
/// Returns `None` if they are dependent, `Some(None)` if there is no
/// nonnegative integral solution.
fn solve_independent(vecs: &[Coords], target: &[i64]) -> Option<Option<Vec<u64>>> {
    let rows = target.len();
    let cols = vecs.len();
    let mut a: Vec<Vec<Ratio<i128>>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Ratio<i128>> =
                (0..cols).map(|c| Ratio::from_integer(vecs[c][r] as i128)).collect();
            row.push(Ratio::from_integer(target[r] as i128));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| a[k][c] != Ratio::from_integer(0)) else {
            return None;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for k in 0..rows {
            if k != r && a[k][c] != Ratio::from_integer(0) {
                let f = a[k][c];
                for j in 0..=cols {
                    let t = a[r][j] * f;
                    a[k][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..rows).any(|k| a[k][cols] != Ratio::from_integer(0)) {
        return Some(None);
    }
    let mut sol = vec![0u64; cols];
    for (k, &c) in pivots.iter().enumerate() {
        let v = a[k][cols];
        if !v.is_integer() || v < Ratio::from_integer(0) {
            return Some(None);
        }
        sol[c] = v.to_integer() as u64;
    }
    Some(Some(sol))
}

/// Visits every vector of nonnegative multiplicities `m` with
/// `sum_k m_k vecs[k] == target`, where all vectors and the target have
/// nonnegative coordinates. The visitor returns `false` to stop early.
/// Fails once more than `cap` search nodes have been expanded.
pub fn combinations(
    vecs: &[Coords],
    target: &[i64],
    cap: u64,
    mut visit: impl FnMut(&[u64]) -> bool,
) -> Result<(), Error> {
    let n = target.len();
    let k = vecs.len();
    // suffix_support[j][c]: some vector with index >= j is positive in coordinate c.
    let mut suffix_support = vec![vec![false; n]; k + 1];
    for j in (0..k).rev() {
        for c in 0..n {
            suffix_support[j][c] = suffix_support[j + 1][c] || vecs[j][c] > 0;
        }
    }
    let mut state = Search {
        vecs,
        suffix_support: &suffix_support,
        mult: vec![0; k],
        nodes: 0,
        cap,
        stopped: false,
    };
    let mut rem: Vec<i64> = target.to_vec();
    state.go(0, &mut rem, &mut visit)
}

struct Search<'a> {
    vecs: &'a [Coords],
    suffix_support: &'a [Vec<bool>],
    mult: Vec<u64>,
    nodes: u64,
    cap: u64,
    stopped: bool,
}

impl Search<'_> {
    fn go(
        &mut self,
        j: usize,
        rem: &mut Vec<i64>,
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> Result<(), Error> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::NodeCapExceeded { cap: self.cap });
        }
        if rem.iter().enumerate().any(|(c, &x)| x > 0 && !self.suffix_support[j][c]) {
            return Ok(());
        }
        if j == self.vecs.len() {
            if !visit(&self.mult) {
                self.stopped = true;
            }
            return Ok(());
        }
        let v = &self.vecs[j];
        let max = v
            .iter()
            .zip(rem.iter())
            .filter(|(a, _)| **a > 0)
            .map(|(a, r)| r / a)
            .min()
            .unwrap_or(0)
            .max(0);
        for m in 0..=max {
            self.mult[j] = m as u64;
            for (r, a) in rem.iter_mut().zip(v) {
                *r -= m * a;
            }
            let res = self.go(j + 1, rem, visit);
            for (r, a) in rem.iter_mut().zip(v) {
                *r += m * a;
            }
            res?;
            if self.stopped {
                break;
            }
        }
        self.mult[j] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(n: usize) -> RootSystem {
        RootSystem::new(Family::A, n).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for n in 1..=8 {
            assert_eq!(a(n).positive_roots().len(), n * (n + 1) / 2);
            assert_eq!(a(n).max_height(), n);
        }
        for n in 4..=8 {
            let d = RootSystem::new(Family::D, n).unwrap();
            assert_eq!(d.positive_roots().len(), n * (n - 1));
            assert_eq!(d.max_height(), 2 * n - 3);
        }
    }

    #[test]
    fn a3_root_order() {
        let rs = a(3);
        let coords: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.coords.to_vec()).collect();
        assert_eq!(
            coords,
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, 1, 0],
                vec![0, 1, 1],
                vec![1, 1, 1]
            ]
        );
    }

    #[test]
    fn d4_highest_root() {
        let rs = RootSystem::new(Family::D, 4).unwrap();
        let top = rs.positive_roots().last().unwrap();
        assert_eq!(top.coords.to_vec(), vec![1, 2, 1, 1]);
        assert_eq!(top.weight, Weight::new(&[0, 1, 0, 0]));
        assert_eq!(rs.det(), 4);
    }

    #[test]
    fn rejects_affine_and_malformed() {
        let affine = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(matches!(RootSystem::from_cartan(affine), Err(Error::NotFiniteType { .. })));
        let b2 = vec![vec![2, -2], vec![-1, 2]];
        assert!(RootSystem::from_cartan(b2).is_err());
        assert!(RootSystem::from_cartan(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(RootSystem::from_cartan(vec![vec![1]]).is_err());
    }

    #[test]
    fn custom_e6_has_36_roots() {
        let mut c = vec![vec![0i64; 6]; 6];
        for i in 0..6 {
            c[i][i] = 2;
        }
        for (i, j) in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)] {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        let rs = RootSystem::from_cartan(c).unwrap();
        assert_eq!(rs.positive_roots().len(), 36);
        assert_eq!(rs.det(), 3);
    }

    #[test]
    fn coordinate_round_trip_and_coset() {
        let rs = a(3);
        let w = Weight::new(&[1, 0, 1]);
        assert_eq!(rs.root_coords(&w).unwrap().to_vec(), vec![1, 1, 1]);
        assert_eq!(rs.height(&w), Some(3));
        assert!(rs.root_coords(&Weight::new(&[1, 0, 0])).is_none());
        assert!(rs.same_coset(&Weight::new(&[2, 0, 0]), &Weight::new(&[0, 1, 0])));
        assert!(rs.dominance_leq(&Weight::new(&[0, 0, 0]), &Weight::new(&[1, 0, 1])));
        assert!(!rs.dominance_leq(&Weight::new(&[1, 0, 1]), &Weight::new(&[0, 1, 0])));
    }

    #[test]
    fn leq_i_examples() {
        let rs = a(3);
        let lam = Weight::new(&[1, 0, 1]);
        let zero = Weight::zero(3);
        let m = rs.leq_i(&zero, &lam, 3).unwrap().unwrap();
        assert_eq!(m, vec![(5, 1)]);
        assert!(rs.leq_i(&zero, &lam, 2).unwrap().is_none());
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let l = Weight::new(&[0, 2, 0, 0]);
        assert!(d4.leq_i(&Weight::zero(4), &l, 5).unwrap().is_some());
        assert!(d4.leq_i(&Weight::zero(4), &l, 2).unwrap().is_none());
        assert!(d4.leq_i(&Weight::zero(4), &l, 3).unwrap().is_none());
    }

    #[test]
    fn dominant_below_a2() {
        let rs = a(2);
        let got = rs.dominant_below(&Weight::new(&[2, 2]));
        let want: Vec<Weight> =
            [[2, 2], [0, 3], [3, 0], [1, 1], [0, 0]].iter().map(|c| Weight::new(c)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn json_shape() {
        let v = a(2).to_json();
        assert_eq!(v["family"], "A");
        assert_eq!(v["rank"], 2);
        assert_eq!(v["positive_roots"], serde_json::json!([[1, 0], [0, 1], [1, 1]]));
    }

    /// Dominant weights below lambda found by scanning the box of root coordinates.
    fn box_oracle(rs: &RootSystem, lam: &Weight) -> BTreeSet<Weight> {
        let bound: i64 = rs.scaled_root_coords(lam).iter().map(|c| c.abs()).max().unwrap() + 1;
        let n = rs.rank();
        let mut out = BTreeSet::new();
        let mut cur = vec![0i64; n];
        loop {
            let w = lam.sub(&rs.root_to_weight(&cur));
            if w.is_dominant() {
                out.insert(w);
            }
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                if cur[k] < bound {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn dominant_below_matches_box(c in proptest::collection::vec(0i64..3, 3)) {
            let rs = a(3);
            let lam = Weight::new(&c);
            let got: BTreeSet<Weight> = rs.dominant_below(&lam).into_iter().collect();
            prop_assert_eq!(got, box_oracle(&rs, &lam));
        }

        #[test]
        fn leq_i_agrees_with_search(c in proptest::collection::vec(0i64..3, 4), i in 1usize..5) {
            let rs = a(4);
            let lam = Weight::new(&c);
            for mu in rs.dominant_below(&lam) {
                let target = rs.root_coords(&lam.sub(&mu)).unwrap();
                let vecs: Vec<Coords> =
                    rs.roots_of_height(i).iter().map(|&k| rs.positive_roots()[k].coords.clone()).collect();
                let mut any = false;
                combinations(&vecs, &target, DEFAULT_NODE_CAP, |_| { any = true; false }).unwrap();
                let got = rs.leq_i(&mu, &lam, i).unwrap();
                prop_assert_eq!(got.is_some(), any);
                if let Some(m) = got {
                    let mut sum = Coords::from_elem(0, 4);
                    for (k, c) in m {
                        for (s, x) in sum.iter_mut().zip(&rs.positive_roots()[k].coords) {
                            *s += c as i64 * x;
                        }
                    }
                    prop_assert_eq!(sum, target);
                }
            }
        }

        #[test]
        fn scaled_height_is_linear(x in proptest::collection::vec(-5i64..6, 4), y in proptest::collection::vec(-5i64..6, 4)) {
            let rs = RootSystem::new(Family::D, 4).unwrap();
            let (a, b) = (Weight::new(&x), Weight::new(&y));
            prop_assert_eq!(rs.scaled_height(&a.add(&b)), rs.scaled_height(&a) + rs.scaled_height(&b));
            let back = rs.scaled_root_coords(&a);
            let w = rs.root_to_weight(&back);
            prop_assert_eq!(w, a.scaled(rs.det()));
        }
    }
}
