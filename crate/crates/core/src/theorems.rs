//! Finite-instance verifiers for the closed-form decompositions between
//! consecutive pre-canonical bases.
//!
//! Every verifier builds an independent combinatorial prediction and compares
//! it with the triangular-solve ground truth from [`SphericalHecke`]. Each
//! comparison yields a [`VerifyReport`]; a failing report carries both sides.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::qpoly::QPoly;
use crate::rootsys::{combinations, Coords, Family, RootSystem, Weight, DEFAULT_NODE_CAP};
use crate::spherical::{BasisId, SphElement, SphericalHecke};
use crate::weyl::{dominant_rep, dot_reflect, reflect, DotOrbit};

/// Cap on the number of combinations enumerated by [`explore_deg_i`].
pub const EXPLORE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one comparison on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub claim: String,
    pub instance: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerifyReport {
    pub fn pass(claim: &str, instance: Value) -> Self {
        VerifyReport { claim: claim.into(), instance, status: Status::Pass, lhs: None, rhs: None, note: None }
    }

    pub fn fail(claim: &str, instance: Value, lhs: Value, rhs: Value) -> Self {
        VerifyReport {
            claim: claim.into(),
            instance,
            status: Status::Fail,
            lhs: Some(lhs),
            rhs: Some(rhs),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Pass and fail counts per claim, in claim order.
pub fn summarize(reports: &[VerifyReport]) -> Value {
    let mut per: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for r in reports {
        let slot = per.entry(&r.claim).or_default();
        match r.status {
            Status::Pass => slot.0 += 1,
            Status::Fail => slot.1 += 1,
        }
    }
    let claims: serde_json::Map<String, Value> = per
        .iter()
        .map(|(k, (p, f))| (k.to_string(), json!({ "pass": p, "fail": f })))
        .collect();
    let pass: u64 = per.values().map(|v| v.0).sum();
    let fail: u64 = per.values().map(|v| v.1).sum();
    json!({ "summary": { "claims": claims, "pass": pass, "fail": fail } })
}

fn instance(h: &SphericalHecke, lam: &Weight, extra: Value) -> Value {
    let rs = h.root_system();
    let mut v = json!({ "family": rs.family().to_string(), "rank": rs.rank(), "lambda": lam });
    if let (Value::Object(base), Value::Object(more)) = (&mut v, extra) {
        base.extend(more);
    }
    v
}

fn compare(
    h: &SphericalHecke,
    claim: &str,
    inst: Value,
    computed: &SphElement,
    predicted: &SphElement,
) -> VerifyReport {
    if computed.terms() == predicted.terms() {
        VerifyReport::pass(claim, inst)
    } else {
        let rs = h.root_system();
        VerifyReport::fail(claim, inst, computed.to_json(rs), predicted.to_json(rs))
    }
}

fn require_type_a(h: &SphericalHecke, rank: Option<usize>) -> Result<usize, Error> {
    let rs = h.root_system();
    if rs.family() != Family::A || rank.is_some_and(|n| n != rs.rank()) {
        let want = rank.map_or("A_n".to_string(), |n| format!("A{n}"));
        return Err(Error::Precondition(format!("needs type {want}, got {}{}", rs.family(), rs.rank())));
    }
    Ok(rs.rank())
}

fn check_dominant(h: &SphericalHecke, lam: &Weight) -> Result<(), Error> {
    h.root_system().check_weight(lam)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    Ok(())
}

/// `alpha_{j,k} = alpha_j + ... + alpha_k` in type A, 1-indexed, in weight coordinates.
pub fn alpha(rs: &RootSystem, j: usize, k: usize) -> Weight {
    let mut c = vec![0i64; rs.rank()];
    for x in c.iter_mut().take(k).skip(j - 1) {
        *x = 1;
    }
    rs.root_to_weight(&c)
}

fn height_of(rs: &RootSystem, lam: &Weight, mu: &Weight) -> usize {
    rs.height(&lam.sub(mu)).expect("weights in one coset") as usize
}

/// Both identities relating the first two pre-canonical bases to the
/// standard basis: `N^1_lambda = H_lambda` and
/// `N^2_lambda = sum_{mu <= lambda} q^{ht(lambda - mu)} N^1_mu`.
pub fn verify_low_levels(h: &SphericalHecke, lam: &Weight) -> Result<Vec<VerifyReport>, Error> {
    check_dominant(h, lam)?;
    let rs = h.root_system();
    let inst = instance(h, lam, json!({}));
    let n1 = h.precanonical(lam, 1)?;
    let std = h.canon_to_std(&n1)?;
    let unit = SphElement::monomial(BasisId::Std, lam.clone(), QPoly::one());
    let a = compare(h, "low_levels.first_is_standard", inst.clone(), &std, &unit);

    let mut rhs = SphElement::zero(BasisId::Canon);
    for mu in rs.dominant_below(lam) {
        let k = height_of(rs, lam, &mu);
        rhs.add_scaled(&*h.precanonical(&mu, 1)?, &QPoly::q_pow(k));
    }
    let n2 = h.precanonical(lam, 2)?;
    let b = compare(h, "low_levels.second_in_first", inst, &n2, &rhs);
    Ok(vec![a, b])
}

/// Levels `i` with `n/2 + 1 <= i <= n` in type `A_n`.
pub fn nhalf_levels(n: usize) -> Vec<usize> {
    (1..=n).filter(|&i| 2 * i >= n + 2).collect()
}

/// For `n/2 + 1 <= i <= n` in type `A_n`, `N^{i+1}_lambda` is the sum of
/// `q^{ht(lambda - mu)/i} N^i_mu` over `mu <=_i lambda`.
pub fn verify_nhalf(h: &SphericalHecke, lam: &Weight, i: usize) -> Result<VerifyReport, Error> {
    let n = require_type_a(h, None)?;
    check_dominant(h, lam)?;
    if !(n >= 2 && 2 * i >= n + 2 && i <= n) {
        return Err(Error::Precondition(format!("level {i} outside n/2+1..=n for n = {n}")));
    }
    let rs = h.root_system();
    let inst = instance(h, lam, json!({ "i": i }));
    let mut predicted = SphElement::zero(BasisId::PreCanon(i));
    let mut note = None;
    for mu in rs.dominant_below(lam) {
        if rs.leq_i(&mu, lam, i)?.is_some() {
            let ht = height_of(rs, lam, &mu);
            if !ht.is_multiple_of(i) {
                note = Some(format!("height {ht} of {lam} - {mu} is not divisible by {i}"));
            }
            predicted.add_term(mu, &QPoly::q_pow(ht / i));
        }
    }
    let computed = h.transition(lam, i)?;
    let mut report = compare(h, "nhalf", inst.clone(), &computed, &predicted);
    if let Some(msg) = note {
        report = VerifyReport::fail("nhalf", inst, computed.to_json(rs), predicted.to_json(rs)).with_note(msg);
    }
    Ok(report)
}

/// The set `I_lambda` in type `A_3`, each `mu` with the set of values
/// `n + m + 2l` over all witnesses `(n, m, l)`.
pub fn a3_i_lambda(rs: &RootSystem, lam: &Weight) -> BTreeMap<Weight, BTreeSet<usize>> {
    let a12 = alpha(rs, 1, 2);
    let a23 = alpha(rs, 2, 3);
    let a13 = alpha(rs, 1, 3);
    let scaled = rs.scaled_height(lam);
    let ht = (scaled + rs.det() - 1) / rs.det();
    let mut out: BTreeMap<Weight, BTreeSet<usize>> = BTreeMap::new();
    for n in 0..=ht {
        for m in 0..=ht {
            let nu = lam.sub(&a12.scaled(n)).sub(&a23.scaled(m));
            if nu.is_dominant() {
                out.entry(nu.clone()).or_default().insert((n + m) as usize);
            }
            if !(nu.is_dominant() && nu.0[1] == 0) {
                continue;
            }
            for l in 1..=ht / 3 {
                let mu = nu.sub(&a13.scaled(l));
                if mu.is_dominant() {
                    out.entry(mu).or_default().insert((n + m + 2 * l) as usize);
                }
            }
        }
    }
    out
}

/// A coordinate condition in a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    Eq(i64),
    AtLeast(i64),
}

impl Guard {
    pub fn holds(self, x: i64) -> bool {
        match self {
            Guard::Eq(k) => x == k,
            Guard::AtLeast(k) => x >= k,
        }
    }
}

/// `coeff * N^3_{lambda - sum of roots}`, roots given as `(j, k)` for `alpha_{j,k}`.
#[derive(Debug, Clone, Copy)]
pub struct RowTerm {
    pub coeff: &'static [i64],
    pub roots: &'static [(usize, usize)],
}

/// A row of a decomposition table of `N^2_lambda` in the basis `N^3`.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub row: usize,
    pub guard: &'static [Guard],
    pub terms: &'static [RowTerm],
}

impl TableRow {
    pub fn matches(&self, lam: &Weight) -> bool {
        self.guard.iter().zip(lam.coords()).all(|(g, &x)| g.holds(x))
    }
}

use Guard::{AtLeast as Ge, Eq as Is};

const fn t(coeff: &'static [i64], roots: &'static [(usize, usize)]) -> RowTerm {
    RowTerm { coeff, roots }
}

const ONE: RowTerm = t(&[1], &[]);

/// Non-generic decompositions of `N^2_lambda` in the basis `N^3` in type `A_3`.
pub const A3_ROWS: &[TableRow] = &[
    TableRow { row: 1, guard: &[Is(0), Ge(1), Ge(1)], terms: &[ONE, t(&[0, -1], &[(2, 3)])] },
    TableRow { row: 2, guard: &[Is(0), Is(0), Ge(0)], terms: &[ONE] },
    TableRow { row: 3, guard: &[Is(0), Is(1), Is(0)], terms: &[ONE] },
    TableRow { row: 4, guard: &[Is(0), Ge(2), Is(0)], terms: &[ONE, t(&[0, 0, -1], &[(1, 2), (2, 3)])] },
    TableRow { row: 5, guard: &[Ge(1), Ge(1), Is(0)], terms: &[ONE, t(&[0, -1], &[(1, 2)])] },
    TableRow { row: 6, guard: &[Ge(0), Is(0), Is(0)], terms: &[ONE] },
    TableRow {
        row: 7,
        guard: &[Ge(1), Is(1), Ge(1)],
        terms: &[ONE, t(&[0, -1], &[(1, 2)]), t(&[0, -1], &[(2, 3)])],
    },
    TableRow { row: 8, guard: &[Ge(1), Is(0), Ge(1)], terms: &[ONE, t(&[0, 0, -1], &[(1, 3)])] },
];

/// Non-generic decompositions of `N^2_lambda` in the basis `N^3` in type `A_4`.
pub const A4_ROWS: &[TableRow] = &[
    TableRow { row: 1, guard: &[Is(0), Ge(1), Ge(1), Is(0)], terms: &[ONE, t(&[0, -1], &[(2, 3)])] },
    TableRow { row: 2, guard: &[Is(0), Ge(2), Is(0), Is(0)], terms: &[ONE, t(&[0, 0, -1], &[(1, 2), (2, 3)])] },
    TableRow {
        row: 3,
        guard: &[Is(0), Ge(1), Ge(2), Ge(1)],
        terms: &[ONE, t(&[0, -1], &[(2, 3)]), t(&[0, -1], &[(3, 4)]), t(&[0, 0, 1], &[(2, 3), (3, 4)])],
    },
    TableRow {
        row: 4,
        guard: &[Is(0), Ge(1), Is(1), Ge(1)],
        terms: &[
            ONE,
            t(&[0, -1], &[(2, 3)]),
            t(&[0, -1], &[(3, 4)]),
            t(&[0, 0, 0, 1], &[(1, 2), (2, 3), (3, 4)]),
        ],
    },
    TableRow {
        row: 5,
        guard: &[Is(0), Ge(2), Is(0), Ge(1)],
        terms: &[
            ONE,
            t(&[0, 0, -1], &[(2, 4)]),
            t(&[0, 0, -1], &[(1, 2), (2, 3)]),
            t(&[0, 0, 0, 1], &[(1, 2), (2, 4)]),
        ],
    },
    TableRow {
        row: 6,
        guard: &[Is(0), Is(1), Is(0), Ge(2)],
        terms: &[ONE, t(&[0, 0, -1], &[(2, 4)]), t(&[0, 0, 0, 0, 1], &[(2, 4), (1, 4)])],
    },
    TableRow { row: 7, guard: &[Is(0), Is(1), Is(0), Is(1)], terms: &[ONE, t(&[0, 0, -1], &[(2, 4)])] },
    TableRow { row: 8, guard: &[Is(0), Is(1), Is(0), Is(0)], terms: &[ONE] },
    TableRow { row: 9, guard: &[Is(0), Is(0), Ge(1), Ge(1)], terms: &[ONE, t(&[0, -1], &[(3, 4)])] },
    TableRow { row: 10, guard: &[Is(0), Is(0), Is(0), Ge(0)], terms: &[ONE] },
    TableRow {
        row: 11,
        guard: &[Ge(1), Is(1), Ge(2), Ge(1)],
        terms: &[
            ONE,
            t(&[0, -1], &[(1, 2)]),
            t(&[0, -1], &[(2, 3)]),
            t(&[0, -1], &[(3, 4)]),
            t(&[0, 0, 1], &[(1, 2), (3, 4)]),
            t(&[0, 0, 1], &[(2, 3), (3, 4)]),
        ],
    },
    TableRow {
        row: 12,
        guard: &[Ge(1), Ge(2), Is(0), Ge(1)],
        terms: &[ONE, t(&[0, -1], &[(1, 2)]), t(&[0, 0, -1], &[(2, 4)]), t(&[0, 0, 0, 1], &[(1, 2), (2, 4)])],
    },
    TableRow {
        row: 13,
        guard: &[Ge(1), Is(1), Is(0), Is(1)],
        terms: &[ONE, t(&[0, -1], &[(1, 2)]), t(&[0, 0, -1], &[(2, 4)])],
    },
    TableRow {
        row: 14,
        guard: &[Ge(1), Is(1), Is(0), Ge(2)],
        terms: &[
            ONE,
            t(&[0, -1], &[(1, 2)]),
            t(&[0, 0, -1], &[(2, 4)]),
            t(&[0, 0, 0, 0, 1], &[(1, 4), (2, 4)]),
        ],
    },
    TableRow { row: 15, guard: &[Ge(1), Is(0), Is(0), Is(1)], terms: &[ONE, t(&[0, 0, -1, -1], &[(1, 4)])] },
    TableRow {
        row: 16,
        guard: &[Ge(2), Is(0), Is(0), Ge(2)],
        terms: &[ONE, t(&[0, 0, -1, -1], &[(1, 4)]), t(&[0, 0, 0, 0, 0, 1], &[(1, 4), (1, 4)])],
    },
    TableRow {
        row: 17,
        guard: &[Ge(1), Is(1), Is(1), Ge(1)],
        terms: &[
            ONE,
            t(&[0, -1], &[(1, 2)]),
            t(&[0, -1], &[(2, 3)]),
            t(&[0, -1], &[(3, 4)]),
            t(&[0, 0, 1], &[(1, 2), (3, 4)]),
            t(&[0, 0, 0, 1], &[(1, 2), (2, 3), (3, 4)]),
        ],
    },
    TableRow { row: 18, guard: &[Is(0), Is(0), Ge(2), Is(0)], terms: &[ONE, t(&[0, 0, -1], &[(2, 3), (3, 4)])] },
    TableRow {
        row: 19,
        guard: &[Ge(1), Ge(2), Ge(1), Is(0)],
        terms: &[ONE, t(&[0, -1], &[(2, 3)]), t(&[0, -1], &[(1, 2)]), t(&[0, 0, 1], &[(1, 2), (2, 3)])],
    },
    TableRow {
        row: 20,
        guard: &[Ge(1), Is(1), Ge(1), Is(0)],
        terms: &[
            ONE,
            t(&[0, -1], &[(2, 3)]),
            t(&[0, -1], &[(1, 2)]),
            t(&[0, 0, 0, 1], &[(1, 2), (2, 3), (3, 4)]),
        ],
    },
    TableRow {
        row: 21,
        guard: &[Ge(1), Is(0), Ge(2), Is(0)],
        terms: &[
            ONE,
            t(&[0, 0, -1], &[(1, 3)]),
            t(&[0, 0, -1], &[(2, 3), (3, 4)]),
            t(&[0, 0, 0, 1], &[(3, 4), (1, 3)]),
        ],
    },
    TableRow {
        row: 22,
        guard: &[Ge(2), Is(0), Is(1), Is(0)],
        terms: &[ONE, t(&[0, 0, -1], &[(1, 3)]), t(&[0, 0, 0, 0, 1], &[(1, 3), (1, 4)])],
    },
    TableRow { row: 23, guard: &[Is(1), Is(0), Is(1), Is(0)], terms: &[ONE, t(&[0, 0, -1], &[(1, 3)])] },
    TableRow { row: 24, guard: &[Is(0), Is(0), Is(1), Is(0)], terms: &[ONE] },
    TableRow { row: 25, guard: &[Ge(1), Ge(1), Is(0), Is(0)], terms: &[ONE, t(&[0, -1], &[(1, 2)])] },
    TableRow { row: 26, guard: &[Ge(1), Is(0), Is(0), Is(0)], terms: &[ONE] },
    TableRow {
        row: 27,
        guard: &[Ge(1), Ge(2), Is(1), Ge(1)],
        terms: &[
            ONE,
            t(&[0, -1], &[(1, 2)]),
            t(&[0, -1], &[(2, 3)]),
            t(&[0, -1], &[(3, 4)]),
            t(&[0, 0, 1], &[(1, 2), (3, 4)]),
            t(&[0, 0, 1], &[(1, 2), (2, 3)]),
        ],
    },
    TableRow {
        row: 28,
        guard: &[Ge(1), Is(0), Ge(2), Ge(1)],
        terms: &[ONE, t(&[0, -1], &[(3, 4)]), t(&[0, 0, -1], &[(1, 3)]), t(&[0, 0, 0, 1], &[(1, 3), (3, 4)])],
    },
    TableRow {
        row: 29,
        guard: &[Is(1), Is(0), Is(1), Ge(1)],
        terms: &[ONE, t(&[0, -1], &[(3, 4)]), t(&[0, 0, -1], &[(1, 3)])],
    },
    TableRow {
        row: 30,
        guard: &[Ge(2), Is(0), Is(1), Ge(1)],
        terms: &[
            ONE,
            t(&[0, -1], &[(3, 4)]),
            t(&[0, 0, -1], &[(1, 3)]),
            t(&[0, 0, 0, 0, 1], &[(1, 3), (1, 4)]),
        ],
    },
    TableRow { row: 31, guard: &[Is(1), Is(0), Is(0), Ge(1)], terms: &[ONE, t(&[0, 0, -1, -1], &[(1, 4)])] },
];

/// Rows of `table` whose guard holds at `lam`.
pub fn matching_rows<'a>(table: &'a [TableRow], lam: &Weight) -> Vec<&'a TableRow> {
    table.iter().filter(|r| r.matches(lam)).collect()
}

/// `a >= 1, b >= 2, c >= 1` in type `A_3`.
pub fn a3_is_generic(lam: &Weight) -> bool {
    let c = lam.coords();
    c[0] >= 1 && c[1] >= 2 && c[2] >= 1
}

/// `a >= 1, b >= 2, c >= 2, d >= 1` in type `A_4`.
pub fn a4_is_generic(lam: &Weight) -> bool {
    let c = lam.coords();
    c[0] >= 1 && c[1] >= 2 && c[2] >= 2 && c[3] >= 1
}

/// The right-hand side of a table row, in the basis `N^3`.
pub fn row_prediction(h: &SphericalHecke, row: &TableRow, lam: &Weight) -> Result<SphElement, Error> {
    let rs = h.root_system();
    let mut out = SphElement::zero(BasisId::PreCanon(3));
    for term in row.terms {
        let mut mu = lam.clone();
        for &(j, k) in term.roots {
            mu = mu.sub(&alpha(rs, j, k));
        }
        if !mu.is_dominant() {
            return Err(Error::Precondition(format!("row {} reaches non-dominant {mu}", row.row)));
        }
        out.add_term(mu, &QPoly::from_i64s(term.coeff));
    }
    Ok(out)
}

/// `sum_{J subset Phi^2} (-q)^{|J|} N^3_{lambda - sum J}`, the generic decomposition.
pub fn generic_prediction(h: &SphericalHecke, lam: &Weight) -> Result<SphElement, Error> {
    let rs = h.root_system();
    let roots: Vec<Weight> = rs.roots_of_height(2).iter().map(|&k| rs.positive_roots()[k].weight.clone()).collect();
    let mut out = SphElement::zero(BasisId::PreCanon(3));
    for mask in 0u32..(1 << roots.len()) {
        let mut mu = lam.clone();
        for (k, r) in roots.iter().enumerate() {
            if mask & (1 << k) != 0 {
                mu = mu.sub(r);
            }
        }
        let size = mask.count_ones() as usize;
        if !mu.is_dominant() {
            return Err(Error::Precondition(format!("generic decomposition reaches non-dominant {mu}")));
        }
        out.add_term(mu, &QPoly::monomial(if size.is_multiple_of(2) { 1 } else { -1 }, size));
    }
    Ok(out)
}

/// Checks the table decomposition of `N^2_lambda` in `N^3`. Every matching row
/// is compared; when none matches the generic formula must apply.
fn verify_table(
    h: &SphericalHecke,
    lam: &Weight,
    table: &[TableRow],
    generic: bool,
    claim: &str,
) -> Result<VerifyReport, Error> {
    let rows = matching_rows(table, lam);
    let ids: Vec<usize> = rows.iter().map(|r| r.row).collect();
    let inst = instance(h, lam, json!({ "rows": ids }));
    let n2 = h.precanonical(lam, 2)?;
    let computed = h.expand_in_precanonical(&n2, 3)?;
    if rows.is_empty() {
        if !generic {
            let rs = h.root_system();
            return Ok(VerifyReport::fail(claim, inst, computed.to_json(rs), Value::Null)
                .with_note("no row matches a non-generic weight"));
        }
        let predicted = generic_prediction(h, lam)?;
        return Ok(compare(h, claim, inst, &computed, &predicted));
    }
    for row in rows {
        let predicted = row_prediction(h, row, lam)?;
        let report = compare(h, claim, inst.clone(), &computed, &predicted);
        if !report.passed() {
            return Ok(report.with_note(format!("row {}", row.row)));
        }
    }
    Ok(VerifyReport::pass(claim, inst))
}

/// The decompositions between consecutive pre-canonical bases in type `A_3`.
pub fn verify_a3(h: &SphericalHecke, lam: &Weight) -> Result<Vec<VerifyReport>, Error> {
    require_type_a(h, Some(3))?;
    check_dominant(h, lam)?;
    let rs = h.root_system();
    let c = lam.coords();
    let mut reports = Vec::new();

    let a13 = alpha(rs, 1, 3);
    let mut top = SphElement::zero(BasisId::PreCanon(3));
    for k in 0..=c[0].min(c[2]) {
        top.add_term(lam.sub(&a13.scaled(k)), &QPoly::q_pow(k as usize));
    }
    let inst = instance(h, lam, json!({}));
    reports.push(compare(h, "a3.canonical_in_n3", inst.clone(), &h.transition(lam, 3)?, &top));

    let set = a3_i_lambda(rs, lam);
    let ambiguous: Vec<String> =
        set.iter().filter(|(_, d)| d.len() > 1).map(|(mu, d)| format!("{mu}: {d:?}")).collect();
    let mut mid = SphElement::zero(BasisId::PreCanon(2));
    for (mu, d) in &set {
        mid.add_term(mu.clone(), &QPoly::q_pow(*d.iter().next().unwrap()));
    }
    let computed = h.transition(lam, 2)?;
    let mut report = compare(h, "a3.n3_in_n2", inst.clone(), &computed, &mid);
    if !ambiguous.is_empty() {
        report = VerifyReport::fail("a3.n3_in_n2", inst.clone(), computed.to_json(rs), mid.to_json(rs))
            .with_note(format!("degree not well defined at {}", ambiguous.join(", ")));
    }
    reports.push(report);

    let mut low = SphElement::zero(BasisId::Std);
    for mu in rs.dominant_below(lam) {
        let k = height_of(rs, lam, &mu);
        low.add_term(mu, &QPoly::q_pow(k));
    }
    reports.push(compare(h, "a3.n2_in_n1", inst, &h.transition(lam, 1)?, &low));

    reports.push(verify_table(h, lam, A3_ROWS, a3_is_generic(lam), "a3.n2_in_n3_table")?);
    Ok(reports)
}

/// A nonnegative combination of the six roots of height at least two in
/// type `A_4`, with its intermediate weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleL {
    /// Multiplicities of `alpha_12, alpha_23, alpha_34, alpha_13, alpha_24, alpha_14`.
    pub l: [u64; 6],
    /// `nu_0 = lambda` and `nu_k = nu_{k-1} - sum of the roots of height k + 1`.
    pub nu: [Weight; 4],
    pub degree: usize,
}

/// Root indices `(j, k)` of the six roots of height at least two in `A_4`, in
/// the order used by [`AdmissibleL::l`].
pub const A4_HIGH_ROOTS: [(usize, usize); 6] = [(1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4)];

impl AdmissibleL {
    fn new(rs: &RootSystem, lam: &Weight, l: [u64; 6]) -> Self {
        let roots: Vec<Weight> = A4_HIGH_ROOTS.iter().map(|&(j, k)| alpha(rs, j, k)).collect();
        let step = |from: &Weight, idx: &[usize]| {
            idx.iter().fold(from.clone(), |acc, &r| acc.sub(&roots[r].scaled(l[r] as i64)))
        };
        let nu1 = step(lam, &[0, 1, 2]);
        let nu2 = step(&nu1, &[3, 4]);
        let nu3 = step(&nu2, &[5]);
        let degree = (l[0] + l[1] + l[2] + 2 * (l[3] + l[4]) + 3 * l[5]) as usize;
        AdmissibleL { l, nu: [lam.clone(), nu1, nu2, nu3], degree }
    }

    pub fn is_admissible(&self) -> bool {
        let [_, nu1, nu2, nu3] = &self.nu;
        nu1.is_dominant()
            && nu2.is_dominant()
            && nu3.is_dominant()
            && (self.l[3] == 0 || nu1.0[1] == 0)
            && (self.l[4] == 0 || nu1.0[2] == 0)
            && (self.l[5] == 0 || (nu2.0[1] == 0 && nu2.0[2] == 0))
    }
}

/// All `L` in type `A_4` with `sum L = lambda - mu`; only admissible ones when
/// `admissible_only` is set.
pub fn a4_combinations(
    h: &SphericalHecke,
    lam: &Weight,
    mu: &Weight,
    admissible_only: bool,
) -> Result<Vec<AdmissibleL>, Error> {
    require_type_a(h, Some(4))?;
    let rs = h.root_system();
    let Some(target) = rs.root_coords(&lam.sub(mu)) else {
        return Ok(Vec::new());
    };
    if target.iter().any(|&x| x < 0) {
        return Ok(Vec::new());
    }
    let vecs: Vec<Coords> = A4_HIGH_ROOTS
        .iter()
        .map(|&(j, k)| (1..=4).map(|p| i64::from(p >= j && p <= k)).collect())
        .collect();
    let mut out = Vec::new();
    combinations(&vecs, &target, DEFAULT_NODE_CAP, |m| {
        let l: [u64; 6] = m.try_into().expect("six roots");
        let cand = AdmissibleL::new(rs, lam, l);
        if !admissible_only || cand.is_admissible() {
            out.push(cand);
        }
        true
    })?;
    Ok(out)
}

/// `r_lambda(mu) = sum over admissible L of q^{deg L}`.
pub fn a4_r(h: &SphericalHecke, lam: &Weight, mu: &Weight) -> Result<QPoly, Error> {
    let mut r = QPoly::zero();
    for l in a4_combinations(h, lam, mu, true)? {
        r += &QPoly::q_pow(l.degree);
    }
    Ok(r)
}

/// The decompositions of `N^3_lambda` in `N^2` and of `N^2_lambda` in `N^3` in type `A_4`.
pub fn verify_a4(h: &SphericalHecke, lam: &Weight) -> Result<Vec<VerifyReport>, Error> {
    require_type_a(h, Some(4))?;
    check_dominant(h, lam)?;
    let rs = h.root_system();
    let mut hat = SphElement::zero(BasisId::PreCanon(2));
    for mu in rs.dominant_below(lam) {
        hat.add_term(mu.clone(), &a4_r(h, lam, &mu)?);
    }
    let inst = instance(h, lam, json!({}));
    let a = compare(h, "a4.n3_in_n2", inst, &h.transition(lam, 2)?, &hat);
    let b = verify_table(h, lam, A4_ROWS, a4_is_generic(lam), "a4.n2_in_n3_table")?;
    Ok(vec![a, b])
}

/// Checks that every coefficient of `N^{i+1}_lambda` in `N^i` lies in `ℕ[q]`.
pub fn positivity_scan(
    h: &SphericalHecke,
    weights: &[Weight],
    levels: &[usize],
) -> Result<Vec<VerifyReport>, Error> {
    let rs = h.root_system();
    let mut out = Vec::new();
    for &i in levels {
        for lam in weights {
            let e = h.transition(lam, i)?;
            let inst = instance(h, lam, json!({ "i": i }));
            out.push(nonneg_report(rs, "positivity.transition", inst, &e));
        }
    }
    Ok(out)
}

/// Checks that the canonical basis vector has coefficients in `ℕ[q]` in the basis `N^2`.
pub fn atomic_scan(h: &SphericalHecke, weights: &[Weight]) -> Result<Vec<VerifyReport>, Error> {
    let rs = h.root_system();
    let mut out = Vec::new();
    for lam in weights {
        let e = h.atomic_decomposition(lam)?;
        out.push(nonneg_report(rs, "positivity.atomic", instance(h, lam, json!({})), &e));
    }
    Ok(out)
}

fn nonneg_report(rs: &RootSystem, claim: &str, inst: Value, e: &SphElement) -> VerifyReport {
    let negative: Vec<(&Weight, &QPoly)> = e.sorted_terms(rs).into_iter().filter(|(_, c)| !c.is_nonneg()).collect();
    if negative.is_empty() {
        return VerifyReport::pass(claim, inst);
    }
    let neg: Vec<Value> = negative.iter().map(|(w, c)| json!({ "weight": w, "coeff": c })).collect();
    VerifyReport::fail(claim, inst, e.to_json(rs), Value::Array(neg)).with_note("negative coefficients")
}

/// Comparison of a transition coefficient with the generating polynomial of
/// root combinations graded by `deg_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegExploration {
    pub lambda: Weight,
    pub mu: Weight,
    pub i: usize,
    /// `P_i(lambda, mu)`.
    pub transition: QPoly,
    /// `sum_L q^{deg_i L}` over all combinations of roots in
    /// `Phi^i, Phi^{2i-1}, Phi^{3i-2}, ...` summing to `lambda - mu`.
    pub generating: QPoly,
    pub combinations: usize,
    pub dominated: bool,
}

pub fn explore_deg_i(h: &SphericalHecke, lam: &Weight, mu: &Weight, i: usize) -> Result<DegExploration, Error> {
    require_type_a(h, None)?;
    check_dominant(h, lam)?;
    check_dominant(h, mu)?;
    let rs = h.root_system();
    if i < 2 || i > rs.max_height() {
        return Err(Error::InvalidLevel { level: i, max: rs.max_height() });
    }
    if !rs.dominance_leq(mu, lam) {
        return Err(Error::Precondition(format!("{mu} is not below {lam}")));
    }
    let roots: Vec<usize> = (0..rs.positive_roots().len())
        .filter(|&k| {
            let ht = rs.positive_roots()[k].height;
            ht >= i && (ht - 1).is_multiple_of(i - 1)
        })
        .collect();
    let vecs: Vec<Coords> = roots.iter().map(|&k| rs.positive_roots()[k].coords.clone()).collect();
    let degs: Vec<usize> = roots.iter().map(|&k| (rs.positive_roots()[k].height - 1) / (i - 1)).collect();
    let target = rs.root_coords(&lam.sub(mu)).expect("mu <= lambda");
    let mut counts: Vec<i64> = Vec::new();
    let mut seen = 0usize;
    let mut capped = false;
    combinations(&vecs, &target, DEFAULT_NODE_CAP, |m| {
        let d: usize = m.iter().zip(&degs).map(|(&c, &g)| c as usize * g).sum();
        if counts.len() <= d {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
        seen += 1;
        if seen >= EXPLORE_CAP {
            capped = true;
        }
        !capped
    })?;
    if capped {
        return Err(Error::NodeCapExceeded { cap: EXPLORE_CAP as u64 });
    }
    let generating = QPoly::from_i64s(&counts);
    let transition = h.transition(lam, i)?.coeff(mu);
    let dominated = transition.coeffwise_le(&generating);
    Ok(DegExploration {
        lambda: lam.clone(),
        mu: mu.clone(),
        i,
        transition,
        generating,
        combinations: seen,
        dominated,
    })
}

/// `Phi^{>i}` together with `gamma_1, ..., gamma_j`, `gamma_t = alpha_{t, t+i-1}`.
pub fn gamma_set(h: &SphericalHecke, i: usize, j: usize) -> Vec<Weight> {
    let rs = h.root_system();
    let mut roots = h.level_roots(i + 1);
    for t in 1..=j {
        roots.push(alpha(rs, t, t + i - 1));
    }
    roots
}

/// The recursion from `Phi^{>i}` to `Phi^{>=i}` adding one root of height
/// `i` at a time, in type `A_n` with `n/2 + 1 <= i <= n`.
pub fn verify_m_lemmas(h: &SphericalHecke, lam: &Weight, i: usize) -> Result<Vec<VerifyReport>, Error> {
    let n = require_type_a(h, None)?;
    check_dominant(h, lam)?;
    if !(2 * i >= n + 2 && i <= n) {
        return Err(Error::Precondition(format!("level {i} outside n/2+1..=n for n = {n}")));
    }
    let rs = h.root_system();
    let last = n - i + 1;
    let m = |j: usize, mu: &Weight| h.m_op(&gamma_set(h, i, j), mu);
    let mut out = Vec::new();
    let ends = [
        ("m_recursion.start", m(0, lam)?, (*h.precanonical(lam, i + 1)?).clone()),
        ("m_recursion.end", m(last, lam)?, (*h.precanonical(lam, i)?).clone()),
    ];
    for (claim, lhs, rhs) in ends {
        out.push(compare(h, claim, instance(h, lam, json!({ "i": i })), &lhs, &rhs));
    }
    for j in 1..=last {
        let inst = instance(h, lam, json!({ "i": i, "j": j }));
        let cur = m(j, lam)?;
        let prev = m(j - 1, lam)?;
        if lam.0[j + i - 2] == 0 {
            out.push(compare(h, "m_recursion.vanishing", inst, &cur, &prev));
            continue;
        }
        let r = (j..=last).find(|&r| lam.0[r - 1] > 0);
        let predicted = match r {
            None => prev,
            Some(r) => {
                let mut shift = lam.clone();
                for t in j..=r {
                    shift = shift.sub(&alpha(rs, t, t + i - 1));
                }
                let mut p = prev;
                p.add_scaled(&m(j - 1, &shift)?, &QPoly::monomial(-1, r - j + 1));
                p
            }
        };
        out.push(compare(h, "m_recursion.step", inst, &cur, &predicted));
    }
    Ok(out)
}

/// `M^A_mu = -M^{s_k A}_{s_k . mu}`; when `s_k A = A` and `mu_k = -1`, also `M^A_mu = 0`.
pub fn verify_reflection_antisymmetry(
    h: &SphericalHecke,
    roots: &[Weight],
    mu: &Weight,
    k: usize,
) -> Result<Vec<VerifyReport>, Error> {
    let rs = h.root_system();
    let inst = json!({
        "family": rs.family().to_string(),
        "rank": rs.rank(),
        "roots": roots,
        "mu": mu,
        "k": k + 1,
    });
    let reflected: Vec<Weight> = roots.iter().map(|r| reflect(rs, k, r)).collect();
    let lhs = h.m_op(roots, mu)?;
    let rhs = h.m_op(&reflected, &dot_reflect(rs, k, mu))?.neg();
    let mut out = vec![compare(h, "reflection.antisymmetry", inst.clone(), &lhs, &rhs)];
    let stable: BTreeSet<&Weight> = roots.iter().collect();
    let image: BTreeSet<&Weight> = reflected.iter().collect();
    if stable == image && mu.0[k] == -1 {
        out.push(compare(h, "reflection.vanishing", inst, &lhs, &SphElement::zero(BasisId::Canon)));
    }
    Ok(out)
}

fn subset_sum(roots: &[Weight], mask: u64, rank: usize) -> Weight {
    let mut s = Weight::zero(rank);
    for (k, r) in roots.iter().enumerate() {
        if mask & (1 << k) != 0 {
            s = s.add(r);
        }
    }
    s
}

/// `sum_{I subset roots} (-q)^{|I|} sign(w) K_{bar(lambda - sum I), mu}` by
/// direct enumeration of subsets.
fn alternating_kostka_sum(h: &SphericalHecke, roots: &[Weight], lam: &Weight, mu: &Weight) -> Result<QPoly, Error> {
    let rs = h.root_system();
    let mut total = QPoly::zero();
    for mask in 0u64..(1 << roots.len()) {
        let nu = lam.sub(&subset_sum(roots, mask, rs.rank()));
        if let DotOrbit::Regular { bar, sign, .. } = dominant_rep(rs, &nu) {
            let size = mask.count_ones() as usize;
            let k = h.kl_entry(mu, &bar)?;
            let s = if size.is_multiple_of(2) { sign } else { -sign };
            total.add_scaled_shifted(&k, &s.into(), size);
        }
    }
    Ok(total)
}

/// For dominant `mu <= lambda`:
/// `sum_{I subset Phi^{>=2}} (-q)^{|I|} sign(w) K_{bar(lambda - sum I), mu} = q^{ht(lambda - mu)}`.
pub fn verify_mucoeff(h: &SphericalHecke, lam: &Weight, mu: &Weight) -> Result<VerifyReport, Error> {
    let rs = h.root_system();
    let lhs = alternating_kostka_sum(h, &h.level_roots(2), lam, mu)?;
    let rhs = QPoly::q_pow(height_of(rs, lam, mu));
    let inst = instance(h, lam, json!({ "mu": mu }));
    Ok(poly_report("oracle.mucoeff", inst, &lhs, &rhs))
}

/// For dominant `mu <= lambda`:
/// `sum_{I subset Phi^+} (-q)^{|I|} sign(w) K_{bar(lambda - sum I), mu} = delta_{lambda,mu} pi_{W_lambda}`.
pub fn verify_mumu(h: &SphericalHecke, lam: &Weight, mu: &Weight) -> Result<VerifyReport, Error> {
    let lhs = alternating_kostka_sum(h, &h.level_roots(1), lam, mu)?;
    let rhs = if lam == mu { h.stabilizer_poincare(lam) } else { QPoly::zero() };
    let inst = instance(h, lam, json!({ "mu": mu }));
    Ok(poly_report("oracle.mumu", inst, &lhs, &rhs))
}

fn poly_report(claim: &str, inst: Value, lhs: &QPoly, rhs: &QPoly) -> VerifyReport {
    if lhs == rhs {
        VerifyReport::pass(claim, inst)
    } else {
        VerifyReport::fail(claim, inst, json!(lhs), json!(rhs))
    }
}
