//! Counting N_q(d), the number of permutation polynomials of degree d with
//! f(0) = 0, by every available route.
//!
//! * group ring: per(A) over Z[F_q], N_q(q−2) = (q−1)! − c_{−1};
//! * cyclotomic: per(V) with V the trace-character image of A,
//!   N_q(q−2) = (q−1)((q−1)! − per(V))/q;
//! * partition: per(V) expanded over set partitions of {1, …, q−1};
//! * lower degrees: G_q(d) is the constant term of a multivariate permanent
//!   over Z[F_q^m], m = q−1−d, and
//!   N_q(d) = (q−1)! − N_q(q−2) − … − N_q(d+1) − G_q(d).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bound::{bound_check, factorial, BoundCheck};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::group_ring::{eval_trace_character, GroupRingElem};
use crate::guards::Config;
use crate::partition::per_v_partition;
use crate::permanent::{permanent_naive, permanent_ryser, ryser_fold, RingMatrix};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    Cyclotomic,
    GroupRing,
    Partition,
}

impl Route {
    /// All routes in ascending name order.
    pub const ALL: [Route; 3] = [Route::Cyclotomic, Route::GroupRing, Route::Partition];

    pub fn name(self) -> &'static str {
        match self {
            Route::Cyclotomic => "cyclotomic",
            Route::GroupRing => "groupring",
            Route::Partition => "partition",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown route {s:?}"))
    }
}

/// Which permanent algorithm evaluates a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Naive,
    Ryser,
}

fn permanent<R: Ring>(m: &RingMatrix<R>, cfg: &Config, method: Method) -> Result<R> {
    match method {
        Method::Naive => permanent_naive(m, &cfg.guards),
        Method::Ryser => permanent_ryser(m, cfg),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Timing {
    pub label: String,
    pub millis: f64,
}

impl Timing {
    fn since(label: impl Into<String>, start: Instant) -> Self {
        Timing {
            label: label.into(),
            millis: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Outcome of one route for N_q(q−2).
#[derive(Clone, Debug)]
pub struct PermanentReport {
    pub q: u32,
    pub p: u32,
    pub r: u32,
    pub d: u32,
    pub route: Route,
    /// per(A) in the group ring (group-ring route only).
    pub permanent: Option<GroupRingElem>,
    /// `c_i`, the coefficient of `X^{ω^i}`, for i = 0 … q−2.
    pub coefficients: Option<Vec<BigInt>>,
    /// `c_{−1}`, the coefficient of `X^0`.
    pub c_const: Option<BigInt>,
    pub per_v: Option<BigInt>,
    pub n_value: BigInt,
    /// `c_{−1} + (q−1)c_0 = (q−1)!`; `None` where the route has no c's.
    pub constant_balance_ok: Option<bool>,
    /// `(q−1)! + (p−1)per(V) = p(c_{−1} + c_0(p^{r−1} − 1))`; needs both.
    pub trace_relation_ok: Option<bool>,
    pub bound: BoundCheck,
    pub timings: Vec<Timing>,
}

impl PermanentReport {
    pub fn bound_ok(&self) -> bool {
        self.bound.ok
    }

    fn new(ctx: &FieldCtx, route: Route, n_value: BigInt) -> Self {
        PermanentReport {
            q: ctx.q(),
            p: ctx.p(),
            r: ctx.r(),
            d: ctx.q() - 2,
            route,
            permanent: None,
            coefficients: None,
            c_const: None,
            per_v: None,
            bound: bound_check(ctx, &n_value),
            n_value,
            constant_balance_ok: None,
            trace_relation_ok: None,
            timings: Vec::new(),
        }
    }
}

fn require_counting_field(ctx: &FieldCtx) -> Result<()> {
    if ctx.q() < 3 {
        return Err(Error::OutOfRange {
            what: "q",
            value: ctx.q() as i64,
            range: "q >= 3 (degrees 1..=q-2 must be nonempty)".into(),
        });
    }
    Ok(())
}

/// The (q−1)×(q−1) matrix with entry (i, j) = Π_{l=1}^m X_l^{ω^{(i−1)l + j}}
/// (1-based i, j). For m = 1 it is the circulant with first row
/// `X^ω, X^{ω²}, …, X^{ω^{q−1}}`.
pub fn build_matrix_a(ctx: &Arc<FieldCtx>, m: usize) -> Result<RingMatrix<GroupRingElem>> {
    require_counting_field(ctx)?;
    let q = ctx.q() as usize;
    if m < 1 || m > q - 2 {
        return Err(Error::OutOfRange {
            what: "m",
            value: m as i64,
            range: format!("1..={}", q - 2),
        });
    }
    let n = q - 1;
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let alpha: Vec<_> = (1..=m).map(|l| ctx.omega_pow(((i - 1) * l + j) as i64)).collect();
            entries.push(GroupRingElem::monomial(ctx, &alpha)?);
        }
    }
    RingMatrix::new(n, entries)
}

/// The trace-character image of A (m = 1): entries x^{Tr(ω^{i+j−1})}.
pub fn build_matrix_v(ctx: &Arc<FieldCtx>) -> Result<RingMatrix<crate::cyclo::CycloElem>> {
    build_matrix_a(ctx, 1)?.try_map(|e| eval_trace_character(ctx, e))
}

pub fn count_deg_qm2(ctx: &Arc<FieldCtx>, cfg: &Config) -> Result<PermanentReport> {
    count_deg_qm2_with(ctx, cfg, Method::Ryser)
}

/// Group-ring route with an explicit permanent algorithm.
pub fn count_deg_qm2_with(ctx: &Arc<FieldCtx>, cfg: &Config, method: Method) -> Result<PermanentReport> {
    let start = Instant::now();
    let a = build_matrix_a(ctx, 1)?;
    let per = permanent(&a, cfg, method)?;
    let elapsed = Timing::since(
        match method {
            Method::Naive => "groupring-naive",
            Method::Ryser => "groupring-ryser",
        },
        start,
    );

    let n = ctx.q() as u64 - 1;
    let total = factorial(n);
    let c_const = per.constant_term();
    let coefficients: Vec<BigInt> = (0..n).map(|i| per.coefficient(&[ctx.omega_pow(i as i64)])).collect();

    if per.total_mass() != total {
        return Err(Error::identity(
            "permanent-mass",
            format!("coefficients of per(A) sum to {}, expected {total}", per.total_mass()),
        ));
    }
    if let Some(i) = coefficients.iter().position(|c| c != &coefficients[0]) {
        return Err(Error::identity(
            "coefficient-flatness",
            format!("c_0 = {} but c_{i} = {}", coefficients[0], coefficients[i]),
        ));
    }
    let balanced = &c_const + BigInt::from(n) * &coefficients[0] == total;
    if !balanced {
        return Err(Error::identity(
            "constant-balance",
            format!("c_-1 + (q-1)c_0 = {} + {n}·{} != {total}", c_const, coefficients[0]),
        ));
    }

    let mut report = PermanentReport::new(ctx, Route::GroupRing, &total - &c_const);
    report.constant_balance_ok = Some(balanced);
    report.c_const = Some(c_const);
    report.coefficients = Some(coefficients);
    report.permanent = Some(per);
    report.timings.push(elapsed);
    Ok(report)
}

/// N_q(q−2) from per(V): exact division of (q−1)((q−1)! − per(V)) by q.
pub fn n_from_per_v(ctx: &FieldCtx, per_v: &BigInt) -> Result<BigInt> {
    let q = BigInt::from(ctx.q());
    let n = ctx.q() as u64 - 1;
    let num = BigInt::from(n) * (factorial(n) - per_v);
    let (quot, rem) = num.div_rem(&q);
    if !rem.is_zero() {
        return Err(Error::identity(
            "exact-division",
            format!("(q-1)((q-1)! - per(V)) = {num} is not divisible by q = {q}"),
        ));
    }
    Ok(quot)
}

/// `(q−1)! + (p−1)·per(V) = p·(c_{−1} + c_0(p^{r−1} − 1))`.
pub fn check_trace_relation(ctx: &FieldCtx, c_const: &BigInt, c0: &BigInt, per_v: &BigInt) -> bool {
    let p = BigInt::from(ctx.p());
    let lhs = factorial(ctx.q() as u64 - 1) + (&p - 1) * per_v;
    let pr1 = num_traits::pow(p.clone(), ctx.r() as usize - 1);
    let rhs = &p * (c_const + c0 * (pr1 - 1));
    lhs == rhs
}

pub fn count_via_cyclotomic(ctx: &Arc<FieldCtx>, cfg: &Config) -> Result<PermanentReport> {
    let start = Instant::now();
    let v = build_matrix_v(ctx)?;
    let per_v = permanent_ryser(&v, cfg)?.as_integer()?;
    let elapsed = Timing::since("cyclotomic-ryser", start);
    let mut report = PermanentReport::new(ctx, Route::Cyclotomic, n_from_per_v(ctx, &per_v)?);
    report.per_v = Some(per_v);
    report.timings.push(elapsed);
    Ok(report)
}

pub fn count_via_partition(ctx: &Arc<FieldCtx>, cfg: &Config) -> Result<PermanentReport> {
    require_counting_field(ctx)?;
    let start = Instant::now();
    let per_v = per_v_partition(ctx, &cfg.guards)?;
    let elapsed = Timing::since("partition", start);
    let mut report = PermanentReport::new(ctx, Route::Partition, n_from_per_v(ctx, &per_v)?);
    report.per_v = Some(per_v);
    report.timings.push(elapsed);
    Ok(report)
}

pub fn count_route(ctx: &Arc<FieldCtx>, cfg: &Config, route: Route) -> Result<PermanentReport> {
    match route {
        Route::GroupRing => count_deg_qm2(ctx, cfg),
        Route::Cyclotomic => count_via_cyclotomic(ctx, cfg),
        Route::Partition => count_via_partition(ctx, cfg),
    }
}

/// Run the requested routes (in ascending name order) and cross-check them:
/// identical N values, identical per(V) between the cyclotomic and partition
/// routes, and the per(V) relation to c_{−1}, c_0 wherever the group-ring coefficients are available.
pub fn count_all(ctx: &Arc<FieldCtx>, cfg: &Config, routes: &[Route]) -> Result<Vec<PermanentReport>> {
    let mut routes = routes.to_vec();
    routes.sort();
    routes.dedup();
    let mut reports = routes
        .iter()
        .map(|&r| count_route(ctx, cfg, r))
        .collect::<Result<Vec<_>>>()?;

    if let Some(first) = reports.first() {
        for rep in &reports[1..] {
            if rep.n_value != first.n_value {
                return Err(Error::identity(
                    "route-agreement",
                    format!(
                        "{} gives N = {}, {} gives N = {}",
                        first.route, first.n_value, rep.route, rep.n_value
                    ),
                ));
            }
        }
    }
    let per_vs: Vec<(Route, BigInt)> = reports
        .iter()
        .filter_map(|r| r.per_v.clone().map(|v| (r.route, v)))
        .collect();
    if let [(ra, va), (rb, vb)] = per_vs.as_slice() {
        if va != vb {
            return Err(Error::identity(
                "partition-vs-direct",
                format!("per(V) = {va} by {ra} but {vb} by {rb}"),
            ));
        }
    }
    let cs = reports
        .iter()
        .find_map(|r| Some((r.c_const.clone()?, r.coefficients.as_ref()?[0].clone())));
    if let Some((c_const, c0)) = cs {
        for rep in reports.iter_mut() {
            if let Some(per_v) = rep.per_v.clone() {
                let ok = check_trace_relation(ctx, &c_const, &c0, &per_v);
                if !ok {
                    return Err(Error::identity(
                        "trace-relation",
                        format!("per(V) = {per_v}, c_-1 = {c_const}, c_0 = {c0}"),
                    ));
                }
                rep.trace_relation_ok = Some(true);
            }
        }
        if reports.iter().any(|r| r.per_v.is_some()) {
            for rep in reports.iter_mut().filter(|r| r.route == Route::GroupRing) {
                rep.trace_relation_ok = Some(true);
            }
        }
    }
    Ok(reports)
}

/// G_q(d): the constant term of the multivariate permanent with m = q−1−d,
/// i.e. the number of permutations of F_q^× whose interpolating polynomial
/// has degree at most d−1.
pub fn gq(ctx: &Arc<FieldCtx>, d: u32, cfg: &Config) -> Result<BigInt> {
    require_counting_field(ctx)?;
    let q = ctx.q();
    if d < 1 || d > q - 2 {
        return Err(Error::OutOfRange {
            what: "d",
            value: d as i64,
            range: format!("1..={}", q - 2),
        });
    }
    let m = (q - 1 - d) as usize;
    let a = build_matrix_a(ctx, m)?;
    let half = a.dim() / 2;
    // constant term is linear, so it can replace the final product: split the
    // row sums in two halves and pair opposite exponents.
    ryser_fold(&a, cfg, |sums: &[GroupRingElem]| {
        let product = |s: &[GroupRingElem]| {
            let mut it = s.iter();
            let first = it.next().expect("non-empty half").clone();
            it.fold(first, |acc, x| acc.product(x))
        };
        let left = product(&sums[..half]);
        let right = product(&sums[half..]);
        left.constant_term_of_product(&right).expect("rows share a ring")
    })
}

/// d ↦ N_q(d) for 1 ≤ d ≤ q−2, with the Lidl–Mullen count q·N_q(d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub q: u32,
    pub entries: BTreeMap<u32, BigInt>,
    pub total: BigInt,
    pub lidl_mullen: BTreeMap<u32, BigInt>,
}

impl CountTable {
    pub fn from_entries(q: u32, entries: BTreeMap<u32, BigInt>) -> Self {
        let lidl_mullen = entries.iter().map(|(&d, n)| (d, n * q)).collect();
        CountTable {
            q,
            entries,
            total: factorial(q as u64 - 1),
            lidl_mullen,
        }
    }

    pub fn get(&self, d: u32) -> BigInt {
        self.entries.get(&d).cloned().unwrap_or_default()
    }

    fn sum(&self) -> BigInt {
        self.entries.values().sum()
    }

    fn divisor_violation(&self) -> Option<(u32, &BigInt)> {
        let q = self.q;
        self.entries
            .iter()
            .find(|(&d, n)| d > 1 && (q - 1).is_multiple_of(d) && !n.is_zero())
            .map(|(&d, n)| (d, n))
    }

    /// Each structural rule by name, in a fixed order: degree-one,
    /// divisor-rule, nonnegative, sum-rule.
    pub fn rule_checks(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("degree-one", self.get(1) == BigInt::from(self.q - 1)),
            ("divisor-rule", self.divisor_violation().is_none()),
            ("nonnegative", self.entries.values().all(|n| !n.is_negative())),
            ("sum-rule", self.sum() == self.total),
        ]
    }

    /// Sum rule, divisor zeros, N_q(1) = q − 1, nonnegativity.
    pub fn validate(&self) -> Result<()> {
        let q = self.q;
        if self.sum() != self.total {
            return Err(Error::identity(
                "sum-rule",
                format!("Σ N_q(d) = {}, expected (q-1)! = {}", self.sum(), self.total),
            ));
        }
        if let Some((&d, n)) = self.entries.iter().find(|(_, n)| n.is_negative()) {
            return Err(Error::identity("nonnegative", format!("N_{q}({d}) = {n}")));
        }
        if let Some((d, n)) = self.divisor_violation() {
            return Err(Error::identity(
                "divisor-rule",
                format!("N_{q}({d}) = {n} but {d} divides q-1"),
            ));
        }
        if self.get(1) != BigInt::from(q - 1) {
            return Err(Error::identity(
                "degree-one",
                format!("N_{q}(1) = {}, expected {}", self.get(1), q - 1),
            ));
        }
        Ok(())
    }
}

/// The full table by the descending recursion over d, validated.
pub fn full_table(ctx: &Arc<FieldCtx>, cfg: &Config) -> Result<CountTable> {
    let table = compute_table(ctx, cfg)?;
    table.validate()?;
    Ok(table)
}

/// The table without the structural checks, for callers that report them.
pub fn compute_table(ctx: &Arc<FieldCtx>, cfg: &Config) -> Result<CountTable> {
    let q = ctx.q();
    let top = count_deg_qm2(ctx, cfg)?;
    let total = factorial(q as u64 - 1);
    let mut entries = BTreeMap::new();
    let mut above = top.n_value.clone();
    entries.insert(q - 2, top.n_value);
    for d in (1..q - 2).rev() {
        let n = &total - &above - gq(ctx, d, cfg)?;
        above += &n;
        entries.insert(d, n);
    }
    Ok(CountTable::from_entries(q, entries))
}
