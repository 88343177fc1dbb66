//! Finite-n checks of every bound used in the asymptotic count.
//!
//! Inequalities between integers are decided exactly, with irrational
//! exponents cleared by raising both sides to a common power (`2^{x/8}`
//! comparisons become eighth powers, `log2` thresholds become powers of two).
//! "log" is always `log2`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::burnside::{burnside_sum, correction_report, count_codes, CorrectionReport, Strategy};
use crate::cyclestruct::{class_size, factorial, partitions_of, primary_components, CycleType};
use crate::error::{Error, Result};
use crate::qarith::{g2, gauss_binomial, lemma1_tail_product, scaled_u, Natural};
use crate::real::{HighPrecisionReal, DEFAULT_PRECISION};
use crate::submodcount::{component_lattice, lattice_size};

pub const LEMMA23_CEILING: usize = 12;
pub const BOUND4_CEILING: usize = 20;
pub const GAUSS_BOUND_CEILING: usize = 100;
pub const CENSUS_BOUND_CEILING: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

/// A named value reported alongside a check, typically the tightest slack.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub n_range: (usize, usize),
    pub status: Status,
    pub witnesses: Vec<Witness>,
    /// Set exactly when `status` is `Fail`.
    pub counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &str, lo: usize, hi: usize) -> Self {
        Self {
            name: name.to_string(),
            n_range: (lo, hi),
            status: Status::Pass,
            witnesses: Vec::new(),
            counterexample: None,
        }
    }

    fn report_only(mut self) -> Self {
        self.status = Status::ReportOnly;
        self
    }

    fn witness(&mut self, label: impl Into<String>, value: impl ToString) {
        self.witnesses.push(Witness {
            label: label.into(),
            value: value.to_string(),
        });
    }

    /// Records the first failure; later ones are ignored.
    fn fail(&mut self, counterexample: impl Into<String>) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.counterexample = Some(counterexample.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    fn merge(&mut self, other: CheckResult) {
        self.n_range = (self.n_range.0.min(other.n_range.0), self.n_range.1.max(other.n_range.1));
        if other.status == Status::Fail {
            self.fail(other.counterexample.unwrap_or_default());
        }
        self.witnesses.extend(other.witnesses);
    }
}

/// Tracks the tightest `log2(rhs / lhs)` seen by a check.
struct Slack {
    best: f64,
    at: String,
}

impl Slack {
    fn new() -> Self {
        Self {
            best: f64::INFINITY,
            at: String::new(),
        }
    }

    fn observe(&mut self, lhs: &BigUint, rhs: &BigUint, at: impl FnOnce() -> String) {
        let s = log2_nat(rhs) - log2_nat(lhs);
        if s < self.best {
            self.best = s;
            self.at = at();
        }
    }

    fn witness(&self, check: &mut CheckResult, label: &str) {
        if self.best.is_finite() {
            check.witness(label, format!("{:.6} bits at {}", self.best, self.at));
        }
    }
}

fn log2_nat(x: &BigUint) -> f64 {
    HighPrecisionReal::from_natural(x, 30).log2()
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn ceiling(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::Ceiling { what, n, max })
    } else {
        Ok(())
    }
}

/// `1 <= u_n <= 23` for `0 <= n <= n_max` (exactly, via fourth powers),
/// the tail product below 23, and the even/odd limits at `n = 200, 201`.
pub fn check_lemma1(n_max: usize) -> Result<CheckResult> {
    if n_max < 10 {
        return Err(Error::BelowMinimum { what: "lemma1", n: n_max, min: 10 });
    }
    let mut check = CheckResult::new("lemma1", 0, n_max);
    let twenty_three_4 = BigUint::from(23u32).pow(4);
    let mut max_u: Option<(usize, HighPrecisionReal)> = None;
    for n in 0..=n_max {
        // u_n^4 = G^4 / 2^{n^2}
        let g4 = g2(n).pow(4);
        let scale = pow2(n * n);
        if g4 < scale {
            check.fail(format!("u_{n} < 1"));
        }
        if g4 > &twenty_three_4 * &scale {
            check.fail(format!("u_{n} > 23"));
        }
        let u = scaled_u(n as u32, 2, DEFAULT_PRECISION)?;
        if max_u.as_ref().is_none_or(|(_, m)| u > *m) {
            max_u = Some((n, u));
        }
    }
    let (arg, max_u) = max_u.unwrap();
    check.witness("max u_n", format!("{} at n = {arg}", max_u.to_decimal_string(10)));

    let tail = lemma1_tail_product(1000, DEFAULT_PRECISION);
    if tail >= HighPrecisionReal::from_i64(23, DEFAULT_PRECISION) {
        check.fail(format!("tail product {} >= 23", tail.to_decimal_string(10)));
    }
    check.witness("tail product (1000 terms)", tail.to_decimal_string(10));

    if n_max >= 201 {
        let tol = limit_tolerance();
        for (n, target) in [(200u32, "7371969"), (201, "7371949")] {
            let u = scaled_u(n, 2, DEFAULT_PRECISION)?;
            let t = HighPrecisionReal::from_ratio(
                &target.parse::<BigInt>().unwrap(),
                &BigInt::from(1_000_000),
                DEFAULT_PRECISION,
            );
            let err = (&u - &t).abs();
            if err >= tol {
                check.fail(format!("|u_{n} - {}| >= 1e-5", t.to_decimal_string(6)));
            }
            check.witness(format!("u_{n}"), u.to_decimal_string(12));
        }
    }
    Ok(check)
}

/// `10^-5`.
pub fn limit_tolerance() -> HighPrecisionReal {
    HighPrecisionReal::from_ratio(&BigInt::one(), &BigInt::from(100_000), DEFAULT_PRECISION)
}

/// Quantities attached to the `t + 1` block of a cycle type.
#[derive(Clone, Debug)]
pub struct UnipotentPart {
    pub n1: usize,
    pub mu1: usize,
    pub r: usize,
    pub lattice: Natural,
}

pub fn unipotent_part(ct: &CycleType) -> UnipotentPart {
    let first = primary_components(ct).into_iter().next().unwrap();
    debug_assert_eq!(first.degree, 1);
    UnipotentPart {
        n1: first.dim(),
        mu1: first.mu(),
        r: ct.r(),
        lattice: component_lattice(&first.lambda, &first.residue_size(), 1).total(),
    }
}

/// Lemma 2 and Lemma 3 (a), (b) for every cycle type of `S_n`.
pub fn check_lemma2_3(n: usize) -> Result<CheckResult> {
    ceiling("lemma2/3 sweep", n, LEMMA23_CEILING)?;
    let mut check = CheckResult::new("lemma2_3", n, n);
    let (mut s2, mut s3a, mut s3b) = (Slack::new(), Slack::new(), Slack::new());
    for ct in partitions_of(n) {
        let part = unipotent_part(&ct);
        let total = lattice_size(&ct);
        // |L| <= |L(T_1)| 2^{(n-n1)^2/8 + 5n}  <=>  |L|^8 <= |L(T_1)|^8 2^{(n-n1)^2 + 40n}
        let lhs = total.pow(8);
        let rhs = part.lattice.pow(8) << ((n - part.n1).pow(2) + 40 * n);
        if lhs > rhs {
            check.fail(format!("lemma 2 fails at type {ct}"));
        }
        s2.observe(&lhs, &rhs, || ct.to_string());

        let bound_a = g2(part.r) * g2(part.n1 - part.r);
        if part.lattice > bound_a {
            check.fail(format!("lemma 3(a) fails at type {ct}"));
        }
        s3a.observe(&part.lattice, &bound_a, || ct.to_string());

        let bound_b = g2(part.r).pow(part.mu1 as u32);
        if part.lattice > bound_b {
            check.fail(format!("lemma 3(b) fails at type {ct}"));
        }
        s3b.observe(&part.lattice, &bound_b, || ct.to_string());
    }
    s2.witness(&mut check, "lemma 2 min slack (8x exponent)");
    s3a.witness(&mut check, "lemma 3(a) min slack");
    s3b.witness(&mut check, "lemma 3(b) min slack");
    Ok(check)
}

/// Non-identity Burnside sum against `C(n,2) G(n-1,2)`.
pub fn check_lower_bound_4(n: usize) -> Result<CheckResult> {
    if n < 2 {
        return Err(Error::BelowMinimum { what: "bound4", n, min: 2 });
    }
    ceiling("bound4 sweep", n, BOUND4_CEILING)?;
    let mut check = CheckResult::new("bound4", n, n);
    let nonid = burnside_sum(n, Strategy::Parallel).nonidentity();
    let bound = BigUint::from(n * (n - 1) / 2) * g2(n - 1);
    if nonid < bound {
        check.fail(format!("n = {n}: {nonid} < {bound}"));
    }
    check.witness(format!("n = {n} ratio"), format!("{:.6}", 2f64.powf(log2_nat(&nonid) - log2_nat(&bound))));
    Ok(check)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DClass {
    D1,
    D2,
    D3,
    D4,
}

/// Assigns a non-identity cycle type to the first of D1..D4 whose condition
/// it meets; `None` for the identity (`r = n`).
pub fn d_class(n: usize, n1: usize, r: usize) -> Option<DClass> {
    if r >= n {
        return None;
    }
    let n_big = BigUint::from(n);
    let n1_big = BigUint::from(n1);
    // n1 <= n - 6 log n  <=>  2^{n1} n^6 <= 2^n
    if pow2(n1) * n_big.pow(6) <= pow2(n) {
        return Some(DClass::D1);
    }
    // r <= 8 log n1  <=>  2^r <= n1^8
    let n1_8 = n1_big.pow(8);
    if r >= 1 && pow2(r) <= n1_8 {
        return Some(DClass::D2);
    }
    // r < n1 - 8 log n1  <=>  2^r n1^8 < 2^{n1}
    if pow2(r) * &n1_8 < pow2(n1) {
        return Some(DClass::D3);
    }
    Some(DClass::D4)
}

#[derive(Clone, Debug, Serialize)]
pub struct DClassRow {
    pub class: DClass,
    pub permutations: String,
    pub lattice_sum: String,
    pub share: String,
}

/// Lattice mass of the non-identity permutations split into D1..D4.
pub fn classify_d_rows(n: usize) -> Result<(Vec<DClassRow>, usize)> {
    if n < 2 {
        return Err(Error::BelowMinimum { what: "dclass", n, min: 2 });
    }
    let classes = [DClass::D1, DClass::D2, DClass::D3, DClass::D4];
    let mut perms = vec![BigUint::zero(); 4];
    let mut sums = vec![BigUint::zero(); 4];
    let mut overlaps = 0;
    let mut covered = BigUint::zero();
    for ct in partitions_of(n).filter(|c| !c.is_identity()) {
        let part = unipotent_part(&ct);
        let class = d_class(n, part.n1, part.r).expect("non-identity type must be classified");
        let idx = classes.iter().position(|&c| c == class).unwrap();
        let size = class_size(&ct);
        // D2 and D4 can both hold at small n; first match wins
        if class == DClass::D2 && pow2(part.r) * BigUint::from(part.n1).pow(8) >= pow2(part.n1) {
            overlaps += 1;
        }
        sums[idx] += &size * lattice_size(&ct);
        perms[idx] += &size;
        covered += size;
    }
    assert_eq!(covered + 1u32, factorial(n), "D-classes must cover S_n minus the identity");
    let total: BigUint = sums.iter().sum();
    let rows = classes
        .iter()
        .enumerate()
        .map(|(i, &class)| DClassRow {
            class,
            permutations: perms[i].to_string(),
            lattice_sum: sums[i].to_string(),
            share: HighPrecisionReal::from_natural_ratio(&sums[i], &total, 30).to_decimal_string(12),
        })
        .collect();
    Ok((rows, overlaps))
}

pub fn classify_d(n: usize) -> Result<CheckResult> {
    let (rows, overlaps) = classify_d_rows(n)?;
    let mut check = CheckResult::new("dclass", n, n).report_only();
    for row in rows {
        check.witness(
            format!("{:?}", row.class),
            format!("{} permutations, share {}", row.permutations, row.share),
        );
    }
    check.witness("types in both D2 and D4 (assigned D2)", overlaps);
    Ok(check)
}

/// Gauss-coefficient bounds for `n <= 100` and the census bounds on `b(n, d)`
/// for `n <= min(n, 40)`.
pub fn check_dimension_bounds(n: usize) -> Result<CheckResult> {
    ceiling("gauss-coefficient sweep", n, GAUSS_BOUND_CEILING)?;
    let mut check = CheckResult::new("dims", n, n);
    let mut slack = Slack::new();
    for d in 1..=n {
        let g = gauss_binomial(n as u32, d as i64, 2)?;
        let lower = pow2(n * d - d * d);
        let upper = &lower << 2u32;
        if g < lower || g > upper {
            check.fail(format!("gauss bound fails at n = {n}, d = {d}"));
        }
        slack.observe(&lower, &g, || format!("d = {d} (lower)"));
        slack.observe(&g, &upper, || format!("d = {d} (upper)"));
    }
    slack.witness(&mut check, "gauss bound min slack");
    if (1..=CENSUS_BOUND_CEILING).contains(&n) {
        let row = count_codes(n)?;
        let nf = factorial(n);
        for d in 0..=n {
            let g = gauss_binomial(n as u32, d as i64, 2)?;
            if &row.by_dim[d] * &nf < g {
                check.fail(format!("b({n},{d}) n! < G({n},2,{d})"));
            }
        }
        for c in 0..=2usize {
            let d = n / 2 + c;
            if d > n {
                continue;
            }
            let g = gauss_binomial(n as u32, d as i64, 2)?;
            let ratio = HighPrecisionReal::from_natural_ratio(&(&row.by_dim[d] * &nf), &g, 30);
            check.witness(
                format!("b({n},{d}) n!/G(n,2,d) [c = {c}, bound 2^{}]", c * c + 3),
                ratio.to_decimal_string(9),
            );
        }
    }
    Ok(check)
}

/// Report-only: the correction term against the theorem's exponent constants.
pub fn check_theorem_constants(n: usize) -> Result<CheckResult> {
    let report = correction_report(n)?;
    let mut check = CheckResult::new("theorem_constants", n, n).report_only();
    check.witness(format!("R({n})"), report.correction.to_decimal_string(15));
    check.witness(format!("rho({n})"), report.rho.to_decimal_string(12));
    check.witness(
        format!("e({n}) = log2 R + n/2 - 2 log2 n"),
        format!(
            "{:.6} (theorem brackets {} / {})",
            report.exponent,
            CorrectionReport::THEOREM_LOWER,
            CorrectionReport::THEOREM_UPPER
        ),
    );
    if n.is_multiple_of(2) {
        let half = (n / 2) as f64;
        let refined = report.correction.log2() + half - 2.0 * half.log2();
        check.witness(
            format!("even refinement exponent at 2m = {n}"),
            format!("{refined:.6} (stated {})", CorrectionReport::EVEN_REFINED),
        );
    } else {
        let half = ((n - 1) / 2) as f64;
        let refined = report.correction.log2() + half - 2.0 * half.log2();
        check.witness(
            format!("odd refinement exponent at 2m+1 = {n}"),
            format!("{refined:.6} (stated {})", CorrectionReport::ODD_REFINED),
        );
    }
    Ok(check)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Lemma1,
    Lemma23,
    Bound4,
    Dims,
    Dclass,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "lemma1" => Suite::Lemma1,
            "lemma23" => Suite::Lemma23,
            "bound4" => Suite::Bound4,
            "dims" => Suite::Dims,
            "dclass" => Suite::Dclass,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub log_base: &'static str,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# verification report (log = {})\n", self.log_base);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::ReportOnly => "REPORT",
            };
            out.push_str(&format!("[{status}] {} n={}..={}\n", c.name, c.n_range.0, c.n_range.1));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("    counterexample: {ce}\n"));
            }
            for w in &c.witnesses {
                out.push_str(&format!("    {}: {}\n", w.label, w.value));
            }
        }
        out
    }
}

fn sweep(name: &str, lo: usize, hi: usize, f: impl Fn(usize) -> Result<CheckResult>) -> Result<CheckResult> {
    let mut check = CheckResult::new(name, lo, hi);
    let mut keep_witnesses = Vec::new();
    for n in lo..=hi {
        let c = f(n)?;
        if n == hi {
            keep_witnesses = c.witnesses.clone();
        }
        let mut c = c;
        c.witnesses.clear();
        check.merge(c);
    }
    check.witnesses = keep_witnesses;
    Ok(check)
}

/// Runs a suite. Single suites reject `max_n` above their ceiling; `All`
/// clamps each check to its own ceiling.
pub fn run_suite(suite: Suite, max_n: usize) -> Result<Report> {
    let clamp = suite == Suite::All;
    let cap = |max: usize, what: &'static str| -> Result<usize> {
        if clamp {
            Ok(max_n.min(max))
        } else {
            ceiling(what, max_n, max).map(|_| max_n)
        }
    };
    let mut checks = Vec::new();
    if matches!(suite, Suite::All | Suite::Lemma1) {
        checks.push(check_lemma1(if clamp { max_n.max(10) } else { max_n })?);
    }
    if matches!(suite, Suite::All | Suite::Lemma23) {
        let hi = cap(LEMMA23_CEILING, "lemma2/3 sweep")?;
        checks.push(sweep("lemma2_3", 1, hi, check_lemma2_3)?);
    }
    if matches!(suite, Suite::All | Suite::Bound4) {
        let hi = cap(BOUND4_CEILING, "bound4 sweep")?;
        if hi >= 2 {
            checks.push(sweep("bound4", 2, hi, check_lower_bound_4)?);
        }
    }
    if matches!(suite, Suite::All | Suite::Dims) {
        let hi = cap(GAUSS_BOUND_CEILING, "gauss-coefficient sweep")?;
        checks.push(sweep("dims", 1, hi, check_dimension_bounds)?);
    }
    if matches!(suite, Suite::All | Suite::Dclass) {
        let n = if clamp { max_n.min(CENSUS_BOUND_CEILING) } else { max_n };
        if n >= 2 {
            checks.push(classify_d(n)?);
        }
    }
    if suite == Suite::All {
        let n = max_n.min(CENSUS_BOUND_CEILING);
        if n >= 4 {
            checks.push(check_theorem_constants(n)?);
        }
    }
    Ok(Report {
        schema: "bincensus.verify/1",
        log_base: "2",
        checks,
    })
}
