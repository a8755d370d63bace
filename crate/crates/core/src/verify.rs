//! Property suites over a truncated derivation table, aggregated into
//! [`Report`]s with reproducible counterexamples.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::bivariate::tower_to_bivariate;
use crate::algebra::field::Field;
use crate::algebra::gf::{BinaryField, Gf2};
use crate::algebra::lucas::lucas_binom;
use crate::construct::compute_f_g;
use crate::ec::{on_curve, SeriesRing};
use crate::error::{Error, Result};
use crate::function_field::FieldElem;
use crate::hd::{Generator, HdData};
use crate::io::{parse_elem, render_elem};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never affects the overall outcome.
    Info,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub element: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub millis: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Telemetry {
    pub max_num_degree: usize,
    pub max_den_degree: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub telemetry: Telemetry,
}

impl Report {
    pub(crate) fn new<F: Field>(suite: Suite, hd: &HdData<F>, checks: Vec<CheckResult>) -> Self {
        let s = table_stats(hd);
        Report {
            suite: suite.name().into(),
            checks,
            telemetry: Telemetry {
                max_num_degree: s.max_num_degree,
                max_den_degree: s.max_den_degree,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.failures().next()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fails = self.failures().count();
        let verdict = if fails == 0 { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "suite {}: {verdict} ({} checks, {fails} failed)",
            self.suite,
            self.checks.len()
        )?;
        for c in &self.checks {
            match c.status {
                Status::Fail => {
                    write!(f, "  FAIL {}", c.id)?;
                    if let Some(ce) = &c.counterexample {
                        write!(f, " [element {}", ce.element)?;
                        if let Some(i) = ce.i {
                            write!(f, ", i={i}")?;
                        }
                        if let Some(j) = ce.j {
                            write!(f, ", j={j}")?;
                        }
                        write!(f, "] expected {} got {}", ce.expected, ce.actual)?;
                    }
                    if let Some(d) = &c.detail {
                        write!(f, " ({d})")?;
                    }
                    writeln!(f)?;
                }
                Status::Info => {
                    writeln!(f, "  INFO {}: {}", c.id, c.detail.as_deref().unwrap_or(""))?;
                }
                Status::Pass => {}
            }
        }
        Ok(())
    }
}

/// The independently selectable suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Suite {
    Iteration,
    Rho,
    Thm51,
    Kernel,
    Torsion,
    Constants,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Iteration,
        Suite::Rho,
        Suite::Thm51,
        Suite::Kernel,
        Suite::Torsion,
        Suite::Constants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Iteration => "iteration",
            Suite::Rho => "rho",
            Suite::Thm51 => "thm51",
            Suite::Kernel => "kernel",
            Suite::Torsion => "torsion",
            Suite::Constants => "constants",
        }
    }

    /// Parse a comma separated list; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("empty suite list".into()));
        }
        let mut seen = Vec::new();
        out.retain(|s| {
            let fresh = !seen.contains(s);
            seen.push(*s);
            fresh
        });
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random elements checked at order `N/2` by the iteration suite.
    pub spot_checks: usize,
    /// Degree bound for the constant search.
    pub constant_degree: usize,
    /// Order of the constant search, capped by the table order.
    pub constant_order: usize,
    /// Order of the torsion suite, capped by the table order.
    pub torsion_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            spot_checks: 10,
            constant_degree: 3,
            constant_order: 8,
            torsion_order: 8,
        }
    }
}

/// Size of a table: degrees of the numerators and denominators of all
/// entries after clearing `t`-denominators, and total coefficient count.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct TableStats {
    pub max_num_degree: usize,
    pub max_den_degree: usize,
    pub max_t_deg: usize,
    pub max_x_deg: usize,
    pub coeffs: usize,
}

pub fn table_stats<F: Field>(hd: &HdData<F>) -> TableStats {
    let mut s = TableStats::default();
    for u in hd.xi_table() {
        for part in [u.a(), u.b()] {
            if part.is_zero() {
                continue;
            }
            let (n, d) = tower_to_bivariate(part);
            s.max_num_degree = s.max_num_degree.max(n.total_degree().unwrap_or(0));
            s.max_den_degree = s.max_den_degree.max(d.total_degree().unwrap_or(0));
            for b in [&n, &d] {
                s.max_t_deg = s.max_t_deg.max(b.t_degree().unwrap_or(0));
                s.max_x_deg = s.max_x_deg.max(b.x_degree().unwrap_or(0));
                s.coeffs += b.weight();
            }
        }
    }
    s
}

pub(crate) fn timed(
    id: String,
    f: impl FnOnce() -> (Status, Option<Counterexample>, Option<String>),
) -> CheckResult {
    let start = Instant::now();
    let (status, counterexample, detail) = f();
    CheckResult {
        id,
        status,
        counterexample,
        detail,
        millis: start.elapsed().as_millis() as u64,
    }
}

pub(crate) fn errored(e: Error) -> (Status, Option<Counterexample>, Option<String>) {
    (Status::Fail, None, Some(e.to_string()))
}

pub(crate) fn pass() -> (Status, Option<Counterexample>, Option<String>) {
    (Status::Pass, None, None)
}

pub(crate) fn fail<F: BinaryField>(
    i: Option<usize>,
    j: Option<usize>,
    element: String,
    expected: &FieldElem<F>,
    actual: &FieldElem<F>,
) -> (Status, Option<Counterexample>, Option<String>) {
    (
        Status::Fail,
        Some(Counterexample {
            i,
            j,
            element,
            expected: render_elem(expected),
            actual: render_elem(actual),
        }),
        None,
    )
}

fn check_order<F: Field>(hd: &HdData<F>, n: usize) -> Result<()> {
    if n > hd.order() {
        return Err(Error::OrderExceeded {
            requested: n,
            available: hd.order(),
        });
    }
    Ok(())
}

fn rule_rhs<F: Field>(i: usize, j: usize, full: &FieldElem<F>) -> FieldElem<F> {
    if lucas_binom(i as u64, j as u64) {
        full.clone()
    } else {
        FieldElem::zero()
    }
}

/// `theta^(i)(theta^(j)(u)) == C(i+j, i) theta^(i+j)(u)`.
pub fn iteration_holds<F: Field>(hd: &HdData<F>, u: &FieldElem<F>, i: usize, j: usize) -> Result<bool> {
    let lhs = hd.theta_compose(u, i, j)?;
    Ok(lhs == rule_rhs(i, j, &hd.theta_coeff(u, i + j)?))
}

/// Compare `theta^(i) theta^(j) u` against the rule for all `i >= 1` with
/// `i + j <= n`, given the series `theta(u)` to order `n`.
fn iteration_row<F: BinaryField>(
    hd: &HdData<F>,
    name: &str,
    shifts: &[FieldElem<F>],
    j: usize,
    n: usize,
) -> (Status, Option<Counterexample>, Option<String>) {
    let inner = match hd.theta(&shifts[j], n - j) {
        Ok(s) => s,
        Err(e) => return errored(e),
    };
    for i in 1..=n - j {
        let expected = rule_rhs(i, j, &shifts[i + j]);
        if inner.coeff(i) != &expected {
            return fail(Some(i), Some(j), name.to_string(), &expected, inner.coeff(i));
        }
    }
    pass()
}

/// Random element of `L`: a sum of up to three monomials `c t^a x^b z^e`
/// over `1` or `1 + t^a x^b`.
pub fn random_element<F: BinaryField>(rng: &mut impl Rng) -> FieldElem<F> {
    let elems = F::elements();
    let mono = |rng: &mut dyn rand::RngCore, a: usize, b: usize, e: usize| {
        let c = elems[rng.gen_range(1..elems.len())];
        let mut m = FieldElem::constant(c)
            .mul(&FieldElem::t().pow(a as u64))
            .mul(&FieldElem::x().pow(b as u64));
        if e == 1 {
            m = m.mul(&FieldElem::z());
        }
        m
    };
    let mut num = FieldElem::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let (a, b, e) = (rng.gen_range(0..=3), rng.gen_range(0..=2), rng.gen_range(0..=1));
        num = num.add(&mono(rng, a, b, e));
    }
    if num.is_zero() {
        num = FieldElem::x();
    }
    if rng.gen_bool(0.5) {
        let (a, b) = (rng.gen_range(0..=2), rng.gen_range(1..=2));
        let den = FieldElem::one().add(&FieldElem::t().pow(a).mul(&FieldElem::x().pow(b)));
        num.div(&den).expect("1 + t^a x^b is nonzero")
    } else {
        num
    }
}

/// One row `theta^(i) theta^(j) u` for fixed `u` and `j`.
struct RowTask<F> {
    id: String,
    name: String,
    shifts: Vec<FieldElem<F>>,
    j: usize,
    order: usize,
}

/// The iteration rule on `t, x, z` for all `i, j >= 1`, `i + j <= n`, plus
/// `spot_checks` random elements at order `n/2`.
pub fn check_iteration_rule<F: BinaryField>(
    hd: &HdData<F>,
    n: usize,
    opts: &VerifyOptions,
) -> Result<Report> {
    check_order(hd, n)?;
    let tables: Vec<(Generator, Vec<FieldElem<F>>)> = Generator::ALL
        .iter()
        .map(|&g| {
            Ok((
                g,
                (0..=n).map(|m| hd.generator_coeff(g, m)).collect::<Result<_>>()?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut tasks: Vec<RowTask<F>> = Vec::new();
    for (g, shifts) in &tables {
        for j in 1..n {
            tasks.push(RowTask {
                id: format!("{}:j={j}", g.name()),
                name: g.name().into(),
                shifts: shifts.clone(),
                j,
                order: n,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let half = n / 2;
    for k in 0..opts.spot_checks {
        let u = random_element::<F>(&mut rng);
        if half < 2 {
            continue;
        }
        let shifts = hd.theta(&u, half)?.into_coeffs();
        let name = render_elem(&u);
        for j in 1..half {
            tasks.push(RowTask {
                id: format!("spot{k}:j={j}"),
                name: name.clone(),
                shifts: shifts.clone(),
                j,
                order: half,
            });
        }
    }
    let checks = tasks
        .into_par_iter()
        .map(|t| timed(t.id, || iteration_row(hd, &t.name, &t.shifts, t.j, t.order)))
        .collect();
    Ok(Report::new(Suite::Iteration, hd, checks))
}

/// `f_k, g_k` in `F(t)` for `k <= n`, the curve relation between `f` and
/// `g`, and `theta^(m)(f_j)` in `F(t)` for `m + j <= n`.
pub fn check_rho_commutes<F: BinaryField>(hd: &HdData<F>, n: usize) -> Result<Report> {
    check_order(hd, n)?;
    let start = Instant::now();
    let fg = match compute_f_g(hd, n) {
        Ok(fg) => fg,
        Err(e) => {
            let c = CheckResult {
                id: "difference".into(),
                status: Status::Fail,
                counterexample: None,
                detail: Some(e.to_string()),
                millis: start.elapsed().as_millis() as u64,
            };
            return Ok(Report::new(Suite::Rho, hd, vec![c]));
        }
    };
    let setup = start.elapsed().as_millis() as u64;
    let mut checks = vec![timed("curve".into(), || {
        let ring = SeriesRing::new(n);
        if on_curve(&ring, &fg.f, &fg.g) && fg.f.coeff(0).is_zero() && fg.g.coeff(0).is_zero() {
            pass()
        } else {
            (
                Status::Fail,
                None,
                Some("f^3 != g^2 + g or nonzero constant term".into()),
            )
        }
    })];
    checks[0].millis += setup;
    let ct = |name: &str, k: usize, u: &FieldElem<F>| {
        timed(format!("{name}_{k}"), || {
            if u.is_in_ct() {
                pass()
            } else {
                (
                    Status::Fail,
                    Some(Counterexample {
                        i: Some(k),
                        j: None,
                        element: format!("{name}_{k}"),
                        expected: "element of F(t)".into(),
                        actual: render_elem(u),
                    }),
                    None,
                )
            }
        })
    };
    for k in 1..=n {
        checks.push(ct("f", k, fg.f.coeff(k)));
    }
    for k in 1..=n {
        checks.push(ct("g", k, fg.g.coeff(k)));
    }
    let shifted: Vec<CheckResult> = (1..n)
        .into_par_iter()
        .filter(|&j| fg.f.coeff(j).is_in_ct())
        .map(|j| {
            timed(format!("theta_f_{j}"), || {
                let s = match hd.theta(fg.f.coeff(j), n - j) {
                    Ok(s) => s,
                    Err(e) => return errored(e),
                };
                match (1..=n - j).find(|&m| !s.coeff(m).is_in_ct()) {
                    None => pass(),
                    Some(m) => (
                        Status::Fail,
                        Some(Counterexample {
                            i: Some(m),
                            j: Some(j),
                            element: format!("f_{j}"),
                            expected: "element of F(t)".into(),
                            actual: render_elem(s.coeff(m)),
                        }),
                        None,
                    ),
                }
            })
        })
        .collect();
    checks.extend(shifted);
    Ok(Report::new(Suite::Rho, hd, checks))
}

/// Whether `f_k` and `g_k` lie in `F(t)`.
pub fn rho_holds<F: Field>(hd: &HdData<F>, k: usize) -> Result<bool> {
    let fg = compute_f_g(hd, k)?;
    Ok(fg.f.coeff(k).is_in_ct() && fg.g.coeff(k).is_in_ct())
}

/// The power-of-two conditions for `l <= l0` on `t, x, z`:
/// (a) `theta^(m + 2^l) = theta^(2^l) theta^(m)` for `m < 2^l`,
/// (b) `theta^(2^l) theta^(2^l) = 0`,
/// (c) `theta^(2^j)` and `theta^(2^l)` commute for `j < l`.
pub fn check_block_conditions<F: BinaryField>(hd: &HdData<F>, l0: u32) -> Result<Report> {
    let top = 1usize << (l0 + 1);
    check_order(hd, top)?;
    let mut tasks = Vec::new();
    for g in Generator::ALL {
        for l in 0..=l0 {
            tasks.push((g, l, 'a'));
            tasks.push((g, l, 'b'));
            if l > 0 {
                tasks.push((g, l, 'c'));
            }
        }
    }
    let checks = tasks
        .into_par_iter()
        .map(|(g, l, kind)| {
            timed(format!("{kind}:l={l}:{}", g.name()), || {
                match block_condition(hd, g, l, kind) {
                    Ok(None) => pass(),
                    Ok(Some((i, j, expected, actual))) => {
                        fail(Some(i), Some(j), g.name().into(), &expected, &actual)
                    }
                    Err(e) => errored(e),
                }
            })
        })
        .collect();
    Ok(Report::new(Suite::Thm51, hd, checks))
}

type Mismatch<F> = Option<(usize, usize, FieldElem<F>, FieldElem<F>)>;

/// First violation of condition `kind` at block `l` on generator `g`, as
/// `(i, j, expected, actual)`.
fn block_condition<F: Field>(hd: &HdData<F>, g: Generator, l: u32, kind: char) -> Result<Mismatch<F>> {
    let p = 1usize << l;
    let u = g.element();
    let coeff = |m| hd.generator_coeff(g, m);
    match kind {
        'a' => {
            for m in 0..p {
                let expected = coeff(m + p)?;
                let actual = hd.theta_coeff(&coeff(m)?, p)?;
                if expected != actual {
                    return Ok(Some((p, m, expected, actual)));
                }
            }
            Ok(None)
        }
        'b' => {
            let actual = hd.theta_compose(&u, p, p)?;
            Ok((!actual.is_zero()).then(|| (p, p, FieldElem::zero(), actual)))
        }
        _ => {
            for j in 0..l {
                let q = 1usize << j;
                let expected = hd.theta_compose(&u, p, q)?;
                let actual = hd.theta_compose(&u, q, p)?;
                if expected != actual {
                    return Ok(Some((q, p, expected, actual)));
                }
            }
            Ok(None)
        }
    }
}

/// `theta^(2^j)(sum_{m < 2^l} theta^(m)(u) t^m) = 0` for all `j < l`.
///
/// Requires `2^l + 2^(l-1) <= N` and the iteration rule on generators for
/// all `i + j < 2^l + 2^(l-1)`.
pub fn check_kernel_identity<F: BinaryField>(hd: &HdData<F>, l: u32, u: &FieldElem<F>) -> Result<Report> {
    let checks = kernel_checks(hd, l, u, &render_elem(u))?;
    Ok(Report::new(Suite::Kernel, hd, checks))
}

fn kernel_bound(l: u32) -> usize {
    if l == 0 {
        1
    } else {
        (1usize << l) + (1usize << (l - 1))
    }
}

fn kernel_precondition<F: Field>(hd: &HdData<F>, l: u32) -> Result<()> {
    let bound = kernel_bound(l);
    if bound > hd.order() {
        return Err(Error::PreconditionFailed(format!(
            "order {} below 2^l + 2^(l-1) = {bound}",
            hd.order()
        )));
    }
    for g in Generator::ALL {
        for s in 2..bound {
            for j in 1..s {
                if !iteration_holds(hd, &g.element(), s - j, j)? {
                    return Err(Error::PreconditionFailed(format!(
                        "iteration rule fails on {} at (i, j) = ({}, {j})",
                        g.name(),
                        s - j
                    )));
                }
            }
        }
    }
    Ok(())
}

fn kernel_checks<F: BinaryField>(
    hd: &HdData<F>,
    l: u32,
    u: &FieldElem<F>,
    name: &str,
) -> Result<Vec<CheckResult>> {
    kernel_precondition(hd, l)?;
    let p = 1usize << l;
    let shifts = hd.theta(u, p - 1)?;
    let mut sum = FieldElem::zero();
    let mut tm = FieldElem::one();
    for m in 0..p {
        sum = sum.add(&shifts.coeff(m).mul(&tm));
        tm = tm.mul(&FieldElem::t());
    }
    let image = hd.theta(&sum, (p / 2).max(1))?;
    Ok((0..l)
        .map(|j| {
            let q = 1usize << j;
            timed(format!("{name}:l={l}:j={j}"), || {
                let actual = image.coeff(q);
                if actual.is_zero() {
                    pass()
                } else {
                    fail(Some(q), Some(p), name.to_string(), &FieldElem::zero(), actual)
                }
            })
        })
        .collect())
}

/// Kernel identity for `t, x, z` and two random elements at every `l >= 1`
/// the order allows.
pub fn kernel_suite<F: BinaryField>(hd: &HdData<F>, opts: &VerifyOptions) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6b65726e);
    let mut elems: Vec<(String, FieldElem<F>)> = Generator::ALL
        .iter()
        .map(|g| (g.name().to_string(), g.element()))
        .collect();
    for k in 0..2 {
        elems.push((format!("r{k}"), random_element(&mut rng)));
    }
    let mut checks = Vec::new();
    let mut l = 1;
    while kernel_bound(l) <= hd.order() {
        for (name, u) in &elems {
            match kernel_checks(hd, l, u, name) {
                Ok(c) => checks.extend(c),
                Err(e) => {
                    checks.push(timed(format!("precondition:l={l}"), || errored(e)));
                    return Ok(Report::new(Suite::Kernel, hd, checks));
                }
            }
        }
        l += 1;
    }
    if checks.is_empty() {
        checks.push(timed("order".into(), || {
            (Status::Info, None, Some("order too small for any block".into()))
        }));
    }
    Ok(Report::new(Suite::Kernel, hd, checks))
}

/// The search family: monomials `t^a x^b z^e` (`e <= 1`, `0 < a + b + e <= d`)
/// and sums of two distinct such monomials.
pub fn constant_search_family<F: Field>(d: usize) -> Vec<FieldElem<F>> {
    let mut monos = Vec::new();
    for e in 0..=1usize.min(d) {
        for a in 0..=d - e {
            for b in 0..=d - e - a {
                if a + b + e == 0 {
                    continue;
                }
                let mut m = FieldElem::t().pow(a as u64).mul(&FieldElem::x().pow(b as u64));
                if e == 1 {
                    m = m.mul(&FieldElem::z());
                }
                monos.push(m);
            }
        }
    }
    let mut out = monos.clone();
    for i in 0..monos.len() {
        for j in i + 1..monos.len() {
            out.push(monos[i].add(&monos[j]));
        }
    }
    out
}

/// Members of [`constant_search_family`] with `theta^(i) = 0` for
/// `0 < i <= n`, excluding elements of `F`. A bounded heuristic: an empty
/// result is evidence, not proof, that the constants are `F`.
pub fn bounded_constant_search<F: Field>(hd: &HdData<F>, d: usize, n: usize) -> Result<Vec<FieldElem<F>>> {
    check_order(hd, n)?;
    let ev = hd.evaluator(n)?;
    let hits: Vec<Option<FieldElem<F>>> = constant_search_family::<F>(d)
        .into_par_iter()
        .map(|u| {
            if u.as_ct().is_some_and(|c| c.is_constant()) {
                return Ok(None);
            }
            let s = ev.apply(&u, n)?;
            Ok(s.coeffs()[1..].iter().all(|c| c.is_zero()).then_some(u))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

pub fn constants_report<F: BinaryField>(hd: &HdData<F>, opts: &VerifyOptions) -> Result<Report> {
    let n = opts.constant_order.min(hd.order());
    let d = opts.constant_degree;
    let mut found = Vec::new();
    let mut c = timed(format!("search:d={d}:N={n}"), || {
        match bounded_constant_search(hd, d, n) {
            Ok(v) => {
                found = v;
                (Status::Info, None, None)
            }
            Err(e) => errored(e),
        }
    });
    if c.status == Status::Info {
        let shown: Vec<String> = found.iter().take(12).map(render_elem).collect();
        let more = found.len().saturating_sub(shown.len());
        c.detail = Some(format!(
            "bounded heuristic; {} candidate constant(s) outside F{}{}{}",
            found.len(),
            if found.is_empty() { "" } else { ": " },
            shown.join(", "),
            if more > 0 {
                format!(", ... ({more} more)")
            } else {
                String::new()
            },
        ));
    }
    Ok(Report::new(Suite::Constants, hd, vec![c]))
}

/// Largest `l0` with `2^(l0+1) <= n`.
pub fn block_level(n: usize) -> Option<u32> {
    (n >= 2).then(|| (usize::BITS - 1 - n.leading_zeros()) - 1)
}

/// Run one suite at the table's full order.
pub fn run_suite(hd: &HdData<Gf2>, suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let n = hd.order();
    match suite {
        Suite::Iteration => check_iteration_rule(hd, n, opts),
        Suite::Rho => check_rho_commutes(hd, n),
        Suite::Thm51 => match block_level(n) {
            Some(l0) => check_block_conditions(hd, l0),
            None => Ok(Report::new(
                Suite::Thm51,
                hd,
                vec![timed("order".into(), || {
                    (
                        Status::Info,
                        None,
                        Some("order below 2; no block to check".into()),
                    )
                })],
            )),
        },
        Suite::Kernel => kernel_suite(hd, opts),
        Suite::Torsion => crate::torsion::torsion_suite(hd, opts.torsion_order.min(n)),
        Suite::Constants => constants_report(hd, opts),
    }
}

/// Re-run the single check behind a failed entry. Returns `Ok(true)` when
/// the property now holds.
pub fn replay<F: BinaryField>(hd: &HdData<F>, suite: Suite, check: &CheckResult) -> Result<bool> {
    let ce = check
        .counterexample
        .as_ref()
        .ok_or_else(|| Error::PreconditionFailed(format!("check `{}` has no counterexample", check.id)))?;
    let missing = || Error::PreconditionFailed("counterexample lacks indices".into());
    match suite {
        Suite::Iteration => {
            let u = parse_elem(&ce.element)?;
            iteration_holds(hd, &u, ce.i.ok_or_else(missing)?, ce.j.ok_or_else(missing)?)
        }
        Suite::Rho => match ce.j {
            None => rho_holds(hd, ce.i.ok_or_else(missing)?),
            Some(j) => {
                let fg = compute_f_g(hd, hd.order())?;
                Ok(hd
                    .theta_coeff(fg.f.coeff(j), ce.i.ok_or_else(missing)?)?
                    .is_in_ct())
            }
        },
        Suite::Thm51 => {
            let g = Generator::ALL
                .into_iter()
                .find(|g| g.name() == ce.element)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{}`", ce.element)))?;
            let kind = check.id.chars().next().unwrap_or('?');
            let l = check
                .id
                .split(':')
                .find_map(|p| p.strip_prefix("l="))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad check id `{}`", check.id)))?;
            Ok(block_condition(hd, g, l, kind)?.is_none())
        }
        _ => Err(Error::PreconditionFailed(format!(
            "replay is not supported for suite {}",
            suite.name()
        ))),
    }
}
