//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::fs;
use std::time::{Duration, Instant};

use itder::algebra::shift::taylor_shift;
use itder::algebra::{lucas_binom, Field, Gf2, Gf2m, RatT};
use itder::cli::{self, EXIT_OK};
use itder::construct::{compute_f_g, construct, ChoiceSpec};
use itder::ec::{
    mul_n, neg, rational_points, std_neg, sub_chord, translated_op, AffinePoint, Coeffs, Op, ProjPoint,
};
use itder::hd::HdData;
use itder::io::{parse_elem, render_elem};
use itder::series::solve_artin_schreier;
use itder::torsion::{
    check_action_composition, check_id_automorphism, enumerate_3_torsion, lift_hd, no_rational_2_torsion,
};
use itder::verify::{
    block_level, check_block_conditions, check_iteration_rule, check_rho_commutes, run_suite, Report, Status,
    Suite, VerifyOptions,
};
use itder::{FieldElem, Tps};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type L = FieldElem<Gf2>;
type Outcome = Result<String, String>;

/// Wall-clock budget for criterion 1 at N = 16.
const ITERATION_BUDGET: Duration = Duration::from_secs(120);
/// Budget for the N = 32 stretch run.
const STRETCH_BUDGET: Duration = Duration::from_secs(15 * 60);
const PAIRS_PER_FIELD: usize = 1000;
const SEED: u64 = 0;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s(e: itder::Error) -> String {
    e.to_string()
}

fn sample_spec() -> ChoiceSpec<Gf2> {
    ChoiceSpec::parse(&["s", "0", "0", "0", "0"]).unwrap()
}

fn quiet() -> VerifyOptions {
    VerifyOptions {
        spot_checks: 0,
        ..VerifyOptions::default()
    }
}

fn first_failure(r: &Report) -> String {
    match r.first_failure() {
        Some(c) => format!("{} failed: {:?}", c.id, c.counterexample),
        None => "no failure".into(),
    }
}

fn criterion_1(hd16: &HdData<Gf2>) -> Outcome {
    let start = Instant::now();
    let r = check_iteration_rule(hd16, 16, &VerifyOptions::default()).map_err(e2s)?;
    let took = start.elapsed();
    ensure(r.passed(), first_failure(&r))?;
    ensure(took <= ITERATION_BUDGET, format!("took {took:?}"))?;
    let start = Instant::now();
    let hd32 = construct(32, &sample_spec()).map_err(e2s)?;
    let r32 = check_iteration_rule(&hd32, 32, &quiet()).map_err(e2s)?;
    let stretch = start.elapsed();
    ensure(r32.passed(), format!("N=32: {}", first_failure(&r32)))?;
    ensure(stretch <= STRETCH_BUDGET, format!("N=32 took {stretch:?}"))?;
    Ok(format!(
        "N=16: {} checks in {:.2?}; N=32 construct+check in {:.2?}",
        r.checks.len(),
        took,
        stretch
    ))
}

fn criterion_2(hd16: &HdData<Gf2>) -> Outcome {
    let r = check_rho_commutes(hd16, 16).map_err(e2s)?;
    ensure(r.passed(), first_failure(&r))?;
    // independent recomputation of the curve relation and membership
    let d = compute_f_g(hd16, 16).map_err(e2s)?;
    let lhs = d.f.square().mul(&d.f).map_err(e2s)?;
    let rhs = d.g.square().add(&d.g).map_err(e2s)?;
    ensure(lhs == rhs, "f^3 != g^2 + g mod T^17")?;
    for k in 0..=16 {
        ensure(
            d.f.coeff(k).is_in_ct() && d.g.coeff(k).is_in_ct(),
            format!("f_{k} or g_{k} not in C(t)"),
        )?;
    }
    Ok("f_k, g_k in C(t) for k <= 16; f^3 = g^2 + g mod T^17".into())
}

/// `xi_2` and `xi_3` from `xi_1 = t^2` by hand, using only series arithmetic
/// in `L`, the Taylor shift on `F(t)` and the product rule.
fn anchor_oracle() -> Result<(L, L), String> {
    let (t, x, z) = (L::t(), L::x(), L::z());
    let xi1 = t.square();
    // theta^(2)(t^2) from (t + T)^2
    let shift = taylor_shift(&RatT::<Gf2>::var().square(), 2);
    let theta2_xi1 = L::from_ct(shift.coeff(2).clone());
    // theta(x), theta(z) through order 1, z_1 from the curve relation
    let xs = Tps::from_coeffs(vec![x.clone(), xi1.clone()], 1);
    let zs = solve_artin_schreier(&xs, &z).map_err(e2s)?;
    ensure(zs.coeff(1) == &xi1.mul(&x.square()), "z_1 != xi_1 x^2")?;
    let w = L::one().add(&z).inv().map_err(e2s)?;
    let top = zs.add(&Tps::constant(z.mul(&w), 1)).map_err(e2s)?;
    let bottom = xs.add(&Tps::constant(x.mul(&w), 1)).map_err(e2s)?;
    let q = top.div(&bottom).map_err(e2s)?;
    let ftilde = q.coeff(1).clone();
    ensure(
        ftilde == t.square().mul(&x),
        format!("ftilde_2 = {}", render_elem(&ftilde)),
    )?;
    // theta^(1)(t^2 x) = (d/dt t^2) x + t^2 xi_1 = t^4
    let d_ftilde = L::zero().mul(&x).add(&t.square().mul(&xi1));
    let xi2 = theta2_xi1.mul(&t).add(&ftilde.add(&d_ftilde.mul(&t)).square());
    Ok((xi2, theta2_xi1))
}

fn criterion_3(hd16: &HdData<Gf2>) -> Outcome {
    let (xi2, xi3) = anchor_oracle()?;
    let frozen2 = parse_elem::<Gf2>("t+t^4*x^2+t^10").map_err(e2s)?;
    let frozen3 = L::one();
    ensure(xi2 == frozen2, format!("oracle xi_2 = {}", render_elem(&xi2)))?;
    ensure(xi3 == frozen3, format!("oracle xi_3 = {}", render_elem(&xi3)))?;
    ensure(hd16.xi(1) == &L::t().square(), "xi_1 != t^2")?;
    ensure(
        hd16.xi(2) == &frozen2,
        format!("constructed xi_2 = {}", render_elem(hd16.xi(2))),
    )?;
    ensure(
        hd16.xi(3) == &frozen3,
        format!("constructed xi_3 = {}", render_elem(hd16.xi(3))),
    )?;
    Ok("xi_2 = t+t^4*x^2+t^10, xi_3 = 1 (oracle and construction agree)".into())
}

fn criterion_4() -> Outcome {
    let orders = [1usize, 2, 3, 4, 5, 8, 16, 32];
    for &n in &orders {
        let hd = construct(n, &ChoiceSpec::<Gf2>::zero()).map_err(e2s)?;
        ensure(
            hd.xi_table().iter().all(Field::is_zero),
            format!("N={n}: nonzero xi"),
        )?;
        for suite in Suite::ALL {
            let r = run_suite(&hd, suite, &VerifyOptions::default()).map_err(e2s)?;
            ensure(
                r.passed(),
                format!("N={n} {}: {}", suite.name(), first_failure(&r)),
            )?;
        }
        let d = compute_f_g(&hd, n).map_err(e2s)?;
        ensure(d.f.is_zero() && d.g.is_zero(), format!("N={n}: f or g nonzero"))?;
    }
    Ok(format!("all suites pass, f = g = 0 at N in {orders:?}"))
}

/// Compares the two subtraction formulas on `PAIRS_PER_FIELD` affine pairs
/// inside the domain of the chord formula; returns the number of degenerate
/// draws skipped on the way.
fn cross_check<const M: u32>(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let k = Coeffs::<Gf2m<M>>::new();
    let pts: Vec<_> = rational_points::<Gf2m<M>>()
        .into_iter()
        .filter_map(|p| p.as_affine().cloned())
        .collect();
    let (mut compared, mut skipped) = (0, 0);
    while compared < PAIRS_PER_FIELD {
        let a = &pts[rng.gen_range(0..pts.len())];
        let b = &pts[rng.gen_range(0..pts.len())];
        match sub_chord(&k, a, b) {
            Ok(d) => {
                let oracle = translated_op(
                    &k,
                    &ProjPoint::Affine(a.clone()),
                    &ProjPoint::Affine(b.clone()),
                    Op::Sub,
                );
                ensure(
                    ProjPoint::Affine(d) == oracle,
                    format!("GF(2^{M}): {a:?} - {b:?}"),
                )?;
                compared += 1;
            }
            Err(itder::Error::NonInvertibleDenominator(_)) => skipped += 1,
            Err(e) => return Err(e.to_string()),
        }
        ensure(skipped < 10 * PAIRS_PER_FIELD, "domain too sparse")?;
    }
    Ok(skipped)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let counts = vec![
        cross_check::<2>(&mut rng)?,
        cross_check::<3>(&mut rng)?,
        cross_check::<4>(&mut rng)?,
        cross_check::<5>(&mut rng)?,
        cross_check::<6>(&mut rng)?,
        cross_check::<7>(&mut rng)?,
        cross_check::<8>(&mut rng)?,
    ];
    let r = Coeffs::<L>::new();
    let p = AffinePoint::new(&r, L::x(), L::z()).map_err(e2s)?;
    let n = AffinePoint::neutral(&r);
    ensure(sub_chord(&r, &p, &p).map_err(e2s)? == n, "P - P != (0,0)")?;
    ensure(sub_chord(&r, &p, &n).map_err(e2s)? == p, "P - (0,0) != P")?;
    ensure(
        neg(&r, &neg(&r, &p).map_err(e2s)?).map_err(e2s)? == p,
        "neg not involutive",
    )?;
    Ok(format!(
        "{PAIRS_PER_FIELD} seeded pairs per k = 2..8 agree exactly (degenerate draws skipped: {counts:?}); generic identities hold"
    ))
}

fn criterion_6(hd16: &HdData<Gf2>) -> Outcome {
    let k = Coeffs::<Gf2m<2>>::new();
    let all = rational_points::<Gf2m<2>>();
    ensure(all.len() == 9, format!("|E(GF(4))| = {}", all.len()))?;
    let n = ProjPoint::neutral(&k);
    ensure(
        all.iter().all(|p| mul_n(&k, p, 3) == n),
        "not all points are 3-torsion",
    )?;
    let torsion = enumerate_3_torsion();
    ensure(torsion.len() == 9, "torsion enumeration")?;
    let hd4 = lift_hd(&hd16.truncated(8));
    let mut checks = 0;
    for tau in &torsion {
        for c in check_id_automorphism(&hd4, tau, 8).map_err(e2s)? {
            ensure(
                c.status == Status::Pass,
                format!("{}: {:?}", c.id, c.counterexample),
            )?;
            checks += 1;
        }
    }
    ensure(
        check_action_composition().map_err(e2s)?.is_none(),
        "action law fails",
    )?;
    Ok(format!(
        "9 points, all 3-torsion; {checks} commutation checks at N=8; 81 pairs compose"
    ))
}

fn no_two_torsion_oracle<const M: u32>() -> bool {
    let k = Coeffs::<Gf2m<M>>::new();
    // standard law: P = -P means z = z + 1, impossible in characteristic 2
    rational_points::<Gf2m<M>>()
        .iter()
        .all(|p| *p == ProjPoint::Infinity || std_neg(&k, p) != *p)
}

fn criterion_7() -> Outcome {
    let c = no_rational_2_torsion(8).map_err(e2s)?;
    ensure(c.status == Status::Pass, format!("{:?}", c.detail))?;
    let oracle = [
        no_two_torsion_oracle::<1>(),
        no_two_torsion_oracle::<2>(),
        no_two_torsion_oracle::<3>(),
        no_two_torsion_oracle::<4>(),
        no_two_torsion_oracle::<5>(),
        no_two_torsion_oracle::<6>(),
        no_two_torsion_oracle::<7>(),
        no_two_torsion_oracle::<8>(),
    ];
    ensure(oracle.iter().all(|&b| b), "oracle found a point of order 2")?;
    Ok("no rational 2-torsion over GF(2^k), k <= 8".into())
}

fn criterion_8() -> Outcome {
    let bad_t = HdData::from_table(vec![L::t(), L::zero()], vec![]).map_err(e2s)?;
    let r = check_iteration_rule(&bad_t, 2, &quiet()).map_err(e2s)?;
    let c = r.first_failure().ok_or("xi_1 = t passes the iteration rule")?;
    let ce = c.counterexample.as_ref().ok_or("no payload")?;
    ensure(
        (ce.i, ce.j, ce.expected.as_str(), ce.actual.as_str()) == (Some(1), Some(1), "0", "1"),
        format!("payload {ce:?}"),
    )?;
    let bad_x = HdData::from_table_unchecked(vec![L::x(), L::zero()], vec![]).map_err(e2s)?;
    let r = check_rho_commutes(&bad_x, 2).map_err(e2s)?;
    let c2 = r.first_failure().ok_or("xi_1 = x passes rho")?;
    let ce2 = c2.counterexample.as_ref().ok_or("no payload")?;
    ensure(
        c2.id == "f_1" && ce2.i == Some(1) && ce2.actual == "x",
        format!("{} {ce2:?}", c2.id),
    )?;
    Ok(format!(
        "xi_1=t fails {} at (1,1) expected 0 actual 1; xi_1=x fails {} with f_1 = x",
        c.id, c2.id
    ))
}

fn corpus() -> Result<Vec<(String, HdData<Gf2>)>, String> {
    let mut out = vec![
        ("trivial".to_string(), HdData::trivial(8)),
        ("sample".to_string(), construct(8, &sample_spec()).map_err(e2s)?),
        (
            "[s+1,s,1]".to_string(),
            construct(8, &ChoiceSpec::parse(&["s+1", "s", "1"]).map_err(e2s)?).map_err(e2s)?,
        ),
        (
            "[1/(s+1),0,s^2]".to_string(),
            construct(8, &ChoiceSpec::parse(&["1/(s+1)", "0", "s^2"]).map_err(e2s)?).map_err(e2s)?,
        ),
    ];
    let tables: [(&str, Vec<&str>); 4] = [
        ("xi1=t", vec!["t", "0", "0", "0"]),
        ("xi1=x", vec!["x", "0", "0", "0"]),
        ("xi2 without t", vec!["t^2", "t^4*x^2+t^10", "1", "0"]),
        ("xi4 perturbed", vec!["t^2", "t+t^4*x^2+t^10", "1", "t"]),
    ];
    for (name, xi) in tables {
        let xi = xi
            .iter()
            .map(|s| parse_elem(s))
            .collect::<itder::Result<Vec<L>>>()
            .map_err(e2s)?;
        out.push((
            name.to_string(),
            HdData::from_table_unchecked(xi, vec![]).map_err(e2s)?,
        ));
    }
    Ok(out)
}

fn criterion_9() -> Outcome {
    let mut rows = Vec::new();
    let (mut passing, mut failing) = (0, 0);
    for (name, hd) in corpus()? {
        let top = block_level(hd.order()).ok_or("corpus order too small")?;
        for l0 in 0..=top {
            let n = 1usize << (l0 + 1);
            let it = check_iteration_rule(&hd.truncated(n), n, &quiet())
                .map_err(e2s)?
                .passed();
            let th = check_block_conditions(&hd, l0).map_err(e2s)?.passed();
            ensure(
                it == th,
                format!("{name} at l0={l0}: iteration {it}, conditions {th}"),
            )?;
            if it {
                passing += 1
            } else {
                failing += 1
            }
        }
        rows.push(name);
    }
    ensure(
        rows.len() >= 6 && passing > 0 && failing > 0,
        "corpus lacks variety",
    )?;
    Ok(format!(
        "{} tables, {passing} passing and {failing} failing (table, level) pairs agree",
        rows.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut rows: Vec<Vec<bool>> = vec![vec![true]];
    for n in 1..=256usize {
        let prev = &rows[n - 1];
        rows.push(
            (0..=n)
                .map(|k| k == 0 || k == n || (prev[k - 1] ^ prev[k]))
                .collect(),
        );
    }
    let mut count = 0;
    for i in 0..=256usize {
        for j in 0..=256 - i {
            ensure(
                lucas_binom(i as u64, j as u64) == rows[i + j][i],
                format!("i={i} j={j}"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs with i+j <= 256 match Pascal's triangle"))
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let choices = dir.path().join("choices.json");
    fs::write(&choices, r#"["s", "0", "0", "0", "0"]"#).map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("run{run}.json"));
        let args = [
            "itder",
            "construct",
            "-n",
            "16",
            "--choices",
            choices.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ];
        ensure(cli::run(args, &mut Vec::new()) == EXIT_OK, "construct failed")?;
        files.push(fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1], "construct output differs between runs")?;
    let telemetry = |_: usize| -> Result<Vec<String>, String> {
        let mut csv = Vec::new();
        ensure(
            cli::run(["itder", "bench", "--orders", "4,8,16"], &mut csv) == EXIT_OK,
            "bench failed",
        )?;
        Ok(String::from_utf8_lossy(&csv)
            .lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{},{}", f[0], f[2..].join(","))
            })
            .collect())
    };
    let (a, b) = (telemetry(0)?, telemetry(1)?);
    ensure(a == b, "bench degree columns differ")?;
    Ok(format!(
        "{} byte-identical; bench degree columns stable",
        files[0].len()
    ))
}

fn main() {
    let hd16 = construct(16, &sample_spec()).expect("construction at N = 16");
    let criteria: Vec<(u32, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion_1(&hd16))),
        (2, Box::new(|| criterion_2(&hd16))),
        (3, Box::new(|| criterion_3(&hd16))),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(|| criterion_6(&hd16))),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(criterion_10)),
        (11, Box::new(criterion_11)),
    ];
    let mut failed = Vec::new();
    for (id, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("criterion {id}: PASS ({detail}) [{:.2?}]", start.elapsed()),
            Err(why) => {
                println!("criterion {id}: FAIL ({why}) [{:.2?}]", start.elapsed());
                failed.push(*id);
            }
        }
    }
    if failed.is_empty() {
        println!(
            "acceptance: {} of {} criteria pass",
            criteria.len(),
            criteria.len()
        );
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
