//! Translations by the GF(4)-rational 3-torsion points act on
//! `L (x) GF(4)` by field automorphisms; for a derivation compatible with
//! the group law they commute with every `theta^(i)`.

use rayon::prelude::*;

use crate::algebra::gf::{BinaryField, Gf2, Gf2m, Gf4};
use crate::ec::{mul_n, rational_points, translated_op, Coeffs, Op, ProjPoint};
use crate::error::{Error, Result};
use crate::function_field::FieldElem;
use crate::hd::HdData;
use crate::io::{point_to_text, render_elem};
use crate::verify::{errored, fail, pass, timed, CheckResult, Report, Status, Suite};

pub type L4 = FieldElem<Gf4>;

const R4: Coeffs<Gf4> = Coeffs::new();
const RL4: Coeffs<L4> = Coeffs::new();

/// The 9 points of the projective curve over GF(4), each of order dividing 3.
pub fn enumerate_3_torsion() -> Vec<ProjPoint<Gf4>> {
    let n = ProjPoint::neutral(&R4);
    rational_points::<Gf4>()
        .into_iter()
        .filter(|p| mul_n(&R4, p, 3) == n)
        .collect()
}

fn lift_point(p: &ProjPoint<Gf4>) -> ProjPoint<L4> {
    match p {
        ProjPoint::Infinity => ProjPoint::Infinity,
        ProjPoint::Affine(a) => ProjPoint::affine(L4::constant(a.x), L4::constant(a.z)),
    }
}

/// Constant extension `F_2 -> GF(4)`, with `theta` acting trivially on the
/// new constants.
pub fn lift_hd(hd: &HdData<Gf2>) -> HdData<Gf4> {
    hd.map_base(|c| Gf4::from_bits(c.bits()))
}

/// `(sigma(x), sigma(z))`: coordinates of `eta (+) tau` for the generic
/// point `eta = (x, z)`.
pub fn translate_generators(tau: &ProjPoint<Gf4>) -> Result<(L4, L4)> {
    let eta = ProjPoint::affine(L4::x(), L4::z());
    match translated_op(&RL4, &eta, &lift_point(tau), Op::Add) {
        ProjPoint::Affine(a) => Ok((a.x, a.z)),
        ProjPoint::Infinity => Err(Error::Internal("generic translate is infinite".into())),
    }
}

/// Apply the automorphism determined by the images of `x` and `z`.
pub fn apply_translation(u: &L4, image: &(L4, L4)) -> Result<L4> {
    u.substitute(&image.0, &image.1)
}

/// `sigma_tau(theta^(i)(u)) = theta^(i)(sigma_tau(u))` for `u` in `{x, z}`
/// and `i <= n`.
pub fn check_id_automorphism(hd: &HdData<Gf4>, tau: &ProjPoint<Gf4>, n: usize) -> Result<Vec<CheckResult>> {
    let image = translate_generators(tau)?;
    let tag = point_to_text(tau).replace(' ', "");
    let mut out = Vec::new();
    for (name, g, img) in [("x", L4::x(), &image.0), ("z", L4::z(), &image.1)] {
        out.push(timed(format!("tau={tag}:{name}"), || {
            let run = || -> Result<_> {
                let rhs = hd.theta(img, n)?;
                for i in 0..=n {
                    let lhs = apply_translation(&hd.theta_coeff(&g, i)?, &image)?;
                    if &lhs != rhs.coeff(i) {
                        return Ok(fail(Some(i), None, format!("sigma({name})"), &lhs, rhs.coeff(i)));
                    }
                }
                Ok(pass())
            };
            run().unwrap_or_else(errored)
        }));
    }
    Ok(out)
}

/// `sigma_tau o sigma_tau' = sigma_(tau (+) tau')` on the generators for all
/// pairs of 3-torsion points.
pub fn check_action_composition() -> Result<Option<String>> {
    let pts = enumerate_3_torsion();
    let images = pts.iter().map(translate_generators).collect::<Result<Vec<_>>>()?;
    let index = |p: &ProjPoint<Gf4>| pts.iter().position(|q| q == p);
    let bad = (0..pts.len())
        .into_par_iter()
        .flat_map(|a| (0..pts.len()).into_par_iter().map(move |b| (a, b)))
        .map(|(a, b)| -> Result<Option<String>> {
            let sum = translated_op(&R4, &pts[a], &pts[b], Op::Add);
            let c = index(&sum).ok_or_else(|| Error::Internal("torsion not closed".into()))?;
            let composed = (
                apply_translation(&images[b].0, &images[a])?,
                apply_translation(&images[b].1, &images[a])?,
            );
            Ok((composed != images[c])
                .then(|| format!("{} then {}", point_to_text(&pts[a]), point_to_text(&pts[b]))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(bad.into_iter().flatten().next())
}

fn two_torsion_over<const M: u32>() -> Option<String> {
    let r = Coeffs::<Gf2m<M>>::new();
    let n = ProjPoint::neutral(&r);
    rational_points::<Gf2m<M>>()
        .into_iter()
        .find(|p| *p != n && mul_n(&r, p, 2) == n)
        .map(|p| format!("GF(2^{M}): {}", point_to_text(&p)))
}

/// `[2]P = (0,0)` forces `P = (0,0)` over GF(2^k) for `k <= k_max <= 8`.
pub fn no_rational_2_torsion(k_max: u32) -> Result<CheckResult> {
    if k_max > 8 {
        return Err(Error::PreconditionFailed(format!("k_max = {k_max} exceeds 8")));
    }
    Ok(timed(format!("two_torsion:k<={k_max}"), || {
        let found = (1..=k_max).find_map(|k| match k {
            1 => two_torsion_over::<1>(),
            2 => two_torsion_over::<2>(),
            3 => two_torsion_over::<3>(),
            4 => two_torsion_over::<4>(),
            5 => two_torsion_over::<5>(),
            6 => two_torsion_over::<6>(),
            7 => two_torsion_over::<7>(),
            _ => two_torsion_over::<8>(),
        });
        match found {
            None => pass(),
            Some(p) => (
                Status::Fail,
                None,
                Some(format!("nontrivial 2-torsion point {p}")),
            ),
        }
    }))
}

fn group_check() -> CheckResult {
    timed("points".into(), || {
        let pts = enumerate_3_torsion();
        let all = rational_points::<Gf4>();
        if pts.len() != 9 || all.len() != 9 {
            return (
                Status::Fail,
                None,
                Some(format!("{} points, {} of order dividing 3", all.len(), pts.len())),
            );
        }
        let n = ProjPoint::neutral(&R4);
        for p in &pts {
            if !p.is_on_curve(&R4) || !pts.contains(&translated_op(&R4, &n, p, Op::Sub)) {
                return (
                    Status::Fail,
                    None,
                    Some(format!("{} has no inverse", point_to_text(p))),
                );
            }
            for q in &pts {
                if !pts.contains(&translated_op(&R4, p, q, Op::Add)) {
                    return (Status::Fail, None, Some("not closed under addition".into()));
                }
            }
        }
        pass()
    })
}

/// Group structure, the action law, the absence of rational 2-torsion, and
/// the commutation of every translation with `theta` up to order `n`.
pub fn torsion_suite(hd: &HdData<Gf2>, n: usize) -> Result<Report> {
    let hd4 = lift_hd(hd);
    let mut checks = vec![group_check()];
    checks.push(timed("composition".into(), || match check_action_composition() {
        Ok(None) => pass(),
        Ok(Some(pair)) => (Status::Fail, None, Some(format!("action law fails for {pair}"))),
        Err(e) => errored(e),
    }));
    checks.push(no_rational_2_torsion(8)?);
    let per_tau = enumerate_3_torsion()
        .par_iter()
        .map(|tau| check_id_automorphism(&hd4, tau, n))
        .collect::<Result<Vec<_>>>()?;
    checks.extend(per_tau.into_iter().flatten());
    Ok(Report::new(Suite::Torsion, hd, checks))
}

/// Images of `x` and `z` under `sigma_tau`, rendered.
pub fn describe_translation(tau: &ProjPoint<Gf4>) -> Result<String> {
    let (x, z) = translate_generators(tau)?;
    Ok(format!("x -> {}, z -> {}", render_elem(&x), render_elem(&z)))
}
