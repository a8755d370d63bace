//! Block-recursive construction of iterative derivations on `L` whose
//! restriction to the curve commutes with the group law.

use rayon::prelude::*;

use crate::algebra::field::Field;
use crate::algebra::gf::BinaryField;
use crate::algebra::ratfunc::RatT;
use crate::algebra::text::{parse_ratfunc, render_ratfunc};
use crate::ec::{sub_chord, AffinePoint, SeriesRing};
use crate::error::{Error, Result};
use crate::function_field::FieldElem;
use crate::hd::HdData;
use crate::series::Tps;

/// Free summands `c_l(s)`, substituted as `s = t^(2^(l+1))`. Missing entries
/// are zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ChoiceSpec<F> {
    entries: Vec<RatT<F>>,
}

impl<F: Field> ChoiceSpec<F> {
    pub fn new(entries: Vec<RatT<F>>) -> Self {
        ChoiceSpec { entries }
    }

    pub fn zero() -> Self {
        ChoiceSpec { entries: vec![] }
    }

    /// `c_0 = s`, all other blocks zero, so that `xi_1 = t^2`.
    pub fn sample() -> Self {
        ChoiceSpec {
            entries: vec![RatT::var()],
        }
    }

    pub fn entries(&self) -> &[RatT<F>] {
        &self.entries
    }

    pub fn entry(&self, block: usize) -> RatT<F> {
        self.entries.get(block).cloned().unwrap_or_else(RatT::zero)
    }

    /// `c_l(t^(2^(l+1)))` as an element of `L`.
    pub fn substituted(&self, block: usize) -> Result<FieldElem<F>> {
        let stride = 1usize << (block + 1);
        let c = self.entry(block).stretch(stride);
        if !c.in_power_subfield(block as u32 + 1) {
            return Err(Error::ChoiceNotInSubfield { block, stride });
        }
        Ok(FieldElem::from_ct(c))
    }
}

impl<F: BinaryField> ChoiceSpec<F> {
    /// Parse fraction strings in `s`, one per block.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let entries = items
            .iter()
            .map(|s| parse_ratfunc(s.as_ref(), "s"))
            .collect::<Result<_>>()?;
        Ok(ChoiceSpec { entries })
    }

    /// One rendered entry per block up to `blocks`.
    pub fn render(&self, blocks: usize) -> Vec<String> {
        (0..blocks.max(self.entries.len()))
            .map(|l| render_ratfunc(&self.entry(l), "s"))
            .collect()
    }
}

/// `f(T), g(T)`: coordinates of `eta (-) theta_*(eta)` for the generic point
/// `eta = (x, z)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferenceSeries<F> {
    pub f: Tps<FieldElem<F>>,
    pub g: Tps<FieldElem<F>>,
}

pub fn compute_f_g<F: Field>(hd: &HdData<F>, order: usize) -> Result<DifferenceSeries<F>> {
    if order > hd.order() {
        return Err(Error::OrderExceeded {
            requested: order,
            available: hd.order(),
        });
    }
    let ring = SeriesRing::new(order);
    let eta = AffinePoint::new_unchecked(
        Tps::constant(FieldElem::x(), order),
        Tps::constant(FieldElem::z(), order),
    );
    let moved = AffinePoint::new_unchecked(hd.x_series(order), hd.z_series(order));
    let d = sub_chord(&ring, &eta, &moved).map_err(|e| match e {
        Error::NonInvertibleDenominator(_) => Error::NonUnitConstantTerm,
        e => e,
    })?;
    if !d.is_on_curve(&ring) || !d.x.coeff(0).is_zero() {
        return Err(Error::Internal(
            "difference series is not a point over (0,0)".into(),
        ));
    }
    Ok(DifferenceSeries { f: d.x, g: d.z })
}

/// `Q(T) = (theta(z) - z/(1+z)) / (theta(x) - x/(1+z))` to `order`.
fn q_series<F: Field>(hd: &HdData<F>, order: usize) -> Result<Tps<FieldElem<F>>> {
    let w = FieldElem::one().add(&FieldElem::z()).inv()?;
    let xs = FieldElem::x().mul(&w);
    let zs = FieldElem::z().mul(&w);
    let num = hd.z_series(order).add(&Tps::constant(zs, order))?;
    let den = hd.x_series(order).add(&Tps::constant(xs, order))?;
    num.div(&den)
}

/// The element whose square corrects `f_(2^l)` away from `xi_(2^l)`.
pub fn ftilde<F: Field>(hd: &HdData<F>, block: usize) -> Result<FieldElem<F>> {
    if block == 0 {
        return Ok(FieldElem::zero());
    }
    let half = 1usize << (block - 1);
    if hd.order() < half {
        return Err(Error::InsufficientData {
            needed: half,
            have: hd.order(),
        });
    }
    Ok(q_series(hd, half)?.coeff(half).clone())
}

fn t_pow<F: Field>(m: usize) -> FieldElem<F> {
    FieldElem::from_ct(RatT::var().mul_var_pow(m - 1))
}

/// `theta^(2^l)(xi_m)` for `0 < m < 2^l`.
fn propagated<F: Field>(hd: &HdData<F>, block: usize) -> Result<Vec<FieldElem<F>>> {
    let p = 1usize << block;
    if p == 1 {
        return Ok(vec![]);
    }
    let ev = hd.protected_evaluator(p)?;
    (1..p)
        .into_par_iter()
        .map(|m| Ok(ev.apply_l2ct(hd.xi(m), p)?.coeff(p).clone()))
        .collect()
}

/// `sum_{0<m<2^l} theta^(2^l)(xi_m) t^m`.
fn weighted_sum<F: Field>(props: &[FieldElem<F>]) -> FieldElem<F> {
    props
        .iter()
        .enumerate()
        .filter(|(_, u)| !u.is_zero())
        .fold(FieldElem::zero(), |acc, (i, u)| acc.add(&u.mul(&t_pow(i + 1))))
}

/// The block formula for `xi_(2^l)` with zero free summand.
fn canonical_from<F: Field>(hd: &HdData<F>, block: usize, props: &[FieldElem<F>]) -> Result<FieldElem<F>> {
    let p = 1usize << block;
    let mut out = weighted_sum(props);
    let ft = ftilde(hd, block)?;
    if !ft.is_zero() {
        let shifts = hd.theta(&ft, p - 1)?;
        let inner = shifts
            .coeffs()
            .iter()
            .enumerate()
            .fold(FieldElem::zero(), |acc, (m, u)| {
                if u.is_zero() {
                    acc
                } else if m == 0 {
                    acc.add(u)
                } else {
                    acc.add(&u.mul(&t_pow(m)))
                }
            });
        out = out.add(&inner.square());
    }
    Ok(out)
}

fn check_block_input<F: Field>(hd: &HdData<F>, block: usize) -> Result<()> {
    let need = (1usize << block) - 1;
    if hd.order() < need {
        return Err(Error::InsufficientData {
            needed: need,
            have: hd.order(),
        });
    }
    Ok(())
}

/// The canonical `xi_(2^l)` given `xi_1 .. xi_(2^l - 1)`.
pub fn canonical_xi<F: Field>(hd: &HdData<F>, block: usize) -> Result<FieldElem<F>> {
    check_block_input(hd, block)?;
    let hd = hd.truncated((1 << block) - 1);
    let props = propagated(&hd, block)?;
    canonical_from(&hd, block, &props)
}

/// Extend a table holding `xi_1 .. xi_(2^l - 1)` through `xi_(2^(l+1) - 1)`,
/// or through `limit` if smaller.
pub fn extend_block<F: Field>(
    hd: &HdData<F>,
    block: usize,
    choices: &ChoiceSpec<F>,
    limit: usize,
) -> Result<HdData<F>> {
    check_block_input(hd, block)?;
    let p = 1usize << block;
    let hd = hd.truncated(p - 1);
    let props = propagated(&hd, block)?;
    let head = canonical_from(&hd, block, &props)?.add(&choices.substituted(block)?);

    let mut xi = hd.xi_table().to_vec();
    xi.push(head);
    xi.extend(props.into_iter().take(limit.saturating_sub(p)));
    xi.truncate(limit.max(p - 1));
    for (i, u) in xi.iter().enumerate().skip(p - 1) {
        if !u.is_in_l2ct() {
            return Err(Error::MembershipViolation { index: i + 1 });
        }
    }
    HdData::from_table_unchecked(xi, hd.choices().to_vec())
}

/// Build `xi_1 .. xi_n` block by block.
pub fn construct<F: BinaryField>(n: usize, choices: &ChoiceSpec<F>) -> Result<HdData<F>> {
    let mut hd = HdData::trivial(0);
    let mut block = 0;
    while hd.order() < n {
        hd = extend_block(&hd, block, choices, n)?;
        block += 1;
    }
    HdData::from_table(hd.xi_table().to_vec(), choices.render(block))
}

/// Membership of `candidate` in the coset of admissible `xi_(2^l)` given
/// `xi_1 .. xi_(2^l - 1)`: after adding `sum theta^(2^l)(xi_m) t^m` it must
/// lie in `L^2 F(t)` and be killed by `theta^(2^j)` for all `j <= l`.
pub fn check_choice_coset<F: Field>(hd: &HdData<F>, block: usize, candidate: &FieldElem<F>) -> Result<bool> {
    check_block_input(hd, block)?;
    let p = 1usize << block;
    let hd = hd.truncated(p - 1);
    let d = candidate.add(&weighted_sum(&propagated(&hd, block)?));
    if !d.is_in_l2ct() {
        return Ok(false);
    }
    if block > 0 {
        let shifts = hd.theta(&d, p / 2)?;
        if (0..block).any(|j| !shifts.coeff(1 << j).is_zero()) {
            return Ok(false);
        }
    }
    Ok(hd.theta_coeff_protected(&d, p)?.is_zero())
}
