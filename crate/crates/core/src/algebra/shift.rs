//! The iterative derivation with respect to `t` on `F(t)`: `r(t) -> r(t + T)`.

use super::field::Field;
use super::poly::Poly;
use super::ratfunc::RatT;
use crate::series::Tps;

/// Series of `p(t + T)`; coefficient `k` is the Hasse derivative `D^(k) p`.
pub fn shift_poly<F: Field>(p: &Poly<F>, order: usize) -> Vec<Poly<F>> {
    (0..=order).map(|k| p.hasse(k)).collect()
}

/// Truncation of `r(t + T)` modulo `T^(order+1)`.
pub fn taylor_shift<F: Field>(r: &RatT<F>, order: usize) -> Tps<RatT<F>> {
    let lift = |p: &Poly<F>| {
        Tps::from_coeffs(
            shift_poly(p, order).into_iter().map(RatT::from_poly).collect(),
            order,
        )
    };
    let num = lift(r.num());
    if r.den().is_one() {
        return num;
    }
    let den = lift(r.den());
    // constant term den(t) is nonzero, so the inverse exists
    num.div(&den)
        .expect("denominator series has a unit constant term")
}
