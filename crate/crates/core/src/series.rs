//! Truncated power series `K[[T]] / T^(N+1)` over a characteristic-2 field.

use crate::algebra::field::Field;
use crate::error::{Error, Result};
use crate::function_field::FieldElem;

/// Power series truncated after `T^order`; always holds `order + 1` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tps<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Tps<K> {
    pub fn zero(order: usize) -> Self {
        Tps {
            coeffs: vec![K::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(K::one(), order)
    }

    pub fn constant(c: K, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Build from coefficients, padding with zeros or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<K>, order: usize) -> Self {
        coeffs.resize(order + 1, K::zero());
        Tps { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &K {
        &self.coeffs[m]
    }

    pub fn set_coeff(&mut self, m: usize, c: K) {
        self.coeffs[m] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Tps {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// Cauchy product, truncated.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![K::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    let p = a.mul(b);
                    out[i + j].add_assign(&p);
                }
            }
        }
        Ok(Tps { coeffs: out })
    }

    /// Characteristic-2 squaring: `(sum c_m T^m)^2 = sum c_m^2 T^(2m)`.
    pub fn square(&self) -> Self {
        let n = self.order();
        let mut out = vec![K::zero(); n + 1];
        for (m, c) in self.coeffs.iter().enumerate().take(n / 2 + 1) {
            out[2 * m] = c.square();
        }
        Tps { coeffs: out }
    }

    pub fn scale(&self, c: &K) -> Self {
        Tps {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplicative inverse by the recursive coefficient solve
    /// `b_k = c_0^-1 * sum_{i=1..k} c_i b_(k-i)`.
    pub fn inv(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].inv().map_err(|_| Error::NonUnitConstantTerm)?;
        let n = self.order();
        let mut out: Vec<K> = Vec::with_capacity(n + 1);
        out.push(c0inv.clone());
        for k in 1..=n {
            let mut acc = K::zero();
            for i in 1..=k {
                let c = &self.coeffs[i];
                if !c.is_zero() && !out[k - i].is_zero() {
                    acc.add_assign(&c.mul(&out[k - i]));
                }
            }
            out.push(if acc.is_zero() { acc } else { acc.mul(&c0inv) });
        }
        Ok(Tps { coeffs: out })
    }

    /// Long division `q_k = c_0^-1 (a_k - sum_{i=1..k} c_i q_(k-i))`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let c0inv = other.coeffs[0].inv().map_err(|_| Error::NonUnitConstantTerm)?;
        let n = self.order();
        let mut out: Vec<K> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                let c = &other.coeffs[i];
                if !c.is_zero() && !out[k - i].is_zero() {
                    acc.add_assign(&c.mul(&out[k - i]));
                }
            }
            out.push(if acc.is_zero() { acc } else { acc.mul(&c0inv) });
        }
        Ok(Tps { coeffs: out })
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Tps<L> {
        Tps {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Solve `Z^2 + Z = X^3` for `Z` with `Z(0) = z0`.
///
/// Coefficientwise `z_m = [T^m](X^3) + z_(m/2)^2` (the square term only for
/// even `m`). The result is re-checked against the defining equation.
pub fn solve_artin_schreier<F: Field>(
    xs: &Tps<FieldElem<F>>,
    z0: &FieldElem<F>,
) -> Result<Tps<FieldElem<F>>> {
    let x0 = xs.coeff(0);
    if x0.square().mul(x0) != z0.square().add(z0) {
        return Err(Error::BasePointNotOnCurve);
    }
    let cube = xs.square().mul(xs)?;
    let n = xs.order();
    let mut zs: Vec<FieldElem<F>> = Vec::with_capacity(n + 1);
    zs.push(z0.clone());
    for m in 1..=n {
        let mut c = cube.coeff(m).clone();
        if m % 2 == 0 {
            c.add_assign(&zs[m / 2].square());
        }
        zs.push(c);
    }
    let z = Tps { coeffs: zs };
    if z.square().add(&z)? != cube {
        return Err(Error::Internal("Artin-Schreier solution failed re-check".into()));
    }
    Ok(z)
}
