//! Dense univariate polynomials over a characteristic-2 field.

use super::field::Field;
use super::lucas::binom_mod2;
use crate::error::{Error, Result};

/// Dense polynomial with ascending coefficients and no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `c * v^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Some((c, k)) if the polynomial is exactly `c * v^k`.
    pub fn as_monomial(&self) -> Option<(&K, usize)> {
        let k = self.order()?;
        (k + 1 == self.coeffs.len()).then(|| (&self.coeffs[k], k))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            c.add_assign(s);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        Self::from_coeffs(K::poly_mul(&self.coeffs, &other.coeffs))
    }

    /// Squaring in characteristic 2: (sum c_i v^i)^2 = sum c_i^2 v^(2i).
    pub fn square(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); 2 * self.coeffs.len() - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.square();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `v^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `v^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        if let Some((c, k)) = divisor.as_monomial() {
            let ci = c.inv()?;
            let q = Self::from_coeffs(self.coeffs[k..].iter().map(|a| a.mul(&ci)).collect());
            let r = Self::from_coeffs(self.coeffs[..k].to_vec());
            return Ok((q, r));
        }
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let q = top.mul(&lead_inv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    let p = q.mul(d);
                    rem[i + j].add_assign(&p);
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact division; the caller guarantees divisibility.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        // monomial fast path: gcd(c v^k, f) = v^min(k, ord f)
        if let Some((_, k)) = self.as_monomial() {
            return Self::monomial(K::one(), k.min(other.order().unwrap_or(0)));
        }
        if let Some((_, k)) = other.as_monomial() {
            return Self::monomial(K::one(), k.min(self.order().unwrap_or(0)));
        }
        if let Some(g) = K::poly_gcd(self, other) {
            return g;
        }
        // strip the common power of v first, it is frequent in practice
        let common = self.order().unwrap_or(0).min(other.order().unwrap_or(0));
        let (mut a, mut b) = if common > 0 {
            (self.shift_down(common), other.shift_down(common))
        } else {
            (self.clone(), other.clone())
        };
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero");
            a = b;
            b = r;
        }
        a.monic().shift_up(common)
    }

    pub fn eval(&self, at: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Hasse derivative of order `k`: sum_i C(i, k) c_i v^(i - k).
    pub fn hasse(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Self::zero();
        }
        Self::from_coeffs(
            (k..self.coeffs.len())
                .map(|i| {
                    if binom_mod2(i as u64, k as u64) {
                        self.coeffs[i].clone()
                    } else {
                        K::zero()
                    }
                })
                .collect(),
        )
    }

    /// Substitute `v -> v^s`.
    pub fn stretch(&self, s: usize) -> Self {
        if s == 1 || self.is_constant() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(); (self.coeffs.len() - 1) * s + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * s] = c.clone();
        }
        Poly { coeffs }
    }

    /// Inverse of `stretch`; None if some exponent is not divisible by `s`.
    pub fn compress(&self, s: usize) -> Option<Self> {
        if s == 1 {
            return Some(self.clone());
        }
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % s != 0 && !c.is_zero())
        {
            return None;
        }
        Some(Poly {
            coeffs: self.coeffs.iter().step_by(s).cloned().collect(),
        })
    }

    /// Split into (even, odd) parts `p0, p1` with `p = p0(v^2) + v p1(v^2)`.
    pub fn even_odd(&self) -> (Self, Self) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (Self::from_coeffs(even), Self::from_coeffs(odd))
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}
