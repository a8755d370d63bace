use std::fmt::Debug;

use super::poly::Poly;
use crate::error::Result;

/// A field of characteristic 2.
///
/// Subtraction coincides with addition, so only `add` is provided. Elements
/// are always kept in canonical form, which makes `==` exact equality.
pub trait Field: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Product of two dense ascending coefficient slices. Types with a faster
    /// kernel (bit-packed F_2) override this.
    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        schoolbook_mul(a, b)
    }

    /// Monic gcd of two nonconstant polynomials when the coefficient type
    /// knows a shortcut; `None` falls back to Euclid.
    fn poly_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }
}

pub(crate) fn schoolbook_mul<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![K::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        if ai.is_one() {
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j].add_assign(bj);
                }
            }
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                let p = ai.mul(bj);
                out[i + j].add_assign(&p);
            }
        }
    }
    out
}
