//! Arithmetic in `L = F(t)(x)[z] / (z^2 + z + x^3)`.
//!
//! Elements are `a + b z` with `a, b` in the tower `F(t)(x)`. Every product is
//! reduced with `z^2 = z + x^3`, so the representation is canonical.

use crate::algebra::field::Field;
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::{RatT, Tower};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct FieldElem<F> {
    a: Tower<F>,
    b: Tower<F>,
}

/// `u = alpha + beta z^2` with `alpha, beta` in `F(t)(x^2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct L2CtDecomposition<F> {
    pub alpha: Tower<F>,
    pub beta: Tower<F>,
}

fn x_cubed<F: Field>(r: &Tower<F>) -> Tower<F> {
    r.mul_var_pow(3)
}

impl<F: Field> FieldElem<F> {
    pub fn new(a: Tower<F>, b: Tower<F>) -> Self {
        FieldElem { a, b }
    }

    pub fn a(&self) -> &Tower<F> {
        &self.a
    }

    pub fn b(&self) -> &Tower<F> {
        &self.b
    }

    pub fn from_tower(a: Tower<F>) -> Self {
        FieldElem { a, b: Tower::zero() }
    }

    pub fn from_ct(c: RatT<F>) -> Self {
        Self::from_tower(Tower::constant(c))
    }

    pub fn constant(c: F) -> Self {
        Self::from_ct(RatT::constant(c))
    }

    pub fn t() -> Self {
        Self::from_ct(RatT::var())
    }

    pub fn x() -> Self {
        Self::from_tower(Tower::var())
    }

    pub fn z() -> Self {
        FieldElem {
            a: Tower::zero(),
            b: Tower::one(),
        }
    }

    pub fn is_z_free(&self) -> bool {
        self.b.is_zero()
    }

    /// Membership in `F(t)`: `b = 0` and `a` constant in `x`.
    pub fn is_in_ct(&self) -> bool {
        self.b.is_zero() && self.a.is_constant()
    }

    pub fn as_ct(&self) -> Option<RatT<F>> {
        if self.b.is_zero() {
            self.a.as_constant()
        } else {
            None
        }
    }

    /// Writes `u = A + B z = (A + B x^3) + B z^2`; returns the pieces when both
    /// lie in `F(t)(x^2)`.
    pub fn l2ct_decompose(&self) -> Result<L2CtDecomposition<F>> {
        let alpha = self.a.add(&x_cubed(&self.b));
        if self.b.parity_split_test() && alpha.parity_split_test() {
            Ok(L2CtDecomposition {
                alpha,
                beta: self.b.clone(),
            })
        } else {
            Err(Error::NotInSubfield("L^2 F(t)".into()))
        }
    }

    /// Membership in `L^2 F(t) = F(t)(x^2)[z^2]`.
    pub fn is_in_l2ct(&self) -> bool {
        self.l2ct_decompose().is_ok()
    }

    /// Apply the field map fixing `F(t)` and sending `x, z` to the given values.
    pub fn substitute(&self, x_val: &Self, z_val: &Self) -> Result<Self> {
        // x_val = (n0 + n1 z) / q with q in F(t)[x]; numerators and
        // denominators are evaluated homogeneously in F(t)[x][z] and only
        // the final quotients are reduced
        let (da, db) = (x_val.a.den(), x_val.b.den());
        let q = da.mul(db).div_exact(&da.gcd(db));
        let num = ZPoly(
            x_val.a.num().mul(&q.div_exact(da)),
            x_val.b.num().mul(&q.div_exact(db)),
        );
        let mut qpow = vec![ZPoly(Poly::one(), Poly::zero()), ZPoly(q, Poly::zero())];
        let mut eval = |r: &Tower<F>| -> Result<Self> {
            let (hn, n) = ZPoly::homogeneous(r.num(), &num, &mut qpow);
            let (hd, d) = ZPoly::homogeneous(r.den(), &num, &mut qpow);
            let (hn, hd) = if d >= n {
                (hn.mul(&qpow[d - n]), hd)
            } else {
                (hn, hd.mul(&qpow[n - d]))
            };
            hn.into_elem().div(&hd.into_elem())
        };
        let a = eval(&self.a)?;
        if self.b.is_zero() {
            return Ok(a);
        }
        Ok(a.add(&eval(&self.b)?.mul(z_val)))
    }

    /// Change of constant field along an embedding `F -> G`.
    pub fn map_base<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> FieldElem<G> {
        let lift = |r: &Tower<F>| r.map(|c| c.map(f));
        FieldElem {
            a: lift(&self.a),
            b: lift(&self.b),
        }
    }

    /// Norm down to `F(t)(x)`: `a^2 + a b + b^2 x^3`.
    pub fn norm(&self) -> Tower<F> {
        self.a
            .square()
            .add(&self.a.mul(&self.b))
            .add(&x_cubed(&self.b.square()))
    }
}

impl<F: Field> Field for FieldElem<F> {
    fn zero() -> Self {
        FieldElem {
            a: Tower::zero(),
            b: Tower::zero(),
        }
    }

    fn one() -> Self {
        FieldElem {
            a: Tower::one(),
            b: Tower::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        FieldElem {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
        }
    }

    /// `(a1 + b1 z)(a2 + b2 z) = (a1 a2 + b1 b2 x^3) + (a1 b2 + a2 b1 + b1 b2) z`,
    /// with three tower products.
    fn mul(&self, other: &Self) -> Self {
        if self.b.is_zero() {
            return FieldElem {
                a: self.a.mul(&other.a),
                b: self.a.mul(&other.b),
            };
        }
        if other.b.is_zero() {
            return FieldElem {
                a: self.a.mul(&other.a),
                b: self.b.mul(&other.a),
            };
        }
        let aa = self.a.mul(&other.a);
        let bb = self.b.mul(&other.b);
        let cross = self.a.add(&self.b).mul(&other.a.add(&other.b));
        FieldElem {
            a: aa.add(&x_cubed(&bb)),
            b: cross.add(&aa),
        }
    }

    /// `(a + b z)^2 = (a^2 + b^2 x^3) + b^2 z`.
    fn square(&self) -> Self {
        let bb = self.b.square();
        FieldElem {
            a: self.a.square().add(&x_cubed(&bb)),
            b: bb,
        }
    }

    /// `(a + b z)^-1 = ((a + b) + b z) / (a^2 + a b + b^2 x^3)`.
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_tower(self.a.inv()?));
        }
        let n = self.norm();
        let ninv = n
            .inv()
            .map_err(|_| Error::Internal("vanishing norm of a nonzero element".into()))?;
        Ok(FieldElem {
            a: self.a.add(&self.b).mul(&ninv),
            b: self.b.mul(&ninv),
        })
    }
}

/// `p0 + p1 z` with `p0, p1` in `F(t)[x]`, kept unreduced.
#[derive(Clone)]
struct ZPoly<F>(Poly<RatT<F>>, Poly<RatT<F>>);

impl<F: Field> ZPoly<F> {
    fn add(&self, o: &Self) -> Self {
        ZPoly(self.0.add(&o.0), self.1.add(&o.1))
    }

    fn mul(&self, o: &Self) -> Self {
        if self.1.is_zero() {
            return ZPoly(self.0.mul(&o.0), self.0.mul(&o.1));
        }
        if o.1.is_zero() {
            return ZPoly(self.0.mul(&o.0), self.1.mul(&o.0));
        }
        let b1b2 = self.1.mul(&o.1);
        ZPoly(
            self.0.mul(&o.0).add(&b1b2.shift_up(3)),
            self.0.mul(&o.1).add(&self.1.mul(&o.0)).add(&b1b2),
        )
    }

    fn scale(&self, c: &RatT<F>) -> Self {
        ZPoly(self.0.scale(c), self.1.scale(c))
    }

    /// `sum c_k num^k q^(n-k)` for `poly = sum c_k x^k` of degree `n`;
    /// `qpow[1]` holds `q` and the table is extended as needed.
    fn homogeneous(poly: &Poly<RatT<F>>, num: &Self, qpow: &mut Vec<Self>) -> (Self, usize) {
        let n = poly.degree().unwrap_or(0);
        while qpow.len() <= n {
            let next = qpow[qpow.len() - 1].mul(&qpow[1]);
            qpow.push(next);
        }
        let mut acc = ZPoly(Poly::zero(), Poly::zero());
        for (k, c) in poly.coeffs().iter().enumerate().rev() {
            acc = acc.mul(num);
            if !c.is_zero() {
                acc = acc.add(&qpow[n - k].scale(c));
            }
        }
        (acc, n)
    }

    fn into_elem(self) -> FieldElem<F> {
        FieldElem::new(Tower::from_poly(self.0), Tower::from_poly(self.1))
    }
}
