//! Normalized rational functions `num / den` over a characteristic-2 field.

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A reduced fraction: `gcd(num, den) = 1`, `den` monic, zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc<K> {
    num: Poly<K>,
    den: Poly<K>,
}

/// Elements of `F(t)`.
pub type RatT<F> = RatFunc<F>;
/// Elements of `F(t)(x)`: rational functions in `x` over `F(t)`.
pub type Tower<F> = RatFunc<RatFunc<F>>;

impl<K: Field> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<K>, den: Poly<K>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            return Self::normalize_lead(num, den);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        Self::normalize_lead(num, den)
    }

    /// Assumes coprime input; scales to a monic denominator.
    fn normalize_lead(num: Poly<K>, den: Poly<K>) -> Self {
        let lead = den.lead().expect("nonzero denominator");
        if lead.is_one() {
            return RatFunc { num, den };
        }
        let li = lead.inv().expect("nonzero");
        RatFunc {
            num: num.scale(&li),
            den: den.scale(&li),
        }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable of this level.
    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// Constant in the variable of this level.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<K> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// Multiply by `v^k` without a general gcd: `num` and `den` are coprime,
    /// so only the power of `v` dividing `den` can cancel.
    pub fn mul_var_pow(&self, k: usize) -> Self {
        if self.num.is_zero() || k == 0 {
            return self.clone();
        }
        let cancel = k.min(self.den.order().unwrap_or(0));
        RatFunc {
            num: self.num.shift_up(k - cancel),
            den: self.den.shift_down(cancel),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitute `v -> v^s`. Coprimality survives the substitution.
    pub fn stretch(&self, s: usize) -> Self {
        RatFunc {
            num: self.num.stretch(s),
            den: self.den.stretch(s),
        }
    }

    /// Inverse of `stretch`: Some(r) with `r(v^s) = self` when `self` lies in `K(v^s)`.
    pub fn compress(&self, s: usize) -> Option<Self> {
        Some(RatFunc {
            num: self.num.compress(s)?,
            den: self.den.compress(s)?,
        })
    }

    /// Membership in `K(v^2)`: with `num = p0 + v p1` and `den = q0 + v q1`
    /// split into even and odd parts, the fraction lies in `K(v^2)` iff
    /// `p1 q0 = p0 q1`.
    pub fn parity_split_test(&self) -> bool {
        let (p0, p1) = self.num.even_odd();
        let (q0, q1) = self.den.even_odd();
        p1.mul(&q0) == p0.mul(&q1)
    }

    /// Membership in `K(v^(2^k))`, by iterating the parity test.
    pub fn in_power_subfield(&self, k: u32) -> bool {
        let mut cur = self.clone();
        for _ in 0..k {
            if !cur.parity_split_test() {
                return false;
            }
            match cur.compress(2) {
                Some(c) => cur = c,
                None => return false,
            }
        }
        true
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> RatFunc<L> {
        RatFunc::reduce(self.num.map(&f), self.den.map(&f))
    }

    pub fn eval(&self, at: &K) -> Result<K> {
        self.num.eval(at).div(&self.den.eval(at))
    }
}

impl<K: Field> Field for RatFunc<K> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: self.num.mul(&other.den).add(&other.num),
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            return RatFunc {
                num: other.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        // a/b + c/d with g = gcd(b, d): (a d' + c b') / (b' d' g), then only
        // factors of g can cancel.
        let g = self.den.gcd(&other.den);
        let b1 = self.den.div_exact(&g);
        let d1 = other.den.div_exact(&g);
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        if g.is_one() {
            return RatFunc {
                num,
                den: b1.mul(&d1),
            };
        }
        let h = num.gcd(&g);
        let num = num.div_exact(&h);
        let g = g.div_exact(&h);
        Self::normalize_lead(num, b1.mul(&d1).mul(&g))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // cross cancellation keeps the product reduced
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        Self::normalize_lead(num, den)
    }

    fn square(&self) -> Self {
        RatFunc {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }

    /// When one side has coefficients free of the inner variable, its
    /// divisors are too (`K` is algebraically closed in `K(v)`), so the gcd
    /// is taken over `K` against every `v`-slice of the other side.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        let constants = |p: &Poly<Self>| -> Option<Poly<K>> {
            p.coeffs()
                .iter()
                .map(Self::as_constant)
                .collect::<Option<Vec<_>>>()
                .map(Poly::from_coeffs)
        };
        let (mut g, other) = match (constants(a), constants(b)) {
            (Some(c), _) => (c, b),
            (None, Some(c)) => (c, a),
            (None, None) => return None,
        };
        let lcm = other.coeffs().iter().fold(Poly::one(), |l: Poly<K>, r| {
            l.mul(&r.den).div_exact(&l.gcd(&r.den))
        });
        let cleared: Vec<Poly<K>> = other
            .coeffs()
            .iter()
            .map(|r| r.num.mul(&lcm.div_exact(&r.den)))
            .collect();
        let height = cleared.iter().filter_map(Poly::degree).max().unwrap_or(0);
        for j in 0..=height {
            if g.is_one() {
                break;
            }
            let slice = Poly::from_coeffs(cleared.iter().map(|p| p.coeff(j)).collect());
            g = g.gcd(&slice);
        }
        Some(Poly::from_coeffs(
            g.into_coeffs().into_iter().map(Self::constant).collect(),
        ))
    }
}
