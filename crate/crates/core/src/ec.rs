//! The curve `x^3 = z^2 + z` with neutral element `(0,0)`.
//!
//! Two independent group laws live here: the explicit difference formula
//! ([`sub_chord`]) and the ordinary chord-tangent law on `Y^2 + Y = X^3`
//! with neutral element at infinity ([`std_complete_law`]), translated so
//! that `(0,0)` becomes neutral ([`translated_op`]).

use std::fmt::Debug;
use std::marker::PhantomData;

use crate::algebra::field::Field;
use crate::algebra::gf::BinaryField;
use crate::error::{Error, Result};
use crate::series::Tps;

/// Coefficient ring for point coordinates.
pub trait Ring: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn cube(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.square(a), a)
    }
}

/// Rings in which every nonzero element is a unit.
pub trait FieldRing: Ring {}

/// A [`Field`] viewed as a coefficient ring.
pub struct Coeffs<K>(PhantomData<K>);

impl<K> Coeffs<K> {
    pub const fn new() -> Self {
        Coeffs(PhantomData)
    }
}

impl<K> Default for Coeffs<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Field> Ring for Coeffs<K> {
    type Elem = K;

    fn zero(&self) -> K {
        K::zero()
    }
    fn one(&self) -> K {
        K::one()
    }
    fn add(&self, a: &K, b: &K) -> K {
        a.add(b)
    }
    fn mul(&self, a: &K, b: &K) -> K {
        a.mul(b)
    }
    fn inv(&self, a: &K) -> Option<K> {
        a.inv().ok()
    }
    fn is_zero(&self, a: &K) -> bool {
        a.is_zero()
    }
    fn square(&self, a: &K) -> K {
        a.square()
    }
}

impl<K: Field> FieldRing for Coeffs<K> {}

/// Truncated power series `K[[T]] / T^(order+1)`.
pub struct SeriesRing<K> {
    order: usize,
    _k: PhantomData<K>,
}

impl<K> SeriesRing<K> {
    pub fn new(order: usize) -> Self {
        SeriesRing {
            order,
            _k: PhantomData,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

impl<K: Field> Ring for SeriesRing<K> {
    type Elem = Tps<K>;

    fn zero(&self) -> Tps<K> {
        Tps::zero(self.order)
    }
    fn one(&self) -> Tps<K> {
        Tps::one(self.order)
    }
    fn add(&self, a: &Tps<K>, b: &Tps<K>) -> Tps<K> {
        a.add(b).expect("series of one ring share an order")
    }
    fn mul(&self, a: &Tps<K>, b: &Tps<K>) -> Tps<K> {
        a.mul(b).expect("series of one ring share an order")
    }
    fn inv(&self, a: &Tps<K>) -> Option<Tps<K>> {
        a.inv().ok()
    }
    fn is_zero(&self, a: &Tps<K>) -> bool {
        a.is_zero()
    }
    fn square(&self, a: &Tps<K>) -> Tps<K> {
        a.square()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct AffinePoint<E> {
    pub x: E,
    pub z: E,
}

/// A point of the projective closure: affine or the point at infinity.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum ProjPoint<E> {
    Infinity,
    Affine(AffinePoint<E>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Op {
    Add,
    Sub,
}

pub fn on_curve<R: Ring>(r: &R, x: &R::Elem, z: &R::Elem) -> bool {
    r.cube(x) == r.add(&r.square(z), z)
}

impl<E: Clone + PartialEq + Debug> AffinePoint<E> {
    /// Checked constructor.
    pub fn new<R: Ring<Elem = E>>(r: &R, x: E, z: E) -> Result<Self> {
        if !on_curve(r, &x, &z) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(AffinePoint { x, z })
    }

    pub fn new_unchecked(x: E, z: E) -> Self {
        AffinePoint { x, z }
    }

    pub fn neutral<R: Ring<Elem = E>>(r: &R) -> Self {
        AffinePoint {
            x: r.zero(),
            z: r.zero(),
        }
    }

    pub fn is_on_curve<R: Ring<Elem = E>>(&self, r: &R) -> bool {
        on_curve(r, &self.x, &self.z)
    }
}

impl<E: Clone + PartialEq + Debug> ProjPoint<E> {
    pub fn affine(x: E, z: E) -> Self {
        ProjPoint::Affine(AffinePoint { x, z })
    }

    /// The neutral element `(0,0)` of the translated law.
    pub fn neutral<R: Ring<Elem = E>>(r: &R) -> Self {
        ProjPoint::Affine(AffinePoint::neutral(r))
    }

    pub fn as_affine(&self) -> Option<&AffinePoint<E>> {
        match self {
            ProjPoint::Affine(p) => Some(p),
            ProjPoint::Infinity => None,
        }
    }

    pub fn is_on_curve<R: Ring<Elem = E>>(&self, r: &R) -> bool {
        match self {
            ProjPoint::Infinity => true,
            ProjPoint::Affine(p) => p.is_on_curve(r),
        }
    }
}

fn one_plus_z_inv<R: Ring>(r: &R, p: &AffinePoint<R::Elem>) -> Result<R::Elem> {
    r.inv(&r.add(&r.one(), &p.z))
        .ok_or(Error::NonInvertibleDenominator("1 + z"))
}

/// `(x/(1+z), z/(1+z))`, the inverse under the law with neutral `(0,0)`.
pub fn neg<R: Ring>(r: &R, p: &AffinePoint<R::Elem>) -> Result<AffinePoint<R::Elem>> {
    let w = one_plus_z_inv(r, p)?;
    Ok(AffinePoint {
        x: r.mul(&p.x, &w),
        z: r.mul(&p.z, &w),
    })
}

/// `P1 (-) P2`: the third intersection of the curve with the line through
/// `P2` and the inverse of `P1`.
pub fn sub_chord<R: Ring>(
    r: &R,
    p1: &AffinePoint<R::Elem>,
    p2: &AffinePoint<R::Elem>,
) -> Result<AffinePoint<R::Elem>> {
    let n1 = neg(r, p1)?;
    let dx = r.add(&p2.x, &n1.x);
    let lambda = r.mul(
        &r.add(&p2.z, &n1.z),
        &r.inv(&dx)
            .ok_or(Error::NonInvertibleDenominator("x2 - x1/(1+z1)"))?,
    );
    let x = r.add(&r.add(&r.square(&lambda), &p2.x), &n1.x);
    let z = r.add(&r.mul(&lambda, &r.add(&x, &p2.x)), &p2.z);
    Ok(AffinePoint { x, z })
}

/// Negation for the law with neutral element at infinity.
pub fn std_neg<R: Ring>(r: &R, p: &ProjPoint<R::Elem>) -> ProjPoint<R::Elem> {
    match p {
        ProjPoint::Infinity => ProjPoint::Infinity,
        ProjPoint::Affine(a) => ProjPoint::affine(a.x.clone(), r.add(&a.z, &r.one())),
    }
}

/// Chord-tangent addition on `Y^2 + Y = X^3` with neutral element at infinity.
pub fn std_complete_law<R: FieldRing>(
    r: &R,
    p: &ProjPoint<R::Elem>,
    q: &ProjPoint<R::Elem>,
) -> ProjPoint<R::Elem> {
    let (a, b) = match (p, q) {
        (ProjPoint::Infinity, _) => return q.clone(),
        (_, ProjPoint::Infinity) => return p.clone(),
        (ProjPoint::Affine(a), ProjPoint::Affine(b)) => (a, b),
    };
    let dx = r.add(&a.x, &b.x);
    let lambda = if r.is_zero(&dx) {
        if a.z != b.z {
            // (x, y) and (x, y + 1) lie on one vertical line
            return ProjPoint::Infinity;
        }
        // tangent slope 3X^2 / (2Y + 1) = X^2
        r.square(&a.x)
    } else {
        let dz = r.add(&a.z, &b.z);
        r.mul(&dz, &r.inv(&dx).expect("nonzero elements of a field are units"))
    };
    let x3 = r.add(&r.add(&r.square(&lambda), &a.x), &b.x);
    let y3 = r.add(&r.add(&r.mul(&lambda, &r.add(&a.x, &x3)), &a.z), &r.one());
    ProjPoint::affine(x3, y3)
}

/// The law with neutral `(0,0)`: `P + Q - N` or `P - Q + N` in the standard
/// law, where `N = (0,0)`.
pub fn translated_op<R: FieldRing>(
    r: &R,
    p: &ProjPoint<R::Elem>,
    q: &ProjPoint<R::Elem>,
    op: Op,
) -> ProjPoint<R::Elem> {
    let n = ProjPoint::neutral(r);
    match op {
        Op::Add => std_complete_law(r, &std_complete_law(r, p, q), &std_neg(r, &n)),
        Op::Sub => std_complete_law(r, &std_complete_law(r, p, &std_neg(r, q)), &n),
    }
}

/// `[n]P` for the law with neutral `(0,0)`; `[0]P = (0,0)`.
pub fn mul_n<R: FieldRing>(r: &R, p: &ProjPoint<R::Elem>, n: u64) -> ProjPoint<R::Elem> {
    let mut acc = ProjPoint::neutral(r);
    let mut base = p.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            acc = translated_op(r, &acc, &base, Op::Add);
        }
        k >>= 1;
        if k > 0 {
            base = translated_op(r, &base, &base, Op::Add);
        }
    }
    acc
}

/// All points of the projective curve over a finite binary field, in a
/// fixed order: infinity first, then affine points by `(x, z)` bits.
pub fn rational_points<K: BinaryField>() -> Vec<ProjPoint<K>> {
    let mut out = vec![ProjPoint::Infinity];
    let elems: Vec<K> = K::elements();
    for x in &elems {
        let rhs = x.square().mul(x);
        for z in &elems {
            if z.square().add(z) == rhs {
                out.push(ProjPoint::affine(*x, *z));
            }
        }
    }
    out
}
