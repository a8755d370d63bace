//! Binary finite fields GF(2^m) for 1 <= m <= 8.
//!
//! Each degree uses a fixed modulus: the lexicographically least irreducible
//! polynomial of that degree over F_2 (smallest integer encoding). The class
//! of the variable is rendered as `w`.

use std::fmt;

use super::field::{schoolbook_mul, Field};
use crate::error::{Error, Result};

/// Moduli indexed by degree; entry 0 is unused. Degree 1 uses `x + 1`.
pub const MODULI: [u16; 9] = [
    0,
    0b11,
    0b111,
    0b1011,
    0b1_0011,
    0b10_0101,
    0b100_0011,
    0b1000_0011,
    0b1_0001_1011,
];

pub const MAX_DEGREE: u32 = 8;

/// Element of GF(2^M), stored as the bit vector of its residue mod `MODULI[M]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2m<const M: u32>(u16);

pub type Gf2 = Gf2m<1>;
pub type Gf4 = Gf2m<2>;

/// Binary fields with a known degree over F_2.
pub trait BinaryField: Field + Copy + Ord + std::hash::Hash {
    fn degree() -> u32;
    fn modulus() -> u16;
    fn from_bits(bits: u16) -> Self;
    fn bits(&self) -> u16;

    fn order() -> usize {
        1usize << Self::degree()
    }

    /// All field elements in increasing bit order.
    fn elements() -> Vec<Self> {
        (0..Self::order() as u16).map(Self::from_bits).collect()
    }

    /// The class of the variable `w`; for m = 1 this is just 1.
    fn generator() -> Self {
        Self::from_bits(0b10)
    }
}

const fn clmul16(a: u16, b: u16) -> u32 {
    let mut acc = 0u32;
    let mut i = 0;
    while i < 16 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u32) << i;
        }
        i += 1;
    }
    acc
}

fn reduce(mut v: u32, m: u32) -> u16 {
    let modulus = MODULI[m as usize] as u32;
    let mut deg = 31 - v.leading_zeros().min(31);
    while v >> m != 0 {
        if (v >> deg) & 1 == 1 {
            v ^= modulus << (deg - m);
        }
        deg -= 1;
    }
    v as u16
}

impl<const M: u32> Gf2m<M> {
    const CHECK: () = assert!(M >= 1 && M <= MAX_DEGREE, "GF(2^m) supports 1 <= m <= 8");

    pub fn new(bits: u16) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Gf2m(reduce(bits as u32, M))
    }
}

impl<const M: u32> Field for Gf2m<M> {
    fn zero() -> Self {
        Gf2m(0)
    }
    fn one() -> Self {
        Gf2m(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn add(&self, other: &Self) -> Self {
        Gf2m(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        if M == 1 {
            return Gf2m(self.0 & other.0);
        }
        Gf2m(reduce(clmul16(self.0, other.0), M))
    }
    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        // a^(2^m - 2) = a^-1 in the multiplicative group of order 2^m - 1
        Ok(self.pow((1u64 << M) - 2))
    }
    fn poly_mul(a: &[Self], b: &[Self]) -> Vec<Self> {
        if M == 1 && a.len().min(b.len()) > 24 {
            packed_f2_mul(a, b)
        } else {
            schoolbook_mul(a, b)
        }
    }
}

impl<const M: u32> BinaryField for Gf2m<M> {
    fn degree() -> u32 {
        M
    }
    fn modulus() -> u16 {
        MODULI[M as usize]
    }
    fn from_bits(bits: u16) -> Self {
        Self::new(bits)
    }
    fn bits(&self) -> u16 {
        self.0
    }
}

/// Carry-less product of two F_2 coefficient vectors via 64-bit packing.
fn packed_f2_mul<const M: u32>(a: &[Gf2m<M>], b: &[Gf2m<M>]) -> Vec<Gf2m<M>> {
    let pack = |v: &[Gf2m<M>]| {
        let mut words = vec![0u64; v.len().div_ceil(64)];
        for (i, c) in v.iter().enumerate() {
            if c.0 & 1 == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        words
    };
    let (aw, bw) = (pack(a), pack(b));
    let out_len = a.len() + b.len() - 1;
    let mut out = vec![0u64; aw.len() + bw.len() + 1];
    for (wi, &word) in aw.iter().enumerate() {
        let mut w = word;
        while w != 0 {
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            for (bj, &bword) in bw.iter().enumerate() {
                if bword == 0 {
                    continue;
                }
                out[wi + bj] ^= bword << bit;
                if bit != 0 {
                    out[wi + bj + 1] ^= bword >> (64 - bit);
                }
            }
        }
    }
    (0..out_len)
        .map(|i| Gf2m(((out[i / 64] >> (i % 64)) & 1) as u16))
        .collect()
}

impl<const M: u32> fmt::Debug for Gf2m<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_bits(self.0))
    }
}

impl<const M: u32> fmt::Display for Gf2m<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_bits(self.0))
    }
}

/// Render a residue as a polynomial in `w`, highest power first.
pub fn render_bits(bits: u16) -> String {
    if bits == 0 {
        return "0".into();
    }
    let mut terms = Vec::new();
    for k in (0..16).rev() {
        if (bits >> k) & 1 == 1 {
            terms.push(match k {
                0 => "1".to_string(),
                1 => "w".to_string(),
                _ => format!("w^{k}"),
            });
        }
    }
    terms.join("+")
}

/// Irreducibility over F_2 by trial division, used to validate `MODULI`.
pub fn is_irreducible_f2(poly: u32) -> bool {
    let deg = 31 - poly.leading_zeros() as i32;
    if deg < 1 {
        return false;
    }
    for d in 2u32..(1 << (deg / 2 + 1)) {
        let dd = 31 - d.leading_zeros() as i32;
        if dd < 1 || dd > deg / 2 {
            continue;
        }
        let mut r = poly;
        while r != 0 && 31 - r.leading_zeros() as i32 >= dd {
            let rd = 31 - r.leading_zeros() as i32;
            r ^= d << (rd - dd);
        }
        if r == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_least_irreducibles() {
        // m = 1 uses x + 1 rather than x; either yields F_2
        assert_eq!(MODULI[1], 0b11);
        for m in 2..=8u32 {
            let least = ((1u32 << m)..(1u32 << (m + 1)))
                .find(|&p| is_irreducible_f2(p))
                .unwrap();
            assert_eq!(least, MODULI[m as usize] as u32, "degree {m}");
        }
    }

    #[test]
    fn gf4_arithmetic() {
        let w = Gf4::generator();
        let w2 = w.square();
        assert_eq!(w2, Gf4::new(0b11));
        assert_eq!(w2.add(&w), Gf4::one());
        assert_eq!(w.mul(&w2), Gf4::one());
        assert_eq!(w.inv().unwrap(), w2);
        assert_eq!(Gf4::zero().inv(), Err(Error::DivisionByZero));
    }

    fn check_field<const M: u32>() {
        for a in Gf2m::<M>::elements() {
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            for b in Gf2m::<M>::elements() {
                assert_eq!(a.mul(&b), b.mul(&a));
            }
        }
    }

    #[test]
    fn inverses_and_commutativity() {
        check_field::<1>();
        check_field::<2>();
        check_field::<3>();
        check_field::<5>();
        check_field::<8>();
    }

    #[test]
    fn packed_matches_schoolbook() {
        let a: Vec<Gf2> = (0..200)
            .map(|i| Gf2::new(((i * 7 + 3) % 5 == 0) as u16))
            .collect();
        let b: Vec<Gf2> = (0..131).map(|i| Gf2::new(((i * 11) % 3 == 1) as u16)).collect();
        assert_eq!(packed_f2_mul(&a, &b), schoolbook_mul(&a, &b));
    }

    #[test]
    fn render() {
        assert_eq!(render_bits(0b11), "w+1");
        assert_eq!(render_bits(0b101), "w^2+1");
        assert_eq!(render_bits(1), "1");
    }
}
