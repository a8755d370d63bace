//! Bivariate polynomials `F[t][x]`, used to clear `t`-denominators of tower
//! elements before evaluation and for canonical rendering.

use super::field::Field;
use super::poly::Poly;
use super::ratfunc::{RatT, Tower};
use crate::error::Result;

/// `Poly<F>` is not a field, so `Poly<Poly<F>>` needs its own helpers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bi<F> {
    /// `terms[i]` is the coefficient of `x^i`.
    pub terms: Vec<Poly<F>>,
}

impl<F: Field> Bi<F> {
    pub fn from_terms(mut terms: Vec<Poly<F>>) -> Self {
        while terms.last().is_some_and(|c| c.is_zero()) {
            terms.pop();
        }
        Bi { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.terms.iter().filter_map(|p| p.degree()).max()
    }

    /// Largest `deg_t + deg_x` over the terms.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.degree().map(|d| d + i))
            .max()
    }

    pub fn weight(&self) -> usize {
        self.terms.iter().map(|p| p.weight()).sum()
    }

    /// Mixed Hasse derivative `D_t^(j) D_x^(k)`.
    pub fn hasse(&self, j: usize, k: usize) -> Self {
        if self.terms.len() <= k {
            return Bi { terms: vec![] };
        }
        Self::from_terms(
            (k..self.terms.len())
                .map(|i| {
                    if super::lucas::binom_mod2(i as u64, k as u64) {
                        self.terms[i].hasse(j)
                    } else {
                        Poly::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn stretch_x(&self, s: usize) -> Self {
        if s == 1 || self.terms.len() <= 1 {
            return self.clone();
        }
        let mut terms = vec![Poly::zero(); (self.terms.len() - 1) * s + 1];
        for (i, c) in self.terms.iter().enumerate() {
            terms[i * s] = c.clone();
        }
        Bi { terms }
    }

    pub fn to_tower(&self) -> Tower<F> {
        Tower::from_poly(Poly::from_coeffs(
            self.terms.iter().map(|p| RatT::from_poly(p.clone())).collect(),
        ))
    }
}

fn lcm<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    a.mul(&b.div_exact(&a.gcd(b)))
}

/// Clear `t`-denominators: returns `(N, D)` in `F[t][x]` with `r = N / D`,
/// primitive in `t` jointly, and `D` with leading coefficient (in `x`, then
/// in `t`) equal to 1. This is a canonical form of `r`.
pub fn tower_to_bivariate<F: Field>(r: &Tower<F>) -> (Bi<F>, Bi<F>) {
    let mut l = Poly::<F>::one();
    for c in r.num().coeffs().iter().chain(r.den().coeffs()) {
        l = lcm(&l, c.den());
    }
    let clear = |p: &Poly<RatT<F>>| -> Vec<Poly<F>> {
        p.coeffs()
            .iter()
            .map(|c| {
                if c.den().is_one() {
                    c.num().mul(&l)
                } else {
                    c.num().mul(&l.div_exact(c.den()))
                }
            })
            .collect()
    };
    let mut num = clear(r.num());
    let mut den = clear(r.den());
    let mut content = Poly::<F>::zero();
    for c in num.iter().chain(den.iter()) {
        if !c.is_zero() {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
    }
    if !content.is_one() && !content.is_zero() {
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c = c.div_exact(&content);
        }
    }
    // leading coefficient of den in x is already monic in t after clearing
    (Bi::from_terms(num), Bi::from_terms(den))
}

pub fn bivariate_to_tower<F: Field>(num: &Bi<F>, den: &Bi<F>) -> Result<Tower<F>> {
    num.to_tower().div(&den.to_tower())
}
