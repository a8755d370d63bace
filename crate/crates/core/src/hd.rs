//! Higher derivations on `L` given extensionally by the coefficient table of
//! `theta(x) = x + sum_m xi_m T^m`, with `theta(t) = t + T` and `theta(z)`
//! forced by the curve equation.

use crate::algebra::bivariate::{tower_to_bivariate, Bi};
use crate::algebra::field::Field;
use crate::algebra::ratfunc::Tower;
use crate::error::{Error, Result};
use crate::function_field::FieldElem;
use crate::series::{solve_artin_schreier, Tps};

/// A higher derivation truncated at order `N = xi.len()`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HdData<F> {
    xi: Vec<FieldElem<F>>,
    zc: Vec<FieldElem<F>>,
    choices: Vec<String>,
}

impl<F: Field> HdData<F> {
    /// Build from `xi_1..xi_N`, enforcing `xi_m` in `L^2 F(t)`.
    pub fn from_table(xi: Vec<FieldElem<F>>, choices: Vec<String>) -> Result<Self> {
        if let Some(m) = xi.iter().position(|e| !e.is_in_l2ct()) {
            return Err(Error::MembershipViolation { index: m + 1 });
        }
        Self::from_table_unchecked(xi, choices)
    }

    /// Build without the `L^2 F(t)` membership check. Intended for negative
    /// controls and for loading files that are about to be verified.
    pub fn from_table_unchecked(xi: Vec<FieldElem<F>>, choices: Vec<String>) -> Result<Self> {
        let n = xi.len();
        let mut xs = vec![FieldElem::x()];
        xs.extend(xi.iter().cloned());
        let zs = solve_artin_schreier(&Tps::from_coeffs(xs, n), &FieldElem::z())?;
        let zc = zs.into_coeffs().into_iter().skip(1).collect();
        Ok(HdData { xi, zc, choices })
    }

    /// `theta(x) = x`, `theta(z) = z` up to order `n`.
    pub fn trivial(n: usize) -> Self {
        HdData {
            xi: vec![FieldElem::zero(); n],
            zc: vec![FieldElem::zero(); n],
            choices: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.xi.len()
    }

    /// `xi_m` for `1 <= m <= N`.
    pub fn xi(&self, m: usize) -> &FieldElem<F> {
        &self.xi[m - 1]
    }

    /// `z_m = theta^(m)(z)` for `1 <= m <= N`.
    pub fn zc(&self, m: usize) -> &FieldElem<F> {
        &self.zc[m - 1]
    }

    pub fn xi_table(&self) -> &[FieldElem<F>] {
        &self.xi
    }

    pub fn zc_table(&self) -> &[FieldElem<F>] {
        &self.zc
    }

    pub fn choices(&self) -> &[String] {
        &self.choices
    }

    /// Keep only `xi_1..xi_order`.
    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        HdData {
            xi: self.xi[..order].to_vec(),
            zc: self.zc[..order].to_vec(),
            choices: self.choices.clone(),
        }
    }

    pub fn map_base<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> HdData<G> {
        HdData {
            xi: self.xi.iter().map(|e| e.map_base(f)).collect(),
            zc: self.zc.iter().map(|e| e.map_base(f)).collect(),
            choices: self.choices.clone(),
        }
    }

    /// `theta^(m)` of a generator, read straight from the tables.
    pub fn generator_coeff(&self, g: Generator, m: usize) -> Result<FieldElem<F>> {
        self.check_order(m)?;
        Ok(match (g, m) {
            (_, 0) => g.element(),
            (Generator::T, 1) => FieldElem::one(),
            (Generator::T, _) => FieldElem::zero(),
            (Generator::X, m) => self.xi(m).clone(),
            (Generator::Z, m) => self.zc(m).clone(),
        })
    }

    fn check_order(&self, m: usize) -> Result<()> {
        if m > self.order() {
            return Err(Error::OrderExceeded {
                requested: m,
                available: self.order(),
            });
        }
        Ok(())
    }

    pub fn x_series(&self, order: usize) -> Tps<FieldElem<F>> {
        let mut c = vec![FieldElem::x()];
        c.extend(self.xi.iter().take(order).cloned());
        Tps::from_coeffs(c, order)
    }

    pub fn z_series(&self, order: usize) -> Tps<FieldElem<F>> {
        let mut c = vec![FieldElem::z()];
        c.extend(self.zc.iter().take(order).cloned());
        Tps::from_coeffs(c, order)
    }

    /// Evaluator for `theta` up to `order <= N`.
    pub fn evaluator(&self, order: usize) -> Result<Theta<F>> {
        self.check_order(order)?;
        let delta = self.x_series(order).add(&Tps::constant(FieldElem::x(), order))?;
        Theta::new(delta, self.z_series(order), 1)
    }

    /// `theta(u)` modulo `T^(order+1)`.
    pub fn theta(&self, u: &FieldElem<F>, order: usize) -> Result<Tps<FieldElem<F>>> {
        self.evaluator(order)?.apply(u, order)
    }

    /// `theta^(m)(u)`.
    pub fn theta_coeff(&self, u: &FieldElem<F>, m: usize) -> Result<FieldElem<F>> {
        Ok(self.theta(u, m)?.coeff(m).clone())
    }

    /// `theta^(i)(theta^(j)(u))`.
    pub fn theta_compose(&self, u: &FieldElem<F>, i: usize, j: usize) -> Result<FieldElem<F>> {
        self.check_order(i)?;
        let inner = self.theta_coeff(u, j)?;
        self.theta_coeff(&inner, i)
    }

    /// Evaluator for `theta` restricted to `L^2 F(t)` up to `order`, which
    /// only reads `xi_k, z_k` with `2k <= order`.
    pub fn protected_evaluator(&self, order: usize) -> Result<Theta<F>> {
        let need = order / 2;
        if need > self.order() {
            return Err(Error::InsufficientData {
                needed: need,
                have: self.order(),
            });
        }
        let x2 = self.x_series(need).square_stretched(order);
        let z2 = self.z_series(need).square_stretched(order);
        let delta = x2.add(&Tps::constant(FieldElem::x().square(), order))?;
        Theta::new(delta, z2, 2)
    }

    /// `theta^(m)(u)` for `u` in `L^2 F(t)` using only `xi_k` with `k <= m/2`.
    ///
    /// Writes `u = alpha(t, x^2) + beta(t, x^2) z^2`; `theta(x^2)` and
    /// `theta(z^2)` only have even-order terms whose coefficients are squares
    /// of lower-order table entries.
    pub fn theta_coeff_protected(&self, u: &FieldElem<F>, m: usize) -> Result<FieldElem<F>> {
        Ok(self.protected_evaluator(m)?.apply_l2ct(u, m)?.coeff(m).clone())
    }
}

impl<K: Field> Tps<K> {
    /// Square a series of order `n` into a series of order `target >= 2n`
    /// without needing coefficients beyond `n`.
    fn square_stretched(&self, target: usize) -> Tps<K> {
        let mut out = vec![K::zero(); target + 1];
        for (m, c) in self.coeffs().iter().enumerate() {
            if 2 * m <= target {
                out[2 * m] = c.square();
            }
        }
        Tps::from_coeffs(out, target)
    }
}

/// The generators `t, x, z` of `L` over `F`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Generator {
    T,
    X,
    Z,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::T, Generator::X, Generator::Z];

    pub fn element<F: Field>(self) -> FieldElem<F> {
        match self {
            Generator::T => FieldElem::t(),
            Generator::X => FieldElem::x(),
            Generator::Z => FieldElem::z(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::T => "t",
            Generator::X => "x",
            Generator::Z => "z",
        }
    }
}

/// Substitution `t -> t + T`, `v -> v + delta(T)`, `z_like` for the z-part,
/// where `v = x^stretch`. Caches the powers of `delta`.
pub struct Theta<F> {
    order: usize,
    stretch: usize,
    delta_pows: Vec<Tps<FieldElem<F>>>,
    zlike: Tps<FieldElem<F>>,
}

impl<F: Field> Theta<F> {
    fn new(delta: Tps<FieldElem<F>>, zlike: Tps<FieldElem<F>>, stretch: usize) -> Result<Self> {
        let order = delta.order();
        let mut delta_pows = vec![Tps::one(order)];
        // delta has no constant term, so delta^k = O(T^k) and k <= order suffices
        for k in 1..=order {
            let next = delta_pows[k - 1].mul(&delta)?;
            delta_pows.push(next);
        }
        Ok(Theta {
            order,
            stretch,
            delta_pows,
            zlike,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `P(t + T, v + delta) = sum_k (D_v^(k) P)(t + T, v) delta^k`, where
    /// the shifted Hasse derivatives expand into mixed Hasse derivatives.
    fn eval_bi(&self, p: &Bi<F>, order: usize) -> Vec<FieldElem<F>> {
        let mut out = vec![FieldElem::zero(); order + 1];
        let Some(dx) = p.x_degree() else {
            return out;
        };
        for k in 0..=dx.min(order) {
            let dk = p.hasse(0, k);
            if dk.is_zero() {
                continue;
            }
            let pow = self.delta_pows[k].coeffs();
            for j in 0..=order - k {
                let h = dk.hasse(j, 0);
                if h.is_zero() {
                    continue;
                }
                let h = FieldElem::from_tower(h.stretch_x(self.stretch).to_tower());
                for i in k..=order - j {
                    if !pow[i].is_zero() {
                        out[i + j].add_assign(&h.mul(&pow[i]));
                    }
                }
            }
        }
        out
    }

    /// `a + b * zlike`, sharing one series division when `a` and `b` have
    /// the same denominator.
    fn eval_pair(&self, a: &Tower<F>, b: &Tower<F>, order: usize) -> Result<Tps<FieldElem<F>>> {
        let zl = || self.zlike.truncate(order);
        let part = |r: &Tower<F>| {
            let (n, d) = tower_to_bivariate(r);
            let num = Tps::from_coeffs(self.eval_bi(&n, order), order);
            (num, d)
        };
        let is_one = |d: &Bi<F>| d.terms.len() == 1 && d.terms[0].is_one();
        let over = |num: Tps<FieldElem<F>>, d: &Bi<F>| {
            if is_one(d) {
                Ok(num)
            } else {
                num.div(&Tps::from_coeffs(self.eval_bi(d, order), order))
            }
        };
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Ok(Tps::zero(order)),
            (false, true) => {
                let (n, d) = part(a);
                over(n, &d)
            }
            (true, false) => {
                let (n, d) = part(b);
                over(n.mul(&zl())?, &d)
            }
            (false, false) => {
                let (na, da) = part(a);
                let (nb, db) = part(b);
                if da == db {
                    over(na.add(&nb.mul(&zl())?)?, &da)
                } else {
                    over(na, &da)?.add(&over(nb, &db)?.mul(&zl())?)
                }
            }
        }
    }

    fn check(&self, order: usize) -> Result<()> {
        if order > self.order {
            return Err(Error::OrderExceeded {
                requested: order,
                available: self.order,
            });
        }
        Ok(())
    }

    /// `theta(u)` modulo `T^(order+1)`.
    pub fn apply(&self, u: &FieldElem<F>, order: usize) -> Result<Tps<FieldElem<F>>> {
        self.check(order)?;
        debug_assert_eq!(self.stretch, 1);
        self.eval_pair(u.a(), u.b(), order)
    }

    /// `theta(u)` for `u` in `L^2 F(t)` on a protected evaluator.
    pub fn apply_l2ct(&self, u: &FieldElem<F>, order: usize) -> Result<Tps<FieldElem<F>>> {
        self.check(order)?;
        debug_assert_eq!(self.stretch, 2);
        let d = u.l2ct_decompose()?;
        let squeeze = |r: &Tower<F>| {
            r.compress(2)
                .ok_or_else(|| Error::Internal("decomposition is not even in x".into()))
        };
        self.eval_pair(&squeeze(&d.alpha)?, &squeeze(&d.beta)?, order)
    }
}
