//! The positive product `D(r)` that clears the denominators of `lambda(p^r)`,
//! and the identity behind its leading coefficient.

use std::cmp::Ordering;

use crate::exactalg::eval::UPoly;
use crate::exactalg::{rat, FracAQ, KExp, LaurentAQ, Mono, QSqrt, Rat};
use crate::lfactor::p_pow;

/// Shape of one factor of `D(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DrFactorKind {
    /// A polynomial in `p` with integer coefficients, lowest degree first.
    Cyclotomic(Vec<i64>),
    /// `p^m + sign (a^j + a^-j) p^(m/2) + 1`.
    Trace { m: i64, j: i64, sign: i64 },
}

#[derive(Clone, Debug)]
pub struct DrFactor {
    pub kind: DrFactorKind,
    pub power: u32,
    pub expr: LaurentAQ,
}

impl DrFactor {
    fn cyclotomic(coeffs: &[i64], power: u32) -> Self {
        let expr = coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| p_pow(KExp::constant(d as i64)).scale(&rat(*c)))
            .sum();
        DrFactor {
            kind: DrFactorKind::Cyclotomic(coeffs.to_vec()),
            power,
            expr,
        }
    }

    fn trace(m: i64, j: i64, sign: i64, power: u32) -> Self {
        let mid = (LaurentAQ::a_pow(j) + LaurentAQ::a_pow(-j)).mul_mono(Mono::aq(0, m));
        let expr =
            LaurentAQ::q_pow(KExp::constant(2 * m)) + mid.scale(&rat(sign)) + LaurentAQ::one();
        DrFactor {
            kind: DrFactorKind::Trace { m, j, sign },
            power,
            expr,
        }
    }

    /// Exact certificate that the factor is positive for every prime and
    /// every `a` on the unit circle.
    ///
    /// Trace factors: `expr - (q^m - 1)^2 = q^m (2 + sign (a^j + a^-j))`, and
    /// `|a^j + a^-j| <= 2`, so `expr >= (p^(m/2) - 1)^2 > 0` for `p >= 2`.
    /// Polynomials in `p`: after `p = 2 + s` every coefficient is nonnegative
    /// and the constant is positive.
    pub fn positivity_certificate(&self) -> bool {
        match &self.kind {
            DrFactorKind::Trace { m, j, sign } => {
                let qm = LaurentAQ::q_pow(KExp::constant(*m));
                let square = (&qm - &LaurentAQ::one()).pow(2);
                let slack = (LaurentAQ::int(2)
                    + (LaurentAQ::a_pow(*j) + LaurentAQ::a_pow(-*j)).scale(&rat(*sign)))
                .mul_mono(Mono::aq(0, *m));
                *m > 0 && &self.expr - &square == slack
            }
            DrFactorKind::Cyclotomic(c) => {
                let shifted = taylor_shift(c, 2);
                shifted[0] > 0 && shifted.iter().all(|x| *x >= 0)
            }
        }
    }

    /// `(p^(m/2) - 1)^2` for trace factors, the exact value otherwise.
    pub fn lower_bound(&self, p: u64) -> QSqrt {
        match &self.kind {
            DrFactorKind::Trace { m, .. } => {
                let t = &QSqrt::sqrt_pow(p, *m) - &QSqrt::one();
                &t * &t
            }
            DrFactorKind::Cyclotomic(c) => {
                let v = c
                    .iter()
                    .rev()
                    .fold(0i128, |acc, x| acc * p as i128 + *x as i128);
                QSqrt::rational(Rat::from_integer(v.into()))
            }
        }
    }
}

/// Coefficients of `f(x + s)` for integer `f`.
fn taylor_shift(c: &[i64], s: i64) -> Vec<i64> {
    let mut out = c.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            out[j] += s * out[j + 1];
        }
    }
    out
}

/// `D(r) = p^(6k+2r+14) * prod factor^power`.
#[derive(Clone, Debug)]
pub struct DrFactorization {
    pub r: usize,
    /// Exponent of `p` in the leading power.
    pub p_exponent: KExp,
    pub factors: Vec<DrFactor>,
}

/// The product as displayed, including the repeated `p^3 + u p^(3/2) + 1`.
pub fn d_factor(r: usize) -> DrFactorization {
    let factors = vec![
        DrFactor::cyclotomic(&[-1, 1], 5),
        DrFactor::cyclotomic(&[1, 1], 3),
        DrFactor::cyclotomic(&[1, 0, 1], 1),
        DrFactor::cyclotomic(&[1, 1, 1], 1),
        DrFactor::trace(1, 1, 1, 1),
        DrFactor::trace(1, 1, -1, 2),
        DrFactor::trace(1, 3, -1, 1),
        DrFactor::trace(3, 1, -1, 3),
        DrFactor::trace(3, 1, 1, 1),
        DrFactor::trace(4, 2, -1, 1),
        DrFactor::trace(3, 3, -1, 3),
        DrFactor::trace(3, 1, 1, 1),
        DrFactor::trace(5, 1, -1, 1),
        DrFactor::trace(7, 1, -1, 1),
    ];
    DrFactorization {
        r,
        p_exponent: KExp::new(2 * r as i64 + 14, 6),
        factors,
    }
}

impl DrFactorization {
    pub fn power(&self) -> LaurentAQ {
        p_pow(self.p_exponent)
    }

    pub fn expanded(&self) -> LaurentAQ {
        self.factors
            .iter()
            .fold(self.power(), |acc, f| &acc * &f.expr.pow(f.power))
    }

    pub fn is_certified_positive(&self) -> bool {
        self.factors.iter().all(DrFactor::positivity_certificate)
    }

    /// Exact value at `(p, k, u)` with `u = a + 1/a`.
    pub fn value(&self, p: u64, k: i64, u: &QSqrt) -> QSqrt {
        let mut v = QSqrt::sqrt_pow(p, 2 * self.p_exponent.at(k));
        for f in &self.factors {
            let up = UPoly::from_symmetric(&f.expr).expect("factors are symmetric in a");
            v = &v * &up.eval(p, k, u).pow(f.power);
        }
        v
    }

    /// Every factor at `(p, k, u)` is at least its perfect-square bound.
    pub fn bounds_hold(&self, p: u64, k: i64, u: &QSqrt) -> bool {
        self.factors.iter().all(|f| {
            let up = UPoly::from_symmetric(&f.expr).expect("factors are symmetric in a");
            let v = up.eval(p, k, u);
            v >= f.lower_bound(p) && v.signum() == Ordering::Greater
        })
    }

    /// Leading `q`-part of `D(r) * lam`, the product of the leading parts.
    pub fn leading_term_of_product(&self, lam: &LaurentAQ) -> Option<(KExp, LaurentAQ)> {
        let mut acc = self.power().leading_q_part()?;
        let mut parts: Vec<(KExp, LaurentAQ)> = Vec::new();
        for f in &self.factors {
            let lp = f.expr.leading_q_part()?;
            for _ in 0..f.power {
                parts.push(lp.clone());
            }
        }
        parts.push(lam.leading_q_part()?);
        for (e, c) in parts {
            acc = (acc.0 + e, &acc.1 * &c);
        }
        Some(acc)
    }
}

/// `a^25 - 2a^23 + 2a^19 - a^17 = a^17 (a^2-1)^3 (a^2+1)`, so the leading
/// `a`-polynomial of the numerator cancels the denominator
/// `a^(2r+17) (a^2-1)^3 (a^2+1)` for every `r`.
pub fn dr_leading_identity() -> bool {
    let a = LaurentAQ::a_pow;
    let lhs = a(25) - a(23).scale(&rat(2)) + a(19).scale(&rat(2)) - a(17);
    let a2m1 = a(2) - LaurentAQ::one();
    let a2p1 = a(2) + LaurentAQ::one();
    let factored = &(&a(17) * &a2m1.pow(3)) * &a2p1;
    if lhs != factored {
        return false;
    }
    (0..=8).all(|r| {
        let den = &(&a(2 * r + 17) * &a2m1.pow(3)) * &a2p1;
        FracAQ::new(&a(2 * r) * &lhs, den)
            .map(|f| f.value_eq(&FracAQ::from_laurent(LaurentAQ::one())))
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn leading_power_exponent() {
        assert_eq!(d_factor(1).p_exponent.at(6), 52);
        assert_eq!(d_factor(0).p_exponent.at(8), 62);
    }

    #[test]
    fn every_factor_is_certified() {
        let d = d_factor(1);
        assert_eq!(d.factors.len(), 14);
        assert!(d.is_certified_positive());
        assert!(d.factors.iter().all(|f| f.expr.is_symmetric_in_a()));
        let bad = DrFactor::cyclotomic(&[-3, 1], 1);
        assert!(!bad.positivity_certificate());
    }

    #[test]
    fn smallest_factor_at_the_edge() {
        // p - u sqrt(p) + 1 at p = 3, u = 2 is (sqrt 3 - 1)^2
        let f = DrFactor::trace(1, 1, -1, 1);
        let v = UPoly::from_symmetric(&f.expr)
            .unwrap()
            .eval(3, 6, &QSqrt::int(2));
        assert_eq!(
            v,
            QSqrt::new(
                3,
                Rat::from_integer(4.into()),
                Rat::from_integer((-2).into())
            )
        );
        assert_eq!(v, f.lower_bound(3));
    }

    #[test]
    fn d_one_positive_at_three() {
        let d = d_factor(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = QSqrt::rational(ratio(rng.gen_range(-1000..=1000), 500));
            assert_eq!(d.value(3, 6, &u).signum(), Ordering::Greater);
            assert!(d.bounds_hold(3, 6, &u));
            assert!(d.bounds_hold(2, 6, &u));
        }
    }

    #[test]
    fn value_matches_expansion() {
        let d = d_factor(0);
        let up = UPoly::from_symmetric(&d.expanded()).unwrap();
        let u = QSqrt::rational(ratio(-3, 7));
        assert_eq!(up.eval(5, 6, &u), d.value(5, 6, &u));
    }

    #[test]
    fn leading_part_is_multiplicative() {
        let d = d_factor(1);
        let lam = LaurentAQ::u() + LaurentAQ::q_pow(KExp::new(-3, 2));
        let direct = (&d.expanded() * &lam).leading_q_part().unwrap();
        assert_eq!(d.leading_term_of_product(&lam).unwrap(), direct);
    }

    #[test]
    fn leading_identity() {
        assert!(dr_leading_identity());
    }

    #[test]
    fn shift_of_p_minus_one() {
        assert_eq!(taylor_shift(&[-1, 1], 2), vec![1, 1]);
        assert_eq!(taylor_shift(&[1, 1, 1], 2), vec![7, 5, 1]);
    }
}
