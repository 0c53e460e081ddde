//! Polynomials in the L-series variable `x = p^{-s}` over [`LaurentAQ`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::par::{self, Exec};

use super::laurent::{LaurentAQ, Mono};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<LaurentAQ>,
}

impl PolyX {
    pub fn new(mut coeffs: Vec<LaurentAQ>) -> Self {
        while coeffs.last().is_some_and(LaurentAQ::is_zero) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn zero() -> Self {
        PolyX::default()
    }

    pub fn one() -> Self {
        PolyX::constant(LaurentAQ::one())
    }

    pub fn constant(c: LaurentAQ) -> Self {
        PolyX::new(vec![c])
    }

    pub fn x() -> Self {
        PolyX::new(vec![LaurentAQ::zero(), LaurentAQ::one()])
    }

    /// `1 - root * x`.
    pub fn one_minus(root: LaurentAQ) -> Self {
        PolyX::new(vec![LaurentAQ::one(), -root])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[LaurentAQ] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> LaurentAQ {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn scalar_mul(&self, c: &LaurentAQ) -> Self {
        PolyX::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentAQ) -> LaurentAQ) -> Self {
        PolyX::new(self.coeffs.iter().map(f).collect())
    }

    /// `x -> scale * x`: the coefficient of `x^j` is multiplied by `scale^j`.
    pub fn substitute_scale(&self, scale: &LaurentAQ) -> Result<Self> {
        let (c, m) = scale
            .as_monomial()
            .ok_or_else(|| Error::NonMonomialScale(scale.to_string()))?;
        let mut factor = LaurentAQ::one();
        let step = LaurentAQ::term(c.clone(), m);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coeff in &self.coeffs {
            out.push(coeff * &factor);
            factor = &factor * &step;
        }
        Ok(PolyX::new(out))
    }

    /// Reverses `substitute_scale` by a monomial with unit coefficient.
    pub fn substitute_inverse_scale(&self, m: Mono) -> Self {
        PolyX::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c.mul_mono(m.inv().pow(j as i64)))
                .collect(),
        )
    }

    pub fn product<I: IntoIterator<Item = PolyX>>(factors: I) -> Self {
        factors.into_iter().fold(PolyX::one(), |acc, f| &acc * &f)
    }

    pub fn swap_a(&self) -> Self {
        self.map_coeffs(LaurentAQ::swap_a)
    }

    pub fn specialize_k(&self, k: i64) -> Self {
        self.map_coeffs(|c| c.specialize_k(k))
    }
}

/// Coefficients of `x^0 .. x^order` of the power series `num / den`.
///
/// Requires `den(0) = 1`; the result is exact and satisfies
/// `sum c_r x^r * den == num (mod x^(order+1))`.
pub fn series_quotient(num: &PolyX, den: &PolyX, order: usize) -> Result<Vec<LaurentAQ>> {
    series_quotient_with(num, den, order, Exec::default())
}

pub fn series_quotient_with(
    num: &PolyX,
    den: &PolyX,
    order: usize,
    exec: Exec,
) -> Result<Vec<LaurentAQ>> {
    let c0 = den.coeff(0);
    if !c0.is_one() {
        return Err(Error::ConstantTermNotOne(c0.to_string()));
    }
    let dd = den.degree().unwrap_or(0);
    let mut out: Vec<LaurentAQ> = Vec::with_capacity(order + 1);
    for r in 0..=order {
        let lo = 1;
        let hi = r.min(dd);
        let prods = if hi >= lo {
            par::map_range(exec, hi - lo + 1, |i| {
                let j = lo + i;
                den.coeffs[j].clone() * &out[r - j]
            })
        } else {
            Vec::new()
        };
        let mut c = num.coeff(r);
        for p in &prods {
            c = &c - p;
        }
        out.push(c);
    }
    Ok(out)
}

impl Add<&PolyX> for &PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyX::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub<&PolyX> for &PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyX::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul<&PolyX> for &PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero();
        }
        let mut out = vec![LaurentAQ::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PolyX::new(out)
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        self.map_coeffs(|c| -c)
    }
}

impl Add for PolyX {
    type Output = PolyX;
    fn add(self, rhs: PolyX) -> PolyX {
        &self + &rhs
    }
}

impl Sub for PolyX {
    type Output = PolyX;
    fn sub(self, rhs: PolyX) -> PolyX {
        &self - &rhs
    }
}

impl Mul for PolyX {
    type Output = PolyX;
    fn mul(self, rhs: PolyX) -> PolyX {
        &self * &rhs
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::laurent::{rat, KExp};

    fn ints(v: &[i64]) -> PolyX {
        PolyX::new(v.iter().map(|c| LaurentAQ::int(*c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&ints(&[1, -1]) * &ints(&[1, 1]), ints(&[1, 0, -1]));
    }

    #[test]
    fn conjugate_linear_factors() {
        let q = LaurentAQ::q_pow(KExp::constant(1));
        let f1 = PolyX::one_minus(LaurentAQ::a_pow(1) * &q);
        let f2 = PolyX::one_minus(LaurentAQ::a_pow(-1) * &q);
        let expect = PolyX::new(vec![
            LaurentAQ::one(),
            -(LaurentAQ::u() * &q),
            LaurentAQ::q_pow(KExp::constant(2)),
        ]);
        assert_eq!(&f1 * &f2, expect);
    }

    #[test]
    fn degrees_add_under_multiplication() {
        let a = ints(&[1, 2, 3]);
        let b = ints(&[1, 0, 0, 5]);
        assert_eq!((&a * &b).degree(), Some(5));
        assert_eq!((&a + &b).degree(), Some(3));
        assert_eq!(PolyX::zero().degree(), None);
    }

    #[test]
    fn scale_by_half_weight_power() {
        // (1 - a x) scaled by q^(4k-2) is 1 - a p^(2k-1) x
        let f = PolyX::one_minus(LaurentAQ::a_pow(1));
        let scaled = f
            .substitute_scale(&LaurentAQ::q_pow(KExp::new(-2, 4)))
            .unwrap();
        assert_eq!(
            scaled,
            PolyX::one_minus(LaurentAQ::mono(Mono::new(1, KExp::new(-2, 4))))
        );
        assert_eq!(f.substitute_scale(&LaurentAQ::one()).unwrap(), f);
        let g = ints(&[1, 0, 1]);
        assert_eq!(
            g.substitute_scale(&LaurentAQ::q_pow(KExp::constant(2)))
                .unwrap(),
            PolyX::new(vec![
                LaurentAQ::one(),
                LaurentAQ::zero(),
                LaurentAQ::q_pow(KExp::constant(4))
            ])
        );
    }

    #[test]
    fn non_monomial_scale_rejected() {
        let err = ints(&[1, 1]).substitute_scale(&LaurentAQ::u()).unwrap_err();
        assert!(matches!(err, Error::NonMonomialScale(_)));
    }

    #[test]
    fn geometric_series() {
        let c = series_quotient(&PolyX::one(), &ints(&[1, -1]), 5).unwrap();
        assert_eq!(c, vec![LaurentAQ::one(); 6]);
    }

    #[test]
    fn two_geometric_factors() {
        let q = &ints(&[1, -1]) * &ints(&[1, -2]);
        let c = series_quotient(&PolyX::one(), &q, 3).unwrap();
        let expect: Vec<_> = [1, 3, 7, 15].iter().map(|v| LaurentAQ::int(*v)).collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn genus_one_tau_square() {
        // 1/(1 + 24x + 2^11 x^2): x^2 coefficient is 24^2 - 2048
        let q = ints(&[1, 24, 2048]);
        let c = series_quotient(&PolyX::one(), &q, 2).unwrap();
        assert_eq!(c[2], LaurentAQ::int(-1472));
    }

    #[test]
    fn bad_constant_term() {
        let err = series_quotient(&PolyX::one(), &ints(&[2, 1]), 3).unwrap_err();
        assert!(matches!(err, Error::ConstantTermNotOne(_)));
    }

    #[test]
    fn quotient_times_denominator_reproduces_numerator() {
        let num = PolyX::new(vec![
            LaurentAQ::one(),
            LaurentAQ::a_pow(1),
            LaurentAQ::constant(rat(3)),
        ]);
        let den = PolyX::new(vec![
            LaurentAQ::one(),
            -LaurentAQ::u(),
            LaurentAQ::q_pow(KExp::new(0, 1)),
        ]);
        let order = 6;
        let c = series_quotient(&num, &den, order).unwrap();
        let prod = &PolyX::new(c) * &den;
        for j in 0..=order {
            assert_eq!(prod.coeff(j), num.coeff(j), "x^{j}");
        }
    }
}
