//! Exact arithmetic in `Q(sqrt(p))` and `Q(sqrt(p))(i)`.
//!
//! Every concrete value this crate evaluates lives in one of these fields:
//! `q = sqrt(p)`, Satake traces `u = a_f(p)/p^((2k-1)/2)` are in `Q(sqrt(p))`,
//! and Gaussian-rational points on the unit circle give `a` and `1/a = conj(a)`
//! without any rounding. Signs are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::{rat, Rat};

/// `r0 + r1*sqrt(rad)` for a squarefree radicand.
///
/// Values with `r1 = 0` are plain rationals and combine with any radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt {
    rad: u64,
    pub r0: Rat,
    pub r1: Rat,
}

impl QSqrt {
    pub fn rational(r: Rat) -> Self {
        QSqrt {
            rad: 1,
            r0: r,
            r1: Rat::zero(),
        }
    }

    pub fn int(n: i64) -> Self {
        QSqrt::rational(rat(n))
    }

    pub fn zero() -> Self {
        QSqrt::int(0)
    }

    pub fn one() -> Self {
        QSqrt::int(1)
    }

    pub fn new(rad: u64, r0: Rat, r1: Rat) -> Self {
        if r1.is_zero() || rad == 1 {
            let r0 = if rad == 1 { r0 + r1 } else { r0 };
            return QSqrt::rational(r0);
        }
        QSqrt { rad, r0, r1 }
    }

    pub fn sqrt(rad: u64) -> Self {
        QSqrt::new(rad, Rat::zero(), Rat::one())
    }

    /// `sqrt(rad)^e` for any integer `e`.
    pub fn sqrt_pow(rad: u64, e: i64) -> Self {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let p = BigInt::from(rad);
        let mag = p.pow(half.unsigned_abs() as u32);
        let r = if half >= 0 {
            Rat::from_integer(mag)
        } else {
            Rat::new(BigInt::one(), mag)
        };
        if odd {
            QSqrt::new(rad, Rat::zero(), r)
        } else {
            QSqrt::rational(r)
        }
    }

    pub fn radicand(&self) -> u64 {
        self.rad
    }

    pub fn is_rational(&self) -> bool {
        self.r1.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    fn joint_rad(&self, other: &QSqrt) -> u64 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.rad,
            (_, true) => self.rad,
            _ => {
                assert_eq!(
                    self.rad, other.rad,
                    "mixed radicands in Q(sqrt p) arithmetic"
                );
                self.rad
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> QSqrt {
        QSqrt::new(self.rad, &self.r0 * c, &self.r1 * c)
    }

    /// Galois conjugate `r0 - r1*sqrt(rad)`.
    pub fn conj(&self) -> QSqrt {
        QSqrt::new(self.rad, self.r0.clone(), -self.r1.clone())
    }

    /// Field norm `r0^2 - rad*r1^2`.
    pub fn norm(&self) -> Rat {
        &self.r0 * &self.r0 - &self.r1 * &self.r1 * rat(self.rad as i64)
    }

    pub fn inv(&self) -> Option<QSqrt> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(self.conj().scale(&(Rat::one() / n)))
    }

    pub fn pow(&self, e: u32) -> QSqrt {
        let mut acc = QSqrt::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let s0 = self.r0.cmp(&Rat::zero());
        let s1 = self.r1.cmp(&Rat::zero());
        if s1 == Ordering::Equal {
            return s0;
        }
        if s0 == Ordering::Equal || s0 == s1 {
            return s1;
        }
        let lhs = &self.r0 * &self.r0;
        let rhs = &self.r1 * &self.r1 * rat(self.rad as i64);
        match lhs.cmp(&rhs) {
            Ordering::Greater => s0,
            Ordering::Less => s1,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> QSqrt {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.r0.to_f64().unwrap_or(f64::NAN);
        let b = self.r1.to_f64().unwrap_or(f64::NAN);
        a + b * (self.rad as f64).sqrt()
    }

    /// Exact `floor`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.r0.floor().to_integer();
        }
        // r1*sqrt(rad) = s * sqrt(r1^2 rad); bracket it by integer square roots
        let t = &self.r1 * &self.r1 * rat(self.rad as i64);
        let approx_sqrt = t.floor().to_integer().sqrt();
        let approx = if self.r1.is_negative() {
            self.r0.clone() - Rat::from_integer(approx_sqrt)
        } else {
            self.r0.clone() + Rat::from_integer(approx_sqrt)
        };
        let mut n: BigInt = approx.floor().to_integer() - 2;
        // at most a handful of steps
        while (self - &QSqrt::rational(Rat::from_integer(n.clone() + 1))).signum() != Ordering::Less
        {
            n += 1;
        }
        while (self - &QSqrt::rational(Rat::from_integer(n.clone()))).signum() == Ordering::Less {
            n -= 1;
        }
        n
    }

    /// Decimal scientific rendering with `digits` significant digits,
    /// truncated toward zero (exact, deterministic).
    pub fn to_sci(&self, digits: usize) -> String {
        let digits = digits.max(1);
        match self.signum() {
            Ordering::Equal => return "0".to_string(),
            Ordering::Less => return format!("-{}", (-self).to_sci(digits)),
            Ordering::Greater => {}
        }
        // 10^e <= x < 10^(e+1)
        let est = self.to_f64();
        let mut e: i64 = if est.is_finite() && est > 0.0 {
            est.log10().floor() as i64
        } else {
            log10_estimate(self)
        };
        loop {
            if (self - &pow10(e)).signum() == Ordering::Less {
                e -= 1;
            } else if (self - &pow10(e + 1)).signum() != Ordering::Less {
                e += 1;
            } else {
                break;
            }
        }
        let shifted = self * &pow10(digits as i64 - 1 - e);
        let m = shifted.floor().to_string();
        let (head, tail) = m.split_at(1);
        if tail.is_empty() {
            format!("{head}e{e}")
        } else {
            format!("{head}.{tail}e{e}")
        }
    }
}

fn pow10(e: i64) -> QSqrt {
    let p = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        QSqrt::rational(Rat::from_integer(p))
    } else {
        QSqrt::rational(Rat::new(BigInt::one(), p))
    }
}

fn log10_estimate(x: &QSqrt) -> i64 {
    let digits = |r: &Rat| -> i64 {
        if r.is_zero() {
            return i64::MIN / 4;
        }
        r.numer().abs().to_string().len() as i64 - r.denom().to_string().len() as i64
    };
    digits(&x.r0).max(digits(&x.r1))
}

impl QSqrt {
    /// Exact comparison, also between different fields `Q(sqrt p)` and
    /// `Q(sqrt s)`.
    ///
    /// With distinct radicands two irrational values are never equal, so
    /// refining `floor(2^m x)` against `floor(2^m y)` separates them.
    pub fn cmp_exact(&self, other: &QSqrt) -> Ordering {
        if self.is_rational() || other.is_rational() || self.rad == other.rad {
            return (self - other).signum();
        }
        let mut m = 0u32;
        loop {
            let scale = Rat::from_integer(BigInt::from(1) << m);
            let fx = self.scale(&scale).floor();
            let fy = other.scale(&scale).floor();
            if fx < fy {
                return Ordering::Less;
            }
            if fy < fx {
                return Ordering::Greater;
            }
            m += 16;
        }
    }
}

impl PartialOrd for QSqrt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Add<&QSqrt> for &QSqrt {
    type Output = QSqrt;
    fn add(self, rhs: &QSqrt) -> QSqrt {
        let rad = self.joint_rad(rhs);
        QSqrt::new(rad, &self.r0 + &rhs.r0, &self.r1 + &rhs.r1)
    }
}

impl Sub<&QSqrt> for &QSqrt {
    type Output = QSqrt;
    fn sub(self, rhs: &QSqrt) -> QSqrt {
        let rad = self.joint_rad(rhs);
        QSqrt::new(rad, &self.r0 - &rhs.r0, &self.r1 - &rhs.r1)
    }
}

impl Mul<&QSqrt> for &QSqrt {
    type Output = QSqrt;
    fn mul(self, rhs: &QSqrt) -> QSqrt {
        let rad = self.joint_rad(rhs);
        let r0 = &self.r0 * &rhs.r0 + &self.r1 * &rhs.r1 * rat(rad as i64);
        let r1 = &self.r0 * &rhs.r1 + &self.r1 * &rhs.r0;
        QSqrt::new(rad, r0, r1)
    }
}

impl Neg for &QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt::new(self.rad, -self.r0.clone(), -self.r1.clone())
    }
}

impl Neg for QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        -&self
    }
}

impl Add for QSqrt {
    type Output = QSqrt;
    fn add(self, rhs: QSqrt) -> QSqrt {
        &self + &rhs
    }
}

impl Sub for QSqrt {
    type Output = QSqrt;
    fn sub(self, rhs: QSqrt) -> QSqrt {
        &self - &rhs
    }
}

impl Mul for QSqrt {
    type Output = QSqrt;
    fn mul(self, rhs: QSqrt) -> QSqrt {
        &self * &rhs
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.r0)
        } else if self.r0.is_zero() {
            write!(f, "{}*sqrt({})", self.r1, self.rad)
        } else {
            write!(f, "{} + {}*sqrt({})", self.r0, self.r1, self.rad)
        }
    }
}

/// `re + i*im` with both parts in `Q(sqrt(p))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSqrt {
    pub re: QSqrt,
    pub im: QSqrt,
}

impl CSqrt {
    pub fn real(re: QSqrt) -> Self {
        CSqrt {
            re,
            im: QSqrt::zero(),
        }
    }

    pub fn new(re: QSqrt, im: QSqrt) -> Self {
        CSqrt { re, im }
    }

    pub fn zero() -> Self {
        CSqrt::real(QSqrt::zero())
    }

    pub fn one() -> Self {
        CSqrt::real(QSqrt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> CSqrt {
        CSqrt::new(self.re.clone(), -&self.im)
    }

    pub fn abs_sq(&self) -> QSqrt {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn scale(&self, c: &QSqrt) -> CSqrt {
        CSqrt::new(&self.re * c, &self.im * c)
    }

    pub fn inv(&self) -> Option<CSqrt> {
        let n = self.abs_sq().inv()?;
        Some(self.conj().scale(&n))
    }

    pub fn pow(&self, e: u32) -> CSqrt {
        let mut acc = CSqrt::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&CSqrt> for &CSqrt {
    type Output = CSqrt;
    fn add(self, rhs: &CSqrt) -> CSqrt {
        CSqrt::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&CSqrt> for &CSqrt {
    type Output = CSqrt;
    fn sub(self, rhs: &CSqrt) -> CSqrt {
        CSqrt::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&CSqrt> for &CSqrt {
    type Output = CSqrt;
    fn mul(self, rhs: &CSqrt) -> CSqrt {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        CSqrt::new(re, im)
    }
}

impl Neg for &CSqrt {
    type Output = CSqrt;
    fn neg(self) -> CSqrt {
        CSqrt::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for CSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({}) + i*({})", self.re, self.im)
        }
    }
}

/// Rational point `((1-t^2) + 2t i) / (1+t^2)` on the unit circle.
pub fn unit_from_parameter(t: &Rat) -> CSqrt {
    let t2 = t * t;
    let d = Rat::one() + &t2;
    let re = (Rat::one() - &t2) / &d;
    let im = (rat(2) * t) / d;
    CSqrt::new(QSqrt::rational(re), QSqrt::rational(im))
}

/// Squarefree test used to validate radicands.
pub(crate) fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d * d) {
            return false;
        }
        if m.is_multiple_of(d) {
            m /= d;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_across_fields() {
        let a = QSqrt::sqrt(2); // 1.41421...
        let b = QSqrt::new(3, rat(0), ratio(9, 11)); // 1.41713...
        assert!(a < b && b > a);
        assert!(-&a > -&b);
        let c = QSqrt::new(5, rat(1), rat(-1)); // -1.236...
        assert!(c < a && a > c);
        assert_eq!(QSqrt::int(2).partial_cmp(&a), Some(Ordering::Greater));
    }
    use crate::exactalg::laurent::ratio;

    #[test]
    fn sign_of_surds() {
        // 43/4 - 15/sqrt(2) = 43/4 - (15/2) sqrt(2) > 0
        let x = QSqrt::new(2, ratio(43, 4), ratio(-15, 2));
        assert_eq!(x.signum(), Ordering::Greater);
        // 4 - 2 sqrt(3) > 0
        assert_eq!(QSqrt::new(3, rat(4), rat(-2)).signum(), Ordering::Greater);
        // 1 - sqrt(2) < 0
        assert_eq!(QSqrt::new(2, rat(1), rat(-1)).signum(), Ordering::Less);
    }

    #[test]
    fn inverse_and_powers() {
        let x = QSqrt::new(5, rat(3), rat(-1));
        let one = &x * &x.inv().unwrap();
        assert_eq!(one, QSqrt::one());
        assert_eq!(QSqrt::sqrt_pow(2, 3), QSqrt::new(2, rat(0), rat(2)));
        assert_eq!(QSqrt::sqrt_pow(2, -2), QSqrt::rational(ratio(1, 2)));
        assert_eq!(QSqrt::sqrt_pow(3, -1), QSqrt::new(3, rat(0), ratio(1, 3)));
    }

    #[test]
    fn floor_and_rendering() {
        let x = QSqrt::new(2, rat(0), rat(1));
        assert_eq!(x.floor(), BigInt::from(1));
        assert_eq!((-&x).floor(), BigInt::from(-2));
        assert_eq!(x.to_sci(6), "1.41421e0");
        assert_eq!(QSqrt::int(72).to_sci(4), "7.200e1");
        assert_eq!(QSqrt::rational(ratio(-1, 1000)).to_sci(2), "-1.0e-3");
        // -24 / 2^(11/2)
        let u = QSqrt::new(2, rat(0), ratio(-24, 64));
        assert_eq!(u.to_sci(5), "-5.3033e-1");
    }

    #[test]
    fn unit_circle_points() {
        let a = unit_from_parameter(&ratio(1, 3));
        assert_eq!(a.abs_sq(), QSqrt::one());
        assert_eq!(a.inv().unwrap(), a.conj());
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(2));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert!(!is_squarefree(4));
    }
}
