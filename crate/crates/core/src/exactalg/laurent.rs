//! Sparse Laurent polynomials in the Satake symbol `a` and `q = p^{1/2}`.
//!
//! Exponents of `q` are affine in the weight symbol `k` ([`KExp`]), so an
//! identity proven on [`LaurentAQ`] values holds for every weight at once.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coefficient.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent of `q`, i.e. `q^(base + k_mult*k) = p^((base + k_mult*k)/2)`.
///
/// Ordered by dominance for large `k`: `k_mult` first, then `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct KExp {
    pub base: i64,
    pub k_mult: i64,
}

impl KExp {
    pub const ZERO: KExp = KExp { base: 0, k_mult: 0 };

    pub const fn new(base: i64, k_mult: i64) -> Self {
        KExp { base, k_mult }
    }

    pub const fn constant(base: i64) -> Self {
        KExp { base, k_mult: 0 }
    }

    pub fn at(self, k: i64) -> i64 {
        self.base + self.k_mult * k
    }

    pub fn is_k_free(self) -> bool {
        self.k_mult == 0
    }

    pub fn is_zero(self) -> bool {
        self.base == 0 && self.k_mult == 0
    }

    pub fn scaled(self, factor: i64) -> Self {
        KExp::new(self.base * factor, self.k_mult * factor)
    }
}

impl Ord for KExp {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k_mult, self.base).cmp(&(other.k_mult, other.base))
    }
}

impl PartialOrd for KExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for KExp {
    type Output = KExp;
    fn add(self, rhs: KExp) -> KExp {
        KExp::new(self.base + rhs.base, self.k_mult + rhs.k_mult)
    }
}

impl Sub for KExp {
    type Output = KExp;
    fn sub(self, rhs: KExp) -> KExp {
        KExp::new(self.base - rhs.base, self.k_mult - rhs.k_mult)
    }
}

impl Neg for KExp {
    type Output = KExp;
    fn neg(self) -> KExp {
        KExp::new(-self.base, -self.k_mult)
    }
}

impl fmt::Display for KExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k_mult, self.base) {
            (0, b) => write!(f, "{b}"),
            (m, b) => {
                match m {
                    1 => write!(f, "k")?,
                    -1 => write!(f, "-k")?,
                    m => write!(f, "{m}k")?,
                }
                match b.cmp(&0) {
                    Ordering::Greater => write!(f, "+{b}"),
                    Ordering::Less => write!(f, "{b}"),
                    Ordering::Equal => Ok(()),
                }
            }
        }
    }
}

/// Monomial `a^a * q^q` with unit coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono {
    pub a: i64,
    pub q: KExp,
}

impl Mono {
    pub const ONE: Mono = Mono {
        a: 0,
        q: KExp::ZERO,
    };

    pub const fn new(a: i64, q: KExp) -> Self {
        Mono { a, q }
    }

    /// `a^a * q^q` with a k-free `q` exponent.
    pub const fn aq(a: i64, q: i64) -> Self {
        Mono {
            a,
            q: KExp::constant(q),
        }
    }

    pub fn is_one(self) -> bool {
        self.a == 0 && self.q.is_zero()
    }

    pub fn inv(self) -> Mono {
        Mono::new(-self.a, -self.q)
    }

    pub fn pow(self, e: i64) -> Mono {
        Mono::new(self.a * e, self.q.scaled(e))
    }

    pub fn swap_a(self) -> Mono {
        Mono::new(-self.a, self.q)
    }

    /// Exponent vector in the order `(a, k_mult, base)`.
    pub(crate) fn vector(self) -> [i64; 3] {
        [self.a, self.q.k_mult, self.q.base]
    }

    pub(crate) fn from_vector(v: [i64; 3]) -> Mono {
        Mono::new(v[0], KExp::new(v[2], v[1]))
    }

    /// First nonzero coordinate of [`Self::vector`] is positive.
    pub fn is_positive(self) -> bool {
        self.vector()
            .iter()
            .find(|c| **c != 0)
            .is_some_and(|c| *c > 0)
    }
}

impl Mul for Mono {
    type Output = Mono;
    fn mul(self, rhs: Mono) -> Mono {
        Mono::new(self.a + rhs.a, self.q + rhs.q)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        if self.a != 0 {
            first = false;
            match self.a {
                1 => write!(f, "a")?,
                e => write!(f, "a^{e}")?,
            }
        }
        if !self.q.is_zero() {
            if !first {
                write!(f, "*")?;
            }
            match (self.q.k_mult, self.q.base) {
                (0, 1) => write!(f, "q")?,
                (0, b) if b > 0 => write!(f, "q^{b}")?,
                _ => write!(f, "q^({})", self.q)?,
            }
        }
        Ok(())
    }
}

/// Sparse Laurent polynomial in `a` and `q` with rational coefficients.
///
/// Zero coefficients are never stored and keys iterate in canonical order,
/// so derived equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentAQ {
    terms: BTreeMap<Mono, Rat>,
}

impl LaurentAQ {
    pub fn zero() -> Self {
        LaurentAQ::default()
    }

    pub fn one() -> Self {
        LaurentAQ::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        LaurentAQ::term(c, Mono::ONE)
    }

    pub fn int(n: i64) -> Self {
        LaurentAQ::constant(rat(n))
    }

    pub fn term(c: Rat, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentAQ { terms }
    }

    pub fn mono(m: Mono) -> Self {
        LaurentAQ::term(Rat::one(), m)
    }

    pub fn a_pow(e: i64) -> Self {
        LaurentAQ::mono(Mono::aq(e, 0))
    }

    pub fn q_pow(e: KExp) -> Self {
        LaurentAQ::mono(Mono::new(0, e))
    }

    /// `a + 1/a`.
    pub fn u() -> Self {
        LaurentAQ::a_pow(1) + LaurentAQ::a_pow(-1)
    }

    /// Builds a polynomial from raw `(a_exp, q_exp, coefficient)` triples,
    /// merging duplicate keys and dropping zeros.
    pub fn canonicalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (i64, KExp, Rat)>,
    {
        let mut out = LaurentAQ::zero();
        for (a, q, c) in raw {
            out.add_term(Mono::new(a, q), c);
        }
        out
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn as_monomial(&self) -> Option<(&Rat, Mono)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, *m))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentAQ::zero();
        }
        LaurentAQ {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Self {
        LaurentAQ {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k * m, v.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &Rat, m: Mono) -> Self {
        if c.is_zero() {
            return LaurentAQ::zero();
        }
        LaurentAQ {
            terms: self.terms.iter().map(|(k, v)| (*k * m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentAQ::one();
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

    /// Applies a monomial relabelling; colliding images are summed.
    pub fn map_monomials(&self, f: impl Fn(Mono) -> Mono) -> Self {
        let mut out = LaurentAQ::zero();
        for (m, c) in &self.terms {
            out.add_term(f(*m), c.clone());
        }
        out
    }

    /// Substitutes `a -> 1/a`.
    pub fn swap_a(&self) -> Self {
        self.map_monomials(Mono::swap_a)
    }

    pub fn is_symmetric_in_a(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| self.terms.get(&m.swap_a()) == Some(c))
    }

    pub fn is_k_free(&self) -> bool {
        self.terms.keys().all(|m| m.q.is_k_free())
    }

    pub fn is_a_free(&self) -> bool {
        self.terms.keys().all(|m| m.a == 0)
    }

    /// Fixes the weight symbol to a concrete `k`.
    pub fn specialize_k(&self, k: i64) -> Self {
        self.map_monomials(|m| Mono::new(m.a, KExp::constant(m.q.at(k))))
    }

    /// Term with the dominant `q` exponent for large `k` (ties broken by the
    /// largest `a` exponent).
    pub fn leading_q_term(&self) -> Option<(Mono, Rat)> {
        self.terms
            .iter()
            .max_by(|(m1, _), (m2, _)| (m1.q, m1.a).cmp(&(m2.q, m2.a)))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Sum of the coefficients attached to the maximal `q` exponent, as a
    /// Laurent polynomial in `a`.
    pub fn leading_q_part(&self) -> Option<(KExp, LaurentAQ)> {
        let top = self.terms.keys().map(|m| m.q).max()?;
        let part = self
            .terms
            .iter()
            .filter(|(m, _)| m.q == top)
            .map(|(m, c)| (m.a, KExp::ZERO, c.clone()));
        Some((top, LaurentAQ::canonicalize(part)))
    }

    /// Coefficient of `q^e` as a Laurent polynomial in `a` alone.
    pub fn q_coefficient(&self, e: KExp) -> LaurentAQ {
        LaurentAQ::canonicalize(
            self.terms
                .iter()
                .filter(|(m, _)| m.q == e)
                .map(|(m, c)| (m.a, KExp::ZERO, c.clone())),
        )
    }

    pub fn a_range(&self) -> Option<(i64, i64)> {
        let min = self.terms.keys().map(|m| m.a).min()?;
        let max = self.terms.keys().map(|m| m.a).max()?;
        Some((min, max))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(m, c)| TermRecord {
                a_exp: m.a,
                q_base: m.q.base,
                q_kmult: m.q.k_mult,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self> {
        let mut out = LaurentAQ::zero();
        for r in records {
            out.add_term(
                Mono::new(r.a_exp, KExp::new(r.q_base, r.q_kmult)),
                r.coefficient()?,
            );
        }
        Ok(out)
    }

    fn mul_impl(&self, rhs: &LaurentAQ) -> LaurentAQ {
        if self.is_zero() || rhs.is_zero() {
            return LaurentAQ::zero();
        }
        let (small, big) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            return big.mul_term(c, *m);
        }
        let mut acc: HashMap<Mono, Rat> = HashMap::with_capacity(small.len() * big.len());
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let prod = c1 * c2;
                acc.entry(*m1 * *m2)
                    .and_modify(|v| *v += &prod)
                    .or_insert(prod);
            }
        }
        LaurentAQ {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// One serialized term `num/den * a^a_exp * q^(q_base + q_kmult*k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub a_exp: i64,
    pub q_base: i64,
    #[serde(default)]
    pub q_kmult: i64,
    pub num: String,
    #[serde(default = "default_den")]
    pub den: String,
}

fn default_den() -> String {
    "1".to_string()
}

impl TermRecord {
    pub fn coefficient(&self) -> Result<Rat> {
        let num: BigInt = self
            .num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidData(format!("bad numerator {:?}", self.num)))?;
        let den: BigInt = self
            .den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidData(format!("bad denominator {:?}", self.den)))?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat::new(num, den))
    }
}

impl From<Rat> for LaurentAQ {
    fn from(c: Rat) -> Self {
        LaurentAQ::constant(c)
    }
}

impl From<Mono> for LaurentAQ {
    fn from(m: Mono) -> Self {
        LaurentAQ::mono(m)
    }
}

impl AddAssign<&LaurentAQ> for LaurentAQ {
    fn add_assign(&mut self, rhs: &LaurentAQ) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Add<&LaurentAQ> for &LaurentAQ {
    type Output = LaurentAQ;
    fn add(self, rhs: &LaurentAQ) -> LaurentAQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentAQ> for &LaurentAQ {
    type Output = LaurentAQ;
    fn sub(self, rhs: &LaurentAQ) -> LaurentAQ {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&LaurentAQ> for &LaurentAQ {
    type Output = LaurentAQ;
    fn mul(self, rhs: &LaurentAQ) -> LaurentAQ {
        self.mul_impl(rhs)
    }
}

impl Neg for &LaurentAQ {
    type Output = LaurentAQ;
    fn neg(self) -> LaurentAQ {
        LaurentAQ {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentAQ> for LaurentAQ {
            type Output = LaurentAQ;
            fn $f(self, rhs: LaurentAQ) -> LaurentAQ {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&LaurentAQ> for LaurentAQ {
            type Output = LaurentAQ;
            fn $f(self, rhs: &LaurentAQ) -> LaurentAQ {
                (&self).$f(rhs)
            }
        }
        impl $tr<LaurentAQ> for &LaurentAQ {
            type Output = LaurentAQ;
            fn $f(self, rhs: LaurentAQ) -> LaurentAQ {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentAQ {
    type Output = LaurentAQ;
    fn neg(self) -> LaurentAQ {
        -&self
    }
}

impl std::iter::Sum for LaurentAQ {
    fn sum<I: Iterator<Item = LaurentAQ>>(iter: I) -> Self {
        let mut acc = LaurentAQ::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl std::iter::Product for LaurentAQ {
    fn product<I: Iterator<Item = LaurentAQ>>(iter: I) -> Self {
        iter.fold(LaurentAQ::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for LaurentAQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_gives_zero() {
        let p = LaurentAQ::canonicalize([(0, KExp::ZERO, rat(1)), (0, KExp::ZERO, rat(-1))]);
        assert!(p.is_zero());
    }

    #[test]
    fn distinct_keys_do_not_merge() {
        let p = LaurentAQ::canonicalize([(2, KExp::ZERO, rat(1)), (-2, KExp::ZERO, rat(1))]);
        assert_eq!(p.len(), 2);
        assert_eq!(p, LaurentAQ::a_pow(2) + LaurentAQ::a_pow(-2));
    }

    #[test]
    fn weight_affine_monomial() {
        // a * p^(2k-1) = a * q^(4k-2)
        let p = LaurentAQ::canonicalize([(1, KExp::new(-2, 4), rat(1))]);
        let (c, m) = p.as_monomial().unwrap();
        assert!(c.is_one());
        assert_eq!(m, Mono::new(1, KExp::new(-2, 4)));
        assert_eq!(p.specialize_k(6), LaurentAQ::mono(Mono::aq(1, 22)));
        assert_eq!(p.to_string(), "a*q^(4k-2)");
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let raw = vec![
            (1, KExp::new(3, 1), ratio(1, 2)),
            (1, KExp::new(3, 1), ratio(1, 3)),
            (-4, KExp::ZERO, rat(7)),
        ];
        let once = LaurentAQ::canonicalize(raw);
        let again = LaurentAQ::canonicalize(once.terms().map(|(m, c)| (m.a, m.q, c.clone())));
        assert_eq!(once, again);
    }

    #[test]
    fn conjugate_pair_product() {
        let u = LaurentAQ::u();
        let sq = &u * &u;
        assert_eq!(
            sq,
            LaurentAQ::a_pow(2) + LaurentAQ::int(2) + LaurentAQ::a_pow(-2)
        );
        assert!(sq.is_symmetric_in_a());
        assert!(!LaurentAQ::a_pow(1).is_symmetric_in_a());
    }

    #[test]
    fn records_round_trip() {
        let p = LaurentAQ::term(ratio(-3, 7), Mono::new(2, KExp::new(-1, 2))) + LaurentAQ::int(5);
        assert_eq!(LaurentAQ::from_records(&p.to_records()).unwrap(), p);
    }

    #[test]
    fn kexp_display() {
        assert_eq!(KExp::new(-2, 4).to_string(), "4k-2");
        assert_eq!(KExp::new(0, -1).to_string(), "-k");
        assert_eq!(KExp::new(3, 0).to_string(), "3");
    }
}
