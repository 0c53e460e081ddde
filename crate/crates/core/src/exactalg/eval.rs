//! Substituting concrete `(p, k, a)` into symbolic expressions.
//!
//! Evaluation is exact. The Satake value is given either as a Gaussian
//! rational point `a` on the unit circle (then `1/a = conj(a)`) or as the
//! trace `u = a + 1/a`, in which case the expression must be symmetric under
//! `a <-> 1/a` and is rewritten as a polynomial in `u` first ([`UPoly`]).

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::field::{is_squarefree, CSqrt, QSqrt};
use super::frac::{FactoredFrac, FracAQ};
use super::laurent::{rat, KExp, LaurentAQ, Rat};

pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Concrete Satake data at a prime.
#[derive(Clone, Debug, PartialEq)]
pub enum SatakeValue {
    /// `a` itself, with `|a| = 1`.
    Unit(CSqrt),
    /// `u = a + 1/a` in `[-2, 2]`.
    Trace(QSqrt),
}

#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub p: u64,
    pub k: i64,
    pub a: SatakeValue,
    /// Only controls how many digits are rendered; arithmetic is exact.
    pub precision_bits: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[lo, hi]` by a plain sieve.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let n = hi as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    if n >= 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (lo.max(2) as usize..=n)
        .filter(|i| sieve[*i])
        .map(|i| i as u64)
        .collect()
}

impl EvalPoint {
    pub fn new(p: u64, k: i64, a: SatakeValue) -> Result<Self> {
        EvalPoint::with_precision(p, k, a, DEFAULT_PRECISION_BITS)
    }

    pub fn with_precision(p: u64, k: i64, a: SatakeValue, precision_bits: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k <= 0 {
            return Err(Error::NonPositiveWeight(k));
        }
        debug_assert!(is_squarefree(p));
        let check_rad = |x: &QSqrt| -> Result<()> {
            if !x.is_rational() && x.radicand() != p {
                return Err(Error::RadicandMismatch {
                    expected: p,
                    found: x.radicand(),
                });
            }
            Ok(())
        };
        match &a {
            SatakeValue::Unit(z) => {
                check_rad(&z.re)?;
                check_rad(&z.im)?;
                if z.abs_sq() != QSqrt::one() {
                    return Err(Error::NotUnitModulus);
                }
            }
            SatakeValue::Trace(u) => {
                check_rad(u)?;
                if u.abs() > QSqrt::int(2) {
                    return Err(Error::TraceOutOfRange(u.to_string()));
                }
            }
        }
        Ok(EvalPoint {
            p,
            k,
            a,
            precision_bits,
        })
    }

    /// Point given by the trace `u`; `u = +-2` is stored as `a = +-1`.
    pub fn from_u(p: u64, k: i64, u: QSqrt) -> Result<Self> {
        let a = if u == QSqrt::int(2) {
            SatakeValue::Unit(CSqrt::one())
        } else if u == QSqrt::int(-2) {
            SatakeValue::Unit(CSqrt::real(QSqrt::int(-1)))
        } else {
            SatakeValue::Trace(u)
        };
        EvalPoint::new(p, k, a)
    }

    pub fn u(&self) -> QSqrt {
        match &self.a {
            SatakeValue::Unit(z) => &z.re + &z.re,
            SatakeValue::Trace(u) => u.clone(),
        }
    }

    /// Significant decimal digits implied by `precision_bits`.
    pub fn digits(&self) -> usize {
        digits_for_bits(self.precision_bits)
    }

    pub fn q_pow(&self, e: KExp) -> QSqrt {
        QSqrt::sqrt_pow(self.p, e.at(self.k))
    }
}

pub fn digits_for_bits(bits: u32) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

/// Exact value of `expr` at `pt`.
pub fn evaluate(expr: &LaurentAQ, pt: &EvalPoint) -> Result<CSqrt> {
    match &pt.a {
        SatakeValue::Unit(a) => Ok(evaluate_at_unit(expr, pt, a)),
        SatakeValue::Trace(u) => {
            let up = UPoly::from_symmetric(expr)?;
            Ok(CSqrt::real(up.eval(pt.p, pt.k, u)))
        }
    }
}

fn evaluate_at_unit(expr: &LaurentAQ, pt: &EvalPoint, a: &CSqrt) -> CSqrt {
    let ainv = a.conj();
    let mut apows: HashMap<i64, CSqrt> = HashMap::new();
    let mut qpows: HashMap<i64, QSqrt> = HashMap::new();
    let mut acc = CSqrt::zero();
    for (m, c) in expr.terms() {
        let ap = apows
            .entry(m.a)
            .or_insert_with(|| {
                if m.a >= 0 {
                    a.pow(m.a as u32)
                } else {
                    ainv.pow((-m.a) as u32)
                }
            })
            .clone();
        let e = m.q.at(pt.k);
        let qp = qpows
            .entry(e)
            .or_insert_with(|| QSqrt::sqrt_pow(pt.p, e))
            .clone();
        let coeff = qp.scale(c);
        acc = &acc + &ap.scale(&coeff);
    }
    acc
}

/// Real value of an expression that must evaluate to a real number.
pub fn evaluate_real(expr: &LaurentAQ, pt: &EvalPoint) -> Result<QSqrt> {
    let v = evaluate(expr, pt)?;
    if !v.is_real() {
        return Err(Error::NotSymmetric);
    }
    Ok(v.re)
}

pub fn evaluate_frac(f: &FracAQ, pt: &EvalPoint) -> Result<CSqrt> {
    let d = evaluate(&f.den, pt)?;
    let inv = d.inv().ok_or(Error::PoleAtPoint)?;
    Ok(&evaluate(&f.num, pt)? * &inv)
}

pub fn evaluate_factored(f: &FactoredFrac, pt: &EvalPoint) -> Result<CSqrt> {
    let mut val = evaluate(&f.num, pt)?;
    for (atom, e) in &f.den {
        let d = evaluate(&atom.to_laurent(), pt)?;
        let inv = d.inv().ok_or(Error::PoleAtPoint)?;
        val = &val * &inv.pow(*e);
    }
    Ok(val)
}

/// Value of an `a`-free expression.
pub fn eval_q(expr: &LaurentAQ, p: u64, k: i64) -> Result<QSqrt> {
    if !expr.is_a_free() {
        return Err(Error::NotAFree);
    }
    let mut acc = QSqrt::zero();
    for (m, c) in expr.terms() {
        acc = &acc + &QSqrt::sqrt_pow(p, m.q.at(k)).scale(c);
    }
    Ok(acc)
}

/// `a^e + a^-e` as a polynomial in `u = a + 1/a` (coefficients of `u^0..u^e`).
pub fn chebyshev_v(e: usize) -> Vec<i64> {
    let mut prev = vec![2i64];
    let mut cur = vec![0i64, 1];
    if e == 0 {
        return prev;
    }
    for _ in 1..e {
        let mut next = vec![0i64; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// A symmetric expression rewritten as `sum_e q^e * poly_e(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub parts: BTreeMap<KExp, Vec<Rat>>,
}

impl UPoly {
    pub fn from_symmetric(expr: &LaurentAQ) -> Result<Self> {
        if !expr.is_symmetric_in_a() {
            return Err(Error::NotSymmetric);
        }
        let mut parts: BTreeMap<KExp, Vec<Rat>> = BTreeMap::new();
        for (m, c) in expr.terms() {
            if m.a < 0 {
                continue;
            }
            let e = m.a as usize;
            let slot = parts.entry(m.q).or_default();
            if slot.len() < e + 1 {
                slot.resize(e + 1, Rat::zero());
            }
            if e == 0 {
                slot[0] += c;
            } else {
                for (d, v) in chebyshev_v(e).iter().enumerate() {
                    if *v != 0 {
                        slot[d] += c * rat(*v);
                    }
                }
            }
        }
        Ok(UPoly { parts })
    }

    /// Coefficients of `u^d` at a concrete `(p, k)`.
    pub fn specialize(&self, p: u64, k: i64) -> Vec<QSqrt> {
        let deg = self.parts.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![QSqrt::zero(); deg];
        for (e, poly) in &self.parts {
            let qp = QSqrt::sqrt_pow(p, e.at(k));
            for (d, c) in poly.iter().enumerate() {
                if !c.is_zero() {
                    out[d] = &out[d] + &qp.scale(c);
                }
            }
        }
        while out.last().is_some_and(QSqrt::is_zero) {
            out.pop();
        }
        out
    }

    pub fn eval(&self, p: u64, k: i64, u: &QSqrt) -> QSqrt {
        horner(&self.specialize(p, k), u)
    }
}

pub fn horner(coeffs: &[QSqrt], u: &QSqrt) -> QSqrt {
    let mut acc = QSqrt::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * u) + c;
    }
    acc
}

/// Uniform grid of `m` rational points on `[-2, 2]` (endpoints included).
pub fn u_grid(m: usize) -> Vec<QSqrt> {
    match m {
        0 => Vec::new(),
        1 => vec![QSqrt::zero()],
        _ => (0..m)
            .map(|i| {
                let num = rat(4 * i as i64) / rat((m - 1) as i64);
                QSqrt::rational(num - rat(2))
            })
            .collect(),
    }
}

/// Sanity helper for tests and reports: `1` as a point value.
pub fn one_value() -> CSqrt {
    CSqrt::real(QSqrt::rational(Rat::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::unit_from_parameter;
    use crate::exactalg::laurent::{ratio, Mono};

    #[test]
    fn trace_at_a_equal_one() {
        let pt = EvalPoint::from_u(5, 6, QSqrt::int(2)).unwrap();
        assert_eq!(
            evaluate(&LaurentAQ::u(), &pt).unwrap(),
            CSqrt::real(QSqrt::int(2))
        );
    }

    #[test]
    fn weight_power() {
        let pt = EvalPoint::from_u(2, 6, QSqrt::zero()).unwrap();
        let e = LaurentAQ::q_pow(KExp::new(-2, 4));
        assert_eq!(eval_q(&e, 2, 6).unwrap(), QSqrt::int(2048));
        assert_eq!(evaluate(&e, &pt).unwrap(), CSqrt::real(QSqrt::int(2048)));
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(
            EvalPoint::from_u(4, 6, QSqrt::zero()),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            EvalPoint::from_u(5, 6, QSqrt::int(3)),
            Err(Error::TraceOutOfRange(_))
        ));
        let bad = SatakeValue::Unit(CSqrt::real(QSqrt::int(2)));
        assert!(matches!(
            EvalPoint::new(5, 6, bad),
            Err(Error::NotUnitModulus)
        ));
    }

    #[test]
    fn u_route_matches_unit_route() {
        let a = unit_from_parameter(&ratio(2, 7));
        let pt_a = EvalPoint::new(7, 3, SatakeValue::Unit(a.clone())).unwrap();
        let pt_u = EvalPoint::from_u(7, 3, &a.re + &a.re).unwrap();
        let expr = LaurentAQ::canonicalize([
            (3, KExp::new(1, 1), rat(2)),
            (-3, KExp::new(1, 1), rat(2)),
            (1, KExp::constant(-3), ratio(1, 5)),
            (-1, KExp::constant(-3), ratio(1, 5)),
            (0, KExp::constant(4), rat(-7)),
        ]);
        assert_eq!(
            evaluate(&expr, &pt_a).unwrap(),
            evaluate(&expr, &pt_u).unwrap()
        );
        assert!(matches!(
            evaluate(&LaurentAQ::mono(Mono::aq(1, 0)), &pt_u),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev_v(0), vec![2]);
        assert_eq!(chebyshev_v(1), vec![0, 1]);
        assert_eq!(chebyshev_v(2), vec![-2, 0, 1]);
        assert_eq!(chebyshev_v(3), vec![0, -3, 0, 1]);
    }

    #[test]
    fn prime_sieve() {
        assert_eq!(primes_in(2, 20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_in(10, 10), Vec::<u64>::new());
        assert_eq!(primes_in(1, 1000).len(), 168);
    }

    #[test]
    fn grid_endpoints() {
        let g = u_grid(101);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], QSqrt::int(-2));
        assert_eq!(g[50], QSqrt::zero());
        assert_eq!(g[100], QSqrt::int(2));
    }
}
