//! `lambda(p^r)` for genus-4 lifts.
//!
//! `1/Q` is split into partial fractions in the normalized variable
//! `X = p^(2k-1) x`, where every residue is a `k`-free rational function of
//! `a` and `q`. The `x^r` coefficient `g(r)` of `1/Q` follows in closed form,
//! and `lambda(p^r) = sum_i e_i g(r-i)` once the numerator coefficients `e_i`
//! are supplied.

#![allow(non_snake_case)]

pub mod appendix;
pub mod dr;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::eval::{evaluate, evaluate_factored, horner, primes_in, u_grid, UPoly};
use crate::exactalg::frac::{FactoredFrac, OneMinus};
use crate::exactalg::{
    series_quotient, CSqrt, EvalPoint, LaurentAQ, Mono, PolyX, QSqrt, Rat, TermRecord,
};
use crate::lfactor::{genus4_root_monomials, genus4_scale};
use crate::par::{self, Exec};

pub use appendix::{load_appendix, verify_appendix, AppendixData, AppendixReport};
pub use dr::{d_factor, dr_leading_identity, DrFactorization};

/// A root `rho` of `prod (1 - rho X)^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootDatum {
    pub rho: Mono,
    pub multiplicity: u32,
}

/// `coeff / (1 - rho X)^order`.
#[derive(Clone, Debug)]
pub struct PFTerm {
    pub rho: Mono,
    pub order: u32,
    pub coeff: FactoredFrac,
}

pub fn genus4_roots() -> Vec<RootDatum> {
    genus4_root_monomials()
        .into_iter()
        .map(|(rho, multiplicity)| RootDatum { rho, multiplicity })
        .collect()
}

/// `prod (1 - rho X)^m` as a polynomial in `X`.
pub fn roots_poly(roots: &[RootDatum]) -> PolyX {
    PolyX::product(
        roots.iter().flat_map(|r| {
            (0..r.multiplicity).map(move |_| PolyX::one_minus(LaurentAQ::mono(r.rho)))
        }),
    )
}

/// Partial fractions of `1 / prod (1 - rho_i X)^(m_i)` with `X = scale * x`.
#[derive(Clone, Debug)]
pub struct PartialFraction {
    pub roots: Vec<RootDatum>,
    pub scale: Mono,
    pub terms: Vec<PFTerm>,
    // every coefficient over one common binomial denominator
    common_den: BTreeMap<OneMinus, u32>,
    common_num: Vec<LaurentAQ>,
}

fn ratio_factor(rho_j: Mono, rho_i: Mono, m: u32) -> Result<FactoredFrac> {
    Ok(FactoredFrac::inv_one_minus(&Rat::from_integer(1.into()), rho_j * rho_i.inv())?.pow(m))
}

pub fn partial_fraction(roots: &[RootDatum], scale: Mono) -> Result<PartialFraction> {
    for (i, r) in roots.iter().enumerate() {
        if !(1..=2).contains(&r.multiplicity) {
            return Err(Error::UnsupportedMultiplicity(r.multiplicity));
        }
        if let Some(o) = roots[..i].iter().find(|o| o.rho == r.rho) {
            return Err(Error::DegenerateRoots(o.rho.to_string(), r.rho.to_string()));
        }
    }
    let mut terms = Vec::new();
    for (i, ri) in roots.iter().enumerate() {
        let mut h = FactoredFrac::one();
        for (j, rj) in roots.iter().enumerate() {
            if j != i {
                h = h.mul(&ratio_factor(rj.rho, ri.rho, rj.multiplicity)?);
            }
        }
        if ri.multiplicity == 1 {
            terms.push(PFTerm {
                rho: ri.rho,
                order: 1,
                coeff: h,
            });
        } else {
            // h'/h at 1/rho, divided by rho: sum m_j t_j / (1 - t_j), t_j = rho_j/rho
            let mut parts = Vec::new();
            for (j, rj) in roots.iter().enumerate() {
                if j != i {
                    let t = rj.rho * ri.rho.inv();
                    let f = ratio_factor(rj.rho, ri.rho, 1)?.mul_laurent(&LaurentAQ::term(
                        Rat::from_integer(rj.multiplicity.into()),
                        t,
                    ));
                    parts.push(f);
                }
            }
            let b1 = h
                .mul(&FactoredFrac::sum(parts))
                .mul_laurent(&LaurentAQ::int(-1));
            terms.push(PFTerm {
                rho: ri.rho,
                order: 2,
                coeff: h,
            });
            terms.push(PFTerm {
                rho: ri.rho,
                order: 1,
                coeff: b1,
            });
        }
    }
    let (common_den, common_num) = common_form(&terms);
    Ok(PartialFraction {
        roots: roots.to_vec(),
        scale,
        terms,
        common_den,
        common_num,
    })
}

fn common_form(terms: &[PFTerm]) -> (BTreeMap<OneMinus, u32>, Vec<LaurentAQ>) {
    let mut lcm: BTreeMap<OneMinus, u32> = BTreeMap::new();
    for t in terms {
        for (a, e) in &t.coeff.den {
            let slot = lcm.entry(a.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
    }
    let mut cache: BTreeMap<(OneMinus, u32), LaurentAQ> = BTreeMap::new();
    let nums = terms
        .iter()
        .map(|t| {
            let mut n = t.coeff.num.clone();
            for (a, e) in &lcm {
                let missing = e - t.coeff.den.get(a).copied().unwrap_or(0);
                if missing > 0 {
                    let f = cache
                        .entry((a.clone(), missing))
                        .or_insert_with(|| a.to_laurent().pow(missing));
                    n = &n * &*f;
                }
            }
            n
        })
        .collect();
    (lcm, nums)
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl PartialFraction {
    /// The genus-4 decomposition with `X = p^(2k-1) x`.
    pub fn genus4() -> Result<Self> {
        partial_fraction(&genus4_roots(), genus4_scale())
    }

    pub fn term(&self, rho: Mono, order: u32) -> Option<&PFTerm> {
        self.terms.iter().find(|t| t.rho == rho && t.order == order)
    }

    /// `[X^r]` of `1/Q`, a `k`-free Laurent polynomial.
    pub fn g_normalized(&self, r: usize) -> Result<LaurentAQ> {
        let mut num = LaurentAQ::zero();
        for (t, n) in self.terms.iter().zip(&self.common_num) {
            let c = binomial((r + t.order as usize - 1) as u64, (t.order - 1) as u64);
            let shifted = n.mul_term(&Rat::from_integer(c), t.rho.pow(r as i64));
            num += &shifted;
        }
        FactoredFrac {
            num,
            den: self.common_den.clone(),
        }
        .into_laurent()
    }

    /// `[x^r]` of `1/Q`: `g_normalized(r) * scale^r`.
    pub fn g_of_r(&self, r: usize) -> Result<LaurentAQ> {
        Ok(self.g_normalized(r)?.mul_mono(self.scale.pow(r as i64)))
    }

    pub fn g_values(&self, max_r: usize, exec: Exec) -> Result<Vec<LaurentAQ>> {
        par::map_range(exec, max_r + 1, |r| self.g_of_r(r))
            .into_iter()
            .collect()
    }

    /// Symbolic proof that the terms sum to `1/Q`: both sides are proper
    /// rational functions over `Q`, so agreement of the first `deg Q` series
    /// coefficients forces equality.
    pub fn reconstruction_holds(&self) -> Result<bool> {
        let q = roots_poly(&self.roots);
        let deg = q.degree().unwrap_or(0);
        let series = series_quotient(&PolyX::one(), &q, deg)?;
        for (r, s) in series.iter().enumerate() {
            if &self.g_normalized(r)? != s {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Root values at a point; coincident values make the decomposition
    /// meaningless there.
    pub fn check_point(&self, pt: &EvalPoint) -> Result<Vec<CSqrt>> {
        let vals: Vec<CSqrt> = self
            .roots
            .iter()
            .map(|r| evaluate(&LaurentAQ::mono(r.rho), pt))
            .collect::<Result<_>>()?;
        for i in 0..vals.len() {
            for j in 0..i {
                if vals[i] == vals[j] {
                    return Err(Error::DegenerateRoots(
                        self.roots[j].rho.to_string(),
                        self.roots[i].rho.to_string(),
                    ));
                }
            }
        }
        Ok(vals)
    }

    /// `sum_t coeff_t / (1 - rho_t X)^order_t` at a concrete point and `X`.
    pub fn evaluate_sum(&self, pt: &EvalPoint, x_norm: &CSqrt) -> Result<CSqrt> {
        let rho_vals = self.check_point(pt)?;
        let mut acc = CSqrt::zero();
        for t in &self.terms {
            let idx = self
                .roots
                .iter()
                .position(|r| r.rho == t.rho)
                .expect("root of term");
            let d = &CSqrt::one() - &(&rho_vals[idx] * x_norm);
            let inv = d.inv().ok_or(Error::PoleAtPoint)?.pow(t.order);
            acc = &acc + &(&evaluate_factored(&t.coeff, pt)? * &inv);
        }
        Ok(acc)
    }
}

/// Numerator coefficients `e_0..e_d` of `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumeratorData {
    pub genus: usize,
    pub provenance: String,
    pub e: Vec<LaurentAQ>,
}

#[derive(Serialize, Deserialize)]
struct NumeratorFile {
    genus: usize,
    #[serde(default)]
    provenance: String,
    e: Vec<NumeratorEntry>,
}

#[derive(Serialize, Deserialize)]
struct NumeratorEntry {
    xpow: usize,
    terms: Vec<TermRecord>,
}

impl NumeratorData {
    pub fn new(genus: usize, provenance: impl Into<String>, e: Vec<LaurentAQ>) -> Result<Self> {
        let d = NumeratorData {
            genus,
            provenance: provenance.into(),
            e,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn max_degree(genus: usize) -> usize {
        (1usize << genus).saturating_sub(2)
    }

    fn validate(&self) -> Result<()> {
        if self.e.first().map(LaurentAQ::is_one) != Some(true) {
            return Err(Error::InvalidData(
                "numerator constant term e_0 must be 1".into(),
            ));
        }
        let max = Self::max_degree(self.genus);
        if let Some(last) = self.e.iter().rposition(|c| !c.is_zero()) {
            if last > max {
                return Err(Error::InvalidData(format!(
                    "numerator degree {last} exceeds {max} for genus {}",
                    self.genus
                )));
            }
        }
        Ok(())
    }

    pub fn to_poly(&self) -> PolyX {
        PolyX::new(self.e.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: NumeratorFile = serde_json::from_str(text).map_err(|e| Error::Json {
            context: "numerator data".into(),
            source: e,
        })?;
        let deg = f.e.iter().map(|x| x.xpow).max().unwrap_or(0);
        let mut e = vec![LaurentAQ::zero(); deg + 1];
        for entry in &f.e {
            e[entry.xpow] += &LaurentAQ::from_records(&entry.terms)?;
        }
        NumeratorData::new(f.genus, f.provenance, e)
    }

    pub fn to_json(&self) -> String {
        let f = NumeratorFile {
            genus: self.genus,
            provenance: self.provenance.clone(),
            e: self
                .e
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(xpow, c)| NumeratorEntry {
                    xpow,
                    terms: c.to_records(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&f).expect("serializable")
    }

    pub fn load(path: &Path) -> Result<Self> {
        NumeratorData::from_json(&std::fs::read_to_string(path)?)
    }
}

/// `g(0..=max_r)` for some genus, from partial fractions or from the series.
#[derive(Clone, Debug)]
pub struct GSeries {
    pub genus: usize,
    pub values: Vec<LaurentAQ>,
}

impl GSeries {
    pub fn genus4(max_r: usize, exec: Exec) -> Result<Self> {
        let pf = PartialFraction::genus4()?;
        Ok(GSeries {
            genus: 4,
            values: pf.g_values(max_r, exec)?,
        })
    }

    pub fn from_q(genus: usize, q: &PolyX, max_r: usize) -> Result<Self> {
        Ok(GSeries {
            genus,
            values: series_quotient(&PolyX::one(), q, max_r)?,
        })
    }

    pub fn g(&self, r: i64) -> LaurentAQ {
        if r < 0 {
            return LaurentAQ::zero();
        }
        self.values
            .get(r as usize)
            .cloned()
            .expect("g(r) beyond the computed range")
    }
}

/// `lambda(p^r) = sum_i e_i g(r - i)`.
pub fn lambda_pr(numerator: Option<&NumeratorData>, g: &GSeries, r: usize) -> Result<LaurentAQ> {
    let numerator = numerator.ok_or_else(|| {
        Error::NumeratorDataRequired(format!("genus {} needs the coefficients e_i of P", g.genus))
    })?;
    if numerator.genus != g.genus {
        return Err(Error::InvalidData(format!(
            "numerator data is for genus {}, series is genus {}",
            numerator.genus, g.genus
        )));
    }
    if r >= g.values.len() {
        return Err(Error::InvalidArgument(format!(
            "r = {r} beyond computed range"
        )));
    }
    let mut acc = LaurentAQ::zero();
    for (i, e) in numerator.e.iter().enumerate().take(r + 1) {
        if !e.is_zero() {
            acc += &(e * &g.g(r as i64 - i as i64));
        }
    }
    Ok(acc)
}

/// Outcome of an empirical scan for negative `lambda(p^r)`.
#[derive(Clone, Debug)]
pub struct CrReport {
    pub r: usize,
    pub k: i64,
    pub prime_hi: u64,
    pub u_grid: usize,
    pub scanned_points: usize,
    pub negative_points: usize,
    pub largest_negative_prime: Option<u64>,
    pub negative_primes: Vec<u64>,
}

/// Largest prime `p <= prime_hi` where `lambda(p^r) < 0` at some grid `u`.
pub fn threshold_C_r(
    r: usize,
    k: i64,
    numerator: Option<&NumeratorData>,
    prime_hi: u64,
    u_points: usize,
    exec: Exec,
) -> Result<CrReport> {
    let numerator = numerator.ok_or_else(|| {
        Error::NumeratorDataRequired("the C_r scan needs the coefficients e_i of P".into())
    })?;
    if prime_hi < 3 {
        return Err(Error::InvalidArgument("prime_hi must be at least 3".into()));
    }
    let g = if numerator.genus == 4 {
        GSeries::genus4(r, exec)?
    } else {
        return Err(Error::InvalidData(
            "C_r scans are implemented for genus 4".into(),
        ));
    };
    let lam = lambda_pr(Some(numerator), &g, r)?;
    let up = UPoly::from_symmetric(&lam)?;
    let primes = primes_in(2, prime_hi);
    let grid = u_grid(u_points);
    let per_prime = par::map(exec, &primes, |&p| {
        let c = up.specialize(p, k);
        grid.iter()
            .filter(|u| horner(&c, u).signum() == Ordering::Less)
            .count()
    });
    let negative_primes: Vec<u64> = primes
        .iter()
        .zip(&per_prime)
        .filter(|(_, n)| **n > 0)
        .map(|(p, _)| *p)
        .collect();
    Ok(CrReport {
        r,
        k,
        prime_hi,
        u_grid: u_points,
        scanned_points: primes.len() * grid.len(),
        negative_points: per_prime.iter().sum(),
        largest_negative_prime: negative_primes.last().copied(),
        negative_primes,
    })
}

/// `lambda(p^r)` evaluated at concrete `(p, k, u)`.
pub fn lambda_pr_value(lam: &LaurentAQ, p: u64, k: i64, u: &QSqrt) -> Result<QSqrt> {
    let pt = EvalPoint::from_u(p, k, u.clone())?;
    let v = evaluate(lam, &pt)?;
    if !v.is_real() {
        return Err(Error::NotSymmetric);
    }
    Ok(v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{genus4_lambda_p_symbols, lambda_p_from_Q};
    use crate::exactalg::{rat, KExp};
    use crate::lfactor::{genus2_P, genus2_Q, genus4_Q_closed, Genus2Variant};

    fn toy() -> Vec<RootDatum> {
        vec![
            RootDatum {
                rho: Mono::ONE,
                multiplicity: 1,
            },
            RootDatum {
                rho: Mono::aq(0, 2),
                multiplicity: 1,
            },
        ]
    }

    #[test]
    fn toy_decomposition() {
        // 1/((1-X)(1-qX)) with q^2 in place of 2
        let pf = partial_fraction(&toy(), Mono::ONE).unwrap();
        let a1 = pf.term(Mono::ONE, 1).unwrap().coeff.to_frac();
        let a2 = pf.term(Mono::aq(0, 2), 1).unwrap().coeff.to_frac();
        use crate::exactalg::FracAQ;
        let one = LaurentAQ::one();
        let q2 = LaurentAQ::q_pow(KExp::constant(2));
        assert_eq!(a1, FracAQ::new(one.clone(), &one - &q2).unwrap());
        assert_eq!(a2, FracAQ::new(q2.clone(), &q2 - &one).unwrap());
        assert!(pf.reconstruction_holds().unwrap());
    }

    #[test]
    fn coincident_roots_rejected() {
        let mut r = toy();
        r.push(RootDatum {
            rho: Mono::ONE,
            multiplicity: 1,
        });
        assert!(matches!(
            partial_fraction(&r, Mono::ONE),
            Err(Error::DegenerateRoots(..))
        ));
        let r = vec![RootDatum {
            rho: Mono::ONE,
            multiplicity: 3,
        }];
        assert!(matches!(
            partial_fraction(&r, Mono::ONE),
            Err(Error::UnsupportedMultiplicity(3))
        ));
    }

    #[test]
    fn genus4_root_list() {
        let roots = genus4_roots();
        assert_eq!(roots.iter().map(|r| r.multiplicity).sum::<u32>(), 16);
        let prod = roots
            .iter()
            .fold(Mono::ONE, |acc, r| acc * r.rho.pow(r.multiplicity as i64));
        assert!(prod.is_one());
        for r in &roots {
            assert!(roots
                .iter()
                .any(|o| o.rho == r.rho.inv() && o.multiplicity == r.multiplicity));
        }
    }

    #[test]
    fn g_small_orders() {
        let pf = PartialFraction::genus4().unwrap();
        assert!(pf.g_of_r(0).unwrap().is_one());
        let q = genus4_Q_closed();
        assert_eq!(pf.g_of_r(1).unwrap(), lambda_p_from_Q(&q));
        assert_eq!(pf.g_of_r(1).unwrap(), genus4_lambda_p_symbols().t_p);
    }

    #[test]
    fn numerator_validation() {
        assert!(NumeratorData::new(4, "", vec![LaurentAQ::int(2)]).is_err());
        let mut e = vec![LaurentAQ::zero(); 16];
        e[0] = LaurentAQ::one();
        e[15] = LaurentAQ::one();
        assert!(NumeratorData::new(4, "", e).is_err());
        let d = NumeratorData::new(
            4,
            "test",
            vec![LaurentAQ::one(), LaurentAQ::zero(), LaurentAQ::u()],
        )
        .unwrap();
        assert_eq!(NumeratorData::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn missing_numerator_is_reported() {
        let g = GSeries::from_q(4, &genus4_Q_closed(), 2).unwrap();
        assert!(matches!(
            lambda_pr(None, &g, 1),
            Err(Error::NumeratorDataRequired(_))
        ));
        let e2 = NumeratorData::new(2, "", vec![LaurentAQ::one()]).unwrap();
        assert!(matches!(
            lambda_pr(Some(&e2), &g, 1),
            Err(Error::InvalidData(_))
        ));
    }

    #[test]
    fn genus_two_lambda_p2() {
        let (l1, l2) = (LaurentAQ::a_pow(101), LaurentAQ::a_pow(-307));
        let q = genus2_Q(&l1, &l2);
        let p = genus2_P(Genus2Variant::Corrected);
        let data = NumeratorData::new(2, "corrected", p.coeffs().to_vec()).unwrap();
        let g = GSeries::from_q(2, &q, 2).unwrap();
        assert!(lambda_pr(Some(&data), &g, 0).unwrap().is_one());
        assert_eq!(lambda_pr(Some(&data), &g, 1).unwrap(), l1);
        assert_eq!(lambda_pr(Some(&data), &g, 2).unwrap(), l2);
    }

    #[test]
    fn constant_numerator_scan_never_negative_at_r_zero() {
        let data = NumeratorData::new(4, "trivial", vec![LaurentAQ::one()]).unwrap();
        let rep = threshold_C_r(0, 6, Some(&data), 50, 11, Exec::default()).unwrap();
        assert_eq!(rep.largest_negative_prime, None);
        let rep = threshold_C_r(1, 6, Some(&data), 50, 11, Exec::default()).unwrap();
        assert_eq!(rep.largest_negative_prime, None);
        assert!(rep.scanned_points > 0);
        let _ = rat(0);
    }
}

#[cfg(test)]
mod genus4_tests {
    use super::*;
    use crate::exactalg::{rat, KExp};
    use crate::lfactor::genus4_Q_closed;
    use proptest::prelude::*;

    #[test]
    fn reconstruction_is_exact() {
        let pf = PartialFraction::genus4().unwrap();
        assert_eq!(pf.terms.len(), 16);
        assert!(pf.reconstruction_holds().unwrap());
    }

    #[test]
    fn g_matches_series_expansion() {
        let pf = PartialFraction::genus4().unwrap();
        let series = series_quotient(&PolyX::one(), &genus4_Q_closed(), 12).unwrap();
        let g = pf.g_values(12, Exec::default()).unwrap();
        assert_eq!(g, series);
        assert_eq!(pf.g_values(4, Exec::Sequential).unwrap(), g[..5].to_vec());
    }

    #[test]
    fn appendix_rows_match_computed_residues() {
        let pf = PartialFraction::genus4().unwrap();
        let rep = verify_appendix(&AppendixData::bundled(), &pf, 2024, 5).unwrap();
        for row in &rep.rows {
            assert!(row.symbolic, "row {} differs symbolically", row.index);
            assert!(
                row.max_rel_err < 1e-25,
                "row {} rel err {}",
                row.index,
                row.max_rel_err
            );
        }
        assert!(rep.a2_is_minus7_a1);
        assert_eq!(rep.reconstruction_rel_err, 0.0);
        assert!(rep.all_passed());
    }

    #[test]
    fn wrong_row_is_caught() {
        let pf = PartialFraction::genus4().unwrap();
        let mut data = AppendixData::bundled();
        let row = data.rows.iter_mut().find(|r| r.index == 5).unwrap();
        row.numerator[0].0 = row.numerator[0].0.scale(&rat(2));
        let rep = verify_appendix(&data, &pf, 1, 5).unwrap();
        let bad = rep.rows.iter().find(|r| r.index == 5).unwrap();
        assert!(!bad.symbolic && bad.max_rel_err > 0.5);
        assert!(!rep.all_passed());
    }

    #[test]
    fn degenerate_point_is_rejected() {
        let pf = PartialFraction::genus4().unwrap();
        let pt = EvalPoint::from_u(5, 6, QSqrt::int(2)).unwrap();
        assert!(matches!(
            pf.check_point(&pt),
            Err(Error::DegenerateRoots(..))
        ));
    }

    fn small_laurent() -> impl Strategy<Value = LaurentAQ> {
        prop::collection::vec((-2i64..=2, -3i64..=3, 0i64..=1, -5i64..=5), 0..4).prop_map(|ts| {
            ts.into_iter()
                .map(|(a, b, km, c)| LaurentAQ::term(rat(c), Mono::new(a, KExp::new(b, km))))
                .sum()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn assembly_matches_series(tail in prop::collection::vec(small_laurent(), 0..6)) {
            let mut e = vec![LaurentAQ::one()];
            e.extend(tail);
            let data = NumeratorData::new(4, "random", e).unwrap();
            let q = genus4_Q_closed();
            let g = GSeries::from_q(4, &q, 8).unwrap();
            let series = series_quotient(&data.to_poly(), &q, 8).unwrap();
            for (r, s) in series.iter().enumerate() {
                prop_assert_eq!(&lambda_pr(Some(&data), &g, r).unwrap(), s);
            }
        }
    }
}
