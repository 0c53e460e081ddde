//! The transcribed genus-4 residue table and its verification.
//!
//! Each row is a coefficient `a_i` of `a_i / (-b + c X)^order`, stored as a
//! product of factor polynomials. Since `-b + c X = -b (1 - rho X)` with
//! `rho = c/b`, a row matches the computed residue `A` exactly when
//! `a_i = (-b)^order * A`.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::{roots_poly, PartialFraction};
use crate::error::{Error, Result};
use crate::exactalg::eval::{evaluate, evaluate_factored};
use crate::exactalg::field::unit_from_parameter;
use crate::exactalg::frac::{canonical_one_minus, OneMinus};
use crate::exactalg::{
    ratio, CSqrt, EvalPoint, LaurentAQ, Mono, QSqrt, Rat, SatakeValue, TermRecord,
};

const BUNDLED: &str = include_str!("../../data/appendix.json");

#[derive(Deserialize)]
struct RawFile {
    #[serde(default)]
    provenance: String,
    rows: Vec<serde_json::Value>,
}

#[derive(Deserialize)]
struct RawRow {
    index: usize,
    pole: RawPole,
    order: u32,
    numerator: Vec<RawFactor>,
    denominator: Vec<RawFactor>,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Deserialize)]
struct RawPole {
    b: RawMono,
    c: RawMono,
}

#[derive(Deserialize)]
struct RawMono {
    a_exp: i64,
    q_base: i64,
}

#[derive(Deserialize)]
struct RawFactor {
    terms: Vec<TermRecord>,
    power: i32,
}

/// One transcribed residue `num / den` at the pole `-b + c X`.
#[derive(Clone, Debug)]
pub struct AppendixRow {
    pub index: usize,
    pub b: Mono,
    pub c: Mono,
    pub order: u32,
    pub numerator: Vec<(LaurentAQ, u32)>,
    pub denominator: Vec<(LaurentAQ, u32)>,
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AppendixData {
    pub provenance: String,
    pub rows: Vec<AppendixRow>,
}

fn parse_row(pos: usize, v: serde_json::Value) -> Result<AppendixRow> {
    let bad = |msg: String| Error::AppendixRow { row: pos + 1, msg };
    let raw: RawRow = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
    let bad = |msg: String| Error::AppendixRow {
        row: raw.index,
        msg,
    };
    if !(1..=2).contains(&raw.order) {
        return Err(bad(format!("pole order {} is not 1 or 2", raw.order)));
    }
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    for (list, inverted) in [(&raw.numerator, false), (&raw.denominator, true)] {
        for f in list {
            let poly = LaurentAQ::from_records(&f.terms).map_err(|e| bad(e.to_string()))?;
            if poly.is_zero() {
                return Err(bad("zero factor".into()));
            }
            let e = f.power.unsigned_abs();
            if (f.power < 0) != inverted {
                denominator.push((poly, e));
            } else {
                numerator.push((poly, e));
            }
        }
    }
    Ok(AppendixRow {
        index: raw.index,
        b: Mono::aq(raw.pole.b.a_exp, raw.pole.b.q_base),
        c: Mono::aq(raw.pole.c.a_exp, raw.pole.c.q_base),
        order: raw.order,
        numerator,
        denominator,
        note: raw.note,
    })
}

impl AppendixData {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Json {
            context: "appendix table".into(),
            source: e,
        })?;
        let rows = raw
            .rows
            .into_iter()
            .enumerate()
            .map(|(i, v)| parse_row(i, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(AppendixData {
            provenance: raw.provenance,
            rows,
        })
    }

    pub fn bundled() -> Self {
        AppendixData::from_json(BUNDLED).expect("bundled appendix table parses")
    }

    pub fn row(&self, index: usize) -> Option<&AppendixRow> {
        self.rows.iter().find(|r| r.index == index)
    }
}

/// The bundled table, or a replacement file.
pub fn load_appendix(path: Option<&Path>) -> Result<AppendixData> {
    match path {
        None => Ok(AppendixData::bundled()),
        Some(p) => AppendixData::from_json(&std::fs::read_to_string(p)?),
    }
}

fn expand(factors: &[(LaurentAQ, u32)]) -> LaurentAQ {
    factors.iter().map(|(f, e)| f.pow(*e)).product()
}

impl AppendixRow {
    pub fn rho(&self) -> Mono {
        self.c * self.b.inv()
    }

    /// `(-b)^order`, the factor between the row and the residue.
    pub fn pole_unit(&self) -> LaurentAQ {
        LaurentAQ::term(Rat::from_integer((-1).into()), self.b).pow(self.order)
    }

    pub fn numerator_poly(&self) -> LaurentAQ {
        expand(&self.numerator)
    }

    pub fn value(&self, pt: &EvalPoint) -> Result<CSqrt> {
        let mut v = CSqrt::one();
        for (f, e) in &self.numerator {
            v = &v * &evaluate(f, pt)?.pow(*e);
        }
        for (f, e) in &self.denominator {
            let d = evaluate(f, pt)?.inv().ok_or(Error::PoleAtPoint)?;
            v = &v * &d.pow(*e);
        }
        Ok(v)
    }

    /// Denominator as `unit * prod(atom^e) * other`, with binomials turned
    /// into canonical atoms.
    fn split_denominator(&self) -> Result<(LaurentAQ, BTreeMap<OneMinus, u32>, LaurentAQ)> {
        let mut unit = LaurentAQ::one();
        let mut atoms: BTreeMap<OneMinus, u32> = BTreeMap::new();
        let mut other = LaurentAQ::one();
        for (f, e) in &self.denominator {
            let terms: Vec<(Mono, Rat)> = f.terms().map(|(m, c)| (*m, c.clone())).collect();
            match terms.as_slice() {
                [_] => unit = &unit * &f.pow(*e),
                [(m1, c1), (m2, c2)] => {
                    // c1 m1 + c2 m2 = c1 m1 (1 - c m)
                    let c = -(c2 / c1);
                    let (u, atom) = canonical_one_minus(&c, *m2 * m1.inv())?;
                    let lead = &LaurentAQ::term(c1.clone(), *m1) * &u;
                    unit = &unit * &lead.pow(*e);
                    if let Some(a) = atom {
                        *atoms.entry(a).or_insert(0) += e;
                    }
                }
                _ => other = &other * &f.pow(*e),
            }
        }
        Ok((unit, atoms, other))
    }

    /// Exact comparison with a computed residue `num / prod(atom^e)`.
    ///
    /// Common atoms are cancelled before cross-multiplying, which keeps the
    /// expanded products small.
    pub fn matches_symbolically(&self, residue: &crate::exactalg::FactoredFrac) -> Result<bool> {
        let (unit, mut row_atoms, other) = self.split_denominator()?;
        let mut res_atoms = residue.den.clone();
        for (a, e) in row_atoms.iter_mut() {
            if let Some(r) = res_atoms.get_mut(a) {
                let m = (*e).min(*r);
                *e -= m;
                *r -= m;
            }
        }
        let pw = |atoms: &BTreeMap<OneMinus, u32>| -> LaurentAQ {
            atoms
                .iter()
                .filter(|(_, e)| **e > 0)
                .map(|(a, e)| a.to_laurent().pow(*e))
                .product()
        };
        let lhs = &self.numerator_poly() * &pw(&res_atoms);
        let rhs = &(&(&self.pole_unit() * &residue.num) * &(&unit * &other)) * &pw(&row_atoms);
        Ok(lhs == rhs)
    }
}

/// Verdict for one row.
#[derive(Clone, Debug)]
pub struct RowReport {
    pub index: usize,
    pub rho: Mono,
    pub order: u32,
    pub symbolic: bool,
    pub max_rel_err: f64,
    pub points: usize,
    pub note: Option<String>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.symbolic && self.max_rel_err < 1e-30
    }
}

#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub rows: Vec<RowReport>,
    /// Rows 1 and 2 share a denominator and differ by the factor `-7`.
    pub a2_is_minus7_a1: bool,
    /// Largest relative error of `sum_i a_i/(-b_i + c_i X)^o_i - 1/Q`.
    pub reconstruction_rel_err: f64,
    pub seed: u64,
}

impl AppendixReport {
    pub fn all_passed(&self) -> bool {
        self.rows.len() == 16
            && self.rows.iter().all(RowReport::passed)
            && self.a2_is_minus7_a1
            && self.reconstruction_rel_err < 1e-30
    }
}

/// Deterministic random evaluation points: `p` in `{5, 7, 11}`, `k` in
/// `{6, 8}` and a Gaussian-rational unit `a`.
pub fn sample_points(seed: u64, count: usize) -> Result<Vec<EvalPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = [5u64, 7, 11][rng.gen_range(0..3)];
            let k = [6i64, 8][rng.gen_range(0..2)];
            let t = ratio(rng.gen_range(1..=9), rng.gen_range(10..=19));
            EvalPoint::new(p, k, SatakeValue::Unit(unit_from_parameter(&t)))
        })
        .collect()
}

fn rel_err(got: &CSqrt, want: &CSqrt) -> f64 {
    let diff = (got - want).abs_sq();
    if diff.is_zero() {
        return 0.0;
    }
    let scale = want.abs_sq();
    if scale.is_zero() {
        return diff.to_f64().sqrt();
    }
    (diff.to_f64() / scale.to_f64()).sqrt()
}

fn a2_relation(data: &AppendixData) -> bool {
    let (Some(r1), Some(r2)) = (data.row(1), data.row(2)) else {
        return false;
    };
    r1.denominator == r2.denominator
        && r2.numerator_poly() == r1.numerator_poly().scale(&Rat::from_integer((-7).into()))
}

/// Checks every row against the computed residues, symbolically and at
/// `points` seeded random points, and checks that the rows sum to `1/Q`.
pub fn verify_appendix(
    data: &AppendixData,
    pf: &PartialFraction,
    seed: u64,
    points: usize,
) -> Result<AppendixReport> {
    let pts = sample_points(seed, points)?;
    let mut rows = Vec::new();
    for row in &data.rows {
        let term = pf
            .term(row.rho(), row.order)
            .ok_or_else(|| Error::AppendixRow {
                row: row.index,
                msg: format!(
                    "no computed term at rho = {}, order {}",
                    row.rho(),
                    row.order
                ),
            })?;
        let symbolic = row.matches_symbolically(&term.coeff)?;
        let unit = row.pole_unit();
        let mut max_rel_err: f64 = 0.0;
        for pt in &pts {
            let want = &evaluate(&unit, pt)? * &evaluate_factored(&term.coeff, pt)?;
            max_rel_err = max_rel_err.max(rel_err(&row.value(pt)?, &want));
        }
        rows.push(RowReport {
            index: row.index,
            rho: row.rho(),
            order: row.order,
            symbolic,
            max_rel_err,
            points: pts.len(),
            note: row.note.clone(),
        });
    }
    let mut reconstruction_rel_err: f64 = 0.0;
    for pt in &pts {
        let x = CSqrt::real(QSqrt::rational(ratio(1, pt.p as i64 + 2)));
        let sum = transcribed_sum(data, pt, &x)?;
        let q = roots_poly(&pf.roots);
        let mut qv = CSqrt::zero();
        for c in q.coeffs().iter().rev() {
            qv = &(&qv * &x) + &evaluate(c, pt)?;
        }
        let want = qv.inv().ok_or(Error::PoleAtPoint)?;
        reconstruction_rel_err = reconstruction_rel_err.max(rel_err(&sum, &want));
    }
    Ok(AppendixReport {
        rows,
        a2_is_minus7_a1: a2_relation(data),
        reconstruction_rel_err,
        seed,
    })
}

/// `sum_i a_i / (-b_i + c_i X)^order_i` at a point.
pub fn transcribed_sum(data: &AppendixData, pt: &EvalPoint, x: &CSqrt) -> Result<CSqrt> {
    let mut acc = CSqrt::zero();
    for row in &data.rows {
        let b = evaluate(&LaurentAQ::mono(row.b), pt)?;
        let c = evaluate(&LaurentAQ::mono(row.c), pt)?;
        let d = &(&c * x) - &b;
        let inv = d.inv().ok_or(Error::PoleAtPoint)?.pow(row.order);
        acc = &acc + &(&row.value(pt)? * &inv);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_parses() {
        let d = AppendixData::bundled();
        assert_eq!(d.rows.len(), 16);
        assert_eq!(d.row(1).unwrap().order, 2);
        assert!(d.rows.iter().skip(1).all(|r| r.order == 1));
        let mut rhos: Vec<(Mono, u32)> = d.rows.iter().map(|r| (r.rho(), r.order)).collect();
        rhos.sort();
        rhos.dedup();
        assert_eq!(rhos.len(), 16);
    }

    #[test]
    fn malformed_row_reports_index() {
        let text = r#"{"rows": [{"index": 1, "pole": {"b": {"a_exp": 0, "q_base": 0},
            "c": {"a_exp": 0, "q_base": 0}}, "order": 3, "numerator": [], "denominator": []}]}"#;
        match AppendixData::from_json(text) {
            Err(Error::AppendixRow { row, .. }) => assert_eq!(row, 1),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"rows": [{"index": 1}, {"index": 2}]}"#;
        assert!(matches!(
            AppendixData::from_json(text),
            Err(Error::AppendixRow { row: 1, .. })
        ));
    }

    #[test]
    fn second_row_is_minus_seven_times_first() {
        assert!(a2_relation(&AppendixData::bundled()));
    }

    #[test]
    fn seeded_points_are_reproducible() {
        let a = sample_points(7, 5).unwrap();
        let b = sample_points(7, 5).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x.p, x.k), (y.p, y.k));
            assert_eq!(x.u(), y.u());
        }
        assert!(a
            .iter()
            .all(|p| [5, 7, 11].contains(&p.p) && [6, 8].contains(&p.k)));
    }
}
