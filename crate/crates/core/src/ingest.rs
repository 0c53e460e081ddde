//! Elliptic eigenform data: the Ramanujan tau oracle, eigenvalue files and
//! the unitarized Satake trace `u = a_f(p) / p^((2k-1)/2)`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactalg::eval::{is_prime, primes_in};
use crate::exactalg::{QSqrt, Rat};
use crate::par::{self, Exec};

/// Coefficients of `prod_(n>=1) (1 - q^n)` below `q^len`, from the
/// pentagonal number theorem.
fn euler_sparse(len: usize) -> Vec<(usize, i128)> {
    let mut out = vec![(0usize, 1i128)];
    for m in 1.. {
        let m = m as usize;
        let lo = m * (3 * m - 1) / 2;
        if lo >= len {
            break;
        }
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        out.push((lo, sign));
        let hi = m * (3 * m + 1) / 2;
        if hi < len {
            out.push((hi, sign));
        }
    }
    out.sort_unstable();
    out
}

/// `tau(0..=n)` with `tau(0) = 0`: the coefficients of
/// `q prod (1 - q^n)^24`.
pub fn tau_oracle(n: usize) -> Result<Vec<i128>> {
    tau_oracle_with(n, Exec::default())
}

pub fn tau_oracle_with(n: usize, exec: Exec) -> Result<Vec<i128>> {
    let len = n; // q^0 .. q^(n-1) of the product
    let e = euler_sparse(len);
    let mut acc = vec![0i128; len];
    if len > 0 {
        acc[0] = 1;
    }
    for _ in 0..24 {
        let prev = &acc;
        let next = par::map_range(exec, len, |i| {
            let mut s: i128 = 0;
            for (d, c) in &e {
                if *d > i {
                    break;
                }
                s = s.checked_add(c * prev[i - d])?;
            }
            Some(s)
        });
        acc = next
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidArgument(format!("tau oracle overflows at N = {n}")))?;
    }
    let mut out = vec![0i128; n + 1];
    out[1..].copy_from_slice(&acc);
    Ok(out)
}

/// Hecke eigenvalues `a_f(p)` of a weight-`2k` elliptic eigenform.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenformData {
    pub weight_2k: i64,
    pub label: String,
    pub ap: BTreeMap<u64, BigInt>,
}

/// `u = a + 1/a` at one prime.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeU {
    pub p: u64,
    pub u: QSqrt,
}

#[derive(Deserialize)]
struct RawEigenform {
    weight_2k: i64,
    #[serde(default)]
    label: String,
    ap: BTreeMap<String, Value>,
}

#[derive(Serialize)]
struct OutEigenform<'a> {
    weight_2k: i64,
    label: &'a str,
    ap: BTreeMap<u64, Value>,
}

fn parse_int(key: &str, v: &Value) -> Result<BigInt> {
    let bad = || Error::InvalidData(format!("a_f({key}) is not an integer: {v}"));
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(i.into())
            } else if let Some(u) = n.as_u64() {
                Ok(u.into())
            } else {
                Err(bad())
            }
        }
        Value::String(s) => s.trim().parse().map_err(|_| bad()),
        _ => Err(bad()),
    }
}

impl EigenformData {
    pub fn new(
        weight_2k: i64,
        label: impl Into<String>,
        ap: BTreeMap<u64, BigInt>,
    ) -> Result<Self> {
        let d = EigenformData {
            weight_2k,
            label: label.into(),
            ap,
        };
        d.validate()?;
        Ok(d)
    }

    /// Half the weight: the `k` of the lift.
    pub fn k(&self) -> i64 {
        self.weight_2k / 2
    }

    fn validate(&self) -> Result<()> {
        if self.weight_2k < 12 || self.weight_2k % 2 != 0 {
            return Err(Error::InvalidData(format!(
                "weight 2k = {} must be even and at least 12",
                self.weight_2k
            )));
        }
        for (p, a) in &self.ap {
            if !is_prime(*p) {
                return Err(Error::NonPrimeKey(p.to_string()));
            }
            // a^2 <= 4 p^(2k-1)
            let bound = BigInt::from(4) * BigInt::from(*p).pow((self.weight_2k - 1) as u32);
            if a * a > bound {
                return Err(Error::DeligneViolation {
                    p: *p,
                    ap: a.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawEigenform = serde_json::from_str(text).map_err(|e| Error::Json {
            context: "eigenform data".into(),
            source: e,
        })?;
        let mut ap = BTreeMap::new();
        for (key, v) in &raw.ap {
            let p: u64 = key
                .trim()
                .parse()
                .map_err(|_| Error::NonPrimeKey(key.clone()))?;
            if !is_prime(p) {
                return Err(Error::NonPrimeKey(key.clone()));
            }
            ap.insert(p, parse_int(key, v)?);
        }
        EigenformData::new(raw.weight_2k, raw.label, ap)
    }

    /// Values that fit in `i64` are written as numbers, the rest as strings.
    pub fn to_json(&self) -> String {
        let ap = self
            .ap
            .iter()
            .map(|(p, a)| {
                let v = a
                    .to_i64()
                    .map(Value::from)
                    .unwrap_or_else(|| Value::String(a.to_string()));
                (*p, v)
            })
            .collect();
        let out = OutEigenform {
            weight_2k: self.weight_2k,
            label: &self.label,
            ap,
        };
        serde_json::to_string_pretty(&out).expect("serializable")
    }

    pub fn load(path: &Path) -> Result<Self> {
        EigenformData::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.ap.keys().copied()
    }

    /// A lift to genus `2n` needs `n = k (mod 2)`; the symbolic machinery
    /// does not, so this is advisory.
    pub fn parity_warning(&self, n: usize) -> Option<String> {
        ((n as i64 - self.k()).rem_euclid(2) != 0).then(|| {
            format!(
                "{}: n = {n} and k = {} differ in parity, so no lift to genus {} exists",
                self.label,
                self.k(),
                2 * n
            )
        })
    }
}

/// The discriminant form `Delta` of weight 12 at every prime up to `max_p`,
/// computed from the tau oracle.
pub fn builtin_delta(max_p: u64) -> Result<EigenformData> {
    let tau = tau_oracle(max_p as usize)?;
    let ap = primes_in(2, max_p)
        .into_iter()
        .map(|p| (p, BigInt::from(tau[p as usize])))
        .collect();
    EigenformData::new(12, "Delta", ap)
}

/// `u = a_f(p) / p^((2k-1)/2) = a_f(p) sqrt(p) / p^k`.
pub fn satake_u(data: &EigenformData, p: u64) -> Result<SatakeU> {
    let a = data.ap.get(&p).ok_or(Error::MissingPrime(p))?;
    let pk = BigInt::from(p).pow(data.k() as u32);
    let r1 = Rat::new(a.clone(), pk);
    let u = QSqrt::new(p, Rat::from_integer(0.into()), r1);
    if u.abs() > QSqrt::int(2) {
        return Err(Error::DeligneViolation {
            p,
            ap: a.to_string(),
        });
    }
    Ok(SatakeU { p, u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn first_values() {
        let t = tau_oracle(10).unwrap();
        assert_eq!(
            t[1..].to_vec(),
            vec![1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]
        );
    }

    #[test]
    fn sequential_agrees() {
        assert_eq!(
            tau_oracle_with(300, Exec::Sequential).unwrap(),
            tau_oracle(300).unwrap()
        );
    }

    #[test]
    fn multiplicative_and_hecke() {
        let n = 97 * 97;
        let t = tau_oracle(n).unwrap();
        for m in 1..=120usize {
            for k in 1..=120usize {
                if m * k <= n && m.gcd(&k) == 1 {
                    assert_eq!(t[m * k], t[m] * t[k], "m={m} k={k}");
                }
            }
        }
        for p in primes_in(2, 97) {
            let p = p as usize;
            assert_eq!(t[p * p], t[p] * t[p] - (p as i128).pow(11), "p={p}");
        }
    }

    #[test]
    fn satake_for_delta() {
        let d = builtin_delta(97).unwrap();
        let s = satake_u(&d, 2).unwrap();
        assert!((s.u.to_f64() + 0.530330085889).abs() < 1e-9);
        for p in d.primes() {
            assert!(satake_u(&d, p).unwrap().u.abs() <= QSqrt::int(2));
        }
        assert!(matches!(satake_u(&d, 101), Err(Error::MissingPrime(101))));
    }

    #[test]
    fn boundary_and_zero() {
        let mut ap = BTreeMap::new();
        ap.insert(3, BigInt::from(0));
        // 2 p^(11/2) is irrational, so the largest integer below it
        ap.insert(2, BigInt::from(90));
        let d = EigenformData::new(12, "t", ap).unwrap();
        assert!(satake_u(&d, 3).unwrap().u.is_zero());
        assert!(satake_u(&d, 2).unwrap().u < QSqrt::int(2));
    }

    #[test]
    fn rejects_bad_files() {
        let big = r#"{"weight_2k": 12, "label": "x", "ap": {"2": 1000000000}}"#;
        assert!(matches!(
            EigenformData::from_json(big),
            Err(Error::DeligneViolation { p: 2, .. })
        ));
        let edge = r#"{"weight_2k": 12, "label": "x", "ap": {"2": 91}}"#;
        assert!(EigenformData::from_json(edge).is_err());
        let ok = r#"{"weight_2k": 12, "label": "x", "ap": {"2": "-90"}}"#;
        assert!(EigenformData::from_json(ok).is_ok());
        let key = r#"{"weight_2k": 12, "label": "x", "ap": {"4": 1}}"#;
        assert!(matches!(
            EigenformData::from_json(key),
            Err(Error::NonPrimeKey(_))
        ));
        let odd = r#"{"weight_2k": 13, "ap": {}}"#;
        assert!(EigenformData::from_json(odd).is_err());
        assert!(matches!(
            EigenformData::from_json("{\n\"weight_2k\": }"),
            Err(Error::Json { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let d = builtin_delta(50).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("delta.json");
        d.save(&path).unwrap();
        assert_eq!(EigenformData::load(&path).unwrap(), d);
        let mut huge = d.clone();
        huge.weight_2k = 40;
        huge.ap.insert(47, BigInt::from(i64::MAX) * 1000);
        let text = huge.to_json();
        assert!(text.contains('"'));
        assert_eq!(EigenformData::from_json(&text).unwrap(), huge);
    }

    #[test]
    fn parity_is_advisory() {
        let d = builtin_delta(10).unwrap();
        assert!(d.parity_warning(2).is_none());
        assert!(d.parity_warning(1).is_some());
    }
}
