//! Local L-factor denominators: symmetric-power factors, the spin product
//! of an Ikeda lift, and the closed genus-1, 2 and 4 polynomials.
//!
//! Throughout `x = p^{-s}`, `q = sqrt(p)` and the weight symbol `k` stays
//! generic. The lift of a weight-`2k` eigenform has Satake scale
//! `p^{(2k-1)/2}` and lives in weight `k + n`, genus `2n`.

#![allow(non_snake_case)]

use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::{beta_table, r_range};
use crate::error::{Error, Result};
use crate::exactalg::{KExp, LaurentAQ, Mono, PolyX};

/// A lift of genus `2n`; the weight symbol `k` is left generic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftSpec {
    pub n: usize,
}

impl LiftSpec {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        LiftSpec { n }
    }

    pub fn genus(&self) -> usize {
        2 * self.n
    }

    pub fn spin_degree(&self) -> usize {
        1 << (2 * self.n)
    }

    /// `q^(2nk - n) = p^(nk - n/2)`, the automorphic-to-classical scale.
    pub fn classical_scale(&self) -> KExp {
        let n = self.n as i64;
        KExp::new(-n, 2 * n)
    }

    /// The lift exists only when `n = k (mod 2)`.
    pub fn parity_ok(&self, k: i64) -> bool {
        (self.n as i64 - k).rem_euclid(2) == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    SpinAutomorphic,
    SpinClassical,
    Standard,
    SymPower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub inverse_poly: PolyX,
    pub kind: FactorKind,
}

/// Roots `rho` (with multiplicity) of `prod (1 - rho x)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootMultiset {
    pub roots: BTreeMap<Mono, i64>,
}

impl RootMultiset {
    pub fn add(&mut self, m: Mono, e: i64) {
        let slot = self.roots.entry(m).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.roots.remove(&m);
        }
    }

    pub fn degree(&self) -> i64 {
        self.roots.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.roots.values().all(|e| *e > 0)
    }

    pub fn product(&self) -> Mono {
        self.roots
            .iter()
            .fold(Mono::ONE, |acc, (m, e)| acc * m.pow(*e))
    }

    pub fn to_poly(&self) -> Result<PolyX> {
        if !self.is_effective() {
            return Err(Error::InvalidData(
                "root multiset has negative multiplicities; the product is not a polynomial".into(),
            ));
        }
        Ok(PolyX::product(self.roots.iter().flat_map(|(m, e)| {
            (0..*e).map(move |_| PolyX::one_minus(LaurentAQ::mono(*m)))
        })))
    }

    pub fn scaled(&self, s: Mono) -> RootMultiset {
        RootMultiset {
            roots: self.roots.iter().map(|(m, e)| (*m * s, *e)).collect(),
        }
    }
}

impl fmt::Display for RootMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .roots
            .iter()
            .map(|(m, e)| {
                if *e == 1 {
                    m.to_string()
                } else {
                    format!("{m} (x{e})")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn sym_power_roots(m: usize, r: i64) -> impl Iterator<Item = Mono> {
    let m = m as i64;
    (0..=m).map(move |i| Mono::new(2 * i - m, KExp::constant(-r)))
}

/// `prod_{i=0}^{m} (1 - a^(2i-m) q^(-r) x)`.
pub fn sym_power_factor(m: usize, r: i64) -> PolyX {
    PolyX::product(sym_power_roots(m, r).map(|mo| PolyX::one_minus(LaurentAQ::mono(mo))))
}

/// Roots of the automorphic spin polynomial of a genus-`2n` lift.
pub fn automorphic_spin_roots(spec: LiftSpec) -> RootMultiset {
    let n = spec.n;
    let table = beta_table(n);
    let mut out = RootMultiset::default();
    for j in 0..=n {
        for r in r_range(j, n) {
            let b = table.get(r, j);
            if b == 0 {
                continue;
            }
            for m in sym_power_roots(n - j, r) {
                out.add(m, b);
            }
        }
    }
    out
}

pub fn automorphic_spin_Q(spec: LiftSpec) -> Result<PolyX> {
    automorphic_spin_roots(spec).to_poly()
}

/// Spin polynomial in the classical normalization `x -> p^(nk - n/2) x`.
pub fn classical_spin_Q(spec: LiftSpec) -> Result<PolyX> {
    automorphic_spin_Q(spec)?.substitute_scale(&LaurentAQ::q_pow(spec.classical_scale()))
}

pub fn spin_factor(spec: LiftSpec, classical: bool) -> Result<LocalFactor> {
    if classical {
        Ok(LocalFactor {
            inverse_poly: classical_spin_Q(spec)?,
            kind: FactorKind::SpinClassical,
        })
    } else {
        Ok(LocalFactor {
            inverse_poly: automorphic_spin_Q(spec)?,
            kind: FactorKind::SpinAutomorphic,
        })
    }
}

/// `p^(2k-1) = q^(4k-2)`.
pub fn genus4_scale() -> Mono {
    Mono::new(0, KExp::new(-2, 4))
}

/// The sixteen genus-4 roots divided by `p^(2k-1)`.
pub fn genus4_root_monomials() -> Vec<(Mono, u32)> {
    let aq = Mono::aq;
    vec![
        (aq(1, 1), 1),
        (aq(-1, 1), 1),
        (aq(1, -1), 1),
        (aq(-1, -1), 1),
        (aq(1, 3), 1),
        (aq(-1, 3), 1),
        (aq(1, -3), 1),
        (aq(-1, -3), 1),
        (aq(0, 4), 1),
        (aq(0, 2), 1),
        (aq(2, 0), 1),
        (aq(-2, 0), 1),
        (aq(0, -2), 1),
        (aq(0, -4), 1),
        (Mono::ONE, 2),
    ]
}

/// Product of the sixteen printed genus-4 factors `(1 - rho p^(2k-1) x)`.
pub fn genus4_Q_closed() -> PolyX {
    let s = genus4_scale();
    PolyX::product(
        genus4_root_monomials()
            .into_iter()
            .flat_map(|(m, e)| (0..e).map(move |_| PolyX::one_minus(LaurentAQ::mono(m * s)))),
    )
}

/// `p^e` for an exponent affine in `k`.
pub fn p_pow(e: KExp) -> LaurentAQ {
    LaurentAQ::q_pow(e.scaled(2))
}

/// `1 - lambda x + p^(weight-1) x^2`; `weight` is affine in `k`.
pub fn genus1_Q(lam: &LaurentAQ, weight: KExp) -> PolyX {
    PolyX::new(vec![
        LaurentAQ::one(),
        -lam,
        p_pow(weight - KExp::constant(1)),
    ])
}

pub fn genus1_P() -> PolyX {
    PolyX::one()
}

/// Genus-2 spin denominator in terms of `lambda(p)` and `lambda(p^2)`.
pub fn genus2_Q(lam_p: &LaurentAQ, lam_p2: &LaurentAQ) -> PolyX {
    let c2 = lam_p * lam_p - lam_p2 - p_pow(KExp::new(-4, 2));
    PolyX::new(vec![
        LaurentAQ::one(),
        -lam_p,
        c2,
        -(lam_p * &p_pow(KExp::new(-3, 2))),
        p_pow(KExp::new(-6, 4)),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus2Variant {
    /// Exponent `4k+2` as printed.
    Printed,
    /// Exponent `2k-4`, consistent with `lambda(p^2)`.
    Corrected,
}

impl std::str::FromStr for Genus2Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Genus2Variant::Printed),
            "corrected" => Ok(Genus2Variant::Corrected),
            other => Err(Error::UnknownVariant(other.to_string())),
        }
    }
}

pub fn genus2_P(variant: Genus2Variant) -> PolyX {
    let e = match variant {
        Genus2Variant::Printed => KExp::new(2, 4),
        Genus2Variant::Corrected => KExp::new(-4, 2),
    };
    PolyX::new(vec![LaurentAQ::one(), LaurentAQ::zero(), -p_pow(e)])
}

/// Local standard L-factor denominator, degree `4n + 1`.
pub fn standard_L_local(spec: LiftSpec) -> LocalFactor {
    let n = spec.n as i64;
    let mut factors = vec![PolyX::one_minus(LaurentAQ::one())];
    for i in 1..=2 * n {
        // p^((2k-1)/2) p^-(k+n-i) = q^(2i - 2n - 1)
        let e = 2 * i - 2 * n - 1;
        factors.push(PolyX::one_minus(LaurentAQ::mono(Mono::aq(1, e))));
        factors.push(PolyX::one_minus(LaurentAQ::mono(Mono::aq(-1, e))));
    }
    LocalFactor {
        inverse_poly: PolyX::product(factors),
        kind: FactorKind::Standard,
    }
}
