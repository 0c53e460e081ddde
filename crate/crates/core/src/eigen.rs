//! Hecke eigenvalues `lambda(p)` of Ikeda lifts and their signs.
//!
//! `lambda(p)` is read off the spin polynomial (minus its `x` coefficient)
//! and independently from the closed sum over `beta`. Positivity is decided
//! exactly in `Q(sqrt p)`: a uniform bound on the lower-order coefficients
//! gives an effective prime threshold for every `n`, and for genus 4 the
//! eigenvalue is a quadratic in `u = a + 1/a` whose minimum on `[-2, 2]`
//! is computed exactly.

#![allow(non_snake_case)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::combinat::{beta_table, r_range, SubsetSums};
use crate::exactalg::eval::{horner, is_prime, UPoly};
use crate::exactalg::{rat, KExp, LaurentAQ, Mono, PolyX, QSqrt};
use crate::lfactor::{genus4_scale, LiftSpec};
use crate::par::{self, Exec};

/// `-[x^1] Q`.
pub fn lambda_p_from_Q(q: &PolyX) -> LaurentAQ {
    -q.coeff(1)
}

fn q(base: i64, k_mult: i64) -> LaurentAQ {
    LaurentAQ::q_pow(KExp::new(base, k_mult))
}

/// `q^(2nk-n) * sum_j sum_i a^(2i+j-n) sum_r q^(-r) beta(r, j, n)`.
pub fn lambda_p_formula(n: usize) -> LaurentAQ {
    let spec = LiftSpec::new(n);
    let table = beta_table(n);
    let mut inner = LaurentAQ::zero();
    let ni = n as i64;
    for j in 0..=n {
        let ji = j as i64;
        for i in 0..=(ni - ji) {
            for r in r_range(j, n) {
                let b = table.get(r, j);
                inner.add_term(Mono::aq(2 * i + ji - ni, -r), rat(b));
            }
        }
    }
    inner.mul_mono(Mono::new(0, spec.classical_scale()))
}

/// `c_s` with `lambda(p) = q^(2nk-n) sum_s c_s q^s`, and the uniform bound
/// `B_s >= |c_s|` valid for `|a| = 1`.
#[derive(Clone, Debug)]
pub struct CrTable {
    pub n: usize,
    pub c: BTreeMap<i64, LaurentAQ>,
    pub bound: BTreeMap<i64, u64>,
}

impl CrTable {
    /// `q^(2nk-n) sum_s c_s q^s`.
    pub fn rebuild(&self) -> LaurentAQ {
        let spec = LiftSpec::new(self.n);
        let mut out = LaurentAQ::zero();
        for (s, c) in &self.c {
            out += &c.mul_mono(Mono::aq(0, *s));
        }
        out.mul_mono(Mono::new(0, spec.classical_scale()))
    }
}

pub fn c_coefficients(n: usize) -> CrTable {
    let ss = SubsetSums::new(n);
    let nn = (n * n) as i64;
    let ni = n as i64;
    let mut c = BTreeMap::new();
    let mut bound = BTreeMap::new();
    for s in -nn..=nn {
        let mut cs = LaurentAQ::zero();
        let mut b = 0u64;
        for j in 0..=ni {
            let beta = ss.beta(-s, j);
            if beta == 0 {
                continue;
            }
            for i in 0..=(ni - j) {
                cs.add_term(Mono::aq(2 * i + j - ni, 0), rat(beta));
            }
            b += (ni - j + 1) as u64 * beta.unsigned_abs();
        }
        if !cs.is_zero() || b > 0 {
            c.insert(s, cs);
            bound.insert(s, b);
        }
    }
    CrTable { n, c, bound }
}

/// Smallest prime `p0` with `p^(n^2/2) > sum_{s<n^2} B_s p^(s/2)`.
///
/// The difference has a single sign change in `q`, so it stays positive for
/// every `p >= p0`, and then `lambda(p) > 0` for every unit-circle `a`.
#[derive(Clone, Debug)]
pub struct SignThreshold {
    pub n: usize,
    pub p0: u64,
    pub bounds: BTreeMap<i64, u64>,
}

pub fn first_sign_threshold(n: usize) -> SignThreshold {
    let table = c_coefficients(n);
    let nn = (n * n) as i64;
    let excess = |p: u64| -> QSqrt {
        let mut acc = QSqrt::sqrt_pow(p, nn);
        for (s, b) in &table.bound {
            if *s < nn {
                acc = &acc - &QSqrt::sqrt_pow(p, *s).scale(&rat(*b as i64));
            }
        }
        acc
    };
    let mut p = 2;
    loop {
        if is_prime(p) && excess(p).signum() == Ordering::Greater {
            break;
        }
        p += 1;
    }
    SignThreshold {
        n,
        p0: p,
        bounds: table.bound,
    }
}

/// Genus-4 eigenvalues of `T(p)` and the three generators `T_i(p^2)`.
#[derive(Clone, Debug)]
pub struct Genus4LambdaP {
    pub t_p: LaurentAQ,
    pub t3: LaurentAQ,
    pub t2: LaurentAQ,
    /// One bracketing of a formula printed with an unbalanced parenthesis;
    /// kept for evaluation only.
    pub t1_best_effort: LaurentAQ,
    pub t1_as_printed: &'static str,
    pub t1_balanced: bool,
}

pub const T1_AS_PRINTED: &str = "p^{4k}+p^{4k-10}+p^{4k-4} + (a+1/a)(p^{4k+1/2}+2p^{4k-1/2}-p^{4k-11/2}-p^{4k-13/2}-p^{4k-15/2}) \
+(a+1/a)^2(p^{4k-1}+p^{4k-2}+p^{4k-3}-p^{4k-5}) -p^{4k-6}-p^{4k-7})(a^2+1/a^2+3) -p^{4k-8}-p^{4k-10} \
+p^{4k-7/2}(a+1/a)^3-p^{4k-6}(a^2+3+1/a^2)+(p^{4k-5/2}+p^{4k-3/2})(a^3+4a+4/a+1/a^3)";

pub fn genus4_lambda_p_symbols() -> Genus4LambdaP {
    let u = LaurentAQ::u();
    let u2 = &u * &u;
    let u3 = &u2 * &u;
    let a = LaurentAQ::a_pow;
    let a2_sym3 = a(2) + a(-2) + LaurentAQ::int(3);
    let cyc = q(6, 0) + q(4, 0) + q(2, 0) + LaurentAQ::one();

    // (p^3+p^2+p+1)(a^2 p^(5/2) + a(p-1) + p^(5/2)) p^(4(k-3)) / a
    let t3 = &cyc * &(a(1) * q(5, 0) + (q(2, 0) - LaurentAQ::one()) + a(-1) * q(5, 0)) * q(-24, 8);

    let t2 = q(-4, 8)
        + &u * &(q(-7, 8) + q(-9, 8) + q(-11, 8) - q(-15, 8) - q(-17, 8) - q(-19, 8))
        + &u2 * &(q(-6, 8) + q(-8, 8).scale(&rat(2)) + q(-12, 8) + q(-14, 8))
        + q(-8, 8) * &a2_sym3
        - q(-16, 8)
        - q(-20, 8);

    let t1 = q(0, 8)
        + q(-20, 8)
        + q(-8, 8)
        + &u * &(q(1, 8) + q(-1, 8).scale(&rat(2)) - q(-11, 8) - q(-13, 8) - q(-15, 8))
        + &u2 * &(q(-2, 8) + q(-4, 8) + q(-6, 8) - q(-10, 8))
        + (-q(-12, 8) - q(-14, 8)) * &a2_sym3
        - q(-16, 8)
        - q(-20, 8)
        + q(-7, 8) * &u3
        - q(-12, 8) * &a2_sym3
        + (q(-5, 8) + q(-3, 8)) * (a(3) + a(1).scale(&rat(4)) + a(-1).scale(&rat(4)) + a(-3));

    // p^(2k-1)(a^2 + a^-2 + (a + 1/a)(p^3+p^2+p+1)/p^(3/2) + p^2 + p^-2 + p + p^-1 + 2)
    let t_p = (a(2)
        + a(-2)
        + &u * &cyc * q(-3, 0)
        + q(4, 0)
        + q(-4, 0)
        + q(2, 0)
        + q(-2, 0)
        + LaurentAQ::int(2))
    .mul_mono(genus4_scale());

    Genus4LambdaP {
        t_p,
        t3,
        t2,
        t1_best_effort: t1,
        t1_as_printed: T1_AS_PRINTED,
        t1_balanced: false,
    }
}

/// `prefactor * (u^2 + u1 u + u0)` at a fixed prime.
#[derive(Clone, Debug)]
pub struct QuadraticInU {
    pub p: u64,
    pub prefactor: Mono,
    pub u2: QSqrt,
    pub u1: QSqrt,
    pub u0: QSqrt,
    /// Exact minimum of the bracket over `u in [-2, 2]` and where it occurs.
    pub min_value: QSqrt,
    pub argmin: QSqrt,
    pub positive: bool,
}

impl QuadraticInU {
    pub fn eval(&self, u: &QSqrt) -> QSqrt {
        horner(&[self.u0.clone(), self.u1.clone(), self.u2.clone()], u)
    }
}

/// Genus-4 `lambda(p) / p^(2k-1)` as an exact quadratic in `u`.
pub fn genus4_sign_quadratic(p: u64) -> QuadraticInU {
    assert!(is_prime(p), "{p} is not a prime");
    let bracket = genus4_lambda_p_symbols().t_p.mul_mono(genus4_scale().inv());
    debug_assert!(bracket.is_k_free());
    let up = UPoly::from_symmetric(&bracket).expect("symmetric");
    let mut c = up.specialize(p, 0);
    c.resize(3, QSqrt::zero());
    let (u0, u1, u2) = (c[0].clone(), c[1].clone(), c[2].clone());
    let mut quad = QuadraticInU {
        p,
        prefactor: genus4_scale(),
        u2,
        u1,
        u0,
        min_value: QSqrt::zero(),
        argmin: QSqrt::zero(),
        positive: false,
    };
    let two = QSqrt::int(2);
    let mut candidates = vec![-&two, two.clone()];
    if !quad.u2.is_zero() {
        // vertex -u1 / (2 u2)
        let v = -&(&quad.u1 * &quad.u2.scale(&rat(2)).inv().expect("nonzero"));
        if v.abs() <= two && quad.u2.signum() == Ordering::Greater {
            candidates.push(v);
        }
    }
    let (argmin, min_value) = candidates
        .into_iter()
        .map(|u| {
            let v = quad.eval(&u);
            (u, v)
        })
        .min_by(|x, y| x.1.partial_cmp(&y.1).expect("total order"))
        .expect("nonempty");
    quad.positive = min_value.signum() == Ordering::Greater;
    quad.min_value = min_value;
    quad.argmin = argmin;
    quad
}

/// One evaluated `lambda(p)` at a concrete trace `u`.
#[derive(Clone, Debug)]
pub struct LambdaRow {
    pub p: u64,
    pub u: QSqrt,
    pub value: QSqrt,
}

impl LambdaRow {
    pub fn sign(&self) -> Ordering {
        self.value.signum()
    }
}

/// `lambda(p)` of the genus-`2n` lift at weight parameter `k`, for each
/// prime and each trace supplied by `traces(p)`.
pub fn scan_lambda_p<F>(n: usize, k: i64, primes: &[u64], traces: F, exec: Exec) -> Vec<LambdaRow>
where
    F: Fn(u64) -> Vec<QSqrt> + Sync + Send,
{
    let up = UPoly::from_symmetric(&lambda_p_formula(n)).expect("symmetric");
    let per_prime = par::map(exec, primes, |&p| {
        let coeffs = up.specialize(p, k);
        traces(p)
            .into_iter()
            .map(|u| LambdaRow {
                p,
                value: horner(&coeffs, &u),
                u,
            })
            .collect::<Vec<_>>()
    });
    per_prime.into_iter().flatten().collect()
}

/// Exact Proposition-style verdicts for every prime in the list.
pub fn scan_sign_quadratics(primes: &[u64], exec: Exec) -> Vec<QuadraticInU> {
    par::map(exec, primes, |&p| genus4_sign_quadratic(p))
}

/// Integer check for tests: value of `c_s` at `a = 1`.
pub fn c_at_one(c: &LaurentAQ) -> i64 {
    let mut total = rat(0);
    for (_, v) in c.terms() {
        total += v;
    }
    debug_assert!(total.is_integer());
    total.to_integer().try_into().unwrap_or(i64::MAX)
}
