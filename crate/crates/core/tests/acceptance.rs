//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
//! the test fails if any criterion fails.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use ikeda_core::combinat::{alpha, beta, beta_table, odd_set, SubsetSums};
use ikeda_core::eigen::{
    first_sign_threshold, genus4_lambda_p_symbols, genus4_sign_quadratic, lambda_p_formula,
    lambda_p_from_Q, scan_lambda_p,
};
use ikeda_core::exactalg::eval::{primes_in, u_grid, UPoly};
use ikeda_core::exactalg::{ratio, series_quotient, KExp, LaurentAQ, Mono, PolyX, QSqrt, Rat};
use ikeda_core::ingest::{builtin_delta, satake_u, tau_oracle};
use ikeda_core::lfactor::{
    classical_spin_Q, genus2_P, genus2_Q, genus4_Q_closed, Genus2Variant, LiftSpec,
};
use ikeda_core::par::Exec;
use ikeda_core::series::{
    d_factor, dr_leading_identity, lambda_pr, verify_appendix, AppendixData, GSeries,
    NumeratorData, PartialFraction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let within = took <= limit;
    outcome(
        o.ok && within,
        format!("{} ({:.2?}, limit {:?})", o.detail, took, limit),
    )
}

fn alpha_beta_identity() -> Outcome {
    timed(Duration::from_secs(10), || {
        let table = beta_table(2);
        let from_betas = classical_spin_Q(LiftSpec::new(2)).unwrap();
        let ok = table.rows().all(|(_, _, b)| b == 1)
            && from_betas == genus4_Q_closed()
            && from_betas.degree() == Some(16);
        outcome(
            ok,
            "spin product at n = 2 equals the 16-factor closed form at generic k",
        )
    })
}

fn eigenvalue_triple() -> Outcome {
    let vieta = lambda_p_from_Q(&genus4_Q_closed());
    let closed = lambda_p_formula(2);
    let printed = genus4_lambda_p_symbols().t_p;
    outcome(
        vieta == closed && closed == printed,
        "Vieta = closed form = printed T(p) eigenvalue",
    )
}

fn brute_alpha(r: i64, j: i64, n: usize) -> u64 {
    let set = odd_set(n);
    (0u64..1 << set.len())
        .filter(|m| m.count_ones() as i64 == j)
        .filter(|m| {
            set.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, e)| e)
                .sum::<i64>()
                == r
        })
        .count() as u64
}

fn beta_reproduction() -> Outcome {
    let mut ok = beta(0, 0, 2) == 1;
    ok &= [-3, -1, 1, 3].iter().all(|&r| beta(r, 1, 2) == 1);
    ok &= [-4, -2, 0, 2, 4].iter().all(|&r| beta(r, 2, 2) == 1);
    ok &= (1..=6).all(|n| {
        let nn = (n * n) as i64;
        beta(-nn, n as i64, n) == 1 && alpha(-nn, n as i64 - 2, n) == 0
    });
    for n in 1..=5 {
        let ss = SubsetSums::new(n);
        let nn = (n * n) as i64;
        for j in 0..=2 * n as i64 {
            for r in -nn..=nn {
                ok &= ss.alpha(r, j) == brute_alpha(r, j, n);
            }
        }
    }
    outcome(
        ok,
        "printed betas, beta(-n^2, n, n) = 1 for n <= 6, DP = enumeration for n <= 5",
    )
}

fn genus4_quadratic_positivity() -> Outcome {
    let two = genus4_sign_quadratic(2);
    let three = genus4_sign_quadratic(3);
    let printed = two.u1 == QSqrt::new(2, Rat::from_integer(0.into()), ratio(15, 4))
        && two.u0 == QSqrt::rational(ratio(27, 4))
        && three.u1 == QSqrt::new(3, Rat::from_integer(0.into()), ratio(40, 9))
        && three.u0 == QSqrt::rational(ratio(112, 9))
        && two.u2 == QSqrt::one()
        && three.u2 == QSqrt::one();
    let primes = primes_in(2, 10_000);
    let quads = ikeda_core::eigen::scan_sign_quadratics(&primes, Exec::default());
    let failures: Vec<u64> = quads.iter().filter(|q| !q.positive).map(|q| q.p).collect();
    outcome(
        printed && failures.is_empty(),
        format!(
            "{} primes <= 10^4, exact minima positive; non-positive at {:?}",
            primes.len(),
            failures
        ),
    )
}

fn saito_kurokawa_delta() -> Outcome {
    let delta = builtin_delta(2).unwrap();
    let u = satake_u(&delta, 2).unwrap().u;
    let k = delta.k();
    let value = UPoly::from_symmetric(&lambda_p_formula(1))
        .unwrap()
        .eval(2, k, &u);
    let expected = -24 + 2i64.pow(k as u32) + 2i64.pow(k as u32 - 1);
    let ok = delta.ap[&2] == (-24).into() && expected == 72 && value == QSqrt::int(72);
    outcome(
        ok,
        format!("lambda(2) = {value} from tau(2) = {}", delta.ap[&2]),
    )
}

fn appendix() -> Outcome {
    timed(Duration::from_secs(120), || {
        let pf = PartialFraction::genus4().unwrap();
        let rep = verify_appendix(&AppendixData::bundled(), &pf, 2024, 5).unwrap();
        let symbolic = rep.rows.iter().filter(|r| r.symbolic).count();
        let numeric_ok = rep
            .rows
            .iter()
            .all(|r| r.max_rel_err < 1e-25 && r.points >= 5);
        let a13 = rep
            .rows
            .iter()
            .find(|r| r.index == 13)
            .map(|r| r.max_rel_err < 1e-25)
            .unwrap_or(false);
        outcome(
            rep.rows.len() == 16
                && symbolic == 16
                && numeric_ok
                && a13
                && rep.a2_is_minus7_a1
                && rep.reconstruction_rel_err < 1e-25
                && pf.reconstruction_holds().unwrap(),
            format!(
                "{symbolic}/16 rows symbolic, all rows within 1e-25 at 5 points, terms sum to 1/Q"
            ),
        )
    })
}

fn random_numerator(rng: &mut ChaCha8Rng) -> NumeratorData {
    let mut e = vec![LaurentAQ::one()];
    for _ in 0..rng.gen_range(1..=14) {
        let mut c = LaurentAQ::zero();
        for _ in 0..rng.gen_range(0..3) {
            let m = Mono::new(
                rng.gen_range(-2..=2),
                KExp::new(rng.gen_range(-4..=4), rng.gen_range(0..=2)),
            );
            c += &LaurentAQ::term(ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)), m);
        }
        e.push(c);
    }
    NumeratorData::new(4, "random", e).unwrap()
}

fn series_equivalences() -> Outcome {
    let q = genus4_Q_closed();
    let pf = PartialFraction::genus4().unwrap();
    let g = pf.g_values(12, Exec::default()).unwrap();
    let series = series_quotient(&PolyX::one(), &q, 12).unwrap();
    let mut ok = g[0].is_one() && g == series;
    let gs = GSeries {
        genus: 4,
        values: g,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let data = random_numerator(&mut rng);
        let want = series_quotient(&data.to_poly(), &q, 12).unwrap();
        ok &= (0..=12).all(|r| lambda_pr(Some(&data), &gs, r).unwrap() == want[r]);
    }
    let (l1, l2) = (LaurentAQ::a_pow(101), LaurentAQ::a_pow(-307));
    let q2 = genus2_Q(&l1, &l2);
    let corrected = series_quotient(&genus2_P(Genus2Variant::Corrected), &q2, 2).unwrap();
    ok &= corrected[1] == l1 && corrected[2] == l2;
    let mut detail =
        "g(0) = 1, g(r) = series for r <= 12, assembly = P/Q series for r <= 12, genus-2 [x^2]"
            .to_string();
    match std::env::var_os("IKEDA_NUMERATOR_GENUS4") {
        Some(path) => {
            let data = NumeratorData::load(std::path::Path::new(&path)).unwrap();
            ok &= lambda_pr(Some(&data), &gs, 1).unwrap() == genus4_lambda_p_symbols().t_p;
            detail.push_str("; external numerator gives the printed lambda(p)");
        }
        None => detail.push_str("; external genus-4 numerator check skipped (no data file)"),
    }
    outcome(ok, detail)
}

fn leading_identity() -> Outcome {
    let mut ok = dr_leading_identity();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for r in 0..=3 {
        let d = d_factor(r);
        ok &= d.is_certified_positive();
        for p in [2u64, 3, 5, 7] {
            for _ in 0..5 {
                let u = QSqrt::rational(ratio(rng.gen_range(-400..=400), 200));
                ok &= d.bounds_hold(p, 6, &u);
            }
            ok &= d.bounds_hold(p, 6, &QSqrt::int(2)) && d.bounds_hold(p, 6, &QSqrt::int(-2));
        }
    }
    outcome(
        ok,
        "a-polynomial identity; every D(r) factor >= (p^(m/2) - 1)^2 > 0 for p >= 2",
    )
}

fn desk_scale_signs() -> Outcome {
    timed(Duration::from_secs(60), || {
        let grid = u_grid(101);
        let mut ok = true;
        let mut detail = Vec::new();
        for n in 1..=3 {
            let t = first_sign_threshold(n);
            let primes = primes_in(t.p0, 1000);
            let rows = scan_lambda_p(n, 6, &primes, |_| grid.clone(), Exec::default());
            let pos = rows.iter().all(|r| r.sign() == Ordering::Greater);
            ok &= pos && !rows.is_empty();
            detail.push(format!("n={n}: p0={}", t.p0));
        }
        let all = primes_in(2, 1000);
        let rows = scan_lambda_p(2, 6, &all, |_| grid.clone(), Exec::default());
        ok &= rows.iter().all(|r| r.sign() == Ordering::Greater);
        outcome(
            ok,
            format!("{}; n=2 positive at every prime <= 1000", detail.join(", ")),
        )
    })
}

fn tau() -> Outcome {
    let n = 97 * 97;
    let t = tau_oracle(n).unwrap();
    let mut ok = t[1] == 1 && t[2] == -24 && t[3] == 252 && t[4] == -1472;
    for p in primes_in(2, 97) {
        let p = p as usize;
        ok &= t[p * p] == t[p] * t[p] - (p as i128).pow(11);
    }
    for m in 2..=100usize {
        for k in 2..=100usize {
            if m * k <= n && num_gcd(m, k) == 1 {
                ok &= t[m * k] == t[m] * t[k];
            }
        }
    }
    outcome(
        ok,
        "eta-product coefficients: tau(2), tau(3), tau(4), Hecke at p <= 97, multiplicativity",
    )
}

fn num_gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("1 spin product identity", alpha_beta_identity),
        ("2 eigenvalue triple agreement", eigenvalue_triple),
        ("3 beta table", beta_reproduction),
        ("4 genus-4 quadratics", genus4_quadratic_positivity),
        ("5 Saito-Kurokawa with Delta", saito_kurokawa_delta),
        ("6 appendix residues", appendix),
        ("7 series equivalences", series_equivalences),
        ("8 leading identity and D(r)", leading_identity),
        ("9 desk-scale sign scans", desk_scale_signs),
        ("10 tau oracle", tau),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let o = f();
        println!(
            "{} {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
