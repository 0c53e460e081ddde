//! Rational functions over [`LaurentAQ`].
//!
//! [`FracAQ`] is a plain numerator/denominator pair. [`FactoredFrac`] keeps
//! the denominator as a product of binomials `1 - c*m`, which is the shape
//! every partial-fraction residue of a product of monomial-root factors
//! takes; sums then go over the lcm of the binomial multisets instead of a
//! blind product of denominators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::laurent::{LaurentAQ, Mono, Rat};

#[derive(Clone, Debug)]
pub struct FracAQ {
    pub num: LaurentAQ,
    pub den: LaurentAQ,
}

impl FracAQ {
    pub fn new(num: LaurentAQ, den: LaurentAQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut f = FracAQ { num, den };
        f.normalize();
        Ok(f)
    }

    pub fn from_laurent(num: LaurentAQ) -> Self {
        FracAQ {
            num,
            den: LaurentAQ::one(),
        }
    }

    /// Divides numerator and denominator by the leading term of the
    /// denominator, so the denominator's leading coefficient is `1` and its
    /// leading monomial is `1`.
    fn normalize(&mut self) {
        let (m, c) = {
            let (m, c) = self.den.terms().next_back().expect("nonzero denominator");
            (*m, c.clone())
        };
        let inv = Rat::one() / c;
        self.num = self.num.mul_term(&inv, m.inv());
        self.den = self.den.mul_term(&inv, m.inv());
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value equality via cross-multiplication.
    pub fn value_eq(&self, other: &FracAQ) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn mul(&self, other: &FracAQ) -> FracAQ {
        FracAQ::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero")
    }

    pub fn add(&self, other: &FracAQ) -> FracAQ {
        if self.den == other.den {
            return FracAQ::new(&self.num + &other.num, self.den.clone()).expect("nonzero");
        }
        FracAQ::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
        .expect("nonzero")
    }

    pub fn neg(&self) -> FracAQ {
        FracAQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &LaurentAQ) -> FracAQ {
        FracAQ::new(&self.num * c, self.den.clone()).expect("nonzero")
    }

    /// `None` when the value is zero.
    pub fn inv(&self) -> Option<FracAQ> {
        FracAQ::new(self.den.clone(), self.num.clone()).ok()
    }
}

impl PartialEq for FracAQ {
    fn eq(&self, other: &Self) -> bool {
        self.value_eq(other)
    }
}

impl fmt::Display for FracAQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// The binomial `1 - c*m` with `m` a positive monomial (see
/// [`Mono::is_positive`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneMinus {
    pub m: Mono,
    pub c: Rat,
}

impl OneMinus {
    pub fn to_laurent(&self) -> LaurentAQ {
        LaurentAQ::one() - LaurentAQ::term(self.c.clone(), self.m)
    }
}

impl fmt::Display for OneMinus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 - {})", LaurentAQ::term(self.c.clone(), self.m))
    }
}

/// Splits `1 - c*m` into `unit * atom` with a canonical atom, or returns the
/// plain constant `1 - c` when `m = 1`.
pub fn canonical_one_minus(c: &Rat, m: Mono) -> Result<(LaurentAQ, Option<OneMinus>)> {
    if c.is_zero() {
        return Ok((LaurentAQ::one(), None));
    }
    if m.is_one() {
        let k = Rat::one() - c;
        if k.is_zero() {
            return Err(Error::DegenerateRoots(
                format!("{}", LaurentAQ::term(c.clone(), m)),
                "1".into(),
            ));
        }
        return Ok((LaurentAQ::constant(k), None));
    }
    if m.is_positive() {
        Ok((LaurentAQ::one(), Some(OneMinus { m, c: c.clone() })))
    } else {
        // 1 - c m = -c m (1 - c^-1 m^-1)
        let unit = LaurentAQ::term(-c.clone(), m);
        Ok((
            unit,
            Some(OneMinus {
                m: m.inv(),
                c: Rat::one() / c,
            }),
        ))
    }
}

/// `num / prod(atom^e)`.
#[derive(Clone, Debug)]
pub struct FactoredFrac {
    pub num: LaurentAQ,
    pub den: BTreeMap<OneMinus, u32>,
}

impl FactoredFrac {
    pub fn from_laurent(num: LaurentAQ) -> Self {
        FactoredFrac {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        FactoredFrac::from_laurent(LaurentAQ::one())
    }

    /// `1 / (1 - c*m)`.
    pub fn inv_one_minus(c: &Rat, m: Mono) -> Result<Self> {
        let (unit, atom) = canonical_one_minus(c, m)?;
        // unit is a monomial or nonzero constant
        let (uc, um) = unit.as_monomial().expect("unit is a monomial");
        let num = LaurentAQ::term(Rat::one() / uc, um.inv());
        let mut den = BTreeMap::new();
        if let Some(a) = atom {
            den.insert(a, 1);
        }
        Ok(FactoredFrac { num, den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, other: &FactoredFrac) -> FactoredFrac {
        let mut den = self.den.clone();
        for (a, e) in &other.den {
            *den.entry(a.clone()).or_insert(0) += e;
        }
        FactoredFrac {
            num: &self.num * &other.num,
            den,
        }
    }

    pub fn mul_laurent(&self, c: &LaurentAQ) -> FactoredFrac {
        FactoredFrac {
            num: &self.num * c,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> FactoredFrac {
        FactoredFrac {
            num: self.num.pow(e),
            den: self.den.iter().map(|(a, k)| (a.clone(), k * e)).collect(),
        }
    }

    /// Sum over the lcm of the two binomial multisets.
    pub fn add(&self, other: &FactoredFrac) -> FactoredFrac {
        FactoredFrac::sum([self.clone(), other.clone()])
    }

    pub fn sum<I: IntoIterator<Item = FactoredFrac>>(items: I) -> FactoredFrac {
        let items: Vec<FactoredFrac> = items.into_iter().filter(|f| !f.is_zero()).collect();
        let mut lcm: BTreeMap<OneMinus, u32> = BTreeMap::new();
        for f in &items {
            for (a, e) in &f.den {
                let slot = lcm.entry(a.clone()).or_insert(0);
                *slot = (*slot).max(*e);
            }
        }
        let mut cache: HashMap<(OneMinus, u32), LaurentAQ> = HashMap::new();
        let mut num = LaurentAQ::zero();
        for f in &items {
            let mut term = f.num.clone();
            for (a, e) in &lcm {
                let have = f.den.get(a).copied().unwrap_or(0);
                let missing = e - have;
                if missing > 0 {
                    let fac = cache
                        .entry((a.clone(), missing))
                        .or_insert_with(|| a.to_laurent().pow(missing));
                    term = &term * &*fac;
                }
            }
            num += &term;
        }
        let mut out = FactoredFrac { num, den: lcm };
        out.cancel();
        out
    }

    /// Removes every denominator atom that exactly divides the numerator.
    pub fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let atoms: Vec<OneMinus> = self.den.keys().cloned().collect();
        for a in atoms {
            while self.den.get(&a).copied().unwrap_or(0) > 0 {
                match div_exact_one_minus(&self.num, &a) {
                    Some(q) => {
                        self.num = q;
                        let e = self.den.get_mut(&a).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            self.den.remove(&a);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    pub fn expanded_den(&self) -> LaurentAQ {
        self.den
            .iter()
            .map(|(a, e)| a.to_laurent().pow(*e))
            .product()
    }

    pub fn to_frac(&self) -> FracAQ {
        FracAQ::new(self.num.clone(), self.expanded_den()).expect("binomial product is nonzero")
    }

    /// Exact Laurent polynomial value, if the denominator divides out.
    pub fn into_laurent(mut self) -> Result<LaurentAQ> {
        self.cancel();
        if self.den.is_empty() {
            Ok(self.num)
        } else {
            let rest: Vec<String> = self.den.keys().map(|a| a.to_string()).collect();
            Err(Error::NotDivisible("numerator".into(), rest.join("*")))
        }
    }
}

impl fmt::Display for FactoredFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if !self.den.is_empty() {
            write!(f, " / (")?;
            for (i, (a, e)) in self.den.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{a}")?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Exact quotient `f / (1 - c*m)`, or `None` when it is not a Laurent
/// polynomial.
///
/// Monomials are grouped into lines along the exponent vector of `m`; on each
/// line the quotient is a running sum `g_t = f_t + c*g_(t-1)` which must
/// terminate at zero.
pub fn div_exact_one_minus(f: &LaurentAQ, atom: &OneMinus) -> Option<LaurentAQ> {
    let v = atom.m.vector();
    let axis = v.iter().position(|c| *c != 0)?;
    debug_assert!(v[axis] > 0);
    let mut lines: HashMap<[i64; 3], BTreeMap<i64, Rat>> = HashMap::new();
    for (m, c) in f.terms() {
        let e = m.vector();
        let t = e[axis].div_euclid(v[axis]);
        let rep = [e[0] - t * v[0], e[1] - t * v[1], e[2] - t * v[2]];
        lines.entry(rep).or_default().insert(t, c.clone());
    }
    let mut out = LaurentAQ::zero();
    for (rep, line) in lines {
        let tmin = *line.keys().next().unwrap();
        let tmax = *line.keys().next_back().unwrap();
        let mut g = Rat::zero();
        for t in tmin..=tmax {
            let ft = line.get(&t).cloned().unwrap_or_else(Rat::zero);
            g = ft + &atom.c * &g;
            if t == tmax {
                if !g.is_zero() {
                    return None;
                }
            } else if !g.is_zero() {
                let e = [rep[0] + t * v[0], rep[1] + t * v[1], rep[2] + t * v[2]];
                out.add_term(Mono::from_vector(e), g.clone());
            }
        }
    }
    Some(out)
}
