//! Exact symbolic ring: Laurent polynomials in `(a, q)`, polynomials in `x`,
//! rational functions, and exact evaluation in `Q(sqrt p)`.

pub mod eval;
pub mod field;
pub mod frac;
pub mod laurent;
pub mod polyx;

pub use eval::{evaluate, evaluate_real, EvalPoint, SatakeValue, UPoly};
pub use field::{CSqrt, QSqrt};
pub use frac::{FactoredFrac, FracAQ, OneMinus};
pub use laurent::{rat, ratio, KExp, LaurentAQ, Mono, Rat, TermRecord};
pub use polyx::{series_quotient, series_quotient_with, PolyX};
