//! The algebra tower above the coefficients: univariate polynomials,
//! bivariate Laurent polynomials in `t` and `ζ`, reduced rational functions,
//! and truncated q-series.

pub mod laurent;
pub mod poly;
pub mod qseries;
pub mod ratfun;

pub use laurent::BiLaurent;
pub use poly::Poly;
pub use qseries::{OrderConstancy, QSeries};
pub use ratfun::RationalFunction;
