//! Bivariate joint-tail estimation: ranks, the empirical tail measure,
//! parametric tail families and the method-of-moments fit.

pub mod family;
pub mod fit;
pub mod ranks;
pub mod scheme;

pub use family::{FamilyKind, InvertedHuslerReiss, ParetoMixture, TailFamily};
pub use fit::{family_moment_vector, fit_moment_vector, m_estimate, FitOptions, FitResult};
pub use ranks::{empirical_q, moment_vector, rank_pairs, RankedPairs};
pub use scheme::{Rect, SchemeSpec, WeightScheme};
