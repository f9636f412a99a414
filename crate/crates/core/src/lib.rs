//! Semi-parametric estimation of conditional value-at-risk for
//! asymptotically independent loss pairs.
//!
//! The estimator combines a Hill/Weissman extrapolation of the Y margin with
//! a rank-based moment fit of a parametric joint-tail family:
//! `CoVaR̂ = (η̂*_p)^{-γ̂} · VaR̂_Y(p)`.

pub mod covar;
pub mod error;
pub mod experiments;
pub mod models;
pub mod optimize;
pub mod quadrature;
pub mod roots;
pub mod sample;
pub mod tail_dependence;
pub mod tail_margins;

pub use covar::{
    adjustment_factor_exact, adjustment_factor_for, covar_estimate, covar_estimate_variant,
    solve_eta_star, AdjustmentQuery, CovarEstimate, Tuning, Variant,
};
pub use error::{Error, Result};
pub use models::{joint_survival, sample_model1, sample_model2, true_covar, JointSurvival, ModelSpec};
pub use sample::PairedSample;
pub use tail_dependence::{
    empirical_q, m_estimate, moment_vector, rank_pairs, FamilyKind, FitResult, InvertedHuslerReiss,
    ParetoMixture, RankedPairs, Rect, SchemeSpec, TailFamily, WeightScheme,
};
pub use tail_margins::{hill, sort_series, weissman_var, SortedSeries, TailIndexEstimate, VarEstimate};
