//! Monte Carlo reproduction harness, the naive baseline, the η-vs-k₃ scan,
//! rolling dynamic forecasts and quantile scoring.

mod dynamic;
mod naive;
mod scan;
mod score;
mod table1;

pub use dynamic::{dynamic_covar, write_forecast_csv, DynamicConfig, FilteredSeries, ForecastRecord};
pub use naive::naive_covar;
pub use scan::{eta_scan, write_eta_scan_csv};
pub use score::{distress_events, empirical_var, quantile_score, score_events, ScoreSeries};
pub use table1::{
    run_table1, summarize, ExperimentConfig, ExperimentReport, KSummary, RepRecord, Summary,
};
