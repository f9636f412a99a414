use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains a non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("sample too short: {n} observations, need at least {min}")]
    TooShort { n: usize, min: usize },

    #[error("threshold order statistic {value} is not positive; shift the data before estimating")]
    NonPositiveThreshold { value: f64 },

    #[error("{name}={k} out of range for n={n} (need 1 <= {name} <= {max})")]
    BadK {
        name: &'static str,
        k: usize,
        n: usize,
        max: usize,
    },

    #[error("probability level {0} must lie in (0, 1)")]
    BadLevel(f64),

    #[error("argument {name}={value} outside the supported domain: {reason}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        reason: String,
    },

    #[error("region reaches {reach} rank positions but the sample has only n={n} (k3={k3}, extent {extent})")]
    RegionTooLarge {
        k3: usize,
        n: usize,
        extent: f64,
        reach: usize,
    },

    #[error("parameter {theta:?} lies outside the family's parameter box")]
    ThetaOutOfBox { theta: Vec<f64> },

    #[error("weight scheme invalid: {0}")]
    BadScheme(String),

    #[error("empirical moment vector is identically zero; no joint exceedances in any region")]
    DegenerateMoments,

    #[error("moment fit did not converge within {iterations} iterations per start")]
    NoConvergence { iterations: usize },

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("coefficient of tail dependence {0} outside (1/2, 1]")]
    BadEta(f64),

    #[error("adjustment factor {0} outside (0, 1]")]
    EtaStarOutOfRange(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid model specification: {0}")]
    BadSpec(String),

    #[error("conditional inversion failed to bracket a root (u={u}, w={w})")]
    RootFail { u: f64, w: f64 },

    #[error("too few exceedances: {0}")]
    TooFewExceedances(String),

    #[error("rolling window of {window} needs more history (have {available})")]
    WindowTooShort { window: usize, available: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("repetition {rep}: {source}")]
    Repetition {
        rep: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn check_level(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::BadLevel(p))
    }
}
