use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use tailcovar::experiments::{
    distress_events, dynamic_covar, eta_scan, run_table1, score_events, write_eta_scan_csv,
    write_forecast_csv, DynamicConfig, ExperimentConfig, FilteredSeries,
};
use tailcovar::{
    adjustment_factor_exact, covar_estimate_variant, true_covar, Error, FamilyKind, ModelSpec,
    PairedSample, SchemeSpec, Tuning, Variant, WeightScheme,
};

use crate::{Command, FamilyArgs, ModelArgs, ModelName, TuningArgs, VariantArg};

pub enum CliError {
    Usage(String),
    Runtime(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Runtime(e) => write!(f, "{e}"),
        }
    }
}

// invalid arguments or configuration are usage errors; the rest are runtime
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BadK { .. }
            | Error::BadLevel(_)
            | Error::BadSpec(_)
            | Error::BadScheme(_)
            | Error::ThetaOutOfBox { .. }
            | Error::WindowTooShort { .. }
            | Error::Json(_) => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(Error::Io(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(Error::Json(e))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(Error::Csv(e))
    }
}

type CliResult<T> = Result<T, CliError>;

fn open_input(path: &str) -> CliResult<Box<dyn Read>> {
    if path == "-" {
        Ok(Box::new(io::stdin().lock()))
    } else {
        File::open(path)
            .map(|f| Box::new(f) as Box<dyn Read>)
            .map_err(|e| CliError::Runtime(Error::InvalidInput(format!("cannot open {path}: {e}"))))
    }
}

fn open_output(path: Option<&str>) -> CliResult<Box<dyn Write>> {
    match path {
        None | Some("-") => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p)?))),
    }
}

impl ModelArgs {
    fn spec(&self) -> CliResult<ModelSpec> {
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this model")))
        };
        let spec = match self.model {
            ModelName::Model1 => ModelSpec::Model1 {
                theta1: need(self.theta1, "theta1")?,
                theta2: need(self.theta2, "theta2")?,
            },
            ModelName::Model2 => ModelSpec::Model2 {
                theta: need(self.theta, "theta")?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl TuningArgs {
    fn tuning(&self) -> CliResult<Tuning> {
        let pick = |v: Option<usize>, flag: &str| {
            v.or(self.k)
                .ok_or_else(|| CliError::Usage(format!("--{flag} (or --k) is required")))
        };
        Ok(Tuning {
            p: self.p,
            k1: pick(self.k1, "k1")?,
            k2: pick(self.k2, "k2")?,
            k3: pick(self.k3, "k3")?,
        })
    }
}

impl FamilyArgs {
    fn scheme(&self) -> CliResult<WeightScheme> {
        let family = self.family.family();
        let spec = match &self.scheme {
            Some(path) => {
                let mut text = String::new();
                open_input(path)?.read_to_string(&mut text)?;
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("scheme {path}: {e}")))?
            }
            None => match self.family {
                FamilyKind::ParetoMixture => SchemeSpec::pareto_mixture_default(),
                FamilyKind::InvertedHuslerReiss => SchemeSpec::inverted_husler_reiss_default(),
            },
        };
        Ok(WeightScheme::new(spec, family)?)
    }
}

fn variant(arg: VariantArg, c: Option<f64>) -> CliResult<Variant> {
    let need_c = || c.ok_or_else(|| CliError::Usage("--c is required for two-level variants".into()));
    Ok(match arg {
        VariantArg::Exceedance => Variant::Exceedance,
        VariantArg::Equality => Variant::Equality,
        VariantArg::ExceedanceTwoLevel => Variant::ExceedanceTwoLevel { c: need_c()? },
        VariantArg::EqualityTwoLevel => Variant::EqualityTwoLevel { c: need_c()? },
    })
}

fn print_json<T: serde::Serialize>(value: &T) -> CliResult<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Simulate { model, n, seed, out } => {
            let spec = model.spec()?;
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let sample = spec.sample(n, seed)?;
            sample.write_csv(open_output(out.as_deref())?)?;
        }
        Command::Estimate {
            input,
            tuning,
            family,
            variant: v,
            c,
        } => {
            let tuning = tuning.tuning()?;
            let variant = variant(v, c)?;
            let scheme = family.scheme()?;
            let sample = PairedSample::read_csv(open_input(&input)?)?;
            let est = covar_estimate_variant(&sample, tuning, family.family.family(), &scheme, variant)?;
            print_json(&est)?;
        }
        Command::Oracle { model, p } => {
            let spec = model.spec()?;
            let out = serde_json::json!({
                "model": spec,
                "p": p,
                "eta_p": adjustment_factor_exact(&spec, p)?,
                "true_covar": true_covar(&spec, p)?,
            });
            print_json(&out)?;
        }
        Command::Table1 { config, out, threads } => table1(&config, out, threads)?,
        Command::EtaScan {
            input,
            family,
            k3,
            out,
        } => {
            let scheme = family.scheme()?;
            let sample = PairedSample::read_csv(open_input(&input)?)?;
            let rows = eta_scan(&sample, family.family.family(), &scheme, &k3)?;
            for (k, r) in &rows {
                if let Err(e) = r {
                    eprintln!("k3={k}: {e}");
                }
            }
            write_eta_scan_csv(&rows, open_output(out.as_deref())?)?;
        }
        Command::Forecast {
            input,
            tuning,
            family,
            window,
            refresh_every,
            out,
        } => {
            let config = DynamicConfig {
                window,
                refresh_every,
                tuning: tuning.tuning()?,
            };
            let scheme = family.scheme()?;
            let series = read_filtered(open_input(&input)?)?;
            let records = dynamic_covar(&series, &config, family.family.family(), &scheme)?;
            write_forecast_csv(&records, open_output(out.as_deref())?)?;
        }
        Command::Score {
            forecast,
            data,
            p,
            window,
        } => score(&forecast, &data, p, window)?,
    }
    Ok(())
}

fn table1(config_path: &str, out: Option<String>, threads: Option<usize>) -> CliResult<()> {
    let mut text = String::new();
    open_input(config_path)?.read_to_string(&mut text)?;
    let config: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {config_path}: {e}")))?;
    let report_path: PathBuf = out
        .map(PathBuf::from)
        .or_else(|| config.output.clone())
        .ok_or_else(|| CliError::Usage("no output path: pass --out or set `output` in the config".into()))?;
    config.validate()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Runtime(Error::InvalidInput(e.to_string())))?;
    let report = pool.install(|| run_table1(&config))?;

    let mut json = BufWriter::new(File::create(&report_path)?);
    serde_json::to_writer_pretty(&mut json, &report)?;
    writeln!(json)?;
    json.flush()?;
    report.write_reps_csv(BufWriter::new(File::create(reps_csv_path(&report_path))?))?;

    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["column", "k1", "k2", "k3", "mean", "sd", "true_value"])?;
    let fmt_sd = |sd: Option<f64>| sd.map(|v| v.to_string()).unwrap_or_default();
    for r in &report.rows {
        w.write_record([
            format!("k={}", r.k1),
            r.k1.to_string(),
            r.k2.to_string(),
            r.k3.to_string(),
            r.mean.to_string(),
            fmt_sd(r.sd),
            report.true_value.to_string(),
        ])?;
    }
    w.write_record([
        "naive".to_string(),
        String::new(),
        String::new(),
        String::new(),
        report.naive.mean.to_string(),
        fmt_sd(report.naive.sd),
        report.true_value.to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

/// `report.json` → `report.csv`.
pub fn reps_csv_path(report: &Path) -> PathBuf {
    report.with_extension("csv")
}

#[derive(Deserialize)]
struct FilteredRow {
    mu: f64,
    sigma: f64,
    z_x: f64,
    z_y: f64,
}

fn read_filtered(input: impl Read) -> CliResult<FilteredSeries> {
    let mut r = csv::Reader::from_reader(input);
    let (mut mu, mut sigma, mut zx, mut zy) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for row in r.deserialize::<FilteredRow>() {
        let row = row?;
        mu.push(row.mu);
        sigma.push(row.sigma);
        zx.push(row.z_x);
        zy.push(row.z_y);
    }
    Ok(FilteredSeries::new(mu, sigma, PairedSample::new(zx, zy)?)?)
}

#[derive(Deserialize)]
struct ForecastRow {
    t: usize,
    covar: f64,
}

fn score(forecast: &str, data: &str, p: f64, window: Option<usize>) -> CliResult<()> {
    let data = PairedSample::read_csv(open_input(data)?)?;
    let mut by_time = HashMap::new();
    for row in csv::Reader::from_reader(open_input(forecast)?).deserialize::<ForecastRow>() {
        let row = row?;
        if row.t >= data.len() {
            return Err(CliError::Usage(format!(
                "forecast time {} beyond the {} data rows",
                row.t,
                data.len()
            )));
        }
        by_time.insert(row.t, row.covar);
    }
    let mut forecasts = vec![f64::NAN; data.len()];
    for (&t, &v) in &by_time {
        forecasts[t] = v;
    }
    let mut events: Vec<usize> = match window {
        Some(w) => distress_events(data.x(), w, p)?,
        None => (0..data.len()).collect(),
    };
    events.retain(|t| by_time.contains_key(t));
    print_json(&score_events(&forecasts, data.y(), &events, p)?)?;
    Ok(())
}
