use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Paired loss observations `(x_i, y_i)`: `x` is the institution, `y` the system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedSample {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl PairedSample {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InvalidInput(format!(
                "margins differ in length ({} vs {})",
                x.len(),
                y.len()
            )));
        }
        if let Some(index) = x.iter().chain(&y).position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                index: index % x.len().max(1),
            });
        }
        Ok(Self { x, y })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }

    /// Contiguous sub-sample `[start, end)`.
    pub fn window(&self, start: usize, end: usize) -> PairedSample {
        PairedSample {
            x: self.x[start..end].to_vec(),
            y: self.y[start..end].to_vec(),
        }
    }

    pub fn map_y(&self, f: impl Fn(f64) -> f64) -> Result<PairedSample> {
        PairedSample::new(self.x.clone(), self.y.iter().map(|&v| f(v)).collect())
    }

    /// Two-column CSV with header `x,y`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y"])?;
        for (x, y) in self.pairs() {
            w.write_record([x.to_string(), y.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let headers = r.headers()?.clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::InvalidInput(format!("CSV header lacks column `{name}`")))
        };
        let (ix, iy) = (col("x")?, col("y")?);
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for (line, rec) in r.records().enumerate() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                let field = rec.get(i).unwrap_or("").trim();
                field.parse::<f64>().map_err(|_| {
                    Error::InvalidInput(format!("row {}: cannot parse `{field}`", line + 1))
                })
            };
            x.push(parse(ix)?);
            y.push(parse(iy)?);
        }
        Self::new(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let s = PairedSample::from_pairs(&[(1.0, 0.1), (2.5e-17, 3.0), (1.0 / 3.0, 7.25)]).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"x,y\n"));
        let back = PairedSample::read_csv(buf.as_slice()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn rejects_ragged_and_non_finite() {
        assert!(PairedSample::new(vec![1.0], vec![]).is_err());
        assert!(matches!(
            PairedSample::new(vec![1.0, f64::NAN], vec![1.0, 2.0]),
            Err(Error::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn missing_column_is_reported() {
        let err = PairedSample::read_csv("a,y\n1,2\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("`x`"));
    }
}
