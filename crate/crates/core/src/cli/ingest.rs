//! Price and loss file ingestion.
//!
//! Accepted headers (case-insensitive):
//!
//! - `date,price`: ascending ISO-8601 dates, strictly positive prices.
//!   Losses are percent log-losses `-100 · ln(P_t / P_{t-1})`, dated by
//!   `t`, so there is one loss fewer than prices.
//! - `date,loss`: ascending dates with losses taken as given.
//! - `loss`: undated losses, e.g. a scenario vector for `compute`.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use chrono::NaiveDate;

use crate::backtest::LossSeries;

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Row { line: u64, reason: String },
    #[error("{0}")]
    Structure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    DatePrice,
    DateLoss,
    Loss,
}

pub fn ingest(path: &Path) -> Result<LossSeries, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ingest_reader(file)
}

pub fn ingest_reader(reader: impl Read) -> Result<LossSeries, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let header = rdr.headers().map_err(row_error)?.clone();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(IngestError::Structure("empty file".into()));
    }
    let names: Vec<String> = header.iter().map(str::to_ascii_lowercase).collect();
    let layout = match names.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["date", "price"] => Layout::DatePrice,
        ["date", "loss"] => Layout::DateLoss,
        ["loss"] => Layout::Loss,
        _ => {
            return Err(IngestError::Structure(format!(
                "unrecognized header `{}`; expected `date,price`, `date,loss` or `loss`",
                names.join(",")
            )))
        }
    };

    let mut dates = Vec::new();
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(row_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |reason: String| IngestError::Row { line, reason };
        let value_field = if layout == Layout::Loss { &record[0] } else { &record[1] };
        let value: f64 = value_field
            .parse()
            .map_err(|_| bad(format!("`{value_field}` is not a number")))?;
        if !value.is_finite() {
            return Err(bad(format!("non-finite value `{value_field}`")));
        }
        if layout == Layout::DatePrice && value <= 0.0 {
            return Err(bad(format!("price {value} is not strictly positive")));
        }
        if layout != Layout::Loss {
            let date = NaiveDate::parse_from_str(&record[0], "%Y-%m-%d")
                .map_err(|e| bad(format!("`{}` is not an ISO-8601 date: {e}", &record[0])))?;
            if let Some(prev) = dates.last() {
                if date == *prev {
                    return Err(bad(format!("duplicate date {date}")));
                }
                if date < *prev {
                    return Err(bad(format!("date {date} precedes {prev}; dates must ascend")));
                }
            }
            dates.push(date);
        }
        values.push(value);
    }

    match layout {
        Layout::DatePrice => {
            if values.len() < 2 {
                return Err(IngestError::Structure(format!(
                    "{} price row(s); at least 2 are needed for one loss",
                    values.len()
                )));
            }
            Ok(LossSeries {
                dates: Some(dates[1..].to_vec()),
                losses: log_losses(&values),
            })
        }
        _ if values.is_empty() => Err(IngestError::Structure("no data rows".into())),
        Layout::DateLoss => Ok(LossSeries {
            dates: Some(dates),
            losses: values,
        }),
        Layout::Loss => Ok(LossSeries::from_losses(values)),
    }
}

/// Percent log-losses `-100 · ln(P_t / P_{t-1})`; positive values are losses.
pub fn log_losses(prices: &[f64]) -> Vec<f64> {
    prices.windows(2).map(|w| -100.0 * (w[1].ln() - w[0].ln())).collect()
}

fn row_error(e: csv::Error) -> IngestError {
    let line = e.position().map_or(0, |p| p.line());
    IngestError::Row {
        line,
        reason: e.to_string(),
    }
}
