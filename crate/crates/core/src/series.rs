//! Dated time series and panels.
//!
//! Everything downstream (regressions, unit-root tests, calibration) consumes
//! the types in this module. Series are immutable after construction; all
//! transforms return new values.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Observation frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Freq {
    Monthly,
    Quarterly,
}

impl Freq {
    pub fn periods_per_year(self) -> u32 {
        match self {
            Freq::Monthly => 12,
            Freq::Quarterly => 4,
        }
    }
}

impl fmt::Display for Freq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Freq::Monthly => write!(f, "monthly"),
            Freq::Quarterly => write!(f, "quarterly"),
        }
    }
}

/// A calendar period: a year plus a 1-based subperiod index
/// (1..=12 monthly, 1..=4 quarterly).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Period {
    pub year: i32,
    pub sub: u32,
    pub freq: Freq,
}

impl Period {
    pub fn new(year: i32, sub: u32, freq: Freq) -> Result<Self> {
        if sub < 1 || sub > freq.periods_per_year() {
            return Err(Error::InvalidArgument(format!(
                "subperiod {sub} out of range for {freq} frequency"
            )));
        }
        Ok(Period { year, sub, freq })
    }

    /// Serial index used for arithmetic and ordering.
    pub fn index(&self) -> i64 {
        self.year as i64 * self.freq.periods_per_year() as i64 + (self.sub as i64 - 1)
    }

    pub fn offset(&self, k: i64) -> Period {
        let ppy = self.freq.periods_per_year() as i64;
        let idx = self.index() + k;
        Period {
            year: idx.div_euclid(ppy) as i32,
            sub: (idx.rem_euclid(ppy) + 1) as u32,
            freq: self.freq,
        }
    }

    /// Parse "YYYY-MM" / "YYYY-MM-DD" (monthly) or "YYYYQn" (quarterly).
    /// The expected frequency is inferred from the format.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadDate(s.to_string());
        if let Some(qpos) = s.find(['Q', 'q']) {
            let year: i32 = s[..qpos].parse().map_err(|_| bad())?;
            let quarter: u32 = s[qpos + 1..].parse().map_err(|_| bad())?;
            return Period::new(year, quarter, Freq::Quarterly).map_err(|_| bad());
        }
        let mut parts = s.split('-');
        let year: i32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let month: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        // a day component is tolerated and ignored
        if let Some(day) = parts.next() {
            let _: u32 = day.parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Period::new(year, month, Freq::Monthly).map_err(|_| bad())
    }

    /// Quarter containing this period.
    pub fn to_quarter(&self) -> Period {
        match self.freq {
            Freq::Quarterly => *self,
            Freq::Monthly => Period {
                year: self.year,
                sub: (self.sub - 1) / 3 + 1,
                freq: Freq::Quarterly,
            },
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.freq {
            Freq::Monthly => write!(f, "{:04}-{:02}", self.year, self.sub),
            Freq::Quarterly => write!(f, "{:04}Q{}", self.year, self.sub),
        }
    }
}

/// A named, fixed-frequency series with a missing-value mask.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub name: String,
    pub start: Period,
    values: Vec<f64>,
    missing: Vec<bool>,
}

impl TimeSeries {
    /// Build a series, validating the type invariants: equal-length value and
    /// mask vectors, at least one entry, finite non-missing values.
    pub fn new(
        name: impl Into<String>,
        start: Period,
        values: Vec<f64>,
        missing: Vec<bool>,
    ) -> Result<Self> {
        let name = name.into();
        if values.is_empty() {
            return Err(Error::SeriesTooShort {
                name,
                needed: 1,
                have: 0,
            });
        }
        if values.len() != missing.len() {
            return Err(Error::InvalidArgument(format!(
                "series '{name}': values and missing mask differ in length"
            )));
        }
        for (i, (&v, &m)) in values.iter().zip(&missing).enumerate() {
            if !m && !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "series '{name}': non-finite value at index {i}"
                )));
            }
        }
        Ok(TimeSeries {
            name,
            start,
            values,
            missing,
        })
    }

    /// Series with no missing entries.
    pub fn dense(name: impl Into<String>, start: Period, values: Vec<f64>) -> Result<Self> {
        let missing = vec![false; values.len()];
        TimeSeries::new(name, start, values, missing)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn freq(&self) -> Freq {
        self.start.freq
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn missing(&self) -> &[bool] {
        &self.missing
    }

    pub fn period(&self, i: usize) -> Period {
        self.start.offset(i as i64)
    }

    pub fn end(&self) -> Period {
        self.period(self.len() - 1)
    }

    /// Value at index, `None` when masked missing.
    pub fn get(&self, i: usize) -> Option<f64> {
        if self.missing[i] {
            None
        } else {
            Some(self.values[i])
        }
    }

    /// Non-missing values in order.
    pub fn observed(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.missing)
            .filter(|(_, &m)| !m)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Restrict to the inclusive period range, clamped to the series span.
    pub fn slice(&self, from: Period, to: Period) -> Result<TimeSeries> {
        if from.freq != self.freq() || to.freq != self.freq() {
            return Err(Error::MixedFrequencies(format!(
                "slice bounds frequency differs from series '{}'",
                self.name
            )));
        }
        let lo = (from.index() - self.start.index()).max(0) as usize;
        let hi_excl = (to.index() - self.start.index() + 1).clamp(0, self.len() as i64) as usize;
        if lo >= hi_excl {
            return Err(Error::EmptyIntersection);
        }
        TimeSeries::new(
            self.name.clone(),
            self.period(lo),
            self.values[lo..hi_excl].to_vec(),
            self.missing[lo..hi_excl].to_vec(),
        )
    }

    /// k-period difference: out[i] = s[i+k] - s[i] placed at period i+k.
    /// Length shrinks by k; name gains a "_diff" suffix.
    pub fn diff(&self, k: usize) -> Result<TimeSeries> {
        if k == 0 {
            return Err(Error::InvalidArgument("diff lag must be positive".into()));
        }
        if self.len() <= k {
            return Err(Error::SeriesTooShort {
                name: self.name.clone(),
                needed: k + 1,
                have: self.len(),
            });
        }
        let n = self.len() - k;
        let mut values = Vec::with_capacity(n);
        let mut missing = Vec::with_capacity(n);
        for i in 0..n {
            let m = self.missing[i + k] || self.missing[i];
            missing.push(m);
            values.push(if m {
                f64::NAN
            } else {
                self.values[i + k] - self.values[i]
            });
        }
        TimeSeries::new(
            format!("{}_diff", self.name),
            self.start.offset(k as i64),
            values.into_iter().map(clean_nan).collect(),
            missing,
        )
    }

    /// Trailing moving average over `window` observations; the first
    /// `window - 1` entries are missing, as is any window touching a gap.
    pub fn moving_average(&self, window: usize) -> Result<TimeSeries> {
        if window == 0 {
            return Err(Error::InvalidArgument(
                "moving average window must be positive".into(),
            ));
        }
        if self.len() < window {
            return Err(Error::SeriesTooShort {
                name: self.name.clone(),
                needed: window,
                have: self.len(),
            });
        }
        let n = self.len();
        let mut values = vec![0.0; n];
        let mut missing = vec![true; n];
        for i in (window - 1)..n {
            let w = &self.values[i + 1 - window..=i];
            let wm = &self.missing[i + 1 - window..=i];
            if wm.iter().any(|&m| m) {
                continue;
            }
            values[i] = w.iter().sum::<f64>() / window as f64;
            missing[i] = false;
        }
        TimeSeries::new(
            format!("{}_ma{}", self.name, window),
            self.start,
            values,
            missing,
        )
    }

    /// Percent change over `periods`, optionally annualized by compounding:
    /// 100 * ((s[i]/s[i-p])^(ppy/p) - 1) when annualized, else the plain ratio.
    pub fn pct_change(&self, periods: usize, annualize: bool) -> Result<TimeSeries> {
        if periods == 0 {
            return Err(Error::InvalidArgument(
                "pct_change periods must be positive".into(),
            ));
        }
        if self.len() <= periods {
            return Err(Error::SeriesTooShort {
                name: self.name.clone(),
                needed: periods + 1,
                have: self.len(),
            });
        }
        let n = self.len();
        let power = self.freq().periods_per_year() as f64 / periods as f64;
        let mut values = vec![0.0; n];
        let mut missing = vec![true; n];
        for i in periods..n {
            if self.missing[i] || self.missing[i - periods] {
                continue;
            }
            let prev = self.values[i - periods];
            if prev == 0.0 {
                return Err(Error::ZeroDenominator(i - periods));
            }
            let ratio = self.values[i] / prev;
            values[i] = if annualize {
                100.0 * (ratio.powf(power) - 1.0)
            } else {
                100.0 * (ratio - 1.0)
            };
            missing[i] = false;
        }
        TimeSeries::new(
            format!("{}_pct{}", self.name, periods),
            self.start,
            values,
            missing,
        )
    }

    /// Convert a monthly series to quarterly. `Mean` averages the months in a
    /// quarter (the convention used for rates), `Last` takes the final month.
    /// Quarters with any missing month are missing; partial edge quarters are
    /// dropped.
    pub fn to_quarterly(&self, how: QuarterlyAgg) -> Result<TimeSeries> {
        if self.freq() != Freq::Monthly {
            return Err(Error::MixedFrequencies(format!(
                "series '{}' is already quarterly",
                self.name
            )));
        }
        // advance to the first full quarter
        let lead = (3 - (self.start.sub - 1) % 3) % 3;
        let mut values = Vec::new();
        let mut missing = Vec::new();
        let mut i = lead as usize;
        while i + 3 <= self.len() {
            let months = &self.values[i..i + 3];
            let mask = &self.missing[i..i + 3];
            if mask.iter().any(|&m| m) {
                values.push(f64::NAN);
                missing.push(true);
            } else {
                values.push(match how {
                    QuarterlyAgg::Mean => months.iter().sum::<f64>() / 3.0,
                    QuarterlyAgg::Last => months[2],
                });
                missing.push(false);
            }
            i += 3;
        }
        if values.is_empty() {
            return Err(Error::SeriesTooShort {
                name: self.name.clone(),
                needed: 3,
                have: self.len(),
            });
        }
        let start = self.start.offset(lead as i64).to_quarter();
        TimeSeries::new(
            self.name.clone(),
            start,
            values.into_iter().map(clean_nan).collect(),
            missing,
        )
    }
}

fn clean_nan(v: f64) -> f64 {
    if v.is_nan() {
        0.0
    } else {
        v
    }
}

/// Monthly-to-quarterly aggregation rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuarterlyAgg {
    Mean,
    Last,
}

/// Named columns over a shared period range, all the same frequency.
#[derive(Debug, Clone)]
pub struct Panel {
    pub start: Period,
    columns: Vec<TimeSeries>,
}

impl Panel {
    pub fn columns(&self) -> &[TimeSeries] {
        &self.columns
    }

    pub fn n_rows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn freq(&self) -> Freq {
        self.start.freq
    }

    pub fn column(&self, name: &str) -> Result<&TimeSeries> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }

    pub fn period(&self, i: usize) -> Period {
        self.start.offset(i as i64)
    }

    /// Rows where every column is observed. These are the rows regressions
    /// and tests use; rows with any missing cell are dropped listwise.
    pub fn complete_rows(&self) -> Vec<usize> {
        (0..self.n_rows())
            .filter(|&i| self.columns.iter().all(|c| !c.missing()[i]))
            .collect()
    }

    /// Matrix of complete rows, one inner vector per column.
    pub fn complete_data(&self) -> Vec<Vec<f64>> {
        let rows = self.complete_rows();
        self.columns
            .iter()
            .map(|c| rows.iter().map(|&i| c.values()[i]).collect())
            .collect()
    }
}

/// Align series onto the intersection of their date ranges.
pub fn align(series: &[TimeSeries]) -> Result<Panel> {
    if series.is_empty() {
        return Err(Error::InvalidArgument("align needs at least one series".into()));
    }
    let freq = series[0].freq();
    for s in series {
        if s.freq() != freq {
            return Err(Error::MixedFrequencies(format!(
                "'{}' is {} but '{}' is {}",
                series[0].name,
                freq,
                s.name,
                s.freq()
            )));
        }
    }
    let lo = series.iter().map(|s| s.start.index()).max().unwrap();
    let hi = series.iter().map(|s| s.end().index()).min().unwrap();
    if lo > hi {
        return Err(Error::EmptyIntersection);
    }
    let columns = series
        .iter()
        .map(|s| {
            let a = (lo - s.start.index()) as usize;
            let b = (hi - s.start.index()) as usize;
            TimeSeries::new(
                s.name.clone(),
                s.period(a),
                s.values()[a..=b].to_vec(),
                s.missing()[a..=b].to_vec(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Panel {
        start: columns[0].start,
        columns,
    })
}

/// Load every numeric column of a CSV as a `TimeSeries`.
///
/// The file must have a header row; `date_column` holds "YYYY-MM" or
/// "YYYYQn" dates (ISO "YYYY-MM-DD" also parses). Empty cells are missing.
/// Rows may arrive unsorted; gaps in the date index become missing entries.
pub fn load_csv(path: impl AsRef<Path>, date_column: &str, freq: Freq) -> Result<Vec<TimeSeries>> {
    let mut reader = csv::Reader::from_path(path.as_ref())?;
    let headers: Vec<String> = reader.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let date_idx = headers
        .iter()
        .position(|h| h == date_column)
        .ok_or_else(|| Error::MissingColumn(date_column.to_string()))?;
    if headers.len() < 2 {
        return Err(Error::NoNumericColumn);
    }

    // collect rows keyed by period index; BTreeMap both sorts and exposes duplicates
    let mut rows: BTreeMap<i64, Vec<Option<f64>>> = BTreeMap::new();
    let mut first: Option<Period> = None;
    for record in reader.records() {
        let record = record?;
        let period = Period::parse(record.get(date_idx).unwrap_or(""))?;
        if period.freq != freq {
            return Err(Error::MixedFrequencies(format!(
                "date '{period}' does not match requested {freq} frequency"
            )));
        }
        let mut cells = Vec::with_capacity(headers.len() - 1);
        for (j, cell) in record.iter().enumerate() {
            if j == date_idx {
                continue;
            }
            let cell = cell.trim();
            if cell.is_empty() {
                cells.push(None);
            } else {
                let v: f64 = cell.parse().map_err(|_| Error::BadCell {
                    column: headers[j].clone(),
                    value: cell.to_string(),
                })?;
                cells.push(Some(v));
            }
        }
        if rows.insert(period.index(), cells).is_some() {
            return Err(Error::DuplicateDate(period.to_string()));
        }
        if first.map_or(true, |f| period.index() < f.index()) {
            first = Some(period);
        }
    }
    let start = first.ok_or(Error::NoNumericColumn)?;
    let lo = *rows.keys().next().unwrap();
    let hi = *rows.keys().last().unwrap();
    let n = (hi - lo + 1) as usize;

    let names: Vec<&String> = headers
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != date_idx)
        .map(|(_, h)| h)
        .collect();
    let mut out = Vec::with_capacity(names.len());
    for (c, name) in names.iter().enumerate() {
        let mut values = vec![0.0; n];
        let mut missing = vec![true; n];
        for (&idx, cells) in &rows {
            if let Some(v) = cells[c] {
                values[(idx - lo) as usize] = v;
                missing[(idx - lo) as usize] = false;
            }
        }
        out.push(TimeSeries::new(name.as_str(), start, values, missing)?);
    }
    if out.is_empty() {
        return Err(Error::NoNumericColumn);
    }
    Ok(out)
}

/// Write series (already aligned) to CSV in the same format `load_csv` reads.
/// Floats use the shortest round-trip representation, so a reload reproduces
/// the exact values.
pub fn write_csv(path: impl AsRef<Path>, date_column: &str, series: &[TimeSeries]) -> Result<()> {
    let panel = align(series)?;
    let mut out = String::new();
    out.push_str(date_column);
    for c in panel.columns() {
        out.push(',');
        out.push_str(&c.name);
    }
    out.push('\n');
    for i in 0..panel.n_rows() {
        out.push_str(&panel.period(i).to_string());
        for c in panel.columns() {
            out.push(',');
            if let Some(v) = c.get(i) {
                out.push_str(&format!("{v}"));
            }
        }
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jan1990() -> Period {
        Period::new(1990, 1, Freq::Monthly).unwrap()
    }

    #[test]
    fn period_parse_and_display() {
        let m = Period::parse("1990-01").unwrap();
        assert_eq!(m, jan1990());
        assert_eq!(m.to_string(), "1990-01");
        let q = Period::parse("2012Q3").unwrap();
        assert_eq!(q.year, 2012);
        assert_eq!(q.sub, 3);
        assert_eq!(q.to_string(), "2012Q3");
        let iso = Period::parse("1990-02-01").unwrap();
        assert_eq!(iso.sub, 2);
        assert!(Period::parse("1990-13").is_err());
        assert!(Period::parse("2012Q5").is_err());
        assert!(Period::parse("nonsense").is_err());
    }

    #[test]
    fn period_offset_wraps_years() {
        let p = Period::new(1990, 11, Freq::Monthly).unwrap();
        let q = p.offset(3);
        assert_eq!((q.year, q.sub), (1991, 2));
        let r = q.offset(-3);
        assert_eq!(r, p);
    }

    #[test]
    fn load_csv_three_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        std::fs::write(&path, "date,unrate\n1990-01,5.4\n1990-02,5.3\n1990-03,5.2\n").unwrap();
        let series = load_csv(&path, "date", Freq::Monthly).unwrap();
        assert_eq!(series.len(), 1);
        assert_eq!(series[0].len(), 3);
        assert_eq!(series[0].freq(), Freq::Monthly);
        assert_eq!(series[0].values(), &[5.4, 5.3, 5.2]);
    }

    #[test]
    fn load_csv_gap_becomes_missing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        std::fs::write(&path, "date,unrate\n1990-01,5.4\n1990-03,5.2\n").unwrap();
        let series = load_csv(&path, "date", Freq::Monthly).unwrap();
        assert_eq!(series[0].len(), 3);
        assert!(series[0].missing()[1]);
        assert!(!series[0].missing()[0]);
    }

    #[test]
    fn load_csv_duplicate_date_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        std::fs::write(&path, "date,unrate\n1990-01,5.4\n1990-01,5.5\n").unwrap();
        assert!(matches!(
            load_csv(&path, "date", Freq::Monthly),
            Err(Error::DuplicateDate(_))
        ));
    }

    #[test]
    fn load_csv_empty_cell_is_missing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        std::fs::write(&path, "date,a,b\n1990-01,1.0,\n1990-02,2.0,3.0\n").unwrap();
        let series = load_csv(&path, "date", Freq::Monthly).unwrap();
        assert_eq!(series.len(), 2);
        assert!(series[1].missing()[0]);
        assert_eq!(series[1].get(1), Some(3.0));
    }

    #[test]
    fn diff_basic() {
        let s = TimeSeries::dense("s", jan1990(), vec![1.0, 3.0, 6.0]).unwrap();
        let d = s.diff(1).unwrap();
        assert_eq!(d.values(), &[2.0, 3.0]);
        assert_eq!(d.name, "s_diff");
        assert_eq!(d.start, jan1990().offset(1));
    }

    #[test]
    fn diff_constant_is_zero() {
        let s = TimeSeries::dense("c", jan1990(), vec![7.0; 5]).unwrap();
        let d = s.diff(1).unwrap();
        assert!(d.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn diff_too_short_errors() {
        let s = TimeSeries::dense("s", jan1990(), vec![5.0]).unwrap();
        assert!(matches!(s.diff(1), Err(Error::SeriesTooShort { .. })));
    }

    #[test]
    fn moving_average_basic() {
        let s = TimeSeries::dense("s", jan1990(), vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let m = s.moving_average(2).unwrap();
        assert!(m.missing()[0]);
        assert_eq!(m.get(1), Some(1.5));
        assert_eq!(m.get(2), Some(2.5));
        assert_eq!(m.get(3), Some(3.5));
    }

    #[test]
    fn moving_average_full_window_is_mean() {
        let s = TimeSeries::dense("s", jan1990(), vec![2.0, 4.0, 6.0]).unwrap();
        let m = s.moving_average(3).unwrap();
        assert!(m.missing()[0] && m.missing()[1]);
        assert_eq!(m.get(2), Some(4.0));
    }

    #[test]
    fn moving_average_zero_window_errors() {
        let s = TimeSeries::dense("s", jan1990(), vec![1.0, 2.0]).unwrap();
        assert!(s.moving_average(0).is_err());
    }

    #[test]
    fn pct_change_annualized_quarterly() {
        let q1 = Period::new(1990, 1, Freq::Quarterly).unwrap();
        let s = TimeSeries::dense("p", q1, vec![100.0, 101.0]).unwrap();
        let g = s.pct_change(1, true).unwrap();
        assert!(g.missing()[0]);
        // (1.01)^4 - 1 = 4.060401%
        assert!((g.get(1).unwrap() - 4.060401).abs() < 1e-4);
    }

    #[test]
    fn pct_change_flat_is_zero() {
        let s = TimeSeries::dense("p", jan1990(), vec![100.0, 100.0]).unwrap();
        let g = s.pct_change(1, false).unwrap();
        assert_eq!(g.get(1), Some(0.0));
    }

    #[test]
    fn pct_change_zero_denominator_errors() {
        let s = TimeSeries::dense("p", jan1990(), vec![0.0, 5.0]).unwrap();
        assert!(matches!(s.pct_change(1, true), Err(Error::ZeroDenominator(0))));
    }

    #[test]
    fn align_full_overlap() {
        let a = TimeSeries::dense("a", jan1990(), vec![1.0; 270]).unwrap();
        let b = TimeSeries::dense("b", jan1990(), vec![2.0; 270]).unwrap();
        let p = align(&[a, b]).unwrap();
        assert_eq!(p.n_rows(), 270);
        assert_eq!(p.n_cols(), 2);
    }

    #[test]
    fn align_disjoint_errors() {
        let a = TimeSeries::dense("a", jan1990(), vec![1.0; 12]).unwrap();
        let b = TimeSeries::dense("b", Period::new(2000, 1, Freq::Monthly).unwrap(), vec![2.0; 12])
            .unwrap();
        assert!(matches!(align(&[a, b]), Err(Error::EmptyIntersection)));
    }

    #[test]
    fn align_same_series_twice() {
        let a = TimeSeries::dense("a", jan1990(), vec![1.0, 2.0]).unwrap();
        let p = align(&[a.clone(), a.with_name("a2")]).unwrap();
        assert_eq!(p.n_cols(), 2);
        assert_eq!(p.n_rows(), 2);
    }

    #[test]
    fn align_mixed_freq_errors() {
        let a = TimeSeries::dense("a", jan1990(), vec![1.0, 2.0]).unwrap();
        let q = TimeSeries::dense("q", Period::new(1990, 1, Freq::Quarterly).unwrap(), vec![1.0, 2.0])
            .unwrap();
        assert!(matches!(align(&[a, q]), Err(Error::MixedFrequencies(_))));
    }

    #[test]
    fn to_quarterly_mean_and_last() {
        let s = TimeSeries::dense(
            "u",
            jan1990(),
            vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
        )
        .unwrap();
        let qm = s.to_quarterly(QuarterlyAgg::Mean).unwrap();
        assert_eq!(qm.values(), &[2.0, 5.0]);
        assert_eq!(qm.freq(), Freq::Quarterly);
        let ql = s.to_quarterly(QuarterlyAgg::Last).unwrap();
        assert_eq!(ql.values(), &[3.0, 6.0]);
    }

    #[test]
    fn to_quarterly_skips_partial_leading_quarter() {
        let feb = Period::new(1990, 2, Freq::Monthly).unwrap();
        let s = TimeSeries::dense("u", feb, vec![9.0, 9.0, 1.0, 2.0, 3.0]).unwrap();
        let q = s.to_quarterly(QuarterlyAgg::Mean).unwrap();
        assert_eq!(q.values(), &[2.0]);
        assert_eq!(q.start, Period::new(1990, 2, Freq::Quarterly).unwrap());
    }

    #[test]
    fn csv_round_trip_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rt.csv");
        let s = TimeSeries::dense(
            "x",
            jan1990(),
            vec![1.234567890123456, -0.000012345, 1e10, 0.1 + 0.2],
        )
        .unwrap();
        write_csv(&path, "date", &[s.clone()]).unwrap();
        let back = load_csv(&path, "date", Freq::Monthly).unwrap();
        assert_eq!(back[0].values(), s.values());
    }
}
