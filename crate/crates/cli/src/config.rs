//! Run configuration: command-line flags layered over an optional TOML file.

use std::fmt;
use std::path::{Path, PathBuf};

use lcmlab_core::aggregate::BoundRule;
use lcmlab_core::IntPoly;
use serde::{Deserialize, Serialize};

/// A configuration problem; the process exits with status 1.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

pub type ConfigResult<T> = Result<T, ConfigError>;

fn fail<T>(msg: impl Into<String>) -> ConfigResult<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(u64),
    Text(String),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Schedule {
    List(Vec<u64>),
    Single(u64),
    Text(String),
}

/// Keys accepted in a `--config` file; every one is optional and flags win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub poly: Option<String>,
    pub n: Option<Schedule>,
    pub bound: Option<Scalar>,
    pub seed: Option<u64>,
    pub workers: Option<Scalar>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub checks: Option<Schedule>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

pub fn load_file(path: &Path) -> ConfigResult<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| {
        let msg = e.message().to_string();
        match e.span() {
            Some(span) => {
                let (line, col) = line_col(&text, span.start);
                ConfigError(format!(
                    "config {} line {line}, column {col}: {msg}",
                    path.display()
                ))
            }
            None => ConfigError(format!("config {}: {msg}", path.display())),
        }
    })
}

pub fn parse_poly(text: &str) -> ConfigResult<IntPoly> {
    text.parse::<IntPoly>()
        .map_err(|e| ConfigError(format!("polynomial {text:?}: {e}")))
}

/// `"10,100,1000"` or `"geom:start:end:ratio"`, resolved to a strictly
/// increasing list.
pub fn parse_schedule(text: &str) -> ConfigResult<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() {
        return fail("empty schedule");
    }
    let values = if let Some(rest) = text.strip_prefix("geom:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [start, end, ratio] = parts[..] else {
            return fail(format!("geometric schedule {text:?} must be geom:start:end:ratio"));
        };
        let start: u64 = start.trim().parse().map_err(|_| ConfigError(format!("bad start {start:?}")))?;
        let end: u64 = end.trim().parse().map_err(|_| ConfigError(format!("bad end {end:?}")))?;
        let ratio: f64 = ratio.trim().parse().map_err(|_| ConfigError(format!("bad ratio {ratio:?}")))?;
        if start == 0 || !(ratio > 1.0) || end < start {
            return fail(format!("geometric schedule {text:?} needs 1 <= start <= end and ratio > 1"));
        }
        let mut out: Vec<u64> = Vec::new();
        let mut k = 0i32;
        loop {
            let v = (start as f64 * ratio.powi(k)).round() as u64;
            if v > end {
                break;
            }
            if out.last() != Some(&v) {
                out.push(v);
            }
            k += 1;
        }
        out
    } else {
        text.split(',')
            .map(|s| {
                let s = s.trim();
                s.parse::<u64>().map_err(|_| ConfigError(format!("bad N {s:?} in schedule")))
            })
            .collect::<ConfigResult<Vec<u64>>>()?
    };
    if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
        return fail(format!("schedule must be strictly increasing ({} then {})", w[0], w[1]));
    }
    Ok(values)
}

pub fn schedule_from(s: &Schedule) -> ConfigResult<Vec<u64>> {
    match s {
        Schedule::List(v) => {
            if v.is_empty() {
                return fail("empty schedule");
            }
            parse_schedule(&v.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        }
        Schedule::Single(v) => Ok(vec![*v]),
        Schedule::Text(t) => parse_schedule(t),
    }
}

pub fn parse_bound(text: &str) -> ConfigResult<BoundRule> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("dn") {
        return Ok(BoundRule::ZoneTimesN);
    }
    t.parse::<u64>()
        .map(BoundRule::Fixed)
        .map_err(|_| ConfigError(format!("bound must be \"DN\" or an integer, got {t:?}")))
}

/// `auto` (0, rayon's default) or a positive count.
pub fn parse_workers(text: &str) -> ConfigResult<usize> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("auto") {
        return Ok(0);
    }
    match t.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => fail(format!("workers must be \"auto\" or a positive integer, got {t:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Ndjson,
}

pub fn parse_format(text: &str) -> ConfigResult<Format> {
    match text.trim().to_ascii_lowercase().as_str() {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        "ndjson" => Ok(Format::Ndjson),
        other => fail(format!("format must be csv, json or ndjson, got {other:?}")),
    }
}

/// `bound ≥ D·N` at every scheduled `N`.
pub fn check_bound(f: &IntPoly, rule: BoundRule, schedule: &[u64]) -> ConfigResult<()> {
    let BoundRule::Fixed(b) = rule else {
        return Ok(());
    };
    let d = f.zone_constant()?;
    for &n in schedule {
        let need = d.saturating_mul(n);
        if b < need {
            return fail(format!("bound {b} is below D*N = {need} at N = {n}"));
        }
    }
    Ok(())
}

pub fn bound_label(rule: BoundRule) -> String {
    match rule {
        BoundRule::ZoneTimesN => "DN".to_string(),
        BoundRule::Fixed(b) => b.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules() {
        assert_eq!(parse_schedule("10, 100,1000").unwrap(), vec![10, 100, 1000]);
        assert_eq!(parse_schedule("geom:10:1000:10").unwrap(), vec![10, 100, 1000]);
        assert_eq!(parse_schedule("geom:1:10:1.5").unwrap(), vec![1, 2, 3, 5, 8]);
        assert!(parse_schedule("").unwrap_err().0.contains("empty schedule"));
        assert!(parse_schedule("10,5").is_err());
        assert!(parse_schedule("10,x").is_err());
        assert!(parse_schedule("geom:1:10:1").is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_bound("DN").unwrap(), BoundRule::ZoneTimesN);
        assert_eq!(parse_bound("500").unwrap(), BoundRule::Fixed(500));
        assert!(parse_bound("-3").is_err());
        assert_eq!(parse_workers("auto").unwrap(), 0);
        assert_eq!(parse_workers("8").unwrap(), 8);
        assert!(parse_workers("0").is_err());
        assert_eq!(parse_format("NDJSON").unwrap(), Format::Ndjson);
    }

    #[test]
    fn toml_errors_have_positions() {
        let dir = std::env::temp_dir().join(format!("lcmlab-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.toml");
        std::fs::write(&path, "poly = \"x^2+1\"\nseed = \"abc\"\n").unwrap();
        let err = load_file(&path).unwrap_err().0;
        assert!(err.contains("line 2"), "{err}");
        std::fs::write(&path, "poly = \"x^2+1\"\nn = [10, 100]\nbound = \"DN\"\nworkers = 4\n").unwrap();
        let cfg = load_file(&path).unwrap();
        assert_eq!(schedule_from(cfg.n.as_ref().unwrap()).unwrap(), vec![10, 100]);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn fixed_bound_must_cover_every_n() {
        let f = parse_poly("x^2 + 1").unwrap();
        assert!(check_bound(&f, BoundRule::Fixed(300), &[10, 100]).is_ok());
        assert!(check_bound(&f, BoundRule::Fixed(299), &[10, 100]).is_err());
    }
}
