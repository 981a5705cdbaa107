use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by all subcommands. Unset fields fall back to per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub d: Option<i64>,
    pub g: Option<usize>,
    pub g_min: Option<usize>,
    pub g_max: Option<usize>,
    pub maxdeg: Option<i64>,
    pub maxlen: Option<usize>,
    pub pages: Option<usize>,
    pub i: Option<usize>,
    pub ell: Option<usize>,
    pub jobs: Option<usize>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub table: Option<PathBuf>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(|_| CliError::Config(format!("{key}: cannot parse {value:?}")))
}

impl RunConfig {
    /// Parse `key = value` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut c = RunConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Config(format!("line {}: expected key = value", n + 1)));
            };
            let (k, v) = (k.trim().replace('_', "-"), v.trim());
            match k.as_str() {
                "d" => c.d = Some(parse(&k, v)?),
                "g" => c.g = Some(parse(&k, v)?),
                "g-min" => c.g_min = Some(parse(&k, v)?),
                "g-max" => c.g_max = Some(parse(&k, v)?),
                "maxdeg" => c.maxdeg = Some(parse(&k, v)?),
                "maxlen" => c.maxlen = Some(parse(&k, v)?),
                "pages" => c.pages = Some(parse(&k, v)?),
                "i" => c.i = Some(parse(&k, v)?),
                "ell" => c.ell = Some(parse(&k, v)?),
                "jobs" => c.jobs = Some(parse(&k, v)?),
                "seed" => c.seed = Some(parse(&k, v)?),
                "table" => c.table = Some(PathBuf::from(v)),
                "format" => c.format = Some(parse_format(v)?),
                _ => return Err(CliError::Config(format!("line {}: unknown key {k:?}", n + 1))),
            }
        }
        Ok(c)
    }

    /// Fields set in `over` win.
    pub fn merged(self, over: RunConfig) -> RunConfig {
        RunConfig {
            d: over.d.or(self.d),
            g: over.g.or(self.g),
            g_min: over.g_min.or(self.g_min),
            g_max: over.g_max.or(self.g_max),
            maxdeg: over.maxdeg.or(self.maxdeg),
            maxlen: over.maxlen.or(self.maxlen),
            pages: over.pages.or(self.pages),
            i: over.i.or(self.i),
            ell: over.ell.or(self.ell),
            jobs: over.jobs.or(self.jobs),
            format: over.format.or(self.format),
            seed: over.seed.or(self.seed),
            table: over.table.or(self.table),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(d) = self.d {
            if d < 3 {
                return Err(CliError::Config(format!("d = {d} must be at least 3")));
            }
        }
        let positive = [
            ("g", self.g),
            ("g-min", self.g_min),
            ("g-max", self.g_max),
            ("maxlen", self.maxlen),
            ("pages", self.pages),
            ("i", self.i),
            ("jobs", self.jobs),
        ];
        for (k, v) in positive {
            if v == Some(0) {
                return Err(CliError::Config(format!("{k} must be positive")));
            }
        }
        if matches!(self.maxdeg, Some(m) if m <= 0) {
            return Err(CliError::Config("maxdeg must be positive".into()));
        }
        if let (Some(a), Some(b)) = (self.g_min, self.g_max) {
            if a > b {
                return Err(CliError::Config(format!("g-min = {a} exceeds g-max = {b}")));
            }
        }
        Ok(())
    }

    pub fn d(&self) -> i64 {
        self.d.unwrap_or(3)
    }

    pub fn g(&self) -> usize {
        self.g.unwrap_or(2)
    }

    pub fn jobs(&self) -> usize {
        self.jobs.unwrap_or(1)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// The resolved settings as strings, for table metadata.
    pub fn describe(&self) -> BTreeMap<String, String> {
        let v = serde_json::to_value(self).expect("serializable");
        v.as_object()
            .expect("struct")
            .iter()
            .filter(|(_, x)| !x.is_null())
            .map(|(k, x)| (k.replace('_', "-"), x.as_str().map_or_else(|| x.to_string(), str::to_string)))
            .collect()
    }
}

pub fn parse_format(v: &str) -> Result<Format, CliError> {
    match v {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(CliError::Config(format!("format must be csv or json, got {v:?}"))),
    }
}
