//! Geometry configuration file: flat JSON, rationals as `"p/q"` strings.

use altspec_core::bimod::SectorSpec;
use altspec_core::exactlin::{DenseMatrix, ExactScalar};
use serde::Deserialize;

/// Parsed geometry configuration.
#[derive(Debug, Clone)]
pub struct GeometryConfig {
    pub n: usize,
    pub sectors: SectorSpec,
    /// Dirac coefficient table `M_{IJ}` (two-point geometries only).
    pub dirac: Option<DenseMatrix>,
    pub eps: i8,
    pub s: ExactScalar,
}

#[derive(Deserialize)]
struct RawConfig {
    n: usize,
    #[serde(default)]
    sectors: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    dirac: Option<Vec<Vec<String>>>,
    eps: i64,
    #[serde(rename = "S")]
    s: String,
}

/// Configuration errors carry enough context to locate the bad field.
#[derive(Debug)]
pub enum ConfigError {
    Io(std::io::Error),
    /// JSON syntax/shape error with serde's line and column.
    Json(serde_json::Error),
    Field { field: &'static str, message: String },
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Io(e) => write!(f, "cannot read config: {e}"),
            ConfigError::Json(e) => write!(
                f,
                "config parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ),
            ConfigError::Field { field, message } => {
                write!(f, "config field `{field}`: {message}")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

impl GeometryConfig {
    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(ConfigError::Io)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(ConfigError::Json)?;
        if raw.n == 0 {
            return Err(ConfigError::Field {
                field: "n",
                message: "factor count must be at least 1".into(),
            });
        }
        let eps = match raw.eps {
            1 => 1i8,
            -1 => -1i8,
            other => {
                return Err(ConfigError::Field {
                    field: "eps",
                    message: format!("must be 1 or -1, found {other}"),
                })
            }
        };
        let s: ExactScalar = raw.s.parse().map_err(|_| ConfigError::Field {
            field: "S",
            message: format!("not a rational literal: {:?}", raw.s),
        })?;
        let sectors = match raw.sectors {
            None => SectorSpec::full(raw.n),
            Some(list) => {
                for &[i, j] in &list {
                    if i >= raw.n || j >= raw.n {
                        return Err(ConfigError::Field {
                            field: "sectors",
                            message: format!("sector ({i}, {j}) out of range for n = {}", raw.n),
                        });
                    }
                }
                SectorSpec::custom(raw.n, list.into_iter().map(|[i, j]| (i, j)).collect())
            }
        };
        let dirac = match raw.dirac {
            None => None,
            Some(rows) => {
                if rows.len() != 8 || rows.iter().any(|r| r.len() != 8) {
                    return Err(ConfigError::Field {
                        field: "dirac",
                        message: "must be an 8x8 array of rational strings".into(),
                    });
                }
                let mut m = DenseMatrix::zeros(8, 8);
                for (i, row) in rows.iter().enumerate() {
                    for (j, cell) in row.iter().enumerate() {
                        let v: ExactScalar = cell.parse().map_err(|_| ConfigError::Field {
                            field: "dirac",
                            message: format!("entry ({i}, {j}) is not a rational: {cell:?}"),
                        })?;
                        m.set(i, j, v);
                    }
                }
                Some(m)
            }
        };
        Ok(GeometryConfig {
            n: raw.n,
            sectors,
            dirac,
            eps,
            s,
        })
    }
}
