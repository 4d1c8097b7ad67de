//! `--map` arguments and sampled-map files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use dext_core::{CircleMap, MobiusIsometry, SampledMonotone};

#[derive(Debug, thiserror::Error)]
pub enum MapSpecError {
    #[error("empty map spec; expected identity | mobius <α> <c_re> <c_im> | pinch <eps> | spline <path>")]
    Empty,
    #[error("unknown map kind {0:?}; expected identity, mobius, pinch or spline")]
    UnknownKind(String),
    #[error("map {kind} takes {expected} argument(s), got {got}")]
    Arity { kind: &'static str, expected: usize, got: usize },
    #[error("cannot parse {0:?} as a number")]
    Number(String),
    #[error("{path}:{line}: {msg}")]
    SplineFile { path: PathBuf, line: usize, msg: String },
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] dext_core::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    Identity,
    Mobius { alpha: f64, c_re: f64, c_im: f64 },
    Pinch { epsilon: f64 },
    Spline { path: PathBuf },
}

impl MapSpec {
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<Self, MapSpecError> {
        let (kind, args) = tokens.split_first().ok_or(MapSpecError::Empty)?;
        let args: Vec<&str> = args.iter().map(AsRef::as_ref).collect();
        let arity = |kind: &'static str, expected: usize| {
            if args.len() == expected {
                Ok(())
            } else {
                Err(MapSpecError::Arity { kind, expected, got: args.len() })
            }
        };
        match kind.as_ref().to_ascii_lowercase().as_str() {
            "identity" => {
                arity("identity", 0)?;
                Ok(MapSpec::Identity)
            }
            "mobius" | "möbius" => {
                arity("mobius", 3)?;
                Ok(MapSpec::Mobius { alpha: number(args[0])?, c_re: number(args[1])?, c_im: number(args[2])? })
            }
            "pinch" => {
                arity("pinch", 1)?;
                Ok(MapSpec::Pinch { epsilon: number(args[0])? })
            }
            "spline" => {
                arity("spline", 1)?;
                Ok(MapSpec::Spline { path: PathBuf::from(args[0]) })
            }
            other => Err(MapSpecError::UnknownKind(other.to_string())),
        }
    }

    pub fn build(&self) -> Result<CircleMap, MapSpecError> {
        Ok(match self {
            MapSpec::Identity => CircleMap::Identity,
            MapSpec::Mobius { alpha, c_re, c_im } => {
                CircleMap::mobius(MobiusIsometry::new(*alpha, *c_re, *c_im, false)?)?
            }
            MapSpec::Pinch { epsilon } => CircleMap::pinch(*epsilon)?,
            MapSpec::Spline { path } => CircleMap::Sampled(read_samples(path)?),
        })
    }

    /// The isometry behind a Möbius spec.
    pub fn isometry(&self) -> Option<MobiusIsometry> {
        match self {
            MapSpec::Mobius { alpha, c_re, c_im } => MobiusIsometry::new(*alpha, *c_re, *c_im, false).ok(),
            _ => None,
        }
    }

    pub fn is_pinch(&self) -> bool {
        matches!(self, MapSpec::Pinch { .. })
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Identity => write!(f, "identity"),
            MapSpec::Mobius { alpha, c_re, c_im } => write!(f, "mobius {alpha} {c_re} {c_im}"),
            MapSpec::Pinch { epsilon } => write!(f, "pinch {epsilon}"),
            MapSpec::Spline { path } => write!(f, "spline {}", path.display()),
        }
    }
}

fn number(s: &str) -> Result<f64, MapSpecError> {
    s.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| MapSpecError::Number(s.to_string()))
}

/// Reads `theta phi` pairs, one per line, separated by whitespace or a comma.
/// Blank lines and lines starting with `#` are skipped.
pub fn read_samples(path: &Path) -> Result<SampledMonotone, MapSpecError> {
    let text = fs::read_to_string(path).map_err(|source| MapSpecError::Io { path: path.to_path_buf(), source })?;
    parse_samples(&text).map_err(|(line, msg)| MapSpecError::SplineFile { path: path.to_path_buf(), line, msg })
}

pub fn parse_samples(text: &str) -> Result<SampledMonotone, (usize, String)> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        if fields.len() != 2 {
            return Err((i + 1, format!("expected two numbers, found {:?}", line)));
        }
        let t = number(fields[0]).map_err(|e| (i + 1, e.to_string()))?;
        let p = number(fields[1]).map_err(|e| (i + 1, e.to_string()))?;
        pairs.push((t, p));
    }
    SampledMonotone::new(&pairs).map_err(|e| (0, e.to_string()))
}
