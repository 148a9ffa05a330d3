//! Run configuration shared by every subcommand.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use h3_core::discrete::Spacings;
use h3_core::scalar::{format_rational, parse_rational, rat, Rational};
use serde::{Serialize, Serializer};

use crate::CliError;

/// A physical parameter: an exact rational or the formal symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Value(Rational),
    Formal,
}

impl Param {
    /// The value, or `fallback` for a formal parameter.
    pub fn value_or(&self, fallback: &Rational) -> Rational {
        match self {
            Param::Value(r) => r.clone(),
            Param::Formal => fallback.clone(),
        }
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, Param::Formal)
    }
}

impl FromStr for Param {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s.trim() == "formal" {
            return Ok(Param::Formal);
        }
        parse_rational(s)
            .map(Param::Value)
            .map_err(|e| CliError::Config(e.to_string()))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(r) => write!(f, "{}", format_rational(r)),
            Param::Formal => write!(f, "formal"),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `a,b,c` into positive rational spacings.
pub fn parse_spacings(s: &str) -> Result<Spacings, CliError> {
    let parts: Vec<Rational> = s
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let arr: [Rational; 3] = parts
        .try_into()
        .map_err(|_| CliError::Config(format!("expected three spacings, got {s:?}")))?;
    Spacings::new(arr).map_err(|e| CliError::Config(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Group,
    Invariants,
    Gauge,
    Diffop,
    Integral,
    Discrete,
    Qes,
    Hiddenalg,
}

impl Suite {
    /// Dependency order.
    pub const ALL: [Suite; 8] = [
        Suite::Group,
        Suite::Invariants,
        Suite::Gauge,
        Suite::Diffop,
        Suite::Integral,
        Suite::Discrete,
        Suite::Qes,
        Suite::Hiddenalg,
    ];
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <Suite as clap::ValueEnum>::from_str(s, true).map_err(|_| CliError::Config(format!("unknown suite {s:?}")))
    }
}

/// Parameters of the one-variable QES block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QesConfig {
    #[serde(serialize_with = "h3_core::scalar::ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "h3_core::scalar::ser_rational")]
    pub gamma_q: Rational,
    pub k: u32,
}

impl Default for QesConfig {
    fn default() -> Self {
        Self {
            a: rat(1, 2),
            gamma_q: rat(1, 4),
            k: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub nu: Param,
    pub omega: Param,
    pub delta: Spacings,
    pub n: u32,
    pub suites: Vec<Suite>,
    pub qes: QesConfig,
    #[serde(skip)]
    pub report: Option<PathBuf>,
    /// Record wall-clock time per check. Off by default so reports are
    /// reproducible byte for byte.
    #[serde(skip)]
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            nu: Param::Value(rat(1, 3)),
            omega: Param::Value(rat(1, 1)),
            delta: Spacings::unit(),
            n: 6,
            suites: Suite::ALL.to_vec(),
            qes: QesConfig::default(),
            report: None,
            timings: false,
        }
    }
}

impl RunConfig {
    /// `(ν, ω)` for checks that need numbers; formal parameters fall back
    /// to the defaults.
    pub fn numeric(&self) -> (Rational, Rational) {
        (self.nu.value_or(&rat(1, 3)), self.omega.value_or(&rat(1, 1)))
    }

    pub fn is_formal(&self) -> bool {
        self.nu.is_formal() || self.omega.is_formal()
    }

    /// Rejects configurations no check can run with.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.suites.is_empty() {
            return Err(CliError::Config("no suite selected".into()));
        }
        if let Param::Value(w) = &self.omega {
            if *w <= rat(0, 1) {
                return Err(CliError::Config("omega must be positive".into()));
            }
        }
        if self.n > 12 {
            return Err(CliError::Config(format!("n = {} is above the supported maximum 12", self.n)));
        }
        if self.qes.a < rat(0, 1) {
            return Err(CliError::Config("QES parameter a must be non-negative".into()));
        }
        Ok(())
    }
}
