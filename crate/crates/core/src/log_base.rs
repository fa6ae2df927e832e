use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Unit for logarithmic quantities: nats (`E`) or bits (`Two`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LogBase {
    #[default]
    E,
    Two,
}

impl LogBase {
    /// Converts a value measured in nats into this base.
    #[inline]
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats / LN_2,
        }
    }

    #[inline]
    pub fn log(self, x: f64) -> f64 {
        self.from_nats(x.ln())
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::E => "e",
            LogBase::Two => "2",
        })
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "e" => Ok(LogBase::E),
            "2" => Ok(LogBase::Two),
            other => Err(Error::invalid(format!(
                "unknown log base {other:?} (expected e or 2)"
            ))),
        }
    }
}
