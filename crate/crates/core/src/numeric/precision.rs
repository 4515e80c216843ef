use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::NumericError;

/// Smallest floating precision accepted anywhere in the crate.
pub const MIN_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArithmeticMode {
    ExactRational,
    Floating,
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArithmeticMode::ExactRational => "rational",
            ArithmeticMode::Floating => "float",
        })
    }
}

impl FromStr for ArithmeticMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" | "exact" | "exact-rational" => Ok(ArithmeticMode::ExactRational),
            "float" | "floating" => Ok(ArithmeticMode::Floating),
            other => Err(format!("unknown arithmetic mode `{other}`")),
        }
    }
}

/// Arithmetic mode plus the single working precision used by a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecisionConfig {
    bits: u32,
    mode: ArithmeticMode,
}

impl PrecisionConfig {
    pub fn new(bits: u32, mode: ArithmeticMode) -> Result<Self, NumericError> {
        if bits < MIN_BITS {
            return Err(NumericError::PrecisionTooLow(bits));
        }
        Ok(PrecisionConfig { bits, mode })
    }

    pub fn floating(bits: u32) -> Result<Self, NumericError> {
        Self::new(bits, ArithmeticMode::Floating)
    }

    pub fn exact() -> Self {
        PrecisionConfig {
            bits: MIN_BITS,
            mode: ArithmeticMode::ExactRational,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    /// Exact mode cannot evaluate exponential links.
    pub fn check_links(&self, link_count: usize) -> Result<(), NumericError> {
        if self.mode == ArithmeticMode::ExactRational && link_count > 0 {
            return Err(NumericError::ExactModeUnsupported);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_precision() {
        assert!(PrecisionConfig::floating(53).is_err());
        assert_eq!(PrecisionConfig::floating(64).unwrap().bits(), 64);
    }

    #[test]
    fn exact_mode_only_without_links() {
        let p = PrecisionConfig::exact();
        assert!(p.check_links(0).is_ok());
        assert!(matches!(
            p.check_links(2),
            Err(NumericError::ExactModeUnsupported)
        ));
        assert!(PrecisionConfig::floating(96).unwrap().check_links(2).is_ok());
    }
}
