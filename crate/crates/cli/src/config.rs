use std::path::PathBuf;

use halphen_core::{Error, Precision, Result};

pub const MIN_GRID_SIZE: usize = 257;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub precision_bits: u32,
    /// Sample count for the rational solvers.
    pub grid_size: usize,
    /// Solver tolerance; `None` keeps each experiment's default.
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub plot: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            precision_bits: 53,
            grid_size: 4096,
            tol: None,
            out: None,
            format: Format::Csv,
            plot: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        Precision::from_bits(self.precision_bits)?;
        if self.grid_size < MIN_GRID_SIZE {
            return Err(Error::InvalidInput(format!(
                "grid size must be at least {MIN_GRID_SIZE}, got {}",
                self.grid_size
            )));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::InvalidInput(format!("tolerance must lie in (0, 1), got {t}")));
            }
        }
        Ok(())
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.precision_bits).unwrap_or(Precision::Double)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let c = RunConfig { grid_size: 100, ..Default::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { precision_bits: 24, ..Default::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { precision_bits: 128, ..Default::default() };
        assert_eq!(c.precision(), Precision::DoubleDouble);
    }
}
