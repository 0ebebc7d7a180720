//! Run configuration for `prandtl-modes mode`, loadable from JSON and
//! overridden field by field from the command line.

use std::f64::consts::PI;
use std::path::PathBuf;

use prandtl_modes::frames::{ModeSpec, ShearFlow};
use prandtl_modes::modes::CoefficientTriple;
use prandtl_modes::quadrature::QuadOptions;
use prandtl_modes::{c64, cis};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Named coefficient choices of the worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// `(c0, c1, c2) = (sqrt(pi/2), 2, 0)`, `phi_k(0) = -sqrt(pi/2)`
    Free,
    /// first nullspace triple of the boundary system
    NoSlip,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let q = QuadOptions::default();
        Tolerances { rel: q.rel_tol, abs: q.abs_tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub shear: ShearFlow,
    pub mode: ModeSpec,
    pub coeffs: Option<CoefficientTriple>,
    pub preset: Option<Preset>,
    pub no_slip: bool,
    pub grid: Grid,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    /// The worked-example flow `U = -y^2`, `k = 1`, `sigma = e^{-i pi/4}`.
    fn default() -> Self {
        RunConfig {
            shear: ShearFlow { alpha: 0.0, beta: -1.0, a: 0.0 },
            mode: ModeSpec { k: 1, sigma: cis(7.0 * PI / 4.0) },
            coeffs: None,
            preset: None,
            no_slip: false,
            grid: Grid { min: 0.0, max: 3.0, n: 301 },
            tolerances: Tolerances::default(),
            output_path: None,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.grid.n < 2 {
            return Err(format!("grid needs at least 2 points, got {}", self.grid.n));
        }
        if !(self.tolerances.rel > 0.0 && self.tolerances.abs > 0.0) {
            return Err("tolerances must be positive".into());
        }
        Ok(())
    }

    pub fn quadrature(&self) -> QuadOptions {
        QuadOptions { rel_tol: self.tolerances.rel, abs_tol: self.tolerances.abs, ..QuadOptions::default() }
    }

    /// Explicit coefficients of the free preset.
    pub fn free_coeffs() -> CoefficientTriple {
        CoefficientTriple::new(c64((PI / 2.0).sqrt(), 0.0), c64(2.0, 0.0), c64(0.0, 0.0))
    }
}
