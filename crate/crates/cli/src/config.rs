//! The resolved run configuration. Every report embeds it verbatim, and
//! `--config` reads the same JSON back.

use std::path::{Path, PathBuf};

use aplab_core::cutproject::SchemeFamily;
use serde::{Deserialize, Serialize};

/// Default tolerance for float comparisons in checks that accept one.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default cap on BFS states and enumerated tuples.
pub const DEFAULT_BUDGET: usize = 4_000_000;
/// Default margin for the fitted tail ratio of the affine walk.
pub const DEFAULT_RATIO_MARGIN: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: f64,
    pub budget: usize,
    /// Main artifact (CSV for `generate`, JSON report otherwise); stdout if absent.
    pub out: Option<PathBuf>,
    /// Plot-ready CSV export, for subcommands that have one.
    pub csv: Option<PathBuf>,
    pub task: Task,
}

/// Where a point set comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Source {
    ModelSet {
        family: SchemeFamily,
        d: u32,
        window: Vec<(f64, f64)>,
        radius: f64,
    },
    Lattice {
        dim: usize,
        step: i64,
        radius: f64,
    },
    Fish {
        blocks: usize,
    },
    Visible {
        n: i64,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Ag3,
    Delone,
    Chain,
    Generating,
    RelDense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QiMode {
    Rho,
    Defect,
    Folner,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", rename_all_fields = "camelCase")]
pub enum CartanSource {
    /// `a(t) = diag(e^{t/2}, e^{−t/2})` for `t = i·t_max/steps`.
    Grid { t_max: f64, steps: usize },
    /// The ball of the given word radius in `SL2(Z)`.
    WordBall { radius: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "subcommand",
    rename_all = "kebab-case",
    rename_all_fields = "camelCase",
    deny_unknown_fields
)]
pub enum Task {
    Generate {
        source: Source,
    },
    Verify {
        source: Source,
        check: Check,
        /// AG3 covering parameter `R`.
        r: f64,
        /// AG3 slack; `R` when absent.
        slack: Option<f64>,
        /// Patch radius for the chain.
        rho: f64,
        /// Ball radius `K` for the chain and generator radius for `generating`.
        kradius: f64,
        /// Test radius for `generating`; half the core when absent.
        test_radius: Option<f64>,
        /// Subset `P0` for `rel-dense`.
        subset: Option<Source>,
    },
    Patches {
        source: Source,
        rho: f64,
    },
    HullFreq {
        source: Source,
        rho: f64,
        /// Windows `(center, radius)` for ergodic averages of a triangle bump.
        windows: Vec<(f64, f64)>,
        bump_radius: f64,
        step: f64,
    },
    Qi {
        source: Source,
        mode: QiMode,
        r: f64,
        kradius: f64,
        n_max: usize,
        k: usize,
        l: usize,
        samples: usize,
        sample_radius: f64,
        folner_radii: Vec<f64>,
    },
    Distortion {
        n_min: u32,
        n_max: u32,
        k: u32,
    },
    Cartan {
        source: CartanSource,
    },
    Walk {
        /// Atoms `(b, a, probability)`.
        support: Vec<(f64, f64, f64)>,
        trials: usize,
        horizon: usize,
        margin: f64,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Generate { .. } => "generate",
            Task::Verify { .. } => "verify",
            Task::Patches { .. } => "patches",
            Task::HullFreq { .. } => "hull-freq",
            Task::Qi { .. } => "qi",
            Task::Distortion { .. } => "distortion",
            Task::Cartan { .. } => "cartan",
            Task::Walk { .. } => "walk",
        }
    }
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
