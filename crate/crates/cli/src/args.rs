use std::path::PathBuf;

use aplab_core::cutproject::SchemeFamily;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{
    CartanSource, Check, QiMode, RunConfig, Source, Task, DEFAULT_BUDGET, DEFAULT_RATIO_MARGIN,
    DEFAULT_TOLERANCE,
};

#[derive(Debug, Parser)]
#[command(name = "aplab", version, about = "Approximate lattice laboratory")]
pub struct Cli {
    /// Seed for every randomized step [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Float tolerance for checks that take one [default: 1e-9]
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Cap on BFS states and enumerated tuples [default: 4000000]
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Main artifact path; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Plot-ready CSV export path
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Run from a saved configuration instead of a subcommand
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the resolved configuration here before running
    #[arg(long, global = true)]
    pub save_config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    QuadLine,
    QuadPlane,
    HeisQuad,
    Lattice,
    Fish,
    Visible,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Point-set CSV written by `generate`
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Ring parameter of Z[sqrt d]
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    /// Window intervals as `lo,hi[,lo,hi...]`
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Enumeration radius
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 1)]
    pub step: i64,
    /// Number of Fish blocks
    #[arg(long)]
    pub blocks: Option<usize>,
    /// Radius of the visible-points ball
    #[arg(long)]
    pub n: Option<i64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckArg {
    Ag3,
    Delone,
    Chain,
    Generating,
    RelDense,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum QiArg {
    Rho,
    Defect,
    Folner,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CartanArg {
    Grid,
    WordBall,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a point set and write it as CSV
    Generate {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Run one verification on a point set
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        check: CheckArg,
        /// AG3 covering parameter R
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// AG3 slack [default: R]
        #[arg(long)]
        slack: Option<f64>,
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
        #[arg(long, default_value_t = 1.0)]
        kradius: f64,
        /// Test radius for `generating` [default: half the core]
        #[arg(long)]
        test_radius: Option<f64>,
        /// Subset P0 for `rel-dense`, as a point-set CSV
        #[arg(long)]
        subset: Option<PathBuf>,
    },
    /// Catalog of rho-patches
    Patches {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
    },
    /// Patch frequencies and ergodic averages of a triangle bump
    HullFreq {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 2.0)]
        rho: f64,
        /// Averaging window `center:radius`; repeatable
        #[arg(long = "avg", allow_hyphen_values = true, value_parser = parse_pair_colon)]
        windows: Vec<(f64, f64)>,
        #[arg(long, default_value_t = 1.0)]
        bump_radius: f64,
        /// Quadrature step for the averages
        #[arg(long, default_value_t = 0.05)]
        avg_step: f64,
    },
    /// Quasi-isometry experiments: word growth, quasi-action defects, Folner sets
    Qi {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value = "rho")]
        mode: QiArg,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        kradius: f64,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 5.0)]
        sample_radius: f64,
        /// Folner window radius; repeatable
        #[arg(long = "folner-radius")]
        folner_radii: Vec<f64>,
    },
    /// Constrained word length of a^(2^n) in BS(1,2)
    Distortion {
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Gaps between consecutive Cartan parameters in SL2(R)
    Cartan {
        #[arg(long, value_enum, default_value = "grid")]
        source: CartanArg,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Word radius for `word-ball`
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
    /// Contracting random walk on the ax+b group
    Walk {
        /// Support atom `b,a,p`; repeatable
        #[arg(long = "atom", required = true, allow_hyphen_values = true, value_parser = parse_atom)]
        atoms: Vec<(f64, f64, f64)>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 60)]
        horizon: usize,
        #[arg(long, default_value_t = DEFAULT_RATIO_MARGIN)]
        margin: f64,
    },
}

fn floats(s: &str, sep: char) -> Result<Vec<f64>, String> {
    s.split(sep)
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect()
}

fn parse_pair_colon(s: &str) -> Result<(f64, f64), String> {
    match floats(s, ':')?.as_slice() {
        &[c, r] => Ok((c, r)),
        _ => Err(format!("expected center:radius, got {s:?}")),
    }
}

fn parse_atom(s: &str) -> Result<(f64, f64, f64), String> {
    match floats(s, ',')?.as_slice() {
        &[b, a, p] => Ok((b, a, p)),
        _ => Err(format!("expected b,a,p, got {s:?}")),
    }
}

fn parse_window(s: &str) -> Result<Vec<(f64, f64)>, String> {
    let v = floats(s, ',')?;
    if v.is_empty() || v.len() % 2 != 0 {
        return Err(format!("window needs lo,hi pairs, got {s:?}"));
    }
    Ok(v.chunks(2).map(|c| (c[0], c[1])).collect())
}

impl SourceArgs {
    fn resolve(self) -> Result<Source, String> {
        if let Some(path) = self.input {
            return Ok(Source::File { path });
        }
        let family = self.family.ok_or("either --input or --family is required")?;
        let need_radius = || self.radius.ok_or("--radius is required for this family");
        Ok(match family {
            FamilyArg::QuadLine | FamilyArg::QuadPlane | FamilyArg::HeisQuad => {
                let family = match family {
                    FamilyArg::QuadLine => SchemeFamily::QuadraticLine,
                    FamilyArg::QuadPlane => SchemeFamily::QuadraticPlane,
                    _ => SchemeFamily::HeisQuadratic,
                };
                let window = self.window.as_deref().ok_or("--window is required for model sets")?;
                Source::ModelSet {
                    family,
                    d: self.d,
                    window: parse_window(window)?,
                    radius: need_radius()?,
                }
            }
            FamilyArg::Lattice => Source::Lattice {
                dim: self.dim,
                step: self.step,
                radius: need_radius()?,
            },
            FamilyArg::Fish => Source::Fish {
                blocks: self.blocks.ok_or("--blocks is required for fish")?,
            },
            FamilyArg::Visible => Source::Visible {
                n: self.n.ok_or("--n is required for visible")?,
            },
        })
    }
}

impl Command {
    fn into_task(self) -> Result<Task, String> {
        Ok(match self {
            Command::Generate { source } => Task::Generate {
                source: source.resolve()?,
            },
            Command::Verify {
                source,
                check,
                r,
                slack,
                rho,
                kradius,
                test_radius,
                subset,
            } => {
                let check = match check {
                    CheckArg::Ag3 => Check::Ag3,
                    CheckArg::Delone => Check::Delone,
                    CheckArg::Chain => Check::Chain,
                    CheckArg::Generating => Check::Generating,
                    CheckArg::RelDense => Check::RelDense,
                };
                if matches!(check, Check::RelDense) && subset.is_none() {
                    return Err("--check rel-dense needs --subset".into());
                }
                Task::Verify {
                    source: source.resolve()?,
                    check,
                    r,
                    slack,
                    rho,
                    kradius,
                    test_radius,
                    subset: subset.map(|path| Source::File { path }),
                }
            }
            Command::Patches { source, rho } => Task::Patches {
                source: source.resolve()?,
                rho,
            },
            Command::HullFreq {
                source,
                rho,
                windows,
                bump_radius,
                avg_step,
            } => Task::HullFreq {
                source: source.resolve()?,
                rho,
                windows,
                bump_radius,
                step: avg_step,
            },
            Command::Qi {
                source,
                mode,
                r,
                kradius,
                n_max,
                k,
                l,
                samples,
                sample_radius,
                folner_radii,
            } => Task::Qi {
                source: source.resolve()?,
                mode: match mode {
                    QiArg::Rho => QiMode::Rho,
                    QiArg::Defect => QiMode::Defect,
                    QiArg::Folner => QiMode::Folner,
                },
                r,
                kradius,
                n_max,
                k,
                l,
                samples,
                sample_radius,
                folner_radii,
            },
            Command::Distortion { n_min, n_max, k } => Task::Distortion { n_min, n_max, k },
            Command::Cartan {
                source,
                t_max,
                steps,
                radius,
            } => Task::Cartan {
                source: match source {
                    CartanArg::Grid => CartanSource::Grid { t_max, steps },
                    CartanArg::WordBall => CartanSource::WordBall { radius },
                },
            },
            Command::Walk {
                atoms,
                trials,
                horizon,
                margin,
            } => Task::Walk {
                support: atoms,
                trials,
                horizon,
                margin,
            },
        })
    }
}

impl Cli {
    /// Resolves flags, an optional config file and defaults into one config.
    /// Explicit global flags override values from the file.
    pub fn resolve(self) -> Result<RunConfig, String> {
        let base = match (self.config, self.command) {
            (Some(_), Some(_)) => return Err("--config and a subcommand are mutually exclusive".into()),
            (None, None) => return Err("a subcommand or --config is required".into()),
            (Some(path), None) => RunConfig::load(&path)?,
            (None, Some(cmd)) => RunConfig {
                seed: 0,
                tolerance: DEFAULT_TOLERANCE,
                budget: DEFAULT_BUDGET,
                out: None,
                csv: None,
                task: cmd.into_task()?,
            },
        };
        let cfg = RunConfig {
            seed: self.seed.unwrap_or(base.seed),
            tolerance: self.tolerance.unwrap_or(base.tolerance),
            budget: self.budget.unwrap_or(base.budget),
            out: self.out.or(base.out),
            csv: self.csv.or(base.csv),
            task: base.task,
        };
        if !(cfg.tolerance >= 0.0 && cfg.tolerance.is_finite()) {
            return Err(format!("tolerance must be finite and nonnegative, got {}", cfg.tolerance));
        }
        if let Some(path) = self.save_config {
            std::fs::write(&path, cfg.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        Ok(cfg)
    }
}
