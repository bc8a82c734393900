use std::io::Write as _;
use std::path::Path;

use aplab_core::algebra::{GroupElem, Sl2};
use aplab_core::cutproject::{
    enumerate, fish_set, integer_lattice, visible_points, PointSet, Scheme, Window,
};
use aplab_core::ggt::{
    bs_distortion, bs_word_length, cartan_syndetic, folner_report, ms_rho, quasi_action_defects,
    word_ball, WordFamily, WordGroup,
};
use aplab_core::hull::{
    ergodic_average, flc_patches, patch_inclusion_violations, transversal_stats, AverageWindow,
    Bump, TestFunction,
};
use aplab_core::io::{load_pointset, pointset_to_csv, Report};
use aplab_core::stationary::{
    convergence_report, simulate_series, trajectories_csv, AffineWalkConfig, RNG_NAME,
};
use aplab_core::verify::{
    delone_parameters, discreteness_chain, find_ag3_witness, generating_check,
    rel_dense_subset_check, square_generators,
};
use aplab_core::Error;
use serde_json::{json, Value};

use crate::config::{CartanSource, Check, QiMode, RunConfig, Source, Task};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Exit status for a core error: budget overruns are 3, failed verifications
/// 2, and everything else (bad input, too small an enumeration) 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Ag3Failed(_) | Error::Unreachable { .. } => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

pub fn load_source(src: &Source) -> aplab_core::Result<PointSet> {
    match src {
        Source::ModelSet {
            family,
            d,
            window,
            radius,
        } => enumerate(&Scheme::new(*family, *d, Window::new(window.clone())?)?, *radius),
        Source::Lattice { dim, step, radius } => integer_lattice(*dim, *step, *radius),
        Source::Fish { blocks } => fish_set(*blocks),
        Source::Visible { n } => visible_points(*n),
        Source::File { path } => load_pointset(path),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn write_artifact(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// What a task produced before it is written out.
struct Outcome {
    report: Report,
    csv: Option<String>,
}

/// Runs the configured task and returns the process exit status.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("aplab: {msg}");
            EXIT_INVALID
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<i32, String> {
    let config = to_value(cfg);
    if let Task::Generate { source } = &cfg.task {
        let p = load_source(source).map_err(|e| e.to_string())?;
        let text = pointset_to_csv(&p).map_err(|e| e.to_string())?;
        write_artifact(cfg.out.as_deref(), &text).map_err(|e| e.to_string())?;
        return Ok(EXIT_OK);
    }
    let check = cfg.task.name();
    let (outcome, code) = match dispatch(cfg, config.clone()) {
        Ok(o) => {
            let code = if o.report.passed() { EXIT_OK } else { EXIT_FAILED };
            (o, code)
        }
        Err(Failure::Setup(e)) => {
            let code = exit_code(&e);
            if code == EXIT_INVALID {
                return Err(e.to_string());
            }
            let mut report = Report::new(check, config);
            report.failures.push(e.to_string());
            (Outcome { report, csv: None }, code)
        }
        Err(Failure::Check(mut report, e)) => {
            let code = exit_code(&e);
            if code == EXIT_INVALID {
                return Err(e.to_string());
            }
            report.failures.push(e.to_string());
            if let Error::Ag3Failed(f) = &e {
                report.witnesses = to_value(f.as_ref());
            } else if let Error::Unreachable { point, max_len } = &e {
                report.witnesses = json!({ "point": point, "maxWordLength": max_len });
            }
            (Outcome { report, csv: None }, code)
        }
    };
    let json = outcome.report.to_json().map_err(|e| e.to_string())?;
    write_artifact(cfg.out.as_deref(), &json).map_err(|e| e.to_string())?;
    if let (Some(path), Some(csv)) = (cfg.csv.as_deref(), outcome.csv) {
        std::fs::write(path, csv).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    if code != EXIT_OK {
        for f in &outcome.report.failures {
            eprintln!("aplab: {check}: {f}");
        }
    }
    Ok(code)
}

enum Failure {
    /// Before a report for the input exists.
    Setup(Error),
    /// The check itself failed; the report carries the input's provenance.
    Check(Report, Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Setup(e)
    }
}

fn input_report(check: &str, config: Value, source: &Source) -> Result<(PointSet, Report), Failure> {
    let p = load_source(source)?;
    let report = Report::new(check, config).for_input(&p)?;
    Ok((p, report))
}

/// Attaches the input report to an error raised by the check proper.
fn checked<T>(report: &Report, r: aplab_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Check(report.clone(), e))
}

fn dispatch(cfg: &RunConfig, config: Value) -> Result<Outcome, Failure> {
    let name = cfg.task.name();
    match &cfg.task {
        Task::Generate { .. } => unreachable!("handled before dispatch"),
        Task::Verify {
            source,
            check,
            r,
            slack,
            rho,
            kradius,
            test_radius,
            subset,
        } => {
            let label = match check {
                Check::Ag3 => "verify/ag3",
                Check::Delone => "verify/delone",
                Check::Chain => "verify/chain",
                Check::Generating => "verify/generating",
                Check::RelDense => "verify/rel-dense",
            };
            let (p, mut report) = input_report(label, config, source)?;
            match check {
                Check::Ag3 => {
                    let w = checked(&report, find_ag3_witness(&p, *r, *slack))?;
                    report.witnesses = to_value(&w.f_display);
                    report.result = to_value(&w);
                }
                Check::Delone => {
                    let d = checked(&report, delone_parameters(&p))?;
                    if !(d.packing_radius > 0.0) || !d.covering_radius.is_finite() {
                        report.failures.push("not a Delone set on the core".into());
                    }
                    report.result = to_value(&d);
                }
                Check::Chain => {
                    let c = checked(&report, discreteness_chain(&p, *rho, *kradius))?;
                    report.failures.extend(c.violations.iter().cloned());
                    report.result = to_value(&c);
                }
                Check::Generating => {
                    let t = test_radius.unwrap_or(p.core_radius() / 2.0);
                    let g = checked(&report, generating_check(&p, *kradius, t))?;
                    report.witnesses = to_value(&g.generators);
                    report.result = to_value(&g);
                }
                Check::RelDense => {
                    let sub = subset
                        .as_ref()
                        .ok_or_else(|| Error::InvalidInput("rel-dense needs a subset".into()))?;
                    let p0 = load_source(sub)?;
                    let rd = checked(&report, rel_dense_subset_check(&p0, &p))?;
                    if !rd.equivalent {
                        report.failures.push(format!(
                            "ambient density {} but relative density {}",
                            rd.ambient_dense, rd.relative_dense
                        ));
                    }
                    report.result = to_value(&rd);
                }
            }
            Ok(Outcome { report, csv: None })
        }
        Task::Patches { source, rho } => {
            let (p, mut report) = input_report(name, config, source)?;
            let cat = checked(&report, flc_patches(&p, *rho))?;
            let bad = checked(&report, patch_inclusion_violations(&p, &cat))?;
            if bad > 0 {
                report
                    .failures
                    .push(format!("{bad} patch differences missing from the difference set"));
            }
            report.result = json!({ "patchTypes": cat.len(), "catalog": to_value(&cat) });
            let mut csv = String::from("index,size,count\n");
            for (i, (patch, count)) in cat.patches.iter().enumerate() {
                csv.push_str(&format!("{i},{},{count}\n", patch.len()));
            }
            Ok(Outcome { report, csv: Some(csv) })
        }
        Task::HullFreq {
            source,
            rho,
            windows,
            bump_radius,
            step,
        } => {
            let (p, mut report) = input_report(name, config, source)?;
            let stats = checked(&report, transversal_stats(&p, *rho))?;
            let mut averages = Vec::new();
            if !windows.is_empty() {
                let f = TestFunction::single(checked(&report, Bump::triangle(vec![0.0], *bump_radius))?);
                let ws: Vec<AverageWindow> = windows
                    .iter()
                    .map(|&(center, radius)| AverageWindow { center, radius })
                    .collect();
                for (w, avg) in checked(&report, ergodic_average(&p, &f, &ws, *step))? {
                    averages.push(json!({ "center": w.center, "radius": w.radius, "average": avg }));
                }
            }
            let mut csv = String::from("index,size,count,frequency\n");
            for (i, e) in stats.catalog.iter().enumerate() {
                csv.push_str(&format!("{i},{},{},{}\n", e.patch.len(), e.count, e.frequency));
            }
            report.result = json!({ "stats": to_value(&stats), "averages": averages });
            Ok(Outcome { report, csv: Some(csv) })
        }
        Task::Qi {
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
        } => {
            let label = match mode {
                QiMode::Rho => "qi/rho",
                QiMode::Defect => "qi/defect",
                QiMode::Folner => "qi/folner",
            };
            let (p, mut report) = input_report(label, config, source)?;
            let csv = match mode {
                QiMode::Rho => {
                    let gens = checked(&report, square_generators(&p, *kradius))?;
                    let t = checked(&report, ms_rho(&p, *kradius, &gens, *n_max, cfg.budget))?;
                    if !t.is_monotone() {
                        report.failures.push("rho is not monotone".into());
                    }
                    report.witnesses = to_value(&gens.iter().map(ToString::to_string).collect::<Vec<_>>());
                    report.result = to_value(&t);
                    t.to_csv()
                }
                QiMode::Defect => {
                    let w = checked(&report, find_ag3_witness(&p, *r, None))?;
                    let d = checked(
                        &report,
                        quasi_action_defects(&p, &w, *k, *l, *samples, *sample_radius, cfg.seed),
                    )?;
                    if d.violations > 0 {
                        report.failures.push(format!(
                            "{} of {} defects exceed {}",
                            d.violations, d.samples, d.bound
                        ));
                    }
                    report.witnesses = to_value(&w.f_display);
                    report.result = to_value(&d);
                    format!("k,l,delta,bound,maxDefect\n{},{},{},{},{}\n", d.k, d.l, d.delta, d.bound, d.max_defect)
                }
                QiMode::Folner => {
                    let rows = checked(&report, folner_report(&p, *kradius, folner_radii))?;
                    let mut csv = String::from("radius,size,boundary,ratio\n");
                    for row in &rows {
                        csv.push_str(&format!("{},{},{},{}\n", row.radius, row.size, row.boundary, row.ratio));
                    }
                    report.result = to_value(&rows);
                    csv
                }
            };
            Ok(Outcome { report, csv: Some(csv) })
        }
        Task::Distortion { n_min, n_max, k } => {
            let mut report = Report::new(name, config);
            if n_min > n_max {
                return Err(Error::InvalidInput(format!("n-min {n_min} exceeds n-max {n_max}")).into());
            }
            let mut rows = Vec::new();
            let mut csv = String::from("n,exact,unconstrainedUpper,constrained\n");
            let mut prev = 0;
            for n in *n_min..=*n_max {
                let d = checked(&report, bs_distortion(n, *k, cfg.budget))?;
                // the exact length is a bonus: skipped when the ball outgrows the budget
                let exact = match bs_word_length(n, cfg.budget) {
                    Ok(len) => Some(len),
                    Err(Error::Budget { .. }) => None,
                    Err(e) => return Err(Failure::Check(report, e)),
                };
                if d.unconstrained_upper > 2 * n as usize + 1 {
                    report.failures.push(format!("n = {n}: explicit word longer than 2n+1"));
                }
                if d.constrained_length < prev {
                    report.failures.push(format!("n = {n}: constrained length decreased"));
                }
                prev = d.constrained_length;
                let ex = exact.map_or(String::new(), |e| e.to_string());
                csv.push_str(&format!("{n},{ex},{},{}\n", d.unconstrained_upper, d.constrained_length));
                rows.push(json!({ "distortion": to_value(&d), "exactLength": exact }));
            }
            report.result = Value::Array(rows);
            Ok(Outcome { report, csv: Some(csv) })
        }
        Task::Cartan { source } => {
            let mut report = Report::new(name, config);
            let elems: Vec<GroupElem> = match *source {
                CartanSource::Grid { t_max, steps } => {
                    if steps == 0 || !(t_max > 0.0) {
                        return Err(Error::InvalidInput("grid needs steps > 0 and t-max > 0".into()).into());
                    }
                    (0..=steps)
                        .map(|i| GroupElem::Sl2(Sl2::diagonal(t_max * i as f64 / steps as f64)))
                        .collect()
                }
                CartanSource::WordBall { radius } => {
                    let g = WordGroup::standard(WordFamily::Sl2Z)?;
                    checked(&report, word_ball(&g, radius, cfg.budget))?
                        .into_iter()
                        .map(|(e, _)| e)
                        .collect()
                }
            };
            let c = checked(&report, cartan_syndetic(&elems, cfg.tolerance))?;
            for &i in &c.violations {
                report.failures.push(format!(
                    "gap {} between t = {} and t = {} exceeds its bound",
                    c.gaps[i],
                    c.ts[i],
                    c.ts[i + 1]
                ));
            }
            let mut csv = String::from("t,gap\n");
            for (t, g) in c.ts.iter().zip(&c.gaps) {
                csv.push_str(&format!("{t},{g}\n"));
            }
            report.result = json!({ "elements": elems.len(), "cartan": to_value(&c) });
            Ok(Outcome { report, csv: Some(csv) })
        }
        Task::Walk {
            support,
            trials,
            horizon,
            margin,
        } => {
            let mut report = Report::new(name, config);
            let wc = AffineWalkConfig::new(support.clone(), cfg.seed, *trials, *horizon)?;
            let traj = checked(&report, simulate_series(&wc))?;
            let c = checked(&report, convergence_report(&wc, &traj, *margin))?;
            if c.verdict == Some(false) {
                report.failures.push(format!(
                    "fitted tail ratio {:?} above q + margin = {}",
                    c.fitted_ratio,
                    c.q + c.ratio_margin
                ));
            }
            report.result = json!({ "rng": RNG_NAME, "convergence": to_value(&c) });
            Ok(Outcome {
                report,
                csv: Some(trajectories_csv(&traj)),
            })
        }
    }
}
