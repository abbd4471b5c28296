//! The five commands.

use std::fs::File;
use std::io::{BufWriter, Write};

use anyhow::{anyhow, bail, Context, Result};
use cubint_core::catalog::{build, lemma_grid, preset, residual_lemma1, Model, ModelSpec, PRESETS};
use cubint_core::classify::{classify_general, classify_p0, classify_q0, Classification};
use cubint_core::phase::PhaseState;
use cubint_core::poly::Sign;
use cubint_core::sim::{drift_report, run};
use cubint_core::Error;
use serde::Serialize;

use crate::config::{ClassifyFamily, Command, Format, Options};
use crate::{io, sampling, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_NO_MANIFOLD: i32 = 2;
pub const EXIT_HALTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

pub const DEFAULT_SEED: u64 = 0;

/// Bad or missing options; reported with exit code 64.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn emit(opts: &Options, text: &str) -> Result<()> {
    match &opts.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn run_command(opts: &Options) -> Result<i32> {
    match opts.command {
        None => Err(usage("no command given (classify, verify, simulate, catalog, residuals)")),
        Some(Command::Classify) => classify(opts),
        Some(Command::Verify) => verify_cmd(opts),
        Some(Command::Simulate) => simulate(opts),
        Some(Command::Catalog) => catalog(opts),
        Some(Command::Residuals) => residuals(opts),
    }
}

fn eps_sign(eps: f64) -> Result<Sign> {
    match eps {
        x if x == 1.0 => Ok(Sign::Positive),
        x if x == -1.0 => Ok(Sign::Negative),
        x if x == 0.0 => Ok(Sign::Zero),
        x => Err(usage(format!("--eps must be -1, 0 or 1, got {x}"))),
    }
}

pub fn classification(opts: &Options) -> Result<Classification> {
    let family = need(opts.family, "family")?;
    let roots = opts.roots.as_deref();
    match family {
        ClassifyFamily::Q0 => Ok(classify_q0(need(opts.c0, "c0")?, need(opts.rho0, "rho0")?)),
        ClassifyFamily::P0 => match roots {
            // F = lead·(ζ − a)(ζ − b) with lead = eps (default −1).
            Some([a, b]) => {
                let lead = opts.eps.unwrap_or(-1.0);
                if lead == 0.0 {
                    bail!(usage("--eps 0 with --roots leaves F = 0"));
                }
                Ok(classify_p0(lead * a * b, -lead * (a + b), lead))
            }
            Some(r) => Err(usage(format!("p0 takes two roots, got {}", r.len()))),
            None => Ok(classify_p0(need(opts.c0, "c0")?, need(opts.c1, "c1")?, need(opts.c2, "c2")?)),
        },
        ClassifyFamily::General => {
            let eps = eps_sign(need(opts.eps, "eps")?)?;
            let (c0, c1, c2) = match roots {
                Some([a, b, c]) => (-(a * b * c), a * b + b * c + a * c, -(a + b + c)),
                Some(r) => return Err(usage(format!("general takes three roots, got {}", r.len()))),
                None => (need(opts.c0, "c0")?, need(opts.c1, "c1")?, need(opts.c2, "c2")?),
            };
            Ok(classify_general(eps, c0, c1, c2))
        }
    }
}

fn classify(opts: &Options) -> Result<i32> {
    let c = classification(opts)?;
    emit(opts, &io::to_json(&c)?)?;
    Ok(if c.manifold.is_manifold() { EXIT_OK } else { EXIT_NO_MANIFOLD })
}

pub fn model_spec(opts: &Options) -> Result<ModelSpec> {
    match (&opts.preset, &opts.spec) {
        (Some(name), None) => Ok(preset(name)?),
        (None, Some(src)) => src.resolve(),
        (Some(_), Some(_)) => Err(usage("give either --preset or --spec, not both")),
        (None, None) => Err(usage("missing --preset or --spec")),
    }
}

fn model(opts: &Options) -> Result<Model> {
    let spec = model_spec(opts)?;
    let m = build(&spec).with_context(|| format!("building {}", spec.family()))?;
    Ok(match opts.perturb {
        Some(d) => {
            let [a, b] = m.provenance().scalings;
            m.with_q_scalings([a * (1.0 + d), b])
        }
        None => m,
    })
}

fn verify_cmd(opts: &Options) -> Result<i32> {
    let m = model(opts)?;
    let report = verify::verify(
        &m,
        opts.samples.unwrap_or(1000),
        opts.tol.unwrap_or(cubint_core::catalog::BRACKET_TOL),
        opts.seed.unwrap_or(DEFAULT_SEED),
    )?;
    emit(opts, &io::to_json(&report)?)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct SimulationSummary {
    family: String,
    dt: f64,
    t_end: f64,
    initial_state: PhaseState,
    max_abs_dh: f64,
    max_abs_dq: f64,
    steps: usize,
    rejected_steps: usize,
    halt: Option<String>,
}

fn simulate(opts: &Options) -> Result<i32> {
    let m = model(opts)?;
    let dt = opts.dt.unwrap_or(1e-3);
    let t_end = need(opts.t_end, "t-end")?;
    let s0 = match opts.state.as_deref() {
        Some([x1, x2, p1, p2]) => PhaseState::new(m.chart(), *x1, *x2, *p1, *p2),
        Some(v) => return Err(usage(format!("--state takes 4 numbers, got {}", v.len()))),
        None => sampling::random_states(&m, 1, &mut sampling::rng(opts.seed.unwrap_or(DEFAULT_SEED), 1))[0],
    };
    let traj = run(&m, &s0, dt, t_end).map_err(|e| anyhow!(e))?;
    match &opts.output {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            io::write_trajectory_csv(BufWriter::new(f), &traj)?;
        }
        None => io::write_trajectory_csv(std::io::stdout().lock(), &traj)?,
    }
    let summary = match drift_report(&traj) {
        Ok(d) => SimulationSummary {
            family: m.family().name().to_owned(),
            dt,
            t_end,
            initial_state: s0,
            max_abs_dh: d.max_abs_dh,
            max_abs_dq: d.max_abs_dq,
            steps: d.steps,
            rejected_steps: d.rejected_steps,
            halt: traj.halt.as_ref().map(|e| format!("{e}")),
        },
        // The initial state itself could not be evaluated.
        Err(_) => SimulationSummary {
            family: m.family().name().to_owned(),
            dt,
            t_end,
            initial_state: s0,
            max_abs_dh: f64::NAN,
            max_abs_dq: f64::NAN,
            steps: 0,
            rejected_steps: 1,
            halt: traj.halt.as_ref().map(|e| format!("{e}")),
        },
    };
    let json = io::to_json(&summary)?;
    let report_path = opts.report.clone().or_else(|| {
        opts.output.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".drift.json");
            s.into()
        })
    });
    if let Some(path) = report_path {
        std::fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    eprint!("{json}");
    if let Some(halt) = &traj.halt {
        eprintln!("halted: {halt}");
        return Ok(EXIT_HALTED);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub family: &'static str,
    pub manifold: &'static str,
    pub form: &'static str,
}

pub fn catalog_entries() -> Result<Vec<CatalogEntry>> {
    PRESETS
        .iter()
        .map(|&name| {
            let m = build(&preset(name)?)?;
            Ok(CatalogEntry { name, family: m.family().name(), manifold: m.manifold().name(), form: m.family().form() })
        })
        .collect()
}

fn catalog(opts: &Options) -> Result<i32> {
    let entries = catalog_entries()?;
    let text = match opts.format {
        Some(Format::Json) => io::to_json(&entries)?,
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for e in &entries {
                w.serialize(e)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Some(Format::Text) | None => entries
            .iter()
            .map(|e| format!("{:<22} {:<22} {:<4} {}\n", e.name, e.family, e.manifold, e.form))
            .collect(),
    };
    emit(opts, &text)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ResidualReport {
    family: &'static str,
    points: usize,
    residuals: [f64; 6],
    max: f64,
    tol: f64,
    pass: bool,
}

fn residuals(opts: &Options) -> Result<i32> {
    let m = model(opts)?;
    let points = opts.points.unwrap_or(50);
    let tol = opts.tol.unwrap_or(1e-8);
    let r = residual_lemma1(&m, &lemma_grid(&m, points)).map_err(|e| match e {
        Error::Argument(msg) => usage(msg),
        e => anyhow!(e),
    })?;
    let max = r.iter().fold(0.0f64, |a, b| a.max(*b));
    let report = ResidualReport { family: m.family().name(), points, residuals: r, max, tol, pass: max <= tol };
    emit(opts, &io::to_json(&report)?)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAIL })
}
