use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use distill_core::conjecture::{bound, objective, ExtremalSpec};
use distill_core::optimizer::{families, figure1_sweep, maximize, OptimizerConfig, SamplerFamily};
use distill_core::oracles::{run_lemma, Lemma as CoreLemma};
use distill_core::werner::{two_copy_search, witness_min, Classification, Convention, WernerState, WitnessResult};
use serde::Serialize;

use crate::emit;
use crate::{ConventionArg, Failure, Lemma, Outcome};

// below this the two-copy witness is reported as a counterexample
const TWO_COPY_TOL: f64 = -1e-7;
const BOUND_SLACK: f64 = 1e-9;
const EXTREMAL_TOL: f64 = 1e-12;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

#[derive(Serialize)]
struct SweepConfig {
    command: &'static str,
    d: usize,
    n: usize,
    seed: u64,
    out: Option<PathBuf>,
    format: &'static str,
}

#[derive(Serialize)]
struct SweepSidecar {
    d: usize,
    n: usize,
    seed: u64,
    max_value: f64,
    bound: f64,
    /// The bound is only claimed for `d ≥ 4`; smaller `d` never trips exit 3.
    bound_applies: bool,
    exceeding: usize,
    families: Vec<&'static str>,
    config: SweepConfig,
}

pub fn sweep(d: usize, n: usize, seed: u64, out: Option<PathBuf>) -> Result<Outcome, Failure> {
    if d < 2 {
        return Err(usage(format!("--d must be at least 2, got {d}")));
    }
    let records = figure1_sweep(d, n, seed)?;
    let b = bound(d);
    let bound_applies = d >= 4;
    let max_value = records.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let exceeding = records.iter().filter(|r| r.value > b).count();
    let sidecar = SweepSidecar {
        d,
        n,
        seed,
        max_value,
        bound: b,
        bound_applies,
        exceeding,
        families: families().available(d).iter().map(|f| f.tag()).collect(),
        config: SweepConfig { command: "sweep", d, n, seed, out: out.clone(), format: "csv" },
    };
    match &out {
        Some(path) => {
            emit::sweep_csv(&records, BufWriter::new(File::create(path)?))?;
            emit::json_line(&sidecar, BufWriter::new(File::create(sidecar_path(path))?))?;
        }
        None => {
            emit::sweep_csv(&records, io::stdout().lock())?;
            emit::json_line(&sidecar, io::stderr().lock())?;
        }
    }
    if bound_applies && exceeding > 0 {
        eprintln!("VIOLATION: {exceeding} sample(s) exceed the bound {b}; max {max_value}");
        return Ok(Outcome::Violation);
    }
    Ok(Outcome::Success)
}

pub fn optimize(d: usize, family: &str, restarts: usize, seed: u64, max_iters: usize) -> Result<Outcome, Failure> {
    let fam = families().get(family).map_err(|e| usage(e.to_string()))?;
    fam.supports(d).map_err(|e| usage(e.to_string()))?;
    let mut cfg = OptimizerConfig::new(SamplerFamily::new(family, d, seed), restarts);
    cfg.max_iters = max_iters;
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let report = maximize(&cfg)?;
    emit::json_line(&report, io::stdout().lock())?;
    if fam.bound_proven() && d >= 4 && report.best_value > report.bound + BOUND_SLACK {
        eprintln!("VIOLATION: {family} reached {} above the bound {}", report.best_value, report.bound);
        return Ok(Outcome::Violation);
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct ExtremalReport {
    d: usize,
    beta: f64,
    a_diagonal: Vec<f64>,
    b_diagonal: Vec<f64>,
    objective: f64,
    bound: f64,
    abs_error: f64,
}

pub fn extremal(d: usize) -> Result<Outcome, Failure> {
    let spec = ExtremalSpec::new(d).map_err(|e| usage(e.to_string()))?;
    let value = objective(&spec.point());
    let b = bound(d);
    let report = ExtremalReport {
        d,
        beta: spec.beta,
        a_diagonal: spec.a_diagonal(),
        b_diagonal: spec.b_diagonal(),
        objective: value,
        bound: b,
        abs_error: (value - b).abs(),
    };
    emit::json_line(&report, io::stdout().lock())?;
    if report.abs_error >= EXTREMAL_TOL {
        return Ok(Outcome::Violation);
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct WernerReport {
    d: usize,
    alpha: f64,
    convention: Convention,
    min_value: f64,
    restarts: usize,
    classification: Classification,
    seed: u64,
    two_copy: bool,
    /// `α` in the convention where the classification ranges hold.
    proposition_alpha: f64,
    ppt_min_eig: f64,
    /// `(1 − 2α)/(d² − αd)`, single copy only.
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
    witness: WitnessResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
}

#[derive(Serialize)]
struct Counterexample {
    value: f64,
    threshold: f64,
    /// Components of `ψ` on `(A₁A₂) ⊗ (B₁B₂)`, row-major, as `[re, im]`.
    psi: Vec<[f64; 2]>,
}

pub fn werner(
    d: usize,
    alpha: f64,
    convention: ConventionArg,
    two_copy: bool,
    restarts: usize,
    seed: u64,
) -> Result<Outcome, Failure> {
    let convention = match convention {
        ConventionArg::Proposition => Convention::Proposition,
        ConventionArg::Displayed => Convention::Displayed,
    };
    let state = WernerState::with_convention(d, alpha, convention).map_err(|e| usage(e.to_string()))?;
    if restarts == 0 {
        return Err(usage("--restarts must be at least 1"));
    }
    if two_copy && d != 4 {
        return Err(usage(format!("--two-copy is defined for d = 4, got {d}")));
    }
    let witness = if two_copy {
        two_copy_search(state.proposition_alpha(), restarts, seed)?
    } else {
        witness_min(&state.density(), d, d, restarts, seed)?
    };
    let counterexample = (two_copy && witness.min_value < TWO_COPY_TOL).then(|| Counterexample {
        value: witness.min_value,
        threshold: TWO_COPY_TOL,
        psi: witness.argmin.vector().iter().map(|z| [z.re, z.im]).collect(),
    });
    let violated = counterexample.is_some();
    let report = WernerReport {
        d,
        alpha,
        convention,
        min_value: witness.min_value,
        restarts,
        classification: state.classify(),
        seed,
        two_copy,
        proposition_alpha: state.proposition_alpha(),
        ppt_min_eig: state.ppt_min_eig(),
        closed_form: (!two_copy).then(|| state.witness_closed_form()),
        witness,
        counterexample,
    };
    emit::json_line(&report, io::stdout().lock())?;
    if violated {
        eprintln!("VIOLATION: two-copy witness {} below {TWO_COPY_TOL}", report.min_value);
        return Ok(Outcome::Violation);
    }
    Ok(Outcome::Success)
}

pub fn oracle(lemma: Lemma, n: usize, seed: u64) -> Result<Outcome, Failure> {
    let lemma = match lemma {
        Lemma::A1 => CoreLemma::A1,
        Lemma::Dichotomy => CoreLemma::Dichotomy,
        Lemma::EqualY => CoreLemma::EqualY,
    };
    let tally = run_lemma(lemma, n, seed);
    let mut out = io::stdout().lock();
    writeln!(out, "{}: {}/{} pass", lemma.name(), tally.passed, tally.n)?;
    if let Some((i, why)) = &tally.first_failure {
        writeln!(out, "first failure at instance {i}: {why}")?;
    }
    if tally.all_passed() {
        Ok(Outcome::Success)
    } else {
        Ok(Outcome::Violation)
    }
}
