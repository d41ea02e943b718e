use serde::{Deserialize, Serialize};

use super::family::{FramedPoint, SamplerFamily};
use super::gradient::{project_tangent, raw_gradient, TangentPair, DEFAULT_SMOOTHING_EPS};
use super::kkt::structured_kkt;
use crate::conjecture::{objective, project_to_feasible, FeasiblePoint};
use crate::error::{Error, Result};
use crate::parallel::map_indexed;
use crate::rng::stream;

const ARMIJO_C: f64 = 1e-4;
const MIN_STEP: f64 = 1e-14;
const MAX_STEP: f64 = 10.0;
// below this gradient norm a failed line search is roundoff, not a stall
const ROUNDOFF_GRAD: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub family: SamplerFamily,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub step_shrink: f64,
    pub grad_tol: f64,
    pub smoothing_eps: f64,
}

impl OptimizerConfig {
    pub fn new(family: SamplerFamily, restarts: usize) -> Self {
        Self {
            family,
            restarts,
            max_iters: 2000,
            step_init: 0.1,
            step_shrink: 0.5,
            grad_tol: 1e-10,
            smoothing_eps: DEFAULT_SMOOTHING_EPS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 || self.max_iters < 1 {
            return Err(Error::InvalidArgument("restarts and max_iters must be at least 1".into()));
        }
        if !(self.step_shrink > 0.0 && self.step_shrink < 1.0) {
            return Err(Error::InvalidArgument(format!("step_shrink must lie in (0, 1), got {}", self.step_shrink)));
        }
        if !(self.step_init > 0.0) || !(self.smoothing_eps >= 0.0) || !(self.grad_tol >= 0.0) {
            return Err(Error::InvalidArgument("step_init must be positive; tolerances nonnegative".into()));
        }
        self.family.resolve().map(|_| ())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIters,
    Stalled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartTrace {
    pub restart: usize,
    /// Stream index under the config seed that produced the start point.
    pub stream: u64,
    pub start_value: f64,
    pub final_value: f64,
    pub iterations: usize,
    pub termination: Termination,
    /// Objective after every accepted step, starting with the start value.
    #[serde(skip)]
    pub history: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub config: OptimizerConfig,
    pub best_point: FeasiblePoint,
    pub best_value: f64,
    pub best_restart: usize,
    pub bound: f64,
    pub kkt_residual: f64,
    pub trace: Vec<RestartTrace>,
}

struct RestartOutcome {
    framed: FramedPoint,
    trace: RestartTrace,
}

fn step_to(p: &FeasiblePoint, g: &TangentPair, s: f64) -> Option<FeasiblePoint> {
    let a = p.a() + &g.ga.scale_real(s);
    let b = p.b() + &g.gb.scale_real(s);
    project_to_feasible(&a, &b).ok()
}

/// Projected ascent with Armijo backtracking from one framed start point.
pub(crate) fn ascend(start: FramedPoint, cfg: &OptimizerConfig, restart: usize) -> (FramedPoint, RestartTrace) {
    let mut x = start.canonical.clone();
    let mut value = objective(&x);
    let start_value = value;
    let mut history = vec![value];
    let mut step = cfg.step_init;
    let mut termination = Termination::MaxIters;
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        iterations += 1;
        let raw = raw_gradient(&x, cfg.smoothing_eps);
        let g = project_tangent(&x, &raw.grad, &start.structure_a, &start.structure_b);
        let gn2 = g.inner(&g);
        if gn2.sqrt() <= cfg.grad_tol {
            termination = Termination::Converged;
            break;
        }
        let mut accepted = None;
        while step >= MIN_STEP {
            if let Some(cand) = step_to(&x, &g, step) {
                let v = objective(&cand);
                if v >= value + ARMIJO_C * step * gn2 {
                    accepted = Some((cand, v));
                    break;
                }
            }
            step *= cfg.step_shrink;
        }
        let Some((cand, v)) = accepted else {
            termination = if gn2.sqrt() <= ROUNDOFF_GRAD {
                Termination::Converged
            } else {
                Termination::Stalled
            };
            break;
        };
        x = cand;
        value = v;
        history.push(v);
        step = (step / cfg.step_shrink).min(MAX_STEP);
    }

    let trace = RestartTrace {
        restart,
        stream: restart as u64,
        start_value,
        final_value: value,
        iterations,
        termination,
        history,
    };
    (start.with_canonical(x), trace)
}

pub fn maximize(cfg: &OptimizerConfig) -> Result<OptimizationReport> {
    cfg.validate()?;
    let family = cfg.family.resolve()?;
    let d = cfg.family.d;
    let outcomes: Vec<Result<RestartOutcome>> = map_indexed(cfg.restarts, |r| {
        let mut rng = stream(cfg.family.rng_seed, r as u64);
        let start = family.draw(d, &mut rng)?;
        let (framed, trace) = ascend(start, cfg, r);
        Ok(RestartOutcome { framed, trace })
    });
    let outcomes: Vec<RestartOutcome> = outcomes.into_iter().collect::<Result<_>>()?;

    let best = outcomes
        .iter()
        .enumerate()
        .fold(0, |b, (i, o)| if o.trace.final_value > outcomes[b].trace.final_value { i } else { b });
    let winner = &outcomes[best].framed;
    let kkt = structured_kkt(&winner.canonical, &winner.structure_a, &winner.structure_b, cfg.smoothing_eps);
    let best_point = winner.point();
    let best_value = objective(&best_point);
    Ok(OptimizationReport {
        config: cfg.clone(),
        best_value,
        best_point,
        best_restart: best,
        bound: crate::conjecture::bound(d),
        kkt_residual: kkt.residual,
        trace: outcomes.into_iter().map(|o| o.trace).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(tag: &str, d: usize, restarts: usize, seed: u64) -> OptimizerConfig {
        OptimizerConfig::new(SamplerFamily::new(tag, d, seed), restarts)
    }

    #[test]
    fn rejects_bad_config() {
        let mut c = cfg("general", 4, 0, 1);
        assert!(maximize(&c).is_err());
        c.restarts = 1;
        c.step_shrink = 1.0;
        assert!(maximize(&c).is_err());
        assert!(maximize(&cfg("nope", 4, 1, 1)).is_err());
        assert!(maximize(&cfg("theorem2_forms", 5, 1, 1)).is_err());
    }

    #[test]
    fn traces_are_monotone_and_report_is_consistent() {
        let r = maximize(&cfg("general", 4, 4, 3)).unwrap();
        for t in &r.trace {
            assert!(t.history.windows(2).all(|w| w[1] >= w[0] - 1e-12));
            assert!(t.final_value >= t.start_value);
        }
        assert!((r.best_value - objective(&r.best_point)).abs() < 1e-10);
        assert!(r.best_value <= 0.5 + 1e-9);
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = maximize(&cfg("b_in_P", 4, 3, 11)).unwrap();
        let b = maximize(&cfg("b_in_P", 4, 3, 11)).unwrap();
        assert_eq!(a.best_value, b.best_value);
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn normal_both_respects_bound_at_d5() {
        let r = maximize(&cfg("normal_both", 5, 8, 5)).unwrap();
        assert!(r.best_value <= 11.0 / 25.0 + 1e-9);
    }
}
