//! Fixed-step Grünwald-Letnikov integration of incommensurate
//! fractional-order systems, with optional short-memory truncation.
//!
//! The derivative `D^q x` is discretized by the binomial convolution
//! `h^-q sum_j c_j x(t_{k-j})` with `c_0 = 1`,
//! `c_j = (1 - (1+q)/j) c_{j-1}`. The explicit update reads
//!
//! ```text
//! x(t_k) = f(x(t_{k-1})) h^q - sum_{j=1..J_k} c_j x(t_{k-j})
//! ```
//!
//! Initial conditions are handled in the Caputo sense: the convolution
//! acts on the deviation `x(t) - x(0)`, which reduces to the formula above
//! verbatim for zero initial state and reproduces the Mittag-Leffler
//! relaxation solution for nonzero initial state.

use crate::error::{Error, Result};
use crate::field::PolynomialVectorField;
use crate::lti::{to_state_space, StateSpace};
use crate::orders::PseudoPolynomial;

/// State magnitude beyond which a simulation is flagged divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e8;

/// Fixed-step simulation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Step size in seconds.
    pub h: f64,
    /// Final time in seconds.
    pub t_end: f64,
    /// Short-memory window length in seconds; `None` keeps full memory.
    pub memory: Option<f64>,
    /// Initial state.
    pub x0: Vec<f64>,
}

impl SimConfig {
    pub fn validate(&self, dim: usize) -> Result<()> {
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::InvalidInput(format!("step h = {} must be positive", self.h)));
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidInput(format!(
                "t_end = {} must be positive",
                self.t_end
            )));
        }
        if self.h > self.t_end {
            return Err(Error::InvalidInput(format!(
                "step h = {} exceeds t_end = {}",
                self.h, self.t_end
            )));
        }
        if let Some(mem) = self.memory {
            if mem < 10.0 * self.h {
                return Err(Error::InvalidInput(format!(
                    "short-memory window {mem} shorter than 10 steps"
                )));
            }
        }
        if self.x0.len() != dim {
            return Err(Error::InvalidInput(format!(
                "initial state of length {} for a {dim}-dimensional system",
                self.x0.len()
            )));
        }
        if self.x0.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("initial state has non-finite entries".into()));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (self.t_end / self.h).round().max(1.0) as usize
    }

    fn window_steps(&self, total: usize) -> usize {
        match self.memory {
            Some(mem) => ((mem / self.h).floor() as usize).min(total).max(1),
            None => total,
        }
    }
}

/// Simulation output: uniform time grid, state matrix, divergence flag.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Row k holds the state at `times[k]`; n columns.
    pub states: Vec<Vec<f64>>,
    /// Step index at which divergence was detected, if any; the trajectory
    /// is truncated there.
    pub diverged_at: Option<usize>,
}

impl Trajectory {
    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, |row| row.len())
    }

    /// Value of state `i` at the grid point closest to `t`.
    pub fn state_at(&self, t: f64, i: usize) -> Option<f64> {
        if self.times.is_empty() {
            return None;
        }
        let h = if self.times.len() > 1 { self.times[1] - self.times[0] } else { 1.0 };
        let k = ((t - self.times[0]) / h).round() as usize;
        self.states.get(k).map(|row| row[i])
    }
}

/// Binomial convolution weights `c_0..c_N` for order `q`.
pub fn gl_coeffs(q: f64, n: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n + 1);
    c.push(1.0);
    for j in 1..=n {
        let prev = c[j - 1];
        c.push((1.0 - (1.0 + q) / j as f64) * prev);
    }
    c
}

/// Shared stepping kernel over the deviation from the initial state.
/// `f(x, k, out)` evaluates the right-hand side at the absolute state `x`
/// for the update from step `k-1` to `k`.
fn run<F>(orders: &[f64], cfg: &SimConfig, mut f: F) -> Trajectory
where
    F: FnMut(&[f64], usize, &mut [f64]),
{
    let n = orders.len();
    let total = cfg.steps();
    let window = cfg.window_steps(total);
    let coeffs: Vec<Vec<f64>> = orders.iter().map(|&q| gl_coeffs(q, window)).collect();
    let h_pow: Vec<f64> = orders.iter().map(|&q| cfg.h.powf(q)).collect();

    // z is the deviation x - x0; one contiguous history column per state
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let mut col = Vec::with_capacity(total + 1);
            col.push(0.0);
            col
        })
        .collect();
    let mut times = Vec::with_capacity(total + 1);
    times.push(0.0);
    let mut diverged_at = None;

    let mut x_abs = cfg.x0.clone();
    let mut rhs = vec![0.0; n];
    for k in 1..=total {
        for i in 0..n {
            x_abs[i] = cols[i][k - 1] + cfg.x0[i];
        }
        f(&x_abs, k, &mut rhs);
        let j_max = k.min(window);
        let mut out_of_range = false;
        for i in 0..n {
            let ci = &coeffs[i];
            let col = &cols[i];
            let mut conv = 0.0;
            for j in 1..=j_max {
                conv += ci[j] * col[k - j];
            }
            let z = rhs[i] * h_pow[i] - conv;
            let value = z + cfg.x0[i];
            if !value.is_finite() || value.abs() > DIVERGENCE_THRESHOLD {
                out_of_range = true;
            }
            cols[i].push(z);
        }
        times.push(k as f64 * cfg.h);
        if out_of_range {
            diverged_at = Some(k);
            break;
        }
    }

    let states = (0..times.len())
        .map(|k| (0..n).map(|i| cols[i][k] + cfg.x0[i]).collect())
        .collect();
    Trajectory { times, states, diverged_at }
}

/// Simulates `D^{q_i} x_i = f_i(x)` from `cfg.x0`.
pub fn simulate(field: &PolynomialVectorField, cfg: &SimConfig) -> Result<Trajectory> {
    cfg.validate(field.dim())?;
    let orders: Vec<f64> = field.orders().iter().map(|q| q.as_f64()).collect();
    Ok(run(&orders, cfg, |x, _, out| field.eval(x, out)))
}

/// Input applied to a simulated LTI system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Zero,
    /// Unit impulse approximated by a pulse of height `1/h` at the first step.
    Impulse,
    Step,
}

impl InputKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InputKind::Zero => "zero",
            InputKind::Impulse => "impulse",
            InputKind::Step => "step",
        }
    }
}

/// Simulates the companion state-space form of a characteristic
/// polynomial driven by the chosen input; the output `y` is state `x_1`.
pub fn simulate_lti(den: &PseudoPolynomial, input: InputKind, cfg: &SimConfig) -> Result<Trajectory> {
    let ss = to_state_space(den)?;
    simulate_state_space(&ss, input, cfg)
}

/// Simulates an explicit state-space model with the GL kernel.
pub fn simulate_state_space(ss: &StateSpace, input: InputKind, cfg: &SimConfig) -> Result<Trajectory> {
    let n = ss.dim();
    cfg.validate(n)?;
    let orders: Vec<f64> = ss.q.iter().map(|q| q.as_f64()).collect();
    let h = cfg.h;
    Ok(run(&orders, cfg, |x, k, out| {
        let u = match input {
            InputKind::Zero => 0.0,
            InputKind::Impulse => {
                if k == 1 {
                    1.0 / h
                } else {
                    0.0
                }
            }
            InputKind::Step => 1.0,
        };
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += ss.a[(i, j)] * x[j];
            }
            out[i] = acc + ss.b[(i, 0)] * u;
        }
    }))
}
