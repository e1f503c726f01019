//! Time stepping and conservation diagnostics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rhs::{rhs_naive, FastRhs};
use crate::error::{Error, Result};
use crate::field::{energy, enstrophy, ModeField, REALITY_TOLERANCE};

pub const MIDPOINT_TOLERANCE: f64 = 1e-13;
pub const MIDPOINT_MAX_ITERATIONS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    Rk4,
    ImplicitMidpoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RhsMethod {
    #[default]
    Fast,
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub scheme: Scheme,
    /// Any finite non-zero value; negative steps run backwards in time.
    pub dt: f64,
    pub steps: usize,
    /// Diagnostics are taken every `record_every` steps and at the end.
    pub record_every: usize,
    #[serde(default)]
    pub rhs: RhsMethod,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            scheme: Scheme::Rk4,
            dt: 1e-3,
            steps: 1000,
            record_every: 10,
            rhs: RhsMethod::Fast,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.dt.is_finite() || self.dt == 0.0 {
            return Err(Error::Config(format!(
                "dt must be finite and non-zero, got {}",
                self.dt
            )));
        }
        if self.record_every == 0 {
            return Err(Error::Config("record_every must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimState {
    pub time: f64,
    pub field: ModeField,
}

impl SimState {
    pub fn new(field: ModeField) -> Self {
        SimState { time: 0.0, field }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub time: f64,
    pub energy: f64,
    pub enstrophy: f64,
    pub drift_energy: f64,
    pub drift_enstrophy: f64,
}

/// Relative drift, or absolute drift when the reference is exactly zero.
pub fn drift(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        (value - reference).abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

/// Stepper with a cached FFT plan.
#[derive(Clone, Debug)]
pub struct Integrator {
    config: IntegratorConfig,
    fast: FastRhs,
}

fn axpy(base: &ModeField, scale: f64, dir: &ModeField) -> ModeField {
    let out = base
        .coefficients()
        .iter()
        .zip(dir.coefficients())
        .map(|(a, b)| a + b * scale)
        .collect();
    ModeField::from_coefficients(base.grid(), out).expect("same grid")
}

impl Integrator {
    pub fn new(grid: crate::grid::TruncationGrid, config: IntegratorConfig) -> Result<Self> {
        config.validate()?;
        Ok(Integrator {
            config,
            fast: FastRhs::new(grid),
        })
    }

    pub fn config(&self) -> &IntegratorConfig {
        &self.config
    }

    pub fn tendency(&self, field: &ModeField) -> ModeField {
        match self.config.rhs {
            RhsMethod::Fast => self.fast.tendency(field),
            RhsMethod::Naive => rhs_naive(field),
        }
    }

    fn rk4(&self, y: &ModeField) -> ModeField {
        let dt = self.config.dt;
        let k1 = self.tendency(y);
        let k2 = self.tendency(&axpy(y, 0.5 * dt, &k1));
        let k3 = self.tendency(&axpy(y, 0.5 * dt, &k2));
        let k4 = self.tendency(&axpy(y, dt, &k3));
        let out = y
            .coefficients()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let incr: Complex64 = k1.coefficients()[i]
                    + k2.coefficients()[i] * 2.0
                    + k3.coefficients()[i] * 2.0
                    + k4.coefficients()[i];
                c + incr * (dt / 6.0)
            })
            .collect();
        ModeField::from_coefficients(y.grid(), out).expect("same grid")
    }

    /// Fixed-point iteration on `Y = y + dt f((y + Y) / 2)`.
    fn midpoint(&self, y: &ModeField) -> Result<ModeField> {
        let dt = self.config.dt;
        let scale = y.max_abs();
        let mut next = axpy(y, dt, &self.tendency(y));
        let mut last_update = f64::INFINITY;
        for _ in 0..MIDPOINT_MAX_ITERATIONS {
            let mid = axpy(y, 0.5, &axpy(&next, -1.0, y));
            let candidate = axpy(y, dt, &self.tendency(&mid));
            last_update = candidate.max_abs_diff(&next);
            next = candidate;
            if !last_update.is_finite() {
                break;
            }
            if last_update <= MIDPOINT_TOLERANCE * scale {
                return Ok(next);
            }
        }
        Err(Error::NonConvergence {
            iterations: MIDPOINT_MAX_ITERATIONS,
            last_update,
        })
    }

    /// One step; on failure the input state is untouched.
    pub fn step(&self, state: &SimState) -> Result<SimState> {
        let field = match self.config.scheme {
            Scheme::Rk4 => self.rk4(&state.field),
            Scheme::ImplicitMidpoint => self.midpoint(&state.field)?,
        };
        Ok(SimState {
            time: state.time + self.config.dt,
            field,
        })
    }

    /// Runs `steps` steps, recording diagnostics at step 0, every
    /// `record_every` steps and at the final step.
    pub fn integrate(&self, initial: &SimState) -> Result<(SimState, Vec<DiagnosticsRecord>)> {
        let h0 = energy(&initial.field)?;
        let e0 = enstrophy(&initial.field)?;
        let record = |s: &SimState| -> Result<DiagnosticsRecord> {
            s.field.validate_reality(REALITY_TOLERANCE)?;
            let h = energy(&s.field)?;
            let e = enstrophy(&s.field)?;
            Ok(DiagnosticsRecord {
                time: s.time,
                energy: h,
                enstrophy: e,
                drift_energy: drift(h, h0),
                drift_enstrophy: drift(e, e0),
            })
        };
        let mut records = vec![record(initial)?];
        let mut state = initial.clone();
        for s in 1..=self.config.steps {
            state = self.step(&state)?;
            // no accumulated round-off in the clock
            state.time = initial.time + s as f64 * self.config.dt;
            if s % self.config.record_every == 0 || s == self.config.steps {
                records.push(record(&state)?);
            }
        }
        Ok((state, records))
    }
}

pub fn step(state: &SimState, config: &IntegratorConfig) -> Result<SimState> {
    Integrator::new(state.field.grid(), *config)?.step(state)
}

pub fn integrate(
    state: &SimState,
    config: &IntegratorConfig,
) -> Result<(SimState, Vec<DiagnosticsRecord>)> {
    Integrator::new(state.field.grid(), *config)?.integrate(state)
}

/// Largest drift of either invariant over a run.
pub fn max_drift(records: &[DiagnosticsRecord]) -> (f64, f64) {
    records.iter().fold((0.0f64, 0.0f64), |(h, e), r| {
        (h.max(r.drift_energy), e.max(r.drift_enstrophy))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::init::random_shell_field;
    use crate::grid::{build_grid, WaveVector};

    fn config(scheme: Scheme, dt: f64, steps: usize) -> IntegratorConfig {
        IntegratorConfig {
            scheme,
            dt,
            steps,
            record_every: 50,
            rhs: RhsMethod::Fast,
        }
    }

    #[test]
    fn rejects_bad_config() {
        let g = build_grid(5).unwrap();
        let s = SimState::new(ModeField::zeros(g));
        assert!(step(&s, &config(Scheme::Rk4, 0.0, 1)).is_err());
        assert!(step(&s, &config(Scheme::Rk4, f64::NAN, 1)).is_err());
        let mut c = config(Scheme::Rk4, 0.1, 1);
        c.record_every = 0;
        assert!(integrate(&s, &c).is_err());
    }

    #[test]
    fn zero_field_stays_zero() {
        let g = build_grid(5).unwrap();
        let s = SimState::new(ModeField::zeros(g));
        for scheme in [Scheme::Rk4, Scheme::ImplicitMidpoint] {
            let (end, recs) = integrate(&s, &config(scheme, 0.1, 20)).unwrap();
            assert_eq!(end.field.max_abs(), 0.0);
            assert!(recs.iter().all(|r| r.drift_energy == 0.0));
        }
    }

    #[test]
    fn single_pair_is_steady() {
        let g = build_grid(9).unwrap();
        let mut f = ModeField::zeros(g);
        f.set_pair(WaveVector::new(2, 1), Complex64::new(0.4, -0.7))
            .unwrap();
        let s = SimState::new(f.clone());
        for scheme in [Scheme::Rk4, Scheme::ImplicitMidpoint] {
            let (end, _) = integrate(&s, &config(scheme, 1e-2, 100)).unwrap();
            assert!(end.field.max_abs_diff(&f) <= 1e-13);
        }
    }

    #[test]
    fn records_cover_start_and_end() {
        let g = build_grid(5).unwrap();
        let s = SimState::new(random_shell_field(g, 1, 8, 1.0, 3));
        let mut c = config(Scheme::Rk4, 1e-2, 23);
        c.record_every = 10;
        let (end, recs) = integrate(&s, &c).unwrap();
        let times: Vec<f64> = recs.iter().map(|r| r.time).collect();
        assert_eq!(times.len(), 4);
        assert_eq!(times[0], 0.0);
        assert!((end.time - 0.23).abs() < 1e-12);
        assert!((times[3] - 0.23).abs() < 1e-12);
    }

    #[test]
    fn midpoint_is_reversible() {
        let g = build_grid(7).unwrap();
        let s = SimState::new(random_shell_field(g, 1, 18, 1.0, 11));
        let (fwd, _) = integrate(&s, &config(Scheme::ImplicitMidpoint, 1e-2, 50)).unwrap();
        let (back, _) = integrate(&fwd, &config(Scheme::ImplicitMidpoint, -1e-2, 50)).unwrap();
        assert!(back.field.max_abs_diff(&s.field) <= 1e-9 * s.field.max_abs());
    }

    #[test]
    fn midpoint_failure_reports_non_convergence() {
        let g = build_grid(7).unwrap();
        let s = SimState::new(random_shell_field(g, 1, 18, 1e4, 2));
        let before = s.clone();
        let err = step(&s, &config(Scheme::ImplicitMidpoint, 1.0, 1)).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
        assert_eq!(s, before);
    }

    #[test]
    fn naive_and_fast_steppers_agree() {
        let g = build_grid(7).unwrap();
        let s = SimState::new(random_shell_field(g, 1, 18, 1.0, 4));
        let mut c = config(Scheme::Rk4, 1e-2, 10);
        let (a, _) = integrate(&s, &c).unwrap();
        c.rhs = RhsMethod::Naive;
        let (b, _) = integrate(&s, &c).unwrap();
        assert!(a.field.max_abs_diff(&b.field) <= 1e-12 * s.field.max_abs());
    }
}
