//! Problem-instance and configuration types.

use std::path::PathBuf;

use crate::{Error, Real, Result};

/// A problem instance: favourable length fraction `c`, weight amplitude
/// `kappa`, and the Robin parameters at `x = 0` and `x = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params<T> {
    pub c: T,
    pub kappa: T,
    pub beta0: T,
    pub beta1: T,
}

impl<T: Real> Params<T> {
    pub fn new(c: T, kappa: T, beta0: T, beta1: T) -> Result<Self> {
        validate_params(Params {
            c,
            kappa,
            beta0,
            beta1,
        })
    }

    /// Same instance with the Robin parameters exchanged, i.e. the image of
    /// the problem under `x ↦ 1 - x`.
    pub fn reflected(&self) -> Self {
        Params {
            beta0: self.beta1,
            beta1: self.beta0,
            ..*self
        }
    }

    /// Largest admissible placement, `1 - c`.
    pub fn a_max(&self) -> T {
        T::one() - self.c
    }
}

/// Checks the instance invariants and returns it unchanged on success.
pub fn validate_params<T: Real>(p: Params<T>) -> Result<Params<T>> {
    // written so that NaN fails every check
    if !(p.c > T::zero() && p.c < T::one()) {
        return Err(Error::COutOfRange(p.c.as_f64()));
    }
    if !(p.kappa > T::zero()) || !p.kappa.is_finite() {
        return Err(Error::KappaNonPositive(p.kappa.as_f64()));
    }
    for (name, value) in [("beta0", p.beta0), ("beta1", p.beta1)] {
        if !(value >= T::zero()) || !value.is_finite() {
            return Err(Error::NegativeRobin {
                name,
                value: value.as_f64(),
            });
        }
    }
    if p.beta0 == T::zero() && p.beta1 == T::zero() {
        return Err(Error::NeumannPair);
    }
    Ok(p)
}

/// Left endpoint `a` of the favourable interval `(a, a + c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement<T> {
    a: T,
}

impl<T: Real> Placement<T> {
    pub fn new(a: T, p: &Params<T>) -> Result<Self> {
        let max = p.a_max();
        if !(a >= T::zero() && a <= max) {
            return Err(Error::PlacementOutOfRange {
                a: a.as_f64(),
                max: max.as_f64(),
            });
        }
        Ok(Placement { a })
    }

    pub fn a(&self) -> T {
        self.a
    }

    /// Right endpoint `b = a + c`.
    pub fn b(&self, p: &Params<T>) -> T {
        (self.a + p.c).min(T::one())
    }

    /// Length of the unfavourable piece `(b, 1)`, clamped at zero.
    pub fn right_length(&self, p: &Params<T>) -> T {
        (p.a_max() - self.a).max(T::zero())
    }

    /// Mirror placement `1 - c - a`.
    pub fn reflected(&self, p: &Params<T>) -> Self {
        Placement {
            a: (p.a_max() - self.a).max(T::zero()),
        }
    }

    /// Bang-bang weight `m(x)`: `κ` on `(a, a + c)`, `-1` elsewhere.
    pub fn weight(&self, p: &Params<T>, x: T) -> T {
        if x > self.a && x < self.b(p) {
            p.kappa
        } else {
            -T::one()
        }
    }

    /// `j`-th point of the uniform `n`-point grid on `[0, 1 - c]`.
    pub fn grid_point(p: &Params<T>, j: usize, n: usize) -> Self {
        debug_assert!(n >= 2 && j < n);
        let frac = T::lit(j as f64) / T::lit((n - 1) as f64);
        Placement {
            a: p.a_max() * frac,
        }
    }
}

/// Settings of the scan-and-bisect eigenvalue solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Number of scan subintervals on the λ-window.
    pub n_lambda: usize,
    /// Absolute bisection tolerance on λ.
    pub tol: T,
    /// Number of placements on the a-grid.
    pub n_a: usize,
    /// Maximum number of scan-grid doublings before giving up.
    pub max_refine: usize,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        SolverConfig {
            n_lambda: 900,
            tol: T::lit(1e-10),
            n_a: 81,
            max_refine: 5,
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn validate(self) -> Result<Self> {
        if self.n_lambda < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_lambda must be >= 2, got {}",
                self.n_lambda
            )));
        }
        if !(self.tol > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.n_a < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_a must be >= 2, got {}",
                self.n_a
            )));
        }
        Ok(self)
    }
}

/// Batch-verification settings. Always `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub beta_min: f64,
    pub beta_max: f64,
    pub n_beta: usize,
    pub c: f64,
    pub kappa: f64,
    pub solver: SolverConfig<f64>,
    pub out_csv: PathBuf,
    pub fig_dir: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            beta_min: 0.2,
            beta_max: 8.0,
            n_beta: 10,
            c: 0.3,
            kappa: 2.0,
            solver: SolverConfig::default(),
            out_csv: PathBuf::from("sweep.csv"),
            fig_dir: PathBuf::from("figures"),
        }
    }
}

impl SweepConfig {
    pub fn validate(self) -> Result<Self> {
        if !(self.beta_min >= 0.0 && self.beta_min < self.beta_max) || !self.beta_max.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "need 0 <= beta_min < beta_max, got [{}, {}]",
                self.beta_min, self.beta_max
            )));
        }
        if self.n_beta < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_beta must be >= 2, got {}",
                self.n_beta
            )));
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::COutOfRange(self.c));
        }
        if !(self.kappa > 0.0) {
            return Err(Error::KappaNonPositive(self.kappa));
        }
        self.solver.validate()?;
        Ok(self)
    }

    /// Endpoint-inclusive uniform β-grid.
    pub fn beta_grid(&self) -> Vec<f64> {
        let step = (self.beta_max - self.beta_min) / (self.n_beta - 1) as f64;
        (0..self.n_beta)
            .map(|i| {
                if i + 1 == self.n_beta {
                    self.beta_max
                } else {
                    self.beta_min + i as f64 * step
                }
            })
            .collect()
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("line {}: expected key = value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::InvalidConfig(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        fn num<V: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<V, String> {
            value
                .parse()
                .map_err(|_| format!("cannot parse {key} = {value:?}"))
        }
        match key {
            "beta_min" => self.beta_min = num(key, value)?,
            "beta_max" => self.beta_max = num(key, value)?,
            "n_beta" => self.n_beta = num(key, value)?,
            "c" => self.c = num(key, value)?,
            "kappa" => self.kappa = num(key, value)?,
            "n_lambda" => self.solver.n_lambda = num(key, value)?,
            "tol" => self.solver.tol = num(key, value)?,
            "n_a" => self.solver.n_a = num(key, value)?,
            "max_refine" => self.solver.max_refine = num(key, value)?,
            "out_csv" => self.out_csv = PathBuf::from(value),
            "fig_dir" => self.fig_dir = PathBuf::from(value),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }
}
