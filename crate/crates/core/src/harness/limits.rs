use crate::characteristic::{limit_root, LimitKind};
use crate::eigensolver::{principal_eigenvalue, SpectralWindow};
use crate::{Params, Placement, Result, SolverConfig};

/// Small and large Robin values standing in for the Neumann and Dirichlet limits.
pub const NEAR_NEUMANN: f64 = 1e-6;
pub const NEAR_DIRICHLET: f64 = 1e6;

/// One comparison of two eigenvalue estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
}

impl LimitCheck {
    pub fn diff(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    pub fn passed(&self) -> bool {
        self.diff() <= self.tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub c: f64,
    pub kappa: f64,
    pub a: f64,
    pub checks: Vec<LimitCheck>,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LimitCheck::passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("c = {}, kappa = {}, a = {}\n", self.c, self.kappa, self.a);
        for ch in &self.checks {
            s.push_str(&format!(
                "{:<28} {:.12} vs {:.12}  diff {:.3e}  tol {:.0e}  {}\n",
                ch.name,
                ch.lhs,
                ch.rhs,
                ch.diff(),
                ch.tol,
                if ch.passed() { "ok" } else { "FAIL" }
            ));
        }
        s
    }
}

/// Root of a limit equation on the extended window, scanned at the solver's
/// extended resolution.
pub fn limit_eigenvalue(
    kind: LimitKind,
    a: f64,
    c: f64,
    kappa: f64,
    cfg: &SolverConfig,
) -> Result<f64> {
    let w = SpectralWindow::extended(c, kappa);
    limit_root(kind, a, c, kappa, w, 4 * cfg.n_lambda, cfg.tol)
}

/// Compares shooting eigenvalues at tiny and huge Robin values with the
/// Neumann and Dirichlet limit equations; at `a = 0` also compares the general
/// limit equations with the left-placement forms.
pub fn verify_limits(c: f64, kappa: f64, a: f64, cfg: &SolverConfig) -> Result<LimitReport> {
    let cfg = cfg.validate()?;
    let shoot = |beta: f64| -> Result<f64> {
        let p = Params::new(c, kappa, beta, beta)?;
        let pl = Placement::new(a, &p)?;
        Ok(principal_eigenvalue(pl, &p, &cfg)?.lambda)
    };
    let neumann = limit_eigenvalue(LimitKind::Neumann, a, c, kappa, &cfg)?;
    let dirichlet = limit_eigenvalue(LimitKind::Dirichlet, a, c, kappa, &cfg)?;
    let mut checks = vec![
        LimitCheck {
            name: format!("shooting(beta={NEAR_NEUMANN:e}) ~ neumann"),
            lhs: shoot(NEAR_NEUMANN)?,
            rhs: neumann,
            tol: 1e-5,
        },
        LimitCheck {
            name: format!("shooting(beta={NEAR_DIRICHLET:e}) ~ dirichlet"),
            lhs: shoot(NEAR_DIRICHLET)?,
            rhs: dirichlet,
            tol: 1e-4,
        },
    ];
    if a == 0.0 {
        checks.push(LimitCheck {
            name: "neumann ~ lou_neumann".into(),
            lhs: neumann,
            rhs: limit_eigenvalue(LimitKind::LouNeumann, a, c, kappa, &cfg)?,
            tol: 1e-10,
        });
        checks.push(LimitCheck {
            name: "dirichlet ~ lou_dirichlet".into(),
            lhs: dirichlet,
            rhs: limit_eigenvalue(LimitKind::LouDirichlet, a, c, kappa, &cfg)?,
            tol: 1e-10,
        });
    }
    Ok(LimitReport {
        c,
        kappa,
        a,
        checks,
    })
}
