//! Scan-and-bisect solver for the positive principal eigenvalue.
//!
//! The shooting residual is sampled on a uniform λ-grid; the leftmost sign
//! change is bisected down to the tolerance. A root is accepted only when
//! the reconstructed eigenfunction is positive on a fixed sample grid.

use log::{debug, warn};
use rayon::prelude::*;

use crate::characteristic::char_f;
use crate::model::{Params, Placement, SolverConfig};
use crate::propagator::{shooting_residual, Eigenfunction, StateVec};
use crate::{Error, Real, Result};

/// Sample count of the eigenfunction positivity check.
pub const POSITIVITY_SAMPLES: usize = 1001;
/// Simpson intervals per constant-weight piece in [`rayleigh_quotient`].
pub const SIMPSON_INTERVALS: usize = 10_000;

/// λ-interval scanned for the first root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralWindow<T> {
    pub lambda_min: T,
    pub lambda_max: T,
}

impl<T: Real> SpectralWindow<T> {
    /// Quarter-period window `(0, π²/(4c²κ))`, trimmed at both ends.
    pub fn new(c: T, kappa: T) -> Self {
        Self::trimmed(
            quarter_period_bound(c, kappa),
            quarter_period_bound(c, kappa),
        )
    }

    /// Half-period window `(0, π²/(c²κ))`. The principal eigenvalue always
    /// lies below `π²/(c²κ)`: the Rayleigh quotient of `sin(π(x-a)/c)` on the
    /// favourable interval (zero elsewhere) equals that value.
    pub fn extended(c: T, kappa: T) -> Self {
        Self::trimmed(
            quarter_period_bound(c, kappa),
            T::lit(4.0) * quarter_period_bound(c, kappa),
        )
    }

    fn trimmed(low_ref: T, upper: T) -> Self {
        SpectralWindow {
            lambda_min: T::lit(1e-12).max(T::lit(1e-6) * low_ref),
            lambda_max: (T::one() - T::lit(1e-9)) * upper,
        }
    }

    pub fn contains(&self, lambda: T) -> bool {
        lambda > self.lambda_min && lambda < self.lambda_max
    }

    /// `n + 1` uniform samples, endpoints included.
    pub fn grid(&self, n: usize) -> impl Iterator<Item = T> + '_ {
        let step = (self.lambda_max - self.lambda_min) / T::lit(n as f64);
        (0..=n).map(move |j| {
            if j == n {
                self.lambda_max
            } else {
                self.lambda_min + step * T::lit(j as f64)
            }
        })
    }
}

/// `π²/(4c²κ)`.
pub fn quarter_period_bound<T: Real>(c: T, kappa: T) -> T {
    T::PI() * T::PI() / (T::lit(4.0) * c * c * kappa)
}

pub fn spectral_window<T: Real>(c: T, kappa: T) -> SpectralWindow<T> {
    SpectralWindow::new(c, kappa)
}

/// λ-interval with a certified sign change of the residual (or a width-0
/// interval at an exact zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    pub r_lo: T,
    pub r_hi: T,
}

impl<T: Real> Bracket<T> {
    pub fn new(lo: T, hi: T, r_lo: T, r_hi: T) -> Result<Self> {
        let sign_change = lo < hi && r_lo * r_hi < T::zero();
        let exact_zero = lo == hi && r_lo == T::zero() && r_hi == T::zero();
        if !(sign_change || exact_zero) {
            return Err(Error::InvalidBracket {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
                r_lo: r_lo.as_f64(),
                r_hi: r_hi.as_f64(),
            });
        }
        Ok(Bracket { lo, hi, r_lo, r_hi })
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> T {
        self.lo + (self.hi - self.lo) / T::lit(2.0)
    }
}

/// Sign-change brackets of `residual` on a uniform `n_lambda` grid over `w`,
/// in increasing λ.
pub fn bracket_scan<T, F>(residual: F, w: SpectralWindow<T>, n_lambda: usize) -> Vec<Bracket<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let mut out = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for l in w.grid(n_lambda) {
        let r = residual(l);
        if r == T::zero() {
            out.push(Bracket {
                lo: l,
                hi: l,
                r_lo: r,
                r_hi: r,
            });
        } else if let Some((pl, pr)) = prev {
            if pr * r < T::zero() {
                out.push(Bracket {
                    lo: pl,
                    hi: l,
                    r_lo: pr,
                    r_hi: r,
                });
            }
        }
        prev = Some((l, r));
    }
    out
}

/// Outcome of [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection<T> {
    pub lambda: T,
    pub bracket: Bracket<T>,
    pub iterations: usize,
}

/// Bisects `b` until its width is at most `tol` and returns the midpoint.
///
/// Stops early if the floating-point midpoint coincides with an endpoint.
pub fn bisect<T, F>(residual: F, b: Bracket<T>, tol: T) -> Result<Bisection<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let mut cur = Bracket::new(b.lo, b.hi, b.r_lo, b.r_hi)?;
    let mut iterations = 0;
    while cur.width() > tol {
        let mid = cur.midpoint();
        if mid <= cur.lo || mid >= cur.hi {
            break;
        }
        let r = residual(mid);
        iterations += 1;
        if !r.is_finite() {
            return Err(Error::NonFiniteResidual {
                lambda: mid.as_f64(),
                value: r.as_f64(),
            });
        }
        if r == T::zero() {
            cur = Bracket {
                lo: mid,
                hi: mid,
                r_lo: r,
                r_hi: r,
            };
            break;
        }
        if (r < T::zero()) == (cur.r_lo < T::zero()) {
            cur.lo = mid;
            cur.r_lo = r;
        } else {
            cur.hi = mid;
            cur.r_hi = r;
        }
    }
    Ok(Bisection {
        lambda: cur.midpoint(),
        bracket: cur,
        iterations,
    })
}

/// Brackets found by the refinement policy, with the window they live in.
#[derive(Debug, Clone)]
pub struct ScanOutcome<T> {
    pub window: SpectralWindow<T>,
    pub brackets: Vec<Bracket<T>>,
    pub n_lambda: usize,
    /// Whether the half-period window had to be used.
    pub extended: bool,
}

/// Scans the quarter-period window, doubling the grid up to `max_refine`
/// times, then lowering `lambda_min` by 10³, then falling back to the
/// half-period window.
pub fn find_brackets<T, F>(
    residual: &F,
    p: &Params<T>,
    cfg: &SolverConfig<T>,
) -> Result<ScanOutcome<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let mut window = SpectralWindow::new(p.c, p.kappa);
    let mut n = cfg.n_lambda;
    let mut brackets = bracket_scan(residual, window, n);
    let mut refinements = 0;
    while brackets.is_empty() && refinements < cfg.max_refine {
        n *= 2;
        refinements += 1;
        brackets = bracket_scan(residual, window, n);
    }
    if brackets.is_empty() {
        window.lambda_min = window.lambda_min / T::lit(1e3);
        brackets = bracket_scan(residual, window, n);
    }
    if !brackets.is_empty() {
        return Ok(ScanOutcome {
            window,
            brackets,
            n_lambda: n,
            extended: false,
        });
    }
    let window = SpectralWindow::extended(p.c, p.kappa);
    let n = 4 * cfg.n_lambda;
    let brackets = bracket_scan(residual, window, n);
    if brackets.is_empty() {
        return Err(Error::NoBracket(cfg.max_refine));
    }
    debug!("no root below the quarter-period bound; used the half-period window");
    Ok(ScanOutcome {
        window,
        brackets,
        n_lambda: n,
        extended: true,
    })
}

/// A computed principal eigenvalue with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResult<T> {
    pub lambda: T,
    pub bracket: Bracket<T>,
    pub iterations: usize,
    /// `|f(a, β₀, β₁, κ, λ)|` at the returned λ.
    pub char_f_residual: T,
    pub positive_ok: bool,
    /// Window the root was found in.
    pub window: SpectralWindow<T>,
    pub extended_window: bool,
    /// Number of leftward roots rejected for a non-positive eigenfunction.
    pub rejected_roots: usize,
}

pub fn principal_eigenvalue<T: Real>(
    a: Placement<T>,
    p: &Params<T>,
    cfg: &SolverConfig<T>,
) -> Result<EigenResult<T>> {
    let cfg = cfg.validate()?;
    let residual = |l: T| shooting_residual(a, p, l).unwrap_or(T::nan());
    let scan = find_brackets(&residual, p, &cfg)?;
    for (k, b) in scan.brackets.iter().enumerate() {
        let bis = bisect(residual, *b, cfg.tol)?;
        let ef = Eigenfunction::new(a, p, bis.lambda)?;
        if ef.is_positive_on_grid(POSITIVITY_SAMPLES)? {
            if k > 0 {
                warn!(
                    "a = {}: rejected {k} root(s) below lambda = {} with sign-changing eigenfunction",
                    a.a(),
                    bis.lambda
                );
            }
            return Ok(EigenResult {
                lambda: bis.lambda,
                bracket: bis.bracket,
                iterations: bis.iterations,
                char_f_residual: char_f(a, p, bis.lambda).abs(),
                positive_ok: true,
                window: scan.window,
                extended_window: scan.extended,
                rejected_roots: k,
            });
        }
    }
    Err(Error::NoPositiveEigenfunction(scan.brackets.len()))
}

/// One point of the curve `a ↦ λ(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    pub a: T,
    pub lambda: T,
}

/// Eigenvalues on the uniform `n_a` grid over `[0, 1-c]`, with full results.
/// Placements are solved in parallel and returned in grid order.
pub fn solve_curve<T: Real>(
    p: &Params<T>,
    cfg: &SolverConfig<T>,
) -> Result<Vec<(Placement<T>, EigenResult<T>)>> {
    let cfg = cfg.validate()?;
    (0..cfg.n_a)
        .into_par_iter()
        .map(|j| {
            let a = Placement::grid_point(p, j, cfg.n_a);
            principal_eigenvalue(a, p, &cfg).map(|r| (a, r))
        })
        .collect()
}

pub fn lambda_curve<T: Real>(p: &Params<T>, cfg: &SolverConfig<T>) -> Result<Vec<CurvePoint<T>>> {
    Ok(solve_curve(p, cfg)?
        .into_iter()
        .map(|(a, r)| CurvePoint {
            a: a.a(),
            lambda: r.lambda,
        })
        .collect())
}

/// `(∫|φ'|² + β₀φ(0)² + β₁φ(1)²) / ∫mφ²` by composite Simpson on each
/// constant-weight piece.
pub fn rayleigh_quotient<T, F>(phi: F, a: Placement<T>, p: &Params<T>) -> Result<T>
where
    T: Real,
    F: Fn(T) -> Result<StateVec<T>>,
{
    let pieces = [
        (T::zero(), a.a(), -T::one()),
        (a.a(), a.b(p), p.kappa),
        (a.b(p), T::one(), -T::one()),
    ];
    let n = SIMPSON_INTERVALS;
    let mut grad = T::zero();
    let mut weighted = T::zero();
    for (x0, x1, m) in pieces {
        if x1 <= x0 {
            continue;
        }
        let h = (x1 - x0) / T::lit(n as f64);
        let (mut sg, mut sw) = (T::zero(), T::zero());
        for i in 0..=n {
            let x = if i == n {
                x1
            } else {
                x0 + h * T::lit(i as f64)
            };
            let w = phi(x)?;
            let coef = if i == 0 || i == n {
                T::one()
            } else if i % 2 == 1 {
                T::lit(4.0)
            } else {
                T::lit(2.0)
            };
            sg = sg + coef * w.du * w.du;
            sw = sw + coef * w.u * w.u;
        }
        grad = grad + sg * h / T::lit(3.0);
        weighted = weighted + m * sw * h / T::lit(3.0);
    }
    if !(weighted > T::zero()) {
        return Err(Error::NonPositiveWeightedNorm(weighted.as_f64()));
    }
    let u0 = phi(T::zero())?.u;
    let u1 = phi(T::one())?.u;
    Ok((grad + p.beta0 * u0 * u0 + p.beta1 * u1 * u1) / weighted)
}

/// `|Rayleigh quotient − λ̂| / λ̂` on the reconstructed eigenfunction.
pub fn rayleigh_check<T: Real>(
    a: Placement<T>,
    p: &Params<T>,
    result: &EigenResult<T>,
) -> Result<T> {
    let ef = Eigenfunction::new(a, p, result.lambda)?;
    let q = rayleigh_quotient(|x| ef.eval(x), a, p)?;
    Ok((q - result.lambda).abs() / result.lambda)
}

/// Boundary closure, positivity and Rayleigh consistency of an accepted pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenpairQuality<T> {
    /// `|u'(1) + β₁u(1)| / (1 + |u(1)|)`.
    pub boundary_defect: T,
    pub positive: bool,
    pub rayleigh_rel_err: T,
}

impl<T: Real> EigenpairQuality<T> {
    pub fn passes(&self, boundary_tol: T, rayleigh_tol: T) -> bool {
        self.positive
            && self.boundary_defect <= boundary_tol
            && self.rayleigh_rel_err <= rayleigh_tol
    }
}

pub fn eigenpair_quality<T: Real>(
    a: Placement<T>,
    p: &Params<T>,
    result: &EigenResult<T>,
) -> Result<EigenpairQuality<T>> {
    let ef = Eigenfunction::new(a, p, result.lambda)?;
    let (defect, u1) = ef.right_boundary_defect()?;
    Ok(EigenpairQuality {
        boundary_defect: defect.abs() / (T::one() + u1.abs()),
        positive: ef.is_positive_on_grid(POSITIVITY_SAMPLES)?,
        rayleigh_rel_err: rayleigh_check(a, p, result)?,
    })
}
