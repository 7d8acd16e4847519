//! Closed-form characteristic function `f(a, β₀, β₁, κ, λ)` and its
//! companions: the sign function `g` of `∂ₐf`, the coefficients `A(a)`,
//! `B(a)` of `∂_{β₁}f = A β₀ + B`, the bound `h`, the critical length `c*`,
//! the bound on `β₀*`, and the Neumann/Dirichlet limit equations.
//!
//! These are evaluated independently of the transfer-matrix route and serve
//! as its oracle: `f` vanishes exactly where the shooting residual does.

use crate::eigensolver::{self, Bracket, SpectralWindow};
use crate::model::{Params, Placement, SolverConfig};
use crate::{Error, Real, Result};

/// Number of λ samples used for `h_max`.
pub const H_SAMPLES: usize = 256;

/// Relative size below which a denominator is treated as a pole.
const POLE_RATIO: f64 = 1e-10;

/// `f(a, β₀, β₁, κ, λ)`.
pub fn char_f<T: Real>(a: Placement<T>, p: &Params<T>, lambda: T) -> T {
    char_f_raw(a.a(), p.c, p.kappa, p.beta0, p.beta1, lambda)
}

/// `f` without placement validation; used for the Neumann pair and for
/// finite differences in `a` or `β₁`.
pub fn char_f_raw<T: Real>(a: T, c: T, kappa: T, beta0: T, beta1: T, lambda: T) -> T {
    let one = T::one();
    let two = T::lit(2.0);
    let sl = lambda.sqrt();
    let slk = (lambda * kappa).sqrt();
    let (sin, cos) = (slk * c).sin_cos();
    let shift = sl * (two * a + c - one);
    let outer = sl * (one - c);
    let prod = beta0 * beta1;
    let sum = beta0 + beta1;

    (kappa + one) * (lambda - prod) * shift.cosh() * sin
        + (kappa + one) * (beta0 - beta1) * sl * shift.sinh() * sin
        + outer.cosh() * ((kappa - one) * (lambda + prod) * sin - two * slk * sum * cos)
        + outer.sinh()
            * ((kappa - one) * sum * sl * sin - two * kappa.sqrt() * (prod + lambda) * cos)
}

/// `g(a) = (λ - β₀β₁) tanh(2√λ (a - (1-c)/2)) + √λ (β₀ - β₁)`, which carries
/// the sign of `∂ₐf` on the window.
pub fn char_g<T: Real>(a: T, beta0: T, beta1: T, lambda: T, c: T) -> T {
    let sl = lambda.sqrt();
    let half = (T::one() - c) / T::lit(2.0);
    (lambda - beta0 * beta1) * (T::lit(2.0) * sl * (a - half)).tanh() + sl * (beta0 - beta1)
}

/// `∂ₐf` in factored form.
pub fn char_df_da<T: Real>(a: T, p: &Params<T>, lambda: T) -> T {
    let sl = lambda.sqrt();
    let sin = ((lambda * p.kappa).sqrt() * p.c).sin();
    let shift = sl * (T::lit(2.0) * a + p.c - T::one());
    T::lit(2.0)
        * (p.kappa + T::one())
        * sl
        * sin
        * shift.cosh()
        * char_g(a, p.beta0, p.beta1, lambda, p.c)
}

/// `A(a)` and `B(a)` with `∂_{β₁}f = A(a)·β₀ + B(a)`.
pub fn ab_coefficients<T: Real>(a: T, c: T, kappa: T, lambda: T) -> (T, T) {
    let one = T::one();
    let two = T::lit(2.0);
    let sl = lambda.sqrt();
    let sk = kappa.sqrt();
    let (sin, cos) = ((kappa * lambda).sqrt() * c).sin_cos();
    let outer = sl * (one - c);
    let shift = sl * (two * a + c - one);
    let coef_a = -two * sk * cos * outer.sinh() + (kappa - one) * sin * outer.cosh()
        - (kappa + one) * sin * shift.cosh();
    let coef_b = -two * sl * sk * cos * outer.cosh() + (kappa - one) * sl * sin * outer.sinh()
        - (kappa + one) * sl * sin * shift.sinh();
    (coef_a, coef_b)
}

/// `β₀*(a) = -B(a)/A(a)`, the zero of `∂_{β₁}f` in `β₀`.
pub fn beta0_star<T: Real>(a: Placement<T>, p: &Params<T>, lambda: T) -> Result<T> {
    let (coef_a, coef_b) = ab_coefficients(a.a(), p.c, p.kappa, lambda);
    if !(coef_a.abs() >= T::lit(1e-12)) {
        return Err(Error::DegenerateA(coef_a.as_f64()));
    }
    Ok(-coef_b / coef_a)
}

/// `h(c, κ, λ)`; `A(a) < 0` on `[0, 1-c]` whenever `h < 1`.
pub fn h_bound<T: Real>(c: T, kappa: T, lambda: T) -> T {
    let (sin, cos) = ((kappa * lambda).sqrt() * c).sin_cos();
    let outer = lambda.sqrt() * (T::one() - c);
    ((kappa - T::one()) * sin * outer.cosh() - T::lit(2.0) * kappa.sqrt() * cos * outer.sinh())
        / ((kappa + T::one()) * sin)
}

/// Critical length `c*` below which `h < 1` is no longer guaranteed; only
/// defined for `κ > 1`.
pub fn c_star<T: Real>(kappa: T) -> Option<T> {
    if !(kappa > T::one()) {
        return None;
    }
    let sk = kappa.sqrt();
    let log = ((sk + T::one()) / (sk - T::one())).ln();
    Some(T::one() / (T::one() + T::lit(2.0) * sk / T::PI() * log))
}

/// Upper bound on `β₀*(a)` that does not depend on `a` or `λ`; `None` when
/// its denominator is not positive.
pub fn beta0_star_bound<T: Real>(c: T, kappa: T) -> Option<T> {
    let sk = kappa.sqrt();
    let theta = T::PI() * (T::one() - c) / (T::lit(2.0) * c * sk);
    let den = kappa + T::one() - (kappa - T::one()) * theta.cosh();
    if !(den > T::zero()) {
        return None;
    }
    Some(sk * T::PI() / c * theta.sinh() / den)
}

/// Sufficient conditions of the classification, evaluated for an instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisReport<T> {
    /// `None` when `κ ≤ 1` (no constraint on `c`).
    pub c_star: Option<T>,
    /// `None` when the length constraint fails.
    pub beta0_star_bound: Option<T>,
    pub c_ok: bool,
    pub beta0_ok: bool,
    /// Supremum of `h` over [`H_SAMPLES`] points of the window.
    pub h_max: T,
}

impl<T: Real> HypothesisReport<T> {
    pub fn certified(&self) -> bool {
        self.c_ok && self.beta0_ok
    }

    /// One `key: value` line per field.
    pub fn to_text(&self) -> String {
        fn opt<T: Real>(v: Option<T>) -> String {
            v.map_or_else(|| "not applicable".to_string(), |x| format!("{x}"))
        }
        format!(
            "c_star: {}\nbeta0_star_bound: {}\nc_ok: {}\nbeta0_ok: {}\nh_max: {}\n",
            opt(self.c_star),
            opt(self.beta0_star_bound),
            self.c_ok,
            self.beta0_ok,
            self.h_max
        )
    }
}

pub fn hypothesis_bounds<T: Real>(p: &Params<T>, window: SpectralWindow<T>) -> HypothesisReport<T> {
    let c_star = c_star(p.kappa);
    let c_ok = c_star.is_none_or(|cs| p.c > cs);
    let bound = beta0_star_bound(p.c, p.kappa);
    let beta0_ok = bound.is_some_and(|b| p.beta0 > b);
    let step = (window.lambda_max - window.lambda_min) / T::lit((H_SAMPLES - 1) as f64);
    let h_max = (0..H_SAMPLES)
        .map(|i| h_bound(p.c, p.kappa, window.lambda_min + step * T::lit(i as f64)))
        .fold(T::neg_infinity(), T::max);
    HypothesisReport {
        c_star,
        beta0_star_bound: bound,
        c_ok,
        beta0_ok,
        h_max,
    }
}

/// Limit characteristic equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitKind {
    /// `β₀ = β₁ = 0`.
    Neumann,
    /// `β₀, β₁ → ∞`.
    Dirichlet,
    /// Neumann at `a = 0`: `√κ tan(√(λκ) c) = tanh(√λ (1-c))`.
    LouNeumann,
    /// Dirichlet at `a = 0`: `tan(√(λκ) c) = -√κ tanh(√λ (1-c))`.
    LouDirichlet,
}

impl LimitKind {
    pub const ALL: [LimitKind; 4] = [
        LimitKind::Neumann,
        LimitKind::Dirichlet,
        LimitKind::LouNeumann,
        LimitKind::LouDirichlet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LimitKind::Neumann => "neumann",
            LimitKind::Dirichlet => "dirichlet",
            LimitKind::LouNeumann => "lou_neumann",
            LimitKind::LouDirichlet => "lou_dirichlet",
        }
    }
}

/// LHS − RHS of the selected limit equation, or [`Error::Pole`].
pub fn limit_char_residual<T: Real>(kind: LimitKind, a: T, c: T, kappa: T, lambda: T) -> Result<T> {
    if matches!(kind, LimitKind::LouNeumann | LimitKind::LouDirichlet) && a != T::zero() {
        return Err(Error::LouRequiresLeftPlacement(a.as_f64()));
    }
    if !(lambda > T::zero()) {
        return Err(Error::NonPositiveLambda(lambda.as_f64()));
    }
    let pole = T::lit(POLE_RATIO);
    let sl = lambda.sqrt();
    let sk = kappa.sqrt();
    let (sin, cos) = (sl * sk * c).sin_cos();
    if cos.abs() < pole * sin.abs() {
        return Err(Error::Pole(lambda.as_f64()));
    }
    let tan = sin / cos;
    let th_a = (sl * a).tanh();
    let th_out = (sl * (T::one() - a - c)).tanh();
    let ratio = |num: T, den: T| -> Result<T> {
        if den.abs() < pole * num.abs().max(T::one()) {
            Err(Error::Pole(lambda.as_f64()))
        } else {
            Ok(num / den)
        }
    };
    match kind {
        LimitKind::Neumann => Ok(th_out - ratio(sk * tan - th_a, T::one() + th_a * tan / sk)?),
        LimitKind::Dirichlet => Ok(th_out - ratio(tan / sk + th_a, sk * th_a * tan - T::one())?),
        LimitKind::LouNeumann => Ok(sk * tan - th_out),
        LimitKind::LouDirichlet => Ok(tan + sk * th_out),
    }
}

/// Smallest positive root of a limit equation on `window`.
///
/// Scan brackets whose endpoints straddle a pole (a sign change of `cos` or of
/// the rational denominator) are discarded.
pub fn limit_root<T: Real>(
    kind: LimitKind,
    a: T,
    c: T,
    kappa: T,
    window: SpectralWindow<T>,
    n_lambda: usize,
    tol: T,
) -> Result<T> {
    let sk = kappa.sqrt();
    let guard = |l: T| -> (T, T) {
        let sl = l.sqrt();
        let (sin, cos) = (sl * sk * c).sin_cos();
        let th_a = (sl * a).tanh();
        let den = match kind {
            LimitKind::Neumann => cos + th_a * sin / sk,
            LimitKind::Dirichlet => sk * th_a * sin - cos,
            _ => T::one(),
        };
        (cos, den)
    };
    let residual = |l: T| limit_char_residual(kind, a, c, kappa, l).unwrap_or(T::nan());
    let step = (window.lambda_max - window.lambda_min) / T::lit(n_lambda as f64);
    let mut prev_l = window.lambda_min;
    let mut prev_r = residual(prev_l);
    for j in 1..=n_lambda {
        let l = if j == n_lambda {
            window.lambda_max
        } else {
            window.lambda_min + step * T::lit(j as f64)
        };
        let r = residual(l);
        let (c0, d0) = guard(prev_l);
        let (c1, d1) = guard(l);
        let straddles_pole = c0 * c1 <= T::zero() || d0 * d1 <= T::zero();
        if prev_r == T::zero() {
            return Ok(prev_l);
        }
        if prev_r.is_finite() && r.is_finite() && prev_r * r < T::zero() && !straddles_pole {
            let b = Bracket::new(prev_l, l, prev_r, r)?;
            return Ok(eigensolver::bisect(residual, b, tol)?.lambda);
        }
        prev_l = l;
        prev_r = r;
    }
    Err(Error::NoBracket(0))
}

/// Smallest positive root of `f` found by the same scan-and-bisect policy as
/// the shooting solver, but on the closed-form determinant.
pub fn determinant_eigenvalue<T: Real>(
    a: Placement<T>,
    p: &Params<T>,
    cfg: &SolverConfig<T>,
) -> Result<T> {
    let residual = |l: T| char_f(a, p, l);
    let brackets = eigensolver::find_brackets(&residual, p, cfg)?;
    let first = brackets.brackets[0];
    Ok(eigensolver::bisect(residual, first, cfg.tol)?.lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p44() -> Params<f64> {
        Params::new(0.3, 2.0, 4.0, 4.0).unwrap()
    }

    #[test]
    fn f_vanishes_at_zero_lambda_for_neumann() {
        for a in [0.0, 0.2, 0.7] {
            let v = char_f_raw::<f64>(a, 0.3, 2.0, 0.0, 0.0, 1e-14);
            assert!(v.abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn g_vanishes_at_centre_for_equal_betas() {
        for lam in [0.5, 2.0, 9.0] {
            assert_eq!(char_g::<f64>(0.35, 3.0, 3.0, lam, 0.3), 0.0);
        }
    }

    #[test]
    fn g_positive_when_product_equals_lambda() {
        // β₀β₁ = λ and β₀ > β₁
        for a in [0.0, 0.3, 0.7] {
            assert!(char_g::<f64>(a, 4.0, 0.5, 2.0, 0.3) > 0.0);
        }
    }

    #[test]
    fn g_reference_value() {
        let g = char_g::<f64>(0.5, 4.0, 4.0, 2.0, 0.3);
        // (2 - 16) tanh(2√2 · 0.15)
        let expect = -14.0 * (2.0 * 2f64.sqrt() * 0.15).tanh();
        assert_abs_diff_eq!(g, expect, epsilon = 1e-14);
        assert_abs_diff_eq!(g, -5.607232, epsilon = 1e-6);
    }

    #[test]
    fn g_reference_value_matches_finite_difference() {
        let p = p44();
        let h = 1e-6;
        let fd = (char_f_raw::<f64>(0.5 + h, 0.3, 2.0, 4.0, 4.0, 2.0)
            - char_f_raw::<f64>(0.5 - h, 0.3, 2.0, 4.0, 4.0, 2.0))
            / (2.0 * h);
        let analytic = char_df_da(0.5, &p, 2.0);
        assert!((fd - analytic).abs() <= 1e-6 * analytic.abs().max(1.0));
        assert!(analytic < 0.0 && char_g::<f64>(0.5, 4.0, 4.0, 2.0, 0.3) < 0.0);
    }

    #[test]
    fn beta0_star_zeroes_beta1_derivative() {
        let p = Params::new(0.35, 1.0, 1.0, 1.0).unwrap();
        let a = Placement::new(0.2, &p).unwrap();
        let lam = 1.0;
        let (coef_a, coef_b) = ab_coefficients::<f64>(0.2, 0.35, 1.0, lam);
        assert!(coef_a < 0.0);
        let star = beta0_star::<f64>(a, &p, lam).unwrap();
        assert!(star.is_finite());
        assert!((coef_a * star + coef_b).abs() <= 1e-9 * coef_b.abs().max(1.0));
        // central difference of f in β₁ at β₀ = β₀* vanishes as well
        let h = 1e-5;
        let d = (char_f_raw::<f64>(0.2, 0.35, 1.0, star, 1.0 + h, lam)
            - char_f_raw::<f64>(0.2, 0.35, 1.0, star, 1.0 - h, lam))
            / (2.0 * h);
        assert!(d.abs() < 1e-7, "{d}");
    }

    #[test]
    fn ab_matches_beta1_finite_difference() {
        for &(a, b0, lam) in &[(0.1, 0.5, 2.0), (0.4, 3.0, 7.0), (0.0, 8.0, 12.0)] {
            let (ca, cb) = ab_coefficients::<f64>(a, 0.3, 2.0, lam);
            let h = 1e-5;
            let fd = (char_f_raw::<f64>(a, 0.3, 2.0, b0, 1.0 + h, lam)
                - char_f_raw::<f64>(a, 0.3, 2.0, b0, 1.0 - h, lam))
                / (2.0 * h);
            assert!((fd - (ca * b0 + cb)).abs() < 1e-6 * fd.abs().max(1.0));
        }
    }

    #[test]
    fn c_star_for_kappa_two() {
        let cs = c_star(2.0).unwrap();
        assert_abs_diff_eq!(cs, 0.3866, epsilon = 1e-3);
        assert_eq!(c_star(1.0f64), None);
    }

    #[test]
    fn hypotheses_small_kappa() {
        let p = Params::new(0.3, 0.5, 1.0, 1.0).unwrap();
        let rep = hypothesis_bounds(&p, SpectralWindow::new(p.c, p.kappa));
        assert_eq!(rep.c_star, None);
        assert!(rep.c_ok);
        assert!(rep.h_max < 1.0);
    }

    #[test]
    fn hypotheses_fail_for_reference_experiment() {
        let p = Params::new(0.3, 2.0, 8.0, 0.2).unwrap();
        let rep = hypothesis_bounds(&p, SpectralWindow::new(p.c, p.kappa));
        assert!(!rep.c_ok);
        assert_eq!(rep.beta0_star_bound, None);
        assert!(!rep.beta0_ok);
        assert!(!rep.certified());
        let text = rep.to_text();
        assert!(text.contains("beta0_star_bound: not applicable"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn hypotheses_hold_for_long_interval() {
        let p = Params::new(0.6, 2.0, 30.0, 1.0).unwrap();
        let rep = hypothesis_bounds(&p, SpectralWindow::new(p.c, p.kappa));
        assert!(rep.c_ok);
        let bound = rep.beta0_star_bound.unwrap();
        assert!(bound > 0.0);
        assert_eq!(rep.beta0_ok, 30.0 > bound);
        assert!(rep.h_max < 1.0);
    }

    #[test]
    fn lou_kinds_need_left_placement() {
        assert!(matches!(
            limit_char_residual::<f64>(LimitKind::LouNeumann, 0.1, 0.3, 2.0, 1.0),
            Err(Error::LouRequiresLeftPlacement(_))
        ));
    }

    #[test]
    fn neumann_reduces_to_lou_at_zero() {
        // at a = 0 both residuals are zero at the same λ
        let w = SpectralWindow::new(0.3, 2.0);
        let r18 = limit_root::<f64>(LimitKind::Neumann, 0.0, 0.3, 2.0, w, 900, 1e-12).unwrap();
        let r19 = limit_root::<f64>(LimitKind::LouNeumann, 0.0, 0.3, 2.0, w, 900, 1e-12).unwrap();
        assert!((r18 - r19).abs() < 1e-10);
        let v = limit_char_residual::<f64>(LimitKind::LouNeumann, 0.0, 0.3, 2.0, r19).unwrap();
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn tangent_pole_is_reported() {
        // √(λκ) c = π/2
        let lam = (std::f64::consts::FRAC_PI_2 / 0.3).powi(2) / 2.0;
        assert!(matches!(
            limit_char_residual::<f64>(LimitKind::LouNeumann, 0.0, 0.3, 2.0, lam),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn dirichlet_root_skips_tangent_pole() {
        let w = SpectralWindow::extended(0.3, 2.0);
        let r21 = limit_root::<f64>(LimitKind::Dirichlet, 0.0, 0.3, 2.0, w, 3600, 1e-12).unwrap();
        let r22 =
            limit_root::<f64>(LimitKind::LouDirichlet, 0.0, 0.3, 2.0, w, 3600, 1e-12).unwrap();
        assert!((r21 - r22).abs() < 1e-9);
        // the Dirichlet root lies past the quarter-period bound
        assert!(r21 > SpectralWindow::new(0.3, 2.0).lambda_max);
    }

    #[test]
    fn g_reflection_identity() {
        for &(a, b0, b1, lam) in &[
            (0.1, 1.0, 5.0, 4.0),
            (0.6, 8.0, 0.2, 2.5),
            (0.35, 2.0, 2.0, 9.0),
        ] {
            let g = char_g::<f64>(a, b0, b1, lam, 0.3);
            let gr = char_g::<f64>(0.7 - a, b1, b0, lam, 0.3);
            assert!((g + gr).abs() <= 1e-12 * g.abs().max(1.0));
        }
    }
}
