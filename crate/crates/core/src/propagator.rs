//! Closed-form transfer matrices for `u'' + λ m u = 0` on constant-weight
//! pieces, the composed transfer matrix across `(0, 1)`, the shooting
//! residual, and eigenfunction reconstruction.
//!
//! On a piece of constant weight `m` the state `w = (u, u')` obeys
//! `w' = Q_m w` with `Q_m = [[0, 1], [-λ m, 0]]`. Since `Q_m` is trace-free,
//! `exp(s Q_m)` is a cosine/sine block for `m > 0` and a cosh/sinh block for
//! `m < 0`, and always has unit determinant.

use std::ops::Mul;

use crate::model::{Params, Placement};
use crate::{Error, Real, Result};

/// Largest accepted hyperbolic argument `s·√(λ|m|)`.
const MAX_ARGUMENT: f64 = 700.0;

/// Real 2×2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

impl<T: Real> Mat2<T> {
    pub fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, w: StateVec<T>) -> StateVec<T> {
        StateVec {
            u: self.m11 * w.u + self.m12 * w.du,
            du: self.m21 * w.u + self.m22 * w.du,
        }
    }

    /// Largest elementwise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.m11 - other.m11)
            .abs()
            .max((self.m12 - other.m12).abs())
            .max((self.m21 - other.m21).abs())
            .max((self.m22 - other.m22).abs())
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, r: Mat2<T>) -> Mat2<T> {
        Mat2 {
            m11: self.m11 * r.m11 + self.m12 * r.m21,
            m12: self.m11 * r.m12 + self.m12 * r.m22,
            m21: self.m21 * r.m11 + self.m22 * r.m21,
            m22: self.m21 * r.m12 + self.m22 * r.m22,
        }
    }
}

/// State vector `(u, u')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVec<T> {
    pub u: T,
    pub du: T,
}

impl<T: Real> StateVec<T> {
    /// Left boundary data under the normalisation `u(0) = 1`.
    pub fn initial(beta0: T) -> Self {
        StateVec {
            u: T::one(),
            du: beta0,
        }
    }

    pub fn scale(self, k: T) -> Self {
        StateVec {
            u: self.u * k,
            du: self.du * k,
        }
    }
}

/// `exp(s Q_m)` in closed form.
///
/// Columns are the value/derivative pairs of the cosine-like and sine-like
/// fundamental solutions of `u'' + λ m u = 0`.
pub fn propagator<T: Real>(m: T, s: T, lambda: T) -> Result<Mat2<T>> {
    if !(s >= T::zero()) {
        return Err(Error::NegativeLength(s.as_f64()));
    }
    if !(lambda > T::zero()) {
        return Err(Error::NonPositiveLambda(lambda.as_f64()));
    }
    if m == T::zero() || !m.is_finite() {
        return Err(Error::ZeroWeight);
    }
    let k = (lambda * m.abs()).sqrt();
    let arg = k * s;
    if !(arg <= T::lit(MAX_ARGUMENT)) {
        return Err(Error::ArgumentTooLarge(arg.as_f64()));
    }
    Ok(if m > T::zero() {
        let (sin, cos) = arg.sin_cos();
        Mat2::new(cos, sin / k, -k * sin, cos)
    } else {
        let (sinh, cosh) = (arg.sinh(), arg.cosh());
        Mat2::new(cosh, sinh / k, k * sinh, cosh)
    })
}

/// `M(a, λ) = exp((1-a-c) Q_{-1}) · exp(c Q_κ) · exp(a Q_{-1})`.
pub fn transfer_matrix<T: Real>(a: Placement<T>, p: &Params<T>, lambda: T) -> Result<Mat2<T>> {
    let left = propagator(-T::one(), a.a(), lambda)?;
    let mid = propagator(p.kappa, p.c, lambda)?;
    let right = propagator(-T::one(), a.right_length(p), lambda)?;
    Ok(right * mid * left)
}

/// `R(a, λ) = u'(1) + β₁ u(1)` for the solution with `w(0) = (1, β₀)`.
pub fn shooting_residual<T: Real>(a: Placement<T>, p: &Params<T>, lambda: T) -> Result<T> {
    let w1 = transfer_matrix(a, p, lambda)?.apply(StateVec::initial(p.beta0));
    Ok(w1.du + p.beta1 * w1.u)
}

/// Piecewise closed-form solution for a fixed `(a, λ)`, normalised by
/// `u(0) = 1`, `u'(0) = β₀`.
#[derive(Debug, Clone, Copy)]
pub struct Eigenfunction<T> {
    params: Params<T>,
    a: T,
    b: T,
    lambda: T,
    at_a: StateVec<T>,
    at_b: StateVec<T>,
}

impl<T: Real> Eigenfunction<T> {
    pub fn new(a: Placement<T>, p: &Params<T>, lambda: T) -> Result<Self> {
        let w0 = StateVec::initial(p.beta0);
        let at_a = propagator(-T::one(), a.a(), lambda)?.apply(w0);
        let at_b = propagator(p.kappa, p.c, lambda)?.apply(at_a);
        Ok(Eigenfunction {
            params: *p,
            a: a.a(),
            b: a.b(p),
            lambda,
            at_a,
            at_b,
        })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// Breakpoints `[0, a, b, 1]`.
    pub fn breakpoints(&self) -> [T; 4] {
        [T::zero(), self.a, self.b, T::one()]
    }

    /// Weight on the piece containing `x` (left-continuous at breakpoints
    /// except at 0).
    pub fn weight_at(&self, x: T) -> T {
        if x > self.a && x <= self.b && self.b > self.a {
            self.params.kappa
        } else {
            -T::one()
        }
    }

    /// `w(x)` obtained by propagating the initial data through the pieces.
    pub fn eval(&self, x: T) -> Result<StateVec<T>> {
        if !(x >= T::zero() && x <= T::one()) {
            return Err(Error::PositionOutOfRange(x.as_f64()));
        }
        let w = if x <= self.a {
            propagator(-T::one(), x, self.lambda)?.apply(StateVec::initial(self.params.beta0))
        } else if x <= self.b {
            propagator(self.params.kappa, x - self.a, self.lambda)?.apply(self.at_a)
        } else {
            propagator(-T::one(), x - self.b, self.lambda)?.apply(self.at_b)
        };
        Ok(w)
    }

    /// `u'(1) + β₁ u(1)` and `u(1)`.
    pub fn right_boundary_defect(&self) -> Result<(T, T)> {
        let w1 = self.eval(T::one())?;
        Ok((w1.du + self.params.beta1 * w1.u, w1.u))
    }

    /// Whether `u > 0` at `n` uniform points of `[0, 1]` (endpoints included).
    pub fn is_positive_on_grid(&self, n: usize) -> Result<bool> {
        let n = n.max(2);
        for i in 0..n {
            let x = T::lit(i as f64) / T::lit((n - 1) as f64);
            if !(self.eval(x)?.u > T::zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// State `w(x)` of the solution with `w(0) = (1, β₀)` at eigenvalue `λ`.
pub fn eigenfunction_eval<T: Real>(
    a: Placement<T>,
    p: &Params<T>,
    lambda: T,
    x: T,
) -> Result<StateVec<T>> {
    Eigenfunction::new(a, p, lambda)?.eval(x)
}
