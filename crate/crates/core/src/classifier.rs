//! Regime and subcase classification of a Robin pair from its computed
//! curve `a ↦ λ(a)`, the predicted minimiser, and the comparison with the
//! numerical argmin.

use std::fmt;

use crate::eigensolver::CurvePoint;
use crate::model::Params;
use crate::{Error, Real, Result};

/// Relative width of the band around `β₀β₁ = λ` treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Sign of `β₀β₁ − λ(a_j)` across the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `β₀β₁ > λ` at every sample.
    Gt,
    /// `β₀β₁ < λ` at every sample.
    Lt,
    Mixed,
    Degenerate,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Gt => "b0b1>lambda",
            Regime::Lt => "b0b1<lambda",
            Regime::Mixed => "mixed",
            Regime::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcase {
    /// `β₀ − β₁ > T(λ)` at every sample.
    B0MuchGreater,
    /// `β₀ − β₁ < −T(λ)` at every sample.
    B0MuchLess,
    /// `|β₀ − β₁| ≤ T(λ)` at every sample.
    SmallDiff,
    Unclassified,
}

impl Subcase {
    pub fn as_str(self) -> &'static str {
        match self {
            Subcase::B0MuchGreater => "b0>>b1",
            Subcase::B0MuchLess => "b0<<b1",
            Subcase::SmallDiff => "|b0-b1| small",
            Subcase::Unclassified => "unclassified",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CaseLabel {
    pub regime: Regime,
    pub subcase: Subcase,
}

/// Location of the minimiser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    /// `a = 0`.
    Left,
    /// `a = 1 − c`.
    Right,
    /// `a = a*`.
    Interior,
    /// `a ∈ {0, 1 − c}`.
    Either,
    /// Any `a`; only in the degenerate `β₀ = β₁ = √λ` case.
    Flat,
}

impl Location {
    pub fn as_str(self) -> &'static str {
        match self {
            Location::Left => "left",
            Location::Right => "right",
            Location::Interior => "interior",
            Location::Either => "either",
            Location::Flat => "flat",
        }
    }

    /// Image under `x ↦ 1 − x`.
    pub fn mirrored(self) -> Self {
        match self {
            Location::Left => Location::Right,
            Location::Right => Location::Left,
            other => other,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction<T> {
    pub location: Location,
    /// Present for [`Location::Interior`], evaluated at the argmin eigenvalue.
    pub a_star_value: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification<T> {
    pub label: CaseLabel,
    /// `None` for mixed, degenerate and unclassified pairs.
    pub prediction: Option<Prediction<T>>,
}

/// `a* = artanh(√λ(β₁−β₀)/(λ−β₀β₁)) / (2√λ) + (1−c)/2`, the zero of `g`.
pub fn a_star<T: Real>(beta0: T, beta1: T, lambda: T, c: T) -> Result<T> {
    let sl = lambda.sqrt();
    let arg = sl * (beta1 - beta0) / (lambda - beta0 * beta1);
    if !(arg.abs() < T::one()) {
        return Err(Error::AStarUndefined(arg.as_f64()));
    }
    Ok(arg.atanh() / (T::lit(2.0) * sl) + (T::one() - c) / T::lit(2.0))
}

/// Subcase threshold `T(λ) = |β₀β₁ − λ| tanh(√λ(1−c)) / √λ`.
pub fn threshold<T: Real>(beta0: T, beta1: T, lambda: T, c: T) -> T {
    let sl = lambda.sqrt();
    (beta0 * beta1 - lambda).abs() * (sl * (T::one() - c)).tanh() / sl
}

/// Index and value of the smallest eigenvalue; ties go to the leftmost `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Argmin<T> {
    pub a: T,
    pub lambda: T,
    pub index: usize,
}

pub fn numeric_argmin<T: Real>(curve: &[CurvePoint<T>]) -> Option<Argmin<T>> {
    let mut best: Option<Argmin<T>> = None;
    for (index, pt) in curve.iter().enumerate() {
        if best.is_none_or(|b| pt.lambda < b.lambda) {
            best = Some(Argmin {
                a: pt.a,
                lambda: pt.lambda,
                index,
            });
        }
    }
    best
}

fn regime_of<T: Real>(product: T, curve: &[CurvePoint<T>]) -> Regime {
    let band = T::lit(DEGENERACY_TOL) * T::one().max(product);
    if curve.iter().any(|pt| (product - pt.lambda).abs() <= band) {
        return Regime::Degenerate;
    }
    if curve.iter().all(|pt| product > pt.lambda) {
        Regime::Gt
    } else if curve.iter().all(|pt| product < pt.lambda) {
        Regime::Lt
    } else {
        Regime::Mixed
    }
}

fn subcase_of<T: Real>(p: &Params<T>, curve: &[CurvePoint<T>]) -> Subcase {
    let diff = p.beta0 - p.beta1;
    let thresholds = || {
        curve
            .iter()
            .map(|pt| threshold(p.beta0, p.beta1, pt.lambda, p.c))
    };
    if thresholds().all(|t| diff < -t) {
        Subcase::B0MuchLess
    } else if thresholds().all(|t| diff.abs() <= t) {
        Subcase::SmallDiff
    } else if thresholds().all(|t| diff > t) {
        Subcase::B0MuchGreater
    } else {
        Subcase::Unclassified
    }
}

/// Classifies the pair `(β₀, β₁)` from every computed `λ(a_j)`.
///
/// An empty curve is reported as mixed and unclassified.
pub fn classify_pair<T: Real>(p: &Params<T>, curve: &[CurvePoint<T>]) -> Classification<T> {
    let unclassified = |regime| Classification {
        label: CaseLabel {
            regime,
            subcase: Subcase::Unclassified,
        },
        prediction: None,
    };
    let Some(argmin) = numeric_argmin(curve) else {
        return unclassified(Regime::Mixed);
    };
    let regime = regime_of(p.beta0 * p.beta1, curve);
    if !matches!(regime, Regime::Gt | Regime::Lt) {
        return unclassified(regime);
    }
    let subcase = subcase_of(p, curve);
    let location = match (regime, subcase) {
        (_, Subcase::Unclassified) => return unclassified(regime),
        (_, Subcase::B0MuchLess) => Location::Left,
        (_, Subcase::B0MuchGreater) => Location::Right,
        (Regime::Gt, Subcase::SmallDiff) => Location::Interior,
        (_, Subcase::SmallDiff) => Location::Either,
    };
    let a_star_value = match location {
        Location::Interior => a_star(p.beta0, p.beta1, argmin.lambda, p.c).ok(),
        _ => None,
    };
    Classification {
        label: CaseLabel { regime, subcase },
        prediction: Some(Prediction {
            location,
            a_star_value,
        }),
    }
}

/// Numeric label and verdict of comparing a prediction with the argmin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Comparison {
    pub numeric: Location,
    pub matched: bool,
}

/// Label of an argmin index on an `n_a`-point grid.
pub fn numeric_location(index: usize, n_a: usize) -> Location {
    if index == 0 {
        Location::Left
    } else if index + 1 == n_a {
        Location::Right
    } else {
        Location::Interior
    }
}

pub fn compare_prediction(predicted: Location, argmin_index: usize, n_a: usize) -> Comparison {
    let numeric = numeric_location(argmin_index, n_a);
    let matched = match predicted {
        Location::Left | Location::Right | Location::Interior => predicted == numeric,
        Location::Either => matches!(numeric, Location::Left | Location::Right),
        Location::Flat => true,
    };
    Comparison { numeric, matched }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characteristic::char_g;
    use crate::eigensolver::{bisect, Bracket};

    fn curve(values: &[f64], c: f64) -> Vec<CurvePoint<f64>> {
        let n = values.len();
        values
            .iter()
            .enumerate()
            .map(|(j, &lambda)| CurvePoint {
                a: (1.0 - c) * j as f64 / (n - 1) as f64,
                lambda,
            })
            .collect()
    }

    #[test]
    fn a_star_symmetric_pair_is_centre() {
        assert_eq!(a_star::<f64>(3.0, 3.0, 2.0, 0.3).unwrap(), 0.35);
    }

    #[test]
    fn a_star_reflection_sum() {
        for &(b0, b1, lam) in &[(4.0, 2.0, 2.0), (0.5, 1.0, 6.0), (7.0, 3.0, 5.0)] {
            let s =
                a_star::<f64>(b0, b1, lam, 0.3).unwrap() + a_star::<f64>(b1, b0, lam, 0.3).unwrap();
            assert!((s - 0.7).abs() <= 1e-12);
        }
    }

    #[test]
    fn a_star_reference_and_g_root() {
        let v = a_star::<f64>(4.0, 2.0, 2.0, 0.3).unwrap();
        assert!((v - 0.5312).abs() < 1e-3, "{v}");
        let g = |a: f64| char_g::<f64>(a, 4.0, 2.0, 2.0, 0.3);
        let b = Bracket::new(0.0, 0.7, g(0.0), g(0.7)).unwrap();
        let root = bisect::<f64, _>(g, b, 1e-13).unwrap().lambda;
        assert!((root - v).abs() < 1e-10);
    }

    #[test]
    fn a_star_undefined_outside_unit_argument() {
        assert!(matches!(
            a_star::<f64>(0.2, 8.0, 1.0, 0.3),
            Err(Error::AStarUndefined(_))
        ));
    }

    #[test]
    fn argmin_ties_go_left() {
        let c = curve(&[3.0, 1.0, 2.0, 1.0], 0.3);
        assert_eq!(numeric_argmin(&c).unwrap().index, 1);
        let inc = curve(&[1.0, 2.0, 3.0], 0.3);
        let m = numeric_argmin(&inc).unwrap();
        assert_eq!((m.index, m.a), (0, 0.0));
        let dec = curve(&[3.0, 2.0, 1.0], 0.3);
        let m = numeric_argmin(&dec).unwrap();
        assert_eq!(m.index, 2);
        assert!((m.a - 0.7).abs() < 1e-15);
        assert!(numeric_argmin::<f64>(&[]).is_none());
    }

    #[test]
    fn comparison_rules() {
        assert_eq!(
            compare_prediction(Location::Right, 80, 81),
            Comparison {
                numeric: Location::Right,
                matched: true
            }
        );
        let c = compare_prediction(Location::Either, 0, 81);
        assert!(c.matched);
        assert_eq!(c.numeric, Location::Left);
        assert!(!compare_prediction(Location::Interior, 0, 81).matched);
        assert!(compare_prediction(Location::Interior, 40, 81).matched);
        assert!(!compare_prediction(Location::Either, 40, 81).matched);
        assert!(!compare_prediction(Location::Left, 80, 81).matched);
    }

    #[test]
    fn comparison_is_total() {
        let locs = [
            Location::Left,
            Location::Right,
            Location::Interior,
            Location::Either,
            Location::Flat,
        ];
        for l in locs {
            for idx in [0, 1, 40, 79, 80] {
                let a = compare_prediction(l, idx, 81);
                let b = compare_prediction(l, idx, 81);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn mixed_regime_is_unclassified() {
        let p = Params::new(0.3, 2.0, 2.0, 2.0).unwrap();
        let cl = classify_pair(&p, &curve(&[3.0, 5.0, 3.0], 0.3));
        assert_eq!(cl.label.regime, Regime::Mixed);
        assert_eq!(cl.label.subcase, Subcase::Unclassified);
        assert!(cl.prediction.is_none());
    }

    #[test]
    fn degenerate_band() {
        let p = Params::new(0.3, 2.0, 2.0, 2.0).unwrap();
        let cl = classify_pair(&p, &curve(&[3.0, 4.0 + 1e-12, 3.5], 0.3));
        assert_eq!(cl.label.regime, Regime::Degenerate);
        assert!(cl.prediction.is_none());
    }

    #[test]
    fn synthetic_gt_interior() {
        // β₀ = β₁ = 4: |β₀ − β₁| = 0 ≤ T, β₀β₁ = 16 above every λ
        let p = Params::new(0.3, 2.0, 4.0, 4.0).unwrap();
        let cl = classify_pair(&p, &curve(&[10.0, 9.0, 10.0], 0.3));
        assert_eq!(cl.label.regime, Regime::Gt);
        assert_eq!(cl.label.subcase, Subcase::SmallDiff);
        let pred = cl.prediction.unwrap();
        assert_eq!(pred.location, Location::Interior);
        assert_eq!(pred.a_star_value, Some(0.35));
    }

    #[test]
    fn synthetic_lt_either() {
        let p = Params::new(0.3, 2.0, 0.2, 0.2).unwrap();
        let cl = classify_pair(&p, &curve(&[2.2, 4.5, 2.2], 0.3));
        assert_eq!(cl.label.regime, Regime::Lt);
        assert_eq!(cl.prediction.unwrap().location, Location::Either);
    }
}
