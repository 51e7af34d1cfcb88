//! Rational points on curves `y² = t⁴ + c3·t³ + c2·t² + c1·t + c0`.
//!
//! New points come from fitting a monic quadratic `g` through known points
//! (two points for the secant, one point with matching slope for the
//! tangent). `f − g²` then has degree at most three and vanishes at the known
//! abscissae, so its last root is rational and gives the new point.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;
use crate::family::{FamilyError, FamilyParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuarticError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{0}")]
    NotOnCurve(Box<OffCurve>),
    #[error("both points have t = {0}; use the tangent construction")]
    SameAbscissa(Rational),
    #[error("degenerate construction: {0}")]
    Degenerate(&'static str),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("t = {t} is not on the curve: f(t) = {value} is not y^2 = {y_squared}")]
pub struct OffCurve {
    pub t: Rational,
    pub value: Rational,
    pub y_squared: Rational,
}

/// Coefficients of a monic quartic below the leading term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonicQuartic {
    pub c3: Rational,
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl MonicQuartic {
    pub fn new(c3: Rational, c2: Rational, c1: Rational, c0: Rational) -> Self {
        MonicQuartic { c3, c2, c1, c0 }
    }

    pub fn from_i64s(c: [i64; 4]) -> Self {
        let [c3, c2, c1, c0] = c.map(Rational::from);
        MonicQuartic { c3, c2, c1, c0 }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        // Horner
        let mut acc = t + &self.c3;
        acc = &acc * t + &self.c2;
        acc = &acc * t + &self.c1;
        &acc * t + &self.c0
    }

    pub fn derivative(&self, t: &Rational) -> Rational {
        let four = Rational::from(4);
        let three = Rational::from(3);
        let two = Rational::from(2);
        let mut acc = &four * t + &three * &self.c3;
        acc = &acc * t + &two * &self.c2;
        &acc * t + &self.c1
    }
}

impl fmt::Display for MonicQuartic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t^4 + ({})t^3 + ({})t^2 + ({})t + ({})",
            self.c3, self.c2, self.c1, self.c0
        )
    }
}

/// The two curves coming from `x1·x3` and `x2·x3`, each divided by its
/// square leading coefficient. With `s = E/D`:
/// `Q1 = t⁴ − 2s t³ + 2s² t − s²` and `Q2 = t⁴ − 2t³ + 2s t − s²`.
pub fn build_quartics(params: &FamilyParams) -> Result<(MonicQuartic, MonicQuartic), QuarticError> {
    let s = params.ratio()?;
    let two = Rational::from(2);
    let s2 = s.square();
    let q1 = MonicQuartic::new(-(&two * &s), Rational::zero(), &two * &s2, -s2.clone());
    let q2 = MonicQuartic::new(-two.clone(), Rational::zero(), &two * &s, -s2);
    Ok((q1, q2))
}

pub fn eval_quartic(f: &MonicQuartic, t: &Rational) -> Rational {
    f.eval(t)
}

/// A rational point with `y ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub t: Rational,
    pub y: Rational,
}

impl CurvePoint {
    /// Checks `y² = f(t)` and stores `|y|`.
    pub fn new(f: &MonicQuartic, t: Rational, y: Rational) -> Result<Self, QuarticError> {
        let value = f.eval(&t);
        let y_squared = y.square();
        if value != y_squared {
            return Err(QuarticError::NotOnCurve(Box::new(OffCurve {
                t,
                value,
                y_squared,
            })));
        }
        Ok(CurvePoint { t, y: y.abs() })
    }
}

/// The point over `t` when `f(t)` is a rational square.
pub fn verify_square_point(f: &MonicQuartic, t: &Rational) -> Option<CurvePoint> {
    let y = f.eval(t).sqrt()?;
    Some(CurvePoint { t: t.clone(), y })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn apply(self, y: &Rational) -> Rational {
        match self {
            Sign::Plus => y.clone(),
            Sign::Minus => -y,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `g(t) = t² + alpha·t + beta`
#[derive(Debug, Clone, PartialEq, Eq)]
struct MonicQuadratic {
    alpha: Rational,
    beta: Rational,
}

impl MonicQuadratic {
    fn eval(&self, t: &Rational) -> Rational {
        &(&(t + &self.alpha) * t) + &self.beta
    }
}

/// Residual `f − g²`, a polynomial of degree at most 3, as `[h3, h2, h1, h0]`.
fn residual(f: &MonicQuartic, g: &MonicQuadratic) -> [Rational; 4] {
    let two = Rational::from(2);
    let (al, be) = (&g.alpha, &g.beta);
    [
        &f.c3 - &(&two * al),
        &f.c2 - &(&al.square() + &(&two * be)),
        &f.c1 - &(&two * &(al * be)),
        &f.c0 - &be.square(),
    ]
}

fn eval_cubic(h: &[Rational; 4], t: &Rational) -> Rational {
    let mut acc = h[0].clone();
    for c in &h[1..] {
        acc = &acc * t + c;
    }
    acc
}

/// Given the residual and the sum of its known roots (with multiplicity),
/// return the remaining point, if the residual has a third root.
fn residual_point(
    f: &MonicQuartic,
    g: &MonicQuadratic,
    known_roots_sum: Rational,
) -> Result<Option<CurvePoint>, QuarticError> {
    let h = residual(f, g);
    if h.iter().all(Rational::is_zero) {
        return Err(QuarticError::Degenerate(
            "f equals the square of the fitted quadratic",
        ));
    }
    if h[0].is_zero() {
        return Ok(None);
    }
    // Sum of the three roots is −h2/h3.
    let t3 = -(&h[1] / &h[0]) - known_roots_sum;
    if !eval_cubic(&h, &t3).is_zero() {
        return Err(QuarticError::InternalConsistency(format!(
            "residual does not vanish at t = {t3}"
        )));
    }
    let y3 = g.eval(&t3);
    CurvePoint::new(f, t3, y3)
        .map(Some)
        .map_err(|e| QuarticError::InternalConsistency(e.to_string()))
}

fn check_on_curve(f: &MonicQuartic, pt: &CurvePoint) -> Result<(), QuarticError> {
    CurvePoint::new(f, pt.t.clone(), pt.y.clone()).map(|_| ())
}

/// New point from two known points, with `g(t1) = ±y1` and `g(t2) = ±y2`.
///
/// `Ok(None)` means `f − g²` has no root beyond `t1, t2`.
pub fn secant_new_point(
    f: &MonicQuartic,
    p1: &CurvePoint,
    p2: &CurvePoint,
    signs: (Sign, Sign),
) -> Result<Option<CurvePoint>, QuarticError> {
    if p1.t == p2.t {
        return Err(QuarticError::SameAbscissa(p1.t.clone()));
    }
    check_on_curve(f, p1)?;
    check_on_curve(f, p2)?;
    let w1 = signs.0.apply(&p1.y);
    let w2 = signs.1.apply(&p2.y);
    let v1 = &w1 - &p1.t.square();
    let v2 = &w2 - &p2.t.square();
    let alpha = &(&v1 - &v2) / &(&p1.t - &p2.t);
    let beta = &v1 - &(&alpha * &p1.t);
    let g = MonicQuadratic { alpha, beta };
    residual_point(f, &g, &p1.t + &p2.t)
}

/// New point from one known point with `y ≠ 0`, where `g(t1) = ±y1` and `g`
/// also matches the slope of the curve there, so `f − g²` has a double root
/// at `t1`.
pub fn tangent_new_point(
    f: &MonicQuartic,
    p: &CurvePoint,
    sign: Sign,
) -> Result<Option<CurvePoint>, QuarticError> {
    check_on_curve(f, p)?;
    if p.y.is_zero() {
        return Err(QuarticError::Degenerate("tangent undefined where y = 0"));
    }
    let w = sign.apply(&p.y);
    let two = Rational::from(2);
    // 2w·g'(t1) = f'(t1) with g'(t1) = 2t1 + alpha.
    let alpha = &(&f.derivative(&p.t) / &(&two * &w)) - &(&two * &p.t);
    let beta = &(&w - &p.t.square()) - &(&alpha * &p.t);
    let g = MonicQuadratic { alpha, beta };
    residual_point(f, &g, &two * &p.t)
}

/// Outcome of one sign choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variant<S> {
    pub signs: S,
    pub outcome: Result<Option<CurvePoint>, QuarticError>,
}

/// All four sign choices of the secant construction.
pub fn secant_variants(
    f: &MonicQuartic,
    p1: &CurvePoint,
    p2: &CurvePoint,
) -> Vec<Variant<(Sign, Sign)>> {
    Sign::BOTH
        .iter()
        .flat_map(|&s1| Sign::BOTH.iter().map(move |&s2| (s1, s2)))
        .map(|signs| Variant {
            signs,
            outcome: secant_new_point(f, p1, p2, signs),
        })
        .collect()
}

/// Both sign choices of the tangent construction.
pub fn tangent_variants(f: &MonicQuartic, p: &CurvePoint) -> Vec<Variant<Sign>> {
    Sign::BOTH
        .iter()
        .map(|&sign| Variant {
            signs: sign,
            outcome: tangent_new_point(f, p, sign),
        })
        .collect()
}

/// Every point with `t = n/d`, `|n| ≤ height`, `1 ≤ d ≤ height`, sorted by `t`.
pub fn scan_points(f: &MonicQuartic, height: u32) -> Vec<CurvePoint> {
    use num_integer::Integer;
    let h = i64::from(height);
    let mut out: Vec<CurvePoint> = (1..=h)
        .flat_map(|d| (-h..=h).map(move |n| (n, d)))
        .filter(|(n, d)| n.gcd(d) == 1)
        .filter_map(|(n, d)| verify_square_point(f, &Rational::from_i64s(n, d)))
        .collect();
    out.sort_by(|a, b| a.t.cmp(&b.t));
    out
}
