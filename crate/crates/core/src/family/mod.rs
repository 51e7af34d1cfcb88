//! Construction pipeline for two triads of biquadrates with equal sums and
//! equal products.
//!
//! The chain runs from the substitution in `(p, q, r, t, u)`, through the
//! scaled solution in `(p, q, r, t, k)` of
//!
//! ```text
//! x1² + x2² + x3² = y1² + y2² + y3²,   x1·x2·x3 = y1·y2·y3,
//! ```
//!
//! the two `t` values that make the quartics `x1·x3` and `x2·x3` squares,
//! the cubic compatibility condition on `(p, q, r)` and its rational
//! parametrization by `(a, b)`, down to the final two-parameter family in
//! which all six values are perfect squares.

mod symbolic;
mod triad;

pub use symbolic::*;
pub use triad::{canonicalize, is_trivial, Triad, TriadPair};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{is_perfect_square, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("triad entries must be positive, got {0}")]
    NonPositiveEntry(BigInt),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

fn pow(n: &BigInt, e: usize) -> BigInt {
    num_traits::pow(n.clone(), e)
}

/// Nonzero integers `p, q, r` with `D = p⁴ − r⁴` and `E = p⁴ − q⁴` cached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PqrJson", into = "PqrJson")]
pub struct FamilyParams {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
    e: BigInt,
}

#[derive(Serialize, Deserialize)]
struct PqrJson {
    #[serde(with = "crate::exact::bigint_string")]
    p: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    q: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    r: BigInt,
}

impl TryFrom<PqrJson> for FamilyParams {
    type Error = FamilyError;
    fn try_from(v: PqrJson) -> Result<Self, FamilyError> {
        FamilyParams::new(v.p, v.q, v.r)
    }
}

impl From<FamilyParams> for PqrJson {
    fn from(v: FamilyParams) -> Self {
        PqrJson {
            p: v.p,
            q: v.q,
            r: v.r,
        }
    }
}

impl FamilyParams {
    pub fn new(p: BigInt, q: BigInt, r: BigInt) -> Result<Self, FamilyError> {
        for (name, v) in [("p", &p), ("q", &q), ("r", &r)] {
            if v.is_zero() {
                return Err(FamilyError::ZeroParameter(name));
            }
        }
        let p4 = pow(&p, 4);
        let d = &p4 - pow(&r, 4);
        let e = &p4 - pow(&q, 4);
        Ok(FamilyParams { p, q, r, d, e })
    }

    pub fn from_i64s(p: i64, q: i64, r: i64) -> Result<Self, FamilyError> {
        Self::new(p.into(), q.into(), r.into())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// `p⁴ − r⁴`
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// `p⁴ − q⁴`
    pub fn e(&self) -> &BigInt {
        &self.e
    }

    /// `E / D`; fails when `D = 0`.
    pub fn ratio(&self) -> Result<Rational, FamilyError> {
        self.require_nonzero_d()?;
        Ok(Rational::new(self.e.clone(), self.d.clone()).expect("D checked nonzero"))
    }

    pub(crate) fn require_nonzero_d(&self) -> Result<(), FamilyError> {
        if self.d.is_zero() {
            Err(FamilyError::Degenerate("p^4 - r^4 = 0".into()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p, q, r) = ({}, {}, {})", self.p, self.q, self.r)
    }
}

/// A point `(a, b) ≠ (0, 0)` on the parameter line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamPoint {
    pub a: i64,
    pub b: i64,
}

impl ParamPoint {
    pub fn new(a: i64, b: i64) -> Result<Self, FamilyError> {
        if a == 0 && b == 0 {
            return Err(FamilyError::Degenerate("(a, b) = (0, 0)".into()));
        }
        Ok(ParamPoint { a, b })
    }

    fn big(&self) -> (BigInt, BigInt) {
        (BigInt::from(self.a), BigInt::from(self.b))
    }
}

/// Ways an `(a, b)` point can fail to give a usable pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// Zeroes a triad entry.
    BZero,
    /// Zeroes a triad entry.
    BEqualsTwoA,
    /// Pole of the coinciding `t` value.
    AZero,
    /// Pole of the coinciding `t` value.
    AEqualsB,
}

impl Degeneracy {
    pub fn reason(&self) -> &'static str {
        match self {
            Degeneracy::BZero => "b = 0 makes a triad entry zero",
            Degeneracy::BEqualsTwoA => "b = 2a makes a triad entry zero",
            Degeneracy::AZero => "a = 0 is a pole of t(a, b)",
            Degeneracy::AEqualsB => "a = b is a pole of t(a, b)",
        }
    }
}

/// Every degeneracy that applies to `pt`, in a fixed order.
pub fn classify(pt: &ParamPoint) -> Vec<Degeneracy> {
    let mut out = Vec::new();
    if pt.b == 0 {
        out.push(Degeneracy::BZero);
    }
    if i128::from(pt.b) == 2 * i128::from(pt.a) {
        out.push(Degeneracy::BEqualsTwoA);
    }
    if pt.a == 0 {
        out.push(Degeneracy::AZero);
    }
    if pt.a == pt.b {
        out.push(Degeneracy::AEqualsB);
    }
    out
}

/// Six values `x1..x3`, `y1..y3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Six<T> {
    pub x: [T; 3],
    pub y: [T; 3],
}

impl<T> Six<T> {
    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.x.iter().chain(self.y.iter())
    }
}

/// The initial substitution in `p, q, r, t, u`:
/// `x = (−(tu+1)p², (u+1)q², r²)`, `y = ((u+1)p², q², −(tu+1)r²)`.
pub fn substitute_xy(params: &FamilyParams, t: &Rational, u: &Rational) -> Six<Rational> {
    let p2 = Rational::from_integer(pow(&params.p, 2));
    let q2 = Rational::from_integer(pow(&params.q, 2));
    let r2 = Rational::from_integer(pow(&params.r, 2));
    let tu1 = t * u + Rational::one();
    let u1 = u + &Rational::one();
    Six {
        x: [-(&tu1 * &p2), &u1 * &q2, r2.clone()],
        y: [&u1 * &p2, q2, -(&tu1 * &r2)],
    }
}

/// Nonzero root of the sum equation after substitution, which factors as
/// `u·[(t²D − E)·u + 2(tD − E)] = 0`.
pub fn solve_u(params: &FamilyParams, t: &Rational) -> Result<Rational, FamilyError> {
    let d = Rational::from_integer(params.d.clone());
    let e = Rational::from_integer(params.e.clone());
    let lead = &t.square() * &d - &e;
    if lead.is_zero() {
        return Err(FamilyError::Degenerate("t^2*D - E = 0".into()));
    }
    let lin = t * &d - &e;
    if lin.is_zero() {
        return Err(FamilyError::Degenerate(
            "t*D = E leaves only the trivial root u = 0".into(),
        ));
    }
    Ok(-(Rational::from_integer(2) * lin) / lead)
}

/// The three brackets `D t² − 2E t + E`, `D t² − 2D t + E`, `D t² − E`.
pub fn brackets(params: &FamilyParams, t: &Rational) -> [Rational; 3] {
    let d = Rational::from_integer(params.d.clone());
    let e = Rational::from_integer(params.e.clone());
    let two = Rational::from_integer(2);
    let dt2 = &d * &t.square();
    [
        &dt2 - &(&two * &e * t) + &e,
        &dt2 - &(&two * &d * t) + &e,
        &dt2 - &e,
    ]
}

/// Where a solution came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Params {
        #[serde(flatten)]
        params: Box<FamilyParams>,
        t: Rational,
        k: Rational,
    },
    Point {
        a: i64,
        b: i64,
    },
}

/// Six integers solving the sum-of-squares and product equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSix {
    pub values: Six<BigInt>,
    pub provenance: Provenance,
}

impl SolutionSix {
    pub fn as_array(&self) -> [BigInt; 6] {
        let [x1, x2, x3] = self.values.x.clone();
        let [y1, y2, y3] = self.values.y.clone();
        [x1, x2, x3, y1, y2, y3]
    }
}

/// The scaled solution `x = (B1 p², B2 q², B3 r²)·k`, `y = (B2 p², B3 q², B1 r²)·k`.
///
/// Denominators coming from a rational `t` or `k` are cleared by folding the
/// least common multiple into `k`; the provenance records the effective `k`.
pub fn param_solution(
    params: &FamilyParams,
    t: &Rational,
    k: &Rational,
) -> Result<SolutionSix, FamilyError> {
    params.require_nonzero_d()?;
    let [b1, b2, b3] = brackets(params, t);
    let p2 = Rational::from_integer(pow(&params.p, 2));
    let q2 = Rational::from_integer(pow(&params.q, 2));
    let r2 = Rational::from_integer(pow(&params.r, 2));
    let raw = [
        &b1 * &p2 * k,
        &b2 * &q2 * k,
        &b3 * &r2 * k,
        &b2 * &p2 * k,
        &b3 * &q2 * k,
        &b1 * &r2 * k,
    ];
    let lcm = raw.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scale = Rational::from_integer(lcm);
    let ints: Vec<BigInt> = raw
        .iter()
        .map(|v| (v * &scale).to_integer().expect("denominators cleared"))
        .collect();
    let [x1, x2, x3, y1, y2, y3]: [BigInt; 6] = ints.try_into().expect("six values");
    Ok(SolutionSix {
        values: Six {
            x: [x1, x2, x3],
            y: [y1, y2, y3],
        },
        provenance: Provenance::Params {
            params: Box::new(params.clone()),
            t: t.clone(),
            k: k * &scale,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub sums_equal: bool,
    pub products_equal: bool,
    /// `x1² + x2² + x3²`
    #[serde(with = "crate::exact::bigint_string")]
    pub sum: BigInt,
    /// `x1·x2·x3`
    #[serde(with = "crate::exact::bigint_string")]
    pub product: BigInt,
}

impl SystemReport {
    pub fn holds(&self) -> bool {
        self.sums_equal && self.products_equal
    }
}

/// Evaluate both sides of the sum-of-squares and product equations.
pub fn verify_system(values: &Six<BigInt>) -> SystemReport {
    let sq = |v: &[BigInt; 3]| -> BigInt { v.iter().map(|x| x * x).sum() };
    let prod = |v: &[BigInt; 3]| -> BigInt { v.iter().product() };
    let sum = sq(&values.x);
    let product = prod(&values.x);
    SystemReport {
        sums_equal: sum == sq(&values.y),
        products_equal: product == prod(&values.y),
        sum,
        product,
    }
}

/// Whether two six-vectors are proportional, by cross-multiplying all 15 pairs.
pub fn is_proportional(u: &[BigInt; 6], v: &[BigInt; 6]) -> bool {
    (0..6).all(|i| (i + 1..6).all(|j| &u[i] * &v[j] == &u[j] * &v[i]))
}

fn ratio_or_degenerate(
    num: BigInt,
    den_factors: [(&'static str, BigInt); 2],
) -> Result<Rational, FamilyError> {
    for (name, f) in &den_factors {
        if f.is_zero() {
            return Err(FamilyError::Degenerate(format!("{name} = 0")));
        }
    }
    let [(_, f1), (_, f2)] = den_factors;
    Ok(Rational::new(num, f1 * f2).expect("nonzero denominator"))
}

/// The value of `t` that makes `x1·x3` a square, obtained from two known
/// points on the first quartic.
pub fn t_candidate_1(params: &FamilyParams) -> Result<Rational, FamilyError> {
    let (p, q, r) = (&params.p, &params.q, &params.r);
    let (p2, q2, r2) = (p * p, q * q, r * r);
    let num_bracket: BigInt =
        pow(p, 4) + 2 * pow(p, 3) * q - 2 * &p2 * &r2 - 2 * p * pow(q, 3) - 4 * p * q * &r2
            + pow(q, 4)
            + 2 * &q2 * &r2
            + 2 * pow(r, 4);
    let den_bracket: BigInt =
        pow(p, 4) + 2 * pow(p, 3) * q - 2 * &p2 * &r2 + 2 * p * pow(q, 3) + pow(q, 4)
            - 2 * &q2 * &r2
            - 2 * pow(r, 4);
    ratio_or_degenerate(
        (&p2 + &q2) * num_bracket,
        [
            ("p^2 - r^2", &p2 - &r2),
            (
                "p^4 + 2p^3q - 2p^2r^2 + 2pq^3 + q^4 - 2q^2r^2 - 2r^4",
                den_bracket,
            ),
        ],
    )
}

/// The value of `t` that makes `x2·x3` a square.
pub fn t_candidate_2(params: &FamilyParams) -> Result<Rational, FamilyError> {
    let (p, q, r) = (&params.p, &params.q, &params.r);
    let (p2, q2, r2) = (p * p, q * q, r * r);
    let num_bracket: BigInt = pow(p, 4) - 2 * pow(p, 3) * r - 2 * &p2 * &q2
        + 4 * p * &q2 * r
        + 2 * p * pow(r, 3)
        + 2 * pow(q, 4)
        + 2 * &q2 * &r2
        + pow(r, 4);
    let den_bracket: BigInt = pow(p, 4)
        - 2 * pow(p, 3) * r
        - 2 * &p2 * &q2
        - 2 * p * pow(r, 3)
        - 2 * pow(q, 4)
        - 2 * &q2 * &r2
        + pow(r, 4);
    ratio_or_degenerate(
        (&p2 + &q2) * num_bracket,
        [
            ("p^2 - r^2", &p2 - &r2),
            (
                "p^4 - 2p^3r - 2p^2q^2 - 2pr^3 - 2q^4 - 2q^2r^2 + r^4",
                den_bracket,
            ),
        ],
    )
}

/// The cubic factor `p³ − pq² + pqr − pr² + q³ − r³` whose vanishing makes
/// the two `t` candidates coincide.
pub fn condition_value(p: &BigInt, q: &BigInt, r: &BigInt) -> BigInt {
    pow(p, 3) - p * q * q + p * q * r - p * r * r + pow(q, 3) - pow(r, 3)
}

/// A point on the cubic `condition_value = 0` from the line through its
/// singular point `(−1, −1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicPoint {
    #[serde(with = "crate::exact::bigint_string")]
    pub p: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    pub q: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    pub r: BigInt,
    /// Set when a component is zero or `p⁴ = r⁴`, so downstream ops cannot use it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<String>,
}

impl CubicPoint {
    pub fn params(&self) -> Result<FamilyParams, FamilyError> {
        if let Some(why) = &self.degenerate {
            return Err(FamilyError::Degenerate(why.clone()));
        }
        FamilyParams::new(self.p.clone(), self.q.clone(), self.r.clone())
    }
}

pub fn parametrize_cubic(pt: &ParamPoint) -> CubicPoint {
    let (a, b) = pt.big();
    let (a2, b2) = (&a * &a, &b * &b);
    let (a3, b3) = (&a2 * &a, &b2 * &b);
    let p: BigInt = 2 * &a3 - 3 * &a2 * &b + 3 * &a * &b2 - &b3;
    let q: BigInt = -&a3 + 3 * &a2 * &b - 2 * &a * &b2 + &b3;
    let r: BigInt = &a3 - &a * &b2 + &b3;
    let degenerate = if p.is_zero() || q.is_zero() || r.is_zero() {
        Some("a component of (p, q, r) is zero".to_string())
    } else if p.abs() == r.abs() {
        Some(if p == q && q == r {
            "p = q = r".to_string()
        } else {
            "p^4 = r^4".to_string()
        })
    } else {
        None
    };
    CubicPoint {
        p,
        q,
        r,
        degenerate,
    }
}

/// The common value of both `t` candidates along the parametrized cubic,
/// `−(5a⁴ − 8a³b + 8a²b² − 4ab³ + b⁴) / (a(a − b)(5a² − 5ab + 2b²))`.
pub fn t_of_ab(pt: &ParamPoint) -> Result<Rational, FamilyError> {
    if pt.a == 0 {
        return Err(FamilyError::Degenerate(Degeneracy::AZero.reason().into()));
    }
    if pt.a == pt.b {
        return Err(FamilyError::Degenerate(
            Degeneracy::AEqualsB.reason().into(),
        ));
    }
    let (a, b) = pt.big();
    let num: BigInt = 5 * pow(&a, 4) - 8 * pow(&a, 3) * &b + 8 * pow(&a, 2) * pow(&b, 2)
        - 4 * &a * pow(&b, 3)
        + pow(&b, 4);
    // 5a² − 5ab + 2b² has negative discriminant, so it is nonzero here.
    let den = &a * (&a - &b) * (5 * &a * &a - 5 * &a * &b + 2 * &b * &b);
    Ok(Rational::new(-num, den).expect("nonzero denominator"))
}

/// The eight polynomial factors of the final family at `(a, b)`, in the order
/// `2a−b, a²−ab+b², 5a³−7a²b+4ab²−b³, a³−3a²b+2ab²−b³, 5a³−8a²b+5ab²−b³,
/// a³−ab²+b³, 3a²−3ab+b², b`.
pub fn family_factors(pt: &ParamPoint) -> [BigInt; 8] {
    let (a, b) = pt.big();
    let (a2, b2) = (&a * &a, &b * &b);
    let (a3, b3) = (&a2 * &a, &b2 * &b);
    let ab = &a * &b;
    [
        2 * &a - &b,
        &a2 - &ab + &b2,
        5 * &a3 - 7 * &a2 * &b + 4 * &a * &b2 - &b3,
        &a3 - 3 * &a2 * &b + 2 * &a * &b2 - &b3,
        5 * &a3 - 8 * &a2 * &b + 5 * &a * &b2 - &b3,
        &a3 - &a * &b2 + &b3,
        3 * &a2 - 3 * &ab + &b2,
        b,
    ]
}

/// Signed square roots `(X, Y)` of the final family before sign stripping.
pub fn family_roots(pt: &ParamPoint) -> ([BigInt; 3], [BigInt; 3]) {
    let [f0, f1, f2, f3, f4, f5, f6, f7] = family_factors(pt);
    let x = [&f0 * &f1 * &f2, &f3 * &f4, &f5 * &f6 * &f7];
    let y = [&f0 * &f1 * &f4, &f3 * &f6 * &f7, &f5 * &f2];
    (x, y)
}

/// Output of [`final_family`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub point: ParamPoint,
    pub cubic: CubicPoint,
    /// Absent when `a = 0` or `a = b`.
    pub t: Option<Rational>,
    /// Six perfect squares solving the sum-of-squares and product equations.
    pub squares: SolutionSix,
    /// Nonnegative square roots of `squares`.
    pub roots: Six<BigInt>,
    pub pair: TriadPair,
    pub trivial: bool,
}

/// The two-parameter family at `(a, b)`. Fails with a degenerate error when
/// an entry vanishes (`b = 0` or `b = 2a`); a pair of equal triads is
/// returned with `trivial` set.
pub fn final_family(pt: &ParamPoint) -> Result<FamilyMember, FamilyError> {
    let pt = ParamPoint::new(pt.a, pt.b)?;
    let (sx, sy) = family_roots(&pt);
    if sx.iter().chain(&sy).any(Zero::is_zero) {
        let why = classify(&pt)
            .into_iter()
            .find(|d| matches!(d, Degeneracy::BZero | Degeneracy::BEqualsTwoA))
            .map(|d| d.reason().to_string())
            .unwrap_or_else(|| "zero triad entry".into());
        return Err(FamilyError::Degenerate(why));
    }
    let squares = Six {
        x: sx.clone().map(|v| &v * &v),
        y: sy.clone().map(|v| &v * &v),
    };
    let root = |v: &BigInt, signed: &BigInt| -> Result<BigInt, FamilyError> {
        let r = is_perfect_square(v).ok_or_else(|| {
            FamilyError::InternalConsistency(format!("{v} is not a perfect square"))
        })?;
        if r != signed.abs() {
            return Err(FamilyError::InternalConsistency(format!(
                "square root of {v} is {r}, expected |{signed}|"
            )));
        }
        Ok(r)
    };
    let rx = [
        root(&squares.x[0], &sx[0])?,
        root(&squares.x[1], &sx[1])?,
        root(&squares.x[2], &sx[2])?,
    ];
    let ry = [
        root(&squares.y[0], &sy[0])?,
        root(&squares.y[1], &sy[1])?,
        root(&squares.y[2], &sy[2])?,
    ];
    let pair = canonicalize(&rx, &ry)?.with_source(pt);
    let trivial = is_trivial(&pair);
    Ok(FamilyMember {
        point: pt,
        cubic: parametrize_cubic(&pt),
        t: t_of_ab(&pt).ok(),
        squares: SolutionSix {
            values: squares,
            provenance: Provenance::Point { a: pt.a, b: pt.b },
        },
        roots: Six { x: rx, y: ry },
        pair,
        trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn bigs<const N: usize>(v: [i64; N]) -> [BigInt; N] {
        v.map(BigInt::from)
    }

    fn params(p: i64, q: i64, r: i64) -> FamilyParams {
        FamilyParams::from_i64s(p, q, r).unwrap()
    }

    #[test]
    fn params_reject_zero() {
        assert_eq!(
            FamilyParams::from_i64s(1, 0, 2),
            Err(FamilyError::ZeroParameter("q"))
        );
        let f = params(9, -7, -1);
        assert_eq!(f.d(), &BigInt::from(6560));
        assert_eq!(f.e(), &BigInt::from(4160));
    }

    #[test]
    fn substitution_examples() {
        let s = substitute_xy(&params(1, 1, 1), &Rational::zero(), &Rational::zero());
        assert_eq!(s.x, [q("-1"), q("1"), q("1")]);
        assert_eq!(s.y, [q("1"), q("1"), q("-1")]);

        let s = substitute_xy(&params(2, 1, 3), &q("2"), &q("-58/55"));
        let px: Rational = s.x.iter().cloned().product();
        let py: Rational = s.y.iter().cloned().product();
        assert_eq!(px, py);
    }

    #[test]
    fn solve_u_example_back_substitutes() {
        let f = params(2, 1, 3);
        let u = solve_u(&f, &q("2")).unwrap();
        assert_eq!(u, q("-58/55"));
        let s = substitute_xy(&f, &q("2"), &u);
        let sq = |v: &[Rational; 3]| -> Rational { v.iter().map(Rational::square).sum() };
        assert_eq!(sq(&s.x), sq(&s.y));
        let px: Rational = s.x.iter().cloned().product();
        let py: Rational = s.y.iter().cloned().product();
        assert_eq!(px, py);
    }

    #[test]
    fn solve_u_degenerate() {
        let f = params(2, 1, 3);
        // D = -65, E = 15: t = E/D makes tD = E.
        assert!(matches!(
            solve_u(&f, &q("-3/13")),
            Err(FamilyError::Degenerate(_))
        ));
        // t² D = E has no rational solution here; use p = q so E = 0, t = 0.
        let g = params(2, 2, 3);
        assert!(matches!(
            solve_u(&g, &Rational::zero()),
            Err(FamilyError::Degenerate(_))
        ));
    }

    #[test]
    fn param_solution_example() {
        let s = param_solution(&params(2, 1, 3), &q("2"), &q("1")).unwrap();
        assert_eq!(s.values.x, bigs([-1220, 15, -2475]));
        assert_eq!(s.values.y, bigs([60, -275, -2745]));
        let rep = verify_system(&s.values);
        assert!(rep.sums_equal && rep.products_equal);
        assert_eq!(rep.sum, BigInt::from(7_614_250));
        assert_eq!(rep.product, BigInt::from(45_292_500));

        let s2 = param_solution(&params(2, 1, 3), &q("2"), &q("2")).unwrap();
        for (a, b) in s.values.iter().zip(s2.values.iter()) {
            assert_eq!(b, &(a * 2));
        }
    }

    #[test]
    fn param_solution_clears_denominators() {
        let s = param_solution(&params(9, -7, -1), &q("-13/12"), &q("1")).unwrap();
        let Provenance::Params { k, .. } = &s.provenance else {
            panic!("expected params provenance")
        };
        assert!(k.is_integer());
        assert!(verify_system(&s.values).holds());
        let fam = final_family(&ParamPoint::new(1, -1).unwrap()).unwrap();
        assert!(is_proportional(&s.as_array(), &fam.squares.as_array()));
    }

    #[test]
    fn param_solution_needs_nonzero_d() {
        assert!(matches!(
            param_solution(&params(2, 1, -2), &q("1"), &q("1")),
            Err(FamilyError::Degenerate(_))
        ));
    }

    #[test]
    fn ratio_invariants() {
        let f = params(2, 1, 3);
        let s = param_solution(&f, &q("5/7"), &q("3")).unwrap();
        let (p2, q2, r2) = (f.p() * f.p(), f.q() * f.q(), f.r() * f.r());
        let Six { x, y } = &s.values;
        assert_eq!(&y[0] * &q2, &x[1] * &p2);
        assert_eq!(&y[1] * &r2, &x[2] * &q2);
        assert_eq!(&y[2] * &p2, &x[0] * &r2);
    }

    #[test]
    fn verify_system_examples() {
        let perm = Six {
            x: bigs([1, 2, 3]),
            y: bigs([3, 2, 1]),
        };
        assert!(verify_system(&perm).holds());
        let bad = verify_system(&Six {
            x: bigs([1, 1, 1]),
            y: bigs([1, 1, 2]),
        });
        assert!(!bad.sums_equal && !bad.products_equal);
    }

    #[test]
    fn t_candidates() {
        assert_eq!(t_candidate_1(&params(3, 2, 1)).unwrap(), q("65/72"));
        assert_eq!(t_candidate_1(&params(9, -7, -1)).unwrap(), q("-13/12"));
        assert_eq!(t_candidate_2(&params(3, 2, 1)).unwrap(), q("-65/72"));
        assert_eq!(t_candidate_2(&params(9, -7, -1)).unwrap(), q("-13/12"));
        for f in [params(2, 3, 2), params(2, 3, -2)] {
            assert!(matches!(
                t_candidate_1(&f),
                Err(FamilyError::Degenerate(ref why)) if why.starts_with("p^2 - r^2")
            ));
            assert!(t_candidate_2(&f).is_err());
        }
    }

    #[test]
    fn condition_examples() {
        let c = |p: i64, q: i64, r: i64| condition_value(&p.into(), &q.into(), &r.into());
        assert_eq!(c(9, -7, -1), BigInt::zero());
        assert_eq!(c(3, 2, 1), BigInt::from(25));
        assert_eq!(c(-1, -1, 1), BigInt::zero());
    }

    #[test]
    fn cubic_parametrization() {
        let pt = |a, b| parametrize_cubic(&ParamPoint::new(a, b).unwrap());
        let c = pt(1, -1);
        assert_eq!([c.p.clone(), c.q.clone(), c.r.clone()], bigs([9, -7, -1]));
        assert!(c.degenerate.is_none());
        let c = pt(1, 0);
        assert_eq!([c.p.clone(), c.q.clone(), c.r.clone()], bigs([2, -1, 1]));
        assert_eq!(condition_value(&c.p, &c.q, &c.r), BigInt::zero());
        let c = pt(1, 1);
        assert_eq!([c.p.clone(), c.q.clone(), c.r.clone()], bigs([1, 1, 1]));
        assert_eq!(c.degenerate.as_deref(), Some("p = q = r"));
        assert!(c.params().is_err());
    }

    #[test]
    fn t_of_ab_examples() {
        assert_eq!(
            t_of_ab(&ParamPoint::new(1, -1).unwrap()).unwrap(),
            q("-13/12")
        );
        assert_eq!(t_of_ab(&ParamPoint::new(1, 0).unwrap()).unwrap(), q("-1"));
        assert!(t_of_ab(&ParamPoint::new(1, 1).unwrap()).is_err());
        assert!(t_of_ab(&ParamPoint::new(0, 1).unwrap()).is_err());
    }

    #[test]
    fn final_family_example() {
        let m = final_family(&ParamPoint::new(1, -1).unwrap()).unwrap();
        assert_eq!(m.pair.left(), &Triad::from_u64s([7, 133, 153]).unwrap());
        assert_eq!(m.pair.right(), &Triad::from_u64s([17, 49, 171]).unwrap());
        assert_eq!(m.pair.sum4(), &BigInt::from(860_884_403u64));
        assert_eq!(m.pair.prod(), &BigInt::from(142_443));
        assert!(!m.trivial);
        assert_eq!(m.roots.x, bigs([153, 133, 7]));
        assert_eq!(m.roots.y, bigs([171, 49, 17]));
        assert!(verify_system(&m.squares.values).holds());
        assert_eq!(m.t, Some(q("-13/12")));
    }

    #[test]
    fn final_family_degenerate_and_trivial() {
        let m = final_family(&ParamPoint::new(1, 1).unwrap()).unwrap();
        assert!(m.trivial);
        assert_eq!(m.pair.left(), &Triad::from_u64s([1, 1, 1]).unwrap());
        for (a, b) in [(1, 0), (3, 6), (-2, -4)] {
            assert!(matches!(
                final_family(&ParamPoint { a, b }),
                Err(FamilyError::Degenerate(_))
            ));
        }
        assert!(final_family(&ParamPoint { a: 0, b: 0 }).is_err());
    }

    #[test]
    fn classification() {
        let c = |a, b| classify(&ParamPoint { a, b });
        assert_eq!(c(1, -1), vec![]);
        assert_eq!(c(1, 0), vec![Degeneracy::BZero]);
        assert_eq!(c(2, 4), vec![Degeneracy::BEqualsTwoA]);
        assert_eq!(c(0, 3), vec![Degeneracy::AZero]);
        assert_eq!(c(5, 5), vec![Degeneracy::AEqualsB]);
    }

    #[test]
    fn proportionality() {
        let u = bigs([1, 2, 3, 4, 5, 6]);
        let v = bigs([-2, -4, -6, -8, -10, -12]);
        assert!(is_proportional(&u, &v));
        assert!(!is_proportional(&u, &bigs([1, 2, 3, 4, 5, 7])));
    }
}
