//! Symbolic identity suite for the whole construction.
//!
//! Each check expands a polynomial that must vanish identically and reports
//! whether it does. A handful of reference points for the two quartic curves are
//! evaluated and reported for information only: under the curve equations
//! as built here they do not lie on the curves.

use crate::clock::Stopwatch;

use serde::Serialize;

use crate::exact::Rational;
use crate::family::{bracket_polys, scaled_solution_polys, substitution_polys, AbForms, PqrForms};
use crate::multipoly::{MultiPoly, PolyRing};
use crate::quartic::{build_quartics, MonicQuartic};
use crate::FamilyParams;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

impl IdentityCheck {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("{}: {}: {}", self.name, self.detail, verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListedPoint {
    pub curve: &'static str,
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub t: Rational,
    /// The `y` given with `t`.
    pub y: Rational,
    /// The curve evaluated at `t`.
    pub value: Rational,
    pub y_squared: Rational,
    pub on_curve: bool,
    /// Whether the value at `t` is a rational square at all.
    pub value_is_square: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub informational: Vec<ListedPoint>,
    pub elapsed_ms: u128,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn vanishes(name: &str, what: &str, poly: &MultiPoly) -> IdentityCheck {
    let detail = if poly.is_zero() {
        format!("{what} zero polynomial")
    } else {
        format!("{what} residual with {} terms", poly.num_terms())
    };
    IdentityCheck {
        name: name.to_string(),
        detail,
        passed: poly.is_zero(),
    }
}

fn all_vanish(name: &str, what: &str, polys: &[MultiPoly]) -> IdentityCheck {
    let bad = polys.iter().filter(|p| !p.is_zero()).count();
    IdentityCheck {
        name: name.to_string(),
        detail: if bad == 0 {
            format!("{} {what} zero polynomials", polys.len())
        } else {
            format!("{bad} of {} {what} nonzero", polys.len())
        },
        passed: bad == 0,
    }
}

fn sum_sq(v: &[MultiPoly; 3]) -> MultiPoly {
    v.iter()
        .map(|x| x.pow(2))
        .reduce(|a, b| a + b)
        .expect("three terms")
}

fn prod3(v: &[MultiPoly; 3]) -> MultiPoly {
    &v[0] * &v[1] * &v[2]
}

fn substitution_checks(out: &mut Vec<IdentityCheck>) {
    let (ring, x, y) = substitution_polys();
    out.push(vanishes(
        "substitution product identity",
        "x1*x2*x3 - y1*y2*y3 in p,q,r,t,u:",
        &(prod3(&x) - prod3(&y)),
    ));

    let forms = PqrForms::over(ring.clone());
    let g = ring.gens();
    let (t, u) = (&g[3], &g[4]);
    let (d, e) = (&forms.d, &forms.e);
    let two = ring.constant(2);
    let factored = u * ((t.pow(2) * d - e) * u + &two * (t * d - e));
    out.push(vanishes(
        "substitution sum equation is linear in u",
        "sum difference - u*((t^2*D - E)*u + 2*(t*D - E)):",
        &(sum_sq(&x) - sum_sq(&y) - factored),
    ));

    // With u = N/M, M·(substituted values) must equal the scaled brackets.
    let ring4 = PolyRing::new(&["p", "q", "r", "t"]);
    let f4 = PqrForms::over(ring4.clone());
    let t = &ring4.gens()[3];
    let n = ring4.constant(-2) * (t * &f4.d - &f4.e);
    let m = t.pow(2) * &f4.d - &f4.e;
    let [b1, b2, b3] = bracket_polys(&f4, t);
    let (p2, q2, r2) = (f4.p.pow(2), f4.q.pow(2), f4.r.pow(2));
    let tn_m = -(t * &n + &m);
    let n_m = &n + &m;
    let lhs = [
        &tn_m * &p2,
        &n_m * &q2,
        &m * &r2,
        &n_m * &p2,
        &m * &q2,
        &tn_m * &r2,
    ];
    let rhs = [
        &b1 * &p2,
        &b2 * &q2,
        &b3 * &r2,
        &b2 * &p2,
        &b3 * &q2,
        &b1 * &r2,
    ];
    let diffs: Vec<MultiPoly> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
    out.push(all_vanish(
        "solved u reproduces the scaled solution",
        "cleared-denominator component differences:",
        &diffs,
    ));
}

fn scaled_solution_checks(out: &mut Vec<IdentityCheck>) {
    let (ring, x, y) = scaled_solution_polys();
    out.push(vanishes(
        "scaled solution sum identity",
        "sum of squares difference in p,q,r,t,k:",
        &(sum_sq(&x) - sum_sq(&y)),
    ));
    out.push(vanishes(
        "scaled solution product identity",
        "x1*x2*x3 - y1*y2*y3 in p,q,r,t,k:",
        &(prod3(&x) - prod3(&y)),
    ));
    let g = ring.gens();
    let (p2, q2, r2) = (g[0].pow(2), g[1].pow(2), g[2].pow(2));
    out.push(all_vanish(
        "scaled solution ratio invariants",
        "y1*q^2 - x2*p^2, y2*r^2 - x3*q^2, y3*p^2 - x1*r^2:",
        &[
            &y[0] * &q2 - &x[1] * &p2,
            &y[1] * &r2 - &x[2] * &q2,
            &y[2] * &p2 - &x[0] * &r2,
        ],
    ));
}

fn quartic_checks(out: &mut Vec<IdentityCheck>) {
    let ring = PolyRing::new(&["p", "q", "r", "t"]);
    let forms = PqrForms::over(ring.clone());
    let t = &ring.gens()[3];
    let one = ring.constant(1);
    let [b1, b2, b3] = bracket_polys(&forms, t);
    out.push(all_vanish(
        "quartics are the bracket products",
        "D^2*Q1(t) - B1*B3, D^2*Q2(t) - B2*B3:",
        &[
            forms.quartic1_homogenized(t, &one) - &b1 * &b3,
            forms.quartic2_homogenized(t, &one) - &b2 * &b3,
        ],
    ));

    let forms = PqrForms::new();
    let (n1, d1) = forms.t_candidate_1();
    let (n2, d2) = forms.t_candidate_2();
    out.push(vanishes(
        "first t candidate gives a square",
        "den^4*D^2*Q1(num/den) - S1^2:",
        &(forms.quartic1_homogenized(&n1, &d1) - forms.candidate_1_root().pow(2)),
    ));
    out.push(vanishes(
        "second t candidate gives a square",
        "den^4*D^2*Q2(num/den) - S2^2:",
        &(forms.quartic2_homogenized(&n2, &d2) - forms.candidate_2_root().pow(2)),
    ));
    let p2r2 = forms.p.pow(2) - forms.r.pow(2);
    out.push(vanishes(
        "compatibility condition factorization",
        "N1*D2 - N2*D1 + 4*(p^2 - r^2)*(factored condition):",
        &(&n1 * &d2 - &n2 * &d1 + forms.ring.constant(4) * p2r2 * forms.condition_product()),
    ));
}

fn parametrization_checks(out: &mut Vec<IdentityCheck>) {
    let forms = PqrForms::new();
    let ab = AbForms::new();
    let pqr = ab.cubic_parametrization();
    let cond = forms
        .condition_cubic()
        .compose(&pqr)
        .expect("three images over a,b");
    out.push(vanishes(
        "cubic parametrization lies on the condition cubic",
        "condition(p(a,b), q(a,b), r(a,b)):",
        &cond,
    ));

    let (nab, dab) = ab.t_value();
    let mut diffs = Vec::new();
    for (n, d) in [forms.t_candidate_1(), forms.t_candidate_2()] {
        let n = n.compose(&pqr).expect("compose");
        let d = d.compose(&pqr).expect("compose");
        diffs.push(&n * &dab - &nab * &d);
    }
    out.push(all_vanish(
        "t candidates coincide along the cubic",
        "cross-multiplied differences with t(a,b):",
        &diffs,
    ));

    let (x, y) = ab.family_roots();
    let fourth = |v: &[MultiPoly; 3]| {
        v.iter()
            .map(|z| z.pow(4))
            .reduce(|a, b| a + b)
            .expect("three")
    };
    let sx = fourth(&x);
    let sum_ok = sx.is_homogeneous() && sx.degree() == Some(24);
    let mut sum_check = vanishes("final family sum identity", "degree-24", &(sx - fourth(&y)));
    sum_check.passed &= sum_ok;
    out.push(sum_check);
    out.push(vanishes(
        "final family product identity",
        "X1*X2*X3 - Y1*Y2*Y3 in a,b:",
        &(prod3(&x) - prod3(&y)),
    ));

    // Scaled solution at (p,q,r)(a,b) and t = nab/dab, times dab², against
    // the squares of the final family.
    let d = forms.d.compose(&pqr).expect("compose");
    let e = forms.e.compose(&pqr).expect("compose");
    let two = ab.ring.constant(2);
    let b1 = &d * nab.pow(2) - &two * &e * &nab * &dab + &e * dab.pow(2);
    let b2 = &d * nab.pow(2) - &two * &d * &nab * &dab + &e * dab.pow(2);
    let b3 = &d * nab.pow(2) - &e * dab.pow(2);
    let (p2, q2, r2) = (pqr[0].pow(2), pqr[1].pow(2), pqr[2].pow(2));
    let v = [
        &b1 * &p2,
        &b2 * &q2,
        &b3 * &r2,
        &b2 * &p2,
        &b3 * &q2,
        &b1 * &r2,
    ];
    let w: Vec<MultiPoly> = x.iter().chain(y.iter()).map(|z| z.pow(2)).collect();
    let mut cross = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            cross.push(&v[i] * &w[j] - &v[j] * &w[i]);
        }
    }
    out.push(all_vanish(
        "final family proportional to the scaled solution",
        "pairwise cross products:",
        &cross,
    ));
}

/// Two reference points per quartic, as `(t, y)` at `(p, q, r)`.
pub fn listed_points(p: i64, q: i64, r: i64) -> Vec<(&'static str, Rational, Rational)> {
    let (p, q, r) = (Rational::from(p), Rational::from(q), Rational::from(r));
    let d = p.pow(4) - r.pow(4);
    let e = p.pow(4) - q.pow(4);
    let two = Rational::from(2);
    let (p2, q2, r2) = (p.square(), q.square(), r.square());
    vec![
        ("Q1", (q.pow(4) - r.pow(4)) / &d, Rational::one()),
        (
            "Q1",
            &two * &p * &q * (&p2 + &q2) * (&q2 - &r2) / ((&p2 - &r2) * (&p2 + &r2).square()),
            (&p2 + &q2) / (&p2 + &r2),
        ),
        ("Q2", -(&e * (q.pow(4) - r.pow(4))) / d.square(), &e / &d),
        (
            "Q2",
            &two * &p * &r * (&p2 - &q2) * (&q2 - &r2) / ((&p2 - &r2).square() * (&p2 + &r2)),
            (&p2 - &q2) / (&p2 - &r2),
        ),
    ]
}

fn evaluate_listed(p: i64, q: i64, r: i64) -> Vec<ListedPoint> {
    let params = FamilyParams::from_i64s(p, q, r).expect("sample parameters are nonzero");
    let (q1, q2): (MonicQuartic, MonicQuartic) =
        build_quartics(&params).expect("sample parameters have D != 0");
    listed_points(p, q, r)
        .into_iter()
        .map(|(curve, t, y)| {
            let f = if curve == "Q1" { &q1 } else { &q2 };
            let value = f.eval(&t);
            let y_squared = y.square();
            ListedPoint {
                curve,
                p,
                q,
                r,
                on_curve: value == y_squared,
                value_is_square: value.sqrt().is_some(),
                t,
                y,
                value,
                y_squared,
            }
        })
        .collect()
}

pub fn run_identity_suite() -> IdentityReport {
    let start = Stopwatch::start();
    let mut checks = Vec::new();
    substitution_checks(&mut checks);
    scaled_solution_checks(&mut checks);
    quartic_checks(&mut checks);
    parametrization_checks(&mut checks);
    let informational = [(3, 2, 1), (5, 3, 2)]
        .into_iter()
        .flat_map(|(p, q, r)| evaluate_listed(p, q, r))
        .collect();
    IdentityReport {
        checks,
        informational,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
