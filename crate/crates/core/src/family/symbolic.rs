//! Polynomial forms of the construction, over `MultiPoly`.
//!
//! These are built independently of the numeric routines in the parent
//! module so that the two can be checked against each other.

use crate::multipoly::{MultiPoly, PolyRing};

fn c(ring: &PolyRing, v: i64) -> MultiPoly {
    ring.constant(v)
}

fn gens<const N: usize>(ring: &PolyRing) -> [MultiPoly; N] {
    ring.gens().try_into().expect("ring arity")
}

/// Ring `p, q, r` with `D = p⁴ − r⁴` and `E = p⁴ − q⁴`.
pub struct PqrForms {
    pub ring: PolyRing,
    pub p: MultiPoly,
    pub q: MultiPoly,
    pub r: MultiPoly,
    pub d: MultiPoly,
    pub e: MultiPoly,
}

impl PqrForms {
    pub fn new() -> Self {
        Self::over(PolyRing::new(&["p", "q", "r"]))
    }

    /// Use the first three variables of `ring` as `p, q, r`.
    pub fn over(ring: PolyRing) -> Self {
        let g = ring.gens();
        let (p, q, r) = (g[0].clone(), g[1].clone(), g[2].clone());
        let d = p.pow(4) - r.pow(4);
        let e = p.pow(4) - q.pow(4);
        PqrForms {
            ring,
            p,
            q,
            r,
            d,
            e,
        }
    }

    /// Numerator and denominator of the first `t` candidate.
    pub fn t_candidate_1(&self) -> (MultiPoly, MultiPoly) {
        let (p, q, r, ring) = (&self.p, &self.q, &self.r, &self.ring);
        let num = (p.pow(2) + q.pow(2))
            * (p.pow(4) + c(ring, 2) * p.pow(3) * q
                - c(ring, 2) * p.pow(2) * r.pow(2)
                - c(ring, 2) * p * q.pow(3)
                - c(ring, 4) * p * q * r.pow(2)
                + q.pow(4)
                + c(ring, 2) * q.pow(2) * r.pow(2)
                + c(ring, 2) * r.pow(4));
        let den = (p.pow(2) - r.pow(2))
            * (p.pow(4) + c(ring, 2) * p.pow(3) * q - c(ring, 2) * p.pow(2) * r.pow(2)
                + c(ring, 2) * p * q.pow(3)
                + q.pow(4)
                - c(ring, 2) * q.pow(2) * r.pow(2)
                - c(ring, 2) * r.pow(4));
        (num, den)
    }

    /// Numerator and denominator of the second `t` candidate.
    pub fn t_candidate_2(&self) -> (MultiPoly, MultiPoly) {
        let (p, q, r, ring) = (&self.p, &self.q, &self.r, &self.ring);
        let num = (p.pow(2) + q.pow(2))
            * (p.pow(4) - c(ring, 2) * p.pow(3) * r - c(ring, 2) * p.pow(2) * q.pow(2)
                + c(ring, 4) * p * q.pow(2) * r
                + c(ring, 2) * p * r.pow(3)
                + c(ring, 2) * q.pow(4)
                + c(ring, 2) * q.pow(2) * r.pow(2)
                + r.pow(4));
        let den = (p.pow(2) - r.pow(2))
            * (p.pow(4)
                - c(ring, 2) * p.pow(3) * r
                - c(ring, 2) * p.pow(2) * q.pow(2)
                - c(ring, 2) * p * r.pow(3)
                - c(ring, 2) * q.pow(4)
                - c(ring, 2) * q.pow(2) * r.pow(2)
                + r.pow(4));
        (num, den)
    }

    /// `p³ − pq² + pqr − pr² + q³ − r³`
    pub fn condition_cubic(&self) -> MultiPoly {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        p.pow(3) - p * q.pow(2) + p * q * r - p * r.pow(2) + q.pow(3) - r.pow(3)
    }

    /// Product of all factors of the compatibility condition.
    pub fn condition_product(&self) -> MultiPoly {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        (q + r)
            * (p.pow(2) + q.pow(2))
            * (q.pow(2) + r.pow(2))
            * (p.pow(2) + p * q - p * r + q.pow(2) - q * r + r.pow(2))
            * self.condition_cubic()
    }

    /// `D²·Q1(t)` as a polynomial: `D²t⁴ − 2DE t³ + 2E² t − E²`, with `t`
    /// replaced by `num/den` and multiplied through by `den⁴`.
    pub fn quartic1_homogenized(&self, num: &MultiPoly, den: &MultiPoly) -> MultiPoly {
        let (d, e, ring) = (&self.d, &self.e, &self.ring);
        d.pow(2) * num.pow(4) - c(ring, 2) * d * e * num.pow(3) * den
            + c(ring, 2) * e.pow(2) * num * den.pow(3)
            - e.pow(2) * den.pow(4)
    }

    /// `D²·Q2(t)` homogenized like [`Self::quartic1_homogenized`]:
    /// `D²t⁴ − 2D²t³ + 2DE t − E²`.
    pub fn quartic2_homogenized(&self, num: &MultiPoly, den: &MultiPoly) -> MultiPoly {
        let (d, e, ring) = (&self.d, &self.e, &self.ring);
        d.pow(2) * num.pow(4) - c(ring, 2) * d.pow(2) * num.pow(3) * den
            + c(ring, 2) * d * e * num * den.pow(3)
            - e.pow(2) * den.pow(4)
    }

    /// Polynomial whose square is `quartic1_homogenized` at the first candidate.
    pub fn candidate_1_root(&self) -> MultiPoly {
        let (p, q, r, ring) = (&self.p, &self.q, &self.r, &self.ring);
        c(ring, 2)
            * (p.pow(2) + q.pow(2))
            * (q.pow(2) + r.pow(2))
            * (p.pow(2) - r.pow(2))
            * (p.pow(5) - c(ring, 2) * p.pow(3) * q.pow(2) + c(ring, 2) * p.pow(2) * q * r.pow(2)
                - p * q.pow(4)
                - c(ring, 2) * p * r.pow(4)
                + c(ring, 2) * q.pow(3) * r.pow(2))
            * (p.pow(4) * q - c(ring, 2) * p.pow(3) * r.pow(2) + c(ring, 2) * p.pow(2) * q.pow(3)
                - c(ring, 2) * p * q.pow(2) * r.pow(2)
                - q.pow(5)
                + c(ring, 2) * q * r.pow(4))
    }

    /// Polynomial whose square is `quartic2_homogenized` at the second candidate.
    pub fn candidate_2_root(&self) -> MultiPoly {
        let (p, q, r, ring) = (&self.p, &self.q, &self.r, &self.ring);
        c(ring, 2)
            * (p.pow(2) + q.pow(2))
            * (q.pow(2) + r.pow(2))
            * (p.pow(2) - r.pow(2))
            * (p.pow(5)
                - c(ring, 2) * p.pow(3) * r.pow(2)
                - c(ring, 2) * p.pow(2) * q.pow(2) * r
                - c(ring, 2) * p * q.pow(4)
                - p * r.pow(4)
                - c(ring, 2) * q.pow(2) * r.pow(3))
            * (p.pow(4) * r
                + c(ring, 2) * p.pow(3) * q.pow(2)
                + c(ring, 2) * p.pow(2) * r.pow(3)
                + c(ring, 2) * p * q.pow(2) * r.pow(2)
                + c(ring, 2) * q.pow(4) * r
                - r.pow(5))
    }
}

impl Default for PqrForms {
    fn default() -> Self {
        Self::new()
    }
}

/// The substitution in ring `p, q, r, t, u`, as `(x, y)`.
pub fn substitution_polys() -> (PolyRing, [MultiPoly; 3], [MultiPoly; 3]) {
    let ring = PolyRing::new(&["p", "q", "r", "t", "u"]);
    let [p, q, r, t, u]: [MultiPoly; 5] = gens(&ring);
    let one = c(&ring, 1);
    let tu1 = &t * &u + &one;
    let u1 = &u + &one;
    let x = [-(&tu1 * p.pow(2)), &u1 * q.pow(2), r.pow(2)];
    let y = [&u1 * p.pow(2), q.pow(2), -(&tu1 * r.pow(2))];
    (ring, x, y)
}

/// Brackets `D t² − 2E t + E`, `D t² − 2D t + E`, `D t² − E` over a ring whose
/// first three variables are `p, q, r`, with `t` given.
pub fn bracket_polys(forms: &PqrForms, t: &MultiPoly) -> [MultiPoly; 3] {
    let (d, e, ring) = (&forms.d, &forms.e, &forms.ring);
    let dt2 = d * t.pow(2);
    [
        &dt2 - c(ring, 2) * e * t + e,
        &dt2 - c(ring, 2) * d * t + e,
        &dt2 - e,
    ]
}

/// The scaled solution in ring `p, q, r, t, k`, as `(x, y)`.
pub fn scaled_solution_polys() -> (PolyRing, [MultiPoly; 3], [MultiPoly; 3]) {
    let ring = PolyRing::new(&["p", "q", "r", "t", "k"]);
    let forms = PqrForms::over(ring.clone());
    let [_, _, _, t, k]: [MultiPoly; 5] = gens(&ring);
    let [b1, b2, b3] = bracket_polys(&forms, &t);
    let (p2, q2, r2) = (forms.p.pow(2), forms.q.pow(2), forms.r.pow(2));
    let x = [&b1 * &p2 * &k, &b2 * &q2 * &k, &b3 * &r2 * &k];
    let y = [&b2 * &p2 * &k, &b3 * &q2 * &k, &b1 * &r2 * &k];
    (ring, x, y)
}

/// Forms in the homogeneous parameters `a, b`.
pub struct AbForms {
    pub ring: PolyRing,
    pub a: MultiPoly,
    pub b: MultiPoly,
}

impl AbForms {
    pub fn new() -> Self {
        let ring = PolyRing::new(&["a", "b"]);
        let [a, b]: [MultiPoly; 2] = gens(&ring);
        AbForms { ring, a, b }
    }

    /// `(p, q, r)` on the compatibility cubic.
    pub fn cubic_parametrization(&self) -> [MultiPoly; 3] {
        let (a, b, ring) = (&self.a, &self.b, &self.ring);
        [
            c(ring, 2) * a.pow(3) - c(ring, 3) * a.pow(2) * b + c(ring, 3) * a * b.pow(2)
                - b.pow(3),
            -a.pow(3) + c(ring, 3) * a.pow(2) * b - c(ring, 2) * a * b.pow(2) + b.pow(3),
            a.pow(3) - a * b.pow(2) + b.pow(3),
        ]
    }

    /// Numerator and denominator of the common `t` value.
    pub fn t_value(&self) -> (MultiPoly, MultiPoly) {
        let (a, b, ring) = (&self.a, &self.b, &self.ring);
        let num = -(c(ring, 5) * a.pow(4) - c(ring, 8) * a.pow(3) * b
            + c(ring, 8) * a.pow(2) * b.pow(2)
            - c(ring, 4) * a * b.pow(3)
            + b.pow(4));
        let den =
            a * (a - b) * (c(ring, 5) * a.pow(2) - c(ring, 5) * a * b + c(ring, 2) * b.pow(2));
        (num, den)
    }

    /// The eight factors, in the same order as `family_factors`.
    pub fn family_factors(&self) -> [MultiPoly; 8] {
        let (a, b, ring) = (&self.a, &self.b, &self.ring);
        [
            c(ring, 2) * a - b,
            a.pow(2) - a * b + b.pow(2),
            c(ring, 5) * a.pow(3) - c(ring, 7) * a.pow(2) * b + c(ring, 4) * a * b.pow(2)
                - b.pow(3),
            a.pow(3) - c(ring, 3) * a.pow(2) * b + c(ring, 2) * a * b.pow(2) - b.pow(3),
            c(ring, 5) * a.pow(3) - c(ring, 8) * a.pow(2) * b + c(ring, 5) * a * b.pow(2)
                - b.pow(3),
            a.pow(3) - a * b.pow(2) + b.pow(3),
            c(ring, 3) * a.pow(2) - c(ring, 3) * a * b + b.pow(2),
            b.clone(),
        ]
    }

    /// Signed roots `(X, Y)` of the final family.
    pub fn family_roots(&self) -> ([MultiPoly; 3], [MultiPoly; 3]) {
        let [f0, f1, f2, f3, f4, f5, f6, f7] = self.family_factors();
        (
            [&f0 * &f1 * &f2, &f3 * &f4, &f5 * &f6 * &f7],
            [&f0 * &f1 * &f4, &f3 * &f6 * &f7, &f5 * &f2],
        )
    }
}

impl Default for AbForms {
    fn default() -> Self {
        Self::new()
    }
}
