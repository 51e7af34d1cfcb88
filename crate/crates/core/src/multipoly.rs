//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! Terms are stored in a map keyed by exponent vector, ordered by total
//! degree and then lexicographically, and never hold a zero coefficient.
//! Two polynomials over the same variable list are equal iff their term
//! maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("no value assigned to variable {0:?}")]
    MissingAssignment(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An ordered list of variable names shared by polynomials of one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Arc<[String]>,
}

impl PolyRing {
    pub fn new(names: &[&str]) -> Self {
        PolyRing {
            vars: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> MultiPoly {
        let mut p = self.zero();
        p.add_term(Monomial(vec![0; self.vars.len()]), c.into());
        p
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly, PolyError> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; self.vars.len()];
        exps[idx] = 1;
        let mut p = self.zero();
        p.add_term(Monomial(exps), BigInt::one());
        Ok(p)
    }

    /// All variables of the ring, in order.
    pub fn gens(&self) -> Vec<MultiPoly> {
        self.vars
            .iter()
            .map(|v| self.var(v).expect("own variable"))
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn ring(&self) -> PolyRing {
        PolyRing {
            vars: self.vars.clone(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, rhs: &MultiPoly) -> Result<(), PolyError> {
        if self.vars == rhs.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.to_vec(),
                right: rhs.vars.to_vec(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_vars(rhs)?;
        let mut acc: std::collections::HashMap<Monomial, BigInt> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        let mut out = self.ring().zero();
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        let mut out = self.ring().zero();
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        }
        out
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = self.ring().constant(1);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Evaluate at a point given as `(variable, value)` pairs.
    pub fn eval(&self, point: &[(&str, Rational)]) -> Result<Rational, PolyError> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, x)| x.clone())
                    .ok_or_else(|| PolyError::MissingAssignment(v.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.eval_slice(&values))
    }

    /// Evaluate with values aligned to the variable list.
    pub fn eval_slice(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut powers: Vec<Vec<Rational>> = values
            .iter()
            .map(|v| vec![Rational::one(), v.clone()])
            .collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &values[i];
                    cache.push(next);
                }
                term = term * &cache[e as usize];
            }
            total = total + term;
        }
        total
    }

    /// Substitute a polynomial for every variable; the images share a ring.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Err(PolyError::ArityMismatch {
                expected: 0,
                got: 0,
            });
        };
        let target = first.ring();
        for img in images {
            first.check_vars(img)?;
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|img| vec![target.constant(1), img.clone()])
            .collect();
        let mut total = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            total = &total + &term;
        }
        Ok(total)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.degree() == 0 {
                factors.push(mag.to_string());
            }
            for (name, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}

// Operator forms panic on a variable-list mismatch; the checked_* methods
// report it as an error instead.
macro_rules! poly_binop {
    ($($imp:ident $method:ident $checked:ident),*) => {$(
        impl $imp<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $imp<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $imp<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

poly_binop!(Add add checked_add, Sub sub checked_sub, Mul mul checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Kind selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(
    lhs: &MultiPoly,
    rhs: &MultiPoly,
    kind: ArithKind,
) -> Result<MultiPoly, PolyError> {
    match kind {
        ArithKind::Add => lhs.checked_add(rhs),
        ArithKind::Sub => lhs.checked_sub(rhs),
        ArithKind::Mul => lhs.checked_mul(rhs),
    }
}
