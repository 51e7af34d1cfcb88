//! Triads of positive integers and canonical pairs of triads with equal
//! sums of fourth powers and equal products.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FamilyError, ParamPoint};
use crate::exact::gcd_all;

/// Three positive integers in ascending order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triad([BigInt; 3]);

impl Triad {
    pub fn new(values: [BigInt; 3]) -> Result<Self, FamilyError> {
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(FamilyError::NonPositiveEntry(v.clone()));
        }
        let mut values = values;
        values.sort();
        Ok(Triad(values))
    }

    pub fn from_u64s(values: [u64; 3]) -> Result<Self, FamilyError> {
        Self::new(values.map(BigInt::from))
    }

    pub fn values(&self) -> &[BigInt; 3] {
        &self.0
    }

    pub fn largest(&self) -> &BigInt {
        &self.0[2]
    }

    pub fn sum_fourth_powers(&self) -> BigInt {
        self.0.iter().map(|v| num_traits::pow(v.clone(), 4)).sum()
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().product()
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Num(u64),
    Str(String),
}

// Entries are JSON numbers while they fit in u64, decimal strings beyond.
impl Serialize for Triad {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let items: Vec<JsonInt> = self
            .0
            .iter()
            .map(|v| match v.to_u64() {
                Some(n) => JsonInt::Num(n),
                None => JsonInt::Str(v.to_string()),
            })
            .collect();
        items.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Triad {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<JsonInt>::deserialize(deserializer)?;
        let values: Vec<BigInt> = items
            .into_iter()
            .map(|i| match i {
                JsonInt::Num(n) => Ok(BigInt::from(n)),
                JsonInt::Str(s) => s.parse::<BigInt>().map_err(D::Error::custom),
            })
            .collect::<Result<_, _>>()?;
        let values: [BigInt; 3] = values
            .try_into()
            .map_err(|_| D::Error::custom("a triad has exactly three entries"))?;
        Triad::new(values).map_err(D::Error::custom)
    }
}

/// Two triads with equal sums of fourth powers and equal products,
/// smaller triad first. `sum4` and `prod` are re-verified on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TriadPair {
    left: Triad,
    right: Triad,
    #[serde(with = "crate::exact::bigint_string")]
    sum4: BigInt,
    #[serde(with = "crate::exact::bigint_string")]
    prod: BigInt,
    primitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<ParamPoint>,
}

impl TriadPair {
    pub fn new(a: Triad, b: Triad) -> Result<Self, FamilyError> {
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        let sum4 = left.sum_fourth_powers();
        let prod = left.product();
        if sum4 != right.sum_fourth_powers() || prod != right.product() {
            return Err(FamilyError::InternalConsistency(format!(
                "{left} and {right} do not have equal fourth-power sums and products"
            )));
        }
        let primitive = gcd_all(left.0.iter().chain(right.0.iter())).is_one();
        Ok(TriadPair {
            left,
            right,
            sum4,
            prod,
            primitive,
            source: None,
        })
    }

    pub fn with_source(mut self, source: ParamPoint) -> Self {
        self.source = Some(source);
        self
    }

    pub fn left(&self) -> &Triad {
        &self.left
    }

    pub fn right(&self) -> &Triad {
        &self.right
    }

    pub fn sum4(&self) -> &BigInt {
        &self.sum4
    }

    pub fn prod(&self) -> &BigInt {
        &self.prod
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn source(&self) -> Option<&ParamPoint> {
        self.source.as_ref()
    }

    pub fn max_entry(&self) -> &BigInt {
        self.left.largest().max(self.right.largest())
    }

    /// Identity of the pair, ignoring provenance.
    pub fn key(&self) -> (&BigInt, &Triad, &Triad) {
        (&self.sum4, &self.left, &self.right)
    }

    /// Multiply every entry by `d >= 1`.
    pub fn scaled(&self, d: u64) -> Result<Self, FamilyError> {
        let d = BigInt::from(d);
        let scale = |t: &Triad| Triad::new(t.0.clone().map(|v| v * &d));
        TriadPair::new(scale(&self.left)?, scale(&self.right)?)
    }
}

impl fmt::Display for TriadPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

#[derive(Deserialize)]
struct TriadPairJson {
    left: Triad,
    right: Triad,
    sum4: String,
    prod: String,
    primitive: bool,
    #[serde(default)]
    source: Option<ParamPoint>,
}

impl<'de> Deserialize<'de> for TriadPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = TriadPairJson::deserialize(deserializer)?;
        let mut pair = TriadPair::new(raw.left, raw.right).map_err(D::Error::custom)?;
        if pair.sum4.to_string() != raw.sum4 || pair.prod.to_string() != raw.prod {
            return Err(D::Error::custom("sum4/prod do not match the triads"));
        }
        if pair.primitive != raw.primitive {
            return Err(D::Error::custom("primitive flag does not match the triads"));
        }
        pair.source = raw.source;
        Ok(pair)
    }
}

/// Strip signs, sort, divide out the common gcd and order the pair.
pub fn canonicalize(x: &[BigInt; 3], y: &[BigInt; 3]) -> Result<TriadPair, FamilyError> {
    if x.iter().chain(y).any(Zero::is_zero) {
        return Err(FamilyError::Degenerate("zero entry in triad".into()));
    }
    let g = gcd_all(x.iter().chain(y));
    let norm = |t: &[BigInt; 3]| t.clone().map(|v| v.abs() / &g);
    let left = Triad::new(norm(x))?;
    let right = Triad::new(norm(y))?;
    TriadPair::new(left, right)
}

/// True iff both triads are the same multiset.
pub fn is_trivial(pair: &TriadPair) -> bool {
    pair.left == pair.right
}
