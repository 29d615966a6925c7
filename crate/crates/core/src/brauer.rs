//! Places, local invariants in ℚ/ℤ, and Brauer classes of a global field.
//!
//! A [`BrauerClass`] is stored as its vector of local invariants: a finitely
//! supported map from places to ℚ/ℤ. Construction enforces the reciprocity
//! constraint (invariants sum to zero) and the archimedean restrictions
//! (a real place only admits `0` or `1/2`, a complex place only `0`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("invariants sum to {sum}, not 0 in Q/Z")]
    SumNonZero { sum: LocalInvariant },
    #[error("place {place} cannot carry invariant {invariant}")]
    ArchimedeanViolation { place: String, invariant: LocalInvariant },
    #[error("place {0} appears more than once")]
    DuplicatePlace(String),
    #[error("exponent {exponent} does not divide degree {degree}")]
    DegreeMismatch { exponent: u64, degree: u64 },
    #[error("invalid local invariant: {0}")]
    InvalidInvariant(String),
    #[error("invalid place label: {0:?}")]
    InvalidPlace(String),
}

impl BrauerError {
    pub fn name(&self) -> &'static str {
        match self {
            BrauerError::SumNonZero { .. } => "SumNonZero",
            BrauerError::ArchimedeanViolation { .. } => "ArchimedeanViolation",
            BrauerError::DuplicatePlace(_) => "DuplicatePlace",
            BrauerError::DegreeMismatch { .. } => "DegreeMismatch",
            BrauerError::InvalidInvariant(_) => "InvalidInvariant",
            BrauerError::InvalidPlace(_) => "InvalidPlace",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Finite,
    Real,
    Complex,
}

/// A place of the base field.
///
/// Ordering and equality are by label first; labels are unique inside a
/// place universe, so the label order is the canonical entry order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Place {
    label: String,
    kind: PlaceKind,
    orbit_id: String,
}

impl Place {
    pub fn new(label: impl Into<String>, kind: PlaceKind, orbit_id: impl Into<String>) -> Self {
        Place { label: label.into(), kind, orbit_id: orbit_id.into() }
    }

    /// The `p`-adic place of ℚ, labelled `p:<p>`.
    pub fn prime(p: u64) -> Self {
        let label = format!("p:{p}");
        Place { orbit_id: label.clone(), label, kind: PlaceKind::Finite }
    }

    /// One of the two places above a split prime, labelled `p:<p>+` or `p:<p>-`.
    /// Both branches share the orbit id `p:<p>`.
    pub fn split_prime(p: u64, plus: bool) -> Self {
        let sign = if plus { '+' } else { '-' };
        Place {
            label: format!("p:{p}{sign}"),
            kind: PlaceKind::Finite,
            orbit_id: format!("p:{p}"),
        }
    }

    pub fn real() -> Self {
        Place { label: "real".into(), kind: PlaceKind::Real, orbit_id: "real".into() }
    }

    pub fn complex() -> Self {
        Place { label: "complex".into(), kind: PlaceKind::Complex, orbit_id: "complex".into() }
    }

    /// Infers a place from its label: `real`, `complex`, `p:N`, `p:N+`, `p:N-`.
    /// Any other non-empty label is taken as a finite place in its own orbit.
    pub fn from_label(label: &str) -> Result<Self, BrauerError> {
        let label = label.trim();
        match label {
            "" => Err(BrauerError::InvalidPlace(label.to_string())),
            "real" => Ok(Place::real()),
            "complex" => Ok(Place::complex()),
            _ => {
                if let Some(rest) = label.strip_prefix("p:") {
                    let (digits, branch) = match rest.chars().last() {
                        Some(c @ ('+' | '-')) => (&rest[..rest.len() - 1], Some(c == '+')),
                        _ => (rest, None),
                    };
                    let p: u64 = digits
                        .parse()
                        .map_err(|_| BrauerError::InvalidPlace(label.to_string()))?;
                    return Ok(match branch {
                        Some(plus) => Place::split_prime(p, plus),
                        None => Place::prime(p),
                    });
                }
                Ok(Place::new(label, PlaceKind::Finite, label))
            }
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> PlaceKind {
        self.kind
    }

    pub fn orbit_id(&self) -> &str {
        &self.orbit_id
    }

    pub fn is_archimedean(&self) -> bool {
        self.kind != PlaceKind::Finite
    }

    /// The rational prime under a `p:N` label (not the split-branch forms).
    pub fn rational_prime(&self) -> Option<u64> {
        if self.kind != PlaceKind::Finite {
            return None;
        }
        self.label.strip_prefix("p:")?.parse().ok()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Place::from_label(&s).map_err(serde::de::Error::custom)
    }
}

/// An element of ℚ/ℤ in canonical form `num/den`, `0 <= num < den`, reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalInvariant {
    num: u64,
    den: u64,
}

impl LocalInvariant {
    pub const ZERO: LocalInvariant = LocalInvariant { num: 0, den: 1 };

    /// Reduces `num/den` into `[0, 1)`.
    pub fn new(num: i64, den: u64) -> Result<Self, BrauerError> {
        if den == 0 || den > i64::MAX as u64 {
            return Err(BrauerError::InvalidInvariant(format!("{num}/{den}")));
        }
        Ok(Self::reduce(num as i128, den as i128))
    }

    fn reduce(num: i128, den: i128) -> Self {
        let r = num.rem_euclid(den);
        let g = r.gcd(&den);
        LocalInvariant { num: (r / g) as u64, den: (den / g) as u64 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn neg(&self) -> Self {
        Self::reduce(-(self.num as i128), self.den as i128)
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = (self.den as i128).lcm(&(other.den as i128));
        let n = self.num as i128 * (l / self.den as i128) + other.num as i128 * (l / other.den as i128);
        Self::reduce(n, l)
    }
}

impl fmt::Display for LocalInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for LocalInvariant {
    type Err = BrauerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BrauerError::InvalidInvariant(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        LocalInvariant::new(n, d).map_err(|_| bad())
    }
}

impl Serialize for LocalInvariant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LocalInvariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Sum in ℚ/ℤ of a raw list of entries, before any validation.
pub fn sum_entries<'a>(entries: impl IntoIterator<Item = &'a (Place, LocalInvariant)>) -> LocalInvariant {
    entries.into_iter().fold(LocalInvariant::ZERO, |acc, (_, inv)| acc.add(inv))
}

/// A Brauer class, held as its nonzero local invariants.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BrauerClass {
    invariants: BTreeMap<Place, LocalInvariant>,
}

impl BrauerClass {
    /// The split class.
    pub fn trivial() -> Self {
        BrauerClass::default()
    }

    pub fn new(entries: impl IntoIterator<Item = (Place, LocalInvariant)>) -> Result<Self, BrauerError> {
        let mut invariants = BTreeMap::new();
        let mut labels = BTreeSet::new();
        let mut sum = LocalInvariant::ZERO;
        for (place, inv) in entries {
            if !labels.insert(place.label.clone()) {
                return Err(BrauerError::DuplicatePlace(place.label));
            }
            let admissible = match place.kind {
                PlaceKind::Finite => true,
                PlaceKind::Real => inv.is_zero() || inv.den == 2,
                PlaceKind::Complex => inv.is_zero(),
            };
            if !admissible {
                return Err(BrauerError::ArchimedeanViolation { place: place.label, invariant: inv });
            }
            sum = sum.add(&inv);
            if !inv.is_zero() {
                invariants.insert(place, inv);
            }
        }
        if !sum.is_zero() {
            return Err(BrauerError::SumNonZero { sum });
        }
        Ok(BrauerClass { invariants })
    }

    pub fn invariant_at(&self, place: &Place) -> LocalInvariant {
        self.invariants.get(place).copied().unwrap_or(LocalInvariant::ZERO)
    }

    /// Invariant at the place with the given label.
    pub fn invariant_at_label(&self, label: &str) -> LocalInvariant {
        self.invariants
            .iter()
            .find(|(p, _)| p.label == label)
            .map(|(_, inv)| *inv)
            .unwrap_or(LocalInvariant::ZERO)
    }

    /// Nonzero entries in label order.
    pub fn entries(&self) -> impl Iterator<Item = (&Place, &LocalInvariant)> {
        self.invariants.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn sum_invariants(&self) -> LocalInvariant {
        self.invariants.values().fold(LocalInvariant::ZERO, |acc, inv| acc.add(inv))
    }

    /// Order of the class in the Brauer group; equals the degree of the
    /// division algebra in the class.
    pub fn exponent(&self) -> u64 {
        self.invariants.values().fold(1u64, |acc, inv| acc.lcm(&inv.den))
    }

    pub fn ramification_set(&self) -> BTreeSet<Place> {
        self.invariants.keys().cloned().collect()
    }

    pub fn opposite(&self) -> BrauerClass {
        BrauerClass {
            invariants: self.invariants.iter().map(|(p, inv)| (p.clone(), inv.neg())).collect(),
        }
    }

    /// Whether the degree-`degree` algebra in this class remains a division
    /// algebra after completing at `place` (the local invariant has exact
    /// denominator `degree`).
    pub fn is_locally_division(&self, place: &Place, degree: u64) -> Result<bool, BrauerError> {
        let exponent = self.exponent();
        if degree == 0 || !degree.is_multiple_of(exponent) {
            return Err(BrauerError::DegreeMismatch { exponent, degree });
        }
        Ok(self.invariant_at(place).den == degree)
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, inv)) in self.invariants.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}: {inv}")?;
        }
        f.write_str("}")
    }
}

/// Unvalidated JSON form of a class, for callers that want the domain error
/// rather than a deserializer message.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub invariants: BTreeMap<String, String>,
}

impl ClassJson {
    pub fn into_class(self) -> Result<BrauerClass, BrauerError> {
        let entries = self
            .invariants
            .iter()
            .map(|(label, inv)| Ok((Place::from_label(label)?, inv.parse()?)))
            .collect::<Result<Vec<_>, BrauerError>>()?;
        BrauerClass::new(entries)
    }
}

impl Serialize for BrauerClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let invariants = self.invariants.iter().map(|(p, inv)| (p.label.clone(), inv.to_string())).collect();
        ClassJson { invariants }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BrauerClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        ClassJson::deserialize(d)?.into_class().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: &str) -> LocalInvariant {
        s.parse().unwrap()
    }

    fn class(entries: &[(&str, &str)]) -> Result<BrauerClass, BrauerError> {
        BrauerClass::new(entries.iter().map(|(p, i)| (Place::from_label(p).unwrap(), inv(i))))
    }

    #[test]
    fn invariant_canonical_form() {
        assert_eq!(LocalInvariant::new(4, 6).unwrap(), inv("2/3"));
        assert_eq!(LocalInvariant::new(-1, 3).unwrap(), inv("2/3"));
        assert_eq!(LocalInvariant::new(3, 3).unwrap(), LocalInvariant::ZERO);
        assert!(LocalInvariant::new(1, 0).is_err());
        assert_eq!(inv("5/4").to_string(), "1/4");
        assert_eq!(inv("0").to_string(), "0");
        assert!("x/3".parse::<LocalInvariant>().is_err());
    }

    #[test]
    fn make_class_examples() {
        let c = class(&[("p:2", "1/3"), ("p:3", "2/3")]).unwrap();
        let labels: Vec<_> = c.ramification_set().into_iter().map(|p| p.label).collect();
        assert_eq!(labels, vec!["p:2", "p:3"]);
        assert!(BrauerClass::new(vec![]).unwrap().is_trivial());
        assert!(matches!(class(&[("p:2", "1/3")]), Err(BrauerError::SumNonZero { .. })));
    }

    #[test]
    fn zero_entries_are_dropped() {
        let c = class(&[("p:2", "1/2"), ("p:7", "0"), ("p:3", "1/2")]).unwrap();
        assert_eq!(c.entries().count(), 2);
        assert_eq!(c, class(&[("p:3", "1/2"), ("p:2", "1/2")]).unwrap());
    }

    #[test]
    fn archimedean_rules() {
        assert!(class(&[("real", "1/2"), ("p:2", "1/2")]).is_ok());
        let err = class(&[("real", "1/3"), ("p:2", "2/3")]).unwrap_err();
        assert_eq!(err.name(), "ArchimedeanViolation");
        let err = class(&[("complex", "1/2"), ("p:2", "1/2")]).unwrap_err();
        assert_eq!(err.name(), "ArchimedeanViolation");
        assert!(class(&[("complex", "0")]).is_ok());
    }

    #[test]
    fn duplicate_place_rejected() {
        let err = class(&[("p:2", "1/2"), ("p:2", "1/2")]).unwrap_err();
        assert_eq!(err, BrauerError::DuplicatePlace("p:2".into()));
    }

    #[test]
    fn sums() {
        assert!(class(&[("p:2", "1/3"), ("p:3", "2/3")]).unwrap().sum_invariants().is_zero());
        assert!(BrauerClass::trivial().sum_invariants().is_zero());
        let raw = vec![(Place::prime(2), inv("1/5")), (Place::prime(3), inv("1/5"))];
        assert_eq!(sum_entries(&raw), inv("2/5"));
    }

    #[test]
    fn exponents() {
        assert_eq!(class(&[("p:2", "1/3"), ("p:3", "2/3")]).unwrap().exponent(), 3);
        assert_eq!(BrauerClass::trivial().exponent(), 1);
        let mixed = class(&[("p:2", "1/2"), ("real", "1/2"), ("p:3", "1/3"), ("p:5", "2/3")]).unwrap();
        assert_eq!(mixed.exponent(), 6);
    }

    #[test]
    fn opposites() {
        let c = class(&[("p:2", "1/3"), ("p:3", "2/3")]).unwrap();
        assert_eq!(c.opposite(), class(&[("p:2", "2/3"), ("p:3", "1/3")]).unwrap());
        assert_eq!(BrauerClass::trivial().opposite(), BrauerClass::trivial());
        let two_torsion = class(&[("p:2", "1/2"), ("real", "1/2")]).unwrap();
        assert_eq!(two_torsion.opposite(), two_torsion);
    }

    #[test]
    fn local_division() {
        let c = class(&[("p:2", "1/3"), ("p:3", "2/3")]).unwrap();
        assert!(c.is_locally_division(&Place::prime(2), 3).unwrap());
        assert!(!c.is_locally_division(&Place::prime(5), 3).unwrap());
        let mixed = class(&[("p:2", "1/2"), ("real", "1/2"), ("p:3", "1/3"), ("p:5", "2/3")]).unwrap();
        assert!(!mixed.is_locally_division(&Place::prime(2), 6).unwrap());
        assert_eq!(mixed.is_locally_division(&Place::prime(3), 12), Ok(false));
        assert_eq!(
            c.is_locally_division(&Place::prime(2), 4).unwrap_err(),
            BrauerError::DegreeMismatch { exponent: 3, degree: 4 }
        );
    }

    #[test]
    fn labels_parse() {
        assert_eq!(Place::from_label("p:5+").unwrap(), Place::split_prime(5, true));
        assert_eq!(Place::from_label("p:5-").unwrap().orbit_id(), "p:5");
        assert_eq!(Place::from_label("p:13").unwrap().rational_prime(), Some(13));
        assert_eq!(Place::from_label("p:5+").unwrap().rational_prime(), None);
        assert!(Place::from_label("p:x").is_err());
    }

    #[test]
    fn json_encoding_is_canonical() {
        let c = class(&[("p:3", "2/3"), ("p:2", "1/3")]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"invariants":{"p:2":"1/3","p:3":"2/3"}}"#);
        let back: BrauerClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<BrauerClass>(r#"{"invariants":{"p:2":"1/3"}}"#).is_err());
    }
}
