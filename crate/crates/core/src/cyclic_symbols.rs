//! Local invariants of cyclic algebras.
//!
//! Degree 2: quaternion symbols `(a, b)` over ℚ, with Hilbert symbols at every
//! place. General degree: the invariant `v(b)/d` at a place where the cyclic
//! extension is unramified, normalized by the chosen power of Frobenius.

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, legendre, mod_inverse, prime_divisors, split_valuation};
use crate::brauer::{BrauerClass, BrauerError, LocalInvariant, Place, PlaceKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("quaternion symbol entries must be nonzero")]
    ZeroArgument,
    #[error("the Hilbert symbol at a complex place is identically +1")]
    ComplexPlace,
    #[error("place {0} is not a rational prime or the real place")]
    UnsupportedPlace(String),
    #[error("frobenius power {frobenius_power} is not coprime to degree {degree}")]
    NotCoprime { frobenius_power: i64, degree: u64 },
    #[error("degree must be at least 2, got {0}")]
    InvalidDegree(u64),
    #[error("local symbols of ({a}, {b}) do not multiply to +1")]
    InternalProductFormulaViolation { a: Rational64, b: Rational64 },
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

impl SymbolError {
    pub fn name(&self) -> &'static str {
        match self {
            SymbolError::ZeroArgument => "ZeroArgument",
            SymbolError::ComplexPlace => "ComplexPlace",
            SymbolError::UnsupportedPlace(_) => "UnsupportedPlace",
            SymbolError::NotCoprime { .. } => "NotCoprime",
            SymbolError::InvalidDegree(_) => "InvalidDegree",
            SymbolError::InternalProductFormulaViolation { .. } => "InternalProductFormulaViolation",
            SymbolError::Brauer(e) => e.name(),
        }
    }
}

/// The quaternion algebra `(a, b)`: `i² = a`, `j² = b`, `ij = -ji`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuaternionSymbol {
    a: Rational64,
    b: Rational64,
}

impl QuaternionSymbol {
    pub fn new(a: Rational64, b: Rational64) -> Result<Self, SymbolError> {
        if a.is_zero() || b.is_zero() {
            return Err(SymbolError::ZeroArgument);
        }
        Ok(QuaternionSymbol { a, b })
    }

    pub fn a(&self) -> Rational64 {
        self.a
    }

    pub fn b(&self) -> Rational64 {
        self.b
    }

    /// `n/d` and `n·d` differ by the square `d²`, so the integer `n·d`
    /// stands in for the rational in every symbol computation.
    fn integral_parts(&self) -> (i128, i128) {
        let int = |r: Rational64| *r.numer() as i128 * *r.denom() as i128;
        (int(self.a), int(self.b))
    }

    /// Places where the symbol can be `-1`: primes dividing `2ab` and the real place.
    pub fn relevant_places(&self) -> Vec<Place> {
        let (a, b) = self.integral_parts();
        let mut primes = prime_divisors(a);
        primes.extend(prime_divisors(b));
        primes.push(2);
        primes.sort_unstable();
        primes.dedup();
        let mut places: Vec<Place> = primes.into_iter().map(Place::prime).collect();
        places.push(Place::real());
        places
    }

    pub fn hilbert_symbol(&self, place: &Place) -> Result<i8, SymbolError> {
        let (a, b) = self.integral_parts();
        match place.kind() {
            PlaceKind::Complex => Err(SymbolError::ComplexPlace),
            PlaceKind::Real => Ok(if a < 0 && b < 0 { -1 } else { 1 }),
            PlaceKind::Finite => match place.rational_prime() {
                Some(p) if is_prime(p) => Ok(local_symbol(a, b, p)),
                _ => Err(SymbolError::UnsupportedPlace(place.label().to_string())),
            },
        }
    }

    /// Symbol at every relevant place, in the order of [`relevant_places`](Self::relevant_places).
    pub fn sign_table(&self) -> Vec<(Place, i8)> {
        self.relevant_places()
            .into_iter()
            .map(|p| {
                let s = self.hilbert_symbol(&p).expect("relevant places are rational");
                (p, s)
            })
            .collect()
    }

    /// The Brauer class: invariant `1/2` exactly where the symbol is `-1`.
    pub fn brauer_class(&self) -> Result<BrauerClass, SymbolError> {
        let table = self.sign_table();
        let product: i8 = table.iter().map(|(_, s)| *s).product();
        if product != 1 {
            return Err(SymbolError::InternalProductFormulaViolation { a: self.a, b: self.b });
        }
        let half = LocalInvariant::new(1, 2)?;
        let entries = table.into_iter().filter(|(_, s)| *s == -1).map(|(p, _)| (p, half));
        Ok(BrauerClass::new(entries)?)
    }
}

/// `(a, b)_p` for nonzero integers and a rational prime `p`.
fn local_symbol(a: i128, b: i128, p: u64) -> i8 {
    let (alpha, u) = split_valuation(a, p as i128);
    let (beta, v) = split_valuation(b, p as i128);
    let (alpha, beta) = (alpha % 2, beta % 2);
    if p == 2 {
        let eps = |x: i128| u32::from(x.rem_euclid(4) == 3);
        let omega = |x: i128| u32::from(matches!(x.rem_euclid(8), 3 | 5));
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let mut sign: i8 = if alpha * beta == 1 && p % 4 == 3 { -1 } else { 1 };
    if beta == 1 {
        sign *= legendre(u, p);
    }
    if alpha == 1 {
        sign *= legendre(v, p);
    }
    sign
}

/// Hilbert symbol `(a, b)_v` over ℚ.
pub fn hilbert_symbol(a: Rational64, b: Rational64, place: &Place) -> Result<i8, SymbolError> {
    QuaternionSymbol::new(a, b)?.hilbert_symbol(place)
}

/// Brauer class of the quaternion algebra `(a, b)` over ℚ.
pub fn quaternion_class(a: Rational64, b: Rational64) -> Result<BrauerClass, SymbolError> {
    QuaternionSymbol::new(a, b)?.brauer_class()
}

/// Local data of a cyclic algebra `(L/K, φ, b)` at a place where `L/K` is unramified:
/// the degree, the valuation of `b`, and which power of Frobenius `φ` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnramifiedCyclicDatum {
    pub degree: u64,
    pub valuation_of_b: i64,
    pub frobenius_power: i64,
}

impl UnramifiedCyclicDatum {
    pub fn new(degree: u64, valuation_of_b: i64, frobenius_power: i64) -> Result<Self, SymbolError> {
        let datum = UnramifiedCyclicDatum { degree, valuation_of_b, frobenius_power };
        datum.check()?;
        Ok(datum)
    }

    fn check(&self) -> Result<i64, SymbolError> {
        if self.degree < 2 || self.degree > i64::MAX as u64 {
            return Err(SymbolError::InvalidDegree(self.degree));
        }
        mod_inverse(self.frobenius_power, self.degree as i64).ok_or(SymbolError::NotCoprime {
            frobenius_power: self.frobenius_power,
            degree: self.degree,
        })
    }
}

/// `(k⁻¹ · v(b)) / d` in ℚ/ℤ, where `φ = Frob^k` and the inverse is mod `d`.
pub fn unramified_invariant(datum: &UnramifiedCyclicDatum) -> Result<LocalInvariant, SymbolError> {
    let inverse = datum.check()?;
    let d = datum.degree as i128;
    let num = (inverse as i128 * datum.valuation_of_b as i128).rem_euclid(d);
    Ok(LocalInvariant::new(num as i64, datum.degree)?)
}
