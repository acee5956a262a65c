//! Certified rational brackets for the e²-dependent constants.
//!
//! Every quantity that feeds a floor (expansion caps, layer sizes) is
//! evaluated as an exact rational interval around e², and the floor is
//! accepted only when both endpoints agree. A silent off-by-one here would
//! change which property gets verified, so ambiguity is an error, never a
//! guess.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Floors of the two interval endpoints disagree: the true value is too
/// close to an integer to resolve under the e² bounds in use.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ambiguous floor: interval straddles an integer ({lo_floor} vs {hi_floor})")]
pub struct AmbiguousFloor {
    pub lo_floor: i64,
    pub hi_floor: i64,
}

/// An exact rational interval `[lo, hi]` known to contain the true value.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    lo: BigRational,
    hi: BigRational,
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Bracket {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted bracket");
        Bracket { lo, hi }
    }

    pub fn exact(v: BigRational) -> Self {
        Bracket { lo: v.clone(), hi: v }
    }

    pub fn from_u64(v: u64) -> Self {
        Self::exact(big(v))
    }

    /// `e²` bounded by the fixed rational bracket
    /// `7.389056098930649 < e² < 7.389056098930651`.
    pub fn e_squared() -> Self {
        let den = BigInt::from(10u64).pow(15);
        Bracket {
            lo: BigRational::new(BigInt::from(7_389_056_098_930_649u64), den.clone()),
            hi: BigRational::new(BigInt::from(7_389_056_098_930_651u64), den),
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// Interval product. All brackets in this crate are positive, which keeps
    /// endpoint bookkeeping trivial.
    pub fn mul(&self, other: &Bracket) -> Bracket {
        debug_assert!(self.lo.is_positive() && other.lo.is_positive());
        Bracket {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn mul_u64(&self, k: u64) -> Bracket {
        self.mul(&Bracket::from_u64(k))
    }

    pub fn div_u64(&self, k: u64) -> Bracket {
        assert!(k > 0);
        Bracket {
            lo: &self.lo / big(k),
            hi: &self.hi / big(k),
        }
    }

    /// Reciprocal of a positive interval.
    pub fn recip(&self) -> Bracket {
        assert!(self.lo.is_positive(), "reciprocal of non-positive bracket");
        Bracket {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Floor certified by both endpoints, or an error if they disagree.
    pub fn certified_floor(&self) -> Result<u64, AmbiguousFloor> {
        let lo_floor = self.lo.floor().to_integer();
        let hi_floor = self.hi.floor().to_integer();
        if lo_floor != hi_floor {
            return Err(AmbiguousFloor {
                lo_floor: lo_floor.to_i64().unwrap_or(i64::MAX),
                hi_floor: hi_floor.to_i64().unwrap_or(i64::MAX),
            });
        }
        Ok(lo_floor.to_u64().expect("negative certified floor"))
    }

    /// Deterministic double-precision approximation of the midpoint, for
    /// display only; certified decisions never round through f64.
    pub fn approx(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / big(2)))
    }
}

/// Scaled-integer conversion that is deterministic and safe for rationals
/// whose parts overflow f64 (naive numerator/denominator conversion is not).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let r = r.abs();
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    // Shift so the integer quotient carries ~80 significant bits.
    let shift = (80 - (num_bits - den_bits)).max(0) as u64;
    let scaled: BigInt = (r.numer() << shift) / r.denom();
    let q = scaled.to_f64().expect("scaled quotient fits f64 range");
    let v = q * (2.0f64).powi(-(shift as i32));
    if negative {
        -v
    } else {
        v
    }
}

/// Parses a plain decimal literal (`"0.0150372..."`) into an exact rational.
/// Used to compare implementation values against frozen oracle digits.
pub fn parse_decimal(s: &str) -> BigRational {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().expect("decimal digits");
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    BigRational::new(num, den)
}

/// `3 / (e² k³)`, the bipartite expansion constant, as a certified
/// bracket. Callers enforce `k >= 3`.
pub fn epsilon_bracket(k: u64) -> Bracket {
    assert!(k >= 1);
    Bracket::e_squared()
        .mul_u64(k * k * k)
        .recip()
        .mul_u64(3)
}

/// `(e²/3) · k³ · s` as a certified bracket (the layer-size quantity).
pub fn layer_size_bracket(k: u64, s: u64) -> Bracket {
    Bracket::e_squared().mul_u64(k * k * k).mul_u64(s).div_u64(3)
}

/// Relative-error comparison against an oracle value: true iff
/// `|value - oracle| <= |oracle| * 10^-digits`, decided exactly.
pub fn matches_to_digits(value: &BigRational, oracle: &BigRational, digits: u32) -> bool {
    let tol = oracle.abs() / BigRational::from_integer(BigInt::from(10u64).pow(digits));
    (value - oracle).abs() <= tol
}
