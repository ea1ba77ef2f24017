//! Exact arithmetic helpers: f64-to-rational conversion, continued
//! fractions, and comparisons against multiples of 1/sqrt(5).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The exact rational value of a finite f64.
///
/// Every finite f64 is mantissa * 2^exp, so this is lossless; downstream
/// certificates are stated against this exact value rather than an interval.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(BigRational::zero());
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074i64)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let mant = BigInt::from(mant) * BigInt::from(sign);
    let r = if e >= 0 {
        BigRational::from_integer(mant << (e as usize))
    } else {
        BigRational::new(mant, BigInt::one() << ((-e) as usize))
    };
    Some(r)
}

/// A real or an exact rational target value.
///
/// Floats are converted to their exact rational value on entry, so the
/// whole pipeline below this type is exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Rational(BigRational),
    Float(f64),
}

impl Target {
    pub fn exact(&self) -> BigRational {
        match self {
            Target::Rational(q) => q.clone(),
            Target::Float(x) => rational_from_f64(*x).expect("finite float target"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Target::Rational(q) => rational_to_f64(q),
            Target::Float(x) => *x,
        }
    }
}

impl From<f64> for Target {
    fn from(x: f64) -> Self {
        Target::Float(x)
    }
}

impl From<BigRational> for Target {
    fn from(q: BigRational) -> Self {
        Target::Rational(q)
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    let n = bigint_to_f64(q.numer());
    let d = bigint_to_f64(q.denom());
    n / d
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // Good to f64 precision for the magnitudes used here.
    let (sign, digits) = x.to_radix_be(1 << 16);
    let mut v = 0.0f64;
    for d in digits {
        v = v * 65536.0 + d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -v
    } else {
        v
    }
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact test of `|q| <= bound / sqrt(5)` for rational `q` and `bound >= 0`.
///
/// Squaring removes the radical: |q| <= b/sqrt(5)  iff  5 q^2 <= b^2.
pub fn le_div_sqrt5(q: &BigRational, bound: &BigRational) -> bool {
    if bound.is_negative() {
        return false;
    }
    let five = BigRational::from_integer(BigInt::from(5));
    five * q * q <= bound * bound
}

/// Continued-fraction expansion of a nonnegative rational, with convergents.
///
/// Returns the list of (numerator, denominator) convergents p_i/q_i of x,
/// ending at x itself when x is rational.
pub fn convergents(x: &BigRational, max_terms: usize) -> Vec<(BigInt, BigInt)> {
    assert!(!x.is_negative(), "convergents expect x >= 0");
    let mut out = Vec::new();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut p_prev = BigInt::one();
    let mut p_prev2 = BigInt::zero();
    let mut q_prev = BigInt::zero();
    let mut q_prev2 = BigInt::one();
    for _ in 0..max_terms {
        if den.is_zero() {
            break;
        }
        let a = &num / &den;
        let rem = &num - &a * &den;
        let p = &a * &p_prev + &p_prev2;
        let q = &a * &q_prev + &q_prev2;
        out.push((p.clone(), q.clone()));
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
        num = den;
        den = rem;
    }
    out
}

/// gcd of two nonnegative u64.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn big_to_u64(x: &BigUint) -> Option<u64> {
    let digits = x.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_roundtrip_exact() {
        for &x in &[0.5, 1.0 / 3.0, 1.6180339887, -2.25, 1e-12] {
            let q = rational_from_f64(x).unwrap();
            assert_eq!(rational_to_f64(&q), x);
        }
    }

    #[test]
    fn convergents_of_golden_like() {
        // 13/8 has CF [1;1,1,1,1,2]; convergents end at 13/8 exactly.
        let x = ratio(13, 8);
        let cs = convergents(&x, 16);
        let (p, q) = cs.last().unwrap();
        assert_eq!((p, q), (&BigInt::from(13), &BigInt::from(8)));
    }

    #[test]
    fn sqrt5_test_is_exact() {
        // 1/3 <= 3/4 / sqrt(5)  iff  5/9 <= 9/16: false.
        assert!(!le_div_sqrt5(&ratio(1, 3), &ratio(3, 4)));
        // 1/10 <= 1/4 / sqrt(5) iff 5/100 <= 1/16: true.
        assert!(le_div_sqrt5(&ratio(1, 10), &ratio(1, 4)));
    }
}
