//! Exact rational scalars and a few interval-endpoint helpers.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/4"`, `"0.055"`, or `"-1.2e-3"` into an exact rational.
/// Decimal input maps to digits / 10^k with no rounding.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((n, d)) = s.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let den = BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".to_string());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| format!("bad exponent {e:?}"))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let num = BigInt::from_str(&digits).map_err(|e| format!("bad number {s:?}: {e}"))?;
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::new(num, ten.pow(scale as u32))
    } else {
        Rational::from_integer(num * ten.pow((-scale) as u32))
    })
}

/// Renders without spaces: `-3/4`, `7`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    // Good enough for rendering; exact paths never use this.
    let num = r.numer();
    let den = r.denom();
    let nf = num.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = den.to_string().parse::<f64>().unwrap_or(f64::NAN);
    if nf.is_finite() && df.is_finite() && df != 0.0 {
        nf / df
    } else {
        // Fall back through scaling for extreme magnitudes.
        let shift = (den.bits() as i64 - 52).max(0) as u64;
        let n2 = num >> shift;
        let d2 = den >> shift;
        let nf = n2.to_string().parse::<f64>().unwrap_or(f64::NAN);
        let df = d2.to_string().parse::<f64>().unwrap_or(1.0);
        nf / df
    }
}

/// Simplest rational strictly inside the open interval (lo, hi):
/// minimal denominator, and among those minimal |numerator|.
/// Stern-Brocot / continued-fraction walk; requires lo < hi.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    let zero = Rational::zero();
    if lo < &zero && hi > &zero {
        return zero;
    }
    if hi <= &zero {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    // 0 <= lo < hi: find simplest q with lo < q < hi.
    simplest_pos(lo, hi)
}

fn simplest_pos(lo: &Rational, hi: &Rational) -> Rational {
    // Invariant: 0 <= lo < hi.
    let fl = lo.floor();
    if &fl + Rational::one() < *hi {
        return fl + Rational::one();
    }
    if lo.is_integer() {
        // lo < result < hi < lo+1: recurse on fractional parts.
        let f = simplest_pos_strict(&Rational::zero(), &(hi - &fl));
        return fl + f;
    }
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    fl + simplest_pos_strict(&frac_lo, &frac_hi)
}

// Same contract, with 0 <= lo < hi <= 1 and no integer strictly inside.
fn simplest_pos_strict(lo: &Rational, hi: &Rational) -> Rational {
    if lo.is_zero() {
        // Simplest in (0, hi): 1/ceil(1/hi + adjust).
        let inv = hi.recip();
        let mut d = inv.ceil();
        if &Rational::new(BigInt::one(), d.numer().clone()) >= hi {
            d += Rational::one();
        }
        return Rational::new(BigInt::one(), d.numer().clone());
    }
    // Continued-fraction step: invert and recurse.
    let inv_hi = hi.recip();
    let inv_lo = lo.recip();
    // Simplest in (lo, hi) = 1 / simplest in (1/hi, 1/lo).
    simplest_pos(&inv_hi, &inv_lo).recip()
}

/// Integer square root helper: floor(sqrt(n)) for n >= 0.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    if n.is_zero() {
        return BigInt::zero();
    }
    let bits = n.bits();
    let mut x: BigInt = BigInt::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Exact square root of a rational if it is a perfect square.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = isqrt(r.numer());
    let sd = isqrt(r.denom());
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

pub fn sign_of(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
