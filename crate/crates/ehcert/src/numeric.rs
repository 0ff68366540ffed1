//! Exact threshold arithmetic.
//!
//! Every inequality a certificate claims is of the form
//! `count OP scale * base^(num/den)` with `scale, base` rational. Comparing
//! against a fractional power is done by cross-powering both sides with
//! big integers, so certificate boundaries never depend on floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Rat = BigRational;

/// Rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `base^exp` for integer `exp` (negative allowed, `base != 0` then).
pub fn pow_i(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let p = base.pow(exp.unsigned_abs() as i32);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// `x^k` for a big integer base and small exponent.
fn bigint_pow(x: &BigInt, k: u32) -> BigInt {
    x.pow(k)
}

/// Compares `x` with `base^(num/den)` exactly. Requires `base > 0`, `den >= 1`.
/// For `x <= 0` the power is positive, so the ordering is immediate.
pub fn cmp_pow(x: &Rat, base: &Rat, num: i64, den: u32) -> Ordering {
    assert!(den >= 1, "den must be positive");
    assert!(base.is_positive(), "base must be positive");
    if num == 0 {
        return x.cmp(&Rat::one());
    }
    if !x.is_positive() {
        return Ordering::Less;
    }
    // x ? base^(num/den)  <=>  x^den ? base^num   (all quantities positive)
    let lhs = {
        let xn = bigint_pow(x.numer(), den);
        let xd = bigint_pow(x.denom(), den);
        (xn, xd)
    };
    let rhs = if num > 0 {
        (
            bigint_pow(base.numer(), num as u32),
            bigint_pow(base.denom(), num as u32),
        )
    } else {
        (
            bigint_pow(base.denom(), (-num) as u32),
            bigint_pow(base.numer(), (-num) as u32),
        )
    };
    // lhs.0/lhs.1 ? rhs.0/rhs.1  <=>  lhs.0*rhs.1 ? rhs.0*lhs.1
    (lhs.0 * rhs.1).cmp(&(rhs.0 * lhs.1))
}

/// A threshold of the form `scale * base^(num/den)`.
///
/// `den == 1` thresholds are plain rationals; larger denominators appear
/// where a bound involves a fractional power (square roots from squared
/// counts, sixth roots from sparsity cleaning, and so on).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub scale: Rat,
    pub base: Rat,
    pub num: i64,
    pub den: u32,
}

impl serde::Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl Bound {
    pub fn exact(value: Rat) -> Self {
        Bound {
            scale: value,
            base: Rat::one(),
            num: 0,
            den: 1,
        }
    }

    pub fn of(scale: Rat, base: Rat, num: i64, den: u32) -> Self {
        assert!(den >= 1);
        assert!(base.is_positive());
        Bound {
            scale,
            base,
            num,
            den,
        }
    }

    /// Compares `x` against the bound value, exactly.
    pub fn cmp_value(&self, x: &Rat) -> Ordering {
        if self.scale.is_zero() {
            return x.cmp(&Rat::zero());
        }
        if self.num == 0 || self.base.is_one() {
            return x.cmp(&self.scale);
        }
        if self.scale.is_positive() {
            cmp_pow(&(x / &self.scale), &self.base, self.num, self.den)
        } else {
            // negative scale: x ? s*b^e  <=> x/s ?? flipped
            cmp_pow(&(x / &self.scale), &self.base, self.num, self.den).reverse()
        }
    }

    pub fn le_value(&self, x: &Rat) -> bool {
        self.cmp_value(x) != Ordering::Less
    }

    pub fn lt_value(&self, x: &Rat) -> bool {
        self.cmp_value(x) == Ordering::Greater
    }

    /// Floating point rendering for reports; never used in comparisons.
    pub fn approx(&self) -> f64 {
        let s = self.scale.to_f64().unwrap_or(f64::NAN);
        let b = self.base.to_f64().unwrap_or(f64::NAN);
        s * b.powf(self.num as f64 / self.den as f64)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 || self.base.is_one() {
            write!(f, "{}", self.scale)
        } else {
            write!(f, "{}*({})^({}/{})", self.scale, self.base, self.num, self.den)
        }
    }
}

/// Ceiling of a rational as usize. Negative values clamp to 0.
pub fn ceil_usize(x: &Rat) -> usize {
    if !x.is_positive() {
        return 0;
    }
    x.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

pub fn floor_usize(x: &Rat) -> usize {
    if !x.is_positive() {
        return 0;
    }
    x.floor().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Smallest integer `k >= y^(-1/root)`, i.e. smallest `k` with `k^root >= 1/y`.
/// Requires `0 < y <= 1`.
pub fn ceil_inv_root(y: &Rat, root: u32) -> usize {
    assert!(y.is_positive() && *y <= Rat::one());
    let target = y.recip();
    let mut lo: u64 = 1;
    let mut hi: u64 = 2;
    while Rat::from_integer(BigInt::from(hi)).pow(root as i32) < target {
        hi *= 2;
        if hi > 1 << 40 {
            return usize::MAX;
        }
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if Rat::from_integer(BigInt::from(mid)).pow(root as i32) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo as usize
}

/// Exact base-2 logarithm, if the argument is a power of two.
pub fn log2_exact(x: u64) -> Option<u32> {
    if x.is_power_of_two() {
        Some(x.trailing_zeros())
    } else {
        None
    }
}

/// Parses "p", "p/q", or decimal "0.25" into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().ok()?;
        let q: i128 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rat::new(BigInt::from(p), BigInt::from(q)));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 27 || frac.chars().any(|c| !c.is_ascii_digit()) {
            return None;
        }
        let neg = int.trim_start().starts_with('-');
        let int: i128 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().ok()?
        };
        let fnum: i128 = frac.parse().ok()?;
        let den = BigInt::from(10u8).pow(frac.len() as u32);
        let whole = Rat::from_integer(BigInt::from(int));
        let part = Rat::new(BigInt::from(fnum), den);
        return Some(if neg { whole - part } else { whole + part });
    }
    let p: i128 = s.parse().ok()?;
    Some(Rat::from_integer(BigInt::from(p)))
}

/// Canonical text form, always "p/q" or "p".
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmp_pow_square_roots() {
        // 3 vs 10^(1/2): 9 < 10
        assert_eq!(cmp_pow(&rat_int(3), &rat_int(10), 1, 2), Ordering::Less);
        // 4 vs 10^(1/2)
        assert_eq!(cmp_pow(&rat_int(4), &rat_int(10), 1, 2), Ordering::Greater);
        // exact hit: 8 = 2^(9/3)
        assert_eq!(cmp_pow(&rat_int(8), &rat_int(2), 9, 3), Ordering::Equal);
    }

    #[test]
    fn cmp_pow_negative_exponent() {
        // 1/2 vs 4^(-1/2) = 1/2
        assert_eq!(cmp_pow(&rat(1, 2), &rat_int(4), -1, 2), Ordering::Equal);
        // 1/3 < 4^(-1/2)
        assert_eq!(cmp_pow(&rat(1, 3), &rat_int(4), -1, 2), Ordering::Less);
    }

    #[test]
    fn bound_comparisons() {
        // bound = 5 * (1/4)^(1/2) = 5/2
        let b = Bound::of(rat_int(5), rat(1, 4), 1, 2);
        assert!(b.le_value(&rat(5, 2)));
        assert!(!b.le_value(&rat(49, 20)));
        assert!(b.lt_value(&rat(51, 20)));
    }

    #[test]
    fn inv_root_ceilings() {
        // y = 1/4: y^(-1/4) = sqrt(2) ~ 1.414 -> 2
        assert_eq!(ceil_inv_root(&rat(1, 4), 4), 2);
        // y = 1/16: 16^(1/4) = 2 exactly
        assert_eq!(ceil_inv_root(&rat(1, 16), 4), 2);
        // y = 2^-64: (2^64)^(1/16) = 16
        assert_eq!(ceil_inv_root(&pow_i(&rat(1, 2), 64), 16), 16);
    }

    #[test]
    fn rational_text_roundtrip() {
        for s in ["3", "-7", "1/3", "22/7", "0.25", "-1.5"] {
            let r = parse_rat(s).unwrap();
            let r2 = parse_rat(&format_rat(&r)).unwrap();
            assert_eq!(r, r2);
        }
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("abc").is_none());
    }
}
