//! Exact rational arithmetic for coefficient values.
//!
//! A [`Frac`] is always stored reduced with positive denominator. Values of
//! Q/Z-valued cochains are additionally normalized to the canonical
//! representative in `[0, 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g >= 0.
pub fn egcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = egcd_i128(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

/// A reduced fraction with positive denominator, on `i64` parts.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Frac {
        assert!(den != 0, "zero denominator");
        let mut n = num as i128;
        let mut d = den as i128;
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        Frac {
            num: i64::try_from(n).expect("fraction numerator overflow"),
            den: i64::try_from(d).expect("fraction denominator overflow"),
        }
    }

    pub const ZERO: Frac = Frac { num: 0, den: 1 };
    pub const ONE: Frac = Frac { num: 1, den: 1 };

    pub fn from_int(n: i64) -> Frac {
        Frac { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    fn from_i128(n: i128, d: i128) -> Frac {
        assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        Frac {
            num: i64::try_from(n).expect("fraction numerator overflow"),
            den: i64::try_from(d).expect("fraction denominator overflow"),
        }
    }

    pub fn add(&self, other: &Frac) -> Frac {
        Frac::from_i128(
            self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn sub(&self, other: &Frac) -> Frac {
        Frac::from_i128(
            self.num as i128 * other.den as i128 - other.num as i128 * self.den as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        Frac::from_i128(
            self.num as i128 * other.num as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn mul_int(&self, k: i128) -> Frac {
        Frac::from_i128(self.num as i128 * k, self.den as i128)
    }

    /// Canonical representative in `[0, 1)`.
    pub fn mod_one(&self) -> Frac {
        let n = (self.num as i128).rem_euclid(self.den as i128);
        Frac::from_i128(n, self.den as i128)
    }

    pub fn floor(&self) -> i64 {
        (self.num as i128).div_euclid(self.den as i128) as i64
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Frac) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Frac) -> Ordering {
        let a = self.num as i128 * other.den as i128;
        let b = other.num as i128 * self.den as i128;
        a.cmp(&b)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Frac {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Frac, String> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: i64 = a.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let den: i64 = b.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            if den == 0 {
                return Err("zero denominator".into());
            }
            Ok(Frac::new(num, den))
        } else {
            let num: i64 = s.parse().map_err(|e| format!("bad integer: {e}"))?;
            Ok(Frac::from_int(num))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        assert_eq!(Frac::new(2, 4), Frac::new(1, 2));
        assert_eq!(Frac::new(1, -2), Frac::new(-1, 2));
        assert_eq!(Frac::new(-3, -6), Frac::new(1, 2));
    }

    #[test]
    fn mod_one_lands_in_unit_interval() {
        assert_eq!(Frac::new(7, 5).mod_one(), Frac::new(2, 5));
        assert_eq!(Frac::new(-1, 5).mod_one(), Frac::new(4, 5));
        assert_eq!(Frac::new(10, 5).mod_one(), Frac::ZERO);
    }

    #[test]
    fn ordering_is_by_value() {
        assert!(Frac::new(1, 3) < Frac::new(1, 2));
        assert!(Frac::new(-1, 2) < Frac::ZERO);
    }

    #[test]
    fn parse_roundtrip() {
        let f: Frac = "3/12".parse().unwrap();
        assert_eq!(f, Frac::new(1, 4));
        assert_eq!(f.to_string(), "1/4");
    }

    #[test]
    fn egcd_identity() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                let (g, s, t) = egcd_i128(a, b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g, gcd_i128(a, b));
            }
        }
    }
}
