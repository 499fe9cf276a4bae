//! Exact scalars: the rationals and prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ground field every computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Self, Error> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::small(0)),
            Field::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rational::small(n)),
            Field::Prime(p) => Scalar::Fp { v: n.rem_euclid(p as i64) as u32, p },
        }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.int(-1)
        }
    }

    /// Parse a coefficient such as `"3"`, `"-2"` or `"3/7"` into this field.
    pub fn parse(self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        let bad = || Error::BadCoefficient(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(Scalar::Q(Rational::from_big(BigRational::new(num, den)))),
            Field::Prime(p) => {
                let modp = |x: &BigInt| -> u32 {
                    let r = x % BigInt::from(p);
                    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
                    u32::try_from(r).expect("residue fits in u32")
                };
                let d = modp(&den);
                if d == 0 {
                    return Err(Error::BadCoefficient(format!("{s} (denominator vanishes mod {p})")));
                }
                Ok(Scalar::Fp { v: modp(&num), p } * Scalar::Fp { v: d, p }.inv())
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A rational number in lowest terms with positive denominator. Values whose
/// numerator and denominator fit in an `i64` are stored inline; the
/// representation is canonical, so derived equality and hashing are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    fn small(n: i64) -> Rational {
        Rational(Repr::Small(n, 1))
    }

    fn from_big(q: BigRational) -> Rational {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(q)),
        }
    }

    /// `n / d` with `d > 0`, reduced.
    fn from_i128(n: i128, d: i128) -> Rational {
        let g = gcd(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(q) => q.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn add(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(b, 1)) => match a.checked_add(*b) {
                Some(s) if s != i64::MIN => Rational::small(s),
                _ => Rational::from_i128(*a as i128 + *b as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.big() + other.big()),
        }
    }

    fn mul(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small(a, 1), Repr::Small(b, 1)) => match a.checked_mul(*b) {
                Some(s) if s != i64::MIN => Rational::small(s),
                _ => Rational::from_i128(*a as i128 * *b as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.big() * other.big()),
        }
    }

    fn neg(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(q) => Rational::from_big(-q),
        }
    }

    fn recip(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) if *n < 0 => Rational(Repr::Small(-d, -n)),
            Repr::Small(n, d) => Rational(Repr::Small(*d, *n)),
            Repr::Big(q) => Rational::from_big(q.recip()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// An element of a [`Field`]. Rationals are kept in lowest terms with a
/// positive denominator; prime-field values are canonical residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => {
                // Fermat: v^(p-2)
                let (mut base, mut exp, mut acc) = (*v as u64, (*p - 2) as u64, 1u64);
                let m = *p as u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Scalar::Fp { v: acc as u32, p: *p }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(&b.neg())),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { v, p } => Scalar::Fp { v: (*p - *v) % *p, p: *p },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalize() {
        let q = Field::Rational;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!((x.clone() * x.inv()).to_string(), "1");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.int(-1), f.int(4));
        assert_eq!(f.parse("1/2").unwrap(), f.int(3));
        assert!((f.int(3) + f.int(2)).is_zero());
        assert_eq!(f.int(2).inv(), f.int(3));
        assert!(Field::prime(6).is_err());
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn large_rationals_stay_exact() {
        let q = Field::Rational;
        let big = q.int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        assert_eq!(&sq * &big.inv(), big);
        assert!((&(&sq - &sq) + &q.zero()).is_zero());
        let x = q.parse("3/4").unwrap();
        assert_eq!((&x + &q.parse("1/4").unwrap()).to_string(), "1");
        assert_eq!(q.parse("-85070591730234615847396907784232501249/9223372036854775807").unwrap(), -&big);
    }

    #[test]
    fn sign_helper() {
        let q = Field::Rational;
        assert!(q.sign(4).is_one());
        assert_eq!(q.sign(-3), q.int(-1));
    }
}
