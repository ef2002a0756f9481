use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;

/// An exact field element: a rational number or a residue modulo a prime.
///
/// Rationals keep a machine-word fast path and promote to big integers on
/// overflow. Every value is kept in canonical form, so structural equality is
/// numeric equality.
#[derive(Clone)]
pub struct Coeff(Repr);

#[derive(Clone)]
enum Repr {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    /// Only used when the value does not fit `Small`.
    Big(BigRational),
    /// Residue in `[0, p)`.
    Mod(u64, u64),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn small_or_big(num: i128, den: i128) -> Repr {
    debug_assert!(den != 0);
    let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = gcd_i128(n, d);
    if g > 1 {
        n /= g;
        d /= g;
    }
    if n == 0 {
        return Repr::Small(0, 1);
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) if n != i64::MIN => Repr::Small(n, d),
        _ => Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
    }
}

fn from_big(r: BigRational) -> Repr {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        if n != i64::MIN {
            return Repr::Small(n, d);
        }
    }
    Repr::Big(r)
}

fn to_big(r: &Repr) -> BigRational {
    match r {
        Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
        Repr::Big(b) => b.clone(),
        Repr::Mod(..) => panic!("residue used as a rational"),
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // a^(p-2) mod p
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl Coeff {
    pub fn zero(field: Field) -> Self {
        Self::from_i64(0, field)
    }

    pub fn one(field: Field) -> Self {
        Self::from_i64(1, field)
    }

    pub fn from_i64(n: i64, field: Field) -> Self {
        let p = field.characteristic();
        if p == 0 {
            Coeff(small_or_big(n as i128, 1))
        } else {
            Coeff(Repr::Mod(n.rem_euclid(p as i64) as u64, p))
        }
    }

    /// Maps a rational into the field; fails in characteristic p when the
    /// denominator is divisible by p.
    pub fn from_rational(r: &BigRational, field: Field) -> Option<Self> {
        let p = field.characteristic();
        if p == 0 {
            return Some(Coeff(from_big(r.clone())));
        }
        let pb = BigInt::from(p);
        let num = r.numer().mod_floor(&pb).to_u64().unwrap();
        let den = r.denom().mod_floor(&pb).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        Some(Coeff(Repr::Mod(num * inv_mod(den, p) % p, p)))
    }

    pub fn from_big_int(n: &BigInt, field: Field) -> Self {
        Self::from_rational(&BigRational::from_integer(n.clone()), field).unwrap()
    }

    pub fn field(&self) -> Field {
        match self.0 {
            Repr::Mod(_, p) => Field::prime(p).expect("residue modulus is prime"),
            _ => Field::RATIONALS,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n == 0,
            Repr::Big(b) => b.is_zero(),
            Repr::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(n, d) => *n == 1 && *d == 1,
            Repr::Big(_) => false,
            Repr::Mod(v, _) => *v == 1,
        }
    }

    /// Exact rational value; residues are reported as their representative
    /// in `[0, p)`.
    pub fn to_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Mod(v, _) => BigRational::from_integer(BigInt::from(*v)),
            r => to_big(r),
        }
    }

    /// Sign for display purposes; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
            Repr::Mod(..) => false,
        }
    }

    pub fn neg(&self) -> Coeff {
        match &self.0 {
            Repr::Small(n, d) => Coeff(small_or_big(-(*n as i128), *d as i128)),
            Repr::Big(b) => Coeff(from_big(-b)),
            Repr::Mod(v, p) => Coeff(Repr::Mod((p - v) % p, *p)),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Coeff(small_or_big(a + c, b))
                } else {
                    Coeff(small_or_big(a * d + c * b, b * d))
                }
            }
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Coeff(Repr::Mod((a + b) % p, *p))
            }
            (x, y) => Coeff(from_big(to_big(x) + to_big(y))),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Coeff(small_or_big(a * c, b * d))
            }
            (Repr::Mod(a, p), Repr::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                Coeff(Repr::Mod(a * b % p, *p))
            }
            (x, y) => Coeff(from_big(to_big(x) * to_big(y))),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => Coeff(small_or_big(*d as i128, *n as i128)),
            Repr::Big(b) => Coeff(from_big(b.recip())),
            Repr::Mod(v, p) => Coeff(Repr::Mod(inv_mod(*v, *p), *p)),
        })
    }

    pub fn div(&self, other: &Coeff) -> Option<Coeff> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = Coeff::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Numerator and denominator of a rational coefficient, for
    /// fraction-free integer work.
    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        let r = self.to_rational();
        (r.numer().clone(), r.denom().clone())
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            (Repr::Mod(a, p), Repr::Mod(b, q)) => a == b && p == q,
            _ => false,
        }
    }
}

impl Eq for Coeff {}

impl Hash for Coeff {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => (0u8, n, d).hash(state),
            Repr::Big(b) => (1u8, b).hash(state),
            Repr::Mod(v, p) => (2u8, v, p).hash(state),
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by rational value (residues by representative); only used for
/// deterministic output.
impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
            Repr::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod(v, p) => write!(f, "{v} mod {p}"),
            _ => write!(f, "{self}"),
        }
    }
}
