//! Exact coefficient fields: the rationals and prime fields `F_p` with `p > 3`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field whose elements are plain values and whose operations go through a
/// (cheap, cloneable) context object.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Maps a rational into the field; fails when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;

    /// All roots in the field of the polynomial with the given coefficients
    /// (constant term first), without multiplicity.
    fn roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation, constant term first.
    fn eval_poly(&self, coeffs: &[Self::Elem], x: &Self::Elem) -> Self::Elem {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }
}

/// Which field a curve or report lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "p")]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    /// Parses `q` or `p:<prime>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldKind::Rational);
        }
        let p = s
            .strip_prefix("p:")
            .ok_or_else(|| Error::Input(format!("field must be `q` or `p:<prime>`, got `{s}`")))?;
        let p: u64 = p.parse().map_err(|_| Error::Input(format!("bad prime `{p}`")))?;
        PrimeField::new(p)?;
        Ok(FieldKind::Prime(p))
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }

    // Rational root theorem on the primitive integer polynomial.
    fn roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        let coeffs = trim_rational(coeffs);
        if coeffs.len() <= 1 {
            return Vec::new();
        }
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let mut out = Vec::new();
        // x = 0 is a root iff the constant term vanishes; strip powers of x.
        let mut start = 0;
        while ints[start].is_zero() {
            start += 1;
        }
        if start > 0 {
            out.push(BigRational::zero());
        }
        let ints = &ints[start..];
        if ints.len() > 1 {
            let c0 = ints[0].abs();
            let cn = ints[ints.len() - 1].abs();
            let num_divs = divisors(&c0);
            let den_divs = divisors(&cn);
            for a in &num_divs {
                for b in &den_divs {
                    for sign in [1, -1] {
                        let cand = BigRational::new(a * BigInt::from(sign), b.clone());
                        if self.eval_poly(&coeffs[start..], &cand).is_zero() && !out.contains(&cand) {
                            out.push(cand);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

fn trim_rational(c: &[BigRational]) -> Vec<BigRational> {
    let mut v = c.to_vec();
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

// Trial division; only used on small constant terms in practice.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().expect("rational root search limited to 64-bit coefficients");
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

/// `F_p` with `p` an odd prime greater than 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a prime greater than 3")));
        }
        if p >= 1 << 62 {
            return Err(Error::Input(format!("prime {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().unwrap()
    }

    /// Elements in `0..p` order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(&a, (self.p - 1) / 2) == 1
    }

    /// Tonelli–Shanks.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(&a, q);
        let mut r = self.pow(&a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(&tt, &tt);
                i += 1;
            }
            let b = self.pow(&c, 1 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let n = self.reduce_big(q.numer());
        let d = self.reduce_big(q.denom());
        self.div(&n, &d)
            .ok_or_else(|| Error::Input(format!("{q} has denominator divisible by {}", self.p)))
    }

    fn roots(&self, coeffs: &[u64]) -> Vec<u64> {
        if coeffs.iter().all(|c| *c == 0) {
            return Vec::new();
        }
        if self.p <= 100_000 {
            return self.elements().filter(|x| self.eval_poly(coeffs, x) == 0).collect();
        }
        crate::fp_poly::roots(*self, coeffs)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // Deterministic Miller–Rabin for 64-bit inputs.
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Parses an exact rational such as `-3`, `2/7`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(1009));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1001));
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn sqrt_mod_p() {
        let f = PrimeField::new(1009).unwrap();
        for a in 0..1009u64 {
            match f.sqrt(a) {
                Some(r) => assert_eq!(f.mul(&r, &r), a),
                None => assert!(!f.is_square(a)),
            }
        }
    }

    #[test]
    fn rational_roots_of_split_cubic() {
        let q = Rationals;
        // x^3 - x
        let c = [0, -1, 0, 1].map(|n| q.from_i64(n));
        let r = q.roots(&c);
        assert_eq!(r, vec![q.from_i64(-1), q.from_i64(0), q.from_i64(1)]);
        // x^3 + 1 has the single rational root -1
        let c = [1, 0, 0, 1].map(|n| q.from_i64(n));
        assert_eq!(q.roots(&c), vec![q.from_i64(-1)]);
        // 4x^2 - 1
        let c = [-1, 0, 4].map(|n| q.from_i64(n));
        assert_eq!(q.roots(&c).len(), 2);
    }

    #[test]
    fn field_kind_parse() {
        assert_eq!(FieldKind::parse("q").unwrap(), FieldKind::Rational);
        assert_eq!(FieldKind::parse("p:13").unwrap(), FieldKind::Prime(13));
        assert!(FieldKind::parse("p:15").is_err());
        assert!(FieldKind::parse("r").is_err());
    }

    #[test]
    fn rational_into_fp() {
        let f = PrimeField::new(13).unwrap();
        let half = parse_rational("1/2").unwrap();
        assert_eq!(f.mul(&f.from_rational(&half).unwrap(), &2), 1);
        assert!(f.from_rational(&parse_rational("1/13").unwrap()).is_err());
    }
}
