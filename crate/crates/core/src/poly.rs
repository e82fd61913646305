//! Dense univariate polynomials over an exact integral domain. Nesting gives
//! multivariate rings: `Poly<Poly<Q>>` is `Q[s][x]` with `x` outermost.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fp_poly::{self, FpPoly};

pub type Q = BigRational;

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when the quotient exists in the ring.
    fn exact_div(&self, o: &Self) -> Option<Self>;
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    c: Vec<R>,
}

impl<R: Ring> Poly<R> {
    /// Coefficients from the constant term up.
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant(a: R) -> Self {
        Poly::new(vec![a])
    }

    /// `a * t^k`
    pub fn monomial(a: R, k: usize) -> Self {
        let mut c = vec![R::zero(); k + 1];
        c[k] = a;
        Poly::new(c)
    }

    pub fn var() -> Self {
        Poly::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, a: &R) -> Self {
        Poly::new(self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, t: &R) -> R {
        self.c.iter().rev().fold(R::zero(), |acc, a| acc.mul(t).add(a))
    }

    /// `t^d p(1/t)`; requires `d >= deg p`.
    pub fn reverse(&self, d: usize) -> Self {
        assert!(self.degree().is_none_or(|e| e <= d), "reversal below degree");
        let mut c = self.c.clone();
        c.resize(d + 1, R::zero());
        c.reverse();
        Poly::new(c)
    }

    /// Multiplicity of `t = 0` as a root; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(R::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Poly::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(c)
    }
    fn neg(&self) -> Self {
        Poly::new(self.c.iter().map(|a| a.neg()).collect())
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let dd = o.degree()?;
        let Some(dn) = self.degree() else {
            return Some(Poly::zero());
        };
        if dn < dd {
            return None;
        }
        let lc = o.lc();
        let mut rem = self.c.clone();
        let mut q = vec![R::zero(); dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let t = rem[i + dd].exact_div(&lc)?;
            for (j, b) in o.c.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&t.mul(b));
            }
            q[i] = t;
        }
        rem.iter().all(|r| r.is_zero()).then(|| Poly::new(q))
    }
}

/// Determinant by fraction-free elimination; every division is exact.
pub fn bareiss_det<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return R::zero();
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

pub fn sylvester<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<Vec<R>> {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![R::zero(); size];
        for (j, a) in f.coeffs().iter().rev().enumerate() {
            r[i + j] = a.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![R::zero(); size];
        for (j, a) in g.coeffs().iter().rev().enumerate() {
            r[i + j] = a.clone();
        }
        rows.push(r);
    }
    rows
}

/// Resultant with respect to the outer variable.
pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> R {
    if f.is_zero() || g.is_zero() {
        return R::zero();
    }
    if f.degree() == Some(0) && g.degree() == Some(0) {
        return R::one();
    }
    bareiss_det(sylvester(f, g))
}

/// `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant<R: Ring>(f: &Poly<R>) -> R {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return R::zero();
    }
    if d == 1 {
        return R::one();
    }
    let r = resultant(f, &f.derivative())
        .exact_div(&f.lc())
        .expect("leading coefficient divides the resultant");
    if (d * (d - 1) / 2) % 2 == 1 {
        r.neg()
    } else {
        r
    }
}

pub type QPoly = Poly<Q>;

pub fn q(v: i64) -> Q {
    Q::from_i64(v)
}

impl QPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut qc = vec![q(0); rem.len() - dd];
        for i in (0..qc.len()).rev() {
            let t = &rem[i + dd] * &inv;
            if !Zero::is_zero(&t) {
                for (j, b) in d.c.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &t * b;
                }
            }
            qc[i] = t;
        }
        rem.truncate(dd);
        (Poly::new(qc), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    /// Monic gcd by the Euclidean algorithm, made primitive at each step to
    /// keep coefficients small.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer polynomial with coprime coefficients and positive leading
    /// coefficient, equal to `self` up to a rational scalar.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| (a * Q::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        Poly::new(ints.into_iter().map(|a| Q::from_integer(a / &g)).collect())
    }

    /// Squarefree test through the Euclidean gcd with the derivative.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|a| a.is_integer())
    }

    /// Image in `F_p[t]`; `None` when some denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<FpPoly> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(self.c.len());
        for a in &self.c {
            let den = a.denom().mod_floor(&pb).to_u64().unwrap();
            if den == 0 {
                return None;
            }
            let num = a.numer().mod_floor(&pb).to_u64().unwrap();
            out.push(mulmod(num, inv_mod(den, p), p));
        }
        Some(fp_poly::trim(out))
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if Zero::is_zero(a) {
                continue;
            }
            let (neg, mag) = if a.is_negative() {
                (true, -a)
            } else {
                (false, a.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{mag}*s")?,
                (_, true) => write!(f, "s^{i}")?,
                (_, false) => write!(f, "{mag}*s^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&a), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).exact_div(&a), None);
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[5, 3, 0, 2]).derivative(), p(&[3, 0, 6]));
        assert_eq!(p(&[1, 2]).reverse(3), p(&[0, 0, 2, 1]));
        assert_eq!(p(&[0, 0, 4, 1]).valuation(), Some(2));
        assert_eq!(p(&[1, 2, 3]).eval(&q(2)), q(17));
        assert_eq!(p(&[1, -3, 0, 2]).to_string(), "2*s^3 - 3*s + 1");
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 0, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[7, 0, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert!(a.is_squarefree());
        assert!(!a.mul(&p(&[2, 1])).is_squarefree());
    }

    #[test]
    fn resultants() {
        // Res(x - a, g) = g(a)
        let g = p(&[3, 0, 1, 1]);
        assert_eq!(resultant(&p(&[-2, 1]), &g), q(15));
        // disc(x^2 + bx + c) = b^2 - 4c
        assert_eq!(discriminant(&p(&[3, 5, 1])), q(13));
        // disc(x^3 + ax + b) = -4a^3 - 27b^2
        assert_eq!(discriminant(&p(&[2, -1, 0, 1])), q(4 - 108));
        // a common root makes the resultant vanish
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), q(0));
    }

    #[test]
    fn bivariate_resultant() {
        // Res_x(x^2 - s, x - s) = s^2 - s
        type P2 = Poly<QPoly>;
        let s = QPoly::var();
        let f: P2 = Poly::new(vec![s.neg(), QPoly::zero(), QPoly::one()]);
        let g: P2 = Poly::new(vec![s.neg(), QPoly::one()]);
        assert_eq!(resultant(&f, &g), p(&[0, -1, 1]));
        // disc_x(x^2 + s x + 1) = s^2 - 4
        let h: P2 = Poly::new(vec![QPoly::one(), s.clone(), QPoly::one()]);
        assert_eq!(discriminant(&h), p(&[-4, 0, 1]));
    }

    #[test]
    fn bareiss_matches_expansion() {
        let m = vec![
            vec![q(2), q(-1), q(0)],
            vec![q(-1), q(2), q(-1)],
            vec![q(0), q(-1), q(2)],
        ];
        assert_eq!(bareiss_det(m), q(4));
        let m = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(bareiss_det(m), q(-1));
    }

    #[test]
    fn reduction() {
        let a = Poly::new(vec![Q::new(1.into(), 2.into()), q(3)]);
        assert_eq!(a.reduce_mod(7), Some(vec![4, 3]));
        assert_eq!(a.reduce_mod(2), None);
    }
}
