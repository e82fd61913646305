//! Short Weierstrass curves `y^2 = x^3 + b2 x + b3` over an exact field, the
//! chord–tangent group law, and Riemann–Roch monomial bases for `L(n*O)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    /// The marked origin.
    Zero,
    Affine(E, E),
}

impl<E> Point<E> {
    pub fn is_zero(&self) -> bool {
        matches!(self, Point::Zero)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Zero => None,
            Point::Affine(x, _) => Some(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F: Field> {
    field: F,
    b2: F::Elem,
    b3: F::Elem,
}

pub type CurvePoint<F> = Point<<F as Field>::Elem>;

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(field: F, b2: F::Elem, b3: F::Elem) -> Result<Self> {
        let c = WeierstrassCurve { field, b2, b3 };
        if c.field.is_zero(&c.discriminant()) {
            return Err(Error::Input(format!(
                "singular curve: 4*b2^3 + 27*b3^2 = 0 for b2={}, b3={}",
                c.field.format(&c.b2),
                c.field.format(&c.b3)
            )));
        }
        Ok(c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn b2(&self) -> &F::Elem {
        &self.b2
    }

    pub fn b3(&self) -> &F::Elem {
        &self.b3
    }

    /// `4 b2^3 + 27 b3^2`.
    pub fn discriminant(&self) -> F::Elem {
        let k = &self.field;
        let t = k.mul(&k.from_i64(4), &k.pow(&self.b2, 3));
        let u = k.mul(&k.from_i64(27), &k.mul(&self.b3, &self.b3));
        k.add(&t, &u)
    }

    /// `x^3 + b2 x + b3`.
    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let k = &self.field;
        k.add(&k.mul(x, &k.add(&k.mul(x, x), &self.b2)), &self.b3)
    }

    /// Coefficients of the cubic, constant term first.
    pub fn cubic(&self) -> [F::Elem; 4] {
        let k = &self.field;
        [self.b3.clone(), self.b2.clone(), k.zero(), k.one()]
    }

    pub fn contains(&self, p: &CurvePoint<F>) -> bool {
        match p {
            Point::Zero => true,
            Point::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn point(&self, x: F::Elem, y: F::Elem) -> Result<CurvePoint<F>> {
        let p = Point::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::Input(format!(
                "point {} is not on {}",
                self.format_point(&p),
                self
            )))
        }
    }

    pub fn neg(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        match p {
            Point::Zero => Point::Zero,
            Point::Affine(x, y) => Point::Affine(x.clone(), self.field.neg(y)),
        }
    }

    pub fn add(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        let k = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Zero, _) => return q.clone(),
            (_, Point::Zero) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if k.is_zero(&k.add(y1, y2)) {
                return Point::Zero;
            }
            // tangent: (3x^2 + b2) / 2y
            let num = k.add(&k.mul(&k.from_i64(3), &k.mul(x1, x1)), &self.b2);
            k.div(&num, &k.add(y1, y1)).unwrap()
        } else {
            k.div(&k.sub(y2, y1), &k.sub(x2, x1)).unwrap()
        };
        let x3 = k.sub(&k.sub(&k.mul(&slope, &slope), x1), x2);
        let y3 = k.sub(&k.mul(&slope, &k.sub(x1, &x3)), y1);
        let r = Point::Affine(x3, y3);
        debug_assert!(self.contains(&r), "group law left the curve");
        r
    }

    pub fn double(&self, p: &CurvePoint<F>) -> CurvePoint<F> {
        self.add(p, p)
    }

    pub fn sub(&self, p: &CurvePoint<F>, q: &CurvePoint<F>) -> CurvePoint<F> {
        self.add(p, &self.neg(q))
    }

    /// `n * P` by double-and-add; negative `n` negates.
    pub fn scalar_mul(&self, n: i64, p: &CurvePoint<F>) -> CurvePoint<F> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Point::Zero;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            e >>= 1;
        }
        acc
    }

    pub fn sum<'a>(&self, pts: impl IntoIterator<Item = &'a CurvePoint<F>>) -> CurvePoint<F>
    where
        F::Elem: 'a,
    {
        pts.into_iter().fold(Point::Zero, |acc, p| self.add(&acc, p))
    }

    /// Roots of the cubic lying in the field.
    pub fn cubic_roots(&self) -> Vec<F::Elem> {
        self.field.roots(&self.cubic())
    }

    /// `Zero` plus every `(e, 0)` with `e` a root of the cubic in the field.
    pub fn two_torsion(&self) -> Vec<CurvePoint<F>> {
        let k = &self.field;
        std::iter::once(Point::Zero)
            .chain(self.cubic_roots().into_iter().map(|e| Point::Affine(e, k.zero())))
            .collect()
    }

    pub fn has_split_two_torsion(&self) -> bool {
        self.cubic_roots().len() == 3
    }

    pub fn format_point(&self, p: &CurvePoint<F>) -> String {
        match p {
            Point::Zero => "O".to_string(),
            Point::Affine(x, y) => format!("({}, {})", self.field.format(x), self.field.format(y)),
        }
    }
}

impl<F: Field> fmt::Display for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x^3 + ({})x + ({}) over {}",
            self.field.format(&self.b2),
            self.field.format(&self.b3),
            self.field.kind()
        )
    }
}

impl WeierstrassCurve<PrimeField> {
    pub const MAX_ENUMERATION_PRIME: u64 = 10_000;

    /// Every point of `E(F_p)`, by scanning `x`; `Zero` first.
    pub fn enumerate_points(&self) -> Result<Vec<Point<u64>>> {
        let k = self.field;
        if k.modulus() > Self::MAX_ENUMERATION_PRIME {
            return Err(Error::Guard(format!(
                "point enumeration limited to p <= {}, got {}",
                Self::MAX_ENUMERATION_PRIME,
                k.modulus()
            )));
        }
        let mut pts = vec![Point::Zero];
        for x in k.elements() {
            let r = self.rhs(&x);
            if let Some(y) = k.sqrt(r) {
                pts.push(Point::Affine(x, y));
                if y != 0 {
                    pts.push(Point::Affine(x, k.neg(&y)));
                }
            }
        }
        Ok(pts)
    }

    /// Order of `P`, by repeated addition (small fields only).
    pub fn point_order(&self, p: &Point<u64>) -> u64 {
        let mut q = p.clone();
        let mut n = 1;
        while !q.is_zero() {
            q = self.add(&q, p);
            n += 1;
        }
        n
    }
}

/// The monomial `x^i y^j` (`j <= 1`), which has a pole of order `2i + 3j` at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RrMonomial {
    pub i: u32,
    pub j: u32,
}

impl RrMonomial {
    pub fn pole_order(&self) -> u32 {
        2 * self.i + 3 * self.j
    }

    pub fn eval<F: Field>(&self, k: &F, x: &F::Elem, y: &F::Elem) -> F::Elem {
        let xi = k.pow(x, self.i as u64);
        if self.j == 1 {
            k.mul(&xi, y)
        } else {
            xi
        }
    }
}

impl fmt::Display for RrMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (0, 0) => write!(f, "1"),
            (0, _) => write!(f, "y"),
            (1, 0) => write!(f, "x"),
            (1, _) => write!(f, "xy"),
            (i, 0) => write!(f, "x^{i}"),
            (i, _) => write!(f, "x^{i}y"),
        }
    }
}

/// Basis of `L(n*O)`: every `x^i y^j` with `2i + 3j <= n`, by pole order.
pub fn rr_basis(n: u32) -> Vec<RrMonomial> {
    let mut out: Vec<RrMonomial> = (0..=n / 2)
        .flat_map(|i| (0..=1).map(move |j| RrMonomial { i, j }))
        .filter(|m| m.pole_order() <= n)
        .collect();
    out.sort_by_key(|m| m.pole_order());
    out
}
