//! The quotient map `M^T_E -> M^G_E` made explicit: Abel–Jacobi for SL(n),
//! symmetric products of the x-line for types B and C, and the Spin branch
//! hyperplanes.

use std::collections::HashMap;

use crate::ecurve::{rr_basis, CurvePoint, Point, RrMonomial, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

pub use crate::rootsys::{wps_signature, WpsSignature};

/// Homogeneous coordinates scaled so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint<E> {
    coords: Vec<E>,
}

impl<E: Clone + PartialEq> ProjectivePoint<E> {
    pub fn new<F: Field<Elem = E>>(k: &F, coords: Vec<E>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !k.is_zero(c))
            .ok_or_else(|| Error::Input("all homogeneous coordinates are zero".into()))?;
        let inv = k.inv(lead).unwrap();
        Ok(ProjectivePoint {
            coords: coords.iter().map(|c| k.mul(c, &inv)).collect(),
        })
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// A reduced divisor of `n` points summing to the origin.
#[derive(Clone, Debug)]
pub struct DivisorInput<F: Field> {
    pub curve: WeierstrassCurve<F>,
    pub points: Vec<CurvePoint<F>>,
}

impl<F: Field> DivisorInput<F> {
    pub fn new(curve: WeierstrassCurve<F>, points: Vec<CurvePoint<F>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Input("need at least two points".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if !curve.contains(p) {
                return Err(Error::Input(format!(
                    "point {} is not on {curve}",
                    curve.format_point(p)
                )));
            }
            if points[..i].contains(p) {
                return Err(Error::Input(format!(
                    "repeated point {}: non-reduced divisors are not supported",
                    curve.format_point(p)
                )));
            }
        }
        let sum = curve.sum(&points);
        if !sum.is_zero() {
            return Err(Error::Input(format!(
                "points sum to {} instead of the origin",
                curve.format_point(&sum)
            )));
        }
        Ok(DivisorInput { curve, points })
    }
}

/// Evaluation row of the Riemann–Roch basis at a point. At the origin the
/// only condition is that the top (highest pole order) coefficient vanishes.
fn rr_row<F: Field>(k: &F, basis: &[RrMonomial], p: &CurvePoint<F>) -> Vec<F::Elem> {
    match p {
        Point::Affine(x, y) => basis.iter().map(|m| m.eval(k, x, y)).collect(),
        Point::Zero => (0..basis.len())
            .map(|i| if i + 1 == basis.len() { k.one() } else { k.zero() })
            .collect(),
    }
}

/// Coefficients, in the basis `rr_basis(n)`, of the unique function (up to
/// scale) with poles only at the origin that vanishes on the divisor.
pub fn abel_jacobi_sl<F: Field>(d: &DivisorInput<F>) -> Result<ProjectivePoint<F::Elem>> {
    let k = d.curve.field();
    let n = d.points.len();
    let basis = rr_basis(n as u32);
    let rows: Vec<Vec<F::Elem>> = d.points.iter().map(|p| rr_row(k, &basis, p)).collect();
    let kernel = null_space(k, rows);
    if kernel.len() != 1 {
        return Err(Error::Invariant(format!(
            "evaluation matrix has {}-dimensional null space, expected 1",
            kernel.len()
        )));
    }
    ProjectivePoint::new(k, kernel.into_iter().next().unwrap())
}

/// `(-x(P) : 1)`, the function `x - x(P)` in the basis `(1, x)`.
pub fn x_coordinate_image<F: Field>(
    curve: &WeierstrassCurve<F>,
    p: &CurvePoint<F>,
) -> Result<ProjectivePoint<F::Elem>> {
    let k = curve.field();
    match p {
        Point::Affine(x, _) => ProjectivePoint::new(k, vec![k.neg(x), k.one()]),
        Point::Zero => ProjectivePoint::new(k, vec![k.one(), k.zero()]),
    }
}

/// Basis of the right null space, via reduced row echelon form.
pub fn null_space<F: Field>(k: &F, mut m: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !k.is_zero(&m[i][col])) else {
            continue;
        };
        m.swap(p, row);
        let inv = k.inv(&m[row][col]).unwrap();
        for x in m[row].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i != row && !k.is_zero(&m[i][col]) {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x = k.sub(x, &k.mul(p, &f));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![k.zero(); cols];
            v[free] = k.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(&m[r][free]);
            }
            v
        })
        .collect()
}

/// Outcome of a brute-force comparison of a quotient map's fibers with group orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCheck {
    pub inputs: usize,
    pub distinct_images: usize,
    pub orbits: usize,
    pub holds: bool,
}

pub const MAX_ORBIT_CHECK_PRIME: u64 = 101;

/// Enumerates every reduced `n`-point divisor on `E(F_p)` summing to the
/// origin and checks that `map` is constant on `S_n`-orbits (every
/// ordering of each divisor) and separates distinct divisors.
pub fn fiber_equals_orbit_check<M>(curve: &WeierstrassCurve<PrimeField>, n: usize, map: M) -> Result<FiberCheck>
where
    M: Fn(&[Point<u64>]) -> Result<ProjectivePoint<u64>>,
{
    if curve.field().modulus() > MAX_ORBIT_CHECK_PRIME || !(2..=4).contains(&n) {
        return Err(Error::Guard(format!(
            "orbit check limited to p <= {MAX_ORBIT_CHECK_PRIME} and 2 <= n <= 4"
        )));
    }
    let pts = curve.enumerate_points()?;
    let mut image_to_set: HashMap<ProjectivePoint<u64>, Vec<usize>> = HashMap::new();
    let mut inputs = 0;
    let mut holds = true;
    for set in sum_zero_subsets(curve, &pts, n) {
        inputs += 1;
        let ordered: Vec<Point<u64>> = set.iter().map(|&i| pts[i].clone()).collect();
        let image = map(&ordered)?;
        for perm in permutations(n).into_iter().skip(1) {
            let permuted: Vec<Point<u64>> = perm.iter().map(|&i| ordered[i].clone()).collect();
            if map(&permuted)? != image {
                holds = false;
            }
        }
        match image_to_set.get(&image) {
            Some(other) if *other != set => holds = false,
            Some(_) => {}
            None => {
                image_to_set.insert(image, set);
            }
        }
    }
    Ok(FiberCheck {
        inputs,
        distinct_images: image_to_set.len(),
        orbits: inputs,
        holds,
    })
}

// Index sets i_1 < ... < i_n of distinct points with sum zero; the last point
// is forced by the first n - 1.
fn sum_zero_subsets(curve: &WeierstrassCurve<PrimeField>, pts: &[Point<u64>], n: usize) -> Vec<Vec<usize>> {
    let index: HashMap<&Point<u64>, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        curve: &WeierstrassCurve<PrimeField>,
        pts: &[Point<u64>],
        index: &HashMap<&Point<u64>, usize>,
        n: usize,
        start: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if stack.len() == n - 1 {
            let s = curve.sum(stack.iter().map(|&i| &pts[i]));
            let last = index[&curve.neg(&s)];
            if last > *stack.last().unwrap() {
                let mut set = stack.clone();
                set.push(last);
                out.push(set);
            }
            return;
        }
        for i in start..pts.len() {
            stack.push(i);
            rec(curve, pts, index, n, i + 1, stack, out);
            stack.pop();
        }
    }
    rec(curve, pts, &index, n, 0, &mut stack, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `(s_0 : ... : s_r)`, the homogeneous elementary symmetric functions of the
/// points `(x(P_i) : 1)` of the x-line, with the origin at `(1 : 0)`.
/// Equivalently the coefficients of `prod_i (z_i T - x_i)` from the top.
pub fn symprod_quotient_bc<F: Field>(
    curve: &WeierstrassCurve<F>,
    points: &[CurvePoint<F>],
) -> Result<ProjectivePoint<F::Elem>> {
    let k = curve.field();
    if let Some(bad) = points.iter().find(|p| !curve.contains(p)) {
        return Err(Error::Input(format!(
            "point {} is not on {curve}",
            curve.format_point(bad)
        )));
    }
    // sigma[j] after processing a prefix = sum over j-subsets of prod x * prod z over the rest
    let mut sigma = vec![k.one()];
    for p in points {
        let (x, z) = match p {
            Point::Affine(x, _) => (x.clone(), k.one()),
            Point::Zero => (k.one(), k.zero()),
        };
        let mut next = vec![k.zero(); sigma.len() + 1];
        for (j, s) in sigma.iter().enumerate() {
            next[j] = k.add(&next[j], &k.mul(s, &z));
            next[j + 1] = k.add(&next[j + 1], &k.mul(s, &x));
        }
        sigma = next;
    }
    ProjectivePoint::new(k, sigma)
}

/// Brute-force check over `E(F_p)^r` that `symprod_quotient_bc` is constant
/// exactly on orbits of signed permutations.
pub fn signed_permutation_fiber_check(curve: &WeierstrassCurve<PrimeField>, r: usize) -> Result<FiberCheck> {
    if curve.field().modulus() > MAX_ORBIT_CHECK_PRIME || r == 0 || r > 3 {
        return Err(Error::Guard(format!(
            "signed-permutation check limited to p <= {MAX_ORBIT_CHECK_PRIME} and r <= 3"
        )));
    }
    let pts = curve.enumerate_points()?;
    let key = |p: &Point<u64>| match p {
        Point::Zero => (0u8, 0u64, 0u64),
        Point::Affine(x, y) => (1, *x, *y),
    };
    let orbit_key = |tuple: &[Point<u64>]| {
        let mut v: Vec<_> = tuple.iter().map(|p| key(p).min(key(&curve.neg(p)))).collect();
        v.sort_unstable();
        v
    };
    let mut image_orbit = HashMap::new();
    let mut orbit_image = HashMap::new();
    let mut holds = true;
    let mut inputs = 0;
    let mut idx = vec![0usize; r];
    'outer: loop {
        inputs += 1;
        let tuple: Vec<Point<u64>> = idx.iter().map(|&i| pts[i].clone()).collect();
        let img = symprod_quotient_bc(curve, &tuple)?;
        let ok = orbit_key(&tuple);
        if *image_orbit.entry(img.clone()).or_insert_with(|| ok.clone()) != ok {
            holds = false;
        }
        if *orbit_image.entry(ok).or_insert_with(|| img.clone()) != img {
            holds = false;
        }
        let mut k = 0;
        loop {
            if k == r {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < pts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    Ok(FiberCheck {
        inputs,
        distinct_images: image_orbit.len(),
        orbits: orbit_image.len(),
        holds: holds && image_orbit.len() == orbit_image.len(),
    })
}

/// For each root `e` of the (split) cubic, the hyperplane of `P^r` whose
/// points are the multisets of x-values containing `e`:
/// `sum_j (-e)^(r-j) sigma_j = 0`.
pub fn spin_branch_hyperplanes<F: Field>(curve: &WeierstrassCurve<F>, r: usize) -> Result<Vec<Vec<F::Elem>>> {
    let roots = curve.cubic_roots();
    if roots.len() != 3 {
        return Err(Error::Input(format!("cubic of {curve} does not split over the field")));
    }
    let k = curve.field();
    Ok(roots
        .iter()
        .map(|e| {
            let m = k.neg(e);
            (0..=r).map(|j| k.pow(&m, (r - j) as u64)).collect()
        })
        .collect())
}

pub fn on_hyperplane<F: Field>(k: &F, h: &[F::Elem], p: &ProjectivePoint<F::Elem>) -> bool {
    let s = h
        .iter()
        .zip(p.coords())
        .fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)));
    k.is_zero(&s)
}
