//! Points of `Hom(Lambda, E)`: homomorphisms from the weight lattice to the
//! curve, their Weyl action, and the root subsystems cut out by their kernels.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ecurve::{CurvePoint, Point, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg;
use crate::rootsys::{CartanType, Root, RootLength, RootSystemData, Series, WeylElement};

/// A homomorphism `p: Lambda -> E`, recorded by the images of the
/// fundamental weights.
#[derive(Clone, Debug, PartialEq)]
pub struct TBundlePoint<F: Field> {
    pub curve: WeierstrassCurve<F>,
    pub images: Vec<CurvePoint<F>>,
}

impl<F: Field> TBundlePoint<F> {
    pub fn new(curve: WeierstrassCurve<F>, images: Vec<CurvePoint<F>>) -> Result<Self> {
        if let Some(bad) = images.iter().find(|p| !curve.contains(p)) {
            return Err(Error::Input(format!(
                "point {} is not on {curve}",
                curve.format_point(bad)
            )));
        }
        Ok(TBundlePoint { curve, images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// `p(lambda) = sum_i lambda_i * images[i]`, `lambda` in fundamental-weight coordinates.
    pub fn evaluate(&self, lambda: &[i64]) -> CurvePoint<F> {
        assert_eq!(lambda.len(), self.images.len(), "weight has wrong rank");
        lambda.iter().zip(&self.images).fold(Point::Zero, |acc, (c, img)| {
            self.curve.add(&acc, &self.curve.scalar_mul(*c, img))
        })
    }

    pub fn evaluate_root(&self, rs: &RootSystemData, root: &[i64]) -> CurvePoint<F> {
        self.evaluate(&rs.root_to_weight(root))
    }

    /// `(w.p)(lambda) = p(w^-1 lambda)`.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        let r = self.rank();
        let images = (0..r)
            .map(|i| {
                let col: Vec<i64> = (0..r).map(|j| w.inverse[j][i]).collect();
                self.evaluate(&col)
            })
            .collect();
        TBundlePoint {
            curve: self.curve.clone(),
            images,
        }
    }

    /// Roots killed by `p`, found by evaluating every root.
    pub fn kernel_roots(&self, rs: &RootSystemData) -> Vec<Root> {
        rs.roots
            .iter()
            .filter(|b| self.evaluate_root(rs, b).is_zero())
            .cloned()
            .collect()
    }

    pub fn kernel_subsystem(&self, rs: &RootSystemData) -> Result<SubsystemReport> {
        if rs.rank() != self.rank() {
            return Err(Error::Input(format!(
                "{} needs {} images, got {}",
                rs.cartan_type,
                rs.rank(),
                self.rank()
            )));
        }
        SubsystemReport::new(self.kernel_roots(rs), rs)
    }

    /// `(dim H^0(ad P), dim of the nilpotent cone of g')` for the regular bundle over this point.
    pub fn deformation_dims(&self, rs: &RootSystemData) -> (usize, usize) {
        deformation_dims(rs.rank(), self.kernel_roots(rs).len())
    }
}

pub fn deformation_dims(rank: usize, kernel_size: usize) -> (usize, usize) {
    (rank + kernel_size, kernel_size)
}

/// One simple factor of a root subsystem, with its root length relative to
/// the ambient system when the factor is simply laced inside a
/// non-simply-laced ambient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsystemFactor {
    pub cartan_type: CartanType,
    pub length: Option<RootLength>,
}

impl fmt::Display for SubsystemFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.length {
            None => write!(f, "{}", self.cartan_type),
            Some(RootLength::Long) => write!(f, "{}^long", self.cartan_type),
            Some(RootLength::Short) => write!(f, "{}^short", self.cartan_type),
        }
    }
}

/// A product of simple types; empty for the trivial subsystem.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SubsystemType(pub Vec<SubsystemFactor>);

impl SubsystemType {
    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SubsystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemReport {
    pub roots_in_kernel: Vec<Root>,
    pub subsystem_type: SubsystemType,
    pub is_levi: bool,
    pub dim_g_prime: usize,
    pub nilpotent_dim: usize,
}

impl SubsystemReport {
    pub fn new(roots: Vec<Root>, ambient: &RootSystemData) -> Result<Self> {
        check_closed(&roots, ambient)?;
        let subsystem_type = classify_subsystem(&roots, ambient)?;
        let is_levi = is_levi(&roots, ambient);
        let (dim_g_prime, nilpotent_dim) = deformation_dims(ambient.rank(), roots.len());
        Ok(SubsystemReport {
            roots_in_kernel: roots,
            subsystem_type,
            is_levi,
            dim_g_prime,
            nilpotent_dim,
        })
    }
}

/// Checks `R' = -R'` and closure under addition within `R`.
pub fn check_closed(roots: &[Root], ambient: &RootSystemData) -> Result<()> {
    let set: HashSet<&Root> = roots.iter().collect();
    for a in roots {
        if !ambient.contains(a) {
            return Err(Error::Invariant(format!("{a:?} is not a root")));
        }
        let neg: Root = a.iter().map(|c| -c).collect();
        if !set.contains(&neg) {
            return Err(Error::Invariant(format!("subsystem not symmetric at {a:?}")));
        }
        for b in roots {
            let s: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if ambient.contains(&s) && !set.contains(&s) {
                return Err(Error::Invariant(format!("subsystem not closed: {a:?} + {b:?}")));
            }
        }
    }
    Ok(())
}

/// True iff `R` meets the rational span of `R'` exactly in `R'`.
pub fn is_levi(roots: &[Root], ambient: &RootSystemData) -> bool {
    if roots.is_empty() {
        return true;
    }
    ambient.roots.iter().filter(|a| linalg::in_span(roots, a)).count() == roots.len()
}

// Functionals tried in order when splitting R' into positive and negative halves.
fn candidate_functionals(r: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..8i64).map(move |t| (0..r as i64).map(|i| 1 + t * (i * i + 3 * i + 1) % 7).collect())
}

/// Identifies the type of a closed subsystem from the Cartan matrix of its
/// simple system.
pub fn classify_subsystem(roots: &[Root], ambient: &RootSystemData) -> Result<SubsystemType> {
    if roots.is_empty() {
        return Ok(SubsystemType::default());
    }
    let r = ambient.rank();
    let dot = |f: &[i64], b: &[i64]| -> i64 { f.iter().zip(b).map(|(x, y)| x * y).sum() };
    let functional = candidate_functionals(r)
        .find(|f| roots.iter().all(|b| dot(f, b) != 0))
        .ok_or_else(|| Error::Invariant("no generic functional found for subsystem".into()))?;
    let positive: Vec<&Root> = roots.iter().filter(|b| dot(&functional, b) > 0).collect();
    let pos_set: HashSet<&Root> = positive.iter().copied().collect();
    let simple: Vec<&Root> = positive
        .iter()
        .copied()
        .filter(|b| {
            !positive.iter().any(|a| {
                let diff: Root = b.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff)
            })
        })
        .collect();
    let m = simple.len();
    let cartan: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| 2 * ambient.inner(simple[i], simple[j]) / ambient.inner(simple[i], simple[i]))
                .collect()
        })
        .collect();

    let mut factors = Vec::new();
    for comp in components(&cartan) {
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        let cartan_type = identify_connected(&sub)?;
        let length = if cartan_type.is_simply_laced() && ambient.length_classes() == 2 {
            Some(ambient.root_length(simple[comp[0]]))
        } else {
            None
        };
        factors.push(SubsystemFactor { cartan_type, length });
    }
    factors.sort_by(|a, b| {
        b.cartan_type
            .rank()
            .cmp(&a.cartan_type.rank())
            .then(a.cartan_type.cmp(&b.cartan_type))
            .then(b.length.cmp(&a.length))
    });
    Ok(SubsystemType(factors))
}

fn components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let m = cartan.len();
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..m {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn identify_connected(a: &[Vec<i64>]) -> Result<CartanType> {
    let m = a.len();
    let unknown = || Error::Invariant(format!("Cartan matrix {a:?} is not of finite type"));
    if m == 1 {
        return CartanType::new(Series::A, 1);
    }
    let edges: Vec<(usize, usize, i64)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .filter(|&(i, j)| a[i][j] != 0)
        .map(|(i, j)| (i, j, a[i][j] * a[j][i]))
        .collect();
    if edges.len() != m - 1 {
        return Err(unknown());
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    let max_product = edges.iter().map(|e| e.2).max().unwrap();
    match max_product {
        3 if m == 2 => CartanType::new(Series::G, 2),
        2 => {
            if edges.iter().filter(|e| e.2 == 2).count() != 1 || (0..m).any(|v| degree(v) > 2) {
                return Err(unknown());
            }
            let &(i, j, _) = edges.iter().find(|e| e.2 == 2).unwrap();
            if m == 2 {
                return CartanType::new(Series::B, 2);
            }
            let leaf = if degree(i) == 1 {
                Some((i, j))
            } else if degree(j) == 1 {
                Some((j, i))
            } else {
                None
            };
            match leaf {
                // the short end of a double bond has a[short][long] = -2
                Some((l, o)) if a[l][o] == -2 => CartanType::new(Series::B, m),
                Some(_) => CartanType::new(Series::C, m),
                None if m == 4 => CartanType::new(Series::F, 4),
                None => Err(unknown()),
            }
        }
        1 => {
            let branch: Vec<usize> = (0..m).filter(|&v| degree(v) >= 3).collect();
            match branch.as_slice() {
                [] => CartanType::new(Series::A, m),
                [c] if degree(*c) == 3 => {
                    let mut arms: Vec<usize> = edges
                        .iter()
                        .filter(|e| e.0 == *c || e.1 == *c)
                        .map(|e| arm_length(&edges, *c, if e.0 == *c { e.1 } else { e.0 }))
                        .collect();
                    arms.sort_unstable();
                    match arms.as_slice() {
                        [1, 1, _] => CartanType::new(Series::D, m),
                        [1, 2, 2] => CartanType::new(Series::E, 6),
                        [1, 2, 3] => CartanType::new(Series::E, 7),
                        [1, 2, 4] => CartanType::new(Series::E, 8),
                        _ => Err(unknown()),
                    }
                }
                _ => Err(unknown()),
            }
        }
        _ => Err(unknown()),
    }
}

fn arm_length(edges: &[(usize, usize, i64)], from: usize, mut at: usize) -> usize {
    let mut prev = from;
    let mut len = 1;
    loop {
        let next = edges
            .iter()
            .filter_map(|e| {
                if e.0 == at && e.1 != prev {
                    Some(e.1)
                } else if e.1 == at && e.0 != prev {
                    Some(e.0)
                } else {
                    None
                }
            })
            .next();
        match next {
            Some(n) => {
                prev = at;
                at = n;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Size of the fiber of the SL(2) space `U'_E` (pairs of a regular
/// centralizer and a point of `M^T_E` with compatible stabilizers).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberCount {
    Points(usize),
    /// The whole curve `E`.
    OneParameterFamily,
}

impl fmt::Display for FiberCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberCount::Points(n) => write!(f, "{n}"),
            FiberCount::OneParameterFamily => write!(f, "one-parameter family (E)"),
        }
    }
}

/// Off the diagonal the centralizer is a torus with trivial stabilizer and
/// every `t in E` qualifies. On the diagonal the stabilizer is all of
/// `W = {+-1}`, so `t` must satisfy `t = -t`.
pub fn sl2_ubar_fiber_count<F: Field>(curve: &WeierstrassCurve<F>, on_diagonal: bool) -> Result<FiberCount> {
    if !curve.has_split_two_torsion() {
        return Err(Error::Input(format!("2-torsion of {curve} is not rational")));
    }
    if !on_diagonal {
        return Ok(FiberCount::OneParameterFamily);
    }
    let fixed = curve.two_torsion().into_iter().filter(|t| *t == curve.neg(t)).count();
    Ok(FiberCount::Points(fixed))
}

/// A stratum found by scanning, with one witness assignment of images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedStratum {
    pub subsystem_type: String,
    pub is_levi: bool,
    pub kernel_size: usize,
    pub witness: Vec<String>,
    pub count: usize,
}

/// Scans every assignment of points of `E(F_p)` to the fundamental weights
/// and groups the kernels by type. Limited to `#E^r <= 10^6`.
pub fn realized_strata(
    rs: &RootSystemData,
    curve: &WeierstrassCurve<PrimeField>,
) -> Result<BTreeMap<String, RealizedStratum>> {
    let pts = curve.enumerate_points()?;
    let r = rs.rank();
    let total = (pts.len() as u64).checked_pow(r as u32).unwrap_or(u64::MAX);
    if total > 1_000_000 {
        return Err(Error::Guard(format!("{total} assignments exceed the scan limit")));
    }
    let mut out: BTreeMap<String, RealizedStratum> = BTreeMap::new();
    let mut idx = vec![0usize; r];
    loop {
        let images: Vec<Point<u64>> = idx.iter().map(|&i| pts[i].clone()).collect();
        let p = TBundlePoint {
            curve: curve.clone(),
            images,
        };
        let rep = p.kernel_subsystem(rs)?;
        let key = rep.subsystem_type.to_string();
        out.entry(key.clone())
            .and_modify(|s| s.count += 1)
            .or_insert_with(|| RealizedStratum {
                subsystem_type: key,
                is_levi: rep.is_levi,
                kernel_size: rep.roots_in_kernel.len(),
                witness: p.images.iter().map(|q| curve.format_point(q)).collect(),
                count: 1,
            });
        // odometer
        let mut k = 0;
        loop {
            if k == r {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < pts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
