//! Root systems, Weyl groups and lattice data for the simple types A–G.
//!
//! Roots are integer vectors in the simple-root basis, weights are integer
//! vectors in the fundamental-weight basis. The Cartan matrix uses the
//! convention `a[i][j] = <alpha_i^vee, alpha_j>`, so the simple root
//! `alpha_j` has fundamental-weight coordinates given by column `j` and the
//! simple reflection acts on roots by `s_i(beta) = beta - <alpha_i^vee, beta> alpha_i`.
//! Nodes follow Bourbaki numbering.

pub mod tables;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

pub type Root = Vec<i64>;
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub const ALL: [Series; 7] = [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ];

    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Series::ALL.into_iter().find(|s| s.letter() == c.to_ascii_uppercase())
    }

    /// Admissible ranks up to `max_rank`.
    pub fn ranks(self, max_rank: usize) -> Vec<usize> {
        (1..=max_rank).filter(|&r| CartanType::new(self, r).is_ok()).collect()
    }
}

/// A simple Cartan type such as `B3` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CartanType {
    series: Series,
    rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::Input(format!(
                "inadmissible Cartan type {}{}",
                series.letter(),
                rank
            )))
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Langlands dual: `B_r` and `C_r` swap, everything else is fixed.
    pub fn dual(&self) -> CartanType {
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        CartanType {
            series,
            rank: self.rank,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }

    /// All admissible types of rank at most `max_rank`, in series order.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        Series::ALL
            .into_iter()
            .flat_map(|s| {
                s.ranks(max_rank)
                    .into_iter()
                    .map(move |r| CartanType { series: s, rank: r })
            })
            .collect()
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..r - 1 {
                    link(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..r - 2 {
                    link(i, i + 1);
                }
                link(r - 3, r - 1);
            }
            Series::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..r - 1 {
                    link(i, i + 1);
                }
            }
            Series::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Series::G => link(0, 1),
        }
        match self.series {
            // alpha_r short
            Series::B => a[r - 1][r - 2] = -2,
            // alpha_r long
            Series::C => a[r - 2][r - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            Series::F => a[2][1] = -2,
            // alpha_1 short, alpha_2 long
            Series::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Exponents `m_i`, ascending; the invariant degrees are `m_i + 1`.
    pub fn exponents(&self) -> Vec<u64> {
        let r = self.rank as u64;
        match self.series {
            Series::A => (1..=r).collect(),
            Series::B | Series::C => (1..=r).map(|i| 2 * i - 1).collect(),
            Series::D => {
                let mut e: Vec<u64> = (1..r).map(|i| 2 * i - 1).collect();
                e.push(r - 1);
                e.sort_unstable();
                e
            }
            Series::E => match r {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Series::F => vec![1, 5, 7, 11],
            Series::G => vec![1, 5],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_letter)
            .ok_or_else(|| Error::Input(format!("unknown type token `{s}`")))?;
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Input(format!("unknown type token `{s}`")))?;
        CartanType::new(series, rank)
    }
}

impl TryFrom<String> for CartanType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CartanType> for String {
    fn from(t: CartanType) -> String {
        t.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootLength {
    Short,
    Long,
}

/// The full root system of one simple type, generated from its Cartan matrix.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub cartan_type: CartanType,
    pub cartan_matrix: IntMatrix,
    /// `d_i` with `d_i a_ij = d_j a_ji`, scaled so short roots have `d = 1`.
    pub symmetrizer: Vec<i64>,
    pub simple_roots: Vec<Root>,
    /// All roots, positive roots first in order of height, then their negatives.
    pub roots: Vec<Root>,
    root_index: HashSet<Root>,
}

impl RootSystemData {
    pub fn build(t: CartanType) -> Self {
        Self::from_cartan(t, t.cartan_matrix())
    }

    /// The coroot system with the same node labels, whose Cartan matrix is the transpose.
    pub fn dual(&self) -> Self {
        Self::from_cartan(self.cartan_type.dual(), linalg::transpose(&self.cartan_matrix))
    }

    fn from_cartan(t: CartanType, a: IntMatrix) -> Self {
        let r = a.len();
        let symmetrizer = symmetrizer(&a);
        let simple_roots: Vec<Root> = (0..r).map(|i| unit(r, i)).collect();

        let mut seen: HashSet<Root> = simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Root> = simple_roots.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 0..r {
                let img = reflect_root(&a, i, &beta);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Root> = seen.into_iter().filter(|b| b.iter().all(|c| *c >= 0)).collect();
        positive.sort_by(|x, y| height(x).cmp(&height(y)).then_with(|| y.cmp(x)));
        let negative: Vec<Root> = positive.iter().map(|b| neg(b)).collect();
        let roots: Vec<Root> = positive.into_iter().chain(negative).collect();
        let root_index = roots.iter().cloned().collect();
        RootSystemData {
            cartan_type: t,
            cartan_matrix: a,
            symmetrizer,
            simple_roots,
            roots,
            root_index,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan_matrix.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.root_index.contains(v)
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.roots.len() / 2]
    }

    /// Symmetric invariant form `(x, y) = sum_ij x_i y_j d_i a_ij`, short roots have length 2.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let a = &self.cartan_matrix;
        let mut s = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                s += x[i] * y[j] * self.symmetrizer[i] * a[i][j];
            }
        }
        s
    }

    pub fn length_squared(&self, root: &[i64]) -> i64 {
        self.inner(root, root)
    }

    pub fn short_length_squared(&self) -> i64 {
        2 * self.symmetrizer.iter().min().copied().unwrap_or(1)
    }

    pub fn root_length(&self, root: &[i64]) -> RootLength {
        if self.length_squared(root) == self.short_length_squared() {
            RootLength::Short
        } else {
            RootLength::Long
        }
    }

    /// Number of distinct root lengths (1 or 2).
    pub fn length_classes(&self) -> usize {
        self.roots
            .iter()
            .map(|b| self.length_squared(b))
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Root {
        reflect_root(&self.cartan_matrix, i, beta)
    }

    /// `det(A)`: the index of the root lattice in the weight lattice.
    pub fn cartan_determinant(&self) -> i64 {
        linalg::det_i64(&self.cartan_matrix)
    }

    /// The unique dominant short root; the highest root in simply-laced types.
    pub fn highest_short_root(&self) -> Root {
        let short = self.short_length_squared();
        let found: Vec<&Root> = self
            .positive_roots()
            .iter()
            .filter(|b| self.length_squared(b) == short && self.is_dominant_root(b))
            .collect();
        assert_eq!(found.len(), 1, "a simple root system has one dominant short root");
        found[0].clone()
    }

    pub fn highest_root(&self) -> Root {
        self.positive_roots().last().cloned().unwrap()
    }

    fn is_dominant_root(&self, b: &[i64]) -> bool {
        self.root_to_weight(b).iter().all(|c| *c >= 0)
    }

    /// Fundamental-weight coordinates of a root-lattice vector: `A * c`.
    pub fn root_to_weight(&self, c: &[i64]) -> Weight {
        linalg::mat_vec(&self.cartan_matrix, c)
    }

    pub fn weight_lattice(&self) -> WeightLatticeData {
        let a = &self.cartan_matrix;
        let r = self.rank();
        let root_in_weight_coords = (0..r).map(|j| (0..r).map(|i| a[i][j]).collect()).collect();
        let weyl_generators = (0..r).map(|i| weyl_generator(a, i)).collect();
        WeightLatticeData {
            root_in_weight_coords,
            weyl_generators,
        }
    }

    /// Orbit of a weight under `W`, by breadth-first closure under simple
    /// reflections. Refuses rank above 7.
    pub fn weyl_orbit(&self, v: &[i64]) -> Result<Vec<Weight>> {
        const MAX_RANK: usize = 7;
        if self.rank() > MAX_RANK {
            return Err(Error::Guard(format!(
                "Weyl orbit enumeration limited to rank <= {MAX_RANK}, got {}",
                self.cartan_type
            )));
        }
        let gens = self.weight_lattice().weyl_generators;
        let mut seen: HashSet<Weight> = HashSet::from([v.to_vec()]);
        let mut order = vec![v.to_vec()];
        let mut queue = VecDeque::from([v.to_vec()]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let img = linalg::mat_vec(g, &w);
                if seen.insert(img.clone()) {
                    order.push(img.clone());
                    queue.push_back(img);
                }
            }
        }
        order.sort();
        Ok(order)
    }

    /// Order of `s_i s_j` from the Cartan entries.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan_matrix[i][j] * self.cartan_matrix[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => panic!("not a finite-type Cartan product: {p}"),
        }
    }
}

/// Fundamental-weight lattice data: simple roots as weights and the simple
/// reflections acting on weight coordinates.
#[derive(Clone, Debug)]
pub struct WeightLatticeData {
    pub root_in_weight_coords: Vec<Weight>,
    pub weyl_generators: Vec<IntMatrix>,
}

/// A Weyl group element as a word in simple reflections together with its
/// matrix on weight coordinates and the matrix of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: IntMatrix,
    pub inverse: IntMatrix,
}

impl WeylElement {
    /// `s_{w[0]} s_{w[1]} ...` acting on weights.
    pub fn from_word(rs: &RootSystemData, word: &[usize]) -> Self {
        let gens = rs.weight_lattice().weyl_generators;
        let r = rs.rank();
        let mut m = linalg::identity(r);
        for &i in word {
            m = linalg::mat_mul(&m, &gens[i]);
        }
        let mut inv = linalg::identity(r);
        for &i in word.iter().rev() {
            inv = linalg::mat_mul(&inv, &gens[i]);
        }
        WeylElement {
            word: word.to_vec(),
            matrix: m,
            inverse: inv,
        }
    }

    /// Action on a root given in simple-root coordinates.
    pub fn act_on_root(&self, rs: &RootSystemData, beta: &[i64]) -> Root {
        let mut v = beta.to_vec();
        for &i in self.word.iter().rev() {
            v = rs.reflect_root(i, &v);
        }
        v
    }
}

/// `(weights, degrees)` of the weighted projective moduli space for one type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsSignature {
    pub cartan_type: CartanType,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub pairing_order: String,
    pub family_pairing_unknown: bool,
}

pub const PAIRING_CONVENTION: &str = "index i pairs weights[i] with degrees[i]; index 0 is the affine node (weight 1, degree 0); weights[1..] follow Bourbaki node order of the dual diagram; degrees[1..] ascending";

/// Looijenga weights: the affine coefficient 1 followed by the coefficients
/// of the highest short root of the dual root system, in node order.
pub fn wps_weights(t: CartanType) -> Vec<u64> {
    let dual = RootSystemData::build(t).dual();
    std::iter::once(1)
        .chain(dual.highest_short_root().into_iter().map(|c| c as u64))
        .collect()
}

/// `(0, d_1, ..., d_r)` with `d_i = m_i + 1`, ascending.
pub fn invariant_degrees(t: CartanType) -> Vec<u64> {
    let mut d: Vec<u64> = t.exponents().into_iter().map(|m| m + 1).collect();
    d.sort_unstable();
    std::iter::once(0).chain(d).collect()
}

pub fn wps_signature(t: CartanType) -> WpsSignature {
    WpsSignature {
        cartan_type: t,
        weights: wps_weights(t),
        degrees: invariant_degrees(t),
        pairing_order: PAIRING_CONVENTION.to_string(),
        family_pairing_unknown: t
            == CartanType {
                series: Series::E,
                rank: 8,
            },
    }
}

fn unit(r: usize, i: usize) -> Root {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

fn neg(v: &[i64]) -> Root {
    v.iter().map(|c| -c).collect()
}

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn reflect_root(a: &IntMatrix, i: usize, beta: &[i64]) -> Root {
    let pairing: i64 = (0..beta.len()).map(|j| a[i][j] * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

// (s_i lambda)_k = lambda_k - lambda_i * a[k][i]
fn weyl_generator(a: &IntMatrix, i: usize) -> IntMatrix {
    let r = a.len();
    let mut m = linalg::identity(r);
    for (k, row) in m.iter_mut().enumerate() {
        row[i] -= a[k][i];
    }
    m
}

fn symmetrizer(a: &IntMatrix) -> Vec<i64> {
    // Connected diagram: propagate d_j = d_i a_ij / a_ji along edges, working
    // with numerators over a common scale so the entries stay integral.
    let r = a.len();
    let mut d: Vec<Option<num_rational::Rational64>> = vec![None; r];
    d[0] = Some(1.into());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..r {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                d[j] = Some(d[i].unwrap() * a[i][j] / a[j][i]);
                queue.push_back(j);
            }
        }
    }
    let d: Vec<num_rational::Rational64> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let min = *d.iter().min().unwrap();
    d.iter()
        .map(|x| {
            let q = x / min;
            assert!(q.is_integer());
            q.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(CartanType::new(Series::B, 1).is_err());
        assert!(CartanType::new(Series::D, 2).is_err());
        assert!(CartanType::new(Series::E, 9).is_err());
        assert!(CartanType::new(Series::G, 3).is_err());
        assert!("X3".parse::<CartanType>().is_err());
        assert_eq!(ty("e8").to_string(), "E8");
    }

    #[test]
    fn root_counts() {
        assert_eq!(RootSystemData::build(ty("G2")).roots.len(), 12);
        assert_eq!(RootSystemData::build(ty("E8")).roots.len(), 240);
        let a1 = RootSystemData::build(ty("A1"));
        assert_eq!(a1.roots, vec![vec![1], vec![-1]]);
        // |R| = rank * Coxeter number
        for row in tables::classical() {
            let rs = RootSystemData::build(row.cartan_type);
            assert_eq!(rs.roots.len() as u64, 2 * row.positive_roots, "{}", row.cartan_type);
            assert_eq!(
                rs.roots.len() as u64,
                rs.rank() as u64 * row.coxeter_number,
                "{}",
                row.cartan_type
            );
        }
    }

    #[test]
    fn root_system_axioms() {
        for t in CartanType::all_up_to(8) {
            let rs = RootSystemData::build(t);
            for b in &rs.roots {
                assert!(rs.contains(&neg(b)));
                for i in 0..rs.rank() {
                    assert!(rs.contains(&rs.reflect_root(i, b)));
                }
            }
            let classes = rs.length_classes();
            assert_eq!(classes == 1, t.is_simply_laced(), "{t}");
            assert!(classes <= 2);
        }
    }

    #[test]
    fn symmetrized_cartan_is_symmetric() {
        for t in CartanType::all_up_to(8) {
            let rs = RootSystemData::build(t);
            let (a, d) = (&rs.cartan_matrix, &rs.symmetrizer);
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    assert_eq!(d[i] * a[i][j], d[j] * a[j][i], "{t}");
                }
            }
        }
    }

    // Direct cofactor expansion, independent of the Bareiss routine.
    fn det_by_expansion(m: &IntMatrix) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: IntMatrix = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det_by_expansion(&minor)
            })
            .sum()
    }

    #[test]
    fn cartan_determinants() {
        for r in 1..=8 {
            let rs = RootSystemData::build(CartanType::new(Series::A, r).unwrap());
            assert_eq!(det_by_expansion(&rs.cartan_matrix), r as i64 + 1);
            assert_eq!(rs.cartan_determinant(), r as i64 + 1);
        }
        assert_eq!(det_by_expansion(&ty("E8").cartan_matrix()), 1);
        assert_eq!(RootSystemData::build(ty("G2")).cartan_determinant(), 1);
        for row in tables::classical() {
            assert_eq!(
                RootSystemData::build(row.cartan_type).cartan_determinant(),
                row.cartan_det,
                "{}",
                row.cartan_type
            );
        }
    }

    #[test]
    fn duality() {
        assert_eq!(ty("B3").dual(), ty("C3"));
        assert_eq!(ty("A5").dual(), ty("A5"));
        assert_eq!(ty("F4").dual(), ty("F4"));
        let b3 = RootSystemData::build(ty("B3"));
        assert_eq!(b3.dual().cartan_matrix, ty("C3").cartan_matrix());
    }

    #[test]
    fn highest_short_roots() {
        for r in 1..=6 {
            let a = RootSystemData::build(CartanType::new(Series::A, r).unwrap());
            assert_eq!(a.highest_short_root(), vec![1; r]);
        }
        for r in 2..=6 {
            let b = RootSystemData::build(CartanType::new(Series::B, r).unwrap());
            assert_eq!(b.highest_short_root(), vec![1; r]);
        }
        assert_eq!(RootSystemData::build(ty("G2")).highest_short_root(), vec![2, 1]);
        assert_eq!(RootSystemData::build(ty("G2")).highest_root(), vec![3, 2]);
    }

    #[test]
    fn explicit_weight_lists() {
        for r in 1..=8 {
            assert_eq!(wps_weights(CartanType::new(Series::A, r).unwrap()), vec![1; r + 1]);
        }
        for r in 2..=8 {
            assert_eq!(wps_weights(CartanType::new(Series::C, r).unwrap()), vec![1; r + 1]);
            let mut b = wps_weights(CartanType::new(Series::B, r).unwrap());
            b.sort_unstable();
            let mut expect = vec![1, 1, 1];
            expect.extend(std::iter::repeat_n(2, r - 2));
            // B2 has rank 2: three ones and no twos
            assert_eq!(b, expect[..r + 1].to_vec());
        }
        assert_eq!(wps_weights(ty("G2")), vec![1, 1, 2]);
        assert_eq!(wps_weights(ty("F4")), vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn degrees() {
        assert_eq!(invariant_degrees(ty("A4")), vec![0, 2, 3, 4, 5]);
        assert_eq!(invariant_degrees(ty("C3")), vec![0, 2, 4, 6]);
        assert_eq!(invariant_degrees(ty("G2")), vec![0, 2, 6]);
        assert_eq!(invariant_degrees(ty("D4")), vec![0, 2, 4, 4, 6]);
        assert_eq!(invariant_degrees(ty("E8")), vec![0, 2, 8, 12, 14, 18, 20, 24, 30]);
    }

    #[test]
    fn signature_identities_against_tables() {
        for row in tables::classical() {
            let sig = wps_signature(row.cartan_type);
            assert_eq!(sig.weights.iter().sum::<u64>(), row.dual_coxeter, "{}", row.cartan_type);
            assert_eq!(sig.degrees[1..].iter().product::<u64>(), row.weyl_order);
            assert_eq!(sig.degrees[1..].iter().map(|d| d - 1).sum::<u64>(), row.positive_roots);
            assert_eq!(sig.degrees[0], 0);
            assert_eq!(sig.family_pairing_unknown, row.cartan_type == ty("E8"));
        }
    }

    #[test]
    fn weyl_generators() {
        for t in CartanType::all_up_to(6) {
            let rs = RootSystemData::build(t);
            let wl = rs.weight_lattice();
            let id = linalg::identity(rs.rank());
            for (i, g) in wl.weyl_generators.iter().enumerate() {
                assert_eq!(linalg::mat_mul(g, g), id);
                assert_eq!(linalg::det_i64(g), -1);
                // s_i(alpha_i) = -alpha_i
                let ai = &wl.root_in_weight_coords[i];
                assert_eq!(linalg::mat_vec(g, ai), neg(ai));
                // maps R to R (weight coordinates)
                let images: HashSet<Weight> = rs.roots.iter().map(|b| rs.root_to_weight(b)).collect();
                for b in &rs.roots {
                    assert!(images.contains(&linalg::mat_vec(g, &rs.root_to_weight(b))));
                }
            }
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let m = rs.braid_order(i, j);
                    let st = linalg::mat_mul(&wl.weyl_generators[i], &wl.weyl_generators[j]);
                    let mut p = linalg::identity(rs.rank());
                    for _ in 0..m {
                        p = linalg::mat_mul(&p, &st);
                    }
                    assert_eq!(p, id, "{t} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn orbits() {
        let a2 = RootSystemData::build(ty("A2"));
        assert_eq!(a2.weyl_orbit(&[1, 0]).unwrap().len(), 3);
        assert_eq!(a2.weyl_orbit(&[0, 0]).unwrap(), vec![vec![0, 0]]);
        let g2 = RootSystemData::build(ty("G2"));
        let theta = g2.root_to_weight(&g2.highest_root());
        let orbit = g2.weyl_orbit(&theta).unwrap();
        assert_eq!(orbit.len(), 6);
        for w in &orbit {
            let long = g2
                .roots
                .iter()
                .find(|b| &g2.root_to_weight(b) == w)
                .expect("orbit of a root consists of roots");
            assert_eq!(g2.root_length(long), RootLength::Long);
        }
        let e7 = RootSystemData::build(ty("E7"));
        assert_eq!(
            e7.weyl_orbit(&e7.root_to_weight(&e7.highest_root())).unwrap().len(),
            126
        );
        let e8 = RootSystemData::build(ty("E8"));
        assert!(matches!(e8.weyl_orbit(&[0; 8]), Err(Error::Guard(_))));
    }

    #[test]
    fn weyl_element_inverse() {
        let rs = RootSystemData::build(ty("B3"));
        let w = WeylElement::from_word(&rs, &[0, 1, 2, 1]);
        assert_eq!(linalg::mat_mul(&w.matrix, &w.inverse), linalg::identity(3));
        // act_on_root agrees with the weight-coordinate matrix
        for b in &rs.roots {
            let via_root = rs.root_to_weight(&w.act_on_root(&rs, b));
            let via_weight = linalg::mat_vec(&w.matrix, &rs.root_to_weight(b));
            assert_eq!(via_root, via_weight);
        }
    }
}
