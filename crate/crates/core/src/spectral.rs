//! SL(n) spectral covers over `P^1`. A Weierstrass family `y^2 = x^3 + b2(s) x + b3(s)`
//! with `deg L = k`, and a section of the weighted bundle given by one
//! polynomial per Riemann–Roch monomial, cut out an `n`-sheeted cover of the
//! base. Everything here is exact over `Q`; prime fields enter only through
//! specialization.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ecurve::{rr_basis, Point, RrMonomial, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::fp_poly;
use crate::modquot::{abel_jacobi_sl, DivisorInput, ProjectivePoint};
use crate::poly::{discriminant, q, resultant, Poly, QPoly, Ring, Q};
use crate::rootsys::Series;

/// `Q[s][x]`, with `x` the outer variable.
pub type XPoly = Poly<QPoly>;

#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassFamily {
    k: u32,
    b2: QPoly,
    b3: QPoly,
}

impl WeierstrassFamily {
    pub fn new(k: u32, b2: QPoly, b3: QPoly) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("deg L must be positive".into()));
        }
        check_degree("b2", &b2, 4 * k)?;
        check_degree("b3", &b3, 6 * k)?;
        let f = WeierstrassFamily { k, b2, b3 };
        if f.discriminant().is_zero() {
            return Err(Error::Invariant(
                "discriminant 4 b2^3 + 27 b3^2 vanishes identically".into(),
            ));
        }
        Ok(f)
    }

    /// Coefficients drawn from `[-9, 9]` with full degrees `4k` and `6k`.
    pub fn random<G: Rng>(k: u32, rng: &mut G) -> Result<Self> {
        loop {
            let f = WeierstrassFamily::new(k, random_poly(rng, 4 * k), random_poly(rng, 6 * k));
            if f.is_ok() {
                return f;
            }
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn b2(&self) -> &QPoly {
        &self.b2
    }

    pub fn b3(&self) -> &QPoly {
        &self.b3
    }

    /// `4 b2^3 + 27 b3^2`
    pub fn discriminant(&self) -> QPoly {
        self.b2.pow(3).scale(&q(4)).add(&self.b3.pow(2).scale(&q(27)))
    }

    pub fn fiber(&self, s0: &Q) -> Result<WeierstrassCurve<Rationals>> {
        WeierstrassCurve::new(Rationals, self.b2.eval(s0), self.b3.eval(s0))
    }

    pub fn fiber_mod(&self, k: PrimeField, s0: u64) -> Result<WeierstrassCurve<PrimeField>> {
        let b2 = eval_mod(&self.b2, k, s0).ok_or_else(|| Error::Input("b2 does not reduce".into()))?;
        let b3 = eval_mod(&self.b3, k, s0).ok_or_else(|| Error::Input("b3 does not reduce".into()))?;
        WeierstrassCurve::new(k, b2, b3)
    }

    /// `x^3 + b2 x + b3` as an element of `Q[s][x]`.
    fn cubic(&self) -> XPoly {
        Poly::new(vec![self.b3.clone(), self.b2.clone(), QPoly::zero(), QPoly::one()])
    }
}

pub fn family_discriminant(f: &WeierstrassFamily) -> QPoly {
    f.discriminant()
}

fn check_degree(name: &str, p: &QPoly, bound: u32) -> Result<()> {
    match p.degree() {
        Some(d) if d > bound as usize => Err(Error::Input(format!("deg {name} = {d} exceeds {bound}"))),
        _ => Ok(()),
    }
}

fn random_poly<G: Rng>(rng: &mut G, deg: u32) -> QPoly {
    let mut c: Vec<Q> = (0..deg).map(|_| q(rng.gen_range(-9..=9))).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-9..=9);
    }
    c.push(q(lead));
    Poly::new(c)
}

/// Reduction mod `p` followed by evaluation; `None` if a denominator vanishes.
pub fn eval_mod(p: &QPoly, k: PrimeField, s0: u64) -> Option<u64> {
    let r = p.reduce_mod(k.modulus())?;
    Some(k.eval_poly(&r, &s0))
}

/// Coefficients `a_m(s)` of `sum_m a_m m(x, y)` over `rr_basis(n)`, with the
/// constant monomial's coefficient normalized to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSection {
    n: u32,
    k: u32,
    coeffs: Vec<QPoly>,
}

impl SpectralSection {
    pub fn new(n: u32, k: u32, coeffs: Vec<QPoly>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input("SL(n) needs n >= 2".into()));
        }
        let basis = rr_basis(n);
        if coeffs.len() != basis.len() {
            return Err(Error::Input(format!(
                "expected {} coefficients (one per monomial {}), got {}",
                basis.len(),
                basis.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "),
                coeffs.len()
            )));
        }
        if coeffs[0] != QPoly::one() {
            return Err(Error::Input("coefficient of the constant monomial must be 1".into()));
        }
        for (m, a) in basis.iter().zip(&coeffs) {
            check_degree(&format!("a_{m}"), a, m.pole_order() * k)?;
        }
        if n == 2 {
            if coeffs[1].is_zero() {
                return Err(Error::Invariant("a_x vanishes identically".into()));
            }
        } else {
            let (top, next) = (&coeffs[basis.len() - 1], &coeffs[basis.len() - 2]);
            if top.gcd(next).degree() != Some(0) {
                return Err(Error::Invariant(format!(
                    "top coefficients a_{} and a_{} have a common root",
                    basis[basis.len() - 1],
                    basis[basis.len() - 2]
                )));
            }
        }
        Ok(SpectralSection { n, k, coeffs })
    }

    /// Every coefficient of full degree, entries in `[-9, 9]`.
    pub fn random<G: Rng>(n: u32, k: u32, rng: &mut G) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input("SL(n) needs n >= 2".into()));
        }
        loop {
            let coeffs: Vec<QPoly> = rr_basis(n)
                .iter()
                .map(|m| match m.pole_order() {
                    0 => QPoly::one(),
                    p => random_poly(rng, p * k),
                })
                .collect();
            if let Ok(s) = SpectralSection::new(n, k, coeffs) {
                return Ok(s);
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn monomials(&self) -> Vec<RrMonomial> {
        rr_basis(self.n)
    }
}

/// One affine chart of the cover: coefficients and family in a base
/// coordinate `t` (either `s` or `u = 1/s`).
#[derive(Clone, Debug)]
struct Chart {
    n: u32,
    monos: Vec<RrMonomial>,
    a: Vec<QPoly>,
    cubic: XPoly,
}

impl Chart {
    fn finite(sec: &SpectralSection, fam: &WeierstrassFamily) -> Self {
        Chart {
            n: sec.n,
            monos: sec.monomials(),
            a: sec.coeffs.clone(),
            cubic: fam.cubic(),
        }
    }

    /// `u = 1/s`, `x = x'/u^(2k)`, `y = y'/u^(3k)`; the section is multiplied
    /// through by `u^(2nk)`.
    fn at_infinity(sec: &SpectralSection, fam: &WeierstrassFamily) -> Self {
        let (n, k) = (sec.n as usize, fam.k as usize);
        let monos = sec.monomials();
        let a = monos
            .iter()
            .zip(&sec.coeffs)
            .map(|(m, c)| {
                let p = m.pole_order() as usize;
                c.reverse(p * k).shift(2 * (n - p) * k)
            })
            .collect();
        let b2 = fam.b2.reverse(4 * k);
        let b3 = fam.b3.reverse(6 * k);
        Chart {
            n: sec.n,
            monos,
            a,
            cubic: Poly::new(vec![b3, b2, QPoly::zero(), QPoly::one()]),
        }
    }

    /// `f = A(x) + B(x) y`.
    fn split(&self) -> (XPoly, XPoly) {
        let mut a = vec![QPoly::zero(); self.n as usize / 2 + 1];
        let mut b = vec![QPoly::zero(); self.n as usize / 2 + 1];
        for (m, c) in self.monos.iter().zip(&self.a) {
            let target = if m.j == 0 { &mut a } else { &mut b };
            target[m.i as usize] = c.clone();
        }
        (Poly::new(a), Poly::new(b))
    }

    fn eliminate(&self) -> XPoly {
        let (a, b) = self.split();
        a.mul(&a).sub(&b.mul(&b).mul(&self.cubic))
    }

    /// Branch polynomial of the chart, before making it primitive.
    fn branch(&self) -> Result<QPoly> {
        if self.n == 2 {
            // x = -c0/a is the fiber point; y^2 = g(x) = N/a^3, so the
            // double cover is w^2 = a N
            let (c0, ax) = (&self.a[0], &self.a[1]);
            let b2 = self.cubic.coeff(1);
            let b3 = self.cubic.coeff(0);
            let n = c0
                .pow(3)
                .neg()
                .sub(&b2.mul(c0).mul(&ax.pow(2)))
                .add(&b3.mul(&ax.pow(3)));
            return Ok(ax.mul(&n));
        }
        let (a, b) = self.split();
        let r = a.mul(&a).sub(&b.mul(&b).mul(&self.cubic));
        if r.degree() != Some(self.n as usize) {
            return Err(Error::Invariant(format!(
                "eliminant has degree {:?} in x instead of {}",
                r.degree(),
                self.n
            )));
        }
        let dx = discriminant(&r);
        // where A and B share a root x0, R has a double root at x0 that
        // corresponds to the two distinct points (x0, +-y0)
        let res = resultant(&a, &b);
        dx.exact_div(&res.mul(&res))
            .ok_or_else(|| Error::Invariant("Res_x(A, B)^2 does not divide the x-discriminant".into()))
    }

    /// Discriminant of the y-projection `Res_x(f, g - y^2)`.
    fn y_chart_discriminant(&self) -> QPoly {
        // coefficients of f in x, each a polynomial in y over Q[s]
        let (a, b) = self.split();
        let deg = a.coeffs().len().max(b.coeffs().len());
        let f: Poly<Poly<QPoly>> = Poly::new((0..deg).map(|i| Poly::new(vec![a.coeff(i), b.coeff(i)])).collect());
        let y2 = Poly::monomial(QPoly::one(), 2);
        let g: Poly<Poly<QPoly>> = Poly::new(vec![
            Poly::constant(self.cubic.coeff(0)).sub(&y2),
            Poly::constant(self.cubic.coeff(1)),
            Poly::zero(),
            Poly::one(),
        ]);
        discriminant(&resultant(&f, &g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDivisor {
    /// Primitive integer polynomial in `s`, constant term first.
    pub finite: Vec<String>,
    pub finite_degree: usize,
    pub infinity_multiplicity: usize,
    pub degree: usize,
    pub squarefree: bool,
}

/// Branch divisor of the cover on the proper model: the affine-chart
/// polynomial together with the order of vanishing at `s = infinity`.
pub fn branch_divisor(sec: &SpectralSection, fam: &WeierstrassFamily) -> Result<(QPoly, BranchDivisor)> {
    check_pair(sec, fam)?;
    let finite = Chart::finite(sec, fam).branch()?.primitive();
    let fd = finite
        .degree()
        .ok_or_else(|| Error::Invariant("branch polynomial vanishes identically".into()))?;
    if fd == 0 {
        return Err(Error::Invariant(
            "branch divisor is constant in s: degenerate section".into(),
        ));
    }
    let inf = Chart::at_infinity(sec, fam)
        .branch()?
        .valuation()
        .ok_or_else(|| Error::Invariant("branch polynomial vanishes identically at infinity".into()))?;
    let by_gcd = finite.is_squarefree();
    let by_reduction = squarefree_mod_primes(&finite);
    if by_gcd != by_reduction {
        return Err(Error::Invariant(format!(
            "squarefree tests disagree: Euclid says {by_gcd}, modular says {by_reduction}"
        )));
    }
    let report = BranchDivisor {
        finite: coeff_strings(&finite),
        finite_degree: fd,
        infinity_multiplicity: inf,
        degree: fd + inf,
        squarefree: by_gcd && inf <= 1,
    };
    Ok((finite, report))
}

const SQUAREFREE_PRIMES: [u64; 6] = [1_000_003, 1_000_033, 1_000_037, 1_000_039, 1_000_081, 1_000_099];

/// Squarefree over `Q` if squarefree mod some prime that keeps the degree.
/// Not squarefree mod every prime tried is taken as not squarefree.
fn squarefree_mod_primes(f: &QPoly) -> bool {
    SQUAREFREE_PRIMES.iter().any(|&p| {
        let k = PrimeField::new(p).unwrap();
        match f.reduce_mod(p) {
            Some(r) if fp_poly::degree(&r) == f.degree() => fp_poly::is_squarefree(k, &r),
            _ => false,
        }
    })
}

fn check_pair(sec: &SpectralSection, fam: &WeierstrassFamily) -> Result<()> {
    if sec.k != fam.k {
        return Err(Error::Input(format!(
            "section has k = {} but family has k = {}",
            sec.k, fam.k
        )));
    }
    Ok(())
}

/// `R(x, s) = A^2 - B^2 (x^3 + b2 x + b3)`.
pub fn eliminate_fiber_coordinate(sec: &SpectralSection, fam: &WeierstrassFamily) -> Result<XPoly> {
    check_pair(sec, fam)?;
    let r = Chart::finite(sec, fam).eliminate();
    if sec.n >= 3 && r.degree() != Some(sec.n as usize) {
        return Err(Error::Invariant(format!(
            "eliminant has degree {:?} in x, expected {}",
            r.degree(),
            sec.n
        )));
    }
    Ok(r)
}

/// Riemann–Hurwitz for simple branching: `2g - 2 = -2n + deg(branch)`.
pub fn spectral_genus(n: u32, branch_degree: usize, squarefree: bool) -> Result<u64> {
    if !squarefree {
        return Err(Error::Unsupported(
            "branching is not simple; genus needs local analysis".into(),
        ));
    }
    let twice = branch_degree as i64 - 2 * n as i64 + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Invariant(format!(
            "branch degree {branch_degree} is incompatible with a degree {n} cover of P^1"
        )));
    }
    Ok((twice / 2) as u64)
}

/// Genus of the smooth model of `w^2 = F(s)` with `F` squarefree.
pub fn hyperelliptic_genus(f: &QPoly) -> Result<u64> {
    let d = f.degree().ok_or_else(|| Error::Input("zero polynomial".into()))?;
    if !f.is_squarefree() {
        return Err(Error::Unsupported("w^2 = F(s) with F not squarefree".into()));
    }
    Ok((d.div_ceil(2) as u64).saturating_sub(1))
}

/// Dimension of the distinguished Prym, `g(cover) - g(base)`. Only the
/// SL(n) case is covered.
pub fn prym_dimension(series: Series, genus: u64, base_genus: u64) -> Result<u64> {
    if series != Series::A {
        return Err(Error::Unsupported(format!(
            "Prym dimension is implemented for type A only, not {series:?}"
        )));
    }
    genus
        .checked_sub(base_genus)
        .ok_or_else(|| Error::Input("cover genus below base genus".into()))
}

pub fn prym_dimension_sl(genus: u64) -> u64 {
    genus
}

/// `(base_dim, total)` with `base_dim = sum_m (pole(m) k + 1) - 1`.
pub fn moduli_dimension(n: u32, k: u32, prym_dim: u64) -> (u64, u64) {
    let base = rr_basis(n).iter().map(|m| (m.pole_order() * k + 1) as u64).sum::<u64>() - 1;
    (base, base + prym_dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    VerifiedIrreducibleProbe,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CameralNote {
    pub n: u32,
    /// Factorization degree patterns of squarefree specializations, with counts.
    pub patterns: Vec<(Vec<usize>, usize)>,
    pub transitive: bool,
    pub galois_group: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub verdict: Verdict,
    pub specializations: usize,
    pub witness: Option<String>,
    pub cameral: CameralNote,
}

/// What gets specialized: the double cover `w^2 = F(s)` or a fiberwise
/// polynomial `R(x, s)`.
#[derive(Clone, Debug)]
pub enum ProbeTarget {
    DoubleCover(QPoly),
    Fiberwise(XPoly),
}

impl ProbeTarget {
    pub fn for_cover(sec: &SpectralSection, fam: &WeierstrassFamily) -> Result<Self> {
        if sec.n == 2 {
            Ok(ProbeTarget::DoubleCover(branch_divisor(sec, fam)?.0))
        } else {
            Ok(ProbeTarget::Fiberwise(eliminate_fiber_coordinate(sec, fam)?))
        }
    }

    fn degree(&self) -> usize {
        match self {
            ProbeTarget::DoubleCover(_) => 2,
            ProbeTarget::Fiberwise(r) => r.degree().unwrap_or(0),
        }
    }

    fn specialize(&self, k: PrimeField, s0: u64) -> Option<Vec<u64>> {
        let f = match self {
            ProbeTarget::DoubleCover(f) => vec![k.neg(&eval_mod(f, k, s0)?), 0, 1],
            ProbeTarget::Fiberwise(r) => {
                let c: Option<Vec<u64>> = r.coeffs().iter().map(|c| eval_mod(c, k, s0)).collect();
                fp_poly::trim(c?)
            }
        };
        (fp_poly::degree(&f) == Some(self.degree())).then_some(f)
    }
}

pub const PROBE_PRIMES: [u64; 3] = [1_000_003, 1_000_033, 1_000_037];

/// Specializes the base coordinate at random points over several prime
/// fields and factors. The cover is declared irreducible only if, for one
/// prime, some specialization is irreducible and another is squarefree with
/// a linear factor; the latter rules out covers that only become reducible
/// after a constant field extension.
pub fn connectedness_probe<G: Rng>(target: &ProbeTarget, trials: usize, rng: &mut G) -> ProbeResult {
    let d = target.degree();
    let mut patterns: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut verified = false;
    let mut total = 0;
    for &p in &PROBE_PRIMES {
        let k = PrimeField::new(p).unwrap();
        let (mut irreducible, mut split_point) = (false, false);
        for _ in 0..trials {
            let s0 = rng.gen_range(0..p);
            let Some(f) = target.specialize(k, s0) else { continue };
            let Some(pat) = fp_poly::factor_degrees(k, &f) else {
                continue;
            };
            total += 1;
            irreducible |= pat == [d];
            split_point |= pat.contains(&1);
            *patterns.entry(pat).or_default() += 1;
        }
        verified |= irreducible && split_point;
    }
    let cameral = cameral_note(d as u32, &patterns);
    let witness = (!verified).then(|| {
        let seen: Vec<String> = patterns.iter().map(|(p, c)| format!("{p:?} x{c}")).collect();
        format!(
            "no prime gave both an irreducible and a split specialization of degree {d}; patterns: {}",
            if seen.is_empty() {
                "none".to_string()
            } else {
                seen.join(", ")
            }
        )
    });
    ProbeResult {
        verdict: if verified {
            Verdict::VerifiedIrreducibleProbe
        } else {
            Verdict::Inconclusive
        },
        specializations: total,
        witness,
        cameral,
    }
}

fn cameral_note(n: u32, patterns: &BTreeMap<Vec<usize>, usize>) -> CameralNote {
    let n_us = n as usize;
    let seen = |p: &[usize]| patterns.contains_key(p);
    let transitive = seen(&[n_us]);
    // a transitive group with an (n-1)-cycle is 2-transitive, hence
    // primitive, and a primitive group with a transposition is S_n
    let mut transposition = vec![1; n_us.saturating_sub(2)];
    transposition.push(2);
    let full = transitive && (n == 2 || (seen(&[1, n_us - 1]) && seen(&transposition)));
    CameralNote {
        n,
        patterns: patterns.iter().map(|(p, c)| (p.clone(), *c)).collect(),
        transitive,
        galois_group: full.then(|| format!("S{n}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub prime: u64,
    pub base_points: Vec<u64>,
    pub matched: usize,
    pub attempts: usize,
}

impl CoherenceReport {
    pub fn holds(&self, wanted: usize) -> bool {
        self.base_points.len() == wanted && self.matched == wanted
    }
}

/// At `count` random base points where the fiber of the cover splits into
/// `n` distinct rational points over `F_p`, recovers those points from the
/// eliminant and checks that Abel–Jacobi of them is the specialized section.
pub fn specialization_coherence<G: Rng>(
    sec: &SpectralSection,
    fam: &WeierstrassFamily,
    p: u64,
    count: usize,
    rng: &mut G,
) -> Result<CoherenceReport> {
    let k = PrimeField::new(p)?;
    let chart = Chart::finite(sec, fam);
    let (a, b) = chart.split();
    let r = chart.eliminate();
    let n = sec.n as usize;
    let reduce = |poly: &XPoly, s0: u64| -> Option<Vec<u64>> {
        let c: Option<Vec<u64>> = poly.coeffs().iter().map(|c| eval_mod(c, k, s0)).collect();
        Some(fp_poly::trim(c?))
    };
    let mut out = CoherenceReport {
        prime: p,
        base_points: Vec::new(),
        matched: 0,
        attempts: 0,
    };
    let max_attempts = 200 * count * (1..=n).product::<usize>();
    while out.base_points.len() < count && out.attempts < max_attempts {
        out.attempts += 1;
        let s0 = rng.gen_range(0..p);
        let Ok(curve) = fam.fiber_mod(k, s0) else { continue };
        let Some(section) = sec
            .coeffs
            .iter()
            .map(|c| eval_mod(c, k, s0))
            .collect::<Option<Vec<u64>>>()
        else {
            continue;
        };
        let points = if n == 2 {
            let (c0, ax) = (section[0], section[1]);
            let Some(x0) = k.div(&k.neg(&c0), &ax) else { continue };
            let Some(y0) = k.sqrt(curve.rhs(&x0)) else { continue };
            if y0 == 0 {
                continue;
            }
            vec![Point::Affine(x0, y0), Point::Affine(x0, k.neg(&y0))]
        } else {
            let (Some(rs), Some(as_), Some(bs)) = (reduce(&r, s0), reduce(&a, s0), reduce(&b, s0)) else {
                continue;
            };
            if fp_poly::degree(&rs) != Some(n) {
                continue;
            }
            let xs = fp_poly::roots(k, &rs);
            if xs.len() != n {
                continue;
            }
            let pts: Option<Vec<Point<u64>>> = xs
                .iter()
                .map(|x| {
                    let y = k.div(&k.neg(&k.eval_poly(&as_, x)), &k.eval_poly(&bs, x))?;
                    Some(Point::Affine(*x, y))
                })
                .collect();
            let Some(pts) = pts else { continue };
            pts
        };
        let divisor = DivisorInput::new(curve, points)?;
        let image = abel_jacobi_sl(&divisor)?;
        out.base_points.push(s0);
        if image == ProjectivePoint::new(&k, section)? {
            out.matched += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartReconciliation {
    pub x_chart_degree: usize,
    pub y_chart_degree: usize,
    pub cofactor_degree: usize,
    pub agrees: bool,
}

/// The y-projection discriminant must contain the branch polynomial, and
/// the leftover factor must not meet it (for `n = 2` the leftover is a power
/// of `a_x`, which itself is a branch factor).
pub fn two_chart_reconciliation(sec: &SpectralSection, fam: &WeierstrassFamily) -> Result<ChartReconciliation> {
    check_pair(sec, fam)?;
    let chart = Chart::finite(sec, fam);
    let br = chart.branch()?;
    let dy = chart.y_chart_discriminant();
    let Some(cof) = dy.exact_div(&br) else {
        return Ok(ChartReconciliation {
            x_chart_degree: br.degree().unwrap_or(0),
            y_chart_degree: dy.degree().unwrap_or(0),
            cofactor_degree: 0,
            agrees: false,
        });
    };
    let agrees = if sec.n == 2 {
        let ax = &sec.coeffs[1];
        let mut rest = cof.clone();
        let mut e = 0;
        while ax.degree() > Some(0) {
            match rest.exact_div(ax) {
                Some(r) => {
                    rest = r;
                    e += 1;
                }
                None => break,
            }
        }
        rest.degree() == Some(0) && e % 2 == 0
    } else {
        br.gcd(&cof).degree() == Some(0)
    };
    Ok(ChartReconciliation {
        x_chart_degree: br.degree().unwrap_or(0),
        y_chart_degree: dy.degree().unwrap_or(0),
        cofactor_degree: cof.degree().unwrap_or(0),
        agrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheck {
    pub reconciliation: ChartReconciliation,
    pub coherence: CoherenceReport,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: u32,
    pub k: u32,
    pub b2: Vec<String>,
    pub b3: Vec<String>,
    pub section: Vec<(String, Vec<String>)>,
    pub branch: BranchDivisor,
    pub branch_degree: usize,
    pub branch_squarefree: bool,
    pub genus: Option<u64>,
    pub hyperelliptic_genus: Option<u64>,
    pub prym_dim: Option<u64>,
    pub base_dim: u64,
    pub total_moduli_dim: Option<u64>,
    pub connectedness_verdict: Verdict,
    pub probe: ProbeResult,
    pub selfcheck: Option<SelfCheck>,
}

pub const COHERENCE_PRIME: u64 = 10_007;
pub const PROBE_TRIALS: usize = 20;

pub fn spectral_report<G: Rng>(
    sec: &SpectralSection,
    fam: &WeierstrassFamily,
    selfcheck: bool,
    rng: &mut G,
) -> Result<SpectralReport> {
    let (finite, branch) = branch_divisor(sec, fam)?;
    let genus = spectral_genus(sec.n, branch.degree, branch.squarefree).ok();
    let hyper = if sec.n == 2 {
        hyperelliptic_genus(&finite).ok()
    } else {
        None
    };
    if let (Some(g), Some(h)) = (genus, hyper) {
        if g != h {
            return Err(Error::Invariant(format!(
                "Riemann–Hurwitz genus {g} differs from hyperelliptic genus {h}"
            )));
        }
    }
    let prym = genus.map(prym_dimension_sl);
    let (base_dim, _) = moduli_dimension(sec.n, sec.k, 0);
    let probe = connectedness_probe(&ProbeTarget::for_cover(sec, fam)?, PROBE_TRIALS, rng);
    let selfcheck = if selfcheck {
        let reconciliation = two_chart_reconciliation(sec, fam)?;
        let coherence = specialization_coherence(sec, fam, COHERENCE_PRIME, 20, rng)?;
        let passed = reconciliation.agrees && coherence.holds(20);
        Some(SelfCheck {
            reconciliation,
            coherence,
            passed,
        })
    } else {
        None
    };
    Ok(SpectralReport {
        n: sec.n,
        k: sec.k,
        b2: coeff_strings(&fam.b2),
        b3: coeff_strings(&fam.b3),
        section: sec
            .monomials()
            .iter()
            .zip(&sec.coeffs)
            .map(|(m, c)| (m.to_string(), coeff_strings(c)))
            .collect(),
        branch_degree: branch.degree,
        branch_squarefree: branch.squarefree,
        branch,
        genus,
        hyperelliptic_genus: hyper,
        prym_dim: prym,
        base_dim,
        total_moduli_dim: prym.map(|p| base_dim + p),
        connectedness_verdict: probe.verdict,
        probe,
        selfcheck,
    })
}

pub fn coeff_strings(p: &QPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn parse_poly(s: &str) -> Result<QPoly> {
    let c: Result<Vec<Q>> = s.split(',').map(|t| crate::field::parse_rational(t.trim())).collect();
    Ok(Poly::new(c?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn discriminant_specializes() {
        let fam = WeierstrassFamily::new(1, p(&[1, -2, 3, 0, 1]), p(&[2, 1, -1, 3, 0, -2, 1])).unwrap();
        let d = fam.discriminant();
        assert_eq!(d.degree(), Some(12));
        for s0 in -3..=3 {
            let c = fam.fiber(&q(s0)).unwrap();
            assert_eq!(d.eval(&q(s0)), c.discriminant());
        }
        let iso = WeierstrassFamily::new(2, p(&[0]), p(&[1])).unwrap();
        assert_eq!(iso.discriminant(), p(&[27]));
        assert!(WeierstrassFamily::new(1, p(&[-3]), p(&[2])).is_err());
        assert!(WeierstrassFamily::new(1, p(&[0, 0, 0, 0, 0, 1]), p(&[1])).is_err());
    }

    #[test]
    fn section_validation() {
        assert!(SpectralSection::new(2, 1, vec![p(&[1]), p(&[1, 2, 3])]).is_ok());
        assert!(SpectralSection::new(2, 1, vec![p(&[2]), p(&[1])]).is_err());
        assert!(SpectralSection::new(2, 1, vec![p(&[1]), p(&[1, 2, 3, 4])]).is_err());
        assert!(SpectralSection::new(3, 1, vec![p(&[1]), p(&[1])]).is_err());
        // a_x and a_y share the root s = 1
        let e = SpectralSection::new(3, 1, vec![p(&[1]), p(&[-1, 1]), p(&[-1, 1])]).unwrap_err();
        assert!(matches!(e, Error::Invariant(_)));
    }

    #[test]
    fn eliminant_shape() {
        let fam = WeierstrassFamily::new(1, p(&[1, -2, 3, 0, 1]), p(&[2, 1, -1, 3, 0, -2, 1])).unwrap();
        let sec = SpectralSection::new(3, 1, vec![p(&[1]), p(&[1, 3, -2]), p(&[2, -1, 0, 1])]).unwrap();
        let r = eliminate_fiber_coordinate(&sec, &fam).unwrap();
        assert_eq!(r.degree(), Some(3));
        let ay = &sec.coeffs()[2];
        assert_eq!(r.lc(), ay.mul(ay).neg());
        let sec2 = SpectralSection::new(2, 1, vec![p(&[1]), p(&[0, 1])]).unwrap();
        let r2 = eliminate_fiber_coordinate(&sec2, &fam).unwrap();
        assert_eq!(r2, Poly::new(vec![p(&[1]), p(&[0, 1])]).pow(2));
    }

    #[test]
    fn genus_and_moduli_formulas() {
        assert_eq!(spectral_genus(2, 2, true).unwrap(), 0);
        assert_eq!(spectral_genus(2, 14, true).unwrap(), 6);
        assert!(spectral_genus(2, 14, false).is_err());
        assert!(spectral_genus(3, 7, true).is_err());
        assert_eq!(prym_dimension_sl(0), 0);
        assert_eq!(prym_dimension(Series::A, 5, 0).unwrap(), 5);
        assert!(matches!(prym_dimension(Series::C, 5, 0), Err(Error::Unsupported(_))));
        assert_eq!(moduli_dimension(2, 1, 6), (3, 9));
        assert_eq!(moduli_dimension(2, 0, 0).0, 1);
        assert_eq!(moduli_dimension(3, 1, 0).0, 7);
        for n in 2..6 {
            for k in 0..4 {
                let step = moduli_dimension(n, k + 1, 0).0 - moduli_dimension(n, k, 0).0;
                assert_eq!(step, (n * (n + 1) / 2 - 1) as u64);
                assert_eq!(
                    moduli_dimension(n, k, 0).0,
                    ((n - 1) + k * (n * (n + 1) / 2 - 1)) as u64
                );
            }
        }
        assert_eq!(hyperelliptic_genus(&p(&[1, 0, 0, 0, 0, 1])).unwrap(), 2);
        assert_eq!(hyperelliptic_genus(&p(&[1, 0, 0, 0, 0, 0, 1])).unwrap(), 2);
    }

    #[test]
    fn constant_data_is_degenerate() {
        let fam = WeierstrassFamily::new(1, p(&[1]), p(&[1])).unwrap();
        let sec = SpectralSection::new(2, 1, vec![p(&[1]), p(&[3])]).unwrap();
        assert!(matches!(branch_divisor(&sec, &fam), Err(Error::Invariant(_))));
    }

    #[test]
    fn fiber_roots_match_brute_force() {
        let fam = WeierstrassFamily::new(1, p(&[1, -2, 3, 0, 1]), p(&[2, 1, -1, 3, 0, -2, 1])).unwrap();
        let sec = SpectralSection::new(3, 1, vec![p(&[1]), p(&[1, 3, -2]), p(&[2, -1, 0, 1])]).unwrap();
        let r = eliminate_fiber_coordinate(&sec, &fam).unwrap();
        let k = PrimeField::new(101).unwrap();
        let mut compared = 0;
        for s0 in 0..101 {
            let Ok(curve) = fam.fiber_mod(k, s0) else { continue };
            let coeffs: Vec<u64> = sec.coeffs().iter().map(|c| eval_mod(c, k, s0).unwrap()).collect();
            let rs: Vec<u64> = fp_poly::trim(r.coeffs().iter().map(|c| eval_mod(c, k, s0).unwrap()).collect());
            if fp_poly::degree(&rs) != Some(3) || !fp_poly::is_squarefree(k, &rs) {
                continue;
            }
            let mut scan: Vec<u64> = curve
                .enumerate_points()
                .unwrap()
                .into_iter()
                .filter_map(|pt| match pt {
                    Point::Affine(x, y) => {
                        let v = k.add(&k.add(&coeffs[0], &k.mul(&coeffs[1], &x)), &k.mul(&coeffs[2], &y));
                        (v == 0).then_some(x)
                    }
                    Point::Zero => None,
                })
                .collect();
            scan.sort_unstable();
            assert_eq!(fp_poly::roots(k, &rs), scan, "s0 = {s0}");
            compared += 1;
        }
        assert!(compared > 50);
    }

    #[test]
    fn probe_negative_controls() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sq = ProbeTarget::DoubleCover(p(&[1, 2, 0, 5]).pow(2));
        let res = connectedness_probe(&sq, 20, &mut rng);
        assert_eq!(res.verdict, Verdict::Inconclusive);
        assert!(res.witness.is_some());
        // 3 times a square: irreducible over Q, reducible over Q(sqrt 3)
        let twisted = ProbeTarget::DoubleCover(p(&[1, 2, 0, 5]).pow(2).scale(&q(3)));
        assert_eq!(
            connectedness_probe(&twisted, 20, &mut rng).verdict,
            Verdict::Inconclusive
        );
        // (x - s)(x^2 + s x + 1)
        let lin: XPoly = Poly::new(vec![p(&[0, -1]), p(&[1])]);
        let quad: XPoly = Poly::new(vec![p(&[1]), p(&[0, 1]), p(&[1])]);
        let res = connectedness_probe(&ProbeTarget::Fiberwise(lin.mul(&quad)), 20, &mut rng);
        assert_eq!(res.verdict, Verdict::Inconclusive);
        assert!(!res.cameral.transitive);
    }
}
