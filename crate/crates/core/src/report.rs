//! Command implementations behind the `ellfib` binary. Every command returns a
//! [`ReportEnvelope`]; JSON is canonical and Markdown is rendered from it.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ecurve::{rr_basis, CurvePoint, Point, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, FieldKind, PrimeField, Rationals};
use crate::modquot::{abel_jacobi_sl, DivisorInput};
use crate::poly::QPoly;
use crate::rootsys::{tables, wps_signature, CartanType, RootSystemData, Series, PAIRING_CONVENTION};
use crate::spectral::{parse_poly, spectral_report, SpectralReport, SpectralSection, WeierstrassFamily};
use crate::tbundle::{realized_strata, RealizedStratum, TBundlePoint};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub curve_model: String,
    pub discriminant: String,
    pub cartan_matrix: String,
    pub pairing_order: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            curve_model: "y^2 = x^3 + b2*x + b3".into(),
            discriminant: "4*b2^3 + 27*b3^2 (nonzero means smooth)".into(),
            cartan_matrix: "a_ij = <alpha_i^vee, alpha_j>, Bourbaki node numbering".into(),
            pairing_order: PAIRING_CONVENTION.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub input: BTreeMap<String, String>,
    pub version: String,
    pub conventions: Conventions,
    pub payload: Value,
}

impl ReportEnvelope {
    fn new<T: Serialize>(command: &str, input: BTreeMap<String, String>, payload: &T) -> Result<Self> {
        let payload =
            serde_json::to_value(payload).map_err(|e| Error::Invariant(format!("payload does not serialize: {e}")))?;
        Ok(ReportEnvelope {
            command: command.into(),
            input,
            version: VERSION.into(),
            conventions: Conventions::default(),
            payload,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(format!("not a report envelope: {e}")))
    }

    pub fn payload_as<T: for<'de> Deserialize<'de>>(&self) -> Result<T> {
        serde_json::from_value(self.payload.clone())
            .map_err(|e| Error::Invariant(format!("payload does not match the {} schema: {e}", self.command)))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {}\n\n", self.command);
        for (k, v) in &self.input {
            out.push_str(&format!("- {k}: `{v}`\n"));
        }
        out.push('\n');
        out.push_str(&markdown_value(&self.payload));
        out
    }
}

fn echo(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn markdown_value(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let mut out = String::new();
            for (k, v) in m {
                match v {
                    Value::Array(rows) if rows.first().is_some_and(Value::is_object) => {
                        out.push_str(&format!("## {k}\n\n{}\n", markdown_table(rows)));
                    }
                    Value::Object(_) => out.push_str(&format!("## {k}\n\n{}\n", markdown_value(v))),
                    _ => out.push_str(&format!("- {k}: {}\n", inline(v))),
                }
            }
            out
        }
        Value::Array(rows) if rows.first().is_some_and(Value::is_object) => markdown_table(rows),
        other => format!("{}\n", inline(other)),
    }
}

fn markdown_table(rows: &[Value]) -> String {
    let Some(Value::Object(first)) = rows.first() else {
        return String::new();
    };
    let cols: Vec<&String> = first.keys().collect();
    let mut out = format!(
        "| {} |\n|{}|\n",
        cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" | "),
        cols.iter().map(|_| "---").collect::<Vec<_>>().join("|")
    );
    for r in rows {
        let cells: Vec<String> = cols.iter().map(|c| inline(&r[c.as_str()])).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

// ---------------------------------------------------------------- parsing

pub fn parse_curve<F: Field>(k: &F, spec: &str) -> Result<WeierstrassCurve<F>> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [b2, b3] = parts[..] else {
        return Err(Error::Input(format!("curve must be \"b2,b3\", got {spec:?}")));
    };
    WeierstrassCurve::new(
        k.clone(),
        k.from_rational(&parse_rational(b2)?)?,
        k.from_rational(&parse_rational(b3)?)?,
    )
}

/// `"x,y;x,y;O"`; `O` is the origin.
pub fn parse_points<F: Field>(curve: &WeierstrassCurve<F>, spec: &str) -> Result<Vec<CurvePoint<F>>> {
    let k = curve.field();
    spec.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            if t.eq_ignore_ascii_case("o") {
                return Ok(Point::Zero);
            }
            let c: Vec<&str> = t.split(',').map(str::trim).collect();
            let [x, y] = c[..] else {
                return Err(Error::Input(format!("point must be \"x,y\" or \"O\", got {t:?}")));
            };
            curve.point(
                k.from_rational(&parse_rational(x)?)?,
                k.from_rational(&parse_rational(y)?)?,
            )
        })
        .collect()
}

/// `"all"`, series letters (`"A"` means every admissible rank), or explicit
/// types, comma separated.
pub fn parse_types(spec: &str, max_rank: usize) -> Result<Vec<CartanType>> {
    let mut out = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok.eq_ignore_ascii_case("all") {
            out.extend(CartanType::all_up_to(max_rank));
        } else if tok.len() == 1 {
            let s = Series::from_letter(tok.chars().next().unwrap())
                .ok_or_else(|| Error::Input(format!("unknown type token {tok:?}")))?;
            for r in s.ranks(max_rank) {
                out.push(CartanType::new(s, r)?);
            }
        } else {
            let t: CartanType = tok.parse()?;
            out.push(t);
        }
    }
    if out.is_empty() {
        return Err(Error::Input("no types requested".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

// ---------------------------------------------------------------- wps-table

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsRow {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    pub family_pairing_unknown: bool,
    pub sum_weights: u64,
    pub dual_coxeter: u64,
    pub prod_degrees: u64,
    pub weyl_order: u64,
    pub sum_degrees_minus_one: u64,
    pub positive_roots: u64,
    pub checks_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsTable {
    pub rows: Vec<WpsRow>,
    pub all_pass: bool,
}

pub const MAX_TABLE_RANK: usize = 8;

pub fn wps_row(t: CartanType) -> Result<WpsRow> {
    let sig = wps_signature(t);
    let tab = tables::lookup(t).ok_or_else(|| Error::Invariant(format!("{t} missing from the invariant table")))?;
    let sum_weights = sig.weights.iter().sum();
    let prod_degrees = sig.degrees[1..].iter().product();
    let sum_degrees_minus_one = sig.degrees[1..].iter().map(|d| d - 1).sum();
    Ok(WpsRow {
        cartan_type: t.to_string(),
        checks_pass: sum_weights == tab.dual_coxeter
            && prod_degrees == tab.weyl_order
            && sum_degrees_minus_one == tab.positive_roots,
        weights: sig.weights,
        degrees: sig.degrees,
        family_pairing_unknown: sig.family_pairing_unknown,
        sum_weights,
        dual_coxeter: tab.dual_coxeter,
        prod_degrees,
        weyl_order: tab.weyl_order,
        sum_degrees_minus_one,
        positive_roots: tab.positive_roots,
    })
}

pub fn cmd_wps_table(types: &str, max_rank: usize) -> Result<ReportEnvelope> {
    if max_rank > MAX_TABLE_RANK {
        return Err(Error::Guard(format!("max rank {max_rank} exceeds {MAX_TABLE_RANK}")));
    }
    let rows = parse_types(types, max_rank)?
        .into_iter()
        .filter(|t| t.rank() <= max_rank)
        .map(wps_row)
        .collect::<Result<Vec<_>>>()?;
    let all_pass = rows.iter().all(|r| r.checks_pass);
    ReportEnvelope::new(
        "wps-table",
        echo(&[("types", types.into()), ("max_rank", max_rank.to_string())]),
        &WpsTable { rows, all_pass },
    )
}

// ---------------------------------------------------------------- strata

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataPayload {
    pub images: Vec<String>,
    pub roots_in_kernel: Vec<Vec<i64>>,
    pub subsystem_type: String,
    pub is_levi: bool,
    pub deformation_dims: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataScanPayload {
    pub points_on_curve: usize,
    pub strata: Vec<RealizedStratum>,
}

fn strata_in<F: Field>(k: F, t: CartanType, curve: &str, images: &str) -> Result<StrataPayload> {
    let curve = parse_curve(&k, curve)?;
    let pts = parse_points(&curve, images)?;
    if pts.len() != t.rank() {
        return Err(Error::Input(format!(
            "{t} needs {} images, got {}",
            t.rank(),
            pts.len()
        )));
    }
    let rs = RootSystemData::build(t);
    let p = TBundlePoint::new(curve.clone(), pts)?;
    let rep = p.kernel_subsystem(&rs)?;
    Ok(StrataPayload {
        images: p.images.iter().map(|q| curve.format_point(q)).collect(),
        deformation_dims: p.deformation_dims(&rs),
        roots_in_kernel: rep.roots_in_kernel,
        subsystem_type: rep.subsystem_type.to_string(),
        is_levi: rep.is_levi,
    })
}

/// The subsystem cut out by one T-bundle, given by the images of the
/// fundamental coweights.
pub fn cmd_strata(t: CartanType, field: FieldKind, curve: &str, images: &str) -> Result<ReportEnvelope> {
    let payload = match field {
        FieldKind::Rational => strata_in(Rationals, t, curve, images)?,
        FieldKind::Prime(p) => strata_in(PrimeField::new(p)?, t, curve, images)?,
    };
    ReportEnvelope::new(
        "strata",
        echo(&[
            ("type", t.to_string()),
            ("field", field.to_string()),
            ("curve", curve.into()),
            ("points", images.into()),
        ]),
        &payload,
    )
}

/// Every stratum met by some assignment of `F_p`-points to the fundamental coweights.
pub fn cmd_strata_scan(t: CartanType, p: u64, curve: &str) -> Result<ReportEnvelope> {
    let k = PrimeField::new(p)?;
    let c = parse_curve(&k, curve)?;
    let rs = RootSystemData::build(t);
    let strata = realized_strata(&rs, &c)?.into_values().collect();
    ReportEnvelope::new(
        "strata-scan",
        echo(&[
            ("type", t.to_string()),
            ("field", format!("F_{p}")),
            ("curve", curve.into()),
        ]),
        &StrataScanPayload {
            points_on_curve: c.enumerate_points()?.len(),
            strata,
        },
    )
}

// ---------------------------------------------------------------- abel-jacobi

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelJacobiPayload {
    pub monomials: Vec<String>,
    pub coordinates: Vec<String>,
    pub residuals: Vec<String>,
}

fn abel_jacobi_in<F: Field>(k: F, curve: &str, points: &str) -> Result<AbelJacobiPayload> {
    let c = parse_curve(&k, curve)?;
    let pts = parse_points(&c, points)?;
    let d = DivisorInput::new(c, pts)?;
    let img = abel_jacobi_sl(&d)?;
    let basis = rr_basis(d.points.len() as u32);
    let residuals = d
        .points
        .iter()
        .map(|p| match p {
            Point::Affine(x, y) => basis
                .iter()
                .zip(img.coords())
                .fold(k.zero(), |acc, (m, a)| k.add(&acc, &k.mul(a, &m.eval(&k, x, y)))),
            Point::Zero => img.coords().last().unwrap().clone(),
        })
        .map(|r| k.format(&r))
        .collect::<Vec<_>>();
    if residuals.iter().any(|r| r != "0") {
        return Err(Error::Invariant(
            "Abel–Jacobi function does not vanish on the divisor".into(),
        ));
    }
    Ok(AbelJacobiPayload {
        monomials: basis.iter().map(|m| m.to_string()).collect(),
        coordinates: img.coords().iter().map(|a| k.format(a)).collect(),
        residuals,
    })
}

pub fn cmd_abel_jacobi(field: FieldKind, curve: &str, points: &str) -> Result<ReportEnvelope> {
    let payload = match field {
        FieldKind::Rational => abel_jacobi_in(Rationals, curve, points)?,
        FieldKind::Prime(p) => abel_jacobi_in(PrimeField::new(p)?, curve, points)?,
    };
    ReportEnvelope::new(
        "abel-jacobi",
        echo(&[
            ("field", field.to_string()),
            ("curve", curve.into()),
            ("points", points.into()),
        ]),
        &payload,
    )
}

// ---------------------------------------------------------------- spectral

/// Explicit family and section; section coefficients follow `rr_basis(n)`
/// after the constant monomial.
#[derive(Clone, Debug, Default)]
pub struct ExplicitSpectral {
    pub b2: String,
    pub b3: String,
    pub section: Vec<String>,
}

pub fn cmd_spectral_report(
    n: u32,
    k: u32,
    seed: u64,
    explicit: Option<&ExplicitSpectral>,
    selfcheck: bool,
) -> Result<ReportEnvelope> {
    if !(2..=4).contains(&n) || !(1..=3).contains(&k) {
        return Err(Error::Guard(format!(
            "spectral reports need n in 2..=4 and k in 1..=3, got n={n}, k={k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut input = vec![
        ("n", n.to_string()),
        ("k", k.to_string()),
        ("seed", seed.to_string()),
        ("selfcheck", selfcheck.to_string()),
    ];
    let (fam, sec) = match explicit {
        None => {
            let fam = WeierstrassFamily::random(k, &mut rng)?;
            (fam, SpectralSection::random(n, k, &mut rng)?)
        }
        Some(e) => {
            input.push(("b2", e.b2.clone()));
            input.push(("b3", e.b3.clone()));
            input.push(("section", e.section.join(";")));
            let fam = WeierstrassFamily::new(k, parse_poly(&e.b2)?, parse_poly(&e.b3)?)?;
            let mut coeffs = vec![QPoly::from_ints(&[1])];
            for c in &e.section {
                coeffs.push(parse_poly(c)?);
            }
            (fam, SpectralSection::new(n, k, coeffs)?)
        }
    };
    let report: SpectralReport = spectral_report(&sec, &fam, selfcheck, &mut rng)?;
    if let Some(sc) = &report.selfcheck {
        if !sc.passed {
            return Err(Error::Invariant(format!("spectral selfcheck failed: {sc:?}")));
        }
    }
    ReportEnvelope::new("spectral-report", echo(&input), &report)
}

// ---------------------------------------------------------------- selftest

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestPayload {
    pub seed: u64,
    pub criteria: Vec<crate::acceptance::CriterionResult>,
    pub all_passed: bool,
    pub first_failure: Option<String>,
}

pub fn cmd_selftest(seed: u64) -> Result<ReportEnvelope> {
    let criteria = crate::acceptance::run_all(seed);
    let first_failure = criteria
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("{}: {}", c.id, c.name));
    let payload = SelftestPayload {
        seed,
        all_passed: first_failure.is_none(),
        first_failure,
        criteria,
    };
    ReportEnvelope::new("selftest", echo(&[("seed", seed.to_string())]), &payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wps_table_examples() {
        let env = cmd_wps_table("A", 3).unwrap();
        let t: WpsTable = env.payload_as().unwrap();
        let degrees: Vec<Vec<u64>> = t.rows.iter().map(|r| r.degrees.clone()).collect();
        assert_eq!(degrees, vec![vec![0, 2], vec![0, 2, 3], vec![0, 2, 3, 4]]);
        assert!(t.rows.iter().all(|r| r.weights.iter().all(|&w| w == 1)));

        let b3: WpsTable = cmd_wps_table("B3", 3).unwrap().payload_as().unwrap();
        let mut w = b3.rows[0].weights.clone();
        w.sort();
        assert_eq!(w, vec![1, 1, 1, 2]);
        assert_eq!(b3.rows[0].degrees, vec![0, 2, 4, 6]);

        let all: WpsTable = cmd_wps_table("all", 8).unwrap().payload_as().unwrap();
        assert_eq!(all.rows.len(), 33);
        assert!(all.all_pass);
        assert!(
            all.rows
                .iter()
                .find(|r| r.cartan_type == "E8")
                .unwrap()
                .family_pairing_unknown
        );

        assert!(cmd_wps_table("all", 9).is_err());
        assert!(matches!(cmd_wps_table("Q4", 8), Err(Error::Input(_))));
    }

    #[test]
    fn strata_commands() {
        let t: CartanType = "G2".parse().unwrap();
        let spec_of = |c: &WeierstrassCurve<PrimeField>, pts: &[Point<u64>]| {
            pts.iter()
                .map(|p| c.format_point(p).replace(['(', ')', ' '], ""))
                .collect::<Vec<_>>()
                .join(";")
        };
        // a 3-torsion image on the first node keeps exactly the long roots
        let k11 = PrimeField::new(11).unwrap();
        let c11 = parse_curve(&k11, "-1,0").unwrap();
        let t3 = c11
            .enumerate_points()
            .unwrap()
            .into_iter()
            .find(|p| c11.point_order(p) == 3)
            .unwrap();
        let spec = spec_of(&c11, &[t3, Point::Zero]);
        let s: StrataPayload = cmd_strata(t, FieldKind::Prime(11), "-1,0", &spec)
            .unwrap()
            .payload_as()
            .unwrap();
        assert_eq!(s.subsystem_type, "A2^long");
        assert!(!s.is_levi);

        let k = PrimeField::new(1009).unwrap();
        let c = parse_curve(&k, "2,7").unwrap();
        let pts = c.enumerate_points().unwrap();
        let spec = spec_of(&c, &[pts[5].clone(), pts[17].clone()]);
        let generic: StrataPayload = cmd_strata(t, FieldKind::Prime(1009), "2,7", &spec)
            .unwrap()
            .payload_as()
            .unwrap();
        assert_eq!(generic.subsystem_type, "0");
        assert_eq!(generic.deformation_dims, (2, 0));

        let zero: StrataPayload = cmd_strata(t, FieldKind::Rational, "-1,0", "O;O")
            .unwrap()
            .payload_as()
            .unwrap();
        assert_eq!(zero.subsystem_type, "G2");
        assert_eq!(zero.roots_in_kernel.len(), 12);

        assert!(matches!(
            cmd_strata(t, FieldKind::Rational, "-1,0", "1,1;O"),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            cmd_strata(t, FieldKind::Rational, "-1", "O;O"),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn abel_jacobi_commands() {
        let env = cmd_abel_jacobi(FieldKind::Rational, "0,-2", "3,5;3,-5").unwrap();
        let a: AbelJacobiPayload = env.payload_as().unwrap();
        assert_eq!(a.coordinates, vec!["1", "-1/3"]);
        assert_eq!(a.monomials, vec!["1", "x"]);
        assert!(a.residuals.iter().all(|r| r == "0"));

        // P = (3, 5), 2P = (129/100, -383/1000), -3P on y^2 = x^3 - 2
        let k = Rationals;
        let c = parse_curve(&k, "0,-2").unwrap();
        let p = c.point(k.from_i64(3), k.from_i64(5)).unwrap();
        let q = c.double(&p);
        let r = c.neg(&c.add(&p, &q));
        let spec = [p, q, r]
            .iter()
            .map(|pt| c.format_point(pt).replace(['(', ')', ' '], ""))
            .collect::<Vec<_>>()
            .join(";");
        let line: AbelJacobiPayload = cmd_abel_jacobi(FieldKind::Rational, "0,-2", &spec)
            .unwrap()
            .payload_as()
            .unwrap();
        assert_eq!(line.monomials, vec!["1", "x", "y"]);
        assert_eq!(line.coordinates.len(), 3);

        let err = cmd_abel_jacobi(FieldKind::Rational, "0,-2", "3,5;3,5").unwrap_err();
        assert!(err.to_string().contains("repeated"));
        let err = cmd_abel_jacobi(FieldKind::Prime(11), "-1,0", "0,0;1,0").unwrap_err();
        assert!(err.to_string().contains("sum to"));
    }

    #[test]
    fn envelopes_round_trip_and_render() {
        let env = cmd_wps_table("G2,B3", 3).unwrap();
        let back = ReportEnvelope::from_json(&env.to_json()).unwrap();
        assert_eq!(back, env);
        assert_eq!(back.to_json(), env.to_json());
        let md = env.to_markdown();
        assert!(md.contains("| type |") || md.contains("| checks_pass |"));
        assert!(env.to_json().contains("4*b2^3 + 27*b3^2"));
    }

    #[test]
    fn spectral_command() {
        let env = cmd_spectral_report(2, 1, 7, None, false).unwrap();
        let r: SpectralReport = env.payload_as().unwrap();
        assert_eq!(
            (r.branch_degree, r.genus, r.prym_dim, r.base_dim, r.total_moduli_dim),
            (14, Some(6), Some(6), 3, Some(9))
        );
        assert_eq!(
            env.to_json(),
            cmd_spectral_report(2, 1, 7, None, false).unwrap().to_json()
        );

        let r2: SpectralReport = cmd_spectral_report(2, 2, 7, None, false).unwrap().payload_as().unwrap();
        assert_eq!((r2.branch_degree, r2.genus), (28, Some(13)));

        let e = ExplicitSpectral {
            b2: "1,-2,3,0,1".into(),
            b3: "2,1,-1,3,0,-2,1".into(),
            section: vec!["1,3,-2".into(), "2,-1,0,1".into()],
        };
        let r3: SpectralReport = cmd_spectral_report(3, 1, 1, Some(&e), false)
            .unwrap()
            .payload_as()
            .unwrap();
        assert_eq!(
            (r3.branch_degree, r3.genus, r3.total_moduli_dim),
            (30, Some(13), Some(20))
        );

        assert!(matches!(
            cmd_spectral_report(5, 1, 0, None, false),
            Err(Error::Guard(_))
        ));
        let bad = ExplicitSpectral {
            section: vec!["-1,1".into(), "-1,1".into()],
            ..e
        };
        let err = cmd_spectral_report(3, 1, 1, Some(&bad), false).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("common root"));
    }
}
