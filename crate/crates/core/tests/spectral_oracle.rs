//! Branch data frozen from tests/oracles/spectral_branch.py (sympy, two charts).

use ellfib::poly::{q, QPoly, Ring};
use ellfib::spectral::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Frozen {
    name: &'static str,
    n: u32,
    k: u32,
    b2: &'static [i64],
    b3: &'static [i64],
    sec: &'static [&'static [i64]],
    finite_degree: usize,
    infinity_multiplicity: usize,
    squarefree: bool,
    genus: Option<u64>,
    value_at_2: i64,
}

const B2: &[i64] = &[1, -2, 3, 0, 1];
const B3: &[i64] = &[2, 1, -1, 3, 0, -2, 1];

const CASES: &[Frozen] = &[
    Frozen {
        name: "n2k1",
        n: 2,
        k: 1,
        b2: B2,
        b3: B3,
        sec: &[&[1, 3, -2]],
        finite_degree: 14,
        infinity_multiplicity: 0,
        squarefree: true,
        genus: Some(6),
        value_at_2: 50,
    },
    Frozen {
        name: "n2k2",
        n: 2,
        k: 2,
        b2: &[1, 0, -2, 1, 3, 0, 0, 1, 2],
        b3: &[2, 1, 0, -1, 3, 0, 1, 0, -2, 0, 1, 1, 1],
        sec: &[&[1, 3, -2, 0, 1]],
        finite_degree: 28,
        infinity_multiplicity: 0,
        squarefree: true,
        genus: Some(13),
        value_at_2: 340102110,
    },
    Frozen {
        name: "n3k1",
        n: 3,
        k: 1,
        b2: B2,
        b3: B3,
        sec: &[&[1, 3, -2], &[2, -1, 0, 1]],
        finite_degree: 30,
        infinity_multiplicity: 0,
        squarefree: true,
        genus: Some(13),
        value_at_2: 20561296696,
    },
    Frozen {
        name: "n4k1",
        n: 4,
        k: 1,
        b2: B2,
        b3: B3,
        sec: &[&[1, 3, -2], &[2, -1, 0, 1], &[1, 0, 2, -1, 1]],
        finite_degree: 48,
        infinity_multiplicity: 4,
        squarefree: false,
        genus: None,
        value_at_2: 10905074925144176,
    },
];

fn instance(c: &Frozen) -> (SpectralSection, WeierstrassFamily) {
    let fam = WeierstrassFamily::new(c.k, QPoly::from_ints(c.b2), QPoly::from_ints(c.b3)).unwrap();
    let mut coeffs = vec![QPoly::one()];
    coeffs.extend(c.sec.iter().map(|a| QPoly::from_ints(a)));
    (SpectralSection::new(c.n, c.k, coeffs).unwrap(), fam)
}

#[test]
fn frozen_branch_data() {
    for c in CASES {
        let (sec, fam) = instance(c);
        let (finite, b) = branch_divisor(&sec, &fam).unwrap();
        assert_eq!(b.finite_degree, c.finite_degree, "{}", c.name);
        assert_eq!(b.infinity_multiplicity, c.infinity_multiplicity, "{}", c.name);
        assert_eq!(b.squarefree, c.squarefree, "{}", c.name);
        assert_eq!(finite.eval(&q(2)), q(c.value_at_2), "{}", c.name);
        let g = spectral_genus(c.n, b.degree, b.squarefree).ok();
        assert_eq!(g, c.genus, "{}", c.name);
    }
}

#[test]
fn second_chart_agrees() {
    for c in &CASES[..3] {
        let (sec, fam) = instance(c);
        let r = two_chart_reconciliation(&sec, &fam).unwrap();
        assert!(r.agrees, "{}: {r:?}", c.name);
    }
}

#[test]
fn n2_genus_two_ways() {
    for c in &CASES[..2] {
        let (sec, fam) = instance(c);
        let (finite, b) = branch_divisor(&sec, &fam).unwrap();
        assert_eq!(
            hyperelliptic_genus(&finite).unwrap(),
            spectral_genus(2, b.degree, true).unwrap()
        );
    }
}

#[test]
fn reports_for_frozen_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (sec, fam) = instance(&CASES[2]);
    let r = spectral_report(&sec, &fam, true, &mut rng).unwrap();
    assert_eq!(
        (r.branch_degree, r.genus, r.prym_dim, r.base_dim, r.total_moduli_dim),
        (30, Some(13), Some(13), 7, Some(20))
    );
    assert_eq!(r.connectedness_verdict, Verdict::VerifiedIrreducibleProbe);
    assert_eq!(r.probe.cameral.galois_group.as_deref(), Some("S3"));
    assert!(r.selfcheck.unwrap().passed);

    let (sec, fam) = instance(&CASES[3]);
    let r = spectral_report(&sec, &fam, true, &mut rng).unwrap();
    assert!(!r.branch_squarefree);
    assert_eq!(r.genus, None);
    assert_eq!(r.total_moduli_dim, None);
    assert!(r.selfcheck.unwrap().passed);
}

#[test]
fn random_generic_instances() {
    for seed in 0..3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = WeierstrassFamily::random(1, &mut rng).unwrap();
        let sec = SpectralSection::random(2, 1, &mut rng).unwrap();
        let r = spectral_report(&sec, &fam, true, &mut rng).unwrap();
        assert_eq!(
            (r.branch_degree, r.genus, r.prym_dim, r.base_dim, r.total_moduli_dim),
            (14, Some(6), Some(6), 3, Some(9))
        );
        assert_eq!(r.hyperelliptic_genus, Some(6));
        assert_eq!(r.connectedness_verdict, Verdict::VerifiedIrreducibleProbe);
        assert!(r.selfcheck.unwrap().passed);

        let sec = SpectralSection::random(3, 1, &mut rng).unwrap();
        let r = spectral_report(&sec, &fam, false, &mut rng).unwrap();
        assert_eq!((r.branch_degree, r.genus), (30, Some(13)));
    }
}
