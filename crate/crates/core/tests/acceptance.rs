//! Acceptance suite: one line per criterion, nonzero exit if any fails or
//! runs over its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ellfib::acceptance::{self, CriterionResult};

const SEED: u64 = 2024;

type Criterion = (Option<Duration>, Box<dyn Fn() -> CriterionResult>);

fn main() -> ExitCode {
    let suite: Vec<Criterion> = vec![
        (Some(Duration::from_secs(1)), Box::new(acceptance::wps_atlas)),
        (Some(Duration::from_secs(1)), Box::new(acceptance::cartan_determinants)),
        (Some(Duration::from_secs(5)), Box::new(|| acceptance::group_law(SEED))),
        (Some(Duration::from_secs(30)), Box::new(acceptance::quotient_maps)),
        (Some(Duration::from_secs(10)), Box::new(|| acceptance::strata(SEED))),
        (Some(Duration::from_secs(1)), Box::new(acceptance::sl2_counts)),
        (
            Some(Duration::from_secs(60)),
            Box::new(|| acceptance::spectral_suite(SEED)),
        ),
        (
            None,
            Box::new(|| CriterionResult {
                id: 8,
                name: "determinism".into(),
                passed: acceptance::selftest_is_deterministic(SEED),
                detail: "selftest run twice with the same seed".into(),
            }),
        ),
    ];
    let mut failed = 0;
    for (budget, run) in &suite {
        let t0 = Instant::now();
        let r = run();
        let dt = t0.elapsed();
        let in_time = budget.is_none_or(|b| dt < b);
        let ok = r.passed && in_time;
        failed += usize::from(!ok);
        let limit = budget.map_or("no limit".to_string(), |b| format!("limit {}s", b.as_secs()));
        println!(
            "criterion {} {:<30} {} ({:.2}s, {limit}) {}",
            r.id,
            r.name,
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            if in_time {
                r.detail
            } else {
                format!("over time budget; {}", r.detail)
            }
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        suite.len() - failed,
        suite.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
