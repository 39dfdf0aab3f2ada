//! Acceptance gate: every criterion at its pinned tolerance, one PASS/FAIL line each.
//! Runs without the libtest harness so the report is printed on every `cargo test`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyptrig::verify::{
    comparison_equation, feet_are_minimizers, isometry_invariance, pent_laws, pent_symmetric,
    quad_cosine_law, quad_sine_law, quadratic_structure, realize_round_trip, symmetric_equality,
    symmetry_and_monotonicity, transversal_vs_oracle, Check,
};
use hyptrig::Tolerances;

const SEED: u64 = 20_240_611;

struct Criterion {
    id: u32,
    title: &'static str,
    time_limit: Option<Duration>,
    run: fn(&Tolerances) -> Vec<Check>,
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "quadrilateral cosine law",
            time_limit: Some(Duration::from_secs(5)),
            run: |_| vec![quad_cosine_law(1000, SEED)],
        },
        Criterion {
            id: 2,
            title: "quadrilateral sine law",
            time_limit: None,
            run: |_| vec![quad_sine_law(1000, SEED)],
        },
        Criterion {
            id: 3,
            title: "pentagon laws",
            time_limit: None,
            run: |_| vec![pent_laws(1000, SEED), pent_symmetric(1000, SEED)],
        },
        Criterion {
            id: 4,
            title: "transversal closed form vs oracle",
            time_limit: Some(Duration::from_secs(60)),
            run: |tol| transversal_vs_oracle(500, SEED, tol),
        },
        Criterion {
            id: 5,
            title: "symmetric equality case",
            time_limit: None,
            run: |tol| symmetric_equality(50, SEED, tol),
        },
        Criterion {
            id: 6,
            title: "monotonicity and symmetry",
            time_limit: None,
            run: |tol| symmetry_and_monotonicity(200, SEED, tol),
        },
        Criterion {
            id: 7,
            title: "quadratic structure",
            time_limit: None,
            run: |tol| vec![quadratic_structure(500, SEED, tol)],
        },
        Criterion {
            id: 8,
            title: "pairing feet are global minimizers",
            time_limit: None,
            run: |_| feet_are_minimizers(200, SEED),
        },
        Criterion {
            id: 9,
            title: "comparison equation",
            time_limit: None,
            run: |_| vec![comparison_equation(1000, SEED)],
        },
        Criterion {
            id: 10,
            title: "Gram realization round trip",
            time_limit: None,
            run: |tol| realize_round_trip(500, SEED, tol),
        },
        Criterion {
            id: 11,
            title: "isometry invariance",
            time_limit: None,
            run: |tol| isometry_invariance(20, SEED, tol),
        },
    ]
}

fn main() -> ExitCode {
    // Ignore libtest-style arguments such as `--nocapture` or a name filter.
    let tol = Tolerances::default();
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let checks = (c.run)(&tol);
        let elapsed = start.elapsed();
        let in_time = c.time_limit.map_or(true, |lim| elapsed <= lim);
        let ok = in_time && checks.iter().all(|k| k.passed);
        let limit = c.time_limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default();
        println!(
            "{} criterion {:>2}: {} ({:.2}s{limit})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64()
        );
        for k in &checks {
            println!("       {k}");
        }
        if !ok {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
