//! Acceptance harness: runs `gl3inv verify all --seed 42` through the
//! binary and prints one line per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

/// `(check id, pinned tolerance, minimum sample count)`.
type Pin = (&'static str, f64, u64);

struct Criterion {
    number: u8,
    title: &'static str,
    pins: &'static [Pin],
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "exact group algebra",
        pins: &[
            ("group.decompositions", 0.0, 5),
            ("group.commutator", 0.0, 2),
            ("group.st-fourth-powers", 0.0, 2),
            ("group.unitarity", 0.0, 12),
            ("group.diagonal-words", 0.0, 1),
            ("group.heisenberg", 0.0, 1),
        ],
    },
    Criterion {
        number: 2,
        title: "phase ledger multipliers",
        pins: &[
            ("eta.ledger-multipliers", 0.0, 6),
            ("eta.ledger-base-phases", 0.0, 4),
            ("P4.1", 0.0, 1),
            ("P4.2", 0.0, 1),
            ("P4.3", 0.0, 1),
            ("P4.4", 0.0, 1),
            ("P4.5", 0.0, 1),
            ("P4.6", 0.0, 1),
        ],
    },
    Criterion {
        number: 3,
        title: "GL(3) invariance and vanishing",
        pins: &[
            ("derivs.gl3-invariance", 1e-10, 50),
            ("derivs.lft-vanishing", 1e-10, 50),
        ],
    },
    Criterion {
        number: 4,
        title: "chain rule, cocycles, second argument, Jacobian deformation",
        pins: &[
            ("derivs.chain-rule", 1e-9, 20),
            ("derivs.cocycle", 1e-9, 20),
            ("derivs.u-cocycle", 1e-9, 20),
            ("derivs.second-argument", 1e-9, 20),
            ("derivs.jacobian-deformation", 1e-9, 20),
        ],
    },
    Criterion {
        number: 5,
        title: "exponential-solution oracle",
        pins: &[("derivs.exp-oracle", 1e-10, 10)],
    },
    Criterion {
        number: 6,
        title: "z-system and branch independence",
        pins: &[("MT1", 1e-8, 20), ("MT1-branch", 1e-12, 20)],
    },
    Criterion {
        number: 7,
        title: "F1 solutions of the z-system",
        pins: &[
            ("MT2-first", 1e-8, 20),
            ("MT2-second", 1e-8, 20),
            ("MT2-picard", 1e-8, 10),
            ("MT2-picard-modular", 1e-8, 10),
        ],
    },
    Criterion {
        number: 8,
        title: "Appell F1 stack",
        pins: &[
            ("F1.series-euler", 1e-8, 50),
            ("F1.pde", 1e-8, 1),
            ("F1.picard-gamma", 1e-6, 1),
            ("F1.k3-identity", 1e-6, 1),
            ("F1.k-beta", 1e-10, 1),
        ],
    },
    Criterion {
        number: 9,
        title: "order-5 map pullback",
        pins: &[
            ("MT3", 1e-10, 100),
            ("MT3-constraint", 1e-12, 1),
            ("MT3-identity-moduli", 1e-14, 1),
            ("MT3-negative-control", 0.0, 1),
        ],
    },
    Criterion {
        number: 10,
        title: "J-invariant orbits, parameter table, sign and weight rules",
        pins: &[
            ("picard.j-orbit", 1e-10, 50),
            ("picard.param-table", 1e-10, 50),
            ("picard.orbit-identities", 1e-12, 100),
        ],
    },
    Criterion {
        number: 11,
        title: "η³⁶ transformation",
        pins: &[
            ("eta.eta36-s-invariant", 1e-9, 10),
            ("eta.eta36-commutator-cube", 1e-9, 10),
        ],
    },
    Criterion {
        number: 12,
        title: "evolution system",
        pins: &[
            ("MT4", 1e-12, 1),
            ("MT4-galilean", 1e-10, 1),
            ("MT4-gl3-invariance", 1e-10, 1),
        ],
    },
];

const WALL_LIMIT: Duration = Duration::from_secs(60);

fn verify_all() -> Result<(Vec<u8>, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_gl3inv"))
        .args(["verify", "all", "--seed", "42"])
        .env_remove("GL3INV_TOL")
        .output()
        .map_err(|e| format!("cannot run gl3inv: {e}"))?;
    let elapsed = start.elapsed();
    match out.status.code() {
        Some(0) | Some(1) => Ok((out.stdout, elapsed)),
        code => Err(format!(
            "gl3inv exited with {code:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        )),
    }
}

fn judge(report: &Value, c: &Criterion) -> (bool, String) {
    let checks = report["checks"].as_array().cloned().unwrap_or_default();
    let mut worst = 0.0_f64;
    let mut problems = Vec::new();
    for &(id, tol, min_samples) in c.pins {
        let Some(r) = checks.iter().find(|r| r["id"] == id) else {
            problems.push(format!("{id} missing"));
            continue;
        };
        if r["tolerance"].as_f64() != Some(tol) {
            problems.push(format!("{id} tolerance {} is not {tol:e}", r["tolerance"]));
        }
        let samples = r["samples"].as_u64().unwrap_or(0);
        if samples < min_samples {
            problems.push(format!("{id} ran {samples} samples, needs {min_samples}"));
        }
        match r["max_residual"].as_f64() {
            Some(x) => worst = worst.max(x),
            None => problems.push(format!("{id} has no finite residual")),
        }
        if r["passed"] != true {
            problems.push(format!("{id} failed"));
        }
    }
    let detail = if problems.is_empty() {
        {
            let n = c.pins.len();
            format!(
                "{n} check{}, worst residual {worst:.2e}",
                if n == 1 { "" } else { "s" }
            )
        }
    } else {
        problems.join("; ")
    };
    (problems.is_empty(), detail)
}

fn main() -> ExitCode {
    let runs = (verify_all(), verify_all());
    let ((first, t1), (second, t2)) = match runs {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            println!("acceptance: cannot produce report: {e}");
            return ExitCode::FAILURE;
        }
    };
    let report: Value = match serde_json::from_slice(&first) {
        Ok(v) => v,
        Err(e) => {
            println!("acceptance: report is not JSON: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut all = true;
    for c in CRITERIA {
        let (ok, detail) = judge(&report, c);
        all &= ok;
        println!(
            "criterion {:>2} {}: {} ({detail})",
            c.number,
            if ok { "PASS" } else { "FAIL" },
            c.title
        );
    }
    let identical = first == second;
    let slowest = t1.max(t2);
    let ok = identical && slowest < WALL_LIMIT;
    all &= ok;
    println!(
        "criterion 13 {}: determinism and wall time (reports {}, slowest run {:.2}s of {}s)",
        if ok { "PASS" } else { "FAIL" },
        if identical {
            "byte-identical"
        } else {
            "differ"
        },
        slowest.as_secs_f64(),
        WALL_LIMIT.as_secs()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
