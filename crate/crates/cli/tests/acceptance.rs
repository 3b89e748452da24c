//! Acceptance checks: one PASS/FAIL line per criterion.
//!
//! Criteria 1 to 13 run the named verification suites at their default
//! parameters and, where the criterion quotes a value, recompute it
//! directly. Criterion 14 also drives the `qharm` binary.

use std::process::{Command, ExitCode};

use qharmonic::harmonic::{dim_harmonic, projected_basis, xi_basis};
use qharmonic::linalg::rank;
use qharmonic::report::Report;
use qharmonic::Space;
use qharmonic_cli::suites::{run_suite, suite_names, SuiteParams};

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(name: &str) -> Report {
    let mut reports = run_suite(name, &SuiteParams::default()).expect("known suite");
    reports.remove(0)
}

fn summarize(reports: &[Report]) -> Outcome {
    let cells: usize = reports.iter().map(|r| r.cells.len()).sum();
    let passed: usize = reports.iter().map(Report::passed).sum();
    let first = reports.iter().flat_map(|r| r.failures()).next();
    let mut detail = format!("{passed}/{cells} cells");
    if let Some(c) = first {
        detail.push_str(&format!("; first failure {}: {}", c.id, c.detail));
    }
    Outcome { ok: cells > 0 && passed == cells, detail }
}

/// The report must contain a passing cell whose id contains every needle.
fn has_cell(report: &Report, needles: &[&str]) -> bool {
    report.cells.iter().any(|c| c.ok && needles.iter().all(|n| c.id.contains(n)))
}

fn coverage(report: &Report, required: &[Vec<String>]) -> Outcome {
    let missing: Vec<String> = required
        .iter()
        .filter(|needles| !has_cell(report, &needles.iter().map(String::as_str).collect::<Vec<_>>()))
        .map(|n| n.join(" "))
        .collect();
    let mut out = summarize(std::slice::from_ref(report));
    if !missing.is_empty() {
        out.ok = false;
        out.detail.push_str(&format!("; missing {missing:?}"));
    }
    out
}

fn dims_cells(dims: &[usize], what: &str) -> Vec<Vec<String>> {
    dims.iter().map(|n| vec![format!("N={n} "), what.to_string()]).collect()
}

fn c1() -> Outcome {
    let r = suite("algebra-soundness");
    let mut req = dims_cells(&[3, 4, 5, 6], "associativity");
    req.extend(dims_cells(&[3, 4, 5, 6], "star reverses products"));
    req.extend(dims_cells(&[3, 4, 5, 6], "star is an involution"));
    let mut out = coverage(&r, &req);
    out.ok &= r.cells.iter().all(|c| c.detail.contains("200 random triples of degree <= 3"));
    out
}

fn c2() -> Outcome {
    let r = suite("radius-identities");
    let mut req = dims_cells(&[2, 3, 4, 5, 6, 7], "Q is central");
    req.extend(dims_cells(&[4, 5, 6], "Q_j commutation rules"));
    for n in 4..=6 {
        for k in 1..=3 {
            req.push(vec![format!("N={n} k={k} "), "product formula".into()]);
        }
    }
    coverage(&r, &req)
}

fn c3() -> Outcome {
    let r = suite("derivative-relations");
    let mut req = Vec::new();
    for what in ["d_i d_j = q^-1 d_j d_i", "d_n' d_n - d_n d_n'", "d_k x_k", "d_k x_j", "c d_k = q^-1 d_k c"] {
        req.extend(dims_cells(&[3, 4, 5, 6], what));
    }
    req.extend(dims_cells(&[4, 5, 6], "d_i' d_i - d_i d_i'"));
    let mut out = coverage(&r, &req);
    out.ok &= r.cells.iter().all(|c| c.detail.contains("m <= 4"));
    out
}

fn c4() -> Outcome {
    let r = suite("laplace-equivalence");
    let mut out = coverage(&r, &dims_cells(&[3, 4, 5, 6], "composed Laplacian = closed formula"));
    out.ok &= r.cells.iter().all(|c| c.detail.contains("m <= 5"));
    out
}

fn c5() -> Outcome {
    let r = suite("laplace-q-radius");
    let mut req = Vec::new();
    for n in 3..=6 {
        for k in 1..=3 {
            req.push(vec![format!("N={n} k={k} "), "Laplacian past Q^k".into()]);
            req.push(vec![format!("N={n} k={k} "), "Laplacian of Q^k".into()]);
        }
        req.push(vec![format!("N={n} "), "bracket convention".into()]);
    }
    let mut out = coverage(&r, &req);
    let convention = r.cells.iter().find(|c| c.id.contains("bracket convention"));
    if let Some(c) = convention {
        out.detail.push_str(&format!("; convention: {}", c.detail));
    }
    out
}

fn c6() -> Outcome {
    let r = suite("equivariance");
    let mut req = dims_cells(&[3, 4, 5, 6], "Laplacian commutes");
    req.extend(dims_cells(&[3, 4, 5, 6], "Q commutes"));
    coverage(&r, &req)
}

fn c7() -> Outcome {
    let r = suite("projector");
    let mut req = Vec::new();
    for n in 3..=6 {
        for m in 0..=5 {
            for what in ["output is harmonic", "idempotent", "rank of the image"] {
                req.push(vec![format!("N={n} m={m} "), what.into()]);
            }
        }
    }
    let mut out = coverage(&r, &req);
    for (n, m, want) in [(3, 2, 5), (4, 3, 16)] {
        let space = Space::new(n).unwrap();
        let images: Vec<_> = projected_basis(&space, m).unwrap().into_iter().map(|(_, p)| p).collect();
        let got = rank(&images);
        out.ok &= got == want && dim_harmonic(n, m).unwrap() == want as u128;
        out.detail.push_str(&format!("; rank N={n} m={m}: {got}"));
    }
    out
}

fn c8() -> Outcome {
    let r = suite("decomposition");
    let mut req = Vec::new();
    for n in 3..=6 {
        for m in 0..=5 {
            req.push(vec![format!("N={n} m={m} "), "split into Q^j".into()]);
        }
    }
    coverage(&r, &req)
}

fn c9() -> Outcome {
    let r = suite("closed-forms");
    let mut req = Vec::new();
    for n in [3, 5] {
        for m in 2..=5 {
            for k in 1..=(m / 2).min(2) {
                req.push(vec![format!("N={n} m={m} k={k} "), "Laplacian power".into()]);
            }
        }
        for m in 0..=4 {
            req.push(vec![format!("N={n} m={m} "), "hypergeometric form".into()]);
            req.push(vec![format!("N={n} m={m} "), "little q-Jacobi".into()]);
        }
    }
    req.push(vec!["N=3 H_2 x_2^2 at q = 1".into()]);
    coverage(&r, &req)
}

fn c10() -> Outcome {
    let r = suite("zonal");
    let mut req = Vec::new();
    for n in [4, 5] {
        for t in 0..=4u32 {
            for a in 0..=t {
                req.push(vec![format!("N={n} zonal({a},{})", t - a)]);
            }
        }
        for l in 0..=2 {
            req.push(vec![format!("N={n} l={l} "), "t-polynomial factorization".into()]);
        }
        req.push(vec![format!("N={n} l=0 "), "a, b <= 3".into()]);
        req.push(vec![format!("N={n} l=1 "), "a, b <= 3".into()]);
    }
    coverage(&r, &req)
}

fn c11() -> Outcome {
    let r = suite("xi-basis");
    let mut req = Vec::new();
    for (n, mm) in [(4, 4), (5, 3), (6, 2)] {
        for m in 0..=mm {
            req.push(vec![format!("N={n} m={m} "), "basis of H_m".into()]);
        }
    }
    for n in 5..=7 {
        for m in 0..=5 {
            req.push(vec![format!("N={n} m={m} "), "dimension splitting".into()]);
        }
    }
    let mut out = coverage(&r, &req);
    let count = xi_basis(4, 3).map(|b| b.len()).unwrap_or(0);
    out.ok &= count == 16;
    out
}

fn c12() -> Outcome {
    let r = suite("sphere");
    let mut req = dims_cells(&[3, 4, 5, 6], "h(Q a) = h(a)");
    req.extend(dims_cells(&[3, 4, 5, 6], "h(Q) = 1"));
    for (n, mm) in [(4, 3), (5, 3), (6, 2)] {
        for m in 0..=mm {
            req.push(vec![format!("N={n} m={m} "), "Gram matrix of the basis is diagonal".into()]);
            req.push(vec![format!("N={n} m={m} "), "norms positive at t = 4/5".into()]);
        }
        req.push(vec![format!("N={n} "), "orthogonal to H_l".into()]);
    }
    for n in [4, 5] {
        for m in 0..=4 {
            req.push(vec![format!("N={n} m={m} "), "zonal family is orthogonal".into()]);
            req.push(vec![format!("N={n} m={m} "), "zonal weights".into()]);
        }
    }
    coverage(&r, &req)
}

fn c13() -> Outcome {
    let r = suite("dual-pair");
    let mut req = Vec::new();
    for n in 3..=5 {
        for rel in ["ke = q^2 ek", "kf = q^-2 fk", "ef - fe"] {
            req.push(vec![format!("N={n} "), rel.into()]);
        }
        for m in 0..=3 {
            for rr in 0..=3 {
                for w in ["omega(e)", "omega(f)", "omega(k)"] {
                    req.push(vec![format!("N={n} m={m} r={rr} {w}")]);
                }
            }
        }
        for total in 0..=6 {
            req.push(vec![format!("N={n} M={total} dimensions")]);
        }
    }
    let mut out = coverage(&r, &req);
    let ranged = r.cells.iter().filter(|c| c.id.contains("ke = q^2 ek")).all(|c| c.detail.contains("m <= 6"));
    out.ok &= ranged;
    out
}

fn run_binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qharm")).args(args).output().expect("qharm runs")
}

fn c14() -> Outcome {
    let r = suite("round-trip");
    let mut out = coverage(
        &r,
        &[vec!["polynomial text round trip".into()], vec!["polynomial JSON round trip".into()]],
    );
    out.ok &= r.cells.iter().all(|c| c.detail.contains("100 random samples"));

    let first = run_binary(&["verify", "all"]);
    let second = run_binary(&["verify", "all"]);
    let exit0 = first.status.code() == Some(0) && second.status.code() == Some(0);
    let same = first.stdout == second.stdout && !first.stdout.is_empty();
    let first_json = run_binary(&["--json", "verify", "all"]);
    let second_json = run_binary(&["--json", "verify", "all"]);
    let same_json = first_json.stdout == second_json.stdout && !first_json.stdout.is_empty();
    let text = String::from_utf8_lossy(&first.stdout);
    let covered = suite_names().iter().all(|s| text.contains(&format!("suite {s}:")));
    out.ok &= exit0 && same && same_json && covered;
    out.detail.push_str(&format!(
        "; verify all exit {:?}, identical text output {same}, identical JSON output {same_json}, all suites listed {covered}",
        first.status.code()
    ));
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("algebra soundness", c1),
        ("centrality and radius identities", c2),
        ("derivative relations", c3),
        ("Laplacian equivalence", c4),
        ("Laplacian and powers of Q", c5),
        ("equivariance", c6),
        ("projector", c7),
        ("harmonic decomposition", c8),
        ("closed forms", c9),
        ("zonal and t-polynomials", c10),
        ("orthogonal bases", c11),
        ("sphere", c12),
        ("dual pair", c13),
        ("command line", c14),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let out = check();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2} {name}: {}", i + 1, out.detail);
        if !out.ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
