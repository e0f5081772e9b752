//! Command implementations behind the thin clap surface.

use crate::config::{calibration_path, out_dir, parse_vector, Provenance};
use crate::output::{emit, g17, matrix_csv, matrix_text, render, to_json, write_file};
use crate::{CommonArgs, EXIT_FAIL, EXIT_MISSING, EXIT_OK, EXIT_USAGE};
use flagjacobi_core::derivatives::{
    audit_equivariance, audit_go_consistency, eval_derivative, eval_derivative_exact,
    sign_repair_search, Variant, ENTRY_CORRECTIONS,
};
use flagjacobi_core::fields::{
    conjugate_points, solve_fields, FieldTrajectory, Method, ReducedOperators,
};
use flagjacobi_core::lie::{
    build_bracket_table, calibrate, verify_calibration, BracketTable, Calibration,
};
use flagjacobi_core::recurrence::{
    find_recurrence, verify_recurrence, RankSource, Recurrence, VerifyReport,
};
use flagjacobi_core::samples::seeded_unit_vectors;
use serde::Serialize;

fn table() -> BracketTable {
    build_bracket_table([1.0, 1.0, 1.0])
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EvalArtifact {
    k: u8,
    variant: Variant,
    x: [f64; 6],
    /// Row-major 6×6 matrix, decimal.
    matrix: [[f64; 6]; 6],
    /// Exact upper-triangle entries (row-major, i ≤ j) when x was exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<Vec<String>>,
}

pub fn cmd_eval(k: u8, x_src: &str, common: &CommonArgs) -> i32 {
    let parsed = match parse_vector(x_src) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("usage error: --x {e}");
            return EXIT_USAGE;
        }
    };
    let variant: Variant = common.variant.into();
    let (matrix, exact) = match &parsed.exact {
        Some(xe) => {
            let exact = eval_derivative_exact(k, variant, xe);
            let mut strings = Vec::with_capacity(21);
            for i in 0..6 {
                for j in i..6 {
                    strings.push(exact.entry(i, j).to_string());
                }
            }
            (exact.to_f64().0, Some(strings))
        }
        None => (eval_derivative(k, variant, &parsed.f).0, None),
    };
    let artifact = EvalArtifact {
        k,
        variant,
        x: parsed.f,
        matrix,
        exact,
    };
    let provenance = Provenance::new(
        "eval",
        common,
        &[("k", k.to_string()), ("x", x_src.to_string())],
    );
    let rendered = render(
        common,
        &provenance,
        &artifact,
        || {
            let mut s = matrix_csv(&artifact.matrix);
            if let Some(exact) = &artifact.exact {
                s.push_str("upper_index,exact\n");
                for (n, e) in exact.iter().enumerate() {
                    s.push_str(&format!("{n},{e}\n"));
                }
            }
            s
        },
        || {
            let mut s = format!("J^({k}) at x = {:?} [{variant}]\n", artifact.x);
            s.push_str(&matrix_text(&artifact.matrix));
            if let Some(exact) = &artifact.exact {
                s.push_str("exact upper triangle (row-major):\n");
                for e in exact {
                    s.push_str(&format!("  {e}\n"));
                }
            }
            s
        },
    );
    emit(common, &rendered)
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AuditArtifact {
    trace: flagjacobi_core::derivatives::AuditReport,
    equivariance: flagjacobi_core::derivatives::EquivarianceAudit,
}

pub fn cmd_audit(common: &CommonArgs) -> i32 {
    let variant: Variant = common.variant.into();
    let trace = audit_go_consistency(variant);
    let equivariance = audit_equivariance(variant);
    let passed = trace.passed;
    let artifact = AuditArtifact {
        trace,
        equivariance,
    };
    let provenance = Provenance::new("audit", common, &[]);
    let rendered = render(
        common,
        &provenance,
        &artifact,
        || {
            let mut s = String::from("k,trace_is_zero,witness_x,witness_value,suggested_flips\n");
            for o in &artifact.trace.orders {
                let w = o
                    .witnesses
                    .first()
                    .map(|w| (w.x.join(" "), w.value.clone()))
                    .unwrap_or_default();
                let flips = o
                    .suggested_flips
                    .iter()
                    .map(|fs| {
                        fs.iter()
                            .map(|(k, i, j)| format!("J{k}({i} {j})"))
                            .collect::<Vec<_>>()
                            .join("+")
                    })
                    .collect::<Vec<_>>()
                    .join(" | ");
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    o.k, o.trace_is_zero, w.0, w.1, flips
                ));
            }
            s
        },
        || {
            let mut s = format!(
                "trace audit [{variant}]: {}\n",
                verdict(artifact.trace.passed)
            );
            for o in &artifact.trace.orders {
                if o.trace_is_zero {
                    s.push_str(&format!("  k={}: PASS (trace identically zero)\n", o.k));
                } else {
                    s.push_str(&format!(
                        "  k={}: FAIL ({} trace terms)\n",
                        o.k, o.trace_terms
                    ));
                    for w in &o.witnesses {
                        s.push_str(&format!(
                            "      witness x = ({}), trace = {} = {}\n",
                            w.x.join(", "),
                            w.value,
                            g17(w.value_f64)
                        ));
                    }
                    for fs in &o.suggested_flips {
                        let names: Vec<String> = fs
                            .iter()
                            .map(|(k, i, j)| format!("J{k}({i},{j})"))
                            .collect();
                        s.push_str(&format!("      flip set: {}\n", names.join(", ")));
                    }
                }
            }
            s.push_str(&format!(
                "equivariance audit: {} (isotropy plane signs {:?})\n",
                verdict(artifact.equivariance.passed),
                artifact.equivariance.plane_signs
            ));
            for o in &artifact.equivariance.orders {
                if o.broken_entries.is_empty() {
                    s.push_str(&format!("  k={}: PASS\n", o.k));
                } else {
                    s.push_str(&format!(
                        "  k={}: FAIL at entries {:?}\n",
                        o.k, o.broken_entries
                    ));
                }
            }
            s
        },
    );
    let code = emit(common, &rendered);
    if code != EXIT_OK {
        return code;
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

// ---------------------------------------------------------------------------
// repair
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RepairArtifact {
    k: u8,
    max_flips: usize,
    /// Trace-restoring flip sets, order-tagged 1-based entries.
    flip_sets: Vec<Vec<(u8, usize, usize)>>,
    /// Summand-level corrections applied by the repaired variant at this
    /// order (beyond the reach of whole-entry flips).
    corrections: Vec<CorrectionRow>,
}

#[derive(Serialize)]
struct CorrectionRow {
    i: usize,
    j: usize,
    note: String,
    corrected: String,
}

pub fn cmd_repair(k: u8, max_flips: usize, common: &CommonArgs) -> i32 {
    let flip_sets: Vec<Vec<(u8, usize, usize)>> = sign_repair_search(k, max_flips)
        .into_iter()
        .map(|fs| fs.one_based())
        .collect();
    let corrections: Vec<CorrectionRow> = ENTRY_CORRECTIONS
        .iter()
        .filter(|c| c.k == k)
        .map(|c| CorrectionRow {
            i: c.i,
            j: c.j,
            note: c.note.to_string(),
            corrected: c.corrected.split_whitespace().collect::<Vec<_>>().join(" "),
        })
        .collect();
    let artifact = RepairArtifact {
        k,
        max_flips,
        flip_sets,
        corrections,
    };
    let provenance = Provenance::new(
        "repair",
        common,
        &[("k", k.to_string()), ("max_flips", max_flips.to_string())],
    );
    let rendered = render(
        common,
        &provenance,
        &artifact,
        || {
            let mut s = String::from("kind,k,i,j,detail\n");
            for fs in &artifact.flip_sets {
                for (ord, i, j) in fs {
                    s.push_str(&format!("flip,{ord},{i},{j},\n"));
                }
            }
            for c in &artifact.corrections {
                s.push_str(&format!("correction,{k},{},{},{}\n", c.i, c.j, c.note));
            }
            s
        },
        || {
            let mut s = format!("trace-restoring flip sets for k={k} (max {max_flips} flips):\n");
            if artifact.flip_sets.is_empty() {
                s.push_str("  none\n");
            }
            for fs in &artifact.flip_sets {
                if fs.is_empty() {
                    s.push_str("  {} (already consistent)\n");
                } else {
                    let names: Vec<String> = fs
                        .iter()
                        .map(|(ord, i, j)| format!("J{ord}({i},{j})"))
                        .collect();
                    s.push_str(&format!("  {{{}}}\n", names.join(", ")));
                }
            }
            if !artifact.corrections.is_empty() {
                s.push_str("summand-level corrections applied by the repaired variant:\n");
                for c in &artifact.corrections {
                    s.push_str(&format!("  ({},{}): {}\n", c.i, c.j, c.note));
                }
            }
            s
        },
    );
    emit(common, &rendered)
}

// ---------------------------------------------------------------------------
// calibrate / verify
// ---------------------------------------------------------------------------

pub fn cmd_calibrate(common: &CommonArgs) -> i32 {
    let variant: Variant = common.variant.into();
    let t = table();
    let cal = calibrate(variant, common.tol, common.seed, common.samples, &t);
    let provenance = Provenance::new("calibrate", common, &[]);
    let path = calibration_path(common);
    let code = write_file(&path, &to_json(&cal, &provenance));
    if code != EXIT_OK {
        return code;
    }
    print_calibration_summary(&cal);
    if cal.matching {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn print_calibration_summary(cal: &Calibration) {
    println!(
        "calibration [{}]: {} (residual_max = {}, scale = {}, c = [{}])",
        cal.variant,
        verdict(cal.matching),
        g17(cal.residual_max),
        g17(cal.scale),
        cal.order_constants
            .iter()
            .map(|c| g17(*c))
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("  key: {}", cal.key);
    if !cal.matching {
        println!("  worst entries (relative residual > tol):");
        for w in &cal.worst_entries {
            println!(
                "    J{}({},{}): {}",
                w.k,
                w.i,
                w.j,
                g17(w.max_relative_error)
            );
        }
    }
}

fn load_calibration(common: &CommonArgs) -> Result<Calibration, i32> {
    let path = calibration_path(common);
    if path.exists() {
        let data = std::fs::read_to_string(&path).map_err(|e| {
            eprintln!("error: cannot read {}: {e}", path.display());
            EXIT_FAIL
        })?;
        let v: serde_json::Value = serde_json::from_str(&data).map_err(|e| {
            eprintln!("error: malformed calibration file {}: {e}", path.display());
            EXIT_FAIL
        })?;
        serde_json::from_value(v).map_err(|e| {
            eprintln!("error: malformed calibration file {}: {e}", path.display());
            EXIT_FAIL
        })
    } else if common.no_calibrate {
        eprintln!(
            "error: calibration file {} is missing and --no-calibrate was passed",
            path.display()
        );
        Err(EXIT_MISSING)
    } else {
        let t = table();
        let cal = calibrate(
            common.variant.into(),
            common.tol,
            common.seed,
            common.samples,
            &t,
        );
        let provenance = Provenance::new("calibrate", common, &[]);
        let _ = write_file(&path, &to_json(&cal, &provenance));
        Ok(cal)
    }
}

#[derive(Serialize)]
struct VerifyArtifact {
    variant: Variant,
    max_relative_residual: f64,
    per_order_residual: [f64; 4],
    degenerate_skipped: usize,
    tol: f64,
    passed: bool,
}

pub fn cmd_verify(common: &CommonArgs) -> i32 {
    let cal = match load_calibration(common) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let variant: Variant = common.variant.into();
    let t = table();
    let (max, per_order, degenerate) =
        verify_calibration(&cal, variant, common.seed, common.samples, &t);
    let artifact = VerifyArtifact {
        variant,
        max_relative_residual: max,
        per_order_residual: per_order,
        degenerate_skipped: degenerate,
        tol: common.tol,
        passed: max < common.tol,
    };
    let provenance = Provenance::new("verify", common, &[]);
    let rendered = render(
        common,
        &provenance,
        &artifact,
        || {
            let mut s = String::from("k,relative_residual\n");
            for (slot, r) in artifact.per_order_residual.iter().enumerate() {
                s.push_str(&format!("{},{}\n", slot + 2, g17(*r)));
            }
            s
        },
        || {
            format!(
                "oracle vs {} on {} fresh samples: {} (max relative residual {})\n",
                artifact.variant,
                common.samples,
                verdict(artifact.passed),
                g17(artifact.max_relative_residual)
            )
        },
    );
    let code = emit(common, &rendered);
    if code != EXIT_OK {
        return code;
    }
    if artifact.passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RankArtifact {
    recurrence: Recurrence,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    krylov_orders: Option<Vec<usize>>,
}

pub fn cmd_rank(source: RankSource, k_max: usize, common: &CommonArgs) -> i32 {
    let cal = match load_calibration(common) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let t = table();
    let rec = match find_recurrence(
        source,
        k_max,
        common.samples,
        common.tol,
        common.seed,
        &cal,
        &t,
    ) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("rank: {e}");
            return EXIT_FAIL;
        }
    };
    let (verification, krylov_orders) = if source == RankSource::Oracle {
        let rep = verify_recurrence(
            &rec,
            common.seed.wrapping_add(1),
            common.samples.min(200),
            &cal,
            &t,
        );
        let krylov: Vec<usize> = seeded_unit_vectors(common.seed.wrapping_add(2), 10)
            .iter()
            .map(|x| flagjacobi_core::recurrence::krylov_rank(x, &cal, &t))
            .collect();
        (Some(rep), Some(krylov))
    } else {
        (None, None)
    };
    let passed = rec.holdout_residual < common.tol
        && verification
            .as_ref()
            .map(|v| {
                v.fresh_residual < common.tol && v.shifted_residuals.iter().all(|r| *r < common.tol)
            })
            .unwrap_or(true)
        && krylov_orders
            .as_ref()
            .map(|ks| ks.iter().all(|&k| k == rec.order))
            .unwrap_or(true);
    let artifact = RankArtifact {
        recurrence: rec,
        verification,
        krylov_orders,
    };
    let provenance = Provenance::new(
        "rank",
        common,
        &[
            ("source", format!("{source:?}").to_lowercase()),
            ("k_max", k_max.to_string()),
        ],
    );
    let path = out_dir(common).join("recurrence.json");
    let code = write_file(&path, &to_json(&artifact, &provenance));
    if code != EXIT_OK {
        return code;
    }
    let rec = &artifact.recurrence;
    println!(
        "rank [{}]: p = {}, coefficients = [{}] = [{}], holdout residual = {}",
        match rec.source {
            RankSource::Oracle => "oracle",
            RankSource::Published => "published",
        },
        rec.order,
        rec.coefficients
            .iter()
            .map(|c| format!("{c:.8}"))
            .collect::<Vec<_>>()
            .join(", "),
        rec.coefficients_rational.join(", "),
        g17(rec.holdout_residual)
    );
    if passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

// ---------------------------------------------------------------------------
// fields / conjugate
// ---------------------------------------------------------------------------

fn trajectory_csv(traj: &FieldTrajectory) -> String {
    let mut s = String::from("t,y1,y2,y3,y4,y5,y6,dy1,dy2,dy3,dy4,dy5,dy6\n");
    for i in 0..traj.t.len() {
        let mut row = vec![g17(traj.t[i])];
        row.extend(traj.y[i].iter().map(|v| g17(*v)));
        row.extend(traj.dy[i].iter().map(|v| g17(*v)));
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn cmd_fields(
    x_src: &str,
    y0_src: Option<&str>,
    v0_src: Option<&str>,
    t_max: f64,
    h: f64,
    method: Method,
    common: &CommonArgs,
) -> i32 {
    let x = match parse_vector(x_src) {
        Ok(p) => p.f,
        Err(e) => {
            eprintln!("usage error: --x {e}");
            return EXIT_USAGE;
        }
    };
    let parse6 = |src: Option<&str>, default: [f64; 6]| -> Result<[f64; 6], i32> {
        match src {
            None => Ok(default),
            Some(s) => parse_vector(s).map(|p| p.f).map_err(|e| {
                eprintln!("usage error: {e}");
                EXIT_USAGE
            }),
        }
    };
    let y0 = match parse6(y0_src, [0.0; 6]) {
        Ok(v) => v,
        Err(c) => return c,
    };
    let v0 = match parse6(v0_src, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]) {
        Ok(v) => v,
        Err(c) => return c,
    };
    if !(h > 0.0) || !(t_max > 0.0) || t_max > 100.0 {
        eprintln!("usage error: need 0 < h and 0 < t_max <= 100");
        return EXIT_USAGE;
    }
    let cal = match load_calibration(common) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let t = table();
    let ops = ReducedOperators::from_calibration(&cal, &t, &x);
    let traj = match solve_fields(&ops, y0, v0, t_max, h, method, common.tol.max(1e-10)) {
        Ok(tr) => tr,
        Err(e) => {
            eprintln!("fields: {e}");
            return EXIT_FAIL;
        }
    };
    let provenance = Provenance::new(
        "fields",
        common,
        &[
            ("x", x_src.to_string()),
            ("t_max", g17(t_max)),
            ("h", g17(h)),
            ("method", method.to_string()),
        ],
    );
    let rendered = render(
        common,
        &provenance,
        &traj,
        || trajectory_csv(&traj),
        || {
            let mut s = format!(
                "Jacobi field along x = {x:?} by {method}: {} grid points\n",
                traj.t.len()
            );
            let last = traj.t.len() - 1;
            s.push_str(&format!(
                "Y({}) = [{}]\n",
                g17(traj.t[last]),
                traj.y[last]
                    .iter()
                    .map(|v| g17(*v))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
            s
        },
    );
    emit(common, &rendered)
}

#[derive(Serialize)]
struct ConjugateArtifact {
    x: [f64; 6],
    t_max: f64,
    points: Vec<flagjacobi_core::fields::ConjugatePoint>,
}

pub fn cmd_conjugate(x_src: &str, t_max: f64, h: f64, common: &CommonArgs) -> i32 {
    let x = match parse_vector(x_src) {
        Ok(p) => p.f,
        Err(e) => {
            eprintln!("usage error: --x {e}");
            return EXIT_USAGE;
        }
    };
    if !(t_max > 0.0) || t_max > 100.0 || !(h > 0.0) {
        eprintln!("usage error: need 0 < h and 0 < t_max <= 100");
        return EXIT_USAGE;
    }
    let cal = match load_calibration(common) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let t = table();
    let ops = ReducedOperators::from_calibration(&cal, &t, &x);
    let grid = ((t_max / h).ceil() as usize).clamp(64, 200_000);
    let points = conjugate_points(&ops, t_max, common.tol.min(1e-8), grid);
    let artifact = ConjugateArtifact { x, t_max, points };
    let provenance = Provenance::new(
        "conjugate",
        common,
        &[
            ("x", x_src.to_string()),
            ("t_max", g17(t_max)),
            ("h", g17(h)),
        ],
    );
    let rendered = render(
        common,
        &provenance,
        &artifact,
        || {
            let mut s = String::from("t,multiplicity\n");
            for p in &artifact.points {
                s.push_str(&format!("{},{}\n", g17(p.t), p.multiplicity));
            }
            s
        },
        || {
            let mut s = format!(
                "conjugate points along x = {:?} on (0, {}]:\n",
                artifact.x, artifact.t_max
            );
            if artifact.points.is_empty() {
                s.push_str("  none\n");
            }
            for p in &artifact.points {
                s.push_str(&format!(
                    "  t = {} (multiplicity {})\n",
                    g17(p.t),
                    p.multiplicity
                ));
            }
            s
        },
    );
    emit(common, &rendered)
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

struct StageResult {
    name: &'static str,
    passed: bool,
    detail: String,
}

pub fn cmd_pipeline(common: &CommonArgs) -> i32 {
    let dir = out_dir(common);
    if let Err(e) = std::fs::create_dir_all(&dir) {
        eprintln!("error: cannot create {}: {e}", dir.display());
        return EXIT_FAIL;
    }
    let t = table();
    let variant: Variant = common.variant.into();
    let mut stages: Vec<StageResult> = Vec::new();

    // stage 1: calibrate (or load with --no-calibrate)
    let cal = if common.no_calibrate {
        let path = calibration_path(common);
        if !path.exists() {
            eprintln!(
                "error: calibration file {} is missing and --no-calibrate was passed",
                path.display()
            );
            return EXIT_MISSING;
        }
        match load_calibration(common) {
            Ok(c) => {
                stages.push(StageResult {
                    name: "calibrate",
                    passed: c.matching,
                    detail: format!("loaded, residual_max = {}", g17(c.residual_max)),
                });
                c
            }
            Err(code) => return code,
        }
    } else {
        let cal = calibrate(variant, common.tol, common.seed, common.samples, &t);
        let provenance = Provenance::new("calibrate", common, &[]);
        let _ = write_file(&calibration_path(common), &to_json(&cal, &provenance));
        stages.push(StageResult {
            name: "calibrate",
            passed: cal.matching,
            detail: format!(
                "residual_max = {}, scale = {}, c = [{}]",
                g17(cal.residual_max),
                g17(cal.scale),
                cal.order_constants
                    .iter()
                    .map(|c| format!("{c:.12}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
        cal
    };

    // stage 2: cross-validation on fresh samples
    let (vmax, _per, _deg) = verify_calibration(
        &cal,
        variant,
        common.seed.wrapping_add(1000),
        common.samples.min(250).max(50),
        &t,
    );
    stages.push(StageResult {
        name: "verify",
        passed: vmax < common.tol,
        detail: format!("max relative residual = {}", g17(vmax)),
    });

    // stage 3: recurrence discovery + verification
    let mut rank_pass = false;
    let rank_detail;
    match find_recurrence(
        RankSource::Oracle,
        8,
        common.samples,
        common.tol,
        common.seed,
        &cal,
        &t,
    ) {
        Ok(rec) => {
            let rep = verify_recurrence(&rec, common.seed.wrapping_add(2000), 100, &cal, &t);
            let c3 = rec.coefficients.get(2).copied().unwrap_or(f64::NAN);
            rank_pass = rec.holdout_residual < common.tol
                && rep.fresh_residual < common.tol
                && rep.shifted_residuals.iter().all(|r| *r < common.tol)
                && (c3 + 0.625).abs() < 1e-8;
            rank_detail = format!(
                "p = {}, J3-coefficient = {:.8}, holdout = {}, shifted = [{}]",
                rec.order,
                c3,
                g17(rec.holdout_residual),
                rep.shifted_residuals
                    .iter()
                    .map(|r| g17(*r))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            let artifact = RankArtifact {
                recurrence: rec,
                verification: Some(rep),
                krylov_orders: None,
            };
            let provenance = Provenance::new("rank", common, &[]);
            let _ = write_file(
                &dir.join("recurrence.json"),
                &to_json(&artifact, &provenance),
            );
        }
        Err(e) => {
            rank_detail = format!("{e}");
        }
    }
    stages.push(StageResult {
        name: "rank",
        passed: rank_pass,
        detail: rank_detail,
    });

    // stage 4: field batch, constcoef against rk4
    let t_max = std::f64::consts::TAU;
    let h = 1e-3;
    let mut worst_sup = 0.0f64;
    let mut worst_wronskian = 0.0f64;
    let mut fields_pass = true;
    let batch = seeded_unit_vectors(common.seed.wrapping_add(3000), 8);
    for (bi, x) in batch.iter().enumerate() {
        let ops = ReducedOperators::from_calibration(&cal, &t, x);
        let mut v0 = [0.0; 6];
        v0[0] = 1.0;
        let mut v1 = [0.0; 6];
        v1[4] = 1.0;
        let a = solve_fields(&ops, [0.0; 6], v0, t_max, h, Method::ConstCoef, 1e-6);
        let b = solve_fields(&ops, [0.0; 6], v0, t_max, h, Method::Rk4, 1e-6);
        let c = solve_fields(&ops, [0.0; 6], v1, t_max, h, Method::ConstCoef, 1e-6);
        match (a, b, c) {
            (Ok(a), Ok(b), Ok(c)) => {
                worst_sup = worst_sup.max(a.sup_distance(&b));
                worst_wronskian = worst_wronskian.max(a.wronskian_drift(&c));
                if bi == 0 {
                    let provenance = Provenance::new("fields", common, &[]);
                    let data = format!("{}{}", provenance.header_lines(), trajectory_csv(&a));
                    let _ = write_file(&dir.join("fields_sample.csv"), &data);
                }
            }
            _ => {
                fields_pass = false;
            }
        }
    }
    fields_pass = fields_pass && worst_sup < 1e-6 && worst_wronskian < 1e-8;
    stages.push(StageResult {
        name: "fields",
        passed: fields_pass,
        detail: format!(
            "constcoef vs rk4 sup = {}, wronskian drift = {}",
            g17(worst_sup),
            g17(worst_wronskian)
        ),
    });

    // summary
    let mut summary = String::new();
    summary.push_str(&Provenance::new("pipeline", common, &[]).header_lines());
    let mut first_fail: Option<&str> = None;
    for s in &stages {
        summary.push_str(&format!(
            "stage {}: {} ({})\n",
            s.name,
            verdict(s.passed),
            s.detail
        ));
        if !s.passed && first_fail.is_none() {
            first_fail = Some(s.name);
        }
    }
    match first_fail {
        None => summary.push_str("pipeline: PASS\n"),
        Some(name) => summary.push_str(&format!("pipeline: FAIL (first failing stage: {name})\n")),
    }
    print!("{summary}");
    let _ = write_file(&dir.join("summary.txt"), &summary);
    if first_fail.is_none() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
