use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use lrc_core::bounds::default_lambda;
use lrc_core::code::LinearCode;
use lrc_core::geometry::{Geometry, PointMultiset};
use lrc_core::ilp::{build_model_r1, build_model_r2, parse_lp, IlpModel, VarKind};
use lrc_core::locality::locality;

fn census(m: &IlpModel) -> Vec<(&'static str, usize)> {
    m.census().families
}

#[test]
fn census_r1_fano() {
    let g = Geometry::shared(2, 3).unwrap();
    let m = build_model_r1(&g, 4, 7).unwrap();
    assert_eq!(m.variables.len(), 2 * 7 + 1);
    assert_eq!(
        census(&m),
        vec![("cardinality", 1), ("unit_support", 3), ("hyperplane", 7), ("x_ge_2y", 7), ("x_le_lambda_y", 7)]
    );
    assert_eq!(m.constraints.len(), 25);
}

#[test]
fn census_r2_fano() {
    let g = Geometry::shared(2, 3).unwrap();
    let m = build_model_r2(&g, 4, 7).unwrap();
    assert_eq!(m.variables.len(), 3 * 7 + 7 + 1);
    assert_eq!(
        census(&m),
        vec![
            ("cardinality", 1),
            ("unit_support", 3),
            ("hyperplane", 7),
            ("x_ge_u", 7),
            ("x_le_lambda_u", 7),
            ("x_ge_2y", 7),
            ("line_support", 7),
            ("covered", 7),
        ]
    );
    assert_eq!(m.constraints.len(), 46);
}

#[test]
fn census_r2_pg4() {
    // 31 points, 31 hyperplanes and 155 lines in PG(4,2)
    let g = Geometry::shared(2, 5).unwrap();
    let m = build_model_r2(&g, 7, default_lambda(5, 7, 2)).unwrap();
    assert_eq!(m.variables.len(), 3 * 31 + 155 + 1);
    assert_eq!(m.constraints.len(), 1 + 5 + 31 + 4 * 31 + 155);
    let binaries = m.variables.iter().filter(|v| v.kind == VarKind::Binary).count();
    assert_eq!(binaries, 2 * 31 + 155);
}

#[test]
fn census_r1_ternary() {
    let g = Geometry::shared(3, 3).unwrap();
    let m = build_model_r1(&g, 5, 13).unwrap();
    assert_eq!(m.variables.len(), 2 * 13 + 1);
    assert_eq!(m.constraints.len(), 1 + 3 + 13 + 2 * 13);
}

#[test]
fn lp_round_trip() {
    for (q, k, d, r) in [(2, 3, 4, 1), (2, 3, 5, 2), (2, 4, 6, 2), (3, 3, 4, 1), (2, 5, 7, 2)] {
        let g = Geometry::shared(q, k).unwrap();
        let lambda = default_lambda(k, d, q).max(2);
        let mut m = if r == 1 { build_model_r1(&g, d, lambda) } else { build_model_r2(&g, d, lambda) }.unwrap();
        for fixed in [None, Some(15)] {
            m.fixed_n = fixed;
            let lp = parse_lp(&m.to_lp()).unwrap();
            assert!(lp.matches(&m), "q={q} k={k} d={d} r={r} fixed={fixed:?}");
        }
    }
}

/// Oracle: a multiset on the projective line with the units in its support
/// and the claimed distance and locality, measured on the code.
fn oracle(g: &Arc<Geometry>, x: &[u32], d: u64, r: usize) -> bool {
    if (0..g.dim()).any(|i| x[g.unit_point(i)] == 0) {
        return false;
    }
    let m = PointMultiset::from_mults(Arc::clone(g), x.to_vec()).unwrap();
    let code = LinearCode::from_multiset(&m).unwrap();
    code.minimum_distance().unwrap() as u64 >= d && locality(&code).has_locality(r)
}

/// The model is feasible for `x` when some choice of the binaries works.
fn model_accepts(m: &IlpModel, x: &[u32]) -> bool {
    let bins: Vec<usize> = (0..m.variables.len()).filter(|&i| m.variables[i].kind == VarKind::Binary).collect();
    let mut values = vec![0i64; m.variables.len()];
    values[m.objective] = x.iter().map(|&v| v as i64).sum();
    for (i, &v) in x.iter().enumerate() {
        values[m.var_index(&format!("xP{i}")).unwrap()] = v as i64;
    }
    (0u64..1 << bins.len()).any(|mask| {
        for (j, &b) in bins.iter().enumerate() {
            values[b] = (mask >> j & 1) as i64;
        }
        m.is_feasible(&values)
    })
}

#[test]
fn models_match_brute_force_on_the_projective_line() {
    let g = Geometry::shared(2, 2).unwrap();
    let lambda = 4;
    for r in [1, 2] {
        for d in 1..=4 {
            let m = if r == 1 { build_model_r1(&g, d, lambda) } else { build_model_r2(&g, d, lambda) }.unwrap();
            for a in 0..=lambda as u32 {
                for b in 0..=lambda as u32 {
                    for c in 0..=lambda as u32 {
                        let x = [a, b, c];
                        assert_eq!(model_accepts(&m, &x), oracle(&g, &x, d, r), "r={r} d={d} x={x:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn external_solver_declares_n15_infeasible() {
    let g = Geometry::shared(2, 5).unwrap();
    let mut m = build_model_r2(&g, 7, default_lambda(5, 7, 2)).unwrap();
    m.fixed_n = Some(15);
    let dir = std::env::temp_dir().join(format!("lrc-ilp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q2k5d7r2n15.lp");
    std::fs::write(&path, m.to_lp()).unwrap();
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/support/lp_check.py");
    let out = Command::new("python3").arg(&script).arg(&path).output();
    let _ = std::fs::remove_dir_all(&dir);
    match out {
        Ok(o) if o.status.code() == Some(0) => {
            let verdict = String::from_utf8_lossy(&o.stdout);
            assert_eq!(verdict.trim(), "infeasible");
        }
        Ok(o) if o.status.code() == Some(77) => eprintln!("SKIP: scipy not available"),
        Ok(o) => panic!("solver script failed: {}", String::from_utf8_lossy(&o.stderr)),
        Err(_) => eprintln!("SKIP: python3 not available"),
    }
}
