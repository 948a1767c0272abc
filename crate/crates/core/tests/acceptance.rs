//! Acceptance run: one `PASS`/`FAIL` line per criterion.
//!
//! Integer quantities are compared exactly. Wall-clock limits are pinned
//! below. The process exits nonzero when a criterion fails for a reason
//! other than the documented defects in the transcribed source data.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lrc_core::bounds::default_lambda;
use lrc_core::code::{macwilliams_transform, LinearCode};
use lrc_core::constructions::Construction;
use lrc_core::field::{Elem, FieldContext};
use lrc_core::geometry::{Geometry, PointMultiset};
use lrc_core::ilp::{build_model_r1, build_model_r2, feasible_at, solve_min_length, SolveOptions};
use lrc_core::locality::{locality, parity_extension_screen, ScreenResult};
use lrc_core::registry::{load_registry, Filter, Kind, Status, VerifyOptions, Witness};

const C1_LIMIT: Duration = Duration::from_secs(600);
const C2_LIMIT: Duration = Duration::from_secs(300);

struct Outcome {
    pass: bool,
    /// A failure fully explained by documented defects in the source data.
    documented: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, documented: false, detail }
    }
}

// n_2(3,d,2), n_2(4,d,2), n_2(3,d,1), n_2(4,d,1) and n_3(3,d,1) for d = 1, 2, ...
const N2_K3_R2: [u64; 10] = [5, 5, 6, 7, 10, 11, 13, 14, 17, 18];
const N2_K4_R2: [u64; 12] = [6, 6, 8, 9, 11, 12, 14, 15, 19, 20, 22, 23];
const N2_K3_R1: [u64; 10] = [6, 6, 8, 8, 11, 12, 14, 14, 17, 18];
const N2_K4_R1: [u64; 12] = [8, 8, 10, 10, 14, 14, 16, 16, 20, 22, 23, 24];
const N3_K3_R1: [u64; 13] = [6, 6, 8, 8, 11, 12, 14, 14, 16, 16, 18, 18, 21];

fn c1_solver_reproduction() -> Outcome {
    let start = Instant::now();
    let tables: [(u32, usize, usize, &[u64]); 5] = [
        (2, 3, 2, &N2_K3_R2),
        (2, 4, 2, &N2_K4_R2),
        (2, 3, 1, &N2_K3_R1),
        (2, 4, 1, &N2_K4_R1),
        (3, 3, 1, &N3_K3_R1),
    ];
    let mut count = 0;
    let mut bad = Vec::new();
    for (q, k, r, table) in tables {
        let g = Geometry::shared(q, k).unwrap();
        for (i, &want) in table.iter().enumerate() {
            let d = i as u64 + 1;
            count += 1;
            match solve_min_length(&g, d, r, &SolveOptions::default()) {
                Ok(s) if s.n == want => {}
                Ok(s) => bad.push(format!("n_{q}({k},{d},{r}) = {} not {want}", s.n)),
                Err(e) => bad.push(format!("n_{q}({k},{d},{r}): {e}")),
            }
        }
    }
    let t = start.elapsed();
    Outcome::new(
        bad.is_empty() && t <= C1_LIMIT,
        format!("{count} instances, {} mismatches, {:.2}s (limit {}s){}", bad.len(), t.as_secs_f64(), C1_LIMIT.as_secs(), list(&bad)),
    )
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!(": {}", items.join("; "))
    }
}

fn c2_witness_verification() -> Outcome {
    let start = Instant::now();
    let reg = load_registry().unwrap();
    let summary = reg.verify_all(&Filter::all(), &VerifyOptions::default());
    let t = start.elapsed();
    let with_witness: Vec<_> = summary
        .reports
        .iter()
        .filter(|r| reg.record(&r.id).is_some_and(|rec| rec.witness != Witness::None))
        .collect();
    let failing: Vec<_> =
        with_witness.iter().filter(|r| !matches!(r.status, Status::Pass | Status::SolverSkipped)).collect();
    let documented: BTreeSet<&str> =
        reg.records().iter().filter(|r| r.defect.is_some()).map(|r| r.id.as_str()).collect();
    let failing_ids: BTreeSet<&str> = failing.iter().map(|r| r.id.as_str()).collect();
    let matrices: BTreeSet<String> = reg
        .records()
        .iter()
        .filter_map(|r| match &r.witness {
            Witness::Matrix(m) => Some(m.clone()),
            _ => None,
        })
        .collect();
    // a documented defect is covered when another witness for the same
    // (q, k, d, r, n) passes
    let uncovered: Vec<String> = failing
        .iter()
        .filter(|f| {
            let rec = reg.record(&f.id).unwrap();
            !summary.reports.iter().any(|o| {
                let other = reg.record(&o.id).unwrap();
                o.id != f.id
                    && (other.q, other.k, other.d, other.r, other.n) == (rec.q, rec.k, rec.d, rec.r, rec.n)
                    && other.witness != Witness::None
                    && matches!(o.status, Status::Pass | Status::SolverSkipped)
            })
        })
        .map(|f| f.id.clone())
        .collect();
    let pass = failing.is_empty() && t <= C2_LIMIT;
    let detail = format!(
        "{} of {} witness records verify ({} matrices), {:.1}s (limit {}s); source defects {:?}; without a verified replacement {:?}",
        with_witness.len() - failing.len(),
        with_witness.len(),
        matrices.len(),
        t.as_secs_f64(),
        C2_LIMIT.as_secs(),
        failing_ids,
        uncovered,
    );
    Outcome { pass, documented: !pass && failing_ids == documented && t <= C2_LIMIT && summary.ok(), detail }
}

fn c3_construction_identities() -> Outcome {
    // (sigma at t = 0, eps, d0, n0) for n_2(k, d0 + 2^(k-1) t, 2) = n0 + (2^k - 1) t
    let families: [(usize, &[(u32, &str, u64, u64)]); 3] = [
        (3, &[(1, "0,1", 3, 6), (1, "0,0", 4, 7), (2, "1,1", 5, 10), (2, "1,0", 6, 11)]),
        (
            4,
            &[
                (1, "0,1,1", 5, 11),
                (1, "0,1,0", 6, 12),
                (1, "0,0,1", 7, 14),
                (1, "0,0,0", 8, 15),
                (2, "1,1,1", 9, 19),
                (2, "1,1,0", 10, 20),
                (2, "1,0,1", 11, 22),
                (2, "1,0,0", 12, 23),
            ],
        ),
        (
            5,
            &[
                (1, "0,1,1,1", 9, 20),
                (1, "0,1,1,0", 10, 21),
                (1, "0,1,0,1", 11, 23),
                (1, "0,1,0,0", 12, 24),
                (1, "0,0,1,1", 13, 27),
                (1, "0,0,1,0", 14, 28),
                (1, "0,0,0,1", 15, 30),
                (1, "0,0,0,0", 16, 31),
                (2, "1,1,1,1", 17, 36),
                (2, "1,1,1,0", 18, 37),
                (2, "1,1,0,1", 19, 39),
                (2, "1,1,0,0", 20, 40),
                (2, "1,0,1,1", 21, 43),
                (2, "1,0,1,0", 22, 44),
                (2, "1,0,0,1", 23, 46),
                (2, "1,0,0,0", 24, 47),
            ],
        ),
    ];
    let mut checked = 0;
    let mut bad = Vec::new();
    for (k, fams) in families {
        for &(sigma, eps, d0, n0) in fams {
            for t in 0..2u64 {
                let spec = format!("ss:k={k},q=2,type={}:{eps}", sigma as u64 + t);
                let c: Construction = spec.parse().unwrap();
                let Construction::SolomonStiffler { ty, .. } = &c else { unreachable!() };
                let m = c.build().unwrap();
                let code = LinearCode::from_multiset(&m).unwrap();
                let want = (n0 + ((1 << k) - 1) * t, d0 + (1 << (k - 1)) * t);
                let got = (m.cardinality(), m.minimum_distance());
                let r = locality(&code).r;
                checked += 1;
                if got != want {
                    bad.push(format!("{spec}: (n,d)={got:?} want {want:?}"));
                }
                if ty.locality2_check(2) && !r.is_some_and(|r| r <= 2) {
                    bad.push(format!("{spec}: criterion holds but locality {r:?}"));
                }
            }
        }
    }
    for k in 3..=6usize {
        let spec = format!("line(rm:m={})", k - 1);
        let m: PointMultiset = spec.parse::<Construction>().unwrap().build().unwrap();
        let code = LinearCode::from_multiset(&m).unwrap();
        let want = ((1u64 << (k - 1)) + 1, 1u64 << (k - 2));
        let got = (m.cardinality(), m.minimum_distance());
        checked += 1;
        if got != want || code.k() != k || !locality(&code).has_locality(2) {
            bad.push(format!("{spec}: (n,d)={got:?} want {want:?}"));
        }
        // minimality by search where the geometry is small
        if k <= 4 {
            let g = Geometry::shared(2, k).unwrap();
            let s = solve_min_length(&g, want.1, 2, &SolveOptions::default()).unwrap();
            if s.n != want.0 {
                bad.push(format!("n_2({k},{},2) searched {} want {}", want.1, s.n, want.0));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{checked} constructions, {} mismatches; k=4 uses n=15+15t for d=8+8t and type [t+2;1,0,1] for d=11+8t (printed 15+7t and [t+2;1,0,0]){}",
            bad.len(),
            list(&bad)
        ),
    )
}

fn c4_non_existence() -> Outcome {
    let mut bad = Vec::new();
    let rm: PointMultiset = "rm:m=5".parse::<Construction>().unwrap().build().unwrap();
    let c16 = LinearCode::from_multiset(&rm).unwrap();
    let c15 = c16.puncture(0).unwrap();
    let params = (c15.n(), c15.k(), c15.minimum_distance().unwrap());
    if params != (15, 5, 7) {
        bad.push(format!("punctured code is {params:?}"));
    }
    let screen = parity_extension_screen(&c15).unwrap();
    if screen != ScreenResult::LocalityGt2 {
        bad.push(format!("screen says {screen:?}"));
    }
    let exact = locality(&c15).r;
    if !exact.is_some_and(|r| r > 2) {
        bad.push(format!("exact locality {exact:?}"));
    }
    let g = Geometry::shared(2, 3).unwrap();
    for (n, d) in [(9u64, 5u64), (4, 1)] {
        let mut log = Vec::new();
        match feasible_at(&g, n, d, 2, &SolveOptions::default(), &mut log) {
            Ok(None) => {}
            Ok(Some(w)) => bad.push(format!("n={n} d={d} feasible: {:?}", w.mults())),
            Err(e) => bad.push(format!("n={n} d={d}: {e}")),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("[15,5,7] screen {screen:?}, exact locality {exact:?}; (9,3,5,2) and (4,3,1,2) infeasible{}", list(&bad)),
    )
}

fn random_code(rng: &mut ChaCha8Rng, q: u32, k: usize, n: usize) -> LinearCode {
    let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q) as Elem).collect()).collect();
    LinearCode::from_rows(FieldContext::new(q).unwrap(), rows).unwrap()
}

fn c5_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();

    // MacWilliams against the enumerated dual; the redundancy is capped so
    // the dual stays enumerable
    let mut mw = 0;
    while mw < 50 {
        let q = [2u32, 3, 4][rng.gen_range(0..3)];
        let max_red = match q {
            2 => 14,
            3 => 9,
            _ => 7,
        };
        let k = rng.gen_range(1..=6);
        let n = rng.gen_range(k + 1..=(k + max_red).min(20));
        let code = random_code(&mut rng, q, k, n);
        if code.k() == 0 || code.n() - code.k() > max_red {
            continue;
        }
        mw += 1;
        let wd = code.weight_distribution().unwrap();
        let direct = code.dual().weight_distribution().unwrap();
        if macwilliams_transform(&wd, n, code.k(), q).unwrap() != direct {
            bad.push(format!("MacWilliams mismatch for a [{n},{}]_{q} code", code.k()));
        }
    }

    let shapes = [(2u32, 3usize), (2, 4), (2, 5), (3, 3), (3, 4), (4, 3), (5, 3), (7, 2), (8, 2), (9, 2)];
    for i in 0..100 {
        let (q, k) = shapes[i % shapes.len()];
        let g = Geometry::shared(q, k).unwrap();
        let mut mults: Vec<u32> = (0..g.num_points()).map(|_| rng.gen_range(0..3)).collect();
        for j in 0..k {
            mults[g.unit_point(j)] = mults[g.unit_point(j)].max(1);
        }
        let m = PointMultiset::from_mults(Arc::clone(&g), mults).unwrap();
        let code = LinearCode::from_multiset(&m).unwrap();
        let enumerated = code.weight_distribution().unwrap().minimum_distance().unwrap() as u64;
        if enumerated != m.minimum_distance() {
            bad.push(format!("distance mismatch in PG({},{q})", k - 1));
        }
    }

    let mut words = 0;
    let mut certs = 0;
    for _ in 0..25 {
        let q = [2u32, 3, 4, 5][rng.gen_range(0..4)];
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k + 1..=12);
        let code = random_code(&mut rng, q, k, n);
        let rep = locality(&code);
        if rep.certificate.check(&code).is_err() {
            bad.push("certificate check failed".into());
        }
        certs += 1;
        for _ in 0..200 {
            let msg: Vec<Elem> = (0..code.k()).map(|_| rng.gen_range(0..q) as Elem).collect();
            let word = code.encode(&msg);
            words += 1;
            for rec in &rep.certificate.recovery {
                if rec.recover(code.field(), &word) != word[rec.coordinate] {
                    bad.push(format!("recovery of coordinate {} failed", rec.coordinate));
                }
            }
        }
    }

    let mut triples = 0;
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let f = FieldContext::new(q).unwrap();
        for a in f.elements() {
            if a != 0 && f.mul(a, f.inv(a)) != 1 {
                bad.push(format!("GF({q}) inverse of {a}"));
            }
            for b in f.elements() {
                for c in f.elements() {
                    triples += 1;
                    let ok = f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                        && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                        && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                        && f.add(a, b) == f.add(b, a)
                        && f.mul(a, b) == f.mul(b, a);
                    if !ok {
                        bad.push(format!("GF({q}) axioms at ({a},{b},{c})"));
                    }
                }
            }
        }
    }
    bad.truncate(10);
    Outcome::new(
        bad.is_empty(),
        format!(
            "{mw} MacWilliams codes, 100 multisets, {words} replayed codewords over {certs} certificates, {triples} field triples{}",
            list(&bad)
        ),
    )
}

fn c6_model_faithfulness() -> Outcome {
    let mut bad = Vec::new();
    let census = [(2u32, 3usize, 1usize, 15usize, 25usize), (2, 3, 2, 29, 46), (2, 5, 2, 249, 316)];
    for (q, k, r, vars, cons) in census {
        let g = Geometry::shared(q, k).unwrap();
        let lambda = default_lambda(k, 4, q).max(2);
        let m = if r == 1 { build_model_r1(&g, 4, lambda) } else { build_model_r2(&g, 4, lambda) }.unwrap();
        if (m.variables.len(), m.constraints.len()) != (vars, cons) {
            bad.push(format!("census q={q} k={k} r={r}: {}/{}", m.variables.len(), m.constraints.len()));
        }
    }

    let g = Geometry::shared(2, 5).unwrap();
    let mut m = build_model_r2(&g, 7, default_lambda(5, 7, 2)).unwrap();
    m.fixed_n = Some(15);
    let path = std::env::temp_dir().join(format!("lrc-acceptance-{}.lp", std::process::id()));
    std::fs::write(&path, m.to_lp()).unwrap();
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/support/lp_check.py");
    let external = match Command::new("python3").arg(&script).arg(&path).output() {
        Ok(o) if o.status.code() == Some(0) => {
            let v = String::from_utf8_lossy(&o.stdout).trim().to_string();
            if v != "infeasible" {
                bad.push(format!("external solver: {v}"));
            }
            v
        }
        Ok(o) if o.status.code() == Some(77) => "SKIP (no scipy)".into(),
        Ok(o) => {
            bad.push(format!("external solver error: {}", String::from_utf8_lossy(&o.stderr).trim()));
            "error".into()
        }
        Err(_) => "SKIP (no python3)".into(),
    };
    let _ = std::fs::remove_file(&path);

    let reg = load_registry().unwrap();
    let lower = reg.verify_all(&Filter::parse("kind=lower_bound").unwrap(), &VerifyOptions::default());
    let skipped = lower.count(Status::SolverSkipped);
    let confirmed = lower.count(Status::Pass);
    if lower.count(Status::Fail) > 0 || lower.reports.iter().any(|r| r.kind != Kind::LowerBound) {
        bad.push("lower-bound records failed".into());
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "census 3/3, LP (q=2,k=5,d=7,r=2,n=15) external: {external}; lower bounds: {confirmed} confirmed by search, {skipped} beyond caps{}",
            list(&bad)
        ),
    )
}

fn main() {
    let criteria: [(&str, &str, fn() -> Outcome); 6] = [
        ("C1", "solver reproduces small exact values", c1_solver_reproduction),
        ("C2", "all witnesses verify", c2_witness_verification),
        ("C3", "construction parameter identities", c3_construction_identities),
        ("C4", "non-existence checks", c4_non_existence),
        ("C5", "property suites", c5_properties),
        ("C6", "model faithfulness and bound bookkeeping", c6_model_faithfulness),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let o = run();
        let verdict = match (o.pass, o.documented) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented source defects)",
            (false, false) => "FAIL",
        };
        if !o.pass && !o.documented {
            unexpected += 1;
        }
        println!("acceptance {id} {verdict}: {name}; {}", o.detail);
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
