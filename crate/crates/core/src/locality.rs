//! Locality of linear codes and point multisets.
//!
//! Coordinate `i` of a code can be recovered from the coordinates in `S` iff
//! the column `g_i` lies in the span of the columns `g_S`, i.e. iff some dual
//! codeword is supported on `S ∪ {i}` and contains `i`. The exact search
//! below finds, for every coordinate, a smallest such `S` with a dynamic
//! program over the vectors of GF(q)^k.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldContext};
use crate::geometry::PointMultiset;

/// Largest state space `q^k` used by the exact search; beyond it the
/// column-subset search is used instead.
const DP_STATE_CAP: u64 = 1 << 20;

/// A recovery rule for one coordinate: `y_i = Σ_j coefficients[j] * y_{set[j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recovery {
    pub coordinate: usize,
    pub set: Vec<usize>,
    pub coefficients: Vec<Elem>,
    /// The witnessing dual codeword as `(coordinate, value)` pairs, ascending.
    pub dual_word: Vec<(usize, Elem)>,
}

impl Recovery {
    fn new(field: &FieldContext, coordinate: usize, set: Vec<usize>, coefficients: Vec<Elem>) -> Self {
        let mut dual_word: Vec<(usize, Elem)> =
            set.iter().zip(&coefficients).map(|(&j, &c)| (j, field.neg(c))).collect();
        dual_word.push((coordinate, 1));
        dual_word.sort_unstable();
        Recovery { coordinate, set, coefficients, dual_word }
    }

    /// Value of the erased coordinate computed from the others.
    pub fn recover(&self, field: &FieldContext, codeword: &[Elem]) -> Elem {
        self.set.iter().zip(&self.coefficients).fold(0, |acc, (&j, &c)| field.add(acc, field.mul(c, codeword[j])))
    }
}

/// Recovery sets for every coordinate that has one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityCertificate {
    pub q: u32,
    pub n: usize,
    /// `None` encodes infinite locality.
    pub r: Option<usize>,
    pub recovery: Vec<Recovery>,
}

impl LocalityCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Checks that every dual word is orthogonal to the code and contains
    /// its coordinate, and that recovery sets respect `r`.
    pub fn check(&self, code: &LinearCode) -> Result<()> {
        let f = code.field();
        for rec in &self.recovery {
            if rec.set.contains(&rec.coordinate) {
                return Err(Error::VerificationFailed(format!("coordinate {} in its own set", rec.coordinate)));
            }
            if let Some(r) = self.r {
                if rec.set.len() > r {
                    return Err(Error::VerificationFailed(format!("set for {} exceeds r={r}", rec.coordinate)));
                }
            }
            for row in code.rows() {
                let s = rec.dual_word.iter().fold(0, |acc, &(j, c)| f.add(acc, f.mul(c, row[j])));
                if s != 0 {
                    return Err(Error::VerificationFailed(format!("dual word for {} not orthogonal", rec.coordinate)));
                }
            }
        }
        Ok(())
    }
}

/// Result of the exact locality computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityReport {
    /// Minimal locality; `None` means infinite.
    pub r: Option<usize>,
    /// Smallest recovery set size per coordinate; `None` if unrecoverable.
    pub per_coordinate: Vec<Option<usize>>,
    /// Some coordinate is zero in every codeword.
    pub degenerate: bool,
    pub certificate: LocalityCertificate,
}

impl LocalityReport {
    pub fn has_locality(&self, r: usize) -> bool {
        self.r.is_some_and(|x| x <= r)
    }
}

/// Exact locality of a code with a certificate of minimal recovery sets.
/// Zero columns get no recovery set and make the locality infinite.
pub fn locality(code: &LinearCode) -> LocalityReport {
    let n = code.n();
    let f = code.field();
    let cols = code.columns();
    let states = (code.q() as u64).checked_pow(code.k() as u32).unwrap_or(u64::MAX);
    let mut per_coordinate = vec![None; n];
    let mut recovery = Vec::new();
    let degenerate = code.is_degenerate();
    for i in 0..n {
        if cols[i].iter().all(|&x| x == 0) {
            continue;
        }
        let rec = if states <= DP_STATE_CAP {
            min_recovery_dp(f, &cols, i)
        } else {
            min_recovery_subsets(f, &cols, i, code.k())
        };
        if let Some(rec) = rec {
            per_coordinate[i] = Some(rec.set.len());
            recovery.push(rec);
        }
    }
    let r = if per_coordinate.iter().all(Option::is_some) {
        Some(per_coordinate.iter().flatten().copied().max().unwrap_or(0).max(1))
    } else {
        None
    };
    LocalityReport {
        r,
        per_coordinate,
        degenerate,
        certificate: LocalityCertificate { q: code.q(), n, r, recovery },
    }
}

fn pack(v: &[Elem], q: u64) -> usize {
    v.iter().fold(0u64, |acc, &x| acc * q + x as u64) as usize
}

/// Smallest recovery set for coordinate `i`, lexicographically smallest
/// support among those, smallest coefficients as tie-break.
fn min_recovery_dp(f: &FieldContext, cols: &[Vec<Elem>], i: usize) -> Option<Recovery> {
    let n = cols.len();
    let k = cols[i].len();
    let q = f.order() as u64;
    let states = q.pow(k as u32) as usize;
    // Vector representation of every packed state, and packed multiples of
    // every column.
    let unpack = |mut s: usize| {
        let mut v = vec![0 as Elem; k];
        for j in (0..k).rev() {
            v[j] = (s as u64 % q) as Elem;
            s /= q as usize;
        }
        v
    };
    let multiples: Vec<Vec<Vec<Elem>>> = cols
        .iter()
        .map(|c| f.nonzero().map(|l| c.iter().map(|&x| f.mul(l, x)).collect()).collect())
        .collect();
    const INF: u8 = u8::MAX;
    // suffix[j][s]: fewest columns from j.. (excluding i) with nonzero
    // coefficients summing to s.
    let mut suffix = vec![vec![INF; states]; n + 1];
    suffix[n][0] = 0;
    let state_vecs: Vec<Vec<Elem>> = (0..states).map(unpack).collect();
    let mut diff = vec![0 as Elem; k];
    for j in (0..n).rev() {
        let (head, tail) = suffix.split_at_mut(j + 1);
        let cur = &mut head[j];
        let next = &tail[0];
        cur.copy_from_slice(next);
        if j == i || cols[j].iter().all(|&x| x == 0) {
            continue;
        }
        for (s, sv) in state_vecs.iter().enumerate() {
            let mut best = cur[s];
            for m in &multiples[j] {
                for t in 0..k {
                    diff[t] = f.sub(sv[t], m[t]);
                }
                let prev = next[pack(&diff, q)];
                if prev != INF && prev + 1 < best {
                    best = prev + 1;
                }
            }
            cur[s] = best;
        }
    }
    let target = pack(&cols[i], q);
    let total = suffix[0][target];
    if total == INF {
        return None;
    }
    let mut set = Vec::new();
    let mut coefficients = Vec::new();
    let mut remaining = total;
    let mut state = cols[i].clone();
    let mut j = 0;
    while remaining > 0 {
        let mut chosen = None;
        if j != i && cols[j].iter().any(|&x| x != 0) {
            for (li, l) in f.nonzero().enumerate() {
                for t in 0..k {
                    diff[t] = f.sub(state[t], multiples[j][li][t]);
                }
                if suffix[j + 1][pack(&diff, q)] == remaining - 1 {
                    chosen = Some((l, diff.clone()));
                    break;
                }
            }
        }
        if let Some((l, rest)) = chosen {
            set.push(j);
            coefficients.push(l);
            state = rest;
            remaining -= 1;
        }
        j += 1;
    }
    Some(Recovery::new(f, i, set, coefficients))
}

/// Expresses `target` as a combination of `vectors` with all coefficients
/// nonzero, if possible. Returns the lexicographically smallest coefficients.
fn express_full_support(f: &FieldContext, vectors: &[&[Elem]], target: &[Elem]) -> Option<Vec<Elem>> {
    let m = vectors.len();
    let mut coeffs = vec![1 as Elem; m];
    loop {
        let mut sum = vec![0 as Elem; target.len()];
        for (v, &c) in vectors.iter().zip(&coeffs) {
            f.axpy(&mut sum, c, v);
        }
        if sum == target {
            return Some(coeffs);
        }
        // next coefficient vector over nonzero elements, last index fastest
        let mut t = m;
        loop {
            if t == 0 {
                return None;
            }
            t -= 1;
            if (coeffs[t] as u32) < f.order() - 1 {
                coeffs[t] += 1;
                for c in coeffs.iter_mut().skip(t + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// Visits all `w`-subsets of `0..n` in lexicographic order until `visit`
/// returns true.
pub(crate) fn for_each_subset(n: usize, w: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if w > n {
        return;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let mut t = w;
        loop {
            if t == 0 {
                return;
            }
            t -= 1;
            if idx[t] < n - w + t {
                idx[t] += 1;
                for u in t + 1..w {
                    idx[u] = idx[u - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Smallest recovery set by trying column subsets of increasing size.
fn min_recovery_subsets(f: &FieldContext, cols: &[Vec<Elem>], i: usize, max_size: usize) -> Option<Recovery> {
    let others: Vec<usize> = (0..cols.len()).filter(|&j| j != i && cols[j].iter().any(|&x| x != 0)).collect();
    for size in 1..=max_size.min(others.len()) {
        let mut found = None;
        for_each_subset(others.len(), size, |sub| {
            let set: Vec<usize> = sub.iter().map(|&s| others[s]).collect();
            let vecs: Vec<&[Elem]> = set.iter().map(|&j| cols[j].as_slice()).collect();
            if let Some(c) = express_full_support(f, &vecs, &cols[i]) {
                found = Some((set, c));
                true
            } else {
                false
            }
        });
        if let Some((set, c)) = found {
            return Some(Recovery::new(f, i, set, c));
        }
    }
    None
}

/// Exact locality by column-subset search only. Slow; used as an
/// independent cross-check of [`locality`].
pub fn locality_by_subsets(code: &LinearCode) -> Option<usize> {
    let cols = code.columns();
    let mut r = 1;
    for i in 0..code.n() {
        if cols[i].iter().all(|&x| x == 0) {
            return None;
        }
        r = r.max(min_recovery_subsets(code.field(), &cols, i, code.k())?.set.len());
    }
    Some(r)
}

/// Number of dual codewords of weight exactly `w`, counted over column
/// subsets of size `w` whose columns admit a dependency with full support.
pub fn dual_weight_count(code: &LinearCode, w: usize) -> u128 {
    let f = code.field();
    let cols = code.columns();
    let mut count = 0u128;
    for_each_subset(code.n(), w, |sub| {
        count += full_support_kernel_count(f, &sub.iter().map(|&j| cols[j].as_slice()).collect::<Vec<_>>());
        false
    });
    count
}

/// Number of coefficient vectors with every entry nonzero that map the
/// given vectors to zero.
fn full_support_kernel_count(f: &FieldContext, vectors: &[&[Elem]]) -> u128 {
    let m = vectors.len();
    let k = vectors.first().map_or(0, |v| v.len());
    // Rows of the k × m matrix whose kernel we need.
    let rows: Vec<Vec<Elem>> = (0..k).map(|t| vectors.iter().map(|v| v[t]).collect()).collect();
    let basis = f.null_space(&rows, m);
    if basis.is_empty() {
        return 0;
    }
    if basis.len() == 1 {
        return if basis[0].iter().all(|&x| x != 0) { (f.order() - 1) as u128 } else { 0 };
    }
    let q = f.order() as u64;
    let mut count = 0;
    for t in 1..q.pow(basis.len() as u32) {
        let mut v = vec![0 as Elem; m];
        let mut x = t;
        for b in &basis {
            f.axpy(&mut v, (x % q) as Elem, b);
            x /= q;
        }
        if v.iter().all(|&x| x != 0) {
            count += 1;
        }
    }
    count
}

/// Dual minimum distance by column-subset search; `None` when the dual is
/// the zero code.
pub fn dual_minimum_distance(code: &LinearCode) -> Option<usize> {
    if code.k() == code.n() {
        return None;
    }
    let f = code.field();
    let cols = code.columns();
    (1..=code.k() + 1).find(|&w| {
        let mut hit = false;
        for_each_subset(code.n(), w, |sub| {
            let vs: Vec<Vec<Elem>> = sub.iter().map(|&j| cols[j].clone()).collect();
            hit = f.rank(&vs) < w;
            hit
        });
        hit
    })
}

/// Outcome of a screening test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreenResult {
    LocalityGt2,
    Inconclusive,
}

/// For codes with dual distance 3: too few weight-3 dual codewords, fewer
/// than `(q-1) n / 3`, rule out locality 2.
pub fn weight3_screen(code: &LinearCode) -> Result<ScreenResult> {
    let dd = dual_minimum_distance(code);
    if dd != Some(3) {
        return Err(Error::PreconditionFailed(format!(
            "dual minimum distance must be 3, found {}",
            dd.map_or("none".to_string(), |d| d.to_string())
        )));
    }
    let count = dual_weight_count(code, 3);
    let threshold = (code.q() as u128 - 1) * code.n() as u128;
    Ok(if 3 * count < threshold { ScreenResult::LocalityGt2 } else { ScreenResult::Inconclusive })
}

/// For binary codes of odd distance: extends by a parity bit and counts
/// weight-3 dual words of the extension. A projective extension with fewer
/// than `n/3` of them rules out locality 2 for the original code.
pub fn parity_extension_screen(code: &LinearCode) -> Result<ScreenResult> {
    if code.q() != 2 {
        return Err(Error::WrongField { expected: 2, found: code.q() });
    }
    let d = code.minimum_distance()?;
    if d % 2 == 0 {
        return Err(Error::EvenDistance(d));
    }
    let ext = code.extend_parity()?;
    let projective = dual_minimum_distance(&ext).is_none_or(|dd| dd >= 3);
    if projective && 3 * dual_weight_count(&ext, 3) < code.n() as u128 {
        Ok(ScreenResult::LocalityGt2)
    } else {
        Ok(ScreenResult::Inconclusive)
    }
}

/// Locality test on a multiset. For `r = 1`: no point has multiplicity
/// exactly one. For `r = 2`: every point of multiplicity one lies on a
/// line with two further points of the support. Larger `r` falls back to
/// a span search over the support.
pub fn locality_geometric(m: &PointMultiset, r: usize) -> Result<bool> {
    if r == 0 {
        return Err(Error::BadR { r, reason: "locality is at least 1".into() });
    }
    if !m.is_spanning() {
        return Err(Error::NotSpanning);
    }
    let g = m.geometry();
    let singles: Vec<usize> = m.support().filter(|&p| m.get(p) == 1).collect();
    match r {
        1 => Ok(singles.is_empty()),
        2 => Ok(singles.iter().all(|&p| point_has_local_line(m, p))),
        _ => {
            let support: Vec<usize> = m.support().collect();
            Ok(singles.iter().all(|&p| {
                let others: Vec<&[Elem]> =
                    support.iter().filter(|&&s| s != p).map(|&s| g.point(s)).collect();
                let mut ok = false;
                for size in 1..=r.min(others.len()) {
                    for_each_subset(others.len(), size, |sub| {
                        let mut vs: Vec<Vec<Elem>> = sub.iter().map(|&s| others[s].to_vec()).collect();
                        let base = g.field().rank(&vs);
                        vs.push(g.point(p).to_vec());
                        ok = g.field().rank(&vs) == base;
                        ok
                    });
                    if ok {
                        break;
                    }
                }
                ok
            }))
        }
    }
}

/// Some line through `p` carries two other points of positive multiplicity.
pub fn point_has_local_line(m: &PointMultiset, p: usize) -> bool {
    let g = m.geometry();
    g.lines_through(p).iter().any(|&l| {
        g.line_points(l as usize).iter().filter(|&&x| x as usize != p && m.get(x as usize) > 0).count() >= 2
    })
}

/// Locality of a multiset via its code.
pub fn multiset_locality(m: &PointMultiset) -> Result<LocalityReport> {
    Ok(locality(&LinearCode::from_multiset(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Geometry;
    use std::sync::Arc;

    fn simplex(q: u32, k: usize, t: u32) -> LinearCode {
        LinearCode::from_multiset(&PointMultiset::constant(Geometry::shared(q, k).unwrap(), t)).unwrap()
    }

    #[test]
    fn simplex_localities() {
        for k in 2..=5 {
            assert_eq!(locality(&simplex(2, k, 1)).r, Some(2), "k={k}");
            assert_eq!(locality(&simplex(2, k, 2)).r, Some(1), "k={k}");
        }
        let id = LinearCode::from_rows(FieldContext::new(2).unwrap(), vec![vec![1, 0], vec![0, 1]]).unwrap();
        let rep = locality(&id);
        assert_eq!(rep.r, None);
        assert!(!rep.degenerate);
    }

    #[test]
    fn degenerate_code_is_infinite() {
        let c = LinearCode::from_rows(FieldContext::new(2).unwrap(), vec![vec![1, 1, 0, 1]]).unwrap();
        let rep = locality(&c);
        assert!(rep.degenerate);
        assert_eq!(rep.r, None);
        assert_eq!(rep.per_coordinate, vec![Some(1), Some(1), None, Some(1)]);
    }

    #[test]
    fn certificate_is_lexicographically_smallest() {
        let c = simplex(2, 3, 1);
        let rep = locality(&c);
        rep.certificate.check(&c).unwrap();
        // Every coordinate of the Fano simplex lies on three lines; the
        // smallest partner pair is chosen.
        for rec in &rep.certificate.recovery {
            let mut best: Option<Vec<usize>> = None;
            for a in 0..7 {
                for b in a + 1..7 {
                    if a == rec.coordinate || b == rec.coordinate {
                        continue;
                    }
                    let ca = c.column(a);
                    let cb = c.column(b);
                    let s: Vec<Elem> = ca.iter().zip(&cb).map(|(x, y)| x ^ y).collect();
                    if s == c.column(rec.coordinate) && best.is_none() {
                        best = Some(vec![a, b]);
                    }
                }
            }
            assert_eq!(Some(rec.set.clone()), best);
        }
    }

    #[test]
    fn dp_matches_subset_search() {
        for q in [2, 3, 4] {
            let g = Geometry::shared(q, 3).unwrap();
            for seed in 0..6u32 {
                let mults: Vec<u32> = (0..g.num_points() as u32).map(|i| (i * (seed + 3) + seed) % 3 / 2).collect();
                let mut m = PointMultiset::from_mults(g.clone(), mults).unwrap();
                for e in 0..3 {
                    m.add_point(g.unit_point(e), 1);
                }
                let c = LinearCode::from_multiset(&m).unwrap();
                assert_eq!(locality(&c).r, locality_by_subsets(&c), "q={q} seed={seed}");
            }
        }
    }

    #[test]
    fn geometric_examples() {
        let g = Geometry::shared(2, 3).unwrap();
        assert!(locality_geometric(&PointMultiset::constant(g.clone(), 1), 2).unwrap());
        let single = PointMultiset::characteristic(g.clone(), [0]);
        assert_eq!(locality_geometric(&single, 2), Err(Error::NotSpanning));
        let units = PointMultiset::characteristic(g.clone(), (0..3).map(|i| g.unit_point(i)));
        assert!(!locality_geometric(&units, 2).unwrap());
        assert!(locality_geometric(&units.scale(2), 1).unwrap());
        let g5 = Geometry::shared(2, 5).unwrap();
        let mut m = PointMultiset::empty(g5.clone());
        for code in [1u64, 2, 15, 16, 23, 27] {
            m.add_point(g5.decode_point(code, crate::PointEncoding::Binary).unwrap(), 2);
        }
        for code in [4u64, 8, 29, 30] {
            m.add_point(g5.decode_point(code, crate::PointEncoding::Binary).unwrap(), 3);
        }
        assert!(locality_geometric(&m, 1).unwrap());
        assert_eq!(locality(&LinearCode::from_multiset(&m).unwrap()).r, Some(1));
    }

    #[test]
    fn weight3_screen_examples() {
        let s = simplex(2, 3, 1);
        assert_eq!(dual_weight_count(&s, 3), 7);
        assert_eq!(weight3_screen(&s).unwrap(), ScreenResult::Inconclusive);
        let g = Geometry::shared(2, 5).unwrap();
        let m = projective_with_one_line(&g);
        let c = LinearCode::from_multiset(&m).unwrap();
        assert_eq!(dual_minimum_distance(&c), Some(3));
        assert_eq!(dual_weight_count(&c, 3), 1);
        assert_eq!(weight3_screen(&c).unwrap(), ScreenResult::LocalityGt2);
        assert!(locality(&c).r.unwrap() > 2);
        assert!(matches!(weight3_screen(&simplex(2, 3, 2)), Err(Error::PreconditionFailed(_))));
    }

    /// Nine points of PG(4,2) whose support contains exactly one full line.
    fn projective_with_one_line(g: &Arc<Geometry>) -> PointMultiset {
        let vecs: [[Elem; 5]; 9] = [
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [1, 1, 0, 0, 0],
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
            [0, 0, 1, 1, 1],
            [1, 0, 1, 1, 0],
            [0, 1, 1, 0, 1],
        ];
        let m = PointMultiset::characteristic(g.clone(), vecs.iter().map(|v| g.point_index(v).unwrap()));
        let full = (0..g.num_lines()).filter(|&l| m.multiplicity_of(crate::Subspace::Line(l)) == 3).count();
        assert_eq!((m.cardinality(), full), (9, 1));
        m
    }

    #[test]
    fn weight3_screen_ternary() {
        // Projective ternary code: the 13 points of PG(2,3) minus a line.
        let g = Geometry::shared(3, 3).unwrap();
        let line: Vec<u32> = g.line_points(0).to_vec();
        let m = PointMultiset::characteristic(g.clone(), (0..13).filter(|p| !line.contains(&(*p as u32))));
        let c = LinearCode::from_multiset(&m).unwrap();
        assert_eq!(dual_minimum_distance(&c), Some(3));
        // Each affine line has 3 points; 12 such lines, each giving q-1 = 2 words.
        assert_eq!(dual_weight_count(&c, 3), 24);
        let dual = c.dual();
        assert_eq!(dual.weight_distribution().unwrap().counts[3], 24);
        assert_eq!(weight3_screen(&c).unwrap(), ScreenResult::Inconclusive);
    }

    #[test]
    fn parity_screen_examples() {
        // The extended Hamming code is self-dual with no weight-3 words, so
        // the screen fires; the exact locality of the Hamming code is 3.
        let ham = simplex(2, 3, 1).dual();
        assert_eq!(parity_extension_screen(&ham).unwrap(), ScreenResult::LocalityGt2);
        assert_eq!(locality(&ham).r, Some(3));
        // A code with many full lines stays inconclusive.
        let twice = LinearCode::from_multiset(&PointMultiset::characteristic(
            Geometry::shared(2, 3).unwrap(),
            0..7,
        ))
        .unwrap()
        .puncture(0)
        .unwrap();
        assert_eq!(twice.minimum_distance().unwrap(), 3);
        assert_eq!(parity_extension_screen(&twice).unwrap(), ScreenResult::Inconclusive);
        assert_eq!(parity_extension_screen(&simplex(2, 3, 1)), Err(Error::EvenDistance(4)));
        let t = LinearCode::from_rows(FieldContext::new(3).unwrap(), vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(parity_extension_screen(&t), Err(Error::WrongField { expected: 2, found: 3 }));
    }

    #[test]
    fn recovery_replays() {
        let c = simplex(3, 3, 1);
        let rep = locality(&c);
        let f = c.field();
        for m0 in f.elements() {
            for m1 in f.elements() {
                let w = c.encode(&[m0, m1, 1]);
                for rec in &rep.certificate.recovery {
                    assert_eq!(rec.recover(f, &w), w[rec.coordinate]);
                }
            }
        }
    }
}
