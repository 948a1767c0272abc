//! Explicit constructions of multisets of points (equivalently, codes) with
//! small locality, together with the parameters they are known to achieve.
//!
//! Constructions can be named by a short textual grammar, e.g.
//! `simplex:k=3,q=2,t=2`, `ss:k=5,q=2,type=2:1,1,1,1` or
//! `line(ss:k=4,q=2,type=1:1,0,0)`; see [`Construction`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::geometry::{point_count, Geometry, PointMultiset};

/// Search-node budget for Solomon–Stiffler placements.
pub const DEFAULT_PLACEMENT_BUDGET: u64 = 2_000_000;

/// `σ` copies of the ambient space with `ε_i` subspaces of vector
/// dimension `i + 1` removed, written `[σ; ε_{k-2}, …, ε_0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolomonStifflerType {
    pub sigma: u32,
    /// `ε_{k-2}, …, ε_0` in printed order.
    pub eps: Vec<u32>,
}

impl SolomonStifflerType {
    pub fn new(sigma: u32, eps: Vec<u32>) -> Self {
        SolomonStifflerType { sigma, eps }
    }

    /// Ambient vector dimension implied by the length of `eps`.
    pub fn k(&self) -> usize {
        self.eps.len() + 1
    }

    /// `ε_i`: number of removed subspaces of vector dimension `i + 1`.
    pub fn eps_at(&self, i: usize) -> u32 {
        self.eps[self.eps.len() - 1 - i]
    }

    fn removed_points(&self, q: u32) -> u64 {
        (0..self.eps.len()).map(|i| self.eps_at(i) as u64 * point_count(i as u32 + 1, q as u64)).sum()
    }

    /// `σ [k]_q - Σ ε_i [i+1]_q`.
    pub fn predicted_n(&self, q: u32) -> i64 {
        self.sigma as i64 * point_count(self.k() as u32, q as u64) as i64 - self.removed_points(q) as i64
    }

    /// `σ q^(k-1) - Σ ε_i q^i`.
    pub fn predicted_d(&self, q: u32) -> i64 {
        let q = q as i64;
        self.sigma as i64 * q.pow(self.k() as u32 - 1)
            - (0..self.eps.len()).map(|i| self.eps_at(i) as i64 * q.pow(i as u32)).sum::<i64>()
    }

    /// Sufficient condition for locality 2: `Σ ε_i [i+1]_q < σ [k-1]_q`.
    pub fn locality2_check(&self, q: u32) -> bool {
        self.removed_points(q) < self.sigma as u64 * point_count(self.k() as u32 - 1, q as u64)
    }
}

impl fmt::Display for SolomonStifflerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps: Vec<String> = self.eps.iter().map(u32::to_string).collect();
        write!(f, "{}:{}", self.sigma, eps.join(","))
    }
}

impl FromStr for SolomonStifflerType {
    type Err = Error;

    /// Accepts `2:1,1,1,1` and `[2;1,1,1,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (sigma, rest) = t
            .split_once([':', ';'])
            .ok_or_else(|| Error::InconsistentInput(format!("type `{s}` must look like `sigma:e1,e2,...`")))?;
        let num = |x: &str| {
            x.trim().parse::<u32>().map_err(|_| Error::InconsistentInput(format!("`{x}` in type `{s}` is not a number")))
        };
        let eps = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
        Ok(SolomonStifflerType { sigma: num(sigma)?, eps })
    }
}

pub fn simplex(k: usize, q: u32, t: u32) -> Result<PointMultiset> {
    if t == 0 {
        return Err(Error::OutOfRange { value: 0, reason: "multiplicity t must be positive".into() });
    }
    Ok(PointMultiset::constant(Geometry::shared(q, k)?, t))
}

/// All subspaces of vector dimension `m`, as sorted point lists. Subspaces
/// spanned by unit vectors come first.
pub fn subspaces(g: &Geometry, m: usize) -> Vec<Vec<usize>> {
    let k = g.dim();
    let q = g.q() as u64;
    let mut coordinate = Vec::new();
    let mut other = Vec::new();
    crate::locality::for_each_subset(k, m, |pivots| {
        // free positions: (row, column) with column > pivot of row, not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..k).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        for t in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![0 as Elem; k]; m];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            let mut x = t;
            for &(r, c) in &free {
                rows[r][c] = (x % q) as Elem;
                x /= q;
            }
            let pts = g.span_points(&rows);
            if t == 0 {
                coordinate.push(pts);
            } else {
                other.push(pts);
            }
        }
        false
    });
    coordinate.extend(other);
    coordinate
}

/// Solomon–Stiffler multiset `σ χ_V - Σ χ_{S_j}` for a placement of the
/// subspaces found by backtracking.
pub fn solomon_stiffler(g: &Arc<Geometry>, ty: &SolomonStifflerType) -> Result<PointMultiset> {
    solomon_stiffler_with_budget(g, ty, DEFAULT_PLACEMENT_BUDGET)
}

pub fn solomon_stiffler_with_budget(g: &Arc<Geometry>, ty: &SolomonStifflerType, budget: u64) -> Result<PointMultiset> {
    let q = g.q();
    if ty.k() != g.dim() {
        return Err(Error::InfeasibleType(format!(
            "type {ty} has {} entries, PG({}, {q}) needs {}",
            ty.eps.len(),
            g.dim() - 1,
            g.dim() - 1
        )));
    }
    if ty.sigma == 0 {
        return Err(Error::InfeasibleType("sigma must be positive".into()));
    }
    if ty.predicted_n(q) <= 0 {
        return Err(Error::InfeasibleType(format!("type {ty} removes at least every point")));
    }
    // Required subspace dimensions, largest first.
    let dims: Vec<usize> = (0..ty.eps.len()).rev().flat_map(|i| std::iter::repeat_n(i + 1, ty.eps_at(i) as usize)).collect();
    let mut candidates: Vec<Option<Vec<Vec<usize>>>> = vec![None; g.dim()];
    for &m in &dims {
        if candidates[m].is_none() {
            candidates[m] = Some(subspaces(g, m));
        }
    }
    let mut cover = vec![0u32; g.num_points()];
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    if !place(&dims, 0, 0, &candidates, ty.sigma, &mut cover, &mut chosen, &mut nodes, budget) {
        return Err(Error::NoPlacement);
    }
    let mut m = PointMultiset::constant(Arc::clone(g), ty.sigma);
    for (p, c) in cover.iter().enumerate() {
        m.set(p, ty.sigma - c);
    }
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
fn place(
    dims: &[usize],
    pos: usize,
    start: usize,
    candidates: &[Option<Vec<Vec<usize>>>],
    sigma: u32,
    cover: &mut [u32],
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> bool {
    if pos == dims.len() {
        return true;
    }
    let list = candidates[dims[pos]].as_ref().unwrap();
    // Equal dimensions are placed in non-decreasing candidate order.
    let from = if pos > 0 && dims[pos - 1] == dims[pos] { start } else { 0 };
    for (ci, pts) in list.iter().enumerate().skip(from) {
        *nodes += 1;
        if *nodes > budget {
            return false;
        }
        if pts.iter().any(|&p| cover[p] >= sigma) {
            continue;
        }
        for &p in pts {
            cover[p] += 1;
        }
        chosen.push(ci);
        if place(dims, pos + 1, ci, candidates, sigma, cover, chosen, nodes, budget) {
            return true;
        }
        chosen.pop();
        for &p in pts {
            cover[p] -= 1;
        }
    }
    false
}

/// Affine part of PG(m-1, 2): the first-order Reed–Muller code
/// `[2^(m-1), m, 2^(m-2)]_2`.
pub fn reed_muller_first_order(m: usize) -> Result<PointMultiset> {
    if m < 2 {
        return Err(Error::SmallK { k: m, min: 2 });
    }
    let mut eps = vec![0; m - 1];
    eps[0] = 1;
    solomon_stiffler(&Geometry::shared(2, m)?, &SolomonStifflerType::new(1, eps))
}

/// Joins an outside point to every point of a projective binary multiset
/// embedded in a hyperplane: `[n', k', d'] -> [2n'+1, k'+1, min(2d', n'+1)]`
/// with locality 2.
pub fn line_construction_multiset(m: &PointMultiset) -> Result<PointMultiset> {
    let g = m.geometry();
    if g.q() != 2 {
        return Err(Error::WrongField { expected: 2, found: g.q() });
    }
    if g.dim() < 2 {
        return Err(Error::SmallK { k: g.dim(), min: 2 });
    }
    if m.gamma() > 1 {
        return Err(Error::NotProjective);
    }
    if !m.is_spanning() {
        return Err(Error::NotSpanning);
    }
    let k = g.dim() + 1;
    let big = Geometry::shared(2, k)?;
    let mut out = PointMultiset::empty(Arc::clone(&big));
    let apex = big.unit_point(k - 1);
    out.set(apex, 1);
    for p in m.support() {
        let mut v = g.point(p).to_vec();
        v.push(0);
        out.set(big.point_index(&v).unwrap(), 1);
        v[k - 1] = 1;
        out.set(big.point_index(&v).unwrap(), 1);
    }
    Ok(out)
}

pub fn line_construction(c: &LinearCode) -> Result<LinearCode> {
    if c.q() != 2 {
        return Err(Error::WrongField { expected: 2, found: c.q() });
    }
    if !c.is_projective() {
        return Err(Error::NotProjective);
    }
    LinearCode::from_multiset(&line_construction_multiset(&c.to_multiset()?)?)
}

/// Points `e_i` and `e_i + e_{i+1}` (indices cyclic) in PG(k-1, 2): a
/// `[2k, k, 3]_2` code with locality 2.
pub fn cycle_construction_d3(k: usize, q: u32) -> Result<PointMultiset> {
    if q != 2 {
        return Err(Error::WrongField { expected: 2, found: q });
    }
    if k < 4 {
        return Err(Error::SmallK { k, min: 4 });
    }
    let g = Geometry::shared(2, k)?;
    let mut m = PointMultiset::empty(Arc::clone(&g));
    for i in 0..k {
        let mut v = vec![0; k];
        v[i] = 1;
        m.set(g.point_index(&v).unwrap(), 1);
        v[(i + 1) % k] = 1;
        m.set(g.point_index(&v).unwrap(), 1);
    }
    Ok(m)
}

fn sum_of_units(k: usize, idx: impl IntoIterator<Item = usize>) -> Vec<Elem> {
    let mut v = vec![0; k];
    for i in idx {
        v[i] = 1;
    }
    v
}

/// Pairs of unit points with their sum, plus one closing triple: a
/// `[3t+3, 2t, 4]_q` code for `k = 2t`, and for `q = 2` a `[3t+5, 2t+1, 4]_2`
/// code for `k = 2t + 1` (closing triple plus a double point).
pub fn d4_construction(k: usize, q: u32) -> Result<PointMultiset> {
    if k < 4 {
        return Err(Error::SmallK { k, min: 4 });
    }
    if k % 2 == 1 && q != 2 {
        return Err(Error::WrongField { expected: 2, found: q });
    }
    let t = k / 2;
    let g = Geometry::shared(q, k)?;
    let mut m = PointMultiset::empty(Arc::clone(&g));
    let mut add = |v: Vec<Elem>, mult: u32| m.add_point(g.point_index(&v).unwrap(), mult);
    // zero-based: e_{2i-1} -> index 2i-2, e_{2i} -> index 2i-1
    for i in 0..t {
        add(sum_of_units(k, [2 * i]), 1);
        add(sum_of_units(k, [2 * i + 1]), 1);
        add(sum_of_units(k, [2 * i, 2 * i + 1]), 1);
    }
    if k.is_multiple_of(2) {
        add(sum_of_units(k, (0..t).map(|i| 2 * i)), 1);
        add(sum_of_units(k, (0..t).map(|i| 2 * i + 1)), 1);
        add(sum_of_units(k, 0..k), 1);
    } else {
        add(sum_of_units(k, (0..=t).map(|i| 2 * i)), 1);
        add(sum_of_units(k, (0..t).map(|i| 2 * i + 1)), 1);
        add(sum_of_units(k, 0..k), 1);
        add(sum_of_units(k, [k - 1]), 2);
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum R1Variant {
    /// `2M`: `[2n, k, 2d]`.
    Double,
    /// `M + 2χ_V`: `[n + 2[k]_q, k, d + 2q^(k-1)]`.
    AddDoubleAmbient,
    /// `3M` minus one point: `[3n-1, k, 3d-1]`.
    TripleMinusOne,
}

impl R1Variant {
    fn name(self) -> &'static str {
        match self {
            R1Variant::Double => "r1-double",
            R1Variant::AddDoubleAmbient => "r1-ambient",
            R1Variant::TripleMinusOne => "r1-triple",
        }
    }
}

/// Locality-1 multisets derived from an arbitrary multiset.
pub fn r1_construction_multiset(m: &PointMultiset, variant: R1Variant) -> Result<PointMultiset> {
    if m.cardinality() == 0 {
        return Err(Error::EmptyInput);
    }
    match variant {
        R1Variant::Double => Ok(m.scale(2)),
        R1Variant::AddDoubleAmbient => m.try_add(&PointMultiset::constant(Arc::clone(m.geometry()), 2)),
        R1Variant::TripleMinusOne => {
            let mut out = m.scale(3);
            let p = out.support().next().unwrap();
            out.set(p, out.get(p) - 1);
            Ok(out)
        }
    }
}

pub fn r1_construction(c: &LinearCode, variant: R1Variant) -> Result<LinearCode> {
    if c.n() == 0 || c.k() == 0 {
        return Err(Error::EmptyInput);
    }
    LinearCode::from_multiset(&r1_construction_multiset(&c.to_multiset()?, variant)?)
}

/// Shortest spanning multisets with locality `r` in {1, 2, k}, with no
/// distance requirement: `2k`, `⌈3k/2⌉` (distance 2) and `k + 1` points.
pub fn small_length_optimum(k: usize, q: u32, r: usize) -> Result<PointMultiset> {
    let g = Geometry::shared(q, k)?;
    let mut m = PointMultiset::empty(Arc::clone(&g));
    let unit = |i: usize| g.unit_point(i);
    if r == 1 {
        for i in 0..k {
            m.set(unit(i), 2);
        }
    } else if r == 2 {
        for i in 0..k / 2 {
            m.set(unit(2 * i), 1);
            m.set(unit(2 * i + 1), 1);
            m.set(g.point_index(&sum_of_units(k, [2 * i, 2 * i + 1])).unwrap(), 1);
        }
        if k % 2 == 1 {
            m.set(unit(k - 1), 2);
        }
    } else if r == k {
        for i in 0..k {
            m.set(unit(i), 1);
        }
        m.add_point(g.point_index(&sum_of_units(k, 0..k)).unwrap(), 1);
    } else {
        return Err(Error::BadR { r, reason: format!("closed form known for r in {{1, 2, {k}}}") });
    }
    Ok(m)
}

/// Exact minimum length for dimension `k <= 2` with a witness.
///
/// A single point of multiplicity `max(2, d)` settles `k = 1`. For `k = 2`,
/// `r = 1` and `d < 2q`, `⌈d/2⌉ + 1` points of multiplicity 2 are optimal;
/// otherwise `d + ⌈d/q⌉` is optimal, realised by `a` copies of the line plus
/// `b + 1` further points where `d = aq + b`. For `r >= 2` and `d = 1` the
/// locality requirement forces three points, so the value is 3.
pub fn small_dimension_exact(k: usize, d: u64, q: u32, r: usize) -> Result<(u64, PointMultiset)> {
    if d == 0 {
        return Err(Error::OutOfRange { value: 0, reason: "distance must be positive".into() });
    }
    if r == 0 {
        return Err(Error::BadR { r, reason: "locality is at least 1".into() });
    }
    let g = Geometry::shared(q, k)?;
    let mut m = PointMultiset::empty(Arc::clone(&g));
    match k {
        1 => m.set(0, d.max(2) as u32),
        2 => {
            let qq = q as u64;
            if r == 1 && d < 2 * qq {
                for p in 0..=d.div_ceil(2) as usize {
                    m.set(p, 2);
                }
            } else if d == 1 {
                for p in 0..3 {
                    m.set(p, 1);
                }
            } else {
                let (a, b) = (d / qq, d % qq);
                for p in 0..g.num_points() {
                    m.set(p, a as u32);
                }
                if b > 0 {
                    for p in 0..=b as usize {
                        m.add_point(p, 1);
                    }
                }
            }
        }
        _ => return Err(Error::BadK { k, reason: "closed forms cover k in {1, 2}".into() }),
    }
    Ok((m.cardinality(), m))
}

/// Parameters a construction is known to achieve: length, dimension, a
/// lower bound on the distance and an upper bound on the locality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicted {
    pub n: u64,
    pub k: usize,
    pub d: u64,
    pub r: Option<usize>,
}

/// A named construction, parseable from and printable to the textual
/// grammar.
///
/// | form | meaning |
/// |------|---------|
/// | `simplex:k=3,q=2,t=2` | t-fold simplex |
/// | `ss:k=5,q=2,type=2:1,1,1,1` | Solomon–Stiffler type |
/// | `rm:m=4` | first-order Reed–Muller (affine space) |
/// | `line(<inner>)` | line construction over a binary projective inner multiset |
/// | `cycle-d3:k=6` | cyclic pairs, distance 3 |
/// | `d4:k=6,q=2` | paired triples, distance 4 |
/// | `small-opt:k=4,q=2,r=2` | shortest multiset with locality r |
/// | `small-dim:k=2,q=3,d=6,r=2` | exact optimum for k <= 2 |
/// | `r1-double(<inner>)`, `r1-ambient(<inner>)`, `r1-triple(<inner>)` | locality-1 derivations |
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Simplex { k: usize, q: u32, t: u32 },
    SolomonStiffler { k: usize, q: u32, ty: SolomonStifflerType },
    ReedMuller { m: usize },
    Line(Box<Construction>),
    CycleD3 { k: usize },
    D4 { k: usize, q: u32 },
    SmallLength { k: usize, q: u32, r: usize },
    SmallDimension { k: usize, q: u32, d: u64, r: usize },
    R1 { variant: R1Variant, inner: Box<Construction> },
}

impl Construction {
    pub fn build(&self) -> Result<PointMultiset> {
        match self {
            Construction::Simplex { k, q, t } => simplex(*k, *q, *t),
            Construction::SolomonStiffler { k, q, ty } => solomon_stiffler(&Geometry::shared(*q, *k)?, ty),
            Construction::ReedMuller { m } => reed_muller_first_order(*m),
            Construction::Line(inner) => line_construction_multiset(&inner.build()?),
            Construction::CycleD3 { k } => cycle_construction_d3(*k, 2),
            Construction::D4 { k, q } => d4_construction(*k, *q),
            Construction::SmallLength { k, q, r } => small_length_optimum(*k, *q, *r),
            Construction::SmallDimension { k, q, d, r } => Ok(small_dimension_exact(*k, *d, *q, *r)?.1),
            Construction::R1 { variant, inner } => r1_construction_multiset(&inner.build()?, *variant),
        }
    }

    pub fn q(&self) -> u32 {
        match self {
            Construction::Simplex { q, .. }
            | Construction::SolomonStiffler { q, .. }
            | Construction::D4 { q, .. }
            | Construction::SmallLength { q, .. }
            | Construction::SmallDimension { q, .. } => *q,
            Construction::ReedMuller { .. } | Construction::Line(_) | Construction::CycleD3 { .. } => 2,
            Construction::R1 { inner, .. } => inner.q(),
        }
    }

    /// Parameters guaranteed by the construction.
    pub fn predicted(&self) -> Result<Predicted> {
        let q = self.q();
        Ok(match self {
            Construction::Simplex { k, q, t } => Predicted {
                n: *t as u64 * point_count(*k as u32, *q as u64),
                k: *k,
                d: *t as u64 * (*q as u64).pow(*k as u32 - 1),
                r: if *t >= 2 {
                    Some(1)
                } else if *k >= 2 {
                    Some(2)
                } else {
                    None
                },
            },
            Construction::SolomonStiffler { k, ty, .. } => Predicted {
                n: ty.predicted_n(q).max(0) as u64,
                k: *k,
                d: ty.predicted_d(q).max(0) as u64,
                r: ty.locality2_check(q).then_some(2),
            },
            Construction::ReedMuller { m } => {
                Predicted { n: 1 << (m - 1), k: *m, d: 1 << (m - 2), r: (*m >= 3).then_some(3) }
            }
            Construction::Line(inner) => {
                let p = inner.predicted()?;
                Predicted { n: 2 * p.n + 1, k: p.k + 1, d: (2 * p.d).min(p.n + 1), r: Some(2) }
            }
            Construction::CycleD3 { k } => Predicted { n: 2 * *k as u64, k: *k, d: 3, r: Some(2) },
            Construction::D4 { k, .. } => {
                let t = *k as u64 / 2;
                let n = if k % 2 == 0 { 3 * t + 3 } else { 3 * t + 5 };
                Predicted { n, k: *k, d: 4, r: Some(2) }
            }
            Construction::SmallLength { k, r, .. } => {
                let n = crate::bounds::min_length_no_distance(*k, *r)? as u64;
                Predicted { n, k: *k, d: 2, r: Some(*r) }
            }
            Construction::SmallDimension { k, q, d, r } => {
                let (n, _) = small_dimension_exact(*k, *d, *q, *r)?;
                Predicted { n, k: *k, d: *d, r: if *k == 1 { Some(1) } else { Some((*r).min(2)) } }
            }
            Construction::R1 { variant, inner } => {
                let p = inner.predicted()?;
                let (n, d) = match variant {
                    R1Variant::Double => (2 * p.n, 2 * p.d),
                    R1Variant::AddDoubleAmbient => {
                        (p.n + 2 * point_count(p.k as u32, q as u64), p.d + 2 * (q as u64).pow(p.k as u32 - 1))
                    }
                    R1Variant::TripleMinusOne => (3 * p.n - 1, 3 * p.d - 1),
                };
                Predicted { n, k: p.k, d, r: Some(1) }
            }
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Simplex { k, q, t } => write!(f, "simplex:k={k},q={q},t={t}"),
            Construction::SolomonStiffler { k, q, ty } => write!(f, "ss:k={k},q={q},type={ty}"),
            Construction::ReedMuller { m } => write!(f, "rm:m={m}"),
            Construction::Line(inner) => write!(f, "line({inner})"),
            Construction::CycleD3 { k } => write!(f, "cycle-d3:k={k}"),
            Construction::D4 { k, q } => write!(f, "d4:k={k},q={q}"),
            Construction::SmallLength { k, q, r } => write!(f, "small-opt:k={k},q={q},r={r}"),
            Construction::SmallDimension { k, q, d, r } => write!(f, "small-dim:k={k},q={q},d={d},r={r}"),
            Construction::R1 { variant, inner } => write!(f, "{}({inner})", variant.name()),
        }
    }
}

struct Params<'a> {
    spec: &'a str,
    pairs: Vec<(&'a str, String)>,
}

impl<'a> Params<'a> {
    fn parse(spec: &'a str, body: &'a str) -> Result<Self> {
        let mut pairs: Vec<(&str, String)> = Vec::new();
        for tok in body.split(',').filter(|t| !t.trim().is_empty()) {
            match tok.split_once('=') {
                Some((key, val)) => pairs.push((key.trim(), val.trim().to_string())),
                // continuation of a comma-separated value such as a type
                None => match pairs.last_mut() {
                    Some((_, val)) => {
                        val.push(',');
                        val.push_str(tok.trim());
                    }
                    None => return Err(Error::UnknownConstruction(spec.to_string())),
                },
            }
        }
        Ok(Params { spec, pairs })
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::InconsistentInput(format!("`{}` is missing parameter `{key}`", self.spec)))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.raw(key)?;
        raw.parse().map_err(|_| Error::InconsistentInput(format!("parameter `{key}={raw}` is not a number")))
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(open) = s.find('(') {
            if !s.ends_with(')') {
                return Err(Error::UnknownConstruction(s.to_string()));
            }
            let inner: Box<Construction> = Box::new(s[open + 1..s.len() - 1].parse()?);
            return match &s[..open] {
                "line" => Ok(Construction::Line(inner)),
                "r1-double" => Ok(Construction::R1 { variant: R1Variant::Double, inner }),
                "r1-ambient" => Ok(Construction::R1 { variant: R1Variant::AddDoubleAmbient, inner }),
                "r1-triple" => Ok(Construction::R1 { variant: R1Variant::TripleMinusOne, inner }),
                _ => Err(Error::UnknownConstruction(s.to_string())),
            };
        }
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        let p = Params::parse(s, body)?;
        Ok(match name {
            "simplex" => Construction::Simplex { k: p.get("k")?, q: p.get("q")?, t: p.get("t").unwrap_or(1) },
            "ss" => Construction::SolomonStiffler { k: p.get("k")?, q: p.get("q")?, ty: p.raw("type")?.parse()? },
            "rm" => Construction::ReedMuller { m: p.get("m")? },
            "cycle-d3" => Construction::CycleD3 { k: p.get("k")? },
            "d4" => Construction::D4 { k: p.get("k")?, q: p.get("q").unwrap_or(2) },
            "small-opt" => Construction::SmallLength { k: p.get("k")?, q: p.get("q")?, r: p.get("r")? },
            "small-dim" => {
                Construction::SmallDimension { k: p.get("k")?, q: p.get("q")?, d: p.get("d")?, r: p.get("r")? }
            }
            _ => return Err(Error::UnknownConstruction(s.to_string())),
        })
    }
}
