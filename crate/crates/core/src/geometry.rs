//! Points, lines and hyperplanes of the projective geometry PG(k-1, q), and
//! multisets of points.
//!
//! Points are one-dimensional subspaces of GF(q)^k, represented by the
//! vector whose first nonzero coordinate is 1. They are indexed in
//! lexicographic order of that representative, coordinate 0 being the most
//! significant. Hyperplane `i` is the kernel of the linear form given by
//! point `i`, so points and hyperplanes share one index space.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldContext};

pub const DEFAULT_POINT_CAP: u128 = 1_000_000;

/// Number of `k`-dimensional subspaces of an `n`-dimensional vector space
/// over GF(q). Returns `None` on overflow.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow(n - i)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow(i + 1)?.checked_sub(1)?)?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    Some(num / den)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `[k choose 1]_q = (q^k - 1)/(q - 1)` as a plain integer.
pub fn point_count(k: u32, q: u64) -> u64 {
    gaussian_binomial(k, 1, q).expect("point count overflow") as u64
}

/// How integers in point lists are mapped to points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointEncoding {
    /// Base-2 digits of the integer are the coordinates, most significant
    /// bit first. Binary geometries only.
    Binary,
    /// Zero-based position in the sorted list of canonical points.
    Lexindex,
}

struct Incidence {
    points_on: Vec<Vec<u32>>,
    through: Vec<Vec<u32>>,
}

struct Lines {
    points_on: Vec<Vec<u32>>,
    through: Vec<Vec<u32>>,
}

/// The point set of PG(k-1, q) together with lazily built incidences.
pub struct Geometry {
    field: FieldContext,
    k: usize,
    coords: Vec<Elem>,
    lookup: HashMap<u64, u32>,
    hyperplanes: OnceLock<Incidence>,
    lines: OnceLock<Lines>,
}

impl std::fmt::Debug for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PG({}, {})", self.k as isize - 1, self.field.order())
    }
}

impl PartialEq for Geometry {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.field.order() == other.field.order()
    }
}

impl Geometry {
    /// Enumerates PG(k-1, q) with the default point cap.
    pub fn new(field: FieldContext, k: usize) -> Result<Self> {
        Self::with_cap(field, k, DEFAULT_POINT_CAP)
    }

    pub fn with_cap(field: FieldContext, k: usize, cap: u128) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadK { k, reason: "ambient dimension must be at least 1".into() });
        }
        let q = field.order() as u64;
        let count = gaussian_binomial(k as u32, 1, q).unwrap_or(u128::MAX);
        if count > cap {
            return Err(Error::SizeCap { what: "point count", size: count, cap });
        }
        let mut coords = Vec::with_capacity(count as usize * k);
        // More leading zeros sort first.
        for lead in (0..k).rev() {
            let tail = k - lead - 1;
            let combos = q.pow(tail as u32);
            for t in 0..combos {
                let mut v = vec![0 as Elem; k];
                v[lead] = 1;
                let mut x = t;
                for j in (lead + 1..k).rev() {
                    v[j] = (x % q) as Elem;
                    x /= q;
                }
                coords.extend_from_slice(&v);
            }
        }
        let mut geometry = Geometry {
            field,
            k,
            coords,
            lookup: HashMap::new(),
            hyperplanes: OnceLock::new(),
            lines: OnceLock::new(),
        };
        let lookup = (0..geometry.num_points())
            .map(|i| (geometry.key(geometry.point(i)), i as u32))
            .collect();
        geometry.lookup = lookup;
        Ok(geometry)
    }

    /// Process-wide shared instance for `(q, k)` with the default cap.
    pub fn shared(q: u32, k: usize) -> Result<Arc<Geometry>> {
        static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Arc<Geometry>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = cache.lock().unwrap().get(&(q, k)) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(Geometry::new(FieldContext::new(q)?, k)?);
        cache.lock().unwrap().entry((q, k)).or_insert_with(|| Arc::clone(&g));
        Ok(g)
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Vector-space dimension k (projective dimension k - 1).
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn num_points(&self) -> usize {
        self.coords.len() / self.k
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.num_points()
    }

    pub fn point(&self, i: usize) -> &[Elem] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    fn key(&self, v: &[Elem]) -> u64 {
        let q = self.q() as u64;
        v.iter().fold(0u64, |acc, &x| acc * q + x as u64)
    }

    /// Scales a nonzero vector so its first nonzero coordinate is 1.
    pub fn canonical(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let lead = v.iter().position(|&x| x != 0)?;
        let inv = self.field.inv(v[lead]);
        Some(v.iter().map(|&x| self.field.mul(x, inv)).collect())
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn point_index(&self, v: &[Elem]) -> Option<usize> {
        if v.len() != self.k {
            return None;
        }
        let c = self.canonical(v)?;
        self.lookup.get(&self.key(&c)).map(|&i| i as usize)
    }

    /// Index of the point `<e_i>` (zero-based `i`).
    pub fn unit_point(&self, i: usize) -> usize {
        let mut v = vec![0; self.k];
        v[i] = 1;
        self.point_index(&v).unwrap()
    }

    /// Maps an integer from a published point list to a point index.
    pub fn decode_point(&self, code: u64, encoding: PointEncoding) -> Result<usize> {
        match encoding {
            PointEncoding::Binary => {
                if self.q() != 2 {
                    return Err(Error::WrongField { expected: 2, found: self.q() });
                }
                let max = (1u64 << self.k) - 1;
                if code == 0 || code > max {
                    return Err(Error::OutOfRange {
                        value: code,
                        reason: format!("binary point code must lie in 1..={max}"),
                    });
                }
                Ok(self.lookup[&code] as usize)
            }
            PointEncoding::Lexindex => {
                if code as usize >= self.num_points() {
                    return Err(Error::OutOfRange {
                        value: code,
                        reason: format!("lexindex must be below {}", self.num_points()),
                    });
                }
                Ok(code as usize)
            }
        }
    }

    /// Inverse of [`Geometry::decode_point`].
    pub fn encode_point(&self, point: usize, encoding: PointEncoding) -> Result<u64> {
        match encoding {
            PointEncoding::Binary if self.q() != 2 => Err(Error::WrongField { expected: 2, found: self.q() }),
            PointEncoding::Binary => Ok(self.key(self.point(point))),
            PointEncoding::Lexindex => Ok(point as u64),
        }
    }

    fn incidence(&self) -> &Incidence {
        self.hyperplanes.get_or_init(|| {
            let n = self.num_points();
            let mut points_on = vec![Vec::new(); n];
            let mut through = vec![Vec::new(); n];
            for (h, on) in points_on.iter_mut().enumerate() {
                let normal = self.point(h);
                for p in 0..n {
                    if self.field.dot(normal, self.point(p)) == 0 {
                        on.push(p as u32);
                        through[p].push(h as u32);
                    }
                }
            }
            Incidence { points_on, through }
        })
    }

    /// Points on hyperplane `h`, ascending.
    pub fn hyperplane_points(&self, h: usize) -> &[u32] {
        &self.incidence().points_on[h]
    }

    /// Hyperplanes through point `p`, ascending.
    pub fn hyperplanes_through(&self, p: usize) -> &[u32] {
        &self.incidence().through[p]
    }

    fn line_data(&self) -> &Lines {
        self.lines.get_or_init(|| {
            let n = self.num_points();
            let f = &self.field;
            let mut points_on = Vec::new();
            if self.k >= 2 {
                for i in 0..n {
                    for j in i + 1..n {
                        let mut pts = vec![i as u32, j as u32];
                        let mut minimal = true;
                        for lam in f.nonzero() {
                            let mut v = self.point(i).to_vec();
                            f.axpy(&mut v, lam, self.point(j));
                            let idx = self.point_index(&v).unwrap();
                            if idx < j {
                                minimal = false;
                                break;
                            }
                            pts.push(idx as u32);
                        }
                        if minimal {
                            pts.sort_unstable();
                            points_on.push(pts);
                        }
                    }
                }
            }
            let mut through = vec![Vec::new(); n];
            for (l, pts) in points_on.iter().enumerate() {
                for &p in pts {
                    through[p as usize].push(l as u32);
                }
            }
            Lines { points_on, through }
        })
    }

    pub fn num_lines(&self) -> usize {
        self.line_data().points_on.len()
    }

    /// The `q + 1` points of line `l`, ascending.
    pub fn line_points(&self, l: usize) -> &[u32] {
        &self.line_data().points_on[l]
    }

    pub fn lines_through(&self, p: usize) -> &[u32] {
        &self.line_data().through[p]
    }

    /// Index of the line through two distinct points.
    pub fn line_index(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.lines_through(a)
            .iter()
            .map(|&l| l as usize)
            .find(|&l| self.line_points(l).binary_search(&(b as u32)).is_ok())
    }

    /// Rank of a set of points viewed as vectors.
    pub fn rank_of(&self, points: impl IntoIterator<Item = usize>) -> usize {
        let rows: Vec<Vec<Elem>> = points.into_iter().map(|p| self.point(p).to_vec()).collect();
        self.field.rank(&rows)
    }

    /// All points of the subspace spanned by the given vectors, ascending.
    pub fn span_points(&self, generators: &[Vec<Elem>]) -> Vec<usize> {
        let mut basis = generators.to_vec();
        self.field.row_reduce(&mut basis);
        let m = basis.len();
        let q = self.q() as u64;
        let mut out = Vec::new();
        for t in 1..q.pow(m as u32) {
            let mut v = vec![0; self.k];
            let mut x = t;
            for row in &basis {
                self.field.axpy(&mut v, (x % q) as Elem, row);
                x /= q;
            }
            out.push(self.point_index(&v).unwrap());
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Subspace selector for [`PointMultiset::multiplicity_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subspace {
    Hyperplane(usize),
    Line(usize),
}

/// A map from points of PG(k-1, q) to non-negative multiplicities.
#[derive(Clone)]
pub struct PointMultiset {
    geometry: Arc<Geometry>,
    mults: Vec<u32>,
}

impl std::fmt::Debug for PointMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let support: BTreeMap<usize, u32> =
            self.mults.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, &m)| (i, m)).collect();
        f.debug_struct("PointMultiset").field("geometry", &self.geometry).field("support", &support).finish()
    }
}

impl PartialEq for PointMultiset {
    fn eq(&self, other: &Self) -> bool {
        *self.geometry == *other.geometry && self.mults == other.mults
    }
}

impl PointMultiset {
    pub fn empty(geometry: Arc<Geometry>) -> Self {
        let n = geometry.num_points();
        PointMultiset { geometry, mults: vec![0; n] }
    }

    pub fn from_mults(geometry: Arc<Geometry>, mults: Vec<u32>) -> Result<Self> {
        if mults.len() != geometry.num_points() {
            return Err(Error::InconsistentInput(format!(
                "{} multiplicities for {} points",
                mults.len(),
                geometry.num_points()
            )));
        }
        Ok(PointMultiset { geometry, mults })
    }

    /// Characteristic function of a point set.
    pub fn characteristic(geometry: Arc<Geometry>, points: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Self::empty(geometry);
        for p in points {
            m.mults[p] = 1;
        }
        m
    }

    /// Every point with multiplicity `t`.
    pub fn constant(geometry: Arc<Geometry>, t: u32) -> Self {
        let n = geometry.num_points();
        PointMultiset { geometry, mults: vec![t; n] }
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn get(&self, p: usize) -> u32 {
        self.mults[p]
    }

    pub fn set(&mut self, p: usize, m: u32) {
        self.mults[p] = m;
    }

    pub fn add_point(&mut self, p: usize, m: u32) {
        self.mults[p] += m;
    }

    pub fn cardinality(&self) -> u64 {
        self.mults.iter().map(|&m| m as u64).sum()
    }

    /// Maximum point multiplicity.
    pub fn gamma(&self) -> u32 {
        self.mults.iter().copied().max().unwrap_or(0)
    }

    /// Points with positive multiplicity, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mults.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, _)| i)
    }

    pub fn multiplicity_of(&self, s: Subspace) -> u64 {
        let pts = match s {
            Subspace::Hyperplane(h) => self.geometry.hyperplane_points(h),
            Subspace::Line(l) => self.geometry.line_points(l),
        };
        pts.iter().map(|&p| self.mults[p as usize] as u64).sum()
    }

    /// `M(H)` for every hyperplane, by hyperplane index.
    pub fn hyperplane_multiplicities(&self) -> Vec<u64> {
        (0..self.geometry.num_hyperplanes()).map(|h| self.multiplicity_of(Subspace::Hyperplane(h))).collect()
    }

    /// Largest hyperplane multiplicity; zero for PG(0, q).
    pub fn max_hyperplane_multiplicity(&self) -> u64 {
        self.hyperplane_multiplicities().into_iter().max().unwrap_or(0)
    }

    /// Minimum distance of the associated code, `|M| - max_H M(H)`.
    pub fn minimum_distance(&self) -> u64 {
        self.cardinality() - self.max_hyperplane_multiplicity()
    }

    pub fn is_spanning(&self) -> bool {
        self.geometry.rank_of(self.support()) == self.geometry.dim()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if *self.geometry != *other.geometry {
            return Err(Error::GeometryMismatch);
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mults = self.mults.iter().zip(&other.mults).map(|(a, b)| a + b).collect();
        Ok(PointMultiset { geometry: Arc::clone(&self.geometry), mults })
    }

    /// Pointwise difference; fails if any multiplicity would go negative.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InfeasibleType("negative multiplicity".into()))?;
        Ok(PointMultiset { geometry: Arc::clone(&self.geometry), mults })
    }

    pub fn scale(&self, t: u32) -> Self {
        PointMultiset { geometry: Arc::clone(&self.geometry), mults: self.mults.iter().map(|m| m * t).collect() }
    }

    /// Raises the lowest-index point of positive multiplicity until the
    /// cardinality reaches `target_n`.
    pub fn pad(&self, target_n: u64) -> Result<Self> {
        let first = self.support().next().ok_or(Error::EmptyMultiset)?;
        let n = self.cardinality();
        if target_n < n {
            return Err(Error::OutOfRange { value: target_n, reason: format!("target below cardinality {n}") });
        }
        let mut out = self.clone();
        out.mults[first] += (target_n - n) as u32;
        Ok(out)
    }

    pub fn to_file(&self, encoding: PointEncoding) -> Result<MultisetFile> {
        let mut mults = BTreeMap::new();
        for p in self.support() {
            mults.insert(self.geometry.encode_point(p, encoding)?.to_string(), self.mults[p]);
        }
        Ok(MultisetFile { q: self.geometry.q(), k: self.geometry.dim(), encoding, mults })
    }
}

/// On-disk JSON form of a point multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetFile {
    pub q: u32,
    pub k: usize,
    pub encoding: PointEncoding,
    pub mults: BTreeMap<String, u32>,
}

impl MultisetFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("multiset file serializes")
    }

    pub fn decode(&self) -> Result<PointMultiset> {
        let g = Geometry::shared(self.q, self.k)?;
        let mut m = PointMultiset::empty(Arc::clone(&g));
        for (code, &mult) in &self.mults {
            let c: u64 = code
                .trim()
                .parse()
                .map_err(|_| Error::InconsistentInput(format!("point code `{code}` is not an integer")))?;
            m.add_point(g.decode_point(c, self.encoding)?, mult);
        }
        Ok(m)
    }
}
