//! Linear codes given by generator matrices, and the correspondence between
//! codes and multisets of points.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldContext};
use crate::geometry::{Geometry, PointMultiset};

/// Largest number of codewords enumerated exhaustively.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// A linear `[n, k]_q` code stored by a basis of its row space.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: FieldContext,
    n: usize,
    rows: Vec<Vec<Elem>>,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]_{} code", self.n, self.k(), self.field.order())
    }
}

/// Number of codewords of each weight `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub counts: Vec<u128>,
}

impl WeightDistribution {
    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// Least positive weight that occurs.
    pub fn minimum_distance(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    /// Positive weights that occur, ascending.
    pub fn nonzero_weights(&self) -> Vec<usize> {
        (1..self.counts.len()).filter(|&w| self.counts[w] > 0).collect()
    }
}

/// Result of shortening a code at one coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortened {
    pub code: LinearCode,
    /// False when the coordinate was already zero in every codeword.
    pub dimension_dropped: bool,
}

impl LinearCode {
    /// Builds a code from generator rows. Dependent rows are dropped, so the
    /// dimension is the rank of the input.
    pub fn from_rows(field: FieldContext, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedRows { row: i, expected: n, found: r.len() });
            }
            if let Some(col) = r.iter().position(|&x| x as u32 >= field.order()) {
                return Err(Error::BadSymbol { row: i, col, symbol: r[col] as u32, q: field.order() });
            }
        }
        let mut basis: Vec<Vec<Elem>> = Vec::new();
        for r in rows {
            let mut trial = basis.clone();
            trial.push(r.clone());
            if field.rank(&trial) > basis.len() {
                basis.push(r);
            }
        }
        Ok(LinearCode { field, n, rows: basis })
    }

    /// The zero code of length `n`.
    pub fn zero(field: FieldContext, n: usize) -> Self {
        LinearCode { field, n, rows: Vec::new() }
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Generator rows (linearly independent).
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn column(&self, i: usize) -> Vec<Elem> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.n).map(|i| self.column(i)).collect()
    }

    /// `m * G` for a message of length k.
    pub fn encode(&self, message: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.n];
        for (&c, row) in message.iter().zip(&self.rows) {
            self.field.axpy(&mut out, c, row);
        }
        out
    }

    fn codeword_count(&self) -> u128 {
        (self.q() as u128).checked_pow(self.k() as u32).unwrap_or(u128::MAX)
    }

    /// Weight distribution by exhaustive enumeration with the default cap.
    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        self.weight_distribution_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn weight_distribution_with_cap(&self, cap: u128) -> Result<WeightDistribution> {
        let size = self.codeword_count();
        if size > cap {
            return Err(Error::SizeCap { what: "codeword count", size, cap });
        }
        let mut counts = vec![0u128; self.n + 1];
        if self.q() == 2 {
            self.binary_weights(&mut counts);
        } else {
            self.qary_weights(&mut counts);
        }
        Ok(WeightDistribution { counts })
    }

    fn binary_weights(&self, counts: &mut [u128]) {
        let limbs = self.n.div_ceil(64).max(1);
        let packed: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![0u64; limbs];
                for (i, &x) in r.iter().enumerate() {
                    if x == 1 {
                        v[i / 64] |= 1 << (i % 64);
                    }
                }
                v
            })
            .collect();
        let mut word = vec![0u64; limbs];
        counts[0] += 1;
        for step in 1u64..(1u64 << self.k()) {
            let bit = step.trailing_zeros() as usize;
            for (w, r) in word.iter_mut().zip(&packed[bit]) {
                *w ^= r;
            }
            let wt: u32 = word.iter().map(|x| x.count_ones()).sum();
            counts[wt as usize] += 1;
        }
    }

    fn qary_weights(&self, counts: &mut [u128]) {
        let f = &self.field;
        let q = self.q() as usize;
        let k = self.k();
        // multiples[j][c] = c * row_j
        let multiples: Vec<Vec<Vec<Elem>>> = self
            .rows
            .iter()
            .map(|r| f.elements().map(|c| r.iter().map(|&x| f.mul(c, x)).collect()).collect())
            .collect();
        let mut digits = vec![0usize; k];
        let mut word = vec![0 as Elem; self.n];
        counts[0] += 1;
        loop {
            let mut j = 0;
            while j < k && digits[j] == q - 1 {
                digits[j] = 0;
                let old = &multiples[j][q - 1];
                for (w, &o) in word.iter_mut().zip(old) {
                    *w = f.sub(*w, o);
                }
                j += 1;
            }
            if j == k {
                break;
            }
            let (old, new) = (&multiples[j][digits[j]], &multiples[j][digits[j] + 1]);
            for ((w, &o), &nw) in word.iter_mut().zip(old).zip(new) {
                *w = f.add(f.sub(*w, o), nw);
            }
            digits[j] += 1;
            let wt = word.iter().filter(|&&x| x != 0).count();
            counts[wt] += 1;
        }
    }

    /// Minimum distance. Enumerates codewords when `q^k` is within the cap
    /// and falls back to `n - max_H M(H)` over the column multiset otherwise.
    pub fn minimum_distance(&self) -> Result<usize> {
        if self.k() == 0 {
            return Err(Error::ZeroDimension);
        }
        if self.codeword_count() <= DEFAULT_ENUMERATION_CAP {
            let wd = self.weight_distribution()?;
            return Ok(wd.minimum_distance().expect("nonzero code has a nonzero word"));
        }
        self.minimum_distance_geometric()
    }

    /// `n - max_H M(H)`, counting zero columns as lying on every hyperplane.
    pub fn minimum_distance_geometric(&self) -> Result<usize> {
        if self.k() == 0 {
            return Err(Error::ZeroDimension);
        }
        let (m, _zeros) = self.column_multiset()?;
        Ok(m.minimum_distance() as usize)
    }

    /// Dual code: the null space of the generator matrix.
    pub fn dual(&self) -> LinearCode {
        let rows = self.field.null_space(&self.rows, self.n);
        LinearCode { field: self.field.clone(), n: self.n, rows }
    }

    /// Appends an overall parity bit. Binary codes only.
    pub fn extend_parity(&self) -> Result<LinearCode> {
        if self.q() != 2 {
            return Err(Error::WrongField { expected: 2, found: self.q() });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = r.clone();
                v.push(r.iter().fold(0, |a, &b| a ^ b));
                v
            })
            .collect();
        Ok(LinearCode { field: self.field.clone(), n: self.n + 1, rows })
    }

    /// Keeps the codewords that vanish at `coord` and deletes that coordinate.
    pub fn shorten(&self, coord: usize) -> Result<Shortened> {
        if coord >= self.n {
            return Err(Error::OutOfRange { value: coord as u64, reason: format!("code length is {}", self.n) });
        }
        let f = &self.field;
        let mut rows = self.rows.clone();
        let dimension_dropped = match rows.iter().position(|r| r[coord] != 0) {
            None => false,
            Some(p) => {
                let pivot = rows.remove(p);
                let inv = f.inv(pivot[coord]);
                for r in rows.iter_mut() {
                    if r[coord] != 0 {
                        let c = f.neg(f.mul(r[coord], inv));
                        f.axpy(r, c, &pivot);
                    }
                }
                true
            }
        };
        if rows.is_empty() {
            return Err(Error::DimensionCollapse);
        }
        for r in rows.iter_mut() {
            r.remove(coord);
        }
        let code = LinearCode::from_rows(f.clone(), rows)?;
        Ok(Shortened { code, dimension_dropped })
    }

    /// Deletes coordinate `coord`. The dimension may drop if the code had a
    /// codeword supported only there.
    pub fn puncture(&self, coord: usize) -> Result<LinearCode> {
        if coord >= self.n {
            return Err(Error::OutOfRange { value: coord as u64, reason: format!("code length is {}", self.n) });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = r.clone();
                v.remove(coord);
                v
            })
            .collect();
        LinearCode::from_rows(self.field.clone(), rows)
    }

    pub fn is_degenerate(&self) -> bool {
        self.zero_columns().next().is_some()
    }

    pub fn zero_columns(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&i| self.rows.iter().all(|r| r[i] == 0))
    }

    /// No zero column and no two columns that are scalar multiples.
    pub fn is_projective(&self) -> bool {
        if self.k() == 0 || self.is_degenerate() {
            return false;
        }
        let g = Geometry::shared(self.q(), self.k());
        let Ok(g) = g else {
            return self.projective_by_pairs();
        };
        let mut seen = vec![false; g.num_points()];
        for c in self.columns() {
            let p = g.point_index(&c).unwrap();
            if std::mem::replace(&mut seen[p], true) {
                return false;
            }
        }
        true
    }

    fn projective_by_pairs(&self) -> bool {
        let f = &self.field;
        let cols: Vec<Vec<Elem>> = self.columns().iter().map(|c| normalize(f, c)).collect();
        let mut sorted = cols.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == cols.len()
    }

    /// Column multiset ignoring zero columns, and the number of zero columns.
    fn column_multiset(&self) -> Result<(PointMultiset, usize)> {
        let g = Geometry::shared(self.q(), self.k())?;
        let mut m = PointMultiset::empty(Arc::clone(&g));
        let mut zeros = 0;
        for c in self.columns() {
            match g.point_index(&c) {
                Some(p) => m.add_point(p, 1),
                None => zeros += 1,
            }
        }
        Ok((m, zeros))
    }

    /// Multiset of the points spanned by the columns.
    pub fn to_multiset(&self) -> Result<PointMultiset> {
        if self.k() == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(column) = self.zero_columns().next() {
            return Err(Error::DegenerateCode { column });
        }
        Ok(self.column_multiset()?.0)
    }

    /// One column per unit of multiplicity, canonical representatives, in
    /// point index order.
    pub fn from_multiset(m: &PointMultiset) -> Result<LinearCode> {
        if !m.is_spanning() {
            return Err(Error::NotSpanning);
        }
        let g = m.geometry();
        let k = g.dim();
        let mut rows = vec![Vec::with_capacity(m.cardinality() as usize); k];
        for p in m.support() {
            for _ in 0..m.get(p) {
                for (r, &x) in rows.iter_mut().zip(g.point(p)) {
                    r.push(x);
                }
            }
        }
        Ok(LinearCode { field: g.field().clone(), n: m.cardinality() as usize, rows })
    }

    /// Parses the text format: a header line `q k n` followed by `k` lines of
    /// `n` digits each.
    pub fn parse(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, 1, "missing header line `q k n`"))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 3 {
            return Err(Error::parse(hl + 1, 1, "header must be `q k n`"));
        }
        let mut vals = [0usize; 3];
        for (i, s) in nums.iter().enumerate() {
            vals[i] = s.parse().map_err(|_| Error::parse(hl + 1, 1, format!("`{s}` is not a number")))?;
        }
        let [q, k, n] = vals;
        let field = FieldContext::new(q as u32)?;
        let mut rows = Vec::with_capacity(k);
        for (li, line) in lines {
            let line = line.trim();
            if rows.len() == k {
                return Err(Error::parse(li + 1, 1, format!("more than {k} rows")));
            }
            let mut row = Vec::with_capacity(n);
            for (ci, ch) in line.chars().enumerate() {
                let d = ch
                    .to_digit(10)
                    .filter(|&d| d < q as u32)
                    .ok_or_else(|| Error::parse(li + 1, ci + 1, format!("`{ch}` is not a digit below {q}")))?;
                row.push(d as Elem);
            }
            if row.len() != n {
                return Err(Error::parse(li + 1, 1, format!("row has {} symbols, expected {n}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::parse(text.lines().count(), 1, format!("found {} rows, expected {k}", rows.len())));
        }
        LinearCode::from_rows(field, rows)
    }

    /// Inverse of [`LinearCode::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.q(), self.k(), self.n);
        for r in &self.rows {
            for &x in r {
                write!(s, "{x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// True if both codes have the same row space.
    pub fn same_row_space(&self, other: &LinearCode) -> bool {
        if self.n != other.n || self.k() != other.k() || self.field != other.field {
            return false;
        }
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        self.field.rank(&all) == self.k()
    }
}

fn normalize(f: &FieldContext, v: &[Elem]) -> Vec<Elem> {
    match v.iter().find(|&&x| x != 0) {
        Some(&lead) => {
            let inv = f.inv(lead);
            v.iter().map(|&x| f.mul(x, inv)).collect()
        }
        None => v.to_vec(),
    }
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Krawtchouk polynomial `K_j(i)` for length `n` over GF(q).
pub fn krawtchouk(n: usize, q: u32, j: usize, i: usize) -> i128 {
    let q1 = q as i128 - 1;
    (0..=j)
        .map(|s| {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            sign * q1.pow((j - s) as u32) * binomial(i, s) * binomial(n - i, j - s)
        })
        .sum()
}

/// Weight distribution of the dual of an `[n, k]_q` code with the given
/// distribution.
pub fn macwilliams_transform(w: &WeightDistribution, n: usize, k: usize, q: u32) -> Result<WeightDistribution> {
    if w.counts.len() != n + 1 {
        return Err(Error::InconsistentInput(format!("{} weight classes for length {n}", w.counts.len())));
    }
    let size = (q as u128).pow(k as u32);
    if w.total() != size {
        return Err(Error::InconsistentInput(format!("distribution sums to {}, expected {size}", w.total())));
    }
    let size = size as i128;
    let mut counts = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let s: i128 = w.counts.iter().enumerate().map(|(i, &a)| a as i128 * krawtchouk(n, q, j, i)).sum();
        if s % size != 0 || s < 0 {
            return Err(Error::InconsistentInput(format!("transform is not integral at weight {j}")));
        }
        counts.push((s / size) as u128);
    }
    Ok(WeightDistribution { counts })
}
