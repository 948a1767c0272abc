//! Closed-form bounds on the parameters of linear codes with locality.

use crate::error::{Error, Result};
use crate::geometry::point_count;

/// Griesmer lower bound `g_q(k, d) = Σ_{i<k} ⌈d / q^i⌉` on the length.
pub fn griesmer(k: usize, d: u64, q: u32) -> u64 {
    let mut qi: u64 = 1;
    let mut sum = 0;
    for i in 0..k {
        if qi >= d {
            // every remaining term is ⌈d / q^i⌉ = 1 (or 0 when d = 0)
            return sum + (k - i) as u64 * d.min(1);
        }
        sum += d.div_ceil(qi);
        qi = qi.saturating_mul(q as u64);
    }
    sum
}

/// Largest `k` with `g_q(k, d) <= n`; an upper bound on the dimension of
/// any `[n, k, d]_q` code. Zero when `n < d`.
pub fn griesmer_kopt(n: u64, d: u64, q: u32) -> usize {
    if d == 0 || n < d {
        return 0;
    }
    let mut k = 0;
    while griesmer(k + 1, d, q) <= n {
        k += 1;
    }
    k
}

/// Singleton-type bound `d <= n - k - ⌈k/r⌉ + 2` for codes with locality `r`.
pub fn singleton_locality_bound(n: u64, k: usize, r: usize) -> Result<i64> {
    if r == 0 || r > k {
        return Err(Error::BadR { r, reason: format!("need 1 <= r <= k = {k}") });
    }
    Ok(n as i64 - k as i64 - k.div_ceil(r) as i64 + 2)
}

/// Dimension bound `k <= min_t { r t + kopt(n - t(r+1), d) }` with a
/// pluggable `kopt(n, d)`. The residual term is zero once
/// `n - t(r+1) < d`; `t` runs up to `⌈kopt(n, d) / r⌉`, beyond which the
/// `r t` term alone exceeds the `t = 0` value.
pub fn cm_bound(n: u64, d: u64, r: usize, kopt: &dyn Fn(u64, u64) -> usize) -> usize {
    assert!(r >= 1, "locality must be positive");
    let k0 = kopt(n, d);
    let tmax = k0.div_ceil(r) as u64;
    (0..=tmax)
        .map(|t| {
            let used = t * (r as u64 + 1);
            let residual = if used <= n && n - used >= d { kopt(n - used, d) } else { 0 };
            r * t as usize + residual
        })
        .min()
        .unwrap()
}

/// [`cm_bound`] with the Griesmer inversion as `kopt`.
pub fn cm_bound_griesmer(n: u64, d: u64, r: usize, q: u32) -> usize {
    cm_bound(n, d, r, &|n, d| griesmer_kopt(n, d, q))
}

/// Bounds on every point multiplicity of a multiset with cardinality `n`
/// whose hyperplanes all carry at most `n - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityBounds {
    /// Floor of `((n-d)[k-1]_q - n[k-2]_q) / q^(k-2)`; may be negative,
    /// meaning no multiset exists.
    pub upper: i64,
    /// `max(0, n - (n-d) q)`.
    pub lower: u64,
}

/// Point multiplicity bounds from counting hyperplanes through and
/// avoiding a point. Requires `k >= 3`.
pub fn point_multiplicity_bounds(n: u64, d: u64, k: usize, q: u32) -> Result<MultiplicityBounds> {
    if k < 3 {
        return Err(Error::BadK { k, reason: "the multiplicity bounds need k >= 3".into() });
    }
    if d > n {
        return Err(Error::OutOfRange { value: d, reason: format!("distance exceeds length {n}") });
    }
    Ok(MultiplicityBounds { upper: multiplicity_upper(n, d, k, q), lower: multiplicity_lower(n, d, q) })
}

pub(crate) fn multiplicity_upper(n: u64, d: u64, k: usize, q: u32) -> i64 {
    let num = (n - d) as i128 * point_count(k as u32 - 1, q as u64) as i128
        - n as i128 * point_count(k as u32 - 2, q as u64) as i128;
    let den = (q as i128).pow(k as u32 - 2);
    num.div_euclid(den) as i64
}

/// Lower multiplicity bound; valid for `k >= 2`.
pub(crate) fn multiplicity_lower(n: u64, d: u64, q: u32) -> u64 {
    n.saturating_sub((n - d) * q as u64)
}

/// Distance from which the Griesmer bound is known to be attained for
/// dimension `k`: `(k-2) q^(k-1) - (k-1) q^(k-2) + 1`.
pub fn griesmer_attainment_threshold(k: usize, q: u32) -> Result<u64> {
    if k < 3 {
        return Err(Error::BadK { k, reason: "closed forms cover k <= 2".into() });
    }
    let q = q as u64;
    Ok((k as u64 - 2) * q.pow(k as u32 - 1) - (k as u64 - 1) * q.pow(k as u32 - 2) + 1)
}

/// `⌈d / q^(k-1)⌉ · [k]_q`, a multiplicity cap that never cuts off an
/// optimal solution.
pub fn default_lambda(k: usize, d: u64, q: u32) -> u64 {
    let qk1 = (q as u64).pow(k as u32 - 1);
    d.div_ceil(qk1) * point_count(k as u32, q as u64)
}

/// Shortest length of a spanning multiset in PG(k-1, q) with locality `r`
/// and no distance requirement: `2k` for `r = 1`, `⌈3k/2⌉` for `r = 2`,
/// `k + 1` for `r = k`.
pub fn min_length_no_distance(k: usize, r: usize) -> Result<usize> {
    match r {
        1 => Ok(2 * k),
        2 if k >= 2 => Ok((3 * k).div_ceil(2)),
        _ if r == k => Ok(k + 1),
        _ => Err(Error::BadR { r, reason: "closed form known for r in {1, 2, k}".into() }),
    }
}
