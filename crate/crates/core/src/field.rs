//! Table-driven arithmetic in GF(q) for the small orders used throughout
//! the crate.
//!
//! Elements are the integers `0..q`. For extension fields the base-`p`
//! digits of an element are the coefficients of a polynomial over GF(p),
//! least significant digit first (the constant term). The moduli are fixed:
//!
//! | q | modulus     |
//! |---|-------------|
//! | 4 | x^2 + x + 1 |
//! | 8 | x^3 + x + 1 |
//! | 9 | x^2 + 1     |

use crate::error::{Error, Result};

/// A field element. All supported orders fit in a byte.
pub type Elem = u8;

pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Precomputed arithmetic tables for one finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldContext {
    q: u32,
    p: u32,
    e: u32,
    add_table: Vec<Elem>,
    mul_table: Vec<Elem>,
    neg_table: Vec<Elem>,
    inv_table: Vec<Elem>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Modulus coefficients, constant term first, leading coefficient last.
fn modulus(q: u32) -> Option<(u32, u32, &'static [u32])> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, &[0, 1])),
        4 => Some((2, 2, &[1, 1, 1])),
        8 => Some((2, 3, &[1, 1, 0, 1])),
        9 => Some((3, 2, &[1, 0, 1])),
        _ => None,
    }
}

fn digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn from_digits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let e = m.len() - 1;
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // m is monic; reduce from the top degree down
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + p * p - c * mi % p) % p;
        }
    }
    prod.truncate(e);
    prod
}

impl FieldContext {
    /// Builds GF(q) for `q` in {2,3,4,5,7,8,9}.
    pub fn new(q: u32) -> Result<Self> {
        let (p, e, m) = modulus(q).ok_or(Error::UnsupportedOrder(q))?;
        let qs = q as usize;
        let mut add_table = vec![0; qs * qs];
        let mut mul_table = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add_table[(a * q + b) as usize] = from_digits(&sum, p) as Elem;
                let prod = if e == 1 { vec![a * b % p] } else { poly_mul_mod(&da, &db, m, p) };
                mul_table[(a * q + b) as usize] = from_digits(&prod, p) as Elem;
            }
        }
        let mut neg_table = vec![0; qs];
        let mut inv_table = vec![0; qs];
        for a in 0..qs {
            neg_table[a] = (0..qs).find(|&b| add_table[a * qs + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv_table[a] = (1..qs).find(|&b| mul_table[a * qs + b] == 1).unwrap() as Elem;
            }
        }
        Ok(FieldContext { q, p, e, add_table, mul_table, neg_table, inv_table })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add_table[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul_table[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg_table[a as usize]
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no inverse");
        self.inv_table[a as usize]
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q as Elem
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.q as Elem
    }

    /// Dot product of two equal-length vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `dst += c * src`, element-wise.
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        if c == 0 {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.add(*d, self.mul(c, s));
        }
    }

    /// Rank of a list of vectors (rows) by Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<Elem>]) -> usize {
        let mut m: Vec<Vec<Elem>> = rows.to_vec();
        self.row_reduce(&mut m).len()
    }

    /// Reduces `m` in place to reduced row echelon form and returns the
    /// pivot columns. Zero rows are dropped.
    pub fn row_reduce(&self, m: &mut Vec<Vec<Elem>>) -> Vec<usize> {
        let ncols = m.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            let Some(sel) = (row..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(row, sel);
            let inv = self.inv(m[row][col]);
            for x in m[row].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = m[row].clone();
            for (i, r) in m.iter_mut().enumerate() {
                if i != row && r[col] != 0 {
                    let c = self.neg(r[col]);
                    self.axpy(r, c, &pivot_row);
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        m.truncate(row);
        pivots
    }

    /// Basis of the right null space `{x : M x = 0}` of a matrix given by rows
    /// with `ncols` columns.
    pub fn null_space(&self, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
        let mut m: Vec<Vec<Elem>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
        let pivots = self.row_reduce(&mut m);
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = self.neg(m[r][free]);
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_axioms() {
        let f = FieldContext::new(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf3_inverse_of_two() {
        let f = FieldContext::new(3).unwrap();
        assert_eq!(f.inv(2), 2);
    }

    #[test]
    fn gf4_x_times_x() {
        // x * x = x^2 = x + 1 modulo x^2 + x + 1
        let f = FieldContext::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn gf8_and_gf9_spot_values() {
        let f8 = FieldContext::new(8).unwrap();
        // x^3 = x + 1 -> x * x^2 = 3
        assert_eq!(f8.mul(2, 4), 3);
        let f9 = FieldContext::new(9).unwrap();
        // x^2 = -1 = 2 in GF(9) = GF(3)[x]/(x^2+1); x is digit 1 -> element 3
        assert_eq!(f9.mul(3, 3), 2);
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 11, 16] {
            assert_eq!(FieldContext::new(q), Err(Error::UnsupportedOrder(q)));
        }
    }

    #[test]
    fn exhaustive_axioms_all_orders() {
        for q in SUPPORTED_ORDERS {
            let f = FieldContext::new(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                assert_eq!(f.pow(a, q as u64), a, "Frobenius in GF({q})");
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0, "zero divisor in GF({q})");
                    }
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn null_space_is_orthogonal() {
        let f = FieldContext::new(3).unwrap();
        let rows = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 2]];
        let ns = f.null_space(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert_eq!(f.dot(r, v), 0);
            }
        }
    }
}
