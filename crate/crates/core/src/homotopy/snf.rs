//! Invariant factors of integer matrices.
//!
//! Boundary matrices of nerves are very sparse and almost entirely reducible
//! by pivots of absolute value 1. Those are eliminated first in `i64` with
//! checked arithmetic; the (usually tiny) remainder is diagonalized densely
//! over arbitrary-precision integers.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by rows, each row sorted by column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![Vec::new(); rows] }
    }

    /// Adds `value` at `(r, c)`. Rows must be finished with [`Self::normalize`]
    /// before use.
    pub fn push(&mut self, r: usize, c: usize, value: i64) {
        self.entries[r].push((c as u32, value));
    }

    /// Sorts every row, merges duplicates and drops zeros.
    pub fn normalize(&mut self) {
        for row in &mut self.entries {
            row.sort_unstable_by_key(|e| e.0);
            let mut out: Vec<(u32, i64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => out.push((c, v)),
                }
            }
            out.retain(|e| e.1 != 0);
            *row = out;
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &v)| (c as u32, v)).collect())
            .collect();
        SparseMatrix { rows: rows.len(), cols, entries }
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }
}

/// Nonzero invariant factors `s₁ | s₂ | … | s_r` (so `r` is the rank).
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigUint> {
    let mut state = Elimination::new(m);
    let units = match state.run() {
        Some(units) => units,
        // Overflow in the sparse phase: start again exactly.
        None => return dense_invariant_factors(&to_dense(m.entries.iter().map(|r| r.as_slice()), m.cols)),
    };
    let remainder = state.remainder();
    let mut factors = vec![BigUint::one(); units];
    factors.extend(dense_invariant_factors(&remainder));
    factors
}

pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

struct Elimination {
    rows: Vec<Vec<(u32, i64)>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    /// Rows that (may) hold an entry in each column; stale entries are
    /// filtered on use.
    col_rows: Vec<Vec<u32>>,
    cols: usize,
}

impl Elimination {
    fn new(m: &SparseMatrix) -> Self {
        let mut col_rows = vec![Vec::new(); m.cols];
        for (r, row) in m.entries.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c as usize].push(r as u32);
            }
        }
        Elimination {
            rows: m.entries.clone(),
            row_alive: vec![true; m.rows],
            col_alive: vec![true; m.cols],
            col_rows,
            cols: m.cols,
        }
    }

    /// Eliminates unit pivots until none is left; returns how many, or `None`
    /// on overflow.
    fn run(&mut self) -> Option<usize> {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
            self.rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i as u32))).collect();
        let mut units = 0;
        let mut scratch = Vec::new();
        while let Some(Reverse((len, r))) = heap.pop() {
            let r = r as usize;
            if !self.row_alive[r] || self.rows[r].len() != len || len == 0 {
                continue;
            }
            // Unit entry of this row whose column is shortest.
            let pivot = self.rows[r]
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| self.col_rows[e.0 as usize].len())
                .copied();
            let Some((c, p)) = pivot else { continue };
            let pivot_row = core::mem::take(&mut self.rows[r]);
            self.row_alive[r] = false;
            self.col_alive[c as usize] = false;
            let targets = core::mem::take(&mut self.col_rows[c as usize]);
            for &i in &targets {
                let i = i as usize;
                if i == r || !self.row_alive[i] {
                    continue;
                }
                let Ok(pos) = self.rows[i].binary_search_by_key(&c, |e| e.0) else { continue };
                // row_i -= (a_ic / p) * pivot_row, with p = ±1.
                let factor = self.rows[i][pos].1 * p;
                scratch.clear();
                let (a, b) = (&self.rows[i], &pivot_row);
                let (mut x, mut y) = (0, 0);
                while x < a.len() || y < b.len() {
                    let ca = a.get(x).map_or(u32::MAX, |e| e.0);
                    let cb = b.get(y).map_or(u32::MAX, |e| e.0);
                    if ca < cb {
                        scratch.push(a[x]);
                        x += 1;
                    } else if cb < ca {
                        let v = b[y].1.checked_mul(factor)?.checked_neg()?;
                        scratch.push((cb, v));
                        self.col_rows[cb as usize].push(i as u32);
                        y += 1;
                    } else {
                        let v = a[x].1.checked_sub(b[y].1.checked_mul(factor)?)?;
                        if v != 0 {
                            scratch.push((ca, v));
                        }
                        x += 1;
                        y += 1;
                    }
                }
                core::mem::swap(&mut self.rows[i], &mut scratch);
                if !self.rows[i].is_empty() {
                    heap.push(Reverse((self.rows[i].len(), i as u32)));
                }
            }
            units += 1;
        }
        Some(units)
    }

    fn remainder(&self) -> Vec<Vec<BigInt>> {
        let mut col_index = vec![u32::MAX; self.cols];
        let mut next = 0u32;
        for row in self.rows.iter().enumerate().filter(|(i, _)| self.row_alive[*i]).map(|(_, r)| r) {
            for &(c, _) in row {
                if self.col_alive[c as usize] && col_index[c as usize] == u32::MAX {
                    col_index[c as usize] = next;
                    next += 1;
                }
            }
        }
        let mut dense = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if !self.row_alive[i] || row.is_empty() {
                continue;
            }
            let mut line = vec![BigInt::zero(); next as usize];
            for &(c, v) in row {
                debug_assert!(self.col_alive[c as usize]);
                line[col_index[c as usize] as usize] = BigInt::from(v);
            }
            dense.push(line);
        }
        dense
    }
}

fn to_dense<'a>(rows: impl Iterator<Item = &'a [(u32, i64)]>, cols: usize) -> Vec<Vec<BigInt>> {
    rows.map(|row| {
        let mut line = vec![BigInt::zero(); cols];
        for &(c, v) in row {
            line[c as usize] = BigInt::from(v);
        }
        line
    })
    .collect()
}

/// Diagonalizes by unimodular row and column operations, then rearranges the
/// diagonal into a divisibility chain.
pub fn dense_invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigUint> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal: Vec<BigUint> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let delta = &q * &a[i][t];
                    a[i][j] -= delta;
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
            // A smaller remainder appeared in row or column t: make it the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diagonal.push(a[t][t].magnitude().clone());
        t += 1;
    }
    divisibility_chain(diagonal)
}

/// Rewrites a diagonal `diag(d₁, …, d_r)` (all nonzero) into the equivalent
/// divisibility chain by repeated `(a, b) -> (gcd, lcm)`.
fn divisibility_chain(mut d: Vec<BigUint>) -> Vec<BigUint> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}
