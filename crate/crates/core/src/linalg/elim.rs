//! Sparse-row Gaussian elimination engines.
//!
//! Rows are sorted `(column, value)` lists with no explicit zeros. Both engines
//! pick pivots column by column, left to right, taking the first row (top to
//! bottom) among the not-yet-pivoted rows that has a nonzero entry there.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{inv_mod, mul_mod};

pub(crate) type IntRow = Vec<(usize, BigInt)>;
pub(crate) type ModRow = Vec<(usize, u64)>;

/// Result of an elimination: the nonzero rows (in pivot order) and the pivot
/// column of each.
#[derive(Debug, Clone)]
pub(crate) struct Echelon<T> {
    pub rows: Vec<Vec<(usize, T)>>,
    pub pivots: Vec<usize>,
}

impl<T> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_columns(&self, ncols: usize) -> Vec<usize> {
        let mut is_pivot = vec![false; ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

fn entry_at<T>(row: &[(usize, T)], col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|i| &row[i].1)
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * target - b * pivot`, merged.
fn int_combine(target: &IntRow, a: &BigInt, pivot: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, a * &target[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &pivot[j].1)));
            j += 1;
        } else {
            let v = a * &target[i].1 - b * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Fraction-free elimination over the integers. Every row update is the
/// cross-multiplication `a' * row - b' * pivot` with `a', b'` the cofactors
/// of the gcd of the two entries, followed by removal of the row content.
/// With `reduced`, pivots are also cleared from the rows above.
pub(crate) fn integer_echelon(mut rows: Vec<IntRow>, ncols: usize, reduced: bool) -> Echelon<BigInt> {
    rows.retain(|r| !r.is_empty());
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r][0].0 == col) else {
            continue;
        };
        rows.swap(next, found);
        let (head, tail) = rows.split_at_mut(next + 1);
        let pivot = &head[next];
        let lead = &pivot[0].1;
        for row in tail.iter_mut() {
            if row[0].0 != col {
                continue;
            }
            eliminate_int(row, pivot, lead, col);
        }
        if reduced {
            let (above, rest) = rows.split_at_mut(next);
            let pivot = &rest[0];
            let lead = &pivot[0].1;
            for row in above.iter_mut() {
                if entry_at(row, col).is_some() {
                    eliminate_int(row, pivot, lead, col);
                }
            }
        }
        pivots.push(col);
        next += 1;
        drop_empty_tail(&mut rows, next);
    }
    rows.truncate(next);
    Echelon { rows, pivots }
}

/// Removes rows that became zero below position `from`, keeping order.
fn drop_empty_tail<T>(rows: &mut Vec<Vec<T>>, from: usize) {
    if rows[from..].iter().any(|r| r.is_empty()) {
        let mut tail = rows.split_off(from);
        tail.retain(|r| !r.is_empty());
        rows.append(&mut tail);
    }
}

fn eliminate_int(row: &mut IntRow, pivot: &IntRow, lead: &BigInt, col: usize) {
    let b = entry_at(row, col).expect("entry present").clone();
    let g = lead.gcd(&b);
    let a = lead / &g;
    let b = b / &g;
    *row = int_combine(row, &a, pivot, &b);
    make_primitive(row);
}

/// `target - b * pivot` over GF(p).
fn mod_combine(target: &ModRow, pivot: &ModRow, b: u64, p: u64) -> ModRow {
    let nb = (p - b) % p;
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(target[i]);
            i += 1;
        } else if cj < ci {
            out.push((cj, mul_mod(nb, pivot[j].1, p)));
            j += 1;
        } else {
            let v = (target[i].1 + mul_mod(nb, pivot[j].1, p)) % p;
            if v != 0 {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Gaussian elimination over GF(p); pivot rows are scaled to a leading 1.
pub(crate) fn modular_echelon(mut rows: Vec<ModRow>, ncols: usize, p: u64, reduced: bool) -> Echelon<u64> {
    rows.retain(|r| !r.is_empty());
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r][0].0 == col) else {
            continue;
        };
        rows.swap(next, found);
        let inv = inv_mod(rows[next][0].1, p);
        for e in rows[next].iter_mut() {
            e.1 = mul_mod(e.1, inv, p);
        }
        let (head, tail) = rows.split_at_mut(next + 1);
        let pivot = &head[next];
        for row in tail.iter_mut() {
            if row[0].0 == col {
                let b = row[0].1;
                *row = mod_combine(row, pivot, b, p);
            }
        }
        if reduced {
            let (above, rest) = rows.split_at_mut(next);
            let pivot = &rest[0];
            for row in above.iter_mut() {
                if let Some(&b) = entry_at(row, col) {
                    *row = mod_combine(row, pivot, b, p);
                }
            }
        }
        pivots.push(col);
        next += 1;
        drop_empty_tail(&mut rows, next);
    }
    rows.truncate(next);
    Echelon { rows, pivots }
}
