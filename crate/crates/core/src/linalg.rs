//! Sparse fraction-free elimination over the integers, plus small dense
//! rational helpers.
//!
//! The echelon basis is canonical for the row space: pivot columns are the
//! leading columns of the row space and the reduction of a vector against the
//! basis is the unique representative supported on non-pivot columns. Rows are
//! combined integrally (cross-multiplication) and stripped of their content
//! after every step, so entries stay small and no fractions ever appear.

use crate::rat::{Int, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Sparse integer row: `(column, coefficient)` sorted by column, no zeros.
pub type IntRow = Vec<(usize, Int)>;
/// Sparse rational vector in the same layout.
pub type RatRow = Vec<(usize, Rat)>;

fn strip_content(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = Int::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    for (_, c) in row.iter_mut() {
        *c = &*c / &g;
    }
}

/// `a*x + b*y` for sorted sparse rows.
fn combine(a: &Int, x: &IntRow, b: &Int, y: &IntRow) -> IntRow {
    let mut out = IntRow::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let next = match (x.get(i), y.get(j)) {
            (Some(&(cx, _)), Some(&(cy, _))) => {
                if cx < cy {
                    let v = a * &x[i].1;
                    i += 1;
                    (cx, v)
                } else if cy < cx {
                    let v = b * &y[j].1;
                    j += 1;
                    (cy, v)
                } else {
                    let v = a * &x[i].1 + b * &y[j].1;
                    i += 1;
                    j += 1;
                    (cx, v)
                }
            }
            (Some(&(cx, _)), None) => {
                let v = a * &x[i].1;
                i += 1;
                (cx, v)
            }
            (None, Some(&(cy, _))) => {
                let v = b * &y[j].1;
                j += 1;
                (cy, v)
            }
            (None, None) => break,
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

/// Incremental integer echelon basis of a row space.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: Vec<IntRow>,
    by_pivot: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.by_pivot.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.by_pivot.contains_key(&col)
    }

    pub fn rows(&self) -> &[IntRow] {
        &self.rows
    }

    /// Inserts a row, eliminating against existing pivots. Returns `true` if
    /// the rank grew.
    pub fn insert(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else {
                return false;
            };
            match self.by_pivot.get(&lead) {
                Some(&idx) => {
                    let scale = self.rows[idx][0].1.clone();
                    let neg = -row[0].1.clone();
                    row = combine(&scale, &row, &neg, &self.rows[idx].clone());
                }
                None => {
                    strip_content(&mut row);
                    self.by_pivot.insert(lead, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    /// Inserts a rational row after clearing denominators.
    pub fn insert_rat(&mut self, row: &RatRow) -> bool {
        self.insert(clear_denominators(row))
    }

    /// Canonical remainder of `v` modulo the row space: the unique vector
    /// congruent to `v` supported on non-pivot columns.
    pub fn reduce(&self, v: &RatRow) -> RatRow {
        let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, x) in v {
            if !x.is_zero() {
                let e = map.entry(*c).or_insert_with(Rat::zero);
                *e += x;
            }
        }
        let mut scan_from = 0usize;
        loop {
            let hit = map
                .range(scan_from..)
                .find(|(c, x)| self.by_pivot.contains_key(c) && !x.is_zero())
                .map(|(c, _)| *c);
            let Some(c) = hit else { break };
            let idx = self.by_pivot[&c];
            let prow = &self.rows[idx];
            let factor = map[&c].clone() / Rat::from_integer(prow[0].1.clone());
            for (col, coef) in prow {
                let e = map.entry(*col).or_insert_with(Rat::zero);
                *e -= &factor * Rat::from_integer(coef.clone());
            }
            map.remove(&c);
            scan_from = c;
        }
        map.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

/// Scales a rational row to a content-free integer row.
pub fn clear_denominators(row: &RatRow) -> IntRow {
    let mut lcm = Int::from(1);
    for (_, x) in row {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: IntRow = row
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    strip_content(&mut out);
    out
}

/// Rank of a set of rational rows.
pub fn rank_rat(rows: &[RatRow]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert_rat(r);
    }
    ech.rank()
}

/// Dense Gauss-Jordan over the rationals. Returns the rank; `m` becomes its
/// reduced row-echelon form. Used as the independent oracle against the
/// fraction-free path and for small inversions.
pub fn rref_dense(m: &mut [Vec<Rat>]) -> usize {
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x /= &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..ncols {
                    let sub = &f * &m[rank][c];
                    m[r][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Inverse of a square rational matrix, if invertible.
pub fn invert_dense(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rat::from_integer(Int::from(1))
                } else {
                    Rat::zero()
                }
            }));
            r
        })
        .collect();
    rref_dense(&mut aug);
    // the augmented block keeps the row rank at n, so singularity shows up
    // as a pivot escaping the left block, not as a rank drop
    for (i, row) in aug.iter().enumerate() {
        for (j, x) in row[..n].iter().enumerate() {
            let want = Rat::from_integer(Int::from((i == j) as i64));
            if *x != want {
                return None;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Matrix-vector product for dense rational data.
pub fn matvec(a: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}
