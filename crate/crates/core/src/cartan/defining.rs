//! Defining representations of the classical families.
//!
//! Standard generator matrices are seeded per family and extended to the
//! whole basis along the same decomposition chains that define the Chevalley
//! basis, so the matrices match this crate's structure constants exactly.
//! Seed relations are verified at construction.

use super::lie::LieAlgebra;
use crate::error::Error;
use crate::rat::{rat_i64, Rat};
use crate::Result;
use num_traits::Zero;

pub type Mat = Vec<Vec<Rat>>;

pub struct DefiningRep {
    /// Matrix size.
    pub n: usize,
    /// One matrix per basis element, in basis order.
    pub mats: Vec<Mat>,
}

fn zero(n: usize) -> Mat {
    vec![vec![Rat::zero(); n]; n]
}

fn unit(n: usize, i: usize, j: usize, c: i64) -> Mat {
    let mut m = zero(n);
    m[i][j] = rat_i64(c);
    m
}

fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    let t = &a[i][k] * &b[k][j];
                    out[i][j] += t;
                }
            }
        }
    }
    out
}

pub fn comm(a: &Mat, b: &Mat) -> Mat {
    let ab = mul(a, b);
    let ba = mul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(a: &Mat, c: &Rat) -> Mat {
    a.iter()
        .map(|row| row.iter().map(|x| x * c).collect())
        .collect()
}

pub fn trace(a: &Mat) -> Rat {
    let mut t = Rat::zero();
    for (i, row) in a.iter().enumerate() {
        t += &row[i];
    }
    t
}

fn is_zero_mat(a: &Mat) -> bool {
    a.iter().all(|row| row.iter().all(|x| x.is_zero()))
}

fn eq_mat(a: &Mat, b: &Mat) -> bool {
    a.iter()
        .zip(b)
        .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x == y))
}

/// Simple-root generator matrices `(e_i, f_i)` for the classical families.
fn seeds(letter: char, l: usize) -> Result<(usize, Vec<Mat>, Vec<Mat>)> {
    let (n, pairs): (usize, Vec<(Mat, Mat)>) = match letter {
        'A' => {
            let n = l + 1;
            (
                n,
                (0..l)
                    .map(|i| (unit(n, i, i + 1, 1), unit(n, i + 1, i, 1)))
                    .collect(),
            )
        }
        'B' => {
            let n = 2 * l + 1;
            let mut pairs = Vec::new();
            for k in 0..l - 1 {
                let e = add(
                    &unit(n, k, k + 1, 1),
                    &unit(n, 2 * l - k - 1, 2 * l - k, -1),
                );
                let f = add(
                    &unit(n, k + 1, k, 1),
                    &unit(n, 2 * l - k, 2 * l - k - 1, -1),
                );
                pairs.push((e, f));
            }
            // short simple root; its f carries the factor 2 so [e,f] is the
            // correct (long) coroot
            let e = add(&unit(n, l - 1, l, 1), &unit(n, l, l + 1, -1));
            let f = add(&unit(n, l, l - 1, 2), &unit(n, l + 1, l, -2));
            pairs.push((e, f));
            (n, pairs)
        }
        'C' => {
            let n = 2 * l;
            let mut pairs = Vec::new();
            for k in 0..l - 1 {
                let e = add(&unit(n, k, k + 1, 1), &unit(n, l + k + 1, l + k, -1));
                let f = add(&unit(n, k + 1, k, 1), &unit(n, l + k, l + k + 1, -1));
                pairs.push((e, f));
            }
            pairs.push((unit(n, l - 1, 2 * l - 1, 1), unit(n, 2 * l - 1, l - 1, 1)));
            (n, pairs)
        }
        'D' => {
            let n = 2 * l;
            let mut pairs = Vec::new();
            for k in 0..l - 1 {
                let e = add(
                    &unit(n, k, k + 1, 1),
                    &unit(n, 2 * l - k - 2, 2 * l - k - 1, -1),
                );
                let f = add(
                    &unit(n, k + 1, k, 1),
                    &unit(n, 2 * l - k - 1, 2 * l - k - 2, -1),
                );
                pairs.push((e, f));
            }
            let e = add(&unit(n, l - 2, l, 1), &unit(n, l - 1, l + 1, -1));
            let f = add(&unit(n, l, l - 2, 1), &unit(n, l + 1, l - 1, -1));
            pairs.push((e, f));
            (n, pairs)
        }
        _ => {
            return Err(Error::Usage(format!(
                "no defining matrix representation for {letter}{l}; \
                 only the classical types A, B, C, D carry one here"
            )))
        }
    };
    let (es, fs) = pairs.into_iter().unzip();
    Ok((n, es, fs))
}

pub fn defining_rep(g: &LieAlgebra) -> Result<DefiningRep> {
    let rs = &g.rs;
    let l = rs.rank;
    let (n, es, fs) = seeds(rs.letter, l)?;
    let hs: Vec<Mat> = es.iter().zip(&fs).map(|(e, f)| comm(e, f)).collect();

    // seed relations against this root system's Cartan matrix
    for i in 0..l {
        for j in 0..l {
            if i != j {
                if !is_zero_mat(&comm(&es[i], &fs[j])) {
                    return Err(Error::Internal(format!(
                        "defining rep seeds: [e_{i}, f_{j}] != 0"
                    )));
                }
                if !is_zero_mat(&comm(&hs[i], &hs[j])) {
                    return Err(Error::Internal(
                        "defining rep seeds: Cartan not abelian".into(),
                    ));
                }
            }
            let c = rat_i64(rs.cartan[i][j]);
            if !eq_mat(&comm(&hs[i], &es[j]), &scale(&es[j], &c)) {
                return Err(Error::Internal(format!(
                    "defining rep seeds: [h_{i}, e_{j}] has wrong pairing"
                )));
            }
            if !eq_mat(&comm(&hs[i], &fs[j]), &scale(&fs[j], &-c)) {
                return Err(Error::Internal(format!(
                    "defining rep seeds: [h_{i}, f_{j}] has wrong pairing"
                )));
            }
        }
    }

    let m = g.n_pos;
    let mut pos_mats: Vec<Option<Mat>> = vec![None; m];
    let mut neg_mats: Vec<Option<Mat>> = vec![None; m];
    for i in 0..l {
        pos_mats[rs.simple_idx[i]] = Some(es[i].clone());
        neg_mats[rs.simple_idx[i]] = Some(fs[i].clone());
    }
    // roots are sorted by height, so chain targets are already filled
    for gi in 0..m {
        if let Some((s, beta_idx, nval)) = g.chains[gi] {
            let inv = rat_i64(1) / rat_i64(nval);
            let e_part = comm(&es[s], pos_mats[beta_idx].as_ref().unwrap());
            pos_mats[gi] = Some(scale(&e_part, &inv));
            let f_part = comm(&fs[s], neg_mats[beta_idx].as_ref().unwrap());
            neg_mats[gi] = Some(scale(&f_part, &-inv));
        }
    }
    let mut mats: Vec<Mat> = Vec::with_capacity(g.dim);
    for mopt in pos_mats {
        mats.push(mopt.ok_or_else(|| Error::Internal("missing chain matrix".into()))?);
    }
    for i in 0..l {
        mats.push(hs[i].clone());
    }
    for mopt in neg_mats {
        mats.push(mopt.ok_or_else(|| Error::Internal("missing chain matrix".into()))?);
    }
    Ok(DefiningRep { n, mats })
}

impl DefiningRep {
    /// Matrix of a general element.
    pub fn of(&self, v: &[(usize, Rat)]) -> Mat {
        let mut out = zero(self.n);
        for (idx, c) in v {
            for (i, row) in self.mats[*idx].iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        out[i][j] += c * x;
                    }
                }
            }
        }
        out
    }
}
