//! Abelian ideals of the Borel subalgebra as sets of positive roots, their
//! enumeration, and the bijection with the doubled-alcove elements of the
//! affine Weyl group.

use crate::affweyl::{AffElt, AffWeyl};
use crate::cartan::RootSystem;
use crate::error::Error;
use crate::Result;
use num_traits::Zero;
use std::collections::HashMap;

/// Bitmask over positive-root indices. Rank caps at E8's 120 roots.
pub type IdealMask = u128;

pub fn mask_to_indices(mask: IdealMask) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// Direct check of the two defining properties, used as the oracle for the
/// pruned enumeration: closed upward under adding simple roots, and no two
/// members summing to a root.
pub fn is_abelian_ideal(rs: &RootSystem, mask: IdealMask) -> bool {
    let members = mask_to_indices(mask);
    for &i in &members {
        for s in 0..rs.rank {
            let mut up = rs.pos_roots[i].clone();
            up[s] += 1;
            if let Some(j) = rs.pos_root_index(&up) {
                if mask & (1 << j) == 0 {
                    return false;
                }
            }
        }
    }
    for (a, &i) in members.iter().enumerate() {
        for &j in &members[a..] {
            let sum: Vec<i64> = rs.pos_roots[i]
                .iter()
                .zip(&rs.pos_roots[j])
                .map(|(x, y)| x + y)
                .collect();
            if rs.is_pos_root(&sum) {
                return false;
            }
        }
    }
    true
}

/// All abelian ideals, by descending-height depth-first search: a root may
/// join only if every cover already has and no member sums with it to a
/// root. Output is sorted by (size, mask).
pub fn enumerate_ideals(rs: &RootSystem) -> Vec<IdealMask> {
    let m = rs.num_pos_roots();
    let mut out = Vec::new();
    // covers[i]: indices of pos roots alpha_i + alpha_s
    let covers: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..rs.rank)
                .filter_map(|s| {
                    let mut up = rs.pos_roots[i].clone();
                    up[s] += 1;
                    rs.pos_root_index(&up)
                })
                .collect()
        })
        .collect();
    let mut stack: Vec<(usize, IdealMask)> = vec![(m, 0)];
    while let Some((remaining, mask)) = stack.pop() {
        if remaining == 0 {
            out.push(mask);
            continue;
        }
        let i = remaining - 1;
        stack.push((i, mask));
        let closed = covers[i].iter().all(|&j| mask & (1 << j) != 0);
        if closed {
            let no_sum = mask_to_indices(mask).into_iter().all(|j| {
                let sum: Vec<i64> = rs.pos_roots[i]
                    .iter()
                    .zip(&rs.pos_roots[j])
                    .map(|(x, y)| x + y)
                    .collect();
                !rs.is_pos_root(&sum)
            });
            let doubled: Vec<i64> = rs.pos_roots[i].iter().map(|x| 2 * x).collect();
            if no_sum && !rs.is_pos_root(&doubled) {
                stack.push((i, mask | (1 << i)));
            }
        }
    }
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

/// Ideals avoiding the hyperplane orthogonal to the highest root: every
/// member pairs nontrivially with theta.
pub fn xi_circle(rs: &RootSystem, ideals: &[IdealMask]) -> Vec<IdealMask> {
    ideals
        .iter()
        .copied()
        .filter(|&mask| {
            mask_to_indices(mask)
                .into_iter()
                .all(|i| !rs.inner_ii(&rs.pos_roots[i], &rs.theta).is_zero())
        })
        .collect()
}

pub struct ZetaMatch<'a> {
    /// Parallel to the ideal list passed in.
    pub elements: Vec<&'a AffElt>,
}

/// Match every abelian ideal with the doubled-alcove element whose
/// inversions are exactly `delta - alpha` over the ideal's members.
pub fn zeta_match<'a>(
    rs: &RootSystem,
    aw: &AffWeyl,
    elements: &'a [AffElt],
    ideals: &[IdealMask],
) -> Result<ZetaMatch<'a>> {
    let mut by_mask: HashMap<IdealMask, &AffElt> = HashMap::new();
    for w in elements {
        let inv = aw.inversions(&w.word)?;
        let mut mask: IdealMask = 0;
        for (gamma, k) in &inv {
            if *k != 1 {
                return Err(Error::Internal(format!(
                    "doubled-alcove element {:?} has inversion at delta level {k}",
                    w.word
                )));
            }
            let neg: Vec<i64> = gamma.iter().map(|x| -x).collect();
            let idx = rs.pos_root_index(&neg).ok_or_else(|| {
                Error::Internal(format!(
                    "doubled-alcove element {:?} has inversion {gamma:?} not of the form delta - alpha",
                    w.word
                ))
            })?;
            mask |= 1 << idx;
        }
        if mask.count_ones() as usize != w.len() {
            return Err(Error::Internal("inversion multiset collapsed".into()));
        }
        if by_mask.insert(mask, w).is_some() {
            return Err(Error::Internal(
                "two elements share an inversion mask".into(),
            ));
        }
    }
    let mut out = Vec::with_capacity(ideals.len());
    for &ideal in ideals {
        match by_mask.get(&ideal) {
            Some(w) => out.push(*w),
            None => {
                return Err(Error::ZetaUnmatched {
                    ideal: mask_to_indices(ideal),
                })
            }
        }
    }
    Ok(ZetaMatch { elements: out })
}
