//! Chevalley basis with integer structure constants.
//!
//! Basis order: positive root vectors in root order, then the simple coroots
//! `h_1..h_l`, then negative root vectors mirroring the positive order. Signs
//! are fixed by picking, for each non-simple positive root `gamma`, the
//! decomposition `gamma = alpha_s + beta` with `alpha_s` the least simple root
//! such that `gamma - alpha_s` is a root, and declaring that structure
//! constant positive; every other constant is forced from these by
//! antisymmetry and the zero-sum-triple proportionality.

use super::RootSystem;
use crate::error::Error;
use crate::linalg::invert_dense;
use crate::rat::{rat_i64, Rat};
use crate::Result;
use num_traits::Zero;
use sha2::{Digest, Sha256};
use std::collections::HashMap;

/// Sparse element of the Lie algebra over the basis, sorted by index.
pub type LieVec = Vec<(usize, Rat)>;

/// Sparse integer row used inside the bracket table.
type IVec = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub rs: RootSystem,
    /// Total dimension `2m + l`.
    pub dim: usize,
    /// Number of positive roots `m`.
    pub n_pos: usize,
    /// For each non-simple positive root: `(simple s, index of gamma - alpha_s,
    /// structure constant)` of its defining decomposition.
    pub chains: Vec<Option<(usize, usize, i64)>>,
    /// Dual basis with respect to the normalized form.
    pub dual: Vec<LieVec>,
    table: Vec<IVec>,
}

fn lookup(npp: &HashMap<(usize, usize), i64>, a: usize, b: usize) -> i64 {
    *npp.get(&(a, b))
        .expect("structure constant not yet computed")
}

/// Structure constant `N_{a,b}` for roots of arbitrary sign given the table
/// of positive-positive constants. `a + b` must be a root.
fn n_signed(rs: &RootSystem, npp: &HashMap<(usize, usize), i64>, a: &[i64], b: &[i64]) -> Rat {
    let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|x| -x).collect() };
    let apos = rs.is_pos_root(a);
    let bpos = rs.is_pos_root(b);
    if apos && bpos {
        let ia = rs.pos_root_index(a).unwrap();
        let ib = rs.pos_root_index(b).unwrap();
        return rat_i64(lookup(npp, ia, ib));
    }
    if !apos && !bpos {
        return -n_signed(rs, npp, &neg(a), &neg(b));
    }
    if !apos {
        return -n_signed(rs, npp, b, a);
    }
    // a positive, b negative
    let q = neg(b);
    let c: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    if rs.is_pos_root(&c) {
        // zero-sum triple (-a, q, c): N_{a,b} = -(c,c)/(a,a) N_{q,c}
        let iq = rs.pos_root_index(&q).unwrap();
        let ic = rs.pos_root_index(&c).unwrap();
        -(rs.inner_ii(&c, &c) / rs.inner_ii(a, a)) * rat_i64(lookup(npp, iq, ic))
    } else {
        // zero-sum triple (a, b, -c): N_{a,b} = (c,c)/(b,b) N_{-c,a}
        let mc = neg(&c);
        let imc = rs.pos_root_index(&mc).unwrap();
        let ia = rs.pos_root_index(a).unwrap();
        (rs.inner_ii(&c, &c) / rs.inner_ii(&q, &q)) * rat_i64(lookup(npp, imc, ia))
    }
}

impl LieAlgebra {
    pub fn new(rs: RootSystem) -> Result<Self> {
        let m = rs.num_pos_roots();
        let l = rs.rank;
        let dim = 2 * m + l;

        // Positive-positive structure constants by induction on height.
        let mut npp: HashMap<(usize, usize), i64> = HashMap::new();
        let mut chains: Vec<Option<(usize, usize, i64)>> = vec![None; m];
        let string_down = |beta: &[i64], s: usize| -> i64 {
            let mut p = 0i64;
            let mut cur = beta.to_vec();
            loop {
                cur[s] -= 1;
                if !rs.is_pos_root(&cur) {
                    break;
                }
                p += 1;
            }
            p
        };
        for g in 0..m {
            let gamma = rs.pos_roots[g].clone();
            if RootSystem::height(&gamma) < 2 {
                continue;
            }
            let mut special = None;
            for s in 0..l {
                let mut beta = gamma.clone();
                beta[s] -= 1;
                if rs.is_pos_root(&beta) {
                    special = Some((s, beta));
                    break;
                }
            }
            let (s, beta) =
                special.ok_or_else(|| Error::Internal("root with no simple descent".into()))?;
            let alpha: Vec<i64> = (0..l).map(|j| (j == s) as i64).collect();
            let ia = rs.pos_root_index(&alpha).unwrap();
            let ib = rs.pos_root_index(&beta).unwrap();
            let n0 = string_down(&beta, s) + 1;
            npp.insert((ia, ib), n0);
            npp.insert((ib, ia), -n0);
            chains[g] = Some((s, ib, n0));

            // remaining decompositions of gamma, forced via the Jacobi
            // identity against the special pair
            for xi_idx in 0..m {
                let xi = rs.pos_roots[xi_idx].clone();
                let eta: Vec<i64> = gamma.iter().zip(&xi).map(|(a, b)| a - b).collect();
                if !rs.is_pos_root(&eta) {
                    continue;
                }
                let eta_idx = rs.pos_root_index(&eta).unwrap();
                // Pairs containing alpha_s itself are the special pair in
                // some order; the Jacobi elimination below is only valid
                // when neither member is alpha_s (no Cartan term appears).
                if xi_idx >= eta_idx || xi_idx == ia || eta_idx == ia {
                    continue;
                }
                let sub =
                    |v: &[i64]| -> Vec<i64> { v.iter().zip(&alpha).map(|(x, a)| x - a).collect() };
                let neg_alpha: Vec<i64> = alpha.iter().map(|x| -x).collect();
                let mut acc = Rat::zero();
                let eta_m = sub(&eta);
                if rs.is_root(&eta_m) {
                    acc += n_signed(&rs, &npp, &eta, &neg_alpha) * n_signed(&rs, &npp, &eta_m, &xi);
                }
                let xi_m = sub(&xi);
                if rs.is_root(&xi_m) {
                    acc += n_signed(&rs, &npp, &neg_alpha, &xi) * n_signed(&rs, &npp, &xi_m, &eta);
                }
                let v = -acc / n_signed(&rs, &npp, &gamma, &neg_alpha);
                if !v.is_integer() {
                    return Err(Error::Internal(format!(
                        "non-integral structure constant for {gamma:?} = {xi:?} + {eta:?}"
                    )));
                }
                let vi = i64::try_from(v.to_integer())
                    .map_err(|_| Error::Internal("structure constant overflow".into()))?;
                npp.insert((xi_idx, eta_idx), vi);
                npp.insert((eta_idx, xi_idx), -vi);
            }
        }

        // Full bracket table over the ordered basis.
        let coords = |idx: usize| -> (i64, usize) {
            // (sign, pos-root index) for root vectors; sign 0 for Cartan
            if idx < m {
                (1, idx)
            } else if idx < m + l {
                (0, idx - m)
            } else {
                (-1, idx - m - l)
            }
        };
        let root_of = |idx: usize| -> Vec<i64> {
            let (sign, i) = coords(idx);
            rs.pos_roots[i].iter().map(|x| x * sign).collect()
        };
        let mut table: Vec<IVec> = vec![IVec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let (si, pi) = coords(i);
                let (sj, pj) = coords(j);
                let entry: IVec = if si == 0 && sj == 0 {
                    IVec::new()
                } else if si == 0 {
                    // [h_s, x_b] = <beta, alpha_s^vee> x_b
                    let beta = root_of(j);
                    let c = rs.pair_simple_coroot(&beta, pi);
                    if c == 0 {
                        IVec::new()
                    } else {
                        vec![(j, c)]
                    }
                } else if sj == 0 {
                    let beta = root_of(i);
                    let c = rs.pair_simple_coroot(&beta, pj);
                    if c == 0 {
                        IVec::new()
                    } else {
                        vec![(i, -c)]
                    }
                } else {
                    let a = root_of(i);
                    let b = root_of(j);
                    let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                    if sum.iter().all(|&x| x == 0) {
                        // [x_alpha, x_{-alpha}] = alpha^vee
                        let alpha = rs.pos_roots[pi].clone();
                        let co = rs.coroot(&alpha)?;
                        let sign = si;
                        co.iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(k, &c)| (m + k, sign * c))
                            .collect()
                    } else if rs.is_root(&sum) {
                        let nval = n_signed(&rs, &npp, &a, &b);
                        if !nval.is_integer() {
                            return Err(Error::Internal(
                                "non-integral mixed structure constant".into(),
                            ));
                        }
                        let nv = i64::try_from(nval.to_integer())
                            .map_err(|_| Error::Internal("constant overflow".into()))?;
                        let target = if rs.is_pos_root(&sum) {
                            rs.pos_root_index(&sum).unwrap()
                        } else {
                            let ns: Vec<i64> = sum.iter().map(|x| -x).collect();
                            m + l + rs.pos_root_index(&ns).unwrap()
                        };
                        if nv == 0 {
                            return Err(Error::Internal(format!(
                                "vanishing root-sum constant for {a:?} + {b:?}"
                            )));
                        }
                        vec![(target, nv)]
                    } else {
                        IVec::new()
                    }
                };
                table[i * dim + j] = entry;
            }
        }

        // Dual basis: root vectors pair only with their mirror; the Cartan
        // block inverts the coroot Gram matrix.
        let gram_h: Vec<Vec<Rat>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| rat_i64(4) * &rs.gram[i][j] / (&rs.gram[i][i] * &rs.gram[j][j]))
                    .collect()
            })
            .collect();
        let gram_h_inv = invert_dense(&gram_h)
            .ok_or_else(|| Error::Internal("degenerate Cartan form".into()))?;
        let mut dual: Vec<LieVec> = Vec::with_capacity(dim);
        for i in 0..dim {
            let (sign, p) = coords(i);
            if sign == 0 {
                let col: LieVec = (0..l)
                    .filter(|&k| !gram_h_inv[k][p].is_zero())
                    .map(|k| (m + k, gram_h_inv[k][p].clone()))
                    .collect();
                dual.push(col);
            } else {
                let beta = &rs.pos_roots[p];
                let scale = rs.inner_ii(beta, beta) / rat_i64(2);
                let mirror = if sign > 0 { m + l + p } else { p };
                dual.push(vec![(mirror, scale)]);
            }
        }

        Ok(LieAlgebra {
            rs,
            dim,
            n_pos: m,
            chains,
            dual,
            table,
        })
    }

    /// (sign, positive-root index or Cartan index) of a basis slot.
    pub fn slot(&self, idx: usize) -> (i64, usize) {
        if idx < self.n_pos {
            (1, idx)
        } else if idx < self.n_pos + self.rs.rank {
            (0, idx - self.n_pos)
        } else {
            (-1, idx - self.n_pos - self.rs.rank)
        }
    }

    pub fn basis_name(&self, idx: usize) -> String {
        let (sign, p) = self.slot(idx);
        match sign {
            1 => format!("e{}", p + 1),
            0 => format!("h{}", p + 1),
            _ => format!("f{}", p + 1),
        }
    }

    /// Weight of a basis element in simple-root coordinates.
    pub fn weight(&self, idx: usize) -> Vec<i64> {
        let (sign, p) = self.slot(idx);
        if sign == 0 {
            vec![0; self.rs.rank]
        } else {
            self.rs.pos_roots[p].iter().map(|x| x * sign).collect()
        }
    }

    /// Basis index of `e_i = x_{alpha_i}`.
    pub fn simple_e(&self, i: usize) -> usize {
        self.rs.simple_idx[i]
    }

    /// Basis index of `f_i = x_{-alpha_i}`.
    pub fn simple_f(&self, i: usize) -> usize {
        self.n_pos + self.rs.rank + self.rs.simple_idx[i]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &LieVec, y: &LieVec) -> LieVec {
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in self.bracket_basis(*i, *j) {
                    let e = acc.entry(*k).or_insert_with(Rat::zero);
                    *e += a * b * rat_i64(*c);
                }
            }
        }
        let mut out: LieVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Normalized invariant form on basis elements.
    pub fn form_basis(&self, i: usize, j: usize) -> Rat {
        let (si, pi) = self.slot(i);
        let (sj, pj) = self.slot(j);
        if si == 0 && sj == 0 {
            // <alpha_i^vee, alpha_j^vee> = 4 (alpha_i, alpha_j) / (|a_i|^2 |a_j|^2)
            return rat_i64(4) * &self.rs.gram[pi][pj]
                / (&self.rs.gram[pi][pi] * &self.rs.gram[pj][pj]);
        }
        if si != 0 && sj != 0 && pi == pj && si == -sj {
            let beta = &self.rs.pos_roots[pi];
            return rat_i64(2) / self.rs.inner_ii(beta, beta);
        }
        Rat::zero()
    }

    pub fn form(&self, x: &LieVec, y: &LieVec) -> Rat {
        let mut acc = Rat::zero();
        for (i, a) in x {
            for (j, b) in y {
                let f = self.form_basis(*i, *j);
                if !f.is_zero() {
                    acc += a * b * f;
                }
            }
        }
        acc
    }

    /// Casimir operator `sum_i ad(e_i) ad(f_i)` applied to `v`, with `{e_i}`
    /// the basis and `{f_i}` its dual.
    pub fn casimir_apply(&self, v: &LieVec) -> LieVec {
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for i in 0..self.dim {
            let inner = self.bracket(&self.dual[i], v);
            let ei: LieVec = vec![(i, rat_i64(1))];
            for (k, c) in self.bracket(&ei, &inner) {
                let e = acc.entry(k).or_insert_with(Rat::zero);
                *e += c;
            }
        }
        let mut out: LieVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    /// Flat list of structure constants `[i, j, k, c]` over basis indices.
    pub fn structure_constants(&self) -> Vec<[i64; 4]> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.bracket_basis(i, j) {
                    out.push([i as i64, j as i64, *k as i64, *c]);
                }
            }
        }
        out
    }

    /// Hash binding cached artifacts to this exact basis and bracket.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.rs.family_name().as_bytes());
        h.update([0u8]);
        for q in self.structure_constants() {
            for x in q {
                h.update(x.to_le_bytes());
            }
        }
        format!("{:x}", h.finalize())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = self.rs.to_json();
        let obj = doc.as_object_mut().unwrap();
        obj.insert(
            "basis".into(),
            serde_json::json!((0..self.dim)
                .map(|i| self.basis_name(i))
                .collect::<Vec<_>>()),
        );
        obj.insert(
            "weights".into(),
            serde_json::json!((0..self.dim).map(|i| self.weight(i)).collect::<Vec<_>>()),
        );
        obj.insert(
            "structure_constants".into(),
            serde_json::json!(self.structure_constants()),
        );
        obj.insert(
            "dual_basis".into(),
            serde_json::json!(self
                .dual
                .iter()
                .map(|v| v
                    .iter()
                    .map(|(k, c)| serde_json::json!([k, crate::rat::rat_to_string(c)]))
                    .collect::<Vec<_>>())
                .collect::<Vec<_>>()),
        );
        obj.insert(
            "content_hash".into(),
            serde_json::json!(self.content_hash()),
        );
        doc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::all_families;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[track_caller]
    fn lie(letter: char, rank: usize) -> LieAlgebra {
        LieAlgebra::new(RootSystem::new(letter, rank).unwrap()).unwrap()
    }

    fn basis_vec(i: usize) -> LieVec {
        vec![(i, rat_i64(1))]
    }

    #[test]
    fn a1_verbatim() {
        let g = lie('A', 1);
        assert_eq!(g.dim, 3);
        // order: e1, h1, f1
        assert_eq!(g.basis_name(0), "e1");
        assert_eq!(g.basis_name(1), "h1");
        assert_eq!(g.basis_name(2), "f1");
        assert_eq!(g.bracket_basis(0, 2), &[(1, 1)]); // [e,f] = h
        assert_eq!(g.bracket_basis(1, 0), &[(0, 2)]); // [h,e] = 2e
        assert_eq!(g.bracket_basis(1, 2), &[(2, -2)]); // [h,f] = -2f
        assert_eq!(g.dual[0], vec![(2, rat_i64(1))]); // e* = f
        assert_eq!(g.dual[1], vec![(1, crate::rat::rat_frac(1, 2))]); // h* = h/2
        assert_eq!(g.dual[2], vec![(0, rat_i64(1))]); // f* = e
        assert_eq!(g.form_basis(0, 2), rat_i64(1)); // <e,f> = 1
        assert_eq!(g.form_basis(1, 1), rat_i64(2)); // <h,h> = 2
        assert_eq!(g.form_basis(0, 0), rat_i64(0));
    }

    #[test]
    fn antisymmetry_all_pairs() {
        for (l, r) in [('A', 2), ('B', 2), ('C', 3), ('G', 2), ('D', 4)] {
            let g = lie(l, r);
            for i in 0..g.dim {
                for j in 0..g.dim {
                    let mut ji: Vec<(usize, i64)> = g
                        .bracket_basis(j, i)
                        .iter()
                        .map(|(k, c)| (*k, -c))
                        .collect();
                    ji.sort_by_key(|(k, _)| *k);
                    let mut ij = g.bracket_basis(i, j).to_vec();
                    ij.sort_by_key(|(k, _)| *k);
                    assert_eq!(ij, ji, "{l}{r} pair ({i},{j})");
                }
            }
        }
    }

    fn jacobi_triple(g: &LieAlgebra, x: usize, y: usize, z: usize) -> LieVec {
        let xv = basis_vec(x);
        let yv = basis_vec(y);
        let zv = basis_vec(z);
        let mut acc: HashMap<usize, Rat> = HashMap::new();
        for term in [
            g.bracket(&g.bracket(&xv, &yv), &zv),
            g.bracket(&g.bracket(&yv, &zv), &xv),
            g.bracket(&g.bracket(&zv, &xv), &yv),
        ] {
            for (k, c) in term {
                *acc.entry(k).or_insert_with(Rat::zero) += c;
            }
        }
        let mut out: LieVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    #[test]
    fn jacobi_exhaustive_small() {
        for (l, r) in [
            ('A', 1),
            ('A', 2),
            ('A', 3),
            ('B', 2),
            ('B', 3),
            ('C', 3),
            ('G', 2),
            ('D', 4),
            ('F', 4),
        ] {
            let g = lie(l, r);
            for x in 0..g.dim {
                for y in x..g.dim {
                    for z in y..g.dim {
                        assert!(
                            jacobi_triple(&g, x, y, z).is_empty(),
                            "{l}{r} jacobi fails at ({x},{y},{z})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_sampled_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (l, r) in [
            ('E', 6),
            ('E', 7),
            ('E', 8),
            ('B', 8),
            ('C', 8),
            ('D', 8),
            ('A', 8),
        ] {
            let g = lie(l, r);
            for _ in 0..20_000 {
                let x = rng.gen_range(0..g.dim);
                let y = rng.gen_range(0..g.dim);
                let z = rng.gen_range(0..g.dim);
                assert!(
                    jacobi_triple(&g, x, y, z).is_empty(),
                    "{l}{r} jacobi fails at ({x},{y},{z})"
                );
            }
        }
    }

    #[test]
    fn dual_pairing_is_kronecker() {
        for (l, r) in [('A', 1), ('A', 2), ('B', 2), ('C', 3), ('G', 2), ('F', 4)] {
            let g = lie(l, r);
            for i in 0..g.dim {
                for j in 0..g.dim {
                    let vi = basis_vec(i);
                    assert_eq!(
                        g.form(&vi, &g.dual[j]),
                        rat_i64((i == j) as i64),
                        "{l}{r} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn form_is_invariant() {
        // <[x,y],z> + <y,[x,z]> = 0, exhaustive on small types
        for (l, r) in [('A', 2), ('B', 2), ('G', 2), ('C', 3)] {
            let g = lie(l, r);
            for x in 0..g.dim {
                let xv = basis_vec(x);
                for y in 0..g.dim {
                    let yv = basis_vec(y);
                    let xy = g.bracket(&xv, &yv);
                    for z in 0..g.dim {
                        let zv = basis_vec(z);
                        let xz = g.bracket(&xv, &zv);
                        let s = g.form(&xy, &zv) + g.form(&yv, &xz);
                        assert!(s.is_zero(), "{l}{r} invariance fails at ({x},{y},{z})");
                    }
                }
            }
        }
    }

    #[test]
    fn form_invariance_sampled_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (l, r) in [('D', 5), ('E', 6), ('F', 4), ('B', 5)] {
            let g = lie(l, r);
            for _ in 0..5_000 {
                let x = rng.gen_range(0..g.dim);
                let y = rng.gen_range(0..g.dim);
                let z = rng.gen_range(0..g.dim);
                let (xv, yv, zv) = (basis_vec(x), basis_vec(y), basis_vec(z));
                let s = g.form(&g.bracket(&xv, &yv), &zv) + g.form(&yv, &g.bracket(&xv, &zv));
                assert!(s.is_zero(), "{l}{r} ({x},{y},{z})");
            }
        }
    }

    #[test]
    fn casimir_is_twice_dual_coxeter_everywhere() {
        for (l, r) in all_families(8) {
            let g = lie(l, r);
            let expect = rat_i64(2 * g.rs.dual_coxeter);
            for i in 0..g.dim {
                let out = g.casimir_apply(&basis_vec(i));
                assert_eq!(out, vec![(i, expect.clone())], "{l}{r} basis {i}");
            }
        }
    }

    #[test]
    fn casimir_matches_dense_product_oracle_rank_le_2() {
        // independent oracle: assemble dense ad matrices, multiply, sum
        for (l, r) in [('A', 1), ('A', 2), ('B', 2), ('C', 2), ('G', 2)] {
            let g = lie(l, r);
            let n = g.dim;
            let ad = |v: &LieVec| -> Vec<Vec<Rat>> {
                let mut m = vec![vec![Rat::zero(); n]; n];
                for j in 0..n {
                    for (k, c) in g.bracket(v, &basis_vec(j)) {
                        m[k][j] = c;
                    }
                }
                m
            };
            let mut total = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                let a = ad(&basis_vec(i));
                let b = ad(&g.dual[i]);
                for r_ in 0..n {
                    for c_ in 0..n {
                        for k in 0..n {
                            let add = &a[r_][k] * &b[k][c_];
                            total[r_][c_] += add;
                        }
                    }
                }
            }
            let expect = rat_i64(2 * g.rs.dual_coxeter);
            for r_ in 0..n {
                for c_ in 0..n {
                    let want = if r_ == c_ {
                        expect.clone()
                    } else {
                        Rat::zero()
                    };
                    assert_eq!(total[r_][c_], want, "{l}{r} entry ({r_},{c_})");
                }
            }
        }
    }

    #[test]
    fn constants_have_string_magnitude() {
        // |N_{a,b}| = p+1 where p is the length of the descending string
        for (l, r) in [('A', 3), ('B', 3), ('C', 3), ('G', 2), ('F', 4)] {
            let g = lie(l, r);
            let rs = &g.rs;
            let m = g.n_pos;
            let all_roots: Vec<(usize, i64)> = (0..m)
                .map(|i| (i, 1i64))
                .chain((0..m).map(|i| (i, -1i64)))
                .collect();
            for &(ia, sa) in &all_roots {
                for &(ib, sb) in &all_roots {
                    let a: Vec<i64> = rs.pos_roots[ia].iter().map(|x| x * sa).collect();
                    let b: Vec<i64> = rs.pos_roots[ib].iter().map(|x| x * sb).collect();
                    let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                    if sum.iter().all(|&x| x == 0) || !rs.is_root(&sum) {
                        continue;
                    }
                    let idx_a = if sa > 0 { ia } else { m + rs.rank + ia };
                    let idx_b = if sb > 0 { ib } else { m + rs.rank + ib };
                    let entry = g.bracket_basis(idx_a, idx_b);
                    assert_eq!(entry.len(), 1);
                    let nval = entry[0].1.abs();
                    let mut p = 0i64;
                    let mut cur: Vec<i64> = b.clone();
                    loop {
                        for (x, y) in cur.iter_mut().zip(&a) {
                            *x -= y;
                        }
                        if !rs.is_root(&cur) || cur.iter().all(|&x| x == 0) {
                            break;
                        }
                        p += 1;
                    }
                    assert_eq!(nval, p + 1, "{l}{r} roots {a:?},{b:?}");
                }
            }
        }
    }

    #[test]
    fn weights_and_simple_indices() {
        let g = lie('A', 2);
        assert_eq!(g.weight(g.simple_e(0)), vec![1, 0]);
        assert_eq!(g.weight(g.simple_f(0)), vec![-1, 0]);
        assert_eq!(g.weight(g.n_pos), vec![0, 0]); // h1
        assert_eq!(
            g.bracket_basis(g.simple_e(0), g.simple_f(0)),
            &[(g.n_pos, 1)]
        );
        assert!(g.bracket_basis(g.simple_e(0), g.simple_f(1)).is_empty());
    }

    #[test]
    fn serialization_shape() {
        let g = lie('A', 1);
        let doc = g.to_json();
        assert_eq!(doc["basis"], serde_json::json!(["e1", "h1", "f1"]));
        assert_eq!(doc["dual_coxeter"], serde_json::json!(2));
        let sc = doc["structure_constants"].as_array().unwrap();
        assert!(sc.contains(&serde_json::json!([0, 2, 1, 1])));
        assert!(!doc["content_hash"].as_str().unwrap().is_empty());
    }

    #[test]
    fn content_hash_distinguishes_types() {
        assert_ne!(lie('A', 2).content_hash(), lie('B', 2).content_hash());
        assert_eq!(lie('A', 2).content_hash(), lie('A', 2).content_hash());
    }
}
