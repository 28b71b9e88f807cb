//! Affine Weyl group elements as integer affine maps on the coroot lattice,
//! the doubled-alcove subset, inversion sets of affine roots, and the
//! shifted action on affine weights.
//!
//! Reflection indices run `0..=rank`; index 0 is the affine reflection in
//! the wall `theta = 1`, index `i >= 1` is the simple reflection for root
//! `i - 1`. Words are left products: `word = [j1, .., jk]` means
//! `w = s_{j1} ∘ .. ∘ s_{jk}`.

use crate::cartan::RootSystem;
use crate::error::Error;
use crate::rat::{rat_i64, Rat};
use crate::Result;
use num_traits::{Signed, Zero};
use std::collections::{HashSet, VecDeque};

pub type IMat = Vec<Vec<i64>>;

/// Affine real root: finite part in simple-root coordinates plus a delta
/// multiple.
pub type AffRoot = (Vec<i64>, i64);

fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn mat_apply(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn ident(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffElt {
    pub mat: IMat,
    pub t: Vec<i64>,
    pub inv_mat: IMat,
    pub inv_t: Vec<i64>,
    pub word: Vec<usize>,
}

impl AffElt {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn key(&self) -> (Vec<i64>, Vec<i64>) {
        (self.mat.iter().flatten().copied().collect(), self.t.clone())
    }

    /// Image of a rational point under the inverse element.
    pub fn inv_apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.inv_mat
            .iter()
            .zip(&self.inv_t)
            .map(|(row, c)| {
                row.iter()
                    .zip(v)
                    .fold(rat_i64(*c), |acc, (m, x)| acc + rat_i64(*m) * x)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AffineWeight {
    /// Fundamental-weight coordinates of the finite part.
    pub finite: Vec<Rat>,
    pub level: Rat,
    pub delta: Rat,
}

pub struct AffWeyl<'a> {
    pub rs: &'a RootSystem,
    /// Reflection matrices `s_0..s_rank` on coroot coordinates.
    mats: Vec<IMat>,
    trans: Vec<Vec<i64>>,
    /// Vertices of the fundamental alcove.
    vertices: Vec<Vec<Rat>>,
}

impl<'a> AffWeyl<'a> {
    pub fn new(rs: &'a RootSystem) -> AffWeyl<'a> {
        let l = rs.rank;
        let mut mats = Vec::with_capacity(l + 1);
        let mut trans = Vec::with_capacity(l + 1);
        // affine reflection: s_theta followed by translation by theta-vee
        let mut m0 = ident(l);
        for j in 0..l {
            let pairing = rs.pair_simple_coroot(&rs.theta, j);
            for k in 0..l {
                m0[k][j] -= pairing * rs.comarks[k];
            }
        }
        mats.push(m0);
        trans.push(rs.comarks.clone());
        for i in 0..l {
            let mut m = ident(l);
            for j in 0..l {
                m[i][j] -= rs.cartan[j][i];
            }
            mats.push(m);
            trans.push(vec![0; l]);
        }
        let marks = rs.marks();
        let mut vertices = vec![vec![Rat::zero(); l]];
        for i in 0..l {
            vertices.push(
                (0..l)
                    .map(|k| &rs.inv_cartan[i][k] / rat_i64(marks[i]))
                    .collect(),
            );
        }
        AffWeyl {
            rs,
            mats,
            trans,
            vertices,
        }
    }

    pub fn identity(&self) -> AffElt {
        let l = self.rs.rank;
        AffElt {
            mat: ident(l),
            t: vec![0; l],
            inv_mat: ident(l),
            inv_t: vec![0; l],
            word: Vec::new(),
        }
    }

    /// `s_i ∘ w`, with the inverse updated alongside.
    pub fn left_mul(&self, i: usize, w: &AffElt) -> AffElt {
        let mat = mat_mul(&self.mats[i], &w.mat);
        let mut t = mat_apply(&self.mats[i], &w.t);
        for (x, d) in t.iter_mut().zip(&self.trans[i]) {
            *x += d;
        }
        let inv_mat = mat_mul(&w.inv_mat, &self.mats[i]);
        let mut inv_t = mat_apply(&w.inv_mat, &self.trans[i]);
        for (x, d) in inv_t.iter_mut().zip(&w.inv_t) {
            *x += d;
        }
        let mut word = Vec::with_capacity(w.word.len() + 1);
        word.push(i);
        word.extend_from_slice(&w.word);
        AffElt {
            mat,
            t,
            inv_mat,
            inv_t,
            word,
        }
    }

    /// Pairing of a simple root with a point in coroot coordinates.
    fn alpha_at(&self, j: usize, v: &[Rat]) -> Rat {
        (0..self.rs.rank)
            .map(|k| rat_i64(self.rs.cartan[k][j]) * &v[k])
            .fold(Rat::zero(), |a, b| a + b)
    }

    fn theta_at(&self, v: &[Rat]) -> Rat {
        (0..self.rs.rank)
            .map(|k| rat_i64(self.rs.pair_simple_coroot(&self.rs.theta, k)) * &v[k])
            .fold(Rat::zero(), |a, b| a + b)
    }

    fn in_doubled_cone(&self, v: &[Rat]) -> bool {
        (0..self.rs.rank).all(|j| !self.alpha_at(j, v).is_negative())
            && self.theta_at(v) <= rat_i64(2)
    }

    fn inside(&self, w: &AffElt) -> bool {
        self.vertices
            .iter()
            .all(|v| self.in_doubled_cone(&w.inv_apply(v)))
    }

    /// All elements whose inverse maps the fundamental alcove into the
    /// doubled dominant cone, by breadth-first gallery search.
    pub fn enumerate_doubled(&self) -> Vec<AffElt> {
        let mut out = Vec::new();
        let mut seen: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
        let mut queue = VecDeque::new();
        let id = self.identity();
        seen.insert(id.key());
        queue.push_back(id.clone());
        out.push(id);
        while let Some(w) = queue.pop_front() {
            for i in 0..=self.rs.rank {
                let cand = self.left_mul(i, &w);
                if seen.contains(&cand.key()) || !self.inside(&cand) {
                    continue;
                }
                seen.insert(cand.key());
                queue.push_back(cand.clone());
                out.push(cand);
            }
        }
        out
    }

    /// Separating-hyperplane count between the fundamental alcove and its
    /// image under the inverse, an independent length oracle.
    pub fn separation_count(&self, w: &AffElt) -> i64 {
        let l = self.rs.rank;
        let mut centroid = vec![Rat::zero(); l];
        for v in &self.vertices {
            for (c, x) in centroid.iter_mut().zip(w.inv_apply(v)) {
                *c += x;
            }
        }
        let denom = rat_i64((l + 1) as i64);
        for c in centroid.iter_mut() {
            *c /= &denom;
        }
        let mut count = 0i64;
        for alpha in &self.rs.pos_roots {
            let val: Rat = (0..l)
                .map(|j| rat_i64(alpha[j]) * self.alpha_at(j, &centroid))
                .fold(Rat::zero(), |a, b| a + b);
            count += i64::try_from(val.floor().to_integer())
                .expect("separation count fits in i64")
                .abs();
        }
        count
    }

    fn aff_root_is_positive(&self, r: &AffRoot) -> bool {
        let (gamma, k) = r;
        if *k != 0 {
            return *k > 0;
        }
        self.rs.is_pos_root(gamma)
    }

    /// Action of reflection `i` on an affine root.
    pub fn reflect_aff_root(&self, i: usize, r: &AffRoot) -> AffRoot {
        let (gamma, k) = r;
        if i == 0 {
            // pairing of gamma with theta-vee
            let mut pairing = 0i64;
            for (m, c) in gamma.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                for (kk, comark) in self.rs.comarks.iter().enumerate() {
                    pairing += c * comark * self.rs.cartan[kk][m];
                }
            }
            let new_gamma: Vec<i64> = gamma
                .iter()
                .zip(&self.rs.theta)
                .map(|(c, th)| c - pairing * th)
                .collect();
            (new_gamma, k + pairing)
        } else {
            let j = i - 1;
            let pairing: i64 = gamma
                .iter()
                .enumerate()
                .map(|(m, c)| self.rs.cartan[j][m] * c)
                .sum();
            let mut new_gamma = gamma.clone();
            new_gamma[j] -= pairing;
            (new_gamma, *k)
        }
    }

    /// Inversion set of a reduced word, every member a positive affine root.
    pub fn inversions(&self, word: &[usize]) -> Result<Vec<AffRoot>> {
        let simple_aff = |i: usize| -> AffRoot {
            if i == 0 {
                (self.rs.theta.iter().map(|x| -x).collect(), 1)
            } else {
                let mut gamma = vec![0i64; self.rs.rank];
                gamma[i - 1] = 1;
                (gamma, 0)
            }
        };
        let mut inv: Vec<AffRoot> = Vec::new();
        for &j in word {
            let mut next: Vec<AffRoot> = vec![simple_aff(j)];
            for r in &inv {
                next.push(self.reflect_aff_root(j, r));
            }
            for r in &next {
                if !self.aff_root_is_positive(r) {
                    return Err(Error::BadWord(format!(
                        "word {word:?} is not reduced: inversion {r:?} went negative"
                    )));
                }
            }
            let distinct: HashSet<&AffRoot> = next.iter().collect();
            if distinct.len() != next.len() {
                return Err(Error::BadWord(format!(
                    "word {word:?} is not reduced: repeated inversion"
                )));
            }
            inv = next;
        }
        Ok(inv)
    }

    /// Element of a reduced word; rejects out-of-range letters and
    /// non-reduced words so lengths stay trustworthy.
    pub fn element_from_word(&self, word: &[usize]) -> Result<AffElt> {
        for &j in word {
            if j > self.rs.rank {
                return Err(Error::BadWord(format!(
                    "letter {j} outside 0..={}",
                    self.rs.rank
                )));
            }
        }
        self.inversions(word)?;
        let mut cur = self.identity();
        for &j in word.iter().rev() {
            cur = self.left_mul(j, &cur);
        }
        Ok(cur)
    }

    pub fn rho_hat(&self) -> AffineWeight {
        AffineWeight {
            finite: vec![rat_i64(1); self.rs.rank],
            level: rat_i64(self.rs.dual_coxeter),
            delta: Rat::zero(),
        }
    }

    /// Action of reflection `i` on an affine weight.
    pub fn reflect_weight(&self, i: usize, w: &AffineWeight) -> AffineWeight {
        let l = self.rs.rank;
        let mut out = w.clone();
        if i == 0 {
            let mut c0 = w.level.clone();
            for j in 0..l {
                c0 -= rat_i64(self.rs.comarks[j]) * &w.finite[j];
            }
            for j in 0..l {
                out.finite[j] += rat_i64(self.rs.pair_simple_coroot(&self.rs.theta, j)) * &c0;
            }
            out.delta -= c0;
        } else {
            let m = i - 1;
            let cm = w.finite[m].clone();
            for j in 0..l {
                out.finite[j] -= rat_i64(self.rs.cartan[j][m]) * &cm;
            }
        }
        out
    }

    /// `w · weight` for a left-product word (rightmost reflection first).
    pub fn apply_word_weight(&self, word: &[usize], weight: &AffineWeight) -> AffineWeight {
        let mut cur = weight.clone();
        for &j in word.iter().rev() {
            cur = self.reflect_weight(j, &cur);
        }
        cur
    }

    /// `w^{-1} · weight`: the reversed word applied the same way.
    pub fn apply_inv_weight(&self, word: &[usize], weight: &AffineWeight) -> AffineWeight {
        let mut cur = weight.clone();
        for &j in word {
            cur = self.reflect_weight(j, &cur);
        }
        cur
    }

    /// Finite part of `rho_hat - u^{-1} rho_hat` in simple-root
    /// coordinates; `None` if it escapes the root lattice.
    pub fn rho_drop_root_coords(&self, u: &AffElt) -> Option<Vec<Rat>> {
        let moved = self.apply_inv_weight(&u.word, &self.rho_hat());
        let p: Vec<Rat> = (0..self.rs.rank)
            .map(|j| rat_i64(1) - &moved.finite[j])
            .collect();
        // fundamental coords p relate to root coords c by p = C c
        let mut c = vec![Rat::zero(); self.rs.rank];
        for (j, cj) in c.iter_mut().enumerate() {
            for k in 0..self.rs.rank {
                *cj += &self.rs.inv_cartan[j][k] * &p[k];
            }
        }
        if c.iter().all(|x| x.is_integer()) {
            Some(c)
        } else {
            None
        }
    }

    /// Degree statistic of a triple, route one: delta-coefficient of
    /// `u^{-1} rho + v^{-1} rho - w^{-1} rho - rho`.
    pub fn d_degree(&self, u: &AffElt, v: &AffElt, w: &AffElt) -> Result<i64> {
        let rho = self.rho_hat();
        let mut delta = self.apply_inv_weight(&u.word, &rho).delta;
        delta += self.apply_inv_weight(&v.word, &rho).delta;
        delta -= self.apply_inv_weight(&w.word, &rho).delta;
        delta -= rho.delta;
        if !delta.is_integer() {
            return Err(Error::Internal("non-integral degree statistic".into()));
        }
        i64::try_from(delta.to_integer())
            .map_err(|_| Error::Internal("degree statistic overflow".into()))
    }

    /// Route two: pure length arithmetic.
    pub fn d_degree_by_length(&self, u: &AffElt, v: &AffElt, w: &AffElt) -> i64 {
        w.len() as i64 - u.len() as i64 - v.len() as i64
    }

    pub fn coroot_gram(&self) -> Vec<Vec<Rat>> {
        let l = self.rs.rank;
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        rat_i64(4) * &self.rs.gram[i][j]
                            / (&self.rs.gram[i][i] * &self.rs.gram[j][j])
                    })
                    .collect()
            })
            .collect()
    }

    pub fn reflection_mat(&self, i: usize) -> &IMat {
        &self.mats[i]
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn aff(letter: char, rank: usize) -> RootSystem {
        RootSystem::new(letter, rank).unwrap()
    }

    #[test]
    fn reflections_are_involutions() {
        for (l, r) in [('A', 2), ('B', 2), ('C', 3), ('G', 2), ('D', 4)] {
            let rs = aff(l, r);
            let aw = AffWeyl::new(&rs);
            for i in 0..=rs.rank {
                let w = aw.left_mul(i, &aw.identity());
                let sq = aw.left_mul(i, &w);
                assert_eq!(sq.mat, aw.identity().mat, "{l}{r} s_{i}");
                assert_eq!(sq.t, vec![0; rs.rank], "{l}{r} s_{i}");
                // the tracked inverse matches the element for involutions
                assert_eq!(w.mat, w.inv_mat);
                assert_eq!(w.t, w.inv_t);
            }
        }
    }

    #[test]
    fn linear_parts_preserve_the_coroot_form() {
        for (l, r) in [('A', 3), ('B', 2), ('C', 3), ('G', 2), ('F', 4)] {
            let rs = aff(l, r);
            let aw = AffWeyl::new(&rs);
            let g = aw.coroot_gram();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let mut w = aw.identity();
            for _ in 0..12 {
                let i = rng.gen_range(0..=rs.rank);
                w = aw.left_mul(i, &w);
                let m = &w.mat;
                for a in 0..rs.rank {
                    for b in 0..rs.rank {
                        let mut acc = Rat::zero();
                        for x in 0..rs.rank {
                            for y in 0..rs.rank {
                                acc += rat_i64(m[x][a]) * &g[x][y] * rat_i64(m[y][b]);
                            }
                        }
                        assert_eq!(acc, g[a][b], "{l}{r} entry ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn tracked_inverse_is_the_inverse() {
        let rs = aff('B', 3);
        let aw = AffWeyl::new(&rs);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut w = aw.identity();
        for _ in 0..20 {
            let i = rng.gen_range(0..=rs.rank);
            w = aw.left_mul(i, &w);
            let prod = mat_mul(&w.mat, &w.inv_mat);
            assert_eq!(prod, ident(rs.rank));
            let mut t = mat_apply(&w.mat, &w.inv_t);
            for (x, d) in t.iter_mut().zip(&w.t) {
                *x += d;
            }
            assert_eq!(t, vec![0; rs.rank]);
        }
    }

    #[test]
    fn doubled_set_counts_match_rank_power() {
        for (l, r) in [
            ('A', 1),
            ('A', 2),
            ('A', 3),
            ('B', 2),
            ('C', 3),
            ('G', 2),
            ('D', 4),
        ] {
            let rs = aff(l, r);
            let aw = AffWeyl::new(&rs);
            assert_eq!(aw.enumerate_doubled().len(), 1 << r, "{l}{r}");
        }
    }

    #[test]
    fn a1_doubled_set_is_identity_and_affine_reflection() {
        let rs = aff('A', 1);
        let aw = AffWeyl::new(&rs);
        let els = aw.enumerate_doubled();
        let words: Vec<Vec<usize>> = els.iter().map(|w| w.word.clone()).collect();
        assert_eq!(words, vec![vec![], vec![0]]);
    }

    #[test]
    fn a2_doubled_lengths_and_words() {
        let rs = aff('A', 2);
        let aw = AffWeyl::new(&rs);
        let els = aw.enumerate_doubled();
        let mut lens: Vec<usize> = els.iter().map(|w| w.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![0, 1, 2, 2]);
        for w in &els {
            assert!(w.word.is_empty() || w.word.last() == Some(&0));
        }
    }

    #[test]
    fn three_length_routes_agree() {
        for (l, r) in [('A', 2), ('B', 2), ('C', 3), ('G', 2)] {
            let rs = aff(l, r);
            let aw = AffWeyl::new(&rs);
            for w in aw.enumerate_doubled() {
                let by_inv = aw.inversions(&w.word).unwrap().len();
                let by_sep = aw.separation_count(&w);
                assert_eq!(w.len(), by_inv, "{l}{r} word {:?}", w.word);
                assert_eq!(w.len() as i64, by_sep, "{l}{r} word {:?}", w.word);
            }
        }
    }

    #[test]
    fn separation_count_on_generic_elements() {
        // not just the doubled set: arbitrary products also satisfy the
        // hyperplane-count identity as long as the word stays reduced
        let rs = aff('B', 2);
        let aw = AffWeyl::new(&rs);
        let mut w = aw.identity();
        for &i in &[0usize, 1, 2, 1, 0] {
            w = aw.left_mul(i, &w);
        }
        if let Ok(inv) = aw.inversions(&w.word) {
            assert_eq!(inv.len() as i64, aw.separation_count(&w));
        }
    }

    #[test]
    fn affine_reflection_has_the_expected_inversion() {
        let rs = aff('G', 2);
        let aw = AffWeyl::new(&rs);
        let inv = aw.inversions(&[0]).unwrap();
        let m_theta: Vec<i64> = rs.theta.iter().map(|x| -x).collect();
        assert_eq!(inv, vec![(m_theta, 1)]);
    }

    #[test]
    fn non_reduced_words_are_rejected() {
        let rs = aff('A', 2);
        let aw = AffWeyl::new(&rs);
        assert!(aw.inversions(&[1, 1]).is_err());
        assert!(aw.inversions(&[0, 1, 1, 0]).is_err());
    }

    #[test]
    fn rho_identities_on_doubled_sets() {
        for (l, r) in [('A', 2), ('B', 2), ('C', 3), ('G', 2), ('D', 4)] {
            let rs = aff(l, r);
            let aw = AffWeyl::new(&rs);
            for u in aw.enumerate_doubled() {
                let moved = aw.apply_inv_weight(&u.word, &aw.rho_hat());
                assert_eq!(moved.level, rat_i64(rs.dual_coxeter), "level is fixed");
                let drop = Rat::zero() - &moved.delta;
                assert_eq!(drop, rat_i64(u.len() as i64), "{l}{r} word {:?}", u.word);
                let coords = aw.rho_drop_root_coords(&u);
                assert!(coords.is_some(), "{l}{r}: drop escaped the root lattice");
            }
        }
    }

    #[test]
    fn degree_statistic_routes_agree_on_all_triples() {
        for (l, r) in [('A', 2), ('B', 2), ('G', 2)] {
            let rs = aff(l, r);
            let aw = AffWeyl::new(&rs);
            let els = aw.enumerate_doubled();
            for u in &els {
                for v in &els {
                    for w in &els {
                        assert_eq!(
                            aw.d_degree(u, v, w).unwrap(),
                            aw.d_degree_by_length(u, v, w),
                            "{l}{r} ({:?},{:?},{:?})",
                            u.word,
                            v.word,
                            w.word
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn weight_reflection_matches_point_pairing_for_finite_part() {
        // (s_i lambda)(v) == lambda(s_i v) with lambda in fundamental
        // coordinates and v in coroot coordinates
        let rs = aff('C', 3);
        let aw = AffWeyl::new(&rs);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let lam = AffineWeight {
                finite: (0..rs.rank)
                    .map(|_| rat_i64(rng.gen_range(-3..=3)))
                    .collect(),
                level: rat_i64(0),
                delta: rat_i64(0),
            };
            let v: Vec<Rat> = (0..rs.rank)
                .map(|_| rat_i64(rng.gen_range(-3..=3)))
                .collect();
            for i in 1..=rs.rank {
                let lam_r = aw.reflect_weight(i, &lam);
                let v_r: Vec<Rat> = {
                    let m = aw.reflection_mat(i);
                    (0..rs.rank)
                        .map(|a| {
                            (0..rs.rank)
                                .map(|b| rat_i64(m[a][b]) * &v[b])
                                .fold(Rat::zero(), |x, y| x + y)
                        })
                        .collect()
                };
                let pair = |lam: &AffineWeight, v: &[Rat]| -> Rat {
                    lam.finite
                        .iter()
                        .zip(v)
                        .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
                };
                assert_eq!(pair(&lam_r, &v), pair(&lam, &v_r));
            }
        }
    }

    #[test]
    fn fundamental_alcove_vertices_lie_in_the_closed_alcove() {
        for (l, r) in [('A', 2), ('B', 3), ('E', 6), ('G', 2)] {
            let rs = aff(l, r);
            let aw = AffWeyl::new(&rs);
            for v in aw.vertices() {
                for j in 0..rs.rank {
                    assert!(!aw.alpha_at(j, v).is_negative());
                }
                assert!(aw.theta_at(v) <= rat_i64(1));
            }
        }
    }
}
