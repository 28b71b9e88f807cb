//! Root systems of the simple Lie algebras, exactly.
//!
//! Coordinates: roots live in the root lattice and are stored as integer
//! vectors of coefficients over the simple roots; elements of the Cartan
//! subalgebra are stored over the simple coroots. The invariant form is
//! normalized so the highest root has squared length 2.
//!
//! `cartan[i][j]` is the pairing of `alpha_j` against the coroot of
//! `alpha_i`, i.e. `2(alpha_i, alpha_j)/(alpha_i, alpha_i)`.

pub mod defining;
pub mod lie;

pub use lie::LieAlgebra;

use crate::error::Error;
use crate::linalg::invert_dense;
use crate::rat::{rat_i64, Int, Rat};
use crate::Result;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub letter: char,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by (height, lex).
    pub pos_roots: Vec<Vec<i64>>,
    /// Index into `pos_roots` for each simple root.
    pub simple_idx: Vec<usize>,
    /// Normalized form on the root space: `gram[i][j] = (alpha_i, alpha_j)`.
    pub gram: Vec<Vec<Rat>>,
    /// Highest root; its coordinates are the marks.
    pub theta: Vec<i64>,
    /// Coroot of the highest root; its coordinates are the comarks.
    pub comarks: Vec<i64>,
    /// Half-sum of positive roots, simple-root coordinates.
    pub rho: Vec<Rat>,
    /// Exponents in increasing order.
    pub exponents: Vec<usize>,
    /// Dual Coxeter number.
    pub dual_coxeter: i64,
    /// Inverse Cartan matrix; row `i` is the fundamental coweight
    /// `varpi_i^vee` in simple-coroot coordinates.
    pub inv_cartan: Vec<Vec<Rat>>,
    index: HashMap<Vec<i64>, usize>,
}

pub fn valid_rank(letter: char, rank: usize) -> bool {
    match letter {
        'A' => rank >= 1,
        'B' | 'C' => rank >= 2,
        'D' => rank >= 4,
        'E' => (6..=8).contains(&rank),
        'F' => rank == 4,
        'G' => rank == 2,
        _ => false,
    }
}

fn cartan_matrix(letter: char, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !valid_rank(letter, rank) {
        return Err(Error::InvalidType {
            letter,
            rank,
            reason: "rank out of range for this family".into(),
        });
    }
    let l = rank;
    let mut m = vec![vec![0i64; l]; l];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut chain = |edges: &[(usize, usize)]| {
        for &(a, b) in edges {
            m[a][b] = -1;
            m[b][a] = -1;
        }
    };
    match letter {
        'A' => chain(&(0..l - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()),
        'B' => {
            chain(&(0..l - 1).map(|i| (i, i + 1)).collect::<Vec<_>>());
            // alpha_l is short: its coroot pairs to -2 against alpha_{l-1}
            m[l - 1][l - 2] = -2;
        }
        'C' => {
            chain(&(0..l - 1).map(|i| (i, i + 1)).collect::<Vec<_>>());
            // alpha_{l-1} is short against the long alpha_l
            m[l - 2][l - 1] = -2;
        }
        'D' => {
            chain(&(0..l - 2).map(|i| (i, i + 1)).collect::<Vec<_>>());
            chain(&[(l - 3, l - 1)]);
        }
        'E' => {
            // nodes 0-2-3-4-5(-6(-7)) in a chain, node 1 attached to node 3
            chain(&[(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]);
            if l >= 7 {
                chain(&[(5, 6)]);
            }
            if l == 8 {
                chain(&[(6, 7)]);
            }
        }
        'F' => {
            chain(&[(0, 1), (2, 3)]);
            // alpha_2 long, alpha_3 short (1-indexed: 2 => 3)
            m[1][2] = -1;
            m[2][1] = -2;
        }
        'G' => {
            // alpha_1 short, alpha_2 long (1-indexed)
            m[0][1] = -3;
            m[1][0] = -1;
        }
        _ => unreachable!(),
    }
    Ok(m)
}

impl RootSystem {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(letter, rank)?;
        let pairing = |beta: &[i64], i: usize| -> i64 {
            beta.iter().zip(&cartan[i]).map(|(b, c)| b * c).sum()
        };

        // Closure of the simple roots under root strings, level by level.
        let mut found: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut level: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut a = vec![0i64; rank];
            a[i] = 1;
            found.insert(a.clone(), ());
            level.push(a);
        }
        let mut all: Vec<Vec<i64>> = level.clone();
        while !level.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &level {
                for i in 0..rank {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if found.contains_key(&up) {
                        continue;
                    }
                    // q = p - <beta, alpha_i^vee> copies of alpha_i extend up
                    let mut p = 0i64;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if down.iter().all(|&x| x == 0) || !found.contains_key(&down) {
                            break;
                        }
                        p += 1;
                    }
                    if p - pairing(beta, i) > 0 {
                        found.insert(up.clone(), ());
                        next.push(up.clone());
                        all.push(up);
                    }
                }
            }
            level = next;
        }
        let mut pos_roots = all;
        pos_roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        let index: HashMap<Vec<i64>, usize> = pos_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let simple_idx: Vec<usize> = (0..rank)
            .map(|i| {
                let mut a = vec![0i64; rank];
                a[i] = 1;
                index[&a]
            })
            .collect();

        // Symmetrizer: d_i * cartan[i][j] = d_j * cartan[j][i], scaled so the
        // longest simple roots have d = 1, i.e. squared length 2.
        let mut d: Vec<Option<Rat>> = vec![None; rank];
        d[0] = Some(rat_i64(1));
        let mut queue = vec![0usize];
        while let Some(i) = queue.pop() {
            for j in 0..rank {
                if cartan[i][j] != 0 && i != j && d[j].is_none() {
                    let dj = d[i].clone().unwrap() * rat_i64(cartan[i][j]) / rat_i64(cartan[j][i]);
                    d[j] = Some(dj);
                    queue.push(j);
                }
            }
        }
        let mut d: Vec<Rat> = d
            .into_iter()
            .map(|x| x.ok_or_else(|| Error::Internal("disconnected diagram".into())))
            .collect::<Result<_>>()?;
        let dmax = d.iter().cloned().max().unwrap();
        for x in d.iter_mut() {
            *x /= &dmax;
        }
        let gram: Vec<Vec<Rat>> = (0..rank)
            .map(|i| (0..rank).map(|j| &d[i] * rat_i64(cartan[i][j])).collect())
            .collect();

        let theta = pos_roots.last().unwrap().clone();
        let max_h: i64 = theta.iter().sum();
        if pos_roots
            .iter()
            .filter(|r| r.iter().sum::<i64>() == max_h)
            .count()
            != 1
        {
            return Err(Error::Internal("highest root is not unique".into()));
        }

        let mut rho = vec![Rat::zero(); rank];
        for r in &pos_roots {
            for (i, x) in r.iter().enumerate() {
                rho[i] += rat_i64(*x) / rat_i64(2);
            }
        }

        // Exponents: conjugate partition of the multiset of root heights.
        let mut by_height = vec![0usize; max_h as usize + 1];
        for r in &pos_roots {
            by_height[r.iter().sum::<i64>() as usize] += 1;
        }
        let mut exponents: Vec<usize> = (1..=by_height[1])
            .map(|j| (1..=max_h as usize).filter(|&h| by_height[h] >= j).count())
            .collect();
        exponents.sort_unstable();
        if exponents.len() != rank {
            return Err(Error::Internal("exponent count != rank".into()));
        }

        let inv_cartan = invert_dense(
            &cartan
                .iter()
                .map(|row| row.iter().map(|&x| rat_i64(x)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
        .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;

        let mut rs = RootSystem {
            letter,
            rank,
            cartan,
            pos_roots,
            simple_idx,
            gram,
            theta: theta.clone(),
            comarks: vec![],
            rho,
            exponents,
            dual_coxeter: 0,
            inv_cartan,
            index,
        };

        let tt = rs.inner_ii(&theta, &theta);
        if tt != rat_i64(2) {
            return Err(Error::Internal(format!(
                "highest root has squared length {tt}, expected 2"
            )));
        }
        rs.comarks = rs.coroot(&theta)?;
        let rho_theta = rs
            .pos_roots
            .last()
            .map(|t| {
                let rt: Rat = (0..rank)
                    .map(|i| {
                        (0..rank)
                            .map(|j| &rs.rho[i] * &rs.gram[i][j] * rat_i64(t[j]))
                            .fold(Rat::zero(), |a, b| a + b)
                    })
                    .fold(Rat::zero(), |a, b| a + b);
                rt
            })
            .unwrap();
        // <rho, theta^vee> = (rho, theta) because (theta, theta) = 2
        if !rho_theta.is_integer() {
            return Err(Error::Internal("(rho, theta) is not an integer".into()));
        }
        rs.dual_coxeter = i64::try_from(rho_theta.to_integer())
            .map_err(|_| Error::Internal("dual Coxeter overflow".into()))?
            + 1;
        Ok(rs)
    }

    pub fn family_name(&self) -> String {
        format!("{}{}", self.letter, self.rank)
    }

    pub fn num_pos_roots(&self) -> usize {
        self.pos_roots.len()
    }

    /// Adjoint dimension: two copies of the positive roots plus the rank.
    pub fn dim(&self) -> usize {
        2 * self.pos_roots.len() + self.rank
    }

    pub fn marks(&self) -> &[i64] {
        &self.theta
    }

    pub fn height(r: &[i64]) -> i64 {
        r.iter().sum()
    }

    pub fn pos_root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn is_pos_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }

    /// Is `r` a root of either sign?
    pub fn is_root(&self, r: &[i64]) -> bool {
        if self.index.contains_key(r) {
            return true;
        }
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    /// Form on integer root-lattice vectors.
    pub fn inner_ii(&self, a: &[i64], b: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y != 0 {
                    acc += rat_i64(x * y) * &self.gram[i][j];
                }
            }
        }
        acc
    }

    /// Form on rational root-space vectors.
    pub fn inner_rr(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                acc += x * y * &self.gram[i][j];
            }
        }
        acc
    }

    /// `<lambda, alpha_i^vee>` for an integer vector.
    pub fn pair_simple_coroot(&self, lambda: &[i64], i: usize) -> i64 {
        lambda.iter().zip(&self.cartan[i]).map(|(l, c)| l * c).sum()
    }

    /// Coroot of a root, in simple-coroot coordinates (always integral).
    pub fn coroot(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        let len2 = self.inner_ii(alpha, alpha);
        let mut out = Vec::with_capacity(self.rank);
        for (i, k) in alpha.iter().enumerate() {
            // alpha^vee = sum_i k_i (alpha_i, alpha_i)/(alpha, alpha) alpha_i^vee
            let c = rat_i64(*k) * &self.gram[i][i] / &len2;
            if !c.is_integer() {
                return Err(Error::Internal("non-integral coroot coordinate".into()));
            }
            out.push(
                i64::try_from(c.to_integer())
                    .map_err(|_| Error::Internal("coroot overflow".into()))?,
            );
        }
        Ok(out)
    }

    /// `<lambda, alpha^vee>` as a rational, for rational `lambda` in
    /// root coordinates and a root `alpha`.
    pub fn pair_coroot_rr(&self, lambda: &[Rat], alpha: &[i64]) -> Rat {
        let alpha_r: Vec<Rat> = alpha.iter().map(|&x| rat_i64(x)).collect();
        let num = self.inner_rr(lambda, &alpha_r);
        let den = self.inner_ii(alpha, alpha);
        rat_i64(2) * num / den
    }

    /// Dimension of the irreducible module with highest weight `lambda`
    /// (rational simple-root coordinates). Returns `None` if `lambda` is not
    /// dominant integral.
    pub fn weyl_dim(&self, lambda: &[Rat]) -> Option<Int> {
        for i in 0..self.rank {
            let alpha_i: Vec<i64> = (0..self.rank).map(|j| (j == i) as i64).collect();
            let p = self.pair_coroot_rr(lambda, &alpha_i);
            if !p.is_integer() || p.is_negative() {
                return None;
            }
        }
        let mut num = Rat::from_integer(Int::from(1));
        let lam_rho: Vec<Rat> = lambda.iter().zip(&self.rho).map(|(a, b)| a + b).collect();
        for alpha in &self.pos_roots {
            num *= self.pair_coroot_rr(&lam_rho, alpha) / self.pair_coroot_rr(&self.rho, alpha);
        }
        assert!(num.is_integer(), "Weyl dimension must be integral");
        Some(num.to_integer())
    }

    /// JSON document for the root system alone.
    pub fn to_json(&self) -> Value {
        json!({
            "type": self.letter.to_string(),
            "rank": self.rank,
            "cartan_matrix": self.cartan,
            "positive_roots": self.pos_roots,
            "theta": self.theta,
            "marks": self.marks(),
            "comarks": self.comarks,
            "rho": self.rho.iter().map(crate::rat::rat_to_string).collect::<Vec<_>>(),
            "gram": self.gram.iter().map(|row| {
                row.iter().map(crate::rat::rat_to_string).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "exponents": self.exponents,
            "dual_coxeter": self.dual_coxeter,
            "num_positive_roots": self.num_pos_roots(),
            "dim": self.dim(),
        })
    }
}

/// All valid `(letter, rank)` pairs with rank at most `max_rank`.
pub fn all_families(max_rank: usize) -> Vec<(char, usize)> {
    let mut out = Vec::new();
    for letter in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
        for rank in 1..=max_rank {
            if valid_rank(letter, rank) {
                out.push((letter, rank));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_frac;

    #[track_caller]
    fn rs(letter: char, rank: usize) -> RootSystem {
        RootSystem::new(letter, rank).unwrap()
    }

    #[test]
    fn rank_constraints() {
        assert!(RootSystem::new('A', 0).is_err());
        assert!(RootSystem::new('B', 1).is_err());
        assert!(RootSystem::new('D', 3).is_err());
        assert!(RootSystem::new('E', 9).is_err());
        assert!(RootSystem::new('F', 3).is_err());
        assert!(RootSystem::new('G', 3).is_err());
        assert!(RootSystem::new('X', 2).is_err());
        for (l, r) in [
            ('A', 1),
            ('B', 2),
            ('C', 2),
            ('D', 4),
            ('E', 6),
            ('F', 4),
            ('G', 2),
        ] {
            rs(l, r);
        }
    }

    #[test]
    fn positive_root_counts() {
        // |pos roots|: A: l(l+1)/2, B/C: l^2, D: l(l-1), E6: 36, E7: 63,
        // E8: 120, F4: 24, G2: 6
        for l in 1..=8 {
            assert_eq!(rs('A', l).num_pos_roots(), l * (l + 1) / 2);
        }
        for l in 2..=8 {
            assert_eq!(rs('B', l).num_pos_roots(), l * l);
            assert_eq!(rs('C', l).num_pos_roots(), l * l);
        }
        for l in 4..=8 {
            assert_eq!(rs('D', l).num_pos_roots(), l * (l - 1));
        }
        assert_eq!(rs('E', 6).num_pos_roots(), 36);
        assert_eq!(rs('E', 7).num_pos_roots(), 63);
        assert_eq!(rs('E', 8).num_pos_roots(), 120);
        assert_eq!(rs('F', 4).num_pos_roots(), 24);
        assert_eq!(rs('G', 2).num_pos_roots(), 6);
    }

    #[test]
    fn a2_example_values() {
        let a2 = rs('A', 2);
        assert_eq!(a2.pos_roots.len(), 3);
        assert_eq!(a2.theta, vec![1, 1]);
        assert_eq!(a2.marks(), &[1, 1]);
        assert_eq!(a2.dual_coxeter, 3);
        assert_eq!(a2.exponents, vec![1, 2]);
    }

    #[test]
    fn g2_example_values() {
        let g2 = rs('G', 2);
        // heights of the six positive roots: 1,1,2,3,4,5
        let mut hs: Vec<i64> = g2.pos_roots.iter().map(|r| RootSystem::height(r)).collect();
        hs.sort_unstable();
        assert_eq!(hs, vec![1, 1, 2, 3, 4, 5]);
        assert_eq!(g2.exponents, vec![1, 5]);
        assert_eq!(g2.theta, vec![3, 2]);
        assert_eq!(g2.dual_coxeter, 4);
        // alpha_1 short with squared length 2/3 under the normalization
        assert_eq!(g2.gram[0][0], rat_frac(2, 3));
        assert_eq!(g2.gram[1][1], rat_i64(2));
    }

    #[test]
    fn dual_coxeter_table() {
        for l in 1..=8 {
            assert_eq!(rs('A', l).dual_coxeter, l as i64 + 1);
        }
        for l in 2..=8 {
            assert_eq!(rs('B', l).dual_coxeter, 2 * l as i64 - 1);
            assert_eq!(rs('C', l).dual_coxeter, l as i64 + 1);
        }
        for l in 4..=8 {
            assert_eq!(rs('D', l).dual_coxeter, 2 * l as i64 - 2);
        }
        assert_eq!(rs('E', 6).dual_coxeter, 12);
        assert_eq!(rs('E', 7).dual_coxeter, 18);
        assert_eq!(rs('E', 8).dual_coxeter, 30);
        assert_eq!(rs('F', 4).dual_coxeter, 9);
        assert_eq!(rs('G', 2).dual_coxeter, 4);
    }

    #[test]
    fn theta_is_long_and_highest() {
        for (l, r) in all_families(8) {
            let s = rs(l, r);
            assert_eq!(s.inner_ii(&s.theta, &s.theta), rat_i64(2), "{l}{r}");
            let max_h = s
                .pos_roots
                .iter()
                .map(|x| RootSystem::height(x))
                .max()
                .unwrap();
            assert_eq!(RootSystem::height(&s.theta), max_h);
            // dominance: theta pairs non-negatively with every simple coroot
            for i in 0..s.rank {
                assert!(s.pair_simple_coroot(&s.theta, i) >= 0);
            }
        }
    }

    #[test]
    fn exponent_invariants() {
        for (l, r) in all_families(8) {
            let s = rs(l, r);
            assert_eq!(
                s.exponents.iter().sum::<usize>(),
                s.num_pos_roots(),
                "{l}{r}"
            );
            assert_eq!(s.exponents[0], 1, "{l}{r}");
        }
        assert_eq!(rs('B', 3).exponents, vec![1, 3, 5]);
        assert_eq!(rs('D', 4).exponents, vec![1, 3, 3, 5]);
        assert_eq!(rs('E', 8).exponents, vec![1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(rs('F', 4).exponents, vec![1, 5, 7, 11]);
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        for (l, r) in all_families(6) {
            let s = rs(l, r);
            for i in 0..s.rank {
                let alpha_i: Vec<i64> = (0..s.rank).map(|j| (j == i) as i64).collect();
                assert_eq!(s.pair_coroot_rr(&s.rho, &alpha_i), rat_i64(1));
            }
        }
    }

    #[test]
    fn comarks_sum_to_dual_coxeter_minus_one() {
        for (l, r) in all_families(8) {
            let s = rs(l, r);
            let sum: i64 = s.comarks.iter().sum();
            assert_eq!(sum + 1, s.dual_coxeter, "{l}{r}");
        }
    }

    #[test]
    fn weyl_dim_basics() {
        let a2 = rs('A', 2);
        // adjoint: highest weight theta
        let theta: Vec<Rat> = a2.theta.iter().map(|&x| rat_i64(x)).collect();
        assert_eq!(a2.weyl_dim(&theta), Some(Int::from(8)));
        // theta + alpha_1 = 2a1 + a2 is the 10-dimensional module
        let lam = vec![rat_i64(2), rat_i64(1)];
        assert_eq!(a2.weyl_dim(&lam), Some(Int::from(10)));
        // non-dominant weight rejected
        let bad = vec![rat_i64(1), rat_i64(-1)];
        assert_eq!(a2.weyl_dim(&bad), None);
        let b2 = rs('B', 2);
        let theta_b: Vec<Rat> = b2.theta.iter().map(|&x| rat_i64(x)).collect();
        assert_eq!(b2.weyl_dim(&theta_b), Some(Int::from(10)));
        let g2 = rs('G', 2);
        let theta_g: Vec<Rat> = g2.theta.iter().map(|&x| rat_i64(x)).collect();
        assert_eq!(g2.weyl_dim(&theta_g), Some(Int::from(14)));
    }

    #[test]
    fn height_count_is_conjugate_to_exponents() {
        // the number of roots of height k equals the number of exponents >= k
        for (l, r) in all_families(8) {
            let s = rs(l, r);
            let max_h = s
                .pos_roots
                .iter()
                .map(|x| RootSystem::height(x))
                .max()
                .unwrap();
            for k in 1..=max_h {
                let count = s
                    .pos_roots
                    .iter()
                    .filter(|x| RootSystem::height(x) == k)
                    .count();
                let conj = s.exponents.iter().filter(|&&m| m >= k as usize).count();
                assert_eq!(count, conj, "{l}{r} height {k}");
            }
        }
    }

    #[test]
    fn marks_tables() {
        assert_eq!(rs('B', 4).marks(), &[1, 2, 2, 2]);
        assert_eq!(rs('C', 4).marks(), &[2, 2, 2, 1]);
        assert_eq!(rs('D', 5).marks(), &[1, 2, 2, 1, 1]);
        assert_eq!(rs('E', 6).marks(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(rs('E', 7).marks(), &[2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(rs('E', 8).marks(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(rs('F', 4).marks(), &[2, 3, 4, 2]);
        assert_eq!(rs('G', 2).marks(), &[3, 2]);
    }

    #[test]
    fn fundamental_coweights_pair_correctly() {
        for (l, r) in all_families(6) {
            let s = rs(l, r);
            // <alpha_j, varpi_i^vee> = delta_ij with varpi rows of inv_cartan
            for i in 0..s.rank {
                for j in 0..s.rank {
                    let mut acc = Rat::zero();
                    for k in 0..s.rank {
                        acc += &s.inv_cartan[i][k] * rat_i64(s.cartan[k][j]);
                    }
                    assert_eq!(acc, rat_i64((i == j) as i64));
                }
            }
        }
    }
}
