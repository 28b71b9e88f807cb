//! Exterior algebra on two copies of a Lie algebra, with exact rational
//! coefficients.
//!
//! A monomial is a pair of bitmasks, one per copy, over the `N` basis slots
//! of the algebra (`N <= 63`). Monomial order is numeric order of the
//! combined `2N`-bit mask, copy-two bits high. All signs come from counting
//! slot crossings against that fixed order.

use crate::cartan::lie::{LieAlgebra, LieVec};
use crate::error::Error;
use crate::rat::{rat_i64, rat_signed, Rat};
use crate::Result;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub g1: u64,
    pub g2: u64,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.g2, self.g1).cmp(&(other.g2, other.g1))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Pairs `(i, j)` with `i` a set bit of `x`, `j` a set bit of `y`, `i > j`.
fn cross64(x: u64, y: u64) -> u32 {
    let mut count = 0;
    let mut rest = x;
    while rest != 0 {
        let i = rest.trailing_zeros();
        count += (y & ((1u64 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    count
}

impl Monomial {
    pub const EMPTY: Monomial = Monomial { g1: 0, g2: 0 };

    pub fn single(copy: u8, slot: usize) -> Monomial {
        match copy {
            1 => Monomial {
                g1: 1 << slot,
                g2: 0,
            },
            2 => Monomial {
                g1: 0,
                g2: 1 << slot,
            },
            _ => unreachable!("copy is 1 or 2"),
        }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.g1.count_ones() as usize, self.g2.count_ones() as usize)
    }

    pub fn degree(&self) -> usize {
        let (p, q) = self.bidegree();
        p + q
    }

    /// Concatenation product; `None` on a repeated slot.
    pub fn wedge(&self, other: &Monomial) -> Option<(Monomial, i64)> {
        if self.g1 & other.g1 != 0 || self.g2 & other.g2 != 0 {
            return None;
        }
        let crossings = cross64(self.g1, other.g1)
            + cross64(self.g2, other.g2)
            + self.g2.count_ones() * other.g1.count_ones();
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        Some((
            Monomial {
                g1: self.g1 | other.g1,
                g2: self.g2 | other.g2,
            },
            sign,
        ))
    }

    /// Weight in simple-root coordinates: sum of the slot weights.
    pub fn weight(&self, lie: &LieAlgebra) -> Vec<i64> {
        let mut w = vec![0i64; lie.rs.rank];
        for mask in [self.g1, self.g2] {
            let mut rest = mask;
            while rest != 0 {
                let s = rest.trailing_zeros() as usize;
                for (k, wk) in lie.weight(s).iter().enumerate() {
                    w[k] += wk;
                }
                rest &= rest - 1;
            }
        }
        w
    }
}

/// Elements are kept in monomial order so iteration, text output, and the
/// row extraction in the quotient layer all agree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtElt(pub BTreeMap<Monomial, Rat>);

impl ExtElt {
    pub fn zero() -> ExtElt {
        ExtElt(BTreeMap::new())
    }

    pub fn term(m: Monomial, c: Rat) -> ExtElt {
        let mut e = ExtElt::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add_assign(&mut self, other: &ExtElt) {
        for (m, c) in &other.0 {
            self.add_term(*m, c.clone());
        }
    }

    pub fn scale(&self, c: &Rat) -> ExtElt {
        if c.is_zero() {
            return ExtElt::zero();
        }
        ExtElt(self.0.iter().map(|(m, x)| (*m, x * c)).collect())
    }

    pub fn wedge(&self, other: &ExtElt) -> ExtElt {
        let mut out = ExtElt::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                if let Some((m, sign)) = ma.wedge(mb) {
                    out.add_term(m, ca * cb * rat_i64(sign));
                }
            }
        }
        out
    }
}

pub struct ExtCtx<'a> {
    pub lie: &'a LieAlgebra,
}

impl<'a> ExtCtx<'a> {
    pub fn new(lie: &'a LieAlgebra) -> Result<ExtCtx<'a>> {
        if lie.dim > 63 {
            return Err(Error::TooManySlots {
                dim: lie.dim,
                max: 63,
            });
        }
        Ok(ExtCtx { lie })
    }

    /// A general algebra element as a degree-one element of the given copy.
    pub fn embed(&self, copy: u8, v: &LieVec) -> ExtElt {
        let mut out = ExtElt::zero();
        for (idx, c) in v {
            out.add_term(Monomial::single(copy, *idx), c.clone());
        }
        out
    }

    /// `sum_k embed_a([x, b_k]) ^ embed_b(b_k-dual)` for a basis/dual pair
    /// list; the three structure maps and the invariant two-slot element are
    /// all instances.
    fn pair_sum(
        &self,
        copy_a: u8,
        copy_b: u8,
        x: Option<&LieVec>,
        pairs: &[(LieVec, LieVec)],
    ) -> ExtElt {
        let mut out = ExtElt::zero();
        for (u, v) in pairs {
            let left = match x {
                Some(x) => self.embed(copy_a, &self.lie.bracket(x, u)),
                None => self.embed(copy_a, u),
            };
            out.add_assign(&left.wedge(&self.embed(copy_b, v)));
        }
        out
    }

    fn default_pairs(&self) -> Vec<(LieVec, LieVec)> {
        (0..self.lie.dim)
            .map(|k| (vec![(k, rat_i64(1))], self.lie.dual[k].clone()))
            .collect()
    }

    pub fn c_map(&self, which: u8, x: &LieVec) -> ExtElt {
        self.c_map_with(which, x, &self.default_pairs())
    }

    /// Same maps computed from an arbitrary basis/dual-basis pair list.
    pub fn c_map_with(&self, which: u8, x: &LieVec, pairs: &[(LieVec, LieVec)]) -> ExtElt {
        let (a, b) = match which {
            1 => (1, 1),
            2 => (2, 2),
            3 => (1, 2),
            _ => unreachable!("maps are numbered 1..3"),
        };
        self.pair_sum(a, b, Some(x), pairs)
    }

    pub fn s_element(&self) -> ExtElt {
        self.s_element_with(&self.default_pairs())
    }

    pub fn s_element_with(&self, pairs: &[(LieVec, LieVec)]) -> ExtElt {
        self.pair_sum(1, 2, None, pairs)
    }

    /// Diagonal adjoint action of basis element `x` as a derivation.
    pub fn diag_act(&self, x: usize, elt: &ExtElt) -> ExtElt {
        let mut out = ExtElt::zero();
        for (m, c) in &elt.0 {
            for copy in [1u8, 2u8] {
                let mask = if copy == 1 { m.g1 } else { m.g2 };
                let mut rest = mask;
                while rest != 0 {
                    let s = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    for (k, n) in self.lie.bracket_basis(x, s) {
                        let coeff = c * rat_i64(*n);
                        if *k == s {
                            out.add_term(*m, coeff);
                            continue;
                        }
                        if mask & (1u64 << k) != 0 {
                            continue;
                        }
                        let (lo, hi) = (s.min(*k), s.max(*k));
                        let between = mask
                            & !(1u64 << s)
                            & ((1u64 << hi) - 1)
                            & !((1u64 << lo) | ((1u64 << lo) - 1));
                        let sign = if between.count_ones() % 2 == 0 { 1 } else { -1 };
                        let new_mask = (mask & !(1u64 << s)) | (1u64 << k);
                        let nm = if copy == 1 {
                            Monomial {
                                g1: new_mask,
                                g2: m.g2,
                            }
                        } else {
                            Monomial {
                                g1: m.g1,
                                g2: new_mask,
                            }
                        };
                        out.add_term(nm, coeff * rat_i64(sign));
                    }
                }
            }
        }
        out
    }

    /// Weight-homogeneity check; `Err` carries the offending bidegree.
    pub fn weight_of(&self, elt: &ExtElt) -> Result<Option<Vec<i64>>> {
        let mut seen: Option<Vec<i64>> = None;
        for m in elt.0.keys() {
            let w = m.weight(self.lie);
            match &seen {
                None => seen = Some(w),
                Some(prev) if *prev != w => {
                    let (p, q) = m.bidegree();
                    return Err(Error::Inhomogeneous { p, q });
                }
                _ => {}
            }
        }
        Ok(seen)
    }

    pub fn text(&self, elt: &ExtElt) -> String {
        if elt.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &elt.0 {
            let mut slots = Vec::new();
            for (copy, mask) in [(1u8, m.g1), (2u8, m.g2)] {
                let mut rest = mask;
                while rest != 0 {
                    let s = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    slots.push(format!("{}({})", self.lie.basis_name(s), copy));
                }
            }
            let body = if slots.is_empty() {
                "1".into()
            } else {
                slots.join("^")
            };
            parts.push(format!("{}·{}", rat_signed(c), body));
        }
        parts.join(" ")
    }
}

/// All `k`-subsets of `n` slots as bitmasks, in numeric order.
pub fn submasks(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut mask: u64 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while mask < limit {
        out.push(mask);
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootSystem;
    use crate::linalg::invert_dense;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a1() -> LieAlgebra {
        LieAlgebra::new(RootSystem::new('A', 1).unwrap()).unwrap()
    }

    fn basis_vec(i: usize) -> LieVec {
        vec![(i, rat_i64(1))]
    }

    #[test]
    fn crossing_count_examples() {
        assert_eq!(cross64(0b100, 0b011), 2);
        assert_eq!(cross64(0b011, 0b100), 0);
        assert_eq!(cross64(0b1010, 0b0101), 3);
    }

    #[test]
    fn wedge_anticommutes_on_slots() {
        let a = Monomial::single(1, 0);
        let b = Monomial::single(1, 2);
        let (m1, s1) = a.wedge(&b).unwrap();
        let (m2, s2) = b.wedge(&a).unwrap();
        assert_eq!(m1, m2);
        assert_eq!(s1, -s2);
        assert!(a.wedge(&a).is_none());
        // slots in different copies still anticommute
        let c = Monomial::single(2, 0);
        let (_, s3) = a.wedge(&c).unwrap();
        let (_, s4) = c.wedge(&a).unwrap();
        assert_eq!(s3, -s4);
    }

    fn random_elt(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> ExtElt {
        let mut e = ExtElt::zero();
        for _ in 0..terms {
            let m = Monomial {
                g1: rng.gen::<u64>() & ((1 << n) - 1),
                g2: rng.gen::<u64>() & ((1 << n) - 1),
            };
            e.add_term(m, rat_i64(rng.gen_range(-4..=4)));
        }
        e
    }

    #[test]
    fn wedge_is_associative_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let a = random_elt(&mut rng, 6, 3);
            let b = random_elt(&mut rng, 6, 3);
            let c = random_elt(&mut rng, 6, 3);
            assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        }
    }

    #[test]
    fn odd_degree_elements_square_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            // elements homogeneous of odd total degree anticommute with
            // themselves
            let deg = 2 * rng.gen_range(0..2) + 1;
            let choices = submasks(8, deg);
            let mut e = ExtElt::zero();
            for _ in 0..3 {
                let m = Monomial {
                    g1: choices[rng.gen_range(0..choices.len())],
                    g2: 0,
                };
                e.add_term(m, rat_i64(rng.gen_range(-3..=3)));
            }
            assert!(e.wedge(&e).is_zero());
        }
    }

    #[test]
    fn a1_structure_maps_match_hand_expansion() {
        let g = a1();
        let ctx = ExtCtx::new(&g).unwrap();
        // basis order: e (0), h (1), f (2)
        let c1h = ctx.c_map(1, &basis_vec(1));
        let mut expect = ExtElt::zero();
        expect.add_term(Monomial { g1: 0b101, g2: 0 }, rat_i64(4));
        assert_eq!(c1h, expect);
        assert_eq!(ctx.text(&c1h), "+4·e1(1)^f1(1)");

        let c1e = ctx.c_map(1, &basis_vec(0));
        let mut expect = ExtElt::zero();
        expect.add_term(Monomial { g1: 0b011, g2: 0 }, rat_i64(-2));
        assert_eq!(c1e, expect, "c1(e) = -2 e^h");

        let c1f = ctx.c_map(1, &basis_vec(2));
        let mut expect = ExtElt::zero();
        expect.add_term(Monomial { g1: 0b110, g2: 0 }, rat_i64(-2));
        assert_eq!(c1f, expect, "c1(f) = 2 f^h = -2 h^f in slot order");

        // c2 mirrors c1 into the second copy
        let c2h = ctx.c_map(2, &basis_vec(1));
        let mut expect = ExtElt::zero();
        expect.add_term(Monomial { g1: 0, g2: 0b101 }, rat_i64(4));
        assert_eq!(c2h, expect);
    }

    #[test]
    fn a1_invariant_element_text() {
        let g = a1();
        let ctx = ExtCtx::new(&g).unwrap();
        let s = ctx.s_element();
        assert_eq!(
            ctx.text(&s),
            "+1·f1(1)^e1(2) +1/2·h1(1)^h1(2) +1·e1(1)^f1(2)"
        );
    }

    #[test]
    fn s_element_is_diagonal_invariant() {
        for (l, r) in [('A', 1), ('A', 2), ('B', 2), ('G', 2)] {
            let g = LieAlgebra::new(RootSystem::new(l, r).unwrap()).unwrap();
            let ctx = ExtCtx::new(&g).unwrap();
            let s = ctx.s_element();
            for x in 0..g.dim {
                assert!(ctx.diag_act(x, &s).is_zero(), "{l}{r} basis {x}");
            }
        }
    }

    #[test]
    fn structure_maps_are_equivariant() {
        // diag_act(x, c_i(y)) == c_i([x, y]) on every basis pair
        for (l, r) in [('A', 1), ('A', 2), ('B', 2)] {
            let g = LieAlgebra::new(RootSystem::new(l, r).unwrap()).unwrap();
            let ctx = ExtCtx::new(&g).unwrap();
            for which in [1u8, 2, 3] {
                for x in 0..g.dim {
                    for y in 0..g.dim {
                        let lhs = ctx.diag_act(x, &ctx.c_map(which, &basis_vec(y)));
                        let xy = g.bracket(&basis_vec(x), &basis_vec(y));
                        let rhs = ctx.c_map(which, &xy);
                        assert_eq!(lhs, rhs, "{l}{r} map {which} pair ({x},{y})");
                    }
                }
            }
        }
    }

    #[test]
    fn diag_act_satisfies_leibniz() {
        // independent oracle: expand the derivation property directly on
        // sampled pairs
        let g = LieAlgebra::new(RootSystem::new('A', 2).unwrap()).unwrap();
        let ctx = ExtCtx::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let a = random_elt(&mut rng, g.dim, 2);
            let b = random_elt(&mut rng, g.dim, 2);
            for x in 0..g.dim {
                let lhs = ctx.diag_act(x, &a.wedge(&b));
                let mut rhs = ctx.diag_act(x, &a).wedge(&b);
                rhs.add_assign(&a.wedge(&ctx.diag_act(x, &b)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    /// Change of basis `b'_k = sum_j T[j][k] b_j` with duals transported by
    /// the inverse transpose; the maps and the invariant element must not
    /// move.
    #[test]
    fn maps_are_basis_independent() {
        let g = LieAlgebra::new(RootSystem::new('A', 2).unwrap()).unwrap();
        let ctx = ExtCtx::new(&g).unwrap();
        let n = g.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let (t, tinv) = loop {
                let t: Vec<Vec<Rat>> = (0..n)
                    .map(|_| (0..n).map(|_| rat_i64(rng.gen_range(-2..=2))).collect())
                    .collect();
                if let Some(tinv) = invert_dense(&t) {
                    break (t, tinv);
                }
            };
            let pairs: Vec<(LieVec, LieVec)> = (0..n)
                .map(|k| {
                    let u: LieVec = (0..n)
                        .filter(|j| !t[*j][k].is_zero())
                        .map(|j| (j, t[j][k].clone()))
                        .collect();
                    // dual of b'_k: sum_i tinv[k][i] * dual_i
                    let mut dual: LieVec = Vec::new();
                    for i in 0..n {
                        if tinv[k][i].is_zero() {
                            continue;
                        }
                        for (idx, c) in &g.dual[i] {
                            dual.push((*idx, c * &tinv[k][i]));
                        }
                    }
                    dual.sort_by_key(|(i, _)| *i);
                    let mut merged: LieVec = Vec::new();
                    for (i, c) in dual {
                        match merged.last_mut() {
                            Some((j, acc)) if *j == i => *acc += c,
                            _ => merged.push((i, c)),
                        }
                    }
                    merged.retain(|(_, c)| !c.is_zero());
                    (u, merged)
                })
                .collect();
            assert_eq!(ctx.s_element_with(&pairs), ctx.s_element());
            for which in [1u8, 2, 3] {
                for x in 0..n {
                    assert_eq!(
                        ctx.c_map_with(which, &basis_vec(x), &pairs),
                        ctx.c_map(which, &basis_vec(x)),
                        "map {which} at basis {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn weights_add_under_wedge() {
        let g = LieAlgebra::new(RootSystem::new('B', 2).unwrap()).unwrap();
        let ctx = ExtCtx::new(&g).unwrap();
        let a = Monomial::single(1, 0);
        let b = Monomial::single(2, 3);
        let (m, _) = a.wedge(&b).unwrap();
        let wa = a.weight(&g);
        let wb = b.weight(&g);
        let wm = m.weight(&g);
        for i in 0..g.rs.rank {
            assert_eq!(wm[i], wa[i] + wb[i]);
        }
        // structure map output is weight homogeneous
        for x in 0..g.dim {
            let e = ctx.c_map(3, &basis_vec(x));
            if !e.is_zero() {
                let w = ctx.weight_of(&e).unwrap().unwrap();
                assert_eq!(w, g.weight(x).to_vec());
            }
        }
    }

    #[test]
    fn submask_enumeration() {
        assert_eq!(submasks(4, 0), vec![0]);
        assert_eq!(submasks(4, 4), vec![0b1111]);
        assert_eq!(submasks(4, 2).len(), 6);
        assert_eq!(
            submasks(4, 2),
            vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]
        );
        assert!(submasks(3, 5).is_empty());
        // binomial sanity at the sizes the quotient layer uses
        assert_eq!(submasks(8, 3).len(), 56);
    }

    #[test]
    fn slot_budget_is_enforced() {
        let g = LieAlgebra::new(RootSystem::new('B', 8).unwrap()).unwrap();
        // dim 136 > 63
        assert!(matches!(
            ExtCtx::new(&g),
            Err(Error::TooManySlots { dim: 136, max: 63 })
        ));
    }
}
