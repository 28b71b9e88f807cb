//! Cocycles on the loop algebra `g ⊗ F[t, 1/t]` built from invariant
//! polynomials: the normalized form in degree two, symmetrized defining-rep
//! traces above that. Everything is exact; the residue picks the
//! `1/t`-coefficient after powers add along multilinear expansion.

use crate::cartan::defining::{defining_rep, mul, trace, DefiningRep, Mat};
use crate::cartan::lie::LieAlgebra;
use crate::error::Error;
use crate::rat::{rat_i64, Rat};
use crate::Result;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::HashMap;

/// Sparse loop-algebra element: `(basis index, t-power) -> coefficient`.
pub type LoopElt = Vec<((usize, i64), Rat)>;

pub fn loop_term(basis: usize, power: i64, coeff: Rat) -> LoopElt {
    if coeff.is_zero() {
        Vec::new()
    } else {
        vec![((basis, power), coeff)]
    }
}

fn merge(mut terms: LoopElt) -> LoopElt {
    terms.sort_by_key(|(k, _)| *k);
    let mut out: LoopElt = Vec::new();
    for (k, c) in terms {
        match out.last_mut() {
            Some((k2, acc)) if *k2 == k => *acc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn loop_add(a: &LoopElt, b: &LoopElt) -> LoopElt {
    let mut all = a.clone();
    all.extend(b.iter().cloned());
    merge(all)
}

pub fn loop_scale(a: &LoopElt, c: &Rat) -> LoopElt {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// Bracket on the loop algebra: powers add.
pub fn loop_bracket(lie: &LieAlgebra, a: &LoopElt, b: &LoopElt) -> LoopElt {
    let mut out: LoopElt = Vec::new();
    for ((i, n), c) in a {
        for ((j, m), e) in b {
            for (k, f) in lie.bracket_basis(*i, *j) {
                out.push(((*k, n + m), c * e * rat_i64(*f)));
            }
        }
    }
    merge(out)
}

/// Formal derivative `v -> dv/dt`, tracked as the coefficient of `dt`.
pub fn loop_d(a: &LoopElt) -> LoopElt {
    merge(
        a.iter()
            .filter(|((_, n), _)| *n != 0)
            .map(|((i, n), c)| ((*i, n - 1), c * rat_i64(*n)))
            .collect(),
    )
}

/// Small random element for sampled identity checks: one or two terms,
/// powers and coefficients in a narrow band.
pub fn sample_loop<R: rand::Rng>(rng: &mut R, dim: usize) -> LoopElt {
    let terms = rng.gen_range(1..=2);
    let mut out: LoopElt = Vec::new();
    for _ in 0..terms {
        out.push((
            (rng.gen_range(0..dim), rng.gen_range(-3..=3)),
            rat_i64(rng.gen_range(-3..=3i64)),
        ));
    }
    merge(out)
}

fn permutations_signed(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sign: i64,
        out: &mut Vec<(Vec<usize>, i64)>,
    ) {
        if cur.len() == n {
            out.push((cur.clone(), sign));
            return;
        }
        for i in 0..n {
            if used[i] {
                continue;
            }
            // appending i creates one inversion per larger entry already placed
            let added = cur.iter().filter(|&&v| v > i).count();
            let s = if added % 2 == 0 { sign } else { -sign };
            used[i] = true;
            cur.push(i);
            rec(n, cur, used, s, out);
            cur.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], 1, &mut out);
    out
}

pub struct CocycleCtx<'a> {
    pub lie: &'a LieAlgebra,
    pub degree: usize,
    rep: Option<DefiningRep>,
    memo: RefCell<HashMap<Vec<usize>, Rat>>,
    perms: Vec<(Vec<usize>, i64)>,
}

impl<'a> CocycleCtx<'a> {
    /// `degree` is the `d` with the cocycle taking `2d` arguments and the
    /// invariant polynomial `d + 1`.
    pub fn new(lie: &'a LieAlgebra, degree: usize) -> Result<CocycleCtx<'a>> {
        if degree == 0 {
            return Err(Error::Usage("cocycle degree must be at least 1".into()));
        }
        let rep = if degree >= 2 {
            Some(defining_rep(lie)?)
        } else {
            None
        };
        Ok(CocycleCtx {
            lie,
            degree,
            rep,
            memo: RefCell::new(HashMap::new()),
            perms: permutations_signed(2 * degree),
        })
    }

    /// The invariant polynomial on a basis tuple: the normalized form for
    /// degree one, symmetrized trace over `(d+1)!` otherwise. Symmetric, so
    /// memoized on the sorted tuple.
    pub fn p_basis(&self, idxs: &[usize]) -> Rat {
        debug_assert_eq!(idxs.len(), self.degree + 1);
        if self.degree == 1 {
            return self.lie.form_basis(idxs[0], idxs[1]);
        }
        let mut key = idxs.to_vec();
        key.sort_unstable();
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let rep = self.rep.as_ref().unwrap();
        let mut total = Rat::zero();
        let mut fact = 1i64;
        for (k, _) in key.iter().enumerate() {
            fact *= (k + 1) as i64;
        }
        for (perm, _) in permutations_signed(key.len()) {
            let mut prod: Option<Mat> = None;
            for &slot in &perm {
                let m = &rep.mats[key[slot]];
                prod = Some(match prod {
                    None => m.clone(),
                    Some(p) => mul(&p, m),
                });
            }
            total += trace(&prod.unwrap());
        }
        let v = total / rat_i64(fact);
        self.memo.borrow_mut().insert(key, v.clone());
        v
    }

    /// Multilinear extension of `P` with the residue: only combinations
    /// whose powers sum to -1 contribute.
    fn p_residue(&self, args: &[LoopElt]) -> Rat {
        fn walk(
            ctx: &CocycleCtx,
            args: &[LoopElt],
            pos: usize,
            power: i64,
            coeff: Rat,
            idxs: &mut Vec<usize>,
            acc: &mut Rat,
        ) {
            if pos == args.len() {
                if power == -1 {
                    *acc += coeff * ctx.p_basis(idxs);
                }
                return;
            }
            for ((i, n), c) in &args[pos] {
                idxs.push(*i);
                walk(ctx, args, pos + 1, power + n, coeff.clone() * c, idxs, acc);
                idxs.pop();
            }
        }
        let mut acc = Rat::zero();
        let mut idxs = Vec::with_capacity(args.len());
        walk(self, args, 0, 0, rat_i64(1), &mut idxs, &mut acc);
        acc
    }

    /// The cocycle on `2d` loop elements.
    pub fn phi(&self, args: &[LoopElt]) -> Rat {
        assert_eq!(args.len(), 2 * self.degree, "argument count is 2d");
        let mut total = Rat::zero();
        for (perm, sign) in &self.perms {
            let mut p_args: Vec<LoopElt> = Vec::with_capacity(self.degree + 1);
            p_args.push(args[perm[0]].clone());
            for b in 0..self.degree - 1 {
                p_args.push(loop_bracket(
                    self.lie,
                    &args[perm[1 + 2 * b]],
                    &args[perm[2 + 2 * b]],
                ));
            }
            p_args.push(loop_d(&args[perm[2 * self.degree - 1]]));
            let term = self.p_residue(&p_args);
            if !term.is_zero() {
                total += rat_i64(*sign) * term;
            }
        }
        total
    }

    /// Closed form in degree one; the oracle for the permutation machinery.
    pub fn closed_form_d1(&self, x: usize, n: i64, y: usize, m: i64) -> Rat {
        if n + m != 0 {
            return Rat::zero();
        }
        rat_i64(m - n) * self.lie.form_basis(x, y)
    }

    /// Diagonal action of a constant loop `x (x) 1` on all slots; zero for
    /// an invariant cochain.
    pub fn invariance_defect(&self, x: usize, args: &[LoopElt]) -> Rat {
        let xconst = loop_term(x, 0, rat_i64(1));
        let mut total = Rat::zero();
        for i in 0..args.len() {
            let mut moved = args.to_vec();
            moved[i] = loop_bracket(self.lie, &xconst, &args[i]);
            total += self.phi(&moved);
        }
        total
    }

    /// Chevalley-Eilenberg differential on `2d + 1` arguments; zero for a
    /// closed cochain.
    pub fn closedness_defect(&self, args: &[LoopElt]) -> Rat {
        assert_eq!(args.len(), 2 * self.degree + 1);
        let mut total = Rat::zero();
        for i in 0..args.len() {
            for j in i + 1..args.len() {
                let bracket = loop_bracket(self.lie, &args[i], &args[j]);
                let mut rest: Vec<LoopElt> = vec![bracket];
                for (k, a) in args.iter().enumerate() {
                    if k != i && k != j {
                        rest.push(a.clone());
                    }
                }
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                total += rat_i64(sign) * self.phi(&rest);
            }
        }
        total
    }
}
