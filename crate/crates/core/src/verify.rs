//! Named verification suites over one algebra. Every check returns a
//! `Report`; budget refusals surface as skips, never as silent success.

use crate::abelian::{enumerate_ideals, mask_to_indices, xi_circle, zeta_match};
use crate::affweyl::AffWeyl;
use crate::cartan::lie::LieAlgebra;
use crate::cartan::RootSystem;
use crate::error::Error;
use crate::loop_cocycle::{sample_loop, CocycleCtx};
use crate::quotient::{AlgebraKind, QuotientCtx};
use crate::rat::{rat_i64, Rat};
use crate::report::{timed, Report, Status};
use crate::Result;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;

#[derive(Clone, Debug)]
pub struct VerifyOpts {
    pub letter: char,
    pub rank: usize,
    pub max_block_dim: usize,
    pub max_total_degree: usize,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    pub samples: usize,
}

impl VerifyOpts {
    pub fn new(letter: char, rank: usize) -> VerifyOpts {
        VerifyOpts {
            letter,
            rank,
            max_block_dim: crate::quotient::DEFAULT_MAX_BLOCK_DIM,
            max_total_degree: 6,
            cache_dir: None,
            seed: 0,
            samples: 100,
        }
    }
}

/// Closed-form dual Coxeter numbers, the oracle against the computed route.
pub fn expected_dual_coxeter(letter: char, rank: usize) -> i64 {
    let l = rank as i64;
    match letter {
        'A' => l + 1,
        'B' => 2 * l - 1,
        'C' => l + 1,
        'D' => 2 * l - 2,
        'E' => match rank {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        'F' => 9,
        _ => 4,
    }
}

pub fn combinatorial(o: &VerifyOpts) -> Result<Vec<Report>> {
    let rs = RootSystem::new(o.letter, o.rank)?;
    let fam = rs.family_name();
    let aw = AffWeyl::new(&rs);
    let mut reports = Vec::new();

    reports.push(timed("dual-coxeter", &fam, "", || {
        let want = expected_dual_coxeter(o.letter, o.rank);
        if rs.dual_coxeter == want {
            (Status::Pass, format!("h = {}", rs.dual_coxeter))
        } else {
            (
                Status::Fail,
                format!("computed h = {}, table says {want}", rs.dual_coxeter),
            )
        }
    }));

    let mut elements = Vec::new();
    reports.push(timed("alcove-count", &fam, "", || {
        elements = aw.enumerate_doubled();
        let want = 1usize << o.rank;
        if elements.len() == want {
            (Status::Pass, format!("{} elements", elements.len()))
        } else {
            (
                Status::Fail,
                format!("expected {want}, found {}", elements.len()),
            )
        }
    }));

    reports.push(timed("alcove-lengths", &fam, "", || {
        for w in &elements {
            let by_word = w.len() as i64;
            let by_inv = match aw.inversions(&w.word) {
                Ok(inv) => inv.len() as i64,
                Err(e) => return (Status::Fail, e.to_string()),
            };
            let by_sep = aw.separation_count(w);
            if by_word != by_inv || by_word != by_sep {
                return (
                    Status::Fail,
                    format!(
                        "word {:?}: depth {by_word}, inversions {by_inv}, separation {by_sep}",
                        w.word
                    ),
                );
            }
        }
        (
            Status::Pass,
            format!("three length routes agree on {} elements", elements.len()),
        )
    }));

    let ideals = enumerate_ideals(&rs);
    reports.push(timed("peterson", &fam, "", || {
        let want = 1usize << o.rank;
        if ideals.len() != want {
            return (
                Status::Fail,
                format!("expected {want} abelian ideals, found {}", ideals.len()),
            );
        }
        let mut sizes: Vec<usize> = ideals.iter().map(|m| m.count_ones() as usize).collect();
        let mut lengths: Vec<usize> = elements.iter().map(|w| w.len()).collect();
        sizes.sort_unstable();
        lengths.sort_unstable();
        if sizes == lengths {
            (
                Status::Pass,
                format!("{} ideals; sizes match alcove lengths", ideals.len()),
            )
        } else {
            (Status::Fail, "size and length multisets differ".into())
        }
    }));

    reports.push(timed("zeta", &fam, "", || {
        match zeta_match(&rs, &aw, &elements, &ideals) {
            Ok(m) => {
                let mut seen: Vec<&[usize]> = m.elements.iter().map(|w| &w.word[..]).collect();
                seen.sort_unstable();
                seen.dedup();
                if seen.len() == ideals.len() {
                    (
                        Status::Pass,
                        format!("bijection on {} ideals", ideals.len()),
                    )
                } else {
                    (Status::Fail, "matched elements repeat".into())
                }
            }
            Err(e) => (Status::Fail, e.to_string()),
        }
    }));

    reports.push(timed("suter", &fam, "", || {
        let max = xi_circle(&rs, &ideals)
            .iter()
            .map(|m| m.count_ones() as i64)
            .max()
            .unwrap_or(0);
        if max == rs.dual_coxeter - 1 {
            (Status::Pass, format!("extreme ideal size = {max} = h - 1"))
        } else {
            (
                Status::Fail,
                format!(
                    "extreme ideal size {max} differs from h - 1 = {}",
                    rs.dual_coxeter - 1
                ),
            )
        }
    }));

    reports.push(timed("rho-hat", &fam, "", || {
        let rho = aw.rho_hat();
        for w in &elements {
            let moved = aw.apply_inv_weight(&w.word, &rho);
            if moved.level != rho.level {
                return (Status::Fail, format!("level moved for word {:?}", w.word));
            }
            if rho.delta.clone() - &moved.delta != rat_i64(w.len() as i64) {
                return (
                    Status::Fail,
                    format!("delta drop is not the length for word {:?}", w.word),
                );
            }
            if aw.rho_drop_root_coords(w).is_none() {
                return (
                    Status::Fail,
                    format!("finite drop leaves the root lattice for word {:?}", w.word),
                );
            }
        }
        (
            Status::Pass,
            format!(
                "level, delta, and lattice identities hold on {} elements",
                elements.len()
            ),
        )
    }));

    reports.push(timed("d-degree", &fam, "", || {
        let n = elements.len();
        let mut checked = 0usize;
        let run = |u: &crate::affweyl::AffElt,
                   v: &crate::affweyl::AffElt,
                   w: &crate::affweyl::AffElt|
         -> Option<String> {
            match aw.d_degree(u, v, w) {
                Ok(d) if d == aw.d_degree_by_length(u, v, w) => None,
                Ok(d) => Some(format!(
                    "routes disagree ({d} vs {}) on ({:?},{:?},{:?})",
                    aw.d_degree_by_length(u, v, w),
                    u.word,
                    v.word,
                    w.word
                )),
                Err(e) => Some(e.to_string()),
            }
        };
        if n * n * n <= 40_000 {
            for u in &elements {
                for v in &elements {
                    for w in &elements {
                        if let Some(msg) = run(u, v, w) {
                            return (Status::Fail, msg);
                        }
                        checked += 1;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
            for _ in 0..o.samples * 10 {
                let u = &elements[rng.gen_range(0..n)];
                let v = &elements[rng.gen_range(0..n)];
                let w = &elements[rng.gen_range(0..n)];
                if let Some(msg) = run(u, v, w) {
                    return (Status::Fail, msg);
                }
                checked += 1;
            }
        }
        (
            Status::Pass,
            format!("two routes agree on {checked} triples"),
        )
    }));

    Ok(reports)
}

fn grid_cell(outcome: Result<usize>) -> (Status, String) {
    match outcome {
        Ok(d) => (Status::Pass, format!("dim = {d}")),
        Err(Error::Resource {
            block_dim, budget, ..
        }) => (
            Status::SkippedResource,
            format!("block {block_dim} over budget {budget}"),
        ),
        Err(e) => (Status::Fail, e.to_string()),
    }
}

fn s_power_cell(ctx: &mut QuotientCtx, h: i64) -> (Status, String) {
    match ctx.s_power_order(h as usize) {
        Ok(Some(k)) if k as i64 == h => (Status::Pass, format!("order = {k} = h")),
        Ok(Some(k)) => (Status::Fail, format!("order = {k}, h = {h}")),
        Ok(None) => (Status::Fail, format!("S^{h} is still nonzero")),
        Err(Error::Resource {
            block_dim, budget, ..
        }) => (
            Status::SkippedResource,
            format!("block {block_dim} over budget {budget}"),
        ),
        Err(e) => (Status::Fail, e.to_string()),
    }
}

/// Standalone S-power report against the dual Coxeter prediction.
pub fn s_power(o: &VerifyOpts) -> Result<Report> {
    let lie = LieAlgebra::new(RootSystem::new(o.letter, o.rank)?)?;
    let fam = lie.rs.family_name();
    let h = lie.rs.dual_coxeter;
    match QuotientCtx::new(&lie, AlgebraKind::A, o.max_block_dim, o.cache_dir.clone()) {
        Ok(mut ctx) => Ok(timed("s-power", &fam, "", || s_power_cell(&mut ctx, h))),
        Err(Error::TooManySlots { dim, max }) => Ok(timed("s-power", &fam, "", || {
            (
                Status::SkippedResource,
                format!("algebra dimension {dim} exceeds the {max}-slot monomial encoding"),
            )
        })),
        Err(e) => Err(e),
    }
}

/// One report per bidegree cell up to the configured total degree. The
/// single-copy kind only has cells with `q = 0`.
pub fn invariants_grid(o: &VerifyOpts, kind: AlgebraKind) -> Result<Vec<Report>> {
    let rs = RootSystem::new(o.letter, o.rank)?;
    let lie = LieAlgebra::new(rs)?;
    let fam = lie.rs.family_name();
    let mut reports = Vec::new();
    let mut ctx = match QuotientCtx::new(&lie, kind, o.max_block_dim, o.cache_dir.clone()) {
        Ok(c) => c,
        Err(Error::TooManySlots { dim, max }) => {
            reports.push(timed("invariants", &fam, "", || {
                (
                    Status::SkippedResource,
                    format!("algebra dimension {dim} exceeds the {max}-slot monomial encoding"),
                )
            }));
            return Ok(reports);
        }
        Err(e) => return Err(e),
    };
    for n in 0..=o.max_total_degree {
        for p in 0..=n {
            let q = n - p;
            if kind == AlgebraKind::Single && q > 0 {
                continue;
            }
            reports.push(timed("invariants", &fam, &format!("p={p} q={q}"), || {
                grid_cell(ctx.invariant_dim(p, q))
            }));
        }
    }
    Ok(reports)
}

pub fn algebraic(o: &VerifyOpts) -> Result<Vec<Report>> {
    let rs = RootSystem::new(o.letter, o.rank)?;
    let lie = LieAlgebra::new(rs)?;
    let fam = lie.rs.family_name();
    let h = lie.rs.dual_coxeter;
    let mut reports = Vec::new();

    let mut ctx = match QuotientCtx::new(&lie, AlgebraKind::A, o.max_block_dim, o.cache_dir.clone())
    {
        Ok(c) => c,
        Err(Error::TooManySlots { dim, max }) => {
            reports.push(timed("invariants", &fam, "", || {
                (
                    Status::SkippedResource,
                    format!("algebra dimension {dim} exceeds the {max}-slot monomial encoding"),
                )
            }));
            return Ok(reports);
        }
        Err(e) => return Err(e),
    };
    for n in 0..=o.max_total_degree {
        for p in 0..=n {
            let q = n - p;
            reports.push(timed("invariants", &fam, &format!("p={p} q={q}"), || {
                grid_cell(ctx.invariant_dim(p, q))
            }));
        }
    }

    reports.push(timed("s-power", &fam, "", || s_power_cell(&mut ctx, h)));

    let ideals = enumerate_ideals(&lie.rs);
    let max_ideal = ideals
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut bctx = QuotientCtx::new(&lie, AlgebraKind::B, o.max_block_dim, o.cache_dir.clone())?;
    for n in 0..=2 * max_ideal {
        reports.push(timed("b-series", &fam, &format!("n={n}"), || {
            let mut total = 0usize;
            for p in 0..=n {
                match bctx.invariant_dim(p, n - p) {
                    Ok(d) => total += d,
                    Err(Error::Resource {
                        block_dim, budget, ..
                    }) => {
                        return (
                            Status::SkippedResource,
                            format!("block {block_dim} over budget {budget}"),
                        )
                    }
                    Err(e) => return (Status::Fail, e.to_string()),
                }
            }
            if n % 2 == 1 && total != 0 {
                (Status::Fail, format!("odd degree carries dim {total}"))
            } else {
                (Status::Pass, format!("dim = {total}"))
            }
        }));
    }

    let mut kctx = QuotientCtx::new(
        &lie,
        AlgebraKind::Single,
        o.max_block_dim,
        o.cache_dir.clone(),
    )?;
    reports.push(timed("kostant", &fam, "", || {
        let max_size = ideals
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let top = (max_size + 2).min(lie.dim);
        let mut quot_dims = Vec::new();
        for p in 0..=top {
            let comp = match kctx.component(p, 0) {
                Ok(c) => c,
                Err(Error::Resource {
                    block_dim, budget, ..
                }) => {
                    return (
                        Status::SkippedResource,
                        format!("block {block_dim} over budget {budget}"),
                    )
                }
                Err(e) => return (Status::Fail, e.to_string()),
            };
            if !comp.weights_symmetric() {
                return (
                    Status::Fail,
                    format!("degree {p} weight multiset is not negation symmetric"),
                );
            }
            quot_dims.push(comp.dim_quot());
        }
        let mut ideal_dims = vec![num_bigint::BigInt::from(0); top + 1];
        for &mask in &ideals {
            let size = mask.count_ones() as usize;
            if size > top {
                continue;
            }
            let mut root_coords = vec![0i64; lie.rs.rank];
            for i in mask_to_indices(mask) {
                for (c, a) in root_coords.iter_mut().zip(&lie.rs.pos_roots[i]) {
                    *c += a;
                }
            }
            let coords: Vec<Rat> = root_coords.iter().map(|&c| rat_i64(c)).collect();
            match lie.rs.weyl_dim(&coords) {
                Some(d) => ideal_dims[size] += d,
                None => {
                    return (
                        Status::Fail,
                        format!("ideal sum {root_coords:?} is not dominant"),
                    )
                }
            }
        }
        let quot_as_big: Vec<num_bigint::BigInt> = quot_dims
            .iter()
            .map(|&d| num_bigint::BigInt::from(d))
            .collect();
        if quot_as_big == ideal_dims {
            (
                Status::Pass,
                format!("dims {quot_dims:?} match ideal character sums; weights symmetric"),
            )
        } else {
            (
                Status::Fail,
                format!("quotient dims {quot_dims:?} vs ideal sums {ideal_dims:?}"),
            )
        }
    }));

    Ok(reports)
}

/// Cocycle checks for one degree; degree one also compares against the
/// closed two-argument form.
pub fn cocycle_degree(o: &VerifyOpts, d: usize) -> Result<Vec<Report>> {
    let rs = RootSystem::new(o.letter, o.rank)?;
    let lie = LieAlgebra::new(rs)?;
    let fam = lie.rs.family_name();
    let ctx = CocycleCtx::new(&lie, d)?;
    let params = format!("d={d}");
    let mut reports = Vec::new();

    if d == 1 {
        reports.push(timed("cocycle-pairs", &fam, &params, || {
            let mut checked = 0usize;
            let pair = |x: usize, n: i64, y: usize, m: i64| -> bool {
                let got = ctx.phi(&[
                    crate::loop_cocycle::loop_term(x, n, rat_i64(1)),
                    crate::loop_cocycle::loop_term(y, m, rat_i64(1)),
                ]);
                got == ctx.closed_form_d1(x, n, y, m)
            };
            if lie.dim <= 10 {
                for x in 0..lie.dim {
                    for y in 0..lie.dim {
                        for n in -5..=5 {
                            for m in -5..=5 {
                                if !pair(x, n, y, m) {
                                    return (
                                        Status::Fail,
                                        format!("mismatch at ({x},{n}) ({y},{m})"),
                                    );
                                }
                                checked += 1;
                            }
                        }
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
                for _ in 0..o.samples {
                    let (x, y) = (rng.gen_range(0..lie.dim), rng.gen_range(0..lie.dim));
                    let (n, m) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5));
                    if !pair(x, n, y, m) {
                        return (Status::Fail, format!("mismatch at ({x},{n}) ({y},{m})"));
                    }
                    checked += 1;
                }
            }
            (
                Status::Pass,
                format!("closed form matches on {checked} pairs"),
            )
        }));
    }

    let inv_samples = (o.samples / (5 * d)).max(4);
    let closed_samples = (o.samples / (6 * d)).max(4);

    reports.push(timed("cocycle-invariance", &fam, &params, || {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(d as u64));
        for _ in 0..inv_samples {
            let args: Vec<_> = (0..2 * d).map(|_| sample_loop(&mut rng, lie.dim)).collect();
            let x = rng.gen_range(0..lie.dim);
            if !ctx.invariance_defect(x, &args).is_zero() {
                return (Status::Fail, format!("defect nonzero for basis {x}"));
            }
        }
        (
            Status::Pass,
            format!("defect zero on {inv_samples} samples"),
        )
    }));

    reports.push(timed("cocycle-closed", &fam, &params, || {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(100 + d as u64));
        for _ in 0..closed_samples {
            let args: Vec<_> = (0..2 * d + 1)
                .map(|_| sample_loop(&mut rng, lie.dim))
                .collect();
            if !ctx.closedness_defect(&args).is_zero() {
                return (Status::Fail, "differential is nonzero".into());
            }
        }
        (
            Status::Pass,
            format!("differential zero on {closed_samples} samples"),
        )
    }));

    Ok(reports)
}

pub fn cocycle(o: &VerifyOpts) -> Result<Vec<Report>> {
    let degrees: &[usize] = if matches!(o.letter, 'A' | 'B' | 'C' | 'D') {
        &[1, 2]
    } else {
        &[1]
    };
    let mut reports = Vec::new();
    for &d in degrees {
        reports.extend(cocycle_degree(o, d)?);
    }
    Ok(reports)
}

/// Cross-module series equality: the even invariant dimensions of the
/// two-map quotient, the alcove length counts, and the abelian ideal size
/// counts must give the same polynomial.
fn poincare(o: &VerifyOpts) -> Result<Report> {
    let lie = LieAlgebra::new(RootSystem::new(o.letter, o.rank)?)?;
    let fam = lie.rs.family_name();
    let aw = AffWeyl::new(&lie.rs);
    let ideals = enumerate_ideals(&lie.rs);
    let max_ideal = ideals
        .iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(timed("poincare", &fam, "", || {
        let mut by_size = vec![0usize; max_ideal + 1];
        for m in &ideals {
            by_size[m.count_ones() as usize] += 1;
        }
        let mut by_len = vec![0usize; max_ideal + 1];
        for w in aw.enumerate_doubled() {
            if w.len() > max_ideal {
                return (
                    Status::Fail,
                    format!("alcove length {} exceeds ideal sizes", w.len()),
                );
            }
            by_len[w.len()] += 1;
        }
        let mut bctx =
            match QuotientCtx::new(&lie, AlgebraKind::B, o.max_block_dim, o.cache_dir.clone()) {
                Ok(c) => c,
                Err(Error::TooManySlots { dim, max }) => {
                    return (
                        Status::SkippedResource,
                        format!("algebra dimension {dim} exceeds the {max}-slot monomial encoding"),
                    )
                }
                Err(e) => return (Status::Fail, e.to_string()),
            };
        let mut by_degree = vec![0usize; max_ideal + 1];
        for (k, slot) in by_degree.iter_mut().enumerate() {
            for p in 0..=2 * k {
                match bctx.invariant_dim(p, 2 * k - p) {
                    Ok(d) => *slot += d,
                    Err(Error::Resource {
                        block_dim, budget, ..
                    }) => {
                        return (
                            Status::SkippedResource,
                            format!("block {block_dim} over budget {budget}"),
                        )
                    }
                    Err(e) => return (Status::Fail, e.to_string()),
                }
            }
        }
        if by_degree == by_size && by_size == by_len {
            (
                Status::Pass,
                format!("series {by_size:?} agrees across quotient, alcoves, ideals"),
            )
        } else {
            (
                Status::Fail,
                format!("quotient {by_degree:?}, alcoves {by_len:?}, ideals {by_size:?}"),
            )
        }
    }))
}

pub fn full(o: &VerifyOpts) -> Result<Vec<Report>> {
    let mut reports = combinatorial(o)?;
    reports.extend(algebraic(o)?);
    reports.extend(cocycle(o)?);
    reports.push(poincare(o)?);
    Ok(reports)
}
