//! Quotients of the exterior algebra on two copies of `g` (and on a single
//! copy) by the ideal generated by the structure maps, organized by bidegree
//! and weight.
//!
//! Every ideal generator is weight homogeneous, so each bidegree component
//! splits into independent weight blocks. A block is an echelonized row
//! space over that block's monomials; quotient data (dimensions, canonical
//! representatives, invariant subspaces) all come from those blocks.
//! Finished blocks can be persisted to disk keyed by the structure-constant
//! hash, so reruns and cache-off runs agree by construction.

use crate::cartan::lie::LieAlgebra;
use crate::error::Error;
use crate::exterior::{submasks, ExtCtx, ExtElt, Monomial};
use crate::linalg::{rank_rat, Echelon, IntRow, RatRow};
use crate::rat::{rat_i64, Int, Rat};
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

/// Default ceiling on the largest weight block of a bidegree component.
/// Sized so the rank-one and rank-two type A grids run outright while the
/// heavier rank-two families need an explicit opt-in.
pub const DEFAULT_MAX_BLOCK_DIM: usize = 700;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// Two copies, ideal generated by all three structure maps.
    A,
    /// Two copies, ideal generated by the per-copy maps only.
    B,
    /// One copy, ideal generated by the single structure map.
    Single,
}

impl AlgebraKind {
    /// Structure maps and their bidegree offsets.
    fn maps(&self) -> &'static [(u8, usize, usize)] {
        match self {
            AlgebraKind::A => &[(1, 2, 0), (2, 0, 2), (3, 1, 1)],
            AlgebraKind::B => &[(1, 2, 0), (2, 0, 2)],
            AlgebraKind::Single => &[(1, 2, 0)],
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            AlgebraKind::A => "A",
            AlgebraKind::B => "B",
            AlgebraKind::Single => "K",
        }
    }
}

pub struct Block {
    /// Columns, in mask order.
    pub monomials: Vec<Monomial>,
    col: HashMap<Monomial, usize>,
    pub ech: Echelon,
}

impl Block {
    fn new(monomials: Vec<Monomial>) -> Block {
        let col = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Block {
            monomials,
            col,
            ech: Echelon::new(),
        }
    }

    pub fn dim_total(&self) -> usize {
        self.monomials.len()
    }

    pub fn dim_quot(&self) -> usize {
        self.monomials.len() - self.ech.rank()
    }

    /// Quotient basis: the non-pivot columns.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.monomials.len())
            .filter(|c| !self.ech.is_pivot(*c))
            .collect()
    }
}

pub struct Component {
    pub p: usize,
    pub q: usize,
    pub blocks: BTreeMap<Vec<i64>, Block>,
}

impl Component {
    pub fn dim_total(&self) -> usize {
        self.blocks.values().map(|b| b.dim_total()).sum()
    }

    pub fn dim_quot(&self) -> usize {
        self.blocks.values().map(|b| b.dim_quot()).sum()
    }

    pub fn quot_dim_by_weight(&self) -> BTreeMap<Vec<i64>, usize> {
        self.blocks
            .iter()
            .filter(|(_, b)| b.dim_quot() > 0)
            .map(|(w, b)| (w.clone(), b.dim_quot()))
            .collect()
    }

    /// Weight-multiset symmetry of the quotient under negation.
    pub fn weights_symmetric(&self) -> bool {
        let dims = self.quot_dim_by_weight();
        dims.iter().all(|(w, d)| {
            let neg: Vec<i64> = w.iter().map(|x| -x).collect();
            dims.get(&neg) == Some(d)
        })
    }
}

pub struct QuotientCtx<'a> {
    pub lie: &'a LieAlgebra,
    ext: ExtCtx<'a>,
    pub kind: AlgebraKind,
    pub max_block_dim: usize,
    pub cache_dir: Option<PathBuf>,
    components: HashMap<(usize, usize), Component>,
}

impl<'a> QuotientCtx<'a> {
    pub fn new(
        lie: &'a LieAlgebra,
        kind: AlgebraKind,
        max_block_dim: usize,
        cache_dir: Option<PathBuf>,
    ) -> Result<QuotientCtx<'a>> {
        Ok(QuotientCtx {
            lie,
            ext: ExtCtx::new(lie)?,
            kind,
            max_block_dim,
            cache_dir,
            components: HashMap::new(),
        })
    }

    pub fn ext(&self) -> &ExtCtx<'a> {
        &self.ext
    }

    pub fn component(&mut self, p: usize, q: usize) -> Result<&Component> {
        if !self.components.contains_key(&(p, q)) {
            let comp = self.build_component(p, q)?;
            self.components.insert((p, q), comp);
        }
        Ok(&self.components[&(p, q)])
    }

    fn build_component(&self, p: usize, q: usize) -> Result<Component> {
        if matches!(self.kind, AlgebraKind::Single) && q != 0 {
            return Err(Error::Internal("single-copy component with q > 0".into()));
        }
        if let Some(comp) = self.load_cached(p, q) {
            return Ok(comp);
        }
        let n = self.lie.dim;

        // columns, grouped by weight; outer loop over the second copy keeps
        // each group in mask order
        let mut groups: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
        for g2 in submasks(n, q) {
            for g1 in submasks(n, p) {
                let m = Monomial { g1, g2 };
                groups.entry(m.weight(self.lie)).or_default().push(m);
            }
        }
        let mut sizes: Vec<usize> = groups.values().map(|v| v.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(&biggest) = sizes.first() {
            if biggest > self.max_block_dim {
                return Err(Error::Resource {
                    family: self.lie.rs.family_name(),
                    algebra: self.kind.tag().into(),
                    p,
                    q,
                    block_dim: biggest,
                    budget: self.max_block_dim,
                    largest: sizes.into_iter().take(5).collect(),
                });
            }
        }
        let mut blocks: BTreeMap<Vec<i64>, Block> = groups
            .into_iter()
            .map(|(w, ms)| (w, Block::new(ms)))
            .collect();

        // ideal rows: structure-map images wedged with a complementary
        // monomial; each row is weight homogeneous
        for &(which, dp, dq) in self.kind.maps() {
            if p < dp || q < dq {
                continue;
            }
            let images: Vec<ExtElt> = (0..n)
                .map(|x| self.ext.c_map(which, &[(x, rat_i64(1))].to_vec()))
                .collect();
            for g2 in submasks(n, q - dq) {
                for g1 in submasks(n, p - dp) {
                    let mcomp = Monomial { g1, g2 };
                    for image in &images {
                        let row = image.wedge(&ExtElt::term(mcomp, rat_i64(1)));
                        if row.is_zero() {
                            continue;
                        }
                        let w = row.0.keys().next().unwrap().weight(self.lie);
                        let block = blocks.get_mut(&w).ok_or_else(|| {
                            Error::Internal("generator row outside its weight block".into())
                        })?;
                        let rat_row: RatRow = row
                            .0
                            .iter()
                            .map(|(m, c)| (block.col[m], c.clone()))
                            .collect();
                        block.ech.insert_rat(&rat_row);
                    }
                }
            }
        }
        let comp = Component { p, q, blocks };
        self.store_cached(&comp)?;
        Ok(comp)
    }

    /// Canonical representative modulo the ideal, supported on non-pivot
    /// monomials.
    pub fn reduce(&mut self, p: usize, q: usize, elt: &ExtElt) -> Result<ExtElt> {
        self.component(p, q)?;
        let comp = &self.components[&(p, q)];
        let mut by_weight: BTreeMap<Vec<i64>, Vec<(Monomial, Rat)>> = BTreeMap::new();
        for (m, c) in &elt.0 {
            let (mp, mq) = m.bidegree();
            if (mp, mq) != (p, q) {
                return Err(Error::Inhomogeneous { p, q });
            }
            by_weight
                .entry(m.weight(self.lie))
                .or_default()
                .push((*m, c.clone()));
        }
        let mut out = ExtElt::zero();
        for (w, terms) in by_weight {
            let block = comp
                .blocks
                .get(&w)
                .ok_or_else(|| Error::Internal("term outside every weight block".into()))?;
            let row: RatRow = terms
                .iter()
                .map(|(m, c)| (block.col[m], c.clone()))
                .collect();
            for (cidx, c) in block.ech.reduce(&row) {
                out.add_term(block.monomials[cidx], c);
            }
        }
        Ok(out)
    }

    /// Dimension of the `g`-invariant part of the quotient in bidegree
    /// `(p,q)`: the joint kernel of all simple raising and lowering
    /// operators on the weight-zero quotient block.
    pub fn invariant_dim(&mut self, p: usize, q: usize) -> Result<usize> {
        self.component(p, q)?;
        let zero_w = vec![0i64; self.lie.rs.rank];
        let dim0 = match self.components[&(p, q)].blocks.get(&zero_w) {
            Some(b) => b.dim_quot(),
            None => return Ok(0),
        };
        if dim0 == 0 {
            return Ok(0);
        }
        let free0: Vec<Monomial> = {
            let b = &self.components[&(p, q)].blocks[&zero_w];
            b.free_columns().iter().map(|&c| b.monomials[c]).collect()
        };
        let ops: Vec<usize> = (0..self.lie.rs.rank)
            .flat_map(|i| [self.lie.simple_e(i), self.lie.simple_f(i)])
            .collect();
        // image of each quotient basis vector under all operators at once;
        // the invariant dimension is the kernel dimension of that stack
        let mut images: Vec<RatRow> = vec![RatRow::new(); dim0];
        let mut offset = 0usize;
        for op in ops {
            for (j, m) in free0.iter().enumerate() {
                let acted = self.ext.diag_act(op, &ExtElt::term(*m, rat_i64(1)));
                let reduced = self.reduce(p, q, &acted)?;
                let comp = &self.components[&(p, q)];
                for (mono, c) in &reduced.0 {
                    let w = mono.weight(self.lie);
                    let block = &comp.blocks[&w];
                    let free = block.free_columns();
                    let local = free
                        .iter()
                        .position(|&fc| block.monomials[fc] == *mono)
                        .ok_or_else(|| Error::Internal("reduced term on pivot column".into()))?;
                    images[j].push((offset + local, c.clone()));
                }
            }
            // operators target different weights; give each its own column
            // range so ranks stack correctly
            let span: usize = self.components[&(p, q)]
                .blocks
                .values()
                .map(|b| b.dim_quot())
                .sum();
            offset += span;
        }
        for row in &mut images {
            row.sort_by_key(|(c, _)| *c);
        }
        Ok(dim0 - rank_rat(&images))
    }

    /// Least `k >= 1` with the `k`-th power of the invariant element in the
    /// ideal.
    pub fn s_power_order(&mut self, max_k: usize) -> Result<Option<usize>> {
        let s = self.ext.s_element();
        let mut cur = s.clone();
        for k in 1..=max_k {
            if cur.is_zero() || self.reduce(k, k, &cur)?.is_zero() {
                return Ok(Some(k));
            }
            cur = cur.wedge(&s);
        }
        Ok(None)
    }

    fn cache_path(&self, p: usize, q: usize) -> Option<PathBuf> {
        let dir = self.cache_dir.as_ref()?;
        Some(
            dir.join(self.lie.rs.family_name())
                .join(format!("{}_{p}_{q}.json", self.kind.tag())),
        )
    }

    fn load_cached(&self, p: usize, q: usize) -> Option<Component> {
        let path = self.cache_path(p, q)?;
        let data = std::fs::read_to_string(&path).ok()?;
        let parsed: CachedComponent = serde_json::from_str(&data).ok()?;
        if parsed.content_hash != self.lie.content_hash() {
            return None;
        }
        let mut blocks = BTreeMap::new();
        for cb in parsed.blocks {
            let monomials: Vec<Monomial> = cb
                .monomials
                .iter()
                .map(|&(g1, g2)| Monomial { g1, g2 })
                .collect();
            let mut block = Block::new(monomials);
            for row in cb.rows {
                let int_row: IntRow = row
                    .iter()
                    .map(|(c, s)| Int::from_str(s).map(|v| (*c, v)))
                    .collect::<std::result::Result<_, _>>()
                    .ok()?;
                block.ech.insert(int_row);
            }
            blocks.insert(cb.weight, block);
        }
        Some(Component { p, q, blocks })
    }

    fn store_cached(&self, comp: &Component) -> Result<()> {
        let Some(path) = self.cache_path(comp.p, comp.q) else {
            return Ok(());
        };
        let cached = CachedComponent {
            content_hash: self.lie.content_hash(),
            kind: self.kind.tag().into(),
            p: comp.p,
            q: comp.q,
            blocks: comp
                .blocks
                .iter()
                .map(|(w, b)| CachedBlock {
                    weight: w.clone(),
                    monomials: b.monomials.iter().map(|m| (m.g1, m.g2)).collect(),
                    rows: b
                        .ech
                        .rows()
                        .iter()
                        .map(|r| r.iter().map(|(c, v)| (*c, v.to_string())).collect())
                        .collect(),
                })
                .collect(),
        };
        let dir = path.parent().unwrap();
        std::fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
        let mut tmp =
            tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::Cache(e.to_string()))?;
        serde_json::to_writer(&mut tmp, &cached).map_err(|e| Error::Cache(e.to_string()))?;
        tmp.flush().map_err(|e| Error::Cache(e.to_string()))?;
        tmp.persist(&path)
            .map_err(|e| Error::Cache(e.to_string()))?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CachedComponent {
    content_hash: String,
    kind: String,
    p: usize,
    q: usize,
    blocks: Vec<CachedBlock>,
}

#[derive(Serialize, Deserialize)]
struct CachedBlock {
    weight: Vec<i64>,
    monomials: Vec<(u64, u64)>,
    rows: Vec<Vec<(usize, String)>>,
}
