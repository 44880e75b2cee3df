//! Vertex partitions of `J(n,3)` and their quotient matrices.
//!
//! A [`TwoPartition`] assigns every vertex to cell 1 or cell 2 and caches the
//! exact (rational) quotient matrix. Cells are stored in a canonical
//! orientation: cell 1 is the cell with the larger exact diagonal entry
//! `b₁₁ ≥ b₂₂`; ties go to the smaller cell, then to the orientation whose
//! text form (a string over `{1,2}` indexed by colexicographic rank) is
//! lexicographically smaller.
//!
//! Text format, bit-exact:
//!
//! ```text
//! n=<int> w=3
//! 1122121...   (C(n,3) characters, position = colex rank)
//! ```
//!
//! JSON alternative: `{"n":12,"cells":{"1":[[1,2,3],...],"2":[...]}}`.

use num_rational::Rational64;
use num_traits::Zero;

use crate::bits::Bitset;
use crate::jgraph::{GraphContext, KSubset};
use crate::{binomial, Error, Result};

/// Average row sums of the adjacency matrix over a 2-partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientMatrix {
    b: [[Rational64; 2]; 2],
    equitable: bool,
}

impl QuotientMatrix {
    pub fn entries(&self) -> &[[Rational64; 2]; 2] {
        &self.b
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational64 {
        self.b[i][j]
    }

    pub fn is_equitable(&self) -> bool {
        self.equitable
    }

    /// Integer entries, available exactly when the partition is equitable.
    pub fn int_entries(&self) -> Option<[[i64; 2]; 2]> {
        if !self.b.iter().flatten().all(|r| r.is_integer()) {
            return None;
        }
        Some([
            [self.b[0][0].to_integer(), self.b[0][1].to_integer()],
            [self.b[1][0].to_integer(), self.b[1][1].to_integer()],
        ])
    }

    /// `θ = b₁₁ - b₂₁ = b₂₂ - b₁₂`; defined for equitable partitions.
    pub fn theta(&self) -> Result<Rational64> {
        if !self.equitable {
            return Err(Error::NotEquitable);
        }
        let t = self.b[0][0] - self.b[1][0];
        debug_assert_eq!(t, self.b[1][1] - self.b[0][1]);
        Ok(t)
    }
}

/// Computes `θ` of an equitable quotient matrix, asserting both expressions
/// agree.
pub fn theta_of(q: &QuotientMatrix) -> Result<Rational64> {
    let t = q.theta()?;
    if t != q.b[1][1] - q.b[0][1] {
        return Err(Error::InvalidMatrix("b11 - b21 != b22 - b12".to_string()));
    }
    Ok(t)
}

/// A witness that a partition is not equitable at some vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitableWitness {
    pub vertex: KSubset,
    pub cell: u8,
    /// Neighbours observed in each cell.
    pub observed: [u32; 2],
    /// The average row sums the vertex would have to match.
    pub required: [Rational64; 2],
}

/// A 2-partition of the vertex set of `J(n,3)` in canonical orientation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoPartition {
    ctx: GraphContext,
    cell1: Bitset,
    sizes: [usize; 2],
    quotient: QuotientMatrix,
}

impl std::fmt::Debug for TwoPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TwoPartition(n={}, |X1|={}, |X2|={})",
            self.ctx.n(),
            self.sizes[0],
            self.sizes[1]
        )
    }
}

/// Per-vertex counts of cell-1 neighbours, the basis of every quotient
/// computation.
fn cell1_neighbor_counts(ctx: GraphContext, cell1: &Bitset) -> Vec<u32> {
    let vertices = ctx.vertices();
    vertices
        .iter()
        .map(|v| {
            let mut c = 0u32;
            for u in v.neighbors(ctx).expect("valid vertex") {
                let r = u.rank(ctx).expect("valid vertex");
                if cell1.get(r) {
                    c += 1;
                }
            }
            c
        })
        .collect()
}

impl TwoPartition {
    /// Builds a partition from a cell-1 indicator over colex ranks,
    /// canonicalizing the orientation. Returns the partition and whether the
    /// two cells were swapped to reach canonical orientation.
    pub fn new_oriented(ctx: GraphContext, cell1: Bitset) -> Result<(Self, bool)> {
        if ctx.w() != 3 {
            return Err(Error::InvalidContext {
                n: ctx.n(),
                w: ctx.w(),
            });
        }
        let total = ctx.vertex_count();
        if cell1.len() != total {
            return Err(Error::Parse(format!(
                "indicator has {} positions, expected {}",
                cell1.len(),
                total
            )));
        }
        let n1 = cell1.count_ones();
        let n2 = total - n1;
        if n1 == 0 {
            return Err(Error::EmptyCell(1));
        }
        if n2 == 0 {
            return Err(Error::EmptyCell(2));
        }

        let counts = cell1_neighbor_counts(ctx, &cell1);
        let k = Rational64::from_integer(ctx.degree() as i64);
        let mut sum1: [i64; 2] = [0, 0];
        let mut min1: [u32; 2] = [u32::MAX, u32::MAX];
        let mut max1: [u32; 2] = [0, 0];
        for (r, &c) in counts.iter().enumerate() {
            let i = if cell1.get(r) { 0 } else { 1 };
            sum1[i] += c as i64;
            min1[i] = min1[i].min(c);
            max1[i] = max1[i].max(c);
        }
        let b11 = Rational64::new(sum1[0], n1 as i64);
        let b21 = Rational64::new(sum1[1], n2 as i64);
        let b22 = k - b21;
        let equitable = min1[0] == max1[0] && min1[1] == max1[1];

        let flip = match b11.cmp(&b22) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => match n1.cmp(&n2) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                // complementary strings differ at the very first position:
                // keep rank 0 (vertex 123) in cell 1
                std::cmp::Ordering::Equal => !cell1.get(0),
            },
        };

        let (cell1, sizes, b) = if flip {
            (
                cell1.complement(),
                [n2, n1],
                [[b22, k - b22], [k - b11, b11]],
            )
        } else {
            (cell1, [n1, n2], [[b11, k - b11], [b21, b22]])
        };
        Ok((
            TwoPartition {
                ctx,
                cell1,
                sizes,
                quotient: QuotientMatrix { b, equitable },
            },
            flip,
        ))
    }

    pub fn new(ctx: GraphContext, cell1: Bitset) -> Result<Self> {
        Self::new_oriented(ctx, cell1).map(|(p, _)| p)
    }

    /// Builds from a cell assignment slice over ranks (values 1 or 2).
    pub fn from_cells(ctx: GraphContext, cells: &[u8]) -> Result<Self> {
        if cells.iter().any(|&c| c != 1 && c != 2) {
            return Err(Error::Parse("cells must be 1 or 2".to_string()));
        }
        Self::new(ctx, cells.iter().map(|&c| c == 1).collect())
    }

    pub fn ctx(&self) -> GraphContext {
        self.ctx
    }

    pub fn cell1_bits(&self) -> &Bitset {
        &self.cell1
    }

    pub fn cell_sizes(&self) -> [usize; 2] {
        self.sizes
    }

    /// Cell of a rank: 1 or 2.
    pub fn cell_of_rank(&self, r: usize) -> u8 {
        if self.cell1.get(r) {
            1
        } else {
            2
        }
    }

    pub fn cell_of(&self, t: &KSubset) -> Result<u8> {
        Ok(self.cell_of_rank(t.rank(self.ctx)?))
    }

    /// The cell-1 indicator of a vertex (0 or 1).
    pub fn indicator(&self, t: &KSubset) -> Result<u32> {
        Ok(if self.cell_of(t)? == 1 { 1 } else { 0 })
    }

    pub fn quotient(&self) -> &QuotientMatrix {
        &self.quotient
    }

    pub fn is_equitable(&self) -> bool {
        self.quotient.equitable
    }

    pub fn theta(&self) -> Result<Rational64> {
        self.quotient.theta()
    }

    /// `None` when equitable, otherwise a concrete failing vertex.
    pub fn equitable_witness(&self) -> Option<EquitableWitness> {
        if self.is_equitable() {
            return None;
        }
        let counts = cell1_neighbor_counts(self.ctx, &self.cell1);
        let k = self.ctx.degree();
        for (r, &c1) in counts.iter().enumerate() {
            let cell = self.cell_of_rank(r);
            let i = (cell - 1) as usize;
            let required = [self.quotient.b[i][0], self.quotient.b[i][1]];
            let observed = [c1, k - c1];
            if Rational64::from_integer(c1 as i64) != required[0] {
                return Some(EquitableWitness {
                    vertex: KSubset::unrank(self.ctx, r).expect("rank valid"),
                    cell,
                    observed,
                    required,
                });
            }
        }
        None
    }

    /// Applies a permutation of the ground set; `sigma[i-1]` is the image of
    /// element `i`. The result is re-canonicalized.
    pub fn relabel(&self, sigma: &[u32]) -> Result<TwoPartition> {
        let n = self.ctx.n();
        validate_permutation(sigma, n)?;
        let mut bits = Bitset::new(self.ctx.vertex_count());
        for (r, v) in self.ctx.vertices().iter().enumerate() {
            let mut image: Vec<u32> = v
                .elements()
                .iter()
                .map(|&e| sigma[e as usize - 1])
                .collect();
            image.sort_unstable();
            let nr = KSubset::new(&image)?.rank(self.ctx)?;
            if self.cell1.get(r) {
                bits.set(nr, true);
            }
        }
        TwoPartition::new(self.ctx, bits)
    }

    /// Number of cell-1 vertices among the `n-2` triples containing `{x,y}`
    /// (the indicator sum of the clique `xy∗`).
    pub fn row_indicator_sum(&self, x: u32, y: u32) -> Result<u32> {
        if x == y {
            return Err(Error::EqualElements);
        }
        let star = crate::jgraph::clique_star(self.ctx, x, y)?;
        let mut s = 0;
        for t in star {
            s += self.indicator(&t)?;
        }
        Ok(s)
    }

    /// All `C(n,2)` clique indicator sums, indexed by pair colex rank.
    pub fn pair_star_sums(&self) -> Vec<u32> {
        let n = self.ctx.n();
        let mut sums = vec![0u32; binomial(n as u64, 2) as usize];
        for (r, v) in self.ctx.vertices().iter().enumerate() {
            if !self.cell1.get(r) {
                continue;
            }
            let e = v.elements();
            sums[pair_rank(e[0], e[1])] += 1;
            sums[pair_rank(e[0], e[2])] += 1;
            sums[pair_rank(e[1], e[2])] += 1;
        }
        sums
    }

    /// Local indicator identity at a vertex `abc`:
    /// `ind(abc)·(θ+3) + p₂₁ = Σ_{pairs xy ⊂ abc} ind-sum(xy∗)`.
    ///
    /// Requires an equitable partition (integer quotient entries).
    pub fn local_identity_check(&self, t: &KSubset) -> Result<bool> {
        let q = self.quotient.int_entries().ok_or(Error::NotEquitable)?;
        if !self.is_equitable() {
            return Err(Error::NotEquitable);
        }
        let theta = q[0][0] - q[1][0];
        let p21 = q[1][0];
        let e = t.elements();
        let lhs = self.indicator(t)? as i64 * (theta + 3) + p21;
        let rhs = self.row_indicator_sum(e[0], e[1])? as i64
            + self.row_indicator_sum(e[0], e[2])? as i64
            + self.row_indicator_sum(e[1], e[2])? as i64;
        Ok(lhs == rhs)
    }

    /// Disjoint-clique identity for distinct `a,b,c,d`:
    /// `sum(ab∗) - sum(cd∗) = (θ+3)/2 · (ind(abc)+ind(abd)-ind(acd)-ind(bcd))`.
    pub fn pair_difference_identity(&self, a: u32, b: u32, c: u32, d: u32) -> Result<bool> {
        require_distinct(&[a, b, c, d])?;
        let theta = self.theta()?;
        let half = (theta + Rational64::from_integer(3)) / Rational64::from_integer(2);
        let lhs = Rational64::from_integer(
            self.row_indicator_sum(a, b)? as i64 - self.row_indicator_sum(c, d)? as i64,
        );
        let ind =
            |x, y, z| -> Result<i64> { Ok(self.indicator(&KSubset::triple(x, y, z)?)? as i64) };
        let rhs = half
            * Rational64::from_integer(
                ind(a, b, c)? + ind(a, b, d)? - ind(a, c, d)? - ind(b, c, d)?,
            );
        Ok(lhs == rhs)
    }

    /// Shared-element identity for distinct `a,b,c,d,e`:
    /// `sum(ab∗) - sum(ac∗) = (θ+3)/2 ·
    ///  (ind(abd)+ind(abe)+ind(cde)-ind(acd)-ind(ace)-ind(bde))`.
    pub fn row_difference_identity(&self, a: u32, b: u32, c: u32, d: u32, e: u32) -> Result<bool> {
        require_distinct(&[a, b, c, d, e])?;
        let theta = self.theta()?;
        let half = (theta + Rational64::from_integer(3)) / Rational64::from_integer(2);
        let lhs = Rational64::from_integer(
            self.row_indicator_sum(a, b)? as i64 - self.row_indicator_sum(a, c)? as i64,
        );
        let ind =
            |x, y, z| -> Result<i64> { Ok(self.indicator(&KSubset::triple(x, y, z)?)? as i64) };
        let rhs = half
            * Rational64::from_integer(
                ind(a, b, d)? + ind(a, b, e)? + ind(c, d, e)?
                    - ind(a, c, d)?
                    - ind(a, c, e)?
                    - ind(b, d, e)?,
            );
        Ok(lhs == rhs)
    }

    /// Text form: header line plus one character per rank.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={} w=3\n", self.ctx.n());
        s.reserve(self.cell1.len() + 1);
        for p in 0..self.cell1.len() {
            s.push(if self.cell1.get(p) { '1' } else { '2' });
        }
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<TwoPartition> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let header = header.trim();
        let mut n = None;
        let mut w = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("n=") {
                n = Some(
                    v.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad n: {e}")))?,
                );
            } else if let Some(v) = tok.strip_prefix("w=") {
                w = Some(
                    v.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad w: {e}")))?,
                );
            } else {
                return Err(Error::Parse(format!("unexpected header token {tok:?}")));
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing n= in header".into()))?;
        let w = w.ok_or_else(|| Error::Parse("missing w= in header".into()))?;
        if w != 3 {
            return Err(Error::Parse(format!("unsupported w={w}, expected 3")));
        }
        let ctx = GraphContext::new(n, 3)?;
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing cell line".into()))?
            .trim();
        if line.len() != ctx.vertex_count() {
            return Err(Error::Parse(format!(
                "cell line has {} characters, expected {}",
                line.len(),
                ctx.vertex_count()
            )));
        }
        let mut cells = Vec::with_capacity(line.len());
        for (off, ch) in line.chars().enumerate() {
            match ch {
                '1' => cells.push(1),
                '2' => cells.push(2),
                other => {
                    return Err(Error::Parse(format!(
                        "invalid cell character {other:?} at offset {off}"
                    )))
                }
            }
        }
        TwoPartition::from_cells(ctx, &cells)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut cells1 = Vec::new();
        let mut cells2 = Vec::new();
        for (r, v) in self.ctx.vertices().iter().enumerate() {
            let entry: Vec<u32> = v.elements().to_vec();
            if self.cell1.get(r) {
                cells1.push(entry);
            } else {
                cells2.push(entry);
            }
        }
        serde_json::json!({
            "n": self.ctx.n(),
            "cells": { "1": cells1, "2": cells2 },
        })
    }

    pub fn from_json(text: &str) -> Result<TwoPartition> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad json: {e}")))?;
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("missing integer field \"n\"".into()))?
            as u32;
        let ctx = GraphContext::new(n, 3)?;
        let cells = v
            .get("cells")
            .and_then(|x| x.as_object())
            .ok_or_else(|| Error::Parse("missing object field \"cells\"".into()))?;
        let mut assignment = vec![0u8; ctx.vertex_count()];
        for (label, cell) in [("1", 1u8), ("2", 2u8)] {
            let list = cells
                .get(label)
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse(format!("missing cell array \"{label}\"")))?;
            for item in list {
                let elems: Vec<u32> = item
                    .as_array()
                    .ok_or_else(|| Error::Parse("cell entries must be arrays".into()))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|e| e as u32)
                            .ok_or_else(|| Error::Parse("elements must be integers".into()))
                    })
                    .collect::<Result<_>>()?;
                let t = KSubset::new(&elems)?;
                let r = t.rank(ctx)?;
                if assignment[r] != 0 {
                    return Err(Error::Parse(format!("vertex {t} assigned twice")));
                }
                assignment[r] = cell;
            }
        }
        if let Some(r) = assignment.iter().position(|&c| c == 0) {
            return Err(Error::Parse(format!(
                "vertex {} not assigned to any cell",
                KSubset::unrank(ctx, r).expect("rank valid")
            )));
        }
        TwoPartition::from_cells(ctx, &assignment)
    }

    /// Parses either format, deciding by the leading character.
    pub fn parse(text: &str) -> Result<TwoPartition> {
        if text.trim_start().starts_with('{') {
            TwoPartition::from_json(text)
        } else {
            TwoPartition::from_text(text)
        }
    }
}

/// Colex rank of a pair `{x,y}` with `x != y`.
pub(crate) fn pair_rank(x: u32, y: u32) -> usize {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    (a as usize - 1) + binomial(b as u64 - 1, 2) as usize
}

pub(crate) fn validate_permutation(sigma: &[u32], n: u32) -> Result<()> {
    if sigma.len() != n as usize {
        return Err(Error::Parse(format!(
            "permutation has {} entries, expected {n}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; n as usize + 1];
    for &img in sigma {
        if img < 1 || img > n || seen[img as usize] {
            return Err(Error::Parse("not a permutation of [1..n]".to_string()));
        }
        seen[img as usize] = true;
    }
    Ok(())
}

fn require_distinct(elems: &[u32]) -> Result<()> {
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::EqualElements);
    }
    Ok(())
}

/// A 3-partition of the vertex set, cells labelled 1..=3.
#[derive(Clone, PartialEq, Eq)]
pub struct ThreePartition {
    ctx: GraphContext,
    cells: Vec<u8>,
    sizes: [usize; 3],
}

impl ThreePartition {
    pub fn from_cells(ctx: GraphContext, cells: Vec<u8>) -> Result<Self> {
        if ctx.w() != 3 {
            return Err(Error::InvalidContext {
                n: ctx.n(),
                w: ctx.w(),
            });
        }
        if cells.len() != ctx.vertex_count() {
            return Err(Error::Parse(format!(
                "assignment has {} entries, expected {}",
                cells.len(),
                ctx.vertex_count()
            )));
        }
        let mut sizes = [0usize; 3];
        for &c in &cells {
            if !(1..=3).contains(&c) {
                return Err(Error::Parse("cells must be 1, 2 or 3".to_string()));
            }
            sizes[c as usize - 1] += 1;
        }
        for (i, &s) in sizes.iter().enumerate() {
            if s == 0 {
                return Err(Error::EmptyCell(i as u8 + 1));
            }
        }
        Ok(ThreePartition { ctx, cells, sizes })
    }

    pub fn ctx(&self) -> GraphContext {
        self.ctx
    }

    pub fn cell_of_rank(&self, r: usize) -> u8 {
        self.cells[r]
    }

    pub fn cell_sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Average row-sum matrix and whether every vertex meets it exactly.
    pub fn quotient(&self) -> ([[Rational64; 3]; 3], bool) {
        let mut sums = [[0i64; 3]; 3];
        let mut minc = [[u32::MAX; 3]; 3];
        let mut maxc = [[0u32; 3]; 3];
        for (r, v) in self.ctx.vertices().iter().enumerate() {
            let i = self.cells[r] as usize - 1;
            let mut row = [0u32; 3];
            for u in v.neighbors(self.ctx).expect("valid vertex") {
                let j = self.cells[u.rank(self.ctx).expect("valid")] as usize - 1;
                row[j] += 1;
            }
            for j in 0..3 {
                sums[i][j] += row[j] as i64;
                minc[i][j] = minc[i][j].min(row[j]);
                maxc[i][j] = maxc[i][j].max(row[j]);
            }
        }
        let mut b = [[Rational64::zero(); 3]; 3];
        let mut equitable = true;
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = Rational64::new(sums[i][j], self.sizes[i] as i64);
                equitable &= minc[i][j] == maxc[i][j];
            }
        }
        (b, equitable)
    }

    pub fn is_equitable(&self) -> bool {
        self.quotient().1
    }

    /// Merges cells into a 2-partition: `to_cell1` lists the 3-partition
    /// cells forming the first merged cell. Returns the canonical partition
    /// and whether canonicalization swapped the merged cells.
    pub fn merge(&self, to_cell1: &[u8]) -> Result<(TwoPartition, bool)> {
        let bits: Bitset = self.cells.iter().map(|c| to_cell1.contains(c)).collect();
        TwoPartition::new_oriented(self.ctx, bits)
    }
}
