//! The Johnson graph `J(n,w)` for `w ∈ {1,2,3}`.
//!
//! Vertices are the `w`-subsets of `[n] = {1,..,n}`; two vertices are
//! adjacent exactly when their intersection has `w-1` elements. Elements are
//! 1-based, ranks are 0-based colexicographic: the rank of `{e₁<..<e_w}` is
//! `Σᵢ C(eᵢ-1, i)`, so the rank grows with the largest element first.
//!
//! For `w = 3` the neighbourhood of `abc` is a `3 × (n-3)` lattice: three
//! rows `ab∗`, `ac∗`, `bc∗` (the vertices sharing a pair with the base) and
//! `n-3` columns indexed by `i ∉ {a,b,c}` (the three vertices that swap one
//! base element for `i`).

use crate::{binomial, Error, Result};

/// Parameters of a Johnson graph `J(n,w)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphContext {
    n: u32,
    w: u32,
}

impl GraphContext {
    /// Requires `1 <= w <= 3`, `n >= 2w` and `5 <= n <= 99`.
    pub fn new(n: u32, w: u32) -> Result<Self> {
        if !(1..=3).contains(&w) || n < 2 * w || !(5..=99).contains(&n) {
            return Err(Error::InvalidContext { n, w });
        }
        Ok(GraphContext { n, w })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    /// `C(n, w)`.
    pub fn vertex_count(&self) -> usize {
        binomial(self.n as u64, self.w as u64) as usize
    }

    /// Valency `w(n-w)`.
    pub fn degree(&self) -> u32 {
        self.w * (self.n - self.w)
    }

    /// `λ_i(n,w) = (w-i)(n-w-i) - i` for `0 <= i <= w`.
    pub fn eigenvalue(&self, i: u32) -> Result<i64> {
        if i > self.w {
            return Err(Error::EigenvalueIndex {
                index: i,
                w: self.w,
            });
        }
        let (n, w, i) = (self.n as i64, self.w as i64, i as i64);
        Ok((w - i) * (n - w - i) - i)
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum {
            values: (0..=self.w)
                .map(|i| self.eigenvalue(i).expect("index in range"))
                .collect(),
        }
    }

    /// All vertices in colexicographic (rank) order.
    pub fn vertices(&self) -> Vec<KSubset> {
        (0..self.vertex_count())
            .map(|r| KSubset::unrank(*self, r).expect("rank in range"))
            .collect()
    }
}

/// The distinct eigenvalues of `J(n,w)`, indexed `0..=w`.
///
/// For `w = 3` these are `k = 3(n-3)`, `λ₁ = 2n-9`, `λ₂ = n-7`, `λ₃ = -3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    values: Vec<i64>,
}

impl Spectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The valency `k = λ₀`.
    pub fn k(&self) -> i64 {
        self.values[0]
    }
}

/// A vertex of `J(n,w)`: a strictly increasing `w`-subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset {
    elems: [u32; 3],
    w: u8,
}

impl KSubset {
    pub fn new(elements: &[u32]) -> Result<Self> {
        if elements.is_empty() || elements.len() > 3 {
            return Err(Error::WrongArity {
                expected: 3,
                got: elements.len(),
            });
        }
        if !elements.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::NotStrictlyIncreasing);
        }
        for &e in elements {
            if !(1..=99).contains(&e) {
                return Err(Error::ElementOutOfRange { element: e, n: 99 });
            }
        }
        let mut elems = [0u32; 3];
        elems[..elements.len()].copy_from_slice(elements);
        Ok(KSubset {
            elems,
            w: elements.len() as u8,
        })
    }

    /// Convenience constructor for a triple `{a,b,c}` given in any order.
    pub fn triple(a: u32, b: u32, c: u32) -> Result<Self> {
        let mut e = [a, b, c];
        e.sort_unstable();
        if e[0] == e[1] || e[1] == e[2] {
            return Err(Error::NotStrictlyIncreasing);
        }
        KSubset::new(&e)
    }

    pub fn pair(a: u32, b: u32) -> Result<Self> {
        if a == b {
            return Err(Error::EqualElements);
        }
        KSubset::new(&[a.min(b), a.max(b)])
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems[..self.w as usize]
    }

    pub fn arity(&self) -> u32 {
        self.w as u32
    }

    pub fn contains(&self, e: u32) -> bool {
        self.elements().contains(&e)
    }

    /// Checks the subset fits the context (arity and element range).
    pub fn validate(&self, ctx: GraphContext) -> Result<()> {
        if self.arity() != ctx.w() {
            return Err(Error::WrongArity {
                expected: ctx.w() as u8,
                got: self.w as usize,
            });
        }
        for &e in self.elements() {
            if e < 1 || e > ctx.n() {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    n: ctx.n(),
                });
            }
        }
        Ok(())
    }

    /// Colexicographic rank in `[0, C(n,w))`.
    pub fn rank(&self, ctx: GraphContext) -> Result<usize> {
        self.validate(ctx)?;
        Ok(self
            .elements()
            .iter()
            .enumerate()
            .map(|(i, &e)| binomial(e as u64 - 1, i as u64 + 1) as usize)
            .sum())
    }

    /// Inverse of [`KSubset::rank`].
    pub fn unrank(ctx: GraphContext, rank: usize) -> Result<Self> {
        if rank >= ctx.vertex_count() {
            return Err(Error::Parse(format!(
                "rank {rank} out of range for J({},{})",
                ctx.n(),
                ctx.w()
            )));
        }
        let mut rem = rank as u64;
        let mut bound = ctx.n();
        let mut elems = [0u32; 3];
        for i in (1..=ctx.w()).rev() {
            let mut e = bound;
            while binomial(e as u64 - 1, i as u64) > rem {
                e -= 1;
            }
            rem -= binomial(e as u64 - 1, i as u64);
            elems[i as usize - 1] = e;
            bound = e - 1;
        }
        Ok(KSubset {
            elems,
            w: ctx.w() as u8,
        })
    }

    /// Colex rank without context validation, for hot paths where the
    /// subset is known valid.
    pub(crate) fn rank_unchecked(&self) -> usize {
        self.elements()
            .iter()
            .enumerate()
            .map(|(i, &e)| binomial(e as u64 - 1, i as u64 + 1) as usize)
            .sum()
    }

    /// Intersection size with another subset of the same arity.
    pub fn intersection_size(&self, other: &KSubset) -> usize {
        self.elements()
            .iter()
            .filter(|e| other.contains(**e))
            .count()
    }

    /// True iff `|self ∩ other| = w - 1`. Errors on arity mismatch or equal
    /// vertices.
    pub fn adjacent(&self, other: &KSubset) -> Result<bool> {
        if self.w != other.w {
            return Err(Error::ArityMismatch);
        }
        if self == other {
            return Err(Error::NotDistinct);
        }
        Ok(self.intersection_size(other) == self.w as usize - 1)
    }

    /// The full neighbourhood, row-major: for each kept `(w-1)`-subset of
    /// `self` in lexicographic order, the vertices obtained by adjoining each
    /// `i ∉ self` in ascending order. For `w = 3` this is the `ab`-row, then
    /// the `ac`-row, then the `bc`-row.
    pub fn neighbors(&self, ctx: GraphContext) -> Result<Vec<KSubset>> {
        self.validate(ctx)?;
        let elems = self.elements();
        let w = self.w as usize;
        let mut out = Vec::with_capacity((ctx.degree()) as usize);
        let mut kept_sets: Vec<Vec<u32>> = Vec::new();
        // lexicographic (w-1)-subsets of `elems` = drop elements from the end
        for drop in (0..w).rev() {
            let kept: Vec<u32> = elems
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != drop)
                .map(|(_, &e)| e)
                .collect();
            kept_sets.push(kept);
        }
        for kept in kept_sets {
            for i in 1..=ctx.n() {
                if self.contains(i) {
                    continue;
                }
                let mut v: Vec<u32> = kept.clone();
                v.push(i);
                v.sort_unstable();
                out.push(KSubset::new(&v)?);
            }
        }
        Ok(out)
    }

    /// The `xy`-row of the neighbourhood of a triple: the `n-3` triples that
    /// contain the pair `{x,y} ⊂ self` and a third element outside `self`.
    pub fn row(&self, x: u32, y: u32, ctx: GraphContext) -> Result<Vec<KSubset>> {
        self.validate(ctx)?;
        if self.w != 3 {
            return Err(Error::WrongArity {
                expected: 3,
                got: self.w as usize,
            });
        }
        if x == y || !self.contains(x) || !self.contains(y) {
            return Err(Error::PairNotInVertex { x, y });
        }
        let mut out = Vec::with_capacity(ctx.n() as usize - 3);
        for i in 1..=ctx.n() {
            if self.contains(i) {
                continue;
            }
            out.push(KSubset::triple(x, y, i)?);
        }
        Ok(out)
    }

    /// The `i`-column of the neighbourhood of a triple `abc`: `{abi, aci, bci}`.
    pub fn column(&self, i: u32, ctx: GraphContext) -> Result<[KSubset; 3]> {
        self.validate(ctx)?;
        if self.w != 3 {
            return Err(Error::WrongArity {
                expected: 3,
                got: self.w as usize,
            });
        }
        if self.contains(i) {
            return Err(Error::ColumnIndexInVertex(i));
        }
        if i < 1 || i > ctx.n() {
            return Err(Error::ElementOutOfRange {
                element: i,
                n: ctx.n(),
            });
        }
        let e = self.elements();
        Ok([
            KSubset::triple(e[0], e[1], i)?,
            KSubset::triple(e[0], e[2], i)?,
            KSubset::triple(e[1], e[2], i)?,
        ])
    }

    /// Canonical text form `a,b,c` (ascending, comma separated).
    pub fn parse(s: &str) -> Result<Self> {
        let elems: Vec<u32> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad element {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        KSubset::new(&elems)
    }
}

impl std::fmt::Display for KSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for e in self.elements() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl std::fmt::Debug for KSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// The `(n-2)`-clique `xy∗` of all triples containing both `x` and `y`.
pub fn clique_star(ctx: GraphContext, x: u32, y: u32) -> Result<Vec<KSubset>> {
    if x == y {
        return Err(Error::EqualElements);
    }
    for e in [x, y] {
        if e < 1 || e > ctx.n() {
            return Err(Error::ElementOutOfRange {
                element: e,
                n: ctx.n(),
            });
        }
    }
    let mut out = Vec::with_capacity(ctx.n() as usize - 2);
    for z in 1..=ctx.n() {
        if z == x || z == y {
            continue;
        }
        out.push(KSubset::triple(x, y, z)?);
    }
    Ok(out)
}

/// Neighbour lists indexed by colexicographic rank.
///
/// Adjacency itself is a set-intersection test; this cache exists for the
/// search and scan paths that touch every vertex many times.
pub struct AdjacencyCache {
    ctx: GraphContext,
    lists: Vec<Vec<u32>>,
}

impl AdjacencyCache {
    pub fn new(ctx: GraphContext) -> Self {
        let vertices = ctx.vertices();
        let lists = vertices
            .iter()
            .map(|v| {
                v.neighbors(ctx)
                    .expect("valid vertex")
                    .iter()
                    .map(|u| u.rank(ctx).expect("valid vertex") as u32)
                    .collect()
            })
            .collect();
        AdjacencyCache { ctx, lists }
    }

    pub fn ctx(&self) -> GraphContext {
        self.ctx
    }

    pub fn neighbors_of(&self, rank: usize) -> &[u32] {
        &self.lists[rank]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32, w: u32) -> GraphContext {
        GraphContext::new(n, w).unwrap()
    }

    /// Independent oracle: enumerate all w-subsets in colex order directly.
    fn colex_enumerate(n: u32, w: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        match w {
            1 => {
                for a in 1..=n {
                    out.push(vec![a]);
                }
            }
            2 => {
                for b in 2..=n {
                    for a in 1..b {
                        out.push(vec![a, b]);
                    }
                }
            }
            3 => {
                for c in 3..=n {
                    for b in 2..c {
                        for a in 1..b {
                            out.push(vec![a, b, c]);
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    #[test]
    fn rank_examples() {
        let c = ctx(8, 3);
        assert_eq!(KSubset::triple(1, 2, 3).unwrap().rank(c).unwrap(), 0);
        assert_eq!(KSubset::triple(6, 7, 8).unwrap().rank(c).unwrap(), 55);
        // derived by enumerating all triples in colex order
        let all = colex_enumerate(8, 3);
        assert_eq!(all[1], vec![1, 2, 4]);
        assert_eq!(KSubset::triple(1, 2, 4).unwrap().rank(c).unwrap(), 1);
    }

    #[test]
    fn rank_matches_enumeration_oracle() {
        for (n, w) in [(8, 3), (6, 2), (7, 1), (16, 3), (5, 2)] {
            let c = ctx(n, w);
            let oracle = colex_enumerate(n, w);
            assert_eq!(oracle.len(), c.vertex_count());
            for (r, elems) in oracle.iter().enumerate() {
                let v = KSubset::new(elems).unwrap();
                assert_eq!(v.rank(c).unwrap(), r);
                assert_eq!(KSubset::unrank(c, r).unwrap(), v);
            }
        }
    }

    #[test]
    fn rank_unrank_inverse_up_to_n16() {
        for w in 1..=3u32 {
            for n in (2 * w).max(5)..=16 {
                let c = ctx(n, w);
                for r in 0..c.vertex_count() {
                    let v = KSubset::unrank(c, r).unwrap();
                    assert_eq!(v.rank(c).unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        let a = KSubset::triple(1, 2, 3).unwrap();
        let b = KSubset::triple(1, 2, 4).unwrap();
        let c = KSubset::triple(1, 4, 5).unwrap();
        assert!(a.adjacent(&b).unwrap());
        assert!(!a.adjacent(&c).unwrap());
        assert!(matches!(a.adjacent(&a), Err(Error::NotDistinct)));
        let p = KSubset::pair(1, 2).unwrap();
        assert!(matches!(a.adjacent(&p), Err(Error::ArityMismatch)));
    }

    #[test]
    fn neighbor_counts_and_rows() {
        let t = KSubset::triple(1, 2, 3).unwrap();
        assert_eq!(t.neighbors(ctx(8, 3)).unwrap().len(), 15);
        assert_eq!(t.neighbors(ctx(6, 3)).unwrap().len(), 9);
        let nb = t.neighbors(ctx(12, 3)).unwrap();
        assert_eq!(nb.len(), 27);
        // row-major: first 9 share {1,2}, next 9 share {1,3}, last 9 share {2,3}
        for (i, v) in nb.iter().enumerate() {
            let pair: &[u32] = match i / 9 {
                0 => &[1, 2],
                1 => &[1, 3],
                _ => &[2, 3],
            };
            assert!(
                pair.iter().all(|e| v.contains(*e)),
                "row {} entry {v}",
                i / 9
            );
            assert!(v.adjacent(&t).unwrap());
        }
    }

    #[test]
    fn neighborhood_is_a_lattice() {
        // each neighbour lies in exactly one row and one column
        let c = ctx(9, 3);
        let t = KSubset::triple(2, 5, 9).unwrap();
        let nb = t.neighbors(c).unwrap();
        assert_eq!(nb.len(), 18);
        let e = t.elements().to_vec();
        let mut seen = std::collections::HashSet::new();
        for pair in [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
            for v in t.row(pair.0, pair.1, c).unwrap() {
                assert!(seen.insert(v), "row overlap at {v}");
            }
        }
        assert_eq!(seen.len(), nb.len());
        let mut seen_cols = std::collections::HashSet::new();
        for i in 1..=9 {
            if t.contains(i) {
                continue;
            }
            let col = t.column(i, c).unwrap();
            // columns are 3-cliques
            assert!(col[0].adjacent(&col[1]).unwrap());
            assert!(col[0].adjacent(&col[2]).unwrap());
            assert!(col[1].adjacent(&col[2]).unwrap());
            for v in col {
                assert!(seen_cols.insert(v), "column overlap at {v}");
                assert!(seen.contains(&v));
            }
        }
        assert_eq!(seen_cols.len(), nb.len());
    }

    #[test]
    fn rows_are_cliques() {
        let c = ctx(10, 3);
        let t = KSubset::triple(1, 2, 3).unwrap();
        let row = t.row(1, 2, c).unwrap();
        assert_eq!(row.len(), 7);
        for i in 0..row.len() {
            for j in i + 1..row.len() {
                assert!(row[i].adjacent(&row[j]).unwrap());
            }
        }
    }

    #[test]
    fn row_and_column_examples() {
        let c6 = ctx(6, 3);
        let t = KSubset::triple(1, 2, 3).unwrap();
        let r = t.row(1, 2, c6).unwrap();
        let as_strings: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        assert_eq!(as_strings, vec!["1,2,4", "1,2,5", "1,2,6"]);
        let r23 = t.row(2, 3, c6).unwrap();
        let as_strings: Vec<String> = r23.iter().map(|v| v.to_string()).collect();
        assert_eq!(as_strings, vec!["2,3,4", "2,3,5", "2,3,6"]);
        assert!(t.row(1, 4, c6).is_err());

        let col = t.column(5, c6).unwrap();
        let as_strings: Vec<String> = col.iter().map(|v| v.to_string()).collect();
        assert_eq!(as_strings, vec!["1,2,5", "1,3,5", "2,3,5"]);
        assert!(t.column(2, c6).is_err());
        let t2 = KSubset::triple(4, 5, 6).unwrap();
        let col = t2.column(1, ctx(8, 3)).unwrap();
        let as_strings: Vec<String> = col.iter().map(|v| v.to_string()).collect();
        assert_eq!(as_strings, vec!["1,4,5", "1,4,6", "1,5,6"]);
    }

    #[test]
    fn clique_star_properties() {
        let c = ctx(6, 3);
        let star = clique_star(c, 1, 2).unwrap();
        assert_eq!(star.len(), 4);
        let c8 = ctx(8, 3);
        let star = clique_star(c8, 1, 2).unwrap();
        assert_eq!(star.len(), 6);
        for i in 0..star.len() {
            for j in i + 1..star.len() {
                assert!(star[i].adjacent(&star[j]).unwrap());
            }
        }
        assert!(clique_star(c8, 3, 3).is_err());
    }

    #[test]
    fn eigenvalue_formula() {
        let c = ctx(8, 3);
        assert_eq!(c.eigenvalue(0).unwrap(), 15);
        assert_eq!(c.eigenvalue(1).unwrap(), 7);
        assert_eq!(c.eigenvalue(2).unwrap(), 1);
        assert_eq!(c.eigenvalue(3).unwrap(), -3);
        assert!(c.eigenvalue(4).is_err());
        assert_eq!(ctx(6, 2).eigenvalue(1).unwrap(), 2);
        for n in [6u32, 8, 10, 12, 14, 16] {
            let c = ctx(n, 3);
            let n = n as i64;
            assert_eq!(c.spectrum().values(), &[3 * (n - 3), 2 * n - 9, n - 7, -3]);
        }
    }

    /// Cross-check λ₁(6,2)=2 against the brute-force adjacency spectrum of
    /// J(6,2): the annihilating polynomial ∏(A - λᵢI) must vanish and the
    /// trace system must give positive multiplicities.
    #[test]
    fn spectrum_cross_check_j62() {
        let c = ctx(6, 2);
        let p = c.vertex_count();
        let verts = c.vertices();
        let mut a = vec![vec![0i64; p]; p];
        for i in 0..p {
            for j in 0..p {
                if i != j && verts[i].adjacent(&verts[j]).unwrap() {
                    a[i][j] = 1;
                }
            }
        }
        let eigs: Vec<i64> = (0..=2).map(|i| c.eigenvalue(i).unwrap()).collect();
        // annihilating polynomial
        let mut m = identity(p);
        for &lam in &eigs {
            m = mat_mul(&m, &mat_sub_scalar(&a, lam));
        }
        assert!(m.iter().all(|row| row.iter().all(|&x| x == 0)));
        // multiplicities from traces of A^0, A^1, A^2
        let a2 = mat_mul(&a, &a);
        let traces = [p as i64, trace(&a), trace(&a2)];
        let mult = solve_multiplicities(&eigs, &traces);
        assert_eq!(mult, vec![1, 5, 9]); // C(6,1)-C(6,0)=5, C(6,2)-C(6,1)=9
    }

    fn identity(p: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; p]; p];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        m
    }

    fn mat_sub_scalar(a: &[Vec<i64>], s: i64) -> Vec<Vec<i64>> {
        let mut m = a.to_vec();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= s;
        }
        m
    }

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let p = a.len();
        let mut m = vec![vec![0i64; p]; p];
        for i in 0..p {
            for k in 0..p {
                if a[i][k] == 0 {
                    continue;
                }
                for j in 0..p {
                    m[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        m
    }

    fn trace(a: &[Vec<i64>]) -> i64 {
        (0..a.len()).map(|i| a[i][i]).sum()
    }

    /// Solve the Vandermonde system Σ mᵢ λᵢ^t = tr(A^t) exactly.
    fn solve_multiplicities(eigs: &[i64], traces: &[i64]) -> Vec<i64> {
        use num_rational::Rational64;
        let d = eigs.len();
        let mut m: Vec<Vec<Rational64>> = (0..d)
            .map(|t| {
                (0..d)
                    .map(|i| Rational64::from_integer(eigs[i].pow(t as u32)))
                    .collect()
            })
            .collect();
        let mut rhs: Vec<Rational64> = traces
            .iter()
            .map(|&t| Rational64::from_integer(t))
            .collect();
        // Gaussian elimination
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| m[r][col] != Rational64::from_integer(0))
                .unwrap();
            m.swap(col, pivot);
            rhs.swap(col, pivot);
            let pv = m[col][col];
            for r in 0..d {
                if r != col && m[r][col] != Rational64::from_integer(0) {
                    let f = m[r][col] / pv;
                    let pivot_row = m[col].clone();
                    for (cc, v) in pivot_row.iter().enumerate() {
                        m[r][cc] -= f * v;
                    }
                    let v = rhs[col];
                    rhs[r] -= f * v;
                }
            }
        }
        (0..d)
            .map(|i| {
                let v = rhs[i] / m[i][i];
                assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    }

    #[test]
    fn text_form_roundtrip() {
        let t = KSubset::parse("2,5,9").unwrap();
        assert_eq!(t.to_string(), "2,5,9");
        assert!(KSubset::parse("3,2,1").is_err());
        assert!(KSubset::parse("1,1,2").is_err());
        assert!(KSubset::parse("0,1,2").is_err());
    }

    #[test]
    fn context_validation() {
        assert!(GraphContext::new(4, 3).is_err());
        assert!(GraphContext::new(6, 4).is_err());
        assert!(GraphContext::new(100, 3).is_err());
        assert!(GraphContext::new(6, 3).is_ok());
        assert!(GraphContext::new(5, 2).is_ok());
    }
}
