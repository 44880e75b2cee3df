//! Exact eigenfunction machinery on Johnson graphs.
//!
//! A [`VertexFunction`] is a rational-valued function on the vertices of
//! some `J(n,w)`, carried together with its ground set: partial differences
//! live on `[n] \ {a,b}`, which is identified with `[n-2]` through the
//! strictly increasing relabeling stored alongside the values.
//!
//! The central facts used throughout:
//!
//! * a partition eigenfunction `f` of an equitable 2-partition takes the
//!   values `-p₂₁/(p₁₂+p₂₁)` on cell 1 and `p₁₂/(p₁₂+p₂₁)` on cell 2;
//! * a partial difference of a `λᵢ(n,w)`-eigenfunction is a
//!   `λᵢ₋₁(n-2,w-1)`-eigenfunction or identically zero;
//! * the `{-1,0,1}`-valued `λ₁(n,2)`-eigenfunctions come in exactly two
//!   shapes: a defining pair of elements (type 1) or a balanced defining
//!   bipartition of the ground set (type 2).

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::jgraph::{GraphContext, KSubset};
use crate::partition::TwoPartition;
use crate::{Error, Result};

/// Outcome of testing the eigenfunction equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenOutcome {
    /// The all-zeros function (excluded from being an eigenfunction).
    Zero,
    /// Nonzero and satisfies `θ·f(x) = Σ_{y ~ x} f(y)` everywhere.
    Eigenfunction,
    /// Nonzero and fails the equation somewhere.
    Not,
}

/// A rational-valued function on the vertex set of `J(n,w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFunction {
    ctx: GraphContext,
    /// Values indexed by colexicographic rank.
    values: Vec<Rational64>,
    /// `ground[i-1]` is the label of dense element `i`; strictly increasing.
    ground: Vec<u32>,
}

impl VertexFunction {
    pub fn new(ctx: GraphContext, values: Vec<Rational64>) -> Result<Self> {
        let ground = (1..=ctx.n()).collect();
        Self::with_ground(ctx, values, ground)
    }

    /// A function whose dense elements `1..=n` stand for the given labels.
    pub fn with_ground(
        ctx: GraphContext,
        values: Vec<Rational64>,
        ground: Vec<u32>,
    ) -> Result<Self> {
        if values.len() != ctx.vertex_count() {
            return Err(Error::Parse(format!(
                "{} values for {} vertices",
                values.len(),
                ctx.vertex_count()
            )));
        }
        if ground.len() != ctx.n() as usize || !ground.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::Parse(
                "ground relabeling must be strictly increasing of length n".into(),
            ));
        }
        Ok(VertexFunction {
            ctx,
            values,
            ground,
        })
    }

    pub fn zero(ctx: GraphContext) -> Self {
        VertexFunction {
            ctx,
            values: vec![Rational64::zero(); ctx.vertex_count()],
            ground: (1..=ctx.n()).collect(),
        }
    }

    pub fn constant(ctx: GraphContext, v: Rational64) -> Self {
        VertexFunction {
            ctx,
            values: vec![v; ctx.vertex_count()],
            ground: (1..=ctx.n()).collect(),
        }
    }

    pub fn ctx(&self) -> GraphContext {
        self.ctx
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    /// The labels this function's ground set carries.
    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    pub fn value_by_rank(&self, r: usize) -> Rational64 {
        self.values[r]
    }

    fn dense_of_label(&self, label: u32) -> Result<u32> {
        match self.ground.binary_search(&label) {
            Ok(i) => Ok(i as u32 + 1),
            Err(_) => Err(Error::ElementOutOfRange {
                element: label,
                n: self.ctx.n(),
            }),
        }
    }

    pub fn label_of_dense(&self, dense: u32) -> u32 {
        self.ground[dense as usize - 1]
    }

    /// Value at a vertex given by ground labels.
    pub fn value_of_labels(&self, labels: &[u32]) -> Result<Rational64> {
        let mut dense: Vec<u32> = labels
            .iter()
            .map(|&l| self.dense_of_label(l))
            .collect::<Result<_>>()?;
        dense.sort_unstable();
        let v = KSubset::new(&dense)?;
        Ok(self.values[v.rank(self.ctx)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn scale(&self, s: Rational64) -> VertexFunction {
        VertexFunction {
            ctx: self.ctx,
            values: self.values.iter().map(|v| v * s).collect(),
            ground: self.ground.clone(),
        }
    }

    /// Tests `θ·f(x) = Σ_{y ∈ Γ(x)} f(y)` at every vertex.
    pub fn eigen_check(&self, theta: Rational64) -> EigenOutcome {
        if self.is_zero() {
            return EigenOutcome::Zero;
        }
        for (r, v) in self.ctx.vertices().iter().enumerate() {
            let mut sum = Rational64::zero();
            for u in v.neighbors(self.ctx).expect("valid vertex") {
                sum += self.values[u.rank(self.ctx).expect("valid")];
            }
            if theta * self.values[r] != sum {
                return EigenOutcome::Not;
            }
        }
        EigenOutcome::Eigenfunction
    }

    /// The partial difference `f_{ab}(y) = f(y ∪ {a}) - f(y ∪ {b})`, a
    /// function on the `(w-1)`-subsets of the ground set minus `{a,b}`.
    /// `a` and `b` are ground labels.
    pub fn partial_difference(&self, a: u32, b: u32) -> Result<VertexFunction> {
        if a == b {
            return Err(Error::EqualElements);
        }
        self.dense_of_label(a)?;
        self.dense_of_label(b)?;
        if self.ctx.w() < 2 {
            return Err(Error::Unsupported("partial difference needs w >= 2".into()));
        }
        let sub_ctx = GraphContext::new(self.ctx.n() - 2, self.ctx.w() - 1)?;
        let sub_ground: Vec<u32> = self
            .ground
            .iter()
            .copied()
            .filter(|&l| l != a && l != b)
            .collect();
        let mut values = Vec::with_capacity(sub_ctx.vertex_count());
        let mut labels = Vec::with_capacity(self.ctx.w() as usize);
        for y in sub_ctx.vertices() {
            labels.clear();
            labels.extend(y.elements().iter().map(|&d| sub_ground[d as usize - 1]));
            labels.push(a);
            let va = self.value_of_labels(&labels)?;
            labels.pop();
            labels.push(b);
            let vb = self.value_of_labels(&labels)?;
            values.push(va - vb);
        }
        VertexFunction::with_ground(sub_ctx, values, sub_ground)
    }

    /// Checks that `f_{ab} ≡ 0` and `f_{ac} ≡ 0` force `f_{bc} ≡ 0`
    /// (vacuously true when the premise fails).
    pub fn zero_diff_transitivity(&self, a: u32, b: u32, c: u32) -> Result<bool> {
        if a == b || a == c || b == c {
            return Err(Error::EqualElements);
        }
        let fab = self.partial_difference(a, b)?;
        let fac = self.partial_difference(a, c)?;
        if !(fab.is_zero() && fac.is_zero()) {
            return Ok(true);
        }
        Ok(self.partial_difference(b, c)?.is_zero())
    }
}

/// The eigenfunction attached to an equitable 2-partition:
/// `-p₁₂/(p₁₂+p₂₁)` on cell 1 and `p₂₁/(p₁₂+p₂₁)` on cell 2.
///
/// This is the unique two-valued eigenvector direction of the quotient
/// matrix for `θ`: the cell values are weighted inversely to the cell
/// sizes (`|X₁|·p₁₂ = |X₂|·p₂₁` cross edges), so the function is orthogonal
/// to the all-ones valency eigenfunction, and the difference of the two
/// values is exactly `-1`.
pub fn partition_function(p: &TwoPartition) -> Result<VertexFunction> {
    let q = p.quotient();
    if !q.is_equitable() {
        return Err(Error::NotEquitable);
    }
    let p12 = q.entry(0, 1);
    let p21 = q.entry(1, 0);
    let denom = p12 + p21;
    if denom.is_zero() {
        return Err(Error::InvalidMatrix("p12 + p21 = 0".to_string()));
    }
    let on1 = -p12 / denom;
    let on2 = p21 / denom;
    let values = (0..p.ctx().vertex_count())
        .map(|r| if p.cell_of_rank(r) == 1 { on1 } else { on2 })
        .collect();
    VertexFunction::new(p.ctx(), values)
}

/// The characteristic function of cell 1.
pub fn characteristic_function(p: &TwoPartition) -> VertexFunction {
    let values = (0..p.ctx().vertex_count())
        .map(|r| {
            if p.cell_of_rank(r) == 1 {
                Rational64::from_integer(1)
            } else {
                Rational64::zero()
            }
        })
        .collect();
    VertexFunction::new(p.ctx(), values).expect("sizes agree")
}

/// Inducing operator: `h(x) = Σ_{y ⊆ x, |y| = i} g(y)` lifts a function on
/// `J(n,i)` to `J(n,w)`.
pub fn induce(g: &VertexFunction, w: u32) -> Result<VertexFunction> {
    let i = g.ctx().w();
    if w < i || w > 3 {
        return Err(Error::Unsupported(format!(
            "cannot induce from arity {i} to arity {w}"
        )));
    }
    let ctx = GraphContext::new(g.ctx().n(), w)?;
    let mut values = Vec::with_capacity(ctx.vertex_count());
    for x in ctx.vertices() {
        let e = x.elements();
        let mut sum = Rational64::zero();
        for sub in subsets_of_size(e, i as usize) {
            let y = KSubset::new(&sub)?;
            sum += g.value_by_rank(y.rank(g.ctx())?);
        }
        values.push(sum);
    }
    VertexFunction::with_ground(ctx, values, g.ground().to_vec())
}

fn subsets_of_size(elems: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let n = elems.len();
    match k {
        1 => {
            for &e in elems {
                out.push(vec![e]);
            }
        }
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    out.push(vec![elems[i], elems[j]]);
                }
            }
        }
        3 if n == 3 => {
            out.push(elems.to_vec());
        }
        _ => {}
    }
    out
}

/// Shape of a `{-1,0,1}`-valued `λ₁(n,2)`-eigenfunction of `J(n,2)`.
///
/// Defining data is reported in ground labels. The type-2 pair of sets is
/// stored with `min(M₁) < min(M₂)`, which identifies a function with its
/// negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lambda1Type {
    Zero,
    Type1 { a: u32, b: u32 },
    Type2 { m1: Vec<u32>, m2: Vec<u32> },
}

/// Classifies a function on `J(n,2)` against the two admissible shapes.
///
/// The input may be any rational multiple of a `{-1,0,1}`-valued function;
/// it is normalized by its largest absolute value before matching. An
/// eigenfunction matching neither shape is a classification failure.
pub fn classify_lambda1(f: &VertexFunction) -> Result<Lambda1Type> {
    let ctx = f.ctx();
    if ctx.w() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: ctx.w() as usize,
        });
    }
    if f.is_zero() {
        return Ok(Lambda1Type::Zero);
    }
    let max_abs = f.values().iter().map(|v| v.abs()).max().expect("nonempty");
    let scaled: Vec<Rational64> = f.values().iter().map(|v| v / max_abs).collect();
    let one = Rational64::from_integer(1);
    if !scaled.iter().all(|v| v.is_zero() || v.abs() == one) {
        return Err(Error::Classification(
            "values are not a scalar multiple of {-1,0,1}".into(),
        ));
    }
    let theta = Rational64::from_integer(ctx.eigenvalue(1).expect("w >= 1"));
    if f.eigen_check(theta) != EigenOutcome::Eigenfunction {
        return Err(Error::NotEigenfunction);
    }

    let n = ctx.n();
    let vertices = ctx.vertices();
    let pos: Vec<&KSubset> = vertices
        .iter()
        .zip(&scaled)
        .filter(|(_, v)| **v == one)
        .map(|(x, _)| x)
        .collect();
    let neg: Vec<&KSubset> = vertices
        .iter()
        .zip(&scaled)
        .filter(|(_, v)| **v == -one)
        .map(|(x, _)| x)
        .collect();

    // type 1: the positive pairs all share one element a, the negative all
    // share b, and the template reproduces the function exactly
    if pos.len() == n as usize - 2 && neg.len() == n as usize - 2 {
        if let (Some(a), Some(b)) = (common_element(&pos), common_element(&neg)) {
            if a != b && type1_matches(&vertices, &scaled, a, b) {
                return Ok(Lambda1Type::Type1 {
                    a: f.label_of_dense(a),
                    b: f.label_of_dense(b),
                });
            }
        }
    }

    // type 2: positives are the pairs inside a half M1, negatives inside M2
    if n.is_multiple_of(2) {
        let mut m1: Vec<u32> = Vec::new();
        for x in &pos {
            for &e in x.elements() {
                if !m1.contains(&e) {
                    m1.push(e);
                }
            }
        }
        m1.sort_unstable();
        if m1.len() == n as usize / 2 {
            let m2: Vec<u32> = (1..=n).filter(|e| !m1.contains(e)).collect();
            if type2_matches(&vertices, &scaled, &m1, &m2) {
                let m1: Vec<u32> = m1.iter().map(|&d| f.label_of_dense(d)).collect();
                let m2: Vec<u32> = m2.iter().map(|&d| f.label_of_dense(d)).collect();
                let (m1, m2) = if m1[0] < m2[0] { (m1, m2) } else { (m2, m1) };
                return Ok(Lambda1Type::Type2 { m1, m2 });
            }
        }
    }

    Err(Error::Classification(
        "eigenfunction matches neither admissible shape".into(),
    ))
}

fn common_element(pairs: &[&KSubset]) -> Option<u32> {
    let first = pairs.first()?;
    first
        .elements()
        .iter()
        .copied()
        .find(|&e| pairs.iter().all(|p| p.contains(e)))
}

fn type1_matches(vertices: &[KSubset], values: &[Rational64], a: u32, b: u32) -> bool {
    let one = Rational64::from_integer(1);
    vertices.iter().zip(values).all(|(x, v)| {
        let expected = match (x.contains(a), x.contains(b)) {
            (true, false) => one,
            (false, true) => -one,
            _ => Rational64::zero(),
        };
        *v == expected
    })
}

fn type2_matches(vertices: &[KSubset], values: &[Rational64], m1: &[u32], m2: &[u32]) -> bool {
    let one = Rational64::from_integer(1);
    vertices.iter().zip(values).all(|(x, v)| {
        let e = x.elements();
        let expected = if e.iter().all(|i| m1.contains(i)) {
            one
        } else if e.iter().all(|i| m2.contains(i)) {
            -one
        } else {
            Rational64::zero()
        };
        *v == expected
    })
}

/// Counting report over all partial differences of the cell-1
/// characteristic function of a `λ₂`-equitable partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportsReport {
    /// Differences of type 1, type 2, and identically zero.
    pub t1: u64,
    pub t2: u64,
    pub t0: u64,
    /// `p₁₂·p₂₁·n·(n-2)`.
    pub lhs: i64,
    /// `24·t₁·(n-4) + 3·t₂·(n-2)·(n-4)`.
    pub rhs: i64,
    pub holds: bool,
}

/// Classifies all `C(n,2)` partial differences of the characteristic
/// function of cell 1 and evaluates the support-counting identity.
pub fn supports_identity(p: &TwoPartition) -> Result<SupportsReport> {
    let q = p.quotient();
    let theta = q.theta()?;
    let n = p.ctx().n() as i64;
    if theta != Rational64::from_integer(n - 7) {
        return Err(Error::NotLambda2 { found: theta });
    }
    let g = characteristic_function(p);
    let (mut t1, mut t2, mut t0) = (0u64, 0u64, 0u64);
    for a in 1..=p.ctx().n() {
        for b in a + 1..=p.ctx().n() {
            let d = g.partial_difference(a, b)?;
            if d.is_zero() {
                t0 += 1;
                continue;
            }
            match classify_lambda1(&d)? {
                Lambda1Type::Type1 { .. } => t1 += 1,
                Lambda1Type::Type2 { .. } => t2 += 1,
                Lambda1Type::Zero => unreachable!("nonzero function"),
            }
        }
    }
    let p12 = q.entry(0, 1).to_integer();
    let p21 = q.entry(1, 0).to_integer();
    let lhs = p12 * p21 * n * (n - 2);
    let rhs = 24 * t1 as i64 * (n - 4) + 3 * t2 as i64 * (n - 2) * (n - 4);
    Ok(SupportsReport {
        t1,
        t2,
        t0,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}
