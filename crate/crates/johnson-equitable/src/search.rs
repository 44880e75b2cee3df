//! Exhaustive enumeration of equitable 2-partitions with a prescribed
//! quotient matrix.
//!
//! The solver branches over vertices in colexicographic rank order (cell 2
//! tried first) and propagates: every vertex keeps an interval
//! `[committed cell-1 neighbours, committed + undecided]` which must contain
//! its target row value; a tight interval forces the remaining neighbours,
//! and an undecided vertex feasible for only one cell is assigned
//! immediately. Cell sizes are pinned exactly by the matrix
//! (`|X₁|·p₁₂ = |X₂|·p₂₁`). Every reported solution is re-verified against
//! the target matrix after the search, not trusted from solver state.
//!
//! The tree can be split at a fixed decision depth into independent
//! subtrees executed on worker threads; results are merged in subtree
//! order, so the output is identical to the single-threaded run.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bits::Bitset;
use crate::classify::{recognize, RecognitionResult};
use crate::jgraph::{AdjacencyCache, GraphContext, KSubset};
use crate::partition::TwoPartition;
use crate::{Error, Result};

/// How solutions are reduced under the symmetric group of the ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMode {
    /// Report every raw solution.
    None,
    /// Enumerate everything, then keep one representative per orbit
    /// (deduplicated by canonical form).
    Dedup,
    /// Additionally fix vertex `1,2,3` in cell 1 before searching; sound
    /// for orbit enumeration since the graph is vertex-transitive.
    Canonical,
}

impl SymmetryMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(SymmetryMode::None),
            "dedup" => Ok(SymmetryMode::Dedup),
            "canonical" => Ok(SymmetryMode::Canonical),
            other => Err(Error::Parse(format!("unknown symmetry mode {other:?}"))),
        }
    }
}

/// A fully specified search: context, target matrix, reduction mode and
/// budgets.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    ctx: GraphContext,
    matrix: [[i64; 2]; 2],
    theta: i64,
    symmetry: SymmetryMode,
    node_budget: u64,
    threads: usize,
    split_depth: usize,
}

impl SearchProblem {
    /// Validates and canonicalizes the target matrix (`b₁₁ ≥ b₂₂`; searching
    /// the flipped matrix enumerates the same partitions).
    pub fn new(n: u32, matrix: [[i64; 2]; 2]) -> Result<Self> {
        let ctx = GraphContext::new(n, 3)?;
        let k = ctx.degree() as i64;
        let matrix = crate::construct::canonicalize_matrix(matrix);
        if matrix[0][0] + matrix[0][1] != k || matrix[1][0] + matrix[1][1] != k {
            return Err(Error::InvalidMatrix(format!(
                "rows must sum to the valency {k}"
            )));
        }
        if matrix.iter().flatten().any(|&e| !(0..=k).contains(&e)) {
            return Err(Error::InvalidMatrix(format!(
                "entries must lie in [0, {k}]"
            )));
        }
        let theta = matrix[0][0] - matrix[1][0];
        if theta == k {
            return Err(Error::InvalidMatrix(
                "theta equals the valency; no proper 2-partition exists".into(),
            ));
        }
        let spectrum = ctx.spectrum();
        if !spectrum.values()[1..].contains(&theta) {
            return Err(Error::InvalidMatrix(format!(
                "theta {theta} is not a non-principal eigenvalue of J({n},3)"
            )));
        }
        Ok(SearchProblem {
            ctx,
            matrix,
            theta,
            symmetry: SymmetryMode::None,
            node_budget: u64::MAX,
            threads: 1,
            split_depth: 0,
        })
    }

    pub fn with_symmetry(mut self, mode: SymmetryMode) -> Self {
        self.symmetry = mode;
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// Decision depth at which the tree is split for parallel execution;
    /// 0 picks a depth from the thread count.
    pub fn with_split_depth(mut self, depth: usize) -> Self {
        self.split_depth = depth;
        self
    }

    pub fn ctx(&self) -> GraphContext {
        self.ctx
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn theta(&self) -> i64 {
        self.theta
    }
}

/// All integer quotient matrices with row sums `k`, `b₁₁ - b₂₁ = θ` and
/// entries in `[0,k]`, in canonical orientation, ordered by `b₂₁`.
pub fn candidate_matrices(n: u32, theta: i64) -> Result<Vec<[[i64; 2]; 2]>> {
    let ctx = GraphContext::new(n, 3)?;
    let k = ctx.degree() as i64;
    if theta == k {
        return Err(Error::InvalidMatrix(
            "theta must differ from the valency".into(),
        ));
    }
    if !ctx.spectrum().values()[1..].contains(&theta) {
        return Err(Error::InvalidMatrix(format!(
            "theta {theta} is not a non-principal eigenvalue of J({n},3)"
        )));
    }
    let mut out = Vec::new();
    for b21 in 0..=k {
        let b11 = theta + b21;
        if !(0..=k).contains(&b11) {
            continue;
        }
        let b22 = k - b21;
        if b11 < b22 {
            continue; // canonical orientation only
        }
        out.push([[b11, k - b11], [b21, b22]]);
    }
    Ok(out)
}

/// Exact cell sizes implied by the matrix, if a proper partition can exist.
fn exact_cell_sizes(matrix: &[[i64; 2]; 2], nvert: usize) -> Option<(usize, usize)> {
    let p12 = matrix[0][1];
    let p21 = matrix[1][0];
    let denom = p12 + p21;
    if denom == 0 {
        return None;
    }
    let num = nvert as i64 * p21;
    if num % denom != 0 {
        return None;
    }
    let n1 = (num / denom) as usize;
    let n2 = nvert - n1;
    if n1 == 0 || n2 == 0 {
        return None;
    }
    Some((n1, n2))
}

/// Counters for the solver's work.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PruneStats {
    /// Branches abandoned by a propagation conflict.
    pub conflicts: u64,
    /// Assignments made by propagation rather than branching.
    pub forced: u64,
}

/// One enumerated partition.
#[derive(Clone, Debug)]
pub struct Solution {
    pub partition: TwoPartition,
    /// Populated for even `n` with `θ = n-7`.
    pub recognition: Option<RecognitionResult>,
    /// Canonical form, populated under `Dedup`/`Canonical` modes.
    pub canonical: Option<Bitset>,
}

/// Result of an enumeration run.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub matrix: [[i64; 2]; 2],
    pub theta: i64,
    pub n: u32,
    pub symmetry: SymmetryMode,
    /// Solutions (orbit representatives under `Dedup`/`Canonical`).
    pub solutions: Vec<Solution>,
    /// Raw solution count before symmetry reduction.
    pub raw_solutions: u64,
    /// Branch decisions explored.
    pub nodes: u64,
    pub prune: PruneStats,
    /// Solutions that failed post-hoc re-verification (always 0 unless the
    /// solver is broken).
    pub post_hoc_rejections: u64,
    pub complete: bool,
    /// Decision prefixes left unexplored when the budget ran out.
    pub frontier: Vec<String>,
}

struct Engine<'a> {
    adj: &'a AdjacencyCache,
    nvert: usize,
    /// Target cell-1 neighbour counts per own cell.
    target: [i64; 2],
    size_cap: [usize; 2],
    cell: Vec<u8>,
    cnt1: Vec<u16>,
    undec: Vec<u16>,
    sizes: [usize; 2],
    assigned: usize,
    /// Assignment history; entries flagged with the branching cell or FORCED.
    trail: Vec<u32>,
    decisions: Vec<(u32, u8)>,
    stats: PruneStats,
    solutions: Vec<Bitset>,
    budget: &'a AtomicU64,
    aborted: bool,
    frontier: Vec<String>,
}

impl<'a> Engine<'a> {
    fn new(
        adj: &'a AdjacencyCache,
        matrix: &[[i64; 2]; 2],
        caps: (usize, usize),
        budget: &'a AtomicU64,
    ) -> Self {
        let nvert = adj.ctx().vertex_count();
        let degree = adj.ctx().degree() as u16;
        Engine {
            adj,
            nvert,
            target: [matrix[0][0], matrix[1][0]],
            size_cap: [caps.0, caps.1],
            cell: vec![0; nvert],
            cnt1: vec![0; nvert],
            undec: vec![degree; nvert],
            sizes: [0, 0],
            assigned: 0,
            trail: Vec::with_capacity(nvert),
            decisions: Vec::new(),
            stats: PruneStats::default(),
            solutions: Vec::new(),
            budget,
            aborted: false,
            frontier: Vec::new(),
        }
    }

    /// Interval check of one vertex; queues forced assignments.
    #[inline]
    fn check_vertex(&mut self, u: usize, queue: &mut Vec<(u32, u8)>) -> bool {
        let c1 = self.cnt1[u] as i64;
        let un = self.undec[u] as i64;
        match self.cell[u] {
            0 => {
                let fit = |t: i64| c1 <= t && t <= c1 + un;
                let f1 = fit(self.target[0]);
                let f2 = fit(self.target[1]);
                if !f1 && !f2 {
                    return false;
                }
                if f1 != f2 {
                    queue.push((u as u32, if f1 { 1 } else { 2 }));
                }
                true
            }
            c => {
                let t = self.target[(c - 1) as usize];
                if c1 > t || c1 + un < t {
                    return false;
                }
                if un > 0 {
                    if c1 == t {
                        for &v in self.adj.neighbors_of(u) {
                            if self.cell[v as usize] == 0 {
                                queue.push((v, 2));
                            }
                        }
                    } else if c1 + un == t {
                        for &v in self.adj.neighbors_of(u) {
                            if self.cell[v as usize] == 0 {
                                queue.push((v, 1));
                            }
                        }
                    }
                }
                true
            }
        }
    }

    /// Assigns `v0 -> c0` and propagates to a fixed point. On conflict the
    /// partial work stays on the trail for the caller to roll back.
    fn propagate(&mut self, v0: u32, c0: u8, branched: bool) -> bool {
        let mut queue = vec![(v0, c0)];
        let mut first = true;
        while let Some((v, c)) = queue.pop() {
            let vi = v as usize;
            match self.cell[vi] {
                0 => {}
                cur if cur == c => continue,
                _ => {
                    self.stats.conflicts += 1;
                    return false;
                }
            }
            if !(first && branched) {
                self.stats.forced += 1;
            }
            first = false;
            self.cell[vi] = c;
            self.trail.push(v);
            self.sizes[(c - 1) as usize] += 1;
            self.assigned += 1;
            if self.sizes[(c - 1) as usize] > self.size_cap[(c - 1) as usize] {
                self.stats.conflicts += 1;
                return false;
            }
            for i in 0..self.adj.neighbors_of(vi).len() {
                let u = self.adj.neighbors_of(vi)[i] as usize;
                self.undec[u] -= 1;
                if c == 1 {
                    self.cnt1[u] += 1;
                }
            }
            if !self.check_vertex(vi, &mut queue) {
                self.stats.conflicts += 1;
                return false;
            }
            for i in 0..self.adj.neighbors_of(vi).len() {
                let u = self.adj.neighbors_of(vi)[i] as usize;
                if !self.check_vertex(u, &mut queue) {
                    self.stats.conflicts += 1;
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("mark <= len") as usize;
            let c = self.cell[v];
            self.cell[v] = 0;
            self.sizes[(c - 1) as usize] -= 1;
            self.assigned -= 1;
            for i in 0..self.adj.neighbors_of(v).len() {
                let u = self.adj.neighbors_of(v)[i] as usize;
                self.undec[u] += 1;
                if c == 1 {
                    self.cnt1[u] -= 1;
                }
            }
        }
    }

    fn next_undecided(&self, hint: usize) -> Option<usize> {
        (hint..self.nvert).find(|&v| self.cell[v] == 0)
    }

    fn record_solution(&mut self) {
        let bits: Bitset = self.cell.iter().map(|&c| c == 1).collect();
        self.solutions.push(bits);
    }

    fn take_budget(&mut self) -> bool {
        let prev = self.budget.fetch_sub(1, Ordering::Relaxed);
        if prev == 0 {
            self.budget.store(0, Ordering::Relaxed);
            self.aborted = true;
            if self.frontier.len() < 8 {
                let path: Vec<String> = self
                    .decisions
                    .iter()
                    .map(|(v, c)| {
                        format!(
                            "{}->{c}",
                            KSubset::unrank(self.adj.ctx(), *v as usize).expect("rank valid")
                        )
                    })
                    .collect();
                self.frontier.push(path.join(" "));
            }
            return false;
        }
        true
    }

    fn dfs(&mut self, hint: usize) {
        if self.aborted {
            return;
        }
        let Some(v) = self.next_undecided(hint) else {
            self.record_solution();
            return;
        };
        for c in [2u8, 1u8] {
            if !self.take_budget() {
                return;
            }
            let mark = self.trail.len();
            self.decisions.push((v as u32, c));
            if self.propagate(v as u32, c, true) {
                self.dfs(v + 1);
            }
            self.decisions.pop();
            self.undo_to(mark);
            if self.aborted {
                return;
            }
        }
    }

    /// Collects the live decision prefixes at the given depth, in traversal
    /// order. Fully solved prefixes are recorded as leaves.
    fn collect_prefixes(&mut self, depth: usize, hint: usize, out: &mut Vec<PrefixItem>) {
        let Some(v) = self.next_undecided(hint) else {
            out.push(PrefixItem::Leaf(
                self.cell.iter().map(|&c| c == 1).collect(),
            ));
            return;
        };
        if self.decisions.len() >= depth {
            out.push(PrefixItem::Subtree(self.decisions.clone()));
            return;
        }
        for c in [2u8, 1u8] {
            let mark = self.trail.len();
            self.decisions.push((v as u32, c));
            if self.propagate(v as u32, c, true) {
                self.collect_prefixes(depth, v + 1, out);
            }
            self.decisions.pop();
            self.undo_to(mark);
        }
    }

    /// Replays a decision prefix; prefixes come from `collect_prefixes`, so
    /// they must re-propagate without conflict.
    fn replay(&mut self, path: &[(u32, u8)]) {
        for &(v, c) in path {
            let ok = self.propagate(v, c, true);
            debug_assert!(ok, "collected prefix must replay cleanly");
            self.decisions.push((v, c));
        }
    }
}

struct WorkerOutcome {
    solutions: Vec<Bitset>,
    stats: PruneStats,
    aborted: bool,
    frontier: Vec<String>,
}

enum PrefixItem {
    Leaf(Bitset),
    Subtree(Vec<(u32, u8)>),
}

fn nodes_used(initial: u64, budget: &AtomicU64) -> u64 {
    initial.saturating_sub(budget.load(Ordering::Relaxed))
}

/// Runs the enumeration. A run that exhausts its node budget returns
/// [`Error::BudgetExhausted`] carrying the partial report.
pub fn enumerate(problem: &SearchProblem) -> Result<SearchReport> {
    let ctx = problem.ctx;
    let nvert = ctx.vertex_count();
    let mut report = SearchReport {
        matrix: problem.matrix,
        theta: problem.theta,
        n: ctx.n(),
        symmetry: problem.symmetry,
        solutions: Vec::new(),
        raw_solutions: 0,
        nodes: 0,
        prune: PruneStats::default(),
        post_hoc_rejections: 0,
        complete: true,
        frontier: Vec::new(),
    };
    let Some(caps) = exact_cell_sizes(&problem.matrix, nvert) else {
        return Ok(report); // no size split fits the matrix: complete, empty
    };

    let adj = AdjacencyCache::new(ctx);
    let budget = AtomicU64::new(problem.node_budget);
    let initial_budget = problem.node_budget;

    // fix vertex 123 in cell 1 when its orbit covers all solutions: under
    // Canonical mode (vertex-transitivity) and for a symmetric matrix
    // (where the two labelings of each solution would both be found)
    let fix_first =
        problem.symmetry == SymmetryMode::Canonical || problem.matrix[0][0] == problem.matrix[1][1];

    let raw_bits: Vec<Bitset>;
    {
        let mut root = Engine::new(&adj, &problem.matrix, caps, &budget);
        if fix_first && !root.propagate(0, 1, true) {
            root.undo_to(0);
            report.prune = root.stats;
            return Ok(report);
        }
        if problem.threads <= 1 {
            root.dfs(0);
            raw_bits = std::mem::take(&mut root.solutions);
            report.prune = root.stats;
            report.complete = !root.aborted;
            report.frontier = std::mem::take(&mut root.frontier);
        } else {
            let depth = if problem.split_depth > 0 {
                problem.split_depth
            } else {
                (problem.threads * 4).ilog2() as usize + 2
            };
            let mut prefixes = Vec::new();
            root.collect_prefixes(depth, 0, &mut prefixes);
            report.prune = root.stats;

            let slots: Vec<Mutex<Option<WorkerOutcome>>> =
                prefixes.iter().map(|_| Mutex::new(None)).collect();
            let next = AtomicUsize::new(0);
            std::thread::scope(|scope| {
                for _ in 0..problem.threads {
                    scope.spawn(|| loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= prefixes.len() {
                            break;
                        }
                        match &prefixes[i] {
                            PrefixItem::Leaf(bits) => {
                                *slots[i].lock().expect("worker slot") = Some(WorkerOutcome {
                                    solutions: vec![bits.clone()],
                                    stats: PruneStats::default(),
                                    aborted: false,
                                    frontier: vec![],
                                });
                            }
                            PrefixItem::Subtree(path) => {
                                let mut engine = Engine::new(&adj, &problem.matrix, caps, &budget);
                                if fix_first {
                                    let ok = engine.propagate(0, 1, true);
                                    debug_assert!(ok);
                                }
                                engine.replay(path);
                                engine.dfs(0);
                                *slots[i].lock().expect("worker slot") = Some(WorkerOutcome {
                                    solutions: std::mem::take(&mut engine.solutions),
                                    stats: engine.stats,
                                    aborted: engine.aborted,
                                    frontier: std::mem::take(&mut engine.frontier),
                                });
                            }
                        }
                    });
                }
            });
            let mut merged = Vec::new();
            for slot in slots {
                let outcome = slot
                    .into_inner()
                    .expect("slot lock")
                    .expect("worker finished");
                merged.extend(outcome.solutions);
                report.prune.conflicts += outcome.stats.conflicts;
                report.prune.forced += outcome.stats.forced;
                if outcome.aborted {
                    report.complete = false;
                }
                report.frontier.extend(outcome.frontier);
            }
            raw_bits = merged;
        }
    }
    report.nodes = nodes_used(initial_budget, &budget);

    // post-hoc verification: equitable with exactly the target matrix
    let mut verified: Vec<TwoPartition> = Vec::with_capacity(raw_bits.len());
    for bits in raw_bits {
        let p = TwoPartition::new(ctx, bits)?;
        let ok = p.is_equitable() && p.quotient().int_entries() == Some(problem.matrix);
        if ok {
            verified.push(p);
        } else {
            report.post_hoc_rejections += 1;
        }
    }
    report.raw_solutions = verified.len() as u64;

    let reduce = matches!(
        problem.symmetry,
        SymmetryMode::Dedup | SymmetryMode::Canonical
    );
    let recognizable = ctx.n().is_multiple_of(2)
        && problem.theta == ctx.n() as i64 - 7
        && problem.matrix[0][0] != problem.matrix[1][1];
    let mut seen: BTreeSet<Bitset> = BTreeSet::new();
    for p in verified {
        let canonical = reduce.then(|| canonical_form(&p));
        if let Some(key) = &canonical {
            if !seen.insert(key.clone()) {
                continue;
            }
        }
        let recognition = if recognizable {
            Some(recognize(&p)?)
        } else {
            None
        };
        report.solutions.push(Solution {
            partition: p,
            recognition,
            canonical,
        });
    }

    if report.complete {
        Ok(report)
    } else {
        Err(Error::BudgetExhausted {
            nodes: report.nodes,
            partial: Box::new(report),
        })
    }
}

/// Lexicographically minimal membership string over the relabeling orbit.
///
/// The returned bitset holds the cell-2 indicator of the minimizing
/// relabeling, so bitset order equals text order of the partition line.
/// Computed by branch-and-bound over images of the elements `1..=n`:
/// fixing the images of `1..j` pins the first `C(j,3)` positions.
pub fn canonical_form(p: &TwoPartition) -> Bitset {
    let ctx = p.ctx();
    let n = ctx.n() as usize;
    let nvert = ctx.vertex_count();
    // chars[rank] = 0 for cell 1, 1 for cell 2 ('1' < '2')
    let chars: Vec<u8> = (0..nvert).map(|r| p.cell_of_rank(r) - 1).collect();

    struct State<'s> {
        n: usize,
        chars: &'s [u8],
        image: Vec<u32>,
        used: Vec<bool>,
        cur: Vec<u8>,
        best: Option<Vec<u8>>,
    }

    fn descend(s: &mut State, level: usize, strictly_less: bool) {
        let n = s.n;
        if level > n {
            if strictly_less || s.best.is_none() {
                s.best = Some(s.cur.clone());
            }
            return;
        }
        for cand in 1..=n as u32 {
            if s.used[cand as usize - 1] {
                continue;
            }
            s.image.push(cand);
            s.used[cand as usize - 1] = true;
            // positions C(level-1,3) .. C(level,3): triples with maximum `level`
            let mut pos = crate::binomial(level as u64 - 1, 3) as usize;
            let start = pos;
            let mut less = strictly_less;
            let mut pruned = false;
            'fill: for y in 2..level {
                for x in 1..y {
                    let t = KSubset::triple(s.image[x - 1], s.image[y - 1], cand)
                        .expect("distinct images");
                    let c = s.chars[t.rank_unchecked()];
                    s.cur[pos] = c;
                    if !less {
                        if let Some(best) = &s.best {
                            match c.cmp(&best[pos]) {
                                std::cmp::Ordering::Greater => {
                                    pruned = true;
                                    break 'fill;
                                }
                                std::cmp::Ordering::Less => less = true,
                                std::cmp::Ordering::Equal => {}
                            }
                        }
                    }
                    pos += 1;
                }
            }
            let _ = start;
            if !pruned {
                descend(s, level + 1, less);
            }
            s.used[cand as usize - 1] = false;
            s.image.pop();
        }
    }

    let mut state = State {
        n,
        chars: &chars,
        image: Vec::with_capacity(n),
        used: vec![false; n],
        cur: vec![0; nvert],
        best: None,
    };
    descend(&mut state, 1, false);
    state
        .best
        .expect("some labeling always completes")
        .into_iter()
        .map(|c| c == 1)
        .collect()
}

/// Per-matrix outcome of a classification survey.
#[derive(Clone, Debug)]
pub struct MatrixSurvey {
    pub matrix: [[i64; 2]; 2],
    /// The symmetric matrix is excluded from the search.
    pub skipped_symmetric: bool,
    pub complete: bool,
    pub solutions: u64,
    /// Certified counts per family (`Π₁`, `Π₂`, `Π₃`).
    pub certified: [u64; 3],
    pub uncertified: u64,
    pub uncertified_examples: Vec<String>,
    pub nodes: u64,
}

/// Survey of all candidate matrices at `θ = n-7`.
#[derive(Clone, Debug)]
pub struct ClassificationSurvey {
    pub n: u32,
    pub theta: i64,
    /// False when any matrix search hit its budget.
    pub complete: bool,
    pub matrices: Vec<MatrixSurvey>,
}

impl ClassificationSurvey {
    pub fn total_uncertified(&self) -> u64 {
        self.matrices.iter().map(|m| m.uncertified).sum()
    }
}

/// Enumerates every candidate matrix at `θ = n-7` (the symmetric one
/// excluded) and classifies all solutions found. Budget exhaustion yields a
/// partial survey flagged incomplete rather than an error.
pub fn verify_classification(
    n: u32,
    budget_per_matrix: u64,
    threads: usize,
) -> Result<ClassificationSurvey> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddGroundSet);
    }
    if !(8..=12).contains(&n) {
        return Err(Error::Unsupported(format!(
            "classification survey covers even n in 8..=12, got {n}"
        )));
    }
    let theta = n as i64 - 7;
    let mut survey = ClassificationSurvey {
        n,
        theta,
        complete: true,
        matrices: Vec::new(),
    };
    for matrix in candidate_matrices(n, theta)? {
        if matrix[0][0] == matrix[1][1] {
            survey.matrices.push(MatrixSurvey {
                matrix,
                skipped_symmetric: true,
                complete: true,
                solutions: 0,
                certified: [0; 3],
                uncertified: 0,
                uncertified_examples: Vec::new(),
                nodes: 0,
            });
            continue;
        }
        let problem = SearchProblem::new(n, matrix)?
            .with_node_budget(budget_per_matrix)
            .with_threads(threads);
        let report = match enumerate(&problem) {
            Ok(r) => r,
            Err(Error::BudgetExhausted { partial, .. }) => *partial,
            Err(e) => return Err(e),
        };
        let mut ms = MatrixSurvey {
            matrix,
            skipped_symmetric: false,
            complete: report.complete,
            solutions: report.raw_solutions,
            certified: [0; 3],
            uncertified: 0,
            uncertified_examples: Vec::new(),
            nodes: report.nodes,
        };
        for sol in &report.solutions {
            let certified_family = sol.recognition.as_ref().and_then(|r| {
                use crate::classify::RecognizedFamily::*;
                if !r.certified {
                    return None;
                }
                match r.family {
                    Pi1 => Some(0),
                    Pi2 => Some(1),
                    Pi3 => Some(2),
                    Unknown => None,
                }
            });
            match certified_family {
                Some(i) => ms.certified[i] += 1,
                None => {
                    ms.uncertified += 1;
                    if ms.uncertified_examples.len() < 3 {
                        ms.uncertified_examples.push(sol.partition.to_text());
                    }
                }
            }
        }
        if !ms.complete {
            survey.complete = false;
        }
        survey.matrices.push(ms);
    }
    Ok(survey)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{pi1, pi2, Family, PairedBipartition};

    #[test]
    fn candidate_matrix_sweep() {
        let c8 = candidate_matrices(8, 1).unwrap();
        assert!(c8.contains(&[[13, 2], [12, 3]]));
        assert!(c8.contains(&[[9, 6], [8, 7]]));
        assert!(c8.contains(&[[8, 7], [7, 8]]));
        assert_eq!(c8.len(), 8);
        for q in &c8 {
            assert_eq!(q[0][0] + q[0][1], 15);
            assert_eq!(q[1][0] + q[1][1], 15);
            assert_eq!(q[0][0] - q[1][0], 1);
            assert_eq!(q[0][1] + q[1][0], 14); // 2n-2
            assert!(q[0][0] >= q[1][1]);
        }
        let c12 = candidate_matrices(12, 5).unwrap();
        for m in [
            [[23, 4], [18, 9]],
            [[21, 6], [16, 11]],
            [[17, 10], [12, 15]],
        ] {
            assert!(c12.contains(&m));
        }
        assert!(candidate_matrices(8, 15).is_err());
        assert!(candidate_matrices(8, 4).is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(SearchProblem::new(8, [[9, 6], [8, 7]]).is_ok());
        // non-canonical input is canonicalized
        let p = SearchProblem::new(8, [[7, 8], [6, 9]]).unwrap();
        assert_eq!(p.matrix(), [[9, 6], [8, 7]]);
        assert!(SearchProblem::new(8, [[9, 5], [8, 7]]).is_err());
        assert!(SearchProblem::new(8, [[15, 0], [0, 15]]).is_err());
    }

    /// Independent oracle at n=6: test every one of the 2^20 assignments
    /// directly against the matrix.
    fn brute_force_n6(matrix: [[i64; 2]; 2]) -> BTreeSet<Bitset> {
        let ctx = GraphContext::new(6, 3).unwrap();
        let adj = AdjacencyCache::new(ctx);
        let nvert = ctx.vertex_count();
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << nvert) - 1 {
            let mut ok = true;
            for v in 0..nvert {
                let mut c1 = 0i64;
                for &u in adj.neighbors_of(v) {
                    if mask >> u & 1 == 1 {
                        c1 += 1;
                    }
                }
                let t = if mask >> v & 1 == 1 {
                    matrix[0][0]
                } else {
                    matrix[1][0]
                };
                if c1 != t {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.insert((0..nvert).map(|v| mask >> v & 1 == 1).collect());
            }
        }
        out
    }

    #[test]
    fn search_matches_brute_force_at_n6() {
        // canonical matrix of the matching family at m=3; n=6 lies below the
        // classification range, so sporadic solutions accompany the family
        let matrix = [[5, 4], [6, 3]];
        let problem = SearchProblem::new(6, matrix).unwrap();
        let report = enumerate(&problem).unwrap();
        assert!(report.complete);
        assert_eq!(report.post_hoc_rejections, 0);
        let found: BTreeSet<Bitset> = report
            .solutions
            .iter()
            .map(|s| s.partition.cell1_bits().clone())
            .collect();
        let brute = brute_force_n6(matrix);
        assert_eq!(found, brute);
        // all 15 matching-family instances are among the solutions
        let mut family = 0;
        for pairs in [
            [(1, 2), (3, 4), (5, 6)],
            [(1, 3), (2, 4), (5, 6)],
            [(1, 6), (2, 4), (3, 5)],
        ] {
            let u: Vec<u32> = pairs.iter().map(|p| p.0).collect();
            let w: Vec<u32> = pairs.iter().map(|p| p.1).collect();
            let pb = PairedBipartition::new(u, w).unwrap();
            let built = crate::construct::pi2(&pb).unwrap().partition;
            assert!(found.contains(built.cell1_bits()));
            family += 1;
        }
        assert_eq!(family, 3);
    }

    #[test]
    fn seeded_completeness_and_counts_at_n6() {
        let matrix = Family::Pi1.canonical_matrix(3);
        let problem = SearchProblem::new(6, matrix).unwrap();
        let report = enumerate(&problem).unwrap();
        assert!(report.complete);
        let found: BTreeSet<Bitset> = report
            .solutions
            .iter()
            .map(|s| s.partition.cell1_bits().clone())
            .collect();
        // every constructed instance is found
        let pb = PairedBipartition::identity(3).unwrap();
        assert!(found.contains(pi1(&pb).unwrap().partition.cell1_bits()));
        assert_eq!(found, brute_force_n6(matrix));
        // at this matrix the solutions are exactly the C(6,3)/2 instances
        assert_eq!(found.len(), 10);
    }

    #[test]
    fn parallel_run_is_deterministic() {
        let matrix = [[5, 4], [6, 3]];
        let single = enumerate(&SearchProblem::new(6, matrix).unwrap()).unwrap();
        let multi = enumerate(
            &SearchProblem::new(6, matrix)
                .unwrap()
                .with_threads(3)
                .with_split_depth(4),
        )
        .unwrap();
        let a: Vec<_> = single
            .solutions
            .iter()
            .map(|s| s.partition.cell1_bits().clone())
            .collect();
        let b: Vec<_> = multi
            .solutions
            .iter()
            .map(|s| s.partition.cell1_bits().clone())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let problem = SearchProblem::new(8, [[9, 6], [8, 7]])
            .unwrap()
            .with_node_budget(50);
        match enumerate(&problem) {
            Err(Error::BudgetExhausted { nodes, partial }) => {
                assert!(nodes >= 50);
                assert!(!partial.complete);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let pb = PairedBipartition::identity(4).unwrap();
        let p = pi2(&pb).unwrap().partition;
        let sigma: Vec<u32> = vec![5, 3, 8, 1, 7, 2, 6, 4];
        let q = p.relabel(&sigma).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        // a different matching is in the same orbit
        let pb2 = PairedBipartition::new(vec![1, 2, 3, 5], vec![4, 6, 7, 8]).unwrap();
        let r = pi2(&pb2).unwrap().partition;
        assert_ne!(p.cell1_bits(), r.cell1_bits());
        assert_eq!(canonical_form(&p), canonical_form(&r));
        // different families have different orbits
        let s = pi1(&pb).unwrap().partition;
        assert_ne!(canonical_form(&p), canonical_form(&s));
    }

    /// Oracle: minimum over all n! relabelings of the partition text line.
    #[test]
    fn canonical_form_matches_brute_force_minimum() {
        let pb = PairedBipartition::new(vec![2, 3, 6], vec![1, 4, 5]).unwrap();
        let p = pi2(&pb).unwrap().partition;
        let mut perm: Vec<u32> = (1..=6).collect();
        let mut best: Option<Bitset> = None;
        // Heap's algorithm over all 720 permutations
        fn heaps(k: usize, perm: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
            if k == 1 {
                visit(perm);
                return;
            }
            for i in 0..k {
                heaps(k - 1, perm, visit);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heaps(6, &mut perm, &mut |sigma| {
            let moved = p.relabel(sigma).unwrap();
            let key: Bitset = (0..moved.ctx().vertex_count())
                .map(|r| moved.cell_of_rank(r) == 2)
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        assert_eq!(canonical_form(&p), best.unwrap());
    }

    #[test]
    fn dedup_mode_counts_orbits() {
        let matrix = [[5, 4], [6, 3]];
        let problem = SearchProblem::new(6, matrix)
            .unwrap()
            .with_symmetry(SymmetryMode::Dedup);
        let report = enumerate(&problem).unwrap();
        assert_eq!(report.raw_solutions, 210);
        assert_eq!(report.solutions.len(), 3);
        // all perfect matchings of [6] are conjugate: the family instances
        // share one canonical form
        let a = canonical_form(
            &pi2(&PairedBipartition::identity(3).unwrap())
                .unwrap()
                .partition,
        );
        let b = canonical_form(
            &pi2(&PairedBipartition::new(vec![1, 4, 5], vec![3, 2, 6]).unwrap())
                .unwrap()
                .partition,
        );
        assert_eq!(a, b);
        let canonical_problem = SearchProblem::new(6, matrix)
            .unwrap()
            .with_symmetry(SymmetryMode::Canonical);
        let creport = enumerate(&canonical_problem).unwrap();
        let keys: BTreeSet<_> = report
            .solutions
            .iter()
            .map(|s| s.canonical.clone())
            .collect();
        let ckeys: BTreeSet<_> = creport
            .solutions
            .iter()
            .map(|s| s.canonical.clone())
            .collect();
        assert_eq!(keys, ckeys);
    }

    #[test]
    fn empty_matrix_cases() {
        // p12 = 0 admits no proper partition: complete and empty
        let problem = SearchProblem::new(8, [[15, 0], [14, 1]]).unwrap();
        let report = enumerate(&problem).unwrap();
        assert!(report.complete);
        assert!(report.solutions.is_empty());
    }
}
