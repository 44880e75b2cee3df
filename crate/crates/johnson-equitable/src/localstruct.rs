//! Local neighbourhood structure of 2-partitions of `J(n,3)`.
//!
//! For a base vertex `abc` the neighbourhood is a `3 × (n-3)` lattice; the
//! nb-array records the cell-1 indicator of every neighbour, rows ordered by
//! non-increasing clique indicator sums, columns by ascending index. For a
//! cell-1 base vertex of a partition associated with the eigenvalue `n-7`,
//! the sorted row sums can only differ by multiples of `(n-4)/2`, giving six
//! difference tuples (cases I–VI), and pairs of columns obey exclusion rules
//! that cut the admissible arrays down to eleven templates. Each template
//! carries an upper bound on `n` beyond which no partition can contain it.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_rational::Rational64;

use crate::jgraph::KSubset;
use crate::partition::TwoPartition;
use crate::{Error, Result};

/// The nb-array of a base vertex: rows are the three cliques `xy∗` through
/// the base (minus the base itself), ordered by non-increasing indicator
/// sums (ties by lexicographic pair); columns are the `n-3` outside indices
/// in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbArray {
    pub base: KSubset,
    /// Cell-1 indicator of the base vertex.
    pub base_indicator: u32,
    /// `(pair, clique indicator sum)` per row, in row order.
    pub rows: [((u32, u32), u32); 3],
    /// Column indices, ascending.
    pub cols: Vec<u32>,
    /// `bits[r][c]` = indicator of the neighbour in row `r`, column `c`.
    pub bits: [Vec<bool>; 3],
}

impl NbArray {
    /// In-array row sums (clique sums minus the base indicator).
    pub fn row_sums(&self) -> [u32; 3] {
        [0, 1, 2].map(|r| self.bits[r].iter().filter(|&&b| b).count() as u32)
    }

    /// Total number of ones: the count of cell-1 neighbours of the base.
    pub fn total_ones(&self) -> u32 {
        self.row_sums().iter().sum()
    }

    /// Column bit pattern encoded as `(top << 2) | (middle << 1) | bottom`.
    pub fn column_type(&self, c: usize) -> u8 {
        ((self.bits[0][c] as u8) << 2) | ((self.bits[1][c] as u8) << 1) | self.bits[2][c] as u8
    }

    /// Multiset of column types, indexed by the 3-bit pattern.
    pub fn type_counts(&self) -> [u16; 8] {
        let mut counts = [0u16; 8];
        for c in 0..self.cols.len() {
            counts[self.column_type(c) as usize] += 1;
        }
        counts
    }

    /// Plain text rendering: column header plus three 0/1 rows.
    pub fn render(&self) -> String {
        let width = self
            .cols
            .iter()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1);
        let mut s = format!("base {} cell {}\n", self.base, 2 - self.base_indicator);
        s.push_str("cols:    ");
        for c in &self.cols {
            s.push_str(&format!("{c:>width$} "));
        }
        s.push('\n');
        for r in 0..3 {
            let (x, y) = self.rows[r].0;
            s.push_str(&format!("{x},{y}-row: "));
            for c in 0..self.cols.len() {
                s.push_str(&format!("{:>width$} ", u8::from(self.bits[r][c])));
            }
            s.push('\n');
        }
        s
    }
}

/// Builds the nb-array of `t` in `p`.
pub fn nb_array(p: &TwoPartition, t: &KSubset) -> Result<NbArray> {
    let ctx = p.ctx();
    t.validate(ctx)?;
    let e = t.elements();
    let mut rows: Vec<((u32, u32), u32)> = [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])]
        .into_iter()
        .map(|(x, y)| -> Result<((u32, u32), u32)> { Ok(((x, y), p.row_indicator_sum(x, y)?)) })
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let cols: Vec<u32> = (1..=ctx.n()).filter(|&i| !t.contains(i)).collect();
    let mut bits = [vec![], vec![], vec![]];
    for (r, &((x, y), _)) in rows.iter().enumerate() {
        bits[r] = cols
            .iter()
            .map(|&i| -> Result<bool> { Ok(p.indicator(&KSubset::triple(x, y, i)?)? == 1) })
            .collect::<Result<_>>()?;
    }
    Ok(NbArray {
        base: *t,
        base_indicator: p.indicator(t)?,
        rows: [rows[0], rows[1], rows[2]],
        cols,
        bits,
    })
}

/// Gaps of the sorted clique sums of a vertex: `d1 = s₀-s₁`, `d2 = s₁-s₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DifferenceTuple {
    pub d1: u32,
    pub d2: u32,
}

impl DifferenceTuple {
    /// Doubled gaps; integral admissibility domain for odd `n` is
    /// `{0, n-4, 2n-8}`.
    pub fn doubled(&self) -> (u32, u32) {
        (2 * self.d1, 2 * self.d2)
    }
}

/// The six admissible difference tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseGroup {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl CaseGroup {
    pub const ALL: [CaseGroup; 6] = [
        CaseGroup::I,
        CaseGroup::II,
        CaseGroup::III,
        CaseGroup::IV,
        CaseGroup::V,
        CaseGroup::VI,
    ];

    /// The tuple `(d1, d2)` in half-steps of `(n-4)/2`: entries are the
    /// multiples `h ∈ {0,1,2}`.
    pub fn half_steps(&self) -> (u32, u32) {
        match self {
            CaseGroup::I => (2, 0),
            CaseGroup::II => (1, 1),
            CaseGroup::III => (0, 2),
            CaseGroup::IV => (1, 0),
            CaseGroup::V => (0, 1),
            CaseGroup::VI => (0, 0),
        }
    }
}

/// Classification of a difference tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleClass {
    /// One of the six admissible tuples (even `n`).
    Case(CaseGroup),
    /// Admissible for odd `n`, where the case taxonomy does not apply.
    UnknownOddGroundSet,
    /// Not an admissible tuple: contradicts the row-difference identity.
    Inadmissible,
}

/// Computes the difference tuple of a cell-1 vertex and maps it to a case.
pub fn difference_tuple(p: &TwoPartition, t: &KSubset) -> Result<(DifferenceTuple, TupleClass)> {
    let n = p.ctx().n();
    let theta = p.theta()?;
    if theta != Rational64::from_integer(n as i64 - 7) {
        return Err(Error::NotLambda2 { found: theta });
    }
    if p.indicator(t)? != 1 {
        return Err(Error::NotCellOne);
    }
    let arr = nb_array(p, t)?;
    let s: Vec<u32> = arr.rows.iter().map(|r| r.1).collect();
    let tuple = DifferenceTuple {
        d1: s[0] - s[1],
        d2: s[1] - s[2],
    };
    let class = classify_tuple(n, tuple);
    Ok((tuple, class))
}

pub(crate) fn classify_tuple(n: u32, tuple: DifferenceTuple) -> TupleClass {
    if n % 2 == 1 {
        let dom = [0, n - 4];
        return if dom.contains(&tuple.d1) && dom.contains(&tuple.d2) {
            TupleClass::UnknownOddGroundSet
        } else {
            TupleClass::Inadmissible
        };
    }
    let h = (n - 4) / 2;
    for group in CaseGroup::ALL {
        let (h1, h2) = group.half_steps();
        if tuple.d1 == h1 * h && tuple.d2 == h2 * h {
            return TupleClass::Case(group);
        }
    }
    TupleClass::Inadmissible
}

/// The eleven admissible nb-array templates (plus the bare tuples I and II,
/// which admit no array for `n > 8`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    I,
    II,
    III,
    IVi,
    IVii,
    Vi,
    Vii,
    VIi,
    VIii,
    VIiii,
    VIiv,
    Unknown,
}

impl CaseId {
    pub fn group(&self) -> Option<CaseGroup> {
        match self {
            CaseId::I => Some(CaseGroup::I),
            CaseId::II => Some(CaseGroup::II),
            CaseId::III => Some(CaseGroup::III),
            CaseId::IVi | CaseId::IVii => Some(CaseGroup::IV),
            CaseId::Vi | CaseId::Vii => Some(CaseGroup::V),
            CaseId::VIi | CaseId::VIii | CaseId::VIiii | CaseId::VIiv => Some(CaseGroup::VI),
            CaseId::Unknown => None,
        }
    }
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IVi => "IV.i",
            CaseId::IVii => "IV.ii",
            CaseId::Vi => "V.i",
            CaseId::Vii => "V.ii",
            CaseId::VIi => "VI.i",
            CaseId::VIii => "VI.ii",
            CaseId::VIiii => "VI.iii",
            CaseId::VIiv => "VI.iv",
            CaseId::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Role of a column inside a matched template.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnClass {
    /// All-ones column.
    Omega,
    /// The repeated two-ones block of the template.
    Gamma,
    /// All-zeros column.
    Beta,
    /// A singleton column; the tag is the 3-bit pattern.
    Special(u8),
}

/// Case classification of a vertex together with the role of each column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseProfile {
    pub case_id: CaseId,
    pub tuple: DifferenceTuple,
    /// Column index -> role (only populated when a template matched).
    pub column_grouping: BTreeMap<u32, ColumnClass>,
}

/// Largest `n` for which a partition may contain a vertex with the given
/// template; `None` means the template persists for all `n`.
pub fn max_n_bound(case: CaseId) -> Result<Option<u32>> {
    Ok(match case {
        CaseId::I => Some(6),
        CaseId::II => Some(8),
        CaseId::III => Some(8),
        CaseId::IVi => Some(6),
        CaseId::IVii => Some(8),
        CaseId::Vi => None,
        CaseId::Vii => None,
        CaseId::VIi => Some(14),
        CaseId::VIii => Some(14),
        CaseId::VIiii => None,
        CaseId::VIiv => Some(8),
        CaseId::Unknown => {
            return Err(Error::Unsupported(
                "no bound is defined for an unknown case".into(),
            ))
        }
    })
}

/// A violated column-pair exclusion rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnPairViolation {
    /// Rows compared (indices into the canonical row order).
    pub rows: (usize, usize),
    /// Offending column indices.
    pub cols: (u32, u32),
    pub rule: ExclusionRule,
}

/// Exclusion rules on column pairs for a cell-1 base vertex, selected by
/// whether the two rows have equal or strictly ordered sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExclusionRule {
    /// Equal row sums: two columns repeating (1,0), or two repeating (0,1).
    EqualSums,
    /// Larger row on top: a (0,1) column next to a (0,0) column.
    UnequalZero,
    /// Larger row on top: a (0,1) column next to a (1,1) column.
    UnequalOnes,
    /// Larger row on top: two (0,1) columns.
    UnequalRepeat,
}

/// Scans all row pairs and column pairs of an nb-array for exclusion-rule
/// violations. Empty for every vertex of an equitable partition at the
/// eigenvalue `n-7`.
pub fn column_pair_violations(arr: &NbArray) -> Vec<ColumnPairViolation> {
    let mut out = Vec::new();
    let ncols = arr.cols.len();
    for i in 0..3 {
        for j in i + 1..3 {
            let equal = arr.rows[i].1 == arr.rows[j].1;
            for c in 0..ncols {
                let pc = (arr.bits[i][c], arr.bits[j][c]);
                for d in 0..ncols {
                    if c == d {
                        continue;
                    }
                    let pd = (arr.bits[i][d], arr.bits[j][d]);
                    if equal {
                        if c < d && pc == pd && (pc == (true, false) || pc == (false, true)) {
                            out.push(ColumnPairViolation {
                                rows: (i, j),
                                cols: (arr.cols[c], arr.cols[d]),
                                rule: ExclusionRule::EqualSums,
                            });
                        }
                    } else if pc == (false, true) {
                        match pd {
                            (false, false) => out.push(ColumnPairViolation {
                                rows: (i, j),
                                cols: (arr.cols[c], arr.cols[d]),
                                rule: ExclusionRule::UnequalZero,
                            }),
                            (true, true) => out.push(ColumnPairViolation {
                                rows: (i, j),
                                cols: (arr.cols[c], arr.cols[d]),
                                rule: ExclusionRule::UnequalOnes,
                            }),
                            (false, true) if c < d => out.push(ColumnPairViolation {
                                rows: (i, j),
                                cols: (arr.cols[c], arr.cols[d]),
                                rule: ExclusionRule::UnequalRepeat,
                            }),
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    out
}

fn row_bit(ty: u8, row: usize) -> bool {
    (ty >> (2 - row)) & 1 == 1
}

/// Violation test on a column-type multiset with canonical (non-increasing)
/// row sums.
fn counts_have_violation(counts: &[u16; 8], row_sums: &[u32; 3]) -> bool {
    for i in 0..3 {
        for j in i + 1..3 {
            let pat = |a: bool, b: bool| -> u32 {
                (0u8..8)
                    .filter(|&t| row_bit(t, i) == a && row_bit(t, j) == b)
                    .map(|t| counts[t as usize] as u32)
                    .sum()
            };
            if row_sums[i] == row_sums[j] {
                if pat(true, false) >= 2 || pat(false, true) >= 2 {
                    return true;
                }
            } else {
                let zero_one = pat(false, true);
                if zero_one >= 1
                    && (pat(false, false) >= 1 || pat(true, true) >= 1 || zero_one >= 2)
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Row permutations that preserve the (already non-increasing) sum vector.
fn sum_preserving_perms(sums: &[u32; 3]) -> Vec<[usize; 3]> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS
        .iter()
        .filter(|p| (0..3).all(|i| sums[p[i]] == sums[i]))
        .copied()
        .collect()
}

fn permute_counts(counts: &[u16; 8], perm: &[usize; 3]) -> [u16; 8] {
    let mut out = [0u16; 8];
    for ty in 0u8..8 {
        let mut new_ty = 0u8;
        for (i, &p) in perm.iter().enumerate() {
            if row_bit(ty, p) {
                new_ty |= 1 << (2 - i);
            }
        }
        out[new_ty as usize] += counts[ty as usize];
    }
    out
}

const T111: usize = 0b111;
const T110: usize = 0b110;
const T101: usize = 0b101;
const T011: usize = 0b011;
const T100: usize = 0b100;
const T010: usize = 0b010;
const T001: usize = 0b001;
const T000: usize = 0b000;

/// Matches a column-type multiset (in some fixed row order) against the
/// template of its case group. Widths of the all-ones and all-zeros blocks
/// are free; the striped block width is pinned by the difference tuple.
fn template_of(n: u32, group: CaseGroup, counts: &[u16; 8]) -> Option<CaseId> {
    let n = n as u16;
    let free = |c: &[u16; 8], fixed: &[(usize, u16)]| -> bool {
        let fixed_types: Vec<usize> = fixed.iter().map(|f| f.0).collect();
        fixed.iter().all(|&(t, v)| c[t] == v)
            && (0..8).all(|t| fixed_types.contains(&t) || t == T111 || t == T000 || c[t] == 0)
    };
    match group {
        CaseGroup::I | CaseGroup::II => None,
        CaseGroup::III => {
            (counts[T111] == 1 && counts[T110] == n - 4 && counts[T000] == 0).then_some(CaseId::III)
        }
        CaseGroup::IV => {
            if counts[T111] == (n - 2) / 2
                && counts[T100] == (n - 4) / 2
                && free(counts, &[(T100, (n - 4) / 2)])
                && counts[T000] == 0
            {
                Some(CaseId::IVi)
            } else if counts[T110] == 1
                && counts[T101] == 1
                && counts[T111] == (n - 4) / 2
                && counts[T100] == (n - 6) / 2
                && free(counts, &[(T110, 1), (T101, 1), (T100, (n - 6) / 2)])
                && counts[T000] == 0
            {
                Some(CaseId::IVii)
            } else {
                None
            }
        }
        CaseGroup::V => {
            if counts[T110] == (n - 4) / 2 && free(counts, &[(T110, (n - 4) / 2)]) {
                Some(CaseId::Vi)
            } else if counts[T110] == (n - 6) / 2
                && counts[T100] == 1
                && counts[T010] == 1
                && free(counts, &[(T110, (n - 6) / 2), (T100, 1), (T010, 1)])
            {
                Some(CaseId::Vii)
            } else {
                None
            }
        }
        CaseGroup::VI => {
            if free(counts, &[]) {
                Some(CaseId::VIi)
            } else if counts[T110] == 1
                && counts[T001] == 1
                && free(counts, &[(T110, 1), (T001, 1)])
            {
                Some(CaseId::VIii)
            } else if counts[T100] == 1
                && counts[T010] == 1
                && counts[T001] == 1
                && free(counts, &[(T100, 1), (T010, 1), (T001, 1)])
            {
                Some(CaseId::VIiii)
            } else if counts[T110] == 1
                && counts[T101] == 1
                && counts[T011] == 1
                && free(counts, &[(T110, 1), (T101, 1), (T011, 1)])
            {
                Some(CaseId::VIiv)
            } else {
                None
            }
        }
    }
}

/// Template match over all sum-preserving row permutations. Returns the
/// matched case and the permutation that realized it.
fn match_case(
    n: u32,
    group: CaseGroup,
    counts: &[u16; 8],
    sums: &[u32; 3],
) -> Option<(CaseId, [usize; 3])> {
    match group {
        // no array templates; the tuple is the full classification
        CaseGroup::I => return Some((CaseId::I, [0, 1, 2])),
        CaseGroup::II => return Some((CaseId::II, [0, 1, 2])),
        _ => {}
    }
    for perm in sum_preserving_perms(sums) {
        let permuted = permute_counts(counts, &perm);
        if let Some(case) = template_of(n, group, &permuted) {
            return Some((case, perm));
        }
    }
    None
}

/// Classifies a cell-1 vertex: difference tuple, case template, and per
/// column roles.
pub fn case_profile(p: &TwoPartition, t: &KSubset) -> Result<CaseProfile> {
    let (tuple, class) = difference_tuple(p, t)?;
    let arr = nb_array(p, t)?;
    let group = match class {
        TupleClass::Case(g) => g,
        _ => {
            return Ok(CaseProfile {
                case_id: CaseId::Unknown,
                tuple,
                column_grouping: BTreeMap::new(),
            })
        }
    };
    if !column_pair_violations(&arr).is_empty() {
        return Ok(CaseProfile {
            case_id: CaseId::Unknown,
            tuple,
            column_grouping: BTreeMap::new(),
        });
    }
    let counts = arr.type_counts();
    let sums = arr.row_sums();
    let Some((case_id, perm)) = match_case(p.ctx().n(), group, &counts, &sums) else {
        return Ok(CaseProfile {
            case_id: CaseId::Unknown,
            tuple,
            column_grouping: BTreeMap::new(),
        });
    };
    let gamma_cases = [CaseId::III, CaseId::Vi, CaseId::Vii];
    let mut column_grouping = BTreeMap::new();
    for (c, &idx) in arr.cols.iter().enumerate() {
        let ty = arr.column_type(c);
        // type under the matching row permutation
        let mut permuted_ty = 0u8;
        for (i, &pr) in perm.iter().enumerate() {
            if row_bit(ty, pr) {
                permuted_ty |= 1 << (2 - i);
            }
        }
        let class = match permuted_ty as usize {
            T111 => ColumnClass::Omega,
            T000 => ColumnClass::Beta,
            T110 if gamma_cases.contains(&case_id) => ColumnClass::Gamma,
            _ => ColumnClass::Special(ty),
        };
        column_grouping.insert(idx, class);
    }
    Ok(CaseProfile {
        case_id,
        tuple,
        column_grouping,
    })
}

/// Case histogram over all cell-1 vertices.
pub fn case_histogram(p: &TwoPartition) -> Result<BTreeMap<CaseId, usize>> {
    let mut hist = BTreeMap::new();
    for (r, t) in p.ctx().vertices().iter().enumerate() {
        if p.cell_of_rank(r) != 1 {
            continue;
        }
        let profile = case_profile(p, t)?;
        *hist.entry(profile.case_id).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Row-difference identity specialized to the eigenvalue `n-7`:
/// step factor `(n-4)/2`.
pub fn rowdiff_identity(p: &TwoPartition, a: u32, b: u32, c: u32, d: u32, e: u32) -> Result<bool> {
    let n = p.ctx().n() as i64;
    let theta = p.theta()?;
    if theta != Rational64::from_integer(n - 7) {
        return Err(Error::NotLambda2 { found: theta });
    }
    p.row_difference_identity(a, b, c, d, e)
}

/// An admissible concrete array (as a column-type multiset) produced by the
/// brute-force enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleArray {
    pub counts: [u16; 8],
    /// Clique sums including the base vertex, non-increasing.
    pub star_sums: [u32; 3],
    /// Cell-1 neighbours of the base (total ones).
    pub p11: u32,
    /// Matched template, if any.
    pub case: Option<CaseId>,
}

/// Result of enumerating all admissible arrays of one case group.
#[derive(Clone, Debug)]
pub struct ArrayEnumeration {
    pub n: u32,
    pub group: CaseGroup,
    /// Canonical concrete arrays (deduplicated under row permutations).
    pub arrays: Vec<AdmissibleArray>,
    /// Distinct templates realized.
    pub templates: BTreeSet<CaseId>,
    /// Arrays matching no template (empty when the template list is exhaustive).
    pub unmatched: usize,
}

/// Brute force over column-type multisets: keeps arrays whose difference
/// tuple lands in `group`, whose total satisfies `p₁₁ ≥ 2n-7`, and which
/// pass the column-pair exclusion rules; deduplicates under row
/// permutations and records which templates the survivors realize.
pub fn enumerate_admissible_arrays(n: u32, group: CaseGroup) -> Result<ArrayEnumeration> {
    if n % 2 == 1 {
        return Err(Error::OddGroundSet);
    }
    if !(10..=16).contains(&n) {
        return Err(Error::Unsupported(format!(
            "array enumeration is supported for even n in 10..=16, got {n}"
        )));
    }
    let ncols = (n - 3) as u16;
    let mut seen: BTreeSet<[u16; 8]> = BTreeSet::new();
    let mut arrays = Vec::new();
    let mut templates = BTreeSet::new();
    let mut unmatched = 0usize;

    let mut counts = [0u16; 8];
    enumerate_compositions(ncols, 0, &mut counts, &mut |counts| {
        let row_sum = |r: usize| -> u32 {
            (0u8..8)
                .filter(|&t| row_bit(t, r))
                .map(|t| counts[t as usize] as u32)
                .sum()
        };
        let sums = [row_sum(0), row_sum(1), row_sum(2)];
        if !(sums[0] >= sums[1] && sums[1] >= sums[2]) {
            return;
        }
        let star = [sums[0] + 1, sums[1] + 1, sums[2] + 1];
        let tuple = DifferenceTuple {
            d1: star[0] - star[1],
            d2: star[1] - star[2],
        };
        if classify_tuple(n, tuple) != TupleClass::Case(group) {
            return;
        }
        let p11 = sums.iter().sum::<u32>();
        if p11 + 7 < 2 * n {
            return;
        }
        if counts_have_violation(counts, &sums) {
            return;
        }
        // canonical representative under sum-preserving row permutations
        let canonical = sum_preserving_perms(&sums)
            .iter()
            .map(|perm| permute_counts(counts, perm))
            .min()
            .expect("identity always allowed");
        if !seen.insert(canonical) {
            return;
        }
        let case = match_case(n, group, &canonical, &sums).map(|(c, _)| c);
        match case {
            Some(c) => {
                templates.insert(c);
            }
            None => unmatched += 1,
        }
        arrays.push(AdmissibleArray {
            counts: canonical,
            star_sums: star,
            p11,
            case,
        });
    });
    Ok(ArrayEnumeration {
        n,
        group,
        arrays,
        templates,
        unmatched,
    })
}

fn enumerate_compositions(
    remaining: u16,
    ty: usize,
    counts: &mut [u16; 8],
    f: &mut impl FnMut(&[u16; 8]),
) {
    if ty == 7 {
        counts[7] = remaining;
        f(counts);
        counts[7] = 0;
        return;
    }
    for v in 0..=remaining {
        counts[ty] = v;
        enumerate_compositions(remaining - v, ty + 1, counts, f);
    }
    counts[ty] = 0;
}
