//! Recognition of equitable 2-partitions as family instances.
//!
//! Given an equitable 2-partition associated with the eigenvalue `n-7` on an
//! even ground set, recognition proceeds in three steps: select candidate
//! families by quotient matrix, recover the defining structure (bipartition
//! and/or matching) from indicator sums, then regenerate the construction
//! and compare bit-exactly. A recognition is `certified` only when the
//! regenerated partition reproduces the input.
//!
//! The candidate step returns a list: distinct families can share a
//! canonical quotient matrix (`Π₁` and `Π₂` coincide at `m = 8`; the
//! canonical forms of `Π₂` and `Π₃` coincide at `m = 4`). The symmetric
//! matrix `[[2n-8, n-1], [n-1, 2n-8]]` is excluded and reported as no
//! candidate: partitions with that matrix (`Π₃` at `m = 5` among them) are
//! classified elsewhere.

use num_rational::Rational64;

use crate::construct::{build_family, dependence_signature, Family, PairedBipartition, Signature};
use crate::partition::TwoPartition;
use crate::{Error, Result};

/// Family label of a recognition outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RecognizedFamily {
    Pi1,
    Pi2,
    Pi3,
    Unknown,
}

impl From<Family> for RecognizedFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Pi1 => RecognizedFamily::Pi1,
            Family::Pi2 => RecognizedFamily::Pi2,
            Family::Pi3 => RecognizedFamily::Pi3,
        }
    }
}

impl RecognizedFamily {
    pub fn name(&self) -> &'static str {
        match self {
            RecognizedFamily::Pi1 => "pi1",
            RecognizedFamily::Pi2 => "pi2",
            RecognizedFamily::Pi3 => "pi3",
            RecognizedFamily::Unknown => "unknown",
        }
    }
}

/// Outcome of [`recognize`].
#[derive(Clone, Debug)]
pub struct RecognitionResult {
    pub family: RecognizedFamily,
    /// Recovered defining structure, when recovery succeeded.
    pub structure: Option<Signature>,
    /// True iff regenerating from `structure` reproduces the input exactly.
    pub certified: bool,
}

impl RecognitionResult {
    fn unknown() -> Self {
        RecognitionResult {
            family: RecognizedFamily::Unknown,
            structure: None,
            certified: false,
        }
    }
}

/// Candidate families whose canonical quotient matrix at `m = n/2` equals
/// `q`. The symmetric matrix is excluded (no candidates).
pub fn quotient_family(q: &[[i64; 2]; 2], n: u32) -> Vec<Family> {
    if !n.is_multiple_of(2) {
        return Vec::new();
    }
    let m = n as i64 / 2;
    let ni = n as i64;
    if *q == [[2 * ni - 8, ni - 1], [ni - 1, 2 * ni - 8]] {
        return Vec::new();
    }
    Family::ALL
        .into_iter()
        .filter(|f| f.canonical_matrix(m) == *q)
        .collect()
}

/// The canonical cell (1 or 2) playing the given construction cell's role,
/// derived from the orientation of the construction matrix.
fn role_cell(family: Family, m: i64, construction_cell: u8) -> u8 {
    let cm = family.construction_matrix(m);
    let flipped = cm[0][0] < cm[1][1];
    if flipped {
        3 - construction_cell
    } else {
        construction_cell
    }
}

/// Count of vertices of `cell` among the `n-2` triples through `{x,y}`.
fn star_count_in_cell(p: &TwoPartition, x: u32, y: u32, cell: u8) -> u32 {
    let in_cell1 = p.row_indicator_sum(x, y).expect("distinct elements");
    if cell == 1 {
        in_cell1
    } else {
        p.ctx().n() - 2 - in_cell1
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Splits `[n]` into its union-find classes; `None` unless there are
/// exactly two classes of size `n/2`, returned with the class containing 1
/// first.
fn balanced_classes(sets: &mut DisjointSets, n: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let root0 = sets.find(0);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for e in 0..n as usize {
        if sets.find(e) == root0 {
            first.push(e as u32 + 1);
        } else {
            second.push(e as u32 + 1);
        }
    }
    if first.len() != second.len() {
        return None;
    }
    // exactly two classes: everything in `second` must share one root
    if let Some(&s0) = second.first() {
        let r = sets.find(s0 as usize - 1);
        if second.iter().any(|&e| sets.find(e as usize - 1) != r) {
            return None;
        }
    } else {
        return None;
    }
    Some((first, second))
}

/// Pairs `{x,y}` whose whole clique `xy∗` lies in `cell`; `Some` iff they
/// form a perfect matching of `[n]`.
fn full_star_matching(p: &TwoPartition, cell: u8) -> Option<Vec<(u32, u32)>> {
    let n = p.ctx().n();
    let mut pairs = Vec::new();
    let mut used = vec![false; n as usize + 1];
    for x in 1..=n {
        for y in x + 1..=n {
            if star_count_in_cell(p, x, y, cell) == n - 2 {
                if used[x as usize] || used[y as usize] {
                    return None;
                }
                used[x as usize] = true;
                used[y as usize] = true;
                pairs.push((x, y));
            }
        }
    }
    if pairs.len() as u32 != n / 2 {
        return None;
    }
    Some(pairs)
}

fn recover_pi1(p: &TwoPartition) -> Option<PairedBipartition> {
    let n = p.ctx().n();
    let m = n as i64 / 2;
    let x1_role = role_cell(Family::Pi1, m, 2);
    let mut sets = DisjointSets::new(n as usize);
    for x in 1..=n {
        for y in x + 1..=n {
            if star_count_in_cell(p, x, y, x1_role) > 0 {
                sets.union(x as usize - 1, y as usize - 1);
            }
        }
    }
    let (first, second) = balanced_classes(&mut sets, n)?;
    PairedBipartition::new(first, second).ok()
}

fn recover_pi2(p: &TwoPartition) -> Option<PairedBipartition> {
    let n = p.ctx().n();
    let m = n as i64 / 2;
    let x2_role = role_cell(Family::Pi2, m, 2);
    let pairs = full_star_matching(p, x2_role)?;
    let u: Vec<u32> = pairs.iter().map(|&(a, _)| a).collect();
    let w: Vec<u32> = pairs.iter().map(|&(_, b)| b).collect();
    PairedBipartition::new(u, w).ok()
}

fn recover_pi3(p: &TwoPartition) -> Option<PairedBipartition> {
    let n = p.ctx().n();
    let m = n as i64 / 2;
    let merged_role = role_cell(Family::Pi3, m, 2);
    let pairs = full_star_matching(p, merged_role)?;
    let mut partner = vec![0u32; n as usize + 1];
    for &(a, b) in &pairs {
        partner[a as usize] = b;
        partner[b as usize] = a;
    }
    // one-sided triples: merged-cell vertices containing no matched pair
    let mut sets = DisjointSets::new(n as usize);
    for (r, t) in p.ctx().vertices().iter().enumerate() {
        if p.cell_of_rank(r) != merged_role {
            continue;
        }
        let e = t.elements();
        if e.iter().any(|&x| t.contains(partner[x as usize])) {
            continue;
        }
        sets.union(e[0] as usize - 1, e[1] as usize - 1);
        sets.union(e[0] as usize - 1, e[2] as usize - 1);
    }
    let (first, _second) = balanced_classes(&mut sets, n)?;
    // the matching must cross the classes; order the second side by partner
    if first.iter().any(|&x| first.contains(&partner[x as usize])) {
        return None;
    }
    let w: Vec<u32> = first.iter().map(|&x| partner[x as usize]).collect();
    PairedBipartition::new(first, w).ok()
}

/// Recognizes `p` as an instance of one of the three families, recovering
/// and certifying its defining structure.
///
/// Requires an equitable partition with `θ = n-7` on an even ground set.
pub fn recognize(p: &TwoPartition) -> Result<RecognitionResult> {
    let theta = p.theta()?;
    let n = p.ctx().n();
    if theta != Rational64::from_integer(n as i64 - 7) {
        return Err(Error::NotLambda2 { found: theta });
    }
    if !n.is_multiple_of(2) {
        return Err(Error::OddGroundSet);
    }
    let q = p
        .quotient()
        .int_entries()
        .expect("equitable quotient entries are integers");
    let mut uncertified: Option<RecognitionResult> = None;
    for family in quotient_family(&q, n) {
        let recovered = match family {
            Family::Pi1 => recover_pi1(p),
            Family::Pi2 => recover_pi2(p),
            Family::Pi3 => recover_pi3(p),
        };
        let Some(pb) = recovered else { continue };
        let structure = dependence_signature(family, &pb);
        let regenerated = build_family(&pb, family)?;
        if regenerated.partition == *p {
            return Ok(RecognitionResult {
                family: family.into(),
                structure: Some(structure),
                certified: true,
            });
        }
        uncertified.get_or_insert(RecognitionResult {
            family: family.into(),
            structure: Some(structure),
            certified: false,
        });
    }
    Ok(uncertified.unwrap_or_else(RecognitionResult::unknown))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{pi2, pi3};

    #[test]
    fn quotient_family_examples() {
        assert_eq!(quotient_family(&[[23, 4], [18, 9]], 12), vec![Family::Pi1]);
        assert_eq!(
            quotient_family(&[[17, 10], [12, 15]], 12),
            vec![Family::Pi3]
        );
        assert_eq!(quotient_family(&[[21, 6], [16, 11]], 12), vec![Family::Pi2]);
        // symmetric case is delegated
        assert_eq!(
            quotient_family(&[[12, 9], [9, 12]], 10),
            Vec::<Family>::new()
        );
        // coincidences
        assert_eq!(
            quotient_family(&[[9, 6], [8, 7]], 8),
            vec![Family::Pi2, Family::Pi3]
        );
        assert_eq!(
            quotient_family(&[[33, 6], [24, 15]], 16),
            vec![Family::Pi1, Family::Pi2]
        );
    }

    #[test]
    fn round_trip_all_families_small_m() {
        for m in [3u32, 4, 6, 7] {
            let pb = PairedBipartition::identity(m).unwrap();
            for family in Family::ALL {
                // the symmetric-matrix instance is out of recognition scope
                if family == Family::Pi3 && m == 5 {
                    continue;
                }
                let built = build_family(&pb, family).unwrap();
                let r = recognize(&built.partition).unwrap();
                assert!(r.certified, "{family:?} at m={m}");
                assert_eq!(r.family, family.into());
                assert_eq!(r.structure.unwrap(), dependence_signature(family, &pb));
            }
        }
    }

    #[test]
    fn shared_matrix_instances_disambiguate() {
        // m = 4: pi2 and pi3 share the canonical matrix [[9,6],[8,7]]
        let pb = PairedBipartition::identity(4).unwrap();
        let r2 = recognize(&pi2(&pb).unwrap().partition).unwrap();
        assert_eq!(r2.family, RecognizedFamily::Pi2);
        assert!(r2.certified);
        let r3 = recognize(&pi3(&pb).unwrap().partition).unwrap();
        assert_eq!(r3.family, RecognizedFamily::Pi3);
        assert!(r3.certified);
        // m = 8: pi1 and pi2 share the full matrix [[33,6],[24,15]]
        let pb8 = PairedBipartition::identity(8).unwrap();
        for family in [Family::Pi1, Family::Pi2] {
            let built = build_family(&pb8, family).unwrap();
            let r = recognize(&built.partition).unwrap();
            assert_eq!(r.family, family.into(), "m=8");
            assert!(r.certified);
        }
    }

    #[test]
    fn symmetric_case_reports_unknown() {
        let pb = PairedBipartition::identity(5).unwrap();
        let p = pi3(&pb).unwrap().partition;
        assert_eq!(p.quotient().int_entries().unwrap(), [[12, 9], [9, 12]]);
        let r = recognize(&p).unwrap();
        assert_eq!(r.family, RecognizedFamily::Unknown);
        assert!(!r.certified);
    }

    #[test]
    fn recognize_rejects_wrong_theta() {
        // an equitable partition for a different eigenvalue: all triples
        // containing element 1 vs the rest (θ = λ₁)
        let ctx = crate::jgraph::GraphContext::new(8, 3).unwrap();
        let bits: crate::bits::Bitset = ctx.vertices().iter().map(|t| t.contains(1)).collect();
        let p = TwoPartition::new(ctx, bits).unwrap();
        assert!(p.is_equitable());
        assert!(matches!(recognize(&p), Err(Error::NotLambda2 { .. })));
    }

    #[test]
    fn equivariant_structure_recovery() {
        let pb = PairedBipartition::identity(6).unwrap();
        let sigma: Vec<u32> = vec![4, 9, 1, 12, 7, 2, 11, 3, 5, 10, 8, 6];
        for family in Family::ALL {
            let moved = build_family(&pb, family)
                .unwrap()
                .partition
                .relabel(&sigma)
                .unwrap();
            let r = recognize(&moved).unwrap();
            assert!(r.certified, "{family:?}");
            assert_eq!(
                r.structure.unwrap(),
                dependence_signature(family, &pb.relabel(&sigma).unwrap()),
                "{family:?}"
            );
        }
    }
}
