//! GF(2) linear algebra on subset masks and the coset-basis selections.
//!
//! With symmetric difference as addition, the subsets of the ground set form
//! a vector space over GF(2). A binary code of `⌈log2 n⌉` sets separates
//! every block; its span `W` partitions the power set into cosets, and a
//! dense family has a coset it fills by more than half. A basis of the
//! family's translates inside that coset, shifted back by one member, is a
//! separating subfamily of at most `⌈log2 n⌉ + 1` members.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::setsystem::{partition_by, GroundSet, Partition, SeparationInstance, SetFamily, SubsetMask};

/// Reduced row-echelon basis of a subspace of `2^X`.
///
/// Each basis vector owns a pivot element (its least element) that no other
/// basis vector contains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gf2Basis {
    pivots: Vec<(u32, SubsetMask)>,
}

impl Gf2Basis {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[(u32, SubsetMask)] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.pivots.iter().map(|&(_, v)| v)
    }

    pub fn contains(&self, v: SubsetMask) -> bool {
        gf2_reduce(v, self).is_empty()
    }

    /// Adds `v` to the span. Returns false when `v` was already in it.
    pub fn insert(&mut self, v: SubsetMask) -> bool {
        let r = gf2_reduce(v, self);
        let Some(pivot) = r.min_element() else {
            return false;
        };
        for (_, b) in &mut self.pivots {
            if b.contains(pivot) {
                *b ^= r;
            }
        }
        let at = self.pivots.partition_point(|&(p, _)| p < pivot);
        self.pivots.insert(at, (pivot, r));
        true
    }
}

/// Canonical coset representative: `v` reduced to zero on every pivot.
pub fn gf2_reduce(v: SubsetMask, basis: &Gf2Basis) -> SubsetMask {
    basis.pivots.iter().fold(v, |acc, &(p, b)| if acc.contains(p) { acc ^ b } else { acc })
}

/// Reduced echelon basis of the span of `vectors`.
pub fn gf2_basis_of(vectors: &[SubsetMask]) -> Gf2Basis {
    let mut basis = Gf2Basis::default();
    for &v in vectors {
        basis.insert(v);
    }
    basis
}

/// A maximal independent subset of `vectors`, scanned in the given order.
pub fn independent_subset(vectors: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut basis = Gf2Basis::default();
    vectors.iter().copied().filter(|&v| basis.insert(v)).collect()
}

/// Sets separating every block by the binary digits of within-block ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFamily {
    pub sets: Vec<SubsetMask>,
    /// Within-block rank of every element of the ground set (`None` outside
    /// the partition).
    pub code: Vec<Option<u32>>,
}

/// `⌈log2 m⌉` for `m >= 1`.
pub fn ceil_log2(m: u32) -> u32 {
    if m <= 1 {
        0
    } else {
        32 - (m - 1).leading_zeros()
    }
}

/// Bit `j` of the output is the set of elements whose rank inside their
/// block (ascending element order) has bit `j` set.
pub fn binary_code_family(parts: &Partition) -> CodeFamily {
    let bits = ceil_log2(parts.max_block());
    let code: Vec<Option<u32>> = parts.local_indices(32).into_iter().map(|o| o.map(|(_, rank)| rank)).collect();
    let sets = (0..bits)
        .map(|j| SubsetMask::from_elements((0..32u32).filter(|&e| code[e as usize].is_some_and(|r| r >> j & 1 == 1))))
        .collect();
    CodeFamily { sets, code }
}

/// Members of `members` grouped by coset representative of `basis`.
fn group_by_coset(members: &[SubsetMask], basis: &Gf2Basis) -> BTreeMap<SubsetMask, Vec<SubsetMask>> {
    let mut groups: BTreeMap<SubsetMask, Vec<SubsetMask>> = BTreeMap::new();
    for &a in members {
        groups.entry(gf2_reduce(a, basis)).or_default().push(a);
    }
    for g in groups.values_mut() {
        g.sort_unstable();
    }
    groups
}

/// Coset with the most members, least representative on ties.
fn fullest_coset(groups: &BTreeMap<SubsetMask, Vec<SubsetMask>>) -> (SubsetMask, &[SubsetMask]) {
    let mut best: Option<(SubsetMask, &[SubsetMask])> = None;
    for (&rep, g) in groups {
        if best.is_none_or(|(_, b)| g.len() > b.len()) {
            best = Some((rep, g));
        }
    }
    best.expect("family is nonempty")
}

/// At most `⌈log2 n⌉ + 1` members of a family of density above 1/2 that
/// separate every block (`n` the largest block).
pub fn select_logp1(inst: &SeparationInstance) -> Result<Vec<SubsetMask>> {
    let density = inst.family.density();
    if density <= Ratio::new(1, 2) {
        return Err(Error::DensityTooLow { density });
    }
    let code = binary_code_family(&inst.parts);
    let w = gf2_basis_of(&code.sets);
    let groups = group_by_coset(inst.family.members(), &w);
    debug_assert_eq!(groups.values().map(Vec::len).sum::<usize>(), inst.family.len());

    let (_, coset) = fullest_coset(&groups);
    // more than half of the coset lies in the family
    assert!(2 * coset.len() > 1usize << w.rank(), "averaging over cosets failed");
    let d = coset[0];
    let translates: Vec<SubsetMask> = coset.iter().map(|&a| a ^ d).filter(|x| !x.is_empty()).collect();
    let z = independent_subset(&translates);
    assert_eq!(z.len(), w.rank(), "translates do not span the code space");

    let mut out = vec![d];
    out.extend(z.iter().map(|&x| x ^ d));
    Ok(out)
}

/// Result of the first phase: members chosen and the partition they leave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase1 {
    pub selected: Vec<SubsetMask>,
    pub partition: Partition,
    /// Rank of the chosen basis `B`.
    pub rank: u32,
    /// `r = ⌈log2 n⌉`.
    pub code_bits: u32,
}

/// Members `{C} ∪ {C + O_x : x ∈ B}` cutting every block into pieces of at
/// most `2^(r - |B|) ≤ 1/α` elements, where `O_x` is the set of elements
/// whose rank code has odd inner product with `x`.
pub fn phase1_select(inst: &SeparationInstance) -> Result<Phase1> {
    if inst.family.is_empty() {
        return Err(Error::InvalidArgument("phase 1 needs a nonempty family".into()));
    }
    let code = binary_code_family(&inst.parts);
    let r = code.sets.len() as u32;
    let o = |x: u32| -> SubsetMask {
        (0..r).filter(|&j| x >> j & 1 == 1).fold(SubsetMask::EMPTY, |acc, j| acc ^ code.sets[j as usize])
    };
    let w = gf2_basis_of(&code.sets);
    let groups = group_by_coset(inst.family.members(), &w);
    let (_, coset) = fullest_coset(&groups);
    // |S| >= α 2^r  <=>  |coset| * 2^n >= |F| * 2^r
    let alpha = inst.family.density();
    assert!(Ratio::new(coset.len() as u64, 1u64 << r) >= alpha, "coset density below the family density");
    let c = coset[0];
    // x ↦ O_x is injective because the code sets are independent
    let by_translate: BTreeMap<SubsetMask, u32> = (0..1u32 << r).map(|x| (o(x), x)).collect();
    let mut s: Vec<u32> = coset.iter().map(|&a| by_translate[&(a ^ c)]).filter(|&x| x != 0).collect();
    s.sort_unstable();
    let basis = independent_subset(&s.iter().map(|&x| SubsetMask(x)).collect::<Vec<_>>());

    let mut selected = vec![c];
    selected.extend(basis.iter().map(|x| c ^ o(x.0)));
    let partition = partition_by(&selected, &inst.parts);
    let rank = basis.len() as u32;
    assert!(partition.max_block() <= 1 << (r - rank));
    Ok(Phase1 { selected, partition, rank, code_bits: r })
}

/// The instance showing `⌈log2 n⌉` members do not always suffice:
/// `2^(n-1)` disjoint blocks of `n` elements and every set meeting at least
/// one block in nothing or in the whole block.
pub fn gen_logp1_tight(n: u32) -> Result<SeparationInstance> {
    if n < 2 {
        return Err(Error::InvalidArgument("tightness instance needs n >= 2".into()));
    }
    let k = 1u32 << (n - 1);
    let size = n
        .checked_mul(k)
        .filter(|&s| s <= crate::setsystem::MAX_ELEMENTS)
        .ok_or_else(|| Error::SizeLimit(format!("tightness instance for n = {n} exceeds the ground-set cap")))?;
    let ground = GroundSet::new(size)?;
    let blocks: Vec<SubsetMask> = (0..k).map(|i| SubsetMask(((1u32 << n) - 1) << (i * n))).collect();
    let family = SetFamily::filtered(ground, |a| {
        blocks.iter().any(|&b| {
            let t = a & b;
            t.is_empty() || t == b
        })
    });
    SeparationInstance::new(family, Partition::new(blocks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::{is_separating, Scope};

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    #[test]
    fn reduce_examples() {
        let b = gf2_basis_of(&[m(&[0])]);
        assert_eq!(gf2_reduce(m(&[0, 1]), &b), m(&[1]));
        assert_eq!(gf2_reduce(SubsetMask::EMPTY, &b), SubsetMask::EMPTY);

        let b = gf2_basis_of(&[m(&[0, 1]), m(&[2])]);
        let v = m(&[1, 2]);
        let r = gf2_reduce(v, &b);
        assert!(b.pivots().iter().all(|&(p, _)| !r.contains(p)));
        assert!(b.contains(r ^ v));
    }

    #[test]
    fn basis_examples() {
        assert_eq!(gf2_basis_of(&[]).rank(), 0);
        assert_eq!(gf2_basis_of(&[m(&[0]), m(&[0])]).rank(), 1);
        assert_eq!(gf2_basis_of(&[m(&[0, 1]), m(&[1, 2]), m(&[0, 2])]).rank(), 2);
        let b = gf2_basis_of(&[m(&[0, 1, 2]), m(&[1, 2]), m(&[2, 3])]);
        for &(p, v) in b.pivots() {
            assert_eq!(v.min_element(), Some(p));
            assert_eq!(b.pivots().iter().filter(|(_, u)| u.contains(p)).count(), 1);
        }
    }

    #[test]
    fn code_family_examples() {
        let p = Partition::from_element_lists(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(binary_code_family(&p).sets, vec![m(&[1]), m(&[2])]);
        let p = Partition::from_element_lists(&[vec![0], vec![1]]).unwrap();
        assert!(binary_code_family(&p).sets.is_empty());
        let p = Partition::from_element_lists(&[vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(binary_code_family(&p).sets, vec![m(&[1, 3])]);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!((1..=9).map(ceil_log2).collect::<Vec<_>>(), vec![0, 1, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn logp1_on_full_family() {
        let g = GroundSet::new(4).unwrap();
        let inst = SeparationInstance::single_block(SetFamily::power_set(g));
        let out = select_logp1(&inst).unwrap();
        assert!(out.len() <= 3);
        assert!(is_separating(&out, &inst, Scope::AllPairs).is_separating());
    }

    #[test]
    fn logp1_rejects_half_density() {
        let g = GroundSet::new(3).unwrap();
        let f = SetFamily::filtered(g, |a| a.contains(0));
        let inst = SeparationInstance::single_block(f);
        assert!(matches!(select_logp1(&inst), Err(Error::DensityTooLow { .. })));
    }

    #[test]
    fn phase1_examples() {
        let g = GroundSet::new(4).unwrap();
        let y = m(&[0, 1]);
        let f = SetFamily::filtered(g, |a| a.is_disjoint(y) || y.is_subset_of(a));
        assert_eq!(f.density(), Ratio::new(1, 2));
        let p1 = phase1_select(&SeparationInstance::single_block(f)).unwrap();
        assert!(p1.partition.max_block() <= 2);

        let f = SetFamily::new(g, vec![SubsetMask::EMPTY]).unwrap();
        let p1 = phase1_select(&SeparationInstance::single_block(f)).unwrap();
        assert_eq!(p1.selected.len(), 1);
        assert!(p1.partition.max_block() <= 4);

        let f = SetFamily::new(g, vec![]).unwrap();
        assert!(phase1_select(&SeparationInstance::single_block(f)).is_err());
    }

    #[test]
    fn tight_instance_n2() {
        let inst = gen_logp1_tight(2).unwrap();
        assert_eq!(inst.family.n(), 4);
        assert_eq!(inst.family.len(), 12);
        assert_eq!(inst.family.density(), Ratio::new(12, 16));
        let out = select_logp1(&inst).unwrap();
        assert_eq!(out.len(), 2);
        assert!(is_separating(&out, &inst, Scope::AllPairs).is_separating());
        assert!(is_separating(inst.family.members(), &inst, Scope::AllPairs).is_separating());
        assert!(gen_logp1_tight(4).is_err());
    }
}
