//! Ground sets, subset masks, set families and partitions.
//!
//! Subsets of the ground set `{0, .., n-1}` are packed into a `u32`, so the
//! ground set is capped at [`MAX_ELEMENTS`] elements. The symmetric
//! difference (`^`) makes the masks a vector space over GF(2), which the
//! selection algorithms rely on.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign};

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: u32 = 30;

/// Exact density `|F| / 2^n`.
pub type Density = Ratio<u64>;

/// A subset of the ground set, bit `i` standing for element `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |acc, e| acc | (1 << e)))
    }

    /// Mask of the elements `0..n`.
    pub fn full(n: u32) -> Self {
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: u32) -> Self {
        SubsetMask(1 << e)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, e: u32) -> bool {
        e < 32 && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements not in `self`, within the ground set `0..n`.
    pub fn complement(self, n: u32) -> Self {
        SubsetMask(!self.0 & Self::full(n).0)
    }

    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Least element, if any.
    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// Lowercase hex with a `0x` prefix.
    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        u32::from_str_radix(digits, 16)
            .map(SubsetMask)
            .map_err(|e| Error::Malformed(format!("bad hex mask {s:?}: {e}")))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Symmetric difference, the group operation of `2^X`.
impl BitXor for SubsetMask {
    type Output = SubsetMask;
    fn bitxor(self, rhs: Self) -> Self {
        SubsetMask(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for SubsetMask {
    fn bitxor_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

/// Iterator over the elements of a mask in ascending order.
#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(e)
    }
    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// The ground set `{0, .., n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n_elements: u32) -> Result<Self> {
        if n_elements == 0 || n_elements > MAX_ELEMENTS {
            return Err(Error::SizeLimit(format!(
                "ground set must have between 1 and {MAX_ELEMENTS} elements, got {n_elements}"
            )));
        }
        Ok(GroundSet { n: n_elements })
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_size(&self) -> u64 {
        1u64 << self.n
    }

    /// Every subset in increasing numeric order.
    pub fn all_masks(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.power_set_size()).map(|b| SubsetMask(b as u32))
    }

    pub fn contains_mask(&self, a: SubsetMask) -> bool {
        a.is_subset_of(self.full_mask())
    }

    fn check_element(&self, x: u32) -> Result<()> {
        if x >= self.n {
            return Err(Error::InvalidArgument(format!("element {x} outside ground set of size {}", self.n)));
        }
        Ok(())
    }
}

/// An explicit family of distinct subsets of a ground set.
#[derive(Clone, Debug)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<SubsetMask>,
    index: HashSet<SubsetMask>,
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl SetFamily {
    /// Builds a family, rejecting duplicates and masks outside the ground set.
    pub fn new(ground: GroundSet, members: Vec<SubsetMask>) -> Result<Self> {
        let mut index = HashSet::with_capacity(members.len());
        for &a in &members {
            if !ground.contains_mask(a) {
                return Err(Error::InvalidArgument(format!(
                    "member {a} has elements outside the ground set of size {}",
                    ground.len()
                )));
            }
            if !index.insert(a) {
                return Err(Error::InvalidArgument(format!("duplicate member {a}")));
            }
        }
        Ok(SetFamily { ground, members, index })
    }

    /// Like [`SetFamily::new`] but silently drops repeated members.
    pub fn from_masks_dedup<I: IntoIterator<Item = SubsetMask>>(ground: GroundSet, masks: I) -> Result<Self> {
        let mut seen = HashSet::new();
        let members = masks.into_iter().filter(|a| seen.insert(*a)).collect();
        Self::new(ground, members)
    }

    /// The whole power set, in increasing numeric order.
    pub fn power_set(ground: GroundSet) -> Self {
        Self::new(ground, ground.all_masks().collect()).expect("power set members are distinct")
    }

    /// All subsets of the ground set that satisfy `keep`, in increasing order.
    pub fn filtered(ground: GroundSet, keep: impl Fn(SubsetMask) -> bool) -> Self {
        Self::new(ground, ground.all_masks().filter(|&a| keep(a)).collect())
            .expect("filtered power set members are distinct")
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: SubsetMask) -> bool {
        self.index.contains(&a)
    }

    pub fn density(&self) -> Density {
        density(self)
    }

    /// Members not in this family, as a family over the same ground set.
    pub fn complement_family(&self) -> SetFamily {
        SetFamily::filtered(self.ground, |a| !self.contains(a))
    }
}

/// `|F| / 2^n` as an exact rational.
pub fn density(f: &SetFamily) -> Density {
    Ratio::new(f.len() as u64, f.ground.power_set_size())
}

/// Disjoint nonempty blocks covering some subset of the ground set.
///
/// Block order is meaningful only for [`Partition::refine`]; equality and
/// comparisons go through [`Partition::block_set`].
#[derive(Clone, Debug)]
pub struct Partition {
    blocks: Vec<SubsetMask>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.block_set() == other.block_set()
    }
}

impl Eq for Partition {}

impl Partition {
    pub fn new(blocks: Vec<SubsetMask>) -> Result<Self> {
        let mut seen = SubsetMask::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("partition block is empty".into()));
            }
            if !b.is_disjoint(seen) {
                return Err(Error::InvalidArgument(format!("partition blocks overlap on {:?}", b & seen)));
            }
            seen = seen | b;
        }
        Ok(Partition { blocks })
    }

    pub fn from_element_lists(lists: &[Vec<u32>]) -> Result<Self> {
        for l in lists {
            if let Some(&e) = l.iter().find(|&&e| e >= MAX_ELEMENTS) {
                return Err(Error::InvalidArgument(format!("element {e} out of range")));
            }
            let set: HashSet<_> = l.iter().collect();
            if set.len() != l.len() {
                return Err(Error::InvalidArgument("repeated element in a block".into()));
            }
        }
        Self::new(lists.iter().map(|l| SubsetMask::from_elements(l.iter().copied())).collect())
    }

    /// One block holding the whole ground set.
    pub fn single_block(ground: GroundSet) -> Self {
        Partition { blocks: vec![ground.full_mask()] }
    }

    /// Every element of `covered` in its own block.
    pub fn singletons(covered: SubsetMask) -> Self {
        Partition { blocks: covered.elements().map(SubsetMask::singleton).collect() }
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn block_elements(&self, i: usize) -> Vec<u32> {
        self.blocks[i].elements().collect()
    }

    pub fn max_block(&self) -> u32 {
        self.blocks.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn covered(&self) -> SubsetMask {
        self.blocks.iter().fold(SubsetMask::EMPTY, |acc, &b| acc | b)
    }

    pub fn is_atomic(&self) -> bool {
        self.blocks.iter().all(|b| b.len() <= 1)
    }

    /// Blocks as a set of masks, independent of order.
    pub fn block_set(&self) -> BTreeSet<SubsetMask> {
        self.blocks.iter().copied().collect()
    }

    /// Blocks sorted by their least element.
    pub fn sorted_blocks(&self) -> Vec<SubsetMask> {
        let mut b = self.blocks.clone();
        b.sort_by_key(|m| m.min_element());
        b
    }

    /// Sizes of the blocks, largest first.
    pub fn size_histogram(&self) -> Vec<(u32, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for b in &self.blocks {
            *counts.entry(b.len()).or_insert(0usize) += 1;
        }
        counts.into_iter().rev().collect()
    }

    /// Splits every block by `a`; the piece inside `a` comes first and both
    /// pieces take the place of their parent.
    pub fn refine(&self, a: SubsetMask) -> Partition {
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        for &b in &self.blocks {
            let inside = b & a;
            let outside = b.difference(a);
            if !inside.is_empty() {
                blocks.push(inside);
            }
            if !outside.is_empty() {
                blocks.push(outside);
            }
        }
        Partition { blocks }
    }

    /// True iff `a` splits at least one block.
    pub fn is_cut_by(&self, a: SubsetMask) -> bool {
        self.blocks.iter().any(|&b| {
            let inside = b & a;
            !inside.is_empty() && inside != b
        })
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn is_finer_or_equal(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|&b| other.blocks.iter().any(|&o| b.is_subset_of(o)))
    }

    /// For each element of the ground set `0..n`, its block and its rank
    /// inside the block (ascending element order).
    pub fn local_indices(&self, n: u32) -> Vec<Option<(usize, u32)>> {
        let mut out = vec![None; n as usize];
        for (bi, b) in self.blocks.iter().enumerate() {
            for (rank, e) in b.elements().enumerate() {
                if e < n {
                    out[e as usize] = Some((bi, rank as u32));
                }
            }
        }
        out
    }
}

/// Refines `initial` by every mask of `fam` in turn.
pub fn partition_by(fam: &[SubsetMask], initial: &Partition) -> Partition {
    fam.iter().fold(initial.clone(), |p, &a| p.refine(a))
}

/// True iff exactly one of `x`, `y` lies in `a`.
pub fn separates(a: SubsetMask, x: u32, y: u32, ground: GroundSet) -> Result<bool> {
    ground.check_element(x)?;
    ground.check_element(y)?;
    if x == y {
        return Err(Error::InvalidArgument(format!("cannot separate element {x} from itself")));
    }
    Ok(a.contains(x) != a.contains(y))
}

/// Which pairs a separation check has to cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Every pair inside a block.
    AllPairs,
    /// Pairs inside a block that some member of the whole family separates.
    FamilySeparated,
}

/// A family together with the blocks that have to be separated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationInstance {
    pub family: SetFamily,
    pub parts: Partition,
}

impl SeparationInstance {
    pub fn new(family: SetFamily, parts: Partition) -> Result<Self> {
        if !parts.covered().is_subset_of(family.ground().full_mask()) {
            return Err(Error::InvalidArgument(format!(
                "partition mentions elements outside the ground set of size {}",
                family.n()
            )));
        }
        Ok(SeparationInstance { family, parts })
    }

    /// Whole ground set as one block.
    pub fn single_block(family: SetFamily) -> Self {
        let parts = Partition::single_block(family.ground());
        SeparationInstance { family, parts }
    }

    pub fn ground(&self) -> GroundSet {
        self.family.ground()
    }

    /// Largest block size.
    pub fn max_part(&self) -> u32 {
        self.parts.max_block()
    }

    /// Within-block pairs, `x < y`, in lexicographic order.
    pub fn block_pairs(&self) -> Vec<(u32, u32)> {
        let mut pairs = Vec::new();
        for b in self.parts.sorted_blocks() {
            let elems: Vec<u32> = b.elements().collect();
            for (i, &x) in elems.iter().enumerate() {
                for &y in &elems[i + 1..] {
                    pairs.push((x, y));
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }

    /// Pairs the instance asks to separate under `scope`.
    pub fn pairs_in_scope(&self, scope: Scope) -> Vec<(u32, u32)> {
        match scope {
            Scope::AllPairs => self.block_pairs(),
            Scope::FamilySeparated => separated_pairs(self).into_iter().collect(),
        }
    }
}

/// Within-block pairs `{x, y}` (as `x < y`) separated by some member.
pub fn separated_pairs(inst: &SeparationInstance) -> BTreeSet<(u32, u32)> {
    let full = partition_by(inst.family.members(), &inst.parts);
    let mut block_of = vec![usize::MAX; inst.family.n() as usize];
    for (i, b) in full.blocks().iter().enumerate() {
        for e in b.elements() {
            block_of[e as usize] = i;
        }
    }
    inst.block_pairs().into_iter().filter(|&(x, y)| block_of[x as usize] != block_of[y as usize]).collect()
}

/// Outcome of [`is_separating`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Separating,
    /// A pair in scope that no mask separates.
    Unseparated(u32, u32),
}

impl Verdict {
    pub fn is_separating(self) -> bool {
        self == Verdict::Separating
    }

    pub fn witness(self) -> Option<(u32, u32)> {
        match self {
            Verdict::Separating => None,
            Verdict::Unseparated(x, y) => Some((x, y)),
        }
    }
}

/// Checks whether `fam` separates every in-scope pair of `inst`.
///
/// The witness is the lexicographically least unseparated pair.
pub fn is_separating(fam: &[SubsetMask], inst: &SeparationInstance, scope: Scope) -> Verdict {
    let mine = partition_by(fam, &inst.parts);
    let target = match scope {
        Scope::AllPairs => Partition::singletons(inst.parts.covered()),
        Scope::FamilySeparated => partition_by(inst.family.members(), &inst.parts),
    };
    let mut target_of = vec![usize::MAX; 32];
    for (i, b) in target.blocks().iter().enumerate() {
        for e in b.elements() {
            target_of[e as usize] = i;
        }
    }
    let mut best: Option<(u32, u32)> = None;
    for b in mine.blocks() {
        let elems: Vec<u32> = b.elements().collect();
        'outer: for (i, &x) in elems.iter().enumerate() {
            for &y in &elems[i + 1..] {
                if target_of[x as usize] != target_of[y as usize] {
                    if best.is_none_or(|w| (x, y) < w) {
                        best = Some((x, y));
                    }
                    break 'outer;
                }
            }
        }
    }
    match best {
        None => Verdict::Separating,
        Some((x, y)) => Verdict::Unseparated(x, y),
    }
}
