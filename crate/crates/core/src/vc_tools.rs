//! VC dimension, shatter function, types of `(d+1)`-sets, and the two
//! explicit families around the VC-dimension separation bound.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::setsystem::{GroundSet, SetFamily, SubsetMask};

/// Largest ground set for exhaustive VC computations.
pub const MAX_VC_ELEMENTS: u32 = 20;
/// Largest ground set for [`homogeneous_subset`].
pub const MAX_HOMOGENEOUS_ELEMENTS: u32 = 16;
pub const MAX_HOMOGENEOUS_TARGET: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCReport {
    pub dimension: u32,
    /// Lexicographically least shattered set of maximum size.
    pub witness: SubsetMask,
}

fn distinct_traces(f: &SetFamily, a: SubsetMask) -> usize {
    let mut seen: HashSet<u32> = HashSet::new();
    for &m in f.members() {
        seen.insert((m & a).0);
    }
    seen.len()
}

/// Does `f` realize every trace on `a`?
pub fn is_shattered(f: &SetFamily, a: SubsetMask) -> bool {
    let want = 1usize << a.len();
    f.len() >= want && distinct_traces(f, a) == want
}

/// All `k`-subsets of `0..n` in lexicographic order of their sorted
/// element lists.
pub fn combinations(n: u32, k: u32) -> Vec<SubsetMask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let k = k as usize;
    let mut idx: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(SubsetMask::from_elements(idx.iter().copied()));
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - (k - i) as u32) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exact VC dimension, computed level by level: a `k`-set is tested only
/// when all of its `(k-1)`-subsets are shattered.
pub fn vc_dimension(f: &SetFamily) -> Result<VCReport> {
    let n = f.n();
    if n > MAX_VC_ELEMENTS {
        return Err(Error::SizeLimit(format!("VC dimension needs at most {MAX_VC_ELEMENTS} elements, got {n}")));
    }
    if f.is_empty() {
        return Err(Error::InvalidArgument("the empty family has no VC dimension".into()));
    }
    let mut level: HashSet<SubsetMask> = HashSet::from([SubsetMask::EMPTY]);
    let mut report = VCReport { dimension: 0, witness: SubsetMask::EMPTY };
    for k in 1..=n {
        let mut next = HashSet::new();
        let mut first = None;
        for a in combinations(n, k) {
            let downward = a.elements().all(|e| level.contains(&a.difference(SubsetMask::singleton(e))));
            if downward && is_shattered(f, a) {
                first.get_or_insert(a);
                next.insert(a);
            }
        }
        match first {
            Some(w) => report = VCReport { dimension: k, witness: w },
            None => break,
        }
        level = next;
    }
    Ok(report)
}

/// Largest number of distinct traces of `f` on an `m`-subset.
pub fn shatter_function(f: &SetFamily, m: u32) -> Result<usize> {
    let n = f.n();
    if m > n {
        return Err(Error::InvalidArgument(format!("m = {m} exceeds the ground set size {n}")));
    }
    if n > MAX_VC_ELEMENTS {
        return Err(Error::SizeLimit(format!("shatter function needs at most {MAX_VC_ELEMENTS} elements")));
    }
    let cap = (1usize << m).min(f.len());
    let mut best = 0;
    for a in combinations(n, m) {
        best = best.max(distinct_traces(f, a));
        if best == cap {
            break;
        }
    }
    Ok(best)
}

/// Type of a non-shattered set `A = {a_1 < ... < a_{d+1}}`: the least
/// unrealized trace pattern, as 1-based indices into `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeAssignment {
    pub elements: Vec<u32>,
    /// Bit `i - 1` set when index `i` belongs to the pattern.
    pub pattern: u32,
    /// `regular[i - 1]` for `i = 1..=d`: the pattern separates `i` from `i + 1`.
    pub regular: Vec<bool>,
}

impl TypeAssignment {
    pub fn indices(&self) -> Vec<u32> {
        (0..self.elements.len() as u32).filter(|&i| self.pattern >> i & 1 == 1).map(|i| i + 1).collect()
    }

    /// The unrealized trace, as a mask over the ground set.
    pub fn trace(&self) -> SubsetMask {
        pattern_trace(&self.elements, self.pattern)
    }
}

fn pattern_trace(elements: &[u32], pattern: u32) -> SubsetMask {
    SubsetMask::from_elements(elements.iter().enumerate().filter(|(i, _)| pattern >> i & 1 == 1).map(|(_, &e)| e))
}

pub fn type_of(f: &SetFamily, a: &[u32]) -> Result<TypeAssignment> {
    let mut elements = a.to_vec();
    elements.sort_unstable();
    elements.dedup();
    if elements.len() != a.len() || elements.is_empty() {
        return Err(Error::InvalidArgument("the set must have distinct elements".into()));
    }
    if let Some(&e) = elements.iter().find(|&&e| e >= f.n()) {
        return Err(Error::InvalidArgument(format!("element {e} is outside the ground set")));
    }
    let amask = SubsetMask::from_elements(elements.iter().copied());
    let realized: HashSet<SubsetMask> = f.members().iter().map(|&m| m & amask).collect();
    let width = elements.len() as u32;
    let pattern =
        (0..1u32 << width).find(|&p| !realized.contains(&pattern_trace(&elements, p))).ok_or(Error::NoType)?;
    let regular = (0..width - 1).map(|i| (pattern >> i & 1) != (pattern >> (i + 1) & 1)).collect();
    Ok(TypeAssignment { elements, pattern, regular })
}

/// First subset (in lexicographic order) of `target_size` elements all of
/// whose `(d+1)`-subsets have the same type.
pub fn homogeneous_subset(f: &SetFamily, d: u32, target_size: usize) -> Result<Option<(SubsetMask, TypeAssignment)>> {
    let n = f.n();
    if n > MAX_HOMOGENEOUS_ELEMENTS || target_size > MAX_HOMOGENEOUS_TARGET {
        return Err(Error::SizeLimit(format!(
            "homogeneous search needs at most {MAX_HOMOGENEOUS_ELEMENTS} elements and target {MAX_HOMOGENEOUS_TARGET}"
        )));
    }
    let k = d as usize + 1;
    if target_size < k {
        return Err(Error::InvalidArgument(format!("target size {target_size} is below d + 1 = {k}")));
    }
    // pattern of every (d+1)-subset, None when shattered
    let mut types: HashMap<SubsetMask, Option<u32>> = HashMap::new();
    let mut type_at = |s: SubsetMask| -> Option<u32> {
        *types.entry(s).or_insert_with(|| {
            let el: Vec<u32> = s.elements().collect();
            type_of(f, &el).ok().map(|t| t.pattern)
        })
    };
    for cand in combinations(n, target_size as u32) {
        let el: Vec<u32> = cand.elements().collect();
        let mut common: Option<u32> = None;
        let mut ok = true;
        for sub in combinations(target_size as u32, k as u32) {
            let s = SubsetMask::from_elements(sub.elements().map(|i| el[i as usize]));
            match (type_at(s), common) {
                (None, _) => ok = false,
                (Some(p), None) => common = Some(p),
                (Some(p), Some(c)) => ok = p == c,
            }
            if !ok {
                break;
            }
        }
        if ok {
            let first: Vec<u32> = el[..k].to_vec();
            let t = type_of(f, &first)?;
            return Ok(Some((cand, t)));
        }
    }
    Ok(None)
}

/// Number of `i` with exactly one of `i`, `i + 1` in `a`, for `i + 1 < n`.
pub fn alternations(a: SubsetMask, n: u32) -> u32 {
    if n < 2 {
        return 0;
    }
    let inner = SubsetMask::full(n - 1);
    ((a ^ SubsetMask(a.0 >> 1)) & inner).len()
}

/// Masks over `0..universe` containing `0` with at most `d` alternations
/// between consecutive elements.
pub fn gen_vc_tight_family(d: u32, universe: u32) -> Result<SetFamily> {
    if universe > MAX_VC_ELEMENTS {
        return Err(Error::SizeLimit(format!("universe {universe} exceeds {MAX_VC_ELEMENTS}")));
    }
    let g = GroundSet::new(universe)?;
    Ok(SetFamily::filtered(g, |a| a.contains(0) && alternations(a, universe) <= d))
}

/// All nonempty intervals `{i, ..., j}` of `0..n`.
pub fn gen_intervals(n: u32) -> Result<SetFamily> {
    let g = GroundSet::new(n)?;
    let mut members = Vec::new();
    for i in 0..n {
        for j in i..n {
            members.push(SubsetMask(SubsetMask::full(j + 1).0 & !SubsetMask::full(i).0));
        }
    }
    SetFamily::new(g, members)
}

/// Dual of the `(2^d - 1)`-subsets of an `m`-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBinomial {
    /// Ground element `i` stands for `subsets[i]`.
    pub subsets: Vec<Vec<u32>>,
    /// Member `y` holds the subsets containing `y`.
    pub family: SetFamily,
}

pub fn gen_dual_binomial_separator(m: u32, d: u32) -> Result<DualBinomial> {
    if d == 0 || d > 5 {
        return Err(Error::InvalidArgument(format!("d = {d} must be between 1 and 5")));
    }
    let k = (1u32 << d) - 1;
    if m <= k {
        return Err(Error::InvalidArgument(format!("m = {m} must exceed 2^d - 1 = {k}")));
    }
    let count = binomial(m as u64, k as u64);
    if count > crate::setsystem::MAX_ELEMENTS as u64 {
        return Err(Error::SizeLimit(format!("C({m}, {k}) = {count} ground elements")));
    }
    let subsets = combinations(m, k);
    let g = GroundSet::new(count as u32)?;
    let members = (0..m)
        .map(|y| SubsetMask::from_elements((0..subsets.len() as u32).filter(|&i| subsets[i as usize].contains(y))))
        .collect();
    Ok(DualBinomial {
        subsets: subsets.iter().map(|s| s.elements().collect()).collect(),
        family: SetFamily::new(g, members)?,
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
