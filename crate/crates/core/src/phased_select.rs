//! Separating every separable pair with few members of a sparse family.
//!
//! The selection runs in four phases, each shrinking the largest block of
//! the current partition:
//!
//! 1. coset-basis selection over a linear code, down to `1/α`;
//! 2. pairs `C, C + f^-1(H)` with `H` cutting the block index set well, down
//!    to `max(2, ⌈10·log2(1/α)⌉)`;
//! 3. a few rounds of union covers over the image of the family under a
//!    per-block "cuts well" projection;
//! 4. greedy refinement by any member that still splits a block.
//!
//! A phase that cannot make its guaranteed progress reports a stall instead
//! of failing; the final greedy phase restores completeness regardless.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear_select::{ceil_log2, phase1_select};
use crate::setsystem::{partition_by, Density, Partition, SeparationInstance, SetFamily, SubsetMask};

/// `|y|/4 ≤ |a ∩ y| ≤ 3|y|/4`.
pub fn cuts_well(a: SubsetMask, y: SubsetMask) -> Result<bool> {
    if y.is_empty() {
        return Err(Error::InvalidArgument("cannot cut an empty set".into()));
    }
    Ok(cuts_well_unchecked(a, y))
}

#[inline]
fn cuts_well_unchecked(a: SubsetMask, y: SubsetMask) -> bool {
    let inside = (a & y).len();
    let total = y.len();
    4 * inside >= total && 4 * inside <= 3 * total
}

/// Members of `fprime` (subsets of `y`) whose union is `y`, using as few
/// sets as possible up to `t`. Among covers of the smallest size, the first
/// in lexicographic order of the sorted distinct members is returned.
pub fn brace_daykin_cover(fprime: &[SubsetMask], y: SubsetMask, t: usize) -> Result<Vec<SubsetMask>> {
    let mut sets: Vec<SubsetMask> = fprime.to_vec();
    sets.sort_unstable();
    sets.dedup();
    if let Some(&stray) = sets.iter().find(|s| !s.is_subset_of(y)) {
        return Err(Error::InvalidArgument(format!("{stray} is not a subset of {y}")));
    }
    let union = sets.iter().fold(SubsetMask::EMPTY, |acc, &s| acc | s);
    if union != y {
        return Err(Error::InvalidArgument("the sets do not cover the ground set".into()));
    }
    if y.is_empty() {
        return Ok(vec![]);
    }
    let mut suffix = vec![SubsetMask::EMPTY; sets.len() + 1];
    let mut widest = vec![0u32; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix[i] = suffix[i + 1] | sets[i];
        widest[i] = widest[i + 1].max(sets[i].len());
    }

    fn dfs(
        sets: &[SubsetMask],
        suffix: &[SubsetMask],
        widest: &[u32],
        y: SubsetMask,
        start: usize,
        left: usize,
        union: SubsetMask,
        picked: &mut Vec<usize>,
    ) -> bool {
        if union == y {
            return true;
        }
        if left == 0 {
            return false;
        }
        for i in start..sets.len() {
            let missing = y.difference(union);
            if !missing.is_subset_of(suffix[i]) || missing.len() > left as u32 * widest[i] {
                return false;
            }
            picked.push(i);
            if dfs(sets, suffix, widest, y, i + 1, left - 1, union | sets[i], picked) {
                return true;
            }
            picked.pop();
        }
        false
    }

    for size in 1..=t {
        let mut picked = Vec::new();
        if dfs(&sets, &suffix, &widest, y, 0, size, SubsetMask::EMPTY, &mut picked) {
            return Ok(picked.into_iter().map(|i| sets[i]).collect());
        }
    }
    Err(Error::NotFound { t })
}

/// Least integer `k ≥ 0` with `2^k ≥ (1/α)^10`, i.e. `⌈10·log2(1/α)⌉`.
pub fn ceil_ten_log2_inv(alpha: Density) -> u32 {
    assert!(alpha > Ratio::zero() && alpha <= Ratio::one());
    let p = BigUint::from(*alpha.numer()).pow(10);
    let q = BigUint::from(*alpha.denom()).pow(10);
    let mut k = 0u32;
    while (&p << k as usize) < q {
        k += 1;
    }
    k
}

/// Block-size threshold ending phase 2.
pub fn phase2_threshold(alpha: Density) -> u32 {
    ceil_ten_log2_inv(alpha).max(2)
}

/// Number of phase 3 rounds, `⌈log(10·log2(1/α)) / log(4/3)⌉`, at least 1.
pub fn phase3_rounds(alpha: Density) -> u32 {
    let a = *alpha.numer() as f64 / *alpha.denom() as f64;
    let inner = 10.0 * (1.0 / a).log2();
    if inner <= 1.0 {
        return 1;
    }
    ((inner.ln() / (4.0f64 / 3.0).ln()).ceil() as u32).max(1)
}

/// Cover size used in phase 3: the least `t ≥ 2` with `(t+2)/2^(t+1) < α`.
pub fn union_cover_size(alpha: Density) -> usize {
    let (p, q) = (*alpha.numer() as u128, *alpha.denom() as u128);
    let mut t = 2usize;
    // (t + 2) / 2^(t+1) < p / q
    while t < 120 && (t as u128 + 2) * q >= p << (t + 1) {
        t += 1;
    }
    t
}

/// Why a phase could not guarantee its progress.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stall {
    pub phase: u8,
    pub reason: String,
}

/// Outcome of a middle phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseOutcome {
    pub selected: Vec<SubsetMask>,
    pub partition: Partition,
    /// Largest block after each round.
    pub rounds: Vec<u32>,
    pub stall: Option<Stall>,
}

/// Per-element rank inside its block, and the elements of each rank.
fn rank_classes(parts: &Partition, width: u32) -> Vec<SubsetMask> {
    let mut classes = vec![SubsetMask::EMPTY; width as usize];
    for b in parts.blocks() {
        for (rank, e) in b.elements().enumerate() {
            classes[rank] = classes[rank] | SubsetMask::singleton(e);
        }
    }
    classes
}

/// Phase 2: while the largest block exceeds the threshold, pick a coset of
/// the rank-class subgroup the family fills to density at least `α`, and
/// add `C` and `C + f^-1(H)` for the least `H` in it cutting the rank set
/// well.
pub fn phase2_select(f: &SetFamily, parts: &Partition) -> Result<PhaseOutcome> {
    let alpha = f.density();
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("phase 2 needs a nonempty family".into()));
    }
    let threshold = phase2_threshold(alpha);
    let mut partition = parts.clone();
    let mut selected: Vec<SubsetMask> = Vec::new();
    let mut rounds = Vec::new();
    loop {
        let m = partition.max_block();
        if m <= threshold {
            return Ok(PhaseOutcome { selected, partition, rounds, stall: None });
        }
        let classes = rank_classes(&partition, m);
        let pivots: Vec<u32> = classes.iter().map(|c| c.min_element().expect("rank class is nonempty")).collect();
        let reduce = |a: SubsetMask| -> (SubsetMask, u32) {
            let mut rep = a;
            let mut h = 0u32;
            for (v, &p) in pivots.iter().enumerate() {
                if rep.contains(p) {
                    rep ^= classes[v];
                    h |= 1 << v;
                }
            }
            (rep, h)
        };
        let mut cosets: BTreeMap<SubsetMask, Vec<(SubsetMask, u32)>> = BTreeMap::new();
        for &a in f.members() {
            let (rep, h) = reduce(a);
            cosets.entry(rep).or_default().push((a, h));
        }
        let mut best: Option<(&SubsetMask, &Vec<(SubsetMask, u32)>)> = None;
        for entry in &cosets {
            if best.is_none_or(|(_, b)| entry.1.len() > b.len()) {
                best = Some(entry);
            }
        }
        let (_, coset) = best.expect("family is nonempty");
        assert!(Ratio::new(coset.len() as u64, 1u64 << m) >= alpha);
        let &(c, hc) = coset.iter().min().expect("coset is nonempty");
        let index_set = SubsetMask::full(m);
        let mut hs: Vec<u32> = coset.iter().map(|&(_, h)| h ^ hc).collect();
        hs.sort_unstable();
        let Some(h) = hs.into_iter().find(|&h| cuts_well_unchecked(SubsetMask(h), index_set)) else {
            return Ok(PhaseOutcome {
                selected,
                partition,
                rounds,
                stall: Some(Stall {
                    phase: 2,
                    reason: format!("no member in the chosen coset cuts a block of size {m} well"),
                }),
            });
        };
        let shift = (0..m).filter(|&v| h >> v & 1 == 1).fold(SubsetMask::EMPTY, |acc, v| acc ^ classes[v as usize]);
        for a in [c, c ^ shift] {
            debug_assert!(f.contains(a));
            if !selected.contains(&a) {
                selected.push(a);
            }
            partition = partition.refine(a);
        }
        let after = partition.max_block();
        assert!(4 * after <= 3 * m, "phase 2 round did not shrink the blocks");
        rounds.push(after);
    }
}

/// Traces chosen for one good block: the least `2^(s-1)` well-cutting
/// subsets of the block, with the largest swapped for the least realized
/// well-cutting trace when none is realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceChoice {
    pub block: SubsetMask,
    /// Largest trace admitted by the numeric cutoff.
    pub cutoff: SubsetMask,
    /// Trace dropped by the swap and the witness trace put in its place.
    pub swap: Option<(SubsetMask, SubsetMask)>,
}

impl TraceChoice {
    fn new(block: SubsetMask, realized_well: SubsetMask) -> Self {
        let want = 1u64 << (block.len() - 1);
        let mut count = 0u64;
        let mut cutoff = SubsetMask::EMPTY;
        let mut contains_witness = false;
        // ascending enumeration of the subsets of `block`
        let mut sub = 0u32;
        loop {
            let t = SubsetMask(sub);
            if cuts_well_unchecked(t, block) {
                count += 1;
                cutoff = t;
                contains_witness |= t == realized_well;
                if count == want {
                    break;
                }
            }
            if sub == block.0 {
                break;
            }
            sub = (sub.wrapping_sub(block.0)) & block.0;
        }
        assert_eq!(count, want, "fewer than half of the subsets cut the block well");
        let swap = (!contains_witness).then_some((cutoff, realized_well));
        TraceChoice { block, cutoff, swap }
    }

    /// Is `trace` (a subset of the block) among the chosen traces?
    pub fn contains(&self, trace: SubsetMask) -> bool {
        if let Some((dropped, added)) = self.swap {
            if trace == added {
                return true;
            }
            if trace == dropped {
                return false;
            }
        }
        trace <= self.cutoff && cuts_well_unchecked(trace, self.block)
    }

    pub fn len(&self) -> u64 {
        1u64 << (self.block.len() - 1)
    }
}

/// Block classification of one phase 3 round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodBadReport {
    /// Blocks some member cuts well, with their trace choices.
    pub good: Vec<TraceChoice>,
    /// Blocks of at least two elements no member cuts well.
    pub bad: Vec<SubsetMask>,
    /// Number of distinct images of the family under the projection.
    pub image_size: usize,
    /// Members selected this round.
    pub selected: Vec<SubsetMask>,
}

impl GoodBadReport {
    /// Density of the projected family in `2^G`.
    pub fn image_density(&self) -> Density {
        Ratio::new(self.image_size as u64, 1u64 << self.good.len())
    }
}

/// Outcome of phase 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase3Outcome {
    pub selected: Vec<SubsetMask>,
    pub partition: Partition,
    pub reports: Vec<GoodBadReport>,
    pub stall: Option<Stall>,
}

/// Projection of `a` onto the good blocks: bit `i` is set when the trace of
/// `a` on good block `i` is among its chosen traces.
fn project(a: SubsetMask, good: &[TraceChoice]) -> u32 {
    good.iter().enumerate().filter(|(_, g)| g.contains(a & g.block)).fold(0u32, |acc, (i, _)| acc | 1 << i)
}

/// One classification-and-cover round of phase 3.
fn phase3_round(f: &SetFamily, partition: &Partition, t: usize) -> (GoodBadReport, Option<Stall>) {
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for &b in partition.blocks() {
        if b.len() < 2 {
            continue;
        }
        let witness = f.members().iter().map(|&a| a & b).filter(|&tr| cuts_well_unchecked(tr, b)).min();
        match witness {
            Some(w) => good.push(TraceChoice::new(b, w)),
            None => bad.push(b),
        }
    }
    if good.is_empty() {
        return (GoodBadReport { good, bad, image_size: 0, selected: vec![] }, None);
    }
    let mut preimage: HashMap<u32, SubsetMask> = HashMap::new();
    for &a in f.members() {
        let img = project(a, &good);
        preimage.entry(img).and_modify(|p| *p = (*p).min(a)).or_insert(a);
    }
    let image: Vec<SubsetMask> = preimage.keys().map(|&k| SubsetMask(k)).collect();
    let g_all = SubsetMask::full(good.len() as u32);
    let image_size = image.len();
    match brace_daykin_cover(&image, g_all, t) {
        Ok(cover) => {
            let selected: Vec<SubsetMask> = cover.iter().map(|i| preimage[&i.0]).collect();
            (GoodBadReport { good, bad, image_size, selected }, None)
        }
        Err(e) => {
            let stall = Stall { phase: 3, reason: format!("union cover over {} good blocks failed: {e}", good.len()) };
            (GoodBadReport { good, bad, image_size, selected: vec![] }, Some(stall))
        }
    }
}

/// Phase 3: repeated good/bad classification and union covers.
pub fn phase3_select(f: &SetFamily, parts: &Partition) -> Result<Phase3Outcome> {
    let alpha = f.density();
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("phase 3 needs a nonempty family".into()));
    }
    let t = union_cover_size(alpha);
    let mut partition = parts.clone();
    let mut selected: Vec<SubsetMask> = Vec::new();
    let mut reports = Vec::new();
    let mut stall = None;
    for _ in 0..phase3_rounds(alpha) {
        if partition.is_atomic() {
            break;
        }
        let (report, round_stall) = phase3_round(f, &partition, t);
        // no good block means later rounds see the same partition
        let idle = report.good.is_empty();
        for &a in &report.selected {
            if !selected.contains(&a) {
                selected.push(a);
            }
            partition = partition.refine(a);
        }
        for g in &report.good {
            if round_stall.is_none() {
                let m = g.block.len();
                assert!(
                    partition.blocks().iter().filter(|b| b.is_subset_of(g.block)).all(|b| 4 * b.len() <= 3 * m),
                    "good block was not cut well"
                );
            }
        }
        reports.push(report);
        if round_stall.is_some() && stall.is_none() {
            stall = round_stall;
        }
        if idle {
            break;
        }
    }
    Ok(Phase3Outcome { selected, partition, reports, stall })
}

/// Phase 4: every member that still splits a block, in ascending order.
pub fn phase4_select(f: &SetFamily, parts: &Partition) -> (Vec<SubsetMask>, Partition) {
    let mut members = f.members().to_vec();
    members.sort_unstable();
    let mut partition = parts.clone();
    let mut selected = Vec::new();
    for a in members {
        if partition.is_cut_by(a) {
            partition = partition.refine(a);
            selected.push(a);
        }
    }
    (selected, partition)
}

/// One phase of a [`PhaseTrace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseRecord {
    pub phase: u8,
    pub selected: Vec<SubsetMask>,
    pub max_block_before: u32,
    pub max_block_after: u32,
    /// `(block size, count)`, largest size first.
    pub histogram: Vec<(u32, usize)>,
    /// Distinct members selected up to and including this phase.
    pub total_selected: usize,
    pub stall: Option<Stall>,
}

/// Per-phase progress of [`select_logpalpha`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTrace {
    /// Largest block of the input partition.
    pub initial_max_block: u32,
    pub alpha: Density,
    pub phases: Vec<PhaseRecord>,
    pub phase3_reports: Vec<GoodBadReport>,
}

impl PhaseTrace {
    /// `|selected so far| - log2(n / m)` after phase record `i`.
    pub fn loss(&self, i: usize) -> f64 {
        let r = &self.phases[i];
        let ratio = self.initial_max_block.max(1) as f64 / r.max_block_after.max(1) as f64;
        r.total_selected as f64 - ratio.log2()
    }

    pub fn stalls(&self) -> impl Iterator<Item = &Stall> {
        self.phases.iter().filter_map(|p| p.stall.as_ref())
    }
}

/// Output of [`select_logpalpha`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogPAlpha {
    pub selected: Vec<SubsetMask>,
    pub partition: Partition,
    pub trace: PhaseTrace,
}

/// The four-phase selection. The result separates every within-block pair
/// that the whole family separates.
pub fn select_logpalpha(inst: &SeparationInstance) -> Result<LogPAlpha> {
    let f = &inst.family;
    if f.is_empty() {
        return Err(Error::InvalidArgument("the family is empty".into()));
    }
    let mut selected: Vec<SubsetMask> = Vec::new();
    let mut phases = Vec::new();
    let mut record = |phase: u8,
                      picks: &[SubsetMask],
                      before: &Partition,
                      after: &Partition,
                      stall: Option<Stall>,
                      selected: &mut Vec<SubsetMask>| {
        for &a in picks {
            if !selected.contains(&a) {
                selected.push(a);
            }
        }
        phases.push(PhaseRecord {
            phase,
            selected: picks.to_vec(),
            max_block_before: before.max_block(),
            max_block_after: after.max_block(),
            histogram: after.size_histogram(),
            total_selected: selected.len(),
            stall,
        });
    };

    let p1 = phase1_select(inst)?;
    record(1, &p1.selected, &inst.parts, &p1.partition, None, &mut selected);
    let p2 = phase2_select(f, &p1.partition)?;
    record(2, &p2.selected, &p1.partition, &p2.partition, p2.stall.clone(), &mut selected);
    let p3 = phase3_select(f, &p2.partition)?;
    record(3, &p3.selected, &p2.partition, &p3.partition, p3.stall.clone(), &mut selected);
    let (p4, partition) = phase4_select(f, &p3.partition);
    record(4, &p4, &p3.partition, &partition, None, &mut selected);

    assert!(partition == partition_by(f.members(), &inst.parts), "selection does not separate every separable pair");
    let trace = PhaseTrace {
        initial_max_block: inst.parts.max_block(),
        alpha: f.density(),
        phases,
        phase3_reports: p3.reports,
    };
    Ok(LogPAlpha { selected, partition, trace })
}

/// `⌈log2 n⌉ + K·(1 + log2(1/α))·(1 + log2(1 + log2(1/α)))`.
pub fn logpalpha_bound(max_part: u32, alpha: Density, k: f64) -> f64 {
    let a = *alpha.numer() as f64 / *alpha.denom() as f64;
    let l = (1.0 / a).log2();
    ceil_log2(max_part) as f64 + k * (1.0 + l) * (1.0 + (1.0 + l).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsystem::{is_separating, separated_pairs, GroundSet, Scope};

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    #[test]
    fn cuts_well_examples() {
        assert!(cuts_well(m(&[0, 1]), m(&[0, 1, 2, 3])).unwrap());
        assert!(!cuts_well(m(&[4]), m(&[0, 1, 2, 3])).unwrap());
        assert!(cuts_well(m(&[0]), m(&[0, 1])).unwrap());
        assert!(cuts_well(m(&[0]), SubsetMask::EMPTY).is_err());
    }

    #[test]
    fn cover_examples() {
        let y = m(&[0, 1, 2]);
        assert_eq!(brace_daykin_cover(&[m(&[0]), y], y, 1).unwrap(), vec![y]);
        let y = m(&[0, 1]);
        assert_eq!(brace_daykin_cover(&[m(&[0]), m(&[1])], y, 2).unwrap(), vec![m(&[0]), m(&[1])]);
        assert_eq!(brace_daykin_cover(&[m(&[0]), m(&[1])], y, 1), Err(Error::NotFound { t: 1 }));
        assert!(brace_daykin_cover(&[m(&[0])], y, 2).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(ceil_ten_log2_inv(Ratio::from_integer(1)), 0);
        assert_eq!(ceil_ten_log2_inv(Ratio::new(1, 2)), 10);
        assert_eq!(ceil_ten_log2_inv(Ratio::new(1, 4)), 20);
        // 10 * log2(3/2) = 5.849..
        assert_eq!(ceil_ten_log2_inv(Ratio::new(2, 3)), 6);
        assert_eq!(phase2_threshold(Ratio::from_integer(1)), 2);
        // (t+2)/2^(t+1): t=2 -> 1/2, t=3 -> 5/16, t=4 -> 3/16, t=5 -> 7/64
        assert_eq!(union_cover_size(Ratio::new(3, 4)), 2);
        assert_eq!(union_cover_size(Ratio::new(1, 2)), 3);
        assert_eq!(union_cover_size(Ratio::new(1, 4)), 4);
        assert_eq!(union_cover_size(Ratio::new(1, 8)), 5);
        // log(20)/log(4/3) = 10.41.. -> 11
        assert_eq!(phase3_rounds(Ratio::new(1, 4)), 11);
        assert_eq!(phase3_rounds(Ratio::from_integer(1)), 1);
    }

    #[test]
    fn phase2_skips_when_below_threshold() {
        let g = GroundSet::new(6).unwrap();
        let f = SetFamily::filtered(g, |a| a.len() % 4 == 0);
        let out = phase2_select(&f, &Partition::single_block(g)).unwrap();
        assert!(out.selected.is_empty());
    }

    #[test]
    fn phase2_full_family_shrinks_by_quarter() {
        let g = GroundSet::new(16).unwrap();
        let f = SetFamily::power_set(g);
        let out = phase2_select(&f, &Partition::single_block(g)).unwrap();
        assert!(out.stall.is_none());
        assert!(out.rounds[0] <= 12);
        assert!(out.partition.max_block() <= 2);
    }

    #[test]
    fn phase4_examples() {
        let g = GroundSet::new(3).unwrap();
        let f = SetFamily::power_set(g);
        let (sel, _) = phase4_select(&f, &Partition::singletons(g.full_mask()));
        assert!(sel.is_empty());
        let f = SetFamily::new(g, vec![m(&[0])]).unwrap();
        let (sel, p) = phase4_select(&f, &Partition::single_block(g));
        assert_eq!(sel, vec![m(&[0])]);
        assert_eq!(p, partition_by(f.members(), &Partition::single_block(g)));
    }

    #[test]
    fn trace_choice_sizes() {
        for s in 2..=8u32 {
            let b = SubsetMask::full(s);
            let ch = TraceChoice::new(b, SubsetMask::full(s / 2));
            let n = (0..1u32 << s).filter(|&t| ch.contains(SubsetMask(t))).count() as u64;
            assert_eq!(n, ch.len());
            assert!(ch.contains(SubsetMask::full(s / 2)));
            assert!((0..1u32 << s)
                .filter(|&t| ch.contains(SubsetMask(t)))
                .all(|t| cuts_well_unchecked(SubsetMask(t), b)));
        }
        // witness beyond the cutoff is swapped in
        let b = SubsetMask::full(4);
        let ch = TraceChoice::new(b, m(&[2, 3]));
        assert!(ch.swap.is_some());
        assert!(ch.contains(m(&[2, 3])));
    }

    #[test]
    fn logpalpha_dense_family_stops_after_phase1() {
        let g = GroundSet::new(6).unwrap();
        let f = SetFamily::filtered(g, |a| a.len() != 3);
        let inst = SeparationInstance::single_block(f);
        let out = select_logpalpha(&inst).unwrap();
        assert!(out.trace.phases[0].max_block_after == 1);
        assert!(out.trace.phases[1..].iter().all(|p| p.selected.is_empty()));
    }

    #[test]
    fn logpalpha_keeps_unseparable_core() {
        let g = GroundSet::new(8).unwrap();
        let y = m(&[0, 1, 2]);
        let f = SetFamily::filtered(g, |a| a.is_disjoint(y) || y.is_subset_of(a));
        let inst = SeparationInstance::single_block(f);
        let out = select_logpalpha(&inst).unwrap();
        assert!(is_separating(&out.selected, &inst, Scope::FamilySeparated).is_separating());
        let pairs = separated_pairs(&inst);
        assert!(!pairs.contains(&(0, 1)) && !pairs.contains(&(0, 2)) && !pairs.contains(&(1, 2)));
        assert_eq!(pairs.len(), 28 - 3);
    }

    #[test]
    fn logpalpha_single_empty_member() {
        let g = GroundSet::new(4).unwrap();
        let f = SetFamily::new(g, vec![SubsetMask::EMPTY]).unwrap();
        let out = select_logpalpha(&SeparationInstance::single_block(f)).unwrap();
        assert!(out.selected.len() <= 1);
        assert!(out.selected.iter().all(|a| a.is_empty()));
    }
}
