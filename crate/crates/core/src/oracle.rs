//! Exact minimum covers.
//!
//! Every separation and satisfaction question in this crate reduces to a
//! set cover: requirements are the pairs (or constraints) that must be
//! handled, candidates are the members that may be selected. [`min_cover`]
//! finds the optimum by iterative deepening with a disjoint-requirement
//! lower bound, then fixes the lexicographically least optimal cover one
//! position at a time.

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::constraint_select::{satisfies, Constraint};
use crate::error::{Error, Result};
use crate::setsystem::{Scope, SeparationInstance, SetFamily, SubsetMask};

/// Requirements `0..n_requirements` and candidates, each covering a subset
/// of the requirements.
#[derive(Clone, Debug)]
pub struct CoverProblem {
    n_requirements: usize,
    covers: Vec<BitSet>,
}

impl CoverProblem {
    pub fn new(n_requirements: usize, covers: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = Vec::with_capacity(covers.len());
        for (c, reqs) in covers.into_iter().enumerate() {
            let mut s = BitSet::new(n_requirements);
            for r in reqs {
                if r >= n_requirements {
                    return Err(Error::InvalidArgument(format!("candidate {c} covers unknown requirement {r}")));
                }
                s.insert(r);
            }
            sets.push(s);
        }
        Ok(CoverProblem { n_requirements, covers: sets })
    }

    /// Builds the coverage relation from a predicate `covers(candidate, requirement)`.
    pub fn from_fn(n_requirements: usize, n_candidates: usize, covers: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let covers = (0..n_candidates)
            .into_par_iter()
            .map(|c| {
                let mut s = BitSet::new(n_requirements);
                for r in 0..n_requirements {
                    if covers(c, r) {
                        s.insert(r);
                    }
                }
                s
            })
            .collect();
        CoverProblem { n_requirements, covers }
    }

    pub fn n_requirements(&self) -> usize {
        self.n_requirements
    }

    pub fn n_candidates(&self) -> usize {
        self.covers.len()
    }

    /// Requirements covered by candidate `c`.
    pub fn covered_by(&self, c: usize) -> Vec<usize> {
        self.covers[c].ones().collect()
    }

    /// First requirement no candidate covers.
    pub fn uncoverable(&self) -> Option<usize> {
        let mut all = BitSet::full(self.n_requirements);
        for c in &self.covers {
            all.and_not_assign(c);
        }
        all.first()
    }

    /// True iff `selection` covers every requirement.
    pub fn is_cover(&self, selection: &[usize]) -> bool {
        let mut left = BitSet::full(self.n_requirements);
        for &c in selection {
            left.and_not_assign(&self.covers[c]);
        }
        left.is_empty()
    }
}

/// A cover given by ascending candidate ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub members: Vec<usize>,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Minimum-cardinality cover, lexicographically least among the optimal
/// ones (compared as ascending candidate-id sequences).
///
/// Fails with [`Error::Infeasible`] when a requirement has no candidate and
/// with [`Error::BoundExceeded`] when every cover is larger than `max_size`.
pub fn min_cover(p: &CoverProblem, max_size: usize) -> Result<Cover> {
    if let Some(r) = p.uncoverable() {
        return Err(Error::Infeasible { requirement: r });
    }
    if p.n_requirements == 0 {
        return Ok(Cover { members: vec![] });
    }
    let reps = distinct_candidates(p);
    let core = undominated(p, &reps);

    let optimum = {
        let search = Search::new(p, &core);
        let everything = BitSet::full(p.n_requirements);
        let alive = BitSet::full(core.len());
        let lb = search.lower_bound(&everything, &alive);
        if lb > max_size {
            return Err(Error::BoundExceeded { max_size, lower_bound: lb });
        }
        let ub = greedy(p, &core).len();
        let mut found = None;
        for k in lb..ub.min(max_size + 1) {
            if search.feasible(&everything, &alive, k, &mut Vec::new()) {
                found = Some(k);
                break;
            }
        }
        match found {
            Some(k) => k,
            None if ub <= max_size => ub,
            None => {
                return Err(Error::BoundExceeded { max_size, lower_bound: max_size + 1 });
            }
        }
    };

    let members = lex_least_cover(p, &reps, optimum);
    assert!(p.is_cover(&members), "cover search returned a non-cover");
    assert_eq!(members.len(), optimum);
    Ok(Cover { members })
}

/// Lower bound on the optimum from greedily packing requirements with
/// pairwise disjoint candidate sets.
pub fn cover_lower_bound(p: &CoverProblem) -> usize {
    let all: Vec<usize> = (0..p.n_candidates()).collect();
    let search = Search::new(p, &all);
    search.lower_bound(&BitSet::full(p.n_requirements), &BitSet::full(all.len()))
}

/// Greedy cover (largest marginal coverage, least id on ties).
pub fn greedy_cover(p: &CoverProblem) -> Result<Cover> {
    if let Some(r) = p.uncoverable() {
        return Err(Error::Infeasible { requirement: r });
    }
    let all: Vec<usize> = (0..p.n_candidates()).collect();
    let mut members = greedy(p, &all);
    members.sort_unstable();
    Ok(Cover { members })
}

fn greedy(p: &CoverProblem, cands: &[usize]) -> Vec<usize> {
    let mut left = BitSet::full(p.n_requirements);
    let mut out = Vec::new();
    while !left.is_empty() {
        let best = cands
            .iter()
            .copied()
            .max_by(|&a, &b| p.covers[a].and_count(&left).cmp(&p.covers[b].and_count(&left)).then(b.cmp(&a)))
            .expect("coverable problem has candidates");
        left.and_not_assign(&p.covers[best]);
        out.push(best);
    }
    out
}

/// One candidate per distinct nonempty coverage, keeping the least id.
fn distinct_candidates(p: &CoverProblem) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    (0..p.n_candidates()).filter(|&c| !p.covers[c].is_empty() && seen.insert(p.covers[c].clone())).collect()
}

/// Drops candidates whose coverage is strictly contained in another's.
fn undominated(p: &CoverProblem, reps: &[usize]) -> Vec<usize> {
    let counts: Vec<usize> = reps.iter().map(|&c| p.covers[c].count()).collect();
    reps.iter()
        .enumerate()
        .filter(|&(i, &c)| {
            !reps
                .iter()
                .enumerate()
                .any(|(j, &d)| j != i && counts[j] > counts[i] && p.covers[c].is_subset(&p.covers[d]))
        })
        .map(|(_, &c)| c)
        .collect()
}

/// Fixes the cover one slot at a time, always taking the least id that can
/// still be completed to a cover of the optimal size.
fn lex_least_cover(p: &CoverProblem, reps: &[usize], optimum: usize) -> Vec<usize> {
    let search = Search::new(p, reps);
    let mut uncovered = BitSet::full(p.n_requirements);
    let mut chosen = Vec::with_capacity(optimum);
    let mut next = 0usize;
    for slot in 0..optimum {
        let remaining = optimum - slot - 1;
        let (pos, rest) = (next..reps.len())
            .find_map(|pos| {
                let c = reps[pos];
                if !p.covers[c].intersects(&uncovered) {
                    return None;
                }
                let mut rest = uncovered.clone();
                rest.and_not_assign(&p.covers[c]);
                let mut alive = BitSet::new(reps.len());
                for q in pos + 1..reps.len() {
                    alive.insert(q);
                }
                search.feasible(&rest, &alive, remaining, &mut Vec::new()).then_some((pos, rest))
            })
            .expect("optimal cover could not be reconstructed");
        chosen.push(reps[pos]);
        uncovered = rest;
        next = pos + 1;
    }
    chosen
}

/// Depth-first search over a fixed list of candidates.
struct Search<'a> {
    covers: Vec<&'a BitSet>,
    /// For every requirement, the positions of the candidates covering it.
    coverers: Vec<BitSet>,
}

impl<'a> Search<'a> {
    fn new(p: &'a CoverProblem, cands: &[usize]) -> Self {
        let covers: Vec<&BitSet> = cands.iter().map(|&c| &p.covers[c]).collect();
        let mut coverers = vec![BitSet::new(cands.len()); p.n_requirements];
        for (pos, cov) in covers.iter().enumerate() {
            for r in cov.ones() {
                coverers[r].insert(pos);
            }
        }
        Search { covers, coverers }
    }

    /// Greedy packing of requirements whose coverer sets are pairwise
    /// disjoint; each needs its own candidate. Returns `usize::MAX` when a
    /// requirement has no live coverer.
    fn lower_bound(&self, uncovered: &BitSet, alive: &BitSet) -> usize {
        let mut reqs: Vec<(usize, usize)> = uncovered.ones().map(|r| (self.coverers[r].and_count(alive), r)).collect();
        if reqs.iter().any(|&(k, _)| k == 0) {
            return usize::MAX;
        }
        reqs.sort_unstable();
        let mut used = BitSet::new(alive.len());
        let mut packed = 0;
        for &(_, r) in &reqs {
            let live = self.coverers[r].and(alive);
            if !live.intersects(&used) {
                used.or_assign(&live);
                packed += 1;
            }
        }
        let best_single = (0..self.covers.len())
            .filter(|&c| alive.contains(c))
            .map(|c| self.covers[c].and_count(uncovered))
            .max()
            .unwrap_or(0);
        let by_size = if best_single == 0 { usize::MAX } else { reqs.len().div_ceil(best_single) };
        packed.max(by_size)
    }

    /// Is there a cover of `uncovered` with at most `budget` live candidates?
    /// On success `out` holds the positions used.
    fn feasible(&self, uncovered: &BitSet, alive: &BitSet, budget: usize, out: &mut Vec<usize>) -> bool {
        if uncovered.is_empty() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        let mut live = BitSet::new(alive.len());
        for c in alive.ones() {
            if self.covers[c].intersects(uncovered) {
                live.insert(c);
            }
        }
        if budget == 1 {
            for c in live.ones() {
                if uncovered.is_subset(self.covers[c]) {
                    out.push(c);
                    return true;
                }
            }
            return false;
        }
        if self.lower_bound(uncovered, &live) > budget {
            return false;
        }
        // branch on the requirement with the fewest live coverers
        let (_, pivot) =
            uncovered.ones().map(|r| (self.coverers[r].and_count(&live), r)).min().expect("uncovered is nonempty");
        let mut options: Vec<(usize, usize)> =
            self.coverers[pivot].and(&live).ones().map(|c| (self.covers[c].and_count(uncovered), c)).collect();
        options.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in options {
            let mut rest = uncovered.clone();
            rest.and_not_assign(self.covers[c]);
            out.push(c);
            if self.feasible(&rest, &live, budget - 1, out) {
                return true;
            }
            out.pop();
            // every cover using c has been explored
            live.remove(c);
        }
        false
    }
}

/// Minimum subfamily result: member indices into the family plus the masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfamilyMinimum {
    pub indices: Vec<usize>,
    pub masks: Vec<SubsetMask>,
}

impl SubfamilyMinimum {
    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

/// Smallest subfamily of `inst.family` separating every in-scope pair.
pub fn min_separating_subfamily(inst: &SeparationInstance, scope: Scope) -> Result<SubfamilyMinimum> {
    min_separating_subfamily_bounded(inst, scope, usize::MAX - 1)
}

/// As [`min_separating_subfamily`], giving up above `max_size` members.
pub fn min_separating_subfamily_bounded(
    inst: &SeparationInstance,
    scope: Scope,
    max_size: usize,
) -> Result<SubfamilyMinimum> {
    let pairs = inst.pairs_in_scope(scope);
    let members = inst.family.members();
    let problem = CoverProblem::from_fn(pairs.len(), members.len(), |c, r| {
        let (x, y) = pairs[r];
        members[c].contains(x) != members[c].contains(y)
    });
    let cover = min_cover(&problem, max_size).map_err(|e| match e {
        Error::Infeasible { requirement } => {
            let (x, y) = pairs[requirement];
            Error::UnseparatedPair { x, y }
        }
        other => other,
    })?;
    Ok(SubfamilyMinimum { masks: cover.members.iter().map(|&i| members[i]).collect(), indices: cover.members })
}

/// Smallest subfamily of `f` satisfying every constraint.
pub fn min_satisfying_subfamily(f: &SetFamily, cs: &[Constraint]) -> Result<SubfamilyMinimum> {
    min_satisfying_subfamily_bounded(f, cs, usize::MAX - 1)
}

/// As [`min_satisfying_subfamily`], giving up above `max_size` members.
pub fn min_satisfying_subfamily_bounded(f: &SetFamily, cs: &[Constraint], max_size: usize) -> Result<SubfamilyMinimum> {
    let members = f.members();
    let problem = CoverProblem::from_fn(cs.len(), members.len(), |c, r| satisfies(members[c], &cs[r]));
    let cover = min_cover(&problem, max_size).map_err(|e| match e {
        Error::Infeasible { requirement } => Error::UnsatisfiableConstraint { index: requirement },
        other => other,
    })?;
    Ok(SubfamilyMinimum { masks: cover.members.iter().map(|&i| members[i]).collect(), indices: cover.members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint_select::gen_satcond_lower_bound;
    use crate::linear_select::gen_logp1_tight;
    use crate::setsystem::{GroundSet, Partition};
    use proptest::prelude::*;

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    fn brute_min(p: &CoverProblem) -> Option<Vec<usize>> {
        let n = p.n_candidates();
        let mut best: Option<Vec<usize>> = None;
        for bits in 0u32..1 << n {
            let sel: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
            if !p.is_cover(&sel) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => sel.len() < b.len() || (sel.len() == b.len() && sel < *b),
            };
            if better {
                best = Some(sel);
            }
        }
        best
    }

    #[test]
    fn two_point_universe() {
        let g = GroundSet::new(2).unwrap();
        let f = SetFamily::new(g, vec![m(&[0])]).unwrap();
        let r = min_separating_subfamily(&SeparationInstance::single_block(f), Scope::AllPairs).unwrap();
        assert_eq!(r.masks, vec![m(&[0])]);
    }

    #[test]
    fn singletons_need_three_of_four() {
        let g = GroundSet::new(4).unwrap();
        let f = SetFamily::new(g, (0..4).map(SubsetMask::singleton).collect()).unwrap();
        let r = min_separating_subfamily(&SeparationInstance::single_block(f), Scope::AllPairs).unwrap();
        assert_eq!(r.size(), 3);
        assert_eq!(r.indices, vec![0, 1, 2]);
    }

    #[test]
    fn power_set_needs_log_n() {
        let g = GroundSet::new(4).unwrap();
        let inst = SeparationInstance::single_block(SetFamily::power_set(g));
        assert_eq!(min_separating_subfamily(&inst, Scope::AllPairs).unwrap().size(), 2);
    }

    #[test]
    fn nothing_to_separate() {
        let g = GroundSet::new(3).unwrap();
        let f = SetFamily::new(g, vec![m(&[0])]).unwrap();
        let inst = SeparationInstance::new(f, Partition::singletons(g.full_mask())).unwrap();
        assert_eq!(min_separating_subfamily(&inst, Scope::AllPairs).unwrap().size(), 0);
    }

    #[test]
    fn tight_n2_needs_two() {
        let inst = gen_logp1_tight(2).unwrap();
        assert_eq!(min_separating_subfamily(&inst, Scope::AllPairs).unwrap().size(), 2);
    }

    #[test]
    fn unseparable_pair_reported() {
        let g = GroundSet::new(3).unwrap();
        let f = SetFamily::new(g, vec![m(&[0])]).unwrap();
        let inst = SeparationInstance::single_block(f.clone());
        assert_eq!(min_separating_subfamily(&inst, Scope::AllPairs), Err(Error::UnseparatedPair { x: 1, y: 2 }));
        assert_eq!(min_separating_subfamily(&inst, Scope::FamilySeparated).unwrap().size(), 1);
    }

    #[test]
    fn bound_exceeded_reports_lower_bound() {
        let g = GroundSet::new(5).unwrap();
        let f = SetFamily::new(g, (0..5).map(SubsetMask::singleton).collect()).unwrap();
        let inst = SeparationInstance::single_block(f);
        match min_separating_subfamily_bounded(&inst, Scope::AllPairs, 2) {
            Err(Error::BoundExceeded { max_size: 2, lower_bound }) => assert!(lower_bound >= 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn satcond_lower_bound_needs_all_constraints() {
        let (f, cs) = gen_satcond_lower_bound(2, 3).unwrap();
        assert_eq!(min_satisfying_subfamily(&f, &cs).unwrap().size(), 3);
        assert_eq!(min_satisfying_subfamily(&f, &[]).unwrap().size(), 0);
    }

    #[test]
    fn greedy_and_bound_bracket_optimum() {
        let inst = gen_logp1_tight(2).unwrap();
        let pairs = inst.pairs_in_scope(Scope::AllPairs);
        let members = inst.family.members();
        let p = CoverProblem::from_fn(pairs.len(), members.len(), |c, r| {
            members[c].contains(pairs[r].0) != members[c].contains(pairs[r].1)
        });
        let opt = min_cover(&p, usize::MAX - 1).unwrap().size();
        assert!(cover_lower_bound(&p) <= opt);
        assert!(greedy_cover(&p).unwrap().size() >= opt);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn matches_brute_force(
            n_req in 0usize..9,
            rows in proptest::collection::vec(proptest::collection::vec(0usize..9, 0..5), 0..10),
        ) {
            let covers: Vec<Vec<usize>> =
                rows.iter().map(|r| r.iter().copied().filter(|&x| x < n_req).collect()).collect();
            let p = CoverProblem::new(n_req, covers).unwrap();
            let got = min_cover(&p, usize::MAX - 1);
            match brute_min(&p) {
                None => { let infeasible = matches!(got, Err(Error::Infeasible { .. })); prop_assert!(infeasible) }
                Some(want) => prop_assert_eq!(got.unwrap().members, want),
            }
        }
    }
}
