//! Satisfying many small constraints with few members of a dense family.
//!
//! A constraint `(V, W)` asks for a member containing `V` and avoiding `W`.
//! [`select_satcond`] draws a logarithmic number of random members, which
//! handles every constraint satisfied by a constant fraction of the family,
//! and completes the rest greedily.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::setsystem::{GroundSet, SetFamily, SubsetMask};

/// A pair of disjoint sets `(v, w)`: satisfied by sets containing `v` and
/// missing `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    v: SubsetMask,
    w: SubsetMask,
}

impl Constraint {
    pub fn new(v: SubsetMask, w: SubsetMask) -> Result<Self> {
        if !v.is_disjoint(w) {
            return Err(Error::InvalidArgument(format!("constraint sides overlap on {:?}", v & w)));
        }
        Ok(Constraint { v, w })
    }

    pub fn from_lists(v: &[u32], w: &[u32]) -> Result<Self> {
        if v.iter().chain(w).any(|&e| e >= 32) {
            return Err(Error::InvalidArgument("constraint element out of range".into()));
        }
        Self::new(SubsetMask::from_elements(v.iter().copied()), SubsetMask::from_elements(w.iter().copied()))
    }

    pub fn v(&self) -> SubsetMask {
        self.v
    }

    pub fn w(&self) -> SubsetMask {
        self.w
    }

    pub fn support(&self) -> SubsetMask {
        self.v | self.w
    }

    pub fn size(&self) -> u32 {
        self.support().len()
    }
}

pub fn satisfies(a: SubsetMask, c: &Constraint) -> bool {
    c.v.is_subset_of(a) && a.is_disjoint(c.w)
}

/// Per-constraint satisfier counts split at an ε threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub good: Vec<usize>,
    pub bad: Vec<usize>,
    pub counts: Vec<usize>,
}

/// A constraint is ε-good when at least `ε·|F|` members satisfy it.
pub fn classify_constraints(f: &SetFamily, cs: &[Constraint], epsilon: Ratio<u64>) -> Classification {
    let counts: Vec<usize> = cs.iter().map(|c| f.members().iter().filter(|&&a| satisfies(a, c)).count()).collect();
    let threshold = |count: usize| {
        // count >= eps * |F|  <=>  count * den >= num * |F|
        count as u128 * *epsilon.denom() as u128 >= *epsilon.numer() as u128 * f.len() as u128
    };
    let (good, bad) = (0..cs.len()).partition(|&i| threshold(counts[i]));
    Classification { good, bad, counts }
}

/// Parameters of [`select_satcond`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatcondParams {
    pub epsilon: Ratio<u64>,
    /// Sunflower arm count, used only for the bad-constraint diagnostic.
    pub a: u32,
    /// Number of random draws, `⌈log2 N / ε⌉`.
    pub t_random: usize,
    pub seed: u64,
}

impl SatcondParams {
    pub fn new(epsilon: Ratio<u64>, a: u32, n_constraints: usize, seed: u64) -> Result<Self> {
        if epsilon <= Ratio::zero() || epsilon >= Ratio::one() {
            return Err(Error::InvalidArgument(format!("epsilon {epsilon} must lie in (0, 1)")));
        }
        if a == 0 {
            return Err(Error::InvalidArgument("sunflower arm count must be positive".into()));
        }
        Ok(SatcondParams { epsilon, a, t_random: random_draws(n_constraints, epsilon), seed })
    }

    /// `m!·2^m·(a·2^m)^m`, the bound on ε-bad constraints of size `m`.
    pub fn bad_constraint_bound(&self, m: u32) -> BigUint {
        let factorial: BigUint = (1..=m).map(BigUint::from).product();
        let two_m = BigUint::one() << m as usize;
        let arms = BigUint::from(self.a) * &two_m;
        factorial * two_m * arms.pow(m)
    }
}

/// Least `t` with `t·ε ≥ log2 N`, computed without floating point.
fn random_draws(n: usize, epsilon: Ratio<u64>) -> usize {
    if n <= 1 {
        return 0;
    }
    let (p, q) = (*epsilon.numer(), *epsilon.denom());
    // least s with 2^s >= N^q
    let target = BigUint::from(n).pow(q as u32);
    let s = (target - 1u32).bits();
    s.div_ceil(p).to_usize().expect("draw count fits in usize")
}

/// Output of [`select_satcond`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatcondSelection {
    /// Distinct members drawn at random, in draw order.
    pub random: Vec<SubsetMask>,
    /// Members added greedily for the constraints the draws missed.
    pub completion: Vec<SubsetMask>,
}

impl SatcondSelection {
    pub fn members(&self) -> Vec<SubsetMask> {
        self.random.iter().chain(&self.completion).copied().collect()
    }

    pub fn size(&self) -> usize {
        self.random.len() + self.completion.len()
    }
}

/// Random draws followed by greedy completion; every constraint ends up
/// satisfied.
pub fn select_satcond(f: &SetFamily, cs: &[Constraint], params: &SatcondParams) -> Result<SatcondSelection> {
    select_satcond_with_draws(f, cs, params.t_random, params.seed)
}

/// [`select_satcond`] with an explicit number of random draws (zero gives
/// the purely greedy variant).
pub fn select_satcond_with_draws(
    f: &SetFamily,
    cs: &[Constraint],
    draws: usize,
    seed: u64,
) -> Result<SatcondSelection> {
    for (i, c) in cs.iter().enumerate() {
        if !f.members().iter().any(|&a| satisfies(a, c)) {
            return Err(Error::UnsatisfiableConstraint { index: i });
        }
    }
    if cs.is_empty() {
        return Ok(SatcondSelection { random: vec![], completion: vec![] });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random: Vec<SubsetMask> = Vec::new();
    for _ in 0..draws {
        let a = f.members()[rng.gen_range(0..f.len())];
        if !random.contains(&a) {
            random.push(a);
        }
    }
    let mut open: Vec<&Constraint> = cs.iter().filter(|c| !random.iter().any(|&a| satisfies(a, c))).collect();
    let mut completion = Vec::new();
    while !open.is_empty() {
        let (_, best) = f
            .members()
            .iter()
            .map(|&a| (open.iter().filter(|c| satisfies(a, c)).count(), a))
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)))
            .expect("family is nonempty");
        completion.push(best);
        open.retain(|c| !satisfies(best, c));
    }
    let sel = SatcondSelection { random, completion };
    let members = sel.members();
    assert!(
        cs.iter().all(|c| members.iter().any(|&a| satisfies(a, c))),
        "satcond selection left a constraint unsatisfied"
    );
    Ok(sel)
}

/// Constraints whose supports pairwise meet in the same core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    pub indices: Vec<usize>,
    pub core: SubsetMask,
}

/// Brute-force search for `arms` constraints with distinct supports forming
/// a sunflower. The first hit in lexicographic index order is returned.
pub fn find_sunflower(cs: &[Constraint], arms: usize) -> Result<Option<Sunflower>> {
    if arms < 2 {
        return Err(Error::InvalidArgument("a sunflower needs at least two arms".into()));
    }
    let mut seen = std::collections::HashSet::new();
    let distinct: Vec<(usize, SubsetMask)> =
        cs.iter().enumerate().filter(|(_, c)| seen.insert(c.support())).map(|(i, c)| (i, c.support())).collect();

    fn grow(
        distinct: &[(usize, SubsetMask)],
        start: usize,
        arms: usize,
        picked: &mut Vec<usize>,
        core: Option<SubsetMask>,
    ) -> Option<SubsetMask> {
        if picked.len() == arms {
            return core;
        }
        for j in start..distinct.len() {
            let s = distinct[j].1;
            let new_core = match (picked.first(), core) {
                (None, _) => None,
                (Some(&first), None) => Some(distinct[first].1 & s),
                (Some(_), Some(k)) => {
                    if picked.iter().all(|&p| distinct[p].1 & s == k) {
                        Some(k)
                    } else {
                        continue;
                    }
                }
            };
            picked.push(j);
            if let Some(k) = grow(distinct, j + 1, arms, picked, new_core) {
                return Some(k);
            }
            picked.pop();
        }
        None
    }

    let mut picked = Vec::new();
    Ok(grow(&distinct, 0, arms, &mut picked, None).map(|core| {
        let sf = Sunflower { indices: picked.iter().map(|&p| distinct[p].0).collect(), core };
        for (a, &i) in sf.indices.iter().enumerate() {
            for &j in &sf.indices[a + 1..] {
                assert_eq!(cs[i].support() & cs[j].support(), core);
            }
        }
        sf
    }))
}

/// Family and `N` one-sided constraints of size `m` where each constraint
/// has exactly one satisfying member, distinct across constraints.
///
/// The ground set has `N + m - 1` elements and `Y = {0, .., m-2}`; the family
/// holds every set not containing `Y` plus every `m`-set, and the
/// constraints are `(V, ∅)` for the `m`-sets `V ⊇ Y`.
pub fn gen_satcond_lower_bound(m: u32, n_constraints: u32) -> Result<(SetFamily, Vec<Constraint>)> {
    if m == 0 || n_constraints == 0 {
        return Err(Error::InvalidArgument("m and N must be positive".into()));
    }
    let size = n_constraints + m - 1;
    let ground =
        GroundSet::new(size).map_err(|_| Error::SizeLimit(format!("ground set of {size} elements is too large")))?;
    let y = SubsetMask::full(m - 1);
    let family = SetFamily::filtered(ground, |a| !y.is_subset_of(a) || a.len() == m);
    let constraints: Vec<Constraint> = (m - 1..size)
        .map(|j| Constraint::new(y | SubsetMask::singleton(j), SubsetMask::EMPTY).expect("w is empty"))
        .collect();
    // density > 1 - 2^(1-m)  <=>  |F| * 2^(m-1) > (2^(m-1) - 1) * 2^n
    let lhs = family.len() as u128 * (1u128 << (m - 1));
    let rhs = ((1u128 << (m - 1)) - 1) * (1u128 << size);
    assert!(lhs > rhs, "lower-bound family is not dense enough");
    Ok((family, constraints))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    fn c(v: &[u32], w: &[u32]) -> Constraint {
        Constraint::from_lists(v, w).unwrap()
    }

    #[test]
    fn satisfies_examples() {
        assert!(satisfies(m(&[0, 2]), &c(&[0], &[1])));
        assert!(!satisfies(m(&[0, 1]), &c(&[0], &[1])));
        for a in 0..16 {
            assert!(satisfies(SubsetMask(a), &c(&[], &[])));
        }
        assert!(Constraint::from_lists(&[0], &[0]).is_err());
    }

    #[test]
    fn classify_examples() {
        let f = SetFamily::power_set(GroundSet::new(3).unwrap());
        let cl = classify_constraints(&f, &[c(&[0], &[1])], Ratio::new(1, 4));
        assert_eq!(cl.counts, vec![2]);
        assert_eq!(cl.good, vec![0]);
        let cl = classify_constraints(&f, &[c(&[0], &[1])], Ratio::new(1, 3));
        assert_eq!(cl.bad, vec![0]);

        let g = GroundSet::new(3).unwrap();
        let f = SetFamily::new(g, vec![m(&[1])]).unwrap();
        let cl = classify_constraints(&f, &[c(&[0], &[])], Ratio::new(1, 1000));
        assert_eq!((cl.counts[0], cl.bad.clone()), (0, vec![0]));
    }

    #[test]
    fn draw_count_is_exact() {
        // log2(8) / (1/4) = 12 exactly
        assert_eq!(random_draws(8, Ratio::new(1, 4)), 12);
        // log2(5) = 2.32.. -> 2.32.. / (1/2) = 4.64.. -> 5
        assert_eq!(random_draws(5, Ratio::new(1, 2)), 5);
        assert_eq!(random_draws(1, Ratio::new(1, 2)), 0);
        assert_eq!(random_draws(2, Ratio::new(2, 3)), 2);
    }

    #[test]
    fn select_empty_and_infeasible() {
        let f = SetFamily::power_set(GroundSet::new(3).unwrap());
        let p = SatcondParams::new(Ratio::new(1, 4), 1, 0, 1).unwrap();
        assert_eq!(select_satcond(&f, &[], &p).unwrap().size(), 0);
        let g = GroundSet::new(3).unwrap();
        let f = SetFamily::new(g, vec![m(&[1])]).unwrap();
        let err = select_satcond(&f, &[c(&[1], &[]), c(&[0], &[])], &p).unwrap_err();
        assert_eq!(err, Error::UnsatisfiableConstraint { index: 1 });
    }

    #[test]
    fn sunflower_examples() {
        let disjoint = [c(&[0, 1], &[]), c(&[2], &[3]), c(&[4, 5], &[])];
        let sf = find_sunflower(&disjoint, 3).unwrap().unwrap();
        assert_eq!((sf.indices, sf.core), (vec![0, 1, 2], SubsetMask::EMPTY));

        let petals = [c(&[0, 1], &[]), c(&[0], &[2]), c(&[3], &[0])];
        let sf = find_sunflower(&petals, 3).unwrap().unwrap();
        assert_eq!(sf.core, m(&[0]));

        let triangle = [c(&[0, 1], &[]), c(&[1, 2], &[]), c(&[0, 2], &[])];
        assert!(find_sunflower(&triangle, 3).unwrap().is_none());
        assert!(find_sunflower(&triangle, 2).unwrap().is_some());
        assert!(find_sunflower(&triangle, 1).is_err());
    }

    #[test]
    fn lower_bound_m2_n3() {
        let (f, cs) = gen_satcond_lower_bound(2, 3).unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.len(), 11);
        assert_eq!(f.density(), Ratio::new(11, 16));
        assert_eq!(cs.len(), 3);
        let cl = classify_constraints(&f, &cs, Ratio::new(1, 2));
        assert_eq!(cl.counts, vec![1, 1, 1]);
    }

    #[test]
    fn lower_bound_m1() {
        let (f, cs) = gen_satcond_lower_bound(1, 4).unwrap();
        assert_eq!(f.len(), 4);
        assert!(cs.iter().all(|c| c.size() == 1));
        assert!(f.density() > Ratio::zero());
        assert!(gen_satcond_lower_bound(2, 30).is_err());
    }

    #[test]
    fn bad_bound_diagnostic() {
        let p = SatcondParams::new(Ratio::new(1, 4), 1, 8, 0).unwrap();
        // m = 1: 1! * 2 * (1 * 2)^1 = 4
        assert_eq!(p.bad_constraint_bound(1), BigUint::from(4u32));
        // m = 2: 2 * 4 * (4)^2 = 128
        assert_eq!(p.bad_constraint_bound(2), BigUint::from(128u32));
    }
}
