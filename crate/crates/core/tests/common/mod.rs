#![allow(dead_code)]

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepfam::setsystem::{GroundSet, Partition, SeparationInstance, SetFamily, SubsetMask};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `size` distinct masks over `n` elements, uniformly at random.
pub fn random_members(rng: &mut ChaCha8Rng, n: u32, size: usize) -> Vec<SubsetMask> {
    let mut m: Vec<SubsetMask> = sample(rng, 1usize << n, size).into_iter().map(|i| SubsetMask(i as u32)).collect();
    m.sort_unstable();
    m
}

/// Shuffled ground set cut into `blocks` nonempty blocks.
pub fn random_partition(rng: &mut ChaCha8Rng, n: u32, blocks: u32) -> Partition {
    let mut elems: Vec<u32> = (0..n).collect();
    elems.shuffle(rng);
    let mut cuts: Vec<u32> =
        sample(rng, n as usize - 1, blocks as usize - 1).into_iter().map(|c| c as u32 + 1).collect();
    cuts.sort_unstable();
    let mut lists = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        lists.push(elems[start as usize..c as usize].to_vec());
        start = c;
    }
    Partition::from_element_lists(&lists).unwrap()
}

pub fn random_instance(rng: &mut ChaCha8Rng, n: u32, blocks: u32, size: usize) -> SeparationInstance {
    let g = GroundSet::new(n).unwrap();
    let members = random_members(rng, n, size);
    let parts = random_partition(rng, n, blocks);
    SeparationInstance::new(SetFamily::new(g, members).unwrap(), parts).unwrap()
}

/// Dense instance for the logarithmic bound: more than half of all masks.
pub fn dense_instance(seed: u64, max_n: u32) -> SeparationInstance {
    let mut r = rng(seed);
    let n = r.gen_range(2..=max_n);
    let blocks = r.gen_range(1..=n.min(4));
    let half = 1usize << (n - 1);
    let excess = if n >= 2 { r.gen_range(0..=half - 1) } else { 0 };
    random_instance(&mut r, n, blocks, half + 1 + excess)
}
