//! Dense family on 10 elements: pick at most ⌈log2 n⌉ + 1 members that
//! separate every pair inside each block.

use rand::{seq::index::sample, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepfam::linear_select::{ceil_log2, select_logp1};
use sepfam::setsystem::{is_separating, GroundSet, Partition, Scope, SeparationInstance, SetFamily, SubsetMask};

fn main() -> sepfam::Result<()> {
    let n = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let members: Vec<SubsetMask> = sample(&mut rng, 1 << n, 600).into_iter().map(|i| SubsetMask(i as u32)).collect();
    let family = SetFamily::from_masks_dedup(GroundSet::new(n)?, members)?;
    let parts = Partition::from_element_lists(&[(0..6).collect(), (6..10).collect()])?;
    let inst = SeparationInstance::new(family, parts)?;

    let chosen = select_logp1(&inst)?;
    println!("density {} , largest block {}", inst.family.density(), inst.max_part());
    for a in &chosen {
        println!("  {a:?}");
    }
    println!("{} members, bound {}", chosen.len(), ceil_log2(inst.max_part()) + 1);
    assert!(is_separating(&chosen, &inst, Scope::AllPairs).is_separating());
    Ok(())
}
