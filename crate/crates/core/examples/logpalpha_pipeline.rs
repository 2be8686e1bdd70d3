//! Four-phase selection on a sparse family, printing what each phase did.

use rand::{seq::index::sample, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepfam::phased_select::{logpalpha_bound, select_logpalpha};
use sepfam::setsystem::{GroundSet, Partition, SeparationInstance, SetFamily, SubsetMask};

fn main() -> sepfam::Result<()> {
    let n = 14;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // Mostly sets that never split the pairs {2i, 2i+1}, plus a few random
    // members that do; phase 1 cannot finish on its own.
    let paired =
        (0..1u32 << (n / 2)).map(|c| SubsetMask((0..n / 2).filter(|i| c >> i & 1 == 1).map(|i| 3 << (2 * i)).sum()));
    let extra = sample(&mut rng, 1 << n, 24).into_iter().map(|i| SubsetMask(i as u32));
    let family = SetFamily::from_masks_dedup(GroundSet::new(n)?, paired.chain(extra))?;
    let inst = SeparationInstance::new(family, Partition::single_block(GroundSet::new(n)?))?;

    let out = select_logpalpha(&inst)?;
    let t = &out.trace;
    println!("alpha = {}, initial block {}", t.alpha, t.initial_max_block);
    for p in &t.phases {
        println!(
            "phase {}: +{} members, largest block {} -> {}, histogram {:?}{}",
            p.phase,
            p.selected.len(),
            p.max_block_before,
            p.max_block_after,
            p.histogram,
            p.stall.as_ref().map(|s| format!(" (stalled: {})", s.reason)).unwrap_or_default()
        );
    }
    for (i, r) in t.phase3_reports.iter().enumerate() {
        println!("round {i}: {} good, {} bad, image density {}", r.good.len(), r.bad.len(), r.image_density());
    }
    let bound = logpalpha_bound(inst.max_part(), t.alpha, 40.0);
    println!("{} members in total, bound {bound:.1}", out.selected.len());
    Ok(())
}
