//! A family denser than (t+2)/2^(t+1) whose union is everything contains
//! t members that already cover the ground set.

use rand::{seq::index::sample, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepfam::phased_select::{brace_daykin_cover, cuts_well};
use sepfam::setsystem::SubsetMask;

fn main() -> sepfam::Result<()> {
    let y = SubsetMask::full(8);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in [2usize, 3] {
        let floor = (t + 2) * 256 / (1 << (t + 1));
        let mut fam: Vec<SubsetMask> =
            sample(&mut rng, 256, floor + 1).into_iter().map(|i| SubsetMask(i as u32)).collect();
        fam.retain(|a| a.len() < 8);
        fam.push(y.difference(SubsetMask::singleton(0)));
        fam.push(SubsetMask::singleton(0));
        let cover = brace_daykin_cover(&fam, y, t)?;
        println!("t = {t}: {} members, cover {cover:?}", fam.len());
    }
    let well = (0..256u32).filter(|&a| cuts_well(SubsetMask(a), y).unwrap()).count();
    println!("{well} of 256 subsets cut an 8-set well");
    Ok(())
}
