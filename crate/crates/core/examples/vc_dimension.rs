//! VC dimension, shatter function and types of non-shattered sets.

use sepfam::oracle::min_separating_subfamily;
use sepfam::setsystem::{Scope, SeparationInstance};
use sepfam::vc_tools::{gen_intervals, homogeneous_subset, shatter_function, type_of, vc_dimension};

fn main() -> sepfam::Result<()> {
    let f = gen_intervals(8)?;
    let rep = vc_dimension(&f)?;
    println!("intervals on 8 points: {} sets, VC dimension {}, witness {:?}", f.len(), rep.dimension, rep.witness);
    for m in 0..=5 {
        println!("  shatter({m}) = {}", shatter_function(&f, m)?);
    }
    let t = type_of(&f, &[1, 3, 6])?;
    println!("type of {{1, 3, 6}}: indices {:?}, missing trace {:?}", t.indices(), t.trace());
    if let Some((set, ty)) = homogeneous_subset(&f, rep.dimension, 5)? {
        println!("homogeneous 5-set {set:?} with type {:?}", ty.indices());
    }
    let opt = min_separating_subfamily(&SeparationInstance::single_block(f), Scope::AllPairs)?;
    println!("fewest intervals separating all points: {}", opt.size());
    Ok(())
}
