//! Random draws plus greedy completion on the instance where every
//! constraint has a single satisfying member.

use num_rational::Ratio;
use sepfam::constraint_select::{classify_constraints, gen_satcond_lower_bound, select_satcond, SatcondParams};
use sepfam::oracle::min_satisfying_subfamily;

fn main() -> sepfam::Result<()> {
    let (family, constraints) = gen_satcond_lower_bound(3, 5)?;
    let eps = Ratio::new(1, 4);
    let counts = classify_constraints(&family, &constraints, eps).counts;
    println!("|X| = {}, |F| = {}, density {}", family.n(), family.len(), family.density());
    println!("satisfier counts {counts:?}");

    let params = SatcondParams::new(eps, 2, constraints.len(), 42)?;
    let sel = select_satcond(&family, &constraints, &params)?;
    println!("{} random draws, {} completion members", sel.random.len(), sel.completion.len());
    let opt = min_satisfying_subfamily(&family, &constraints)?;
    println!("oracle minimum {}", opt.size());
    Ok(())
}
