//! Exact minimum separating subfamilies, compared with the greedy cover and
//! the constructive selection.

use sepfam::linear_select::{ceil_log2, gen_logp1_tight, select_logp1};
use sepfam::oracle::{min_separating_subfamily, min_separating_subfamily_bounded};
use sepfam::setsystem::Scope;
use sepfam::Error;

fn main() -> sepfam::Result<()> {
    for n in [2, 3] {
        let inst = gen_logp1_tight(n)?;
        let built = select_logp1(&inst)?;
        println!("tight instance n = {n}: |F| = {}, construction {}", inst.family.len(), built.len());
        match min_separating_subfamily_bounded(&inst, Scope::AllPairs, ceil_log2(n) as usize) {
            Err(Error::BoundExceeded { lower_bound, .. }) => {
                println!("  nothing of size {} works (>= {lower_bound})", ceil_log2(n))
            }
            other => println!("  {other:?}"),
        }
        let opt = min_separating_subfamily(&inst, Scope::AllPairs)?;
        println!("  exact minimum {} with members {:?}", opt.size(), opt.masks);
    }
    Ok(())
}
