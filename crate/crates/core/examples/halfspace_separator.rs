//! Halfspaces through (k-1)-subsets of points on the moment curve,
//! including the projected case k - 1 < d.

use sepfam::geom_sep::{gen_moment_curve, halfspace_separator, verify_separator, ConvexSet, Mode};

fn main() -> sepfam::Result<()> {
    for (n, d, k) in [(5, 2, 3), (6, 2, 3), (5, 3, 4), (6, 3, 2)] {
        let cfg = gen_moment_curve(n, d, k)?;
        let hs = halfspace_separator(&cfg)?;
        let sets: Vec<ConvexSet> = hs.into_iter().map(ConvexSet::HalfSpace).collect();
        let ok = verify_separator(&cfg, &sets, Mode::Containment).is_separating();
        println!("n = {n}, d = {d}, k = {k}: {} halfspaces, separating: {ok}", sets.len());
    }
    Ok(())
}
