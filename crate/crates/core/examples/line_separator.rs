//! Points on a line: 2n - 4 segments separate all pairs by containment,
//! and the exact oracle agrees.

use sepfam::geom_sep::{gen_collinear, line_separator, min_geom_separator, verify_separator, ConvexSet, Mode};

fn main() -> sepfam::Result<()> {
    for n in 4..=7 {
        let cfg = gen_collinear(n)?;
        let segs = line_separator(&cfg)?;
        let sets: Vec<ConvexSet> = segs.iter().cloned().map(ConvexSet::Hull).collect();
        assert!(verify_separator(&cfg, &sets, Mode::Containment).is_separating());
        let opt = min_geom_separator(&cfg, Mode::Containment, true, 2 * n)?;
        println!("n = {n}: construction {}, oracle {}", segs.len(), opt.size);
    }
    Ok(())
}
