//! Antipodal outer points with an inner fan: no five convex sets separate
//! all triples by containment.

use sepfam::geom_sep::{fan_interior_violations, fan_outer_count, gen_diameter_fan, min_geom_separator, Mode};
use sepfam::Error;

fn main() -> sepfam::Result<()> {
    let n = 8;
    let cfg = gen_diameter_fan(n)?;
    let outer = fan_outer_count(n);
    println!("{outer} outer points, {} inner", n - outer);
    for (i, p) in cfg.points().iter().enumerate() {
        println!("  {i}: ({}, {})", p[0], p[1]);
    }
    assert!(fan_interior_violations(&cfg, outer).is_empty());
    match min_geom_separator(&cfg, Mode::Containment, true, 5) {
        Err(Error::BoundExceeded { lower_bound, .. }) => {
            println!("no separator of size 5; at least {lower_bound} needed")
        }
        Ok(r) => println!("separator of size {}", r.size),
        Err(e) => return Err(e),
    }
    Ok(())
}
