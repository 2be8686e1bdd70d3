//! Intersection separation of 2-subsets: near-collinear triples and the
//! circle with an apex.

use sepfam::geom_sep::{
    gen_circle_apex, gen_polar_triples, min_geom_separator, singleton_separator, verify_separator, ConvexSet, Mode,
};

fn main() -> sepfam::Result<()> {
    let cfg = gen_polar_triples(9)?;
    let singles: Vec<ConvexSet> = singleton_separator(&cfg).into_iter().map(ConvexSet::Hull).collect();
    let ok = verify_separator(&cfg, &singles, Mode::Intersection).is_separating();
    println!("polar triples: {} singletons separate: {ok}", singles.len());
    let opt = min_geom_separator(&cfg, Mode::Intersection, true, 8)?;
    println!("oracle minimum {}", opt.size);

    let apex = gen_circle_apex(6)?;
    for k in [2, 3] {
        let c = apex.with_k(k)?;
        let i = min_geom_separator(&c, Mode::Intersection, true, 5)?.size;
        let cont = min_geom_separator(&c, Mode::Containment, true, 20)?.size;
        println!("circle + apex, k = {k}: intersection {i}, containment {cont}");
    }
    Ok(())
}
