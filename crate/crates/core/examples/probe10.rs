use resparam::discvar::{
    allee_system, discriminant_candidates_with, BoundaryFilter, ElimMethod,
};
use resparam::rat::{format_rational, rat};
use resparam::regions::{classify, count_solutions, CountMode, Iv};
use std::time::Instant;

fn main() {
    let sys = allee_system(3);
    let t = Instant::now();
    let r = count_solutions(
        &sys,
        &[rat(56, 1000), rat(4015, 10000)],
        CountMode::Nonnegative,
    );
    println!("count at (0.056, 0.4015): {:?} in {:?}", r, t.elapsed());

    let t = Instant::now();
    let cands = discriminant_candidates_with(
        &sys,
        ElimMethod::ChainBranching,
        BoundaryFilter::Multiplicity,
    )
    .unwrap()
    .polynomials;
    println!("candidates: {} in {:?}", cands.len(), t.elapsed());

    let windows = [
        Iv::new(rat(55, 1000), rat(57, 1000)),
        Iv::new(rat(401, 1000), rat(402, 1000)),
    ];
    let t = Instant::now();
    let rep = classify(&sys, &cands, &windows, CountMode::Nonnegative).unwrap();
    println!("classify: {} cells in {:?}", rep.cells.len(), t.elapsed());
    for (i, c) in rep.cells.iter().enumerate() {
        println!(
            "cell {i} dim={} sample=({}, {}) count={} certified={}",
            c.dimension,
            format_rational(&c.sample[0]),
            format_rational(&c.sample[1]),
            rep.counts[i],
            rep.certified[i],
        );
    }
}
