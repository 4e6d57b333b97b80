use resparam::discvar::{allee_system, jacobian_determinant};
use resparam::dixon::dixon_resultant;
use resparam::factor::distinct_factors;
use std::time::Instant;

fn main() {
    let sys = allee_system(3);
    let mut polys = sys.equations.clone();
    polys.push(jacobian_determinant(&sys));
    let t = Instant::now();
    let r = dixon_resultant(&polys, &sys.variables);
    println!("dixon: {:?} in {:?}", r.as_ref().map(|p| p.terms().count()), t.elapsed());
    if let Ok(r) = r {
        println!("total degree {}", r.total_degree());
        let t = Instant::now();
        let f = distinct_factors(&r);
        println!("{} distinct factors in {:?}", f.len(), t.elapsed());
        for p in &f {
            println!("  {} terms, degree {}", p.terms().count(), p.total_degree());
        }
    }
}
