use std::time::Instant;
use weylorb::*;

fn main() {
    let a8 = parse_algebra("A8").unwrap();
    let b4 = parse_algebra("B4").unwrap();
    let p = catalog(&a8, &b4).unwrap();
    let seed = parse_weight(&a8, "(1,1,1,1,1,1,1,1)").unwrap();

    let t = Instant::now();
    let orbit = generate_orbit(&seed).unwrap();
    println!("generate A8 dense: {} points in {:?}", orbit.len(), t.elapsed());

    let t = Instant::now();
    let rule = branch(&seed, &p).unwrap();
    println!("branch A8>B4 dense: {:?}  ({} terms)", t.elapsed(), rule.terms().len());

    let t = Instant::now();
    let report = verify_branch(&rule);
    println!("verify A8>B4 dense: {:?} pass={}", t.elapsed(), report.pass());
}
