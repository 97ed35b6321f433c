use braidhom::suites::*;

fn main() {
    let t0 = std::time::Instant::now();
    let r = suite_torsion_theorem(9, 8).unwrap();
    println!("torsion n=9: {} in {:?}", if r.all_passed() { "PASS" } else { "FAIL" }, t0.elapsed());
    println!("  exponents: {}", r.data["annihilator_exponent_per_degree"]);
    println!("  homology: {}", r.data["homology"]);
}
