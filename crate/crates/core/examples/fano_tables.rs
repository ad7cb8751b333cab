//! Admissible degrees of the target by coindex.

use special_birational::fano::target;
use special_birational::numerology::enumerate_types;

fn main() {
    for n in 1..=3 {
        println!("n = {n}");
        for t in enumerate_types(n).expect("n >= 1") {
            let f = target(t.r, t.i).expect("index in range");
            let degrees = f.degrees.map_or("unconstrained".to_string(), |d| format!("{d:?}"));
            println!("  r={} a={} b={} i={} coindex {}: z in {degrees}", t.r, t.a, t.b, t.i, f.coindex);
        }
    }
}
