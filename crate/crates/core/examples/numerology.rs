//! Families of admissible types for curves, surfaces and threefolds.

use special_birational::numerology::{enumerate_types, families};

fn main() {
    for n in 1..=3 {
        let types = enumerate_types(n).expect("n >= 1");
        println!("n = {n}: {} types", types.len());
        for f in families(&types) {
            println!("  r={} a={} m={} b in {} i={}", f.r, f.a, f.m, f.b_range(), f.index_expr());
        }
    }
}
