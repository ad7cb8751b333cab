//! Linkage of invariants and of resolutions.

use special_birational::chern::{hilbert_from_resolution, SheafResolution};
use special_birational::knowledge::liaison_resolution;
use special_birational::solver::liaison_invariants;

fn main() {
    let (d, g) = liaison_invariants(10, 11, 5, 5).expect("d <= pq");
    println!("(10, 11) linked (5,5): ({d}, {g})");

    let x: SheafResolution = "P5: O(-5)^4 -> O(-4)^5".parse().expect("well-formed");
    let linked = liaison_resolution(&x, 5, 5);
    let p = hilbert_from_resolution(&linked.resolution).expect("codimension 2");
    println!("{x}\n  -> {} (d={} g={})", linked.resolution, p.d, p.g);
    for a in &linked.assumptions {
        println!("  assuming {a}");
    }
    let back = liaison_resolution(&linked.resolution, 5, 5);
    let same = hilbert_from_resolution(&back.resolution).ok() == hilbert_from_resolution(&x).ok();
    println!("  linked back: {} (same profile: {same})", back.resolution);

    let ci = SheafResolution::complete_intersection(5, 4, 5);
    println!("{ci} linked (4,5): degenerate = {}", liaison_resolution(&ci, 4, 5).degenerate);
}
