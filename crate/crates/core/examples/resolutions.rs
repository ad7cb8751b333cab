//! Hilbert profiles read off ideal-sheaf resolutions, and the stored-resolution audit.

use special_birational::chern::{hilbert_from_resolution, SheafResolution};
use special_birational::knowledge::{verify_resolutions, KnowledgeBase};

fn main() {
    for s in ["P5: O(-6)^5 -> O(-5)^6", "P5: O(-5)^10 -> Omega^3(-1) + O(-4)", "P4: T(-6) + O(-5) -> O(-4)^6"] {
        let res: SheafResolution = s.parse().expect("well-formed");
        let p = hilbert_from_resolution(&res).expect("codimension 2");
        println!("{res}\n  d={} g={} chi={} h0(I(5))={:?}", p.d, p.g, p.chi_x, res.h0_ideal(5));
    }
    let checks = verify_resolutions(&KnowledgeBase::builtin());
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("\n{} stored checks, {failed} failed", checks.len());
    for c in checks.iter().filter(|c| c.id.contains("->")) {
        println!("  {c}");
    }
}
