//! Multisecant line counts, including the scroll guard and the line correction.

use special_birational::chern::SurfaceInvariants;
use special_birational::exact::Rat;
use special_birational::multisecant::Formula;

fn show(name: &str, inv: &SurfaceInvariants) {
    println!("{name}");
    for f in Formula::ALL {
        let amb = match f {
            Formula::N2 => 4,
            Formula::N3_6 => 6,
            _ => 4,
        };
        let c = f.eval(inv, amb);
        let flag = if c.applicable { "" } else { "  (not applicable)" };
        println!("  {f:<5} in P{amb}: {}{flag}", c.value);
    }
}

fn main() {
    show("plane", &SurfaceInvariants::new(1, 0, 9, 1));
    show("quintic elliptic scroll", &SurfaceInvariants::scroll(Rat::int(5), Rat::int(1)));
    show("Castelnuovo surface", &SurfaceInvariants::new(5, 2, 1, 1));
    let mut k3 = SurfaceInvariants::new(9, 8, -5, 2);
    k3.line_selfints = vec![-1; 5];
    show("K3 surface with five (-1)-lines", &k3);
}
