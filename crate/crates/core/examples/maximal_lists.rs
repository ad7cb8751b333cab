//! Maximal lists from the fundamental formulae, with one trace shown in full.

use special_birational::solver::{search_n1, search_n2, search_n3_a4, search_n3_a5, MaximalList};

fn main() {
    let mut all = search_n1();
    all.extend(search_n2());
    all.extend(search_n3_a4());
    all.extend(search_n3_a5(1));
    for list in MaximalList::ALL {
        let rows = all.rows.iter().filter(|c| c.list == list).count();
        let rejected = all.rejected.iter().filter(|r| r.list == list).count();
        if rows + rejected > 0 {
            println!("{list}: {rows} rows, {rejected} rejected tuples");
        }
    }
    let row = all.rows.iter().find(|c| c.list == MaximalList::Threefold51 && c.z == 21 && c.e == 3).expect("degree 21 row");
    println!("\n{} z={} e={}", row.ttype, row.z, row.e);
    for step in &row.trace {
        println!("  {}: {}", step.constraint, step.values);
    }
}
