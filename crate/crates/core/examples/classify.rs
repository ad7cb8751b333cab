//! Theorem tables: maximal rows joined with the verdict ledger.

use special_birational::knowledge::{classify, codimension_two_types, KnowledgeBase};

fn main() {
    let kb = KnowledgeBase::builtin();
    let mut classes = Vec::new();
    for n in 1..=3 {
        let cl = classify(&kb, n).expect("ledger covers every row");
        println!("n = {n}: {} of {} maximal rows are smooth", cl.survivors().len(), cl.rows.len());
        for r in cl.survivors() {
            println!("  {:<18} {:<24} {}", r.case_id, r.verdict.to_string(), r.description);
        }
        classes.push(cl);
    }
    let cl3 = &classes[2];
    println!("\nr = 5 threefold table: {} rows", cl3.theorem("n3r5").len());
    println!("types with r = n + 2: {}", codimension_two_types(&classes).len());
}
