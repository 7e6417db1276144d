//! Grading the published square macros under each reading convention.

use rubik_shapes::movelang::Convention;
use rubik_shapes::square::{published_macros, verify_macro};

fn main() {
    let table = published_macros();
    for m in table.defs() {
        let r = verify_macro(m, &table, &Convention::ALL, None).unwrap();
        let exact: Vec<String> = r.label_exact_conventions().iter().map(|c| c.to_string()).collect();
        println!(
            "{:7} {:3} atoms  sign {:+}  best {:12} exact under [{}]",
            m.name,
            r.atoms,
            r.word_sign,
            r.best_grade().id(),
            exact.join(", ")
        );
    }
    let l13 = table.get("L_13").unwrap();
    println!("\n{}", verify_macro(l13, &table, &Convention::ALL, None).unwrap().to_text());
}
