//! Auditing transposition words for two glued cycles, then a full
//! constructive completeness run.

use rubik_shapes::shape::Shape;
use rubik_shapes::square::square_shape;
use rubik_shapes::theorem::{constructive_completeness, verify_base_case, Outcome, VariantSpec};

fn main() {
    for (k, l) in [(4, 3), (5, 3)] {
        let r = verify_base_case(k, l).unwrap();
        println!("k={k} l={l}");
        for e in r.entries_for(VariantSpec::PRINTED) {
            println!("  j={} {:?} -> {:?}", e.index, e.claim, e.outcome());
        }
        let winners: Vec<String> = VariantSpec::all()
            .into_iter()
            .filter(|&v| r.entries_for(v).all(|e| e.outcome() == Outcome::Claimed))
            .map(|v| v.to_string())
            .collect();
        println!("  variants hitting every claim: {winners:?}");
        for sc in r.sign_checks.iter().take(2) {
            println!("  {}: predicted {:+} evaluated {:+}", sc.variant, sc.predicted, sc.evaluated);
        }
    }

    for shape in [Shape::glued_pair(4, 5).unwrap(), square_shape()] {
        let r = constructive_completeness(&shape);
        println!("\n{:?}: {:?}", shape.cycle_lengths(), r.conclusion);
        println!("agrees with group order: {:?}", r.agrees_with_group());
    }
}
