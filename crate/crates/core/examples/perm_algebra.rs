//! Composing, inverting and inspecting permutations.

use rubik_shapes::perm::Permutation;

fn main() {
    let a = Permutation::parse_cycles(6, "(1 2 3)(4 5)", true).unwrap();
    let b = Permutation::cycle(6, &[0, 5]).unwrap();

    // `then` applies the left operand first.
    let ab = a.then(&b);
    println!("a       = {}", a.cycle_string(true));
    println!("b       = {}", b.cycle_string(true));
    println!("a then b = {}", ab.cycle_string(true));
    println!("b then a = {}", b.then(&a).cycle_string(true));
    println!("inverse of a: {}", a.inverse().cycle_string(true));
    println!("a^-2: {}", a.pow(-2).cycle_string(true));
    println!("order {} sign {:+} support {:?}", a.order(), a.sign(), a.support());

    let t = Permutation::transposition(6, 2, 4).unwrap();
    println!("{} is the transposition {:?}", t.cycle_string(true), t.as_transposition());
}
