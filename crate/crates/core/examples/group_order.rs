//! Group orders from Schreier-Sims, checked against a brute-force closure.

use rubik_shapes::group::{brute_closure, factorial, GroupBsgs};
use rubik_shapes::perm::Permutation;
use rubik_shapes::square::square_group;

fn main() {
    let gens = [
        Permutation::cycle(6, &[0, 1, 2, 3, 4, 5]).unwrap(),
        Permutation::transposition(6, 0, 1).unwrap(),
    ];
    let g = GroupBsgs::from_perms(6, &gens).unwrap();
    let closure = brute_closure(6, &gens, 1000);
    println!("<(1..6), (1 2)>: order {} (closure {}, 6! = {})", g.order(), closure.len(), factorial(6));

    let sq = square_group();
    println!("2x2 square: order {}", sq.order());
    println!("base {:?}", sq.base());
    println!("transversal sizes {:?}", sq.transversal_sizes());
    println!("longest transversal word {}", sq.max_word_len());

    let target = Permutation::transposition(12, 0, 2).unwrap();
    let w = sq.factor_word(&target).unwrap();
    println!("(1 3) = {w}");
}
