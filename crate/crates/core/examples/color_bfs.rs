//! Breadth-first search over colorings of the 2x2 square.

use std::time::Instant;

use rubik_shapes::square::{bfs_colors, standard_square, BfsOptions};

fn main() {
    let (shape, start) = standard_square();
    let t = Instant::now();
    let opts = BfsOptions {
        cycles: None,
        parallel: true,
    };
    let r = bfs_colors(&shape, &start, &opts).unwrap();
    println!("{}", r.to_text());
    println!("searched in {:.2?}", t.elapsed());

    // Only the first two squares may turn.
    let limited = BfsOptions {
        cycles: Some(vec![0, 1]),
        parallel: false,
    };
    let r = bfs_colors(&shape, &start, &limited).unwrap();
    println!("with M1 and M2 only: {} of {} colorings", r.reachable, r.total_colorings);
}
