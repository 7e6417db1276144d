//! Shapes made only of odd polygons can never reach an odd permutation.

use rubik_shapes::shape::Shape;
use rubik_shapes::theorem::{classify_text, parity_obstruction};

fn main() {
    for (p, q) in [(3, 3), (3, 5), (5, 7), (4, 3), (4, 5)] {
        let s = Shape::glued_pair(p, q).unwrap();
        let (even, cert) = parity_obstruction(&s);
        let n = s.edge_count();
        println!("{p}+{q}: {n} edges, all even: {even}, {}", classify_text(&s.group().classify(), n));
        if even {
            print!("{}", cert.to_text());
        }
    }
}
