//! Building shapes by gluing polygons along paths.

use rubik_shapes::movelang::Direction;
use rubik_shapes::shape::Shape;

fn main() {
    let tri = Shape::base_cycle(3).unwrap();
    // Glue a second triangle on edge v0-v1 with one new vertex.
    let two = tri.attach(&[0, 1], 1).unwrap();
    println!("{}", two.describe());

    let sq = Shape::glued_pair(4, 3).unwrap();
    println!("square + triangle: {} edges, cycles {:?}", sq.edge_count(), sq.cycle_lengths());
    println!("shared by cycles 0 and 1: {:?}", sq.shared_edges(0, 1).unwrap());
    for (name, g) in sq.generators() {
        println!("{name} = {}", g.cycle_string(true));
    }
    let back = sq.cycle_perm(0, Direction::Backward).unwrap();
    println!("M1 backward = {}", back.cycle_string(true));
    println!("label complete: {}", sq.label_complete());

    match two.attach(&[0, 1], 1) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("third polygon on the same edge: {e}"),
    }
}
