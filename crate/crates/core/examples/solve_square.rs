//! Shortest move sequences between colorings, and synthesized swaps.

use rubik_shapes::movelang::{eval_word, Bindings, Direction, Order};
use rubik_shapes::square::{
    initial_states, solve_color, square_group, standard_square, synthesize_macro, BfsOptions, ColorGroup, ColorState,
    Contract,
};

fn main() {
    let (shape, start) = standard_square();
    let scrambled = ColorState::square("bgrwbrwgrgbw").unwrap();
    let w = solve_color(&shape, &scrambled, &start, &BfsOptions::default()).unwrap();
    println!("{scrambled} -> {start}: {w} ({} moves)", w.letters().len());

    let target = &initial_states()[0];
    let w = solve_color(&shape, &start, target, &BfsOptions::default()).unwrap();
    println!("{start} -> {target}: {w}");

    let group = square_group();
    let env = Bindings::for_shape(&shape, Direction::Forward);
    for c in [Contract::group_swap(ColorGroup::T, ColorGroup::B), Contract::edge_swap(1, 3).unwrap()] {
        let m = synthesize_macro(&c, &group).unwrap();
        let p = eval_word(&m.word, &env, Order::LeftToRight).unwrap();
        println!("{c}: {} letters, gives {}", m.word.letters().len(), p.cycle_string(true));
    }
}
