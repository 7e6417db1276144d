//! Reading a shape file, binding its macros and running a word.

use rubik_shapes::movelang::{eval_word, format_shape_file, parse_shape_file, parse_word_any, Bindings, Direction, Order};

fn main() {
    let text = include_str!("../data/square2x2.shape");
    let doc = parse_shape_file(text).unwrap();
    println!("{} edges, colors {}", doc.shape.edge_count(), doc.colors.as_ref().unwrap());

    let mut env = Bindings::for_shape(&doc.shape, Direction::Forward);
    env.bind_macros(doc.macros.iter().map(|(n, w)| (n.as_str(), w)), Order::LeftToRight)
        .unwrap();
    let w = parse_word_any("G_TL (M1 M2')^2").unwrap();
    let p = eval_word(&w, &env, Order::LeftToRight).unwrap();
    println!("{w} = {}", p.cycle_string(true));
    println!("after: {}", doc.colors.as_ref().unwrap().apply(&p));

    println!("--- normalized file ---\n{}", format_shape_file(&doc));

    let bad = include_str!("../data/invalid_shared.shape");
    println!("invalid file: {}", parse_shape_file(bad).unwrap_err());
}
