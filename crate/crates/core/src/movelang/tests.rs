use proptest::prelude::*;

use super::*;
use crate::perm::Permutation;
use crate::shape::Shape;
use crate::square::{square_shape, standard_state};

fn square_known(name: &str) -> bool {
    matches!(name, "M1" | "M2" | "M3" | "M4")
}

fn square_env() -> Bindings {
    Bindings::for_shape(&square_shape(), Direction::Forward)
}

#[test]
fn power_written_word_matches_atom_string() {
    let w = parse_word("M1 M3 M1 M2^3 M3^3 M1 M2", square_known).unwrap();
    let spelled = "M1 M3 M1 M2 M2 M2 M3 M3 M3 M1 M2";
    let names: Vec<String> = w.letters().into_iter().map(|(n, _)| n).collect();
    assert_eq!(names.join(" "), spelled);
}

#[test]
fn macro_names_parse_as_atoms() {
    let w = parse_word("G_TL L_13 G_TL'", |n| n.starts_with("G_") || n.starts_with("L_")).unwrap();
    assert_eq!(
        w,
        MoveWord::seq([
            MoveWord::atom("G_TL"),
            MoveWord::atom("L_13"),
            MoveWord::atom("G_TL").inverse()
        ])
    );
}

#[test]
fn unknown_name_rejected() {
    assert_eq!(
        parse_word("M1 M5", square_known),
        Err(ParseError::UnknownName {
            name: "M5".into(),
            column: 4
        })
    );
}

#[test]
fn syntax_errors_carry_columns() {
    for bad in ["M1 (M2", "M1)", "M1^", "M1^x", "^2", "M1 ''"] {
        assert!(matches!(parse_word_any(bad), Err(ParseError::Syntax { .. })), "{bad}");
    }
}

#[test]
fn format_examples() {
    let w = MoveWord::seq([MoveWord::atom("M1"), MoveWord::atom("M2").inverse()]);
    assert_eq!(format_word(&w), "M1 M2'");
    assert_eq!(format_word(&MoveWord::empty()), "");
    assert_eq!(format_word(&MoveWord::atom("M3").pow(3)), "M3^3");
    assert_eq!(parse_word_any("").unwrap(), MoveWord::empty());
}

#[test]
fn four_quarter_turns_are_identity() {
    let w = parse_word("M1 M1 M1 M1", square_known).unwrap();
    assert!(eval_word(&w, &square_env(), Order::LeftToRight).unwrap().is_identity());
    let after = standard_state().apply(&eval_word(&w, &square_env(), Order::LeftToRight).unwrap());
    assert_eq!(after, standard_state());
}

#[test]
fn inverse_atom_is_inverse_rotation() {
    let w = parse_word("M1'", square_known).unwrap();
    let p = eval_word(&w, &square_env(), Order::LeftToRight).unwrap();
    assert_eq!(p, square_shape().cycle_perm(0, Direction::Forward).unwrap().inverse());
}

#[test]
fn orders_reverse_products() {
    let env = square_env();
    let w = parse_word("M1 M2", square_known).unwrap();
    let (m1, m2) = (env.get("M1").unwrap(), env.get("M2").unwrap());
    assert_eq!(eval_word(&w, &env, Order::LeftToRight).unwrap(), m1.then(m2));
    assert_eq!(eval_word(&w, &env, Order::RightToLeft).unwrap(), m2.then(m1));
}

#[test]
fn unbound_atom() {
    let w = MoveWord::atom("X");
    assert_eq!(
        eval_word(&w, &square_env(), Order::LeftToRight),
        Err(EvalError::Unbound("X".into()))
    );
}

#[test]
fn square_file_replays_standard_state() {
    let text = include_str!("../../data/square2x2.shape");
    let doc = parse_shape_file(text).unwrap();
    assert_eq!(doc.shape, square_shape());
    assert_eq!(doc.colors.as_ref().unwrap().to_string(), "rrbrwbwbgwgg");
    let again = parse_shape_file(&format_shape_file(&doc)).unwrap();
    assert_eq!(again.shape, doc.shape);
    assert_eq!(again.colors, doc.colors);
    assert_eq!(again.macros, doc.macros);
}

#[test]
fn square_plus_triangle_file() {
    let doc = parse_shape_file("base 4\nattach path v0 v1 new 1\n").unwrap();
    assert_eq!(doc.shape.edge_count(), 6);
    assert_eq!(doc.shape, Shape::glued_pair(4, 3).unwrap());
}

#[test]
fn doubly_shared_edge_is_located() {
    let text = "base 3\nattach path v0 v1 new 1\n# again\nattach path v0 v1 new 1\n";
    let err = parse_shape_file(text).unwrap_err();
    assert_eq!(err.line(), Some(4));
    assert!(matches!(
        err,
        ShapeFileError::Shape {
            source: crate::shape::ShapeError::SharedEdgeViolation(_),
            ..
        }
    ));
}

#[test]
fn macro_rules() {
    let shadow = parse_shape_file("base 3\nlet M1 = M1 M1\n").unwrap_err();
    assert!(matches!(shadow, ShapeFileError::ShadowsMove { line: 2, .. }));
    let twice = parse_shape_file("base 3\nlet A = M1\nlet A = M1'\n").unwrap_err();
    assert!(matches!(twice, ShapeFileError::Redefinition { line: 3, .. }));
    let doc = parse_shape_file("base 3\nlet A = M1\nlet B = A A\n").unwrap();
    let mut env = Bindings::for_shape(&doc.shape, Direction::Forward);
    env.bind_macros(doc.macros.iter().map(|(n, w)| (n.as_str(), w)), Order::LeftToRight)
        .unwrap();
    let m1 = doc.shape.cycle_perm(0, Direction::Forward).unwrap();
    assert_eq!(env.get("B").unwrap(), &m1.pow(2));
}

fn arb_word() -> impl Strategy<Value = MoveWord> {
    let leaf = prop::sample::select(vec!["M1", "M2", "M3", "M4", "G_TL", "X1"]).prop_map(MoveWord::atom);
    leaf.prop_recursive(4, 32, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(MoveWord::inverse),
            (inner.clone(), -4i64..=8).prop_map(|(w, e)| w.pow(e)),
            prop::collection::vec(inner, 0..4).prop_map(MoveWord::seq),
        ]
    })
}

fn arb_square_word() -> impl Strategy<Value = MoveWord> {
    let leaf = prop::sample::select(vec!["M1", "M2", "M3", "M4"]).prop_map(MoveWord::atom);
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(MoveWord::inverse),
            (inner.clone(), -3i64..=5).prop_map(|(w, e)| w.pow(e)),
            prop::collection::vec(inner, 0..4).prop_map(MoveWord::seq),
        ]
    })
}

fn order_strategy() -> impl Strategy<Value = Order> {
    prop_oneof![Just(Order::LeftToRight), Just(Order::RightToLeft)]
}

proptest! {
    #[test]
    fn round_trip(w in arb_word()) {
        let text = format_word(&w);
        prop_assert_eq!(parse_word_any(&text).unwrap(), w.normalize());
    }

    #[test]
    fn evaluation_is_homomorphic(a in arb_square_word(), b in arb_square_word(), order in order_strategy()) {
        let env = square_env();
        let pa = eval_word(&a, &env, order).unwrap();
        let pb = eval_word(&b, &env, order).unwrap();
        let joined = eval_word(&MoveWord::seq([a, b]), &env, order).unwrap();
        let expect = match order {
            Order::LeftToRight => pa.then(&pb),
            Order::RightToLeft => pb.then(&pa),
        };
        prop_assert_eq!(joined, expect);
    }

    #[test]
    fn inverse_evaluates_to_inverse(w in arb_square_word(), order in order_strategy()) {
        let env = square_env();
        let p = eval_word(&w, &env, order).unwrap();
        prop_assert_eq!(eval_word(&w.inverse(), &env, order).unwrap(), p.inverse());
    }

    #[test]
    fn letters_evaluate_like_the_tree(w in arb_square_word()) {
        let env = square_env();
        let flat = MoveWord::seq(w.letters().into_iter().map(|(n, inv)| {
            if inv { MoveWord::atom(n).inverse() } else { MoveWord::atom(n) }
        }));
        prop_assert_eq!(
            eval_word(&flat, &env, Order::LeftToRight).unwrap(),
            eval_word(&w, &env, Order::LeftToRight).unwrap()
        );
    }
}

#[test]
fn power_expansion() {
    let env = square_env();
    for base in ["M1", "M1 M2'", "(M3 M4)^2 M1"] {
        let x = parse_word(base, square_known).unwrap();
        let px = eval_word(&x, &env, Order::LeftToRight).unwrap();
        for n in -8i64..=8 {
            let powered = parse_word(&format!("({base})^{n}"), square_known).unwrap();
            let copies = if n >= 0 {
                vec![x.clone(); n as usize]
            } else {
                vec![x.clone().inverse(); n.unsigned_abs() as usize]
            };
            let spelled = MoveWord::seq(copies);
            let a = eval_word(&powered, &env, Order::LeftToRight).unwrap();
            let b = eval_word(&spelled, &env, Order::LeftToRight).unwrap();
            assert_eq!(a, b, "{base} ^ {n}");
            assert_eq!(a, px.pow(n));
        }
    }
    assert_eq!(
        eval_word(&MoveWord::atom("M1").pow(0), &env, Order::LeftToRight).unwrap(),
        Permutation::identity(12)
    );
}
