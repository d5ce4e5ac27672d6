use super::*;
use crate::ast::{Action, Atom, AtomicAction, Formula};
use crate::primitives::{Articulator::*, Direction};

use crate::fixtures::ROUTE_FORMULA as ROUTE_TEXT;

fn atom(a: Atom) -> Formula {
    Formula::atom(a)
}

fn mv(a: crate::primitives::Articulator, d: Direction) -> Action {
    Action::atomic(AtomicAction::Move(a, d))
}

#[test]
fn box_with_concurrent_moves() {
    let f = parse_formula("[move(R,W) & move(L,E)] !touch(R,L)").unwrap();
    assert_eq!(
        f,
        Formula::boxed(
            Action::concurrent(mv(Right, Direction::W), mv(Left, Direction::E)),
            Formula::not(atom(Atom::Touch(Right, Left)))
        )
    );
}

#[test]
fn route_formula_desugars_implication() {
    let f = parse_formula(ROUTE_TEXT).unwrap();
    let antecedent = Formula::conjunction([
        atom(Atom::At(Right, "FACE".into())),
        atom(Atom::At(Left, "FACE".into())),
        atom(Atom::RelDir { first: Left, dir: Direction::E, second: Right }),
        atom(Atom::Config(Right, "CLAMP".into())),
        atom(Atom::Config(Left, "CLAMP".into())),
        atom(Atom::Touch(Right, Left)),
    ])
    .unwrap();
    let consequent = Formula::conjunction([
        atom(Atom::RelDir { first: Left, dir: Direction::E, second: Right }),
        atom(Atom::Config(Right, "CLAMP".into())),
        atom(Atom::Config(Left, "CLAMP".into())),
        Formula::not(atom(Atom::Touch(Right, Left))),
    ])
    .unwrap();
    let expected = Formula::implies(
        antecedent,
        Formula::boxed(Action::concurrent(mv(Right, Direction::W), mv(Left, Direction::E)), consequent),
    );
    assert_eq!(f, expected);
}

#[test]
fn unknown_direction_points_at_token() {
    let err = parse_formula("[move(R,Q)] true").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::UnknownDirection("Q".into()));
    assert_eq!(err.span, SourceSpan::new(1, 9, 1));
}

#[test]
fn unknown_articulator() {
    let err = parse_formula("touch(R,X)").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::UnknownArticulator("X".into()));
}

#[test]
fn same_articulator_rejected() {
    let err = parse_formula("touch(R,R)").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::SameArticulator(Right));
}

#[test]
fn syntax_error_lists_expected_tokens() {
    let err = parse_formula("true /\\").unwrap_err();
    match err.kind {
        ParseErrorKind::Syntax { expected, found } => {
            assert!(expected.contains(&"`true`".to_string()));
            assert_eq!(found, "end of input");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn print_examples() {
    assert_eq!(print_formula(&Formula::Top), "true");
    let f = Formula::boxed(
        Action::star(Action::atomic(AtomicAction::Move(Left, Direction::NE))),
        atom(Atom::At(Left, "HEAD".into())),
    );
    assert_eq!(print_formula(&f), "[move(L,NE)*] at(L,HEAD)");
    assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f);
}

#[test]
fn route_round_trips() {
    let f = parse_formula(ROUTE_TEXT).unwrap();
    let text = print_formula(&f);
    assert!(!text.contains("->"));
    assert_eq!(parse_formula(&text).unwrap(), f);
}

// Precedence table, lowest first: ->, \/, /\, prefix.
#[test]
fn formula_precedence_table() {
    let p = || atom(Atom::Touch(Right, Left));
    let q = || atom(Atom::At(Right, "FACE".into()));
    let r = || atom(Atom::At(Left, "FACE".into()));
    let cases: Vec<(&str, Formula)> = vec![
        ("touch(R,L) /\\ at(R,FACE) \\/ at(L,FACE)", Formula::or(Formula::and(p(), q()), r())),
        ("touch(R,L) \\/ at(R,FACE) /\\ at(L,FACE)", Formula::or(p(), Formula::and(q(), r()))),
        ("touch(R,L) -> at(R,FACE) \\/ at(L,FACE)", Formula::implies(p(), Formula::or(q(), r()))),
        ("touch(R,L) -> at(R,FACE) -> at(L,FACE)", Formula::implies(p(), Formula::implies(q(), r()))),
        ("!touch(R,L) /\\ at(R,FACE)", Formula::and(Formula::not(p()), q())),
        (
            "[thrill(R)] touch(R,L) /\\ at(R,FACE)",
            Formula::and(Formula::boxed(Action::atomic(AtomicAction::Thrill(Right)), p()), q()),
        ),
        ("<thrill(R)> touch(R,L)", Formula::diamond(Action::atomic(AtomicAction::Thrill(Right)), p())),
        ("touch(R,L) /\\ at(R,FACE) /\\ at(L,FACE)", Formula::and(Formula::and(p(), q()), r())),
    ];
    for (text, expected) in cases {
        assert_eq!(parse_formula(text).unwrap(), expected, "{text}");
    }
}

#[test]
fn action_precedence_table() {
    let a = || Action::atomic(AtomicAction::Thrill(Right));
    let b = || Action::atomic(AtomicAction::Thrill(Left));
    let c = || mv(Right, Direction::N);
    let cases: Vec<(&str, Action)> = vec![
        ("thrill(R) ; thrill(L) & move(R,N)", Action::seq(a(), Action::concurrent(b(), c()))),
        ("thrill(R) & thrill(L) | move(R,N)", Action::concurrent(a(), Action::choice(b(), c()))),
        ("thrill(R) | thrill(L)*", Action::choice(a(), Action::star(b()))),
        ("(thrill(R) ; thrill(L))*", Action::star(Action::seq(a(), b()))),
        ("thrill(R); thrill(L); move(R,N)", Action::seq(Action::seq(a(), b()), c())),
    ];
    for (text, expected) in cases {
        assert_eq!(parse_action(text).unwrap(), expected, "{text}");
        assert_eq!(parse_action(&expected.to_string()).unwrap(), expected);
    }
}

#[test]
fn nested_stars_need_parentheses() {
    let a = Action::star(Action::star(mv(Left, Direction::S)));
    assert_eq!(a.to_string(), "(move(L,S)*)*");
    assert_eq!(parse_action(&a.to_string()).unwrap(), a);
}

#[test]
fn deep_nesting_is_an_error_not_a_crash() {
    let text = format!("{}true{}", "(".repeat(10_000), ")".repeat(10_000));
    assert_eq!(parse_formula(&text).unwrap_err().kind, ParseErrorKind::TooDeep);
    let text = format!("{}true", "!".repeat(10_000));
    assert_eq!(parse_formula(&text).unwrap_err().kind, ParseErrorKind::TooDeep);
}

#[test]
fn lexicon_single_entry() {
    let lex = parse_lexicon("sign ROUTE := true .").unwrap();
    assert_eq!(lex.len(), 1);
    assert_eq!(lex.entries[0].name, "ROUTE");
    assert_eq!(lex.entries[0].formula, Formula::Top);
    assert_eq!(lex.entries[0].span, SourceSpan::new(1, 1, 10));
}

#[test]
fn lexicon_duplicate_sign() {
    let err = parse_lexicon("sign ROUTE := true .\n# again\nsign ROUTE := true .\n").unwrap_err();
    match err {
        LexiconError::DuplicateSign { name, first, second } => {
            assert_eq!(name, "ROUTE");
            assert_eq!(first.line, 1);
            assert_eq!(second.line, 3);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn lexicon_route_entry() {
    let text = format!("format: 1\n# FSL sign\nsign ROUTE :=\n  {ROUTE_TEXT}\n.\r\n");
    let lex = parse_lexicon(&text).unwrap();
    assert_eq!(lex.get("ROUTE").unwrap().formula, parse_formula(ROUTE_TEXT).unwrap());
    assert_eq!(lex.config_labels().len(), 1);
}

#[test]
fn lexicon_entry_error_carries_sign() {
    let err = parse_lexicon("sign A := true .\nsign B := touch(R,Z) .").unwrap_err();
    match &err {
        LexiconError::Entry { sign, entry, error } => {
            assert_eq!(sign.as_deref(), Some("B"));
            assert_eq!(entry.unwrap().line, 2);
            assert_eq!(error.kind, ParseErrorKind::UnknownArticulator("Z".into()));
            assert_eq!(error.span, SourceSpan::new(2, 19, 1));
        }
        other => panic!("{other:?}"),
    }
    assert!(err.to_string().contains("sign `B`"));
}

#[test]
fn lexicon_rejects_future_format() {
    assert!(parse_lexicon("format: 2\n").is_err());
    assert!(parse_lexicon("").unwrap().is_empty());
}

#[test]
fn lexicon_hash_ignores_layout() {
    let a = parse_lexicon("sign X := true .").unwrap();
    let b = parse_lexicon("# c\nsign   X:=\n (true) .\n").unwrap();
    assert_eq!(a.content_hash(), b.content_hash());
    assert_eq!(a.content_hash().len(), 64);
}
