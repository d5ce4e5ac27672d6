//! Atoms, actions and formulas, plus handedness grounding.
//!
//! Formulas are stored desugared: implication, disjunction and the diamond
//! modality are rewritten by the parser into `Not`/`And`/`Box`.

use std::collections::BTreeSet;

use crate::primitives::{Articulator, Direction, HandConfig, Handedness, PlaceName};

/// An atomic proposition about articulators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `first` lies in direction `dir` from `second` (written `dir(first, second, dir)`).
    RelDir {
        first: Articulator,
        dir: Direction,
        second: Articulator,
    },
    At(Articulator, PlaceName),
    Touch(Articulator, Articulator),
    Config(Articulator, HandConfig),
    Orient(Articulator, Direction),
}

impl Atom {
    pub fn articulators(&self) -> Vec<Articulator> {
        match self {
            Atom::RelDir { first, second, .. } => vec![*first, *second],
            Atom::Touch(a, b) => vec![*a, *b],
            Atom::At(a, _) | Atom::Config(a, _) | Atom::Orient(a, _) => vec![*a],
        }
    }

    /// A binary atom naming the same articulator twice. The parser rejects
    /// these, but grounding `D`/`W` next to a concrete hand can produce one.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Atom::RelDir { first, second, .. } => first == second,
            Atom::Touch(a, b) => a == b,
            _ => false,
        }
    }

    pub fn is_grounded(&self) -> bool {
        self.articulators().iter().all(|a| !a.is_alias())
    }

    pub fn ground(&self, h: Handedness) -> Atom {
        let aliased = self.articulators().iter().any(|a| a.is_alias());
        let dir = |d: Direction| if aliased { d.resolve(h) } else { d };
        match self {
            Atom::RelDir { first, dir: d, second } => {
                Atom::RelDir { first: first.resolve(h), dir: dir(*d), second: second.resolve(h) }
            }
            Atom::At(a, p) => Atom::At(a.resolve(h), p.clone()),
            Atom::Touch(a, b) => Atom::Touch(a.resolve(h), b.resolve(h)),
            Atom::Config(a, c) => Atom::Config(a.resolve(h), c.clone()),
            Atom::Orient(a, d) => Atom::Orient(a.resolve(h), dir(*d)),
        }
    }
}

/// A primitive movement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomicAction {
    Move(Articulator, Direction),
    /// Rapid continuous movement without changing place.
    Thrill(Articulator),
}

impl AtomicAction {
    pub fn articulator(self) -> Articulator {
        match self {
            AtomicAction::Move(a, _) | AtomicAction::Thrill(a) => a,
        }
    }

    pub fn ground(self, h: Handedness) -> AtomicAction {
        match self {
            AtomicAction::Move(a, d) if a.is_alias() => AtomicAction::Move(a.resolve(h), d.resolve(h)),
            AtomicAction::Move(a, d) => AtomicAction::Move(a, d),
            AtomicAction::Thrill(a) => AtomicAction::Thrill(a.resolve(h)),
        }
    }
}

/// Regular action algebra over atomic actions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Atomic(AtomicAction),
    Concurrent(Box<Action>, Box<Action>),
    Choice(Box<Action>, Box<Action>),
    Seq(Box<Action>, Box<Action>),
    Star(Box<Action>),
}

impl Action {
    pub fn atomic(a: AtomicAction) -> Self {
        Action::Atomic(a)
    }

    pub fn concurrent(a: Action, b: Action) -> Self {
        Action::Concurrent(Box::new(a), Box::new(b))
    }

    pub fn choice(a: Action, b: Action) -> Self {
        Action::Choice(Box::new(a), Box::new(b))
    }

    pub fn seq(a: Action, b: Action) -> Self {
        Action::Seq(Box::new(a), Box::new(b))
    }

    pub fn star(a: Action) -> Self {
        Action::Star(Box::new(a))
    }

    pub fn ground(&self, h: Handedness) -> Action {
        match self {
            Action::Atomic(a) => Action::Atomic(a.ground(h)),
            Action::Concurrent(a, b) => Action::concurrent(a.ground(h), b.ground(h)),
            Action::Choice(a, b) => Action::choice(a.ground(h), b.ground(h)),
            Action::Seq(a, b) => Action::seq(a.ground(h), b.ground(h)),
            Action::Star(a) => Action::star(a.ground(h)),
        }
    }

    pub fn for_each_atomic(&self, f: &mut impl FnMut(AtomicAction)) {
        match self {
            Action::Atomic(a) => f(*a),
            Action::Concurrent(a, b) | Action::Choice(a, b) | Action::Seq(a, b) => {
                a.for_each_atomic(f);
                b.for_each_atomic(f);
            }
            Action::Star(a) => a.for_each_atomic(f),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Action::Atomic(_) => 1,
            Action::Concurrent(a, b) | Action::Choice(a, b) | Action::Seq(a, b) => 1 + a.node_count() + b.node_count(),
            Action::Star(a) => 1 + a.node_count(),
        }
    }
}

/// A formula in core syntax.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Box(Action, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn boxed(action: Action, f: Formula) -> Self {
        Formula::Box(action, Box::new(f))
    }

    /// `a -> b`, desugared to `!(a /\ !b)`.
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    /// `a \/ b`, desugared to `!(!a /\ !b)`.
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `<action> f`, desugared to `![action]!f`.
    pub fn diamond(action: Action, f: Formula) -> Self {
        Formula::not(Formula::boxed(action, Formula::not(f)))
    }

    /// Conjunction of a non-empty list, left-associated.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Self> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Resolves every `D`/`W` to a concrete hand. Directions tied to an
    /// aliased articulator are mirrored for left-dominant signers; directions
    /// on atoms that only mention `R`/`L` are left as written.
    pub fn ground(&self, h: Handedness) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Atom(a) => Formula::Atom(a.ground(h)),
            Formula::Not(f) => Formula::not(f.ground(h)),
            Formula::And(a, b) => Formula::and(a.ground(h), b.ground(h)),
            Formula::Box(act, f) => Formula::boxed(act.ground(h), f.ground(h)),
        }
    }

    pub fn is_grounded(&self) -> bool {
        let mut grounded = true;
        self.for_each_atom(&mut |a| grounded &= a.is_grounded());
        self.for_each_atomic_action(&mut |a| grounded &= !a.articulator().is_alias());
        grounded
    }

    pub fn for_each_atom(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Top => {}
            Formula::Atom(a) => f(a),
            Formula::Not(x) | Formula::Box(_, x) => x.for_each_atom(f),
            Formula::And(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
            }
        }
    }

    pub fn for_each_atomic_action(&self, f: &mut impl FnMut(AtomicAction)) {
        match self {
            Formula::Top | Formula::Atom(_) => {}
            Formula::Not(x) => x.for_each_atomic_action(f),
            Formula::And(a, b) => {
                a.for_each_atomic_action(f);
                b.for_each_atomic_action(f);
            }
            Formula::Box(act, x) => {
                act.for_each_atomic(f);
                x.for_each_atomic_action(f);
            }
        }
    }

    /// Configuration labels mentioned anywhere in the formula.
    pub fn config_labels(&self) -> BTreeSet<HandConfig> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |a| {
            if let Atom::Config(_, c) = a {
                out.insert(c.clone());
            }
        });
        out
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 1,
            Formula::Not(x) => 1 + x.node_count(),
            Formula::And(a, b) => 1 + a.node_count() + b.node_count(),
            Formula::Box(act, x) => 1 + act.node_count() + x.node_count(),
        }
    }

    /// The conjuncts of the top-level `And` chain (the formula itself if it is not a conjunction).
    pub fn top_conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            match f {
                Formula::And(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }
}
