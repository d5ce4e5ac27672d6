use crate::ast::{Action, Atom, Formula};

use super::{ModelError, Relation, StateId, ThreeVal, UtteranceModel};

impl UtteranceModel {
    /// Relational meaning of an action: intersection for `&`, union for `|`,
    /// composition for `;` and reflexive transitive closure for `*`.
    /// Unmapped atomic actions denote the empty relation.
    pub fn interpret_action(&self, action: &Action) -> Relation {
        let n = self.state_count();
        match action {
            Action::Atomic(a) => self.actions.get(a).cloned().unwrap_or_else(|| Relation::empty(n)),
            Action::Concurrent(a, b) => self.interpret_action(a).intersection(&self.interpret_action(b)),
            Action::Choice(a, b) => self.interpret_action(a).union(&self.interpret_action(b)),
            Action::Seq(a, b) => self.interpret_action(a).compose(&self.interpret_action(b)),
            Action::Star(a) => self.interpret_action(a).star(),
        }
    }

    /// Three-valued truth of `phi` at `s`.
    pub fn eval_formula(&self, s: StateId, phi: &Formula) -> Result<ThreeVal, ModelError> {
        self.state(s)?;
        Ok(self.eval_all(phi)?[s])
    }

    /// Truth of `phi` at every state, computed bottom-up over the formula.
    pub fn eval_all(&self, phi: &Formula) -> Result<Vec<ThreeVal>, ModelError> {
        check_grounded(phi)?;
        Ok(self.label(phi, &|s, a| self.listed_or_default(&self.states[s], a)))
    }

    /// Classical evaluation after collapsing `Unknown` atoms to `False`
    /// (`closed_world`) or to `True` (otherwise).
    pub fn eval_two_valued(&self, s: StateId, phi: &Formula, closed_world: bool) -> Result<bool, ModelError> {
        self.state(s)?;
        check_grounded(phi)?;
        let fill = ThreeVal::from(!closed_world);
        let values = self.label(phi, &|s, a| match self.listed_or_default(&self.states[s], a) {
            ThreeVal::Unknown => fill,
            known => known,
        });
        Ok(values[s] == ThreeVal::True)
    }

    fn label(&self, phi: &Formula, atom: &dyn Fn(StateId, &Atom) -> ThreeVal) -> Vec<ThreeVal> {
        let n = self.state_count();
        match phi {
            Formula::Top => vec![ThreeVal::True; n],
            Formula::Atom(a) => (0..n).map(|s| atom(s, a)).collect(),
            Formula::Not(x) => self.label(x, atom).into_iter().map(|v| !v).collect(),
            Formula::And(x, y) => {
                let ys = self.label(y, atom);
                self.label(x, atom).into_iter().zip(ys).map(|(a, b)| a.and(b)).collect()
            }
            Formula::Box(action, x) => {
                let rel = self.interpret_action(action);
                let inner = self.label(x, atom);
                (0..n).map(|s| rel.successors(s).fold(ThreeVal::True, |acc, t| acc.and(inner[t]))).collect()
            }
        }
    }
}

fn check_grounded(phi: &Formula) -> Result<(), ModelError> {
    if phi.is_grounded() {
        Ok(())
    } else {
        Err(ModelError::Ungrounded(phi.to_string()))
    }
}
