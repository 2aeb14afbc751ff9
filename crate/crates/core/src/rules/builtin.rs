use super::{Pattern, PatternAtom, Rule, RuleClass};
use crate::calculus::Order2Sym;
use crate::vocabulary::Vocabulary;

/// Reserved id of the signal rule. Scenarios may not define a rule with it.
pub const SIGNAL_RULE_ID: &str = "signal";

/// `? X` together with the signal `?- X ! X` yields the fact `! X`.
///
/// The signal condition is stored in canonical form, `?- ! X`, which is the
/// shape a normalized signal node has.
pub fn signal_rule() -> Rule {
    let x = || PatternAtom::CausaSeq("X".into());
    let capture = Pattern::new(vec![PatternAtom::Order2(Order2Sym::Capture), x()]);
    let signal = Pattern::new(vec![
        PatternAtom::Order2(Order2Sym::CaptureInverse),
        x(),
        PatternAtom::Order2(Order2Sym::Fact),
        x(),
    ]);
    let fact = Pattern::new(vec![PatternAtom::Order2(Order2Sym::Fact), x()]);
    Rule::new(
        SIGNAL_RULE_ID,
        RuleClass::Structural,
        vec![capture, signal],
        vec![fact],
        false,
        &Vocabulary::new(Vec::new()),
    )
    .expect("signal rule is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signal_condition_is_canonical() {
        let r = signal_rule();
        assert_eq!(r.conditions[1].to_string(), "?- ! X");
        assert_eq!(r.consequents[0].to_string(), "! X");
    }
}
