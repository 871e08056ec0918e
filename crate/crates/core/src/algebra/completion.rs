//! Bounded Knuth-Bendix completion for monomial rewrite systems with
//! linear right-hand sides, oriented by the length-lex order.

use std::sync::Arc;

use num_traits::Zero;

use super::presentation::{critical_pairs, normalize_with, Relation};
use super::word::{add_term, Terms};
use super::{AlgebraError, Presentation, Scalar};

fn difference(left: Terms, right: &Terms) -> Terms {
    let mut out = left;
    for (w, c) in right {
        add_term(&mut out, w.clone(), -c.clone());
    }
    out
}

/// Turns a nonzero combination into a rule `lead -> -(rest)/lead_coeff`.
fn orient(p: &Presentation, mut eq: Terms) -> Result<Relation, AlgebraError> {
    let (lead, coeff) = eq.pop_last().expect("orient called on zero");
    if lead.len() < 2 {
        let mut full = eq.clone();
        full.insert(lead.clone(), coeff.clone());
        return Err(AlgebraError::GeneratedRuleRejected(format!(
            "{} = 0 would eliminate `{}`",
            p.format_terms(&full),
            if lead.is_empty() { "1".to_string() } else { p.format_word(&lead) }
        )));
    }
    let rhs = eq
        .into_iter()
        .map(|(w, c)| (w, -c / &coeff))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(Relation { lhs: lead, rhs })
}

/// Adds the consequence `eq = 0`, then interreduces: rules whose left side
/// became reducible are removed and fed back as equations.
fn insert_equation(
    p: &Presentation,
    rules: &mut Vec<Relation>,
    eq: Terms,
) -> Result<bool, AlgebraError> {
    let mut queue = vec![eq];
    let mut changed = false;
    while let Some(eq) = queue.pop() {
        let nf = normalize_with(rules, eq);
        if nf.is_empty() {
            continue;
        }
        let rule = orient(p, nf)?;
        p.check_len(rule.lhs.len())?;
        changed = true;
        let (keep, stale): (Vec<_>, Vec<_>) =
            rules.drain(..).partition(|r| !r.lhs.contains(&rule.lhs));
        *rules = keep;
        rules.push(rule);
        for r in stale {
            let mut eq = r.rhs.clone();
            add_term(&mut eq, r.lhs.clone(), -<Scalar as num_traits::One>::one());
            queue.push(eq);
        }
        for i in 0..rules.len() {
            let rhs = std::mem::take(&mut rules[i].rhs);
            rules[i].rhs = normalize_with(rules, rhs);
        }
    }
    Ok(changed)
}

/// Runs at most `max_rounds` rounds of critical-pair resolution. Each round
/// resolves every critical pair of the rule set it started with; the result
/// is returned as soon as a round adds nothing.
pub fn complete_presentation(
    p: &Arc<Presentation>,
    max_rounds: usize,
) -> Result<Arc<Presentation>, AlgebraError> {
    let mut rules: Vec<Relation> = p.relations().to_vec();
    for _ in 0..max_rounds {
        let mut changed = false;
        for cp in critical_pairs(&rules) {
            let left = normalize_with(&rules, cp.left);
            let right = normalize_with(&rules, cp.right);
            if left != right {
                changed |= insert_equation(p, &mut rules, difference(left, &right))?;
            }
        }
        if !changed {
            return Ok(Presentation::from_parts(
                p.generators().to_vec(),
                rules,
                p.word_limit(),
            ));
        }
    }
    let candidate = Presentation::from_parts(p.generators().to_vec(), rules, p.word_limit());
    match candidate.first_unjoinable_pair() {
        None => Ok(candidate),
        Some(cp) => Err(AlgebraError::CompletionDiverged {
            max_rounds,
            overlap: candidate.format_word(&cp.word),
            left: candidate.format_terms(&cp.left),
            right: candidate.format_terms(&cp.right),
        }),
    }
}
