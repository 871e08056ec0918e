//! Built-in worked examples, available without any input files.

use std::sync::Arc;

use crate::algebra::{complete_presentation, parse_element, Presentation, DEFAULT_WORD_LIMIT};
use crate::formats::{load_scenario, LoadedScenario, COMPLETION_ROUNDS};
use crate::operator::{CurvedDga, LinearOperator};

/// `|x| = 2, |y| = 0, |theta| = 1` with `x x = 0` and `theta theta = x`, completed.
pub const COUNTEREXAMPLE_PRESENTATION_JSON: &str = r#"{
  "generators": [
    {"name": "x", "degree": 2},
    {"name": "y", "degree": 0},
    {"name": "theta", "degree": 1}
  ],
  "relations": [
    {"lhs": "x x", "rhs": []},
    {"lhs": "theta theta", "rhs": [{"coeff": "1", "word": "x"}]}
  ]
}
"#;

/// `d = ad_theta`, `c = x` over the counterexample presentation.
pub const COUNTEREXAMPLE_DGA_JSON: &str = r#"{
  "presentation": {
    "generators": [
      {"name": "x", "degree": 2},
      {"name": "y", "degree": 0},
      {"name": "theta", "degree": 1}
    ],
    "relations": [
      {"lhs": "x x", "rhs": []},
      {"lhs": "theta theta", "rhs": [{"coeff": "1", "word": "x"}]}
    ]
  },
  "differential": {"kind": "ad", "of": [{"coeff": "1", "word": "theta"}]},
  "curvature": [{"coeff": "1", "word": "x"}]
}
"#;

/// The 4-cycle with chord 1-3, filled only by the triangle `[1,2,3]`, whose
/// entry time moves with the curvature. The other clique `[1,3,4]` is left out,
/// so the cycle 1-3-4 stays open.
pub const TOY_SCENARIO_JSON: &str = r#"{
  "vertices": [1, 2, 3, 4],
  "edges": [[1, 2], [2, 3], [3, 4], [4, 1], [1, 3]],
  "max_dim": 2,
  "simplices": ["1 2 3"],
  "base_times": {"0": "0", "1": "1", "2": "2"},
  "tagged": {"1 2 3": "ell"},
  "functionals": {"ell": {"x": "1"}},
  "curvatures": {"c0": [], "c1": [{"coeff": "3/10", "word": "x"}]}
}
"#;

pub fn counterexample_presentation() -> Arc<Presentation> {
    counterexample_presentation_with_limit(DEFAULT_WORD_LIMIT)
}

pub fn counterexample_presentation_with_limit(word_limit: usize) -> Arc<Presentation> {
    let p = Presentation::builder()
        .generator("x", 2)
        .generator("y", 0)
        .generator("theta", 1)
        .relation("x x", "0")
        .relation("theta theta", "x")
        .word_limit(word_limit)
        .build()
        .expect("built-in presentation is valid");
    complete_presentation(&p, COMPLETION_ROUNDS).expect("built-in presentation completes")
}

pub fn counterexample_dga() -> CurvedDga {
    counterexample_dga_with_limit(DEFAULT_WORD_LIMIT)
}

pub fn counterexample_dga_with_limit(word_limit: usize) -> CurvedDga {
    let p = counterexample_presentation_with_limit(word_limit);
    inner_dga(&p, "theta", "x")
}

fn inner_dga(p: &Arc<Presentation>, theta: &str, c: &str) -> CurvedDga {
    let theta = parse_element(theta, p).unwrap();
    let c = parse_element(c, p).unwrap();
    CurvedDga::new(LinearOperator::inner_derivation(&theta).unwrap(), c).unwrap()
}

/// Same degrees, but the curvature `x` commutes with `y` (hence with everything).
pub fn central_dga() -> CurvedDga {
    let p = Presentation::builder()
        .generator("x", 2)
        .generator("y", 0)
        .generator("theta", 1)
        .relation("x x", "0")
        .relation("theta theta", "x")
        .relation("y x", "x y")
        .build()
        .expect("built-in presentation is valid");
    let p = complete_presentation(&p, COMPLETION_ROUNDS).expect("built-in presentation completes");
    inner_dga(&p, "theta", "x")
}

/// Ungraded two-generator stand-in for 2x2 matrices: `e ~ E12`, `f ~ E21`,
/// with `e e = f f = 0`, `e f e = e`, `f e f = f`. Here `d = ad_e` and `c = e^2 = 0`.
pub fn matrix_surrogate_presentation() -> Arc<Presentation> {
    let p = Presentation::builder()
        .generator("e", 0)
        .generator("f", 0)
        .relation("e e", "0")
        .relation("f f", "0")
        .relation("e f e", "e")
        .relation("f e f", "f")
        .build()
        .expect("built-in presentation is valid");
    complete_presentation(&p, COMPLETION_ROUNDS).expect("built-in presentation completes")
}

pub fn matrix_surrogate_dga() -> CurvedDga {
    let p = matrix_surrogate_presentation();
    inner_dga(&p, "e", "e e")
}

pub fn toy_scenario() -> LoadedScenario {
    load_scenario(TOY_SCENARIO_JSON, None, DEFAULT_WORD_LIMIT).expect("built-in scenario loads")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{load_dga, load_presentation};

    #[test]
    fn embedded_json_matches_builders() {
        let a = load_presentation(COUNTEREXAMPLE_PRESENTATION_JSON, 32).unwrap();
        let b = counterexample_presentation();
        assert_eq!(a.to_string(), b.to_string());
        let dga = load_dga(COUNTEREXAMPLE_DGA_JSON, None, 32).unwrap();
        assert_eq!(dga.curvature().to_string(), "x");
    }

    #[test]
    fn surrogate_curvature_vanishes() {
        let dga = matrix_surrogate_dga();
        assert!(dga.curvature().is_zero());
        assert!(dga.presentation().is_confluent());
        assert!(!dga.is_graded());
    }
}
