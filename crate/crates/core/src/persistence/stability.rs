use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{
    bottleneck_distance, compute_barcode, curvature_filtration, sup_shift, Barcode,
    CurvatureFiltrationSpec, Extended, PersistenceError, SimplicialComplex,
};
use crate::algebra::Scalar;
use crate::report::Claim;
use crate::Element;

/// Outcome of comparing the barcodes of two curvature filtrations.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    /// `sup |phi_c - phi_c'|`.
    pub delta: Scalar,
    pub lipschitz_constant: Scalar,
    /// `||c - c'||_inf` on coefficients.
    pub curvature_distance: Scalar,
    /// Bottleneck (equivalently interleaving) distance per homological dimension.
    pub bottleneck: BTreeMap<usize, Extended>,
    pub barcodes: (Barcode, Barcode),
    pub claims: Vec<Claim>,
}

impl StabilityReport {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn lipschitz_bound(&self) -> Scalar {
        &self.lipschitz_constant * &self.curvature_distance
    }
}

fn ext_json(e: &Extended) -> Value {
    Value::String(e.to_string())
}

pub fn verify_stability(
    k: &SimplicialComplex,
    spec: &CurvatureFiltrationSpec,
    c: &Element,
    c_prime: &Element,
) -> Result<StabilityReport, PersistenceError> {
    let f = curvature_filtration(k, spec, c)?;
    let g = curvature_filtration(k, spec, c_prime)?;
    let delta = sup_shift(&f, &g)?;
    let b1 = compute_barcode(k, &f);
    let b2 = compute_barcode(k, &g);
    let lip = spec.lipschitz_constant();
    let dist = c.sub(c_prime)?.coeff_norm_inf();
    let bound = &lip * &dist;

    let top = k.dim().unwrap_or(0);
    let bottleneck: BTreeMap<usize, Extended> =
        (0..=top).map(|d| (d, bottleneck_distance(&b1, &b2, d))).collect();
    let delta_ext = Extended::Finite(delta.clone());
    let all_within = bottleneck.values().all(|b| b <= &delta_ext);
    let mut per_dim = serde_json::Map::new();
    for (d, b) in &bottleneck {
        per_dim.insert(d.to_string(), ext_json(b));
    }

    let claims = vec![
        Claim::new("bottleneck distance <= sup shift in every dimension", all_within)
            .param("delta", delta.to_string())
            .param("bottleneck", Value::Object(per_dim.clone()))
            .param("interleaving", Value::Object(per_dim)),
        Claim::new("sup shift <= L * ||c - c'||_inf", delta <= bound)
            .param("delta", delta.to_string())
            .param("lipschitz_constant", lip.to_string())
            .param("curvature_distance", dist.to_string())
            .param("bound", bound.to_string())
            .element_param("c", c)
            .element_param("c_prime", c_prime),
    ];
    Ok(StabilityReport {
        delta,
        lipschitz_constant: lip,
        curvature_distance: dist,
        bottleneck,
        barcodes: (b1, b2),
        claims,
    })
}

impl StabilityReport {
    pub fn summary_json(&self) -> Value {
        let per_dim: BTreeMap<String, Value> = self
            .bottleneck
            .iter()
            .map(|(d, b)| (d.to_string(), ext_json(b)))
            .collect();
        json!({
            "delta": self.delta.to_string(),
            "lipschitz_constant": self.lipschitz_constant.to_string(),
            "curvature_distance": self.curvature_distance.to_string(),
            "bottleneck": per_dim,
        })
    }
}
