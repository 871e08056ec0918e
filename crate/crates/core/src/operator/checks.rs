//! Finite verifications of operator identities on spanning test sets.

use serde_json::json;

use super::{CurvedDga, LinearOperator, OperatorError, TestSet};
use crate::algebra::scalar::binomial;
use crate::algebra::Element;
use crate::report::Claim;

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// `d` applied `k` times.
pub fn iterate_d(dga: &CurvedDga, k: u32, a: &Element) -> Result<Element, OperatorError> {
    let mut cur = a.clone();
    for _ in 0..k {
        cur = dga.d().apply(&cur)?;
    }
    Ok(cur)
}

/// `(ad_c)^m (a)` for `k = 2m`, `(ad_c)^m (d a)` for `k = 2m + 1`.
pub fn normal_form_power(dga: &CurvedDga, k: u32, a: &Element) -> Result<Element, OperatorError> {
    let start = if k % 2 == 1 {
        dga.d().apply(a)?
    } else {
        a.clone()
    };
    dga.ad_c().power(k / 2).apply(&start)
}

/// `sum_j (-1)^j C(r, j) c^{r-j} a c^j`; valid as `(ad_c)^r (a)` when `c` has even degree.
pub fn binomial_ad_power(c: &Element, r: u32, a: &Element) -> Result<Element, OperatorError> {
    if let Some(deg) = c.homogeneous_degree() {
        if odd(deg) {
            return Err(OperatorError::OddCurvature(deg));
        }
    } else if !c.is_zero() {
        return Err(OperatorError::InhomogeneousOperand(format!(
            "`{c}` is not homogeneous"
        )));
    }
    let powers: Vec<Element> = (0..=r).map(|j| c.pow(j)).collect::<Result<_, _>>()?;
    let mut acc = Element::zero(a.presentation());
    for j in 0..=r {
        let mut coeff = binomial(r, j);
        if j % 2 == 1 {
            coeff = -coeff;
        }
        let term = powers[(r - j) as usize]
            .multiply(a)?
            .multiply(&powers[j as usize])?;
        acc = acc.add(&term.scale(&coeff))?;
    }
    Ok(acc)
}

/// First test element on which `op` does not vanish, with its image.
pub fn first_nonvanishing(
    op: &LinearOperator,
    ts: &TestSet,
) -> Result<Option<(Element, Element)>, OperatorError> {
    for a in ts.iter() {
        let img = op.apply(a)?;
        if !img.is_zero() {
            return Ok(Some((a.clone(), img)));
        }
    }
    Ok(None)
}

fn vanishing_claim(label: &str, op: &LinearOperator, ts: &TestSet) -> Result<Claim, OperatorError> {
    let hit = first_nonvanishing(op, ts)?;
    let mut claim = Claim::new(format!("{label} = 0 on test set"), hit.is_none())
        .param("max_word_len", ts.max_word_len());
    if let Some((a, img)) = hit {
        claim = claim.with_witness(Some(a)).element_param("image", &img);
    }
    Ok(claim)
}

fn nonvanishing_claim(label: &str, op: &LinearOperator, ts: &TestSet) -> Result<Claim, OperatorError> {
    let hit = first_nonvanishing(op, ts)?;
    let mut claim = Claim::new(format!("{label} != 0 on test set"), hit.is_some())
        .param("max_word_len", ts.max_word_len());
    if let Some((a, img)) = hit {
        claim = claim.with_witness(Some(a)).element_param("image", &img);
    }
    Ok(claim)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Nilpotency {
    /// `op^index` kills the test set while `op^(index-1)(witness) = image != 0`.
    Index {
        index: u32,
        witness: Element,
        image: Element,
    },
    NotFound { max_k: u32 },
}

impl Nilpotency {
    pub fn index(&self) -> Option<u32> {
        match self {
            Nilpotency::Index { index, .. } => Some(*index),
            Nilpotency::NotFound { .. } => None,
        }
    }
}

pub fn nilpotency_index(
    op: &LinearOperator,
    ts: &TestSet,
    max_k: u32,
) -> Result<Nilpotency, OperatorError> {
    if max_k < 1 {
        return Err(OperatorError::InvalidArgument("max_k must be at least 1".into()));
    }
    let mut images: Vec<Element> = ts.elements().to_vec();
    for k in 1..=max_k {
        let next = images
            .iter()
            .map(|e| if e.is_zero() { Ok(e.clone()) } else { op.apply(e) })
            .collect::<Result<Vec<_>, _>>()?;
        if next.iter().all(Element::is_zero) {
            let i = images.iter().position(|e| !e.is_zero()).expect("test set holds the unit");
            return Ok(Nilpotency::Index {
                index: k,
                witness: ts.elements()[i].clone(),
                image: images[i].clone(),
            });
        }
        images = next;
    }
    Ok(Nilpotency::NotFound { max_k })
}

/// `[d, ad_x] = ad_{d(x)}` on the test set, and for `x = c` also `d ad_c = ad_c d`.
pub fn check_structural_identities(
    dga: &CurvedDga,
    x: &Element,
    ts: &TestSet,
) -> Result<Vec<Claim>, OperatorError> {
    let ad_x = LinearOperator::inner_derivation(x)?;
    let d = dga.d();
    let dx = d.apply(x)?;
    let sign_flip = odd(d.degree() * ad_x.degree());
    let mut witness = None;
    for a in ts.iter() {
        let first = d.apply(&ad_x.apply(a)?)?;
        let second = ad_x.apply(&d.apply(a)?)?;
        let lhs = if sign_flip { first.add(&second)? } else { first.sub(&second)? };
        let rhs = dx.graded_commutator(a)?;
        if lhs != rhs {
            witness = Some((a.clone(), lhs, rhs));
            break;
        }
    }
    let mut claims = Vec::new();
    let mut claim = Claim::new("[d, ad_x] = ad_{d(x)} on test set", witness.is_none())
        .element_param("x", x)
        .element_param("d(x)", &dx)
        .param("max_word_len", ts.max_word_len());
    if let Some((a, lhs, rhs)) = witness {
        claim = claim
            .with_witness(Some(a))
            .element_param("[d, ad_x](a)", &lhs)
            .element_param("ad_{d(x)}(a)", &rhs);
    }
    claims.push(claim);
    if x == dga.curvature() {
        claims.push(check_power_commutation(dga, 1, ts)?);
    }
    Ok(claims)
}

/// `d (ad_c)^m = (ad_c)^m d` for `1 <= m <= max_m` on the test set.
pub fn check_power_commutation(
    dga: &CurvedDga,
    max_m: u32,
    ts: &TestSet,
) -> Result<Claim, OperatorError> {
    let d = dga.d();
    for m in 1..=max_m {
        let adm = dga.ad_c().power(m);
        for a in ts.iter() {
            let left = d.apply(&adm.apply(a)?)?;
            let right = adm.apply(&d.apply(a)?)?;
            if left != right {
                return Ok(Claim::new("d (ad_c)^m = (ad_c)^m d on test set", false)
                    .with_witness(Some(a.clone()))
                    .param("m", m)
                    .param("max_m", max_m)
                    .element_param("d (ad_c)^m (a)", &left)
                    .element_param("(ad_c)^m d (a)", &right));
            }
        }
    }
    Ok(Claim::new("d (ad_c)^m = (ad_c)^m d on test set", true)
        .param("max_m", max_m)
        .param("max_word_len", ts.max_word_len()))
}

/// `d(1) = 0` and `d^{2m}(1) = (ad_c)^m(1) = 0` for `1 <= m <= max_m`.
pub fn check_unit_annihilation(dga: &CurvedDga, max_m: u32) -> Result<Claim, OperatorError> {
    let one = Element::one(dga.presentation());
    let d1 = dga.d().apply(&one)?;
    if !d1.is_zero() {
        return Ok(Claim::new("d(1) = 0 and d^{2m}(1) = 0", false)
            .param("k", 1)
            .element_param("image", &d1));
    }
    for m in 1..=max_m {
        let img = iterate_d(dga, 2 * m, &one)?;
        if !img.is_zero() {
            return Ok(Claim::new("d(1) = 0 and d^{2m}(1) = 0", false)
                .param("k", 2 * m)
                .element_param("image", &img));
        }
    }
    Ok(Claim::new("d(1) = 0 and d^{2m}(1) = 0", true).param("max_m", max_m))
}

/// `d^k = normal_form_power(k)` on every given element for `k <= max_k`.
pub fn check_normal_form(
    dga: &CurvedDga,
    max_k: u32,
    elements: &[Element],
) -> Result<Claim, OperatorError> {
    let label = "d^{2m} = (ad_c)^m and d^{2m+1} = (ad_c)^m d";
    for a in elements {
        let mut iterated = a.clone();
        for k in 0..=max_k {
            if k > 0 {
                iterated = dga.d().apply(&iterated)?;
            }
            let normal = normal_form_power(dga, k, a)?;
            if iterated != normal {
                return Ok(Claim::new(label, false)
                    .with_witness(Some(a.clone()))
                    .param("k", k)
                    .element_param("d^k(a)", &iterated)
                    .element_param("normal form", &normal));
            }
        }
    }
    Ok(Claim::new(label, true)
        .param("max_k", max_k)
        .param("elements", elements.len()))
}

/// `(ad_c)^r (a) = sum_j (-1)^j C(r,j) c^{r-j} a c^j` for `r <= max_r`.
pub fn check_binomial(
    dga: &CurvedDga,
    max_r: u32,
    elements: &[Element],
) -> Result<Claim, OperatorError> {
    let label = "(ad_c)^r = sum_j (-1)^j C(r,j) L_c^{r-j} R_c^j";
    let c = dga.curvature();
    for a in elements {
        let mut iterated = a.clone();
        for r in 0..=max_r {
            if r > 0 {
                iterated = dga.ad_c().apply(&iterated)?;
            }
            let expanded = binomial_ad_power(c, r, a)?;
            if iterated != expanded {
                return Ok(Claim::new(label, false)
                    .with_witness(Some(a.clone()))
                    .param("r", r)
                    .element_param("(ad_c)^r(a)", &iterated)
                    .element_param("binomial", &expanded));
            }
        }
    }
    Ok(Claim::new(label, true)
        .param("max_r", max_r)
        .param("elements", elements.len()))
}

/// Outcome of checking the curved axioms on a test set.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub d_squared_equals_ad_c: Claim,
    pub d_of_c_zero: Claim,
    pub degree_of_d_ok: Claim,
    /// Leibniz differentials must send each relation to zero to descend to the quotient.
    pub d_well_defined: Claim,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.claims().iter().all(|c| c.pass)
    }

    pub fn claims(&self) -> Vec<&Claim> {
        vec![
            &self.d_squared_equals_ad_c,
            &self.d_of_c_zero,
            &self.degree_of_d_ok,
            &self.d_well_defined,
        ]
    }
}

pub fn check_cda_axioms(dga: &CurvedDga, ts: &TestSet) -> Result<AxiomReport, OperatorError> {
    let d = dga.d();
    let c = dga.curvature();

    let mut square = Claim::new("d^2 = ad_c on test set", true)
        .param("max_word_len", ts.max_word_len());
    for a in ts.iter() {
        let dd = d.apply(&d.apply(a)?)?;
        let ad = dga.ad_c().apply(a)?;
        if dd != ad {
            square = Claim::new("d^2 = ad_c on test set", false)
                .with_witness(Some(a.clone()))
                .element_param("d^2(a)", &dd)
                .element_param("ad_c(a)", &ad)
                .param("max_word_len", ts.max_word_len());
            break;
        }
    }

    let dc = d.apply(c)?;
    let d_of_c = Claim::new("d(c) = 0", dc.is_zero())
        .element_param("c", c)
        .element_param("d(c)", &dc);

    let mut degree = Claim::new("d shifts degree by |d| on test set", true)
        .param("degree", d.degree())
        .param("graded", json!(dga.is_graded()));
    for a in ts.iter() {
        let Some(i) = a.homogeneous_degree() else { continue };
        let img = d.apply(a)?;
        if !img.is_homogeneous_of(i + d.degree()) {
            degree = Claim::new("d shifts degree by |d| on test set", false)
                .with_witness(Some(a.clone()))
                .param("degree", d.degree())
                .element_param("d(a)", &img);
            break;
        }
    }

    let well_defined = match d.relation_defect()? {
        None => Claim::new("d respects the relations", true),
        Some((rel, defect)) => Claim::new("d respects the relations", false)
            .param("relation", rel)
            .element_param("defect", &defect),
    };

    Ok(AxiomReport {
        d_squared_equals_ad_c: square,
        d_of_c_zero: d_of_c,
        degree_of_d_ok: degree,
        d_well_defined: well_defined,
    })
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: u32,
    /// `(ad_c)^{2n-1} = 0` on the test set.
    pub ad_c_vanishes: Claim,
    /// `d^{4n-2} = 0` on the test set.
    pub d_vanishes: Claim,
    /// Sharpness probe: `d^{4n-3} != 0` on the test set.
    pub sharp: Claim,
}

impl BoundReport {
    /// The bound itself; sharpness is informational.
    pub fn pass(&self) -> bool {
        self.ad_c_vanishes.pass && self.d_vanishes.pass
    }
}

/// Requires `c^n = 0`; checks the `(4n - 2)`-complex bound and probes sharpness.
pub fn verify_bound_4n_minus_2(
    dga: &CurvedDga,
    n: u32,
    ts: &TestSet,
) -> Result<BoundReport, OperatorError> {
    if n < 1 {
        return Err(OperatorError::InvalidArgument("n must be at least 1".into()));
    }
    let cn = dga.curvature().pow(n)?;
    if !cn.is_zero() {
        return Err(OperatorError::HypothesisViolated(format!(
            "c^{n} = {cn} is not zero"
        )));
    }
    let ad_c_vanishes = vanishing_claim(
        &format!("(ad_c)^{}", 2 * n - 1),
        &dga.ad_c().power(2 * n - 1),
        ts,
    )?
    .param("n", n);
    let d_vanishes =
        vanishing_claim(&format!("d^{}", 4 * n - 2), &dga.d().power(4 * n - 2), ts)?.param("n", n);
    let sharp =
        nonvanishing_claim(&format!("d^{}", 4 * n - 3), &dga.d().power(4 * n - 3), ts)?.param("n", n);
    Ok(BoundReport {
        n,
        ad_c_vanishes,
        d_vanishes,
        sharp,
    })
}

/// Products `a_0 c a_1 c ... c a_n` with separators from a test set.
pub const MAX_IDEAL_PRODUCTS: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct IdealReport {
    /// Every separated product with `n` copies of `c` vanishes.
    pub nilpotent: Claim,
    /// When the ideal check holds: `d^{2n} = 0` on the test set.
    pub d_vanishes: Option<Claim>,
}

impl IdealReport {
    pub fn holds(&self) -> bool {
        self.nilpotent.pass
    }
}

pub fn check_curvature_ideal_nilpotent(
    dga: &CurvedDga,
    n: u32,
    ts: &TestSet,
) -> Result<IdealReport, OperatorError> {
    if n < 1 {
        return Err(OperatorError::InvalidArgument("n must be at least 1".into()));
    }
    let count = (ts.len() as f64).powi(n as i32 + 1);
    if count > MAX_IDEAL_PRODUCTS as f64 {
        return Err(OperatorError::InvalidArgument(format!(
            "{} separator tuples exceed the limit of {MAX_IDEAL_PRODUCTS}",
            count as u128
        )));
    }
    let c = dga.curvature();
    let mut witness = None;
    // depth-first over separators; a zero prefix kills the whole subtree
    let mut stack: Vec<(u32, Element)> = ts.iter().rev().map(|a| (0, a.clone())).collect();
    while let Some((depth, prefix)) = stack.pop() {
        if depth == n {
            if !prefix.is_zero() {
                witness = Some(prefix);
                break;
            }
            continue;
        }
        let with_c = prefix.multiply(c)?;
        if with_c.is_zero() {
            continue;
        }
        for a in ts.iter().rev() {
            stack.push((depth + 1, with_c.multiply(a)?));
        }
    }
    let nilpotent = Claim::new(format!("(c)^{n} = 0 on test-set separators"), witness.is_none())
        .with_witness(witness)
        .param("n", n)
        .param("max_word_len", ts.max_word_len());
    let d_vanishes = if nilpotent.pass {
        Some(vanishing_claim(&format!("d^{}", 2 * n), &dga.d().power(2 * n), ts)?.param("n", n))
    } else {
        None
    };
    Ok(IdealReport {
        nilpotent,
        d_vanishes,
    })
}
