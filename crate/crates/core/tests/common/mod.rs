//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's rewriting, operator or reduction
//! code: the oracles work on plain strings, 2x2 matrices and dense rank
//! computations, so agreement with the library is real evidence.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use curvature_core::formats::{element_from_literal, element_to_literal, TermLiteral};
use curvature_core::{Element, Presentation, Scalar};
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

pub fn z(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// String-rewriting oracle for <x:2, y:0, t:1 | xx = 0, tt = x>, completed by
// hand: the overlap ttt gives xt = tx, oriented as tx -> xt.

pub type Poly = BTreeMap<String, Scalar>;

const RULES: [(&str, Option<&str>); 3] = [("xx", None), ("tt", Some("x")), ("tx", Some("xt"))];

pub fn letter_degree(c: char) -> i64 {
    match c {
        'x' => 2,
        'y' => 0,
        't' => 1,
        _ => panic!("unknown letter {c}"),
    }
}

pub fn word_degree(w: &str) -> i64 {
    w.chars().map(letter_degree).sum()
}

fn reduce_word(w: &str) -> Option<String> {
    let mut w = w.to_string();
    'outer: loop {
        for (lhs, rhs) in RULES {
            if let Some(i) = w.find(lhs) {
                let r = rhs?;
                w = format!("{}{}{}", &w[..i], r, &w[i + lhs.len()..]);
                continue 'outer;
            }
        }
        return Some(w);
    }
}

pub fn padd(a: &Poly, b: &Poly, scale: &Scalar) -> Poly {
    let mut out = a.clone();
    for (w, c) in b {
        let e = out.entry(w.clone()).or_insert_with(Scalar::zero);
        *e += c * scale;
        if e.is_zero() {
            out.remove(w);
        }
    }
    out
}

pub fn pnorm(p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (w, c) in p {
        if let Some(r) = reduce_word(w) {
            out = padd(&out, &Poly::from([(r, c.clone())]), &Scalar::one());
        }
    }
    out
}

pub fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut raw = Poly::new();
    for (u, c) in a {
        for (v, d) in b {
            raw = padd(&raw, &Poly::from([(format!("{u}{v}"), c * d)]), &Scalar::one());
        }
    }
    pnorm(&raw)
}

/// `[g, a]` for a single letter `g`, with the Koszul sign.
pub fn pad(g: char, a: &Poly) -> Poly {
    let mut raw = Poly::new();
    for (w, c) in a {
        let sign = if (letter_degree(g) * word_degree(w)) % 2 == 0 { z(1) } else { z(-1) };
        raw = padd(&raw, &Poly::from([(format!("{g}{w}"), c.clone())]), &Scalar::one());
        raw = padd(&raw, &Poly::from([(format!("{w}{g}"), c.clone())]), &-sign);
    }
    pnorm(&raw)
}

pub fn pad_iter(g: char, a: &Poly, k: u32) -> Poly {
    (0..k).fold(a.clone(), |acc, _| pad(g, &acc))
}

fn letter_of(name: &str) -> char {
    match name {
        "x" => 'x',
        "y" => 'y',
        "theta" => 't',
        other => panic!("unexpected generator {other}"),
    }
}

fn name_of(c: char) -> &'static str {
    match c {
        'x' => "x",
        'y' => "y",
        't' => "theta",
        _ => panic!(),
    }
}

pub fn to_poly(e: &Element) -> Poly {
    element_to_literal(e)
        .into_iter()
        .map(|t| {
            let w: String = t.word.split_whitespace().map(letter_of).collect();
            (w, curvature_core::algebra::scalar::parse_rational(&t.coeff).unwrap())
        })
        .collect()
}

pub fn from_poly(p: &Poly, pres: &Arc<Presentation>) -> Element {
    let lit: Vec<TermLiteral> = p
        .iter()
        .map(|(w, c)| TermLiteral {
            coeff: c.to_string(),
            word: w.chars().map(name_of).collect::<Vec<_>>().join(" "),
        })
        .collect();
    element_from_literal(&lit, pres).unwrap()
}

/// Random polynomial: 1..=4 terms, words of length <= `max_len`, coefficients in -3..=3.
pub fn random_poly<R: Rng>(rng: &mut R, max_len: usize) -> Poly {
    let n_terms = rng.gen_range(1..=4);
    let mut raw = Poly::new();
    for _ in 0..n_terms {
        let len = rng.gen_range(0..=max_len);
        let w: String = (0..len).map(|_| ['x', 'y', 't'][rng.gen_range(0..3)]).collect();
        let c = z(rng.gen_range(-3..=3));
        raw = padd(&raw, &Poly::from([(w, c)]), &Scalar::one());
    }
    raw
}

pub fn random_element<R: Rng>(rng: &mut R, pres: &Arc<Presentation>, max_len: usize) -> Element {
    from_poly(&random_poly(rng, max_len), pres)
}

// ---------------------------------------------------------------------------
// 2x2 rational matrices.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2(pub [[Scalar; 2]; 2]);

impl M2 {
    pub fn unit(i: usize, j: usize) -> M2 {
        let mut m = M2::zero();
        m.0[i][j] = z(1);
        m
    }

    pub fn zero() -> M2 {
        M2([[z(0), z(0)], [z(0), z(0)]])
    }

    pub fn identity() -> M2 {
        M2([[z(1), z(0)], [z(0), z(1)]])
    }

    pub fn mul(&self, o: &M2) -> M2 {
        let mut m = M2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = &self.0[i][0] * &o.0[0][j] + &self.0[i][1] * &o.0[1][j];
            }
        }
        m
    }

    pub fn lin(&self, a: &Scalar, o: &M2, b: &Scalar) -> M2 {
        let mut m = M2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a * &self.0[i][j] + b * &o.0[i][j];
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    /// `[c, m] = c m - m c` (all degrees zero).
    pub fn ad(c: &M2, m: &M2) -> M2 {
        c.mul(m).lin(&z(1), &m.mul(c), &z(-1))
    }
}

/// Evaluates an element of the `e, f` surrogate at `e = E12`, `f = E21`.
pub fn eval_surrogate(e: &Element) -> M2 {
    let mut acc = M2::zero();
    for t in element_to_literal(e) {
        let mut m = M2::identity();
        for name in t.word.split_whitespace() {
            let g = match name {
                "e" => M2::unit(0, 1),
                "f" => M2::unit(1, 0),
                _ => panic!(),
            };
            m = m.mul(&g);
        }
        let c = curvature_core::algebra::scalar::parse_rational(&t.coeff).unwrap();
        acc = acc.lin(&z(1), &m, &c);
    }
    acc
}

// ---------------------------------------------------------------------------
// Dense homology ranks.

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut r = 0;
    let ncols = rows.first().map_or(0, Vec::len);
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &pivot;
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Betti numbers of a face-closed simplex set, by ranks of boundary matrices.
pub fn betti(simplices: &BTreeSet<Vec<u32>>) -> Vec<usize> {
    let top = simplices.iter().map(|s| s.len()).max().unwrap_or(0);
    let by_dim: Vec<Vec<&Vec<u32>>> =
        (1..=top).map(|n| simplices.iter().filter(|s| s.len() == n).collect()).collect();
    let boundary_rank = |k: usize| -> usize {
        // boundary from dimension k to k - 1
        if k == 0 || k >= by_dim.len() {
            return 0;
        }
        let rows: Vec<Vec<Scalar>> = by_dim[k - 1]
            .iter()
            .map(|face| {
                by_dim[k]
                    .iter()
                    .map(|s| {
                        for i in 0..s.len() {
                            let mut f = (*s).clone();
                            f.remove(i);
                            if &f == *face {
                                return if i % 2 == 0 { z(1) } else { z(-1) };
                            }
                        }
                        z(0)
                    })
                    .collect()
            })
            .collect();
        rank(rows)
    };
    (0..by_dim.len())
        .map(|k| by_dim[k].len() - boundary_rank(k) - boundary_rank(k + 1))
        .collect()
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}
