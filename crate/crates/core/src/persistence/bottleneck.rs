//! Exact bottleneck distance and bounded-cost matchings between barcodes.
//!
//! Finite bars are matched to finite bars or to the diagonal (cost: half the
//! length). Infinite bars only match infinite bars, at cost `|b - b'|`.
//! The optimal cost is one of finitely many candidate values, each tested
//! for feasibility with a perfect bipartite matching.

use num_traits::{Signed, Zero};

use super::{Bar, Barcode, Extended};
use crate::algebra::Scalar;

fn half_length(b: &Bar) -> Scalar {
    let d = b.death.finite().expect("finite bar");
    (d - &b.birth) / Scalar::from_integer(2.into())
}

fn linf(a: &Bar, b: &Bar) -> Scalar {
    let db = (&a.birth - &b.birth).abs();
    let dd = (a.death.finite().unwrap() - b.death.finite().unwrap()).abs();
    db.max(dd)
}

/// Which barcode an unmatched bar came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarMatching {
    pub pairs: Vec<(Bar, Bar)>,
    /// Bars sent to the diagonal.
    pub unmatched: Vec<(Bar, Side)>,
    /// The largest displacement actually used.
    pub cost: Scalar,
}

impl BarMatching {
    /// Partner in the right barcode of a bar from the left barcode.
    pub fn partner_of(&self, bar: &Bar) -> Option<&Bar> {
        self.pairs.iter().find(|(a, _)| a == bar).map(|(_, b)| b)
    }
}

struct Split<'a> {
    finite: Vec<&'a Bar>,
    infinite: Vec<&'a Bar>,
}

fn split(b: &Barcode, dim: usize) -> Split<'_> {
    let (infinite, finite) = b.in_dim(dim).into_iter().partition(|b| b.death.is_infinite());
    Split { finite, infinite }
}

/// Sorted pairing of infinite bars, optimal for the max displacement of births.
fn infinite_pairs<'a>(a: &[&'a Bar], b: &[&'a Bar]) -> Option<(Vec<(&'a Bar, &'a Bar)>, Scalar)> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.birth.cmp(&y.birth));
    b.sort_by(|x, y| x.birth.cmp(&y.birth));
    let cost = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (&x.birth - &y.birth).abs())
        .max()
        .unwrap_or_else(Scalar::zero);
    Some((a.into_iter().zip(b).collect(), cost))
}

/// Perfect matching on the augmented bipartite graph at threshold `eps`.
///
/// Left vertices: `a_0..a_{n-1}`, then diagonal copies of the right bars.
/// Right vertices: `b_0..b_{m-1}`, then diagonal copies of the left bars.
fn feasible_matching(a: &[&Bar], b: &[&Bar], eps: &Scalar) -> Option<Vec<usize>> {
    let (n, m) = (a.len(), b.len());
    let size = n + m;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if &linf(ai, bj) <= eps {
                adj[i].push(j);
            }
        }
        if &half_length(ai) <= eps {
            adj[i].push(m + i);
        }
    }
    for (j, bj) in b.iter().enumerate() {
        if &half_length(bj) <= eps {
            adj[n + j].push(j);
        }
        adj[n + j].extend((0..n).map(|i| m + i));
    }

    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_right[v].is_none_or(|w| augment(w, adj, seen, match_right)) {
                match_right[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut match_right: Vec<Option<usize>> = vec![None; size];
    for u in 0..size {
        let mut seen = vec![false; size];
        if !augment(u, &adj, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut match_left = vec![0; size];
    for (v, u) in match_right.iter().enumerate() {
        match_left[u.unwrap()] = v;
    }
    Some(match_left)
}

fn candidates(a: &[&Bar], b: &[&Bar]) -> Vec<Scalar> {
    let mut c = vec![Scalar::zero()];
    for x in a {
        c.push(half_length(x));
        for y in b {
            c.push(linf(x, y));
        }
    }
    c.extend(b.iter().map(|y| half_length(y)));
    c.sort();
    c.dedup();
    c
}

/// Bottleneck distance between the `dim` parts of two barcodes.
pub fn bottleneck_distance(b1: &Barcode, b2: &Barcode, dim: usize) -> Extended {
    let (s1, s2) = (split(b1, dim), split(b2, dim));
    let Some((_, inf_cost)) = infinite_pairs(&s1.infinite, &s2.infinite) else {
        return Extended::Infinity;
    };
    let cands = candidates(&s1.finite, &s2.finite);
    // feasibility is monotone in eps and the largest candidate always works
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible_matching(&s1.finite, &s2.finite, &cands[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Extended::Finite(cands[lo].clone().max(inf_cost))
}

/// A matching of the `dim` parts with every displacement at most `eps`,
/// or `None` if no such matching exists.
pub fn match_bars(b1: &Barcode, b2: &Barcode, eps: &Scalar, dim: usize) -> Option<BarMatching> {
    if eps.is_negative() {
        return None;
    }
    let (s1, s2) = (split(b1, dim), split(b2, dim));
    let (inf_pairs, inf_cost) = infinite_pairs(&s1.infinite, &s2.infinite)?;
    if &inf_cost > eps {
        return None;
    }
    let (a, b) = (&s1.finite, &s2.finite);
    let match_left = feasible_matching(a, b, eps)?;
    let mut pairs: Vec<(Bar, Bar)> = inf_pairs
        .into_iter()
        .map(|(x, y)| (x.clone(), y.clone()))
        .collect();
    let mut unmatched = Vec::new();
    let mut cost = inf_cost;
    for (i, bar) in a.iter().enumerate() {
        let v = match_left[i];
        if v < b.len() {
            cost = cost.max(linf(bar, b[v]));
            pairs.push(((*bar).clone(), b[v].clone()));
        } else {
            cost = cost.max(half_length(bar));
            unmatched.push(((*bar).clone(), Side::Left));
        }
    }
    for j in 0..b.len() {
        if match_left[a.len() + j] == j {
            cost = cost.max(half_length(b[j]));
            unmatched.push((b[j].clone(), Side::Right));
        }
    }
    Some(BarMatching {
        pairs,
        unmatched,
        cost,
    })
}
