use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use super::{Filtration, Simplex, SimplicialComplex};
use crate::algebra::Scalar;

/// A rational number or `+inf`. The derived order puts `Infinity` last.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(Scalar),
    Infinity,
}

impl Extended {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Extended::Finite(q) => Some(q),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(q) => write!(f, "{q}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

/// A half-open interval `[birth, death)` in homological dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub dim: usize,
    pub birth: Scalar,
    pub death: Extended,
}

impl Bar {
    pub fn finite(dim: usize, birth: Scalar, death: Scalar) -> Self {
        Bar {
            dim,
            birth,
            death: Extended::Finite(death),
        }
    }

    pub fn infinite(dim: usize, birth: Scalar) -> Self {
        Bar {
            dim,
            birth,
            death: Extended::Infinity,
        }
    }

    pub fn length(&self) -> Extended {
        match &self.death {
            Extended::Finite(d) => Extended::Finite(d - &self.birth),
            Extended::Infinity => Extended::Infinity,
        }
    }

    pub fn is_alive_at(&self, t: &Scalar) -> bool {
        &self.birth <= t
            && match &self.death {
                Extended::Finite(d) => t < d,
                Extended::Infinity => true,
            }
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.dim, self.birth, self.death)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Barcode {
    bars: Vec<Bar>,
}

impl Barcode {
    /// Drops empty bars and sorts by `(dim, birth, death)`.
    pub fn new(mut bars: Vec<Bar>) -> Self {
        bars.retain(|b| b.death != Extended::Finite(b.birth.clone()));
        bars.sort();
        Barcode { bars }
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn in_dim(&self, dim: usize) -> Vec<&Bar> {
        self.bars.iter().filter(|b| b.dim == dim).collect()
    }

    pub fn betti_at(&self, dim: usize, t: &Scalar) -> usize {
        self.bars
            .iter()
            .filter(|b| b.dim == dim && b.is_alive_at(t))
            .count()
    }

    /// The longest finite bar in `dim`, earliest birth on ties.
    pub fn prominent(&self, dim: usize) -> Option<&Bar> {
        self.bars
            .iter()
            .filter(|b| b.dim == dim && !b.death.is_infinite())
            .max_by(|a, b| a.length().cmp(&b.length()).then_with(|| b.birth.cmp(&a.birth)))
    }

    /// One `<dim> <birth> <death>` line per bar, sorted by `(dim, birth, death)`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.bars {
            out.push_str(&b.to_string());
            out.push('\n');
        }
        out
    }
}

/// Sort order of boundary-matrix columns: entry time, then dimension, then vertices.
pub(crate) fn column_order<'a>(k: &'a SimplicialComplex, f: &Filtration) -> Vec<&'a Simplex> {
    let mut order: Vec<&Simplex> = k.simplices().collect();
    order.sort_by(|a, b| {
        f.time(a)
            .cmp(&f.time(b))
            .then_with(|| a.dim().cmp(&b.dim()))
            .then_with(|| a.cmp(b))
    });
    order
}

type Column = BTreeMap<usize, Scalar>;

/// Persistence barcode over the rationals by left-to-right column reduction.
pub fn compute_barcode(k: &SimplicialComplex, f: &Filtration) -> Barcode {
    let order = column_order(k, f);
    let position: HashMap<&Simplex, usize> = order.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut reduced: Vec<Column> = Vec::with_capacity(order.len());
    let mut owner_of_low: HashMap<usize, usize> = HashMap::new();
    let mut pairs = Vec::new();

    for (j, s) in order.iter().enumerate() {
        let mut col: Column = Column::new();
        for (i, face) in s.facets().iter().enumerate() {
            let sign = if i % 2 == 0 { Scalar::from_integer(1.into()) } else { Scalar::from_integer((-1).into()) };
            col.insert(position[face], sign);
        }
        while let Some((&low, pivot)) = col.last_key_value() {
            let Some(&i) = owner_of_low.get(&low) else { break };
            let factor = pivot / &reduced[i][&low];
            for (row, v) in &reduced[i] {
                let entry = col.entry(*row).or_insert_with(Scalar::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    col.remove(row);
                }
            }
        }
        if let Some((&low, _)) = col.last_key_value() {
            owner_of_low.insert(low, j);
            pairs.push((low, j));
        }
        reduced.push(col);
    }

    let time = |i: usize| f.time(order[i]).expect("filtration covers the complex").clone();
    let mut bars = Vec::new();
    for &(birth, death) in &pairs {
        bars.push(Bar::finite(order[birth].dim(), time(birth), time(death)));
    }
    for (i, col) in reduced.iter().enumerate() {
        if col.is_empty() && !owner_of_low.contains_key(&i) {
            bars.push(Bar::infinite(order[i].dim(), time(i)));
        }
    }
    Barcode::new(bars)
}
