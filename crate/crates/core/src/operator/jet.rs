use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::operator::polynomial::Polynomial;
use crate::rational::Rational;

/// Partial derivatives of a function at a point up to a fixed order. On flat
/// space these are the components of the symmetric derivative tensors. Keys
/// are sorted 0-based index lists; the empty key holds `f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    dim: usize,
    order: usize,
    point: Vec<Rational>,
    values: BTreeMap<Vec<usize>, Rational>,
}

impl Jet {
    pub fn of(f: &Polynomial, x: &[Rational], order: usize) -> Result<Self> {
        let dim = f.dim();
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: x.len(),
            });
        }
        let mut values = BTreeMap::new();
        let mut layer: Vec<(Vec<usize>, Polynomial)> = vec![(Vec::new(), f.clone())];
        for r in 0..=order {
            for (key, poly) in &layer {
                values.insert(key.clone(), poly.eval(x)?);
            }
            if r == order {
                break;
            }
            let mut next = Vec::new();
            for (key, poly) in &layer {
                let from = key.last().copied().unwrap_or(0);
                for i in from..dim {
                    let mut k = key.clone();
                    k.push(i);
                    next.push((k, poly.derivative(i)));
                }
            }
            layer = next;
        }
        Ok(Self {
            dim,
            order,
            point: x.to_vec(),
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn value(&self) -> &Rational {
        &self.values[&Vec::new()]
    }

    /// `∂_{i_1 … i_r} f(x)` for 0-based indices in any order.
    pub fn get(&self, indices: &[usize]) -> Option<&Rational> {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.values.get(&key)
    }

    /// Lookup for a key that is already sorted.
    pub(crate) fn get_sorted(&self, key: &[usize]) -> &Rational {
        &self.values[key]
    }
}
