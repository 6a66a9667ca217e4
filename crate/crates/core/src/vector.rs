use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use num::{One, Zero};

use crate::linalg::Scalar;

/// A sparse linear combination of basis indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector(BTreeMap<usize, Scalar>);

impl Vector {
    pub fn zero() -> Self {
        Vector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Scalar::one())
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_dense(coords: &[Scalar]) -> Self {
        Vector(
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        )
    }

    /// Sparse vector supported on `indices`, with `coords[k]` at `indices[k]`.
    pub fn from_coords(indices: &[usize], coords: &[Scalar]) -> Self {
        let mut v = Self::zero();
        for (&i, c) in indices.iter().zip(coords) {
            v.add_term(i, c.clone());
        }
        v
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }

    /// Coordinates at `indices`, in order.
    pub fn coords(&self, indices: &[usize]) -> Vec<Scalar> {
        indices.iter().map(|i| self.get(*i)).collect()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, x * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector(self.0.iter().map(|(&i, x)| (i, x * c)).collect())
    }

    /// Re-indexes every term through `f`.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> Vector {
        let mut v = Vector::zero();
        for (i, c) in self.iter() {
            v.add_term(f(i), c.clone());
        }
        v
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        for (i, c) in rhs.iter() {
            self.add_term(i, c.clone());
        }
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|(&i, c)| (i, -c.clone())).collect())
    }
}

impl FromIterator<(usize, Scalar)> for Vector {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = Vector::zero();
        for (i, c) in iter {
            v.add_term(i, c);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;

    #[test]
    fn cancellation_removes_entries() {
        let mut v = Vector::term(2, scalar(3));
        v.add_term(2, scalar(-3));
        assert!(v.is_zero());
        let w = &Vector::basis(1) - &Vector::basis(1);
        assert!(w.is_zero());
    }

    #[test]
    fn dense_round_trip() {
        let d = vec![scalar(0), scalar(5), scalar(0), scalar(-1)];
        assert_eq!(Vector::from_dense(&d).to_dense(4), d);
    }
}
