use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::vector::Vector;

/// A finite-dimensional graded ℚ-vector space with a named, homogeneous basis.
///
/// Basis elements are stored in construction order; `in_degree` gives the
/// indices living in a given degree, in that same order.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    names: Vec<String>,
    degrees: Vec<i32>,
    by_degree: BTreeMap<i32, Vec<usize>>,
    lookup: HashMap<String, usize>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.degrees == other.degrees
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(basis: Vec<(String, i32)>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(basis.len());
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut names = Vec::with_capacity(basis.len());
        let mut degrees = Vec::with_capacity(basis.len());
        for (i, (name, deg)) in basis.into_iter().enumerate() {
            if lookup.insert(name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis name `{name}`")));
            }
            by_degree.entry(deg).or_default().push(i);
            names.push(name);
            degrees.push(deg);
        }
        Ok(GradedSpace {
            names,
            degrees,
            by_degree,
            lookup,
        })
    }

    /// The ground field ℚ concentrated in degree `deg`.
    pub fn line(name: &str, deg: i32) -> Self {
        Self::new(vec![(name.to_string(), deg)]).expect("single name is unique")
    }

    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty basis")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn in_degree(&self, deg: i32) -> &[usize] {
        self.by_degree.get(&deg).map_or(&[], Vec::as_slice)
    }

    pub fn dim_in_degree(&self, deg: i32) -> usize {
        self.in_degree(deg).len()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.by_degree.keys().copied().collect()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.by_degree.iter().map(|(&d, v)| (d, v.len())).collect()
    }

    pub fn top_degree(&self) -> Option<i32> {
        self.by_degree.keys().next_back().copied()
    }

    pub fn bottom_degree(&self) -> Option<i32> {
        self.by_degree.keys().next().copied()
    }

    /// The common degree of the terms of `v`; `None` for zero or
    /// inhomogeneous vectors.
    pub fn degree_of(&self, v: &Vector) -> Option<i32> {
        let mut it = v.support().map(|i| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, v: &Vector, deg: i32) -> bool {
        v.support().all(|i| self.degrees[i] == deg)
    }

    /// Coordinates of `v` in degree `deg`, ordered as `in_degree(deg)`.
    pub fn coords_in_degree(&self, v: &Vector, deg: i32) -> Vec<Scalar> {
        v.coords(self.in_degree(deg))
    }

    pub fn from_degree_coords(&self, deg: i32, coords: &[Scalar]) -> Vector {
        Vector::from_coords(self.in_degree(deg), coords)
    }

    pub fn basis_vector(&self, name: &str) -> Option<Vector> {
        self.index_of(name).map(Vector::basis)
    }

    /// Renders `v` as `2 a - 1/3 b⊗c`.
    pub fn format(&self, v: &Vector) -> String {
        use crate::linalg::fmt_scalar;
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in v.iter().enumerate() {
            let neg = crate::linalg::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs != num::One::one() {
                out.push_str(&fmt_scalar(&abs));
                out.push(' ');
            }
            out.push_str(&self.names[i]);
        }
        out
    }

    /// Shifts every degree by `-k` and renames basis elements through `rename`.
    pub fn shifted(&self, k: i32, rename: impl Fn(&str) -> String) -> GradedSpace {
        GradedSpace::new(
            self.names
                .iter()
                .zip(&self.degrees)
                .map(|(n, &d)| (rename(n), d - k))
                .collect(),
        )
        .expect("renaming is injective")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_bookkeeping() {
        let s = GradedSpace::new(vec![
            ("1".into(), 0),
            ("x".into(), 4),
            ("y".into(), 4),
        ])
        .unwrap();
        assert_eq!(s.in_degree(4), &[1, 2]);
        assert_eq!(s.support(), vec![0, 4]);
        assert_eq!(s.top_degree(), Some(4));
        assert_eq!(s.degree_of(&(&Vector::basis(1) + &Vector::basis(2))), Some(4));
        assert_eq!(s.degree_of(&(&Vector::basis(0) + &Vector::basis(2))), None);
    }

    #[test]
    fn rejects_duplicate_names() {
        assert!(GradedSpace::new(vec![("a".into(), 0), ("a".into(), 1)]).is_err());
    }
}
