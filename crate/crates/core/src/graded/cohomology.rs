use std::collections::BTreeMap;

use super::cdga::Cdga;
use super::module::DgModule;
use super::space::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::vector::Vector;

/// Cohomology of a finite cochain complex, with chosen cocycle
/// representatives and a coordinate map from cocycles to classes.
#[derive(Clone, Debug)]
pub struct Cohomology {
    space: GradedSpace,
    representatives: Vec<Vector>,
    complex: GradedSpace,
    differential: Vec<Vector>,
    /// Per degree: columns `[boundaries | representatives]` in complex
    /// coordinates, and the number of boundary columns.
    solvers: BTreeMap<i32, (Matrix, usize)>,
}

fn d_matrix(space: &GradedSpace, differential: &[Vector], deg: i32) -> Matrix {
    let src = space.in_degree(deg);
    let tgt = space.in_degree(deg + 1);
    let cols: Vec<Vec<Scalar>> = src.iter().map(|&i| differential[i].coords(tgt)).collect();
    Matrix::from_columns(tgt.len(), &cols)
}

impl Cohomology {
    pub fn of(space: &GradedSpace, differential: &[Vector]) -> Cohomology {
        let mut names = Vec::new();
        let mut reps = Vec::new();
        let mut solvers = BTreeMap::new();
        for deg in space.support() {
            let idx = space.in_degree(deg);
            let cocycles = d_matrix(space, differential, deg).kernel();
            let (_, boundaries) = d_matrix(space, differential, deg - 1).kernel_and_image();
            let nb = boundaries.len();
            let mut cols = boundaries.clone();
            cols.extend(cocycles.iter().cloned());
            let red = Matrix::from_columns(idx.len(), &cols).reduce();
            let chosen: Vec<Vec<Scalar>> = red
                .pivot_columns
                .iter()
                .filter(|&&p| p >= nb)
                .map(|&p| cols[p].clone())
                .collect();
            let mut solver_cols = boundaries;
            for c in &chosen {
                let v = Vector::from_coords(idx, c);
                names.push((format!("[{}]", space.format(&v)), deg));
                reps.push(v);
                solver_cols.push(c.clone());
            }
            solvers.insert(deg, (Matrix::from_columns(idx.len(), &solver_cols), nb));
        }
        Cohomology {
            space: GradedSpace::new(names).expect("representatives are distinct"),
            representatives: reps,
            complex: space.clone(),
            differential: differential.to_vec(),
            solvers,
        }
    }

    /// The cohomology as a graded space; basis element `i` is the class of
    /// `representative(i)`.
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn dim_in_degree(&self, deg: i32) -> usize {
        self.space.dim_in_degree(deg)
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.space.dims()
    }

    pub fn representative(&self, i: usize) -> &Vector {
        &self.representatives[i]
    }

    pub fn representatives(&self) -> &[Vector] {
        &self.representatives
    }

    /// Betti numbers `b_0 ..= b_max`.
    pub fn betti(&self, max_degree: i32) -> Vec<usize> {
        (0..=max_degree).map(|d| self.dim_in_degree(d)).collect()
    }

    /// A cocycle lifting the class with H-coordinates `class`.
    pub fn lift(&self, class: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in class.iter() {
            out.add_scaled(&self.representatives[i], c);
        }
        out
    }

    fn d(&self, x: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.differential[i], c);
        }
        out
    }

    /// Coordinates of the class of cocycle `z` in the H-basis.
    pub fn class_of(&self, z: &Vector) -> Result<Vector> {
        if !self.d(z).is_zero() {
            return Err(Error::NotACocycle);
        }
        let mut by_degree: BTreeMap<i32, Vector> = BTreeMap::new();
        for (i, c) in z.iter() {
            by_degree
                .entry(self.complex.degree(i))
                .or_default()
                .add_term(i, c.clone());
        }
        let mut out = Vector::zero();
        for (deg, part) in by_degree {
            let (m, nb) = &self.solvers[&deg];
            let coords = part.coords(self.complex.in_degree(deg));
            let x = m
                .solve(&coords)
                .ok_or_else(|| Error::Internal("cocycle outside Z = B ⊕ H".into()))?;
            let h = self.space.in_degree(deg);
            for (k, &hi) in h.iter().enumerate() {
                out.add_term(hi, x[nb + k].clone());
            }
        }
        Ok(out)
    }

    pub fn is_exact(&self, z: &Vector) -> Result<bool> {
        Ok(self.class_of(z)?.is_zero())
    }

    /// Some `x` with `dx = z`, if `z` is a coboundary of degree `deg`.
    pub fn primitive(&self, z: &Vector, deg: i32) -> Option<Vector> {
        if !self.complex.is_homogeneous(z, deg) {
            return None;
        }
        let m = d_matrix(&self.complex, &self.differential, deg - 1);
        let x = m.solve(&z.coords(self.complex.in_degree(deg)))?;
        Some(Vector::from_coords(self.complex.in_degree(deg - 1), &x))
    }

    /// Matrix of the map induced on `H^deg` by a chain map `f` into the
    /// complex of `target`.
    pub fn induced_matrix(
        &self,
        target: &Cohomology,
        f: impl Fn(&Vector) -> Vector,
        deg: i32,
    ) -> Result<Matrix> {
        self.induced_matrix_between(target, f, deg, deg)
    }

    /// Like [`Cohomology::induced_matrix`] for a map raising degree by
    /// `target_deg - deg`, such as a connecting map.
    pub fn induced_matrix_between(
        &self,
        target: &Cohomology,
        f: impl Fn(&Vector) -> Vector,
        deg: i32,
        target_deg: i32,
    ) -> Result<Matrix> {
        let src = self.space.in_degree(deg);
        let tgt = target.space.in_degree(target_deg);
        let mut cols = Vec::with_capacity(src.len());
        for &i in src {
            let c = target.class_of(&f(&self.representatives[i]))?;
            cols.push(c.coords(tgt));
        }
        Ok(Matrix::from_columns(tgt.len(), &cols))
    }

    /// Euler characteristic `Σ (-1)^i dim H^i`.
    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(&self.space)
    }
}

pub fn euler_characteristic(space: &GradedSpace) -> i64 {
    space
        .dims()
        .into_iter()
        .map(|(d, n)| if d.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

impl Cdga {
    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of(self.space(), self.differential_table())
    }
}

impl DgModule {
    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of(self.space(), self.differential_table())
    }
}
