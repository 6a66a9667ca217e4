use std::collections::BTreeMap;
use std::sync::Arc;

use super::cdga::Cdga;
use super::module::DgModule;
use super::morphism::{CdgaMorphism, DgMorphism};
use super::space::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{complement_indices, Matrix, Scalar};
use crate::vector::Vector;

/// A quotient `V / S` of a graded space by a graded subspace.
///
/// Coset representatives are original basis vectors, chosen with
/// [`complement_indices`], so the quotient basis is a subset of the
/// original basis and keeps its names.
#[derive(Clone, Debug)]
pub struct Quotient {
    original: GradedSpace,
    space: GradedSpace,
    reps: Vec<usize>,
    sub_basis: Vec<Vector>,
    /// Per degree: inverse of `[reps | sub]` and the number of reps.
    inverses: BTreeMap<i32, (Matrix, usize)>,
}

impl Quotient {
    /// `sub` may be any homogeneous spanning set of the subspace.
    pub fn new(space: &GradedSpace, sub: &[Vector]) -> Result<Quotient> {
        let mut by_degree: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
        for v in sub {
            if v.is_zero() {
                continue;
            }
            let deg = space
                .degree_of(v)
                .ok_or_else(|| Error::Invalid("subspace generator is not homogeneous".into()))?;
            by_degree
                .entry(deg)
                .or_default()
                .push(v.coords(space.in_degree(deg)));
        }
        let mut reps = Vec::new();
        let mut sub_basis = Vec::new();
        let mut inverses = BTreeMap::new();
        for deg in space.support() {
            let idx = space.in_degree(deg);
            let gens = by_degree.remove(&deg).unwrap_or_default();
            let (_, basis) = Matrix::from_columns(idx.len(), &gens).kernel_and_image();
            let comp = complement_indices(&basis, idx.len())?;
            let mut cols: Vec<Vec<Scalar>> = comp
                .iter()
                .map(|&k| crate::linalg::unit_vector(idx.len(), k))
                .collect();
            cols.extend(basis.iter().cloned());
            let inv = Matrix::from_columns(idx.len(), &cols)
                .inverse()
                .ok_or_else(|| Error::Internal("complement does not span".into()))?;
            inverses.insert(deg, (inv, comp.len()));
            reps.extend(comp.iter().map(|&k| idx[k]));
            sub_basis.extend(basis.iter().map(|c| Vector::from_coords(idx, c)));
        }
        reps.sort_by_key(|&i| (space.degree(i), i));
        let q = GradedSpace::new(
            reps.iter()
                .map(|&i| (space.name(i).to_string(), space.degree(i)))
                .collect(),
        )?;
        Ok(Quotient {
            original: space.clone(),
            space: q,
            reps,
            sub_basis,
            inverses,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    /// Original basis index of quotient basis element `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.reps[i]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// A basis of the subspace being divided out.
    pub fn sub_basis(&self) -> &[Vector] {
        &self.sub_basis
    }

    /// Image of `v` in the quotient, in quotient coordinates.
    pub fn project(&self, v: &Vector) -> Vector {
        let mut by_degree: BTreeMap<i32, Vector> = BTreeMap::new();
        for (i, c) in v.iter() {
            by_degree
                .entry(self.original.degree(i))
                .or_default()
                .add_term(i, c.clone());
        }
        let mut out = Vector::zero();
        for (deg, part) in by_degree {
            let (inv, nreps) = &self.inverses[&deg];
            let x = inv.apply(&part.coords(self.original.in_degree(deg)));
            let q = self.space.in_degree(deg);
            for k in 0..*nreps {
                out.add_term(q[k], x[k].clone());
            }
        }
        out
    }

    /// The representative of a quotient element, as an original vector.
    pub fn lift(&self, v: &Vector) -> Vector {
        v.reindex(|i| self.reps[i])
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.project(v).is_zero()
    }
}

impl Cdga {
    /// `A / I` for a differential ideal `I` given by a spanning set.
    pub fn quotient(self: &Arc<Self>, ideal: &[Vector]) -> Result<(Arc<Cdga>, CdgaMorphism, Quotient)> {
        let q = Quotient::new(self.space(), ideal)?;
        for v in q.sub_basis() {
            if !q.contains(&self.d(v)) {
                return Err(Error::NotAnIdeal(format!(
                    "d({}) leaves the ideal",
                    self.space().format(v)
                )));
            }
            for b in 0..self.dim() {
                if !q.contains(&self.mul(&Vector::basis(b), v)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{}·({}) leaves the ideal",
                        self.space().name(b),
                        self.space().format(v)
                    )));
                }
            }
        }
        let n = q.space().dim();
        let mut product = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                product.push(q.project(self.mul_basis(q.reps[i], q.reps[j])));
            }
        }
        let differential = (0..n).map(|i| q.project(self.d_basis(q.reps[i]))).collect();
        let quotient = Arc::new(Cdga::from_tables(
            q.space().clone(),
            q.project(self.unit()),
            product,
            differential,
        )?);
        let images = (0..self.dim()).map(|i| q.project(&Vector::basis(i))).collect();
        let pi = CdgaMorphism::from_images(Arc::clone(self), Arc::clone(&quotient), images)?;
        Ok((quotient, pi, q))
    }
}

impl DgModule {
    /// `M / S` for a sub-dgmodule `S` given by a spanning set.
    pub fn quotient(&self, sub: &[Vector]) -> Result<(DgModule, DgMorphism, Quotient)> {
        let q = Quotient::new(self.space(), sub)?;
        let base = self.base();
        for v in q.sub_basis() {
            if !q.contains(&self.d(v)) {
                return Err(Error::NotAModule(format!(
                    "d({}) leaves the submodule",
                    self.space().format(v)
                )));
            }
            for a in 0..base.dim() {
                if !q.contains(&self.act(&Vector::basis(a), v)) {
                    return Err(Error::NotAModule(format!(
                        "{}·({}) leaves the submodule",
                        base.space().name(a),
                        self.space().format(v)
                    )));
                }
            }
        }
        let n = q.space().dim();
        let differential = (0..n).map(|i| q.project(self.d_basis(q.reps[i]))).collect();
        let mut action = Vec::with_capacity(base.dim() * n);
        for a in 0..base.dim() {
            for i in 0..n {
                action.push(q.project(self.act_basis(a, q.reps[i])));
            }
        }
        let quotient =
            DgModule::from_tables(Arc::clone(base), q.space().clone(), differential, action)?;
        let images = (0..self.dim()).map(|i| q.project(&Vector::basis(i))).collect();
        let pi = DgMorphism::from_images(self.clone(), quotient.clone(), images)?;
        Ok((quotient, pi, q))
    }
}
