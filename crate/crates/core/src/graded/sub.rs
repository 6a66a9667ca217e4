use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::DgModule;
use super::morphism::DgMorphism;
use super::space::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::vector::Vector;

/// A graded subspace with a chosen homogeneous basis and a way to read off
/// coordinates in that basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: GradedSpace,
    space: GradedSpace,
    basis: Vec<Vector>,
    solvers: BTreeMap<i32, Matrix>,
}

fn element_name(ambient: &GradedSpace, v: &Vector) -> String {
    let mut terms = v.iter();
    if let (Some((i, c)), None) = (terms.next(), terms.next()) {
        if num::One::is_one(c) {
            return ambient.name(i).to_string();
        }
    }
    format!("⟨{}⟩", ambient.format(v))
}

impl Subspace {
    /// `spanning` may contain dependent or zero vectors; each must be
    /// homogeneous.
    pub fn new(ambient: &GradedSpace, spanning: &[Vector]) -> Result<Subspace> {
        let mut by_degree: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
        for v in spanning.iter().filter(|v| !v.is_zero()) {
            let deg = ambient
                .degree_of(v)
                .ok_or_else(|| Error::Invalid("subspace generator is not homogeneous".into()))?;
            by_degree
                .entry(deg)
                .or_default()
                .push(v.coords(ambient.in_degree(deg)));
        }
        let mut basis = Vec::new();
        let mut names = Vec::new();
        let mut solvers = BTreeMap::new();
        for (deg, cols) in by_degree {
            let idx = ambient.in_degree(deg);
            let (_, img) = Matrix::from_columns(idx.len(), &cols).kernel_and_image();
            for c in &img {
                let v = Vector::from_coords(idx, c);
                names.push((element_name(ambient, &v), deg));
                basis.push(v);
            }
            solvers.insert(deg, Matrix::from_columns(idx.len(), &img));
        }
        Ok(Subspace {
            ambient: ambient.clone(),
            space: GradedSpace::new(names)?,
            basis,
            solvers,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the chosen basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coords(&self, v: &Vector) -> Option<Vector> {
        let mut by_degree: BTreeMap<i32, Vector> = BTreeMap::new();
        for (i, c) in v.iter() {
            by_degree
                .entry(self.ambient.degree(i))
                .or_default()
                .add_term(i, c.clone());
        }
        let mut out = Vector::zero();
        for (deg, part) in by_degree {
            let m = self.solvers.get(&deg)?;
            let x = m.solve(&part.coords(self.ambient.in_degree(deg)))?;
            for (&k, xk) in self.space.in_degree(deg).iter().zip(x) {
                out.add_term(k, xk);
            }
        }
        Some(out)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.coords(v).is_some()
    }

    /// The ambient vector with coordinates `c`.
    pub fn include(&self, c: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, x) in c.iter() {
            out.add_scaled(&self.basis[i], x);
        }
        out
    }
}

impl DgModule {
    /// The sub-dgmodule spanned by `spanning`, with its inclusion.
    pub fn submodule(&self, spanning: &[Vector]) -> Result<(DgModule, DgMorphism, Subspace)> {
        let sub = Subspace::new(self.space(), spanning)?;
        let base = self.base();
        let escape = |what: String| Error::NotAModule(format!("{what} leaves the submodule"));
        let mut differential = Vec::with_capacity(sub.dim());
        for v in sub.basis() {
            let dv = self.d(v);
            differential.push(
                sub.coords(&dv)
                    .ok_or_else(|| escape(format!("d({})", self.space().format(v))))?,
            );
        }
        let mut action = Vec::with_capacity(base.dim() * sub.dim());
        for a in 0..base.dim() {
            for v in sub.basis() {
                let av = self.act(&Vector::basis(a), v);
                action.push(sub.coords(&av).ok_or_else(|| {
                    escape(format!("{}·({})", base.space().name(a), self.space().format(v)))
                })?);
            }
        }
        let module =
            DgModule::from_tables(Arc::clone(base), sub.space().clone(), differential, action)?;
        let inclusion = DgMorphism::from_images(module.clone(), self.clone(), sub.basis().to_vec())?;
        Ok((module, inclusion, sub))
    }
}
