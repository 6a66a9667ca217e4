use std::sync::Arc;

use super::cdga::Cdga;
use super::module::{same_base, DgModule};
use super::report::{axiom, Report};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::vector::Vector;

/// A degree-0 map of dgmodules over the same base, given by the image of
/// each source basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct DgMorphism {
    source: DgModule,
    target: DgModule,
    images: Vec<Vector>,
}

impl DgMorphism {
    pub fn from_images(source: DgModule, target: DgModule, images: Vec<Vector>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::Invalid("one image per source basis element expected".into()));
        }
        Ok(DgMorphism {
            source,
            target,
            images,
        })
    }

    /// Builds the morphism and rejects it unless [`DgMorphism::verify`] passes.
    pub fn new(source: DgModule, target: DgModule, images: Vec<Vector>) -> Result<Self> {
        Self::from_images(source, target, images)?.checked()
    }

    pub fn checked(self) -> Result<Self> {
        let r = self.verify();
        if r.is_valid() {
            Ok(self)
        } else {
            Err(Error::NotAMorphism(r.to_string()))
        }
    }

    pub fn identity(m: &DgModule) -> Self {
        DgMorphism {
            source: m.clone(),
            target: m.clone(),
            images: (0..m.dim()).map(Vector::basis).collect(),
        }
    }

    pub fn zero(source: &DgModule, target: &DgModule) -> Self {
        DgMorphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![Vector::zero(); source.dim()],
        }
    }

    pub fn source(&self) -> &DgModule {
        &self.source
    }

    pub fn target(&self) -> &DgModule {
        &self.target
    }

    pub fn image(&self, i: usize) -> &Vector {
        &self.images[i]
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        apply_images(&self.images, x)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Vector::is_zero)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DgMorphism) -> Result<DgMorphism> {
        if first.target.space() != self.source.space() {
            return Err(Error::Mismatch("morphisms do not compose".into()));
        }
        Ok(DgMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|v| self.apply(v)).collect(),
        })
    }

    /// Lists violations of degree preservation, the chain-map identity, and
    /// linearity over the base algebra.
    pub fn verify(&self) -> Report {
        let mut r = Report::default();
        let (s, t) = (&self.source, &self.target);
        if !same_base(s.base(), t.base()) {
            r.record(axiom::BASE, &[]);
            return r;
        }
        let base = s.base();
        for i in 0..s.dim() {
            let nm = s.space().name(i);
            if !t.space().is_homogeneous(&self.images[i], s.space().degree(i)) {
                r.record(axiom::DEGREE, &[nm]);
            }
            if self.apply(s.d_basis(i)) != t.d(&self.images[i]) {
                r.record(axiom::CHAIN_MAP, &[nm]);
            }
            for a in 0..base.dim() {
                let lhs = self.apply(s.act_basis(a, i));
                let rhs = t.act(&Vector::basis(a), &self.images[i]);
                if lhs != rhs {
                    r.record(axiom::LINEARITY, &[base.space().name(a), nm]);
                }
            }
        }
        r
    }

    /// Matrix of the map from degree `deg` of the source to degree `deg` of
    /// the target, in the `in_degree` orderings.
    pub fn matrix_in_degree(&self, deg: i32) -> Matrix {
        let src = self.source.space().in_degree(deg);
        let tgt = self.target.space().in_degree(deg);
        let cols: Vec<Vec<Scalar>> = src.iter().map(|&i| self.images[i].coords(tgt)).collect();
        Matrix::from_columns(tgt.len(), &cols)
    }

    pub fn is_surjective(&self) -> bool {
        self.target
            .space()
            .support()
            .into_iter()
            .all(|d| self.matrix_in_degree(d).rank() == self.target.space().dim_in_degree(d))
    }

    pub fn is_injective(&self) -> bool {
        self.source
            .space()
            .support()
            .into_iter()
            .all(|d| self.matrix_in_degree(d).rank() == self.source.space().dim_in_degree(d))
    }

    /// Homogeneous basis of the kernel, degree by degree.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        kernel_basis(self.source.space(), |d| self.matrix_in_degree(d))
    }

    /// Homogeneous basis of the image, degree by degree.
    pub fn image_basis(&self) -> Vec<Vector> {
        let mut out = Vec::new();
        for deg in self.source.space().support() {
            let (_, img) = self.matrix_in_degree(deg).kernel_and_image();
            let idx = self.target.space().in_degree(deg);
            out.extend(img.iter().map(|c| Vector::from_coords(idx, c)));
        }
        out
    }
}

pub(crate) fn apply_images(images: &[Vector], x: &Vector) -> Vector {
    let mut out = Vector::zero();
    for (i, c) in x.iter() {
        out.add_scaled(&images[i], c);
    }
    out
}

pub(crate) fn kernel_basis(
    space: &super::GradedSpace,
    matrix: impl Fn(i32) -> Matrix,
) -> Vec<Vector> {
    let mut out = Vec::new();
    for deg in space.support() {
        let idx = space.in_degree(deg);
        for k in matrix(deg).kernel() {
            out.push(Vector::from_coords(idx, &k));
        }
    }
    out
}

/// A CDGA morphism given on basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct CdgaMorphism {
    source: Arc<Cdga>,
    target: Arc<Cdga>,
    images: Vec<Vector>,
}

impl CdgaMorphism {
    pub fn from_images(source: Arc<Cdga>, target: Arc<Cdga>, images: Vec<Vector>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::Invalid("one image per source basis element expected".into()));
        }
        Ok(CdgaMorphism {
            source,
            target,
            images,
        })
    }

    pub fn new(source: Arc<Cdga>, target: Arc<Cdga>, images: Vec<Vector>) -> Result<Self> {
        let f = Self::from_images(source, target, images)?;
        let r = f.verify();
        if r.is_valid() {
            Ok(f)
        } else {
            Err(Error::NotAMorphism(r.to_string()))
        }
    }

    pub fn identity(a: &Arc<Cdga>) -> Self {
        CdgaMorphism {
            source: Arc::clone(a),
            target: Arc::clone(a),
            images: (0..a.dim()).map(Vector::basis).collect(),
        }
    }

    pub fn source(&self) -> &Arc<Cdga> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Cdga> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &Vector {
        &self.images[i]
    }

    pub fn images(&self) -> &[Vector] {
        &self.images
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        apply_images(&self.images, x)
    }

    pub fn after(&self, first: &CdgaMorphism) -> Result<CdgaMorphism> {
        if !same_base(first.target(), &self.source) {
            return Err(Error::Mismatch("morphisms do not compose".into()));
        }
        Ok(CdgaMorphism {
            source: Arc::clone(&first.source),
            target: Arc::clone(&self.target),
            images: first.images.iter().map(|v| self.apply(v)).collect(),
        })
    }

    /// Degree, chain-map, unit and multiplicativity checks.
    pub fn verify(&self) -> Report {
        let mut r = Report::default();
        let (s, t) = (&self.source, &self.target);
        let n = s.dim();
        for i in 0..n {
            let nm = s.space().name(i);
            if !t.space().is_homogeneous(&self.images[i], s.degree(i)) {
                r.record(axiom::DEGREE, &[nm]);
            }
            if self.apply(s.d_basis(i)) != t.d(&self.images[i]) {
                r.record(axiom::CHAIN_MAP, &[nm]);
            }
        }
        if self.apply(s.unit()) != *t.unit() {
            r.record(axiom::UNIT, &["f(1) differs from 1"]);
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply(s.mul_basis(i, j));
                let rhs = t.mul(&self.images[i], &self.images[j]);
                if lhs != rhs {
                    r.record(axiom::MULTIPLICATIVE, &[s.space().name(i), s.space().name(j)]);
                }
            }
        }
        r
    }

    pub fn matrix_in_degree(&self, deg: i32) -> Matrix {
        let src = self.source.space().in_degree(deg);
        let tgt = self.target.space().in_degree(deg);
        let cols: Vec<Vec<Scalar>> = src.iter().map(|&i| self.images[i].coords(tgt)).collect();
        Matrix::from_columns(tgt.len(), &cols)
    }

    pub fn is_surjective(&self) -> bool {
        self.target
            .space()
            .support()
            .into_iter()
            .all(|d| self.matrix_in_degree(d).rank() == self.target.space().dim_in_degree(d))
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        kernel_basis(self.source.space(), |d| self.matrix_in_degree(d))
    }

    /// The underlying map of `source`-dgmodules, with the target viewed as
    /// a `source`-module by restriction.
    pub fn as_module_morphism(&self) -> Result<DgMorphism> {
        let src = self.source.as_module();
        let tgt = self.target.as_module().restrict(self)?;
        DgMorphism::from_images(src, tgt, self.images.clone())
    }
}
