use std::sync::Arc;

use super::cdga::Cdga;
use super::report::{axiom, Report};
use super::space::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::sign;
use crate::vector::Vector;

/// A finite-dimensional dgmodule over a CDGA.
///
/// `action[a * dim + m]` is the action of base basis element `a` on module
/// basis element `m`.
#[derive(Clone, Debug)]
pub struct DgModule {
    base: Arc<Cdga>,
    space: GradedSpace,
    differential: Vec<Vector>,
    action: Vec<Vector>,
}

/// Two base algebras are the same if they are the same allocation or have
/// identical structure constants.
pub fn same_base(a: &Arc<Cdga>, b: &Arc<Cdga>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for DgModule {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base)
            && self.space == other.space
            && self.differential == other.differential
            && self.action == other.action
    }
}

impl DgModule {
    pub fn from_tables(
        base: Arc<Cdga>,
        space: GradedSpace,
        differential: Vec<Vector>,
        action: Vec<Vector>,
    ) -> Result<Self> {
        if differential.len() != space.dim() || action.len() != base.dim() * space.dim() {
            return Err(Error::Invalid("dgmodule table sizes are inconsistent".into()));
        }
        Ok(DgModule {
            base,
            space,
            differential,
            action,
        })
    }

    pub fn new(
        base: Arc<Cdga>,
        space: GradedSpace,
        differential: Vec<Vector>,
        action: Vec<Vector>,
    ) -> Result<Self> {
        Self::from_tables(base, space, differential, action)?.checked()
    }

    pub fn checked(self) -> Result<Self> {
        let r = self.verify();
        if r.is_valid() {
            Ok(self)
        } else {
            Err(Error::NotAModule(r.to_string()))
        }
    }

    /// ℚ concentrated in degree `deg`, with positive-degree elements acting
    /// by zero. Requires a connected base.
    pub fn trivial(base: Arc<Cdga>, name: &str, deg: i32) -> Result<Self> {
        if !base.is_connected() {
            return Err(Error::NotConnected(
                "the trivial module needs an augmentation".into(),
            ));
        }
        let n = base.dim();
        let unit_coeff = base.unit().iter().next().map(|(_, c)| c.clone()).unwrap();
        let mut action = vec![Vector::zero(); n];
        for a in base.space().in_degree(0).iter().copied() {
            action[a] = Vector::term(0, unit_coeff.recip());
        }
        Self::new(base, GradedSpace::line(name, deg), vec![Vector::zero()], action)
    }

    /// The zero module.
    pub fn zero(base: Arc<Cdga>) -> Self {
        DgModule {
            base,
            space: GradedSpace::empty(),
            differential: Vec::new(),
            action: Vec::new(),
        }
    }

    pub fn base(&self) -> &Arc<Cdga> {
        &self.base
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn d_basis(&self, i: usize) -> &Vector {
        &self.differential[i]
    }

    pub fn d(&self, x: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.differential[i], c);
        }
        out
    }

    pub fn act_basis(&self, a: usize, m: usize) -> &Vector {
        &self.action[a * self.dim() + m]
    }

    pub fn act(&self, a: &Vector, m: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, x) in a.iter() {
            for (j, y) in m.iter() {
                out.add_scaled(self.act_basis(i, j), &(x * y));
            }
        }
        out
    }

    pub(crate) fn differential_table(&self) -> &[Vector] {
        &self.differential
    }

    /// Checks d² = 0, unit action, associativity of the action, and the
    /// module Leibniz rule `d(am) = (da)m + (-1)^|a| a(dm)`.
    pub fn verify(&self) -> Report {
        let mut r = Report::default();
        let sp = &self.space;
        let bs = self.base.space();
        let n = self.dim();
        let nb = self.base.dim();
        for m in 0..n {
            if !sp.is_homogeneous(&self.differential[m], sp.degree(m) + 1) {
                r.record(axiom::DEGREE, &["d", sp.name(m)]);
            }
            if !self.d(&self.differential[m]).is_zero() {
                r.record(axiom::D_SQUARED, &[sp.name(m)]);
            }
            let b = Vector::basis(m);
            if self.act(self.base.unit(), &b) != b {
                r.record(axiom::UNIT, &[sp.name(m)]);
            }
            for a in 0..nb {
                if !sp.is_homogeneous(self.act_basis(a, m), bs.degree(a) + sp.degree(m)) {
                    r.record(axiom::DEGREE, &[bs.name(a), sp.name(m)]);
                }
            }
        }
        for a in 0..nb {
            for b in 0..nb {
                let ab = self.base.mul_basis(a, b);
                for m in 0..n {
                    let bm = self.act_basis(b, m);
                    if ab.is_zero() && bm.is_zero() {
                        continue;
                    }
                    if self.act(ab, &Vector::basis(m)) != self.act(&Vector::basis(a), bm) {
                        r.record(axiom::ASSOCIATIVITY, &[bs.name(a), bs.name(b), sp.name(m)]);
                    }
                }
            }
        }
        for a in 0..nb {
            let av = Vector::basis(a);
            for m in 0..n {
                let lhs = self.d(self.act_basis(a, m));
                let mut rhs = self.act(self.base.d_basis(a), &Vector::basis(m));
                rhs.add_scaled(
                    &self.act(&av, &self.differential[m]),
                    &sign(bs.degree(a) as i64),
                );
                if lhs != rhs {
                    r.record(axiom::LEIBNIZ, &[bs.name(a), sp.name(m)]);
                }
            }
        }
        r
    }

    /// Restriction of scalars along a CDGA morphism `f: C → base`.
    pub fn restrict(&self, f: &super::CdgaMorphism) -> Result<DgModule> {
        if !same_base(f.target(), &self.base) {
            return Err(Error::Mismatch(
                "restriction morphism does not land in the base algebra".into(),
            ));
        }
        let src = f.source();
        let mut action = Vec::with_capacity(src.dim() * self.dim());
        for c in 0..src.dim() {
            let fc = f.image(c);
            for m in 0..self.dim() {
                action.push(self.act(fc, &Vector::basis(m)));
            }
        }
        DgModule::from_tables(
            Arc::clone(src),
            self.space.clone(),
            self.differential.clone(),
            action,
        )
    }

    /// Direct sum; basis is the concatenation of the summands' bases.
    pub fn direct_sum(parts: &[&DgModule]) -> Result<DgModule> {
        let Some(first) = parts.first() else {
            return Err(Error::Invalid("empty direct sum".into()));
        };
        let base = Arc::clone(&first.base);
        if parts.iter().any(|p| !same_base(&p.base, &base)) {
            return Err(Error::Mismatch("direct sum over different bases".into()));
        }
        let mut basis = Vec::new();
        let mut offsets = Vec::new();
        for p in parts {
            offsets.push(basis.len());
            for i in 0..p.dim() {
                basis.push((p.space.name(i).to_string(), p.space.degree(i)));
            }
        }
        let space = GradedSpace::new(basis)?;
        let total = space.dim();
        let mut differential = Vec::with_capacity(total);
        for (p, &off) in parts.iter().zip(&offsets) {
            for i in 0..p.dim() {
                differential.push(p.differential[i].reindex(|j| j + off));
            }
        }
        let mut action = Vec::with_capacity(base.dim() * total);
        for a in 0..base.dim() {
            for (p, &off) in parts.iter().zip(&offsets) {
                for m in 0..p.dim() {
                    action.push(p.act_basis(a, m).reindex(|j| j + off));
                }
            }
        }
        DgModule::from_tables(base, space, differential, action)
    }

    /// Renames basis elements, keeping all tables.
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> DgModule {
        DgModule {
            base: Arc::clone(&self.base),
            space: self.space.shifted(0, rename),
            differential: self.differential.clone(),
            action: self.action.clone(),
        }
    }
}
