//! Suspensions and linear duals of dgmodules.
//!
//! Conventions (all checked by the module axiom suite rather than assumed):
//!
//! * `(s^k M)^p = M^{k+p}`, so `s^k m` has degree `|m| - k`;
//!   `d(s^k m) = (-1)^k s^k(dm)` and `a·s^k m = (-1)^{k|a|} s^k(am)`.
//! * `(#M)^p = hom(M^{-p}, ℚ)`; for a functional `φ`,
//!   `(dφ)(m) = -(-1)^{|φ|} φ(dm)` and `(aφ)(m) = (-1)^{|a||φ|} φ(am)`.
//! * `#f` is precomposition with `f`, `s^k f` acts as `f` on the unshifted
//!   element. Neither carries a sign.

use super::module::{same_base, DgModule};
use super::morphism::DgMorphism;
use crate::error::{Error, Result};
use crate::linalg::sign;
use crate::vector::Vector;

pub(crate) fn suspended_name(k: i32, name: &str) -> String {
    if k == 1 {
        format!("s({name})")
    } else {
        format!("s^{k}({name})")
    }
}

pub(crate) fn dual_name(name: &str) -> String {
    format!("#({name})")
}

impl DgModule {
    /// The `k`-th suspension `s^k M`.
    pub fn suspend(&self, k: i32) -> DgModule {
        if k == 0 {
            return self.clone();
        }
        let space = self.space().shifted(k, |n| suspended_name(k, n));
        let dsign = sign(k as i64);
        let differential = (0..self.dim())
            .map(|i| self.d_basis(i).scaled(&dsign))
            .collect();
        let base = self.base();
        let mut action = Vec::with_capacity(base.dim() * self.dim());
        for a in 0..base.dim() {
            let s = sign((k * base.degree(a)) as i64);
            for m in 0..self.dim() {
                action.push(self.act_basis(a, m).scaled(&s));
            }
        }
        DgModule::from_tables(base.clone(), space, differential, action)
            .expect("suspension keeps table shapes")
    }

    /// The linear dual `#M`, on the dual basis.
    pub fn dual(&self) -> DgModule {
        let sp = self.space();
        let n = self.dim();
        let space = sp.shifted(0, dual_name);
        let space = super::GradedSpace::new(
            (0..n).map(|i| (space.name(i).to_string(), -sp.degree(i))).collect(),
        )
        .expect("dual names are unique");
        // Coefficient of m_i in d(m_j) becomes the m_j* coefficient of d(m_i*).
        let mut differential = vec![Vector::zero(); n];
        for j in 0..n {
            for (i, c) in self.d_basis(j).iter() {
                let s = -sign(sp.degree(i) as i64);
                differential[i].add_term(j, c * &s);
            }
        }
        let base = self.base();
        let mut action = vec![Vector::zero(); base.dim() * n];
        for a in 0..base.dim() {
            for j in 0..n {
                for (i, c) in self.act_basis(a, j).iter() {
                    let s = sign((base.degree(a) * sp.degree(i)) as i64);
                    action[a * n + i].add_term(j, c * &s);
                }
            }
        }
        DgModule::from_tables(base.clone(), space, differential, action)
            .expect("dual keeps table shapes")
    }

    /// `s^k #M`. A basis element of degree `q` yields a dual element of
    /// degree `-q - k`; in particular `s^{-n}#M` puts it in degree `n - q`.
    pub fn dual_shift(&self, k: i32) -> DgModule {
        self.dual().suspend(k)
    }
}

impl DgMorphism {
    /// `#f: #N → #M`, precomposition with `f`.
    pub fn dual(&self) -> Result<DgMorphism> {
        let (s, t) = (self.source(), self.target());
        if !same_base(s.base(), t.base()) {
            return Err(Error::Mismatch("dual of a morphism over different bases".into()));
        }
        let mut images = vec![Vector::zero(); t.dim()];
        for j in 0..s.dim() {
            for (i, c) in self.image(j).iter() {
                images[i].add_term(j, c.clone());
            }
        }
        DgMorphism::from_images(t.dual(), s.dual(), images)
    }

    pub fn suspend(&self, k: i32) -> DgMorphism {
        DgMorphism::from_images(
            self.source().suspend(k),
            self.target().suspend(k),
            self.images().to_vec(),
        )
        .expect("suspension keeps the image count")
    }

    pub fn dual_shift(&self, k: i32) -> Result<DgMorphism> {
        Ok(self.dual()?.suspend(k))
    }
}
