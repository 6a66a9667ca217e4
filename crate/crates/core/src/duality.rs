//! Poincaré duality CDGAs: orientation, dual bases, the diagonal class,
//! the isomorphism `θ: P → s^{-n}#P` and shriek maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::graded::{tensor_elements, Cdga, CdgaMorphism, DgModule, DgMorphism};
use crate::linalg::{sign, Matrix, Scalar};
use crate::vector::Vector;

/// A connected CDGA with formal dimension `n` and an orientation
/// `ε: P^n → ℚ` whose pairings `(a, b) ↦ ε(ab)` are nondegenerate.
#[derive(Clone, Debug)]
pub struct PdAlgebra {
    algebra: Arc<Cdga>,
    n: i32,
    epsilon: Vector,
    pairings: BTreeMap<i32, Matrix>,
    duals: Vec<Vector>,
}

impl PdAlgebra {
    /// Orients `algebra` by the class `fundamental`: `ε` is the functional
    /// vanishing on exact elements with `ε(fundamental) = 1`.
    pub fn new(algebra: Arc<Cdga>, n: i32, fundamental: &Vector) -> Result<PdAlgebra> {
        let sp = algebra.space();
        if !sp.is_homogeneous(fundamental, n) || fundamental.is_zero() {
            return Err(Error::Invalid(format!(
                "the orientation class is not a nonzero element of degree {n}"
            )));
        }
        let top = sp.in_degree(n);
        let mut cols: Vec<Vec<Scalar>> = algebra
            .basis_in_degree(n - 1)
            .iter()
            .map(|b| algebra.d(b).coords(top))
            .collect();
        let (_, exact) = Matrix::from_columns(top.len(), &cols).kernel_and_image();
        cols = exact;
        let k = cols.len();
        cols.push(fundamental.coords(top));
        let m = Matrix::from_columns(top.len(), &cols);
        if m.rank() != k + 1 || k + 1 != top.len() {
            return Err(Error::NotPoincareDuality(format!(
                "the top cohomology H^{n} is not spanned by the orientation class"
            )));
        }
        // ε is the last row of the inverse of [exact | ω].
        let inv = m.inverse().expect("square of full rank");
        let coords: Vec<Scalar> = (0..top.len()).map(|j| inv[(k, j)].clone()).collect();
        let epsilon = Vector::from_coords(top, &coords);
        Self::from_functional(algebra, n, epsilon)
    }

    /// `epsilon` lists `ε` on the basis elements of degree `n`.
    pub fn from_functional(algebra: Arc<Cdga>, n: i32, epsilon: Vector) -> Result<PdAlgebra> {
        let sp = algebra.space();
        if !algebra.is_connected() {
            return Err(Error::NotPoincareDuality("the algebra is not connected".into()));
        }
        if let Some(top) = sp.top_degree() {
            if top > n {
                return Err(Error::NotPoincareDuality(format!(
                    "nonzero element in degree {top} above the formal dimension {n}"
                )));
            }
        }
        if !sp.is_homogeneous(&epsilon, n) || epsilon.is_zero() {
            return Err(Error::Invalid("the orientation is not a nonzero functional on P^n".into()));
        }
        let eval = |v: &Vector| dot(&epsilon, v);
        for b in algebra.basis_in_degree(n - 1) {
            if !eval(&algebra.d(&b)).is_zero() {
                return Err(Error::NotPoincareDuality(format!(
                    "ε does not vanish on d({})",
                    sp.format(&b)
                )));
            }
        }
        let mut pairings = BTreeMap::new();
        for q in 0..=n {
            let (lo, hi) = (sp.in_degree(q), sp.in_degree(n - q));
            if lo.len() != hi.len() {
                return Err(Error::NotPoincareDuality(format!(
                    "dim P^{q} = {} but dim P^{} = {}",
                    lo.len(),
                    n - q,
                    hi.len()
                )));
            }
            let rows = lo
                .iter()
                .map(|&i| {
                    hi.iter()
                        .map(|&j| eval(algebra.mul_basis(i, j)))
                        .collect()
                })
                .collect();
            let g = Matrix::from_rows(rows);
            if g.rank() != lo.len() {
                return Err(Error::DegeneratePairing(q));
            }
            pairings.insert(q, g);
        }
        let mut pd = PdAlgebra {
            algebra,
            n,
            epsilon,
            pairings,
            duals: Vec::new(),
        };
        let basis: Vec<Vector> = (0..pd.algebra.dim()).map(Vector::basis).collect();
        pd.duals = pd.dual_basis_of(&basis)?;
        Ok(pd)
    }

    pub fn algebra(&self) -> &Arc<Cdga> {
        &self.algebra
    }

    pub fn formal_dimension(&self) -> i32 {
        self.n
    }

    /// `ε` as coefficients on the basis of degree `n`.
    pub fn orientation(&self) -> &Vector {
        &self.epsilon
    }

    pub fn epsilon(&self, v: &Vector) -> Scalar {
        dot(&self.epsilon, v)
    }

    /// The matrix of `ε(ab)` for `a` running over the basis of `P^q` and
    /// `b` over the basis of `P^{n-q}`.
    pub fn pairing(&self, q: i32) -> Option<&Matrix> {
        self.pairings.get(&q)
    }

    /// The dual of the unit, normalized by `ε(ω) = 1`.
    pub fn fundamental_class(&self) -> Vector {
        self.dual_of_unit()
    }

    fn dual_of_unit(&self) -> Vector {
        let unit = self.algebra.unit();
        let mut out = Vector::zero();
        // unit = c·e_0 in a connected algebra, so 1* = e_0* / c.
        for (i, c) in unit.iter() {
            out.add_scaled(&self.duals[i], &(Scalar::from_integer(1.into()) / c));
        }
        out
    }

    /// Dual of the standard basis: `ε(e_i e_j*) = δ_ij`.
    pub fn dual_basis(&self) -> &[Vector] {
        &self.duals
    }

    /// Dual of an arbitrary homogeneous basis of `P`, listed in the same
    /// order.
    pub fn dual_basis_of(&self, basis: &[Vector]) -> Result<Vec<Vector>> {
        let sp = self.algebra.space();
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (k, b) in basis.iter().enumerate() {
            let deg = sp
                .degree_of(b)
                .ok_or_else(|| Error::Invalid("basis element is not homogeneous".into()))?;
            by_degree.entry(deg).or_default().push(k);
        }
        let mut out = vec![Vector::zero(); basis.len()];
        for (&q, ks) in &by_degree {
            let partners = by_degree.get(&(self.n - q)).map(Vec::as_slice).unwrap_or(&[]);
            if ks.len() != sp.dim_in_degree(q) || partners.len() != ks.len() {
                return Err(Error::Invalid(format!("not a basis in degree {q}")));
            }
            let rows = ks
                .iter()
                .map(|&a| {
                    partners
                        .iter()
                        .map(|&b| self.epsilon(&self.algebra.mul(&basis[a], &basis[b])))
                        .collect()
                })
                .collect();
            let inv = Matrix::from_rows(rows)
                .inverse()
                .ok_or(Error::DegeneratePairing(q))?;
            for (col, &a) in ks.iter().enumerate() {
                let mut v = Vector::zero();
                for (row, &b) in partners.iter().enumerate() {
                    v.add_scaled(&basis[b], &inv[(row, col)]);
                }
                out[a] = v;
            }
        }
        Ok(out)
    }

    /// `Δ = Σ (-1)^{|a_i|} a_i ⊗ a_i*` in `P ⊗ P`, on the standard basis.
    pub fn diagonal_class(&self) -> Vector {
        let basis: Vec<Vector> = (0..self.algebra.dim()).map(Vector::basis).collect();
        self.assemble_diagonal(&basis, &self.duals)
    }

    /// The diagonal class computed from another basis; it does not depend
    /// on the choice.
    pub fn diagonal_class_of(&self, basis: &[Vector]) -> Result<Vector> {
        let duals = self.dual_basis_of(basis)?;
        Ok(self.assemble_diagonal(basis, &duals))
    }

    fn assemble_diagonal(&self, basis: &[Vector], duals: &[Vector]) -> Vector {
        let sp = self.algebra.space();
        let dim = self.algebra.dim();
        let mut out = Vector::zero();
        for (a, a_star) in basis.iter().zip(duals) {
            let deg = sp.degree_of(a).expect("basis elements are homogeneous");
            out.add_scaled(&tensor_elements(a, a_star, dim), &sign(deg as i64));
        }
        out
    }

    /// `s^{-n}#P` as a `P`-dgmodule.
    pub fn dual_module(&self) -> DgModule {
        self.algebra.as_module().dual_shift(-self.n)
    }

    /// `θ(α) = s^{-n}(β ↦ ε(αβ))`, an isomorphism of `P`-dgmodules.
    pub fn theta(&self) -> Result<DgMorphism> {
        let a = &self.algebra;
        let images = (0..a.dim())
            .map(|i| {
                (0..a.dim())
                    .map(|j| (j, self.epsilon(a.mul_basis(i, j))))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        DgMorphism::new(a.as_module(), self.dual_module(), images)
            .map_err(|e| Error::Internal(format!("θ is not a dgmodule morphism: {e}")))
    }

    /// `θ^{-1}`: the functional dual to `e_j` comes from
    /// `(-1)^{|e_j|(n-|e_j|)} e_j*`.
    pub fn theta_inverse(&self) -> Result<DgMorphism> {
        let sp = self.algebra.space();
        let images = (0..self.algebra.dim())
            .map(|j| {
                let q = sp.degree(j) as i64;
                self.duals[j].scaled(&sign(q * (self.n as i64 - q)))
            })
            .collect();
        DgMorphism::new(self.dual_module(), self.algebra.as_module(), images)
            .map_err(|e| Error::Internal(format!("θ⁻¹ is not a dgmodule morphism: {e}")))
    }

    /// `φ^! = θ^{-1} ∘ s^{-n}#φ: s^{-n}#Q → P`, with `Q` a `P`-module
    /// through `φ`.
    pub fn shriek(&self, phi: &CdgaMorphism) -> Result<DgMorphism> {
        if **phi.source() != *self.algebra {
            return Err(Error::Mismatch("φ must start at the oriented algebra".into()));
        }
        let r = phi.verify();
        if !r.is_valid() {
            return Err(Error::NotAMorphism(r.to_string()));
        }
        let dual = phi.as_module_morphism()?.dual_shift(-self.n)?;
        self.theta_inverse()?
            .after(&dual)
            .and_then(DgMorphism::checked)
            .map_err(|e| Error::Internal(format!("φ^! is not a dgmodule morphism: {e}")))
    }
}

fn dot(functional: &Vector, v: &Vector) -> Scalar {
    let mut out = Scalar::zero();
    for (i, c) in v.iter() {
        out += c * functional.get(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conf::{augmentation, disk_bundle_algebra};
    use crate::fixtures::{self, presented, sphere};
    use crate::linalg::scalar;

    fn el(pd: &PdAlgebra, name: &str) -> Vector {
        pd.algebra().element(name).unwrap()
    }

    fn tensor(pd: &PdAlgebra, a: &str, b: &str) -> Vector {
        tensor_elements(&el(pd, a), &el(pd, b), pd.algebra().dim())
    }

    #[test]
    fn sphere_duals() {
        let s4 = sphere(4);
        assert_eq!(s4.dual_basis(), &[el(&s4, "x"), el(&s4, "1")]);
        assert_eq!(s4.fundamental_class(), el(&s4, "x"));
        assert_eq!(s4.epsilon(&s4.fundamental_class()), scalar(1));
    }

    #[test]
    fn orientation_is_rescaled() {
        let a = presented(fixtures::S4).algebra;
        let pd = PdAlgebra::new(Arc::clone(&a), 4, &a.element("x").unwrap().scaled(&scalar(3))).unwrap();
        assert_eq!(pd.fundamental_class(), a.element("x").unwrap().scaled(&scalar(3)));
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let text = "relations=[\"a^2\",\"b^2\",\"a*b\"]\nmax_degree=2\n[[generators]]\nname=\"a\"\ndegree=2\n[[generators]]\nname=\"b\"\ndegree=2\n";
        let a = presented(text).algebra;
        let err = PdAlgebra::from_functional(Arc::clone(&a), 2, a.element("a").unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotPoincareDuality(_)));
    }

    #[test]
    fn degenerate_pairing_names_the_degree() {
        // ℚ[a, b]/(a², b², ab) in degrees 2, 2 plus a top class t: a and b
        // pair to zero with everything in degree 2.
        let text = "relations=[\"a^2\",\"b^2\",\"a*b\",\"a*t\",\"b*t\",\"t^2\"]\nmax_degree=4\n[[generators]]\nname=\"a\"\ndegree=2\n[[generators]]\nname=\"b\"\ndegree=2\n[[generators]]\nname=\"t\"\ndegree=4\n";
        let a = presented(text).algebra;
        let err = PdAlgebra::from_functional(Arc::clone(&a), 4, a.element("t").unwrap()).unwrap_err();
        assert_eq!(err, Error::DegeneratePairing(2));
    }

    #[test]
    fn odd_product_pairing() {
        let pd = fixtures::oriented(fixtures::S3_X_S3);
        let g = pd.pairing(3).unwrap();
        assert_eq!(*g, Matrix::from_i64(&[&[0, 1], &[-1, 0]]));
        assert_eq!(g.determinant(), scalar(1));
        for (i, a) in (0..4).map(Vector::basis).enumerate() {
            for (j, b) in pd.dual_basis().iter().enumerate() {
                let expected = if i == j { 1 } else { 0 };
                assert_eq!(pd.epsilon(&pd.algebra().mul(&a, b)), scalar(expected));
            }
        }
    }

    #[test]
    fn diagonal_classes() {
        let s4 = sphere(4);
        assert_eq!(s4.diagonal_class(), &tensor(&s4, "1", "x") + &tensor(&s4, "x", "1"));
        let s3 = sphere(3);
        assert_eq!(s3.diagonal_class(), &tensor(&s3, "1", "x") - &tensor(&s3, "x", "1"));
    }

    #[test]
    fn diagonal_class_ignores_the_basis() {
        let pd = fixtures::oriented(fixtures::S3_X_S3);
        let basis = vec![
            Vector::basis(0).scaled(&scalar(2)),
            &Vector::basis(1) + &Vector::basis(2),
            &Vector::basis(1) - &Vector::basis(2).scaled(&scalar(3)),
            Vector::basis(3).scaled(&scalar(-5)),
        ];
        assert_eq!(pd.diagonal_class_of(&basis).unwrap(), pd.diagonal_class());
        let square = Cdga::tensor(pd.algebra(), pd.algebra());
        assert!(square.d(&pd.diagonal_class()).is_zero());
    }

    #[test]
    fn theta_on_unit_and_fundamental_class() {
        let pd = fixtures::oriented(fixtures::S4_X_S4);
        let theta = pd.theta().unwrap();
        // θ(1) is ε: it takes the value 1 on the top basis element.
        let top = pd.algebra().element("a*b").unwrap();
        assert_eq!(theta.image(0), &top);
        // θ(ω) is the functional dual to the unit.
        assert_eq!(theta.apply(&pd.fundamental_class()), Vector::basis(0));
        let back = pd.theta_inverse().unwrap().after(&theta).unwrap();
        for i in 0..pd.algebra().dim() {
            assert_eq!(back.image(i), &Vector::basis(i));
        }
    }

    #[test]
    fn theta_block_is_invertible_on_the_product() {
        let pd = fixtures::oriented(fixtures::S3_X_S3);
        let theta = pd.theta().unwrap();
        assert!(theta.verify().is_valid());
        assert_eq!(theta.matrix_in_degree(3).determinant(), scalar(1));
    }

    #[test]
    fn shriek_of_identity_is_theta_inverse() {
        let pd = fixtures::oriented(fixtures::S3_X_S3);
        let id = CdgaMorphism::identity(pd.algebra());
        assert_eq!(pd.shriek(&id).unwrap().images(), pd.theta_inverse().unwrap().images());
    }

    #[test]
    fn shriek_of_augmentation() {
        let s4 = sphere(4);
        let f = pd_shriek_image(&s4, &augmentation(s4.algebra()).unwrap());
        assert_eq!(f, vec![el(&s4, "x")]);
    }

    fn pd_shriek_image(pd: &PdAlgebra, phi: &CdgaMorphism) -> Vec<Vector> {
        pd.shriek(phi).unwrap().image_basis()
    }

    #[test]
    fn disk_bundle_duals_and_ideal() {
        let s4 = sphere(4);
        let x = el(&s4, "x");
        let (p, phi) = disk_bundle_algebra(&s4, &x, 4).unwrap();
        let names = p.algebra().space().names().to_vec();
        assert_eq!(names, ["1", "x", "zbar", "x*zbar"]);
        let e = |n: &str| p.algebra().element(n).unwrap();
        // Duals of q are q*(e - zbar), duals of q·zbar are -q*.
        let expected = vec![
            p.algebra().mul(&e("x"), &(&e("x") - &e("zbar"))),
            &e("x") - &e("zbar"),
            -&e("x"),
            -&e("1"),
        ];
        assert_eq!(p.dual_basis(), expected.as_slice());
        // Δ_P = Σ (-1)^{|q|} (q ⊗ q*(e - zbar) - q·zbar ⊗ q*).
        let t = |a: &str, b: &Vector| tensor_elements(&e(a), b, 4);
        let mut delta = &t("1", &expected[0]) - &t("zbar", &e("x"));
        delta = &delta + &(&t("x", &expected[1]) - &t("x*zbar", &e("1")));
        assert_eq!(p.diagonal_class(), delta);

        let ideal = pd_shriek_image(&p, &phi);
        let sub = crate::graded::Subspace::new(p.algebra().space(), &ideal).unwrap();
        assert_eq!(sub.dim(), 2);
        assert!(sub.contains(&e("zbar")) && sub.contains(&e("x*zbar")));
    }
}
