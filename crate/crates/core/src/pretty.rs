//! Pretty models `φ ⊕ id: P ⊕_{φ^!} ss^{-n}#Q → Q ⊕_{φφ^!} ss^{-n}#Q` of
//! a manifold with boundary, the ideal `I = im φ^!`, the truncated
//! diagonal of `P/I` and its shriek map.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::cones::{is_balanced, semi_trivial_cone, ConeModel};
use crate::duality::PdAlgebra;
use crate::error::{Error, Result};
use crate::graded::{axiom, tensor_elements, Cdga, CdgaMorphism, DgMorphism, Quotient};
use crate::linalg::{sign, Scalar};
use crate::vector::Vector;

#[derive(Clone, Debug)]
pub struct PrettyModel {
    pub pd: PdAlgebra,
    pub phi: CdgaMorphism,
    pub phi_shriek: DgMorphism,
    /// `P ⊕_{φ^!} ss^{-n}#Q`.
    pub interior: ConeModel,
    /// `Q ⊕_{φφ^!} ss^{-n}#Q`.
    pub boundary: ConeModel,
    pub beta: CdgaMorphism,
    /// A basis of `I` inside `P`.
    pub ideal: Vec<Vector>,
    pub reduced: Arc<Cdga>,
    pub projection: CdgaMorphism,
    pub cosets: Quotient,
}

impl PrettyModel {
    pub fn boundary_algebra(&self) -> &Arc<Cdga> {
        self.phi.target()
    }

    pub fn formal_dimension(&self) -> i32 {
        self.pd.formal_dimension()
    }

    /// `B → P/I`, the projection killing the suspended part.
    pub fn reduction(&self) -> Result<CdgaMorphism> {
        let b = self.interior.algebra().expect("B carries a CDGA structure");
        let split = self.interior.split();
        let images = (0..b.dim())
            .map(|i| {
                if i < split {
                    self.projection.image(i).clone()
                } else {
                    Vector::zero()
                }
            })
            .collect();
        CdgaMorphism::new(Arc::clone(b), Arc::clone(&self.reduced), images)
    }
}

pub fn pretty_model(pd: &PdAlgebra, phi: &CdgaMorphism) -> Result<PrettyModel> {
    let n = pd.formal_dimension();
    let p = pd.algebra();
    let q = phi.target();
    let phi_shriek = pd.shriek(phi)?;

    let composite = phi_shriek
        .images()
        .iter()
        .map(|v| phi.apply(v))
        .collect();
    let boundary_shriek = DgMorphism::from_images(q.as_module().dual_shift(-n), q.as_module(), composite)?;
    if let (false, Some((x, y))) = is_balanced(&boundary_shriek) {
        return Err(Error::Unbalanced { map: "φφ^!".into(), x, y });
    }
    // φ^! is only P-linear; Q-linearity of φφ^! is an assumption on φ.
    let report = boundary_shriek.verify();
    if report.has(axiom::LINEARITY) {
        return Err(Error::Hypothesis(format!("φφ^! is not Q-linear: {report}")));
    }
    if !report.is_valid() {
        return Err(Error::Internal(format!("φφ^! is not a dgmodule morphism: {report}")));
    }
    if let (false, Some((x, y))) = is_balanced(&phi_shriek) {
        return Err(Error::Unbalanced { map: "φ^!".into(), x, y });
    }
    let boundary = semi_trivial_cone(&boundary_shriek)?;
    let interior = semi_trivial_cone(&phi_shriek)?;

    let (b, db) = (
        interior.algebra().expect("semi-trivial cone"),
        boundary.algebra().expect("semi-trivial cone"),
    );
    let (split_b, split_db) = (interior.split(), boundary.split());
    let images = (0..b.dim())
        .map(|i| {
            if i < split_b {
                phi.image(i).clone()
            } else {
                Vector::basis(i - split_b + split_db)
            }
        })
        .collect();
    let beta = CdgaMorphism::new(Arc::clone(b), Arc::clone(db), images)
        .map_err(|e| Error::Internal(format!("φ ⊕ id is not a CDGA morphism: {e}")))?;

    let ideal = phi_shriek.image_basis();
    let (reduced, projection, cosets) = p
        .quotient(&ideal)
        .map_err(|e| Error::Internal(format!("im φ^! is not a differential ideal: {e}")))?;
    Ok(PrettyModel {
        pd: pd.clone(),
        phi: phi.clone(),
        phi_shriek,
        interior,
        boundary,
        beta,
        ideal,
        reduced,
        projection,
        cosets,
    })
}

/// The image `Δ̄` of the diagonal class in `P/I ⊗ P/I` and the morphism
/// `Δ̄^!: s^{-n}(P/I) → P/I ⊗ P/I`, `s^{-n}x ↦ Δ̄·(1⊗x)`.
#[derive(Clone, Debug)]
pub struct TruncatedDiagonal {
    pub square: Arc<Cdga>,
    pub diagonal: Vector,
    pub shriek: DgMorphism,
}

pub fn truncated_diagonal_shriek(pm: &PrettyModel) -> Result<TruncatedDiagonal> {
    let n = pm.formal_dimension();
    let r = &pm.reduced;
    let dim_p = pm.pd.algebra().dim();
    let dim_r = r.dim();
    let mut diagonal = Vector::zero();
    for (k, c) in pm.pd.diagonal_class().iter() {
        let (i, j) = (k / dim_p, k % dim_p);
        let t = tensor_elements(pm.projection.image(i), pm.projection.image(j), dim_r);
        diagonal.add_scaled(&t, c);
    }
    let square = Arc::new(Cdga::tensor(r, r));
    diagonal_shriek(r, &square, diagonal, n)
}

/// `s^{-n}x ↦ δ·(1⊗x)` for a degree-`n` element `δ` of `R ⊗ R`.
pub fn diagonal_shriek(r: &Arc<Cdga>, square: &Arc<Cdga>, diagonal: Vector, n: i32) -> Result<TruncatedDiagonal> {
    let mu = Cdga::multiplication(r, square);
    let source = r.as_module().restrict(&mu)?.suspend(-n);
    let unit = r.unit();
    let images = (0..r.dim())
        .map(|x| square.mul(&diagonal, &tensor_elements(unit, &Vector::basis(x), r.dim())))
        .collect();
    let shriek = DgMorphism::new(source, square.as_module(), images)
        .map_err(|e| Error::Internal(format!("Δ̄^! is not a dgmodule morphism: {e}")))?;
    if let (false, Some((x, y))) = is_balanced(&shriek) {
        return Err(Error::Unbalanced { map: "Δ̄^!".into(), x, y });
    }
    Ok(TruncatedDiagonal {
        square: Arc::clone(square),
        diagonal,
        shriek,
    })
}

/// How the two composites around the square
/// `s^{-n}(P/I) → P/I⊗P/I → s^{-2n}#(K⊗K)` and
/// `s^{-n}(P/I) → s^{-2n}#K → s^{-2n}#(K⊗K)` compare in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SquareSign {
    Commutes,
    Negated,
    Mismatch,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SquareCheck {
    /// Keyed by the degree of the source element `s^{-n}x`.
    pub degrees: BTreeMap<i32, SquareSign>,
}

impl SquareCheck {
    pub fn commutes(&self) -> bool {
        self.degrees.values().all(|s| *s == SquareSign::Commutes)
    }

    /// True when every degree either commutes or commutes up to a sign.
    pub fn is_pinpointed(&self) -> bool {
        self.degrees.values().all(|s| *s != SquareSign::Mismatch)
    }

    pub fn discrepancies(&self) -> Vec<(i32, SquareSign)> {
        self.degrees
            .iter()
            .filter(|(_, s)| **s != SquareSign::Commutes)
            .map(|(d, s)| (*d, *s))
            .collect()
    }
}

/// Compares `(θ̄⊗θ̄) ∘ Δ̄^!` with `s^{-2n}#μ̄ ∘ θ̄` on every basis element,
/// where `θ̄(x)(k) = ε(xk)` for `k ∈ K = ker φ` and `μ̄: K⊗K → K` is the
/// product.
///
/// Both sides are written in the basis dual to `k_c ⊗ k_d`. The
/// identification `s^{-n}#K ⊗ s^{-n}#K ≅ s^{-2n}#(K⊗K)` sends
/// `s^{-n}f ⊗ s^{-n}g` to `(-1)^{n|f|} s^{-2n}(f⊗g)`, and
/// `(f⊗g)(k⊗k') = (-1)^{|g||k|} f(k)g(k')`.
pub fn check_square(pm: &PrettyModel, td: &TruncatedDiagonal) -> Result<SquareCheck> {
    let pd = &pm.pd;
    let p = pd.algebra();
    let sp = p.space();
    let n = pd.formal_dimension() as i64;
    let kernel = pm.phi.kernel_basis();
    let kdeg: Vec<i64> = kernel
        .iter()
        .map(|k| sp.degree_of(k).expect("kernel basis is homogeneous") as i64)
        .collect();
    for i in &pm.ideal {
        for k in &kernel {
            if !pd.epsilon(&p.mul(i, k)).is_zero() {
                return Err(Error::Internal("ε(I·ker φ) ≠ 0, θ̄ is ill defined".into()));
            }
        }
    }
    let r = &pm.reduced;
    let lift: Vec<Vector> = (0..r.dim())
        .map(|a| Vector::basis(pm.cosets.representative(a)))
        .collect();
    // theta[a][c] = θ̄(x_a)(k_c)
    let theta: Vec<Vec<Scalar>> = lift
        .iter()
        .map(|x| kernel.iter().map(|k| pd.epsilon(&p.mul(x, k))).collect())
        .collect();
    let dim_r = r.dim();
    let nk = kernel.len();

    let mut sides: BTreeMap<i32, (Vec<Scalar>, Vec<Scalar>)> = BTreeMap::new();
    for a in 0..dim_r {
        let deg = r.degree(a) + pd.formal_dimension();
        let mut via_diagonal = vec![Scalar::zero(); nk * nk];
        for (t, coef) in td.shriek.image(a).iter() {
            let (u, v) = (t / dim_r, t % dim_r);
            let f_deg = r.degree(u) as i64 - n;
            let g_deg = r.degree(v) as i64 - n;
            for c in 0..nk {
                if theta[u][c].is_zero() {
                    continue;
                }
                let s = sign(n * f_deg + g_deg * kdeg[c]);
                for d in 0..nk {
                    via_diagonal[c * nk + d] += coef * &s * &theta[u][c] * &theta[v][d];
                }
            }
        }
        let entry = sides.entry(deg).or_default();
        entry.0.extend(via_diagonal);
        for c in 0..nk {
            for d in 0..nk {
                let kk = p.mul(&kernel[c], &kernel[d]);
                entry.1.push(pd.epsilon(&p.mul(&lift[a], &kk)));
            }
        }
    }
    let degrees = sides
        .into_iter()
        .map(|(deg, (left, right))| {
            let sign = if left == right {
                SquareSign::Commutes
            } else if left.iter().zip(&right).all(|(x, y)| *x == -y.clone()) {
                SquareSign::Negated
            } else {
                SquareSign::Mismatch
            };
            (deg, sign)
        })
        .collect();
    Ok(SquareCheck { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conf::{augmentation, disk_bundle_algebra};
    use crate::fixtures::{self, sphere};

    fn punctured(pd: &PdAlgebra) -> PrettyModel {
        pretty_model(pd, &augmentation(pd.algebra()).unwrap()).unwrap()
    }

    fn bundle(euler: bool) -> (PdAlgebra, PrettyModel) {
        let s4 = sphere(4);
        let e = if euler { s4.algebra().element("x").unwrap() } else { Vector::zero() };
        let (p, phi) = disk_bundle_algebra(&s4, &e, 4).unwrap();
        (s4, pretty_model(&p, &phi).unwrap())
    }

    #[test]
    fn punctured_sphere_reduces_to_the_ground_field() {
        for n in [4, 5, 6] {
            let pm = punctured(&sphere(n));
            assert_eq!(pm.reduced.dim(), 1);
            assert_eq!(pm.ideal.len(), 1);
            assert!(pm.beta.is_surjective());
            assert!(pm.interior.algebra().unwrap().verify().is_valid());
            assert!(pm.boundary.algebra().unwrap().verify().is_valid());
            assert!(pm.reduction().unwrap().verify().is_valid());
        }
    }

    #[test]
    fn punctured_four_sphere_has_no_truncated_diagonal() {
        let td = truncated_diagonal_shriek(&punctured(&sphere(4))).unwrap();
        assert!(td.diagonal.is_zero());
        assert!(td.shriek.is_zero());
    }

    #[test]
    fn punctured_product_keeps_the_middle_terms() {
        let pm = punctured(&fixtures::oriented(fixtures::S3_X_S3));
        assert_eq!(pm.reduced.space().names(), &["1", "y", "y'"]);
        let td = truncated_diagonal_shriek(&pm).unwrap();
        let t = |a: &str, b: &str| td.square.element(&format!("{a}⊗{b}")).unwrap();
        // y* = y' and y'* = -y, each with the sign (-1)^3.
        assert_eq!(td.diagonal, &t("y'", "y") - &t("y", "y'"));
    }

    #[test]
    fn disk_bundle_reduces_to_the_base() {
        for euler in [true, false] {
            let (s4, pm) = bundle(euler);
            assert_eq!(pm.reduced.space().names(), s4.algebra().space().names());
            assert_eq!(pm.reduced.space().degrees(), s4.algebra().space().degrees());
            assert!(pm.beta.is_surjective());
        }
    }

    #[test]
    fn disk_bundle_truncated_diagonal() {
        for euler in [true, false] {
            let (s4, pm) = bundle(euler);
            let td = truncated_diagonal_shriek(&pm).unwrap();
            let q = s4.algebra();
            let e = if euler { q.element("x").unwrap() } else { Vector::zero() };
            let expected = td.square.mul(&s4.diagonal_class(), &tensor_elements(q.unit(), &e, q.dim()));
            assert_eq!(td.diagonal, expected);
        }
        let (_, pm) = bundle(true);
        let td = truncated_diagonal_shriek(&pm).unwrap();
        let xx = td.square.element("x⊗x").unwrap();
        assert_eq!(td.shriek.images(), &[xx, Vector::zero()]);
    }

    #[test]
    fn non_surjective_unbalanced_boundary_map() {
        let s4 = sphere(4);
        let a = s4.algebra();
        let square = Arc::new(Cdga::tensor(a, a));
        let x1 = square.element("x⊗1").unwrap();
        let phi = CdgaMorphism::new(Arc::clone(a), square, vec![Vector::basis(0), x1]).unwrap();
        match pretty_model(&s4, &phi) {
            Err(Error::Unbalanced { map, .. }) => assert_eq!(map, "φφ^!"),
            other => panic!("expected an unbalanced φφ^!, got {other:?}"),
        }
    }

    #[test]
    fn square_commutes() {
        let mut cases = vec![bundle(true).1, bundle(false).1];
        for pd in [sphere(4), sphere(5), fixtures::oriented(fixtures::S3_X_S3), fixtures::oriented(fixtures::S4_X_S4)] {
            cases.push(punctured(&pd));
        }
        for pm in &cases {
            let td = truncated_diagonal_shriek(pm).unwrap();
            let check = check_square(pm, &td).unwrap();
            assert!(check.commutes(), "{:?}", check.discrepancies());
            assert!(check.is_pinpointed());
        }
    }
}
