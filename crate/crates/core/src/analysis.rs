//! Cohomology rings, Poincaré series, triple Massey products and checks of
//! ring presentations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{axiom, Cdga, Cohomology, GradedSpace, Report, Subspace};
use crate::linalg::{sign, Matrix, Scalar};
use crate::presentation::{presented_dimensions, FreeAlgebra, Generator};
use crate::vector::Vector;

/// The cohomology algebra of a CDGA, on the basis of classes of chosen
/// cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    algebra: Arc<Cdga>,
    cohomology: Cohomology,
    table: Vec<Vector>,
}

pub fn cohomology_ring(a: &Arc<Cdga>) -> Result<CohomologyRing> {
    let h = a.cohomology();
    let n = h.dim();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let z = a.mul(h.representative(i), h.representative(j));
            table.push(h.class_of(&z)?);
        }
    }
    Ok(CohomologyRing {
        algebra: Arc::clone(a),
        cohomology: h,
        table,
    })
}

impl CohomologyRing {
    pub fn algebra(&self) -> &Arc<Cdga> {
        &self.algebra
    }

    pub fn cohomology(&self) -> &Cohomology {
        &self.cohomology
    }

    pub fn space(&self) -> &GradedSpace {
        self.cohomology.space()
    }

    pub fn dim(&self) -> usize {
        self.cohomology.dim()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.space().degree(i)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(self.mul_basis(i, j), &(a * b));
            }
        }
        out
    }

    pub fn unit(&self) -> Result<Vector> {
        self.class_of(self.algebra.unit())
    }

    /// Class of a cocycle of the underlying algebra.
    pub fn class_of(&self, z: &Vector) -> Result<Vector> {
        self.cohomology.class_of(z)
    }

    pub fn representative(&self, class: &Vector) -> Vector {
        self.cohomology.lift(class)
    }

    /// The class whose representative is the basis element called `name`.
    pub fn class_named(&self, name: &str) -> Result<Vector> {
        let z = self
            .algebra
            .element(name)
            .ok_or_else(|| Error::Invalid(format!("no basis element `{name}`")))?;
        self.class_of(&z)
    }

    /// Graded commutativity and associativity of the table.
    pub fn verify(&self) -> Report {
        let mut r = Report::default();
        let n = self.dim();
        let sp = self.space();
        for i in 0..n {
            for j in 0..n {
                let s = sign((self.degree(i) * self.degree(j)) as i64);
                if *self.mul_basis(i, j) != self.mul_basis(j, i).scaled(&s) {
                    r.record(axiom::COMMUTATIVITY, &[sp.name(i), sp.name(j)]);
                }
                for k in 0..n {
                    let left = self.mul(self.mul_basis(i, j), &Vector::basis(k));
                    let right = self.mul(&Vector::basis(i), self.mul_basis(j, k));
                    if left != right {
                        r.record(axiom::ASSOCIATIVITY, &[sp.name(i), sp.name(j), sp.name(k)]);
                    }
                }
            }
        }
        r
    }

    /// The product table as `(left, right) ↦ class` over basis names,
    /// omitting zero products.
    pub fn products(&self) -> Vec<(String, String, String)> {
        let sp = self.space();
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let v = self.mul_basis(i, j);
                if !v.is_zero() {
                    out.push((sp.name(i).into(), sp.name(j).into(), sp.format(v)));
                }
            }
        }
        out
    }
}

/// Coefficients `dim H^0 ..= dim H^max_degree`.
pub fn poincare_series(a: &Cdga, max_degree: i32) -> Vec<usize> {
    a.cohomology().betti(max_degree)
}

/// A triple Massey product `⟨a, b, c⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct MasseyResult {
    pub triple: [String; 3],
    pub degree: i32,
    /// Both `ab` and `bc` vanish in cohomology.
    pub defined: bool,
    /// The class of `rep_a·y - (-1)^{|a|} x·rep_c` with `dx = rep_a·rep_b`
    /// and `dy = rep_b·rep_c`, in the H-basis.
    pub representative: Option<String>,
    /// A basis of `[a]·H^{|b|+|c|-1} + H^{|a|+|b|-1}·[c]`.
    pub indeterminacy: Vec<String>,
    /// The coset of the representative does not contain 0.
    pub nontrivial: bool,
    #[serde(skip)]
    pub class: Option<Vector>,
    #[serde(skip)]
    pub indeterminacy_basis: Vec<Vector>,
}

fn class_degree(ring: &CohomologyRing, v: &Vector) -> Result<i32> {
    ring.space()
        .degree_of(v)
        .ok_or_else(|| Error::Invalid("Massey arguments must be nonzero homogeneous classes".into()))
}

/// `rep_a·y - (-1)^{|a|} x·rep_c` for given primitives `dx = rep_a·rep_b`,
/// `dy = rep_b·rep_c`.
pub fn massey_representative(
    ring: &CohomologyRing,
    a: &Vector,
    c: &Vector,
    x: &Vector,
    y: &Vector,
) -> Result<Vector> {
    let alg = ring.algebra();
    let da = class_degree(ring, a)?;
    let (ra, rc) = (ring.representative(a), ring.representative(c));
    let mut z = alg.mul(&ra, y);
    z.add_scaled(&alg.mul(x, &rc), &-sign(da as i64));
    ring.class_of(&z)
}

pub fn triple_massey(ring: &CohomologyRing, a: &Vector, b: &Vector, c: &Vector) -> Result<MasseyResult> {
    let sp = ring.space();
    let (da, db, dc) = (class_degree(ring, a)?, class_degree(ring, b)?, class_degree(ring, c)?);
    let degree = da + db + dc - 1;
    let triple = [sp.format(a), sp.format(b), sp.format(c)];
    let defined = ring.mul(a, b).is_zero() && ring.mul(b, c).is_zero();
    if !defined {
        return Ok(MasseyResult {
            triple,
            degree,
            defined,
            representative: None,
            indeterminacy: Vec::new(),
            nontrivial: false,
            class: None,
            indeterminacy_basis: Vec::new(),
        });
    }
    let alg = ring.algebra();
    let h = ring.cohomology();
    let (ra, rb, rc) = (ring.representative(a), ring.representative(b), ring.representative(c));
    let no_primitive = || Error::Internal("an exact product has no primitive".into());
    let x = h.primitive(&alg.mul(&ra, &rb), da + db).ok_or_else(no_primitive)?;
    let y = h.primitive(&alg.mul(&rb, &rc), db + dc).ok_or_else(no_primitive)?;
    let class = massey_representative(ring, a, c, &x, &y)?;

    let mut spanning = Vec::new();
    for &i in sp.in_degree(db + dc - 1) {
        spanning.push(ring.mul(a, &Vector::basis(i)));
    }
    for &i in sp.in_degree(da + db - 1) {
        spanning.push(ring.mul(&Vector::basis(i), c));
    }
    let indeterminacy = Subspace::new(sp, &spanning)?;
    let nontrivial = !indeterminacy.contains(&class);
    Ok(MasseyResult {
        triple,
        degree,
        defined,
        representative: Some(sp.format(&class)),
        indeterminacy: indeterminacy.basis().iter().map(|v| sp.format(v)).collect(),
        nontrivial,
        class: Some(class),
        indeterminacy_basis: indeterminacy.basis().to_vec(),
    })
}

/// Summary of an exhaustive search over triples of positive-degree basis
/// classes, in lexicographic order of basis indices.
#[derive(Clone, Debug, Serialize)]
pub struct MasseySearch {
    pub first_nontrivial: Option<MasseyResult>,
    pub defined: usize,
    pub nontrivial: usize,
}

pub fn massey_search(ring: &CohomologyRing) -> Result<MasseySearch> {
    let positive: Vec<usize> = (0..ring.dim()).filter(|&i| ring.degree(i) > 0).collect();
    let mut out = MasseySearch {
        first_nontrivial: None,
        defined: 0,
        nontrivial: 0,
    };
    for &i in &positive {
        for &j in &positive {
            for &k in &positive {
                let m = triple_massey(ring, &Vector::basis(i), &Vector::basis(j), &Vector::basis(k))?;
                if m.defined {
                    out.defined += 1;
                }
                if m.nontrivial {
                    out.nontrivial += 1;
                    if out.first_nontrivial.is_none() {
                        out.first_nontrivial = Some(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of checking that `ℚ[generators]/(relations) → H` given by
/// `images` is an isomorphism up to a degree bound.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationCheck {
    pub max_degree: i32,
    /// Per degree: dimension of the presented algebra and of `H`.
    pub dims: BTreeMap<i32, (usize, usize)>,
    pub violations: Vec<String>,
    /// Lowest degree at which something fails.
    pub witness_degree: Option<i32>,
}

impl PresentationCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_presentation(
    ring: &CohomologyRing,
    generators: &[Generator],
    images: &[Vector],
    relations: &[String],
    max_degree: i32,
) -> Result<PresentationCheck> {
    if generators.len() != images.len() {
        return Err(Error::Invalid("one image per generator is needed".into()));
    }
    let free = FreeAlgebra::new(generators)?;
    let sp = ring.space();
    let mut violations = Vec::new();
    let mut witness: Option<i32> = None;
    let mut fail = |deg: i32, msg: String, violations: &mut Vec<String>| {
        witness = Some(witness.map_or(deg, |w| w.min(deg)));
        violations.push(msg);
    };
    for (g, v) in generators.iter().zip(images) {
        if !v.is_zero() && !sp.is_homogeneous(v, g.degree) {
            fail(g.degree, format!("image of `{}` is not of degree {}", g.name, g.degree), &mut violations);
        }
    }
    let unit = ring.unit()?;
    let mul = |x: &Vector, y: &Vector| ring.mul(x, y);
    for text in relations {
        let p = free.parse(text)?;
        let deg = p.homogeneous_degree(&free)?.unwrap_or(0);
        let value = free.evaluate(&p, images, &unit, &mul);
        if !value.is_zero() {
            fail(deg, format!("relation `{text}` is {} in degree {deg}", sp.format(&value)), &mut violations);
        }
    }

    let mut spans: BTreeMap<i32, Vec<Vec<Scalar>>> = BTreeMap::new();
    for m in free.monomials(max_degree) {
        let deg = free.degree(&m);
        let mono = crate::presentation::Poly::monomial(m, Scalar::from_integer(1.into()));
        let v = free.evaluate(&mono, images, &unit, &mul);
        spans.entry(deg).or_default().push(v.coords(sp.in_degree(deg)));
    }
    let presented = presented_dimensions(generators, relations, max_degree)?;
    let mut dims = BTreeMap::new();
    for deg in 0..=max_degree {
        let actual = sp.dim_in_degree(deg);
        let reached = spans
            .get(&deg)
            .map_or(0, |cols| Matrix::from_columns(actual, cols).rank());
        if reached < actual {
            fail(deg, format!("the images do not generate H^{deg}"), &mut violations);
        }
        let expected = presented.get(&deg).copied().unwrap_or(0);
        if expected != actual {
            fail(
                deg,
                format!("degree {deg}: presented dimension {expected}, cohomology {actual}"),
                &mut violations,
            );
        }
        if expected != 0 || actual != 0 {
            dims.insert(deg, (expected, actual));
        }
    }
    Ok(PresentationCheck {
        max_degree,
        dims,
        violations,
        witness_degree: witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conf::conf2_disk_bundle;
    use crate::fixtures::{self, sphere};
    use crate::presentation::Presentation;
    use num::One;

    fn bundle_ring(euler: &str) -> CohomologyRing {
        let s4 = sphere(4);
        let e = if euler == "0" {
            Vector::zero()
        } else {
            s4.algebra().element(euler).unwrap()
        };
        let m = conf2_disk_bundle(&s4, &e, 4).unwrap();
        cohomology_ring(m.model.algebra()).unwrap()
    }

    fn class(ring: &CohomologyRing, name: &str) -> Vector {
        ring.class_named(name).unwrap()
    }

    #[test]
    fn sphere_ring_is_itself() {
        let s4 = sphere(4);
        let ring = cohomology_ring(s4.algebra()).unwrap();
        assert_eq!(ring.dim(), 2);
        assert!(ring.verify().is_valid());
        let x = class(&ring, "x");
        assert!(ring.mul(&x, &x).is_zero());
        assert_eq!(ring.mul(&ring.unit().unwrap(), &x), x);
    }

    #[test]
    fn poincare_series_of_bundles() {
        let hopf = bundle_ring("x");
        assert_eq!(hopf.cohomology().betti(11), vec![1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1]);
        let trivial = bundle_ring("0");
        assert_eq!(trivial.cohomology().betti(11), vec![1, 0, 0, 0, 2, 0, 0, 1, 1, 0, 0, 1]);
        assert_eq!(poincare_series(&Cdga::ground(), 0), vec![1]);
    }

    #[test]
    fn hopf_bundle_products_vanish() {
        let ring = bundle_ring("x");
        assert!(ring.verify().is_valid());
        for i in 0..ring.dim() {
            for j in 0..ring.dim() {
                if ring.degree(i) > 0 && ring.degree(j) > 0 {
                    assert!(ring.mul_basis(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn hopf_bundle_massey_product() {
        let ring = bundle_ring("x");
        let (a, b) = (class(&ring, "x⊗1"), class(&ring, "1⊗x"));
        let m = triple_massey(&ring, &a, &b, &b).unwrap();
        assert!(m.defined && m.nontrivial);
        assert_eq!(m.degree, 11);
        assert!(m.indeterminacy.is_empty());
        let top = class(&ring, "s(s^-8(x))");
        let rep = m.class.unwrap();
        assert!(rep == top || rep == top.scaled(&-Scalar::one()));

        let search = massey_search(&ring).unwrap();
        let first = search.first_nontrivial.unwrap();
        assert_eq!(first.degree, 11);
        assert!(search.nontrivial >= 1);
    }

    #[test]
    fn trivial_bundle_massey_not_defined() {
        let ring = bundle_ring("0");
        let (a, b) = (class(&ring, "x⊗1"), class(&ring, "1⊗x"));
        let m = triple_massey(&ring, &a, &b, &b).unwrap();
        assert!(!m.defined && !m.nontrivial);
        assert!(massey_search(&ring).unwrap().first_nontrivial.is_none());
    }

    #[test]
    fn zero_differential_products_contain_zero() {
        let pd = fixtures::oriented(fixtures::S3_X_S3);
        let ring = cohomology_ring(pd.algebra()).unwrap();
        let search = massey_search(&ring).unwrap();
        assert!(search.defined > 0);
        assert_eq!(search.nontrivial, 0);
    }

    fn s4xr4_check(relations: &[String]) -> PresentationCheck {
        let ring = bundle_ring("0");
        let p = Presentation::from_toml(fixtures::CONF_S4_X_R4).unwrap();
        let images: Vec<Vector> = ["x⊗1", "1⊗x", "s(s^-8(1))"].iter().map(|n| class(&ring, n)).collect();
        verify_presentation(&ring, &p.generators, &images, relations, 15).unwrap()
    }

    #[test]
    fn trivial_bundle_presentation() {
        let p = Presentation::from_toml(fixtures::CONF_S4_X_R4).unwrap();
        let check = s4xr4_check(&p.relations);
        assert!(check.passed(), "{:?}", check.violations);
        assert_eq!(check.dims.get(&11), Some(&(1, 1)));
    }

    #[test]
    fn wrong_relation_is_caught_in_degree_11() {
        let relations = vec!["x^2".to_string(), "x'^2".into(), "u*x + 2*u*x'".into()];
        let check = s4xr4_check(&relations);
        assert!(!check.passed());
        assert_eq!(check.witness_degree, Some(11));
    }

    #[test]
    fn sphere_presentation() {
        let s4 = sphere(4);
        let ring = cohomology_ring(s4.algebra()).unwrap();
        let gens = vec![Generator { name: "x".into(), degree: 4 }];
        let check = verify_presentation(&ring, &gens, &[class(&ring, "x")], &["x^2".into()], 9).unwrap();
        assert!(check.passed());
    }
}
