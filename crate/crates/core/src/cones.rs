//! Mapping cones, homotopy kernels, semi-trivial CDGA structures,
//! truncations, and the square model of a diagonal.
//!
//! The cone of `f: Q → N` is `N ⊕ sQ` with `δ(r, sq) = (dr + f(q), -s dq)`.
//! Its basis lists `N` first, then `sQ`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{
    tensor_elements, Cdga, CdgaMorphism, Cohomology, DgModule,
    DgMorphism, GradedSpace, Quotient,
};
use crate::linalg::{complement_in, sign, Matrix};
use crate::vector::Vector;

/// A mapping cone `N ⊕_f sQ`, optionally with a semi-trivial CDGA
/// structure (when `N` is the base algebra) and optionally truncated.
#[derive(Clone, Debug)]
pub struct ConeModel {
    attaching: DgMorphism,
    module: DgModule,
    algebra: Option<Arc<Cdga>>,
    inclusion: Option<CdgaMorphism>,
    truncation: Option<i32>,
}

impl ConeModel {
    pub fn attaching(&self) -> &DgMorphism {
        &self.attaching
    }

    pub fn fiber(&self) -> &DgModule {
        self.attaching.source()
    }

    /// The cone as a dgmodule over the base algebra (untruncated).
    pub fn module(&self) -> &DgModule {
        &self.module
    }

    /// Index of the first suspended basis element.
    pub fn split(&self) -> usize {
        self.attaching.target().dim()
    }

    pub fn is_semitrivial_cdga(&self) -> bool {
        self.algebra.is_some()
    }

    /// The CDGA structure, truncated if [`ConeModel::truncation`] is set.
    pub fn algebra(&self) -> Option<&Arc<Cdga>> {
        self.algebra.as_ref()
    }

    /// The structure map from the base algebra into [`ConeModel::algebra`].
    pub fn inclusion(&self) -> Option<&CdgaMorphism> {
        self.inclusion.as_ref()
    }

    pub fn truncation(&self) -> Option<i32> {
        self.truncation
    }

    /// Cohomology of the model: of the algebra when present, else of the
    /// module.
    pub fn cohomology(&self) -> Cohomology {
        match &self.algebra {
            Some(a) => a.cohomology(),
            None => self.module.cohomology(),
        }
    }

    /// Cone element `s q` for a fiber element `q`.
    pub fn suspended(&self, q: &Vector) -> Vector {
        let off = self.split();
        q.reindex(|i| i + off)
    }
}

/// `rename` receives the default name `s(q)` of each suspended element.
fn cone_module(f: &DgMorphism, rename: &dyn Fn(&str) -> String) -> Result<DgModule> {
    let (q, n) = (f.source(), f.target());
    let sq = q.suspend(1).renamed(rename);
    let sum = DgModule::direct_sum(&[n, &sq])?;
    let off = n.dim();
    let differential = (0..sum.dim())
        .map(|i| {
            let mut v = sum.d_basis(i).clone();
            if i >= off {
                v.add_scaled(f.image(i - off), &crate::linalg::scalar(1));
            }
            v
        })
        .collect();
    let base = sum.base();
    let mut action = Vec::with_capacity(base.dim() * sum.dim());
    for a in 0..base.dim() {
        for m in 0..sum.dim() {
            action.push(sum.act_basis(a, m).clone());
        }
    }
    DgModule::from_tables(Arc::clone(base), sum.space().clone(), differential, action)
}

/// The mapping cone of a dgmodule morphism, with its long exact sequence
/// checked.
pub fn mapping_cone(f: &DgMorphism) -> Result<ConeModel> {
    let r = f.verify();
    if !r.is_valid() {
        return Err(Error::NotAMorphism(r.to_string()));
    }
    let module = cone_module(f, &|n| n.to_string())?;
    let cone = ConeModel {
        attaching: f.clone(),
        module,
        algebra: None,
        inclusion: None,
        truncation: None,
    };
    check_long_exact_sequence(&cone)?;
    Ok(cone)
}

/// Checks exactness of `H(Q) → H(N) → H(C) → H(sQ) → H(N)` degree by
/// degree, using ranks of the induced maps.
pub fn check_long_exact_sequence(cone: &ConeModel) -> Result<()> {
    let f = &cone.attaching;
    let (q, n, c) = (f.source(), f.target(), &cone.module);
    let hq = q.cohomology();
    let hn = n.cohomology();
    let hc = c.cohomology();
    let off = cone.split();
    let include = |v: &Vector| v.clone();
    let project = |v: &Vector| -> Vector {
        let mut out = Vector::zero();
        for (i, x) in v.iter().filter(|(i, _)| *i >= off) {
            out.add_term(i - off, x.clone());
        }
        out
    };
    let degrees: BTreeSet<i32> = [q.space(), n.space(), c.space()]
        .iter()
        .flat_map(|s| s.support())
        .flat_map(|d| [d - 1, d])
        .collect();
    let fail = |deg: i32, at: &str| {
        Error::Internal(format!("cone long exact sequence not exact at {at} in degree {deg}"))
    };
    for &deg in &degrees {
        let hf = hq.induced_matrix(&hn, |v| f.apply(v), deg)?;
        let hj = hn.induced_matrix(&hc, include, deg)?;
        // p lands in (sQ)^deg = Q^{deg+1}.
        let hp = hc.induced_matrix_between(&hq, project, deg, deg + 1)?;
        let hf_next = hq.induced_matrix(&hn, |v| f.apply(v), deg + 1)?;
        if !(&hj * &hf).is_zero() || !(&hp * &hj).is_zero() || !(&hf_next * &hp).is_zero() {
            return Err(fail(deg, "a composite"));
        }
        if hn.dim_in_degree(deg) - hj.rank() != hf.rank() {
            return Err(fail(deg, "H(N)"));
        }
        if hc.dim_in_degree(deg) - hp.rank() != hj.rank() {
            return Err(fail(deg, "H(C)"));
        }
        if hq.dim_in_degree(deg + 1) - hf_next.rank() != hp.rank() {
            return Err(fail(deg, "H(sQ)"));
        }
    }
    Ok(())
}

/// The homotopy kernel `s^{-1}N ⊕_{s^{-1}f} M` of `f: M → N`, with its
/// projection to `M`.
#[derive(Clone, Debug)]
pub struct HomotopyKernel {
    pub cone: ConeModel,
    pub to_source: DgMorphism,
    /// For surjective `f`: the inclusion `ker f → hoker f`, checked to be a
    /// quasi-isomorphism.
    pub from_kernel: Option<DgMorphism>,
}

pub fn homotopy_kernel(f: &DgMorphism) -> Result<HomotopyKernel> {
    let r = f.verify();
    if !r.is_valid() {
        return Err(Error::NotAMorphism(r.to_string()));
    }
    let g = f.suspend(-1);
    let m = f.source();
    let module = cone_module(&g, &|nm: &str| {
        // s s^{-1} m is canonically m; keep the original name.
        nm.strip_prefix("s(s^-1(")
            .and_then(|s| s.strip_suffix("))"))
            .unwrap_or(nm)
            .to_string()
    })?;
    let off = g.target().dim();
    let images = (0..module.dim())
        .map(|i| if i >= off { Vector::basis(i - off) } else { Vector::zero() })
        .collect();
    let to_source = DgMorphism::new(module.clone(), m.clone(), images)?;
    let cone = ConeModel {
        attaching: g,
        module,
        algebra: None,
        inclusion: None,
        truncation: None,
    };
    check_long_exact_sequence(&cone)?;

    let from_kernel = if f.is_surjective() {
        let (ker, incl, _) = m.submodule(&f.kernel_basis())?;
        let images = incl.images().iter().map(|v| v.reindex(|i| i + off)).collect();
        let phi = DgMorphism::new(ker.clone(), cone.module.clone(), images)?;
        if !is_quasi_isomorphism(&phi)? {
            return Err(Error::Internal(
                "kernel of a surjection is not quasi-isomorphic to its homotopy kernel".into(),
            ));
        }
        Some(phi)
    } else {
        None
    };
    Ok(HomotopyKernel {
        cone,
        to_source,
        from_kernel,
    })
}

/// Whether a chain map induces isomorphisms in every degree.
pub fn is_quasi_isomorphism(f: &DgMorphism) -> Result<bool> {
    let hs = f.source().cohomology();
    let ht = f.target().cohomology();
    let degrees: BTreeSet<i32> = hs.space().support().into_iter().chain(ht.space().support()).collect();
    for deg in degrees {
        let m = hs.induced_matrix(&ht, |v| f.apply(v), deg)?;
        let (a, b) = (hs.dim_in_degree(deg), ht.dim_in_degree(deg));
        if a != b || m.rank() != a {
            return Ok(false);
        }
    }
    Ok(true)
}

fn target_is_base(f: &DgMorphism) -> Result<Arc<Cdga>> {
    let base = Arc::clone(f.target().base());
    if *f.target() != base.as_module() {
        return Err(Error::Mismatch(
            "the attaching map must land in the base algebra".into(),
        ));
    }
    Ok(base)
}

/// Whether `f: Q → A` satisfies `f(x)·y = (-1)^{|x||y|} f(y)·x` on all
/// basis pairs, i.e. `f(x)y = x f(y)` with `Q` viewed as a bimodule.
/// Returns a violating pair of basis names otherwise.
pub fn is_balanced(f: &DgMorphism) -> (bool, Option<(String, String)>) {
    let q = f.source();
    let sp = q.space();
    for x in 0..q.dim() {
        for y in x..q.dim() {
            let lhs = q.act(f.image(x), &Vector::basis(y));
            let rhs = q
                .act(f.image(y), &Vector::basis(x))
                .scaled(&sign((sp.degree(x) * sp.degree(y)) as i64));
            if lhs != rhs {
                return (false, Some((sp.name(x).to_string(), sp.name(y).to_string())));
            }
        }
    }
    (true, None)
}

/// The semi-trivial graded algebra on `A ⊕ sQ`, without any axiom check.
/// It is a CDGA exactly when `f` is balanced.
pub fn semi_trivial_structure(f: &DgMorphism) -> Result<Cdga> {
    let a = target_is_base(f)?;
    let module = cone_module(f, &|n| n.to_string())?;
    Ok(semi_trivial_on(&a, &module))
}

fn semi_trivial_on(a: &Arc<Cdga>, module: &DgModule) -> Cdga {
    let na = a.dim();
    let n = module.dim();
    let sp = module.space();
    let mut product = vec![Vector::zero(); n * n];
    for i in 0..na {
        for j in 0..na {
            product[i * n + j] = a.mul_basis(i, j).clone();
        }
        for j in na..n {
            let v = module.act_basis(i, j).clone();
            let s = sign((sp.degree(i) * sp.degree(j)) as i64);
            product[j * n + i] = v.scaled(&s);
            product[i * n + j] = v;
        }
    }
    let differential = (0..n).map(|i| module.d_basis(i).clone()).collect();
    Cdga::from_tables(sp.clone(), a.unit().clone(), product, differential)
        .expect("semi-trivial tables are well formed")
}

fn inclusion_of_base(a: &Arc<Cdga>, c: &Arc<Cdga>) -> Result<CdgaMorphism> {
    CdgaMorphism::new(Arc::clone(a), Arc::clone(c), (0..a.dim()).map(Vector::basis).collect())
}

/// The mapping cone of a balanced `f: Q → A` with its semi-trivial CDGA
/// structure.
pub fn semi_trivial_cone(f: &DgMorphism) -> Result<ConeModel> {
    let a = target_is_base(f)?;
    if let (false, Some((x, y))) = is_balanced(f) {
        return Err(Error::Unbalanced { map: "the attaching map".into(), x, y });
    }
    let mut cone = mapping_cone(f)?;
    let c = Arc::new(semi_trivial_on(&a, &cone.module).checked().map_err(|e| {
        Error::Internal(format!("balanced cone fails the CDGA axioms: {e}"))
    })?);
    cone.inclusion = Some(inclusion_of_base(&a, &c)?);
    cone.algebra = Some(c);
    Ok(cone)
}

/// The truncation ideal of `R` below degree `n`: a complement of the
/// cocycles in degree `n` plus everything above.
fn truncation_ideal(space: &GradedSpace, differential: &dyn Fn(&Vector) -> Vector, n: i32) -> Result<Vec<Vector>> {
    let idx = space.in_degree(n);
    let tgt = space.in_degree(n + 1);
    let cols: Vec<_> = idx
        .iter()
        .map(|&i| differential(&Vector::basis(i)).coords(tgt))
        .collect();
    let cocycles = Matrix::from_columns(tgt.len(), &cols).kernel();
    let mut ideal: Vec<Vector> = complement_in(&cocycles, idx.len())?
        .iter()
        .map(|c| Vector::from_coords(idx, c))
        .collect();
    ideal.extend(
        (0..space.dim())
            .filter(|&i| space.degree(i) > n)
            .map(Vector::basis),
    );
    Ok(ideal)
}

/// `τ^{≤N} R` of a dgmodule over a connected CDGA.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub bound: i32,
    pub ideal_basis: Vec<Vector>,
    pub quotient: DgModule,
    pub projection: DgMorphism,
}

/// `τ^{≤N}` of a CDGA.
#[derive(Clone, Debug)]
pub struct AlgebraTruncation {
    pub bound: i32,
    pub ideal_basis: Vec<Vector>,
    pub quotient: Arc<Cdga>,
    pub projection: CdgaMorphism,
    pub cosets: Quotient,
}

fn check_low_cohomology(
    source: &Cohomology,
    target: &Cohomology,
    pi: impl Fn(&Vector) -> Vector,
    bound: i32,
) -> Result<()> {
    for deg in source.space().support().into_iter().filter(|&d| d <= bound) {
        let m = source.induced_matrix(target, &pi, deg)?;
        if target.dim_in_degree(deg) != source.dim_in_degree(deg) || m.rank() != source.dim_in_degree(deg) {
            return Err(Error::Internal(format!(
                "truncation changes cohomology in degree {deg}"
            )));
        }
    }
    Ok(())
}

pub fn truncate(r: &DgModule, n: i32) -> Result<Truncation> {
    if !r.base().is_connected() {
        return Err(Error::NotConnected("the base algebra is not connected".into()));
    }
    let ideal = truncation_ideal(r.space(), &|v| r.d(v), n)?;
    let (quotient, projection, q) = r.quotient(&ideal)?;
    check_low_cohomology(&r.cohomology(), &quotient.cohomology(), |v| projection.apply(v), n)?;
    Ok(Truncation {
        bound: n,
        ideal_basis: q.sub_basis().to_vec(),
        quotient,
        projection,
    })
}

pub fn truncate_algebra(a: &Arc<Cdga>, n: i32) -> Result<AlgebraTruncation> {
    if !a.is_connected() {
        return Err(Error::NotConnected("the algebra is not connected".into()));
    }
    let ideal = truncation_ideal(a.space(), &|v| a.d(v), n)?;
    let (quotient, projection, cosets) = a.quotient(&ideal)?;
    check_low_cohomology(&a.cohomology(), &quotient.cohomology(), |v| projection.apply(v), n)?;
    Ok(AlgebraTruncation {
        bound: n,
        ideal_basis: cosets.sub_basis().to_vec(),
        quotient,
        projection,
        cosets,
    })
}

/// `τ^{≤N}` of the cone of `f: Q → A` with the induced semi-trivial
/// structure, for `Q^{<p} = 0` and `N ≤ 2p - 3`. Balancedness is not
/// needed; the Leibniz rule is checked on the result anyway.
pub fn truncated_semitrivial_cone(f: &DgMorphism, n: i32, p: i32) -> Result<ConeModel> {
    let a = target_is_base(f)?;
    if !a.is_connected() {
        return Err(Error::NotConnected("the base algebra is not connected".into()));
    }
    if let Some(bottom) = f.source().space().bottom_degree() {
        if bottom < p {
            return Err(Error::Connectivity(format!(
                "the fiber has a basis element in degree {bottom} < {p}"
            )));
        }
    }
    if n > 2 * p - 3 {
        return Err(Error::DegreeWindow { n, bound: 2 * p - 3 });
    }
    let mut cone = mapping_cone(f)?;
    let full = Arc::new(semi_trivial_on(&a, &cone.module));
    let t = truncate_algebra(&full, n)?;
    let report = t.quotient.verify();
    if !report.is_valid() {
        return Err(Error::Internal(format!(
            "the degree bound did not suffice for the truncated cone: {report}"
        )));
    }
    let incl = CdgaMorphism::new(
        Arc::clone(&a),
        Arc::clone(&t.quotient),
        (0..a.dim()).map(|i| t.projection.image(i).clone()).collect(),
    )?;
    cone.inclusion = Some(incl);
    cone.algebra = Some(t.quotient);
    cone.truncation = Some(n);
    Ok(cone)
}

/// The square `B⊗B → B`, `B⊗B → (B⊗B)/(K⊗K) → ∂B` for a surjection
/// `β: B → ∂B` with kernel `K`.
#[derive(Clone, Debug)]
pub struct SquareModel {
    pub beta: CdgaMorphism,
    pub kernel: Vec<Vector>,
    pub tensor: Arc<Cdga>,
    pub quotient: Arc<Cdga>,
    pub alpha: CdgaMorphism,
    pub mu: CdgaMorphism,
    pub mu_tilde: CdgaMorphism,
    pub cosets: Quotient,
}

pub fn square_model(beta: &CdgaMorphism) -> Result<SquareModel> {
    let r = beta.verify();
    if !r.is_valid() {
        return Err(Error::NotAMorphism(r.to_string()));
    }
    if !beta.is_surjective() {
        return Err(Error::Hypothesis("β is not surjective".into()));
    }
    let b = beta.source();
    let db = beta.target();
    let nb = b.dim();
    let kernel = beta.kernel_basis();
    let bb = Arc::new(Cdga::tensor(b, b));
    let kk: Vec<Vector> = kernel
        .iter()
        .flat_map(|x| kernel.iter().map(move |y| tensor_elements(x, y, nb)))
        .collect();
    let (quotient, alpha, cosets) = bb.quotient(&kk)?;
    let mu = Cdga::multiplication(b, &bb);
    let mu_tilde_images = cosets
        .representatives()
        .iter()
        .map(|&i| beta.apply(mu.image(i)))
        .collect();
    let mu_tilde = CdgaMorphism::new(Arc::clone(&quotient), Arc::clone(db), mu_tilde_images)?;
    for i in 0..bb.dim() {
        if mu_tilde.apply(alpha.image(i)) != beta.apply(mu.image(i)) {
            return Err(Error::Internal(format!(
                "square does not commute at {}",
                bb.space().name(i)
            )));
        }
    }
    let model = SquareModel {
        beta: beta.clone(),
        kernel,
        tensor: bb,
        quotient,
        alpha,
        mu,
        mu_tilde,
        cosets,
    };
    model.check_pullback()?;
    Ok(model)
}

impl SquareModel {
    /// Checks that `(β⊗id, id⊗β): B⊗B → (∂B⊗B) × (B⊗∂B)` has kernel
    /// exactly `K⊗K` and image the full fiber product over `∂B⊗∂B`, so the
    /// quotient is that fiber product.
    pub fn check_pullback(&self) -> Result<()> {
        let b = self.beta.source();
        let db = self.beta.target();
        let (nb, nd) = (b.dim(), db.dim());
        // Joint map into (∂B⊗B) ⊕ (B⊗∂B), index blocks [0, nd*nb) and [nd*nb, 2*nd*nb).
        let left = |i: usize, j: usize| tensor_elements(self.beta.image(i), &Vector::basis(j), nb);
        let right = |i: usize, j: usize| {
            tensor_elements(&Vector::basis(i), self.beta.image(j), nd).reindex(|k| k + nd * nb)
        };
        let db_b = crate::graded::tensor_space(db.space(), b.space());
        let b_db = crate::graded::tensor_space(b.space(), db.space());
        let bb = self.tensor.space();
        for deg in bb.support() {
            let src = bb.in_degree(deg);
            let tgt: Vec<usize> = db_b
                .in_degree(deg)
                .iter()
                .copied()
                .chain(b_db.in_degree(deg).iter().map(|&k| k + nd * nb))
                .collect();
            let cols: Vec<_> = src
                .iter()
                .map(|&k| {
                    let (i, j) = (k / nb, k % nb);
                    (&left(i, j) + &right(i, j)).coords(&tgt)
                })
                .collect();
            let joint = Matrix::from_columns(tgt.len(), &cols);
            let kernel_dim = src.len() - joint.rank();
            let expected = self.cosets.sub_basis().iter().filter(|v| bb.degree_of(v) == Some(deg)).count();
            if kernel_dim != expected {
                return Err(Error::Internal(format!(
                    "kernel of the comparison map differs from K⊗K in degree {deg}"
                )));
            }
            // Fiber product: pairs (u, v) with (id⊗β)u = (β⊗id)v.
            let dd = crate::graded::tensor_space(db.space(), db.space());
            let ddi = dd.in_degree(deg);
            let mut fcols = Vec::new();
            for &k in db_b.in_degree(deg) {
                let (i, j) = (k / nb, k % nb);
                fcols.push(tensor_elements(&Vector::basis(i), self.beta.image(j), nd).coords(ddi));
            }
            for &k in b_db.in_degree(deg) {
                let (i, j) = (k / nd, k % nd);
                fcols.push(
                    tensor_elements(self.beta.image(i), &Vector::basis(j), nd)
                        .scaled(&crate::linalg::scalar(-1))
                        .coords(ddi),
                );
            }
            let fiber_dim = fcols.len() - Matrix::from_columns(ddi.len(), &fcols).rank();
            if joint.rank() != fiber_dim {
                return Err(Error::Internal(format!(
                    "B⊗B does not surject onto the fiber product in degree {deg}"
                )));
            }
        }
        Ok(())
    }

    /// `K` as a `B`-dgmodule.
    pub fn kernel_module(&self) -> Result<DgModule> {
        Ok(self.beta.source().as_module().submodule(&self.kernel)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conf::{augmentation, disk_bundle_algebra};
    use crate::fixtures::{self, presented, sphere};
    use crate::pretty::pretty_model;

    fn ground() -> Arc<Cdga> {
        Arc::new(Cdga::ground())
    }

    /// `a` viewed as a cochain complex.
    fn over_ground(a: &Arc<Cdga>) -> DgModule {
        let unit = CdgaMorphism::new(ground(), Arc::clone(a), vec![a.unit().clone()]).unwrap();
        a.as_module().restrict(&unit).unwrap()
    }

    fn h(m: &DgModule) -> std::collections::BTreeMap<i32, usize> {
        m.cohomology().dims()
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let s2 = over_ground(&presented(fixtures::S2_MODEL).algebra);
        let cone = mapping_cone(&DgMorphism::identity(&s2)).unwrap();
        assert_eq!(cone.cohomology().dim(), 0);
    }

    #[test]
    fn cone_of_zero_splits() {
        let q = over_ground(&presented(fixtures::S2_MODEL).algebra);
        let n = over_ground(&presented(fixtures::S4).algebra);
        let cone = mapping_cone(&DgMorphism::zero(&q, &n)).unwrap();
        let (hq, hn, hc) = (q.cohomology(), n.cohomology(), cone.cohomology());
        for i in -2..=8 {
            assert_eq!(hc.dim_in_degree(i), hn.dim_in_degree(i) + hq.dim_in_degree(i + 1));
        }
    }

    fn hopf_attaching() -> DgMorphism {
        let r = presented(fixtures::S4).algebra;
        let square = Arc::new(Cdga::tensor(&r, &r));
        let mu = Cdga::multiplication(&r, &square);
        let source = r.as_module().restrict(&mu).unwrap().suspend(-8);
        let xx = square.element("x⊗x").unwrap();
        DgMorphism::new(source, square.as_module(), vec![xx, Vector::zero()]).unwrap()
    }

    #[test]
    fn hopf_cone() {
        let f = hopf_attaching();
        let cone = mapping_cone(&f).unwrap();
        assert_eq!(h(cone.module()), [(0, 1), (4, 2), (11, 1)].into());
        assert!(is_balanced(&f).0);
        let st = semi_trivial_cone(&f).unwrap();
        assert!(st.algebra().unwrap().verify().is_valid());
        assert!(st.inclusion().unwrap().verify().is_valid());
    }

    #[test]
    fn homotopy_kernel_examples() {
        let m = over_ground(&presented(fixtures::S2_MODEL).algebra);
        let id = homotopy_kernel(&DgMorphism::identity(&m)).unwrap();
        assert_eq!(id.cone.cohomology().dim(), 0);
        assert!(id.from_kernel.is_some());

        let n = over_ground(&presented(fixtures::S4).algebra);
        let zero = homotopy_kernel(&DgMorphism::zero(&m, &n)).unwrap();
        let (hm, hn, hk) = (m.cohomology(), n.cohomology(), zero.cone.cohomology());
        for i in -2..=9 {
            assert_eq!(hk.dim_in_degree(i), hm.dim_in_degree(i) + hn.dim_in_degree(i - 1));
        }
        assert!(zero.from_kernel.is_none());
    }

    #[test]
    fn homotopy_kernel_of_a_pretty_model() {
        let s4 = sphere(4);
        let x = s4.algebra().element("x").unwrap();
        let (p, phi) = disk_bundle_algebra(&s4, &x, 4).unwrap();
        let pm = pretty_model(&p, &phi).unwrap();
        let beta = pm.beta.as_module_morphism().unwrap();
        assert!(beta.is_surjective());
        let hk = homotopy_kernel(&beta).unwrap();
        let incl = hk.from_kernel.unwrap();
        assert_eq!(h(incl.source()), h(hk.cone.module()));
    }

    /// `A = ℚ[x]/(x³)` with `|x| = 2` and `Q = A·u ⊕ A·v`, `|u| = 0`,
    /// `|v| = 2`, mapped to `A` by `u ↦ 1`, `v ↦ x`.
    fn rank_two() -> DgMorphism {
        let a = presented("relations=[\"x^3\"]\nmax_degree=4\n[[generators]]\nname=\"x\"\ndegree=2\n").algebra;
        let m = a.as_module();
        let q = DgModule::direct_sum(&[&m, &m.suspend(-2)]).unwrap();
        let x = a.element("x").unwrap();
        let mut images: Vec<Vector> = (0..a.dim()).map(Vector::basis).collect();
        images.extend((0..a.dim()).map(|i| a.mul(&Vector::basis(i), &x)));
        DgMorphism::new(q, m, images).unwrap()
    }

    #[test]
    fn identity_and_rank_one_are_balanced() {
        let a = presented(fixtures::S2_MODEL).algebra;
        assert!(is_balanced(&DgMorphism::identity(&a.as_module())).0);
        // s^{-2}A → A, s^{-2}a ↦ ±a·c with c = a cocycle of degree 2.
        let c = a.element("a").unwrap();
        let src = a.as_module().suspend(-2);
        let images = (0..a.dim()).map(|i| a.mul(&Vector::basis(i), &c)).collect();
        let f = DgMorphism::new(src, a.as_module(), images).unwrap();
        assert!(is_balanced(&f).0);
        assert!(semi_trivial_cone(&f).unwrap().algebra().unwrap().verify().is_valid());
    }

    #[test]
    fn rank_two_is_unbalanced() {
        let f = rank_two();
        let (ok, witness) = is_balanced(&f);
        assert!(!ok);
        assert!(witness.is_some());
        assert!(matches!(semi_trivial_cone(&f), Err(Error::Unbalanced { .. })));
        let report = semi_trivial_structure(&f).unwrap().verify();
        assert!(report.has(crate::graded::axiom::LEIBNIZ));
    }

    #[test]
    fn zero_attaching_map_is_square_zero() {
        let a = presented(fixtures::S4).algebra;
        let q = a.as_module().suspend(-6);
        let cone = semi_trivial_cone(&DgMorphism::zero(&q, &a.as_module())).unwrap();
        let c = cone.algebra().unwrap();
        let off = cone.split();
        for i in off..c.dim() {
            for j in off..c.dim() {
                assert!(c.mul_basis(i, j).is_zero());
            }
        }
    }

    #[test]
    fn truncation_examples() {
        let s4 = presented(fixtures::S4).algebra;
        let t = truncate_algebra(&s4, 3).unwrap();
        assert_eq!(t.quotient.space().dims(), [(0, 1)].into());
        let t = truncate_algebra(&s4, 4).unwrap();
        assert_eq!(t.quotient.dim(), s4.dim());
        assert!(t.ideal_basis.is_empty());

        let s2 = presented(fixtures::S2_MODEL).algebra;
        let t = truncate_algebra(&s2, 4).unwrap();
        assert_eq!(t.quotient.space().dims(), [(0, 1), (2, 1), (3, 1), (4, 1)].into());
        assert_eq!(t.quotient.cohomology().dims(), [(0, 1), (2, 1)].into());
        let t = truncate(&s2.as_module(), 3).unwrap();
        // b is not a cocycle, so it is cut in degree 3.
        assert_eq!(t.quotient.space().dims(), [(0, 1), (2, 1)].into());
    }

    #[test]
    fn truncation_needs_a_connected_base() {
        let space = GradedSpace::new(vec![("1".into(), 0), ("e".into(), 0)]).unwrap();
        let a = Arc::new(crate::graded::CdgaBuilder::new(space).product("e", "e", &[(1, "e")]).build().unwrap());
        assert!(matches!(truncate(&a.as_module(), 1), Err(Error::NotConnected(_))));
    }

    #[test]
    fn degree_window() {
        let g = ground();
        let q = DgModule::direct_sum(&[
            &DgModule::trivial(Arc::clone(&g), "u", 4).unwrap(),
            &DgModule::trivial(Arc::clone(&g), "v", 6).unwrap(),
        ])
        .unwrap();
        let f = DgMorphism::zero(&q, &g.as_module());
        let cone = truncated_semitrivial_cone(&f, 5, 4).unwrap();
        assert_eq!(cone.algebra().unwrap().space().dims(), [(0, 1), (3, 1), (5, 1)].into());
        assert!(matches!(
            truncated_semitrivial_cone(&f, 6, 4),
            Err(Error::DegreeWindow { n: 6, bound: 5 })
        ));
        assert!(matches!(truncated_semitrivial_cone(&f, 5, 5), Err(Error::Connectivity(_))));
    }

    #[test]
    fn square_model_of_identity() {
        let b = presented(fixtures::S4).algebra;
        let sq = square_model(&CdgaMorphism::identity(&b)).unwrap();
        assert!(sq.kernel.is_empty());
        assert_eq!(sq.quotient.dim(), b.dim() * b.dim());
        for i in 0..sq.tensor.dim() {
            assert_eq!(sq.mu_tilde.apply(sq.alpha.image(i)), *sq.mu.image(i));
        }
    }

    #[test]
    fn square_model_of_augmentation() {
        let b = presented(fixtures::S4).algebra;
        let sq = square_model(&augmentation(&b).unwrap()).unwrap();
        assert_eq!(sq.kernel, vec![b.element("x").unwrap()]);
        assert_eq!(sq.quotient.space().dims(), [(0, 1), (4, 2)].into());
    }

    #[test]
    fn square_model_of_hopf_pretty_model() {
        let s4 = sphere(4);
        let x = s4.algebra().element("x").unwrap();
        let (p, phi) = disk_bundle_algebra(&s4, &x, 4).unwrap();
        let pm = pretty_model(&p, &phi).unwrap();
        let sq = square_model(&pm.beta).unwrap();
        let k = sq.kernel.len();
        assert_eq!(k, phi.kernel_basis().len());
        let nb = pm.beta.source().dim();
        assert_eq!(sq.quotient.dim(), nb * nb - k * k);
        assert!(sq.quotient.verify().is_valid());
    }

    #[test]
    fn non_surjection_is_rejected() {
        let b = presented(fixtures::S4).algebra;
        let bb = Arc::new(Cdga::tensor(&b, &b));
        let incl = CdgaMorphism::new(
            Arc::clone(&b),
            Arc::clone(&bb),
            (0..b.dim()).map(|i| tensor_elements(&Vector::basis(i), b.unit(), b.dim())).collect(),
        )
        .unwrap();
        assert!(matches!(square_model(&incl), Err(Error::Hypothesis(_))));
    }
}
