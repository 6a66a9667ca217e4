//! Models of complements `W ∖ K` and of configuration spaces of two
//! points in manifolds with boundary.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::cones::{
    is_quasi_isomorphism, semi_trivial_cone, square_model, truncated_semitrivial_cone, ConeModel,
};
use crate::duality::PdAlgebra;
use crate::error::{Error, Result};
use crate::graded::{tensor_elements, Cdga, CdgaMorphism, Cohomology, DgModule, DgMorphism, GradedSpace, Report};
use crate::linalg::Scalar;
use crate::pretty::{check_square, diagonal_shriek, pretty_model, truncated_diagonal_shriek, PrettyModel, SquareCheck};
use crate::vector::Vector;

pub const TWO_CONNECTED: &str = "the manifold and its boundary are 2-connected";
pub const WEAK_EQUIVALENCE: &str =
    "the shriek map is weakly equivalent to the dual of the kernel multiplication (only cohomology dimensions are checked)";
pub const FIBER_EQUIVALENCE: &str =
    "the fiber is weakly equivalent to the dual of the homotopy kernel and the attaching map to the dual of its restriction";

/// A model `ambient → cone` of `Conf(W, 2) ↪ W × W`.
#[derive(Clone, Debug)]
pub struct Conf2Model {
    pub ambient: Arc<Cdga>,
    pub cone: ConeModel,
    pub inclusion: CdgaMorphism,
    /// Hypotheses taken on faith.
    pub hypotheses: Vec<String>,
    pub square: Option<SquareCheck>,
    pub kernel_check: Option<KernelCheck>,
}

impl Conf2Model {
    fn new(ambient: Arc<Cdga>, cone: ConeModel, hypotheses: Vec<String>) -> Conf2Model {
        let inclusion = cone.inclusion().expect("semi-trivial cone").clone();
        Conf2Model {
            ambient,
            cone,
            inclusion,
            hypotheses,
            square: None,
            kernel_check: None,
        }
    }

    pub fn algebra(&self) -> &Arc<Cdga> {
        self.cone.algebra().expect("semi-trivial cone")
    }

    pub fn cohomology(&self) -> Cohomology {
        self.algebra().cohomology()
    }

    /// CDGA axioms of the model followed by those of the inclusion.
    pub fn verify(&self) -> Report {
        let mut r = self.algebra().verify();
        r.merge(self.inclusion.verify());
        r
    }
}

/// Cohomology dimensions of the fiber `D` against those of
/// `s^{-2n}#ker β`, degree by degree.
#[derive(Clone, Debug, serde::Serialize)]
pub struct KernelCheck {
    pub dims: BTreeMap<i32, (usize, usize)>,
}

impl KernelCheck {
    pub fn matches(&self) -> bool {
        self.dims.values().all(|(a, b)| a == b)
    }
}

/// `B⊗B → τ^{≤2n-3} C(δ^!)` for a surjection `β: B → ∂B` and a
/// `B'⊗B'`-dgmodule morphism `δ^!: D → B'⊗B'`. Without `replacement`,
/// `B' = B`; otherwise `replacement: B → B'` must be a quasi-isomorphism.
pub fn conf2_general(
    beta: &CdgaMorphism,
    delta: &DgMorphism,
    n: i32,
    replacement: Option<&CdgaMorphism>,
) -> Result<Conf2Model> {
    if !beta.is_surjective() {
        return Err(Error::Hypothesis("β is not surjective".into()));
    }
    let b = beta.source();
    let target = match replacement {
        None => Arc::clone(b),
        Some(rho) => {
            if !Arc::ptr_eq(rho.source(), b) && **rho.source() != **b {
                return Err(Error::Mismatch("the replacement must start at the source of β".into()));
            }
            if !is_quasi_isomorphism(&rho.as_module_morphism()?)? {
                return Err(Error::Hypothesis("the replacement is not a quasi-isomorphism".into()));
            }
            Arc::clone(rho.target())
        }
    };
    let ambient = Arc::new(Cdga::tensor(&target, &target));
    if **delta.target().base() != *ambient || *delta.target() != ambient.as_module() {
        return Err(Error::Mismatch("δ^! must land in the square of the model".into()));
    }
    let r = delta.verify();
    if !r.is_valid() {
        return Err(Error::NotAMorphism(r.to_string()));
    }
    if let Some(bottom) = delta.source().space().bottom_degree() {
        if bottom < n {
            return Err(Error::Connectivity(format!(
                "the fiber has a basis element in degree {bottom} < {n}"
            )));
        }
    }
    let square = square_model(beta)?;
    let kernel = square.kernel_module()?.dual_shift(-2 * n).cohomology().dims();
    let fiber = delta.source().cohomology().dims();
    let degrees: std::collections::BTreeSet<i32> = kernel.keys().chain(fiber.keys()).copied().collect();
    let dims = degrees
        .into_iter()
        .map(|d| {
            let get = |m: &BTreeMap<i32, usize>| m.get(&d).copied().unwrap_or(0);
            (d, (get(&fiber), get(&kernel)))
        })
        .collect();

    let cone = truncated_semitrivial_cone(delta, 2 * n - 3, n)?;
    let mut model = Conf2Model::new(
        ambient,
        cone,
        vec![TWO_CONNECTED.to_string(), WEAK_EQUIVALENCE.to_string()],
    );
    model.kernel_check = Some(KernelCheck { dims });
    Ok(model)
}

/// `(P/I ⊗ P/I) ⊕_{Δ̄^!} ss^{-n}(P/I)`, untruncated unless `truncate`.
pub fn conf2_pretty(pm: &PrettyModel, truncate: bool) -> Result<Conf2Model> {
    let td = truncated_diagonal_shriek(pm)?;
    let n = pm.formal_dimension();
    let cone = if truncate {
        truncated_semitrivial_cone(&td.shriek, 2 * n - 3, n)?
    } else {
        semi_trivial_cone(&td.shriek)?
    };
    let mut model = Conf2Model::new(Arc::clone(&td.square), cone, vec![TWO_CONNECTED.to_string()]);
    model.square = Some(check_square(pm, &td)?);
    Ok(model)
}

/// The two routes to a model of `Conf(Dξ, 2)` for a disk bundle.
#[derive(Clone, Debug)]
pub struct DiskBundleModel {
    /// The oriented algebra `Q ⊗ ∧z̄ / (z̄² - ez̄)`.
    pub total: PdAlgebra,
    pub pretty: PrettyModel,
    pub model: Conf2Model,
    /// `Q⊗Q ⊕_{(Δ_Q·(1⊗e))^!} ss^{-n}Q`, built without `P`.
    pub direct: Conf2Model,
}

pub const ZBAR: &str = "zbar";

/// `P = Q ⊗ ∧z̄ / (z̄² - ez̄)` with `|z̄| = rank`, `dz̄ = 0` and fundamental
/// class `-ωz̄`, together with `φ(q₁ + q₂z̄) = q₁ + q₂e`.
///
/// The basis of `P` lists the basis of `Q`, then its products with `z̄`.
pub fn disk_bundle_algebra(q: &PdAlgebra, e: &Vector, rank: i32) -> Result<(PdAlgebra, CdgaMorphism)> {
    if rank % 2 != 0 {
        return Err(Error::Hypothesis("rank must be even".into()));
    }
    if rank < 4 {
        return Err(Error::Hypothesis(format!("rank {rank} is below 4")));
    }
    let qa = q.algebra();
    let sp = qa.space();
    if !e.is_zero() && !sp.is_homogeneous(e, rank) {
        return Err(Error::Invalid(format!("the Euler class is not of degree {rank}")));
    }
    if !qa.is_cocycle(e) {
        return Err(Error::NotACocycle);
    }
    let m = qa.dim();
    let shift = |v: &Vector| v.reindex(|i| i + m);
    let mut names: Vec<(String, i32)> = (0..m).map(|i| (sp.name(i).to_string(), sp.degree(i))).collect();
    for i in 0..m {
        let name = if Vector::basis(i) == *qa.unit() {
            ZBAR.to_string()
        } else {
            format!("{}*{ZBAR}", sp.name(i))
        };
        names.push((name, sp.degree(i) + rank));
    }
    let space = GradedSpace::new(names)?;
    let mut product = Vec::with_capacity(4 * m * m);
    for i in 0..2 * m {
        for j in 0..2 * m {
            let qq = qa.mul_basis(i % m, j % m);
            product.push(match (i < m, j < m) {
                (true, true) => qq.clone(),
                (false, false) => shift(&qa.mul(qq, e)),
                _ => shift(qq),
            });
        }
    }
    let differential = (0..2 * m)
        .map(|i| {
            let dq = qa.d_basis(i % m);
            if i < m {
                dq.clone()
            } else {
                shift(dq)
            }
        })
        .collect();
    let p = Arc::new(Cdga::new(space, qa.unit().clone(), product, differential)?);
    let n = q.formal_dimension() + rank;
    let epsilon = shift(q.orientation()).scaled(&-Scalar::one());
    let pd = PdAlgebra::from_functional(Arc::clone(&p), n, epsilon)?;
    let images = (0..2 * m)
        .map(|i| {
            if i < m {
                Vector::basis(i)
            } else {
                qa.mul(&Vector::basis(i - m), e)
            }
        })
        .collect();
    let phi = CdgaMorphism::new(p, Arc::clone(qa), images)?;
    Ok((pd, phi))
}

pub fn conf2_disk_bundle(q: &PdAlgebra, e: &Vector, rank: i32) -> Result<DiskBundleModel> {
    let (total, phi) = disk_bundle_algebra(q, e, rank)?;
    let pretty = pretty_model(&total, &phi)?;
    let model = conf2_pretty(&pretty, false)?;

    let qa = q.algebra();
    let n = total.formal_dimension();
    let square = Arc::new(Cdga::tensor(qa, qa));
    let e_right = tensor_elements(qa.unit(), e, qa.dim());
    let diagonal = square.mul(&q.diagonal_class(), &e_right);
    let td = diagonal_shriek(qa, &square, diagonal, n)?;
    let direct = Conf2Model::new(
        Arc::clone(&square),
        semi_trivial_cone(&td.shriek)?,
        vec![TWO_CONNECTED.to_string()],
    );
    if !model.algebra().matches_by_name(direct.algebra()) {
        return Err(Error::Internal(
            "the pretty-model route and the direct route give different structure constants".into(),
        ));
    }
    Ok(DiskBundleModel {
        total,
        pretty,
        model,
        direct,
    })
}

/// `φ: P → ℚ`, the augmentation of a connected algebra.
pub fn augmentation(p: &Arc<Cdga>) -> Result<CdgaMorphism> {
    let ground = Arc::new(Cdga::ground());
    let unit = p.unit();
    let images = (0..p.dim())
        .map(|i| {
            let c = unit.get(i);
            if c.is_zero() {
                Vector::zero()
            } else {
                Vector::term(0, c.recip())
            }
        })
        .collect();
    CdgaMorphism::new(Arc::clone(p), ground, images)
}

/// `P̄ ⊗ P̄ ⊕_{Δ̄^!} ss^{-n}P̄` with `P̄ = P/ℚω`, a model of the
/// configuration space of two points in the punctured manifold.
pub fn conf2_punctured(pd: &PdAlgebra) -> Result<(PrettyModel, Conf2Model)> {
    let phi = augmentation(pd.algebra())?;
    let pm = pretty_model(pd, &phi)?;
    let mut model = conf2_pretty(&pm, false)?;
    let sp = pd.algebra().space();
    if sp.dim_in_degree(1) + sp.dim_in_degree(2) > 0 {
        model
            .hypotheses
            .push("P has elements in degree 1 or 2, so 2-connectedness is doubtful".into());
    }
    Ok((pm, model))
}

/// Data for a model of `W ∖ K` with `dim W = n` and `dim K = k`, where
/// the inclusions of `K` and `∂_W K` are `r`-connected in homology.
#[derive(Clone, Debug)]
pub struct ComplementInput {
    pub fiber: DgModule,
    pub attaching: DgMorphism,
    pub n: i32,
    pub k: i32,
    pub r: i32,
}

#[derive(Clone, Debug)]
pub struct ComplementModel {
    pub cone: ConeModel,
    pub bound: i32,
    /// False when the unknotting condition fails and the model is only
    /// valid up to degree `bound`.
    pub full: bool,
    pub hypotheses: Vec<String>,
}

impl ComplementModel {
    pub fn algebra(&self) -> &Arc<Cdga> {
        self.cone.algebra().expect("semi-trivial cone")
    }
}

pub fn complement_model(input: &ComplementInput) -> Result<ComplementModel> {
    let (n, k, r) = (input.n, input.k, input.r);
    if *input.attaching.source() != input.fiber {
        return Err(Error::Mismatch("the attaching map must start at the fiber".into()));
    }
    let p = n - k;
    let window = 2 * p - 3;
    let full = r >= 2 * k - n + 2;
    let bound = if full { n - r - 1 } else { window };
    if full && bound > window {
        return Err(Error::Internal(format!(
            "unknotting gives N = {bound} above the window 2(n-k)-3 = {window}"
        )));
    }
    let cone = truncated_semitrivial_cone(&input.attaching, bound, p)?;
    let mut hypotheses = vec![FIBER_EQUIVALENCE.to_string()];
    if !full {
        hypotheses.push(format!("model up to degree {bound}: the unknotting condition r ≥ 2k-n+2 fails"));
    }
    Ok(ComplementModel {
        cone,
        bound,
        full,
        hypotheses,
    })
}
