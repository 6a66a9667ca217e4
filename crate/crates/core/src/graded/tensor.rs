//! Tensor products with the Koszul sign rule:
//! `d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy` and
//! `(x⊗y)(x'⊗y') = (-1)^{|y||x'|} xx'⊗yy'`.

use std::sync::Arc;

use super::cdga::Cdga;
use super::module::DgModule;
use super::morphism::{CdgaMorphism, DgMorphism};
use super::space::GradedSpace;
use crate::error::Result;
use crate::linalg::sign;
use crate::vector::Vector;

pub(crate) fn pair_name(a: &str, b: &str) -> String {
    let wrap = |s: &str| {
        if s.contains('⊗') {
            format!("({s})")
        } else {
            s.to_string()
        }
    };
    format!("{}⊗{}", wrap(a), wrap(b))
}

/// Basis of `X ⊗ Y`: index `i * dim Y + j` is `x_i ⊗ y_j`.
pub fn tensor_space(x: &GradedSpace, y: &GradedSpace) -> GradedSpace {
    let mut basis = Vec::with_capacity(x.dim() * y.dim());
    for i in 0..x.dim() {
        for j in 0..y.dim() {
            basis.push((pair_name(x.name(i), y.name(j)), x.degree(i) + y.degree(j)));
        }
    }
    GradedSpace::new(basis).expect("pair names are unique")
}

/// `u ⊗ v` for elements of the factors, as an element of the tensor space.
pub fn tensor_elements(u: &Vector, v: &Vector, dim_y: usize) -> Vector {
    let mut out = Vector::zero();
    for (i, a) in u.iter() {
        for (j, b) in v.iter() {
            out.add_term(i * dim_y + j, a * b);
        }
    }
    out
}

fn tensor_differential(
    x: &GradedSpace,
    dx: &dyn Fn(usize) -> Vector,
    y: &GradedSpace,
    dy: &dyn Fn(usize) -> Vector,
) -> Vec<Vector> {
    let ny = y.dim();
    let mut out = Vec::with_capacity(x.dim() * ny);
    for i in 0..x.dim() {
        let dxi = dx(i);
        for j in 0..ny {
            let mut v = tensor_elements(&dxi, &Vector::basis(j), ny);
            let t = tensor_elements(&Vector::basis(i), &dy(j), ny);
            v.add_scaled(&t, &sign(x.degree(i) as i64));
            out.push(v);
        }
    }
    out
}

impl Cdga {
    pub fn tensor(a: &Cdga, b: &Cdga) -> Cdga {
        let (sa, sb) = (a.space(), b.space());
        let space = tensor_space(sa, sb);
        let nb = sb.dim();
        let n = space.dim();
        let mut product = Vec::with_capacity(n * n);
        for i in 0..sa.dim() {
            for j in 0..nb {
                for k in 0..sa.dim() {
                    for l in 0..nb {
                        let s = sign((sb.degree(j) * sa.degree(k)) as i64);
                        let v = tensor_elements(a.mul_basis(i, k), b.mul_basis(j, l), nb);
                        product.push(v.scaled(&s));
                    }
                }
            }
        }
        let differential = tensor_differential(
            sa,
            &|i| a.d_basis(i).clone(),
            sb,
            &|j| b.d_basis(j).clone(),
        );
        let unit = tensor_elements(a.unit(), b.unit(), nb);
        Cdga::from_tables(space, unit, product, differential).expect("tensor tables are well formed")
    }

    /// The multiplication `A ⊗ A → A`, a CDGA morphism because `A` is
    /// graded commutative.
    pub fn multiplication(a: &Arc<Cdga>, aa: &Arc<Cdga>) -> CdgaMorphism {
        let n = a.dim();
        let images = (0..n * n).map(|k| a.mul_basis(k / n, k % n).clone()).collect();
        CdgaMorphism::from_images(Arc::clone(aa), Arc::clone(a), images)
            .expect("one image per basis element")
    }
}

impl DgModule {
    /// `M ⊗ N` as a module over `A ⊗ B`, with
    /// `(a⊗b)(m⊗n) = (-1)^{|b||m|} am⊗bn`.
    pub fn tensor(m: &DgModule, n: &DgModule, base: Arc<Cdga>) -> Result<DgModule> {
        let (sm, sn) = (m.space(), n.space());
        let (ba, bb) = (m.base(), n.base());
        let space = tensor_space(sm, sn);
        let nn = sn.dim();
        let differential =
            tensor_differential(sm, &|i| m.d_basis(i).clone(), sn, &|j| n.d_basis(j).clone());
        let mut action = Vec::with_capacity(base.dim() * space.dim());
        for a in 0..ba.dim() {
            for b in 0..bb.dim() {
                for i in 0..sm.dim() {
                    for j in 0..nn {
                        let s = sign((bb.degree(b) * sm.degree(i)) as i64);
                        let v = tensor_elements(m.act_basis(a, i), n.act_basis(b, j), nn);
                        action.push(v.scaled(&s));
                    }
                }
            }
        }
        DgModule::from_tables(base, space, differential, action)
    }
}

impl DgMorphism {
    /// `f ⊗ g`, between tensor modules over the same base.
    pub fn tensor(
        f: &DgMorphism,
        g: &DgMorphism,
        source: DgModule,
        target: DgModule,
    ) -> Result<DgMorphism> {
        let ng = g.target().dim();
        let mut images = Vec::with_capacity(f.source().dim() * g.source().dim());
        for i in 0..f.source().dim() {
            for j in 0..g.source().dim() {
                images.push(tensor_elements(f.image(i), g.image(j), ng));
            }
        }
        DgMorphism::from_images(source, target, images)
    }
}

impl CdgaMorphism {
    pub fn tensor(
        f: &CdgaMorphism,
        g: &CdgaMorphism,
        source: Arc<Cdga>,
        target: Arc<Cdga>,
    ) -> Result<CdgaMorphism> {
        let ng = g.target().dim();
        let mut images = Vec::with_capacity(f.source().dim() * g.source().dim());
        for i in 0..f.source().dim() {
            for j in 0..g.source().dim() {
                images.push(tensor_elements(f.image(i), g.image(j), ng));
            }
        }
        CdgaMorphism::from_images(source, target, images)
    }
}
