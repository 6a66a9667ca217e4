//! Invariants checked on one random input each. Every check draws its
//! input from the given generator and returns a description of the first
//! failure.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use super::{FreeAttaching, Gen};
use crate::analysis::{cohomology_ring, massey_representative, triple_massey};
use crate::cones::{
    check_long_exact_sequence, homotopy_kernel, is_balanced, mapping_cone, semi_trivial_cone,
    semi_trivial_structure, square_model, truncate, truncate_algebra,
};
use crate::graded::{basis_change_inverse, euler_characteristic, tensor_elements, Subspace};
use crate::linalg::{Matrix, Scalar};
use crate::pretty::diagonal_shriek;
use crate::vector::Vector;
use crate::{Cdga, DgModule, DgMorphism};

pub type Check = fn(&mut Gen) -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Every check with a short name.
pub const ALL: &[(&str, Check)] = &[
    ("complexes, shifts and duals", complexes_shifts_and_duals),
    ("cones are exact", cones_are_exact),
    ("Künneth and Koszul signs", kunneth_and_koszul),
    ("tensor of chain maps", tensor_of_chain_maps),
    ("homotopy kernel of a surjection", homotopy_kernel_of_surjection),
    ("balanced iff Leibniz", balanced_iff_leibniz),
    ("truncation", truncation),
    ("kernel of the comparison map", comparison_kernel),
    ("dual bases", dual_bases),
    ("diagonal class", diagonal_class),
    ("diagonal multiplication is balanced", diagonal_multiplication_balanced),
    ("cohomology ring is basis independent", ring_basis_independence),
    ("formal Massey products vanish", formal_massey_vanish),
    ("Massey indeterminacy", massey_indeterminacy),
];

fn convolve(x: &BTreeMap<i32, usize>, y: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (&p, &a) in x {
        for (&q, &b) in y {
            *out.entry(p + q).or_insert(0) += a * b;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

fn ground() -> Arc<Cdga> {
    Arc::new(Cdga::ground())
}

pub fn complexes_shifts_and_duals(g: &mut Gen) -> Result<(), String> {
    let c = g.complex(5, -2, 4);
    ensure!(c.module.verify().is_valid(), "random complex: {}", c.module.verify());
    let k = g.range(-3, 3);
    let h = c.module.cohomology().dims();
    for m in [c.module.suspend(k), c.module.dual(), c.module.dual_shift(k)] {
        ensure!(m.verify().is_valid(), "shift or dual: {}", m.verify());
    }
    let shifted: BTreeMap<i32, usize> = h.iter().map(|(&d, &n)| (d - k, n)).collect();
    ensure!(c.module.suspend(k).cohomology().dims() == shifted, "H(s^k M) is not H(M) shifted");
    let twice = c.module.dual_shift(k).dual_shift(k);
    ensure!(twice.cohomology().dims() == h, "dual shift twice changes H");
    Ok(())
}

pub fn cones_are_exact(g: &mut Gen) -> Result<(), String> {
    let q = g.complex(4, 0, 4);
    let a = g.complex(4, 0, 4).module;
    let f = g.chain_map(&q, &a);
    ensure!(f.verify().is_valid(), "random chain map: {}", f.verify());
    let fd = ok(f.dual_shift(g.range(-2, 2)), "dual map")?;
    ensure!(fd.verify().is_valid(), "dual map: {}", fd.verify());

    let cone = ok(mapping_cone(&f), "cone")?;
    ensure!(cone.module().verify().is_valid(), "cone: {}", cone.module().verify());
    ok(check_long_exact_sequence(&cone), "long exact sequence")?;
    let chi = |m: &DgModule| euler_characteristic(m.space());
    ensure!(
        cone.cohomology().euler_characteristic() == chi(&a) - chi(&q.module),
        "Euler characteristic of the cone"
    );
    Ok(())
}

pub fn kunneth_and_koszul(g: &mut Gen) -> Result<(), String> {
    let a = g.small_cdga(8);
    let b = g.small_cdga(8);
    let ab = Cdga::tensor(&a, &b);
    ensure!(ab.verify().is_valid(), "A ⊗ B: {}", ab.verify());
    ensure!(
        ab.cohomology().dims() == convolve(&a.cohomology().dims(), &b.cohomology().dims()),
        "Künneth fails"
    );
    ensure!(
        ab.cohomology().euler_characteristic()
            == a.cohomology().euler_characteristic() * b.cohomology().euler_characteristic(),
        "Euler characteristic is not multiplicative"
    );
    let base = Arc::new(ab);
    let m = ok(DgModule::tensor(&a.as_module(), &b.as_module(), Arc::clone(&base)), "module tensor")?;
    ensure!(m.verify().is_valid(), "A ⊗ B as a module: {}", m.verify());
    let k = g.range(-3, 3);
    ensure!(m.suspend(k).verify().is_valid(), "suspended module: {}", m.suspend(k).verify());
    ensure!(m.dual_shift(k).verify().is_valid(), "dual module: {}", m.dual_shift(k).verify());
    Ok(())
}

pub fn tensor_of_chain_maps(g: &mut Gen) -> Result<(), String> {
    let (q1, q2) = (g.complex(3, 0, 3), g.complex(3, 0, 3));
    let (t1, t2) = (g.complex(3, 0, 3).module, g.complex(3, 0, 3).module);
    let (f1, f2) = (g.chain_map(&q1, &t1), g.chain_map(&q2, &t2));
    let src = ok(DgModule::tensor(&q1.module, &q2.module, ground()), "source")?;
    let tgt = ok(DgModule::tensor(&t1, &t2, ground()), "target")?;
    let f = ok(DgMorphism::tensor(&f1, &f2, src, tgt), "f ⊗ g")?;
    ensure!(f.verify().is_valid(), "f ⊗ g: {}", f.verify());
    Ok(())
}

pub fn homotopy_kernel_of_surjection(g: &mut Gen) -> Result<(), String> {
    let f = g.surjection(4);
    ensure!(f.is_surjective(), "generated map is not surjective");
    let hk = ok(homotopy_kernel(&f), "homotopy kernel")?;
    ensure!(hk.from_kernel.is_some(), "no comparison from the kernel");
    ensure!(hk.to_source.verify().is_valid(), "projection: {}", hk.to_source.verify());
    Ok(())
}

pub fn balanced_iff_leibniz(g: &mut Gen) -> Result<(), String> {
    let a = if g.coin() { g.small_cdga(8) } else { g.formal_cdga() };
    let summands = 1 + g.below(2);
    let FreeAttaching { map: f, shifts } = g.free_attaching(&a, summands);
    let (balanced, witness) = is_balanced(&f);
    let report = ok(semi_trivial_structure(&f), "semi-trivial structure")?.verify();
    ensure!(balanced == report.is_valid(), "balanced = {balanced} but axioms: {report}");
    if summands == 1 && shifts[0] % 2 == 0 {
        ensure!(balanced, "rank one with even shift should be balanced");
    }
    match witness {
        None => {
            ensure!(balanced, "unbalanced without a witness");
            let cone = ok(semi_trivial_cone(&f), "semi-trivial cone")?;
            let c = cone.algebra().expect("semi-trivial cones carry an algebra");
            ensure!(c.verify().is_valid(), "cone algebra: {}", c.verify());
        }
        Some((x, y)) => {
            ensure!(!balanced, "witness for a balanced map");
            let q = f.source();
            let sp = q.space();
            let (i, j) = (sp.index_of(&x).unwrap(), sp.index_of(&y).unwrap());
            let lhs = q.act(f.image(i), &Vector::basis(j));
            let rhs = q.act(f.image(j), &Vector::basis(i));
            let rhs = if (sp.degree(i) * sp.degree(j)) % 2 != 0 { -&rhs } else { rhs };
            ensure!(lhs != rhs, "witness ({x}, {y}) satisfies the condition");
            ensure!(semi_trivial_cone(&f).is_err(), "unbalanced cone accepted");
        }
    }
    Ok(())
}

pub fn truncation(g: &mut Gen) -> Result<(), String> {
    let a = g.cdga();
    let top = a.space().top_degree().unwrap_or(0);
    let n = g.range(0, top + 1);
    let t = ok(truncate_algebra(&a, n), "truncation")?;
    ensure!(t.quotient.verify().is_valid(), "quotient: {}", t.quotient.verify());
    ensure!(t.quotient.space().top_degree().unwrap_or(0) <= n, "quotient is nonzero above {n}");
    let low = |m: BTreeMap<i32, usize>| m.into_iter().filter(|&(d, _)| d <= n).collect::<Vec<_>>();
    ensure!(
        low(a.cohomology().dims()) == low(t.quotient.cohomology().dims()),
        "cohomology up to {n} changed"
    );
    let m = ok(truncate(&a.as_module().suspend(g.range(-2, 0)), n), "module truncation")?;
    ensure!(m.quotient.space().top_degree().unwrap_or(0) <= n, "module quotient is nonzero above {n}");
    Ok(())
}

/// `ker(β⊗id) ∩ ker(id⊗β) = ker β ⊗ ker β`, computed directly.
pub fn comparison_kernel(g: &mut Gen) -> Result<(), String> {
    let beta = g.cdga_surjection();
    let sq = ok(square_model(&beta), "square model")?;
    let (nb, nd) = (beta.source().dim(), beta.target().dim());
    let bb = sq.tensor.space();
    let width = nd * nb;
    let mut total = 0;
    for deg in bb.support() {
        let src = bb.in_degree(deg);
        let cols: Vec<Vec<Scalar>> = src
            .iter()
            .map(|&idx| {
                let (i, j) = (idx / nb, idx % nb);
                let mut v = tensor_elements(beta.image(i), &Vector::basis(j), nb).to_dense(width);
                v.extend(tensor_elements(&Vector::basis(i), beta.image(j), nd).to_dense(width));
                v
            })
            .collect();
        let kernel_dim = src.len() - Matrix::from_columns(2 * width, &cols).rank();
        let kk = sq.cosets.sub_basis().iter().filter(|v| bb.degree_of(v) == Some(deg)).count();
        ensure!(kernel_dim == kk, "degree {deg}: kernel {kernel_dim}, K⊗K {kk}");
        total += kernel_dim;
    }
    ensure!(total == sq.kernel.len().pow(2), "K⊗K has the wrong dimension");
    ensure!(sq.quotient.verify().is_valid(), "quotient: {}", sq.quotient.verify());
    Ok(())
}

pub fn dual_bases(g: &mut Gen) -> Result<(), String> {
    let pd = g.pd_algebra();
    let a = pd.algebra();
    let basis = g.basis(a.space());
    let duals = ok(pd.dual_basis_of(&basis), "dual basis")?;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in duals.iter().enumerate() {
            let e = pd.epsilon(&a.mul(x, y));
            let expected = if i == j { Scalar::one() } else { Scalar::zero() };
            ensure!(e == expected, "ε(a_{i} a_{j}*) = {e}");
        }
    }
    Ok(())
}

pub fn diagonal_class(g: &mut Gen) -> Result<(), String> {
    let pd = g.pd_algebra();
    let a = pd.algebra();
    let delta = pd.diagonal_class();
    let basis = g.basis(a.space());
    ensure!(ok(pd.diagonal_class_of(&basis), "diagonal")? == delta, "diagonal depends on the basis");
    let square = Cdga::tensor(a, a);
    ensure!(square.d(&delta).is_zero(), "dΔ ≠ 0");
    ensure!(
        square.space().degree_of(&delta) == Some(pd.formal_dimension()),
        "Δ has the wrong degree"
    );
    Ok(())
}

pub fn diagonal_multiplication_balanced(g: &mut Gen) -> Result<(), String> {
    let pd = loop {
        let pd = g.pd_algebra();
        if pd.algebra().dim() <= 9 {
            break pd;
        }
    };
    let a = pd.algebra();
    let square = Arc::new(Cdga::tensor(a, a));
    ok(diagonal_shriek(a, &square, pd.diagonal_class(), pd.formal_dimension()), "Δ-multiplication")?;
    Ok(())
}

pub fn ring_basis_independence(g: &mut Gen) -> Result<(), String> {
    let a = g.small_cdga(12);
    let change = g.basis(a.space());
    let names = (0..a.dim()).map(|i| format!("v{i}")).collect();
    let b = Arc::new(ok(a.change_basis(&change, names), "basis change")?);
    let to_new = ok(basis_change_inverse(a.space(), &change), "inverse")?;
    let (ra, rb) = (ok(cohomology_ring(&a), "ring")?, ok(cohomology_ring(&b), "ring")?);
    ensure!(ra.verify().is_valid(), "ring table: {}", ra.verify());
    ensure!(ra.cohomology().dims() == rb.cohomology().dims(), "Betti numbers differ");
    let transport = |v: &Vector| {
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            out.add_scaled(&to_new[i], c);
        }
        out
    };
    let map = |class: &Vector| rb.class_of(&transport(&ra.representative(class)));
    for i in 0..ra.dim() {
        for j in 0..ra.dim() {
            let (u, v) = (Vector::basis(i), Vector::basis(j));
            let lhs = ok(map(&ra.mul(&u, &v)), "class")?;
            let rhs = rb.mul(&ok(map(&u), "class")?, &ok(map(&v), "class")?);
            ensure!(lhs == rhs, "products of classes {i}, {j} disagree");
        }
    }
    Ok(())
}

fn random_triple(g: &mut Gen, positive: &[usize]) -> [Vector; 3] {
    [0, 1, 2].map(|_| Vector::basis(positive[g.below(positive.len())]))
}

pub fn formal_massey_vanish(g: &mut Gen) -> Result<(), String> {
    let a = loop {
        let a = g.formal_cdga();
        if a.dim() <= 16 {
            break a;
        }
    };
    let ring = ok(cohomology_ring(&a), "ring")?;
    let positive: Vec<usize> = (0..ring.dim()).filter(|&i| ring.degree(i) > 0).collect();
    for _ in 0..6 {
        let [x, y, z] = random_triple(g, &positive);
        let m = ok(triple_massey(&ring, &x, &y, &z), "Massey")?;
        ensure!(!m.nontrivial, "nontrivial Massey product {:?} with zero differential", m.triple);
    }
    Ok(())
}

/// Re-chosen primitives move the representative within the indeterminacy.
pub fn massey_indeterminacy(g: &mut Gen) -> Result<(), String> {
    let a = g.small_cdga(16);
    let ring = ok(cohomology_ring(&a), "ring")?;
    let h = ring.cohomology();
    let sp = ring.space();
    let positive: Vec<usize> = (0..ring.dim()).filter(|&i| ring.degree(i) > 0).collect();
    if positive.is_empty() {
        return Ok(());
    }
    for _ in 0..6 {
        let [x, y, z] = random_triple(g, &positive);
        let m = ok(triple_massey(&ring, &x, &y, &z), "Massey")?;
        if !m.defined {
            continue;
        }
        let deg = |v: &Vector| sp.degree_of(v).expect("basis classes are homogeneous");
        let (dx, dy, dz) = (deg(&x), deg(&y), deg(&z));
        let (rx, ry, rz) = (ring.representative(&x), ring.representative(&y), ring.representative(&z));
        let mut cocycle = |deg: i32| {
            let zs: Vec<Vector> = (0..h.dim())
                .filter(|&i| h.space().degree(i) == deg)
                .map(|i| h.representative(i).clone())
                .collect();
            let mut c = g.combination(&zs);
            c += &a.d(&g.element(a.space(), deg - 1));
            c
        };
        let mut u = h.primitive(&a.mul(&rx, &ry), dx + dy).ok_or("no primitive")?;
        u += &cocycle(dx + dy - 1);
        let mut w = h.primitive(&a.mul(&ry, &rz), dy + dz).ok_or("no primitive")?;
        w += &cocycle(dy + dz - 1);
        let other = ok(massey_representative(&ring, &x, &z, &u, &w), "representative")?;
        let diff = &other - m.class.as_ref().expect("defined products have a class");
        let indeterminacy = ok(Subspace::new(sp, &m.indeterminacy_basis), "indeterminacy")?;
        ensure!(indeterminacy.contains(&diff), "representative left the indeterminacy for {:?}", m.triple);
    }
    Ok(())
}
