//! Seeded random inputs for property tests: cochain complexes with chain
//! maps between them, small CDGAs and Poincaré duality CDGAs in random
//! bases, balanced and unbalanced attaching maps, and surjections.

pub mod invariants;

use std::sync::Arc;

use num::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conf::augmentation;
use crate::duality::PdAlgebra;
use crate::fixtures;
use crate::graded::{basis_change_inverse, tensor_elements, Cdga, CdgaMorphism, DgModule, DgMorphism, GradedSpace};
use crate::linalg::{ratio, sign, Matrix, Scalar};
use crate::vector::Vector;

const HEISENBERG: &str = r#"
name = "Heisenberg"
[[generators]]
name = "a"
degree = 1
[[generators]]
name = "b"
degree = 1
[[generators]]
name = "c"
degree = 1
[differentials]
c = "a*b"
[orientation]
degree = 3
class = "a*b*c"
"#;

const CP2: &str = r#"
name = "CP2"
relations = ["x^3"]
[[generators]]
name = "x"
degree = 2
[orientation]
degree = 4
class = "x^2"
"#;

/// A complex over ℚ given as a sum of lines `ℚz` with `dz = 0` and
/// acyclic pairs `u ↦ du`, before any change of basis.
#[derive(Clone, Debug)]
pub struct Pieces {
    /// `(degree, is_pair)`; a pair occupies two consecutive basis slots.
    pub pieces: Vec<(i32, bool)>,
}

/// A random complex together with the data needed to map out of it.
#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub module: DgModule,
    pieces: Pieces,
    /// `change[i]` writes the `i`-th basis element in standard form.
    change: Vec<Vector>,
}

/// A morphism from a sum of suspended copies of `A` to `A`, sending the
/// `r`-th generator `s^{-m_r}1` to the cocycle `c_r`.
#[derive(Clone, Debug)]
pub struct FreeAttaching {
    pub map: DgMorphism,
    pub shifts: Vec<i32>,
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn range(&mut self, lo: i32, hi: i32) -> i32 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A small rational, zero one time in seven.
    pub fn scalar(&mut self) -> Scalar {
        let num = self.rng.gen_range(-3i64..=3);
        let den = self.rng.gen_range(1i64..=3);
        ratio(num, den)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// A random invertible `n × n` matrix: a shuffled product of a unit
    /// lower-triangular and an invertible upper-triangular matrix.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let mut lower = Matrix::identity(n);
        let mut upper = Matrix::identity(n);
        for i in 0..n {
            upper[(i, i)] = self.nonzero_scalar();
            for j in 0..i {
                lower[(i, j)] = self.scalar();
                upper[(j, i)] = self.scalar();
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let product = &lower * &upper;
        let rows = perm.iter().map(|&p| product.row(p).to_vec()).collect();
        Matrix::from_rows(rows)
    }

    /// A random homogeneous basis of `space`, as combinations of the
    /// standard one.
    pub fn basis(&mut self, space: &GradedSpace) -> Vec<Vector> {
        let mut out = vec![Vector::zero(); space.dim()];
        for deg in space.support() {
            let idx = space.in_degree(deg);
            let m = self.invertible(idx.len());
            for (c, &i) in idx.iter().enumerate() {
                out[i] = Vector::from_coords(idx, &m.column(c));
            }
        }
        out
    }

    /// A random element of `space` of degree `deg` (possibly zero).
    pub fn element(&mut self, space: &GradedSpace, deg: i32) -> Vector {
        let idx = space.in_degree(deg).to_vec();
        let coords: Vec<Scalar> = idx.iter().map(|_| self.scalar()).collect();
        Vector::from_coords(&idx, &coords)
    }

    /// A random combination of the given vectors.
    pub fn combination(&mut self, vectors: &[Vector]) -> Vector {
        let mut out = Vector::zero();
        for v in vectors {
            out.add_scaled(v, &self.scalar());
        }
        out
    }

    /// A complex over ℚ with at most `max_pieces` summands in degrees
    /// `lo..=hi`, written in a random basis.
    pub fn complex(&mut self, max_pieces: usize, lo: i32, hi: i32) -> RandomComplex {
        let count = self.rng.gen_range(1..=max_pieces);
        let pieces: Vec<(i32, bool)> = (0..count)
            .map(|_| {
                let pair = self.coin();
                (self.range(lo, if pair { hi - 1 } else { hi }), pair)
            })
            .collect();
        let pieces = Pieces { pieces };
        let standard = standard_complex(&pieces);
        let change = self.basis(standard.space());
        let module = change_module_basis(&standard, &change);
        RandomComplex {
            module,
            pieces,
            change,
        }
    }

    /// A random chain map `q → target`, defined piece by piece: lines go
    /// to random cocycles, a pair `u ↦ du` goes to `t ↦ dt` for random `t`.
    pub fn chain_map(&mut self, q: &RandomComplex, target: &DgModule) -> DgMorphism {
        let tsp = target.space();
        let mut on_standard = Vec::new();
        for &(deg, pair) in &q.pieces.pieces {
            if pair {
                let t = self.element(tsp, deg);
                let dt = target.d(&t);
                on_standard.push(t);
                on_standard.push(dt);
            } else {
                let cocycles = cocycle_basis(target, deg);
                on_standard.push(self.combination(&cocycles));
            }
        }
        let images = q
            .change
            .iter()
            .map(|c| {
                let mut out = Vector::zero();
                for (i, x) in c.iter() {
                    out.add_scaled(&on_standard[i], x);
                }
                out
            })
            .collect();
        DgMorphism::new(q.module.clone(), target.clone(), images).expect("piecewise chain maps are chain maps")
    }

    /// A surjective chain map `M → N` with `M = N ⊕ C`, in random bases.
    pub fn surjection(&mut self, max_pieces: usize) -> DgMorphism {
        let n = self.complex(max_pieces, 0, 4);
        let c = self.complex(max_pieces, 0, 4);
        let mut pieces = n.pieces.pieces.clone();
        pieces.extend(c.pieces.pieces.iter().copied());
        let sum = Pieces { pieces };
        let standard = standard_complex(&sum);
        let change = self.basis(standard.space());
        let m = RandomComplex {
            module: change_module_basis(&standard, &change),
            pieces: sum,
            change,
        };
        // Project onto the standard form of N, then into N's basis.
        let to_n = basis_change_inverse(n.module.space(), &n.change).expect("random bases are invertible");
        let width = n.change.len();
        let images = m
            .change
            .iter()
            .map(|v| {
                let mut out = Vector::zero();
                for (i, x) in v.iter().filter(|(i, _)| *i < width) {
                    out.add_scaled(&to_n[i], x);
                }
                out
            })
            .collect();
        DgMorphism::new(m.module, n.module, images).expect("projection onto a summand is a chain map")
    }

    /// A small connected CDGA from a fixed family, possibly a tensor
    /// product of two, in a random basis.
    pub fn cdga(&mut self) -> Arc<Cdga> {
        let pick = |g: &mut Gen| -> Arc<Cdga> {
            match g.below(7) {
                0 => Arc::clone(fixtures::sphere(g.range(2, 6)).algebra()),
                1 => fixtures::presented(fixtures::S3_X_S3).algebra,
                2 => fixtures::presented(fixtures::S2_MODEL).algebra,
                3 => fixtures::presented(HEISENBERG).algebra,
                4 => fixtures::presented(CP2).algebra,
                5 => fixtures::presented(fixtures::S4_X_S4).algebra,
                _ => Arc::new(Cdga::ground()),
            }
        };
        let a = pick(self);
        let a = if a.dim() <= 6 && self.coin() {
            let b = pick(self);
            Arc::new(Cdga::tensor(&a, &b))
        } else {
            a
        };
        self.scramble(&a)
    }

    /// A family member of dimension at most `max_dim`.
    pub fn small_cdga(&mut self, max_dim: usize) -> Arc<Cdga> {
        loop {
            let a = self.cdga();
            if a.dim() <= max_dim {
                return a;
            }
        }
    }

    /// A CDGA with zero differential: spheres, products and `CP²`.
    pub fn formal_cdga(&mut self) -> Arc<Cdga> {
        let pick = |g: &mut Gen| -> Arc<Cdga> {
            match g.below(4) {
                0 => Arc::clone(fixtures::sphere(g.range(1, 5)).algebra()),
                1 => fixtures::presented(fixtures::S3_X_S3).algebra,
                2 => fixtures::presented(CP2).algebra,
                _ => fixtures::presented(fixtures::S4_X_S4).algebra,
            }
        };
        let a = pick(self);
        let b = pick(self);
        self.scramble(&Arc::new(Cdga::tensor(&a, &b)))
    }

    /// The same CDGA in a random basis.
    pub fn scramble(&mut self, a: &Arc<Cdga>) -> Arc<Cdga> {
        let change = self.basis(a.space());
        let names = (0..a.dim()).map(|i| format!("e{i}")).collect();
        Arc::new(a.change_basis(&change, names).expect("random bases are invertible"))
    }

    /// A Poincaré duality CDGA from a fixed family (including two with
    /// nonzero differential), possibly a product of two, in a random
    /// basis.
    pub fn pd_algebra(&mut self) -> PdAlgebra {
        let pick = |g: &mut Gen| -> (Arc<Cdga>, i32, Vector) {
            let (a, n, top) = match g.below(7) {
                0 => {
                    let n = g.range(2, 6);
                    (Arc::clone(fixtures::sphere(n).algebra()), n, "x")
                }
                1 => (fixtures::presented(fixtures::S3_X_S3).algebra, 6, "y*y'"),
                2 => (fixtures::presented(fixtures::S4_X_S4).algebra, 8, "a*b"),
                3 => (fixtures::presented(HEISENBERG).algebra, 3, "a*b*c"),
                4 => (fixtures::presented(CP2).algebra, 4, "x^2"),
                5 => (fixtures::presented(fixtures::S2_MODEL).algebra, 7, "a^2*b"),
                _ => (Arc::new(Cdga::ground()), 0, "1"),
            };
            let top = a.element(top).expect("family orientation classes exist");
            (a, n, top)
        };
        let (mut a, mut n, mut top) = pick(self);
        if a.dim() <= 6 && self.coin() {
            let (b, m, t) = pick(self);
            top = tensor_elements(&top, &t, b.dim());
            a = Arc::new(Cdga::tensor(&a, &b));
            n += m;
        }
        let change = self.basis(a.space());
        let names = (0..a.dim()).map(|i| format!("e{i}")).collect();
        let scrambled = Arc::new(a.change_basis(&change, names).expect("random bases are invertible"));
        let to_new = basis_change_inverse(a.space(), &change).expect("random bases are invertible");
        let mut fundamental = Vector::zero();
        for (i, c) in top.iter() {
            fundamental.add_scaled(&to_new[i], c);
        }
        let fundamental = fundamental.scaled(&self.nonzero_scalar());
        PdAlgebra::new(scrambled, n, &fundamental).expect("family members satisfy Poincaré duality")
    }

    /// `⊕_r s^{-m_r} A → A` with `s^{-m_r} a ↦ ±a·c_r` for random cocycles
    /// `c_r` of degree `m_r`. With one summand and `m_r` even it is balanced.
    pub fn free_attaching(&mut self, a: &Arc<Cdga>, summands: usize) -> FreeAttaching {
        let degrees: Vec<i32> = a.space().support();
        let base = a.as_module();
        let mut parts = Vec::new();
        let mut images = Vec::new();
        let mut shifts = Vec::new();
        for _ in 0..summands {
            let m = *degrees.choose(&mut self.rng).expect("nonzero algebra");
            let c = self.combination(&cocycle_basis(&base, m));
            // s^{-m}(e_i) = (-1)^{m|e_i|} e_i · s^{-m}1.
            for i in 0..a.dim() {
                let s = sign((m * a.degree(i)) as i64);
                images.push(a.mul(&Vector::basis(i), &c).scaled(&s));
            }
            parts.push(base.suspend(-m).renamed(|s| format!("{s}#{}", parts.len())));
            shifts.push(m);
        }
        let refs: Vec<&DgModule> = parts.iter().collect();
        let source = DgModule::direct_sum(&refs).expect("summands share the base");
        let map = DgMorphism::new(source, base, images).expect("multiplication by a cocycle is linear");
        FreeAttaching { map, shifts }
    }

    /// A small surjective CDGA morphism: an augmentation, a projection
    /// `A ⊗ B → A`, or a truncation.
    pub fn cdga_surjection(&mut self) -> CdgaMorphism {
        let a = self.small_cdga(6);
        match self.below(3) {
            0 => augmentation(&a).expect("family members are connected"),
            1 => {
                let b = self.small_cdga(3);
                let ab = Arc::new(Cdga::tensor(&a, &b));
                let eps = augmentation(&b).expect("connected");
                let images = (0..ab.dim())
                    .map(|k| {
                        let (i, j) = (k / b.dim(), k % b.dim());
                        let c = eps.image(j).get(0);
                        Vector::basis(i).scaled(&c)
                    })
                    .collect();
                CdgaMorphism::new(ab, a, images).expect("id ⊗ ε is a CDGA morphism")
            }
            _ => {
                let top = a.space().top_degree().unwrap_or(0);
                let cut = self.range(0, top);
                crate::cones::truncate_algebra(&a, cut).expect("connected").projection
            }
        }
    }
}

fn cocycle_basis(m: &DgModule, deg: i32) -> Vec<Vector> {
    let sp = m.space();
    let idx = sp.in_degree(deg);
    let tgt = sp.in_degree(deg + 1);
    let cols: Vec<_> = idx.iter().map(|&i| m.d_basis(i).coords(tgt)).collect();
    Matrix::from_columns(tgt.len(), &cols)
        .kernel()
        .iter()
        .map(|c| Vector::from_coords(idx, c))
        .collect()
}

fn standard_complex(pieces: &Pieces) -> DgModule {
    let mut basis = Vec::new();
    let mut differential = Vec::new();
    for &(deg, pair) in &pieces.pieces {
        let k = basis.len();
        if pair {
            basis.push((format!("u{k}"), deg));
            basis.push((format!("du{k}"), deg + 1));
            differential.push(Vector::basis(k + 1));
            differential.push(Vector::zero());
        } else {
            basis.push((format!("z{k}"), deg));
            differential.push(Vector::zero());
        }
    }
    let space = GradedSpace::new(basis).expect("generated names are unique");
    let action = (0..space.dim()).map(Vector::basis).collect();
    DgModule::new(Arc::new(Cdga::ground()), space, differential, action).expect("d² = 0 piecewise")
}

fn change_module_basis(m: &DgModule, change: &[Vector]) -> DgModule {
    let to_new = basis_change_inverse(m.space(), change).expect("random bases are invertible");
    let conv = |v: &Vector| {
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            out.add_scaled(&to_new[i], c);
        }
        out
    };
    let names = (0..m.dim()).map(|i| (format!("m{i}"), m.space().degree(i))).collect();
    let space = GradedSpace::new(names).expect("generated names are unique");
    let differential = change.iter().map(|c| conv(&m.d(c))).collect();
    let action = (0..m.dim()).map(Vector::basis).collect();
    DgModule::new(Arc::clone(m.base()), space, differential, action).expect("a basis change keeps the axioms")
}
