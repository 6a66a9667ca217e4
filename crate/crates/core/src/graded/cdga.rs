use std::sync::Arc;

use super::report::{axiom, Report};
use super::space::GradedSpace;
use crate::error::{Error, Result};
use crate::linalg::{sign, Scalar};
use crate::vector::Vector;

/// A finite-dimensional commutative differential graded algebra over ℚ,
/// stored as structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdga {
    space: GradedSpace,
    unit: Vector,
    product: Vec<Vector>,
    differential: Vec<Vector>,
}

impl Cdga {
    /// Assembles a CDGA without checking any axiom. `product[i * dim + j]`
    /// is the product of basis elements `i` and `j`.
    pub fn from_tables(
        space: GradedSpace,
        unit: Vector,
        product: Vec<Vector>,
        differential: Vec<Vector>,
    ) -> Result<Self> {
        let n = space.dim();
        if product.len() != n * n || differential.len() != n {
            return Err(Error::Invalid(format!(
                "table sizes {}/{} do not match dimension {n}",
                product.len(),
                differential.len()
            )));
        }
        Ok(Cdga {
            space,
            unit,
            product,
            differential,
        })
    }

    /// Like [`Cdga::from_tables`], then runs [`Cdga::verify`].
    pub fn new(
        space: GradedSpace,
        unit: Vector,
        product: Vec<Vector>,
        differential: Vec<Vector>,
    ) -> Result<Self> {
        let a = Self::from_tables(space, unit, product, differential)?;
        a.checked()
    }

    pub fn checked(self) -> Result<Self> {
        let report = self.verify();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::NotACdga(report.to_string()))
        }
    }

    /// The ground field ℚ.
    pub fn ground() -> Self {
        Cdga {
            space: GradedSpace::line("1", 0),
            unit: Vector::basis(0),
            product: vec![Vector::basis(0)],
            differential: vec![Vector::zero()],
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.product[i * self.dim() + j]
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

    pub fn degree(&self, i: usize) -> i32 {
        self.space.degree(i)
    }

    pub fn element(&self, name: &str) -> Option<Vector> {
        self.space.basis_vector(name)
    }

    pub fn has_zero_differential(&self) -> bool {
        self.differential.iter().all(Vector::is_zero)
    }

    /// Degree 0 is spanned by the unit and there are no negative degrees.
    pub fn is_connected(&self) -> bool {
        self.space.bottom_degree().map_or(true, |b| b >= 0)
            && self.space.dim_in_degree(0) == 1
            && self.space.is_homogeneous(&self.unit, 0)
            && !self.unit.is_zero()
    }

    /// Checks every CDGA axiom on basis tuples.
    pub fn verify(&self) -> Report {
        let mut r = Report::default();
        let n = self.dim();
        let sp = &self.space;
        let nm = |i: usize| sp.name(i);

        let mut degrees_ok = true;
        for i in 0..n {
            if !sp.is_homogeneous(&self.differential[i], sp.degree(i) + 1) {
                r.record(axiom::DEGREE, &["d", nm(i)]);
                degrees_ok = false;
            }
            for j in 0..n {
                if !sp.is_homogeneous(self.mul_basis(i, j), sp.degree(i) + sp.degree(j)) {
                    r.record(axiom::DEGREE, &[nm(i), nm(j)]);
                    degrees_ok = false;
                }
            }
        }
        if !sp.is_homogeneous(&self.unit, 0) || self.unit.is_zero() {
            r.record(axiom::UNIT, &["unit is not a nonzero degree-0 element"]);
        }

        for i in 0..n {
            if !self.d(&self.differential[i]).is_zero() {
                r.record(axiom::D_SQUARED, &[nm(i)]);
            }
            let b = Vector::basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                r.record(axiom::UNIT, &[nm(i)]);
            }
        }

        for i in 0..n {
            for j in i..n {
                let s = sign((sp.degree(i) * sp.degree(j)) as i64);
                if *self.mul_basis(i, j) != self.mul_basis(j, i).scaled(&s) {
                    r.record(axiom::COMMUTATIVITY, &[nm(i), nm(j)]);
                }
            }
        }

        let support: std::collections::BTreeSet<i32> = sp.support().into_iter().collect();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for k in 0..n {
                    let deg = sp.degree(i) + sp.degree(j) + sp.degree(k);
                    if degrees_ok && !support.contains(&deg) {
                        continue;
                    }
                    let jk = self.mul_basis(j, k);
                    if ij.is_zero() && jk.is_zero() {
                        continue;
                    }
                    let left = self.mul(ij, &Vector::basis(k));
                    let right = self.mul(&Vector::basis(i), jk);
                    if left != right {
                        r.record(axiom::ASSOCIATIVITY, &[nm(i), nm(j), nm(k)]);
                    }
                }
            }
        }

        for i in 0..n {
            for j in 0..n {
                let lhs = self.d(self.mul_basis(i, j));
                let mut rhs = self.mul(&self.differential[i], &Vector::basis(j));
                let t = self.mul(&Vector::basis(i), &self.differential[j]);
                rhs.add_scaled(&t, &sign(sp.degree(i) as i64));
                if lhs != rhs {
                    r.record(axiom::LEIBNIZ, &[nm(i), nm(j)]);
                }
            }
        }
        r
    }

    /// `A` as a dgmodule over itself.
    pub fn as_module(self: &Arc<Self>) -> super::DgModule {
        super::DgModule::from_tables(
            Arc::clone(self),
            self.space.clone(),
            self.differential.clone(),
            self.product.clone(),
        )
        .expect("tables of a CDGA have module shape")
    }

    /// Elements of degree `deg` as vectors, in basis order.
    pub fn basis_in_degree(&self, deg: i32) -> Vec<Vector> {
        self.space
            .in_degree(deg)
            .iter()
            .map(|&i| Vector::basis(i))
            .collect()
    }

    /// Whether `x` is a homogeneous element of degree `deg` with `dx = 0`.
    pub fn is_cocycle(&self, x: &Vector) -> bool {
        self.d(x).is_zero()
    }

    /// `x^k`.
    pub fn pow(&self, x: &Vector, k: u32) -> Vector {
        let mut out = self.unit.clone();
        for _ in 0..k {
            out = self.mul(&out, x);
        }
        out
    }

    pub(crate) fn differential_table(&self) -> &[Vector] {
        &self.differential
    }

    /// Re-expresses the algebra in a new basis of the same graded space.
    ///
    /// `change[i]` gives the new `i`-th basis element as a combination of
    /// the old basis. Each `change[i]` must be homogeneous of degree
    /// `space.degree(i)`, and the change must be invertible degree-wise.
    pub fn change_basis(&self, change: &[Vector], names: Vec<String>) -> Result<Cdga> {
        let n = self.dim();
        if change.len() != n || names.len() != n {
            return Err(Error::Invalid("basis change has wrong length".into()));
        }
        let space = GradedSpace::new(
            names
                .into_iter()
                .enumerate()
                .map(|(i, nm)| (nm, self.degree(i)))
                .collect(),
        )?;
        let to_new = basis_change_inverse(&self.space, change)?;
        let conv = |v: &Vector| -> Vector {
            let mut out = Vector::zero();
            for (i, c) in v.iter() {
                out.add_scaled(&to_new[i], c);
            }
            out
        };
        let mut product = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                product.push(conv(&self.mul(&change[i], &change[j])));
            }
        }
        let differential = change.iter().map(|c| conv(&self.d(c))).collect();
        Cdga::from_tables(space, conv(&self.unit), product, differential)
    }
}

/// For a homogeneous invertible basis change, the expression of each old
/// basis vector in the new basis.
pub fn basis_change_inverse(space: &GradedSpace, change: &[Vector]) -> Result<Vec<Vector>> {
    use crate::linalg::Matrix;
    let mut out = vec![Vector::zero(); space.dim()];
    for deg in space.support() {
        let idx = space.in_degree(deg);
        for &i in idx {
            if !space.is_homogeneous(&change[i], deg) {
                return Err(Error::Invalid("basis change is not homogeneous".into()));
            }
        }
        let cols: Vec<Vec<Scalar>> = idx.iter().map(|&i| change[i].coords(idx)).collect();
        let m = Matrix::from_columns(idx.len(), &cols);
        let inv = m
            .inverse()
            .ok_or_else(|| Error::Invalid(format!("basis change singular in degree {deg}")))?;
        for (r, &old) in idx.iter().enumerate() {
            let coords: Vec<Scalar> = (0..idx.len()).map(|c| inv[(c, r)].clone()).collect();
            out[old] = Vector::from_coords(idx, &coords);
        }
    }
    Ok(out)
}

/// Helper for building CDGAs table by table.
pub struct CdgaBuilder {
    space: GradedSpace,
    product: Vec<Vector>,
    differential: Vec<Vector>,
}

impl CdgaBuilder {
    /// Basis element 0 is taken as the unit; products with it are filled in.
    pub fn new(space: GradedSpace) -> Self {
        let n = space.dim();
        let mut product = vec![Vector::zero(); n * n];
        for i in 0..n {
            product[i] = Vector::basis(i);
            product[i * n] = Vector::basis(i);
        }
        CdgaBuilder {
            space,
            product,
            differential: vec![Vector::zero(); n],
        }
    }

    fn idx(&self, name: &str) -> usize {
        self.space
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown basis element `{name}`"))
    }

    /// Sets `a·b = value` and the graded-commutative mirror `b·a`.
    pub fn product(mut self, a: &str, b: &str, value: &[(i64, &str)]) -> Self {
        let (i, j) = (self.idx(a), self.idx(b));
        let v: Vector = value
            .iter()
            .map(|&(c, nm)| (self.idx(nm), crate::linalg::scalar(c)))
            .collect();
        let n = self.space.dim();
        let s = sign((self.space.degree(i) * self.space.degree(j)) as i64);
        self.product[j * n + i] = v.scaled(&s);
        self.product[i * n + j] = v;
        self
    }

    pub fn differential(mut self, a: &str, value: &[(i64, &str)]) -> Self {
        let i = self.idx(a);
        self.differential[i] = value
            .iter()
            .map(|&(c, nm)| (self.idx(nm), crate::linalg::scalar(c)))
            .collect();
        self
    }

    pub fn build_unchecked(self) -> Cdga {
        Cdga::from_tables(self.space, Vector::basis(0), self.product, self.differential)
            .expect("builder tables have the right shape")
    }

    pub fn build(self) -> Result<Cdga> {
        self.build_unchecked().checked()
    }
}

impl Cdga {
    pub fn one(&self) -> Vector {
        self.unit.clone()
    }
}

impl Cdga {
    /// Whether `other` has the same structure constants once basis
    /// elements are matched by name.
    pub fn matches_by_name(&self, other: &Cdga) -> bool {
        let n = self.dim();
        if other.dim() != n {
            return false;
        }
        let Some(map) = (0..n)
            .map(|i| other.space.index_of(self.space.name(i)))
            .collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let carry = |v: &Vector| v.reindex(|i| map[i]);
        (0..n).all(|i| self.degree(i) == other.degree(map[i]))
            && carry(&self.unit) == other.unit
            && (0..n).all(|i| carry(&self.differential[i]) == other.differential[map[i]])
            && (0..n).all(|i| {
                (0..n).all(|j| carry(self.mul_basis(i, j)) == *other.mul_basis(map[i], map[j]))
            })
    }
}
