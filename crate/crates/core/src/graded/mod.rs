//! Graded vector spaces, CDGAs, dgmodules and their morphisms, with tensor
//! products, duals, suspensions, quotients and cohomology.

mod cdga;
mod cohomology;
mod dual;
mod module;
mod morphism;
mod quotient;
mod report;
mod space;
mod sub;
mod tensor;

pub use cdga::{basis_change_inverse, Cdga, CdgaBuilder};
pub use cohomology::{euler_characteristic, Cohomology};
pub use module::{same_base, DgModule};
pub use morphism::{CdgaMorphism, DgMorphism};
pub use quotient::Quotient;
pub use report::{axiom, Report, Violation};
pub use space::GradedSpace;
pub use sub::Subspace;
pub use tensor::{tensor_elements, tensor_space};

pub fn verify_cdga(a: &Cdga) -> Report {
    a.verify()
}

pub fn verify_morphism(f: &DgMorphism) -> Report {
    f.verify()
}

#[cfg(test)]
mod tests;
