//! Small algebras used throughout the examples and tests, loaded from the
//! presentations in `fixtures/`.

use crate::duality::PdAlgebra;
use crate::presentation::{PresentedAlgebra, Presentation};

pub const S4: &str = include_str!("../fixtures/s4.toml");
pub const S6: &str = include_str!("../fixtures/s6.toml");
pub const S8: &str = include_str!("../fixtures/s8.toml");
pub const S3_X_S3: &str = include_str!("../fixtures/s3xs3.toml");
pub const S4_X_S4: &str = include_str!("../fixtures/s4xs4.toml");
pub const S2_MODEL: &str = include_str!("../fixtures/s2_model.toml");
pub const CONF_S4_X_R4: &str = include_str!("../fixtures/presentation_s4xr4.toml");

pub fn presented(text: &str) -> PresentedAlgebra {
    Presentation::from_toml(text)
        .and_then(|p| p.build())
        .expect("fixture presentations are valid")
}

pub fn oriented(text: &str) -> PdAlgebra {
    presented(text)
        .poincare()
        .expect("fixture orientations are valid")
        .expect("fixture declares an orientation")
}

/// `H(S^n) = ℚ[x]/(x²)` with `|x| = n`, for any `n ≥ 1`.
pub fn sphere(n: i32) -> PdAlgebra {
    let text = format!(
        "name = \"S{n}\"\nrelations = [\"x^2\"]\n[[generators]]\nname = \"x\"\ndegree = {n}\n[orientation]\ndegree = {n}\nclass = \"x\"\n"
    );
    oriented(&text)
}
