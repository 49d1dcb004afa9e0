//! Exact computer algebra for Leavitt path algebras of finite graphs: normal
//! forms, the ultramatricial degree-zero part and its K-theory, Bowen-Franks
//! modules with certificate checking, and graded homomorphisms.

pub mod algebra;
pub mod bfmod;
pub mod error;
pub mod graph;
pub mod homs;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod zerocomp;

pub use algebra::{AlgebraExt, Element, ElementMatrix, LeavittAlgebra, Monomial, SpecialEdgeChoice, TensorElement};
pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, Path, VertexId};
pub use report::{Report, Verdict};
pub use ring::{CoefficientRing, Field, Polynomials, PrimeField, Rationals, Ring};
