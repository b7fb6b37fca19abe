//! Exact-arithmetic computation of the integral homology of the groups
//! `PSL_2(O_{-m})` for square-free `m`, via the 2-dimensional cell complex
//! spanned by hemisphere floors and singular cusps in upper half-space.
//!
//! The pipeline: [`quadring`] (ring and ideal arithmetic) feeds
//! [`swanfloor`] (exact hemisphere envelope over a fundamental strip),
//! [`orbifold`] turns the floor into a quotient cell complex with
//! stabilizers and pairing matrices, and [`equivss`] runs the equivariant
//! spectral sequence with coefficient rings Z, Z/2, Z/3, Z/4, resolving
//! the extension problems through universal-coefficient comparisons.
//! [`abelianlin`] and [`finhom`] supply the integer linear algebra and the
//! homology of the finite (and Z^2) stabilizer groups.

pub mod abelianlin;
pub mod equivss;
pub mod finhom;
pub mod halfspace;
pub mod orbifold;
pub mod quadring;
pub mod swanfloor;

pub use abelianlin::{FgAbelianGroup, IntMatrix, PresentedGroup};
pub use halfspace::{Cusp, HPoint, KElem, PslMatrix};
pub use finhom::{CoeffRing, StabilizerType};
pub use orbifold::{GammaComplex, StabilizerInfo};
pub use quadring::{OIdeal, QuadInt, RingSpec};
pub use swanfloor::{Hemisphere, RawCellComplex, Strip};
