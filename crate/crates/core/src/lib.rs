//! Exact decomposition of parameter spaces of parametric polynomial systems.
//!
//! Builds discriminant-style candidate sets with Dixon resultants or iterated
//! univariate resultant chains (no Groebner bases), decomposes a 2-parameter
//! box into open cells by those candidates, and certifies the number of real
//! solutions on each cell by exact interval arithmetic.

pub mod context;
pub mod discvar;
pub mod dixon;
pub mod factor;
pub mod matrix;
pub mod pipeline;
pub mod poly;
pub mod regions;
pub mod reschain;
pub mod resultants;
pub mod rat;
pub mod svg;
pub(crate) mod zpoly;

pub use context::{Context, Ctx};
pub use poly::Polynomial;
pub use rat::Rational;
