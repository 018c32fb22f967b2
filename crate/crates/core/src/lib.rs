//! Naive and sign motivic zeta functions of real polynomial germs, computed
//! by arc enumeration or from resolution data, and the blow-Nash invariants
//! read off them.

pub mod algebra;
pub mod arcspace;
pub mod cli;
pub mod error;
pub mod germ;
pub mod invariants;
pub mod newton2d;
pub mod pipeline;
pub mod resolution;
pub mod upoly;

pub use algebra::{
    ClosedTerm, IntSeries, LaurentPoly, Mod2Series, RationalBlock, SeriesKind, ZetaClosedForm,
    ZetaSeries, DEFAULT_ORDER,
};
pub use error::{Error, Result};
pub use germ::{Germ, SupportClass};
pub use invariants::{compare, profile, InvariantProfile};
pub use pipeline::{compute, Method, ZetaResult};
pub use resolution::ResolutionData;
