//! Exact arithmetic: Laurent polynomials in `u`, truncated series in `T`, and
//! closed forms built from rational blocks.

mod closed;
mod laurent;
mod series;

pub use closed::{ClosedTerm, RationalBlock, ZetaClosedForm};
pub use laurent::LaurentPoly;
pub use series::{IntSeries, Mod2Series, SeriesKind, ZetaSeries};

/// Default truncation order for series output.
pub const DEFAULT_ORDER: usize = 20;
