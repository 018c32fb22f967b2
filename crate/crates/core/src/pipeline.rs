//! Choosing and running a pipeline for a germ.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{ZetaClosedForm, ZetaSeries};
use crate::arcspace::zeta_direct;
use crate::error::{Error, Result};
use crate::germ::{nondegenerate, Germ};
use crate::newton2d::resolve;
use crate::resolution::ResolutionData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Arc enumeration.
    Direct,
    /// Newton-polygon resolution followed by the Denef–Loeser formulas.
    Newton,
    /// Newton for nondegenerate two-variable germs, direct otherwise.
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Newton => "newton",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(Method::Direct),
            "newton" => Ok(Method::Newton),
            "auto" => Ok(Method::Auto),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

/// Closed forms produced by the Denef–Loeser formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForms {
    pub naive: ZetaClosedForm,
    pub plus: Option<ZetaClosedForm>,
    pub minus: Option<ZetaClosedForm>,
}

/// The zeta functions of one germ, truncated at a common order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaResult {
    pub method: Method,
    pub naive: ZetaSeries,
    pub plus: Option<ZetaSeries>,
    pub minus: Option<ZetaSeries>,
    pub closed: Option<ClosedForms>,
    #[serde(skip)]
    pub resolution: Option<ResolutionData>,
}

/// The method `Auto` resolves to for `g`.
pub fn select(g: &Germ) -> Result<Method> {
    if g.dim() == 2 && nondegenerate(g)? {
        return Ok(Method::Newton);
    }
    if g.classify().cancellation_free {
        return Ok(Method::Direct);
    }
    Err(Error::UnsupportedGerm(format!(
        "{g} is neither a nondegenerate two-variable germ nor cancellation-free"
    )))
}

pub fn compute(g: &Germ, method: Method, order: usize) -> Result<ZetaResult> {
    match method {
        Method::Auto => compute(g, select(g)?, order),
        Method::Direct => {
            let z = zeta_direct(g, order)?;
            Ok(ZetaResult {
                method,
                naive: z.naive,
                plus: z.plus,
                minus: z.minus,
                closed: None,
                resolution: None,
            })
        }
        Method::Newton => {
            let r = resolve(g)?;
            let mut out = from_resolution(&r, order)?;
            out.resolution = Some(r);
            Ok(out)
        }
    }
}

/// Evaluates resolution data; the sign series are present when every
/// stratum that needs covers has them.
pub fn from_resolution(r: &ResolutionData, order: usize) -> Result<ZetaResult> {
    let naive = r.dl_naive()?;
    let (plus, minus) = if r.has_covers() {
        (Some(r.dl_sign(1)?), Some(r.dl_sign(-1)?))
    } else {
        (None, None)
    };
    Ok(ZetaResult {
        method: Method::Newton,
        naive: naive.expand(order),
        plus: plus.as_ref().map(|z| z.expand(order)),
        minus: minus.as_ref().map(|z| z.expand(order)),
        closed: Some(ClosedForms { naive, plus, minus }),
        resolution: None,
    })
}
