//! Resolution data and the Denef–Loeser evaluators.
//!
//! A resolution is recorded only through what the formulas need: the
//! multiplicities `(N_i, ν_i)` of each divisor, whether it lies over the
//! origin, and the β values of the open strata `E_I⁰ ∩ σ⁻¹(0)` together with
//! those of their sign covers.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentPoly, RationalBlock, SeriesKind, ZetaClosedForm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub id: String,
    /// Multiplicity of `f∘σ` along the divisor.
    #[serde(rename = "N")]
    pub n: u32,
    /// One plus the multiplicity of the Jacobian of `σ`.
    pub nu: u32,
    /// True iff the divisor lies over the origin.
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    #[serde(rename = "I")]
    pub ids: Vec<String>,
    pub beta: LaurentPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_plus: Option<LaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_minus: Option<LaurentPoly>,
}

impl Stratum {
    pub fn new(ids: &[&str], beta: LaurentPoly) -> Self {
        Self {
            ids: ids.iter().map(|s| s.to_string()).collect(),
            beta,
            cover_plus: None,
            cover_minus: None,
        }
    }

    pub fn with_covers(mut self, plus: LaurentPoly, minus: LaurentPoly) -> Self {
        self.cover_plus = Some(plus);
        self.cover_minus = Some(minus);
        self
    }

    pub fn cover(&self, sign: i8) -> Option<&LaurentPoly> {
        if sign > 0 {
            self.cover_plus.as_ref()
        } else {
            self.cover_minus.as_ref()
        }
    }

    /// `{E1, E2}`-style name used in messages.
    pub fn label(&self) -> String {
        format!("{{{}}}", self.ids.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub d: usize,
    pub divisors: Vec<Divisor>,
    pub strata: Vec<Stratum>,
    #[serde(default)]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "detail")]
pub enum Violation {
    DuplicateDivisorId(String),
    InvalidMultiplicity(String),
    NoExceptional,
    EmptyStratum,
    UnknownDivisor(String),
    DuplicateStratum(String),
    PartialCover(String),
    TooManyDivisors(String),
    MissingExceptionalSingleton(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateDivisorId(id) => {
                write!(f, "DuplicateDivisorId: {id} is declared twice")
            }
            Violation::InvalidMultiplicity(id) => write!(
                f,
                "InvalidMultiplicity: divisor {id} needs N >= 1 and nu >= 1"
            ),
            Violation::NoExceptional => write!(f, "NoExceptional: no divisor lies over the origin"),
            Violation::EmptyStratum => {
                write!(f, "EmptyStratum: a stratum has an empty divisor set")
            }
            Violation::UnknownDivisor(id) => write!(f, "UnknownDivisor: {id} is not declared"),
            Violation::DuplicateStratum(s) => write!(f, "DuplicateStratum: {s} appears twice"),
            Violation::PartialCover(s) => write!(
                f,
                "PartialCover: {s} has only one of cover_plus, cover_minus"
            ),
            Violation::TooManyDivisors(s) => write!(
                f,
                "TooManyDivisors: {s} meets more divisors than the dimension"
            ),
            Violation::MissingExceptionalSingleton(id) => write!(
                f,
                "MissingExceptionalSingleton: no stratum for exceptional divisor {id}"
            ),
        }
    }
}

impl ResolutionData {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut ids = HashSet::new();
        for dv in &self.divisors {
            if !ids.insert(dv.id.as_str()) {
                out.push(Violation::DuplicateDivisorId(dv.id.clone()));
            }
            if dv.n == 0 || dv.nu == 0 {
                out.push(Violation::InvalidMultiplicity(dv.id.clone()));
            }
        }
        if !self.divisors.iter().any(|dv| dv.exceptional) {
            out.push(Violation::NoExceptional);
        }
        let mut seen: HashSet<BTreeSet<&str>> = HashSet::new();
        for st in &self.strata {
            if st.ids.is_empty() {
                out.push(Violation::EmptyStratum);
                continue;
            }
            for id in &st.ids {
                if !ids.contains(id.as_str()) {
                    out.push(Violation::UnknownDivisor(id.clone()));
                }
            }
            let set: BTreeSet<&str> = st.ids.iter().map(String::as_str).collect();
            if set.len() != st.ids.len() || !seen.insert(set) {
                out.push(Violation::DuplicateStratum(st.label()));
            }
            if st.cover_plus.is_some() != st.cover_minus.is_some() {
                out.push(Violation::PartialCover(st.label()));
            }
            if st.ids.len() > self.d {
                out.push(Violation::TooManyDivisors(st.label()));
            }
        }
        for dv in self.divisors.iter().filter(|dv| dv.exceptional) {
            if !seen.contains(&BTreeSet::from([dv.id.as_str()])) {
                out.push(Violation::MissingExceptionalSingleton(dv.id.clone()));
            }
        }
        out
    }

    fn checked(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
            Err(Error::InvalidData(msgs.join("; ")))
        }
    }

    fn blocks(&self, st: &Stratum) -> Vec<RationalBlock> {
        st.ids
            .iter()
            .map(|id| {
                let dv = self
                    .divisors
                    .iter()
                    .find(|dv| &dv.id == id)
                    .expect("validated");
                RationalBlock::new(i64::from(dv.nu), dv.n)
            })
            .collect()
    }

    /// `Σ_I (u-1)^{|I|} β(E_I⁰ ∩ σ⁻¹(0)) Π_{i∈I} u^{-ν_i}T^{N_i}/(1-u^{-ν_i}T^{N_i})`.
    pub fn dl_naive(&self) -> Result<ZetaClosedForm> {
        self.checked()?;
        let mut z = ZetaClosedForm::new(SeriesKind::Naive, self.d);
        for st in &self.strata {
            if st.beta.is_zero() {
                continue;
            }
            let coeff = &LaurentPoly::u_minus_one().pow(st.ids.len() as u32) * &st.beta;
            z.push(coeff, self.blocks(st));
        }
        Ok(z)
    }

    /// `Σ_I (u-1)^{|I|-1} β(Ẽ_I^{0,±} ∩ σ⁻¹(0)) Π_{i∈I} (same blocks)`.
    pub fn dl_sign(&self, sign: i8) -> Result<ZetaClosedForm> {
        self.checked()?;
        let kind = if sign > 0 {
            SeriesKind::Plus
        } else {
            SeriesKind::Minus
        };
        let mut z = ZetaClosedForm::new(kind, self.d);
        for st in &self.strata {
            let cover = match st.cover(sign) {
                Some(c) => c,
                None if st.beta.is_zero() => continue,
                None => return Err(Error::MissingCoverData(st.label())),
            };
            if cover.is_zero() {
                continue;
            }
            let coeff = &LaurentPoly::u_minus_one().pow(st.ids.len() as u32 - 1) * cover;
            z.push(coeff, self.blocks(st));
        }
        Ok(z)
    }

    /// True when every stratum with nonzero beta carries both covers.
    pub fn has_covers(&self) -> bool {
        self.strata
            .iter()
            .all(|st| st.beta.is_zero() || (st.cover_plus.is_some() && st.cover_minus.is_some()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidData(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("resolution data serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}
