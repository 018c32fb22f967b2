//! Polynomial germs with exact integer coefficients.

mod newton;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use newton::{face_points, lattice_face_poly, nondegenerate, polygon, Edge, NewtonPolygon};

/// A polynomial `f` in `d` variables with `f(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Germ {
    dim: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// Syntactic flags deciding which pipelines accept a germ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SupportClass {
    /// No cancellation can occur in the leading coefficient of `f` along any arc:
    /// either `f` is a single monomial, or every exponent is even and all
    /// coefficients share one sign.
    pub cancellation_free: bool,
    /// Cancellation-free with all exponents even and every monomial a power of
    /// a single variable.
    pub diagonal: bool,
    pub two_var: bool,
}

impl Germ {
    /// Builds a germ, dropping zero coefficients.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidData(
                "germ dimension must be at least 1".into(),
            ));
        }
        let mut map: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::InvalidData(format!(
                    "exponent vector {e:?} does not have length {dim}"
                )));
            }
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if map.keys().any(|e| e.iter().all(|&x| x == 0)) {
            return Err(Error::ConstantTerm);
        }
        Ok(Self { dim, terms: map })
    }

    /// Parses a germ; the dimension is the highest variable index used.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_dim(text, 0)
    }

    /// Parses a germ in at least `dim` variables.
    pub fn parse_with_dim(text: &str, dim: usize) -> Result<Self> {
        let (d, support) = parse::parse_support(text, dim)?;
        Self::new(d, support)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The same polynomial viewed in `dim >= self.dim()` variables.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        if dim < self.dim {
            return Err(Error::InvalidData(format!(
                "cannot embed a germ in {} variables into {dim}",
                self.dim
            )));
        }
        Ok(Self {
            dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(dim, 0);
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// `+1` or `-1` when all coefficients share that sign.
    pub fn common_sign(&self) -> Option<i8> {
        if self.terms.values().all(Signed::is_positive) {
            Some(1)
        } else if self.terms.values().all(Signed::is_negative) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn classify(&self) -> SupportClass {
        let all_even = self.terms.keys().all(|e| e.iter().all(|x| x % 2 == 0));
        let cancellation_free = self.terms.len() == 1 || (all_even && self.common_sign().is_some());
        let single_variable = self
            .terms
            .keys()
            .all(|e| e.iter().filter(|&&x| x > 0).count() == 1);
        SupportClass {
            cancellation_free,
            diagonal: cancellation_free && all_even && single_variable,
            two_var: self.dim == 2,
        }
    }

    fn var_name(&self, i: usize) -> String {
        if self.dim <= 3 {
            ["x", "y", "z"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    }
}

impl std::ops::Neg for &Germ {
    type Output = Germ;
    fn neg(self) -> Germ {
        Germ {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Neg for Germ {
    type Output = Germ;
    fn neg(self) -> Germ {
        -&self
    }
}

impl std::str::FromStr for Germ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Monomials in descending lexicographic order of exponent vectors, e.g.
/// `x^2 + y^4` or `-2x*y^3 + x1^2*x4`.
impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.var_name(i)
                    } else {
                        format!("{}^{x}", self.var_name(i))
                    }
                })
                .collect();
            write!(f, "{}", vars.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct GermRepr {
    d: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Germ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GermRepr {
            d: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exps: e.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Germ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GermRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            terms.push((t.exps, c));
        }
        Germ::new(repr.d, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn support(g: &Germ) -> Vec<(Vec<u32>, i64)> {
        g.terms()
            .map(|(e, c)| (e.to_vec(), i64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn parse_examples() {
        let g = Germ::parse("x^2+y^4").unwrap();
        assert_eq!(g.dim(), 2);
        assert_eq!(support(&g), vec![(vec![0, 4], 1), (vec![2, 0], 1)]);

        let g = Germ::parse("-(x^2+y^4+z^4)").unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.terms().all(|(_, c)| *c == BigInt::from(-1)));
        assert_eq!(g.num_terms(), 3);

        let g = Germ::parse("x^2 - x^2 + y").unwrap();
        assert_eq!(support(&g), vec![(vec![0, 1], 1)]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Germ::parse("x^2 + 1"), Err(Error::ConstantTerm));
        assert_eq!(Germ::parse("x - x"), Err(Error::ZeroPolynomial));
        assert!(matches!(
            Germ::parse("x^^2"),
            Err(Error::SyntaxError { position: 2, .. })
        ));
    }

    #[test]
    fn dimension_can_be_forced() {
        let g = Germ::parse_with_dim("x", 2).unwrap();
        assert_eq!(g.dim(), 2);
        assert_eq!(support(&g), vec![(vec![1, 0], 1)]);
        assert_eq!(g.embed(3).unwrap().dim(), 3);
        assert!(g.embed(1).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = Germ::parse("x^2+y^4").unwrap().classify();
        assert!(c.cancellation_free && c.diagonal && c.two_var);
        let c = Germ::parse("x^2y^2+x^4").unwrap().classify();
        assert!(c.cancellation_free && !c.diagonal);
        let c = Germ::parse("x^2-y^2").unwrap().classify();
        assert!(!c.cancellation_free && !c.diagonal);
        let c = Germ::parse("-x^2-y^2-z^6").unwrap().classify();
        assert!(c.diagonal && !c.two_var);
        // A lone monomial cannot cancel, whatever its exponents.
        let c = Germ::parse_with_dim("x", 2).unwrap().classify();
        assert!(c.cancellation_free && !c.diagonal);
        let c = Germ::parse("x^3+y^3").unwrap().classify();
        assert!(!c.cancellation_free);
    }

    #[test]
    fn display() {
        assert_eq!(Germ::parse("y^4 + x^2").unwrap().to_string(), "x^2 + y^4");
        assert_eq!(
            Germ::parse("-2 x y^3 + x^3").unwrap().to_string(),
            "x^3 - 2x*y^3"
        );
        assert_eq!(Germ::parse("x1^2 + x4").unwrap().to_string(), "x1^2 + x4");
        assert_eq!((-Germ::parse("x^2+y^2").unwrap()).to_string(), "-x^2 - y^2");
    }

    #[test]
    fn serde_shape() {
        let g = Germ::parse("x^2-3y").unwrap();
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"d": 2, "terms": [
                {"exps": [0, 1], "coeff": "-3"},
                {"exps": [2, 0], "coeff": "1"}
            ]})
        );
        let back: Germ = serde_json::from_value(json).unwrap();
        assert_eq!(back, g);
    }

    fn arb_germ() -> impl Strategy<Value = Germ> {
        (1usize..=5).prop_flat_map(|d| {
            prop::collection::vec((prop::collection::vec(0u32..6, d), -20i64..=20), 1..6)
                .prop_filter_map("need a valid germ", move |terms| {
                    Germ::new(d, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))).ok()
                })
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_display(g in arb_germ()) {
            let back = Germ::parse_with_dim(&g.to_string(), g.dim()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
