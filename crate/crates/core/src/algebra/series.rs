//! Truncated power series in `T` with Laurent-polynomial coefficients, and
//! their integer and mod-2 specializations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LaurentPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    #[default]
    Naive,
    Plus,
    Minus,
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::Naive => "Z",
            SeriesKind::Plus => "Z+",
            SeriesKind::Minus => "Z-",
        })
    }
}

/// `sum_{n=1}^{order} c_n T^n`; the `T^0` coefficient is always zero and not
/// stored, so `coeffs[n - 1]` is the coefficient of `T^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr")]
pub struct ZetaSeries {
    pub kind: SeriesKind,
    #[serde(rename = "d")]
    pub dim: usize,
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

#[derive(Deserialize)]
struct SeriesRepr {
    #[serde(default)]
    kind: SeriesKind,
    #[serde(default)]
    d: usize,
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl TryFrom<SeriesRepr> for ZetaSeries {
    type Error = String;
    fn try_from(r: SeriesRepr) -> std::result::Result<Self, String> {
        if r.order == 0 || r.coeffs.len() != r.order {
            return Err(format!(
                "series order {} does not match {} coefficients",
                r.order,
                r.coeffs.len()
            ));
        }
        Ok(ZetaSeries::new(r.kind, r.d, r.coeffs))
    }
}

impl ZetaSeries {
    pub fn new(kind: SeriesKind, dim: usize, coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        Self {
            kind,
            dim,
            order: coeffs.len(),
            coeffs,
        }
    }

    pub fn zero(kind: SeriesKind, dim: usize, order: usize) -> Self {
        Self::new(kind, dim, vec![LaurentPoly::zero(); order])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `T^n`; zero outside `1..=order`.
    pub fn coeff(&self, n: usize) -> LaurentPoly {
        if n == 0 || n > self.order {
            LaurentPoly::zero()
        } else {
            self.coeffs[n - 1].clone()
        }
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    /// Same coefficients, relabelled.
    pub fn with_kind(mut self, kind: SeriesKind, dim: usize) -> Self {
        self.kind = kind;
        self.dim = dim;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order);
        Self::new(self.kind, self.dim, self.coeffs[..order].to_vec())
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::new(self.kind, self.dim, self.coeffs.iter().map(f).collect())
    }

    /// Coefficient-wise exact division by `u - 1`.
    pub fn div_u_minus_1(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.div_u_minus_one().ok_or(Error::NotDivisible(i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.kind, self.dim, coeffs))
    }

    /// Coefficient-wise `d/du`.
    pub fn deriv_u(&self) -> Self {
        self.map(LaurentPoly::derivative)
    }

    /// Substitutes `u := v` for a unit `v` in `{-1, 1}`.
    pub fn eval_u(&self, v: i8) -> IntSeries {
        IntSeries::new(self.coeffs.iter().map(|c| c.eval_unit(v)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(
            self.kind,
            self.dim,
            (1..=order)
                .map(|n| &self.coeff(n) + &other.coeff(n))
                .collect(),
        )
    }

    /// Product truncated at the smaller order.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (1..=order)
            .map(|n| {
                (1..n)
                    .map(|i| &self.coeff(i) * &other.coeff(n - i))
                    .sum::<LaurentPoly>()
            })
            .collect();
        Self::new(self.kind, self.dim, coeffs)
    }
}

impl fmt::Display for ZetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})T^{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(T^{})", self.order + 1)
    }
}

/// Integer-coefficient truncated series (after substituting a value for `u`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        if n == 0 || n > self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[n - 1].clone()
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (1..=order)
                .map(|n| self.coeff(n) + other.coeff(n))
                .collect(),
        )
    }

    pub fn mod2(&self) -> Mod2Series {
        Mod2Series::new(self.coeffs.iter().map(|c| c.is_odd()).collect())
    }

    /// Lowest `n` where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order().max(other.order());
        (1..=order).find(|&n| self.coeff(n) != other.coeff(n))
    }
}

fn write_int_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, &'a BigInt)>,
    order: usize,
) -> fmt::Result {
    let mut first = true;
    for (n, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if mag.is_one() {
            write!(f, "T^{n}")?;
        } else {
            write!(f, "{mag}T^{n}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    write!(f, " + O(T^{})", order + 1)
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_int_terms(
            f,
            self.coeffs.iter().enumerate().map(|(i, c)| (i + 1, c)),
            self.order(),
        )
    }
}

impl Serialize for IntSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            order: usize,
            coeffs: Vec<String>,
        }
        Repr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

/// Series over `Z/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mod2Series {
    bits: Vec<bool>,
}

impl Mod2Series {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn order(&self) -> usize {
        self.bits.len()
    }

    pub fn coeff(&self, n: usize) -> bool {
        n >= 1 && n <= self.bits.len() && self.bits[n - 1]
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order().max(other.order());
        (1..=order).find(|&n| self.coeff(n) != other.coeff(n))
    }
}

impl fmt::Display for Mod2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = BigInt::one();
        let zero = BigInt::zero();
        write_int_terms(
            f,
            self.bits
                .iter()
                .enumerate()
                .map(|(i, &b)| (i + 1, if b { &one } else { &zero })),
            self.order(),
        )
    }
}

impl Serialize for Mod2Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            order: usize,
            coeffs: Vec<u8>,
        }
        Repr {
            order: self.order(),
            coeffs: self.bits.iter().map(|&b| b as u8).collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    fn series(coeffs: Vec<LaurentPoly>) -> ZetaSeries {
        ZetaSeries::new(SeriesKind::Naive, 2, coeffs)
    }

    #[test]
    fn div_u_minus_1_examples() {
        // (u^2 - 1) T^2  ->  (u + 1) T^2
        let s = series(vec![LaurentPoly::zero(), lp(&[(2, 1), (0, -1)])]);
        assert_eq!(s.div_u_minus_1().unwrap().coeff(2), lp(&[(1, 1), (0, 1)]));
        // Z_{f_2} = (u^2 - 1)(u^-2 T^2 + u^-4 T^4) -> (u + 1)(u^-2 T^2 + u^-4 T^4)
        let z = series(vec![
            LaurentPoly::zero(),
            lp(&[(0, 1), (-2, -1)]),
            LaurentPoly::zero(),
            lp(&[(-2, 1), (-4, -1)]),
        ]);
        let q = z.div_u_minus_1().unwrap();
        assert_eq!(q.coeff(2), lp(&[(-1, 1), (-2, 1)]));
        assert_eq!(q.coeff(4), lp(&[(-3, 1), (-4, 1)]));
        let bad = series(vec![LaurentPoly::zero(), LaurentPoly::u()]);
        assert_eq!(bad.div_u_minus_1(), Err(Error::NotDivisible(2)));
    }

    #[test]
    fn deriv_examples() {
        let s = series(vec![lp(&[(-1, 1)])]);
        assert_eq!(s.deriv_u().coeff(1), lp(&[(-2, -1)]));
        // (u + 1) u^-2 = u^-1 + u^-2
        let s = series(vec![LaurentPoly::zero(), lp(&[(-1, 1), (-2, 1)])]);
        assert_eq!(s.deriv_u().coeff(2), lp(&[(-2, -1), (-3, -2)]));
    }

    #[test]
    fn eval_examples() {
        // (u^2 - 1) u^-2 at u = -1 vanishes
        let s = series(vec![LaurentPoly::zero(), lp(&[(0, 1), (-2, -1)])]);
        assert!(s.eval_u(-1).is_zero());
        // (u - 1) u^-n at u = -1 is -2 (-1)^n
        let s = series((1..=5).map(|n| lp(&[(1 - n, 1), (-n, -1)])).collect());
        let expected: Vec<i64> = (1..=5).map(|n: i64| -2 * (-1i64).pow(n as u32)).collect();
        assert_eq!(s.eval_u(-1), IntSeries::from_i64(&expected));
        // (u + 1) u^-2 at u = 1 is 2
        let s = series(vec![LaurentPoly::zero(), lp(&[(-1, 1), (-2, 1)])]);
        assert_eq!(s.eval_u(1), IntSeries::from_i64(&[0, 2]));
    }

    #[test]
    fn mod2_examples() {
        assert!(IntSeries::from_i64(&[0, 2]).mod2().is_zero());
        assert_eq!(
            IntSeries::from_i64(&[0, 0, 0, 3]).mod2(),
            Mod2Series::new(vec![false, false, false, true])
        );
        assert_eq!(
            IntSeries::from_i64(&[0, 0, -1]).mod2(),
            Mod2Series::new(vec![false, false, true])
        );
    }

    /// Difference quotient `(p(1 + h) - p(1)) / h` at exact rational `h`
    /// converges to the formal derivative at 1.
    #[test]
    fn derivative_matches_difference_quotient() {
        let p = lp(&[(-2, 1), (-3, 1), (-4, 1), (3, -2), (1, 5)]);
        let formal = BigRational::from_integer(p.derivative().eval_at_one());
        let one = BigRational::one();
        let mut prev_err: Option<BigRational> = None;
        for k in 8..16 {
            let h = BigRational::new(BigInt::one(), BigInt::from(1u64 << k));
            let dq = (p.eval_rational(&(&one + &h)) - p.eval_rational(&one)) / &h;
            let err = (dq - &formal).abs();
            if let Some(prev) = prev_err {
                assert!(err < prev, "difference quotient must converge");
            }
            prev_err = Some(err);
        }
        assert!(prev_err.unwrap() < BigRational::new(BigInt::one(), BigInt::from(100)));
    }

    #[test]
    fn display() {
        let s = series(vec![LaurentPoly::zero(), lp(&[(-1, 1), (-2, 1)])]);
        assert_eq!(s.to_string(), "(u^-1 + u^-2)T^2 + O(T^3)");
        assert_eq!(
            IntSeries::from_i64(&[2, -2, 0]).to_string(),
            "2T^1 - 2T^2 + O(T^4)"
        );
    }
}
