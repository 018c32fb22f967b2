//! Closed forms: finite sums of `coeff * prod u^{-nu} T^N / (1 - u^{-nu} T^N)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{LaurentPoly, SeriesKind, ZetaSeries};

/// `u^{-nu} T^N / (1 - u^{-nu} T^N)` with `N >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(i64, u32)", from = "(i64, u32)")]
pub struct RationalBlock {
    pub nu: i64,
    pub n: u32,
}

impl RationalBlock {
    pub fn new(nu: i64, n: u32) -> Self {
        assert!(n >= 1, "block needs N >= 1");
        Self { nu, n }
    }

    /// Geometric expansion `sum_{k>=1} u^{-nu k} T^{N k}`, indexed by T power.
    fn series(&self, order: usize) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(); order + 1];
        let step = self.n as usize;
        let mut k = 1i64;
        while (k as usize) * step <= order {
            out[(k as usize) * step] = LaurentPoly::u_pow(-self.nu * k);
            k += 1;
        }
        out
    }

    /// The denominator `u^nu - T^N` once the block is written as
    /// `T^N / (u^nu - T^N)`.
    fn denominator(&self) -> TPoly {
        let mut d = TPoly::monomial(LaurentPoly::u_pow(self.nu), 0);
        d.add_assign(&TPoly::monomial(-LaurentPoly::one(), self.n as usize));
        d
    }
}

impl From<(i64, u32)> for RationalBlock {
    fn from((nu, n): (i64, u32)) -> Self {
        Self { nu, n: n.max(1) }
    }
}

impl From<RationalBlock> for (i64, u32) {
    fn from(b: RationalBlock) -> Self {
        (b.nu, b.n)
    }
}

impl fmt::Display for RationalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nu = -self.nu;
        write!(f, "u^{{{nu}}}T^{{{n}}}/(1-u^{{{nu}}}T^{{{n}}})", n = self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedTerm {
    pub coeff: LaurentPoly,
    pub blocks: Vec<RationalBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ZetaClosedForm {
    #[serde(default)]
    pub kind: SeriesKind,
    #[serde(default, rename = "d")]
    pub dim: usize,
    pub terms: Vec<ClosedTerm>,
}

impl ZetaClosedForm {
    pub fn new(kind: SeriesKind, dim: usize) -> Self {
        Self {
            kind,
            dim,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, coeff: LaurentPoly, blocks: Vec<RationalBlock>) {
        assert!(!blocks.is_empty(), "a closed term needs at least one block");
        self.terms.push(ClosedTerm { coeff, blocks });
    }

    pub fn with_term(mut self, coeff: LaurentPoly, blocks: Vec<RationalBlock>) -> Self {
        self.push(coeff, blocks);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact T-expansion up to and including `T^order`.
    pub fn expand(&self, order: usize) -> ZetaSeries {
        assert!(order >= 1, "order must be positive");
        let mut total = vec![LaurentPoly::zero(); order + 1];
        for term in &self.terms {
            let mut acc = vec![LaurentPoly::zero(); order + 1];
            acc[0] = term.coeff.clone();
            for block in &term.blocks {
                acc = truncated_product(&acc, &block.series(order), order);
            }
            for (t, c) in total.iter_mut().zip(&acc) {
                *t += c;
            }
        }
        ZetaSeries::new(self.kind, self.dim, total.split_off(1))
    }

    /// Equality as rational functions in `(u, T)`.
    ///
    /// Every block is rewritten as `T^N / (u^nu - T^N)`; both sides are put
    /// over the product of all block denominators (each to its largest
    /// multiplicity in any term) and the numerators compared.
    pub fn closed_equal(&self, other: &Self) -> bool {
        let mut common: BTreeMap<RationalBlock, usize> = BTreeMap::new();
        for term in self.terms.iter().chain(&other.terms) {
            for (b, m) in block_counts(&term.blocks) {
                let e = common.entry(b).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let numerator = |form: &Self| {
            let mut sum = TPoly::zero();
            for term in &form.terms {
                let counts = block_counts(&term.blocks);
                let t_power: usize = term.blocks.iter().map(|b| b.n as usize).sum();
                let mut num = TPoly::monomial(term.coeff.clone(), t_power);
                for (b, &m) in &common {
                    let missing = m - counts.get(b).copied().unwrap_or(0);
                    for _ in 0..missing {
                        num = num.mul(&b.denominator());
                    }
                }
                sum.add_assign(&num);
            }
            sum
        };
        numerator(self) == numerator(other)
    }
}

fn block_counts(blocks: &[RationalBlock]) -> BTreeMap<RationalBlock, usize> {
    let mut m = BTreeMap::new();
    for b in blocks {
        *m.entry(*b).or_insert(0) += 1;
    }
    m
}

fn truncated_product(a: &[LaurentPoly], b: &[LaurentPoly], order: usize) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    out
}

/// Polynomial in `T` with Laurent coefficients in `u`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
struct TPoly(Vec<LaurentPoly>);

impl TPoly {
    fn zero() -> Self {
        Self(Vec::new())
    }

    fn monomial(c: LaurentPoly, t_exp: usize) -> Self {
        let mut v = vec![LaurentPoly::zero(); t_exp + 1];
        v[t_exp] = c;
        let mut p = Self(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(LaurentPoly::is_zero) {
            self.0.pop();
        }
    }

    fn add_assign(&mut self, other: &Self) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), LaurentPoly::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        self.trim();
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::zero();
        }
        let mut out = vec![LaurentPoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        let mut p = Self(out);
        p.trim();
        p
    }
}

/// Block notation, e.g.
/// `(u^2 - 1) * u^{-2}T^{2}/(1-u^{-2}T^{2})`.
impl fmt::Display for ZetaClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "\n  + ")?;
            }
            write!(f, "({})", term.coeff)?;
            for b in &term.blocks {
                write!(f, " * {b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    fn form(terms: Vec<(LaurentPoly, Vec<(i64, u32)>)>) -> ZetaClosedForm {
        let mut z = ZetaClosedForm::new(SeriesKind::Naive, 2);
        for (c, bs) in terms {
            z.push(
                c,
                bs.into_iter()
                    .map(|(nu, n)| RationalBlock::new(nu, n))
                    .collect(),
            );
        }
        z
    }

    #[test]
    fn expand_single_block() {
        let z = form(vec![(LaurentPoly::u_minus_one(), vec![(1, 1)])]);
        let s = z.expand(3);
        for n in 1..=3 {
            assert_eq!(s.coeff(n), LaurentPoly::u_minus_one().shift(-(n as i64)));
        }
    }

    #[test]
    fn expand_brieskorn_two_variables() {
        // (u^2 - 1) T^2 / (u^2 - T^2), truncated at T^4
        let z = form(vec![(lp(&[(2, 1), (0, -1)]), vec![(2, 2)])]);
        let s = z.expand(4);
        assert!(s.coeff(1).is_zero() && s.coeff(3).is_zero());
        assert_eq!(s.coeff(2), lp(&[(0, 1), (-2, -1)]));
        assert_eq!(s.coeff(4), lp(&[(-2, 1), (-4, -1)]));
    }

    #[test]
    fn closed_equal_examples() {
        let a = form(vec![
            (LaurentPoly::u_minus_one(), vec![(1, 1)]),
            (LaurentPoly::u(), vec![(2, 3), (1, 1)]),
        ]);
        let b = form(vec![
            (LaurentPoly::u(), vec![(1, 1), (2, 3)]),
            (LaurentPoly::u_minus_one(), vec![(1, 1)]),
        ]);
        assert!(a.closed_equal(&b));
        let c = form(vec![(lp(&[(2, 1), (0, -1)]), vec![(2, 2)])]);
        let d = form(vec![(LaurentPoly::u_minus_one(), vec![(2, 2)])]);
        assert!(!c.closed_equal(&d));
        let e = form(vec![(LaurentPoly::constant(2), vec![(1, 1)])]);
        let f = form(vec![
            (LaurentPoly::one(), vec![(1, 1)]),
            (LaurentPoly::one(), vec![(1, 1)]),
        ]);
        assert!(e.closed_equal(&f));
        assert!(ZetaClosedForm::default().closed_equal(&form(vec![])));
    }

    #[test]
    fn closed_equal_across_different_denominators() {
        // (u^2 - 1) B(2,2) = (u - 1)[u B(3,2) + u B(2,2)] + (u - 1)^2 B(3,2) B(2,2),
        // the effect of blowing up one more point on the resolution of x^2 + y^2.
        let lhs = form(vec![(lp(&[(2, 1), (0, -1)]), vec![(2, 2)])]);
        let um1 = LaurentPoly::u_minus_one();
        let rhs = form(vec![
            (&um1 * &LaurentPoly::u(), vec![(3, 2)]),
            (&um1 * &LaurentPoly::u(), vec![(2, 2)]),
            (um1.pow(2), vec![(3, 2), (2, 2)]),
        ]);
        assert!(lhs.closed_equal(&rhs));
        assert_eq!(lhs.expand(20), rhs.expand(20));
        // perturbing the cross term breaks it
        let mut wrong = rhs.clone();
        wrong.terms[2].coeff = um1.clone();
        assert!(!lhs.closed_equal(&wrong));
        // x/(1-x)^2 = x^2/(1-x)^2 + x/(1-x)
        let a = form(vec![
            (LaurentPoly::one(), vec![(1, 1), (1, 1)]),
            (LaurentPoly::one(), vec![(1, 1)]),
        ]);
        let b = form(vec![
            (LaurentPoly::one(), vec![(1, 1)]),
            (LaurentPoly::one(), vec![(1, 1), (1, 1)]),
        ]);
        assert!(a.closed_equal(&b));
        assert!(!a.closed_equal(&form(vec![(LaurentPoly::one(), vec![(2, 2)])])));
    }

    #[test]
    fn display_matches_block_notation() {
        let z = form(vec![(lp(&[(2, 1), (0, -1)]), vec![(2, 2)])]);
        assert_eq!(z.to_string(), "(u^2 - 1) * u^{-2}T^{2}/(1-u^{-2}T^{2})");
    }

    #[test]
    fn serde_shape() {
        let z = form(vec![(LaurentPoly::u_minus_one(), vec![(1, 1)])]);
        let v: serde_json::Value = serde_json::to_value(&z).unwrap();
        assert_eq!(v["terms"][0]["blocks"], serde_json::json!([[1, 1]]));
        assert_eq!(
            v["terms"][0]["coeff"],
            serde_json::json!([[0, "-1"], [1, "1"]])
        );
        let back: ZetaClosedForm = serde_json::from_value(v).unwrap();
        assert_eq!(back, z);
    }

    fn arb_form() -> impl Strategy<Value = ZetaClosedForm> {
        let coeff =
            proptest::collection::vec((-3i64..3, -3i64..3), 1..3).prop_map(LaurentPoly::from_pairs);
        let blocks = proptest::collection::vec((0i64..4, 1u32..4), 1..3);
        proptest::collection::vec((coeff, blocks), 0..3).prop_map(|ts| {
            let mut z = ZetaClosedForm::new(SeriesKind::Naive, 2);
            for (c, bs) in ts {
                z.push(
                    c,
                    bs.into_iter()
                        .map(|(nu, n)| RationalBlock::new(nu, n))
                        .collect(),
                );
            }
            z
        })
    }

    proptest! {
        #[test]
        fn expansion_is_multiplicative(a in arb_form(), b in arb_form()) {
            // product of two closed forms, term by term
            let mut prod = ZetaClosedForm::new(SeriesKind::Naive, 2);
            for x in &a.terms {
                for y in &b.terms {
                    let mut blocks = x.blocks.clone();
                    blocks.extend(y.blocks.iter().copied());
                    prod.push(&x.coeff * &y.coeff, blocks);
                }
            }
            let order = 9;
            prop_assert_eq!(prod.expand(order), a.expand(order).mul_truncated(&b.expand(order)));
        }

        #[test]
        fn equal_forms_expand_equally(a in arb_form(), b in arb_form()) {
            // a + b against b + a, and a against itself with a cancelling pair
            let mut ab = a.clone();
            ab.terms.extend(b.terms.iter().cloned());
            let mut ba = b.clone();
            ba.terms.extend(a.terms.iter().cloned());
            prop_assert!(ab.closed_equal(&ba));
            prop_assert_eq!(ab.expand(12), ba.expand(12));
            if a.closed_equal(&b) {
                prop_assert_eq!(a.expand(15), b.expand(15));
            }
        }

        #[test]
        fn expansion_respects_t_adic_order(a in arb_form()) {
            let s = a.expand(10);
            for t in &a.terms {
                let min_n: u32 = t.blocks.iter().map(|b| b.n).sum();
                prop_assert!(min_n >= 1);
            }
            prop_assert_eq!(s.order(), 10);
            prop_assert_eq!(s.truncate(5), a.expand(5));
        }
    }
}
