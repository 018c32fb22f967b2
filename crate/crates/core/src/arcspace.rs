//! Direct computation of the zeta functions by stratifying truncated arcs
//! according to the orders of their coordinates.
//!
//! An arc in `L_n` is a `d`-tuple of polynomials of degree at most `n` without
//! constant term. Fixing the order `a_i ∈ {1..n, ∞}` of every coordinate cuts
//! `L_n` into products: a coordinate of finite order `a` contributes a nonzero
//! leading coefficient and `n - a` free ones, i.e. `(u-1)u^{n-a}`; an
//! identically zero coordinate is a point. For cancellation-free germs the
//! order of `f∘γ` depends only on the order vector, so summing these products
//! over the order vectors with `min_j ⟨E_j, a⟩ = n` gives `β(X_n)`.
//!
//! There are `(n+1)^d` order vectors per coefficient, which keeps `d ≤ 3` and
//! `n ≤ 30` well under a second.

use num_bigint::BigInt;

use crate::algebra::{LaurentPoly, SeriesKind, ZetaSeries};
use crate::error::{Error, Result};
use crate::germ::Germ;

/// Coordinate orders of a truncated arc; `None` is an identically zero coordinate.
pub type OrderVector = Vec<Option<u32>>;

/// Calls `visit` on every order vector in `{1..n, ∞}^d`.
fn for_each_order_vector(d: usize, n: u32, mut visit: impl FnMut(&[Option<u32>])) {
    let mut a: OrderVector = vec![Some(1); d];
    loop {
        visit(&a);
        let mut i = 0;
        loop {
            if i == d {
                return;
            }
            a[i] = match a[i] {
                Some(k) if k < n => Some(k + 1),
                Some(_) => None,
                None => Some(1),
            };
            if a[i] != Some(1) {
                break;
            }
            i += 1;
        }
    }
}

/// Order of the monomial `x^e` along arcs with order vector `a`.
fn monomial_order(e: &[u32], a: &[Option<u32>]) -> Option<u64> {
    let mut total = 0u64;
    for (&ei, ai) in e.iter().zip(a) {
        if ei == 0 {
            continue;
        }
        total += u64::from(ei) * u64::from((*ai)?);
    }
    Some(total)
}

/// Contribution of one coordinate, normalized by `u^{-n}`.
fn coordinate_factor(a: Option<u32>, n: u32) -> LaurentPoly {
    match a {
        Some(k) => LaurentPoly::u_minus_one().shift(-i64::from(k)),
        None => LaurentPoly::u_pow(-i64::from(n)),
    }
}

/// `β(X_n)·u^{-nd}`.
pub fn naive_coeff(g: &Germ, n: u32) -> Result<LaurentPoly> {
    if !g.classify().cancellation_free {
        return Err(Error::UnsupportedGerm(format!(
            "{g} is not cancellation-free; use a resolution instead"
        )));
    }
    let exps: Vec<&[u32]> = g.terms().map(|(e, _)| e).collect();
    let mut total = LaurentPoly::zero();
    for_each_order_vector(g.dim(), n, |a| {
        let order = exps.iter().filter_map(|e| monomial_order(e, a)).min();
        if order == Some(u64::from(n)) {
            let mut term = LaurentPoly::one();
            for &ai in a {
                term = &term * &coordinate_factor(ai, n);
            }
            total += &term;
        }
    });
    Ok(total)
}

/// β of `{Σ_{i≤q} c_i ℓ_i^{e_i} = 1}` for positive `c_i` and even `e_i`.
///
/// For `q ≥ 1` this is a compact nonsingular hypersurface homeomorphic to the
/// sphere `S^{q-1}`, and β agrees with the ℤ/2 Poincaré polynomial on compact
/// nonsingular sets, giving `1 + u^{q-1}` (two points when `q = 1`). With no
/// variables the equation `0 = 1` is empty.
pub fn beta_sphere(q: usize) -> LaurentPoly {
    if q == 0 {
        LaurentPoly::zero()
    } else {
        LaurentPoly::one() + LaurentPoly::u_pow(q as i64 - 1)
    }
}

/// β of `{Σ_{i≤q} c_i ℓ_i^{e_i} = 1, every ℓ_i ≠ 0}`, by inclusion-exclusion
/// over the coordinates forced to vanish.
fn beta_punctured_sphere(q: usize) -> LaurentPoly {
    let mut total = LaurentPoly::zero();
    let mut binom = BigInt::from(1);
    for r in 0..=q {
        let term = beta_sphere(q - r).scale(&binom);
        if r % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
        binom = binom * BigInt::from(q - r) / BigInt::from(r + 1);
    }
    total
}

/// Lowest single-variable monomial per coordinate of a diagonal germ:
/// `(exponent, coefficient)` or `None` if the variable does not occur.
fn diagonal_leading(g: &Germ) -> Vec<Option<(u32, BigInt)>> {
    let mut lead: Vec<Option<(u32, BigInt)>> = vec![None; g.dim()];
    for (e, c) in g.terms() {
        let i = e.iter().position(|&x| x > 0).expect("no constant term");
        if lead[i].as_ref().is_none_or(|(k, _)| e[i] < *k) {
            lead[i] = Some((e[i], c.clone()));
        }
    }
    lead
}

/// `β(X_n^±)·u^{-nd}` for `sign = +1` or `-1`.
pub fn sign_coeff(g: &Germ, n: u32, sign: i8) -> Result<LaurentPoly> {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    if !g.classify().diagonal {
        return Err(Error::UnsupportedGerm(format!(
            "sign enumeration needs a diagonal germ, got {g}"
        )));
    }
    let germ_sign = g.common_sign().expect("diagonal germs have a common sign");
    if germ_sign != sign {
        return Ok(LaurentPoly::zero());
    }
    let lead = diagonal_leading(g);
    let mut total = LaurentPoly::zero();
    for_each_order_vector(g.dim(), n, |a| {
        let orders: Vec<Option<u64>> = lead
            .iter()
            .zip(a)
            .map(|(l, ai)| match (l, ai) {
                (Some((e, _)), Some(k)) => Some(u64::from(*e) * u64::from(*k)),
                _ => None,
            })
            .collect();
        if orders.iter().flatten().min() != Some(&u64::from(n)) {
            return;
        }
        let mut achieving = 0;
        let mut term = LaurentPoly::one();
        for (ord, &ai) in orders.iter().zip(a) {
            if *ord == Some(u64::from(n)) {
                // The leading coefficient is counted by the sphere factor; only
                // the free tail remains.
                achieving += 1;
                term = term.shift(-i64::from(ai.unwrap()));
            } else {
                term = &term * &coordinate_factor(ai, n);
            }
        }
        total += &(&term * &beta_punctured_sphere(achieving));
    });
    Ok(total)
}

/// Naive and sign zeta functions computed by direct enumeration. The sign
/// series are present only for diagonal germs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectZeta {
    pub naive: ZetaSeries,
    pub plus: Option<ZetaSeries>,
    pub minus: Option<ZetaSeries>,
}

pub fn zeta_direct(g: &Germ, order: usize) -> Result<DirectZeta> {
    let d = g.dim();
    let naive = (1..=order as u32)
        .map(|n| naive_coeff(g, n))
        .collect::<Result<Vec<_>>>()?;
    let naive = ZetaSeries::new(SeriesKind::Naive, d, naive);
    if !g.classify().diagonal {
        return Ok(DirectZeta {
            naive,
            plus: None,
            minus: None,
        });
    }
    let series = |sign: i8, kind| -> Result<ZetaSeries> {
        let coeffs = (1..=order as u32)
            .map(|n| sign_coeff(g, n, sign))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZetaSeries::new(kind, d, coeffs))
    };
    Ok(DirectZeta {
        naive,
        plus: Some(series(1, SeriesKind::Plus)?),
        minus: Some(series(-1, SeriesKind::Minus)?),
    })
}

/// Highest `u`-degree of `β(X_n)` recovered from a normalized coefficient.
pub fn beta_degree(coeff: &LaurentPoly, n: u32, d: usize) -> Option<i64> {
    coeff.degree().map(|k| k + i64::from(n) * d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn germ(s: &str) -> Germ {
        Germ::parse(s).unwrap()
    }

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    fn um1() -> LaurentPoly {
        LaurentPoly::u_minus_one()
    }

    #[test]
    fn sphere_values() {
        assert_eq!(beta_sphere(0), LaurentPoly::zero());
        assert_eq!(beta_sphere(1), LaurentPoly::constant(2));
        assert_eq!(beta_sphere(2), lp(&[(0, 1), (1, 1)]));
        // A circle minus its four axis points.
        assert_eq!(beta_punctured_sphere(2), lp(&[(0, -3), (1, 1)]));
        assert_eq!(beta_punctured_sphere(1), LaurentPoly::constant(2));
    }

    #[test]
    fn order_vectors_are_enumerated_once() {
        let mut seen = Vec::new();
        for_each_order_vector(2, 3, |a| seen.push(a.to_vec()));
        assert_eq!(seen.len(), 16);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn naive_examples() {
        let g = germ("x^2+y^4+z^4");
        assert_eq!(naive_coeff(&g, 2).unwrap(), um1().shift(-1));
        assert_eq!(
            naive_coeff(&g, 4).unwrap(),
            lp(&[(3, 1), (0, -1)]).shift(-4)
        );
        let g = germ("x^2+y^2");
        assert_eq!(
            naive_coeff(&g, 2).unwrap(),
            lp(&[(2, 1), (0, -1)]).shift(-2)
        );
        assert!(naive_coeff(&germ("x^2-y^2"), 2).is_err());
    }

    #[test]
    fn sign_examples() {
        let g = germ("x^2+y^2");
        assert_eq!(
            sign_coeff(&g, 2, 1).unwrap(),
            lp(&[(0, 1), (1, 1)]).shift(-2)
        );
        for n in 1..8 {
            assert!(sign_coeff(&g, n, -1).unwrap().is_zero());
        }
        let g = germ("x^2+y^4");
        assert_eq!(
            sign_coeff(&g, 4, 1).unwrap(),
            lp(&[(0, 1), (1, 1)]).shift(-3)
        );
        assert!(sign_coeff(&germ("x^2y^2+x^4"), 4, 1).is_err());
    }

    #[test]
    fn zeta_direct_examples() {
        let z = zeta_direct(&germ("x^2+y^2"), 4).unwrap();
        let a = lp(&[(2, 1), (0, -1)]);
        let zero = LaurentPoly::zero();
        assert_eq!(
            z.naive.coeffs(),
            &[zero.clone(), a.shift(-2), zero.clone(), a.shift(-4)]
        );
        let b = lp(&[(0, 1), (1, 1)]);
        assert_eq!(
            z.plus.unwrap().coeffs(),
            &[zero.clone(), b.shift(-2), zero.clone(), b.shift(-4)]
        );
        assert!(z.minus.unwrap().is_zero());

        let z = zeta_direct(&Germ::parse_with_dim("x", 2).unwrap(), 3).unwrap();
        assert_eq!(
            z.naive.coeffs(),
            &[um1().shift(-1), um1().shift(-2), um1().shift(-3)]
        );
        assert!(z.plus.is_none() && z.minus.is_none());

        let z = zeta_direct(&germ("x^2+y^4"), 4).unwrap();
        assert_eq!(z.naive.coeff(2), um1().shift(-1));
        assert_eq!(z.naive.coeff(4), &um1() * &lp(&[(-2, 1), (-3, 1)]));
    }

    #[test]
    fn negated_germ_swaps_signs() {
        let g = germ("x^2+y^4");
        let h = -&g;
        for n in 1..=8 {
            assert_eq!(naive_coeff(&g, n).unwrap(), naive_coeff(&h, n).unwrap());
            assert_eq!(
                sign_coeff(&g, n, 1).unwrap(),
                sign_coeff(&h, n, -1).unwrap()
            );
            assert!(sign_coeff(&h, n, 1).unwrap().is_zero());
        }
    }

    /// Independent count for a diagonal germ: an arc lies in `{ord f ≥ n}` iff
    /// each coordinate has order at least `⌈n/e_i⌉`, a linear space of
    /// dimension `Σ max(0, n - ⌈n/e_i⌉ + 1)`; `X_n` is the difference of two
    /// such spaces.
    fn diagonal_oracle(exps: &[u32], n: u32) -> LaurentPoly {
        let at_least = |m: u32| -> LaurentPoly {
            let dim: i64 = exps
                .iter()
                .map(|&e| (i64::from(n) - i64::from(m.div_ceil(e)) + 1).max(0))
                .sum();
            LaurentPoly::u_pow(dim)
        };
        at_least(n) - at_least(n + 1)
    }

    proptest! {
        #[test]
        fn naive_matches_product_oracle(
            exps in prop::collection::vec(prop::sample::select(vec![2u32, 4, 6, 8]), 1..=3),
            n in 1u32..=12,
        ) {
            let d = exps.len();
            let terms = exps.iter().enumerate().map(|(i, &e)| {
                let mut v = vec![0; d];
                v[i] = e;
                (v, BigInt::from(1))
            });
            let g = Germ::new(d, terms).unwrap();
            let got = naive_coeff(&g, n).unwrap().shift(i64::from(n) * d as i64);
            prop_assert_eq!(got, diagonal_oracle(&exps, n));
        }

        #[test]
        fn beta_degree_is_bounded(
            terms in prop::collection::vec((prop::collection::vec(prop::sample::select(vec![0u32, 2, 4]), 2..=3), 1i64..4), 1..4),
            n in 1u32..=10,
        ) {
            let d = terms[0].0.len();
            let terms: Vec<_> = terms.into_iter().map(|(mut e, c)| { e.resize(d, 0); (e, BigInt::from(c)) }).collect();
            let Ok(g) = Germ::new(d, terms) else { return Ok(()); };
            let c = naive_coeff(&g, n).unwrap();
            if let Some(deg) = beta_degree(&c, n, d) {
                prop_assert!(deg <= i64::from(n) * d as i64);
            }
        }
    }

    #[test]
    fn coefficients_vanish_off_attainable_orders() {
        for k in [2u32, 4, 6] {
            let g = Germ::parse(&format!("x^{k}+y^{k}")).unwrap();
            for n in 1..=18 {
                let naive = naive_coeff(&g, n).unwrap();
                let plus = sign_coeff(&g, n, 1).unwrap();
                if n % k == 0 {
                    assert!(!naive.is_zero() && !plus.is_zero(), "k={k} n={n}");
                } else {
                    assert!(naive.is_zero() && plus.is_zero(), "k={k} n={n}");
                }
            }
        }
    }
}
