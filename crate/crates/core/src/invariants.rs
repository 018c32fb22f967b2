//! Blow-Nash invariants read off the zeta functions at `u = 1` and `u = -1`,
//! and comparison of germs through them.
//!
//! Writing `Z = Σ_l (u-1)^l z_l`, the invariants `z_1(1,T)` and `z_2(1,T)` are
//! the value and `u`-derivative of `Z/(u-1)` at `u = 1`; likewise `z_0^±` and
//! `z_1^±` are the value and derivative of `Z^±` at `u = 1`. Equivalent germs
//! share `z_1`, `z_0^±` and, modulo 2, `z_2` and `z_1^±`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{IntSeries, Mod2Series, ZetaSeries};
use crate::error::{Error, Result};
use crate::germ::Germ;
use crate::pipeline::{compute, Method};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantProfile {
    pub order: usize,
    pub kp_naive: IntSeries,
    pub kp_plus: Option<IntSeries>,
    pub kp_minus: Option<IntSeries>,
    pub z1: IntSeries,
    pub z2_mod2: Mod2Series,
    pub z0_plus: Option<IntSeries>,
    pub z0_minus: Option<IntSeries>,
    pub z1_plus_mod2: Option<Mod2Series>,
    pub z1_minus_mod2: Option<Mod2Series>,
    pub has_sign_data: bool,
}

pub fn profile(
    z: &ZetaSeries,
    plus: Option<&ZetaSeries>,
    minus: Option<&ZetaSeries>,
) -> Result<InvariantProfile> {
    let order = z.order();
    for s in plus.iter().chain(minus.iter()) {
        if s.order() != order {
            return Err(Error::OrderMismatch(order, s.order()));
        }
    }
    let reduced = z.div_u_minus_1()?;
    let (plus, minus) = match (plus, minus) {
        (Some(p), Some(m)) => (Some(p), Some(m)),
        _ => (None, None),
    };
    Ok(InvariantProfile {
        order,
        kp_naive: z.eval_u(-1),
        kp_plus: plus.map(|s| s.eval_u(-1)),
        kp_minus: minus.map(|s| s.eval_u(-1)),
        z1: reduced.eval_u(1),
        z2_mod2: reduced.deriv_u().eval_u(1).mod2(),
        z0_plus: plus.map(|s| s.eval_u(1)),
        z0_minus: minus.map(|s| s.eval_u(1)),
        z1_plus_mod2: plus.map(|s| s.deriv_u().eval_u(1).mod2()),
        z1_minus_mod2: minus.map(|s| s.deriv_u().eval_u(1).mod2()),
        has_sign_data: plus.is_some(),
    })
}

/// Scaling between the Euler-characteristic sign zeta function and
/// `Z^±(-1,T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerScaling {
    /// `χ_c(Y_n^±) = -χ_c(X_n^±)`, the value a direct count on `f = x` gives.
    Single,
    /// `χ_c(Y_n^±) = -2χ_c(X_n^±)`.
    Double,
}

impl InvariantProfile {
    /// Koike–Parusiński sign zeta function, `-c·Z^±(-1,T)` with `c` 1 or 2.
    pub fn kp_sign_zeta(&self, sign: i8, scaling: EulerScaling) -> Option<IntSeries> {
        let z = if sign > 0 {
            self.kp_plus.as_ref()?
        } else {
            self.kp_minus.as_ref()?
        };
        let single = z.neg();
        Some(match scaling {
            EulerScaling::Single => single,
            EulerScaling::Double => single.add(&single),
        })
    }
}

/// Profile of a germ computed with the given method.
pub fn germ_profile(g: &Germ, method: Method, order: usize) -> Result<InvariantProfile> {
    let z = compute(g, method, order)?;
    profile(&z.naive, z.plus.as_ref(), z.minus.as_ref())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Distinct,
    /// Sign data missing on at least one side.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantComparison {
    pub invariant: &'static str,
    pub verdict: Verdict,
    /// Lowest power of `T` where the series differ.
    pub first_difference: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub order: usize,
    pub entries: Vec<InvariantComparison>,
}

impl ComparisonReport {
    pub fn distinguished(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == Verdict::Distinct)
    }

    /// The invariant differing at the lowest order; ties go to the one listed
    /// first.
    pub fn witness(&self) -> Option<(&'static str, usize)> {
        self.entries
            .iter()
            .filter_map(|e| e.first_difference.map(|n| (e.invariant, n)))
            .min_by_key(|&(_, n)| n)
    }

    /// `distinguished by z1 at T^4` or `indistinguishable at order 12`.
    pub fn summary(&self) -> String {
        match self.witness() {
            Some((name, n)) => format!("distinguished by {name} at T^{n}"),
            None => format!("indistinguishable at order {}", self.order),
        }
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<15} {:<9} first difference", "invariant", "verdict")?;
        for e in &self.entries {
            let verdict = match e.verdict {
                Verdict::Equal => "equal",
                Verdict::Distinct => "distinct",
                Verdict::Unknown => "unknown",
            };
            let at = e
                .first_difference
                .map_or("-".to_string(), |n| format!("T^{n}"));
            writeln!(f, "{:<15} {:<9} {at}", e.invariant, verdict)?;
        }
        write!(f, "{}", self.summary())
    }
}

fn entry<T>(
    invariant: &'static str,
    a: Option<&T>,
    b: Option<&T>,
    diff: impl Fn(&T, &T) -> Option<usize>,
) -> InvariantComparison {
    let (verdict, first_difference) = match (a, b) {
        (Some(x), Some(y)) => match diff(x, y) {
            Some(n) => (Verdict::Distinct, Some(n)),
            None => (Verdict::Equal, None),
        },
        _ => (Verdict::Unknown, None),
    };
    InvariantComparison {
        invariant,
        verdict,
        first_difference,
    }
}

pub fn compare(a: &InvariantProfile, b: &InvariantProfile) -> Result<ComparisonReport> {
    if a.order != b.order {
        return Err(Error::OrderMismatch(a.order, b.order));
    }
    let int = |x: &IntSeries, y: &IntSeries| x.first_difference(y);
    let bits = |x: &Mod2Series, y: &Mod2Series| x.first_difference(y);
    let entries = vec![
        entry("z1", Some(&a.z1), Some(&b.z1), int),
        entry("z2_mod2", Some(&a.z2_mod2), Some(&b.z2_mod2), bits),
        entry("z0_plus", a.z0_plus.as_ref(), b.z0_plus.as_ref(), int),
        entry("z0_minus", a.z0_minus.as_ref(), b.z0_minus.as_ref(), int),
        entry(
            "z1_plus_mod2",
            a.z1_plus_mod2.as_ref(),
            b.z1_plus_mod2.as_ref(),
            bits,
        ),
        entry(
            "z1_minus_mod2",
            a.z1_minus_mod2.as_ref(),
            b.z1_minus_mod2.as_ref(),
            bits,
        ),
        entry("kp_naive", Some(&a.kp_naive), Some(&b.kp_naive), int),
        entry("kp_plus", a.kp_plus.as_ref(), b.kp_plus.as_ref(), int),
        entry("kp_minus", a.kp_minus.as_ref(), b.kp_minus.as_ref(), int),
    ];
    Ok(ComparisonReport {
        order: a.order,
        entries,
    })
}

/// One pair of germs in a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub a: String,
    pub b: String,
    pub verdict: String,
    pub witness_invariant: Option<String>,
    pub witness_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub order: usize,
    /// Germ labels grouped into classes indistinguishable at `order`.
    pub classes: Vec<Vec<String>>,
    /// Germs whose zeta functions could not be computed, with the error.
    pub uncomputed: Vec<(String, String)>,
    pub pairs: Vec<PairReport>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} classes at order {}", self.classes.len(), self.order)?;
        for (i, class) in self.classes.iter().enumerate() {
            writeln!(f, "  class {}: {}", i + 1, class.join(" | "))?;
        }
        for (label, err) in &self.uncomputed {
            writeln!(f, "  uncomputed: {label}: {err}")?;
        }
        for p in &self.pairs {
            writeln!(f, "{} vs {}: {}", p.a, p.b, p.verdict)?;
        }
        Ok(())
    }
}

/// Groups germs whose profiles are pairwise indistinguishable, merging
/// transitively.
pub fn classify(germs: &[Germ], method: Method, order: usize) -> Classification {
    let labels: Vec<String> = germs.iter().map(ToString::to_string).collect();
    let profiles: Vec<Result<InvariantProfile>> = germs
        .iter()
        .map(|g| germ_profile(g, method, order))
        .collect();
    classify_profiles(&labels, &profiles, order)
}

pub fn classify_profiles(
    labels: &[String],
    profiles: &[Result<InvariantProfile>],
    order: usize,
) -> Classification {
    let n = labels.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut pairs = Vec::new();
    let mut uncomputed = Vec::new();
    for (i, p) in profiles.iter().enumerate() {
        if let Err(e) = p {
            uncomputed.push((labels[i].clone(), format!("{}: {e}", e.name())));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (Ok(a), Ok(b)) = (&profiles[i], &profiles[j]) else {
                continue;
            };
            let report = match compare(a, b) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let witness = report.witness();
            if witness.is_none() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
            pairs.push(PairReport {
                a: labels[i].clone(),
                b: labels[j].clone(),
                verdict: report.summary(),
                witness_invariant: witness.map(|(w, _)| w.to_string()),
                witness_order: witness.map(|(_, k)| k),
            });
        }
    }
    let mut classes: Vec<(usize, Vec<String>)> = Vec::new();
    for i in 0..n {
        if profiles[i].is_err() {
            continue;
        }
        let r = find(&mut parent, i);
        match classes.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(labels[i].clone()),
            None => classes.push((r, vec![labels[i].clone()])),
        }
    }
    Classification {
        order,
        classes: classes.into_iter().map(|(_, m)| m).collect(),
        uncomputed,
        pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LaurentPoly, SeriesKind};

    fn germ(s: &str) -> Germ {
        Germ::parse_with_dim(s, 2).unwrap()
    }

    fn coeffs(s: &IntSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn brieskorn_two_variable_profile() {
        for k in [2usize, 4, 6] {
            let g = germ(&format!("x^{k}+y^{k}"));
            let p = germ_profile(&g, Method::Newton, 20).unwrap();
            // 2T^k/(1-T^k)
            let expected: Vec<i64> = (1..=20).map(|n| if n % k == 0 { 2 } else { 0 }).collect();
            assert_eq!(coeffs(&p.z1), expected);
            assert_eq!(coeffs(p.z0_plus.as_ref().unwrap()), expected);
            assert!(p.z0_minus.as_ref().unwrap().is_zero());
            assert!(p.z1_minus_mod2.as_ref().unwrap().is_zero());
        }
    }

    #[test]
    fn profile_of_a_coordinate() {
        let z = crate::arcspace::zeta_direct(&germ("x"), 5).unwrap();
        let p = profile(&z.naive, None, None).unwrap();
        assert_eq!(coeffs(&p.z1), vec![1, 1, 1, 1, 1]);
        assert_eq!(coeffs(&p.kp_naive), vec![2, -2, 2, -2, 2]);
        assert!(!p.has_sign_data && p.z0_plus.is_none());
        assert_eq!(p.kp_sign_zeta(1, EulerScaling::Single), None);
    }

    #[test]
    fn euler_scalings_of_the_sign_series() {
        let p = germ_profile(&germ("x^2-y^4"), Method::Newton, 8).unwrap();
        let plus = p.kp_plus.clone().unwrap();
        let single = p.kp_sign_zeta(1, EulerScaling::Single).unwrap();
        let double = p.kp_sign_zeta(1, EulerScaling::Double).unwrap();
        assert_eq!(single, plus.neg());
        assert_eq!(double, single.add(&single));
        let minus = p.kp_sign_zeta(-1, EulerScaling::Single).unwrap();
        assert_eq!(p.kp_naive, single.add(&minus));
    }

    #[test]
    fn profile_requires_divisibility_and_matching_orders() {
        let z = ZetaSeries::new(SeriesKind::Naive, 2, vec![LaurentPoly::u()]);
        assert_eq!(profile(&z, None, None), Err(Error::NotDivisible(1)));
        let z = ZetaSeries::zero(SeriesKind::Naive, 2, 3);
        let p = ZetaSeries::zero(SeriesKind::Plus, 2, 4);
        assert_eq!(
            profile(&z, Some(&p), Some(&p)),
            Err(Error::OrderMismatch(3, 4))
        );
    }

    #[test]
    fn z2_is_the_derivative_at_one() {
        // Z = (u²-1)u⁻²T²: Z/(u-1) = (u+1)u⁻² = u⁻¹ + u⁻², derivative -u⁻² - 2u⁻³ → -3.
        let z = ZetaSeries::new(
            SeriesKind::Naive,
            2,
            vec![
                LaurentPoly::zero(),
                LaurentPoly::from_pairs([(0, 1), (-2, -1)]),
            ],
        );
        let p = profile(&z, None, None).unwrap();
        assert_eq!(coeffs(&p.z1), vec![0, 2]);
        assert!(p.z2_mod2.coeff(2));
    }

    #[test]
    fn three_variable_brieskorn_is_distinguished_by_z1() {
        let a = germ_profile(&Germ::parse("x^2+y^4+z^4").unwrap(), Method::Direct, 12).unwrap();
        let b = germ_profile(&Germ::parse("x^2+y^6+z^6").unwrap(), Method::Direct, 12).unwrap();
        assert_eq!(i64::try_from(&a.z1.coeff(4)).unwrap(), 3);
        assert_eq!(i64::try_from(&b.z1.coeff(4)).unwrap(), 1);
        let r = compare(&a, &b).unwrap();
        assert!(r.distinguished());
        assert_eq!(r.summary(), "distinguished by z1 at T^4");
    }

    #[test]
    fn sign_swap_is_detected() {
        let a = germ_profile(&germ("x^2+y^2"), Method::Newton, 10).unwrap();
        let b = germ_profile(&germ("-x^2-y^2"), Method::Newton, 10).unwrap();
        let r = compare(&a, &b).unwrap();
        assert_eq!(r.witness(), Some(("z0_plus", 2)));
        let same = compare(&a, &a).unwrap();
        assert!(!same.distinguished());
        assert!(same.entries.iter().all(|e| e.verdict == Verdict::Equal));
        assert_eq!(same.summary(), "indistinguishable at order 10");
    }

    #[test]
    fn missing_sign_data_is_unknown() {
        let a = germ_profile(&germ("x^2*y^2+x^4"), Method::Direct, 8).unwrap();
        let b = germ_profile(&germ("x^2*y^2+x^4"), Method::Newton, 8).unwrap();
        let r = compare(&a, &b).unwrap();
        assert!(!r.distinguished());
        assert_eq!(r.entries[2].verdict, Verdict::Unknown);
        let c = germ_profile(&germ("x^2+y^2"), Method::Newton, 9).unwrap();
        assert_eq!(compare(&a, &c), Err(Error::OrderMismatch(8, 9)));
    }

    #[test]
    fn classify_examples() {
        let gs: Vec<Germ> = ["x^2+y^2", "x^4+y^4", "x^6+y^6"]
            .iter()
            .map(|s| germ(s))
            .collect();
        let c = classify(&gs, Method::Auto, 12);
        assert_eq!(c.classes.len(), 3);
        assert_eq!(c.pairs[0].witness_invariant.as_deref(), Some("z1"));
        assert_eq!(c.pairs[0].witness_order, Some(2));

        let gs = vec![
            germ("x^2+y^2"),
            germ("-x^2-y^2"),
            germ("y^2+x^2"),
            germ("x^2+2x*y+y^2"),
        ];
        let c = classify(&gs, Method::Newton, 8);
        assert_eq!(
            c.classes,
            vec![
                vec!["x^2 + y^2".to_string(), "x^2 + y^2".to_string()],
                vec!["-x^2 - y^2".to_string()]
            ]
        );
        assert_eq!(c.uncomputed.len(), 1);

        let gs: Vec<Germ> = (2..=4)
            .map(|k| Germ::parse(&format!("x^2+y^{0}+z^{0}", 2 * k)).unwrap())
            .collect();
        assert_eq!(classify(&gs, Method::Direct, 10).classes.len(), 3);
    }
}
