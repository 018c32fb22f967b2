//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so every criterion prints its verdict
//! whether or not output capture is on; the process fails if any does.

use motzeta::arcspace::{beta_degree, zeta_direct};
use motzeta::germ::polygon;
use motzeta::invariants::{classify, germ_profile};
use motzeta::newton2d::{build_fan, resolve, resolve_with_fan, Fan};
use motzeta::{
    Germ, IntSeries, LaurentPoly, Method, RationalBlock, SeriesKind, ZetaClosedForm, ZetaSeries,
};

const CORPUS: [&str; 6] = [
    "x^2+y^2", "x^2+y^4", "x^4+y^4", "x^2+y^8", "x^4+y^6", "x^6+y^6",
];

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn germ(s: &str) -> Germ {
    Germ::parse(s).expect("test germ parses")
}

fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs.iter().copied())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `c·T^k/(u^2 - T^k)` written with a single block.
fn over_u2_minus_tk(kind: SeriesKind, c: LaurentPoly, k: u32) -> ZetaClosedForm {
    ZetaClosedForm::new(kind, 2).with_term(c, vec![RationalBlock::new(2, k)])
}

/// Hand expansion of `c·T^k/(u^2 - T^k) = Σ_j c·u^{-2j} T^{jk}`.
fn hand_series(kind: SeriesKind, c: &LaurentPoly, k: usize, order: usize) -> ZetaSeries {
    let coeffs = (1..=order)
        .map(|n| {
            if n % k == 0 {
                c.shift(-2 * (n / k) as i64)
            } else {
                LaurentPoly::zero()
            }
        })
        .collect();
    ZetaSeries::new(kind, 2, coeffs)
}

fn two_variable_closed_forms() -> Check {
    let naive_num = lp(&[(0, -1), (2, 1)]);
    let sign_num = lp(&[(0, 1), (1, 1)]);
    for k in [2u32, 4, 6] {
        for global in [1i8, -1] {
            let text = if global > 0 {
                format!("x^{k}+y^{k}")
            } else {
                format!("-x^{k}-y^{k}")
            };
            let r = resolve(&germ(&text)).map_err(err)?;
            let naive = r.dl_naive().map_err(err)?;
            let (pos, neg) = (
                r.dl_sign(global).map_err(err)?,
                r.dl_sign(-global).map_err(err)?,
            );
            let want_naive = over_u2_minus_tk(SeriesKind::Naive, naive_num.clone(), k);
            let want_sign = over_u2_minus_tk(SeriesKind::Plus, sign_num.clone(), k);
            ensure(naive.closed_equal(&want_naive), || {
                format!("{text}: naive {naive}")
            })?;
            ensure(pos.closed_equal(&want_sign), || {
                format!("{text}: sign {global} {pos}")
            })?;
            ensure(
                neg.closed_equal(&ZetaClosedForm::new(SeriesKind::Minus, 2)),
                || format!("{text}: opposite sign {neg}"),
            )?;
            let hand = hand_series(SeriesKind::Naive, &naive_num, k as usize, 20);
            ensure(naive.expand(20).coeffs() == hand.coeffs(), || {
                format!("{text}: naive expansion")
            })?;
        }
    }
    Ok(())
}

fn three_variable_pattern() -> Check {
    for (p, k) in [(2u32, 2u32), (2, 3), (4, 2)] {
        for sign in ["", "-"] {
            let f = |k: u32| {
                let (a, b) = (p, k * p);
                if sign.is_empty() {
                    format!("x^{a}+y^{b}+z^{b}")
                } else {
                    format!("-x^{a}-y^{b}-z^{b}")
                }
            };
            let order = (p * k) as usize;
            let z = zeta_direct(&germ(&f(k)), order).map_err(err)?.naive;
            let zk1 = zeta_direct(&germ(&f(k + 1)), order).map_err(err)?.naive;
            let first = lp(&[(0, -1), (1, 1)]).shift(-1);
            let top = lp(&[(0, -1), (3, 1)]).shift(-(k as i64) - 2);
            let other = lp(&[(0, -1), (1, 1)]).shift(-(k as i64));
            ensure(z.coeff(p as usize) == first, || {
                format!("{}: T^{p} is {}", f(k), z.coeff(p as usize))
            })?;
            ensure(z.coeff(order) == top, || {
                format!("{}: T^{order} is {}", f(k), z.coeff(order))
            })?;
            ensure(zk1.coeff(order) == other, || {
                format!("{}: T^{order} is {}", f(k + 1), zk1.coeff(order))
            })?;
        }
    }
    Ok(())
}

fn cross_path() -> Check {
    for s in CORPUS {
        let g = germ(s);
        let r = resolve(&g).map_err(err)?;
        let direct = zeta_direct(&g, 20).map_err(err)?;
        ensure(
            r.dl_naive().map_err(err)?.expand(20) == direct.naive,
            || format!("{s}: naive differs"),
        )?;
        for (sign, want) in [(1i8, &direct.plus), (-1, &direct.minus)] {
            let want = want
                .as_ref()
                .ok_or_else(|| format!("{s}: no direct sign series"))?;
            let got = r.dl_sign(sign).map_err(err)?.expand(20);
            ensure(&got == want, || format!("{s}: sign {sign} differs"))?;
        }
    }
    Ok(())
}

fn stratum_cover(g: &str, id: &str) -> std::result::Result<LaurentPoly, String> {
    let r = resolve(&germ(g)).map_err(err)?;
    r.strata
        .iter()
        .find(|st| st.ids.len() == 1 && st.ids[0] == id)
        .and_then(|st| st.cover_plus.clone())
        .ok_or_else(|| format!("{g}: no cover on {id}"))
}

fn derived_strata() -> Check {
    for (g, id, want) in [
        ("x^2+y^4", "E(1,1)", lp(&[(1, 2)])),
        ("x^2+y^4", "E(2,1)", lp(&[(0, -1), (1, 1)])),
        ("x^2+y^2", "E(1,1)", lp(&[(0, 1), (1, 1)])),
    ] {
        let got = stratum_cover(g, id)?;
        ensure(got == want, || {
            format!("{g} on {id}: {got}, expected {want}")
        })?;
    }
    Ok(())
}

fn refinements(fan: &Fan) -> Vec<Fan> {
    let mut out = Vec::new();
    let mut layer = vec![fan.clone()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for f in &layer {
            for i in 0..f.rays().len() - 1 {
                next.push(f.refine(i));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
        layer.truncate(6);
    }
    out
}

fn refinement_invariance() -> Check {
    for s in CORPUS {
        let g = germ(s);
        let fan = build_fan(&polygon(&g).map_err(err)?);
        let base = resolve_with_fan(&g, &fan).map_err(err)?;
        for fine in refinements(&fan) {
            let r = resolve_with_fan(&g, &fine).map_err(err)?;
            ensure(r != base, || {
                format!("{s}: refinement {fine} left the data unchanged")
            })?;
            ensure(r.validate().is_empty(), || format!("{s}: {fine} invalid"))?;
            ensure(
                r.dl_naive()
                    .map_err(err)?
                    .closed_equal(&base.dl_naive().map_err(err)?),
                || format!("{s}: naive changes under {fine}"),
            )?;
            for sign in [1, -1] {
                let (a, b) = (
                    r.dl_sign(sign).map_err(err)?,
                    base.dl_sign(sign).map_err(err)?,
                );
                ensure(a.closed_equal(&b), || {
                    format!("{s}: sign {sign} changes under {fine}")
                })?;
            }
        }
    }
    Ok(())
}

fn invariant_extraction() -> Check {
    for k in [2usize, 4, 6] {
        let p = germ_profile(&germ(&format!("x^{k}+y^{k}")), Method::Auto, 20).map_err(err)?;
        let want: Vec<i64> = (1..=20).map(|n| if n % k == 0 { 2 } else { 0 }).collect();
        ensure(p.z1 == IntSeries::from_i64(&want), || {
            format!("k={k}: z1 = {}", p.z1)
        })?;
        let plus = p.z0_plus.as_ref().ok_or("no z0_plus")?;
        let minus = p.z0_minus.as_ref().ok_or("no z0_minus")?;
        ensure(!plus.is_zero() && minus.is_zero(), || {
            format!("k={k}: z0 = {plus}, {minus}")
        })?;
    }
    let family = ["x^2+y^2", "x^4+y^4", "-x^2-y^2"].map(germ);
    let c = classify(&family, Method::Auto, 20);
    ensure(c.classes.len() == 3 && c.uncomputed.is_empty(), || {
        c.to_string()
    })
}

fn minus_one_relation() -> Check {
    let germs = CORPUS.iter().copied().chain(["x^2-y^2", "x^3+y^3"]);
    for s in germs {
        let r = resolve(&germ(s)).map_err(err)?;
        let at = |z: ZetaClosedForm| z.expand(20).eval_u(-1);
        let naive = at(r.dl_naive().map_err(err)?);
        let sum = at(r.dl_sign(1).map_err(err)?).add(&at(r.dl_sign(-1).map_err(err)?));
        ensure(naive == sum.neg(), || format!("{s}: {naive} vs -({sum})"))?;
    }
    Ok(())
}

fn divisibility_and_degree() -> Check {
    let germs = CORPUS.iter().copied().chain([
        "x",
        "x*y",
        "x^2*y^2",
        "x^2+y^4+z^4",
        "-x^2-y^6-z^6",
        "x^4+y^2*z^2",
        "x^2*y^2*z^2",
    ]);
    for s in germs {
        let g = germ(s);
        let order = if g.dim() == 3 { 10 } else { 20 };
        let z = zeta_direct(&g, order).map_err(err)?.naive;
        for n in 1..=order {
            let c = z.coeff(n);
            ensure(c.div_u_minus_one().is_some(), || {
                format!("{s}: T^{n} coefficient {c}")
            })?;
            if let Some(deg) = beta_degree(&c, n as u32, g.dim()) {
                ensure(deg <= (n * g.dim()) as i64, || {
                    format!("{s}: T^{n} degree {deg}")
                })?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "closed forms of x^k+y^k and their sign swap",
            two_variable_closed_forms,
        ),
        (
            "three-variable Brieskorn coefficients",
            three_variable_pattern,
        ),
        (
            "Newton pipeline matches arc enumeration on the corpus",
            cross_path,
        ),
        ("sign covers on x^2+y^4 and x^2+y^2", derived_strata),
        (
            "zeta functions invariant under fan refinement",
            refinement_invariance,
        ),
        (
            "invariant extraction and classification",
            invariant_extraction,
        ),
        (
            "naive and sign series related at u = -1",
            minus_one_relation,
        ),
        (
            "(u-1)-divisibility and degree bound",
            divisibility_and_degree,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "criterion 9: OUT OF SCOPE  finiteness of equivalence classes and triviality criteria"
    );
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
