//! Toric resolution of nondegenerate two-variable germs and the resulting
//! resolution data, sign covers included.
//!
//! Every ray `w` of a unimodular fan refining the dual of the Newton polygon
//! gives a divisor `E_w` with `N = min ⟨w, I⟩` over the support and
//! `ν = w₁ + w₂`. Interior rays are the exceptional circles; an axis ray is a
//! divisor only when the matching coordinate divides `f`. The strict
//! transform meets `E_w` at the nonzero real roots of the face polynomial of
//! `w`, each giving a smooth branch with `(N, ν) = (1, 1)`.

mod cover;
mod fan;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::germ::{face_points, lattice_face_poly, nondegenerate, polygon, Edge, Germ};
use crate::resolution::{Divisor, ResolutionData, Stratum};
use crate::upoly::{RootInterval, UPoly};

pub use cover::{cover_beta, AtInfinity, CoverInput, RemovedPoint};
pub use fan::{build_fan, det, Fan, Ray};

/// Multiplicities and self-intersection datum of one ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayData {
    pub ray: Ray,
    pub n: u32,
    pub nu: u32,
    /// `a` with `v_prev + v_next = a·w`; absent for the two axis rays.
    pub a: Option<i64>,
    /// Support monomials minimizing `⟨w, ·⟩`.
    pub face: Vec<([u32; 2], BigInt)>,
}

/// A nonzero real root of a face polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInfo {
    pub interval: RootInterval,
    /// Sign of the face polynomial just to the right of the root.
    pub sign_right: i8,
}

/// The unit of `f∘σ` along `E_w` in the chart shared with the neighbor `v`:
/// `f∘σ = U(s)·y^{N(w)}`, with `s` the coordinate on `E_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitFunction {
    pub ray: Ray,
    pub neighbor: Ray,
    /// Coefficient of `s^k` at index `k`.
    pub coeffs: Vec<BigInt>,
    /// `D = a·N(w)`: the other chart's unit is `U(s)·s^{-D}` read in `1/s`.
    pub twist: i64,
}

impl UnitFunction {
    pub fn order_at_zero(&self) -> u32 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero unit") as u32
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn leading_sign(&self) -> i8 {
        if self.coeffs.last().expect("nonzero unit").is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn poly(&self) -> UPoly {
        UPoly::from_ints(&self.coeffs)
    }
}

fn dot(w: Ray, p: [u32; 2]) -> i64 {
    w[0] * i64::from(p[0]) + w[1] * i64::from(p[1])
}

fn multiplicity(g: &Germ, w: Ray) -> u32 {
    g.terms()
        .map(|(e, _)| dot(w, [e[0], e[1]]))
        .min()
        .expect("non-empty support") as u32
}

fn check_germ(g: &Germ) -> Result<()> {
    if g.dim() != 2 {
        return Err(Error::DimensionUnsupported(g.dim()));
    }
    let poly = polygon(g)?;
    if let Some(e) = poly
        .edges
        .iter()
        .find(|e| !e.face_polynomial().is_square_free())
    {
        return Err(Error::Degenerate(format!(
            "face polynomial of the edge with normal ({},{}) has a repeated factor",
            e.normal[0], e.normal[1]
        )));
    }
    debug_assert!(nondegenerate(g)?);
    Ok(())
}

pub fn ray_data(fan: &Fan, g: &Germ) -> Result<Vec<RayData>> {
    check_germ(g)?;
    let rays = fan.rays();
    let mut out = Vec::with_capacity(rays.len());
    for (i, &w) in rays.iter().enumerate() {
        let a = if i == 0 || i + 1 == rays.len() {
            None
        } else {
            let s = [
                rays[i - 1][0] + rays[i + 1][0],
                rays[i - 1][1] + rays[i + 1][1],
            ];
            let a = if w[0] != 0 { s[0] / w[0] } else { s[1] / w[1] };
            debug_assert_eq!([a * w[0], a * w[1]], s);
            Some(a)
        };
        out.push(RayData {
            ray: w,
            n: multiplicity(g, w),
            nu: (w[0] + w[1]) as u32,
            a,
            face: face_points(g, w)?,
        });
    }
    Ok(out)
}

/// Nonzero real roots of an edge's face polynomial, in increasing order.
pub fn real_roots(edge: &Edge) -> Vec<RootInfo> {
    roots_of(&edge.face_polynomial())
}

fn roots_of(p: &UPoly) -> Vec<RootInfo> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    p.nonzero_real_roots()
        .into_iter()
        .map(|iv| {
            let sign_right = p.sign_at(&iv.hi);
            RootInfo {
                interval: iv,
                sign_right,
            }
        })
        .collect()
}

fn face_polynomial_of(g: &Germ, w: Ray) -> Result<UPoly> {
    Ok(lattice_face_poly(&face_points(g, w)?, w))
}

pub fn unit_on_ray(fan: &Fan, g: &Germ, w: Ray, v: Ray) -> Result<UnitFunction> {
    let rays = fan.rays();
    let i = rays
        .iter()
        .position(|&r| r == w)
        .filter(|&i| i > 0 && i + 1 < rays.len())
        .ok_or_else(|| {
            Error::InvalidData(format!(
                "({},{}) is not an interior ray of the fan",
                w[0], w[1]
            ))
        })?;
    if v != rays[i - 1] && v != rays[i + 1] {
        return Err(Error::InvalidData(format!(
            "({},{}) is not adjacent to ({},{})",
            v[0], v[1], w[0], w[1]
        )));
    }
    let data = ray_data(fan, g)?;
    let a = data[i].a.expect("interior ray");
    let face = face_points(g, w)?;
    let top = face.iter().map(|(p, _)| dot(v, *p)).max().unwrap();
    let mut coeffs = vec![BigInt::zero(); top as usize + 1];
    for (p, c) in &face {
        coeffs[dot(v, *p) as usize] = c.clone();
    }
    Ok(UnitFunction {
        ray: w,
        neighbor: v,
        coeffs,
        twist: a * i64::from(data[i].n),
    })
}

fn divisor_id(w: Ray) -> String {
    format!("E({},{})", w[0], w[1])
}

fn branch_id(w: Ray, k: usize) -> String {
    format!("S({},{})#{}", w[0], w[1], k + 1)
}

/// β of the real solutions of `t^m = σ/c` at a point stratum.
fn point_cover(m: u32, c: &BigInt, sigma: i8) -> LaurentPoly {
    if m % 2 == 1 {
        LaurentPoly::one()
    } else if (sigma > 0) == c.is_positive() {
        LaurentPoly::constant(2)
    } else {
        LaurentPoly::zero()
    }
}

/// Coefficient of the polygon vertex shared by the faces of adjacent rays.
fn shared_vertex_coeff(g: &Germ, v: Ray, w: Ray) -> Result<BigInt> {
    let fv = face_points(g, v)?;
    let fw = face_points(g, w)?;
    fv.iter()
        .find(|(p, _)| fw.iter().any(|(q, _)| q == p))
        .map(|(_, c)| c.clone())
        .ok_or_else(|| Error::InvalidData("adjacent rays share no vertex".into()))
}

/// The gluing input for the exceptional circle of the interior ray at
/// position `i`, read in the chart shared with the previous ray.
fn circle_input(fan: &Fan, g: &Germ, data: &[RayData], i: usize) -> Result<CoverInput> {
    let rays = fan.rays();
    let (prev, next) = (&data[i - 1], &data[i + 1]);
    let unit = unit_on_ray(fan, g, rays[i], rays[i - 1])?;
    if unit.order_at_zero() != prev.n {
        return Err(Error::UnsupportedCover(format!(
            "unit on {} vanishes to order {} at its neighbor, expected {}",
            divisor_id(rays[i]),
            unit.order_at_zero(),
            prev.n
        )));
    }
    // U(s) = s^{N(prev)}·p(s) with p the face polynomial of the ray.
    let p = UPoly::from_ints(&unit.coeffs[prev.n as usize..]);
    let roots = roots_of(&p);
    let zero = num_rational::BigRational::zero();
    let p0 = p.sign_at(&zero);

    enum Marker {
        Zero,
        Root,
    }
    let mut markers: Vec<Marker> = Vec::new();
    let negatives = roots.iter().filter(|r| r.interval.hi <= zero).count();
    for (k, _) in roots.iter().enumerate() {
        if k == negatives && prev.n >= 1 {
            markers.push(Marker::Zero);
        }
        markers.push(Marker::Root);
    }
    if prev.n >= 1 && negatives == roots.len() {
        markers.push(Marker::Zero);
    }
    let zero_at = markers.iter().position(|m| matches!(m, Marker::Zero));

    // Sign of p between its (j-1)-th and j-th roots.
    let gap_sign = |j: usize| -> i8 {
        if roots.is_empty() {
            p0
        } else if j == 0 {
            p.sign_at(&roots[0].interval.lo)
        } else {
            roots[j - 1].sign_right
        }
    };
    let mut arc_signs = Vec::with_capacity(markers.len() + 1);
    let mut roots_left = 0;
    for j in 0..=markers.len() {
        if j > 0 && matches!(markers[j - 1], Marker::Root) {
            roots_left += 1;
        }
        let mut s = gap_sign(roots_left);
        if zero_at.is_some_and(|z| j <= z) && prev.n % 2 == 1 {
            s = -s;
        }
        arc_signs.push(s);
    }
    let finite = markers
        .iter()
        .enumerate()
        .map(|(j, m)| match m {
            Marker::Zero => RemovedPoint { e: prev.n, c: p0 },
            Marker::Root => RemovedPoint {
                e: 1,
                c: arc_signs[j + 1],
            },
        })
        .collect();

    let at_infinity = unit.twist - i64::from(unit.degree());
    if at_infinity != i64::from(next.n) {
        return Err(Error::UnsupportedCover(format!(
            "unit on {} has order {at_infinity} at infinity, expected {}",
            divisor_id(rays[i]),
            next.n
        )));
    }
    let infinity = if next.n >= 1 {
        AtInfinity::Removed(RemovedPoint {
            e: next.n,
            c: unit.leading_sign(),
        })
    } else {
        AtInfinity::Seam
    };
    Ok(CoverInput {
        m: data[i].n,
        finite,
        arc_signs,
        infinity,
        a: data[i].a.expect("interior ray"),
        twist: unit.twist,
    })
}

fn build(fan: &Fan, g: &Germ, with_covers: bool) -> Result<ResolutionData> {
    check_germ(g)?;
    let normals: Vec<Ray> = polygon(g)?.edges.iter().map(|e| e.normal).collect();
    if let Some(w) = normals.iter().find(|w| !fan.contains(**w)) {
        return Err(Error::InvalidData(format!(
            "fan is missing the edge normal ({},{})",
            w[0], w[1]
        )));
    }
    if fan.interior().next().is_none() {
        return Err(Error::InvalidData("fan has no interior ray".into()));
    }
    let rays = fan.rays();
    let data = ray_data(fan, g)?;
    let last = rays.len() - 1;
    let interior = |i: usize| i > 0 && i < last;
    let in_j = |i: usize| interior(i) || data[i].n >= 1;
    let roots: Vec<Vec<RootInfo>> = (0..rays.len())
        .map(|i| {
            if interior(i) {
                Ok(roots_of(&face_polynomial_of(g, rays[i])?))
            } else {
                Ok(Vec::new())
            }
        })
        .collect::<Result<_>>()?;

    let covers = |st: Stratum, plus: LaurentPoly, minus: LaurentPoly| {
        if with_covers {
            st.with_covers(plus, minus)
        } else {
            st
        }
    };

    let mut divisors = Vec::new();
    let mut strata = Vec::new();
    for i in 0..rays.len() {
        let w = rays[i];
        let id = divisor_id(w);
        if in_j(i) {
            divisors.push(Divisor {
                id: id.clone(),
                n: data[i].n,
                nu: data[i].nu,
                exceptional: interior(i),
            });
            if interior(i) {
                let neighbors = [i - 1, i + 1].iter().filter(|&&k| in_j(k)).count() as i64;
                let beta = LaurentPoly::from_pairs([(0, 1), (1, 1)])
                    - LaurentPoly::constant(neighbors + roots[i].len() as i64);
                let st = Stratum::new(&[&id], beta);
                strata.push(if with_covers {
                    let input = circle_input(fan, g, &data, i)?;
                    st.with_covers(cover_beta(&input, 1)?, cover_beta(&input, -1)?)
                } else {
                    st
                });
            } else {
                // The strict transform of a coordinate axis misses σ⁻¹(0).
                strata.push(covers(
                    Stratum::new(&[&id], LaurentPoly::zero()),
                    LaurentPoly::zero(),
                    LaurentPoly::zero(),
                ));
            }
        }
        for k in 0..roots[i].len() {
            let bid = branch_id(w, k);
            divisors.push(Divisor {
                id: bid.clone(),
                n: 1,
                nu: 1,
                exceptional: false,
            });
            strata.push(covers(
                Stratum::new(&[&bid], LaurentPoly::zero()),
                LaurentPoly::zero(),
                LaurentPoly::zero(),
            ));
            strata.push(covers(
                Stratum::new(&[&id, &bid], LaurentPoly::one()),
                LaurentPoly::one(),
                LaurentPoly::one(),
            ));
        }
        if i < last && in_j(i) && in_j(i + 1) {
            let next = rays[i + 1];
            let m = num_integer::gcd(data[i].n, data[i + 1].n);
            let c = shared_vertex_coeff(g, w, next)?;
            strata.push(covers(
                Stratum::new(&[&id, &divisor_id(next)], LaurentPoly::one()),
                point_cover(m, &c, 1),
                point_cover(m, &c, -1),
            ));
        }
    }
    Ok(ResolutionData {
        d: 2,
        divisors,
        strata,
        note: "newton2d".into(),
    })
}

/// β of every stratum, without sign covers.
pub fn strata_table(fan: &Fan, g: &Germ) -> Result<Vec<Stratum>> {
    Ok(build(fan, g, false)?.strata)
}

/// Resolution data from the minimal unimodular fan of the Newton polygon.
pub fn resolve(g: &Germ) -> Result<ResolutionData> {
    if g.dim() != 2 {
        return Err(Error::DimensionUnsupported(g.dim()));
    }
    check_germ(g)?;
    let fan = build_fan(&polygon(g)?);
    build(&fan, g, true)
}

/// Resolution data from a caller-supplied fan, which must be unimodular and
/// contain every edge normal.
pub fn resolve_with_fan(g: &Germ, fan: &Fan) -> Result<ResolutionData> {
    build(fan, g, true)
}
