//! β of the real cyclic cover `{t^m U(s) = σ}` over an exceptional circle
//! with finitely many points removed.
//!
//! The circle is `ℝ ∪ {∞}` in the chart coordinate `s`. The finite removed
//! points split `ℝ` into arcs; over each arc the cover consists of sheets on
//! which `t` has a fixed sign. The sheets are glued across removed points
//! through the branches of the local model `t^m c z^e = σ`, and across `∞`
//! either through such a model or, when `∞` is not removed, through the chart
//! change `t' = s^a t`. The glued sheets close up into `k` circles of a smooth
//! compact model, and the added branch points number `r`, so β is
//! `k(1+u) - r`.

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};

/// Local data of a removed point: `U` vanishes to order `e` there and has sign
/// `c` just to its right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RemovedPoint {
    pub e: u32,
    pub c: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtInfinity {
    /// Removed, with local data read in the coordinate `1/s`.
    Removed(RemovedPoint),
    /// Kept; the cover continues through the chart change.
    Seam,
}

/// Everything the gluing needs about one exceptional circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInput {
    /// Degree of the cover, the multiplicity of the divisor.
    pub m: u32,
    /// Finite removed points in increasing order.
    pub finite: Vec<RemovedPoint>,
    /// Sign of `U` on each arc; one more entry than `finite`.
    pub arc_signs: Vec<i8>,
    pub infinity: AtInfinity,
    /// Self-intersection datum: `v_prev + v_next = a·w`.
    pub a: i64,
    /// Order of the chart-change factor `s^{-D}` relating the two charts.
    pub twist: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    L,
    R,
}

struct Graph {
    arcs: usize,
    parent: Vec<usize>,
    exists: Vec<bool>,
    glued: Vec<u8>,
}

impl Graph {
    fn node(&self, arc: usize, lambda: i8, end: End) -> usize {
        let l = usize::from(lambda < 0);
        let e = usize::from(end == End::R);
        (arc * 2 + l) * 2 + e
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }

    fn glue(&mut self, a: usize, b: usize, place: &str) -> Result<()> {
        if !self.exists[a] || !self.exists[b] {
            return Err(Error::UnsupportedCover(format!(
                "branch at {place} meets no sheet"
            )));
        }
        self.glued[a] += 1;
        self.glued[b] += 1;
        self.union(a, b);
        Ok(())
    }
}

fn pow_sign(e: i64) -> i8 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Real branches of `t^{m} c z^{e} = σ` near `z = 0`: one per real root `ζ` of
/// `ζ^g = σc` where `g = gcd(m, e)`, each a curve `t^{m/g} z^{e/g} = ζ`.
fn branch_signs(g: u32, sc: i8) -> Vec<i8> {
    if g % 2 == 1 {
        vec![sc]
    } else if sc > 0 {
        vec![1, -1]
    } else {
        Vec::new()
    }
}

pub fn cover_beta(input: &CoverInput, sign: i8) -> Result<LaurentPoly> {
    let m = input.m;
    let arcs = input.arc_signs.len();
    assert_eq!(
        arcs,
        input.finite.len() + 1,
        "one arc more than finite points"
    );
    if m == 0 || input.twist % i64::from(m) != 0 {
        return Err(Error::UnsupportedCover(format!(
            "degree {m} does not divide the chart twist {}",
            input.twist
        )));
    }

    // On an arc where σU > 0 an even-degree cover has two sheets (t of either
    // sign); an odd-degree cover always has one sheet with t of sign σU.
    let sheets = |arc: usize| -> Vec<i8> {
        let su = sign * input.arc_signs[arc];
        if m.is_multiple_of(2) {
            if su > 0 {
                vec![1, -1]
            } else {
                Vec::new()
            }
        } else {
            vec![su]
        }
    };

    let mut graph = Graph {
        arcs,
        parent: (0..arcs * 4).collect(),
        exists: vec![false; arcs * 4],
        glued: vec![0; arcs * 4],
    };
    for arc in 0..arcs {
        for lambda in sheets(arc) {
            let (l, r) = (
                graph.node(arc, lambda, End::L),
                graph.node(arc, lambda, End::R),
            );
            graph.exists[l] = true;
            graph.exists[r] = true;
            graph.union(l, r);
        }
    }

    let mut boundary = 0i64;

    // Glues the branches of a removed point. `right(λ)` and `left(λ)` name the
    // sheet ends meeting the point from each side, indexed by the local sign
    // of t.
    let mut glue_point = |graph: &mut Graph,
                          p: RemovedPoint,
                          right: &dyn Fn(&Graph, i8) -> usize,
                          left: &dyn Fn(&Graph, i8) -> usize,
                          place: &str|
     -> Result<()> {
        let g = gcd(m, p.e);
        let (m1, e1) = (m / g, p.e / g);
        for zeta in branch_signs(g, sign * p.c) {
            if m1 % 2 == 1 {
                // t = (ζ z^{-E'})^{1/M'} is defined on both sides; t has sign ζ
                // for z > 0 and ζ(-1)^{E'} for z < 0, so the branch joins
                // those two sheet ends.
                let (a, b) = (
                    right(graph, zeta),
                    left(graph, zeta * pow_sign(i64::from(e1))),
                );
                graph.glue(a, b, place)?;
            } else {
                // M' even forces E' odd: z^{E'} = ζ t^{-M'} fixes the side
                // sign(z) = ζ, and both signs of t approach from that side.
                let (a, b) = if zeta > 0 {
                    (right(graph, 1), right(graph, -1))
                } else {
                    (left(graph, 1), left(graph, -1))
                };
                graph.glue(a, b, place)?;
            }
            boundary += 1;
        }
        Ok(())
    };

    for (j, &p) in input.finite.iter().enumerate() {
        let (left_arc, right_arc) = (j, j + 1);
        if input.arc_signs[right_arc] != p.c
            || input.arc_signs[left_arc] != p.c * pow_sign(i64::from(p.e))
        {
            return Err(Error::UnsupportedCover(format!(
                "sign of the unit does not match its vanishing order at removed point {}",
                j + 1
            )));
        }
        glue_point(
            &mut graph,
            p,
            &|g, l| g.node(right_arc, l, End::L),
            &|g, l| g.node(left_arc, l, End::R),
            &format!("removed point {}", j + 1),
        )?;
    }

    let (first, last) = (0, arcs - 1);
    let flip = pow_sign(input.a);
    match input.infinity {
        AtInfinity::Removed(p) => {
            if input.arc_signs[last] != p.c
                || input.arc_signs[first] * pow_sign(input.twist) != p.c * pow_sign(i64::from(p.e))
            {
                return Err(Error::UnsupportedCover(
                    "sign of the unit does not match its vanishing order at infinity".into(),
                ));
            }
            // In the chart at infinity t' = s^a t: the right side s' > 0 is
            // s → +∞ with unchanged sign, the left side is s → -∞ where the
            // sign of t flips by (-1)^a.
            glue_point(
                &mut graph,
                p,
                &|g, l| g.node(last, l, End::R),
                &move |g, l| g.node(first, l * flip, End::L),
                "infinity",
            )?;
        }
        AtInfinity::Seam => {
            for lambda in sheets(last) {
                let (a, b) = (
                    graph.node(last, lambda, End::R),
                    graph.node(first, lambda * flip, End::L),
                );
                graph.glue(a, b, "infinity")?;
            }
        }
    }

    let mut roots = Vec::new();
    for x in 0..graph.arcs * 4 {
        if !graph.exists[x] {
            continue;
        }
        if graph.glued[x] != 1 {
            return Err(Error::UnsupportedCover(format!(
                "a sheet end is glued {} times",
                graph.glued[x]
            )));
        }
        let r = graph.find(x);
        roots.push(r);
    }
    roots.sort_unstable();
    roots.dedup();
    let circles = roots.len() as i64;
    Ok(LaurentPoly::from_pairs([(0, circles), (1, circles)]) - LaurentPoly::constant(boundary))
}

fn gcd(a: u32, b: u32) -> u32 {
    num_integer::gcd(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn twisted_double_cover_of_a_circle() {
        // x²+y² on its only exceptional circle.
        let input = CoverInput {
            m: 2,
            finite: vec![],
            arc_signs: vec![1],
            infinity: AtInfinity::Seam,
            a: 1,
            twist: 2,
        };
        assert_eq!(cover_beta(&input, 1).unwrap(), lp(&[(0, 1), (1, 1)]));
        assert_eq!(cover_beta(&input, -1).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn untwisted_cover_with_a_removed_point() {
        // x²+y⁴ on the (1,1) circle: U = s⁴ in the chart of (2,1).
        let input = CoverInput {
            m: 2,
            finite: vec![RemovedPoint { e: 4, c: 1 }],
            arc_signs: vec![1, 1],
            infinity: AtInfinity::Seam,
            a: 2,
            twist: 4,
        };
        assert_eq!(cover_beta(&input, 1).unwrap(), lp(&[(1, 2)]));
    }

    #[test]
    fn sidewise_gluing_at_infinity() {
        // x²+y⁴ on the (2,1) circle: U = 1+s², removed point at infinity.
        let input = CoverInput {
            m: 4,
            finite: vec![],
            arc_signs: vec![1],
            infinity: AtInfinity::Removed(RemovedPoint { e: 2, c: 1 }),
            a: 1,
            twist: 4,
        };
        assert_eq!(cover_beta(&input, 1).unwrap(), lp(&[(0, -1), (1, 1)]));
    }

    #[test]
    fn odd_degree_cover_through_a_real_root() {
        // x³+y³ on the (1,1) circle: U = 1+s³, simple root at -1.
        let input = CoverInput {
            m: 3,
            finite: vec![RemovedPoint { e: 1, c: 1 }],
            arc_signs: vec![-1, 1],
            infinity: AtInfinity::Seam,
            a: 1,
            twist: 3,
        };
        assert_eq!(cover_beta(&input, 1).unwrap(), lp(&[(1, 1)]));
        assert_eq!(cover_beta(&input, -1).unwrap(), lp(&[(1, 1)]));
    }

    #[test]
    fn inconsistent_signs_are_reported() {
        let input = CoverInput {
            m: 2,
            finite: vec![RemovedPoint { e: 1, c: 1 }],
            arc_signs: vec![1, 1],
            infinity: AtInfinity::Seam,
            a: 1,
            twist: 2,
        };
        assert!(matches!(
            cover_beta(&input, 1),
            Err(Error::UnsupportedCover(_))
        ));
        let input = CoverInput {
            m: 3,
            finite: vec![],
            arc_signs: vec![1],
            infinity: AtInfinity::Seam,
            a: 1,
            twist: 2,
        };
        assert!(matches!(
            cover_beta(&input, 1),
            Err(Error::UnsupportedCover(_))
        ));
    }
}
