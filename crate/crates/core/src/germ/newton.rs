//! Newton polygons of two-variable germs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::Germ;
use crate::error::{Error, Result};
use crate::upoly::UPoly;

/// A compact edge of the Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Endpoint with the smaller first coordinate.
    pub start: [u32; 2],
    pub end: [u32; 2],
    /// Primitive inward normal, both entries positive.
    pub normal: [i64; 2],
    /// Support monomials lying on the edge, by increasing first coordinate.
    pub face: Vec<([u32; 2], BigInt)>,
}

impl Edge {
    /// The face polynomial read along the edge in primitive lattice steps:
    /// the coefficient of `s^k` belongs to `start + k·(w₂, −w₁)`.
    pub fn face_polynomial(&self) -> UPoly {
        lattice_face_poly(&self.face, self.normal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Vertices of the compact boundary by increasing first coordinate.
    pub vertices: Vec<[u32; 2]>,
    /// Compact edges in the same order; their normals turn from `(1,0)` toward `(0,1)`.
    pub edges: Vec<Edge>,
}

fn points(g: &Germ) -> Result<Vec<([u32; 2], BigInt)>> {
    if g.dim() != 2 {
        return Err(Error::DimensionUnsupported(g.dim()));
    }
    Ok(g.terms().map(|(e, c)| ([e[0], e[1]], c.clone())).collect())
}

pub fn polygon(g: &Germ) -> Result<NewtonPolygon> {
    let pts = points(g)?;
    let first = pts
        .iter()
        .map(|(p, _)| *p)
        .min_by_key(|p| (p[0], p[1]))
        .expect("germs have non-empty support");
    let mut vertices = vec![first];
    let mut edges = Vec::new();
    let mut cur = first;
    loop {
        // Steepest descent from `cur`; ties go to the farthest point.
        let mut best: Option<[u32; 2]> = None;
        for (q, _) in &pts {
            if q[0] <= cur[0] || q[1] >= cur[1] {
                continue;
            }
            best = match best {
                None => Some(*q),
                Some(b) => {
                    let (di_q, dj_q) = (
                        i64::from(q[0]) - i64::from(cur[0]),
                        i64::from(q[1]) - i64::from(cur[1]),
                    );
                    let (di_b, dj_b) = (
                        i64::from(b[0]) - i64::from(cur[0]),
                        i64::from(b[1]) - i64::from(cur[1]),
                    );
                    let cross = dj_q * di_b - dj_b * di_q;
                    if cross < 0 || (cross == 0 && q[0] > b[0]) {
                        Some(*q)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(next) = best else { break };
        let di = i64::from(next[0]) - i64::from(cur[0]);
        let dj = i64::from(cur[1]) - i64::from(next[1]);
        let g = di.gcd(&dj);
        let normal = [dj / g, di / g];
        let level = dot(normal, cur);
        let mut face: Vec<([u32; 2], BigInt)> = pts
            .iter()
            .filter(|(p, _)| dot(normal, *p) == level)
            .cloned()
            .collect();
        face.sort_by_key(|(p, _)| p[0]);
        edges.push(Edge {
            start: cur,
            end: next,
            normal,
            face,
        });
        vertices.push(next);
        cur = next;
    }
    Ok(NewtonPolygon { vertices, edges })
}

pub(crate) fn dot(w: [i64; 2], p: [u32; 2]) -> i64 {
    w[0] * i64::from(p[0]) + w[1] * i64::from(p[1])
}

/// Support points minimizing `⟨w, ·⟩`, by increasing first coordinate.
pub fn face_points(g: &Germ, w: [i64; 2]) -> Result<Vec<([u32; 2], BigInt)>> {
    let pts = points(g)?;
    let level = pts
        .iter()
        .map(|(p, _)| dot(w, *p))
        .min()
        .expect("non-empty support");
    let mut face: Vec<_> = pts
        .into_iter()
        .filter(|(p, _)| dot(w, *p) == level)
        .collect();
    face.sort_by_key(|(p, _)| p[0]);
    Ok(face)
}

/// Coefficients of a face of the primitive normal `w` (both entries positive)
/// as a polynomial in the lattice step along the face.
pub fn lattice_face_poly(face: &[([u32; 2], BigInt)], w: [i64; 2]) -> UPoly {
    let start = face[0].0;
    let step = w[1];
    let len = (i64::from(face.last().unwrap().0[0]) - i64::from(start[0])) / step;
    let mut coeffs = vec![BigInt::zero(); len as usize + 1];
    for (p, c) in face {
        let k = (i64::from(p[0]) - i64::from(start[0])) / step;
        coeffs[k as usize] = c.clone();
    }
    UPoly::from_ints(&coeffs)
}

/// True iff every compact edge has a square-free face polynomial over ℚ.
pub fn nondegenerate(g: &Germ) -> Result<bool> {
    Ok(polygon(g)?
        .edges
        .iter()
        .all(|e| e.face_polynomial().is_square_free()))
}
