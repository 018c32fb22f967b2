//! Unimodular subdivisions of the first quadrant.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::germ::NewtonPolygon;

pub type Ray = [i64; 2];

pub fn det(v: Ray, w: Ray) -> i64 {
    v[0] * w[1] - v[1] * w[0]
}

/// Primitive rays of the closed first quadrant ordered from `(1,0)` to `(0,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<Ray>,
}

impl Fan {
    /// Checks endpoints, primitivity, ordering and unimodularity.
    pub fn from_rays(rays: Vec<Ray>) -> Result<Self> {
        if rays.len() < 2 || rays[0] != [1, 0] || *rays.last().unwrap() != [0, 1] {
            return Err(Error::InvalidData(
                "a fan must run from (1,0) to (0,1)".into(),
            ));
        }
        for r in &rays {
            if r[0] < 0 || r[1] < 0 || r[0].gcd(&r[1]) != 1 {
                return Err(Error::InvalidData(format!(
                    "ray {r:?} is not primitive in the first quadrant"
                )));
            }
        }
        for pair in rays.windows(2) {
            if det(pair[0], pair[1]) != 1 {
                return Err(Error::InvalidData(format!(
                    "rays {:?} and {:?} do not span a unimodular cone",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { rays })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn contains(&self, w: Ray) -> bool {
        self.rays.contains(&w)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rays.windows(2).all(|p| det(p[0], p[1]) == 1)
    }

    /// Inserts `rays[i] + rays[i+1]` between them.
    pub fn refine(&self, i: usize) -> Self {
        assert!(i + 1 < self.rays.len(), "no cone after ray {i}");
        let (v, w) = (self.rays[i], self.rays[i + 1]);
        let mut rays = self.rays.clone();
        rays.insert(i + 1, [v[0] + w[0], v[1] + w[1]]);
        Self { rays }
    }

    /// Interior rays, i.e. those with both entries positive.
    pub fn interior(&self) -> impl Iterator<Item = Ray> + '_ {
        self.rays.iter().copied().filter(|r| r[0] > 0 && r[1] > 0)
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rays
            .iter()
            .map(|r| format!("({},{})", r[0], r[1]))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Splits the cone `(v, w)` until every piece is unimodular.
fn subdivide(v: Ray, w: Ray, out: &mut Vec<Ray>) {
    let delta = det(v, w);
    if delta <= 1 {
        return;
    }
    // The ray p with det(v, p) = 1 inside the cone is (w + q v)/δ for the
    // unique q in [1, δ-1] making it integral.
    let q = (1..delta)
        .find(|q| (w[0] + q * v[0]) % delta == 0 && (w[1] + q * v[1]) % delta == 0)
        .expect("a unimodular neighbour exists inside the cone");
    let p = [(w[0] + q * v[0]) / delta, (w[1] + q * v[1]) / delta];
    out.push(p);
    subdivide(p, w, out);
}

/// Minimal unimodular fan containing the axes and every edge normal. A
/// polygon without edges still gets the ray `(1,1)` so that the origin is
/// blown up.
pub fn build_fan(p: &NewtonPolygon) -> Fan {
    let mut base = vec![[1, 0]];
    base.extend(p.edges.iter().map(|e| e.normal));
    base.push([0, 1]);
    if base.len() == 2 {
        base.insert(1, [1, 1]);
    }
    let mut rays = vec![base[0]];
    for pair in base.windows(2) {
        subdivide(pair[0], pair[1], &mut rays);
        rays.push(pair[1]);
    }
    Fan { rays }
}
