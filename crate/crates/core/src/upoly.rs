//! Dense univariate polynomials over the rationals, with Sturm-sequence real
//! root isolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

/// Open interval `(lo, hi)` holding exactly one simple real root; the
/// polynomial is nonzero at both endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl UPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &BigRational) -> i8 {
        sign(&self.eval(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Remainder of Euclidean division by a nonzero `d`.
    pub fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let idx = top - dd + i;
                    r[idx] = &r[idx] - &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(l) => Self::new(a.coeffs.iter().map(|c| c / &l).collect()),
            None => a,
        }
    }

    /// True iff `gcd(p, p')` is a nonzero constant.
    pub fn is_square_free(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(Self::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        seq
    }

    /// `1 + max |c_i / c_n|`: every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().expect("bound of zero polynomial").abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |m, x| if x > m { x } else { m });
        max + BigRational::one()
    }

    /// Isolates the distinct real roots lying in the open interval `(a, b)`,
    /// where `p(a)` and `p(b)` are nonzero. Returned in increasing order.
    pub fn isolate_in(&self, a: &BigRational, b: &BigRational) -> Vec<RootInterval> {
        assert!(!self.is_zero());
        assert!(
            self.sign_at(a) != 0 && self.sign_at(b) != 0,
            "endpoints must not be roots"
        );
        let seq = self.sturm_sequence();
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let count = variations(&seq, &lo) - variations(&seq, &hi);
            match count {
                0 => {}
                1 => out.push(RootInterval { lo, hi }),
                _ => {
                    let mid = self.split_point(&lo, &hi);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// A point strictly inside `(lo, hi)` that is not a root.
    fn split_point(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        let width = hi - lo;
        for k in 2i64.. {
            for j in 1..k {
                let candidate = lo + &width * BigRational::new(BigInt::from(j), BigInt::from(k));
                if self.sign_at(&candidate) != 0 {
                    return candidate;
                }
            }
        }
        unreachable!()
    }

    /// All distinct real roots other than zero, split by sign. Requires `p(0) != 0`.
    pub fn nonzero_real_roots(&self) -> Vec<RootInterval> {
        let zero = BigRational::zero();
        let b = self.cauchy_bound();
        let mut roots = self.isolate_in(&-b.clone(), &zero);
        roots.extend(self.isolate_in(&zero, &b));
        roots
    }
}

fn variations(seq: &[UPoly], x: &BigRational) -> i64 {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

pub fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
