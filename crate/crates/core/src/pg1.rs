//! The projective line PG(1, q^3) = GF(q^3) ∪ {∞}, its homographies, and
//! coordinate frames on lines of the plane.

use std::collections::BTreeSet;

use crate::field::{FieldCtx, Fq3Elem};
use crate::plane::{cross, scale, vadd, PlaneError, ProjLine, ProjPoint};

/// A point of PG(1, q^3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Finite(Fq3Elem),
    Infinity,
}

impl Param {
    /// `(theta, 1)` or `(1, 0)`.
    pub fn vector(self) -> [Fq3Elem; 2] {
        match self {
            Param::Finite(t) => [t, Fq3Elem::ONE],
            Param::Infinity => [Fq3Elem::ONE, Fq3Elem::ZERO],
        }
    }

    pub fn from_vector(f: &FieldCtx, v: [Fq3Elem; 2]) -> Option<Param> {
        match (v[0].is_zero(), v[1].is_zero()) {
            (true, true) => None,
            (_, true) => Some(Param::Infinity),
            _ => Some(Param::Finite(f.div(v[0], v[1]))),
        }
    }

    pub fn finite(self) -> Option<Fq3Elem> {
        match self {
            Param::Finite(t) => Some(t),
            Param::Infinity => None,
        }
    }

    pub fn to_text(self, f: &FieldCtx) -> String {
        match self {
            Param::Finite(t) => f.format(t),
            Param::Infinity => "inf".to_string(),
        }
    }
}

/// Every point of PG(1, q^3): the field elements in index order, then ∞.
pub fn all_params(f: &FieldCtx) -> impl Iterator<Item = Param> + '_ {
    f.elements().map(Param::Finite).chain(std::iter::once(Param::Infinity))
}

pub type ParamSet = BTreeSet<Param>;

/// An element of PGL(2, q^3) acting by `theta -> (a theta + b) / (c theta + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mobius {
    m: [[Fq3Elem; 2]; 2],
}

impl Mobius {
    pub fn new(f: &FieldCtx, m: [[Fq3Elem; 2]; 2]) -> Option<Self> {
        let det = f.sub(f.mul(m[0][0], m[1][1]), f.mul(m[0][1], m[1][0]));
        if det.is_zero() {
            return None;
        }
        let lead = m.iter().flatten().copied().find(|x| !x.is_zero())?;
        let s = f.inv(lead);
        Some(Mobius { m: m.map(|r| r.map(|x| f.mul(x, s))) })
    }

    pub fn identity() -> Self {
        Mobius { m: [[Fq3Elem::ONE, Fq3Elem::ZERO], [Fq3Elem::ZERO, Fq3Elem::ONE]] }
    }

    pub fn matrix(&self) -> [[Fq3Elem; 2]; 2] {
        self.m
    }

    pub fn apply(&self, f: &FieldCtx, p: Param) -> Param {
        let v = p.vector();
        let m = &self.m;
        Param::from_vector(
            f,
            [
                f.add(f.mul(m[0][0], v[0]), f.mul(m[0][1], v[1])),
                f.add(f.mul(m[1][0], v[0]), f.mul(m[1][1], v[1])),
            ],
        )
        .expect("invertible")
    }

    pub fn apply_set(&self, f: &FieldCtx, s: &ParamSet) -> ParamSet {
        s.iter().map(|&p| self.apply(f, p)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, f: &FieldCtx, other: &Mobius) -> Mobius {
        let (a, b) = (&self.m, &other.m);
        let e = |i: usize, j: usize| f.add(f.mul(a[i][0], b[0][j]), f.mul(a[i][1], b[1][j]));
        Mobius::new(f, [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]).expect("product of invertibles")
    }

    pub fn inverse(&self, f: &FieldCtx) -> Mobius {
        let m = &self.m;
        Mobius::new(f, [[m[1][1], f.neg(m[0][1])], [f.neg(m[1][0]), m[0][0]]]).unwrap()
    }

    /// Sends `(1,0), (0,1), (1,1)` (that is ∞, 0, 1) to the three given points.
    fn frame(f: &FieldCtx, p: [Param; 3]) -> Option<Mobius> {
        let [a, b, c] = p.map(Param::vector);
        let d = f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]));
        if d.is_zero() {
            return None;
        }
        // c = x a + y b
        let x = f.div(f.sub(f.mul(c[0], b[1]), f.mul(c[1], b[0])), d);
        let y = f.div(f.sub(f.mul(a[0], c[1]), f.mul(a[1], c[0])), d);
        if x.is_zero() || y.is_zero() {
            return None;
        }
        Mobius::new(f, [[f.mul(x, a[0]), f.mul(y, b[0])], [f.mul(x, a[1]), f.mul(y, b[1])]])
    }

    /// The unique homography with `src[i] -> dst[i]`; `None` unless both
    /// triples consist of distinct points.
    pub fn from_three(f: &FieldCtx, src: [Param; 3], dst: [Param; 3]) -> Option<Mobius> {
        let a = Self::frame(f, src)?;
        let b = Self::frame(f, dst)?;
        Some(b.compose(f, &a.inverse(f)))
    }

    /// All of PGL(2, q^3), enumerated by the images of ∞, 0, 1.
    pub fn all(f: &FieldCtx) -> impl Iterator<Item = Mobius> + '_ {
        let pts: Vec<Param> = all_params(f).collect();
        let src = [Param::Infinity, Param::Finite(Fq3Elem::ZERO), Param::Finite(Fq3Elem::ONE)];
        let n = pts.len();
        (0..n * n * n).filter_map(move |i| {
            let (a, b, c) = (i / (n * n), i / n % n, i % n);
            if a == b || b == c || a == c {
                return None;
            }
            Mobius::from_three(f, src, [pts[a], pts[b], pts[c]])
        })
    }
}

/// Search for a homography of PG(1, q^3) carrying set `a` onto set `b`.
pub fn find_equivalence(f: &FieldCtx, a: &ParamSet, b: &ParamSet) -> Option<Mobius> {
    if a.len() != b.len() || a.len() < 3 {
        return None;
    }
    let src: Vec<Param> = a.iter().take(3).copied().collect();
    let src = [src[0], src[1], src[2]];
    let tgt: Vec<Param> = b.iter().copied().collect();
    for &x in &tgt {
        for &y in &tgt {
            if y == x {
                continue;
            }
            for &z in &tgt {
                if z == x || z == y {
                    continue;
                }
                if let Some(m) = Mobius::from_three(f, src, [x, y, z]) {
                    if a.iter().all(|&p| b.contains(&m.apply(f, p))) {
                        return Some(m);
                    }
                }
            }
        }
    }
    None
}

/// Coordinates on a line of the plane: `E1 + theta E2` has parameter `theta`,
/// with `E1 -> 0` and `E2 -> ∞`. `E1`, `E2` are taken in normalized form, so
/// the point `E1 + E2` gets parameter 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineFrame {
    pub host: ProjLine,
    pub e1: ProjPoint,
    pub e2: ProjPoint,
    pivot: usize,
}

impl LineFrame {
    pub fn new(f: &FieldCtx, e1: ProjPoint, e2: ProjPoint) -> Result<Self, PlaneError> {
        let e12 = cross(f, &e1.coords(), &e2.coords());
        let pivot = e12.iter().position(|x| !x.is_zero()).ok_or(PlaneError::EqualArguments)?;
        let host = ProjLine::new(f, e12)?;
        Ok(LineFrame { host, e1, e2, pivot })
    }

    /// Parameter of a point of the host line.
    pub fn to_param(&self, f: &FieldCtx, x: &ProjPoint) -> Param {
        // x = alpha e1 + beta e2  =>  x × e2 = alpha (e1 × e2),  e1 × x = beta (e1 × e2)
        let k = self.pivot;
        let alpha = cross(f, &x.coords(), &self.e2.coords())[k];
        let beta = cross(f, &self.e1.coords(), &x.coords())[k];
        debug_assert!(crate::plane::incidence(f, x, &self.host));
        if alpha.is_zero() {
            Param::Infinity
        } else {
            Param::Finite(f.div(beta, alpha))
        }
    }

    pub fn point(&self, f: &FieldCtx, t: Param) -> ProjPoint {
        match t {
            Param::Infinity => self.e2,
            Param::Finite(t) => {
                ProjPoint::new(f, vadd(f, &self.e1.coords(), &scale(f, t, &self.e2.coords())))
                    .unwrap()
            }
        }
    }

    pub fn params_of(&self, f: &FieldCtx, pts: &[ProjPoint]) -> ParamSet {
        pts.iter().map(|p| self.to_param(f, p)).collect()
    }

    pub fn points_of(&self, f: &FieldCtx, params: &ParamSet) -> Vec<ProjPoint> {
        let mut v: Vec<ProjPoint> = params.iter().map(|&t| self.point(f, t)).collect();
        v.sort();
        v
    }
}
