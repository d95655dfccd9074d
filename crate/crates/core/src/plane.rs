//! Incidence geometry of PG(2, q^3): points, lines, homographies, order-q
//! sublines and order-q subplanes.

use std::cmp::Ordering;

use thiserror::Error;

use crate::field::{FieldCtx, FqElem, Fq3Elem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("homogeneous coordinates are all zero")]
    ZeroVector,
    #[error("join/meet of equal arguments")]
    EqualArguments,
    #[error("four points with three collinear do not form a frame")]
    DegenerateFrame,
    #[error("matrix is singular")]
    Singular,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("points are not distinct")]
    NotDistinct,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub type Vec3 = [Fq3Elem; 3];
pub type Mat3 = [[Fq3Elem; 3]; 3];

/// A point of PG(2, q^3), first nonzero coordinate equal to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(Vec3);

/// A line `[l, m, n]` of PG(2, q^3), normalized like points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine(Vec3);

fn normalize(f: &FieldCtx, v: Vec3) -> Option<Vec3> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    let s = f.inv(lead);
    Some([f.mul(v[0], s), f.mul(v[1], s), f.mul(v[2], s)])
}

/// Dense index of a normalized triple; lexicographic order is preserved.
fn triple_index(f: &FieldCtx, v: &Vec3) -> u32 {
    let n = f.size() as u32;
    if !v[0].is_zero() {
        1 + n + v[1].index() as u32 * n + v[2].index() as u32
    } else if !v[1].is_zero() {
        1 + v[2].index() as u32
    } else {
        0
    }
}

fn triple_at(f: &FieldCtx, idx: u32) -> Vec3 {
    let n = f.size() as u32;
    let e = |i: u32| Fq3Elem(i as u16);
    if idx == 0 {
        [Fq3Elem::ZERO, Fq3Elem::ZERO, Fq3Elem::ONE]
    } else if idx <= n {
        [Fq3Elem::ZERO, Fq3Elem::ONE, e(idx - 1)]
    } else {
        let r = idx - 1 - n;
        [Fq3Elem::ONE, e(r / n), e(r % n)]
    }
}

/// Number of points (equivalently lines) of PG(2, q^3).
pub fn num_points(f: &FieldCtx) -> u32 {
    let n = f.size() as u32;
    n * n + n + 1
}

macro_rules! proj_element {
    ($ty:ident) => {
        impl $ty {
            pub fn new(f: &FieldCtx, v: Vec3) -> Result<Self, PlaneError> {
                normalize(f, v).map($ty).ok_or(PlaneError::ZeroVector)
            }

            /// Embed a triple of GF(q) elements.
            pub fn from_base(f: &FieldCtx, v: [FqElem; 3]) -> Result<Self, PlaneError> {
                Self::new(f, [v[0].into(), v[1].into(), v[2].into()])
            }

            pub fn coords(&self) -> Vec3 {
                self.0
            }

            pub fn index(&self, f: &FieldCtx) -> u32 {
                triple_index(f, &self.0)
            }

            pub fn from_index(f: &FieldCtx, idx: u32) -> Self {
                $ty(triple_at(f, idx))
            }

            /// All elements of PG(2, q^3) in lexicographic order.
            pub fn all(f: &FieldCtx) -> impl Iterator<Item = Self> + '_ {
                (0..num_points(f)).map(move |i| Self::from_index(f, i))
            }

            /// Componentwise `x -> x^(q^i)`.
            pub fn frobenius(&self, f: &FieldCtx, i: u32) -> Self {
                $ty(self.0.map(|x| f.frobenius(x, i)))
            }

            /// True when every coordinate lies in GF(q).
            pub fn is_rational(&self, f: &FieldCtx) -> bool {
                self.0.iter().all(|&x| f.to_base(x).is_some())
            }
        }
    };
}

proj_element!(ProjPoint);
proj_element!(ProjLine);

pub fn dot(f: &FieldCtx, a: &Vec3, b: &Vec3) -> Fq3Elem {
    f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]))
}

pub fn cross(f: &FieldCtx, a: &Vec3, b: &Vec3) -> Vec3 {
    [
        f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
        f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
        f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0])),
    ]
}

pub fn scale(f: &FieldCtx, s: Fq3Elem, v: &Vec3) -> Vec3 {
    [f.mul(s, v[0]), f.mul(s, v[1]), f.mul(s, v[2])]
}

pub fn vadd(f: &FieldCtx, a: &Vec3, b: &Vec3) -> Vec3 {
    [f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2])]
}

pub fn incidence(f: &FieldCtx, p: &ProjPoint, l: &ProjLine) -> bool {
    dot(f, &p.0, &l.0).is_zero()
}

pub fn join(f: &FieldCtx, p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine, PlaneError> {
    ProjLine::new(f, cross(f, &p.0, &q.0)).map_err(|_| PlaneError::EqualArguments)
}

pub fn meet(f: &FieldCtx, l: &ProjLine, m: &ProjLine) -> Result<ProjPoint, PlaneError> {
    ProjPoint::new(f, cross(f, &l.0, &m.0)).map_err(|_| PlaneError::EqualArguments)
}

pub fn det(f: &FieldCtx, m: &Mat3) -> Fq3Elem {
    dot(f, &m[0], &cross(f, &m[1], &m[2]))
}

pub fn collinear(f: &FieldCtx, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> bool {
    det(f, &[a.0, b.0, c.0]).is_zero()
}

/// Lines through a common point (dual of collinearity).
pub fn concurrent(f: &FieldCtx, a: &ProjLine, b: &ProjLine, c: &ProjLine) -> bool {
    det(f, &[a.0, b.0, c.0]).is_zero()
}

/// The `q^3 + 1` points of a line, sorted.
pub fn points_on_line(f: &FieldCtx, l: &ProjLine) -> Vec<ProjPoint> {
    let (a, b) = two_points_on(f, l);
    let mut pts: Vec<ProjPoint> = f
        .elements()
        .map(|t| ProjPoint::new(f, vadd(f, &a.0, &scale(f, t, &b.0))).unwrap())
        .chain(std::iter::once(b))
        .collect();
    pts.sort();
    pts
}

fn two_points_on(f: &FieldCtx, l: &ProjLine) -> (ProjPoint, ProjPoint) {
    let axes = [
        ProjLine([Fq3Elem::ONE, Fq3Elem::ZERO, Fq3Elem::ZERO]),
        ProjLine([Fq3Elem::ZERO, Fq3Elem::ONE, Fq3Elem::ZERO]),
        ProjLine([Fq3Elem::ZERO, Fq3Elem::ZERO, Fq3Elem::ONE]),
    ];
    let mut found: Vec<ProjPoint> = Vec::with_capacity(2);
    for ax in &axes {
        if let Ok(p) = meet(f, l, ax) {
            if !found.contains(&p) {
                found.push(p);
            }
        }
    }
    (found[0], found[1])
}

pub fn mat_vec(f: &FieldCtx, m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(f, &m[0], v), dot(f, &m[1], v), dot(f, &m[2], v)]
}

pub fn mat_mul(f: &FieldCtx, a: &Mat3, b: &Mat3) -> Mat3 {
    let bt = transpose(b);
    let mut out = [[Fq3Elem::ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = dot(f, &a[i], &bt[j]);
        }
    }
    out
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut out = *m;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

/// Inverse via the adjugate.
pub fn mat_inverse(f: &FieldCtx, m: &Mat3) -> Result<Mat3, PlaneError> {
    let d = det(f, m);
    if d.is_zero() {
        return Err(PlaneError::Singular);
    }
    let di = f.inv(d);
    // columns of the inverse are the cross products of pairs of rows
    let cols = [cross(f, &m[1], &m[2]), cross(f, &m[2], &m[0]), cross(f, &m[0], &m[1])];
    let mut out = [[Fq3Elem::ZERO; 3]; 3];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..3 {
            out[i][j] = f.mul(c[i], di);
        }
    }
    Ok(out)
}

pub fn identity_matrix() -> Mat3 {
    let (o, z) = (Fq3Elem::ONE, Fq3Elem::ZERO);
    [[o, z, z], [z, o, z], [z, z, o]]
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(cols: [Vec3; 3]) -> Mat3 {
    transpose(&cols)
}

fn normalize_matrix(f: &FieldCtx, m: &Mat3) -> Mat3 {
    let lead = m.iter().flatten().copied().find(|x| !x.is_zero()).expect("nonzero matrix");
    let s = f.inv(lead);
    m.map(|row| row.map(|x| f.mul(x, s)))
}

/// An element of PGL(3, q^3), acting on points by `M v` and on lines by `M^-t w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Homography {
    m: Mat3,
    inv: Mat3,
}

impl Homography {
    pub fn new(f: &FieldCtx, m: Mat3) -> Result<Self, PlaneError> {
        let inv = mat_inverse(f, &m)?;
        Ok(Homography { m: normalize_matrix(f, &m), inv: normalize_matrix(f, &inv) })
    }

    pub fn identity() -> Self {
        Homography { m: identity_matrix(), inv: identity_matrix() }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &Mat3 {
        &self.inv
    }

    pub fn is_identity(&self) -> bool {
        self.m == identity_matrix()
    }

    pub fn apply_vec(&self, f: &FieldCtx, v: &Vec3) -> Vec3 {
        mat_vec(f, &self.m, v)
    }

    pub fn apply_point(&self, f: &FieldCtx, p: &ProjPoint) -> ProjPoint {
        ProjPoint(normalize(f, mat_vec(f, &self.m, &p.0)).unwrap())
    }

    pub fn apply_line(&self, f: &FieldCtx, l: &ProjLine) -> ProjLine {
        // w -> M^-t w, i.e. row vector w M^-1
        let it = transpose(&self.inv);
        ProjLine(normalize(f, mat_vec(f, &it, &l.0)).unwrap())
    }

    /// `self ∘ other`.
    pub fn compose(&self, f: &FieldCtx, other: &Homography) -> Homography {
        Homography {
            m: normalize_matrix(f, &mat_mul(f, &self.m, &other.m)),
            inv: normalize_matrix(f, &mat_mul(f, &other.inv, &self.inv)),
        }
    }

    pub fn inverse(&self) -> Homography {
        Homography { m: self.inv, inv: self.m }
    }

    /// `self^k ∘ ... `; `k = 0` is the identity.
    pub fn pow(&self, f: &FieldCtx, k: usize) -> Homography {
        let mut acc = Homography::identity();
        for _ in 0..k {
            acc = acc.compose(f, self);
        }
        acc
    }

    /// Order in PGL(3, q^3), searched up to `limit`.
    pub fn order(&self, f: &FieldCtx, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(f, self);
        }
        None
    }
}

/// Matrix sending `e1, e2, e3, (1,1,1)` onto the four given points.
fn frame_matrix(f: &FieldCtx, pts: &[ProjPoint; 4]) -> Result<Mat3, PlaneError> {
    let base = from_columns([pts[0].0, pts[1].0, pts[2].0]);
    let inv = mat_inverse(f, &base).map_err(|_| PlaneError::DegenerateFrame)?;
    let c = mat_vec(f, &inv, &pts[3].0);
    if c.iter().any(|x| x.is_zero()) {
        return Err(PlaneError::DegenerateFrame);
    }
    Ok(from_columns([
        scale(f, c[0], &pts[0].0),
        scale(f, c[1], &pts[1].0),
        scale(f, c[2], &pts[2].0),
    ]))
}

/// The canonical frame `e1, e2, e3, (1,1,1)`.
pub fn canonical_frame() -> [ProjPoint; 4] {
    let (o, z) = (Fq3Elem::ONE, Fq3Elem::ZERO);
    [ProjPoint([o, z, z]), ProjPoint([z, o, z]), ProjPoint([z, z, o]), ProjPoint([o, o, o])]
}

/// The unique homography sending `src[i]` to `dst[i]`.
pub fn homography_from_frames(
    f: &FieldCtx,
    src: &[ProjPoint; 4],
    dst: &[ProjPoint; 4],
) -> Result<Homography, PlaneError> {
    let a = frame_matrix(f, src)?;
    let b = frame_matrix(f, dst)?;
    let ainv = mat_inverse(f, &a)?;
    Homography::new(f, mat_mul(f, &b, &ainv))
}

/// An order-q subline: `q + 1` points of a line forming a copy of PG(1, q).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subline {
    pub host: ProjLine,
    pub points: Vec<ProjPoint>,
}

impl Subline {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

/// Coefficients `(alpha, beta)` with `r = alpha p + beta q`, given `p != q` and
/// `r` on the line `pq`.
fn span_coeffs(f: &FieldCtx, p: &Vec3, q: &Vec3, r: &Vec3) -> Option<(Fq3Elem, Fq3Elem)> {
    let pq = cross(f, p, q);
    let k = pq.iter().position(|x| !x.is_zero())?;
    let alpha = f.div(cross(f, r, q)[k], pq[k]);
    let beta = f.div(cross(f, p, r)[k], pq[k]);
    Some((alpha, beta))
}

/// The unique order-q subline through three distinct collinear points.
pub fn subline_through(
    f: &FieldCtx,
    p: &ProjPoint,
    q: &ProjPoint,
    r: &ProjPoint,
) -> Result<Subline, PlaneError> {
    if p == q || q == r || p == r {
        return Err(PlaneError::NotDistinct);
    }
    if !collinear(f, p, q, r) {
        return Err(PlaneError::NotCollinear);
    }
    let host = join(f, p, q)?;
    let (alpha, beta) = span_coeffs(f, &p.0, &q.0, &r.0).expect("p != q");
    let pv = scale(f, alpha, &p.0);
    let qv = scale(f, beta, &q.0);
    let mut points: Vec<ProjPoint> = f
        .base_elements()
        .map(|l| ProjPoint(normalize(f, vadd(f, &pv, &scale(f, l.into(), &qv))).unwrap()))
        .chain(std::iter::once(*q))
        .collect();
    points.sort();
    Ok(Subline { host, points })
}

/// True when `pts` (all on one line, at least three) form an order-q subline.
pub fn is_subline(f: &FieldCtx, pts: &[ProjPoint]) -> bool {
    let q = f.q() as usize;
    if pts.len() != q + 1 {
        return false;
    }
    let mut sorted = pts.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != q + 1 {
        return false;
    }
    match subline_through(f, &sorted[0], &sorted[1], &sorted[2]) {
        Ok(s) => s.points == sorted,
        Err(_) => false,
    }
}

/// Points of PG(2, q) with GF(q) coordinates, sorted.
pub fn base_points(f: &FieldCtx) -> Vec<ProjPoint> {
    let q = f.q();
    let mut pts = Vec::new();
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let v = [x, y, z].map(|c| Fq3Elem(c as u16));
                if let Some(n) = normalize(f, v) {
                    if n == v {
                        pts.push(ProjPoint(v));
                    }
                }
            }
        }
    }
    pts.sort();
    pts
}

/// An order-q subplane: the image of PG(2, q) under `gen`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subplane {
    pub gen: Homography,
    pub points: Vec<ProjPoint>,
    pub lines: Vec<ProjLine>,
}

impl Subplane {
    pub fn from_homography(f: &FieldCtx, gen: Homography) -> Self {
        let base = base_points(f);
        let mut points: Vec<ProjPoint> = base.iter().map(|p| gen.apply_point(f, p)).collect();
        let mut lines: Vec<ProjLine> =
            base.iter().map(|p| gen.apply_line(f, &ProjLine(p.0))).collect();
        points.sort();
        lines.sort();
        Subplane { gen, points, lines }
    }

    /// PG(2, q) itself.
    pub fn canonical(f: &FieldCtx) -> Self {
        Self::from_homography(f, Homography::identity())
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn contains_line(&self, l: &ProjLine) -> bool {
        self.lines.binary_search(l).is_ok()
    }

    /// Lines of the subplane through one of its points.
    pub fn lines_through<'a>(
        &'a self,
        f: &'a FieldCtx,
        p: &'a ProjPoint,
    ) -> impl Iterator<Item = &'a ProjLine> + 'a {
        self.lines.iter().filter(move |l| incidence(f, p, l))
    }

    pub fn points_on<'a>(
        &'a self,
        f: &'a FieldCtx,
        l: &'a ProjLine,
    ) -> impl Iterator<Item = &'a ProjPoint> + 'a {
        self.points.iter().filter(move |p| incidence(f, p, l))
    }

    /// Canonical key: sorted point indices.
    pub fn key(&self, f: &FieldCtx) -> Vec<u32> {
        self.points.iter().map(|p| p.index(f)).collect()
    }

    /// Apply a homography to the whole subplane.
    pub fn image(&self, f: &FieldCtx, h: &Homography) -> Subplane {
        Subplane::from_homography(f, h.compose(f, &self.gen))
    }
}

/// The unique order-q subplane containing a quadrangle.
pub fn subplane_from_quadrangle(
    f: &FieldCtx,
    quad: &[ProjPoint; 4],
) -> Result<Subplane, PlaneError> {
    let gen = homography_from_frames(f, &canonical_frame(), quad)?;
    Ok(Subplane::from_homography(f, gen))
}

/// `zeta^i(X)` where `zeta = gen ∘ Frobenius ∘ gen^-1` fixes the subplane pointwise.
pub fn conjugate_point(f: &FieldCtx, pi: &Subplane, p: &ProjPoint, i: u32) -> ProjPoint {
    let mut v = p.0;
    for _ in 0..i % 3 {
        let u = mat_vec(f, pi.gen.inverse_matrix(), &v).map(|x| f.frobenius(x, 1));
        v = mat_vec(f, pi.gen.matrix(), &u);
    }
    ProjPoint(normalize(f, v).unwrap())
}

pub fn conjugate_line(f: &FieldCtx, pi: &Subplane, l: &ProjLine, i: u32) -> ProjLine {
    let mut w = l.0;
    for _ in 0..i % 3 {
        // pull back: lines transform by gen^t, push forward by gen^-t
        let u = mat_vec(f, &transpose(pi.gen.matrix()), &w).map(|x| f.frobenius(x, 1));
        w = mat_vec(f, &transpose(pi.gen.inverse_matrix()), &u);
    }
    ProjLine(normalize(f, w).unwrap())
}

/// Exhaustive scan for points fixed by `h`.
pub fn fixed_points(f: &FieldCtx, h: &Homography) -> Vec<ProjPoint> {
    ProjPoint::all(f).filter(|p| h.apply_point(f, p) == *p).collect()
}

/// Exhaustive scan for lines fixed by `h`.
pub fn fixed_lines(f: &FieldCtx, h: &Homography) -> Vec<ProjLine> {
    ProjLine::all(f).filter(|l| h.apply_line(f, l) == *l).collect()
}

fn format_triple(f: &FieldCtx, v: &Vec3) -> String {
    v.iter().map(|&x| f.format(x)).collect::<Vec<_>>().join(",")
}

fn parse_triple(f: &FieldCtx, s: &str, open: char, close: char) -> Result<Vec3, PlaneError> {
    let bad = || PlaneError::Parse(s.to_string());
    let inner = s.trim().strip_prefix(open).and_then(|r| r.strip_suffix(close)).ok_or_else(bad)?;
    let labels: Vec<&str> = inner.split(',').map(str::trim).collect();
    if labels.len() != 9 {
        return Err(bad());
    }
    let mut out = [Fq3Elem::ZERO; 3];
    for (slot, chunk) in out.iter_mut().zip(labels.chunks(3)) {
        *slot = f.parse(&chunk.join(",")).map_err(|_| bad())?;
    }
    Ok(out)
}

impl ProjPoint {
    /// `(x,y,z)` with each coordinate written as `a0,a1,a2`.
    pub fn to_text(&self, f: &FieldCtx) -> String {
        format!("({})", format_triple(f, &self.0))
    }

    pub fn parse(f: &FieldCtx, s: &str) -> Result<Self, PlaneError> {
        ProjPoint::new(f, parse_triple(f, s, '(', ')')?)
    }
}

impl ProjLine {
    /// `[l,m,n]` with each coordinate written as `a0,a1,a2`.
    pub fn to_text(&self, f: &FieldCtx) -> String {
        format!("[{}]", format_triple(f, &self.0))
    }

    pub fn parse(f: &FieldCtx, s: &str) -> Result<Self, PlaneError> {
        ProjLine::new(f, parse_triple(f, s, '[', ']')?)
    }
}

/// Compare two sorted point lists as sets.
pub fn intersection_size(a: &[ProjPoint], b: &[ProjPoint]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u16) -> Fq3Elem {
        Fq3Elem(i)
    }

    fn pt(f: &FieldCtx, v: [u16; 3]) -> ProjPoint {
        ProjPoint::new(f, v.map(e)).unwrap()
    }

    fn ln(f: &FieldCtx, v: [u16; 3]) -> ProjLine {
        ProjLine::new(f, v.map(e)).unwrap()
    }

    /// First quadrangle found scanning points with a stride.
    fn quadrangle(f: &FieldCtx, stride: usize) -> [ProjPoint; 4] {
        let mut q: Vec<ProjPoint> = Vec::new();
        for p in ProjPoint::all(f).skip(5).step_by(stride) {
            let ok = match q.len() {
                0 => true,
                1 => p != q[0],
                2 => !collinear(f, &q[0], &q[1], &p),
                _ => {
                    !collinear(f, &q[0], &q[1], &p)
                        && !collinear(f, &q[0], &q[2], &p)
                        && !collinear(f, &q[1], &q[2], &p)
                }
            };
            if ok {
                q.push(p);
                if q.len() == 4 {
                    break;
                }
            }
        }
        [q[0], q[1], q[2], q[3]]
    }

    #[test]
    fn incidence_examples() {
        let f = FieldCtx::new(2, None).unwrap();
        assert!(incidence(&f, &pt(&f, [1, 0, 0]), &ln(&f, [0, 1, 0])));
        assert!(!incidence(&f, &pt(&f, [1, 0, 0]), &ln(&f, [1, 0, 0])));
        assert!(incidence(&f, &pt(&f, [1, 1, 1]), &ln(&f, [1, 1, 0])));
    }

    #[test]
    fn join_meet_examples() {
        let f = FieldCtx::new(3, None).unwrap();
        assert_eq!(join(&f, &pt(&f, [1, 0, 0]), &pt(&f, [0, 1, 0])).unwrap(), ln(&f, [0, 0, 1]));
        assert_eq!(meet(&f, &ln(&f, [0, 0, 1]), &ln(&f, [0, 1, 0])).unwrap(), pt(&f, [1, 0, 0]));
        let p = pt(&f, [1, 0, 0]);
        assert_eq!(join(&f, &p, &p), Err(PlaneError::EqualArguments));
        let (q, r) = (pt(&f, [0, 1, 5]), pt(&f, [1, 7, 2]));
        let back = meet(&f, &join(&f, &p, &q).unwrap(), &join(&f, &p, &r).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn normalization_and_index_roundtrip() {
        let f = FieldCtx::new(2, None).unwrap();
        let mut prev = None;
        for (i, p) in ProjPoint::all(&f).enumerate() {
            assert_eq!(p.index(&f), i as u32);
            assert_eq!(ProjPoint::new(&f, scale(&f, f.tau(), &p.coords())).unwrap(), p);
            if let Some(q) = prev {
                assert!(q < p);
            }
            prev = Some(p);
        }
        assert_eq!(ProjPoint::new(&f, [Fq3Elem::ZERO; 3]), Err(PlaneError::ZeroVector));
    }

    #[test]
    fn plane_axioms_by_enumeration() {
        for q in [2, 3] {
            let f = FieldCtx::new(q, None).unwrap();
            let n = f.size() + 1;
            for l in ProjLine::all(&f).step_by(37) {
                let on: Vec<_> = ProjPoint::all(&f).filter(|p| incidence(&f, p, &l)).collect();
                assert_eq!(on.len(), n);
                assert_eq!(on, points_on_line(&f, &l));
            }
            for p in ProjPoint::all(&f).step_by(41) {
                assert_eq!(ProjLine::all(&f).filter(|l| incidence(&f, &p, l)).count(), n);
            }
        }
    }

    #[test]
    fn frames() {
        let f = FieldCtx::new(2, None).unwrap();
        let can = canonical_frame();
        assert!(homography_from_frames(&f, &can, &can).unwrap().is_identity());
        let dst = quadrangle(&f, 7);
        let h = homography_from_frames(&f, &can, &dst).unwrap();
        for (s, d) in can.iter().zip(&dst) {
            assert_eq!(h.apply_point(&f, s), *d);
        }
        let back = homography_from_frames(&f, &dst, &can).unwrap();
        assert!(h.compose(&f, &back).is_identity());
        let bad = [pt(&f, [1, 0, 0]), pt(&f, [0, 1, 0]), pt(&f, [1, 1, 0]), pt(&f, [0, 0, 1])];
        assert_eq!(homography_from_frames(&f, &can, &bad), Err(PlaneError::DegenerateFrame));
    }

    #[test]
    fn homography_preserves_incidence() {
        let f = FieldCtx::new(3, None).unwrap();
        let h = homography_from_frames(&f, &canonical_frame(), &quadrangle(&f, 13)).unwrap();
        for p in ProjPoint::all(&f).step_by(11) {
            for l in ProjLine::all(&f).step_by(53) {
                assert_eq!(
                    incidence(&f, &p, &l),
                    incidence(&f, &h.apply_point(&f, &p), &h.apply_line(&f, &l))
                );
            }
        }
    }

    #[test]
    fn sublines() {
        let f = FieldCtx::new(2, None).unwrap();
        let (a, b) = (pt(&f, [1, 0, 0]), pt(&f, [0, 0, 1]));
        let c = pt(&f, [1, 0, 5]);
        let s = subline_through(&f, &a, &b, &c).unwrap();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(s.points, want);
        assert_eq!(subline_through(&f, &a, &a, &c), Err(PlaneError::NotDistinct));
        assert_eq!(
            subline_through(&f, &a, &b, &pt(&f, [0, 1, 0])),
            Err(PlaneError::NotCollinear)
        );

        let f = FieldCtx::new(3, None).unwrap();
        let s = subline_through(&f, &pt(&f, [1, 0, 0]), &pt(&f, [0, 0, 1]), &pt(&f, [1, 0, 1]))
            .unwrap();
        let mut want: Vec<_> = (0..3).map(|c| pt(&f, [1, 0, c])).collect();
        want.push(pt(&f, [0, 0, 1]));
        want.sort();
        assert_eq!(s.points, want);
        assert_eq!(s.host, ln(&f, [0, 1, 0]));
        // closure from any three
        let g = subline_through(&f, &pt(&f, [1, 0, 7]), &pt(&f, [0, 0, 1]), &pt(&f, [1, 0, 13]));
        let g = g.unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    if i != j && j != k && i != k {
                        let t = subline_through(&f, &g.points[i], &g.points[j], &g.points[k]);
                        assert_eq!(t.unwrap().points, g.points);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_subplane_and_uniqueness() {
        let f = FieldCtx::new(2, None).unwrap();
        let pi = subplane_from_quadrangle(&f, &canonical_frame()).unwrap();
        assert_eq!(pi.points, base_points(&f));
        assert_eq!(pi.points.len(), 7);
        assert_eq!(pi.lines.len(), 7);
        for l in &pi.lines {
            assert_eq!(pi.points_on(&f, l).count(), 3);
        }

        let f = FieldCtx::new(3, None).unwrap();
        let quad = quadrangle(&f, 29);
        let pi = subplane_from_quadrangle(&f, &quad).unwrap();
        assert_eq!(pi.points.len(), 13);
        for p in &quad {
            assert!(pi.contains_point(p));
        }
        // any two points lie on one subplane line; every subplane line has q+1 points
        for l in &pi.lines {
            assert_eq!(pi.points_on(&f, l).count(), 4);
        }
        for (i, a) in pi.points.iter().enumerate() {
            for b in &pi.points[i + 1..] {
                assert!(pi.contains_line(&join(&f, a, b).unwrap()));
            }
        }
        // regenerate from another quadrangle of its points
        let p = &pi.points;
        let mut other = None;
        'outer: for a in 0..p.len() {
            for b in a + 1..p.len() {
                for c in b + 1..p.len() {
                    for d in (c + 1..p.len()).rev() {
                        let q4 = [p[a], p[b], p[c], p[d]];
                        if frame_matrix(&f, &q4).is_ok() && q4 != quad {
                            other = Some(q4);
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert_eq!(subplane_from_quadrangle(&f, &other.unwrap()).unwrap().points, pi.points);
    }

    #[test]
    fn conjugation() {
        let f = FieldCtx::new(3, None).unwrap();
        let pi = Subplane::canonical(&f);
        let tau = f.tau();
        let p = ProjPoint::new(&f, [Fq3Elem::ONE, tau, f.mul(tau, tau)]).unwrap();
        let tq = f.frobenius(tau, 1);
        assert_eq!(
            conjugate_point(&f, &pi, &p, 1),
            ProjPoint::new(&f, [Fq3Elem::ONE, tq, f.mul(tq, tq)]).unwrap()
        );
        for x in &pi.points {
            assert_eq!(conjugate_point(&f, &pi, x, 1), *x);
        }
        let quad = quadrangle(&f, 29);
        let sigma = subplane_from_quadrangle(&f, &quad).unwrap();
        for x in &sigma.points {
            assert_eq!(conjugate_point(&f, &sigma, x, 2), *x);
        }
        for l in &sigma.lines {
            assert_eq!(conjugate_line(&f, &sigma, l, 1), *l);
        }
        for p in ProjPoint::all(&f).step_by(17) {
            let p3 = (0..3).fold(p, |acc, _| conjugate_point(&f, &sigma, &acc, 1));
            assert_eq!(p3, p);
            for l in ProjLine::all(&f).step_by(101) {
                assert_eq!(
                    incidence(&f, &p, &l),
                    incidence(
                        &f,
                        &conjugate_point(&f, &sigma, &p, 1),
                        &conjugate_line(&f, &sigma, &l, 1)
                    )
                );
            }
        }
    }

    #[test]
    fn text_forms() {
        let f = FieldCtx::new(3, None).unwrap();
        let p = pt(&f, [1, 5, 26]);
        let s = p.to_text(&f);
        assert_eq!(s, "(1,0,0,2,1,0,2,2,2)");
        assert_eq!(ProjPoint::parse(&f, &s).unwrap(), p);
        let l = ln(&f, [0, 1, 4]);
        assert_eq!(ProjLine::parse(&f, &l.to_text(&f)).unwrap(), l);
        assert!(ProjPoint::parse(&f, "[1,0,0,0,0,0,0,0,0]").is_err());
    }
}
