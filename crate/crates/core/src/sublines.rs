//! Order-q sublines inside an exterior splash: the pencil family, the
//! dual-conic family, special conics, and the involution exchanging the two
//! families.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, FqElem, Fq3Elem};
use crate::plane::{
    base_points, concurrent, collinear, from_columns, meet, subline_through, transpose,
    mat_vec, Homography, Mat3, ProjLine, ProjPoint, Subline, Subplane, Vec3,
};
use crate::splash::{splash, theta_image, Splash, SplashError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SublineError {
    #[error("point is not in the subplane")]
    PointNotInSubplane,
    #[error("the lines of the dual conic do not meet the splash in a subline")]
    NotSpecial,
    #[error("the two subline families are only defined for q > 2")]
    OrderTooSmall,
    #[error(transparent)]
    Splash(#[from] SplashError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConicKind {
    Point,
    Dual,
}

/// A conic of a subplane, written in the subplane's own coordinates as
/// `a X^2 + b Y^2 + c Z^2 + d XY + e XZ + f YZ`. For a dual conic the form is
/// evaluated on line coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conic {
    pub coeffs: [FqElem; 6],
    pub kind: ConicKind,
    /// The `q + 1` points of a point conic, sorted; empty for a dual conic.
    pub points: Vec<ProjPoint>,
    /// The `q + 1` lines of a dual conic, sorted; empty for a point conic.
    pub lines: Vec<ProjLine>,
}

fn eval_form(f: &FieldCtx, c: &[FqElem; 6], v: &Vec3) -> Fq3Elem {
    let k = c.map(Fq3Elem::from);
    let [x, y, z] = *v;
    let terms = [
        f.mul(k[0], f.mul(x, x)),
        f.mul(k[1], f.mul(y, y)),
        f.mul(k[2], f.mul(z, z)),
        f.mul(k[3], f.mul(x, y)),
        f.mul(k[4], f.mul(x, z)),
        f.mul(k[5], f.mul(y, z)),
    ];
    terms.into_iter().fold(Fq3Elem::ZERO, |a, t| f.add(a, t))
}

/// Coefficient vectors up to scalar (first nonzero entry one).
fn coefficient_classes(f: &FieldCtx) -> impl Iterator<Item = [FqElem; 6]> + '_ {
    let q = f.q();
    (0..q.pow(6)).filter_map(move |mut n| {
        let mut c = [FqElem::ZERO; 6];
        for slot in c.iter_mut() {
            *slot = f.base(n % q).unwrap();
            n /= q;
        }
        (c.iter().find(|x| !x.is_zero()) == Some(&FqElem::ONE)).then_some(c)
    })
}

/// Internal coordinates of a point, i.e. `gen^-1 P`.
fn internal_point(f: &FieldCtx, pi: &Subplane, p: &ProjPoint) -> Vec3 {
    mat_vec(f, pi.gen.inverse_matrix(), &p.coords())
}

/// Internal coordinates of a line, i.e. `gen^t l`.
fn internal_line(f: &FieldCtx, pi: &Subplane, l: &ProjLine) -> Vec3 {
    mat_vec(f, &transpose(pi.gen.matrix()), &l.coords())
}

/// All irreducible conics (or dual conics) of a subplane: `q + 1` members, no
/// three collinear (concurrent).
pub fn irreducible_conics(f: &FieldCtx, pi: &Subplane, kind: ConicKind) -> Vec<Conic> {
    let q = f.q() as usize;
    let base = base_points(f);
    let mut out = Vec::new();
    for c in coefficient_classes(f) {
        let members: Vec<&ProjPoint> =
            base.iter().filter(|p| eval_form(f, &c, &p.coords()).is_zero()).collect();
        if members.len() != q + 1 {
            continue;
        }
        let arc = (0..members.len()).all(|i| {
            (i + 1..members.len()).all(|j| {
                (j + 1..members.len()).all(|k| !collinear(f, members[i], members[j], members[k]))
            })
        });
        if !arc {
            continue;
        }
        // a triple of internal vectors is collinear iff the same triple read
        // as line coordinates is concurrent, so one test serves both kinds
        let (mut points, mut lines) = (Vec::new(), Vec::new());
        match kind {
            ConicKind::Point => {
                points = members.iter().map(|p| pi.gen.apply_point(f, p)).collect();
                points.sort();
            }
            ConicKind::Dual => {
                lines = members
                    .iter()
                    .map(|p| pi.gen.apply_line(f, &ProjLine::new(f, p.coords()).unwrap()))
                    .collect();
                lines.sort();
            }
        }
        out.push(Conic { coeffs: c, kind, points, lines });
    }
    out
}

/// Conics of `pi` whose extension passes through the carrier `E1` (and hence
/// through all three conjugate points).
pub fn special_conics(f: &FieldCtx, pi: &Subplane, l: &ProjLine) -> Result<Vec<Conic>, SublineError> {
    let s = splash(f, pi, l)?;
    let e1 = s.carriers().ok_or(SplashError::NotExterior)?[0];
    let v = internal_point(f, pi, &e1);
    Ok(irreducible_conics(f, pi, ConicKind::Point)
        .into_iter()
        .filter(|c| eval_form(f, &c.coeffs, &v).is_zero())
        .collect())
}

/// Dual conics of `pi` whose extension contains `l` (and hence its two
/// conjugates).
pub fn special_dual_conics(
    f: &FieldCtx,
    pi: &Subplane,
    l: &ProjLine,
) -> Result<Vec<Conic>, SublineError> {
    splash(f, pi, l)?.carriers().ok_or(SplashError::NotExterior)?;
    let w = internal_line(f, pi, l);
    Ok(irreducible_conics(f, pi, ConicKind::Dual)
        .into_iter()
        .filter(|c| eval_form(f, &c.coeffs, &w).is_zero())
        .collect())
}

/// Whether the extension of a conic contains the point (or, for a dual conic,
/// the line) given in plane coordinates.
pub fn conic_contains(f: &FieldCtx, pi: &Subplane, c: &Conic, v: &Vec3) -> bool {
    let internal = match c.kind {
        ConicKind::Point => mat_vec(f, pi.gen.inverse_matrix(), v),
        ConicKind::Dual => mat_vec(f, &transpose(pi.gen.matrix()), v),
    };
    eval_form(f, &c.coeffs, &internal).is_zero()
}

fn subline_on(f: &FieldCtx, host: &ProjLine, mut pts: Vec<ProjPoint>) -> Option<Subline> {
    pts.sort();
    pts.dedup();
    if !crate::plane::is_subline(f, &pts) {
        return None;
    }
    Some(Subline { host: *host, points: pts })
}

/// Where the lines of `pi` through `a` meet `l`.
pub fn pencil_subline(
    f: &FieldCtx,
    pi: &Subplane,
    l: &ProjLine,
    a: &ProjPoint,
) -> Result<Subline, SublineError> {
    if !pi.contains_point(a) {
        return Err(SublineError::PointNotInSubplane);
    }
    let pts = pi.lines_through(f, a).map(|m| meet(f, m, l).expect("l is not a line of pi")).collect();
    subline_on(f, l, pts).ok_or(SublineError::NotSpecial)
}

/// Where the lines of a dual conic meet `l`; a subline exactly when the dual
/// conic is special.
pub fn dual_conic_subline(
    f: &FieldCtx,
    l: &ProjLine,
    c: &Conic,
) -> Result<Subline, SublineError> {
    let pts = c.lines.iter().filter_map(|m| meet(f, m, l).ok()).collect::<Vec<_>>();
    if pts.len() != c.lines.len() {
        return Err(SublineError::NotSpecial);
    }
    subline_on(f, l, pts).ok_or(SublineError::NotSpecial)
}

/// Brute force: every order-q subline of the host contained in the splash.
pub fn sublines_in_splash(f: &FieldCtx, s: &Splash) -> Vec<Subline> {
    let pts = &s.points;
    let mut found = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let b = subline_through(f, &pts[i], &pts[j], &pts[k]).expect("collinear");
                if b.points.iter().all(|p| s.contains(p)) {
                    found.insert(b);
                }
            }
        }
    }
    found.into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct Families {
    /// Pencil sublines, indexed like the sorted points of the subplane.
    pub pencil: Vec<Subline>,
    /// Dual-conic sublines, indexed like the special dual conics.
    pub dual_conic: Vec<Subline>,
    pub special_dual_conics: Vec<Conic>,
}

impl Families {
    pub fn pencil_set(&self) -> BTreeSet<Subline> {
        self.pencil.iter().cloned().collect()
    }

    pub fn dual_conic_set(&self) -> BTreeSet<Subline> {
        self.dual_conic.iter().cloned().collect()
    }
}

pub fn classify_families(f: &FieldCtx, pi: &Subplane, l: &ProjLine) -> Result<Families, SublineError> {
    if f.q() <= 2 {
        return Err(SublineError::OrderTooSmall);
    }
    let pencil = pi
        .points
        .iter()
        .map(|a| pencil_subline(f, pi, l, a))
        .collect::<Result<Vec<_>, _>>()?;
    let conics = special_dual_conics(f, pi, l)?;
    let dual_conic =
        conics.iter().map(|c| dual_conic_subline(f, l, c)).collect::<Result<Vec<_>, _>>()?;
    Ok(Families { pencil, dual_conic, special_dual_conics: conics })
}

/// The line of `pi` through each point of a subline in the splash.
pub fn witness_lines(f: &FieldCtx, pi: &Subplane, b: &Subline) -> Vec<ProjLine> {
    b.points
        .iter()
        .filter_map(|x| pi.lines.iter().find(|m| crate::plane::incidence(f, x, m)).copied())
        .collect()
}

/// A subline of the splash is a pencil subline iff its witnessing lines of
/// `pi` are concurrent.
pub fn is_pencil_subline(f: &FieldCtx, pi: &Subplane, b: &Subline) -> bool {
    let w = witness_lines(f, pi, b);
    w.len() == b.points.len() && (2..w.len()).all(|k| concurrent(f, &w[0], &w[1], &w[k]))
}

/// An involution of the plane fixing the host line, preserving the splash and
/// swapping its carriers: `B P B^-1` with `B = [E1 E2 E3]` and
/// `P = [[0,1,0],[mu^2,0,0],[0,0,mu]]`, where `N(mu)` is the norm value of the
/// splash in its own coordinates. On the host this is `theta -> mu^2 / theta`.
pub fn swap_families(f: &FieldCtx, s: &Splash, pi: &Subplane) -> Result<(Homography, Subplane), SublineError> {
    let [e1, e2] = s.carriers().ok_or(SplashError::NotExterior)?;
    let e3 = s.third_conjugate().expect("exterior");
    let theta = theta_image(f, s)?.iter().find_map(|p| p.finite()).expect("splash is finite");
    let mu = f.solve_norm_eq(f.norm(theta)).expect("nonzero")[0];
    let b = Homography::new(f, from_columns([e1.coords(), e2.coords(), e3.coords()]))
        .map_err(SplashError::from)?;
    let (o, z) = (Fq3Elem::ONE, Fq3Elem::ZERO);
    let p: Mat3 = [[z, o, z], [f.mul(mu, mu), z, z], [z, z, mu]];
    let p = Homography::new(f, p).map_err(SplashError::from)?;
    let delta = b.compose(f, &p).compose(f, &b.inverse());
    let image = pi.image(f, &delta);
    Ok((delta, image))
}

/// Checks on the incidence structure (points of `pi`, special conics): every
/// point on `q + 1` conics, every two points on exactly one, every two conics
/// meeting in exactly one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleCheck {
    pub conics: usize,
    pub conics_per_point: BTreeSet<usize>,
    pub conics_per_point_pair: BTreeSet<usize>,
    pub pairwise_intersections: BTreeSet<usize>,
}

pub fn bundle_check(pi: &Subplane, conics: &[Conic]) -> BundleCheck {
    let sets: Vec<&Vec<ProjPoint>> = conics.iter().map(|c| &c.points).collect();
    let mut per_point = BTreeSet::new();
    for p in &pi.points {
        per_point.insert(sets.iter().filter(|s| s.binary_search(p).is_ok()).count());
    }
    let mut per_pair = BTreeSet::new();
    for (i, p) in pi.points.iter().enumerate() {
        for r in &pi.points[i + 1..] {
            per_pair.insert(
                sets.iter().filter(|s| s.binary_search(p).is_ok() && s.binary_search(r).is_ok()).count(),
            );
        }
    }
    let mut pairwise = BTreeSet::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            pairwise.insert(crate::plane::intersection_size(sets[i], sets[j]));
        }
    }
    BundleCheck {
        conics: conics.len(),
        conics_per_point: per_point,
        conics_per_point_pair: per_pair,
        pairwise_intersections: pairwise,
    }
}

/// The same checks for special dual conics, with lines of `pi` in place of
/// points.
pub fn dual_bundle_check(pi: &Subplane, conics: &[Conic]) -> BundleCheck {
    let sets: Vec<&Vec<ProjLine>> = conics.iter().map(|c| &c.lines).collect();
    let mut per_line = BTreeSet::new();
    for m in &pi.lines {
        per_line.insert(sets.iter().filter(|s| s.binary_search(m).is_ok()).count());
    }
    let mut per_pair = BTreeSet::new();
    for (i, m) in pi.lines.iter().enumerate() {
        for n in &pi.lines[i + 1..] {
            per_pair.insert(
                sets.iter().filter(|s| s.binary_search(m).is_ok() && s.binary_search(n).is_ok()).count(),
            );
        }
    }
    let mut pairwise = BTreeSet::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            pairwise.insert(sets[i].iter().filter(|m| sets[j].binary_search(m).is_ok()).count());
        }
    }
    BundleCheck {
        conics: conics.len(),
        conics_per_point: per_line,
        conics_per_point_pair: per_pair,
        pairwise_intersections: pairwise,
    }
}

/// Orbit size of a conic under a homography fixing `pi` (a conic is moved as
/// its point or line set).
pub fn conic_orbit_size(f: &FieldCtx, g: &Homography, c: &Conic) -> usize {
    let step = |c: &Conic| -> Conic {
        let mut points: Vec<ProjPoint> = c.points.iter().map(|p| g.apply_point(f, p)).collect();
        let mut lines: Vec<ProjLine> = c.lines.iter().map(|m| g.apply_line(f, m)).collect();
        points.sort();
        lines.sort();
        Conic { coeffs: c.coeffs, kind: c.kind, points, lines }
    };
    let mut cur = step(c);
    let mut n = 1;
    while cur.points != c.points || cur.lines != c.lines {
        cur = step(&cur);
        n += 1;
    }
    n
}

/// Image of a subline under a homography.
pub fn subline_image(f: &FieldCtx, g: &Homography, b: &Subline) -> Subline {
    let mut points: Vec<ProjPoint> = b.points.iter().map(|p| g.apply_point(f, p)).collect();
    points.sort();
    Subline { host: g.apply_line(f, &b.host), points }
}

/// For two subplanes with the same splash: whether the pencil family of each
/// is the dual-conic family of the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SwapObservation {
    pub common_points: usize,
    pub swapped: bool,
    pub same_families: bool,
}

pub fn compare_families(
    f: &FieldCtx,
    a: &Subplane,
    b: &Subplane,
    l: &ProjLine,
) -> Result<SwapObservation, SublineError> {
    let fa = classify_families(f, a, l)?;
    let fb = classify_families(f, b, l)?;
    Ok(SwapObservation {
        common_points: crate::plane::intersection_size(&a.points, &b.points),
        swapped: fa.pencil_set() == fb.dual_conic_set() && fa.dual_conic_set() == fb.pencil_set(),
        same_families: fa.pencil_set() == fb.pencil_set(),
    })
}
