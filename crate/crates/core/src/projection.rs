//! Projecting a subplane from a point onto a line, compared with its splash.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, Fq3Elem};
use crate::models::{splash_orbit, SplashOrbit};
use crate::pg1::{LineFrame, Param, ParamSet};
use crate::plane::{
    incidence, join, meet, points_on_line, ProjLine, ProjPoint, Subline, Subplane,
};
use crate::splash::{
    canonical_carrier, line_coordinates, singer_group, splash, theta_image, SingerGroup,
    SplashError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("projection centre lies in the subplane")]
    PointInSubplane,
    #[error("projection centre lies on the target line")]
    PointOnLine,
    #[error("no projection centre found")]
    NoPoint,
    #[error("{0} projection centres found")]
    MultiplePoints(usize),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Splash(#[from] SplashError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ImageKind {
    /// `q^2 + 1` points.
    TangentSplash,
    /// `q^2 + q + 1` points.
    ExteriorSplash,
    Degenerate,
}

fn kind_of(f: &FieldCtx, n: usize) -> ImageKind {
    let q = f.q() as usize;
    if n == q * q + 1 {
        ImageKind::TangentSplash
    } else if n == q * q + q + 1 {
        ImageKind::ExteriorSplash
    } else {
        ImageKind::Degenerate
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionRecord {
    pub source: ProjPoint,
    pub target_line: ProjLine,
    /// Sorted.
    pub image: Vec<ProjPoint>,
    pub kind: ImageKind,
}

/// Project a point set from `p` onto `l`; `p` must not be in the set or on `l`.
pub fn project_points(f: &FieldCtx, pts: &[ProjPoint], p: &ProjPoint, l: &ProjLine) -> Vec<ProjPoint> {
    let mut image: Vec<ProjPoint> = pts
        .iter()
        .map(|x| meet(f, &join(f, p, x).expect("p not in set"), l).expect("p not on l"))
        .collect();
    image.sort();
    image.dedup();
    image
}

pub fn project(
    f: &FieldCtx,
    pi: &Subplane,
    p: &ProjPoint,
    l: &ProjLine,
) -> Result<ProjectionRecord, ProjectionError> {
    if pi.contains_point(p) {
        return Err(ProjectionError::PointInSubplane);
    }
    if incidence(f, p, l) {
        return Err(ProjectionError::PointOnLine);
    }
    let image = project_points(f, &pi.points, p, l);
    Ok(ProjectionRecord { source: *p, target_line: *l, kind: kind_of(f, image.len()), image })
}

/// For the canonical pair: the parameter of the projection of `x` from
/// `p = (r, s, t)`, written as the quotient of two linear forms in `x`.
pub fn theta_formula(f: &FieldCtx, p: &ProjPoint, x: &ProjPoint) -> Param {
    let [r, s, t] = p.coords();
    let [a, b, c] = x.coords();
    let tau = f.tau();
    let tq = f.frobenius(tau, 1);
    let (t2, t2q) = (f.mul(tau, tau), f.mul(tq, tq));
    let lin = |k: [Fq3Elem; 3]| f.add(f.add(f.mul(a, k[0]), f.mul(b, k[1])), f.mul(c, k[2]));
    let num = lin([
        f.sub(f.mul(s, t2), f.mul(t, tau)),
        f.sub(t, f.mul(r, t2)),
        f.sub(f.mul(r, tau), s),
    ]);
    let den = lin([
        f.sub(f.mul(t, tq), f.mul(s, t2q)),
        f.sub(f.mul(r, t2q), t),
        f.sub(s, f.mul(r, tq)),
    ]);
    Param::from_vector(f, [num, den]).expect("x != p")
}

/// Compare the projection from `p` with the quotient formula at every point of
/// PG(2, q), in the frame `E + theta E^q` on the canonical line.
pub fn theta_formula_agrees(f: &FieldCtx, p: &ProjPoint) -> bool {
    let pi = Subplane::canonical(f);
    let e = canonical_carrier(f);
    let frame = LineFrame::new(f, e, e.frobenius(f, 1)).unwrap();
    pi.points.iter().all(|x| {
        let y = meet(f, &join(f, p, x).unwrap(), &frame.host).unwrap();
        frame.to_param(f, &y) == theta_formula(f, p, x)
    })
}

/// Projection of `pi` from its third conjugate point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThirdConjugateProjection {
    pub q: u32,
    pub equals_splash: bool,
    /// The image is a norm fiber in the splash's own frame.
    pub same_carriers: bool,
    pub image_size: usize,
}

pub fn project_from_third_conjugate(
    f: &FieldCtx,
    pi: &Subplane,
    l: &ProjLine,
) -> Result<ThirdConjugateProjection, ProjectionError> {
    let s = splash(f, pi, l)?;
    let e3 = s.third_conjugate().ok_or(SplashError::NotExterior)?;
    let rec = project(f, pi, &e3, l)?;
    let frame = line_coordinates(f, &s)?;
    Ok(ThirdConjugateProjection {
        q: f.q(),
        equals_splash: rec.image == s.points,
        same_carriers: is_norm_fiber(f, &frame.params_of(f, &rec.image)),
        image_size: rec.image.len(),
    })
}

/// A set of `q^2 + q + 1` finite nonzero parameters with constant norm.
pub fn is_norm_fiber(f: &FieldCtx, s: &ParamSet) -> bool {
    if s.len() != f.norm_exponent() {
        return false;
    }
    let norms: BTreeSet<_> = s.iter().map(|p| p.finite().filter(|x| !x.is_zero()).map(|x| f.norm(x))).collect();
    norms.len() == 1 && !norms.contains(&None)
}

/// One distinct image in the projection census.
#[derive(Debug, Clone, Serialize)]
pub struct ImageGroup {
    pub kind: ImageKind,
    pub size: usize,
    #[serde(skip)]
    pub image: Vec<ProjPoint>,
    #[serde(skip)]
    pub sources: Vec<ProjPoint>,
    pub projection_points: usize,
    /// Orbit size of the image under the Singer group.
    pub orbit_size: usize,
    /// Number of Singer orbits met by the projection points.
    pub source_orbits: usize,
    /// Exterior splash with carriers `E1, E2`.
    pub carrier_match: bool,
    /// Exterior splash at all (member of the orbit of the splash on the line).
    pub is_exterior_splash: bool,
    pub is_own_splash: bool,
    pub from_third_conjugate: bool,
    /// Every projection point lies on the extension of a line of the subplane.
    pub sources_on_subplane_lines: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionCensus {
    pub q: u32,
    pub candidates: usize,
    pub groups: Vec<ImageGroup>,
}

/// Project `pi` onto `l` from every point off `pi ∪ l`, grouping by image.
pub fn projection_census(
    f: &FieldCtx,
    pi: &Subplane,
    l: &ProjLine,
) -> Result<ProjectionCensus, ProjectionError> {
    let s = splash(f, pi, l)?;
    let e3 = s.third_conjugate().ok_or(SplashError::NotExterior)?;
    let frame = line_coordinates(f, &s)?;
    let orbit = splash_orbit(f, &theta_image(f, &s)?);
    let singer = singer_group(f, pi, l)?;
    let candidates: Vec<ProjPoint> =
        ProjPoint::all(f).filter(|p| !pi.contains_point(p) && !incidence(f, p, l)).collect();
    let images: Vec<(Vec<ProjPoint>, ProjPoint)> = candidates
        .par_iter()
        .map(|p| (project_points(f, &pi.points, p, l), *p))
        .collect();
    let mut by_image: BTreeMap<Vec<ProjPoint>, Vec<ProjPoint>> = BTreeMap::new();
    for (img, p) in images {
        by_image.entry(img).or_default().push(p);
    }
    let groups = by_image
        .into_par_iter()
        .map(|(image, sources)| {
            image_group(f, pi, &singer, &frame, &orbit, &s.points, &e3, image, sources)
        })
        .collect();
    Ok(ProjectionCensus { q: f.q(), candidates: candidates.len(), groups })
}

#[allow(clippy::too_many_arguments)]
fn image_group(
    f: &FieldCtx,
    pi: &Subplane,
    singer: &SingerGroup,
    frame: &LineFrame,
    orbit: &SplashOrbit,
    own: &[ProjPoint],
    e3: &ProjPoint,
    image: Vec<ProjPoint>,
    sources: Vec<ProjPoint>,
) -> ImageGroup {
    let params = frame.params_of(f, &image);
    let mut seen = BTreeSet::new();
    let mut source_orbits = 0;
    for p in &sources {
        if seen.insert(*p) {
            source_orbits += 1;
            seen.extend(singer.point_orbit(f, p));
        }
    }
    ImageGroup {
        kind: kind_of(f, image.len()),
        size: image.len(),
        projection_points: sources.len(),
        orbit_size: singer.set_orbit_size(f, &image),
        source_orbits,
        carrier_match: is_norm_fiber(f, &params),
        is_exterior_splash: orbit.contains(&params),
        is_own_splash: image == own,
        from_third_conjugate: sources.contains(e3),
        sources_on_subplane_lines: sources
            .iter()
            .all(|p| pi.lines.iter().any(|m| incidence(f, p, m))),
        image,
        sources,
    }
}

/// Structural checks over a projection census, and the tabulated outcome of
/// the conjectured description.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionSummary {
    pub q: u32,
    pub tangent_groups: usize,
    pub tangent_groups_expected: usize,
    pub tangent_single_source: bool,
    pub tangent_orbit_sizes: BTreeSet<usize>,
    pub exterior_orbit_sizes: BTreeSet<usize>,
    /// Projection-point counts of exterior splashes with carriers `E1, E2`.
    pub carrier_stratum_counts: Vec<usize>,
    pub carrier_stratum_counts_ok: bool,
    /// Projection-point counts of the remaining exterior splashes.
    pub other_exterior_counts: BTreeMap<usize, usize>,
    /// Two-point images whose two points lie in one Singer orbit.
    pub two_point_same_orbit: usize,
    pub images_not_splashes: usize,
    pub conjecture_holds: bool,
}

pub fn summarize(f: &FieldCtx, census: &ProjectionCensus) -> ProjectionSummary {
    let q = f.q() as usize;
    let n = q * q + q + 1;
    let tangent: Vec<&ImageGroup> =
        census.groups.iter().filter(|g| g.kind == ImageKind::TangentSplash).collect();
    let exterior: Vec<&ImageGroup> =
        census.groups.iter().filter(|g| g.kind == ImageKind::ExteriorSplash).collect();
    let mut carrier_stratum_counts: Vec<usize> =
        exterior.iter().filter(|g| g.carrier_match).map(|g| g.projection_points).collect();
    carrier_stratum_counts.sort();
    let allowed = if q % 2 == 0 { [1, n] } else { [n, n + 1] };
    let carrier_stratum_counts_ok = carrier_stratum_counts.iter().all(|c| allowed.contains(c));
    let mut other_exterior_counts = BTreeMap::new();
    let mut two_point_same_orbit = 0;
    for g in exterior.iter().filter(|g| !g.carrier_match) {
        *other_exterior_counts.entry(g.projection_points).or_insert(0) += 1;
        if g.projection_points == 2 && g.source_orbits == 1 {
            two_point_same_orbit += 1;
        }
    }
    let tangent_groups_expected = n * (q * q * q - q - 1);
    let tangent_single_source = tangent.iter().all(|g| g.projection_points == 1);
    let images_not_splashes = census
        .groups
        .iter()
        .filter(|g| g.kind == ImageKind::Degenerate || (g.kind == ImageKind::ExteriorSplash && !g.is_exterior_splash))
        .count();
    // the conjectured picture: distinct tangent splashes from single points;
    // q - 2 carrier splashes besides the own one, each from one full Singer
    // orbit, plus the own splash from E3 alone (q even) or E3 added to one of
    // the others (q odd); every other exterior splash from one point or from
    // two points in different orbits
    let carrier_groups: Vec<&&ImageGroup> = exterior.iter().filter(|g| g.carrier_match).collect();
    let others = carrier_groups.iter().filter(|g| !g.is_own_splash);
    let own = carrier_groups.iter().find(|g| g.is_own_splash);
    let stratum_ok = others.clone().count() == q - 2
        && others.clone().all(|g| g.projection_points - usize::from(g.from_third_conjugate) == n)
        && carrier_groups.iter().filter(|g| g.from_third_conjugate).count() == 1
        && if q % 2 == 0 {
            own.is_some_and(|g| g.projection_points == 1 && g.from_third_conjugate)
        } else {
            own.is_none()
        };
    let rest_ok = other_exterior_counts.keys().all(|&k| k == 1 || k == 2) && two_point_same_orbit == 0;
    let conjecture_holds = tangent.len() == tangent_groups_expected
        && tangent_single_source
        && tangent.iter().all(|g| g.sources_on_subplane_lines)
        && images_not_splashes == 0
        && stratum_ok
        && rest_ok;
    ProjectionSummary {
        q: f.q(),
        tangent_groups: tangent.len(),
        tangent_groups_expected,
        tangent_single_source,
        tangent_orbit_sizes: tangent.iter().map(|g| g.orbit_size).collect(),
        exterior_orbit_sizes: exterior.iter().map(|g| g.orbit_size).collect(),
        carrier_stratum_counts,
        carrier_stratum_counts_ok,
        other_exterior_counts,
        two_point_same_orbit,
        images_not_splashes,
        conjecture_holds,
    }
}

/// Orbit size of a point set under a Singer group.
pub fn splash_orbit_under_singer(f: &FieldCtx, set: &[ProjPoint], singer: &SingerGroup) -> usize {
    singer.set_orbit_size(f, set)
}

/// The unique centre projecting subline `b` onto subline `c`, by exhaustive
/// search over the points off both host lines.
pub fn subline_projection_point(
    f: &FieldCtx,
    b: &Subline,
    c: &Subline,
) -> Result<ProjPoint, ProjectionError> {
    if b.host == c.host {
        return Err(ProjectionError::Precondition("sublines on one line"));
    }
    let x = meet(f, &b.host, &c.host).expect("distinct lines");
    if b.contains(&x) || c.contains(&x) {
        return Err(ProjectionError::Precondition("a subline contains the common point"));
    }
    let found: Vec<ProjPoint> = ProjPoint::all(f)
        .filter(|p| !incidence(f, p, &b.host) && !incidence(f, p, &c.host))
        .filter(|p| project_points(f, &b.points, p, &c.host) == c.points)
        .collect();
    match found.len() {
        0 => Err(ProjectionError::NoPoint),
        1 => Ok(found[0]),
        n => Err(ProjectionError::MultiplePoints(n)),
    }
}

/// Result of projecting a tangent subplane from every point of the plane.
#[derive(Debug, Clone, Serialize)]
pub struct TangentReport {
    pub q: u32,
    pub splash_size: usize,
    /// Points whose projection equals the tangent splash.
    pub witnesses: usize,
    pub skipped_on_line: usize,
    pub skipped_in_subplane: usize,
    /// Image sizes for centres on exactly one line of the subplane.
    pub sizes_on_subplane_line: BTreeSet<usize>,
    /// Image sizes for centres on no line of the subplane.
    pub sizes_off_subplane_lines: BTreeSet<usize>,
}

pub fn verify_tangent_nonprojection(
    f: &FieldCtx,
    pi: &Subplane,
    l: &ProjLine,
) -> Result<TangentReport, ProjectionError> {
    let s = splash(f, pi, l)?;
    if s.centre().is_none() {
        return Err(ProjectionError::Precondition("subplane is not tangent to the line"));
    }
    let mut report = TangentReport {
        q: f.q(),
        splash_size: s.points.len(),
        witnesses: 0,
        skipped_on_line: 0,
        skipped_in_subplane: 0,
        sizes_on_subplane_line: BTreeSet::new(),
        sizes_off_subplane_lines: BTreeSet::new(),
    };
    let rows: Vec<(ProjPoint, Result<ProjectionRecord, ProjectionError>)> =
        ProjPoint::all(f).collect::<Vec<_>>().into_par_iter().map(|p| (p, project(f, pi, &p, l))).collect();
    for (p, rec) in rows {
        match rec {
            Err(ProjectionError::PointOnLine) => report.skipped_on_line += 1,
            Err(ProjectionError::PointInSubplane) => report.skipped_in_subplane += 1,
            Err(e) => return Err(e),
            Ok(rec) => {
                if rec.image == s.points {
                    report.witnesses += 1;
                }
                if pi.lines.iter().any(|m| incidence(f, &p, m)) {
                    report.sizes_on_subplane_line.insert(rec.image.len());
                } else {
                    report.sizes_off_subplane_lines.insert(rec.image.len());
                }
            }
        }
    }
    Ok(report)
}

/// A tangent line of `pi` through a given point of it: a line through the
/// point that is not a line of `pi`.
pub fn tangent_line_at(f: &FieldCtx, pi: &Subplane, t: &ProjPoint) -> Option<ProjLine> {
    let other = ProjPoint::all(f).find(|p| !pi.contains_point(p) && !pi.lines.iter().any(|m| incidence(f, p, m)))?;
    let l = join(f, t, &other).ok()?;
    (!pi.contains_line(&l)).then_some(l)
}

/// Points of a line that lie off a given set, for sampling.
pub fn points_off(f: &FieldCtx, l: &ProjLine, avoid: &[ProjPoint]) -> Vec<ProjPoint> {
    points_on_line(f, l).into_iter().filter(|p| !avoid.contains(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splash::canonical_line;

    #[test]
    fn theta_formula_matches_projection() {
        for q in [2, 3] {
            let f = FieldCtx::new(q, None).unwrap();
            let pi = Subplane::canonical(&f);
            let l = canonical_line(&f);
            let e3 = splash(&f, &pi, &l).unwrap().third_conjugate().unwrap();
            assert!(theta_formula_agrees(&f, &e3));
            let off: Vec<ProjPoint> = ProjPoint::all(&f)
                .filter(|p| !pi.contains_point(p) && !incidence(&f, p, &l))
                .step_by(37)
                .take(10)
                .collect();
            for p in off {
                assert!(theta_formula_agrees(&f, &p));
            }
        }
    }

    #[test]
    fn third_conjugate_projection() {
        for q in [2, 3] {
            let f = FieldCtx::new(q, None).unwrap();
            let pi = Subplane::canonical(&f);
            let r = project_from_third_conjugate(&f, &pi, &canonical_line(&f)).unwrap();
            assert_eq!(r.equals_splash, q % 2 == 0);
            assert!(r.same_carriers);
        }
    }

    #[test]
    fn projection_errors() {
        let f = FieldCtx::new(2, None).unwrap();
        let pi = Subplane::canonical(&f);
        let l = canonical_line(&f);
        assert_eq!(project(&f, &pi, &pi.points[0], &l), Err(ProjectionError::PointInSubplane));
        let on = points_on_line(&f, &l)[0];
        assert_eq!(project(&f, &pi, &on, &l), Err(ProjectionError::PointOnLine));
    }

    #[test]
    fn census_q2() {
        let f = FieldCtx::new(2, None).unwrap();
        let pi = Subplane::canonical(&f);
        let l = canonical_line(&f);
        let census = projection_census(&f, &pi, &l).unwrap();
        assert_eq!(census.candidates, 73 - 7 - 9);
        let s = summarize(&f, &census);
        assert_eq!(s.tangent_groups, 35);
        assert!(s.tangent_single_source);
        assert_eq!(s.tangent_orbit_sizes, BTreeSet::from([7]));
        assert!(s.exterior_orbit_sizes.is_subset(&BTreeSet::from([1, 7])));
        assert!(s.carrier_stratum_counts_ok);
    }

    #[test]
    fn recovers_projection_centre() {
        let f = FieldCtx::new(2, None).unwrap();
        let lines: Vec<ProjLine> = ProjLine::all(&f).take(2).collect();
        let (m, l) = (lines[0], lines[1]);
        let x = meet(&f, &m, &l).unwrap();
        let on_m = points_off(&f, &m, &[x]);
        let b = crate::plane::subline_through(&f, &on_m[0], &on_m[1], &on_m[2]).unwrap();
        let p = ProjPoint::all(&f).find(|p| !incidence(&f, p, &m) && !incidence(&f, p, &l)).unwrap();
        let img = project_points(&f, &b.points, &p, &l);
        let c = Subline { host: l, points: img };
        assert_eq!(subline_projection_point(&f, &b, &c), Ok(p));
    }

    #[test]
    fn tangent_subplane_is_not_its_own_projection() {
        let f = FieldCtx::new(2, None).unwrap();
        let pi = Subplane::canonical(&f);
        let l = tangent_line_at(&f, &pi, &pi.points[0]).unwrap();
        let r = verify_tangent_nonprojection(&f, &pi, &l).unwrap();
        assert_eq!(r.splash_size, 5);
        assert_eq!(r.witnesses, 0);
        assert!(r.sizes_off_subplane_lines.iter().all(|&k| k > 5));
    }
}
