//! Splashes of a subplane onto a line, carriers, and the cyclic group fixing
//! a subplane together with an exterior line.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::field::{FieldCtx, FqElem, Fq3Elem};
use crate::pg1::{LineFrame, Mobius, Param, ParamSet};
use crate::plane::{
    conjugate_line, fixed_lines, fixed_points, incidence, meet, Homography, PlaneError, ProjLine,
    ProjPoint, Subplane,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplashError {
    #[error("line meets the subplane in at least two points")]
    SecantLine,
    #[error("line is not exterior to the subplane")]
    NotExterior,
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplashKind {
    /// `E1, E2` on the host line; `E3` is the third conjugate point.
    Exterior { carriers: [ProjPoint; 2], third_conjugate: ProjPoint },
    Tangent { centre: ProjPoint },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splash {
    pub host: ProjLine,
    /// Sorted.
    pub points: Vec<ProjPoint>,
    pub kind: SplashKind,
}

impl Splash {
    pub fn is_exterior(&self) -> bool {
        matches!(self.kind, SplashKind::Exterior { .. })
    }

    pub fn carriers(&self) -> Option<[ProjPoint; 2]> {
        match self.kind {
            SplashKind::Exterior { carriers, .. } => Some(carriers),
            SplashKind::Tangent { .. } => None,
        }
    }

    pub fn third_conjugate(&self) -> Option<ProjPoint> {
        match self.kind {
            SplashKind::Exterior { third_conjugate, .. } => Some(third_conjugate),
            SplashKind::Tangent { .. } => None,
        }
    }

    pub fn centre(&self) -> Option<ProjPoint> {
        match self.kind {
            SplashKind::Tangent { centre } => Some(centre),
            SplashKind::Exterior { .. } => None,
        }
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

/// `(1, tau, tau^2)`.
pub fn canonical_carrier(f: &FieldCtx) -> ProjPoint {
    let t = f.tau();
    ProjPoint::new(f, [Fq3Elem::ONE, t, f.mul(t, t)]).unwrap()
}

/// The exterior line `[-tau tau^q, tau^q + tau, -1]` of PG(2, q).
pub fn canonical_line(f: &FieldCtx) -> ProjLine {
    let t = f.tau();
    let tq = f.frobenius(t, 1);
    ProjLine::new(f, [f.neg(f.mul(t, tq)), f.add(tq, t), f.neg(Fq3Elem::ONE)]).unwrap()
}

/// Companion matrix of the defining cubic; it fixes `(1, tau, tau^2)`.
pub fn companion_matrix(f: &FieldCtx) -> Homography {
    let (t0, t1, t2) = f.poly();
    let (o, z) = (Fq3Elem::ONE, Fq3Elem::ZERO);
    Homography::new(f, [[z, o, z], [z, z, o], [t0.into(), t1.into(), t2.into()]]).unwrap()
}

fn points_in_line(f: &FieldCtx, pi: &Subplane, l: &ProjLine) -> Vec<ProjPoint> {
    pi.points.iter().filter(|p| incidence(f, p, l)).copied().collect()
}

/// The splash of `pi` onto `l`: where the lines of `pi` meet `l`.
pub fn splash(f: &FieldCtx, pi: &Subplane, l: &ProjLine) -> Result<Splash, SplashError> {
    let common = points_in_line(f, pi, l);
    if common.len() >= 2 {
        return Err(SplashError::SecantLine);
    }
    let mut points: Vec<ProjPoint> =
        pi.lines.iter().map(|m| meet(f, m, l)).collect::<Result<_, _>>()?;
    points.sort();
    points.dedup();
    let kind = match common.first() {
        Some(&centre) => SplashKind::Tangent { centre },
        None => {
            let [e1, e2, e3] = carriers(f, pi, l)?;
            SplashKind::Exterior { carriers: [e1, e2], third_conjugate: e3 }
        }
    };
    Ok(Splash { host: *l, points, kind })
}

/// `[E1, E2, E3]`: `E1 = l ∩ n`, `E2 = l ∩ m`, `E3 = m ∩ n` where `m`, `n` are
/// the first and second conjugates of `l`. With this labelling the conjugacy
/// map sends `E1 -> E2 -> E3`.
pub fn carriers(f: &FieldCtx, pi: &Subplane, l: &ProjLine) -> Result<[ProjPoint; 3], SplashError> {
    if !points_in_line(f, pi, l).is_empty() {
        return Err(SplashError::NotExterior);
    }
    let m = conjugate_line(f, pi, l, 1);
    let n = conjugate_line(f, pi, l, 2);
    Ok([meet(f, l, &n)?, meet(f, l, &m)?, meet(f, &m, &n)?])
}

/// The homography carrying `(PG(2,q), canonical_line)` onto `(pi, l)`.
pub fn carrying_homography(
    f: &FieldCtx,
    pi: &Subplane,
    l: &ProjLine,
) -> Result<Homography, SplashError> {
    let [e1, ..] = carriers(f, pi, l)?;
    // internal coordinates of E1 are GF(q)-independent; their tau-coefficients
    // give a GF(q) matrix K with K (1, tau, tau^2) = E1'
    let internal = pi.gen.inverse().apply_point(f, &e1);
    let rows = internal.coords().map(|x| f.coeffs(x).map(Fq3Elem::from));
    let k = Homography::new(f, rows)?;
    Ok(pi.gen.compose(f, &k))
}

/// The cyclic group of order `q^2 + q + 1` fixing a subplane and an exterior line.
#[derive(Debug, Clone)]
pub struct SingerGroup {
    pub generator: Homography,
    pub order: usize,
    /// `[E1, E2, E3]`.
    pub fixed_points: [ProjPoint; 3],
    /// `[l, m, n]`.
    pub fixed_lines: [ProjLine; 3],
}

pub fn singer_group(f: &FieldCtx, pi: &Subplane, l: &ProjLine) -> Result<SingerGroup, SplashError> {
    let fixed_points = carriers(f, pi, l)?;
    let h = carrying_homography(f, pi, l)?;
    let generator = h.compose(f, &companion_matrix(f)).compose(f, &h.inverse());
    Ok(SingerGroup {
        generator,
        order: f.norm_exponent(),
        fixed_points,
        fixed_lines: [*l, conjugate_line(f, pi, l, 1), conjugate_line(f, pi, l, 2)],
    })
}

/// Computed properties of a Singer group, for verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingerCheck {
    pub order: Option<usize>,
    pub point_orbit_on_subplane: usize,
    pub line_orbit_on_subplane: usize,
    pub fixed_points: Vec<ProjPoint>,
    pub fixed_lines: Vec<ProjLine>,
    /// Sizes of all non-trivial point orbits in the plane.
    pub other_point_orbit_sizes: Vec<usize>,
    pub preserves_subplane: bool,
}

impl SingerGroup {
    pub fn point_orbit(&self, f: &FieldCtx, p: &ProjPoint) -> Vec<ProjPoint> {
        let mut orbit = vec![*p];
        let mut cur = self.generator.apply_point(f, p);
        while cur != *p {
            orbit.push(cur);
            cur = self.generator.apply_point(f, &cur);
        }
        orbit
    }

    pub fn line_orbit(&self, f: &FieldCtx, l: &ProjLine) -> Vec<ProjLine> {
        let mut orbit = vec![*l];
        let mut cur = self.generator.apply_line(f, l);
        while cur != *l {
            orbit.push(cur);
            cur = self.generator.apply_line(f, &cur);
        }
        orbit
    }

    /// Orbit size of a point set under the group.
    pub fn set_orbit_size(&self, f: &FieldCtx, set: &[ProjPoint]) -> usize {
        let mut start = set.to_vec();
        start.sort();
        let mut cur = start.clone();
        for k in 1..=self.order {
            let mut next: Vec<ProjPoint> =
                cur.iter().map(|p| self.generator.apply_point(f, p)).collect();
            next.sort();
            if next == start {
                return k;
            }
            cur = next;
        }
        unreachable!("generator has order {}", self.order)
    }

    pub fn check(&self, f: &FieldCtx, pi: &Subplane) -> SingerCheck {
        let g = &self.generator;
        let mut image: Vec<ProjPoint> = pi.points.iter().map(|p| g.apply_point(f, p)).collect();
        image.sort();
        let mut seen = HashSet::new();
        let mut other = Vec::new();
        let fixed = fixed_points(f, g);
        for p in ProjPoint::all(f) {
            if seen.contains(&p) || fixed.contains(&p) || pi.contains_point(&p) {
                continue;
            }
            let orbit = self.point_orbit(f, &p);
            other.push(orbit.len());
            seen.extend(orbit);
        }
        other.sort();
        other.dedup();
        SingerCheck {
            order: g.order(f, self.order + 1),
            point_orbit_on_subplane: self.point_orbit(f, &pi.points[0]).len(),
            line_orbit_on_subplane: self.line_orbit(f, &pi.lines[0]).len(),
            fixed_points: fixed,
            fixed_lines: fixed_lines(f, g),
            other_point_orbit_sizes: other,
            preserves_subplane: image == pi.points,
        }
    }
}

/// Coordinates on the host of an exterior splash: `E1 -> 0`, `E2 -> ∞`, `E1 + E2 -> 1`.
pub fn line_coordinates(f: &FieldCtx, s: &Splash) -> Result<LineFrame, SplashError> {
    let [e1, e2] = s.carriers().ok_or(SplashError::NotExterior)?;
    Ok(LineFrame::new(f, e1, e2)?)
}

/// Parameters of the splash points in its own frame.
pub fn theta_image(f: &FieldCtx, s: &Splash) -> Result<ParamSet, SplashError> {
    Ok(line_coordinates(f, s)?.params_of(f, &s.points))
}

/// Two homographies of the host line preserving an exterior splash: `gamma`
/// fixes both carriers, `delta` swaps them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizerPair {
    pub gamma: Mobius,
    pub delta: Mobius,
}

/// In splash coordinates `gamma = diag(tau, tau^q)`, i.e. `theta -> tau^(1-q) theta`,
/// and `delta: theta -> c / theta`. The splash is a norm fiber `N(theta) = f0`;
/// `c = 1` when `f0^2 = 1` (the canonical splash), otherwise the first `c` with
/// `N(c) = f0^2`.
pub fn stabilizer_pair(f: &FieldCtx, s: &Splash) -> Result<StabilizerPair, SplashError> {
    let image = theta_image(f, s)?;
    let first = image.iter().next().and_then(|p| p.finite()).ok_or(SplashError::NotExterior)?;
    let f0 = f.norm(first);
    let sq = f.fq_mul(f0, f0);
    let c = if sq == FqElem::ONE {
        Fq3Elem::ONE
    } else {
        f.solve_norm_eq(sq).expect("nonzero")[0]
    };
    let t = f.tau();
    let z = Fq3Elem::ZERO;
    let gamma = Mobius::new(f, [[t, z], [z, f.frobenius(t, 1)]]).unwrap();
    let delta = Mobius::new(f, [[z, c], [Fq3Elem::ONE, z]]).unwrap();
    Ok(StabilizerPair { gamma, delta })
}

/// Order of the subgroup of PGL(2, q^3) generated by `gens`.
pub fn generated_group_order(f: &FieldCtx, gens: &[Mobius]) -> usize {
    let mut seen: HashSet<Mobius> = HashSet::new();
    let mut queue = VecDeque::from([Mobius::identity()]);
    seen.insert(Mobius::identity());
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.compose(f, h);
            if seen.insert(gh) {
                queue.push_back(gh);
            }
        }
    }
    seen.len()
}

/// Number of elements of PGL(2, q^3) mapping `set` onto itself.
pub fn full_stabilizer_order(f: &FieldCtx, set: &ParamSet) -> usize {
    Mobius::all(f).filter(|m| m.apply_set(f, set) == *set).count()
}

/// The splash `{E + theta E^q : N(theta) = -1}` predicted for PG(2, q) and the
/// canonical line, built directly from the parameterization.
pub fn canonical_splash_formula(f: &FieldCtx) -> Vec<ProjPoint> {
    let e = canonical_carrier(f);
    let eq = e.frobenius(f, 1);
    let frame = LineFrame::new(f, e, eq).unwrap();
    let fiber: ParamSet =
        f.solve_norm_eq(f.minus_one()).unwrap().into_iter().map(Param::Finite).collect();
    frame.points_of(f, &fiber)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{conjugate_point, join, subplane_from_quadrangle};

    #[test]
    fn canonical_line_is_exterior_with_predicted_splash() {
        for q in [2, 3, 4, 5] {
            let f = FieldCtx::new(q, None).unwrap();
            let pi = Subplane::canonical(&f);
            let l = canonical_line(&f);
            let s = splash(&f, &pi, &l).unwrap();
            assert!(s.is_exterior());
            assert_eq!(s.points.len(), f.norm_exponent());
            assert_eq!(s.points, canonical_splash_formula(&f));
            let e = canonical_carrier(&f);
            assert_eq!(s.carriers().unwrap(), [e, e.frobenius(&f, 1)]);
            assert_eq!(s.third_conjugate().unwrap(), e.frobenius(&f, 2));
            for c in s.carriers().unwrap() {
                assert!(!s.contains(&c));
                assert!(incidence(&f, &c, &l));
            }
        }
    }

    #[test]
    fn q2_splash_is_line_minus_carriers() {
        let f = FieldCtx::new(2, None).unwrap();
        let l = canonical_line(&f);
        let s = splash(&f, &Subplane::canonical(&f), &l).unwrap();
        let [e1, e2] = s.carriers().unwrap();
        let rest: Vec<_> = crate::plane::points_on_line(&f, &l)
            .into_iter()
            .filter(|p| *p != e1 && *p != e2)
            .collect();
        assert_eq!(s.points, rest);
    }

    #[test]
    fn secant_and_tangent() {
        let f = FieldCtx::new(3, None).unwrap();
        let pi = Subplane::canonical(&f);
        let inf = ProjLine::new(&f, [Fq3Elem::ZERO, Fq3Elem::ZERO, Fq3Elem::ONE]).unwrap();
        assert_eq!(splash(&f, &pi, &inf), Err(SplashError::SecantLine));
        assert_eq!(carriers(&f, &pi, &inf), Err(SplashError::NotExterior));
        // [1, tau, 0] meets PG(2,q) only in (0,0,1)
        let t = ProjLine::new(&f, [Fq3Elem::ONE, f.tau(), Fq3Elem::ZERO]).unwrap();
        let s = splash(&f, &pi, &t).unwrap();
        let centre = ProjPoint::new(&f, [Fq3Elem::ZERO, Fq3Elem::ZERO, Fq3Elem::ONE]).unwrap();
        assert_eq!(s.centre(), Some(centre));
        assert_eq!(s.points.len(), 10);
        assert!(s.contains(&centre));
        assert!(line_coordinates(&f, &s).is_err());
    }

    #[test]
    fn each_line_of_subplane_hits_one_splash_point() {
        let f = FieldCtx::new(3, None).unwrap();
        let pi = Subplane::canonical(&f);
        let s = splash(&f, &pi, &canonical_line(&f)).unwrap();
        for p in &s.points {
            assert_eq!(pi.lines.iter().filter(|m| incidence(&f, p, m)).count(), 1);
        }
    }

    #[test]
    fn canonical_singer_group() {
        for q in [2, 3] {
            let f = FieldCtx::new(q, None).unwrap();
            let pi = Subplane::canonical(&f);
            let l = canonical_line(&f);
            let g = singer_group(&f, &pi, &l).unwrap();
            assert_eq!(g.generator, companion_matrix(&f));
            let n = f.norm_exponent();
            let c = g.check(&f, &pi);
            assert_eq!(c.order, Some(n));
            assert_eq!(c.point_orbit_on_subplane, n);
            assert_eq!(c.line_orbit_on_subplane, n);
            let mut fp = g.fixed_points.to_vec();
            fp.sort();
            assert_eq!(c.fixed_points, fp);
            let mut fl = g.fixed_lines.to_vec();
            fl.sort();
            assert_eq!(c.fixed_lines, fl);
            assert_eq!(c.other_point_orbit_sizes, vec![n]);
            assert!(c.preserves_subplane);
        }
    }

    #[test]
    fn transpose_inverse_companion_fixes_other_line() {
        let f = FieldCtx::new(3, None).unwrap();
        let t = companion_matrix(&f);
        let phi_prime = Homography::new(&f, crate::plane::transpose(t.inverse_matrix())).unwrap();
        let tau = f.tau();
        let l = ProjLine::new(&f, [Fq3Elem::ONE, tau, f.mul(tau, tau)]).unwrap();
        let want: Vec<ProjLine> = {
            let mut v = vec![l, l.frobenius(&f, 1), l.frobenius(&f, 2)];
            v.sort();
            v
        };
        assert_eq!(fixed_lines(&f, &phi_prime), want);
        let tp: Vec<ProjPoint> = {
            let e = canonical_carrier(&f);
            let mut v = vec![e, e.frobenius(&f, 1), e.frobenius(&f, 2)];
            v.sort();
            v
        };
        assert_eq!(fixed_points(&f, &t), tp);
    }

    #[test]
    fn general_pair_singer_group() {
        let f = FieldCtx::new(3, None).unwrap();
        let pts: Vec<ProjPoint> = ProjPoint::all(&f).collect();
        let quad = [pts[40], pts[123], pts[377], pts[600]];
        let pi = subplane_from_quadrangle(&f, &quad).unwrap();
        let l = ProjLine::all(&f).find(|l| splash(&f, &pi, l).map(|s| s.is_exterior()) == Ok(true));
        let l = l.unwrap();
        let g = singer_group(&f, &pi, &l).unwrap();
        let c = g.check(&f, &pi);
        assert_eq!(c.order, Some(13));
        assert!(c.preserves_subplane);
        assert_eq!(c.fixed_points.len(), 3);
        assert_eq!(c.fixed_lines.len(), 3);
        let s = splash(&f, &pi, &l).unwrap();
        let mut img: Vec<_> = s.points.iter().map(|p| g.generator.apply_point(&f, p)).collect();
        img.sort();
        assert_eq!(img, s.points);
        assert_eq!(g.point_orbit(&f, &s.points[0]).len(), 13);
        // conjugacy permutes the carriers
        let [e1, e2, e3] = g.fixed_points;
        assert_eq!(conjugate_point(&f, &pi, &e1, 1), e2);
        assert_eq!(conjugate_point(&f, &pi, &e2, 1), e3);
        assert_eq!(join(&f, &e1, &e2).unwrap(), l);
    }

    #[test]
    fn line_coordinates_of_canonical_splash() {
        for q in [2, 3] {
            let f = FieldCtx::new(q, None).unwrap();
            let s = splash(&f, &Subplane::canonical(&f), &canonical_line(&f)).unwrap();
            let fr = line_coordinates(&f, &s).unwrap();
            let [e1, e2] = s.carriers().unwrap();
            assert_eq!(fr.to_param(&f, &e1), Param::Finite(Fq3Elem::ZERO));
            assert_eq!(fr.to_param(&f, &e2), Param::Infinity);
            let want: ParamSet =
                f.solve_norm_eq(f.minus_one()).unwrap().into_iter().map(Param::Finite).collect();
            assert_eq!(theta_image(&f, &s).unwrap(), want);
        }
    }

    #[test]
    fn stabilizer_pair_preserves_splash() {
        for q in [2, 3] {
            let f = FieldCtx::new(q, None).unwrap();
            let s = splash(&f, &Subplane::canonical(&f), &canonical_line(&f)).unwrap();
            let img = theta_image(&f, &s).unwrap();
            let sp = stabilizer_pair(&f, &s).unwrap();
            assert_eq!(sp.gamma.apply_set(&f, &img), img);
            assert_eq!(sp.delta.apply_set(&f, &img), img);
            let zero = Param::Finite(Fq3Elem::ZERO);
            assert_eq!(sp.delta.apply(&f, zero), Param::Infinity);
            assert_eq!(sp.gamma.apply(&f, zero), zero);
            assert_eq!(sp.delta.matrix()[0][1], Fq3Elem::ONE);
            // gamma(theta) = tau^(1-q) theta
            let k = f.tau_pow(f.mult_order() + 1 - q as usize);
            assert_eq!(f.norm(k), FqElem::ONE);
            assert_eq!(sp.gamma.apply(&f, Param::Finite(Fq3Elem::ONE)), Param::Finite(k));
            let n = f.norm_exponent();
            assert_eq!(generated_group_order(&f, &[sp.gamma, sp.delta]), 2 * n);
            assert_eq!(full_stabilizer_order(&f, &img), 2 * n);
        }
    }
}
