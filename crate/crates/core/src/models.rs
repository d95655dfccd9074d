//! Three models of a splash on PG(1, q^3): Bruck covers, Sherk surfaces and
//! GF(q)-linear sets of rank 3.
//!
//! Points of PG(1, q^3) are [`Param`]s; a vector `(u, v)` is the parameter
//! `u / v`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, FqElem, Fq3Elem};
use crate::pg1::{all_params, find_equivalence, LineFrame, Mobius, Param, ParamSet};
use crate::plane::{
    from_columns, incidence, Homography, PlaneError, ProjLine, ProjPoint, Subplane,
};
use crate::splash::{
    canonical_carrier, canonical_line, splash, theta_image, Splash,
    SplashError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("cover parameters need f != 0 and a != b")]
    BadParameters,
    #[error("Sherk surface parameters are all zero")]
    AllZeroParameters,
    #[error("basis is dependent over GF(q)")]
    DependentBasis,
    #[error("no type I cover fits the splash")]
    NoFit,
    #[error(transparent)]
    Splash(#[from] SplashError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// A cover of CG(3, q) in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cover {
    /// `N(x - a) = f`
    TypeI { a: Fq3Elem, f: FqElem },
    /// `N((x - a) / (x - b)) = f`
    TypeII { a: Fq3Elem, b: Fq3Elem, f: FqElem },
}

pub fn cover_points(f: &FieldCtx, c: &Cover) -> Result<ParamSet, ModelError> {
    match *c {
        Cover::TypeI { a, f: v } => {
            if v.is_zero() {
                return Err(ModelError::BadParameters);
            }
            Ok(f.elements().filter(|&x| f.norm(f.sub(x, a)) == v).map(Param::Finite).collect())
        }
        Cover::TypeII { a, b, f: v } => {
            if v.is_zero() || a == b {
                return Err(ModelError::BadParameters);
            }
            let mut out: ParamSet = f
                .elements()
                .filter(|&x| x != b && f.norm(f.div(f.sub(x, a), f.sub(x, b))) == v)
                .map(Param::Finite)
                .collect();
            // (x - a)/(x - b) -> 1 at infinity
            if v == FqElem::ONE {
                out.insert(Param::Infinity);
            }
            Ok(out)
        }
    }
}

/// Every cover point set, deduplicated.
pub fn all_cover_sets(f: &FieldCtx) -> BTreeSet<Vec<Param>> {
    let nonzero: Vec<FqElem> = f.base_elements().filter(|x| !x.is_zero()).collect();
    let mut out = BTreeSet::new();
    for a in f.elements() {
        for &v in &nonzero {
            let s = cover_points(f, &Cover::TypeI { a, f: v }).unwrap();
            out.insert(s.into_iter().collect());
            for b in f.elements().filter(|&b| b != a) {
                let s = cover_points(f, &Cover::TypeII { a, b, f: v }).unwrap();
                out.insert(s.into_iter().collect());
            }
        }
    }
    out
}

/// `f N(z) + T(alpha^(q^2) z^(q+1)) + T(delta z) + g = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SherkSurface {
    pub f: FqElem,
    pub alpha: Fq3Elem,
    pub delta: Fq3Elem,
    pub g: FqElem,
}

impl SherkSurface {
    fn is_zero(&self) -> bool {
        self.f.is_zero() && self.alpha.is_zero() && self.delta.is_zero() && self.g.is_zero()
    }

    fn eval(&self, ctx: &FieldCtx, z: Fq3Elem) -> FqElem {
        let q = ctx.q() as u64;
        let a = ctx.frobenius(self.alpha, 2);
        let quad = ctx.trace(ctx.mul(a, ctx.pow(z, q + 1)));
        let lin = ctx.trace(ctx.mul(self.delta, z));
        let lead = ctx.fq_mul(self.f, ctx.norm(z));
        ctx.fq_add(ctx.fq_add(lead, quad), ctx.fq_add(lin, self.g))
    }
}

/// Solutions of a Sherk surface. The equation has no value at ∞; we take ∞
/// to lie on the surface exactly when the norm coefficient vanishes.
pub fn sherk_points(ctx: &FieldCtx, s: &SherkSurface) -> Result<ParamSet, ModelError> {
    if s.is_zero() {
        return Err(ModelError::AllZeroParameters);
    }
    let mut out: ParamSet =
        ctx.elements().filter(|&z| s.eval(ctx, z).is_zero()).map(Param::Finite).collect();
    if s.f.is_zero() {
        out.insert(Param::Infinity);
    }
    Ok(out)
}

/// All Sherk surfaces up to a common GF(q)-scalar, bucketed by size.
#[derive(Debug, Clone, Serialize)]
pub struct SherkCensus {
    /// Number of parameter classes per point-set size.
    pub classes_by_size: BTreeMap<usize, usize>,
    /// Distinct point sets per size.
    #[serde(skip)]
    pub sets_by_size: BTreeMap<usize, BTreeSet<Vec<Param>>>,
}

pub fn sherk_size_census(ctx: &FieldCtx) -> SherkCensus {
    let q = ctx.q() as usize;
    let n = ctx.size();
    let mut classes_by_size = BTreeMap::new();
    let mut sets_by_size: BTreeMap<usize, BTreeSet<Vec<Param>>> = BTreeMap::new();
    for fl in 0..q {
        for alpha in ctx.elements() {
            for delta in ctx.elements() {
                for gl in 0..q {
                    let s = SherkSurface {
                        f: ctx.base(fl as u32).unwrap(),
                        alpha,
                        delta,
                        g: ctx.base(gl as u32).unwrap(),
                    };
                    if s.is_zero() || !leading_one(ctx, &s) {
                        continue;
                    }
                    let pts = sherk_points(ctx, &s).unwrap();
                    let k = pts.len();
                    debug_assert!(k <= n + 1);
                    *classes_by_size.entry(k).or_insert(0) += 1;
                    sets_by_size.entry(k).or_default().insert(pts.into_iter().collect());
                }
            }
        }
    }
    SherkCensus { classes_by_size, sets_by_size }
}

/// Scalar class representative: the first nonzero GF(q)-coordinate of
/// `(f, alpha, delta, g)` is one.
fn leading_one(ctx: &FieldCtx, s: &SherkSurface) -> bool {
    let first = std::iter::once(s.f)
        .chain(ctx.coeffs(s.alpha))
        .chain(ctx.coeffs(s.delta))
        .chain(std::iter::once(s.g))
        .find(|x| !x.is_zero());
    first == Some(FqElem::ONE)
}

/// The GF(q)-span of three vectors of GF(q^3)^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearSet {
    pub basis: [[Fq3Elem; 2]; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSetPoints {
    pub points: ParamSet,
    pub scattered: bool,
}

pub fn linear_set_points(f: &FieldCtx, l: &LinearSet) -> Result<LinearSetPoints, ModelError> {
    let mut points = ParamSet::new();
    for c0 in f.base_elements() {
        for c1 in f.base_elements() {
            for c2 in f.base_elements() {
                let cs = [c0, c1, c2];
                if cs.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let mut v = [Fq3Elem::ZERO; 2];
                for (c, b) in cs.iter().zip(&l.basis) {
                    for k in 0..2 {
                        v[k] = f.add(v[k], f.mul((*c).into(), b[k]));
                    }
                }
                points.insert(Param::from_vector(f, v).ok_or(ModelError::DependentBasis)?);
            }
        }
    }
    let scattered = points.len() == f.norm_exponent();
    Ok(LinearSetPoints { points, scattered })
}

/// `{(x, x^q)}` with basis `(tau^i, tau^(iq))`.
pub fn pseudoregulus_linear_set(f: &FieldCtx) -> LinearSet {
    let b = |i: usize| {
        let x = f.tau_pow(i);
        [x, f.frobenius(x, 1)]
    };
    LinearSet { basis: [b(0), b(1), b(2)] }
}

/// A type I cover matching the splash in its own coordinates. The search runs
/// over `a` in index order, then `f`.
pub fn fit_cover(f: &FieldCtx, s: &Splash) -> Result<Cover, ModelError> {
    let image = theta_image(f, s)?;
    fit_cover_to(f, &image)
}

pub fn fit_cover_to(f: &FieldCtx, image: &ParamSet) -> Result<Cover, ModelError> {
    if image.contains(&Param::Infinity) {
        return Err(ModelError::NoFit);
    }
    for a in f.elements() {
        for v in f.base_elements().filter(|x| !x.is_zero()) {
            let c = Cover::TypeI { a, f: v };
            if cover_points(f, &c)? == *image {
                return Ok(c);
            }
        }
    }
    Err(ModelError::NoFit)
}

/// One splash with prescribed carriers on a line, realized by a subplane.
#[derive(Debug, Clone)]
pub struct CarrierSplash {
    /// Norm value of the fiber in the frame `E1 -> 0`, `E2 -> ∞`.
    pub norm: FqElem,
    pub points: Vec<ProjPoint>,
    /// A subplane whose splash on the host is `points`.
    pub subplane: Subplane,
}

/// The `q - 1` splashes with carriers `E1, E2` on `host`, one per norm fiber
/// of the frame `E1 + theta E2`; each one is realized as the splash of an
/// explicit subplane.
pub fn disjoint_splashes_with_carriers(
    f: &FieldCtx,
    e1: &ProjPoint,
    e2: &ProjPoint,
    host: &ProjLine,
) -> Result<Vec<CarrierSplash>, ModelError> {
    let frame = LineFrame::new(f, *e1, *e2)?;
    if frame.host != *host {
        return Err(PlaneError::NotCollinear.into());
    }
    let w = ProjPoint::all(f).find(|p| !incidence(f, p, host)).expect("plane has points off a line");
    let e = canonical_carrier(f);
    let base = from_columns([e.coords(), e.frobenius(f, 1).coords(), e.frobenius(f, 2).coords()]);
    let base_inv = Homography::new(f, base)?.inverse();
    let mut out = Vec::new();
    for v in f.base_elements().filter(|x| !x.is_zero()) {
        // the canonical splash is the fiber N = -1; scaling E2 by lambda
        // multiplies parameters by lambda, so N(lambda) = -v moves it to v
        let lambda = f.solve_norm_eq(f.fq_neg(v)).expect("nonzero")[0];
        let cols = [
            e1.coords(),
            crate::plane::scale(f, lambda, &e2.coords()),
            w.coords(),
        ];
        let h = Homography::new(f, from_columns(cols))?.compose(f, &base_inv);
        let pi = Subplane::from_homography(f, h);
        let fiber: ParamSet =
            f.solve_norm_eq(v).expect("nonzero").into_iter().map(Param::Finite).collect();
        out.push(CarrierSplash { norm: v, points: frame.points_of(f, &fiber), subplane: pi });
    }
    Ok(out)
}

/// All exterior splashes on one line in the coordinates of a seed splash
/// (the seed being a norm fiber with carriers `0` and `∞`), found as the orbit
/// of the seed under PGL(2, q^3). Each set carries the image of the seed's
/// carrier pair.
#[derive(Debug, Clone)]
pub struct SplashOrbit {
    pub classes: BTreeMap<Vec<Param>, [Param; 2]>,
    /// Sets reached twice with different carrier pairs.
    pub carrier_conflicts: usize,
}

impl SplashOrbit {
    pub fn contains(&self, s: &ParamSet) -> bool {
        self.classes.contains_key(&s.iter().copied().collect::<Vec<_>>())
    }

    pub fn carriers_of(&self, s: &ParamSet) -> Option<[Param; 2]> {
        self.classes.get(&s.iter().copied().collect::<Vec<_>>()).copied()
    }
}

fn sorted_pair(a: Param, b: Param) -> [Param; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

pub fn splash_orbit(f: &FieldCtx, seed: &ParamSet) -> SplashOrbit {
    let (o, z, t) = (Fq3Elem::ONE, Fq3Elem::ZERO, f.tau());
    // translations, scalings and the inversion generate PGL(2, q^3)
    let gens = [
        Mobius::new(f, [[o, o], [z, o]]).unwrap(),
        Mobius::new(f, [[t, z], [z, o]]).unwrap(),
        Mobius::new(f, [[z, o], [o, z]]).unwrap(),
    ];
    let start: Vec<Param> = seed.iter().copied().collect();
    let mut classes = BTreeMap::new();
    classes.insert(start.clone(), sorted_pair(Param::Finite(z), Param::Infinity));
    let mut queue = std::collections::VecDeque::from([start]);
    let mut carrier_conflicts = 0;
    while let Some(set) = queue.pop_front() {
        let [c1, c2] = classes[&set];
        for g in &gens {
            let mut image: Vec<Param> = set.iter().map(|&p| g.apply(f, p)).collect();
            image.sort();
            let carriers = sorted_pair(g.apply(f, c1), g.apply(f, c2));
            match classes.get(&image) {
                Some(c) if *c != carriers => carrier_conflicts += 1,
                Some(_) => {}
                None => {
                    classes.insert(image.clone(), carriers);
                    queue.push_back(image);
                }
            }
        }
    }
    SplashOrbit { classes, carrier_conflicts }
}

/// The splashes of the orbit whose carriers are `0` and `∞`.
pub fn splashes_with_canonical_carriers(orbit: &SplashOrbit) -> Vec<ParamSet> {
    let key = sorted_pair(Param::Finite(Fq3Elem::ZERO), Param::Infinity);
    orbit
        .classes
        .iter()
        .filter(|(_, c)| **c == key)
        .map(|(s, _)| s.iter().copied().collect())
        .collect()
}

/// Homographies of PG(1, q^3) found by search between the models and the
/// canonical splash, all in the canonical splash's own coordinates.
#[derive(Debug, Clone)]
pub struct ModelEquivalences {
    pub splash_image: ParamSet,
    pub cover: ParamSet,
    pub sherk: ParamSet,
    pub linear_set: LinearSetPoints,
    /// Maps the linear set onto the splash image.
    pub linear_to_splash: Option<Mobius>,
    pub cover_fit: Cover,
}

pub fn model_equivalences(f: &FieldCtx) -> Result<ModelEquivalences, ModelError> {
    let pi = Subplane::canonical(f);
    let s = splash(f, &pi, &canonical_line(f))?;
    let splash_image = theta_image(f, &s)?;
    let minus_one = f.minus_one();
    let cover = cover_points(f, &Cover::TypeI { a: Fq3Elem::ZERO, f: minus_one })?;
    let one = FqElem::ONE;
    let sherk = sherk_points(
        f,
        &SherkSurface { f: one, alpha: Fq3Elem::ZERO, delta: Fq3Elem::ZERO, g: one },
    )?;
    let linear_set = linear_set_points(f, &pseudoregulus_linear_set(f))?;
    let linear_to_splash = find_equivalence(f, &linear_set.points, &splash_image);
    let cover_fit = fit_cover(f, &s)?;
    Ok(ModelEquivalences { splash_image, cover, sherk, linear_set, linear_to_splash, cover_fit })
}

/// `theta -> -theta`, which carries the fiber `N = 1` onto `N = -1`.
pub fn negation(f: &FieldCtx) -> Mobius {
    Mobius::new(f, [[f.neg(Fq3Elem::ONE), Fq3Elem::ZERO], [Fq3Elem::ZERO, Fq3Elem::ONE]]).unwrap()
}

/// Points of PG(1, q^3) outside a set.
pub fn complement(f: &FieldCtx, s: &ParamSet) -> ParamSet {
    all_params(f).filter(|p| !s.contains(p)).collect()
}
