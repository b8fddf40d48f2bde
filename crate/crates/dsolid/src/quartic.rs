//! Branch quartics `h₁h₂h₃h₄ = Q²` on the scroll of planes `Y_m ⊂ ℙ^{m+2}`.
//!
//! Coordinates are `z₀ … z_{m+2}`. The ridge is `z₀ = … = z_m = 0`, the point
//! `𝐪` is the ridge point with `z_{m+1} = 0` and `𝐪̄` the one with
//! `z_{m+2} = 0`. In this frame the real structure is complex conjugation
//! followed by the swap `z_{m+1} ↔ z_{m+2}`, so with rational coefficients a
//! real object is one fixed by the swap.
//!
//! A plane of the scroll is `z_j = c_j z₀` for `1 ≤ j ≤ m`; on it
//! `(z₀, z_{m+1}, z_{m+2})` are homogeneous coordinates, which ternary
//! polynomials here index as variables `0, 1, 2`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::CycleType;
use crate::poly::{frac, rat, Poly, PolyError};

/// Truncation order of the power series used by the recognizer.
const SERIES_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuarticError {
    #[error("the scroll degree m must be at least 1")]
    ScrollDegree,
    #[error("expected 4 linear forms, got {0}")]
    FactorCount(usize),
    #[error("factor h{index} is not a linear form in {nvars} variables")]
    NotLinear { index: usize, nvars: usize },
    #[error("Q is not a quadratic form in {nvars} variables")]
    NotQuadratic { nvars: usize },
    #[error("{got} factors lie in the ridge ideal, type {ty} needs {expected}")]
    RidgeCount { ty: CycleType, got: usize, expected: usize },
    #[error("Q must contain z_(m+1)·z_(m+2)")]
    MissingCrossTerm,
    #[error("Q must not contain the square of z_(m+1) or z_(m+2)")]
    ForbiddenSquare,
    #[error("the data is not fixed by the real structure: {0}")]
    NotReal(String),
    #[error("h1·h2·h3·h4 − Q² vanishes identically")]
    ZeroBranch,
    #[error("plane needs {expected} parameters, got {got}")]
    PlaneArity { got: usize, expected: usize },
    #[error("expected a ternary polynomial, got {0} variables")]
    NotTernary(usize),
    #[error("the point is not on the curve")]
    NotOnCurve,
    #[error("factor index {0} is outside 1..=4")]
    FactorIndex(usize),
    #[error("h{0} lies in the ridge ideal and cuts double-conic planes, not a trope hyperplane")]
    RidgeFactor(usize),
    #[error("no factor in the ridge ideal vanishes on this plane")]
    NotDoubleConicPlane,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The two ridge points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RidgePoint {
    /// `(z₀, z_{m+1}, z_{m+2}) = (0, 0, 1)`.
    Q,
    /// `(z₀, z_{m+1}, z_{m+2}) = (0, 1, 0)`.
    QBar,
}

impl fmt::Display for RidgePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RidgePoint::Q => "q",
            RidgePoint::QBar => "q̄",
        })
    }
}

/// Local type of a curve germ, as far as the recognizer resolves it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalForm {
    Smooth,
    /// An `A_k` singularity, `y² = x^{k+1}`.
    A(u32),
    /// Vanishing quadratic part, or a corank-one germ with no isolated residual.
    Degenerate,
}

/// The singularity types that occur at the ridge points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityType {
    /// Smooth and tangent to the ridge with contact order two.
    A0Tangent,
    A1,
    A2,
    A3,
    Other,
}

impl SingularityType {
    /// The type expected at the ridge points for a surface of type `ty`.
    pub fn expected_for(ty: CycleType) -> Self {
        match ty {
            CycleType::A0 => SingularityType::A0Tangent,
            CycleType::A1 => SingularityType::A1,
            CycleType::A2 => SingularityType::A2,
            CycleType::A3 => SingularityType::A3,
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityType::A0Tangent => "A0-tangent",
            SingularityType::A1 => "A1",
            SingularityType::A2 => "A2",
            SingularityType::A3 => "A3",
            SingularityType::Other => "other",
        })
    }
}

/// A branch quartic given by its factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuarticModel {
    cycle_type: CycleType,
    m: usize,
    h: Vec<Poly>,
    q: Poly,
    /// `h₁h₂h₃h₄ − Q²` as built; verifications compare it against the current factors.
    branch: Poly,
    /// Scroll parameters `t` whose planes `z_j = t^j z₀` are double-conic planes.
    #[serde(with = "rational_strings")]
    double_conic_parameters: Vec<BigRational>,
}

mod rational_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

impl QuarticModel {
    /// Validates the factor data and records the branch polynomial.
    pub fn new(cycle_type: CycleType, m: usize, h: Vec<Poly>, q: Poly) -> Result<Self, QuarticError> {
        if m == 0 {
            return Err(QuarticError::ScrollDegree);
        }
        let nvars = m + 3;
        if h.len() != 4 {
            return Err(QuarticError::FactorCount(h.len()));
        }
        for (i, f) in h.iter().enumerate() {
            if f.nvars() != nvars || f.homogeneous_degree() != Some(1) {
                return Err(QuarticError::NotLinear { index: i + 1, nvars });
            }
        }
        if q.nvars() != nvars || q.homogeneous_degree() != Some(2) {
            return Err(QuarticError::NotQuadratic { nvars });
        }
        let ridge: Vec<usize> = (0..=m).collect();
        let got = h.iter().filter(|f| f.in_monomial_ideal(&ridge)).count();
        let expected = cycle_type.nu() + 1;
        if got != expected {
            return Err(QuarticError::RidgeCount {
                ty: cycle_type,
                got,
                expected,
            });
        }
        let (a, b) = (m + 1, m + 2);
        let pair = |i: usize, j: usize| {
            let mut e = vec![0; nvars];
            e[i] += 1;
            e[j] += 1;
            e
        };
        if q.coeff(&pair(a, b)).is_zero() {
            return Err(QuarticError::MissingCrossTerm);
        }
        if !q.coeff(&pair(a, a)).is_zero() || !q.coeff(&pair(b, b)).is_zero() {
            return Err(QuarticError::ForbiddenSquare);
        }
        if q.swap_vars(a, b) != q {
            return Err(QuarticError::NotReal("Q is not swap-symmetric".into()));
        }
        let outside: Vec<&Poly> = h.iter().filter(|f| !f.in_monomial_ideal(&ridge)).collect();
        for f in &outside {
            let swapped = f.swap_vars(a, b);
            if !outside.iter().any(|g| swapped.ratio_to(g).is_some()) {
                return Err(QuarticError::NotReal(format!(
                    "the conjugate of {f} is not among the factors"
                )));
            }
        }
        let product = h.iter().fold(Poly::one(nvars), |acc, f| &acc * f);
        let branch = &product - &(&q * &q);
        if branch.is_zero() {
            return Err(QuarticError::ZeroBranch);
        }
        Ok(Self {
            cycle_type,
            m,
            h,
            q,
            branch,
            double_conic_parameters: Vec::new(),
        })
    }

    pub fn cycle_type(&self) -> CycleType {
        self.cycle_type
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.m + 3
    }

    pub fn factors(&self) -> &[Poly] {
        &self.h
    }

    pub fn quadric(&self) -> &Poly {
        &self.q
    }

    pub fn branch(&self) -> &Poly {
        &self.branch
    }

    pub fn double_conic_parameters(&self) -> &[BigRational] {
        &self.double_conic_parameters
    }

    fn ridge_vars(&self) -> Vec<usize> {
        (0..=self.m).collect()
    }

    /// Whether factor `α` (one-based) lies in the ridge ideal.
    pub fn in_ridge_ideal(&self, alpha: usize) -> Result<bool, QuarticError> {
        let f = self
            .h
            .get(alpha.wrapping_sub(1))
            .ok_or(QuarticError::FactorIndex(alpha))?;
        Ok(f.in_monomial_ideal(&self.ridge_vars()))
    }

    /// One-based indices of the factors outside the ridge ideal.
    pub fn trope_indices(&self) -> Vec<usize> {
        let ridge = self.ridge_vars();
        (1..=4).filter(|&i| !self.h[i - 1].in_monomial_ideal(&ridge)).collect()
    }

    /// Replaces factor `α` without touching the recorded branch polynomial.
    pub fn replace_factor(&mut self, alpha: usize, f: Poly) -> Result<(), QuarticError> {
        let slot = self
            .h
            .get_mut(alpha.wrapping_sub(1))
            .ok_or(QuarticError::FactorIndex(alpha))?;
        *slot = f;
        Ok(())
    }

    /// Replaces `Q` without touching the recorded branch polynomial.
    pub fn replace_quadric(&mut self, q: Poly) {
        self.q = q;
    }

    /// Images of `z₀ … z_{m+2}` in the plane coordinates `(z₀, z_{m+1}, z_{m+2})`.
    fn plane_images(&self, c: &[BigRational]) -> Result<Vec<Poly>, QuarticError> {
        if c.len() != self.m {
            return Err(QuarticError::PlaneArity {
                got: c.len(),
                expected: self.m,
            });
        }
        let x0 = Poly::var(3, 0);
        let mut images = vec![x0.clone()];
        images.extend(c.iter().map(|cj| x0.scale(cj)));
        images.push(Poly::var(3, 1));
        images.push(Poly::var(3, 2));
        Ok(images)
    }

    /// Restricts any polynomial on `ℙ^{m+2}` to the plane `z_j = c_j z₀`.
    pub fn restrict_poly(&self, p: &Poly, c: &[BigRational]) -> Result<Poly, QuarticError> {
        Ok(p.substitute(&self.plane_images(c)?)?)
    }

    /// Samples a plane of the scroll on which no ridge-ideal factor vanishes.
    pub fn generic_plane<R: Rng>(&self, rng: &mut R) -> Vec<BigRational> {
        let ridge = self.ridge_vars();
        loop {
            let t = frac(nonzero(rng, 9), rng.gen_range(1..=7));
            let c = scroll_plane(self.m, &t);
            let kills = self
                .h
                .iter()
                .filter(|f| f.in_monomial_ideal(&ridge))
                .any(|f| self.restrict_poly(f, &c).map(|g| g.is_zero()).unwrap_or(true));
            if !kills {
                return c;
            }
        }
    }
}

/// `c_j = t^j` for `j = 1..m`: the plane over the point `t` of the rational normal curve.
pub fn scroll_plane(m: usize, t: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(m);
    let mut p = BigRational::one();
    for _ in 0..m {
        p = &p * t;
        out.push(p.clone());
    }
    out
}

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Builds a random model of type `ty` on `Y_m`, reproducibly from `seed`.
///
/// The non-ridge factors come first. Each has equal, nonzero coefficients on
/// `z_{m+1}` and `z_{m+2}`, so it is real and nonzero at both ridge points.
/// Each ridge-ideal factor is chosen with a rational root `t₀` on the rational
/// normal curve, giving an exactly computable double-conic plane.
pub fn build_quartic(ty: CycleType, m: usize, seed: u64) -> Result<QuarticModel, QuarticError> {
    if m == 0 {
        return Err(QuarticError::ScrollDegree);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = m + 3;
    let (a, b) = (m + 1, m + 2);
    let n_ridge = ty.nu() + 1;
    let mut h = Vec::with_capacity(4);
    for _ in n_ridge..4 {
        let mut coeffs: Vec<BigRational> = (0..=m).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let shared = rat(nonzero(&mut rng, 5));
        coeffs.push(shared.clone());
        coeffs.push(shared);
        h.push(Poly::linear(&coeffs));
    }
    let mut roots = Vec::with_capacity(n_ridge);
    while h.len() < 4 {
        let t0 = frac(nonzero(&mut rng, 4), rng.gen_range(1..=3));
        let mut coeffs: Vec<BigRational> = (0..=m).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let rest: BigRational = coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != 1)
            .map(|(j, c)| c * num_traits::pow(t0.clone(), j))
            .fold(BigRational::zero(), |x, y| x + y);
        coeffs[1] = -rest / &t0;
        if coeffs[1].is_zero() {
            continue;
        }
        coeffs.extend([BigRational::zero(), BigRational::zero()]);
        h.push(Poly::linear(&coeffs));
        roots.push(t0);
    }
    let mono = |i: usize, j: usize| {
        let mut e = vec![0; nvars];
        e[i] += 1;
        e[j] += 1;
        e
    };
    let mut q = Poly::monomial(mono(a, b), BigRational::one());
    for i in 0..=m {
        for j in i..=m {
            q = &q + &Poly::monomial(mono(i, j), rat(rng.gen_range(-3..=3)));
        }
        let c = rat(rng.gen_range(-3..=3));
        q = &q + &Poly::monomial(mono(i, a), c.clone());
        q = &q + &Poly::monomial(mono(i, b), c);
    }
    let mut model = QuarticModel::new(ty, m, h, q)?;
    model.double_conic_parameters = roots;
    Ok(model)
}

/// Restricts the branch quartic to the plane `z_j = c_j z₀`.
pub fn restrict_to_plane(model: &QuarticModel, c: &[BigRational]) -> Result<Poly, QuarticError> {
    model.restrict_poly(model.branch(), c)
}

/// A truncated power series in one variable.
type Series = Vec<BigRational>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let mut out = vec![BigRational::zero(); SERIES_ORDER + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(SERIES_ORDER + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `P(φ(v), v)` for a polynomial `P(u, v)`.
fn eval_along(p: &Poly, phi: &Series) -> Series {
    let top = p.terms().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
    let mut powers = vec![{
        let mut one = vec![BigRational::zero(); SERIES_ORDER + 1];
        one[0] = BigRational::one();
        one
    }];
    for _ in 0..top {
        let next = series_mul(powers.last().expect("nonempty"), phi);
        powers.push(next);
    }
    let mut out = vec![BigRational::zero(); SERIES_ORDER + 1];
    for (e, c) in p.terms() {
        let shift = e[1] as usize;
        for (k, x) in powers[e[0] as usize].iter().enumerate() {
            if k + shift <= SERIES_ORDER && !x.is_zero() {
                out[k + shift] += c * x;
            }
        }
    }
    out
}

fn derivative_u(p: &Poly) -> Poly {
    Poly::from_terms(
        2,
        p.terms()
            .filter(|(e, _)| e[0] > 0)
            .map(|(e, c)| (vec![e[0] - 1, e[1]], c * BigRational::from_integer(BigInt::from(e[0])))),
    )
    .expect("two variables")
}

/// Classifies the germ at the origin of a polynomial `g(s, t)` with `g(0,0) = 0`.
///
/// A nonzero linear part means smooth. A nondegenerate quadratic part means
/// `A₁`. For a rank-one quadratic part `λu²` the critical curve `∂g/∂u = 0` is
/// solved as a power series `u = φ(v)`, and the order `r` of `g(φ(v), v)` gives
/// `A_{r−1}`.
pub fn classify_local(g: &Poly) -> LocalForm {
    assert_eq!(g.nvars(), 2, "local classification needs a bivariate germ");
    if !g.homogeneous_part(1).is_zero() {
        return LocalForm::Smooth;
    }
    let a = g.coeff(&[2, 0]);
    let b = g.coeff(&[1, 1]);
    let c = g.coeff(&[0, 2]);
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return LocalForm::Degenerate;
    }
    let disc = &b * &b - rat(4) * &a * &c;
    if !disc.is_zero() {
        return LocalForm::A(1);
    }
    let u = Poly::var(2, 0);
    let v = Poly::var(2, 1);
    // Move the square to the first coordinate: g̃(u, v) = g(s(u,v), t(u,v)).
    let local = if a.is_zero() {
        g.substitute(&[v.clone(), u.clone()]).expect("two images")
    } else {
        let beta = &b / (rat(2) * &a);
        g.substitute(&[&u - &v.scale(&beta), v.clone()]).expect("two images")
    };
    let lambda = local.coeff(&[2, 0]);
    debug_assert!(!lambda.is_zero());
    let du = derivative_u(&local);
    let rest = &du - &u.scale(&(rat(2) * &lambda));
    let scale = -(rat(2) * &lambda).recip();
    let mut phi: Series = vec![BigRational::zero(); SERIES_ORDER + 1];
    for _ in 0..=SERIES_ORDER {
        phi = eval_along(&rest, &phi).iter().map(|x| x * &scale).collect();
    }
    let residual = eval_along(&local, &phi);
    match residual.iter().position(|x| !x.is_zero()) {
        Some(r) if r >= 2 => LocalForm::A(r as u32 - 1),
        _ => LocalForm::Degenerate,
    }
}

/// Singularity type of a ternary quartic `f(z₀, z_{m+1}, z_{m+2})` at a ridge point.
pub fn singularity_type_at(f: &Poly, point: RidgePoint) -> Result<SingularityType, QuarticError> {
    if f.nvars() != 3 {
        return Err(QuarticError::NotTernary(f.nvars()));
    }
    let s = Poly::var(2, 0);
    let t = Poly::var(2, 1);
    let one = Poly::one(2);
    let local = match point {
        RidgePoint::Q => f.substitute(&[s, t, one])?,
        RidgePoint::QBar => f.substitute(&[s, one, t])?,
    };
    if !local.coeff(&[0, 0]).is_zero() {
        return Err(QuarticError::NotOnCurve);
    }
    Ok(match classify_local(&local) {
        LocalForm::Smooth => {
            let on_ridge = local.substitute(&[Poly::zero(1), Poly::var(1, 0)])?;
            if on_ridge.order_in(0) == Some(2) {
                SingularityType::A0Tangent
            } else {
                SingularityType::Other
            }
        }
        LocalForm::A(1) => SingularityType::A1,
        LocalForm::A(2) => SingularityType::A2,
        LocalForm::A(3) => SingularityType::A3,
        _ => SingularityType::Other,
    })
}

/// Whether the recorded branch quartic restricts to a square on the hyperplane `h_α = 0`.
pub fn verify_trope(model: &QuarticModel, alpha: usize) -> Result<bool, QuarticError> {
    if model.in_ridge_ideal(alpha)? {
        return Err(QuarticError::RidgeFactor(alpha));
    }
    let h = &model.h[alpha - 1];
    let n = model.nvars();
    let pivot = (model.m + 1..n)
        .rev()
        .find(|&j| {
            let mut e = vec![0; n];
            e[j] = 1;
            !h.coeff(&e).is_zero()
        })
        .expect("a factor outside the ridge ideal involves z_(m+1) or z_(m+2)");
    let mut unit = vec![0; n];
    unit[pivot] = 1;
    let pivot_coeff = h.coeff(&unit);
    let solved = &h.scale(&(-pivot_coeff.recip())) + &Poly::var(n, pivot);
    let images: Vec<Poly> = (0..n)
        .map(|j| if j == pivot { solved.clone() } else { Poly::var(n, j) })
        .collect();
    let branch = model.branch.substitute(&images)?;
    let q = model.q.substitute(&images)?;
    Ok(is_nonzero_multiple(&branch, &(&q * &q)))
}

/// Whether the recorded branch quartic restricts to a nonzero multiple of `Q²`
/// on a plane killed by a ridge-ideal factor.
pub fn verify_double_conic(model: &QuarticModel, c: &[BigRational]) -> Result<bool, QuarticError> {
    let ridge = model.ridge_vars();
    let mut killed = false;
    for f in model.h.iter().filter(|f| f.in_monomial_ideal(&ridge)) {
        if model.restrict_poly(f, c)?.is_zero() {
            killed = true;
        }
    }
    if !killed {
        return Err(QuarticError::NotDoubleConicPlane);
    }
    let branch = model.restrict_poly(&model.branch, c)?;
    let q = model.restrict_poly(&model.q, c)?;
    Ok(is_nonzero_multiple(&branch, &(&q * &q)))
}

fn is_nonzero_multiple(p: &Poly, square: &Poly) -> bool {
    p.ratio_to(square).is_some_and(|l| !l.is_zero())
}

/// Singularity types on one generic plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCheck {
    /// `t` with `c_j = t^j`.
    pub t: String,
    pub at_q: SingularityType,
    pub at_qbar: SingularityType,
    /// Largest power of `z₀` dividing the restricted product `h₁h₂h₃h₄`.
    pub z0_order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareCheck {
    pub label: String,
    pub passed: bool,
}

/// Full verification of one generated model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuarticReport {
    pub cycle_type: CycleType,
    pub m: usize,
    pub seed: u64,
    pub expected: SingularityType,
    pub planes: Vec<PlaneCheck>,
    pub tropes: Vec<SquareCheck>,
    pub double_conics: Vec<SquareCheck>,
    /// Some sampled plane showed a type other than the expected one.
    pub degenerate: bool,
    pub model: QuarticModel,
}

impl QuarticReport {
    pub fn squares_pass(&self) -> bool {
        self.tropes.iter().chain(&self.double_conics).all(|c| c.passed)
    }
}

/// Builds a model and checks it on `planes` sampled generic planes, every trope
/// hyperplane and every recorded double-conic plane.
pub fn analyze_quartic(ty: CycleType, m: usize, seed: u64, planes: usize) -> Result<QuarticReport, QuarticError> {
    let model = build_quartic(ty, m, seed)?;
    let expected = SingularityType::expected_for(ty);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let product = model.h.iter().fold(Poly::one(model.nvars()), |acc, f| &acc * f);
    let mut checks = Vec::with_capacity(planes);
    for _ in 0..planes {
        let c = model.generic_plane(&mut rng);
        let f = restrict_to_plane(&model, &c)?;
        checks.push(PlaneCheck {
            t: c[0].to_string(),
            at_q: singularity_type_at(&f, RidgePoint::Q)?,
            at_qbar: singularity_type_at(&f, RidgePoint::QBar)?,
            z0_order: model.restrict_poly(&product, &c)?.order_in(0).unwrap_or(0),
        });
    }
    let degenerate = checks.iter().any(|p| p.at_q != expected || p.at_qbar != expected);
    let tropes = model
        .trope_indices()
        .into_iter()
        .map(|alpha| {
            Ok(SquareCheck {
                label: format!("h{alpha}"),
                passed: verify_trope(&model, alpha)?,
            })
        })
        .collect::<Result<Vec<_>, QuarticError>>()?;
    let double_conics = model
        .double_conic_parameters
        .iter()
        .map(|t| {
            Ok(SquareCheck {
                label: format!("t={t}"),
                passed: verify_double_conic(&model, &scroll_plane(model.m, t))?,
            })
        })
        .collect::<Result<Vec<_>, QuarticError>>()?;
    Ok(QuarticReport {
        cycle_type: ty,
        m,
        seed,
        expected,
        planes: checks,
        tropes,
        double_conics,
        degenerate,
        model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bivariate(terms: &[([u32; 2], i64)]) -> Poly {
        Poly::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c)))).unwrap()
    }

    #[test]
    fn normal_forms() {
        for k in 1..=5u32 {
            let f = bivariate(&[([2, 0], 1), ([0, k + 1], -1)]);
            assert_eq!(classify_local(&f), LocalForm::A(k));
        }
        assert_eq!(classify_local(&bivariate(&[([1, 1], 1)])), LocalForm::A(1));
        assert_eq!(
            classify_local(&bivariate(&[([0, 1], 1), ([2, 0], 1)])),
            LocalForm::Smooth
        );
        assert_eq!(
            classify_local(&bivariate(&[([3, 0], 1), ([0, 3], 1)])),
            LocalForm::Degenerate
        );
        assert_eq!(classify_local(&bivariate(&[([2, 0], 1)])), LocalForm::Degenerate);
    }

    #[test]
    fn hidden_cusp_after_coordinate_change() {
        // (s + t)² + t³ with the mixed terms obscuring the square.
        let f = bivariate(&[([2, 0], 1), ([1, 1], 2), ([0, 2], 1), ([0, 3], 1)]);
        assert_eq!(classify_local(&f), LocalForm::A(2));
        // (s − t²)² − t⁵ expanded: a genuine A₄ needing the series correction.
        let g = bivariate(&[([2, 0], 1), ([1, 2], -2), ([0, 4], 1), ([0, 5], -1)]);
        assert_eq!(classify_local(&g), LocalForm::A(4));
    }

    #[test]
    fn tacnode_at_q() {
        let x = |i| Poly::var(3, i);
        let cross = &x(1) * &x(2);
        let f = &(&cross * &cross) - &x(0).pow(4);
        assert_eq!(singularity_type_at(&f, RidgePoint::Q).unwrap(), SingularityType::A3);
        assert_eq!(singularity_type_at(&f, RidgePoint::QBar).unwrap(), SingularityType::A3);
    }

    #[test]
    fn constructor_rejects_squares() {
        let model = build_quartic(CycleType::A1, 2, 3).unwrap();
        let n = model.nvars();
        let mut e = vec![0; n];
        e[3] = 2;
        let bad = &model.quadric().clone() + &Poly::monomial(e, rat(1));
        let err = QuarticModel::new(CycleType::A1, 2, model.factors().to_vec(), bad).unwrap_err();
        assert_eq!(err, QuarticError::ForbiddenSquare);
    }

    #[test]
    fn ridge_counts() {
        for ty in CycleType::ALL {
            let model = build_quartic(ty, 1, 11).unwrap();
            assert_eq!(model.trope_indices().len(), 3 - ty.nu());
            assert_eq!(model.double_conic_parameters().len(), ty.nu() + 1);
        }
    }

    #[test]
    fn generated_models_have_expected_types() {
        for ty in CycleType::ALL {
            for m in 1..=2 {
                let report = analyze_quartic(ty, m, 5, 3).unwrap();
                assert!(!report.degenerate, "{ty} m={m}: {:?}", report.planes);
                assert!(report.squares_pass());
                assert!(report.planes.iter().all(|p| p.z0_order == ty.nu() as u32 + 1));
            }
        }
    }

    #[test]
    fn perturbations_are_detected() {
        let mut model = build_quartic(CycleType::A0, 1, 2).unwrap();
        assert!(verify_trope(&model, 1).unwrap());
        let bumped = &model.factors()[0].clone() + &Poly::var(4, 0);
        model.replace_factor(1, bumped).unwrap();
        assert!(!verify_trope(&model, 1).unwrap());

        let mut model = build_quartic(CycleType::A2, 2, 2).unwrap();
        let c = scroll_plane(2, &model.double_conic_parameters()[0]);
        assert!(verify_double_conic(&model, &c).unwrap());
        let q = &model.quadric().clone() + &(&Poly::var(5, 0) * &Poly::var(5, 3));
        model.replace_quadric(q);
        assert!(!verify_double_conic(&model, &c).unwrap());
    }

    #[test]
    fn domain_errors() {
        let model = build_quartic(CycleType::A3, 2, 1).unwrap();
        for alpha in 1..=4 {
            assert_eq!(verify_trope(&model, alpha), Err(QuarticError::RidgeFactor(alpha)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let c = model.generic_plane(&mut rng);
        assert_eq!(verify_double_conic(&model, &c), Err(QuarticError::NotDoubleConicPlane));
    }
}
