//! Deformed anti-diagonals and hyperbolas, their one-sided derivatives, and
//! the resulting classification of numbers.
//!
//! With `x = ψ⁻¹(u)` the deformed hyperbola is `ĥ_k(u) = ψ(k / x)`. Its slope
//! is `ψ'(y) · (−k/x²) / ψ'(x)` with `y = k/x`; at a natural coordinate the
//! two one-sided slopes of `ψ` differ, and so do the two derivatives of `ĥ_k`.

use serde::Serialize;

use crate::coding::PrimeCoding;
use crate::error::{range_err, Error, Result};
use crate::scalar::{ser_text, Scalar};

/// Relative tolerance used to snap float coordinates to naturals.
pub const SNAP_TOL: f64 = 1e-9;
/// Relative tolerance below which float one-sided derivatives count as equal.
pub const JUMP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Smooth,
    /// Derivative jump at the lattice point with `x = 1`.
    SemiVortex,
    /// Derivative jump at a lattice point with `x > 1`.
    Vortex,
    /// Derivative jump where exactly one coordinate is natural: the curve
    /// crosses a grid line between lattice points.
    LineCrossing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NumberClass {
    Prime,
    CompositeNatural,
    NonNatural,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint<S: Scalar> {
    #[serde(serialize_with = "ser_text")]
    pub u: S,
    #[serde(serialize_with = "ser_text")]
    pub v: S,
    #[serde(serialize_with = "ser_text")]
    pub x: S,
    #[serde(serialize_with = "ser_text")]
    pub y: S,
    #[serde(serialize_with = "ser_text")]
    pub k: S,
}

/// `Some(n)` when `t` is the natural `n`.
fn natural<S: Scalar>(t: &S) -> Option<usize> {
    t.nearest_integer(SNAP_TOL)
        .and_then(|n| usize::try_from(n).ok())
}

/// `(ψ'_-(t), ψ'_+(t))` for `0 < t ≤ N`.
fn psi_slopes<S: Scalar>(c: &PrimeCoding<S>, t: &S) -> Result<(S, S)> {
    match natural(t) {
        Some(n) => c.one_sided_slopes(n),
        None => {
            let m = t.floor_i64();
            let s = usize::try_from(m)
                .ok()
                .and_then(|m| c.slopes().get(m))
                .ok_or_else(|| Error::Domain(format!("no slope of psi at {t}")))?;
            Ok((s.clone(), s.clone()))
        }
    }
}

/// `f̂_α(u) = ψ(α − ψ⁻¹(u))`.
pub fn fhat_eval<S: Scalar>(c: &PrimeCoding<S>, alpha: usize, u: &S) -> Result<S> {
    let x = c.psi_inv(u)?;
    let a = S::from_i64(alpha as i64);
    if x > a {
        return Err(Error::Domain(format!("fhat: {u} exceeds psi({alpha})")));
    }
    c.psi(&(a - x))
}

/// `(left, right)` derivatives of `f̂_α` at `m̂`: `(−b_{α−m}/a_m, −a_{α−m}/b_m)`.
pub fn fhat_one_sided<S: Scalar>(c: &PrimeCoding<S>, alpha: usize, m: usize) -> Result<(S, S)> {
    if m == 0 || m >= alpha {
        return Err(range_err(m, 1, alpha as i64 - 1));
    }
    let (a_m, b_m) = c.one_sided_slopes(m)?;
    let (a_r, b_r) = c.one_sided_slopes(alpha - m)?;
    Ok((-(b_r / a_m), -(a_r / b_m)))
}

/// `ĥ_k(u) = ψ(k / ψ⁻¹(u))`.
pub fn hhat_eval<S: Scalar>(c: &PrimeCoding<S>, k: &S, u: &S) -> Result<S> {
    if !k.is_positive() {
        return Err(Error::Domain(format!("hhat: k = {k} must be positive")));
    }
    let x = c.psi_inv(u)?;
    if !x.is_positive() {
        return Err(Error::Domain("hhat: psi_inv(u) must be positive".into()));
    }
    c.psi(&(k.clone() / x))
}

pub fn curve_point<S: Scalar>(c: &PrimeCoding<S>, k: &S, u: &S) -> Result<CurvePoint<S>> {
    let v = hhat_eval(c, k, u)?;
    let x = c.psi_inv(u)?;
    let y = k.clone() / x.clone();
    Ok(CurvePoint {
        u: u.clone(),
        v,
        x,
        y,
        k: k.clone(),
    })
}

/// `(left, right)` derivatives of `ĥ_k` at `u`.
pub fn hhat_one_sided<S: Scalar>(c: &PrimeCoding<S>, k: &S, u: &S) -> Result<(S, S)> {
    let p = curve_point(c, k, u)?;
    let (xm, xp) = psi_slopes(c, &p.x)?;
    let (ym, yp) = psi_slopes(c, &p.y)?;
    let g = -(k.clone() / (p.x.clone() * p.x));
    // moving left in u moves y up, so the left derivative sees ψ'_+(y)
    Ok((yp * g.clone() / xm, ym * g / xp))
}

fn derivatives_agree<S: Scalar>(l: &S, r: &S) -> bool {
    if S::EXACT {
        l == r
    } else {
        l.rel_diff(r) <= JUMP_TOL
    }
}

/// Kind of the point of `x̂ ⊗ ŷ = k̂` above `u`, in the quadrant `x ≥ 1, y ≥ x`.
pub fn classify_point<S: Scalar>(c: &PrimeCoding<S>, k: &S, u: &S) -> Result<PointKind> {
    let p = curve_point(c, k, u)?;
    let slack = S::one() - S::from_f64(SNAP_TOL);
    if p.x < slack || p.y < p.x.clone() * slack {
        return Err(Error::Domain(format!(
            "point ({}, {}) outside the quadrant x >= 1, y >= x",
            p.x, p.y
        )));
    }
    let (l, r) = hhat_one_sided(c, k, u)?;
    if derivatives_agree(&l, &r) {
        return Ok(PointKind::Smooth);
    }
    Ok(match (natural(&p.x), natural(&p.y)) {
        (Some(1), Some(_)) => PointKind::SemiVortex,
        (Some(_), Some(_)) => PointKind::Vortex,
        _ => PointKind::LineCrossing,
    })
}

/// Every point of the curve `x ⊗ y = k̂`, `1 ≤ x ≤ √k`, where a derivative
/// jump can occur: naturals `x`, and `x = k/n′` for naturals `n′ ≥ √k`.
pub fn scan_curve<S: Scalar>(
    c: &PrimeCoding<S>,
    k: &S,
) -> Result<Vec<(CurvePoint<S>, PointKind)>> {
    if *k <= S::one() {
        return Err(Error::Domain(format!("classify: k = {k} must exceed 1")));
    }
    if *k > S::from_i64(c.max_index() as i64) {
        return Err(Error::Domain(format!(
            "classify: k = {k} beyond the coding's last slope index {}",
            c.max_index()
        )));
    }
    let mut xs: Vec<S> = Vec::new();
    let mut n = 1i64;
    while S::from_i64(n * n) <= *k {
        xs.push(S::from_i64(n));
        n += 1;
    }
    let mut np = n - 1;
    while S::from_i64(np) <= *k {
        let npv = S::from_i64(np);
        if npv.clone() * npv.clone() >= *k {
            let x = k.clone() / npv;
            if natural(&x).is_none() {
                xs.push(x);
            }
        }
        np += 1;
    }
    xs.sort_by(crate::scalar::cmp);
    xs.into_iter()
        .map(|x| {
            let u = c.psi(&x)?;
            let kind = classify_point(c, k, &u)?;
            Ok((curve_point(c, k, &u)?, kind))
        })
        .collect()
}

/// Prime, composite natural or non-natural, read off the jump points of the
/// deformed hyperbola.
pub fn classify_number<S: Scalar>(c: &PrimeCoding<S>, k: &S) -> Result<NumberClass> {
    let points = scan_curve(c, k)?;
    let semi = points
        .iter()
        .filter(|(_, kind)| *kind == PointKind::SemiVortex)
        .count();
    let vortex = points
        .iter()
        .filter(|(_, kind)| *kind == PointKind::Vortex)
        .count();
    match (semi, vortex) {
        (0, 0) => Ok(NumberClass::NonNatural),
        (1, 0) => Ok(NumberClass::Prime),
        (1, _) => Ok(NumberClass::CompositeNatural),
        _ => Err(Error::TheoremViolation(format!(
            "k = {k}: {semi} semi-vortex and {vortex} vortex points"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn powers_of_two(n: usize) -> PrimeCoding<Q> {
        PrimeCoding::new((0..=n).map(|m| q(1 << m, 1)).collect()).unwrap()
    }

    fn slopes_1_to(n: i64) -> PrimeCoding<Q> {
        PrimeCoding::new((1..=n).map(|m| q(m, 1)).collect()).unwrap()
    }

    #[test]
    fn fhat_values() {
        let c = powers_of_two(8);
        assert_eq!(fhat_eval(&c, 5, &q(0, 1)).unwrap(), c.hat_natural(5).unwrap());
        let id = PrimeCoding::<Q>::identity(10);
        assert_eq!(fhat_eval(&id, 7, &q(5, 2)).unwrap(), q(9, 2));
        assert_eq!(fhat_eval(&c, 2, &q(1, 2)).unwrap(), q(2, 1));
    }

    #[test]
    fn fhat_derivatives() {
        let id = PrimeCoding::<Q>::identity(10);
        assert_eq!(fhat_one_sided(&id, 6, 2).unwrap(), (q(-1, 1), q(-1, 1)));
        let c = powers_of_two(8);
        assert_eq!(fhat_one_sided(&c, 4, 1).unwrap(), (q(-8, 1), q(-2, 1)));
        assert!(fhat_one_sided(&c, 4, 4).is_err());
    }

    #[test]
    fn hhat_values() {
        let id = PrimeCoding::<Q>::identity(20);
        assert_eq!(hhat_eval(&id, &q(6, 1), &q(4, 1)).unwrap(), q(3, 2));
        let c = slopes_1_to(10);
        assert_eq!(hhat_eval(&c, &q(2, 1), &q(1, 1)).unwrap(), q(3, 1));
        let root = c.psi(&q(3, 1)).unwrap();
        assert_eq!(hhat_eval(&c, &q(9, 1), &root).unwrap(), root);
    }

    #[test]
    fn hhat_derivatives_at_lattice_point() {
        let c = powers_of_two(8);
        let u = c.hat_natural(2).unwrap();
        assert_eq!(
            hhat_one_sided(&c, &q(4, 1), &u).unwrap(),
            (q(-4, 2), q(-2, 4))
        );
        let id = PrimeCoding::<Q>::identity(20);
        let (l, r) = hhat_one_sided(&id, &q(10, 1), &q(5, 2)).unwrap();
        assert_eq!(l, q(-8, 5));
        assert_eq!(r, q(-8, 5));
    }

    #[test]
    fn point_kinds() {
        let c = PrimeCoding::<Q>::default_strict(40);
        let at = |k: i64, x: Q| classify_point(&c, &q(k, 1), &c.psi(&x).unwrap()).unwrap();
        assert_eq!(at(17, q(1, 1)), PointKind::SemiVortex);
        assert_eq!(at(12, q(3, 1)), PointKind::Vortex);
        assert_eq!(at(16, q(4, 1)), PointKind::Vortex);
        assert_eq!(at(17, q(2, 1)), PointKind::LineCrossing);
        assert_eq!(at(17, q(17, 8)), PointKind::LineCrossing);
        assert_eq!(at(17, q(5, 2)), PointKind::Smooth);
        assert!(classify_point(&c, &q(12, 1), &c.psi(&q(4, 1)).unwrap()).is_err());
    }

    #[test]
    fn number_classes() {
        let c = PrimeCoding::<Q>::default_strict(40);
        assert_eq!(classify_number(&c, &q(17, 1)).unwrap(), NumberClass::Prime);
        assert_eq!(
            classify_number(&c, &q(12, 1)).unwrap(),
            NumberClass::CompositeNatural
        );
        assert_eq!(
            classify_number(&c, &q(15, 2)).unwrap(),
            NumberClass::NonNatural
        );
        let vortices: Vec<_> = scan_curve(&c, &q(12, 1))
            .unwrap()
            .into_iter()
            .filter(|(_, k)| *k == PointKind::Vortex)
            .map(|(p, _)| (p.x, p.y))
            .collect();
        assert_eq!(vortices, vec![(q(2, 1), q(6, 1)), (q(3, 1), q(4, 1))]);
        assert!(classify_number(&c, &q(41, 1)).is_err());
    }

    #[test]
    fn float_classification_matches_rational() {
        let c = PrimeCoding::<f64>::default_strict(60);
        assert_eq!(classify_number(&c, &17.0).unwrap(), NumberClass::Prime);
        assert_eq!(
            classify_number(&c, &49.0).unwrap(),
            NumberClass::CompositeNatural
        );
        assert_eq!(classify_number(&c, &7.5).unwrap(), NumberClass::NonNatural);
    }
}
