//! Finite-difference surrogate for the wedge relations.
//!
//! The combinations `X = Y/(1+Y)` built from the lower Y-values of `M`
//! and of `M'` (and their upper counterparts `W` from `M` and `M''`)
//! satisfy a cancellation in the exterior square of the multiplicative
//! group of rational functions. Its differential consequence is that the
//! 2-form `Σ dlog X ∧ dlog(1-X)`, summed over both families, vanishes.
//!
//! This module tests that consequence numerically: directional
//! derivatives of `log X` and `log(1-X)` along two tangent vectors are
//! taken by central differences in log-coordinates and assembled into
//! the antisymmetric bilinear form. The residual this produces is pure
//! rounding noise: because each `log X` is an integer combination of
//! logs of flag minors and the cancellation is monomial, the
//! finite-difference form vanishes *identically at any step size*, not
//! just to second order. (The probe therefore measures the noise floor
//! `~2^-precision/h`, and shrinking `h` raises it; the classical
//! step-halving diagnostic does not apply. `fd_convergence_order`
//! confirms separately that the differencing machinery itself is second
//! order on a single log-derivative.)

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::One;

use crate::bigfloat::BigFloat;
use crate::dilog::DilogEval;
use crate::error::{Error, Result};
use crate::identities::dilog_sum;
use crate::index::{tetrahedron, Triple};
use crate::involutions::{jacobi_dprime_generic, jacobi_prime_generic};
use crate::jacobi::{jacobi_to_matrix, jacobi_to_matrix_generic, JacobiCoords};
use crate::matrix::SquareMatrix;
use crate::rational::Rational;
use crate::sample::{random_coords, rng_for_trial};
use crate::yvars::{y_value, YFamily};

/// Which wedge family to probe: `X` pairs the lower Y-values of `M`
/// with those of `M'`; `W` pairs the upper values of `M` with `M''`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeKind {
    X,
    W,
}

impl WedgeKind {
    fn family(self) -> YFamily {
        match self {
            WedgeKind::X => YFamily::Lower,
            WedgeKind::W => YFamily::Upper,
        }
    }
}

/// Per-coordinate perturbation direction, aligned with the coordinate
/// support of the base point.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    n: usize,
    entries: Vec<BigFloat>,
}

impl TangentVector {
    pub fn new(n: usize, entries: Vec<BigFloat>) -> Result<Self> {
        if entries.len() != n * (n - 1) / 2 {
            return Err(Error::Dimension(
                "tangent vector must match the coordinate support".to_string(),
            ));
        }
        Ok(TangentVector { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigFloat) -> Self {
        let mut entries = Vec::new();
        for i in 1..n {
            for j in (i + 1)..=n {
                entries.push(f(i, j));
            }
        }
        TangentVector { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn get(&self, k: usize) -> &BigFloat {
        &self.entries[k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero())
    }
}

/// `X` (or `W`) values of a single matrix: `Y/(1+Y)`, all in `(0,1)`.
pub fn x_variables(
    m: &SquareMatrix<Rational>,
    kind: WedgeKind,
) -> Result<Vec<(Triple, Rational)>> {
    tetrahedron(m.n())
        .into_iter()
        .map(|t| {
            let y = y_value(m, kind.family(), t)?;
            let x = y.clone() / (Rational::one() + y);
            Ok((t, x))
        })
        .collect()
}

/// Probe configuration.
#[derive(Debug, Clone)]
pub struct TwoFormOptions {
    /// Central-difference step in log-coordinates; at most `1e-3`.
    pub step: BigFloat,
    pub precision: u32,
    /// Drop the second (involution-image) family — a negative control:
    /// a single family does not cancel.
    pub drop_second_family: bool,
}

impl Default for TwoFormOptions {
    fn default() -> Self {
        TwoFormOptions {
            step: BigFloat::from_decimal_str("1e-6", 64).unwrap(),
            precision: crate::DEFAULT_PRECISION,
            drop_second_family: false,
        }
    }
}

/// Residual together with the scale `Σ |terms|` it should be compared
/// against.
#[derive(Debug, Clone)]
pub struct TwoFormProbe {
    pub residual: BigFloat,
    pub scale: BigFloat,
}

impl TwoFormProbe {
    pub fn relative(&self) -> BigFloat {
        if self.scale.is_zero() {
            self.residual.clone()
        } else {
            self.residual.clone() / self.scale.clone()
        }
    }
}

/// `(log X_k, log(1-X_k))` for every k of both families, at the point
/// `x_ij * exp(sign * h * dir_ij)`.
fn log_pairs(
    coords: &JacobiCoords,
    dir: &TangentVector,
    sign: i64,
    kind: WedgeKind,
    opts: &TwoFormOptions,
) -> Result<Vec<(BigFloat, BigFloat)>> {
    let wp = opts.precision + 32;
    let n = coords.n();
    let mut k = 0usize;
    let perturbed = JacobiCoords::from_fn(n, |i, j| {
        let base = BigFloat::from_rational(coords.get(i, j), wp);
        let arg = (opts.step.clone() * dir.get(k).clone() * BigFloat::from_i64(sign))
            .with_precision(wp);
        k += 1;
        base * arg.exp()
    })?;
    let m = jacobi_to_matrix_generic(&perturbed)?;
    let image_coords = match kind {
        WedgeKind::X => jacobi_prime_generic(&perturbed),
        WedgeKind::W => jacobi_dprime_generic(&perturbed),
    };
    let m2 = jacobi_to_matrix_generic(&image_coords)?;
    let family = kind.family();
    let mut out = Vec::new();
    let matrices: Vec<&SquareMatrix<BigFloat>> = if opts.drop_second_family {
        alloc::vec![&m]
    } else {
        alloc::vec![&m, &m2]
    };
    for t in tetrahedron(n) {
        for mm in &matrices {
            let y = y_value(*mm, family, t)?;
            let ln_one_plus = (BigFloat::one() + y.clone()).ln()?;
            out.push((y.ln()? - ln_one_plus.clone(), -ln_one_plus));
        }
    }
    Ok(out)
}

/// Evaluates `|Ω(u, v)|` where
/// `Ω = Σ_k [D_u log X_k · D_v log(1-X_k) - D_v log X_k · D_u log(1-X_k)]`
/// with central differences of step `opts.step` in log-coordinates.
pub fn two_form_probe(
    coords: &JacobiCoords,
    u: &TangentVector,
    v: &TangentVector,
    kind: WedgeKind,
    opts: &TwoFormOptions,
) -> Result<TwoFormProbe> {
    if u.n() != coords.n() || v.n() != coords.n() {
        return Err(Error::Dimension("tangent vectors must match the base point".to_string()));
    }
    if u.is_zero() || v.is_zero() {
        return Err(Error::Domain("tangent vectors must be nonzero".to_string()));
    }
    let max_step = BigFloat::from_decimal_str("1e-3", 64).unwrap();
    if !opts.step.is_positive() || opts.step > max_step {
        return Err(Error::StepTooLarge);
    }
    let wp = opts.precision + 32;
    let up = log_pairs(coords, u, 1, kind, opts)?;
    let um = log_pairs(coords, u, -1, kind, opts)?;
    let vp = log_pairs(coords, v, 1, kind, opts)?;
    let vm = log_pairs(coords, v, -1, kind, opts)?;
    let inv_2h = BigFloat::one()
        .with_precision(wp)
        .div_wp(&opts.step.clone().mul_pow2(1), wp);
    let mut omega = BigFloat::zero();
    let mut scale = BigFloat::zero();
    for i in 0..up.len() {
        let du_lx = (up[i].0.clone() - um[i].0.clone()) * inv_2h.clone();
        let du_l1 = (up[i].1.clone() - um[i].1.clone()) * inv_2h.clone();
        let dv_lx = (vp[i].0.clone() - vm[i].0.clone()) * inv_2h.clone();
        let dv_l1 = (vp[i].1.clone() - vm[i].1.clone()) * inv_2h.clone();
        let t1 = du_lx.clone() * dv_l1.clone();
        let t2 = dv_lx * du_l1;
        omega = omega + t1.clone() - t2.clone();
        scale = scale + t1.abs() + t2.abs();
    }
    Ok(TwoFormProbe { residual: omega.abs(), scale })
}

/// Default-option probe returning just `|Ω(u, v)|`.
pub fn two_form_residual(
    coords: &JacobiCoords,
    u: &TangentVector,
    v: &TangentVector,
    kind: WedgeKind,
) -> Result<BigFloat> {
    Ok(two_form_probe(coords, u, v, kind, &TwoFormOptions::default())?.residual)
}

/// Estimated convergence order of the central-difference derivative of
/// a single `log X` along `u`, from three nested steps: the Richardson
/// quotient `(D(h) - D(h/2)) / (D(h/2) - D(h/4))` is about 4 for a
/// second-order scheme.
pub fn fd_convergence_order(
    coords: &JacobiCoords,
    u: &TangentVector,
    kind: WedgeKind,
    opts: &TwoFormOptions,
) -> Result<BigFloat> {
    let d_at = |step: BigFloat| -> Result<BigFloat> {
        let o = TwoFormOptions { step: step.clone(), ..opts.clone() };
        let p = log_pairs(coords, u, 1, kind, &o)?;
        let m = log_pairs(coords, u, -1, kind, &o)?;
        let wp = opts.precision + 32;
        let inv_2h = BigFloat::one().with_precision(wp).div_wp(&step.mul_pow2(1), wp);
        Ok((p[0].0.clone() - m[0].0.clone()) * inv_2h)
    };
    let h = opts.step.clone();
    let d1 = d_at(h.clone())?;
    let d2 = d_at(h.clone().mul_pow2(-1))?;
    let d4 = d_at(h.mul_pow2(-2))?;
    let num = d1 - d2.clone();
    let den = d2 - d4;
    if den.is_zero() {
        return Err(Error::Domain("degenerate Richardson quotient".to_string()));
    }
    Ok((num / den).abs())
}

/// Spread statistics of the paired dilogarithm sum across seeded trials.
#[derive(Debug, Clone)]
pub struct ConstancySummary {
    pub low: BigFloat,
    pub high: BigFloat,
    pub spread: BigFloat,
}

/// Samples `Σ l(Y(M)) + Σ l(Y(M'))` over seeded random matrices; the
/// spread must sit at the evaluation noise floor since the paired sum is
/// a constant of the stratum.
pub fn constancy_probe(
    n: usize,
    family: YFamily,
    trials: u64,
    seed: u64,
    precision: u32,
    coord_max: u64,
) -> Result<ConstancySummary> {
    if n < 3 {
        return Err(Error::Dimension("constancy probe needs n >= 3".to_string()));
    }
    let ev = DilogEval::new(precision)?;
    let mut low: Option<BigFloat> = None;
    let mut high: Option<BigFloat> = None;
    for trial in 0..trials.max(1) {
        let coords = random_coords(n, coord_max, &mut rng_for_trial(seed, trial));
        let m = jacobi_to_matrix(&coords)?;
        let mp = jacobi_to_matrix(&crate::involutions::jacobi_prime(&coords))?;
        let value = dilog_sum(&ev, m.matrix(), family, false)?
            + dilog_sum(&ev, mp.matrix(), family, false)?;
        if low.as_ref().is_none_or(|l| value < *l) {
            low = Some(value.clone());
        }
        if high.as_ref().is_none_or(|h| value > *h) {
            high = Some(value);
        }
    }
    let (low, high) = (low.unwrap(), high.unwrap());
    Ok(ConstancySummary { spread: high.clone() - low.clone(), low, high })
}
