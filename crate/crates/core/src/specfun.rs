//! Special functions and Helmholtz fundamental-solution evaluation.
//!
//! The 2D fundamental solution needs the zeroth-order Bessel functions J0 and
//! Y0. These are evaluated with the classical two-interval split: rational
//! approximations on [0, 5] (with the two leading zeros of J0 factored out)
//! and Hankel-form asymptotic rationals on (5, inf). Peak error is a few
//! 1e-16 absolute on [0, 30] and ~1e-15 relative beyond.

use crate::{dist, Error, Point, Result, C64};
use std::f64::consts::{FRAC_PI_4, PI};

/// Helmholtz kernel: spatial dimension (2 or 3) and wavenumber kappa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    dim: usize,
    kappa: f64,
}

impl Kernel {
    pub fn new(dim: usize, kappa: f64) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::InvalidArgument(format!(
                "kernel dimension must be 2 or 3, got {dim}"
            )));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "wavenumber must be positive and finite, got {kappa}"
            )));
        }
        Ok(Kernel { dim, kappa })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.kappa
    }

    /// Fundamental solution phi_kappa(x - y).
    ///
    /// 2D: (i/4) H0^(1)(kappa |x-y|); 3D: exp(i kappa |x-y|) / (4 pi |x-y|).
    /// Symmetric in (x, y); errors out when the points coincide.
    pub fn eval(&self, x: Point, y: Point) -> Result<C64> {
        let r = dist(x, y);
        if r < SINGULARITY_THRESHOLD {
            return Err(Error::Singular(r));
        }
        let kr = self.kappa * r;
        if self.dim == 2 {
            let h = hankel0_first(kr)?;
            // (i/4) * (J0 + i Y0) = (-Y0 + i J0) / 4
            Ok(C64::new(-0.25 * h.im, 0.25 * h.re))
        } else {
            let scale = 1.0 / (4.0 * PI * r);
            Ok(C64::new(scale * kr.cos(), scale * kr.sin()))
        }
    }
}

/// Distances below this are treated as coincident points.
pub const SINGULARITY_THRESHOLD: f64 = 1e-300;

/// H0^(1)(x) = J0(x) + i Y0(x) for x > 0.
pub fn hankel0_first(x: f64) -> Result<C64> {
    Ok(C64::new(bessel_j0(x)?, bessel_y0(x)?))
}

/// Bessel function of the first kind, order zero, for x >= 0.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("bessel_j0 requires finite x >= 0, got {x}")));
    }
    if x <= 5.0 {
        let z = x * x;
        if x < 1e-5 {
            return Ok(1.0 - z / 4.0);
        }
        let p = (z - DR1) * (z - DR2);
        Ok(p * polevl(z, &RP) / p1evl(z, &RQ))
    } else {
        let w = 5.0 / x;
        let z = 25.0 / (x * x);
        let p = polevl(z, &PP) / polevl(z, &PQ);
        let q = polevl(z, &QP) / p1evl(z, &QQ);
        let (cos_xn, sin_xn) = phase_trig(x);
        Ok((p * cos_xn - w * q * sin_xn) * SQRT_2_OVER_PI / x.sqrt())
    }
}

/// Bessel function of the second kind, order zero, for x > 0.
pub fn bessel_y0(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "bessel_y0 requires finite x > 0 (logarithmic singularity at 0), got {x}"
        )));
    }
    if x <= 5.0 {
        let z = x * x;
        let w = polevl(z, &YP) / p1evl(z, &YQ);
        Ok(w + 2.0 / PI * x.ln() * bessel_j0(x)?)
    } else {
        let w = 5.0 / x;
        let z = 25.0 / (x * x);
        let p = polevl(z, &PP) / polevl(z, &PQ);
        let q = polevl(z, &QP) / p1evl(z, &QQ);
        let (cos_xn, sin_xn) = phase_trig(x);
        Ok((p * sin_xn + w * q * cos_xn) * SQRT_2_OVER_PI / x.sqrt())
    }
}

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

// pi/4 minus its nearest f64.
const FRAC_PI_4_LO: f64 = 3.061616997868383e-17;

/// `(cos(x - pi/4), sin(x - pi/4))` with the phase carried in two doubles;
/// a single rounded `x - pi/4` would lose eps*x of phase for large x.
#[inline]
fn phase_trig(x: f64) -> (f64, f64) {
    let s = x - FRAC_PI_4;
    let e = (x - s) - FRAC_PI_4; // exact: x >= 5 > pi/4
    let lo = e - FRAC_PI_4_LO;
    let (sin_s, cos_s) = s.sin_cos();
    (cos_s - lo * sin_s, sin_s + lo * cos_s)
}

#[inline]
fn polevl(x: f64, coef: &[f64]) -> f64 {
    let mut r = coef[0];
    for &c in &coef[1..] {
        r = r * x + c;
    }
    r
}

/// Like `polevl` with an implicit leading coefficient of 1.
#[inline]
fn p1evl(x: f64, coef: &[f64]) -> f64 {
    let mut r = x + coef[0];
    for &c in &coef[1..] {
        r = r * x + c;
    }
    r
}

// First two zeros of J0 squared, factored out of the [0, 5] approximation.
const DR1: f64 = 5.783185962946784;
const DR2: f64 = 30.471262343662087;

static RP: [f64; 4] = [
    -4.794432209782018e9,
    1.9561749194655657e12,
    -2.4924834436096772e14,
    9.708622510473064e15,
];
static RQ: [f64; 8] = [
    4.99563147152651e2,
    1.737854016763747e5,
    4.844096583399621e7,
    1.1185553704535683e10,
    2.112775201154892e12,
    3.1051822985742256e14,
    3.1812195594320496e16,
    1.7108629408104315e18,
];

static PP: [f64; 7] = [
    7.969367292973471e-4,
    8.283523921074408e-2,
    1.239533716464143,
    5.447250030587687,
    8.74716500199817,
    5.303240382353949,
    1.0,
];
static PQ: [f64; 7] = [
    9.244088105588637e-4,
    8.562884743544745e-2,
    1.2535274390105895,
    5.470977403304171,
    8.761908832370695,
    5.306052882353947,
    1.0,
];

static QP: [f64; 8] = [
    -1.1366383889846916e-2,
    -1.2825271867050931,
    -1.9553954425773597e1,
    -9.320601521237683e1,
    -1.7768116798048806e2,
    -1.4707750515495118e2,
    -5.141053267665993e1,
    -6.050143506007285,
];
static QQ: [f64; 7] = [
    6.43178256118178e1,
    8.564300259769806e2,
    3.8824018360540163e3,
    7.240467741956525e3,
    5.930727011873169e3,
    2.0620933166032783e3,
    2.420057402402914e2,
];

static YP: [f64; 8] = [
    1.5592436785523574e4,
    -1.466392959039716e7,
    5.435264770518765e9,
    -9.821360657179115e11,
    8.75906394395367e13,
    -3.466283033847297e15,
    4.4273326857256984e16,
    -1.8495080043698668e16,
];
static YQ: [f64; 7] = [
    1.0412835366425984e3,
    6.26107330137135e5,
    2.6891963339381415e8,
    8.64002487103935e10,
    2.0297961275010555e13,
    3.1715775284297505e15,
    2.5059625617265306e17,
];
