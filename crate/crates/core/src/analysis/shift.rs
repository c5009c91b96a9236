use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use super::ScreenProfile;
use crate::error::{Error, Result};
use crate::gauge::reduce_phase;

/// Smallest `(max − min)/(max + min)` of the reference over the central half.
pub const MIN_CONTRAST: f64 = 0.05;
/// Smallest ratio between the dominant and the next spectral peak.
pub const MIN_PEAK_RATIO: f64 = 1.5;

const ZERO_PAD: usize = 64;
/// Fringes must repeat at least this many times across the screen.
const MIN_CYCLES: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodEstimate {
    pub period: f64,
    pub peak_ratio: f64,
}

fn central(n: usize) -> (usize, usize) {
    (n / 4, n - n / 4)
}

fn hann(k: usize, len: usize) -> f64 {
    0.5 - 0.5 * (TAU * k as f64 / len as f64).cos()
}

/// Four-term Blackman–Harris window; its sidelobes sit near −92 dB, which
/// keeps the mirror-frequency leakage from biasing the spectral peak.
fn blackman_harris(k: usize, len: usize) -> f64 {
    let x = TAU * k as f64 / len as f64;
    0.35875 - 0.48829 * x.cos() + 0.14128 * (2.0 * x).cos() - 0.01168 * (3.0 * x).cos()
}

/// Vertex offset of the parabola through `(−1, a), (0, b), (1, c)`.
fn vertex(a: f64, b: f64, c: f64) -> f64 {
    let den = a - 2.0 * b + c;
    if den < 0.0 {
        (0.5 * (a - c) / den).clamp(-0.5, 0.5)
    } else {
        0.0
    }
}

fn contrast(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = v.iter().copied().fold(f64::INFINITY, f64::min);
    if max + min > 0.0 {
        (max - min) / (max + min)
    } else {
        0.0
    }
}

/// Removes the least-squares quadratic from `v`.
fn detrend_quadratic(v: &[f64]) -> Vec<f64> {
    let m = v.len();
    let mid = 0.5 * (m - 1) as f64;
    let xs: Vec<f64> = (0..m).map(|k| (k as f64 - mid) / mid).collect();
    let (mut s0, mut s2, mut s4, mut f0, mut f1, mut f2) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, f) in xs.iter().zip(v) {
        let x2 = x * x;
        s0 += 1.0;
        s2 += x2;
        s4 += x2 * x2;
        f0 += f;
        f1 += x * f;
        f2 += x2 * f;
    }
    // odd moments vanish on the symmetric abscissae
    let det = s0 * s4 - s2 * s2;
    let c0 = (f0 * s4 - f2 * s2) / det;
    let c2 = (s0 * f2 - s2 * f0) / det;
    let c1 = f1 / s2;
    xs.iter().zip(v).map(|(x, f)| f - (c0 + c1 * x + c2 * x * x)).collect()
}

/// Fringe period of `reference` from the dominant peak of the windowed,
/// zero-padded spectrum of the whole screen.
pub fn fringe_period(reference: &ScreenProfile) -> Result<PeriodEstimate> {
    reference.validate()?;
    let h = reference.spacing();
    let seg = &reference.intensity[..];
    let m = seg.len();
    let detrended = detrend_quadratic(seg);
    let len = m * ZERO_PAD;
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (k, v) in detrended.iter().enumerate() {
        buf[k] = Complex64::new(v * blackman_harris(k, m), 0.0);
    }
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let mag: Vec<f64> = buf[..=len / 2].iter().map(|z| z.norm()).collect();
    let lo = (MIN_CYCLES * ZERO_PAD as f64).ceil() as usize;
    let hi = len / 2 - 1;
    let main = (lo..=hi).fold(lo, |best, k| if mag[k] > mag[best] { k } else { best });
    if !(mag[main] > 0.0) {
        return Err(Error::NoFringes { contrast: contrast(seg) });
    }
    let second = (lo..=hi)
        .filter(|&k| k.abs_diff(main) > 4 * ZERO_PAD && mag[k] >= mag[k - 1] && mag[k] >= mag[k + 1])
        .map(|k| mag[k])
        .fold(0.0, f64::max);
    let peak_ratio = if second > 0.0 { mag[main] / second } else { f64::INFINITY };
    if peak_ratio < MIN_PEAK_RATIO {
        return Err(Error::AmbiguousPeriod { ratio: peak_ratio });
    }
    let k = main as f64 + vertex(mag[main - 1], mag[main], mag[main + 1]);
    Ok(PeriodEstimate {
        period: len as f64 * h / k,
        peak_ratio,
    })
}

/// Moving average over a centred window of `width` samples, with the end
/// samples weighted by their fractional overlap.
fn moving_mean(v: &[f64], j: usize, width: f64) -> f64 {
    let half = 0.5 * width;
    let reach = (half + 0.5).ceil() as usize;
    let mut sum = 0.0;
    for k in j - reach..=j + reach {
        let d = (k as f64 - j as f64).abs();
        let w = (half - (d - 0.5)).clamp(0.0, 1.0);
        sum += w * v[k];
    }
    sum / width
}

/// Analytic signal of `v`: the positive-frequency half of its spectrum,
/// doubled, after zero padding to twice the length.
fn analytic_signal(v: &[f64]) -> Vec<Complex64> {
    let m = v.len();
    let len = 2 * m;
    let mut planner = FftPlanner::new();
    let mut buf: Vec<Complex64> = v.iter().map(|x| Complex64::new(*x, 0.0)).collect();
    buf.resize(len, Complex64::new(0.0, 0.0));
    planner.plan_fft_forward(len).process(&mut buf);
    for (k, z) in buf.iter_mut().enumerate() {
        if k > 0 && k < len / 2 {
            *z *= 2.0;
        } else if k > len / 2 {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(len).process(&mut buf);
    buf.truncate(m);
    let scale = 1.0 / len as f64;
    buf.iter_mut().for_each(|z| *z *= scale);
    buf
}

/// Fringe phase of `profile` relative to `reference`, positive when the
/// pattern moved towards larger `y`, reduced to `(−π, π]`.
///
/// Both profiles are normalized by their one-period moving average, so the
/// envelope drops out, and compared by the zero-lag complex cross-correlation
/// of their analytic signals, Hann-weighted over a whole number of periods
/// around the screen centre. Being a phase rather than a displacement, the
/// result does not depend on the fringe spacing varying across the screen.
pub fn fringe_shift(profile: &ScreenProfile, reference: &ScreenProfile) -> Result<f64> {
    profile.validate()?;
    reference.validate()?;
    if !profile.same_grid(reference) {
        return Err(Error::InvalidArgument("profile and reference must share the screen grid".into()));
    }
    let n = reference.len();
    let (a, b) = central(n);
    let c = contrast(&reference.intensity[a..b]);
    if c < MIN_CONTRAST {
        return Err(Error::NoFringes { contrast: c });
    }
    let p = fringe_period(reference)?.period / reference.spacing();

    let reach = (0.5 * p + 0.5).ceil() as usize;
    if n <= 2 * reach + 2 {
        return Err(Error::NoFringes { contrast: c });
    }
    let (lo, hi) = (reach, n - reach);
    let mut cycles = (0.5 * n as f64 / p).floor();
    while cycles >= 1.0 && (cycles * p).round() as usize > hi - lo {
        cycles -= 1.0;
    }
    if cycles < 1.0 {
        return Err(Error::NoFringes { contrast: c });
    }
    let width = (cycles * p).round() as usize;
    let start = n / 2 - width / 2 - lo;

    let normalized = |v: &[f64]| -> Option<Vec<f64>> {
        (lo..hi)
            .map(|j| {
                let m = moving_mean(v, j, p);
                (m > 0.0).then(|| v[j] / m - 1.0)
            })
            .collect()
    };
    let zp = analytic_signal(&normalized(&profile.intensity).ok_or(Error::NoFringes { contrast: 0.0 })?);
    let zr = analytic_signal(&normalized(&reference.intensity).ok_or(Error::NoFringes { contrast: c })?);
    let cross: Complex64 = (0..width).map(|k| hann(k, width) * zp[start + k] * zr[start + k].conj()).sum();
    if !(cross.norm() > 0.0) {
        return Err(Error::NoFringes { contrast: contrast(&profile.intensity[a..b]) });
    }
    Ok(reduce_phase(-cross.arg()))
}
