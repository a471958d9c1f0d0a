//! Deterministic simultaneous root finding for shifted integer polynomials.
//!
//! The preimage computations downstream need *all* `deg(p)` roots of
//! `p(λ) - w` for many shifts `w`, with a residual certificate on every root:
//! a silently dropped root would punch holes in the sampled spectra. The
//! kernel is an Aberth-Ehrlich sweep with initial guesses equally spaced on a
//! circle. There is no randomness anywhere; a fixed phase offset breaks the
//! symmetry traps of axis-aligned starting configurations, and a short fixed
//! list of fallback phases is tried before giving up.

use num_complex::Complex;
use num_traits::{Float, FloatConst, Zero};

use crate::error::{Error, Result};
use crate::{C64, IntPoly};

/// Sweep budget per starting configuration.
pub const MAX_SWEEPS: usize = 500;

/// Fixed phase offsets for the initial-guess circle, tried in order.
const PHASES: [f64; 3] = [0.4, 1.7, 2.9];

/// Horner evaluation of an ascending coefficient slice.
pub(crate) fn horner<F: Float>(coeffs: &[Complex<F>], z: Complex<F>) -> Complex<F> {
    let mut acc = Complex::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Horner evaluation of the polynomial and its derivative in one pass.
fn horner_pair<F: Float>(coeffs: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut v = Complex::zero();
    let mut dv = Complex::zero();
    for c in coeffs.iter().rev() {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

pub(crate) fn complex_coeffs<F: Float>(p: &IntPoly) -> Vec<Complex<F>> {
    p.coeffs()
        .iter()
        .map(|c| {
            let cf = F::from(num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN))
                .unwrap_or_else(F::nan);
            Complex::new(cf, F::zero())
        })
        .collect()
}

/// Outcome of one Aberth-Ehrlich run on a monic coefficient slice.
pub struct SweepOutcome<F> {
    pub roots: Vec<Complex<F>>,
    pub sweeps: usize,
    pub worst_residual: F,
}

/// Runs simultaneous Aberth-Ehrlich iteration on a monic polynomial given by
/// ascending coefficients (`monic[d] == 1`, `d >= 1`).
///
/// Initial guesses sit on the circle of radius `1 + max|coeff|` at equally
/// spaced angles offset by `phase`. Iteration stops once the largest update
/// falls below `update_tol`. Convergence is update-based rather than
/// residual-based: root clusters (multiple roots) reduce their updates
/// geometrically, while an early residual exit would freeze them at a much
/// larger radius than the iteration can actually reach.
pub fn aberth_sweep<F: Float + FloatConst>(
    monic: &[Complex<F>],
    update_tol: F,
    budget: usize,
    phase: F,
) -> SweepOutcome<F> {
    let d = monic.len() - 1;
    let radius = monic[..d]
        .iter()
        .map(|c| c.norm())
        .fold(F::zero(), F::max)
        + F::one();
    let tau = F::PI() + F::PI();
    let mut z: Vec<Complex<F>> = (0..d)
        .map(|j| {
            let angle = tau * F::from(j).unwrap() / F::from(d).unwrap() + phase;
            Complex::from_polar(radius, angle)
        })
        .collect();

    let tiny = F::min_positive_value();
    let mut steps = vec![Complex::<F>::zero(); d];
    let mut sweeps = 0;
    while sweeps < budget {
        sweeps += 1;
        let mut max_step = F::zero();
        for i in 0..d {
            let (v, dv) = horner_pair(monic, z[i]);
            if v.is_zero() {
                steps[i] = Complex::zero();
                continue;
            }
            let newton = if dv.norm() <= tiny {
                // Stationary start point; nudge off it and retry next sweep.
                Complex::from_polar(F::from(1e-3).unwrap() * radius, phase)
            } else {
                v / dv
            };
            let mut sum = Complex::<F>::zero();
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > tiny {
                        sum = sum + diff.inv();
                    }
                }
            }
            let denom = Complex::new(F::one(), F::zero()) - newton * sum;
            steps[i] = if denom.norm() <= tiny {
                newton
            } else {
                newton / denom
            };
            max_step = max_step.max(steps[i].norm());
        }
        for i in 0..d {
            z[i] = z[i] - steps[i];
        }
        if max_step < update_tol {
            break;
        }
    }
    // Residuals of the final iterates, not of the pre-update ones.
    let worst_residual = z
        .iter()
        .map(|&zi| horner(monic, zi).norm())
        .fold(F::zero(), F::max);
    SweepOutcome {
        roots: z,
        sweeps,
        worst_residual,
    }
}

/// Returns all `deg(p)` roots (with multiplicity) of `p(λ) - w`.
///
/// Every returned root carries the residual certificate
/// `|p(root) - w| <= tol * max(1, |w|, max|coeff(p)|)`; if the certificate
/// cannot be met within the iteration budget the call fails and names the
/// offending shift. Output order is the deterministic iteration order, so
/// identical inputs give identical point lists.
pub fn roots_shifted(p: &IntPoly, w: C64, tol: f64) -> Result<Vec<C64>> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::DegreeTooSmall {
                context: "roots_shifted",
                min: 1,
            })
        }
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance);
    }

    let mut shifted = complex_coeffs::<f64>(p);
    shifted[0] -= w;
    let lead = shifted[d];
    let monic: Vec<C64> = shifted.iter().map(|c| c / lead).collect();

    let scale = 1.0_f64.max(w.norm()).max(p.max_abs_coeff());
    let allowed = tol * scale;

    let mut worst = f64::INFINITY;
    let mut sweeps_used = 0;
    for phase in PHASES {
        let out = aberth_sweep(&monic, tol / 10.0, MAX_SWEEPS, phase);
        sweeps_used += out.sweeps;
        let certified = out
            .roots
            .iter()
            .map(|&z| (p.eval::<f64>(z) - w).norm())
            .fold(0.0, f64::max);
        worst = worst.min(certified);
        if certified <= allowed && out.roots.iter().all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Ok(out.roots);
        }
    }
    Err(Error::RootsNotCertified {
        shift: w,
        worst,
        allowed,
        sweeps: sweeps_used,
    })
}
