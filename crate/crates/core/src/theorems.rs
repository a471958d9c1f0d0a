//! Executable verification of the structural identities behind the symmetry
//! set.
//!
//! The chain of facts being checked, each on exact integer truncations or
//! against independent numerics:
//!
//! * `p_k(a^k(φ))` collapses to the scalar `(e^{iφ}∏k_j + e^{-iφ})·I`, and
//!   `p_k` of the periodic operator is the Laurent operator with ±1 at
//!   offsets ±m ([`verify_symbol_scalar`], [`verify_laurent_form`]).
//! * For a period `b` and a symmetry generator `k` there is a lifted period
//!   `c` of length `nm` such that `p_k(A^c)` contains `A^b` as the block on
//!   the lattice `mℤ`: rows `rm` carry exactly `b_r` at column `(r-1)m`, `1`
//!   at column `rm+m` and zeros in between ([`lift_period`],
//!   [`verify_block_structure`], [`verify_power_structure`]).
//! * On polynomials this reads `q ∘ p = r` exactly, where `q, p, r` are the
//!   polynomials of `b`, `k`, `c` ([`verify_composition_identity`]), and on
//!   symbols it gives the spectral inclusion
//!   `spec(a^b(φ)) ⊂ spec(p(a^c(φ)))` ([`verify_spectral_inclusion`]).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::band::{band_poly_apply, periodic_truncation, BandTruncation};
use crate::error::{Error, Result};
use crate::hopping::{
    hopping_poly, symbol_shift, PeriodParity, Sign, SignSeq, SymbolMatrix,
};
use crate::roots::roots_shifted;
use crate::symmetries::SymmetrySet;
use crate::C64;

/// The lifted period `c` of length `n·m` built from a period `b` (length n,
/// even) and a symmetry generator `k` (length m, ending in `(-1, 1)`).
///
/// Within each block `r` the positions `rm+2 .. rm+m-1` carry the fixed
/// interior `k_1 .. k_{m-2}`; the block head pair `(c_{rm}, c_{rm+1})` is
/// either `(1, -1)` or `(-1, 1)`, chosen by the recurrence
/// `c_{rm} = -b_r · c_{(r-1)m} · ∏_{i=1}^{m-2} k_i` anchored at `c_0 = 1`,
/// which realizes the defining block products `∏_{j=0}^{m-1} c_{rm-j} = b_r`.
#[derive(Clone, Debug)]
pub struct PeriodLift {
    b: SignSeq,
    k: SignSeq,
    /// `c_{rm}` for `r = 0 .. n-1`.
    heads: Vec<Sign>,
    /// The window `(c_1, .., c_{nm})`.
    window: SignSeq,
}

impl PeriodLift {
    pub fn b(&self) -> &SignSeq {
        &self.b
    }

    pub fn k(&self) -> &SignSeq {
        &self.k
    }

    pub fn block_len(&self) -> usize {
        self.k.len()
    }

    pub fn block_count(&self) -> usize {
        self.b.len()
    }

    /// The period window `(c_1, .., c_{nm})`.
    pub fn window(&self) -> &SignSeq {
        &self.window
    }

    /// `c_{rm}` for any block index.
    pub fn head(&self, r: i64) -> Sign {
        self.heads[r.rem_euclid(self.block_count() as i64) as usize]
    }

    /// `b_r` for any integer index (1-aligned period).
    pub fn b_at(&self, r: i64) -> Sign {
        let n = self.block_count() as i64;
        self.b[(r - 1).rem_euclid(n) as usize]
    }

    /// Value `c_i` of the lifted bi-infinite sequence at any absolute index.
    pub fn value_at(&self, i: i64) -> Sign {
        let m = self.block_len() as i64;
        let r = i.div_euclid(m);
        let j = i.rem_euclid(m);
        match j {
            0 => self.head(r),
            1 => self.head(r).flip(),
            _ => self.k[(j - 1) as usize - 1],
        }
    }

    /// The defining block product `∏_{j=0}^{m-1} c_{rm-j}`.
    pub fn block_product(&self, r: i64) -> Sign {
        let m = self.block_len() as i64;
        (0..m).fold(Sign::Plus, |acc, j| acc * self.value_at(r * m - j))
    }
}

/// Builds the lifted period for `(b, k)`.
///
/// Rejects `k` without the `(-1, 1)` tail and odd `b` (entry product -1).
/// When `b` has odd length the block-head recurrence may fail to close after
/// `n` blocks; that case is rejected with a hint to double the period first
/// (doubling describes the same operator). [`prepare_period`] applies the
/// doubling rule automatically.
pub fn lift_period(b: &SignSeq, k: &SignSeq) -> Result<PeriodLift> {
    if !k.has_symmetry_tail() {
        return Err(Error::BadSymmetryTail { seq: k.to_string() });
    }
    if b.parity() != PeriodParity::Even {
        return Err(Error::OddPeriod { seq: b.to_string() });
    }
    let n = b.len();
    let m = k.len();
    let interior_product = k.entries()[..m - 2]
        .iter()
        .fold(Sign::Plus, |acc, &s| acc * s);
    let mut heads = Vec::with_capacity(n + 1);
    heads.push(Sign::Plus); // anchor c_0 = 1
    for r in 1..=n {
        let prev = heads[r - 1];
        heads.push(b[r - 1] * prev * interior_product * Sign::Minus);
    }
    if heads[n] != heads[0] {
        return Err(Error::PeriodNotClosed { len: n });
    }
    heads.pop();
    let value_at = |i: i64| -> Sign {
        let r = i.div_euclid(m as i64);
        let j = i.rem_euclid(m as i64);
        let head = heads[r.rem_euclid(n as i64) as usize];
        match j {
            0 => head,
            1 => head.flip(),
            _ => k[j as usize - 2],
        }
    };
    let window = SignSeq::new((1..=(n * m) as i64).map(value_at).collect())
        .expect("window length nm >= 2");
    Ok(PeriodLift {
        b: b.clone(),
        k: k.clone(),
        heads,
        window,
    })
}

/// The doubling rule: `b` is doubled once when its entry product is -1 or
/// its length is odd, which is exactly when the lifted period would not
/// close. Doubling does not change the described operator.
pub fn prepare_period(b: &SignSeq, k: &SignSeq) -> SignSeq {
    let m = k.len();
    let interior_product = k.entries()[..m.saturating_sub(2)]
        .iter()
        .fold(Sign::Plus, |acc, &s| acc * s);
    let closes = b.parity() == PeriodParity::Even
        && (b.len() % 2 == 0 || interior_product == Sign::Minus);
    if closes {
        b.clone()
    } else {
        b.doubled()
    }
}

/// Outcome of one verification: check name, parameters, pass/fail, the worst
/// numeric residual (0 for exact integer checks) and, on failure, a
/// reproducible coordinate.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: &'static str,
    pub params: String,
    pub passed: bool,
    pub worst_residual: f64,
    pub detail: Option<String>,
}

impl VerificationReport {
    fn pass(name: &'static str, params: String, worst: f64) -> Self {
        VerificationReport {
            name,
            params,
            passed: true,
            worst_residual: worst,
            detail: None,
        }
    }

    fn fail(name: &'static str, params: String, worst: f64, detail: String) -> Self {
        VerificationReport {
            name,
            params,
            passed: false,
            worst_residual: worst,
            detail: Some(detail),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} {} worst_residual={:.3e}",
            self.name, self.params, self.worst_residual
        )?;
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

/// Checks `p_k(a^k(φ)) = (e^{iφ}∏k_j + e^{-iφ})·I` (that is, `2cos(φ)·I` for
/// even `k` and `-2i·sin(φ)·I` for odd `k`) by dense Horner evaluation at
/// every φ in the grid.
pub fn verify_symbol_scalar(k: &SignSeq, phis: &[f64], tol: f64) -> VerificationReport {
    let name = "symbol_scalar";
    let params = format!("k={k} phis={} tol={tol:.1e}", phis.len());
    let p = hopping_poly(k);
    let m = k.len();
    let mut worst = 0.0f64;
    for &phi in phis {
        let image = SymbolMatrix::new(k, phi).poly_apply(&p);
        let target = symbol_shift(k, phi);
        for i in 0..m {
            for j in 0..m {
                let want = if i == j { target } else { C64::zero() };
                let resid = (image.at(i, j) - want).norm();
                if resid > worst {
                    worst = resid;
                }
                if resid > tol {
                    return VerificationReport::fail(
                        name,
                        params,
                        resid,
                        format!("phi={phi}, entry=({i},{j})"),
                    );
                }
            }
        }
    }
    VerificationReport::pass(name, params, worst)
}

/// Checks that `p_k(A^k_per)` truncates to the Laurent operator with 1 on the
/// m-th superdiagonal and ∏k_j on the m-th subdiagonal, integer-exactly on
/// the window interior.
pub fn verify_laurent_form(k: &SignSeq, half_width: i64) -> Result<VerificationReport> {
    let name = "laurent_form";
    let m = k.len() as i64;
    let p = hopping_poly(k);
    let needed = m * (m + 1);
    if half_width < needed {
        return Err(Error::TruncationTooSmall {
            needed,
            got: half_width,
        });
    }
    let params = format!("k={k} N={half_width}");
    let image = band_poly_apply(&p, &periodic_truncation(k, half_width)?)?;
    let sub_value = BigInt::from(k.product().value());
    let band = image.band() as i64;
    let inner = half_width - 2 * m;
    for i in -inner..=inner {
        for off in -band..=band {
            let want = if off == m {
                BigInt::one()
            } else if off == -m {
                sub_value.clone()
            } else {
                BigInt::zero()
            };
            let got = image.entry(i, i + off);
            if got != want {
                return Ok(VerificationReport::fail(
                    name,
                    params,
                    1.0,
                    format!("entry ({i},{}): got {got}, want {want}", i + off),
                ));
            }
        }
    }
    Ok(VerificationReport::pass(name, params, 0.0))
}

fn lift_truncation(lift: &PeriodLift, half_width: i64) -> BandTruncation {
    BandTruncation::tridiagonal(half_width, |i| lift.value_at(i))
}

/// Interior block indices `r` such that rows/columns `rm` and `rm ± m` are
/// all trusted in a truncation with the given margin.
fn interior_blocks(half_width: i64, m: i64, margin: i64) -> std::ops::RangeInclusive<i64> {
    let r_max = (half_width - margin) / m - 1;
    -r_max..=r_max
}

/// Checks the block pattern of `p_k(A^c)` on the lattice rows and columns:
/// row `rm` is exactly `(b_r, 0, .., 0, 1)` across its band and column `rm`
/// is its mirror, for every interior block index `r`.
pub fn verify_block_structure(
    b: &SignSeq,
    k: &SignSeq,
    half_width: i64,
) -> Result<VerificationReport> {
    let name = "block_structure";
    let b = prepare_period(b, k);
    let lift = lift_period(&b, k)?;
    let m = k.len() as i64;
    let needed = 4 * m;
    if half_width < needed {
        return Err(Error::TruncationTooSmall {
            needed,
            got: half_width,
        });
    }
    let params = format!("b={b} k={k} N={half_width}");
    let p = hopping_poly(k);
    let image = band_poly_apply(&p, &lift_truncation(&lift, half_width))?;
    let band = image.band() as i64;
    let blocks = interior_blocks(half_width, m, image.margin());
    if blocks.is_empty() {
        return Err(Error::TruncationTooSmall {
            needed,
            got: half_width,
        });
    }
    let check = |i: i64, j: i64, want: BigInt| -> Option<VerificationReport> {
        let got = image.entry(i, j);
        (got != want).then(|| {
            VerificationReport::fail(
                name,
                params.clone(),
                1.0,
                format!("entry ({i},{j}): got {got}, want {want}"),
            )
        })
    };
    for r in blocks {
        let row = r * m;
        // row rm: b_r at column (r-1)m, 1 at column rm+m, zero elsewhere
        for off in -band..=band {
            let want = if off == -m {
                lift.b_at(r).to_bigint()
            } else if off == m {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if let Some(fail) = check(row, row + off, want) {
                return Ok(fail);
            }
        }
        // column rm: 1 from row (r-1)m, b_{r+1} from row (r+1)m, zero elsewhere
        for off in -band..=band {
            let want = if off == -m {
                BigInt::one()
            } else if off == m {
                lift.b_at(r + 1).to_bigint()
            } else {
                BigInt::zero()
            };
            if off == 0 {
                continue; // diagonal already covered by the row sweep
            }
            if let Some(fail) = check(row + off, row, want) {
                return Ok(fail);
            }
        }
    }
    Ok(VerificationReport::pass(name, params, 0.0))
}

/// Checks the power structure of the lifted operator: for `s ≤ m` the s-th
/// power has 1 on its s-th superdiagonal, zeros at offsets of the wrong
/// parity, and `(A^m)_{i,i-m} = ∏_{j=0}^{m-1} c_{i-j}` on the interior.
pub fn verify_power_structure(lift: &PeriodLift, half_width: i64) -> Result<VerificationReport> {
    let name = "power_structure";
    let m = lift.block_len() as i64;
    let needed = 3 * m.max(2);
    if half_width < needed {
        return Err(Error::TruncationTooSmall {
            needed,
            got: half_width,
        });
    }
    let params = format!("b={} k={} N={half_width}", lift.b(), lift.k());
    let a = lift_truncation(lift, half_width);
    let mut power = a.clone();
    for s in 1..=m {
        if s > 1 {
            power = power.mul(&a);
        }
        let inner = half_width - power.margin() - s;
        for i in -inner..=inner {
            for off in -s..=s {
                let got = power.entry(i, i + off);
                let parity_ok = (off + s) % 2 == 0;
                let want: Option<BigInt> = if off == s {
                    Some(BigInt::one())
                } else if !parity_ok {
                    Some(BigInt::zero())
                } else if s == m && off == -m {
                    let prod = (0..m).fold(Sign::Plus, |acc, j| acc * lift.value_at(i - j));
                    Some(prod.to_bigint())
                } else {
                    None
                };
                if let Some(want) = want {
                    if got != want {
                        return Ok(VerificationReport::fail(
                            name,
                            params,
                            1.0,
                            format!("power {s}, entry ({i},{}): got {got}, want {want}", i + off),
                        ));
                    }
                }
            }
        }
    }
    Ok(VerificationReport::pass(name, params, 0.0))
}

/// Checks the exact composition identity `q ∘ p = r` for the polynomials of
/// `b`, `k` and the lifted period. Zero tolerance: coefficient lists must be
/// integer-equal.
pub fn verify_composition_identity(b: &SignSeq, k: &SignSeq) -> Result<VerificationReport> {
    let name = "composition_identity";
    let b = prepare_period(b, k);
    let lift = lift_period(&b, k)?;
    let params = format!("b={b} k={k}");
    let q = hopping_poly(&b);
    let p = hopping_poly(k);
    let r = hopping_poly(lift.window());
    let composed = q.compose(&p);
    if composed == r {
        Ok(VerificationReport::pass(name, params, 0.0))
    } else {
        Ok(VerificationReport::fail(
            name,
            params,
            1.0,
            format!(
                "q∘p = [{}] but r = [{}]",
                composed.coeff_list(),
                r.coeff_list()
            ),
        ))
    }
}

/// Checks the finite symbol-eigenvalue inclusion: for every φ, each
/// eigenvalue μ of `a^b(φ)` is matched by some eigenvalue λ of `a^c(φ)` with
/// `|p(λ) - μ| ≤ tol`. Eigenvalues are computed as the root sets of
/// `q(μ) = shift(φ)` and `r(λ) = shift(φ)`.
pub fn verify_spectral_inclusion(
    b: &SignSeq,
    k: &SignSeq,
    phis: &[f64],
    tol: f64,
) -> Result<VerificationReport> {
    let name = "spectral_inclusion";
    let b = prepare_period(b, k);
    let lift = lift_period(&b, k)?;
    let params = format!("b={b} k={k} phis={} tol={tol:.1e}", phis.len());
    let q = hopping_poly(&b);
    let p = hopping_poly(k);
    let r = hopping_poly(lift.window());
    let root_tol = (tol * 1e-2).min(1e-9);
    let mut worst = 0.0f64;
    for &phi in phis {
        let shift = symbol_shift(&b, phi);
        debug_assert!((shift - symbol_shift(lift.window(), phi)).norm() < 1e-12);
        let mus = roots_shifted(&q, shift, root_tol)?;
        let lambdas = roots_shifted(&r, shift, root_tol)?;
        for mu in mus {
            let best = lambdas
                .iter()
                .map(|&l| (p.eval::<f64>(l) - mu).norm())
                .fold(f64::INFINITY, f64::min);
            if best > worst {
                worst = best;
            }
            if best > tol {
                return Ok(VerificationReport::fail(
                    name,
                    params,
                    best,
                    format!("phi={phi}, mu={mu}"),
                ));
            }
        }
    }
    Ok(VerificationReport::pass(name, params, worst))
}

/// Equispaced φ grid on [0, 2π).
pub fn phi_grid(count: usize) -> Vec<f64> {
    let tau = std::f64::consts::TAU;
    (0..count).map(|i| tau * (i as f64) / (count as f64)).collect()
}

/// All ±1 sequences of a given length, in lexicographic order.
pub fn all_sign_seqs(len: usize) -> Vec<SignSeq> {
    (0u64..(1 << len))
        .map(|mask| {
            SignSeq::new(
                (0..len)
                    .map(|i| {
                        if mask >> (len - 1 - i) & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect(),
            )
            .expect("len >= 1")
        })
        .collect()
}

/// All even sequences (entry product +1) of lengths `1 ..= max_len`.
pub fn even_sign_seqs_up_to(max_len: usize) -> Vec<SignSeq> {
    (1..=max_len)
        .flat_map(all_sign_seqs)
        .filter(|s| s.parity() == PeriodParity::Even)
        .collect()
}

/// Deterministic random `(b, k)` sweep pairs: `b` even of length ≤
/// `max_b_len`, `k` drawn from the enumerated symmetry entries of degree ≤
/// `max_k_degree`.
pub fn random_pairs(
    s: &SymmetrySet,
    count: usize,
    max_b_len: usize,
    max_k_degree: usize,
    seed: u64,
) -> Vec<(SignSeq, SignSeq)> {
    let ks: Vec<&SignSeq> = s
        .entries()
        .filter(|e| e.k.len() <= max_k_degree)
        .map(|e| &e.k)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(1..=max_b_len);
        let mut signs: Vec<Sign> = (0..len)
            .map(|_| if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus })
            .collect();
        let product = signs.iter().fold(Sign::Plus, |acc, &x| acc * x);
        if product == Sign::Minus {
            let last = signs.last_mut().expect("len >= 1");
            *last = last.flip();
        }
        let b = SignSeq::new(signs).expect("len >= 1");
        let k = ks[rng.gen_range(0..ks.len())].clone();
        out.push((b, k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetries::enumerate_s;
    use crate::IntPoly;

    fn seq(v: &[i64]) -> SignSeq {
        SignSeq::from_values(v).unwrap()
    }

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn lift_square_root_construction() {
        // b = (1,1), k = (-1,1): window (c_1..c_4) = (-1,-1,1,1)
        let lift = lift_period(&seq(&[1, 1]), &seq(&[-1, 1])).unwrap();
        assert_eq!(lift.window(), &seq(&[-1, -1, 1, 1]));
        for r in -4..=4 {
            assert_eq!(lift.block_product(r), lift.b_at(r), "block {r}");
            assert_eq!(lift.value_at(r * 2 + 1), lift.value_at(r * 2).flip());
        }
        // even b lifts to an even window
        assert_eq!(lift.window().parity(), PeriodParity::Even);
    }

    #[test]
    fn lift_length_six_window() {
        let lift = lift_period(&seq(&[1, 1]), &seq(&[1, -1, 1])).unwrap();
        assert_eq!(lift.window().len(), 6);
        for r in -3..=3 {
            assert_eq!(lift.block_product(r), lift.b_at(r));
        }
    }

    /// Exhaustive constraint-propagation oracle: the lift is the unique ±1
    /// window satisfying all defining constraints with the anchor c_0 = 1.
    #[test]
    fn lift_is_unique_solution_of_the_constraints() {
        let cases = [
            (seq(&[1, 1]), seq(&[-1, 1])),
            (seq(&[1, 1]), seq(&[1, -1, 1])),
            (seq(&[-1, -1]), seq(&[-1, 1])),
            (seq(&[1, -1, -1, 1]), seq(&[-1, 1])),
            (seq(&[1, 1]), seq(&[1, 1, 1, -1, 1])),
        ];
        for (b, k) in cases {
            let n = b.len();
            let m = k.len();
            let nm = n * m;
            assert!(nm <= 12);
            let lift = lift_period(&b, &k).unwrap();
            let mut solutions = Vec::new();
            for mask in 0u64..(1 << nm) {
                // candidate window (c_0 .. c_{nm-1})
                let cand: Vec<Sign> = (0..nm)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Sign::Minus
                        } else {
                            Sign::Plus
                        }
                    })
                    .collect();
                let at = |i: i64| cand[i.rem_euclid(nm as i64) as usize];
                if at(0) != Sign::Plus || at(1) != Sign::Minus {
                    continue;
                }
                let interior_ok = (0..n as i64).all(|r| {
                    // positions rm+2 .. rm+(m-1) carry k_1 .. k_{m-2}
                    (2..m as i64).all(|j| at(r * m as i64 + j) == k[(j - 2) as usize])
                });
                let head_flip_ok =
                    (0..n as i64).all(|r| at(r * m as i64 + 1) == at(r * m as i64).flip());
                let products_ok = (0..n as i64).all(|r| {
                    let b_r = b[((r - 1).rem_euclid(n as i64)) as usize];
                    (0..m as i64).fold(Sign::Plus, |acc, j| acc * at(r * m as i64 - j)) == b_r
                });
                if interior_ok && head_flip_ok && products_ok {
                    solutions.push(cand);
                }
            }
            assert_eq!(solutions.len(), 1, "b={b}, k={k}");
            let want: Vec<Sign> = (0..nm as i64).map(|i| lift.value_at(i)).collect();
            assert_eq!(solutions[0], want, "b={b}, k={k}");
        }
    }

    #[test]
    fn lift_rejections() {
        // odd b
        assert!(matches!(
            lift_period(&seq(&[1, -1]), &seq(&[-1, 1])),
            Err(Error::OddPeriod { .. })
        ));
        // k without the symmetry tail
        assert!(matches!(
            lift_period(&seq(&[1, 1]), &seq(&[1, 1])),
            Err(Error::BadSymmetryTail { .. })
        ));
        // odd-length even b with interior product +1 does not close
        assert!(matches!(
            lift_period(&seq(&[1, 1, 1]), &seq(&[-1, 1])),
            Err(Error::PeriodNotClosed { .. })
        ));
        // but with interior product -1 it does
        let lift = lift_period(&seq(&[1, 1, 1]), &seq(&[-1, -1, 1])).unwrap();
        for r in -3..=3 {
            assert_eq!(lift.block_product(r), lift.b_at(r));
        }
    }

    #[test]
    fn prepare_period_doubling_rule() {
        let k2 = seq(&[-1, 1]);
        // already fine: untouched
        assert_eq!(prepare_period(&seq(&[1, 1]), &k2), seq(&[1, 1]));
        // odd product: doubled
        assert_eq!(prepare_period(&seq(&[1, -1, 1]), &k2), seq(&[1, -1, 1, 1, -1, 1]));
        // even product, odd length, interior product +1: doubled
        assert_eq!(prepare_period(&seq(&[1, 1, 1]), &k2), seq(&[1, 1, 1, 1, 1, 1]));
        // even product, odd length, interior product -1: closes unchanged
        assert_eq!(prepare_period(&seq(&[1, 1, 1]), &seq(&[-1, -1, 1])), seq(&[1, 1, 1]));
        // everything prepared must lift
        for b in even_sign_seqs_up_to(4) {
            let prepared = prepare_period(&b, &k2);
            assert!(lift_period(&prepared, &k2).is_ok(), "b={b}");
        }
    }

    #[test]
    fn symbol_scalar_examples() {
        // k = (1), φ = π/2: p(a) = [0]
        let r = verify_symbol_scalar(&seq(&[1]), &[std::f64::consts::FRAC_PI_2], 1e-12);
        assert!(r.passed, "{r}");
        // odd k at φ = 0: target is the zero matrix
        let r = verify_symbol_scalar(&seq(&[-1, 1]), &[0.0], 1e-12);
        assert!(r.passed, "{r}");
        // 16 φ samples on a longer period
        let r = verify_symbol_scalar(&seq(&[1, 1, -1, 1]), &phi_grid(16), 1e-10);
        assert!(r.passed, "{r}");
        assert!(r.worst_residual <= 1e-10);
    }

    #[test]
    fn laurent_form_examples() {
        let r = verify_laurent_form(&seq(&[1]), 10).unwrap();
        assert!(r.passed, "{r}");
        let r = verify_laurent_form(&seq(&[-1, 1]), 20).unwrap();
        assert!(r.passed, "{r}");
        let r = verify_laurent_form(&seq(&[1, -1, 1]), 30).unwrap();
        assert!(r.passed, "{r}");
        // window below the precondition is rejected
        assert!(verify_laurent_form(&seq(&[1, -1, 1]), 5).is_err());
    }

    #[test]
    fn block_structure_examples() {
        let r = verify_block_structure(&seq(&[1, 1]), &seq(&[-1, 1]), 40).unwrap();
        assert!(r.passed, "{r}");
        let r = verify_block_structure(&seq(&[1, -1, 1, -1]), &seq(&[1, -1, 1]), 60).unwrap();
        assert!(r.passed, "{r}");
        // all-ones b: nothing is swapped, reduces to the Laurent pattern
        let r = verify_block_structure(&seq(&[1, 1]), &seq(&[1, -1, 1]), 45).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn block_structure_stable_under_larger_windows() {
        let a = verify_block_structure(&seq(&[1, 1]), &seq(&[1, 1, -1, 1]), 48).unwrap();
        let b = verify_block_structure(&seq(&[1, 1]), &seq(&[1, 1, -1, 1]), 96).unwrap();
        assert!(a.passed && b.passed);
    }

    #[test]
    fn power_structure_examples() {
        let lift = lift_period(&seq(&[1, 1]), &seq(&[-1, 1])).unwrap();
        let r = verify_power_structure(&lift, 20).unwrap();
        assert!(r.passed, "{r}");
        let lift = lift_period(&seq(&[1, -1, -1, 1]), &seq(&[1, 1, -1, 1])).unwrap();
        let r = verify_power_structure(&lift, 40).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn composition_identity_examples() {
        // q = λ²-2, p = λ², r = λ⁴-2
        let r = verify_composition_identity(&seq(&[1, 1]), &seq(&[-1, 1])).unwrap();
        assert!(r.passed, "{r}");
        let lift = lift_period(&seq(&[1, 1]), &seq(&[-1, 1])).unwrap();
        assert_eq!(hopping_poly(lift.window()), ip(&[-2, 0, 0, 0, 1]));

        // q = λ²-2 composed with the cubic
        let r = verify_composition_identity(&seq(&[1, 1]), &seq(&[1, -1, 1])).unwrap();
        assert!(r.passed, "{r}");
        let lift = lift_period(&seq(&[1, 1]), &seq(&[1, -1, 1])).unwrap();
        assert_eq!(
            hopping_poly(lift.window()),
            ip(&[-2, 0, 1, 0, -2, 0, 1])
        );

        // doubled representation of the same operator also satisfies it
        let r = verify_composition_identity(&seq(&[1, 1, 1, 1]), &seq(&[-1, 1])).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn composition_identity_exhaustive_small() {
        let s = enumerate_s(5).unwrap();
        for b in even_sign_seqs_up_to(4) {
            for e in s.entries() {
                let r = verify_composition_identity(&b, &e.k).unwrap();
                assert!(r.passed, "{r}");
            }
        }
    }

    #[test]
    fn spectral_inclusion_examples() {
        let phis = [0.0, std::f64::consts::PI];
        let r = verify_spectral_inclusion(&seq(&[1, 1]), &seq(&[-1, 1]), &phis, 1e-7).unwrap();
        assert!(r.passed, "{r}");
        let r =
            verify_spectral_inclusion(&seq(&[1, -1, -1, 1]), &seq(&[1, -1, 1]), &phi_grid(8), 1e-7)
                .unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn forward_direction_sanity() {
        // p(λ) for any eigenvalue λ of a^c lands on an eigenvalue of a^b:
        // q(p(λ)) = r(λ) = shift, so p(λ) is a root of q - shift.
        let b = seq(&[1, 1]);
        let k = seq(&[-1, 1]);
        let lift = lift_period(&b, &k).unwrap();
        let q = hopping_poly(&b);
        let p = hopping_poly(&k);
        let r = hopping_poly(lift.window());
        let shift = symbol_shift(&b, 0.7);
        for lam in roots_shifted(&r, shift, 1e-10).unwrap() {
            let image = p.eval::<f64>(lam);
            assert!((q.eval::<f64>(image) - shift).norm() <= 1e-8);
        }
    }

    #[test]
    fn deterministic_sweep_helpers() {
        assert_eq!(phi_grid(4).len(), 4);
        assert_eq!(all_sign_seqs(3).len(), 8);
        let evens = even_sign_seqs_up_to(4);
        assert_eq!(evens.len(), 15);
        assert!(evens.iter().all(|b| b.parity() == PeriodParity::Even));

        let s = enumerate_s(5).unwrap();
        let a = random_pairs(&s, 10, 4, 5, 7);
        let b = random_pairs(&s, 10, 4, 5, 7);
        assert_eq!(a.len(), 10);
        for ((b1, k1), (b2, k2)) in a.iter().zip(&b) {
            assert_eq!(b1, b2);
            assert_eq!(k1, k2);
            assert_eq!(b1.parity(), PeriodParity::Even);
            assert!(k1.has_symmetry_tail());
        }
    }
}
