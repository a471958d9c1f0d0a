//! Exact banded truncations of doubly infinite hopping operators.
//!
//! A truncation lives on the index window [-N, N] and stores arbitrary-
//! precision integer entries in banded form. Polynomial images of hopping
//! operators stay banded and integral, so structural statements about the
//! infinite operators (Laurent form of `p_k(A)`, the block pattern of the
//! lifted construction) can be checked entry-exactly on the window interior.
//! Each multiplication widens the boundary region contaminated by the cut by
//! one band width; entry (i, j) is trusted iff `max(|i|, |j|) ≤ N - margin`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hopping::{Sign, SignSeq};
use crate::IntPoly;

/// Banded integer matrix on the symmetric index window [-N, N].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandTruncation {
    half_width: i64,
    band: usize,
    margin: i64,
    /// rows[(i + N)][(j - i + band)] holds entry (i, j).
    rows: Vec<Vec<BigInt>>,
}

impl BandTruncation {
    fn empty(half_width: i64, band: usize) -> BandTruncation {
        let dim = (2 * half_width + 1) as usize;
        BandTruncation {
            half_width,
            band,
            margin: 0,
            rows: vec![vec![BigInt::zero(); 2 * band + 1]; dim],
        }
    }

    /// Scalar multiple of the identity, band 0.
    pub fn scalar(half_width: i64, c: &BigInt) -> BandTruncation {
        let mut t = BandTruncation::empty(half_width, 0);
        for row in &mut t.rows {
            row[0] = c.clone();
        }
        t
    }

    /// Tridiagonal truncation with unit superdiagonal, zero diagonal and
    /// subdiagonal entry `sub(i)` in row `i`.
    pub fn tridiagonal(half_width: i64, sub: impl Fn(i64) -> Sign) -> BandTruncation {
        let mut t = BandTruncation::empty(half_width, 1);
        for i in -half_width..=half_width {
            if i + 1 <= half_width {
                *t.entry_mut(i, i + 1) = BigInt::from(1);
            }
            if i - 1 >= -half_width {
                *t.entry_mut(i, i - 1) = sub(i).to_bigint();
            }
        }
        t
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn band(&self) -> usize {
        self.band
    }

    /// Contamination depth: entries with `max(|i|, |j|) > N - margin` may
    /// differ from the infinite operator.
    pub fn margin(&self) -> i64 {
        self.margin
    }

    pub fn dim(&self) -> usize {
        (2 * self.half_width + 1) as usize
    }

    pub fn is_interior(&self, i: i64, j: i64) -> bool {
        i.abs().max(j.abs()) <= self.half_width - self.margin
    }

    fn in_window(&self, i: i64) -> bool {
        i.abs() <= self.half_width
    }

    fn entry_mut(&mut self, i: i64, j: i64) -> &mut BigInt {
        let off = j - i;
        debug_assert!(off.unsigned_abs() as usize <= self.band);
        &mut self.rows[(i + self.half_width) as usize][(off + self.band as i64) as usize]
    }

    /// Entry (i, j); zero outside the window or the band.
    pub fn entry(&self, i: i64, j: i64) -> BigInt {
        if !self.in_window(i) || !self.in_window(j) {
            return BigInt::zero();
        }
        let off = j - i;
        if off.unsigned_abs() as usize > self.band {
            return BigInt::zero();
        }
        self.rows[(i + self.half_width) as usize][(off + self.band as i64) as usize].clone()
    }

    /// Banded product `self · rhs`; the cut drops contributions from outside
    /// the window, which is what widens the untrusted margin.
    pub fn mul(&self, rhs: &BandTruncation) -> BandTruncation {
        assert_eq!(self.half_width, rhs.half_width);
        let n = self.half_width;
        let band = self.band + rhs.band;
        let mut out = BandTruncation::empty(n, band);
        out.margin = self.margin + rhs.margin + rhs.band as i64;
        for i in -n..=n {
            for off in -(band as i64)..=(band as i64) {
                let j = i + off;
                if !self.in_window(j) {
                    continue;
                }
                let mut acc = BigInt::zero();
                for off_l in -(self.band as i64)..=(self.band as i64) {
                    let l = i + off_l;
                    if !self.in_window(l) {
                        continue;
                    }
                    if (j - l).unsigned_abs() as usize > rhs.band {
                        continue;
                    }
                    let a = &self.rows[(i + n) as usize][(off_l + self.band as i64) as usize];
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * &rhs.rows[(l + n) as usize][(j - l + rhs.band as i64) as usize];
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn add_scalar_diag(&mut self, c: &BigInt) {
        let band = self.band as i64;
        for row in &mut self.rows {
            row[band as usize] += c;
        }
    }
}

/// Truncation of the `k`-periodic hopping operator on [-N, N], aligned so
/// that row `rm + j` carries subdiagonal entry `k_j`.
pub fn periodic_truncation(k: &SignSeq, half_width: i64) -> Result<BandTruncation> {
    let m = k.len() as i64;
    if half_width < m {
        return Err(Error::TruncationTooSmall {
            needed: m,
            got: half_width,
        });
    }
    Ok(BandTruncation::tridiagonal(half_width, |i| k.at_periodic(i)))
}

/// Exact Horner evaluation `p(A)` over banded integer matrices. The result
/// has band `deg(p) · band(A)` and margin grown accordingly; entries outside
/// the interior are present but flagged untrusted via [`BandTruncation::is_interior`].
pub fn band_poly_apply(p: &IntPoly, a: &BandTruncation) -> Result<BandTruncation> {
    let d = p.degree().unwrap_or(0);
    let final_band = d * a.band.max(1);
    if final_band as i64 > 2 * a.half_width {
        return Err(Error::TruncationTooSmall {
            needed: final_band as i64,
            got: a.half_width,
        });
    }
    if p.is_zero() {
        return Ok(BandTruncation::scalar(a.half_width, &BigInt::zero()));
    }
    let mut acc = BandTruncation::scalar(a.half_width, &p.coeff(d));
    for i in (0..d).rev() {
        acc = acc.mul(a);
        let c = p.coeff(i);
        if !c.is_zero() {
            acc.add_scalar_diag(&c);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopping::hopping_poly;

    fn seq(v: &[i64]) -> SignSeq {
        SignSeq::from_values(v).unwrap()
    }

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Dense mirror of a truncation for the matrix-power oracle.
    fn dense(t: &BandTruncation) -> Vec<Vec<BigInt>> {
        let n = t.half_width();
        (-n..=n)
            .map(|i| (-n..=n).map(|j| t.entry(i, j)).collect())
            .collect()
    }

    fn dense_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = a.len();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = &a[i][l] * &b[l][j];
                    out[i][j] += prod;
                }
            }
        }
        out
    }

    fn dense_poly_apply(p: &IntPoly, a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = a.len();
        let d = p.degree().unwrap_or(0);
        let mut acc = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            acc[i][i] = p.coeff(d);
        }
        for idx in (0..d).rev() {
            acc = dense_mul(&acc, a);
            for i in 0..n {
                acc[i][i] += p.coeff(idx);
            }
        }
        acc
    }

    #[test]
    fn periodic_truncation_layout() {
        // k = (1): everything 1 off-diagonal
        let t = periodic_truncation(&seq(&[1]), 2).unwrap();
        for i in -2i64..=2 {
            for j in -2i64..=2 {
                let want = if (i - j).abs() == 1 { 1 } else { 0 };
                assert_eq!(t.entry(i, j), BigInt::from(want), "({i},{j})");
            }
        }

        // k = (-1, 1): subdiagonal alternates with row 1 carrying k_1 = -1
        let t = periodic_truncation(&seq(&[-1, 1]), 2).unwrap();
        assert_eq!(t.entry(1, 0), BigInt::from(-1));
        assert_eq!(t.entry(2, 1), BigInt::from(1));
        assert_eq!(t.entry(-1, -2), BigInt::from(-1));
        assert_eq!(t.entry(0, -1), BigInt::from(1));

        // diagonal all zero for any k
        let t = periodic_truncation(&seq(&[1, -1, -1]), 4).unwrap();
        for i in -4i64..=4 {
            assert_eq!(t.entry(i, i), BigInt::zero());
        }

        assert!(periodic_truncation(&seq(&[1, -1, -1]), 2).is_err());
    }

    #[test]
    fn identity_polynomial_reproduces_operator() {
        let t = periodic_truncation(&seq(&[1, -1]), 6).unwrap();
        let applied = band_poly_apply(&IntPoly::identity(), &t).unwrap();
        for i in -6i64..=6 {
            for j in -6i64..=6 {
                assert_eq!(applied.entry(i, j), t.entry(i, j));
            }
        }
    }

    #[test]
    fn square_of_shift_like_operator() {
        // p = λ² on k = (1): interior entry (i, i-2) = 1
        let t = periodic_truncation(&seq(&[1]), 20).unwrap();
        let sq = band_poly_apply(&ip(&[0, 0, 1]), &t).unwrap();
        for i in -10i64..=10 {
            assert_eq!(sq.entry(i, i - 2), BigInt::from(1));
        }
    }

    #[test]
    fn interior_matches_dense_oracle() {
        let cases = [
            (ip(&[0, -1, 0, 1]), seq(&[1, -1, 1])),
            (ip(&[-2, 0, 1]), seq(&[1, 1])),
            (ip(&[0, 0, -3, 0, 1]), seq(&[-1, 1, 1, -1])),
        ];
        for (p, k) in cases {
            let n = 20i64;
            let t = periodic_truncation(&k, n).unwrap();
            let banded = band_poly_apply(&p, &t).unwrap();
            let oracle = dense_poly_apply(&p, &dense(&t));
            let mut checked = 0usize;
            for i in -n..=n {
                for j in -n..=n {
                    if banded.is_interior(i, j) && (i - j).unsigned_abs() as usize <= banded.band()
                    {
                        assert_eq!(
                            banded.entry(i, j),
                            oracle[(i + n) as usize][(j + n) as usize],
                            "p={p}, k={k}, entry ({i},{j})"
                        );
                        checked += 1;
                    }
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn laurent_pattern_for_odd_period() {
        // p_k(A) for k = (1,-1,1): interior rows carry -1 at offset -3 and
        // +1 at offset +3, nothing else.
        let k = seq(&[1, -1, 1]);
        let p = hopping_poly(&k);
        let t = periodic_truncation(&k, 30).unwrap();
        let img = band_poly_apply(&p, &t).unwrap();
        for i in -24i64..=24 {
            for off in -3i64..=3 {
                let want = match off {
                    3 => BigInt::from(1),
                    -3 => BigInt::from(-1),
                    _ => BigInt::zero(),
                };
                assert_eq!(img.entry(i, i + off), want, "row {i}, offset {off}");
            }
        }
    }

    #[test]
    fn rejects_windows_too_small_for_the_degree() {
        let t = periodic_truncation(&seq(&[1]), 2).unwrap();
        assert!(band_poly_apply(&ip(&[0, 0, 0, 0, 0, 1]), &t).is_err());
    }
}
