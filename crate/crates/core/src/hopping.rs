//! Sign sequences, the determinant recursion behind `p_k`, symbol matrices,
//! and periodic/finite spectra of hopping operators.
//!
//! A period `k ∈ {±1}^m` determines the `m`-periodic hopping operator with
//! unit superdiagonal and `k` repeated along the subdiagonal. Its symbol is
//! the `m×m` matrix `a^k(φ)` whose characteristic polynomial splits into a
//! φ-independent monic integer polynomial `p_k` and a pure phase term:
//!
//! ```text
//! det(a^k(φ) - λI) = (-1)^m (p_k(λ) - e^{iφ}·∏k_j - e^{-iφ})
//! ```
//!
//! so the spectrum of the periodic operator is `p_k^{-1}([-2,2])` for even
//! periods (entry product +1) and `p_k^{-1}(i[-2,2])` for odd ones. This
//! module computes `p_k` exactly via the three-term determinant recursion,
//! builds `a^k(φ)`, cross-checks the displayed identity against a generic
//! determinant, and samples the resulting spectra as point clouds.

use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::roots::roots_shifted;
use crate::{C64, IntPoly};

/// A single subdiagonal entry, exactly +1 or -1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_i64(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidSignToken {
                token: v.to_string(),
            }),
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.value())
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Parity of a period: even iff the product of its entries is +1.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PeriodParity {
    Even,
    Odd,
}

/// A finite ±1 sequence of length ≥ 1; the period of a hopping operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignSeq(Vec<Sign>);

impl SignSeq {
    pub fn new(entries: Vec<Sign>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySignSeq);
        }
        Ok(SignSeq(entries))
    }

    /// Builds from ±1 integers; any other value is rejected.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|&v| Sign::from_i64(v))
            .collect::<Result<Vec<_>>>()?;
        SignSeq::new(entries)
    }

    /// Parses the comma-separated text form, e.g. `"1,-1,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let v = token.parse::<i64>().map_err(|_| Error::InvalidSignToken {
                token: token.to_string(),
            })?;
            entries.push(Sign::from_i64(v)?);
        }
        SignSeq::new(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    pub fn product(&self) -> Sign {
        self.iter().fold(Sign::Plus, |acc, s| acc * s)
    }

    pub fn parity(&self) -> PeriodParity {
        match self.product() {
            Sign::Plus => PeriodParity::Even,
            Sign::Minus => PeriodParity::Odd,
        }
    }

    /// Cyclic left shift by `s` positions.
    pub fn rotated(&self, s: usize) -> SignSeq {
        let m = self.len();
        SignSeq((0..m).map(|i| self.0[(i + s) % m]).collect())
    }

    /// The period repeated twice; describes the same operator.
    pub fn doubled(&self) -> SignSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&self.0);
        SignSeq(v)
    }

    /// Whether the sequence ends in `(-1, 1)`, the tail pattern every
    /// symmetry-generating period carries.
    pub fn has_symmetry_tail(&self) -> bool {
        let m = self.len();
        m >= 2 && self.0[m - 2] == Sign::Minus && self.0[m - 1] == Sign::Plus
    }

    /// The sequence with its last two entries swapped.
    pub fn tail_swapped(&self) -> Option<SignSeq> {
        let m = self.len();
        if m < 2 {
            return None;
        }
        let mut v = self.0.clone();
        v.swap(m - 2, m - 1);
        Some(SignSeq(v))
    }

    /// Value of the bi-infinite periodic subdiagonal at absolute index `i`,
    /// aligned so that index 1 carries `k_1` (index `rm + j` carries `k_j`).
    pub fn at_periodic(&self, i: i64) -> Sign {
        let m = self.len() as i64;
        self.0[(i - 1).rem_euclid(m) as usize]
    }

    /// Key for lexicographic ordering with +1 before -1 (table order).
    pub fn lex_key(&self) -> Vec<u8> {
        self.iter()
            .map(|s| if s == Sign::Plus { 0 } else { 1 })
            .collect()
    }
}

impl std::ops::Index<usize> for SignSeq {
    type Output = Sign;

    fn index(&self, i: usize) -> &Sign {
        &self.0[i]
    }
}

impl fmt::Display for SignSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn neg_lambda() -> IntPoly {
    Poly::monomial(BigInt::from(-1), 1)
}

/// `D_size`: determinant of the size×size tridiagonal matrix with `-λ` on the
/// diagonal, 1 on the superdiagonal and `signs[0..size-1]` on the
/// subdiagonal, via the three-term recursion
/// `D_j = -λ·D_{j-1} - s_{j-1}·D_{j-2}`, `D_0 = 1`, `D_1 = -λ`.
fn charpoly_det(signs: &[Sign], size: usize) -> IntPoly {
    debug_assert!(size == 0 || signs.len() >= size - 1);
    if size == 0 {
        return IntPoly::one();
    }
    let minus_lambda = neg_lambda();
    let mut prev = IntPoly::one();
    let mut cur = minus_lambda.clone();
    for j in 2..=size {
        let s = signs[j - 2];
        let mut next = &minus_lambda * &cur;
        let tail = prev.scaled(&s.to_bigint());
        next = &next - &tail;
        prev = cur;
        cur = next;
    }
    cur
}

/// Characteristic-determinant polynomial of the tridiagonal matrix whose
/// subdiagonal is exactly `signs` (matrix size `signs.len() + 1`); the empty
/// slice yields the empty determinant 1.
pub fn tridiag_charpoly(signs: &[Sign]) -> IntPoly {
    if signs.is_empty() {
        return IntPoly::one();
    }
    charpoly_det(signs, signs.len() + 1)
}

/// The monic degree-`m` integer polynomial of a period `k`, the
/// φ-independent part of the symbol's characteristic polynomial:
///
/// ```text
/// p_k = (-1)^m ( D_m(k_1..k_{m-1}) - k_m · D_{m-2}(k_2..k_{m-2}) )
/// ```
///
/// with the edge conventions forced by the symbol determinant: `p = λ` for
/// `m = 1` and `p = λ² - k_1 - k_2` for `m = 2`.
pub fn hopping_poly(k: &SignSeq) -> IntPoly {
    let m = k.len();
    if m == 1 {
        return IntPoly::identity();
    }
    let first = charpoly_det(&k.entries()[..m - 1], m);
    let second = if m == 2 {
        IntPoly::one()
    } else {
        charpoly_det(&k.entries()[1..m - 2], m - 2)
    };
    let combined = &first - &second.scaled(&k[m - 1].to_bigint());
    if m % 2 == 0 {
        combined
    } else {
        -&combined
    }
}

/// The φ-dependent scalar `e^{iφ}·∏k_j + e^{-iφ}`; the right-hand side of
/// `p_k(λ) = shift` at the symbol's eigenvalues. Equals `2cos(φ)` for even
/// periods and `-2i·sin(φ)` for odd ones.
pub fn symbol_shift(k: &SignSeq, phi: f64) -> C64 {
    let fwd = C64::from_polar(1.0, phi);
    let bwd = C64::from_polar(1.0, -phi);
    fwd * (k.product().value() as f64) + bwd
}

/// The m×m symbol matrix `a^k(φ)`: unit superdiagonal, `k_1..k_{m-1}` on the
/// subdiagonal, phase corners `(1,m) = k_m·e^{iφ}` and `(m,1) = e^{-iφ}`.
///
/// For m ≤ 2 the corner and band positions coincide and the entries add:
/// `a = k_1·e^{iφ} + e^{-iφ}` for m = 1, and `(1,2) = 1 + k_2·e^{iφ}`,
/// `(2,1) = k_1 + e^{-iφ}` for m = 2. This is the unique convention under
/// which the closed-form determinant identity holds for every m.
#[derive(Clone, Debug)]
pub struct SymbolMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl SymbolMatrix {
    pub fn new(k: &SignSeq, phi: f64) -> SymbolMatrix {
        let m = k.len();
        let fwd = C64::from_polar(1.0, phi);
        let bwd = C64::from_polar(1.0, -phi);
        let mut data = vec![C64::new(0.0, 0.0); m * m];
        if m == 1 {
            data[0] = fwd * (k[0].value() as f64) + bwd;
            return SymbolMatrix { dim: 1, data };
        }
        for i in 0..m - 1 {
            data[i * m + i + 1] += C64::new(1.0, 0.0);
            data[(i + 1) * m + i] += C64::new(k[i].value() as f64, 0.0);
        }
        data[m - 1] += fwd * (k[m - 1].value() as f64);
        data[(m - 1) * m] += bwd;
        SymbolMatrix { dim: m, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    fn rows(&self) -> Vec<Vec<C64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.at(i, j)).collect())
            .collect()
    }

    /// Dense Horner evaluation of an integer polynomial at this matrix.
    pub fn poly_apply(&self, p: &IntPoly) -> SymbolMatrix {
        let m = self.dim;
        let coeffs: Vec<C64> = crate::roots::complex_coeffs(p);
        let mut acc = vec![C64::new(0.0, 0.0); m * m];
        for c in coeffs.iter().rev() {
            // acc = acc * self + c·I
            let mut next = vec![C64::new(0.0, 0.0); m * m];
            for i in 0..m {
                for l in 0..m {
                    let a = acc[i * m + l];
                    if a.norm_sqr() == 0.0 {
                        continue;
                    }
                    for j in 0..m {
                        next[i * m + j] += a * self.data[l * m + j];
                    }
                }
            }
            for i in 0..m {
                next[i * m + i] += c;
            }
            acc = next;
        }
        SymbolMatrix { dim: m, data: acc }
    }
}

/// Generic determinant by Laplace cofactor expansion along the first row,
/// skipping exactly-zero entries. Exponential in the dimension; intended for
/// the small symbol matrices handled here (m ≤ 10 or so) where it serves as
/// an implementation-independent check of the closed-form identity.
pub(crate) fn laplace_det(rows: &[Vec<C64>]) -> C64 {
    let n = rows.len();
    match n {
        0 => return C64::new(1.0, 0.0),
        1 => return rows[0][0],
        _ => {}
    }
    let mut det = C64::new(0.0, 0.0);
    for (j, &top) in rows[0].iter().enumerate() {
        if top.norm_sqr() == 0.0 {
            continue;
        }
        let minor: Vec<Vec<C64>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter_map(|(c, &v)| (c != j).then_some(v))
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += top * sign * laplace_det(&minor);
    }
    det
}

/// Residual `|det(a^k(φ) - λI) - (-1)^m (p_k(λ) - e^{iφ}∏k_j - e^{-iφ})|`,
/// with the left side computed by generic cofactor expansion and the right
/// side by the closed form. Zero (to rounding) for every `(k, φ, λ)`.
pub fn symbol_charpoly_residual(k: &SignSeq, phi: f64, lambda: C64) -> f64 {
    let m = k.len();
    let a = SymbolMatrix::new(k, phi);
    let mut rows = a.rows();
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let lhs = laplace_det(&rows);
    let p = hopping_poly(k);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = (p.eval::<f64>(lambda) - symbol_shift(k, phi)) * sign;
    (lhs - rhs).norm()
}

/// The target set a periodic spectrum is a preimage of, plus the closed unit
/// disk used by the spectral-subset renders.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SpectralTarget {
    /// The real segment [-2, 2] (even periods).
    RealSegment,
    /// The imaginary segment i·[-2, 2] (odd periods).
    ImagSegment,
    /// The closed unit disk.
    UnitDisk,
}

impl SpectralTarget {
    pub fn for_parity(parity: PeriodParity) -> SpectralTarget {
        match parity {
            PeriodParity::Even => SpectralTarget::RealSegment,
            PeriodParity::Odd => SpectralTarget::ImagSegment,
        }
    }

    pub fn contains(&self, z: C64, tol: f64) -> bool {
        match self {
            SpectralTarget::RealSegment => z.im.abs() <= tol && z.re.abs() <= 2.0 + tol,
            SpectralTarget::ImagSegment => z.re.abs() <= tol && z.im.abs() <= 2.0 + tol,
            SpectralTarget::UnitDisk => z.norm_sqr() <= 1.0 + tol,
        }
    }

    /// The `i`-th of `n ≥ 2` equispaced samples of a segment target.
    /// Symmetric about 0, endpoints included.
    pub fn segment_sample(&self, i: usize, n: usize) -> C64 {
        let t = -2.0 + 4.0 * (i as f64) / ((n - 1) as f64);
        match self {
            SpectralTarget::RealSegment => C64::new(t, 0.0),
            SpectralTarget::ImagSegment => C64::new(0.0, t),
            SpectralTarget::UnitDisk => panic!("unit disk is not a sampled segment"),
        }
    }
}

/// One spectrum sample: a root of `p_k(λ) = t` with its provenance.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SpectrumPoint {
    pub z: C64,
    pub t_index: usize,
    pub root_index: usize,
}

/// A sampled spectrum, ordered by sample index then root index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    pub points: Vec<SpectrumPoint>,
}

impl PointCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SpectrumPoint> {
        self.points.iter()
    }

    /// CSV form: header `re,im,t_index`, one row per root, LF line endings.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(b"re,im,t_index\n")?;
        for p in &self.points {
            writeln!(out, "{},{},{}", p.z.re, p.z.im, p.t_index)?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

/// Samples the spectrum of the `k`-periodic operator as the preimage of its
/// segment target: for each of `samples` equispaced `t` values, all roots of
/// `p_k(λ) = t`. Returns `samples · m` points; sample evaluation runs in
/// parallel but the output order is by sample index, then root index.
pub fn periodic_spectrum_points(k: &SignSeq, samples: usize, tol: f64) -> Result<PointCloud> {
    if samples < 2 {
        return Err(Error::TooFewSamples {
            min: 2,
            got: samples,
        });
    }
    let p = hopping_poly(k);
    let target = SpectralTarget::for_parity(k.parity());
    let per_sample: Vec<Vec<C64>> = (0..samples)
        .into_par_iter()
        .map(|i| roots_shifted(&p, target.segment_sample(i, samples), tol))
        .collect::<Result<_>>()?;
    let mut points = Vec::with_capacity(samples * k.len());
    for (t_index, roots) in per_sample.into_iter().enumerate() {
        for (root_index, z) in roots.into_iter().enumerate() {
            points.push(SpectrumPoint {
                z,
                t_index,
                root_index,
            });
        }
    }
    Ok(PointCloud { points })
}

/// Eigenvalues of the finite (n+1)×(n+1) hopping matrix with subdiagonal `k`,
/// computed as the roots of its exact characteristic determinant.
pub fn finite_spectrum(k: &SignSeq, tol: f64) -> Result<Vec<C64>> {
    let charpoly = tridiag_charpoly(k.entries());
    roots_shifted(&charpoly, C64::new(0.0, 0.0), tol)
}
