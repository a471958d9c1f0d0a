//! Enumeration of the symmetry set `S` and its composition closure `T`.
//!
//! A period `k = (k_1, .., k_{m-2}, -1, 1)` generates a symmetry when its
//! polynomial is unchanged by swapping the final two entries to `(1, -1)`:
//! `p_k = p_k̂`. Those polynomials map the periodic part of the spectrum into
//! itself under preimage, so their disk preimages (and the preimages under
//! arbitrary compositions) are all spectral subsets. Enumeration is
//! exhaustive over the `2^{m-2}` prefixes per degree; no pruning.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopping::{hopping_poly, Sign, SignSeq};
use crate::IntPoly;

/// One enumerated symmetry: the generating period, its tail-swapped twin and
/// their shared polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryEntry {
    pub k: SignSeq,
    pub k_hat: SignSeq,
    pub poly: IntPoly,
}

/// All entries of one degree, in lexicographic order of `k` with +1 before
/// -1, plus the deduplicated polynomial view in first-appearance order.
#[derive(Clone, Debug, Default)]
pub struct DegreeSlice {
    pub degree: usize,
    pub entries: Vec<SymmetryEntry>,
    pub distinct: Vec<IntPoly>,
}

/// The symmetry set `S` enumerated through a maximum degree.
#[derive(Clone, Debug)]
pub struct SymmetrySet {
    pub max_degree: usize,
    slices: Vec<DegreeSlice>,
}

impl SymmetrySet {
    pub fn slice(&self, degree: usize) -> Option<&DegreeSlice> {
        if degree < 2 || degree > self.max_degree {
            return None;
        }
        Some(&self.slices[degree - 2])
    }

    pub fn slices(&self) -> &[DegreeSlice] {
        &self.slices
    }

    pub fn entries(&self) -> impl Iterator<Item = &SymmetryEntry> {
        self.slices.iter().flat_map(|s| s.entries.iter())
    }

    /// Distinct polynomials with `min_degree ≤ deg ≤ max_degree`, by degree.
    pub fn distinct_in_range(&self, min_degree: usize, max_degree: usize) -> Vec<&IntPoly> {
        self.slices
            .iter()
            .filter(|s| s.degree >= min_degree && s.degree <= max_degree)
            .flat_map(|s| s.distinct.iter())
            .collect()
    }

    pub fn distinct_up_to(&self, max_degree: usize) -> Vec<&IntPoly> {
        self.distinct_in_range(2, max_degree)
    }
}

fn prefix_sequence(mask: u64, prefix_len: usize) -> Vec<Sign> {
    // Bit (prefix_len-1-idx) encodes position idx, so increasing mask walks
    // the prefixes in lexicographic order with +1 before -1.
    (0..prefix_len)
        .map(|idx| {
            if mask >> (prefix_len - 1 - idx) & 1 == 1 {
                Sign::Minus
            } else {
                Sign::Plus
            }
        })
        .collect()
}

fn degree_slice(m: usize) -> DegreeSlice {
    let prefix_len = m - 2;
    let entries: Vec<SymmetryEntry> = (0u64..(1 << prefix_len))
        .into_par_iter()
        .filter_map(|mask| {
            let mut v = prefix_sequence(mask, prefix_len);
            v.push(Sign::Minus);
            v.push(Sign::Plus);
            let k = SignSeq::new(v).expect("length m >= 2");
            let k_hat = k.tail_swapped().expect("length m >= 2");
            let p = hopping_poly(&k);
            (p == hopping_poly(&k_hat)).then_some(SymmetryEntry { k, k_hat, poly: p })
        })
        .collect();
    let mut distinct: Vec<IntPoly> = Vec::new();
    for e in &entries {
        if !distinct.contains(&e.poly) {
            distinct.push(e.poly.clone());
        }
    }
    DegreeSlice {
        degree: m,
        entries,
        distinct,
    }
}

/// Enumerates `S` for every degree `2 ..= max_degree`.
pub fn enumerate_s(max_degree: usize) -> Result<SymmetrySet> {
    if max_degree < 2 {
        return Err(Error::BadMaxDegree {
            min: 2,
            got: max_degree,
        });
    }
    let slices = (2..=max_degree).map(degree_slice).collect();
    Ok(SymmetrySet { max_degree, slices })
}

/// Whether both all-plus and all-minus prefix families appear in degree `m`:
/// the periods `(1, .., 1, -1, 1)` and `(-1, .., -1, -1, 1)` always generate
/// symmetries.
pub fn trivial_families_present(s: &SymmetrySet, m: usize) -> bool {
    let Some(slice) = s.slice(m) else {
        return false;
    };
    let all = |sign: Sign| {
        let mut v = vec![sign; m - 2];
        v.push(Sign::Minus);
        v.push(Sign::Plus);
        SignSeq::new(v).expect("m >= 2")
    };
    let plus = all(Sign::Plus);
    let minus = all(Sign::Minus);
    slice.entries.iter().any(|e| e.k == plus) && slice.entries.iter().any(|e| e.k == minus)
}

/// One row of the per-degree count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub degree: usize,
    pub entry_count: usize,
    pub distinct_count: usize,
    /// 2^(⌈m/2⌉ - 1), the conjectured distinct count. Informational only;
    /// the actual counts deviate already at degree 6.
    pub conjectured: u64,
}

pub fn count_report(s: &SymmetrySet) -> Vec<CountRow> {
    s.slices()
        .iter()
        .map(|slice| {
            let m = slice.degree;
            CountRow {
                degree: m,
                entry_count: slice.entries.len(),
                distinct_count: slice.distinct.len(),
                conjectured: 1u64 << (m.div_ceil(2) - 1),
            }
        })
        .collect()
}

/// One element of the composition closure: the polynomial together with the
/// chain that produced it, outermost factor first (shortest chain found).
#[derive(Clone, Debug)]
pub struct ClosureEntry {
    pub chain: Vec<IntPoly>,
    pub poly: IntPoly,
}

fn coeff_key(p: &IntPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

/// All compositions `p_1 ∘ … ∘ p_n` of distinct polynomials in `S` with
/// `n ≤ max_chain` and total degree ≤ `max_total_degree`, deduplicated
/// coefficient-wise and sorted by degree, then lexicographic coefficients.
pub fn closure_t(
    s: &SymmetrySet,
    max_total_degree: usize,
    max_chain: usize,
) -> Vec<ClosureEntry> {
    let generators: Vec<&IntPoly> = s
        .distinct_up_to(s.max_degree)
        .into_iter()
        .filter(|p| p.degree().unwrap_or(0) <= max_total_degree)
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out: Vec<ClosureEntry> = Vec::new();
    let mut level: Vec<ClosureEntry> = generators
        .iter()
        .map(|&p| ClosureEntry {
            chain: vec![p.clone()],
            poly: p.clone(),
        })
        .collect();
    let mut depth = 1;
    while !level.is_empty() && depth <= max_chain {
        let mut next = Vec::new();
        for entry in level {
            let is_new = seen.insert(coeff_key(&entry.poly));
            if is_new {
                out.push(entry.clone());
            }
            // a repeated polynomial reproduces the extensions of its first
            // occurrence, so only new ones are extended
            if depth == max_chain || !is_new {
                continue;
            }
            let deg = entry.poly.degree().expect("closure members are nonconstant");
            for &inner in &generators {
                let inner_deg = inner.degree().expect("generators are nonconstant");
                if deg * inner_deg > max_total_degree {
                    continue;
                }
                let mut chain = entry.chain.clone();
                chain.push(inner.clone());
                next.push(ClosureEntry {
                    poly: entry.poly.compose(inner),
                    chain,
                });
            }
        }
        level = next;
        depth += 1;
    }
    out.sort_by(|a, b| {
        let da = a.poly.degree().unwrap_or(0);
        let db = b.poly.degree().unwrap_or(0);
        da.cmp(&db).then_with(|| coeff_key(&a.poly).cmp(&coeff_key(&b.poly)))
    });
    out
}
