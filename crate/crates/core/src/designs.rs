//! Block designs held by codeword supports.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::numtheory::binomial;
use crate::subsets;
use crate::wdist::{minimum_distance, SupportScan, WeightDistribution};

/// Default limit on block-containment tests for [`verify_t_design`].
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Designs with more blocks than this are written to JSON without the block list.
pub const BLOCK_LIST_LIMIT: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: usize,
    kappa: usize,
    blocks: BTreeSet<Vec<usize>>,
    /// Number of codewords the blocks were read from, when known.
    raw: Option<u64>,
    t: usize,
    eta: Option<u128>,
}

impl Design {
    /// Blocks must be `kappa`-subsets of `{0, …, v-1}`; duplicates are merged.
    pub fn new(v: usize, kappa: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut b in blocks {
            b.sort_unstable();
            b.dedup();
            if b.len() != kappa || b.last().is_some_and(|&x| x >= v) {
                return Err(Error::DimensionMismatch(format!("block {b:?} is not a {kappa}-subset of {v} points")));
            }
            set.insert(b);
        }
        Ok(Design { v, kappa, blocks: set, raw: None, t: 0, eta: None })
    }

    /// The supports found by an exhaustive scan, with the codeword count kept as the raw
    /// multiplicity.
    pub fn from_scan(v: usize, scan: &SupportScan) -> Result<Self> {
        let mut d = Self::new(v, scan.weight, scan.supports.iter().map(|&m| subsets::unmask(m)))?;
        d.raw = Some(scan.raw);
        Ok(d)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter()
    }

    pub fn raw_multiplicity(&self) -> Option<u64> {
        self.raw
    }

    /// Strength recorded by the last successful verification (0 if none).
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn eta(&self) -> Option<u128> {
        self.eta
    }

    /// Whether each support carries exactly `Q - 1` codewords, i.e. only the scalar multiples
    /// of one word. `None` when the raw count is unknown.
    pub fn supports_are_projective(&self, alphabet: u64) -> Option<bool> {
        self.raw.map(|raw| raw as u128 == self.b() as u128 * (alphabet as u128 - 1))
    }

    pub fn complement(&self) -> Design {
        let blocks = self
            .blocks
            .iter()
            .map(|b| (0..self.v).filter(|i| b.binary_search(i).is_err()).collect())
            .collect();
        Design { v: self.v, kappa: self.v - self.kappa, blocks, raw: None, t: 0, eta: None }
    }

    pub fn to_json(&self, include_blocks: bool) -> Value {
        let mut out = json!({
            "v": self.v,
            "kappa": self.kappa,
            "t": self.t,
            "eta": self.eta,
            "b": self.b(),
        });
        if include_blocks && self.b() <= BLOCK_LIST_LIMIT {
            out["blocks"] = json!(self.blocks);
        }
        out
    }

    /// `block,points` with points space-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("block,points\n");
        for (i, b) in self.blocks.iter().enumerate() {
            let pts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{i},{}\n", pts.join(" ")));
        }
        out
    }
}

/// Distinct supports of the weight-`w` words among `words`.
pub fn supports_of_weight<'a>(words: impl IntoIterator<Item = &'a [Elem]>, w: usize, n: usize) -> Result<Design> {
    let mut raw = 0u64;
    let mut blocks = Vec::new();
    for word in words {
        if word.len() != n {
            return Err(Error::LengthMismatch { got: word.len(), expected: n });
        }
        let support: Vec<usize> = (0..n).filter(|&i| !word[i].is_zero()).collect();
        if support.len() == w {
            raw += 1;
            blocks.push(support);
        }
    }
    let mut d = Design::new(n, w, blocks)?;
    d.raw = Some(raw);
    Ok(d)
}

/// A `t`-subset and the number of blocks containing it.
pub type SubsetCount = (Vec<usize>, u128);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TDesignCheck {
    pub holds: bool,
    /// The common count, 0 when the counts differ.
    pub eta: u128,
    /// On failure: the first `t`-subset in colex order with its count, and the first subset
    /// whose count differs from it.
    pub witness: Option<(SubsetCount, SubsetCount)>,
}

/// Counts, for every `t`-subset of points in colex order, the blocks containing it.
pub fn verify_t_design(design: &mut Design, t: usize, budget: u128) -> Result<TDesignCheck> {
    let (v, kappa) = (design.v, design.kappa);
    if t == 0 || t > kappa || kappa > v {
        return Err(Error::InvalidRegime(format!("need 0 < t <= kappa <= v, got t={t}, kappa={kappa}, v={v}")));
    }
    let subsets_total = binomial(v as u64, t as u64);
    let needed = subsets_total.saturating_mul(design.b() as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let counts: Vec<u128> = if v <= 128 {
        let masks: Vec<u128> = design.blocks.iter().map(|b| subsets::mask(b)).collect();
        (t - 1..v)
            .into_par_iter()
            .map(|top| {
                subsets::with_largest(top, t)
                    .iter()
                    .map(|s| {
                        let m = subsets::mask(s);
                        masks.iter().filter(|&&b| b & m == m).count() as u128
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .concat()
    } else {
        let blocks: Vec<&Vec<usize>> = design.blocks.iter().collect();
        (t - 1..v)
            .into_par_iter()
            .map(|top| {
                subsets::with_largest(top, t)
                    .iter()
                    .map(|s| blocks.iter().filter(|b| sorted_contains(b, s)).count() as u128)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .concat()
    };
    debug_assert_eq!(counts.len() as u128, subsets_total);
    let first = counts[0];
    match counts.iter().position(|&c| c != first) {
        None => {
            design.t = t;
            design.eta = Some(first);
            Ok(TDesignCheck { holds: true, eta: first, witness: None })
        }
        Some(i) => Ok(TDesignCheck {
            holds: false,
            eta: 0,
            witness: Some((
                (subsets::colex_unrank(0, t), first),
                (subsets::colex_unrank(i as u128, t), counts[i]),
            )),
        }),
    }
}

fn sorted_contains(block: &[usize], subset: &[usize]) -> bool {
    let mut it = block.iter();
    subset.iter().all(|x| it.any(|y| y == x))
}

/// `C(v, t) η = C(κ, t) b`.
pub fn design_identity_check(v: u64, t: u64, kappa: u64, eta: u128, b: u128) -> bool {
    BigUint::from(binomial(v, t)) * eta == BigUint::from(binomial(kappa, t)) * b
}

/// Whether a design is a Steiner system `S(3, κ, v)`.
pub fn steiner_check(design: &mut Design, budget: u128) -> Result<bool> {
    let check = verify_t_design(design, 3, budget)?;
    Ok(check.holds && check.eta == 1)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AssmusMattsonReport {
    pub t: usize,
    pub d: usize,
    pub dual_d: usize,
    /// Nonzero weights of the code in `[1, n - t]`.
    pub weights_in_range: Vec<usize>,
    pub allowance: i64,
    pub holds: bool,
}

/// The literal condition: `1 <= t < min(d, d⊥)` and at most `d⊥ - t` nonzero weights of the
/// code lie in `[1, n - t]`.
pub fn assmus_mattson_check(
    primal: &WeightDistribution,
    dual: &WeightDistribution,
    t: usize,
) -> Result<AssmusMattsonReport> {
    if primal.n() != dual.n() {
        return Err(Error::DimensionMismatch("primal and dual lengths differ".into()));
    }
    let d = minimum_distance(primal)?;
    let dual_d = minimum_distance(dual)?;
    let n = primal.n();
    let weights_in_range: Vec<usize> = primal
        .nonzero()
        .into_iter()
        .map(|(w, _)| w)
        .filter(|&w| t <= n && w <= n - t)
        .collect();
    let allowance = dual_d as i64 - t as i64;
    let holds = t >= 1 && t < d.min(dual_d) && weights_in_range.len() as i64 <= allowance;
    Ok(AssmusMattsonReport { t, d, dual_d, weights_in_range, allowance, holds })
}
