//! Weight distributions: exhaustive enumeration, the closed form for the two families,
//! the MacWilliams transform, moment identities and low-weight dual codewords.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::constacyclic::{ConstacyclicCode, Family};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower, Level};
use crate::matrix::{self, Row};
use crate::numtheory::{binomial, prime_power};
use crate::report;
use crate::subsets;

/// Default limit on coordinate evaluations for exhaustive enumeration.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    k: usize,
    alphabet: u64,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    /// Validates `A_0 = 1` and `Σ A_i = Q^k`.
    pub fn new(n: usize, k: usize, alphabet: u64, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} counts for length {n}",
                counts.len()
            )));
        }
        if !counts[0].is_one() {
            return Err(Error::DimensionMismatch("A_0 != 1".into()));
        }
        let total: BigUint = counts.iter().sum();
        if total != BigUint::from(alphabet).pow(k as u32) {
            return Err(Error::DimensionMismatch(format!(
                "counts sum to {total}, not {alphabet}^{k}"
            )));
        }
        Ok(WeightDistribution { n, k, alphabet, counts })
    }

    /// From the nonzero weights only; `A_0 = 1` is implied.
    pub fn from_nonzero(n: usize, k: usize, alphabet: u64, nonzero: &[(usize, BigUint)]) -> Result<Self> {
        let mut counts = vec![BigUint::zero(); n + 1];
        counts[0] = BigUint::one();
        for (w, c) in nonzero {
            if *w == 0 || *w > n {
                return Err(Error::DimensionMismatch(format!("weight {w} out of range")));
            }
            counts[*w] += c;
        }
        Self::new(n, k, alphabet, counts)
    }

    fn from_histogram(n: usize, k: usize, alphabet: u64, hist: &[u64]) -> Result<Self> {
        Self::new(n, k, alphabet, hist.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The alphabet size `Q`.
    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(w).cloned().unwrap_or_default()
    }

    /// `(w, A_w)` for `w >= 1` with `A_w > 0`.
    pub fn nonzero(&self) -> Vec<(usize, BigUint)> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w, c.clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let nonzero: Vec<Value> = self
            .nonzero()
            .into_iter()
            .map(|(w, c)| json!([w, report::int(c)]))
            .collect();
        json!({ "n": self.n, "k": self.k, "Q": self.alphabet, "nonzero": nonzero })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in self.counts.iter().enumerate() {
            if !c.is_zero() {
                out.push_str(&format!("{w},{c}\n"));
            }
        }
        out
    }
}

/// Supports of the codewords of one weight found during enumeration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportScan {
    pub weight: usize,
    /// Number of codewords of that weight (each support counted once per codeword).
    pub raw: u64,
    /// Distinct supports as bitmasks.
    pub supports: BTreeSet<u128>,
}

impl SupportScan {
    fn merge(mut self, other: SupportScan) -> SupportScan {
        self.raw += other.raw;
        self.supports.extend(other.supports);
        self
    }
}

fn check_budget(words: u128, n: usize, budget: u128) -> Result<()> {
    let needed = words.saturating_mul(n as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Exact distribution by enumerating every codeword.
pub fn weight_distribution_exhaustive(code: &ConstacyclicCode, budget: u128) -> Result<WeightDistribution> {
    Ok(scan(code, budget, None)?.0)
}

/// Exhaustive distribution plus the supports of all weight-`w` codewords (`n <= 128`).
pub fn scan_with_supports(
    code: &ConstacyclicCode,
    budget: u128,
    w: usize,
) -> Result<(WeightDistribution, SupportScan)> {
    let (wd, s) = scan(code, budget, Some(w))?;
    Ok((wd, s.expect("requested")))
}

fn scan(
    code: &ConstacyclicCode,
    budget: u128,
    want: Option<usize>,
) -> Result<(WeightDistribution, Option<SupportScan>)> {
    if want.is_some() && code.n() > 128 {
        return Err(Error::Unsupported("support collection needs n <= 128"));
    }
    if code.has_trace_form() {
        trace_scan(code, budget, want)
    } else {
        let rows = code.generator_matrix()?;
        span_scan(code.tower(), &rows, Level::Quad, budget, want)
    }
}

/// The trace values `Tr(a x_i)` for every `a`, packed as `0` for zero and `1 + j` for
/// `β^{(q^2+1) j}`, so that equality of packed values is equality in `F_{q^2}`.
fn trace_table(tower: &FieldTower, points: &[Elem], negate: bool) -> Vec<u16> {
    let q2p1 = tower.q() * tower.q() + 1;
    let n = points.len();
    let elems: Vec<Elem> = tower.elements().collect();
    let mut table = vec![0u16; elems.len() * n];
    table.par_chunks_mut(n).zip(elems.par_iter()).for_each(|(row, &a)| {
        for (slot, &x) in row.iter_mut().zip(points) {
            let mut v = tower.trace(tower.mul(a, x), Level::Quartic, Level::Quad).expect("valid levels");
            if negate {
                v = tower.neg(v);
            }
            *slot = match v {
                Elem::Zero => 0,
                Elem::Pow(e) => (e as u64 / q2p1 + 1) as u16,
            };
        }
    });
    table
}

fn trace_scan(
    code: &ConstacyclicCode,
    budget: u128,
    want: Option<usize>,
) -> Result<(WeightDistribution, Option<SupportScan>)> {
    let t = code.tower();
    let n = code.n();
    let size = t.size() as usize;
    check_budget((size as u128) * (size as u128), n, budget)?;
    let q = t.q();
    let s = code.family().exponent(q).expect("family code") as i64;
    let rn = code.rn() as i64;
    let xs: Vec<Elem> = (0..n as i64).map(|i| t.pow(code.delta(), (-i).rem_euclid(rn))).collect();
    let ys: Vec<Elem> = (0..n as i64).map(|i| t.pow(code.delta(), (-s * i).rem_euclid(rn))).collect();
    let u = trace_table(t, &xs, false);
    let v = trace_table(t, &ys, true);

    let empty = || (vec![0u64; n + 1], want.map(|w| SupportScan { weight: w, ..Default::default() }));
    let (hist, supports) = (0..size)
        .into_par_iter()
        .fold(empty, |(mut hist, mut sup), ai| {
            let ua = &u[ai * n..(ai + 1) * n];
            for vb in v.chunks_exact(n) {
                let matches = ua.iter().zip(vb).filter(|(x, y)| x == y).count();
                let w = n - matches;
                hist[w] += 1;
                if let Some(sc) = sup.as_mut().filter(|sc| sc.weight == w) {
                    let mask = ua
                        .iter()
                        .zip(vb)
                        .enumerate()
                        .filter(|(_, (x, y))| x != y)
                        .fold(0u128, |m, (i, _)| m | 1u128 << i);
                    sc.raw += 1;
                    sc.supports.insert(mask);
                }
            }
            (hist, sup)
        })
        .reduce(empty, merge_partial);
    let wd = WeightDistribution::from_histogram(n, code.k(), q * q, &hist)?;
    Ok((wd, supports))
}

fn merge_partial(
    (mut h1, s1): (Vec<u64>, Option<SupportScan>),
    (h2, s2): (Vec<u64>, Option<SupportScan>),
) -> (Vec<u64>, Option<SupportScan>) {
    for (a, b) in h1.iter_mut().zip(h2) {
        *a += b;
    }
    let s = match (s1, s2) {
        (Some(a), Some(b)) => Some(a.merge(b)),
        (a, b) => a.or(b),
    };
    (h1, s)
}

/// Distribution of the span of `rows` (assumed independent) with coefficients in `level`.
pub fn span_scan(
    tower: &FieldTower,
    rows: &[Row],
    level: Level,
    budget: u128,
    want: Option<usize>,
) -> Result<(WeightDistribution, Option<SupportScan>)> {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    if want.is_some() && n > 128 {
        return Err(Error::Unsupported("support collection needs n <= 128"));
    }
    let scalars = tower.level_elements(level);
    let qs = scalars.len();
    check_budget((qs as u128).saturating_pow(k as u32), n, budget)?;
    // scaled[j][c] = scalars[c] * rows[j]
    let scaled: Vec<Vec<Row>> = rows
        .iter()
        .map(|row| scalars.iter().map(|&c| row.iter().map(|&x| tower.mul(c, x)).collect()).collect())
        .collect();

    let head = k.min(2);
    let tasks = qs.pow(head as u32);
    let empty = || (vec![0u64; n + 1], want.map(|w| SupportScan { weight: w, ..Default::default() }));
    let (hist, supports) = (0..tasks)
        .into_par_iter()
        .fold(empty, |mut acc, task| {
            let mut bufs = vec![vec![Elem::Zero; n]; k + 1];
            let mut rest = task;
            for j in 0..head {
                let c = rest % qs;
                rest /= qs;
                let (lo, hi) = bufs.split_at_mut(j + 1);
                for ((o, &a), &b) in hi[0].iter_mut().zip(&lo[j]).zip(&scaled[j][c]) {
                    *o = tower.add(a, b);
                }
            }
            span_dfs(tower, &scaled, head, &mut bufs, &mut acc);
            acc
        })
        .reduce(empty, merge_partial);
    let wd = WeightDistribution::from_histogram(n, k, qs as u64, &hist)?;
    Ok((wd, supports))
}

fn span_dfs(
    tower: &FieldTower,
    scaled: &[Vec<Row>],
    depth: usize,
    bufs: &mut [Row],
    acc: &mut (Vec<u64>, Option<SupportScan>),
) {
    if depth == scaled.len() {
        let word = &bufs[depth];
        let w = matrix::weight(word);
        acc.0[w] += 1;
        if let Some(sc) = acc.1.as_mut().filter(|sc| sc.weight == w) {
            sc.raw += 1;
            let mask = word
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .fold(0u128, |m, (i, _)| m | 1u128 << i);
            sc.supports.insert(mask);
        }
        return;
    }
    for scaled_row in &scaled[depth] {
        let (lo, hi) = bufs.split_at_mut(depth + 1);
        for ((o, &a), &b) in hi[0].iter_mut().zip(&lo[depth]).zip(scaled_row) {
            *o = tower.add(a, b);
        }
        span_dfs(tower, scaled, depth + 1, bufs, acc);
    }
}

/// The four-weight distribution shared by both families for `q > 2`.
pub fn weight_distribution_analytic(q: u64, family: Family) -> Result<WeightDistribution> {
    if family == Family::Custom {
        return Err(Error::Unsupported("closed form exists for the two families only"));
    }
    prime_power(q)?;
    if q <= 2 {
        return Err(Error::UnsupportedQ(q, "the closed form needs q > 2"));
    }
    let b = BigUint::from(q);
    let p = |e: u32| b.pow(e);
    let q2 = (q * q) as usize;
    let low = p(5) - &b;
    let mid = (p(4) - 1u32) * (&b - 1u32) * p(3) / 2u32;
    let at_q2 = p(7) + p(4) + &b - p(5) - p(3) - 1u32;
    WeightDistribution::from_nonzero(
        q2 + 1,
        4,
        q * q,
        &[(q2 - q as usize, low), (q2 - 1, mid.clone()), (q2, at_q2), (q2 + 1, mid)],
    )
}

/// The dual distribution, `A⊥_j = Q^{-k} Σ_i A_i K_j(i)` with
/// `Σ_j K_j(i) z^j = (1 + (Q-1) z)^{n-i} (1 - z)^i`.
pub fn macwilliams_dual(wd: &WeightDistribution) -> WeightDistribution {
    let n = wd.n;
    let qm1 = BigInt::from(wd.alphabet - 1);
    let mut dual = vec![BigInt::zero(); n + 1];
    for (i, a) in wd.counts.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut poly = vec![BigInt::zero(); n + 1];
        poly[0] = BigInt::one();
        let mut deg = 0;
        for _ in 0..i {
            for j in (1..=deg + 1).rev() {
                let prev = poly[j - 1].clone();
                poly[j] -= prev;
            }
            deg += 1;
        }
        for _ in 0..n - i {
            for j in (1..=deg + 1).rev() {
                let prev = &poly[j - 1] * &qm1;
                poly[j] += prev;
            }
            deg += 1;
        }
        let a = BigInt::from(a.clone());
        for (d, c) in dual.iter_mut().zip(&poly) {
            *d += &a * c;
        }
    }
    let size = BigInt::from(wd.alphabet).pow(wd.k as u32);
    let counts: Vec<BigUint> = dual
        .into_iter()
        .map(|x| {
            assert!((&x % &size).is_zero(), "MacWilliams sum not divisible by Q^k");
            let y = x / &size;
            assert!(!y.is_negative(), "negative dual count");
            y.to_biguint().expect("nonnegative")
        })
        .collect();
    WeightDistribution::new(n, n - wd.k, wd.alphabet, counts).expect("MacWilliams transform is consistent")
}

/// `A⊥_4 = q^2 (q-2)(q^2+1)(q^2-1)^2 / 24`.
pub fn a4_dual_closed_form(q: u64) -> Result<BigUint> {
    if q <= 2 {
        return Err(Error::UnsupportedQ(q, "the closed form needs q > 2"));
    }
    let b = BigUint::from(q);
    let q2 = &b * &b;
    let num = &q2 * (&b - 2u32) * (&q2 + 1u32) * (&q2 - 1u32) * (&q2 - 1u32);
    assert!((&num % 24u32).is_zero(), "closed form not divisible by 24");
    Ok(num / 24u32)
}

/// `Σ_{i>=1} i^v A_i` for `v = 0..=order`.
pub fn power_moments(wd: &WeightDistribution, order: u32) -> Vec<BigUint> {
    (0..=order)
        .map(|v| {
            wd.counts
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| BigUint::from(i).pow(v) * a)
                .sum()
        })
        .collect()
}

/// The first four power moments of a `[q^2+1, 4]` code over `F_{q^2}` whose dual has no
/// words of weight 1, 2, 3.
pub fn moment_targets(q: u64) -> [BigUint; 4] {
    let b = BigUint::from(q);
    let p = |e: u32| b.pow(e);
    [
        p(8) - 1u32,
        p(6) * (p(4) - 1u32),
        p(8) * (p(4) - 1u32),
        p(14) + p(4) - p(8) - p(6),
    ]
}

/// Checks the binomial moment identities `Q^v Σ_i C(n-i, v) A_i = Q^k C(n, v)` for
/// `v <= dual_zero_prefix`, which hold when `A⊥_1 = … = A⊥_v = 0`. For distributions of
/// shape `[q^2+1, 4]` over `F_{q^2}` with prefix 3, the explicit power moments are checked
/// against [`moment_targets`] as well.
pub fn pless_moment_check(wd: &WeightDistribution, dual_zero_prefix: usize) -> bool {
    let n = wd.n;
    let qq = BigUint::from(wd.alphabet);
    for v in 0..=dual_zero_prefix.min(n) {
        let lhs: BigUint = wd
            .counts
            .iter()
            .enumerate()
            .map(|(i, a)| BigUint::from(binomial((n - i) as u64, v as u64)) * a)
            .sum();
        let rhs = qq.pow(wd.k as u32) * BigUint::from(binomial(n as u64, v as u64));
        if lhs * qq.pow(v as u32) != rhs {
            return false;
        }
    }
    let q = (wd.alphabet as f64).sqrt().round() as u64;
    if dual_zero_prefix >= 3 && q * q == wd.alphabet && n as u64 == wd.alphabet + 1 && wd.k == 4 {
        return power_moments(wd, 3).as_slice() == moment_targets(q).as_slice();
    }
    true
}

/// Smallest nonzero weight.
pub fn minimum_distance(wd: &WeightDistribution) -> Result<usize> {
    wd.nonzero().first().map(|(w, _)| *w).ok_or(Error::ZeroCode)
}

/// `n >= Σ_{i<k} ⌈d / Q^i⌉`.
pub fn griesmer_check(n: u64, k: u32, d: u64, alphabet: u64) -> bool {
    griesmer_sum(k, d, alphabet) <= n as u128
}

pub fn griesmer_sum(k: u32, d: u64, alphabet: u64) -> u128 {
    let mut total = 0u128;
    let mut den = 1u128;
    for _ in 0..k {
        total += (d as u128).div_ceil(den);
        den = den.saturating_mul(alphabet as u128);
    }
    total
}

/// A dual codeword normalized so its first nonzero coordinate is 1; it stands for its
/// `Q - 1` nonzero scalar multiples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWord {
    pub support: Vec<usize>,
    pub word: Row,
}

/// Every dual codeword of weight `<= wmax`, one per scalar class, ordered by weight and then
/// by the colex order of the support. Found by solving the homogeneous system on each
/// set of at most `wmax` columns of the generator matrix.
pub fn low_weight_dual_codewords(code: &ConstacyclicCode, wmax: usize, budget: u128) -> Result<Vec<DualWord>> {
    let t = code.tower();
    let n = code.n();
    let g = code.generator_matrix()?;
    let needed: u128 = (1..=wmax).map(|w| binomial(n as u64, w as u64)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let scalars = t.level_elements(Level::Quad);
    let mut out = Vec::new();
    for w in 1..=wmax.min(n) {
        let found: Vec<Vec<DualWord>> = (w - 1..n)
            .into_par_iter()
            .map(|top| {
                let mut local = Vec::new();
                for support in subsets::with_largest(top, w) {
                    let sub: Vec<Row> = g.iter().map(|row| support.iter().map(|&i| row[i]).collect()).collect();
                    let basis = matrix::nullspace(t, &sub, w);
                    for x in projective_span(t, &basis, &scalars) {
                        if x.iter().all(|c| !c.is_zero()) {
                            let mut word = vec![Elem::Zero; n];
                            for (&i, &c) in support.iter().zip(&x) {
                                word[i] = c;
                            }
                            local.push(DualWord { support: support.clone(), word });
                        }
                    }
                }
                local
            })
            .collect();
        out.extend(found.into_iter().flatten());
    }
    Ok(out)
}

/// Nonzero vectors of the span whose first nonzero coordinate is 1.
fn projective_span(tower: &FieldTower, basis: &[Row], scalars: &[Elem]) -> Vec<Row> {
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    let qs = scalars.len();
    let mut out = Vec::new();
    let total = qs.pow(d as u32);
    for idx in 1..total {
        let mut rest = idx;
        let coeffs: Vec<Elem> = (0..d)
            .map(|_| {
                let c = scalars[rest % qs];
                rest /= qs;
                c
            })
            .collect();
        let v = matrix::combine(tower, &coeffs, basis);
        if v.iter().find(|x| !x.is_zero()) == Some(&Elem::ONE) {
            out.push(v);
        }
    }
    out
}

/// Number of dual codewords of each weight `0..=wmax` represented by a search result.
pub fn dual_counts(words: &[DualWord], alphabet: u64, wmax: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); wmax + 1];
    for dw in words {
        counts[dw.support.len()] += alphabet - 1;
    }
    counts
}

/// `u128` view of a count for small-case assertions.
pub fn small(x: &BigUint) -> u128 {
    x.to_u128().expect("fits in u128")
}
