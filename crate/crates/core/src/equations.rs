//! Exhaustive root counts for `x^{p^k+1} + a x + b` over `F_q` and for
//! `b u^{p^k+1} + a u^{p^k} + a^q u + b^q` on the unit circle `U_{q+1}`, and the fiber
//! structure of `x ↦ x^{q±1}` on `U_{r(q^2+1)}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::constacyclic::{check_r, Family};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower, Level};
use crate::numtheory::gcd;

/// Default limit on polynomial evaluations.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Witness coordinates: discrete logs, `None` standing for zero.
pub type Witness = (Option<u32>, Option<u32>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCountReport {
    pub p: u64,
    pub m: u32,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    pub admissible: Vec<usize>,
    pub pairs: u64,
    pub histogram: BTreeMap<usize, u64>,
    /// For each observed count, the pair `(a, b)` smallest in colex order (`b` compared
    /// first, zero before every power).
    pub witnesses: BTreeMap<usize, Witness>,
}

impl RootCountReport {
    /// Observed counts all lie in the admissible set and the histogram sums to the pairs tested.
    pub fn consistent(&self) -> bool {
        self.histogram.keys().all(|c| self.admissible.contains(c))
            && self.histogram.values().sum::<u64>() == self.pairs
    }

    pub fn max_count(&self) -> usize {
        self.histogram.keys().copied().max().unwrap_or(0)
    }
}

/// `{0, 1, 2, p^{gcd(k,m)} + 1}`.
pub fn admissible_counts(p: u64, m: u32, k: u32) -> Vec<usize> {
    let top = p.pow(gcd(k as u64, m as u64) as u32) as usize + 1;
    BTreeSet::from([0, 1, 2, top]).into_iter().collect()
}

fn witness_key(w: &Witness) -> (u64, u64) {
    let key = |x: Option<u32>| x.map_or(0, |e| e as u64 + 1);
    (key(w.1), key(w.0))
}

type Partial = (BTreeMap<usize, u64>, BTreeMap<usize, Witness>);

fn merge((mut h1, mut w1): Partial, (h2, w2): Partial) -> Partial {
    for (c, n) in h2 {
        *h1.entry(c).or_insert(0) += n;
    }
    for (c, w) in w2 {
        w1.entry(c)
            .and_modify(|cur| {
                if witness_key(&w) < witness_key(cur) {
                    *cur = w;
                }
            })
            .or_insert(w);
    }
    (h1, w1)
}

fn record(part: &mut Partial, count: usize, a: Elem, b: Elem) {
    *part.0.entry(count).or_insert(0) += 1;
    let w = (a.log(), b.log());
    part.1
        .entry(count)
        .and_modify(|cur| {
            if witness_key(&w) < witness_key(cur) {
                *cur = w;
            }
        })
        .or_insert(w);
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Roots in `F_q` of `x^{p^k+1} + a x + b` for every `(a, b) ∈ (F_q^*)^2`, `q = p^m`.
pub fn bluher_root_histogram(p: u64, m: u32, k: u32, budget: u128) -> Result<RootCountReport> {
    let tower = FieldTower::build(p, m)?;
    let fq = tower.level_elements(Level::Base);
    let q = fq.len() as u128;
    check_budget((q - 1) * (q - 1) * q, budget)?;
    let e = p.pow(k) + 1;
    let powers: Vec<Elem> = fq.iter().map(|&x| tower.pow_u(x, e)).collect();
    let units = &fq[1..];
    let (histogram, witnesses) = units
        .par_iter()
        .fold(Partial::default, |mut part, &a| {
            for &b in units {
                let count = fq
                    .iter()
                    .zip(&powers)
                    .filter(|(&x, &xe)| tower.add(tower.add(xe, tower.mul(a, x)), b).is_zero())
                    .count();
                record(&mut part, count, a, b);
            }
            part
        })
        .reduce(Partial::default, merge);
    let report = RootCountReport {
        p,
        m,
        k,
        r: None,
        admissible: admissible_counts(p, m, k),
        pairs: ((q - 1) * (q - 1)) as u64,
        histogram,
        witnesses,
    };
    Ok(report)
}

/// Solutions in `U_{q+1}` of `b u^{p^k+1} + a u^{p^k} + a^q u + b^q = 0` for every
/// `(a, b) ∈ F_{q^2}^2 \ {(0, 0)}`.
pub fn unit_circle_root_histogram(tower: &FieldTower, k: u32, budget: u128) -> Result<RootCountReport> {
    let q = tower.q();
    let fq2 = tower.level_elements(Level::Quad);
    let circle = tower.unit_circle(q + 1)?;
    let q2 = fq2.len() as u128;
    check_budget(q2 * q2 * (q as u128 + 1), budget)?;
    let pk = tower.p().pow(k);
    let u_hi: Vec<Elem> = circle.iter().map(|&u| tower.pow_u(u, pk + 1)).collect();
    let u_mid: Vec<Elem> = circle.iter().map(|&u| tower.pow_u(u, pk)).collect();
    let (histogram, witnesses) = fq2
        .par_iter()
        .fold(Partial::default, |mut part, &a| {
            let aq = tower.pow_u(a, q);
            for &b in &fq2 {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let bq = tower.pow_u(b, q);
                let count = (0..circle.len())
                    .filter(|&i| {
                        let s = tower.add(tower.mul(b, u_hi[i]), tower.mul(a, u_mid[i]));
                        let s = tower.add(s, tower.mul(aq, circle[i]));
                        tower.add(s, bq).is_zero()
                    })
                    .count();
                record(&mut part, count, a, b);
            }
            part
        })
        .reduce(Partial::default, merge);
    Ok(RootCountReport {
        p: tower.p(),
        m: tower.m(),
        k,
        r: None,
        admissible: admissible_counts(tower.p(), tower.m(), k),
        pairs: (q2 * q2 - 1) as u64,
        histogram,
        witnesses,
    })
}

/// Roots in `U_{q+1}` of the unit-circle equation at one `(a, b)`.
pub fn unit_circle_roots(tower: &FieldTower, k: u32, a: Elem, b: Elem) -> Result<Vec<Elem>> {
    let q = tower.q();
    let pk = tower.p().pow(k);
    let (aq, bq) = (tower.pow_u(a, q), tower.pow_u(b, q));
    Ok(tower
        .unit_circle(q + 1)?
        .into_iter()
        .filter(|&u| {
            let s = tower.add(tower.mul(b, tower.pow_u(u, pk + 1)), tower.mul(a, tower.pow_u(u, pk)));
            tower.add(tower.add(s, tower.mul(aq, u)), bq).is_zero()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub m: u32,
    pub q: u64,
    pub max_count: usize,
    /// `(log a, log b)` of the witness `a = w^{(q+1)/2}`, `b = 0`, `w` primitive in `F_{q^2}`.
    pub witness: Witness,
    pub witness_count: usize,
    pub holds: bool,
    pub report: RootCountReport,
}

/// For `p = 3`, `k = 2`, odd `m`: every pair has at most 4 roots on `U_{q+1}`, and the
/// witness attains 4.
pub fn conjecture_check(m: u32, budget: u128) -> Result<ConjectureReport> {
    if m.is_multiple_of(2) {
        return Err(Error::NotOdd(m));
    }
    let tower = FieldTower::build(3, m)?;
    let q = tower.q();
    let report = unit_circle_root_histogram(&tower, 2, budget)?;
    let w = tower.level_generator(Level::Quad);
    #[allow(clippy::manual_div_ceil)]
    let a = tower.pow_u(w, (q + 1) / 2);
    let roots = unit_circle_roots(&tower, 2, a, Elem::Zero)?;
    for &u in &roots {
        assert_eq!(tower.pow_u(u, q + 1), Elem::ONE);
    }
    let max_count = report.max_count();
    Ok(ConjectureReport {
        m,
        q,
        max_count,
        witness: (a.log(), None),
        witness_count: roots.len(),
        holds: max_count == 4 && roots.len() == 4 && report.consistent(),
        report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PowerMap {
    /// `x ↦ x^{q+1}`, paired with family A.
    QPlusOne,
    /// `x ↦ x^{q-1}`, paired with family B.
    QMinusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageReport {
    pub q: u64,
    pub r: u64,
    pub map: PowerMap,
    pub domain: usize,
    pub image: usize,
    pub onto: bool,
    pub fibers_are_lambda_orbits: bool,
    pub cosets_partition: bool,
    pub fibers_meet_cosets_once: bool,
    pub holds: bool,
}

/// Checks that `x ↦ x^{q±1}` maps `U_{r(q^2+1)}` onto `U_{q^2+1}` with fibers `{λ^j x_0}`,
/// that the sets `λ^j T`, `T = {δ^{-i} : 0 <= i <= q^2}`, partition `U_{r(q^2+1)}`, and
/// that each fiber meets each `λ^j T` exactly once.
pub fn preimage_structure_check(tower: &FieldTower, r: u64, map: PowerMap) -> Result<PreimageReport> {
    let q = tower.q();
    let family = match map {
        PowerMap::QPlusOne => Family::A,
        PowerMap::QMinusOne => Family::B,
    };
    check_r(q, r, family)?;
    let e = match map {
        PowerMap::QPlusOne => q + 1,
        PowerMap::QMinusOne => q - 1,
    };
    let n = q * q + 1;
    let domain = tower.unit_circle(r * n)?;
    let target: BTreeSet<Elem> = tower.unit_circle(n)?.into_iter().collect();
    let (delta, lambda) = tower.delta_lambda(r)?;
    let lambda_pows: Vec<Elem> = (0..r).map(|j| tower.pow_u(lambda, j)).collect();

    let mut fibers: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
    for &x in &domain {
        fibers.entry(tower.pow_u(x, e)).or_default().push(x);
    }
    let image: BTreeSet<Elem> = fibers.keys().copied().collect();
    let onto = image == target;
    let fibers_are_lambda_orbits = fibers.values().all(|f| {
        let orbit: BTreeSet<Elem> = lambda_pows.iter().map(|&l| tower.mul(l, f[0])).collect();
        f.len() as u64 == r && f.iter().copied().collect::<BTreeSet<_>>() == orbit
    });

    let rn = (r * n) as i64;
    let t_set: Vec<Elem> = (0..n as i64).map(|i| tower.pow(delta, (-i).rem_euclid(rn))).collect();
    let mut coset_of: HashMap<Elem, u64> = HashMap::new();
    let mut disjoint = true;
    for (j, &l) in lambda_pows.iter().enumerate() {
        for &x in &t_set {
            disjoint &= coset_of.insert(tower.mul(l, x), j as u64).is_none();
        }
    }
    let union: BTreeSet<Elem> = coset_of.keys().copied().collect();
    let cosets_partition = disjoint && union == domain.iter().copied().collect();

    let fibers_meet_cosets_once = cosets_partition
        && fibers.values().all(|f| {
            let mut hits = vec![0u32; r as usize];
            for x in f {
                hits[coset_of[x] as usize] += 1;
            }
            hits.iter().all(|&h| h == 1)
        });

    Ok(PreimageReport {
        q,
        r,
        map,
        domain: domain.len(),
        image: image.len(),
        onto,
        fibers_are_lambda_orbits,
        cosets_partition,
        fibers_meet_cosets_once,
        holds: onto && fibers_are_lambda_orbits && cosets_partition && fibers_meet_cosets_once,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bluher_small() {
        let rep = bluher_root_histogram(3, 1, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.admissible, vec![0, 1, 2, 4]);
        assert_eq!(rep.pairs, 4);
        assert!(rep.consistent());
        let rep = bluher_root_histogram(2, 3, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.admissible, vec![0, 1, 2, 3]);
        assert!(rep.consistent());
        let rep = bluher_root_histogram(3, 2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.pairs, 64);
        assert!(rep.consistent());
    }

    #[test]
    fn bluher_by_direct_integer_evaluation_q3() {
        // over F_3: x^4 + a x + b with a, b in {1, 2}
        let rep = bluher_root_histogram(3, 1, 1, DEFAULT_BUDGET).unwrap();
        let mut expect: BTreeMap<usize, u64> = BTreeMap::new();
        for a in 1..3i64 {
            for b in 1..3i64 {
                let c = (0..3i64).filter(|x| (x.pow(4) + a * x + b).rem_euclid(3) == 0).count();
                *expect.entry(c).or_default() += 1;
            }
        }
        assert_eq!(rep.histogram, expect);
    }

    #[test]
    fn unit_circle_q3_q4() {
        let t3 = FieldTower::build(3, 1).unwrap();
        let rep = unit_circle_root_histogram(&t3, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.pairs, 80);
        assert!(rep.consistent());
        assert!(rep.histogram.contains_key(&4));
        let t4 = FieldTower::build(2, 2).unwrap();
        let rep = unit_circle_root_histogram(&t4, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.admissible, vec![0, 1, 2, 3]);
        assert!(rep.consistent());
        // each witness reproduces its count
        for (&c, &(la, lb)) in &rep.witnesses {
            let el = |x: Option<u32>| x.map_or(Elem::Zero, Elem::Pow);
            assert_eq!(unit_circle_roots(&t4, 1, el(la), el(lb)).unwrap().len(), c);
        }
    }

    #[test]
    fn conjecture_m1() {
        let rep = conjecture_check(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.max_count, 4);
        assert_eq!(rep.witness_count, 4);
        assert!(rep.holds);
        assert!(matches!(conjecture_check(2, DEFAULT_BUDGET), Err(Error::NotOdd(2))));
    }

    #[test]
    fn preimages() {
        let t3 = FieldTower::build(3, 1).unwrap();
        let rep = preimage_structure_check(&t3, 2, PowerMap::QMinusOne).unwrap();
        assert_eq!((rep.domain, rep.image), (20, 10));
        assert!(rep.holds);
        let rep = preimage_structure_check(&t3, 4, PowerMap::QPlusOne).unwrap();
        assert_eq!((rep.domain, rep.image), (40, 10));
        assert!(rep.holds);
        let t4 = FieldTower::build(2, 2).unwrap();
        let rep = preimage_structure_check(&t4, 1, PowerMap::QPlusOne).unwrap();
        assert_eq!((rep.domain, rep.image), (17, 17));
        assert!(rep.holds);
        assert!(matches!(
            preimage_structure_check(&t3, 2, PowerMap::QPlusOne),
            Err(Error::InvalidR(_))
        ));
    }

    #[test]
    fn budget() {
        let t3 = FieldTower::build(3, 1).unwrap();
        assert!(matches!(unit_circle_root_histogram(&t3, 1, 100), Err(Error::BudgetExceeded { .. })));
    }
}
