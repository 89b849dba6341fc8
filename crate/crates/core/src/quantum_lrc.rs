//! Entanglement-assisted quantum codes from pairs of codes, and locality bounds for the
//! duals of the two families.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::constacyclic::ConstacyclicCode;
use crate::error::{Error, Result};
use crate::gf::Level;
use crate::matrix;
use crate::report;
use crate::wdist::{self, macwilliams_dual, minimum_distance};

/// `dim(C1 ∩ C2)` computed from the stacked generator matrices, and by the case split
/// `0` if `k1 + k2 <= n`, `k1 + k2 - n` otherwise, which needs distinct shift constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub explicit: usize,
    pub formula: std::result::Result<usize, Error>,
}

impl Intersection {
    pub fn agrees(&self) -> bool {
        self.formula.as_ref().map_or(true, |&f| f == self.explicit)
    }
}

pub fn intersection_dimension(c1: &ConstacyclicCode, c2: &ConstacyclicCode) -> Result<Intersection> {
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch { got: c2.n(), expected: c1.n() });
    }
    if !std::ptr::eq(c1.tower().as_ref(), c2.tower().as_ref()) {
        return Err(Error::TowerMismatch);
    }
    let t = c1.tower();
    let mut rows = c1.generator_matrix()?;
    rows.extend(c2.generator_matrix()?);
    let (k1, k2, n) = (c1.k(), c2.k(), c1.n());
    let explicit = k1 + k2 - matrix::rank(t, &rows);
    let formula = if c1.lambda() == c2.lambda() {
        Err(Error::ShiftConstantEqual)
    } else {
        Ok((k1 + k2).saturating_sub(n))
    };
    Ok(Intersection { explicit, formula })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EaqeccParams {
    pub n: usize,
    pub k: i64,
    pub d: usize,
    pub c: usize,
    pub alphabet: u64,
    pub maximal_entanglement: bool,
    pub net_rate: BigRational,
    /// `dim(C1⊥ ∩ C2)`.
    pub intersection: Intersection,
    /// `λ(C1) λ(C2) != 1`.
    pub hypothesis: bool,
}

impl EaqeccParams {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "c": self.c,
            "alphabet": self.alphabet,
            "maximal_entanglement": self.maximal_entanglement,
            "net_rate": report::fraction(&self.net_rate),
            "intersection_explicit": self.intersection.explicit,
            "intersection_formula": self.intersection.formula.as_ref().ok(),
            "hypothesis": self.hypothesis,
        })
    }
}

/// `[[n, k1 + k2 - n + c, min(d1, d2); c]]` with `c = n - k1 - dim(C1⊥ ∩ C2)`.
pub fn eaqecc_from_pair(c1: &ConstacyclicCode, c2: &ConstacyclicCode, d1: usize, d2: usize) -> Result<EaqeccParams> {
    let t = c1.tower();
    let hypothesis = t.mul(c1.lambda(), c2.lambda()) != crate::gf::Elem::ONE;
    let intersection = intersection_dimension(&c1.dual()?, c2)?;
    let n = c1.n();
    let c = n - c1.k() - intersection.explicit;
    let k = c1.k() as i64 + c2.k() as i64 - n as i64 + c as i64;
    let net_rate = BigRational::new(BigInt::from(k - c as i64), BigInt::from(n));
    Ok(EaqeccParams {
        n,
        k,
        d: d1.min(d2),
        c,
        alphabet: t.level_size(Level::Quad),
        maximal_entanglement: c as i64 == n as i64 - k,
        net_rate,
        intersection,
        hypothesis,
    })
}

/// Minimum distance by exhaustion: directly for family codes and small codes, through
/// MacWilliams of the parent for duals of family codes.
pub fn code_distance(code: &ConstacyclicCode, budget: u128) -> Result<usize> {
    if code.has_trace_form() {
        return minimum_distance(&wdist::weight_distribution_exhaustive(code, budget)?);
    }
    if code.is_dual() && code.family() != crate::constacyclic::Family::Custom {
        let parent = code.dual()?;
        let wd = wdist::weight_distribution_exhaustive(&parent, budget)?;
        return minimum_distance(&macwilliams_dual(&wd));
    }
    minimum_distance(&wdist::weight_distribution_exhaustive(code, budget)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrcReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub locality: usize,
    pub singleton_like_bound: i64,
    /// The bound with `k_opt(len, d)` replaced by the Singleton value `max(0, len - d + 1)`,
    /// minimized over `t >= 0` with `n - t(r + 1) >= 1`.
    pub cm_bound: i64,
    pub cm_minimizer: usize,
    pub distance_optimal: bool,
    pub dimension_optimal: bool,
}

impl LrcReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "locality": self.locality,
            "singleton_like_bound": self.singleton_like_bound,
            "cm_bound": self.cm_bound,
            "cm_minimizer": self.cm_minimizer,
            "cm_k_opt": "singleton",
            "distance_optimal": self.distance_optimal,
            "dimension_optimal": self.dimension_optimal,
        })
    }
}

/// Locality `d⊥ - 1` and the two bounds for an `[n, k, d]` code with dual distance `d⊥`.
pub fn lrc_report(n: usize, k: usize, d: usize, dual_d: usize) -> Result<LrcReport> {
    if dual_d <= 2 {
        return Err(Error::LocalityUndefined(dual_d));
    }
    let r = dual_d - 1;
    let singleton_like_bound = n as i64 - k as i64 - k.div_ceil(r) as i64 + 2;
    let (cm_minimizer, cm_bound) = (0..)
        .take_while(|&t| n as i64 - (t * (r + 1)) as i64 >= 1)
        .map(|t| {
            let len = n as i64 - (t * (r + 1)) as i64;
            (t, (t * r) as i64 + (len - d as i64 + 1).max(0))
        })
        .min_by_key(|&(t, b)| (b, t))
        .expect("t = 0 is always allowed");
    Ok(LrcReport {
        n,
        k,
        d,
        locality: r,
        singleton_like_bound,
        cm_bound,
        cm_minimizer,
        distance_optimal: d as i64 == singleton_like_bound,
        dimension_optimal: k as i64 == cm_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constacyclic::Family;
    use crate::gf::FieldTower;
    use crate::wdist::DEFAULT_BUDGET;
    use std::sync::Arc;

    #[test]
    fn q3_pairs() {
        let t = Arc::new(FieldTower::build(3, 1).unwrap());
        let a = ConstacyclicCode::build(Arc::clone(&t), 4, Family::A).unwrap();
        let b = ConstacyclicCode::build(Arc::clone(&t), 2, Family::B).unwrap();
        let i = intersection_dimension(&a, &b).unwrap();
        assert_eq!(i.explicit, 0);
        assert_eq!(i.formula, Ok(0));

        let p = eaqecc_from_pair(&a, &b, 6, 6).unwrap();
        assert!(p.hypothesis);
        assert_eq!((p.n, p.k, p.d, p.c), (10, 4, 6, 6));
        assert!(p.maximal_entanglement);
        assert_eq!(report::fraction(&p.net_rate), "-1/5");

        let (da, db) = (a.dual().unwrap(), b.dual().unwrap());
        assert_eq!(code_distance(&da, DEFAULT_BUDGET).unwrap(), 4);
        let p = eaqecc_from_pair(&da, &db, 4, 4).unwrap();
        assert_eq!((p.n, p.k, p.d, p.c), (10, 6, 4, 4));
        assert!(p.maximal_entanglement);
        assert_eq!(report::fraction(&p.net_rate), "1/5");
        assert!(p.intersection.agrees());
    }

    #[test]
    fn self_intersection() {
        let t = Arc::new(FieldTower::build(3, 1).unwrap());
        let b = ConstacyclicCode::build(Arc::clone(&t), 2, Family::B).unwrap();
        let i = intersection_dimension(&b, &b).unwrap();
        assert_eq!(i.explicit, 4);
        assert_eq!(i.formula, Err(Error::ShiftConstantEqual));
    }

    #[test]
    fn lrc_values() {
        let r = lrc_report(10, 6, 4, 6).unwrap();
        assert_eq!(r.locality, 5);
        assert_eq!(r.singleton_like_bound, 4);
        assert_eq!(r.cm_bound, 6);
        assert_eq!(r.cm_minimizer, 1);
        assert!(r.distance_optimal && r.dimension_optimal);
        let r = lrc_report(17, 13, 4, 12).unwrap();
        assert_eq!((r.locality, r.singleton_like_bound, r.cm_bound), (11, 4, 13));
        assert!(matches!(lrc_report(10, 9, 2, 2), Err(Error::LocalityUndefined(2))));
    }
}
