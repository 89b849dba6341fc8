//! Subfield subcodes `C ∩ F_q^n` of codes over `F_{q^2}`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constacyclic::{CodeDescriptor, ConstacyclicCode};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower, Level};
use crate::matrix::{self, Row};
use crate::numtheory::multiplicative_order;
use crate::poly::cyclotomic_coset;
use crate::report;
use crate::wdist::{self, macwilliams_dual, minimum_distance, WeightDistribution};

/// `θ = β^{s (q^4-1)/(q^2-1)}` for the smallest `s` with `θ ∉ F_q`; `{1, θ}` is then a basis of
/// `F_{q^2}` over `F_q`.
pub fn theta(tower: &FieldTower) -> Elem {
    let w = tower.level_generator(Level::Quad);
    (1..)
        .map(|s| tower.pow_u(w, s))
        .find(|&x| !tower.contains(Level::Base, x))
        .expect("F_q^2 is larger than F_q")
}

/// `z = z0 + z1 θ` with `z0, z1 ∈ F_q`.
pub fn decompose(tower: &FieldTower, theta: Elem, z: Elem) -> (Elem, Elem) {
    let q = tower.q();
    let den = tower.sub(theta, tower.pow_u(theta, q));
    let z1 = tower.div(tower.sub(z, tower.pow_u(z, q)), den).expect("θ ∉ F_q");
    let z0 = tower.sub(z, tower.mul(z1, theta));
    debug_assert!(tower.contains(Level::Base, z0) && tower.contains(Level::Base, z1));
    (z0, z1)
}

#[derive(Clone, Debug)]
pub struct SubfieldCode {
    q: u64,
    n: usize,
    basis: Vec<Row>,
    parent: CodeDescriptor,
}

impl SubfieldCode {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_sub(&self) -> usize {
        self.basis.len()
    }

    /// Rows in reduced echelon form, entries in `F_q`.
    pub fn basis(&self) -> &[Row] {
        &self.basis
    }

    pub fn parent(&self) -> &CodeDescriptor {
        &self.parent
    }

    /// Basis rows as `F_q` digits: 0 for zero, `1 + j` for `ω^j`, `ω` the generator of `F_q^*`
    /// inside the tower.
    pub fn to_json(&self, tower: &FieldTower) -> Value {
        let step = tower.level_generator(Level::Base).log().expect("nonzero") as u64;
        let digits: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|row| row.iter().map(|x| x.log().map_or(0, |e| e as u64 / step + 1)).collect())
            .collect();
        json!({ "q": self.q, "n": self.n, "k_sub": self.k_sub(), "basis": digits })
    }
}

/// Solves for the `F_q`-combinations of `{1, θ} × (generator rows)` whose every coordinate has
/// zero `θ`-component.
pub fn subfield_subcode_direct(code: &ConstacyclicCode) -> Result<SubfieldCode> {
    let t = code.tower();
    let g = code.generator_matrix()?;
    let k = g.len();
    let n = code.n();
    let th = theta(t);
    let system: Vec<Row> = (0..n)
        .map(|i| {
            let mut eq = Vec::with_capacity(2 * k);
            eq.extend(g.iter().map(|row| decompose(t, th, row[i]).1));
            eq.extend(g.iter().map(|row| decompose(t, th, t.mul(th, row[i])).1));
            eq
        })
        .collect();
    let solutions = matrix::nullspace(t, &system, 2 * k);
    let mut words: Vec<Row> = solutions
        .iter()
        .map(|sol| {
            let coeffs: Vec<Elem> = (0..k).map(|j| t.add(sol[j], t.mul(sol[k + j], th))).collect();
            matrix::combine(t, &coeffs, &g)
        })
        .collect();
    for w in &words {
        assert!(w.iter().all(|&x| t.contains(Level::Base, x)), "subcode word leaves F_q");
        assert!(code.is_codeword(w)?, "subcode word leaves the parent code");
    }
    matrix::rref(t, &mut words);
    assert_eq!(words.len(), solutions.len(), "subcode basis is dependent");
    Ok(SubfieldCode { q: t.q(), n, basis: words, parent: code.descriptor() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelsarteReport {
    pub direct_dim: usize,
    pub trace_code_dim: usize,
    pub delsarte_dim: usize,
    pub equal: bool,
}

/// Compares the direct subcode with `(Tr_{q^2/q}(C⊥))⊥`.
pub fn delsarte_cross_check(code: &ConstacyclicCode) -> Result<DelsarteReport> {
    let n = code.n();
    if n > 128 {
        return Err(Error::BudgetExceeded { needed: n as u128, budget: 128 });
    }
    let t = code.tower();
    let direct = subfield_subcode_direct(code)?;
    let th = theta(t);
    let dual_rows = code.dual()?.generator_matrix()?;
    let mut traced = Vec::with_capacity(2 * dual_rows.len());
    for row in &dual_rows {
        for scale in [Elem::ONE, th] {
            traced.push(
                row.iter()
                    .map(|&x| t.trace(t.mul(scale, x), Level::Quad, Level::Base).expect("valid levels"))
                    .collect::<Row>(),
            );
        }
    }
    let trace_code_dim = matrix::rank(t, &traced);
    let orth = matrix::nullspace(t, &traced, n);
    let contained = direct
        .basis
        .iter()
        .all(|v| traced.iter().all(|row| matrix::dot(t, row, v).is_zero()));
    Ok(DelsarteReport {
        direct_dim: direct.k_sub(),
        trace_code_dim,
        delsarte_dim: orth.len(),
        equal: contained && orth.len() == direct.k_sub(),
    })
}

/// `1 + (q^2-q)(q^2+1) z^{q^2-q} + (q-1)(q^2+1) z^{q^2}` over `F_q`.
pub fn ovoid_enumerator(q: u64) -> Result<WeightDistribution> {
    if q < 2 {
        return Err(Error::UnsupportedQ(q, "q must be at least 2"));
    }
    let q2 = q * q;
    let n = (q2 + 1) as usize;
    WeightDistribution::from_nonzero(
        n,
        4,
        q,
        &[
            ((q2 - q) as usize, BigUint::from((q2 - q) * (q2 + 1))),
            (q2 as usize, BigUint::from((q - 1) * (q2 + 1))),
        ],
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvoidReport {
    pub distribution: WeightDistribution,
    pub matches_enumerator: bool,
    pub minimum_distance: usize,
    pub dual_distance: usize,
    pub dual_ok: bool,
}

impl OvoidReport {
    pub fn holds(&self) -> bool {
        self.matches_enumerator && self.dual_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "distribution": self.distribution.to_json(),
            "matches_enumerator": self.matches_enumerator,
            "d": self.minimum_distance,
            "dual_d": self.dual_distance,
            "dual_ok": self.dual_ok,
        })
    }
}

/// Exhaustive distribution of a 4-dimensional subcode compared with the ovoid enumerator,
/// and the dual distance from MacWilliams (4, or 5 when `q = 2`).
pub fn ovoid_check(tower: &FieldTower, sub: &SubfieldCode, budget: u128) -> Result<OvoidReport> {
    if sub.k_sub() != 4 {
        return Err(Error::DimensionMismatch(format!("subcode has dimension {}, expected 4", sub.k_sub())));
    }
    let (distribution, _) = wdist::span_scan(tower, &sub.basis, Level::Base, budget, None)?;
    let dual = macwilliams_dual(&distribution);
    let dual_distance = minimum_distance(&dual)?;
    Ok(OvoidReport {
        matches_enumerator: distribution == ovoid_enumerator(sub.q)?,
        minimum_distance: minimum_distance(&distribution)?,
        dual_distance,
        dual_ok: dual_distance == if sub.q == 2 { 5 } else { 4 },
        distribution,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T2Report {
    /// Multiplicative order of `q` modulo `r`.
    pub k: u64,
    pub l: u64,
    pub t_size: usize,
    pub t2_size: usize,
    /// `n / k`.
    pub threshold: BigRational,
    pub trivial_predicted: bool,
    pub direct_dim: usize,
    pub agrees: bool,
}

impl T2Report {
    pub fn to_json(&self) -> Value {
        json!({
            "route": "t2",
            "k": self.k,
            "l": self.l,
            "t_size": self.t_size,
            "t2_size": self.t2_size,
            "threshold": report::fraction(&self.threshold),
            "trivial_predicted": self.trivial_predicted,
            "direct_dim": self.direct_dim,
            "agrees": self.agrees,
        })
    }
}

/// `C|_{F_q} = 0` iff `|T_2| >= n/k`, where `T` indexes the zeros of `g`, `k = ord_r(q)`,
/// `2 = k l` and `T_2 = ∪_{j<l} q^{kj} T`. Applies only when `λ ∉ F_q`.
pub fn t2_triviality_criterion(code: &ConstacyclicCode) -> Result<T2Report> {
    let t = code.tower();
    if t.contains(Level::Base, code.lambda()) {
        return Err(Error::InvalidRegime("lambda lies in F_q".into()));
    }
    let q = t.q();
    let k = multiplicative_order(q, code.r())?;
    assert_eq!(2 % k, 0, "ord_r(q) divides 2 since r | q^2 - 1");
    let l = 2 / k;
    let rn = code.rn();
    let zeros = code.zero_exponents();
    let step = crate::numtheory::pow_mod(q, k, rn);
    let mut t2 = BTreeSet::new();
    let mut mult = 1u64;
    for _ in 0..l {
        t2.extend(zeros.iter().map(|&e| ((e as u128 * mult as u128) % rn as u128) as u64));
        mult = ((mult as u128 * step as u128) % rn as u128) as u64;
    }
    let n = code.n();
    let threshold = BigRational::new(BigInt::from(n), BigInt::from(k));
    let trivial_predicted = BigRational::from_integer(BigInt::from(t2.len())) >= threshold;
    let direct_dim = subfield_subcode_direct(code)?.k_sub();
    Ok(T2Report {
        k,
        l,
        t_size: zeros.len(),
        t2_size: t2.len(),
        threshold,
        trivial_predicted,
        direct_dim,
        agrees: trivial_predicted == (direct_dim == 0),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetReport {
    /// Zeros of `Tr(C⊥)`: zeros of `C⊥` whose whole `q`-cyclotomic coset consists of zeros.
    pub trace_zeros: Vec<u64>,
    pub predicted_dim: usize,
    pub direct_dim: usize,
    pub agrees: bool,
}

/// For `λ ∈ F_q`: the subcode dimension equals the number of zeros of `Tr_{q^2/q}(C⊥)`,
/// read off the `q`-cyclotomic cosets modulo `rn` of the zeros of `C⊥` (exponents of `δ`,
/// which are the negatives of the nonzeros of `C`).
pub fn coset_prediction(code: &ConstacyclicCode) -> Result<CosetReport> {
    let t = code.tower();
    if !t.contains(Level::Base, code.lambda()) {
        return Err(Error::InvalidRegime("lambda does not lie in F_q".into()));
    }
    let rn = code.rn();
    let dual_zeros: BTreeSet<u64> = code.nonzero_exponents().iter().map(|&e| (rn - e) % rn).collect();
    let mut trace_zeros = Vec::new();
    for &e in &dual_zeros {
        let coset = cyclotomic_coset(e as i64, t.q(), rn)?;
        if coset.members.iter().all(|x| dual_zeros.contains(x)) {
            trace_zeros.push(e);
        }
    }
    let direct_dim = subfield_subcode_direct(code)?.k_sub();
    Ok(CosetReport {
        predicted_dim: trace_zeros.len(),
        agrees: trace_zeros.len() == direct_dim,
        trace_zeros,
        direct_dim,
    })
}

/// The coset argument when `λ ∈ F_q`, the `|T_2|` criterion otherwise.
pub fn triviality_analysis(code: &ConstacyclicCode) -> Result<Value> {
    if code.tower().contains(Level::Base, code.lambda()) {
        let rep = coset_prediction(code)?;
        let mut v = serde_json::to_value(&rep).expect("serializable");
        v["route"] = json!("coset");
        Ok(v)
    } else {
        Ok(t2_triviality_criterion(code)?.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constacyclic::Family;
    use crate::wdist::DEFAULT_BUDGET;
    use std::sync::Arc;

    fn code(p: u64, m: u32, r: u64, fam: Family) -> ConstacyclicCode {
        ConstacyclicCode::build(Arc::new(FieldTower::build(p, m).unwrap()), r, fam).unwrap()
    }

    #[test]
    fn decomposition_is_exact() {
        let t = FieldTower::build(3, 1).unwrap();
        let th = theta(&t);
        assert!(!t.contains(Level::Base, th));
        for z in t.level_elements(Level::Quad) {
            let (z0, z1) = decompose(&t, th, z);
            assert_eq!(t.add(z0, t.mul(z1, th)), z);
        }
    }

    #[test]
    fn q3_family_b_is_ovoid_code() {
        let c = code(3, 1, 2, Family::B);
        let sub = subfield_subcode_direct(&c).unwrap();
        assert_eq!(sub.k_sub(), 4);
        let rep = ovoid_check(c.tower(), &sub, DEFAULT_BUDGET).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.minimum_distance, 6);
        let d = delsarte_cross_check(&c).unwrap();
        assert!(d.equal);
        assert_eq!(d.delsarte_dim, 4);
        let cos = coset_prediction(&c).unwrap();
        assert_eq!(cos.predicted_dim, 4);
        assert!(cos.agrees);
        let json = sub.to_json(c.tower());
        assert_eq!(json["k_sub"], 4);
        assert!(json["basis"][0].as_array().unwrap().iter().all(|d| d.as_u64().unwrap() <= 2));
    }

    #[test]
    fn q3_family_a_is_trivial() {
        let c = code(3, 1, 4, Family::A);
        assert_eq!(subfield_subcode_direct(&c).unwrap().k_sub(), 0);
        assert!(delsarte_cross_check(&c).unwrap().equal);
        let t2 = t2_triviality_criterion(&c).unwrap();
        assert_eq!(t2.k, 2);
        assert_eq!(t2.t_size, 6);
        assert!(t2.trivial_predicted && t2.agrees);
        assert!(matches!(coset_prediction(&c), Err(Error::InvalidRegime(_))));
        let sub = subfield_subcode_direct(&c).unwrap();
        assert!(matches!(ovoid_check(c.tower(), &sub, DEFAULT_BUDGET), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn family_a_negacyclic_routes_through_cosets() {
        let c = code(5, 1, 2, Family::A);
        assert!(matches!(t2_triviality_criterion(&c), Err(Error::InvalidRegime(_))));
        let rep = coset_prediction(&c).unwrap();
        assert_eq!((rep.predicted_dim, rep.direct_dim), (0, 0));
        assert_eq!(triviality_analysis(&c).unwrap()["route"], "coset");
    }

    #[test]
    fn enumerator_values() {
        let e = ovoid_enumerator(13).unwrap();
        assert_eq!(e.count(156), BigUint::from(26520u32));
        assert_eq!(e.count(169), BigUint::from(2040u32));
        let e = ovoid_enumerator(4).unwrap();
        assert_eq!(e.count(12), BigUint::from(204u32));
        assert_eq!(e.count(16), BigUint::from(51u32));
    }
}
