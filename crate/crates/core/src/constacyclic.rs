//! λ-constacyclic codes of length `n = q^2 + 1` over `F_{q^2}`.
//!
//! A code is described by `δ` (a primitive `rn`-th root of unity with `δ^n = λ`) and the
//! set of exponents `e` for which `δ^e` is a root of the check polynomial `h`. The two
//! families have nonzeros `{1, q^2, s, s q^2}` with `s = q^2 + q + 1` (family A) or
//! `s = q^2 - q + 1` (family B).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower, Level};
use crate::matrix::{self, Row};
use crate::numtheory::{divisors, nu2};
use crate::poly::{self, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    Custom,
}

impl Family {
    /// The second nonzero exponent `s`, `None` for custom codes.
    pub fn exponent(self, q: u64) -> Option<u64> {
        match self {
            Family::A => Some(q * q + q + 1),
            Family::B => Some(q * q - q + 1),
            Family::Custom => None,
        }
    }

    /// `q + 1` for family A, `q - 1` for family B.
    fn r_bound(self, q: u64) -> Option<u64> {
        match self {
            Family::A => Some(q + 1),
            Family::B => Some(q - 1),
            Family::Custom => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            _ => Err(format!("unknown family {s:?}, expected A or B")),
        }
    }
}

/// Checks the divisibility and 2-adic conditions on `r` for a family.
pub fn check_r(q: u64, r: u64, family: Family) -> Result<()> {
    let bound = family
        .r_bound(q)
        .ok_or_else(|| Error::InvalidR("custom codes have no admissibility rule".into()))?;
    if r == 0 || bound == 0 || bound % r != 0 {
        return Err(Error::InvalidR(format!(
            "divisibility: r = {r} does not divide {bound} (family {family})"
        )));
    }
    if nu2(r) != nu2(bound) {
        return Err(Error::InvalidR(format!(
            "2-adic valuation: nu2({r}) = {} != nu2({bound}) = {} (family {family})",
            nu2(r),
            nu2(bound)
        )));
    }
    assert_eq!((q * q - 1) % r, 0);
    Ok(())
}

/// All `r` satisfying [`check_r`], increasing.
pub fn admissible_r(q: u64, family: Family) -> Vec<u64> {
    let Some(bound) = family.r_bound(q) else {
        return Vec::new();
    };
    if bound == 0 {
        return Vec::new();
    }
    divisors(bound)
        .into_iter()
        .filter(|&r| check_r(q, r, family).is_ok())
        .collect()
}

/// Reproducibility record of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub p: u64,
    pub m: u32,
    pub r: u64,
    pub family: Family,
    pub dual: bool,
    pub lambda_log: Option<u32>,
    pub modulus: Vec<u64>,
    pub n: usize,
    pub k: usize,
    pub g: Vec<String>,
    pub h: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ConstacyclicCode {
    tower: Arc<FieldTower>,
    n: usize,
    r: u64,
    delta: Elem,
    lambda: Elem,
    family: Family,
    dual: bool,
    nonzeros: Vec<u64>,
    h: Poly,
    g: Poly,
}

impl ConstacyclicCode {
    /// One of the two families; `r` must satisfy the family's conditions.
    pub fn build(tower: Arc<FieldTower>, r: u64, family: Family) -> Result<Self> {
        let q = tower.q();
        let s = family
            .exponent(q)
            .ok_or(Error::Unsupported("use build_custom for custom codes"))?;
        check_r(q, r, family)?;
        let q2 = q * q;
        let rn = r * (q2 + 1);
        let nonzeros = vec![1, q2 % rn, s % rn, (s * q2) % rn];
        let (delta, _) = tower.delta_lambda(r)?;
        let code = Self::from_nonzeros(tower, r, delta, nonzeros, family, false)?;
        debug_assert_eq!(code.k(), 4);
        Ok(code)
    }

    /// A code with the given nonzero exponents of `δ = β^{(q^2-1)/r}`; the set must consist of
    /// exponents `≡ 1 (mod r)` and be closed under multiplication by `q^2` modulo `rn`.
    pub fn build_custom(tower: Arc<FieldTower>, r: u64, nonzeros: &[u64]) -> Result<Self> {
        let (delta, _) = tower.delta_lambda(r)?;
        Self::from_nonzeros(tower, r, delta, nonzeros.to_vec(), Family::Custom, false)
    }

    fn from_nonzeros(
        tower: Arc<FieldTower>,
        r: u64,
        delta: Elem,
        nonzeros: Vec<u64>,
        family: Family,
        dual: bool,
    ) -> Result<Self> {
        let q2 = tower.q() * tower.q();
        let n = (q2 + 1) as usize;
        let rn = r * (q2 + 1);
        let set: BTreeSet<u64> = nonzeros.iter().map(|&e| e % rn).collect();
        if set.len() != nonzeros.len() {
            return Err(Error::InvalidExponents("repeated exponent".into()));
        }
        if let Some(e) = set.iter().find(|&&e| e % r != 1 % r) {
            return Err(Error::InvalidExponents(format!("{e} is not 1 mod r = {r}")));
        }
        if let Some(e) = set.iter().find(|&&e| !set.contains(&(e * q2 % rn))) {
            return Err(Error::InvalidExponents(format!("not closed under q^2-conjugation at {e}")));
        }
        let nonzeros: Vec<u64> = set.into_iter().collect();
        let lambda = tower.pow_u(delta, n as u64);
        let roots: Vec<Elem> = nonzeros.iter().map(|&e| tower.pow_u(delta, e)).collect();
        let h = poly::from_roots(&tower, &roots, Level::Quad)?;
        let xn = Poly::binomial(&tower, n, lambda, Level::Quad)?;
        let (g, rem) = xn.divmod(&h, &tower)?;
        if !rem.is_zero() {
            return Err(Error::InvalidExponents("h does not divide x^n - lambda".into()));
        }
        assert_eq!(g.mul(&h, &tower)?, xn, "g h != x^n - lambda");
        Ok(ConstacyclicCode { tower, n, r, delta, lambda, family, dual, nonzeros, h, g })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn rn(&self) -> u64 {
        self.r * self.n as u64
    }

    pub fn delta(&self) -> Elem {
        self.delta
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// The code carries the two-term trace representation (a family code, not a dual).
    pub fn has_trace_form(&self) -> bool {
        self.family != Family::Custom && !self.dual
    }

    /// Exponents `e` (of this code's `δ`) with `δ^e` a root of `h`.
    pub fn nonzero_exponents(&self) -> &[u64] {
        &self.nonzeros
    }

    /// Exponents `e ≡ 1 (mod r)` with `δ^e` a root of `g`.
    pub fn zero_exponents(&self) -> Vec<u64> {
        let rn = self.rn();
        (0..self.n as u64)
            .map(|j| (1 + self.r * j) % rn)
            .filter(|e| self.nonzeros.binary_search(e).is_err())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    pub fn check(&self) -> &Poly {
        &self.h
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        let render = |p: &Poly| p.coeffs().iter().map(|c| c.to_string()).collect();
        CodeDescriptor {
            p: self.tower.p(),
            m: self.tower.m(),
            r: self.r,
            family: self.family,
            dual: self.dual,
            lambda_log: self.lambda.log(),
            modulus: self.tower.modulus().to_vec(),
            n: self.n,
            k: self.k(),
            g: render(&self.g),
            h: render(&self.h),
        }
    }

    /// The dual code: λ⁻¹-constacyclic, generated by `h_0^{-1} x^k h(1/x)`.
    pub fn dual(&self) -> Result<ConstacyclicCode> {
        let t = &self.tower;
        let delta = t.inv(self.delta)?;
        let dual = Self::from_nonzeros(
            Arc::clone(t),
            self.r,
            delta,
            self.zero_exponents(),
            self.family,
            !self.dual,
        )?;
        let h0_inv = t.inv(self.h.coeff(0))?;
        let h_hat = self.h.reverse().scale(h0_inv, t);
        assert_eq!(dual.g, h_hat, "dual generator differs from the reciprocal check polynomial");
        assert_eq!(dual.lambda, t.inv(self.lambda)?);
        let gp = self.generator_matrix()?;
        let gd = dual.generator_matrix()?;
        for a in &gp {
            for b in &gd {
                assert!(matrix::dot(t, a, b).is_zero(), "dual rows not orthogonal");
            }
        }
        Ok(dual)
    }

    /// `(Tr(a δ^{-i} + b δ^{-s i}))_{i<n}` with the trace from `F_{q^4}` to `F_{q^2}`.
    pub fn trace_codeword(&self, a: Elem, b: Elem) -> Result<Row> {
        if !self.has_trace_form() {
            return Err(Error::Unsupported("trace representation exists for family codes only"));
        }
        let s = self.family.exponent(self.q()).expect("family code");
        let t = &self.tower;
        let rn = self.rn() as i64;
        Ok((0..self.n as i64)
            .map(|i| {
                let x = t.mul(a, t.pow(self.delta, (-i).rem_euclid(rn)));
                let y = t.mul(b, t.pow(self.delta, (-(s as i64) * i).rem_euclid(rn)));
                t.trace(t.add(x, y), Level::Quartic, Level::Quad).expect("levels are valid")
            })
            .collect())
    }

    /// Family codes: trace words at `(1,0), (β,0), (0,1), (0,β)`. Other codes: `x^i g(x)`,
    /// `i < k`. The rank is checked.
    pub fn generator_matrix(&self) -> Result<Vec<Row>> {
        let rows = if self.has_trace_form() {
            let beta = self.tower.beta();
            let z = Elem::Zero;
            [(Elem::ONE, z), (beta, z), (z, Elem::ONE), (z, beta)]
                .into_iter()
                .map(|(a, b)| self.trace_codeword(a, b))
                .collect::<Result<Vec<_>>>()?
        } else {
            (0..self.k())
                .map(|i| {
                    let mut row = vec![Elem::Zero; self.n];
                    for (j, &c) in self.g.coeffs().iter().enumerate() {
                        row[i + j] = c;
                    }
                    row
                })
                .collect()
        };
        let rank = matrix::rank(&self.tower, &rows);
        if rank != self.k() {
            return Err(Error::RankDeficient { rank, expected: self.k() });
        }
        Ok(rows)
    }

    /// `c ∈ C` iff `g(x)` divides `c(x)`.
    pub fn is_codeword(&self, word: &[Elem]) -> Result<bool> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch { got: word.len(), expected: self.n });
        }
        let c = Poly::new(&self.tower, word.to_vec(), Level::Quad)?;
        Ok(c.divmod(&self.g, &self.tower)?.1.is_zero())
    }

    /// `(λ c_{n-1}, c_0, …, c_{n-2})`.
    pub fn shift(&self, word: &[Elem]) -> Row {
        let n = word.len();
        let mut out = Vec::with_capacity(n);
        out.push(self.tower.mul(self.lambda, word[n - 1]));
        out.extend_from_slice(&word[..n - 1]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn tower(p: u64, m: u32) -> Arc<FieldTower> {
        Arc::new(FieldTower::build(p, m).unwrap())
    }

    #[test]
    fn admissible_sets() {
        assert_eq!(admissible_r(3, Family::A), vec![4]);
        assert_eq!(admissible_r(3, Family::B), vec![2]);
        assert_eq!(admissible_r(4, Family::A), vec![1, 5]);
        assert_eq!(admissible_r(4, Family::B), vec![1, 3]);
        assert_eq!(admissible_r(5, Family::A), vec![2, 6]);
        assert_eq!(admissible_r(5, Family::B), vec![4]);
        assert_eq!(admissible_r(32, Family::A), vec![1, 3, 11, 33]);
        assert!(admissible_r(29, Family::A).contains(&6));
        assert!(admissible_r(29, Family::A).contains(&10));
        assert!(admissible_r(25, Family::B).contains(&8));
        assert!(admissible_r(13, Family::B).contains(&4));
        assert!(admissible_r(16, Family::B).contains(&5));
    }

    #[test]
    fn invalid_r_names_the_condition() {
        let e = check_r(3, 2, Family::A).unwrap_err();
        assert!(matches!(&e, Error::InvalidR(msg) if msg.contains("2-adic")));
        let e = check_r(3, 3, Family::A).unwrap_err();
        assert!(matches!(&e, Error::InvalidR(msg) if msg.contains("divisibility")));
        assert!(ConstacyclicCode::build(tower(3, 1), 2, Family::A).is_err());
    }

    #[test]
    fn gh_and_dimensions() {
        for (p, m, r, fam) in [
            (3, 1, 4, Family::A),
            (3, 1, 2, Family::B),
            (2, 2, 1, Family::A),
            (2, 2, 5, Family::A),
            (2, 2, 3, Family::B),
            (5, 1, 6, Family::A),
            (5, 1, 4, Family::B),
            (2, 1, 1, Family::A),
        ] {
            let t = tower(p, m);
            let c = ConstacyclicCode::build(Arc::clone(&t), r, fam).unwrap();
            assert_eq!(c.k(), 4);
            assert_eq!(c.check().degree(), Some(4));
            let q = t.q();
            assert_eq!(c.n() as u64, q * q + 1);
            let xn = Poly::binomial(&t, c.n(), c.lambda(), Level::Quad).unwrap();
            assert!(xn.divmod(c.generator(), &t).unwrap().1.is_zero());
            // h = g_1 g_s
            let s = fam.exponent(q).unwrap();
            let g1 = poly::minimal_polynomial(&t, c.delta(), Level::Quad).unwrap();
            let gs = poly::minimal_polynomial(&t, t.pow_u(c.delta(), s), Level::Quad).unwrap();
            assert_eq!(&g1.mul(&gs, &t).unwrap(), c.check());
        }
    }

    #[test]
    fn trace_words_are_codewords_and_distinct_q3() {
        let t = tower(3, 1);
        let c = ConstacyclicCode::build(Arc::clone(&t), 2, Family::B).unwrap();
        assert!(c.trace_codeword(Elem::Zero, Elem::Zero).unwrap().iter().all(|x| x.is_zero()));
        let mut seen = HashSet::new();
        for a in t.elements() {
            for b in t.elements() {
                let w = c.trace_codeword(a, b).unwrap();
                assert!(c.is_codeword(&w).unwrap());
                seen.insert(w);
            }
        }
        assert_eq!(seen.len(), 6561);
    }

    #[test]
    fn trace_words_are_codewords_q4_sample() {
        let t = tower(2, 2);
        for (r, fam) in [(5, Family::A), (3, Family::B)] {
            let c = ConstacyclicCode::build(Arc::clone(&t), r, fam).unwrap();
            for (i, a) in t.elements().enumerate().step_by(17) {
                for b in t.elements().skip(i % 13).step_by(29) {
                    assert!(c.is_codeword(&c.trace_codeword(a, b).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn generator_rows_shift_closed() {
        let t = tower(3, 1);
        let c = ConstacyclicCode::build(Arc::clone(&t), 4, Family::A).unwrap();
        let rows = c.generator_matrix().unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert!(c.is_codeword(&c.shift(row)).unwrap());
        }
    }

    #[test]
    fn membership_negative_and_errors() {
        let t = tower(3, 1);
        let c = ConstacyclicCode::build(Arc::clone(&t), 2, Family::B).unwrap();
        assert!(c.is_codeword(&[Elem::Zero; 10]).unwrap());
        assert!(matches!(c.is_codeword(&[Elem::Zero; 3]), Err(Error::LengthMismatch { .. })));
        let w = c.trace_codeword(t.beta(), Elem::ONE).unwrap();
        let any_out = t.level_elements(Level::Quad)[1..].iter().any(|&e| {
            let mut v = w.clone();
            v[0] = t.add(v[0], e);
            !c.is_codeword(&v).unwrap()
        });
        assert!(any_out);
    }

    #[test]
    fn duals() {
        let t = tower(3, 1);
        let c = ConstacyclicCode::build(Arc::clone(&t), 2, Family::B).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(d.k(), 6);
        assert_eq!(d.lambda(), t.neg(Elem::ONE));
        let dd = d.dual().unwrap();
        assert_eq!(dd.generator(), c.generator());
        for row in c.generator_matrix().unwrap() {
            assert!(dd.is_codeword(&row).unwrap());
        }
        for (p, m, r, fam) in [(2, 2, 5, Family::A), (5, 1, 4, Family::B)] {
            let t = tower(p, m);
            let c = ConstacyclicCode::build(Arc::clone(&t), r, fam).unwrap();
            let q = t.q() as usize;
            assert_eq!(c.dual().unwrap().k(), q * q - 3);
        }
    }

    #[test]
    fn custom_validation() {
        let t = tower(3, 1);
        assert!(ConstacyclicCode::build_custom(Arc::clone(&t), 2, &[1]).is_err());
        assert!(ConstacyclicCode::build_custom(Arc::clone(&t), 2, &[2]).is_err());
        let c = ConstacyclicCode::build_custom(Arc::clone(&t), 2, &[1, 9]).unwrap();
        assert_eq!(c.k(), 2);
        assert!(c.trace_codeword(Elem::ONE, Elem::Zero).is_err());
        assert_eq!(c.generator_matrix().unwrap().len(), 2);
    }

    #[test]
    fn descriptor_roundtrip() {
        let t = tower(3, 1);
        let c = ConstacyclicCode::build(Arc::clone(&t), 4, Family::A).unwrap();
        let d = c.descriptor();
        let json = serde_json::to_string(&d).unwrap();
        let back: CodeDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(d.h.len(), 5);
        assert_eq!(d.g.len(), 7);
    }
}
