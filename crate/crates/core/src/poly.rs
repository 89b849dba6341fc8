//! Univariate polynomials over a level of the tower, cyclotomic cosets, minimal
//! polynomials, and the root set of `x^n - λ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower, Level};
use crate::numtheory::gcd;

/// Coefficients low degree first, without trailing zeros. Every coefficient lies in `level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
    level: Level,
}

impl Poly {
    /// Builds a polynomial, checking that every coefficient lies in `level`.
    pub fn new(tower: &FieldTower, coeffs: Vec<Elem>, level: Level) -> Result<Self> {
        if coeffs.iter().find(|&&c| !tower.contains(level, c)).is_some() {
            return Err(Error::NotInLevel(level.name()));
        }
        Ok(Self::normalized(coeffs, level))
    }

    fn normalized(mut coeffs: Vec<Elem>, level: Level) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, level }
    }

    pub fn zero(level: Level) -> Self {
        Poly { coeffs: Vec::new(), level }
    }

    pub fn one(level: Level) -> Self {
        Poly { coeffs: vec![Elem::ONE], level }
    }

    /// `c·x^d`.
    pub fn monomial(tower: &FieldTower, c: Elem, d: usize, level: Level) -> Result<Self> {
        let mut coeffs = vec![Elem::Zero; d + 1];
        coeffs[d] = c;
        Self::new(tower, coeffs, level)
    }

    /// `x^n - c`.
    pub fn binomial(tower: &FieldTower, n: usize, c: Elem, level: Level) -> Result<Self> {
        let mut coeffs = vec![Elem::Zero; n + 1];
        coeffs[0] = tower.neg(c);
        coeffs[n] = tower.add(coeffs[n], Elem::ONE);
        Self::new(tower, coeffs, level)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::Zero)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::Zero)
    }

    /// Explicit move to a larger coefficient field.
    pub fn promote(&self, level: Level) -> Result<Self> {
        if level < self.level {
            return Err(Error::LevelMismatch(self.level.name(), level.name()));
        }
        Ok(Poly { coeffs: self.coeffs.clone(), level })
    }

    /// Re-tags the coefficient field downward after checking membership.
    pub fn restrict(&self, tower: &FieldTower, level: Level) -> Result<Self> {
        Self::new(tower, self.coeffs.clone(), level)
    }

    fn check_level(&self, other: &Poly) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level.name(), other.level.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly, tower: &FieldTower) -> Result<Poly> {
        self.check_level(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| tower.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::normalized(coeffs, self.level))
    }

    pub fn sub(&self, other: &Poly, tower: &FieldTower) -> Result<Poly> {
        self.check_level(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| tower.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(Self::normalized(coeffs, self.level))
    }

    pub fn mul(&self, other: &Poly, tower: &FieldTower) -> Result<Poly> {
        self.check_level(other)?;
        Ok(self.mul_unchecked(other, tower))
    }

    fn mul_unchecked(&self, other: &Poly, tower: &FieldTower) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.level);
        }
        let mut out = vec![Elem::Zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = tower.add(out[i + j], tower.mul(a, b));
            }
        }
        Self::normalized(out, self.level)
    }

    pub fn scale(&self, c: Elem, tower: &FieldTower) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| tower.mul(a, c)).collect();
        Self::normalized(coeffs, self.level)
    }

    /// `(quotient, remainder)` with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly, tower: &FieldTower) -> Result<(Poly, Poly)> {
        self.check_level(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = tower.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.level), self.clone()));
        }
        let mut quot = vec![Elem::Zero; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = tower.mul(c, lead_inv);
            quot[i - dd] = f;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = tower.sub(rem[k], tower.mul(f, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::normalized(quot, self.level), Self::normalized(rem, self.level)))
    }

    pub fn monic(&self, tower: &FieldTower) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = tower.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv, tower)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, tower: &FieldTower) -> Result<Poly> {
        self.check_level(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b, tower)?;
            a = b;
            b = r;
        }
        Ok(a.monic(tower))
    }

    /// Horner evaluation; the point may lie in any level.
    pub fn eval(&self, x: Elem, tower: &FieldTower) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::Zero, |acc, &c| tower.add(tower.mul(acc, x), c))
    }

    /// `x^{deg} f(1/x)`.
    pub fn reverse(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::normalized(coeffs, self.level)
    }

    /// Roots among the given candidates.
    pub fn roots_in(&self, candidates: &[Elem], tower: &FieldTower) -> Vec<Elem> {
        candidates.iter().copied().filter(|&x| self.eval(x, tower).is_zero()).collect()
    }

    /// `[c0,c1,...,ck]@level` with coefficients rendered as `0`, `1` or `b^e`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]@{}", self.level)
    }
}

/// Product of `(X - r)` over the given roots, with coefficients in `level`.
pub fn from_roots(tower: &FieldTower, roots: &[Elem], level: Level) -> Result<Poly> {
    let mut acc = Poly::one(Level::Quartic);
    for &r in roots {
        let factor = Poly::normalized(vec![tower.neg(r), Elem::ONE], Level::Quartic);
        acc = acc.mul_unchecked(&factor, tower);
    }
    acc.restrict(tower, level)
}

/// The orbit `{h·base^j mod N}` of a residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicCoset {
    pub representative: u64,
    pub base: u64,
    pub modulus: u64,
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&(x % self.modulus)).is_ok()
    }
}

/// The `base`-cyclotomic coset of `h` modulo `modulus`; `h` may be negative.
pub fn cyclotomic_coset(h: i64, base: u64, modulus: u64) -> Result<CyclotomicCoset> {
    if modulus == 0 || gcd(base % modulus, modulus) != 1 && modulus != 1 {
        return Err(Error::NotCoprime { base, modulus });
    }
    let start = h.rem_euclid(modulus as i64) as u64;
    let mut members = BTreeSet::new();
    let mut x = start;
    loop {
        members.insert(x);
        x = ((x as u128 * base as u128) % modulus as u128) as u64;
        if x == start {
            break;
        }
    }
    let members: Vec<u64> = members.into_iter().collect();
    Ok(CyclotomicCoset { representative: members[0], base, modulus, members })
}

/// All cosets of `Z_N`, ordered by representative.
pub fn cyclotomic_cosets(base: u64, modulus: u64) -> Result<Vec<CyclotomicCoset>> {
    let mut seen = vec![false; modulus as usize];
    let mut out = Vec::new();
    for h in 0..modulus {
        if seen[h as usize] {
            continue;
        }
        let c = cyclotomic_coset(h as i64, base, modulus)?;
        for &x in &c.members {
            seen[x as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// Minimal polynomial of `x` over `level`: the product over the distinct conjugates
/// `x^{|level|^j}`.
pub fn minimal_polynomial(tower: &FieldTower, x: Elem, level: Level) -> Result<Poly> {
    let mut conjugates = vec![x];
    let mut c = tower.frobenius(x, level);
    while c != x {
        conjugates.push(c);
        c = tower.frobenius(c, level);
    }
    from_roots(tower, &conjugates, level)
}

/// The `n = q^2+1` roots `δ^{1+rj}` of `x^n - λ`, checked by rebuilding the product.
pub fn roots_of_xn_minus_lambda(tower: &FieldTower, r: u64) -> Result<Vec<Elem>> {
    let (delta, lambda) = tower.delta_lambda(r)?;
    let q2 = tower.q() * tower.q();
    let n = q2 + 1;
    let roots: Vec<Elem> = (0..n).map(|j| tower.pow_u(delta, 1 + r * j)).collect();
    let product = from_roots(tower, &roots, Level::Quad)?;
    let target = Poly::binomial(tower, n as usize, lambda, Level::Quad)?;
    assert_eq!(product, target, "product of linear factors differs from x^n - lambda");
    Ok(roots)
}
