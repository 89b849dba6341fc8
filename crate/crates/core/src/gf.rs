//! The field tower `F_p ⊂ F_q ⊂ F_{q^2} ⊂ F_{q^4}` (with `q = p^m`) in discrete-log form.
//!
//! Every element of `F_{q^4}` is either zero or a power `β^e` of one fixed primitive
//! element `β`, the class of the indeterminate modulo the lexicographically smallest
//! primitive polynomial of degree `4m` over `F_p`. Multiplication is exponent
//! addition; addition goes through a Zech table, `β^{Z(i)} = 1 + β^i`.
//!
//! The subfields are the levels of the chain. An element lies in the level of
//! `p^s` elements exactly when its exponent is a multiple of `(q^4 - 1)/(p^s - 1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime, prime_factors};

/// Default size limit (number of elements of `F_{q^4}`).
pub const DEFAULT_CAP: u64 = 1 << 27;

const NO_ZECH: u32 = u32::MAX;

/// A field element: zero, or `β^e` with `0 <= e < q^4 - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Zero,
    Pow(u32),
}

impl Elem {
    pub const ONE: Elem = Elem::Pow(0);

    pub fn is_zero(self) -> bool {
        matches!(self, Elem::Zero)
    }

    /// Discrete log, `None` for zero.
    pub fn log(self) -> Option<u32> {
        match self {
            Elem::Zero => None,
            Elem::Pow(e) => Some(e),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Zero => write!(f, "0"),
            Elem::Pow(0) => write!(f, "1"),
            Elem::Pow(e) => write!(f, "b^{e}"),
        }
    }
}

/// A level of the tower, named by its size: `p`, `q`, `q^2`, `q^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    Prime,
    Base,
    Quad,
    Quartic,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Prime, Level::Base, Level::Quad, Level::Quartic];

    pub fn name(self) -> &'static str {
        match self {
            Level::Prime => "Fp",
            Level::Base => "Fq",
            Level::Quad => "Fq2",
            Level::Quartic => "Fq4",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Reproducibility record: characteristic, `m`, and the modulus (low-to-high coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescriptor {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
}

/// The tower `F_p ⊂ F_q ⊂ F_{q^2} ⊂ F_{q^4}`. Immutable once built.
pub struct FieldTower {
    p: u64,
    m: u32,
    q: u64,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    /// `exp[i]` = coordinate index (base-p digits, low first) of `β^i`.
    exp: Vec<u32>,
    /// Inverse of `exp`; entry 0 is unused.
    log: Vec<u32>,
    zech: Vec<u32>,
    log_neg_one: u32,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldTower {
    pub fn build(p: u64, m: u32) -> Result<Self> {
        Self::build_with_cap(p, m, DEFAULT_CAP)
    }

    pub fn build_with_cap(p: u64, m: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidLevels("m must be positive".into()));
        }
        let degree = 4 * m;
        let size = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if size > cap as u128 || size > u32::MAX as u128 {
            return Err(Error::CapExceeded { p, degree, cap });
        }
        let size = size as u64;
        let order = size - 1;
        let modulus = smallest_primitive_polynomial(p, degree as usize);

        let d = degree as usize;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; size as usize];
        let mut coeffs = vec![0u64; d];
        coeffs[0] = 1;
        let mut place = vec![1u64; d];
        for i in 1..d {
            place[i] = place[i - 1] * p;
        }
        #[allow(clippy::needless_range_loop)]
        for e in 0..order as usize {
            let idx: u64 = coeffs.iter().zip(&place).map(|(c, w)| c * w).sum();
            exp[e] = idx as u32;
            log[idx as usize] = e as u32;
            // multiply by x and reduce by the monic modulus
            let top = coeffs[d - 1];
            for j in (1..d).rev() {
                coeffs[j] = coeffs[j - 1];
            }
            coeffs[0] = 0;
            if top != 0 {
                for j in 0..d {
                    coeffs[j] = (coeffs[j] + (p - top) * modulus[j]) % p;
                }
            }
        }

        let mut zech = vec![NO_ZECH; order as usize];
        let mut log_neg_one = 0;
        for e in 0..order as usize {
            let idx = exp[e] as u64;
            let c0 = idx % p;
            let bumped = idx - c0 + (c0 + 1) % p;
            if bumped == 0 {
                log_neg_one = e as u32;
            } else {
                zech[e] = log[bumped as usize];
            }
        }

        Ok(FieldTower {
            p,
            m,
            q: p.pow(m),
            degree,
            order,
            modulus,
            exp,
            log,
            zech,
            log_neg_one,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of elements of the top field, `q^4`.
    pub fn size(&self) -> u64 {
        self.order + 1
    }

    /// `q^4 - 1`.
    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn descriptor(&self) -> TowerDescriptor {
        TowerDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    pub fn beta(&self) -> Elem {
        Elem::Pow(1 % self.order as u32)
    }

    /// `β^e` for any integer `e`.
    pub fn beta_pow(&self, e: i64) -> Elem {
        Elem::Pow(e.rem_euclid(self.order as i64) as u32)
    }

    pub fn log_neg_one(&self) -> u32 {
        self.log_neg_one
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Elem {
        let c = k.rem_euclid(self.p as i64) as usize;
        if c == 0 {
            Elem::Zero
        } else {
            Elem::Pow(self.log[c])
        }
    }

    /// Coordinates over `F_p` in the power basis `1, β, …, β^{4m-1}`.
    pub fn to_coords(&self, x: Elem) -> Vec<u64> {
        let mut idx = match x {
            Elem::Zero => 0,
            Elem::Pow(e) => self.exp[e as usize] as u64,
        };
        let mut out = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u64]) -> Elem {
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        if idx == 0 {
            Elem::Zero
        } else {
            Elem::Pow(self.log[idx as usize])
        }
    }

    /// All `q^4` elements, zero first then by exponent.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::Zero).chain((0..self.order as u32).map(Elem::Pow))
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match (x, y) {
            (Elem::Zero, _) => y,
            (_, Elem::Zero) => x,
            (Elem::Pow(i), Elem::Pow(j)) => {
                let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                let z = self.zech[(hi - lo) as usize];
                if z == NO_ZECH {
                    Elem::Zero
                } else {
                    Elem::Pow(self.reduce(lo as u64 + z as u64))
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match x {
            Elem::Zero => Elem::Zero,
            Elem::Pow(i) => Elem::Pow(self.reduce(i as u64 + self.log_neg_one as u64)),
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match (x, y) {
            (Elem::Pow(i), Elem::Pow(j)) => Elem::Pow(self.reduce(i as u64 + j as u64)),
            _ => Elem::Zero,
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        match x {
            Elem::Zero => Err(Error::DivisionByZero),
            Elem::Pow(i) => Ok(Elem::Pow(self.reduce(self.order - i as u64))),
        }
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e`; negative exponents invert, `0^0 = 1`, and `0^e` for `e < 0` is zero.
    pub fn pow(&self, x: Elem, e: i64) -> Elem {
        match x {
            Elem::Zero => {
                if e == 0 {
                    Elem::ONE
                } else {
                    Elem::Zero
                }
            }
            Elem::Pow(i) => {
                let n = self.order as i128;
                let t = (i as i128 * e as i128).rem_euclid(n);
                Elem::Pow(t as u32)
            }
        }
    }

    /// `x^k` with a large nonnegative exponent (Frobenius powers `p^j`).
    pub fn pow_u(&self, x: Elem, k: u64) -> Elem {
        match x {
            Elem::Zero => {
                if k == 0 {
                    Elem::ONE
                } else {
                    Elem::Zero
                }
            }
            Elem::Pow(i) => {
                let t = (i as u128 * (k as u128 % self.order as u128)) % self.order as u128;
                Elem::Pow(t as u32)
            }
        }
    }

    #[inline]
    fn reduce(&self, e: u64) -> u32 {
        (e % self.order) as u32
    }

    /// Multiplicative order; zero has no order and returns 0.
    pub fn order(&self, x: Elem) -> u64 {
        match x {
            Elem::Zero => 0,
            Elem::Pow(i) => self.order / gcd(i as u64, self.order),
        }
    }

    pub fn level_degree(&self, level: Level) -> u32 {
        match level {
            Level::Prime => 1,
            Level::Base => self.m,
            Level::Quad => 2 * self.m,
            Level::Quartic => 4 * self.m,
        }
    }

    pub fn level_size(&self, level: Level) -> u64 {
        self.p.pow(self.level_degree(level))
    }

    /// Exponent step of the level's multiplicative group inside `F_{q^4}^*`.
    fn level_step(&self, level: Level) -> u64 {
        self.order / (self.level_size(level) - 1)
    }

    pub fn contains(&self, level: Level, x: Elem) -> bool {
        match x {
            Elem::Zero => true,
            Elem::Pow(i) => (i as u64).is_multiple_of(self.level_step(level)),
        }
    }

    /// A generator of the level's multiplicative group.
    pub fn level_generator(&self, level: Level) -> Elem {
        Elem::Pow(self.level_step(level) as u32)
    }

    /// All elements of a level, zero first then by power of the level generator.
    pub fn level_elements(&self, level: Level) -> Vec<Elem> {
        let step = self.level_step(level);
        std::iter::once(Elem::Zero)
            .chain((0..self.level_size(level) - 1).map(|j| Elem::Pow((j * step) as u32)))
            .collect()
    }

    /// `x ↦ x^{|level|}`, the Frobenius fixing `level`.
    pub fn frobenius(&self, x: Elem, level: Level) -> Elem {
        self.pow_u(x, self.level_size(level))
    }

    /// Relative trace `Σ_j x^{|lower|^j}`, `j < [upper : lower]`.
    pub fn trace(&self, x: Elem, upper: Level, lower: Level) -> Result<Elem> {
        let du = self.level_degree(upper);
        let dl = self.level_degree(lower);
        if upper < lower || !du.is_multiple_of(dl) {
            return Err(Error::InvalidLevels(format!("{lower} is not a subfield of {upper}")));
        }
        if !self.contains(upper, x) {
            return Err(Error::NotInLevel(upper.name()));
        }
        let mut acc = Elem::Zero;
        let mut conj = x;
        for _ in 0..du / dl {
            acc = self.add(acc, conj);
            conj = self.frobenius(conj, lower);
        }
        debug_assert!(self.contains(lower, acc));
        Ok(acc)
    }

    /// All elements of multiplicative order dividing `order`, as powers of a generator.
    pub fn unit_circle(&self, order: u64) -> Result<Vec<Elem>> {
        if order == 0 || !self.order.is_multiple_of(order) {
            return Err(Error::NotADivisor { divisor: order, value: self.order });
        }
        let step = self.order / order;
        Ok((0..order).map(|j| Elem::Pow((j * step) as u32)).collect())
    }

    /// `U_{s(q^2+1)}`; requires `s | q^2 - 1`.
    pub fn unit_circle_scaled(&self, s: u64) -> Result<Vec<Elem>> {
        let q2 = self.q * self.q;
        if s == 0 || !(q2 - 1).is_multiple_of(s) {
            return Err(Error::NotADivisor { divisor: s, value: q2 - 1 });
        }
        self.unit_circle(s * (q2 + 1))
    }

    /// `δ = β^{(q^2-1)/r}` and `λ = δ^{q^2+1}`, with their orders checked.
    pub fn delta_lambda(&self, r: u64) -> Result<(Elem, Elem)> {
        let q2 = self.q * self.q;
        if r == 0 || !(q2 - 1).is_multiple_of(r) {
            return Err(Error::NotADivisor { divisor: r, value: q2 - 1 });
        }
        let n = q2 + 1;
        let delta = Elem::Pow(((q2 - 1) / r) as u32);
        let lambda = self.pow_u(delta, n);
        assert_eq!(self.order(delta), r * n, "ord(delta) != rn");
        assert_eq!(self.order(lambda), r, "ord(lambda) != r");
        assert!(self.contains(Level::Quad, lambda), "lambda outside F_q^2");
        Ok((delta, lambda))
    }

    /// Bind a raw element to this tower for checked arithmetic.
    pub fn elem(&self, raw: Elem) -> FieldElem<'_> {
        FieldElem { tower: self, raw }
    }
}

/// The lexicographically smallest (coefficients compared from degree 0 upward) monic
/// primitive polynomial of degree `d` over `F_p`, returned low-to-high including the
/// leading 1.
pub fn smallest_primitive_polynomial(p: u64, d: usize) -> Vec<u64> {
    let group = p.pow(d as u32) - 1;
    let factors = prime_factors(group);
    let total = p.pow(d as u32);
    for idx in 0..total {
        // c_0 is the most significant digit of idx
        let mut coeffs = vec![0u64; d + 1];
        let mut rest = idx;
        for j in (0..d).rev() {
            coeffs[j] = rest % p;
            rest /= p;
        }
        coeffs[d] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let x = {
            let mut v = vec![0u64; d];
            if d > 1 {
                v[1] = 1;
            } else {
                v[0] = (p - coeffs[0]) % p;
            }
            v
        };
        let one = {
            let mut v = vec![0u64; d];
            v[0] = 1;
            v
        };
        if poly_powmod(&x, group, &coeffs, p) != one {
            continue;
        }
        if factors
            .iter()
            .all(|&l| poly_powmod(&x, group / l, &coeffs, p) != one)
        {
            return coeffs;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (d..2 * d).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..d {
            prod[i - d + j] = (prod[i - d + j] + (p - c) * modulus[j]) % p;
        }
    }
    prod.truncate(d);
    prod
}

fn poly_powmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut acc = vec![0u64; d];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Arithmetic selector for [`FieldElem::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(i64),
}

/// An element bound to its tower; operations check that both operands share it.
#[derive(Clone, Copy)]
pub struct FieldElem<'t> {
    tower: &'t FieldTower,
    raw: Elem,
}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw)
    }
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.tower, other.tower) && self.raw == other.raw
    }
}

impl<'t> FieldElem<'t> {
    pub fn raw(&self) -> Elem {
        self.raw
    }

    pub fn tower(&self) -> &'t FieldTower {
        self.tower
    }

    pub fn same_tower(&self, tower: &FieldTower) -> bool {
        std::ptr::eq(self.tower, tower)
    }

    /// Binary operations use `y`; unary ones (`Neg`, `Inv`, `Pow`) ignore it but still
    /// require it to come from the same tower.
    pub fn arith(&self, y: &FieldElem<'t>, kind: ArithKind) -> Result<FieldElem<'t>> {
        if !std::ptr::eq(self.tower, y.tower) {
            return Err(Error::TowerMismatch);
        }
        let t = self.tower;
        let raw = match kind {
            ArithKind::Add => t.add(self.raw, y.raw),
            ArithKind::Sub => t.sub(self.raw, y.raw),
            ArithKind::Mul => t.mul(self.raw, y.raw),
            ArithKind::Div => t.div(self.raw, y.raw)?,
            ArithKind::Neg => t.neg(self.raw),
            ArithKind::Inv => t.inv(self.raw)?,
            ArithKind::Pow(e) => t.pow(self.raw, e),
        };
        Ok(FieldElem { tower: t, raw })
    }

    pub fn add(&self, y: &FieldElem<'t>) -> Result<FieldElem<'t>> {
        self.arith(y, ArithKind::Add)
    }

    pub fn sub(&self, y: &FieldElem<'t>) -> Result<FieldElem<'t>> {
        self.arith(y, ArithKind::Sub)
    }

    pub fn mul(&self, y: &FieldElem<'t>) -> Result<FieldElem<'t>> {
        self.arith(y, ArithKind::Mul)
    }

    pub fn div(&self, y: &FieldElem<'t>) -> Result<FieldElem<'t>> {
        self.arith(y, ArithKind::Div)
    }

    pub fn neg(&self) -> FieldElem<'t> {
        FieldElem { tower: self.tower, raw: self.tower.neg(self.raw) }
    }

    pub fn inv(&self) -> Result<FieldElem<'t>> {
        Ok(FieldElem { tower: self.tower, raw: self.tower.inv(self.raw)? })
    }

    pub fn pow(&self, e: i64) -> FieldElem<'t> {
        FieldElem { tower: self.tower, raw: self.tower.pow(self.raw, e) }
    }
}
