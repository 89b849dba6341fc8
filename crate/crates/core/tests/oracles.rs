//! Independent recomputation of small cases. The field here is built from plain polynomial
//! tables, codes are defined by their zeros (parity checks) rather than by traces, and all
//! counts come from brute force.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigUint;

use constadesign::wdist::{self, macwilliams_dual, DEFAULT_BUDGET};
use constadesign::{ConstacyclicCode, Family, FieldTower};

/// `F_{p^deg}` with elements encoded as base-`p` digit strings of polynomial coefficients.
struct NaiveField {
    p: usize,
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

fn digits(x: usize, p: usize, deg: usize) -> Vec<usize> {
    (0..deg).scan(x, |r, _| {
        let d = *r % p;
        *r /= p;
        Some(d)
    })
    .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic `f`, coefficients low to high.
fn poly_rem(mut a: Vec<usize>, f: &[usize], p: usize) -> Vec<usize> {
    let df = f.len() - 1;
    while a.len() > df {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let off = a.len() - df;
            for i in 0..df {
                a[off + i] = (a[off + i] + (p - lead) * f[i]) % p;
            }
        }
    }
    a
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            let r = poly_rem(f.to_vec(), &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl NaiveField {
    fn new(p: usize, deg: usize) -> Self {
        let f = (0..p.pow(deg as u32))
            .map(|low| {
                let mut f = digits(low, p, deg);
                f.push(1);
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial exists");
        let size = p.pow(deg as u32);
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            let da = digits(a, p, deg);
            for b in 0..size {
                let db = digits(b, p, deg);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = undigits(&s, p) as u32;
                let mut m = poly_rem(poly_mul(&da, &db, p), &f, p);
                m.resize(deg, 0);
                mul[a * size + b] = undigits(&m, p) as u32;
            }
        }
        let neg = (0..size).map(|a| (0..size).find(|&b| add[a * size + b] == 0).unwrap() as u32).collect();
        let inv = (0..size)
            .map(|a| if a == 0 { 0 } else { (1..size).find(|&b| mul[a * size + b] == 1).unwrap() as u32 })
            .collect();
        NaiveField { p, size, add, mul, neg, inv }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    fn order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// Row reduction over a subfield of `f`; returns a basis of the right nullspace.
fn nullspace(f: &NaiveField, mut rows: Vec<Vec<u32>>, ncols: usize) -> Vec<Vec<u32>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, i);
        let s = f.inv[rows[r][c] as usize];
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, s);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = f.neg[rows[i][c] as usize];
                let pivot = rows[r].clone();
                for (x, &y) in rows[i].iter_mut().zip(&pivot) {
                    *x = f.add(*x, f.mul(m, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg[rows[i][fc] as usize];
            }
            v
        })
        .collect()
}

struct Oracle {
    field: NaiveField,
    /// `F_{q^2}` as a subset of the quartic field.
    sub: Vec<u32>,
    /// Generator rows of the code over `F_{q^2}`.
    basis: Vec<Vec<u32>>,
    n: usize,
}

/// The code of length `q^2 + 1` whose check polynomial has roots `δ^e`, `e ∈ {1, q^2, s, s q^2}`,
/// with `δ` any element of order `r(q^2 + 1)`.
fn oracle(p: usize, m: usize, r: u64, s: u64) -> Oracle {
    let field = NaiveField::new(p, 4 * m);
    let q = p.pow(m as u32) as u64;
    let (qq, n) = (q * q, (q * q + 1) as usize);
    let rn = r * n as u64;
    let delta = (2..field.size as u32).find(|&x| field.order(x) == rn).expect("an element of order rn");
    let sub: Vec<u32> = (0..field.size as u32).filter(|&x| field.pow(x, qq) == x).collect();
    assert_eq!(sub.len() as u64, qq);
    let gamma = (0..field.size as u32).find(|x| !sub.contains(x)).unwrap();
    let mut coords = BTreeMap::new();
    for &a in &sub {
        for &b in &sub {
            coords.insert(field.add(a, field.mul(b, gamma)), (a, b));
        }
    }
    let nonzeros: BTreeSet<u64> = [1, qq, s, s * qq].iter().map(|e| e % rn).collect();
    let zeros: Vec<u64> = (0..n as u64).map(|t| 1 + r * t).filter(|e| !nonzeros.contains(e)).collect();
    let mut rows = Vec::new();
    for &j in &zeros {
        let root = field.pow(delta, j);
        let (mut ra, mut rb) = (Vec::new(), Vec::new());
        for i in 0..n as u64 {
            let (a, b) = coords[&field.pow(root, i)];
            ra.push(a);
            rb.push(b);
        }
        rows.push(ra);
        rows.push(rb);
    }
    let basis = nullspace(&field, rows, n);
    Oracle { field, sub, basis, n }
}

impl Oracle {
    fn codewords(&self) -> Vec<Vec<u32>> {
        let k = self.basis.len();
        let qq = self.sub.len();
        (0..qq.pow(k as u32))
            .map(|idx| {
                let mut w = vec![0u32; self.n];
                for (i, row) in self.basis.iter().enumerate() {
                    let c = self.sub[(idx / qq.pow(i as u32)) % qq];
                    for (x, &g) in w.iter_mut().zip(row) {
                        *x = self.field.add(*x, self.field.mul(c, g));
                    }
                }
                w
            })
            .collect()
    }

    fn distribution(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for w in self.codewords() {
            counts[w.iter().filter(|&&x| x != 0).count()] += 1;
        }
        counts
    }

    /// Weight-4 words of the dual: for each 4-set of columns, full-support kernel vectors.
    fn dual_weight4(&self) -> u64 {
        let qq = self.sub.len();
        let mut total = 0;
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    for d in c + 1..self.n {
                        let cols = [a, b, c, d];
                        let rows: Vec<Vec<u32>> = self.basis.iter().map(|g| cols.iter().map(|&i| g[i]).collect()).collect();
                        let ker = nullspace(&self.field, rows, 4);
                        for idx in 0..qq.pow(ker.len() as u32) {
                            let mut v = [0u32; 4];
                            for (i, kv) in ker.iter().enumerate() {
                                let s = self.sub[(idx / qq.pow(i as u32)) % qq];
                                for (x, &y) in v.iter_mut().zip(kv) {
                                    *x = self.field.add(*x, self.field.mul(s, y));
                                }
                            }
                            if v.iter().all(|&x| x != 0) {
                                total += 1;
                            }
                        }
                    }
                }
            }
        }
        total
    }
}

fn counts_of(wd: &constadesign::WeightDistribution) -> Vec<u64> {
    wd.counts().iter().map(|c| u64::try_from(c.clone()).unwrap()).collect()
}

fn library_code(p: u64, m: u32, r: u64, family: Family) -> ConstacyclicCode {
    ConstacyclicCode::build(Arc::new(FieldTower::build(p, m).unwrap()), r, family).unwrap()
}

#[test]
fn naive_field_sanity() {
    let f = NaiveField::new(3, 4);
    assert_eq!(f.size, 81);
    assert_eq!(f.p, 3);
    assert!((1..81).all(|a| f.mul(a, f.inv[a as usize]) == 1));
    assert_eq!((1..81).filter(|&a| f.order(a) == 80).count(), 32);
}

#[test]
fn distributions_match_library() {
    for (p, m, r, family) in [(3usize, 1usize, 2u64, Family::B), (3, 1, 4, Family::A), (2, 2, 5, Family::A), (2, 2, 3, Family::B), (2, 1, 3, Family::A)] {
        let q = p.pow(m as u32) as u64;
        let o = oracle(p, m, r, family.exponent(q).unwrap());
        assert_eq!(o.basis.len(), 4);
        let naive = o.distribution();
        let code = library_code(p as u64, m as u32, r, family);
        let wd = wdist::weight_distribution_exhaustive(&code, DEFAULT_BUDGET).unwrap();
        assert_eq!(naive, counts_of(&wd), "q={q} {family} r={r}");
        if q > 2 {
            assert_eq!(naive, counts_of(&wdist::weight_distribution_analytic(q, family).unwrap()));
        }
    }
}

#[test]
fn dual_weight4_by_columns() {
    for (p, m, r, family, expect) in [(3usize, 1usize, 2u64, Family::B, 240u64), (3, 1, 4, Family::A, 240), (2, 2, 1, Family::A, 5100)] {
        let q = p.pow(m as u32) as u64;
        let o = oracle(p, m, r, family.exponent(q).unwrap());
        let a4 = o.dual_weight4();
        assert_eq!(a4, expect);
        let code = library_code(p as u64, m as u32, r, family);
        let dual = macwilliams_dual(&wdist::weight_distribution_exhaustive(&code, DEFAULT_BUDGET).unwrap());
        assert_eq!(dual.count(4), BigUint::from(a4));
    }
}

#[test]
fn q3_minimum_weight_supports_form_design() {
    let o = oracle(3, 1, 2, 7);
    let supports: BTreeSet<Vec<usize>> = o
        .codewords()
        .iter()
        .map(|w| (0..o.n).filter(|&i| w[i] != 0).collect::<Vec<_>>())
        .filter(|s| s.len() == 6)
        .collect();
    assert_eq!(supports.len(), 30);
    let mut per_triple = BTreeMap::new();
    for a in 0..o.n {
        for b in a + 1..o.n {
            for c in b + 1..o.n {
                let hits = supports.iter().filter(|s| [a, b, c].iter().all(|x| s.contains(x))).count();
                per_triple.insert((a, b, c), hits);
            }
        }
    }
    assert!(per_triple.values().all(|&h| h == 5));
}
