//! Dense row-major matrices over a tower level with Gaussian elimination.

use crate::gf::{Elem, FieldTower};

pub type Row = Vec<Elem>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(tower: &FieldTower, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(pr) = (top..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, pr);
        let inv = tower.inv(rows[top][col]).expect("pivot is nonzero");
        for x in rows[top].iter_mut() {
            *x = tower.mul(*x, inv);
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let f = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = tower.sub(*x, tower.mul(f, p));
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top.max(pivots.len()));
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    pivots
}

pub fn rank(tower: &FieldTower, rows: &[Row]) -> usize {
    let mut m = rows.to_vec();
    rref(tower, &mut m).len()
}

/// A basis of `{x : M x = 0}`, one vector per free column.
pub fn nullspace(tower: &FieldTower, rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = rows.to_vec();
    let pivots = rref(tower, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Elem::Zero; ncols];
        v[free] = Elem::ONE;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = tower.neg(row[free]);
        }
        out.push(v);
    }
    out
}

pub fn dot(tower: &FieldTower, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::Zero, |acc, (&x, &y)| tower.add(acc, tower.mul(x, y)))
}

/// `Σ coeffs[j] · rows[j]`.
pub fn combine(tower: &FieldTower, coeffs: &[Elem], rows: &[Row]) -> Row {
    let n = rows.first().map_or(0, |r| r.len());
    let mut out = vec![Elem::Zero; n];
    for (&c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = tower.add(*o, tower.mul(c, x));
        }
    }
    out
}

/// Whether `v` lies in the row space of `rows`.
pub fn in_span(tower: &FieldTower, rows: &[Row], v: &[Elem]) -> bool {
    let r = rank(tower, rows);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(tower, &ext) == r
}

pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|x| !x.is_zero()).count()
}
