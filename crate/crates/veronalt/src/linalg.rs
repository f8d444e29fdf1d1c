//! Exact sparse elimination.
//!
//! `Eliminator` maintains a fully reduced echelon form of a growing set of
//! sparse integer rows, fraction-free with content stripping. Coefficients
//! stay in `i128` until a combination would overflow, then the row is
//! promoted to `BigInt`. `RatRref` is a small dense rational reduced echelon
//! form used for subspaces expressed in quotient coordinates.

use std::collections::HashMap;

use num::{BigInt, BigRational, One, Signed, Zero};

type Col = u32;

#[derive(Clone, Debug)]
pub enum Row {
    Small(Vec<(Col, i128)>),
    Big(Vec<(Col, BigInt)>),
}

impl Row {
    pub fn from_big(entries: Vec<(Col, BigInt)>) -> Row {
        let mut r = Row::Big(entries);
        r.normalize();
        r.demote();
        r
    }

    pub fn from_small(entries: Vec<(Col, i128)>) -> Row {
        let mut r = Row::Small(entries);
        r.normalize();
        r
    }

    fn len(&self) -> usize {
        match self {
            Row::Small(v) => v.len(),
            Row::Big(v) => v.len(),
        }
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn col(&self, i: usize) -> Col {
        match self {
            Row::Small(v) => v[i].0,
            Row::Big(v) => v[i].0,
        }
    }

    fn coeff_at(&self, c: Col) -> Option<BigInt> {
        match self {
            Row::Small(v) => v
                .binary_search_by_key(&c, |e| e.0)
                .ok()
                .map(|i| BigInt::from(v[i].1)),
            Row::Big(v) => v
                .binary_search_by_key(&c, |e| e.0)
                .ok()
                .map(|i| v[i].1.clone()),
        }
    }

    fn lead(&self) -> Option<Col> {
        if self.is_empty() {
            None
        } else {
            Some(self.col(0))
        }
    }

    fn to_big(&self) -> Vec<(Col, BigInt)> {
        match self {
            Row::Small(v) => v.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect(),
            Row::Big(v) => v.clone(),
        }
    }

    /// Strip integer content and make the leading coefficient positive.
    fn normalize(&mut self) {
        match self {
            Row::Small(v) => {
                v.retain(|e| e.1 != 0);
                if v.is_empty() {
                    return;
                }
                let mut g: i128 = 0;
                for (_, x) in v.iter() {
                    g = num::integer::gcd(g, x.abs());
                    if g == 1 {
                        break;
                    }
                }
                let sign = if v[0].1 < 0 { -1 } else { 1 };
                let div = g * sign;
                if div != 1 {
                    for (_, x) in v.iter_mut() {
                        *x /= div;
                    }
                }
            }
            Row::Big(v) => {
                v.retain(|e| !e.1.is_zero());
                if v.is_empty() {
                    return;
                }
                let mut g = BigInt::zero();
                for (_, x) in v.iter() {
                    g = num::integer::gcd(g, x.abs());
                    if g.is_one() {
                        break;
                    }
                }
                if v[0].1.is_negative() {
                    g = -g;
                }
                if !g.is_one() {
                    for (_, x) in v.iter_mut() {
                        *x = &*x / &g;
                    }
                }
            }
        }
    }

    /// Switch back to i128 storage when all coefficients fit.
    fn demote(&mut self) {
        if let Row::Big(v) = self {
            if v.iter().all(|(_, x)| i128::try_from(x.clone()).is_ok()) {
                let small = v
                    .iter()
                    .map(|(c, x)| (*c, i128::try_from(x.clone()).unwrap()))
                    .collect();
                *self = Row::Small(small);
            }
        }
    }

    /// `self * a - other * b`, merged by column; the shared leading column of
    /// `other` cancels exactly. Fraction-free with content stripping.
    fn combine(&self, other: &Row, col: Col) -> Row {
        let tc = self.coeff_at(col).expect("combine: column absent");
        let pl = other
            .coeff_at(other.lead().unwrap())
            .expect("combine: empty pivot row");
        debug_assert_eq!(other.lead(), Some(col));
        let g = num::integer::gcd(tc.abs(), pl.abs());
        let mult_self = &pl / &g;
        let mult_other = &tc / &g;

        if let (Row::Small(a), Row::Small(b)) = (self, other) {
            if let (Ok(ms), Ok(mo)) = (
                i128::try_from(mult_self.clone()),
                i128::try_from(mult_other.clone()),
            ) {
                if let Some(small) = combine_small(a, b, ms, mo, col) {
                    let mut r = Row::Small(small);
                    r.normalize();
                    return r;
                }
            }
        }
        let a = self.to_big();
        let b = other.to_big();
        let mut out: Vec<(Col, BigInt)> = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                    let v = va * &mult_self - vb * &mult_other;
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ca, va)), Some((cb, _))) if ca < cb => {
                    out.push((*ca, va * &mult_self));
                    i += 1;
                }
                (Some(_), Some((cb, vb))) => {
                    out.push((*cb, -(vb * &mult_other)));
                    j += 1;
                }
                (Some((ca, va)), None) => {
                    out.push((*ca, va * &mult_self));
                    i += 1;
                }
                (None, Some((cb, vb))) => {
                    out.push((*cb, -(vb * &mult_other)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let mut r = Row::Big(out);
        r.normalize();
        r.demote();
        r
    }
}

fn combine_small(
    a: &[(Col, i128)],
    b: &[(Col, i128)],
    ms: i128,
    mo: i128,
    _col: Col,
) -> Option<Vec<(Col, i128)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (ca, va.checked_mul(ms)?.checked_sub(vb.checked_mul(mo)?)?)
            }
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, va.checked_mul(ms)?)
            }
            (Some(_), Some(&(cb, vb))) => {
                j += 1;
                (cb, vb.checked_mul(mo)?.checked_neg()?)
            }
            (Some(&(ca, va)), None) => {
                i += 1;
                (ca, va.checked_mul(ms)?)
            }
            (None, Some(&(cb, vb))) => {
                j += 1;
                (cb, vb.checked_mul(mo)?.checked_neg()?)
            }
            (None, None) => unreachable!(),
        };
        if next.1 != 0 {
            out.push(next);
        }
    }
    Some(out)
}

/// Incremental echelon form over the integers: rows are forward-reduced on
/// insertion; the full back-substitution to reduced echelon form happens
/// once, in `finalize`.
pub struct Eliminator {
    ncols: usize,
    pivot_of_col: HashMap<Col, usize>,
    rows: Vec<Row>,
}

impl Eliminator {
    pub fn new(ncols: usize) -> Self {
        Eliminator {
            ncols,
            pivot_of_col: HashMap::new(),
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivot_of_col.len()
    }

    /// Reduce the row against the current pivots and, if it is independent,
    /// install it as a new pivot. Returns true when the rank grew.
    pub fn insert(&mut self, mut row: Row) -> bool {
        // Entries are scanned in increasing column order; eliminating a
        // pivot-column entry only introduces entries at larger columns.
        let mut i = 0;
        while i < row.len() {
            let c = row.col(i);
            if let Some(&ri) = self.pivot_of_col.get(&c) {
                row = row.combine(&self.rows[ri], c);
            } else {
                i += 1;
            }
        }
        if row.is_empty() {
            return false;
        }
        let c = row.lead().unwrap();
        debug_assert!((c as usize) < self.ncols);
        self.pivot_of_col.insert(c, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_big(&mut self, entries: Vec<(Col, BigInt)>) -> bool {
        self.insert(Row::from_big(entries))
    }

    pub fn pivot_cols(&self) -> Vec<Col> {
        let mut cols: Vec<Col> = self.pivot_of_col.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    pub fn finalize(mut self) -> Rref {
        let pivot_cols = self.pivot_cols();
        let pivot_set: std::collections::HashSet<Col> = pivot_cols.iter().copied().collect();
        let non_pivot_cols: Vec<Col> = (0..self.ncols as Col)
            .filter(|c| !pivot_set.contains(c))
            .collect();
        let nonpivot_index: HashMap<Col, usize> = non_pivot_cols
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i))
            .collect();
        // Back-substitution in decreasing pivot order: when a row is
        // processed, every pivot row with a larger pivot column is already
        // fully reduced, so one left-to-right sweep reduces it.
        for &c in pivot_cols.iter().rev() {
            let ri = self.pivot_of_col[&c];
            let mut row = std::mem::replace(&mut self.rows[ri], Row::Small(Vec::new()));
            let mut i = 1;
            while i < row.len() {
                let col = row.col(i);
                if let Some(&rj) = self.pivot_of_col.get(&col) {
                    row = row.combine(&self.rows[rj], col);
                } else {
                    i += 1;
                }
            }
            self.rows[ri] = row;
        }
        let mut reductions = HashMap::new();
        for &c in &pivot_cols {
            let row = &self.rows[self.pivot_of_col[&c]];
            let entries = row.to_big();
            let lead = entries[0].1.clone();
            debug_assert_eq!(entries[0].0, c);
            let expansion: Vec<(Col, BigRational)> = entries[1..]
                .iter()
                .map(|(col, v)| (*col, -BigRational::new(v.clone(), lead.clone())))
                .collect();
            reductions.insert(c, expansion);
        }
        Rref {
            ncols: self.ncols,
            pivot_cols,
            non_pivot_cols,
            reductions,
            nonpivot_index,
        }
    }
}

/// A finalized reduced echelon form: each pivot column carries its expansion
/// over the non-pivot columns, modulo the row space.
#[derive(Debug, Clone)]
pub struct Rref {
    pub ncols: usize,
    pub pivot_cols: Vec<Col>,
    pub non_pivot_cols: Vec<Col>,
    reductions: HashMap<Col, Vec<(Col, BigRational)>>,
    nonpivot_index: HashMap<Col, usize>,
}

impl Rref {
    pub fn from_parts(
        ncols: usize,
        pivot_cols: Vec<Col>,
        reductions: HashMap<Col, Vec<(Col, BigRational)>>,
    ) -> Rref {
        let pivot_set: std::collections::HashSet<Col> = pivot_cols.iter().copied().collect();
        let non_pivot_cols: Vec<Col> = (0..ncols as Col)
            .filter(|c| !pivot_set.contains(c))
            .collect();
        let nonpivot_index = non_pivot_cols
            .iter()
            .enumerate()
            .map(|(i, c)| (*c, i))
            .collect();
        Rref {
            ncols,
            pivot_cols,
            non_pivot_cols,
            reductions,
            nonpivot_index,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.non_pivot_cols.len()
    }

    pub fn nonpivot_index_of(&self, c: Col) -> Option<usize> {
        self.nonpivot_index.get(&c).copied()
    }

    /// Coordinates of a sparse vector modulo the row space, on the non-pivot
    /// columns.
    pub fn reduce(&self, entries: &[(Col, BigRational)]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.non_pivot_cols.len()];
        for (c, v) in entries {
            if let Some(expansion) = self.reductions.get(c) {
                for (j, r) in expansion {
                    out[self.nonpivot_index[j]] += v * r;
                }
            } else {
                out[self.nonpivot_index[c]] += v;
            }
        }
        out
    }

    /// The echelon basis rows of the row space, with unit pivot coefficients.
    pub fn basis_rows(&self) -> Vec<Vec<(Col, BigRational)>> {
        self.pivot_cols
            .iter()
            .map(|&c| {
                let mut row = vec![(c, BigRational::one())];
                for (j, r) in &self.reductions[&c] {
                    row.push((*j, -r.clone()));
                }
                row
            })
            .collect()
    }

    pub fn reduction_of(&self, pivot: Col) -> Option<&[(Col, BigRational)]> {
        self.reductions.get(&pivot).map(|v| v.as_slice())
    }
}

/// Dense reduced row echelon form over the rationals, for small dimensions.
#[derive(Debug, Clone)]
pub struct RatRref {
    dim: usize,
    // Sorted by pivot column; each row fully reduced with pivot coefficient 1.
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RatRref {
    pub fn new(dim: usize) -> Self {
        RatRref {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Residual of `v` modulo the row space.
    pub fn residual(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (wi, ri) in w.iter_mut().zip(row.iter()) {
                    *wi -= &f * ri;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.residual(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut w = self.residual(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = w[p].clone();
        for x in w.iter_mut() {
            *x /= &lead;
        }
        // Back-substitute into existing rows.
        for (_, row) in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (ri, wi) in row.iter_mut().zip(w.iter()) {
                    *ri -= &f * wi;
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, w));
        true
    }

    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// True when every basis vector of `other` lies in this span.
    pub fn contains_space(&self, other: &RatRref) -> bool {
        other.rows.iter().all(|(_, r)| self.contains(r))
    }
}

/// Kernel of the linear map sending basis vector `i` to `columns[i]`.
/// Returns a basis of the kernel in domain coordinates.
pub fn kernel(columns: &[Vec<BigRational>], codomain_dim: usize) -> Vec<Vec<BigRational>> {
    let k = columns.len();
    // Augmented rows [image | identity]; eliminate on the image part.
    let mut rows: Vec<Vec<BigRational>> = columns
        .iter()
        .enumerate()
        .map(|(i, img)| {
            assert_eq!(img.len(), codomain_dim);
            let mut r = img.clone();
            r.extend((0..k).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let mut kernel_vecs = Vec::new();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (col, row index)
    for i in 0..rows.len() {
        let mut row = rows[i].clone();
        for (pc, pr) in &pivot_rows {
            if !row[*pc].is_zero() {
                let f = row[*pc].clone();
                let prow = rows[*pr].clone();
                for (a, b) in row.iter_mut().zip(prow.iter()) {
                    *a -= &f * b;
                }
            }
        }
        match row[..codomain_dim].iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let lead = row[p].clone();
                for a in row.iter_mut() {
                    *a /= &lead;
                }
                rows[i] = row;
                pivot_rows.push((p, i));
            }
            None => {
                kernel_vecs.push(row[codomain_dim..].to_vec());
            }
        }
    }
    // Canonicalize the kernel basis.
    let mut rref = RatRref::new(k);
    for v in &kernel_vecs {
        rref.insert(v);
    }
    rref.basis()
}
