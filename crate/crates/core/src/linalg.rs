//! Dense and sparse exact matrices over a [`Field`], with the elimination
//! routines the spectral layer needs: reduced column echelon forms, rank,
//! solving against a column basis, Krylov minimal polynomials, and inverses.

use crate::exactfield::{Elem, Field};

/// A dense row-major matrix with exact entries.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    field: Field,
    a: Vec<Elem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.show(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field: field.clone(),
            a: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &Elem {
        &self.a[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.a[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| self.field.is_zero(x))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| f.add(x, y))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f.clone(),
            a,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| f.sub(x, y))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f.clone(),
            a,
        }
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f.clone(),
            a: self.a.iter().map(|x| f.neg(x)).collect(),
        }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: f.clone(),
            a: self.a.iter().map(|x| f.mul(c, x)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = self.field.clone();
        let mut out = Matrix::zeros(&f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.at(i, k);
                if f.is_zero(x) {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.at(k, j);
                    if !f.is_zero(y) {
                        let t = f.mul(x, y);
                        let cur = out.at(i, j);
                        out.set(i, j, f.add(cur, &t));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Index of the first power with A^k = 0, or None up to the bound.
    pub fn nilpotency_index(&self, bound: usize) -> Option<usize> {
        let mut acc = Matrix::identity(&self.field, self.rows);
        for k in 0..=bound {
            if acc.is_zero() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn from_columns(field: &Field, rows: usize, cols: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        reduced_column_echelon(self).pivots.len()
    }

    /// Gauss-Jordan inverse; panics if singular.
    pub fn inverse(&self) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(&f, n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !f.is_zero(m.at(r, col)))
                .expect("singular matrix");
            if piv != col {
                for c in 0..n {
                    let t1 = m.at(piv, c).clone();
                    let t2 = m.at(col, c).clone();
                    m.set(piv, c, t2);
                    m.set(col, c, t1);
                    let t1 = inv.at(piv, c).clone();
                    let t2 = inv.at(col, c).clone();
                    inv.set(piv, c, t2);
                    inv.set(col, c, t1);
                }
            }
            let s = f.inv(m.at(col, col)).unwrap();
            for c in 0..n {
                m.set(col, c, f.mul(&s, m.at(col, c)));
                inv.set(col, c, f.mul(&s, inv.at(col, c)));
            }
            for r in 0..n {
                if r != col && !f.is_zero(m.at(r, col)) {
                    let factor = m.at(r, col).clone();
                    for c in 0..n {
                        let t = f.mul(&factor, m.at(col, c));
                        let cur = f.sub(m.at(r, c), &t);
                        m.set(r, c, cur);
                        let t = f.mul(&factor, inv.at(col, c));
                        let cur = f.sub(inv.at(r, c), &t);
                        inv.set(r, c, cur);
                    }
                }
            }
        }
        inv
    }
}

/// A sparse matrix in column-major form: per column, the nonzero (row, value)
/// pairs sorted by row. Used for the regular representation of generators.
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    field: Field,
    pub columns: Vec<Vec<(usize, Elem)>>,
}

impl SparseMat {
    pub fn new(field: &Field, rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            field: field.clone(),
            columns: vec![vec![]; cols],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m.set(*r, c, v.clone());
            }
        }
        m
    }

    /// self * m for dense m.
    pub fn mul_dense(&self, m: &Matrix) -> Matrix {
        assert_eq!(self.cols, m.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, m.cols);
        for k in 0..self.cols {
            for (r, v) in &self.columns[k] {
                for j in 0..m.cols {
                    let y = m.at(k, j);
                    if !f.is_zero(y) {
                        let t = f.mul(v, y);
                        let cur = out.at(*r, j);
                        out.set(*r, j, f.add(cur, &t));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (r, a) in &self.columns[k] {
                let t = f.mul(a, x);
                out[*r] = f.add(&out[*r], &t);
            }
        }
        out
    }
}

/// Evaluates a polynomial (low-degree-first coefficients) in a sparse matrix,
/// applied to a dense right factor: p(A) * m, by Horner's rule.
pub fn apply_poly_sparse(poly: &[Elem], a: &SparseMat, m: &Matrix) -> Matrix {
    let f = a.field().clone();
    if poly.is_empty() {
        return Matrix::zeros(&f, a.rows, m.cols);
    }
    let mut acc = m.scale(&poly[poly.len() - 1]);
    for k in (0..poly.len() - 1).rev() {
        acc = a.mul_dense(&acc);
        if !f.is_zero(&poly[k]) {
            acc = acc.add(&m.scale(&poly[k]));
        }
    }
    acc
}

/// A reduced column echelon form: pivot rows carry a 1 in exactly one column
/// and 0 elsewhere, so coordinates w.r.t. the basis can be read off pivot rows.
pub struct Echelon {
    pub basis: Matrix,
    pub pivots: Vec<usize>,
}

/// Reduced column echelon form of the column space of m; canonical basis of
/// the image. Zero columns are dropped.
pub fn reduced_column_echelon(m: &Matrix) -> Echelon {
    let f = m.field().clone();
    let mut cols: Vec<Vec<Elem>> = (0..m.cols).map(|c| m.column(c)).collect();
    let mut pivots: Vec<usize> = vec![];
    let mut kept: Vec<Vec<Elem>> = vec![];
    for mut col in cols.drain(..) {
        // reduce against existing pivots
        for (k, &p) in pivots.iter().enumerate() {
            let c = col[p].clone();
            if !f.is_zero(&c) {
                for r in 0..col.len() {
                    let t = f.mul(&c, &kept[k][r]);
                    col[r] = f.sub(&col[r], &t);
                }
            }
        }
        if let Some(p) = col.iter().position(|x| !f.is_zero(x)) {
            let s = f.inv(&col[p]).unwrap();
            for x in col.iter_mut() {
                *x = f.mul(&s, x);
            }
            // clear the new pivot row from previous basis columns
            for k in 0..kept.len() {
                let c = kept[k][p].clone();
                if !f.is_zero(&c) {
                    for r in 0..col.len() {
                        let t = f.mul(&c, &col[r]);
                        kept[k][r] = f.sub(&kept[k][r], &t);
                    }
                }
            }
            pivots.push(p);
            kept.push(col);
        }
    }
    // sort columns by pivot row for a canonical order
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&k| pivots[k]);
    let basis_cols: Vec<Vec<Elem>> = order.iter().map(|&k| kept[k].clone()).collect();
    let pivots: Vec<usize> = order.iter().map(|&k| pivots[k]).collect();
    Echelon {
        basis: Matrix::from_columns(&f, m.rows, &basis_cols),
        pivots,
    }
}

/// Expresses each column of `m` in the column basis `b` (full column rank).
/// Returns None if some column lies outside the span.
pub fn solve_in_basis(b: &Matrix, m: &Matrix) -> Option<Matrix> {
    let f = b.field().clone();
    assert_eq!(b.rows, m.rows);
    // Eliminate [b | m] by rows.
    let mut work = b.hcat(m);
    let n = b.cols;
    let mut pivot_rows = vec![];
    let mut col = 0;
    let mut row_perm: Vec<usize> = (0..work.rows).collect();
    let mut r0 = 0;
    while col < n && r0 < work.rows {
        let piv = (r0..work.rows).find(|&r| !f.is_zero(work.at(row_perm[r], col)));
        {
            let p = piv?;
            row_perm.swap(r0, p);
            let prow = row_perm[r0];
            let s = f.inv(work.at(prow, col)).unwrap();
            for c in col..work.cols {
                let v = f.mul(&s, work.at(prow, c));
                work.set(prow, c, v);
            }
            for rr in 0..work.rows {
                let r = row_perm[rr];
                if r != prow && !f.is_zero(work.at(r, col)) {
                    let factor = work.at(r, col).clone();
                    for c in col..work.cols {
                        let t = f.mul(&factor, work.at(prow, c));
                        let cur = f.sub(work.at(r, c), &t);
                        work.set(r, c, cur);
                    }
                }
            }
            pivot_rows.push(prow);
            r0 += 1;
            col += 1;
        }
    }
    if col < n {
        return None;
    }
    // residual rows must vanish on the right block
    for rr in r0..work.rows {
        let r = row_perm[rr];
        for c in n..work.cols {
            if !f.is_zero(work.at(r, c)) {
                return None;
            }
        }
    }
    let mut x = Matrix::zeros(&f, n, m.cols);
    for (k, &pr) in pivot_rows.iter().enumerate() {
        for c in 0..m.cols {
            x.set(k, c, work.at(pr, n + c).clone());
        }
    }
    Some(x)
}

/// Monic minimal polynomial (low-degree-first) of the local action of `a` on
/// the Krylov space of `v0`, by incremental elimination with tracked
/// combinations.
pub fn krylov_min_poly(a: &SparseMat, v0: &[Elem]) -> Vec<Elem> {
    let f = a.field().clone();
    let n = v0.len();
    // rows: reduced vectors with pivot bookkeeping; combos track coefficients
    // in terms of the original Krylov vectors v0, A v0, A^2 v0, ...
    let mut reduced: Vec<(Vec<Elem>, Vec<Elem>, usize)> = vec![];
    let mut v = v0.to_vec();
    let mut step = 0usize;
    loop {
        let mut combo = vec![f.zero(); step + 1];
        combo[step] = f.one();
        let mut w = v.clone();
        for (rv, rc, piv) in &reduced {
            let c = w[*piv].clone();
            if !f.is_zero(&c) {
                for r in 0..n {
                    let t = f.mul(&c, &rv[r]);
                    w[r] = f.sub(&w[r], &t);
                }
                for (k, x) in rc.iter().enumerate() {
                    let t = f.mul(&c, x);
                    combo[k] = f.sub(&combo[k], &t);
                }
            }
        }
        match w.iter().position(|x| !f.is_zero(x)) {
            None => {
                // combo gives the monic relation sum combo_k A^k v0 = 0
                let lead = f.inv(&combo[step]).unwrap();
                return combo.iter().map(|c| f.mul(&lead, c)).collect();
            }
            Some(p) => {
                let s = f.inv(&w[p]).unwrap();
                let rv: Vec<Elem> = w.iter().map(|x| f.mul(&s, x)).collect();
                let mut rc: Vec<Elem> = combo.iter().map(|x| f.mul(&s, x)).collect();
                rc.resize(step + 1, f.zero());
                reduced.push((rv, rc, p));
                v = a.mul_vec(&v);
                step += 1;
                assert!(step <= n, "Krylov sequence failed to terminate");
            }
        }
    }
}

/// Minimal polynomial of a dense square matrix: lcm over basis vectors of the
/// local Krylov polynomials; stops once the degree certifies p(A) = 0.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Elem> {
    assert_eq!(m.rows, m.cols);
    let f = m.field().clone();
    let n = m.rows;
    let sp = dense_to_sparse(m);
    let mut mp: Vec<Elem> = vec![f.one()];
    for k in 0..n {
        let mut v = vec![f.zero(); n];
        v[k] = f.one();
        let local = krylov_min_poly(&sp, &v);
        mp = poly_lcm(&f, &mp, &local);
        let pm = apply_poly_sparse(&mp, &sp, &Matrix::identity(&f, n));
        if pm.is_zero() {
            return mp;
        }
    }
    mp
}

pub fn dense_to_sparse(m: &Matrix) -> SparseMat {
    let f = m.field().clone();
    let mut sp = SparseMat::new(&f, m.rows, m.cols);
    for c in 0..m.cols {
        for r in 0..m.rows {
            if !f.is_zero(m.at(r, c)) {
                sp.columns[c].push((r, m.at(r, c).clone()));
            }
        }
    }
    sp
}

pub fn poly_mul_field(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !f.is_zero(y) {
                let t = f.mul(x, y);
                out[i + j] = f.add(&out[i + j], &t);
            }
        }
    }
    out
}

pub fn poly_divmod_field(f: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let mut rem: Vec<Elem> = a.to_vec();
    trim_field(f, &mut rem);
    let mut bb = b.to_vec();
    trim_field(f, &mut bb);
    let db = bb.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let lead = f.inv(&bb[db]).unwrap();
    let mut quot = vec![f.zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = f.mul(&rem[k], &lead);
        if !f.is_zero(&c) {
            for j in 0..=db {
                let t = f.mul(&c, &bb[j]);
                rem[k - db + j] = f.sub(&rem[k - db + j], &t);
            }
        }
        quot[k - db] = c;
    }
    trim_field(f, &mut rem);
    trim_field(f, &mut quot);
    (quot, rem)
}

pub fn trim_field(f: &Field, v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
}

fn poly_gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim_field(f, &mut r0);
    trim_field(f, &mut r1);
    while !r1.is_empty() {
        let (_, rem) = poly_divmod_field(f, &r0, &r1);
        r0 = r1;
        r1 = rem;
    }
    if let Some(lead) = r0.last().cloned() {
        let s = f.inv(&lead).unwrap();
        for c in r0.iter_mut() {
            *c = f.mul(&s, c);
        }
    }
    r0
}

fn poly_lcm(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() {
        return b.to_vec();
    }
    if b.is_empty() {
        return a.to_vec();
    }
    let g = poly_gcd(f, a, b);
    let prod = poly_mul_field(f, a, b);
    let (quot, rem) = poly_divmod_field(f, &prod, &g);
    assert!(rem.is_empty());
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_field;

    fn mat(f: &Field, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f.from_i64(vals[r * cols + c]));
            }
        }
        m
    }

    #[test]
    fn mul_and_inverse() {
        let f = parse_field("Q,q=1").unwrap();
        let a = mat(&f, 2, 2, &[1, 2, 3, 4]);
        let inv = a.inverse();
        assert_eq!(a.mul(&inv), Matrix::identity(&f, 2));
        let b = mat(&f, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(b.pow(2), Matrix::identity(&f, 2));
    }

    #[test]
    fn echelon_and_rank() {
        let f = parse_field("Q,q=1").unwrap();
        let a = mat(&f, 3, 3, &[1, 2, 3, 2, 4, 6, 0, 0, 1]);
        assert_eq!(a.rank(), 2);
        let ech = reduced_column_echelon(&a);
        assert_eq!(ech.pivots.len(), 2);
        // pivot rows carry the identity pattern
        for (k, &p) in ech.pivots.iter().enumerate() {
            for c in 0..ech.basis.cols {
                let expect = if c == k { f.one() } else { f.zero() };
                assert_eq!(*ech.basis.at(p, c), expect);
            }
        }
    }

    #[test]
    fn solve_membership() {
        let f = parse_field("GF(7),q=1").unwrap();
        let b = mat(&f, 3, 2, &[1, 0, 0, 1, 2, 3]);
        let m = mat(&f, 3, 1, &[3, 4, 18 % 7]);
        let x = solve_in_basis(&b, &m).unwrap();
        assert_eq!(b.mul(&x), m);
        let outside = mat(&f, 3, 1, &[1, 0, 0]);
        assert!(solve_in_basis(&b, &outside).is_none());
    }

    #[test]
    fn krylov_minimal_polynomial() {
        let f = parse_field("Q,q=1").unwrap();
        // A = [[0,1],[1,0]]: minimal polynomial t^2 - 1
        let a = mat(&f, 2, 2, &[0, 1, 1, 0]);
        let mp = minimal_polynomial(&a);
        assert_eq!(mp, vec![f.from_i64(-1), f.zero(), f.one()]);
        // nilpotent Jordan block: t^2
        let n = mat(&f, 2, 2, &[0, 1, 0, 0]);
        assert_eq!(minimal_polynomial(&n), vec![f.zero(), f.zero(), f.one()]);
        assert_eq!(n.nilpotency_index(5), Some(2));
    }

    #[test]
    fn sparse_dense_agree() {
        let f = parse_field("GF(5),q=1").unwrap();
        let a = mat(&f, 3, 3, &[1, 0, 2, 0, 3, 0, 4, 0, 0]);
        let sp = dense_to_sparse(&a);
        assert_eq!(sp.to_dense(), a);
        let m = mat(&f, 3, 2, &[1, 2, 3, 4, 0, 1]);
        assert_eq!(sp.mul_dense(&m), a.mul(&m));
        // p(A) with p = t^2 + 1
        let p = vec![f.one(), f.zero(), f.one()];
        let want = a.mul(&a).add(&Matrix::identity(&f, 3));
        assert_eq!(apply_poly_sparse(&p, &sp, &Matrix::identity(&f, 3)), want);
    }
}
