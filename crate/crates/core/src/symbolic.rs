//! Truncated multivariate power series over a [`Field`] in variables
//! y_1..y_d, cut at a total-degree bound. Supports the symmetric-group
//! action on variables, divided differences, inversion, exact division by a
//! linear form y_s - y_r, and evaluation on commuting nilpotent matrices.
//!
//! Evaluation is exact whenever the truncation order is at least the sum of
//! (nilpotency index - 1) over the substituted matrices: every discarded
//! monomial evaluates to zero.

use std::collections::BTreeMap;

use crate::exactfield::{Elem, Field};
use crate::linalg::Matrix;
use crate::rootdata::Perm;

/// An exponent vector ordered by (total degree, lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    SizeMismatch,
    ZeroConstantTerm,
    NotDivisible,
    NonCommutingMatrices,
}

impl std::fmt::Display for SeriesError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesError::SizeMismatch => write!(f, "series shape mismatch"),
            SeriesError::ZeroConstantTerm => write!(f, "zero constant term"),
            SeriesError::NotDivisible => write!(f, "numerator not divisible by linear form"),
            SeriesError::NonCommutingMatrices => write!(f, "matrices do not commute"),
        }
    }
}

impl std::error::Error for SeriesError {}

/// A truncated power series: sparse coefficient map over exponent vectors of
/// total degree at most `trunc`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Series {
    field: Field,
    nvars: usize,
    trunc: usize,
    terms: BTreeMap<Mono, Elem>,
}

impl std::fmt::Debug for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = vec![];
        for (m, c) in &self.terms {
            let mut s = String::new();
            let cs = self.field.show(c);
            s.push_str(&cs);
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    s.push_str(&format!("*y{}", v + 1));
                    if e > 1 {
                        s.push_str(&format!("^{}", e));
                    }
                }
            }
            parts.push(s);
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} +O(deg {})", parts.join(" + "), self.trunc + 1)
    }
}

impl Series {
    pub fn zero(field: &Field, nvars: usize, trunc: usize) -> Self {
        Series {
            field: field.clone(),
            nvars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, trunc: usize, c: &Elem) -> Self {
        let mut s = Series::zero(field, nvars, trunc);
        if !field.is_zero(c) {
            s.terms.insert(Mono(vec![0; nvars]), c.clone());
        }
        s
    }

    pub fn one(field: &Field, nvars: usize, trunc: usize) -> Self {
        let one = field.one();
        Series::constant(field, nvars, trunc, &one)
    }

    /// The variable y_{r+1} (0-based r).
    pub fn var(field: &Field, nvars: usize, trunc: usize, r: usize) -> Self {
        assert!(r < nvars);
        let mut s = Series::zero(field, nvars, trunc);
        if trunc >= 1 {
            let mut e = vec![0u16; nvars];
            e[r] = 1;
            s.terms.insert(Mono(e), field.one());
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Elem {
        self.terms
            .get(&Mono(vec![0; self.nvars]))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn check_shape(&self, other: &Series) -> Result<(), SeriesError> {
        if self.nvars != other.nvars || self.trunc != other.trunc {
            return Err(SeriesError::SizeMismatch);
        }
        Ok(())
    }

    fn insert(&mut self, m: Mono, c: Elem) {
        if m.degree() <= self.trunc && !self.field.is_zero(&c) {
            self.terms.insert(m, c);
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        self.check_shape(other).unwrap();
        let f = &self.field;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let cur = out.terms.get(m).cloned().unwrap_or_else(|| f.zero());
            let v = f.add(&cur, c);
            if f.is_zero(&v) {
                out.terms.remove(m);
            } else {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn neg(&self) -> Series {
        let f = &self.field;
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = f.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Series {
        let f = &self.field;
        let mut out = Series::zero(f, self.nvars, self.trunc);
        for (m, x) in &self.terms {
            out.insert(m.clone(), f.mul(c, x));
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        self.check_shape(other).unwrap();
        let f = &self.field;
        let mut out = Series::zero(f, self.nvars, self.trunc);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if da + mb.degree() > self.trunc {
                    continue;
                }
                let m = Mono(
                    ma.0.iter()
                        .zip(&mb.0)
                        .map(|(x, y)| x + y)
                        .collect::<Vec<u16>>(),
                );
                let t = f.mul(ca, cb);
                let cur = out.terms.get(&m).cloned().unwrap_or_else(|| f.zero());
                let v = f.add(&cur, &t);
                if f.is_zero(&v) {
                    out.terms.remove(&m);
                } else {
                    out.terms.insert(m, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Series {
        let mut acc = Series::one(&self.field, self.nvars, self.trunc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The action ^w f: permutes variable indices by the place permutation w.
pub fn apply_permutation(w: &Perm, f: &Series) -> Series {
    assert_eq!(w.degree(), f.nvars(), "permutation size mismatch");
    let mut out = Series::zero(f.field(), f.nvars(), f.trunc());
    for (m, c) in &f.terms {
        // variable index v picks up the exponent from w^{-1}(v): exponent
        // vectors transform by the place permutation like sequences do.
        let e = w.act_on_sequence(&m.0);
        out.insert(Mono(e), c.clone());
    }
    out
}

/// The divided difference (^{s_r} f - f) / (y_r - y_{r+1}); exact and
/// degree-lowering (0-based r).
pub fn divided_difference(r: usize, f: &Series) -> Series {
    assert!(r + 1 < f.nvars());
    let sr = Perm::transposition(f.nvars(), r);
    let num = apply_permutation(&sr, f).sub(f);
    // (y_r - y_{r+1}) = -(y_{r+1} - y_r); divide_by_linear divides by the
    // latter, so flip the sign.
    divide_by_linear(&num, r, r + 1)
        .expect("divided difference numerator is always divisible")
        .neg()
}

/// Inverse of a series with invertible constant term, up to the truncation:
/// for f = c(1 - u) with u of positive order, 1/f = c^{-1} (1 + u + u^2 + ...).
pub fn invert_series(f: &Series) -> Result<Series, SeriesError> {
    let fd = f.field();
    let c = f.constant_term();
    if fd.is_zero(&c) {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let cinv = fd.inv(&c).unwrap();
    // u = 1 - f/c has positive order
    let u = Series::one(fd, f.nvars(), f.trunc()).sub(&f.scale(&cinv));
    let mut acc = Series::one(fd, f.nvars(), f.trunc());
    let mut upow = Series::one(fd, f.nvars(), f.trunc());
    for _ in 0..f.trunc() {
        upow = upow.mul(&u);
        if upow.is_zero() {
            break;
        }
        acc = acc.add(&upow);
    }
    Ok(acc.scale(&cinv))
}

/// Exact division by the linear form (y_s - y_r): returns h with
/// h * (y_s - y_r) = f. Errors unless f vanishes under y_s -> y_r.
pub fn divide_by_linear(f: &Series, r: usize, s: usize) -> Result<Series, SeriesError> {
    assert!(r < f.nvars() && s < f.nvars() && r != s);
    let fd = f.field().clone();
    // Substitution u = y_s - y_r, v = y_r (triangular change of variables):
    // rewrite f as a polynomial in y_s with series coefficients, divide
    // synthetically by (y_s - y_r) from the top coefficient down, and check
    // that the remainder (= f at y_s -> y_r) vanishes.
    let max_s = f
        .terms
        .keys()
        .map(|m| m.0[s] as usize)
        .max()
        .unwrap_or(0);
    // c[k] = coefficient of y_s^k, a series in the remaining variables
    let mut coeff: Vec<Series> = vec![Series::zero(&fd, f.nvars(), f.trunc()); max_s + 1];
    for (m, c) in &f.terms {
        let k = m.0[s] as usize;
        let mut e = m.0.clone();
        e[s] = 0;
        coeff[k].insert(Mono(e), c.clone());
    }
    let yr = Series::var(&fd, f.nvars(), f.trunc(), r);
    // f = (y_s - y_r) h + rem, h = sum h_k y_s^k
    let mut h: Vec<Series> = vec![Series::zero(&fd, f.nvars(), f.trunc()); max_s];
    let mut carry = Series::zero(&fd, f.nvars(), f.trunc());
    for k in (1..=max_s).rev() {
        let hk = coeff[k].add(&carry);
        carry = yr.mul(&hk);
        h[k - 1] = hk;
    }
    let rem = coeff[0].add(&carry);
    if !rem.is_zero() {
        return Err(SeriesError::NotDivisible);
    }
    let mut out = Series::zero(&fd, f.nvars(), f.trunc());
    let ys = Series::var(&fd, f.nvars(), f.trunc(), s);
    let mut yspow = Series::one(&fd, f.nvars(), f.trunc());
    for hk in h {
        out = out.add(&hk.mul(&yspow));
        yspow = yspow.mul(&ys);
    }
    Ok(out)
}

/// Evaluates f on commuting square matrices, one per variable. The caller is
/// responsible for a truncation order that certifies exactness.
pub fn evaluate_on_nilpotents(f: &Series, mats: &[Matrix]) -> Result<Matrix, SeriesError> {
    assert_eq!(mats.len(), f.nvars());
    let fd = f.field().clone();
    let n = if mats.is_empty() { 1 } else { mats[0].rows };
    for m in mats {
        assert_eq!(m.rows, n);
        assert_eq!(m.cols, n);
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutes_with(&mats[j]) {
                return Err(SeriesError::NonCommutingMatrices);
            }
        }
    }
    // memoized powers per variable
    let mut powers: Vec<Vec<Matrix>> = mats
        .iter()
        .map(|m| vec![Matrix::identity(&fd, n), m.clone()])
        .collect();
    let mut out = Matrix::zeros(&fd, n, n);
    for (mono, c) in &f.terms {
        let mut acc = Matrix::identity(&fd, n);
        let mut first = true;
        for (v, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[v].len() <= e as usize {
                let next = powers[v].last().unwrap().mul(&mats[v]);
                powers[v].push(next);
            }
            let p = &powers[v][e as usize];
            acc = if first { p.clone() } else { acc.mul(p) };
            first = false;
        }
        out = out.add(&acc.scale(c));
    }
    Ok(out)
}
