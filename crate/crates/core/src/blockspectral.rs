//! Spectral decomposition of H^Lambda_d: weight idempotents e(i) from
//! commuting generalized-eigenprojections, the block decomposition into
//! H^Lambda_alpha, and formal characters.
//!
//! Each e(i) is a product of single-variable projections, one polynomial in
//! each regular matrix x_r (resp. X_r). The block machinery refines the
//! regular module through those projections, keeping reduced column-echelon
//! bases of the images so that restricted generator matrices can be solved
//! column by column. Every inclusion used along the way is verified by an
//! exact residual check.

use std::collections::BTreeMap;

use crate::exactfield::{Elem, Field};
use crate::heckecore::HeckeAlgebra;
use crate::linalg::{
    apply_poly_sparse, krylov_min_poly, minimal_polynomial, poly_divmod_field, poly_mul_field,
    reduced_column_echelon, trim_field, Matrix, SparseMat,
};
use crate::rootdata::{DominantWeight, PositiveRoot, Quiver, residue_window};

/// Formal character: residue sequence -> dimension of the weight space.
pub type FormalCharacter = BTreeMap<Vec<i64>, usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectralError {
    /// The minimal polynomial of a polynomial generator has a root outside
    /// the expected spectrum I (resp. q^I).
    EigenvalueOutsideSpectrum { generator: usize },
    /// An internal consistency failure: a subspace was not invariant or a
    /// dimension count did not add up.
    Inconsistent(String),
}

impl std::fmt::Display for SpectralError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectralError::EigenvalueOutsideSpectrum { generator } => write!(
                f,
                "eigenvalue of polynomial generator {} outside the expected spectrum",
                generator + 1
            ),
            SpectralError::Inconsistent(s) => write!(f, "inconsistent decomposition: {}", s),
        }
    }
}

impl std::error::Error for SpectralError {}

/// One block H^Lambda_alpha with exact matrices of left multiplication
/// restricted to a chosen basis of the block.
pub struct Block {
    pub field: Field,
    pub quiver: Quiver,
    pub weight: DominantWeight,
    pub degenerate: bool,
    pub alpha: PositiveRoot,
    /// Residue sequences with nonzero weight space, in lexicographic order.
    pub seqs: Vec<Vec<i64>>,
    /// Dimension of each weight space, parallel to `seqs`.
    pub leaf_dims: Vec<usize>,
    pub dim: usize,
    pub d: usize,
    /// Basis of the block inside the regular module (columns grouped by
    /// weight space, in `seqs` order).
    pub basis: Matrix,
    /// Restricted matrices of x_1..x_d (resp. X_1..X_d).
    pub x_gen: Vec<Matrix>,
    /// Restricted matrices of s_1..s_{d-1} (resp. T_1..T_{d-1}).
    pub s_gen: Vec<Matrix>,
}

impl Block {
    /// Column range of the weight space of `seqs[k]` in the block basis.
    pub fn span_of(&self, k: usize) -> std::ops::Range<usize> {
        let start: usize = self.leaf_dims[..k].iter().sum();
        start..start + self.leaf_dims[k]
    }

    pub fn seq_index(&self, seq: &[i64]) -> Option<usize> {
        self.seqs.binary_search_by(|s| s.as_slice().cmp(seq)).ok()
    }

    /// The restricted idempotent e(i): the 0/1 diagonal indicator of the
    /// weight-space columns (weight spaces are coordinate blocks here).
    pub fn idempotent(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for c in self.span_of(k) {
            m.set(c, c, self.field.one());
        }
        m
    }

    /// Formal character of the block's regular module.
    pub fn character(&self) -> FormalCharacter {
        self.seqs
            .iter()
            .cloned()
            .zip(self.leaf_dims.iter().copied())
            .collect()
    }
}

/// Formal character of a module given the action matrices of the e(i).
pub fn character_of_action(seqs: &[Vec<i64>], idems: &[Matrix]) -> FormalCharacter {
    let mut ch = FormalCharacter::new();
    for (seq, m) in seqs.iter().zip(idems) {
        let r = m.rank();
        if r > 0 {
            ch.insert(seq.clone(), r);
        }
    }
    ch
}

/// The polynomial that projects onto the generalized lambda-eigenspace:
/// with mu = (t - lambda)^m * g and gcd(g, (t-lambda)) = 1, the projector is
/// g * (g^{-1} mod (t-lambda)^m), of degree < deg mu. Returns None when
/// lambda is not a root of mu.
pub fn projector_polynomial(f: &Field, minpoly: &[Elem], lambda: &Elem) -> Option<Vec<Elem>> {
    let lin = vec![f.neg(lambda), f.one()];
    let mut g = minpoly.to_vec();
    let mut m = 0usize;
    loop {
        let (quot, rem) = poly_divmod_field(f, &g, &lin);
        if rem.is_empty() {
            g = quot;
            m += 1;
        } else {
            break;
        }
    }
    if m == 0 {
        return None;
    }
    // Taylor coefficients of g at lambda, low order first, up to u^{m-1}.
    let mut shifted = vec![];
    let mut work = g.clone();
    for _ in 0..m {
        let (quot, rem) = poly_divmod_field(f, &work, &lin);
        shifted.push(if rem.is_empty() { f.zero() } else { rem[0].clone() });
        work = quot;
    }
    // invert the truncated series: h with g(lambda + u) h(u) = 1 mod u^m
    let g0inv = f.inv(&shifted[0]).expect("cofactor vanishes at eigenvalue");
    let mut h = vec![f.zero(); m];
    h[0] = g0inv.clone();
    for k in 1..m {
        let mut acc = f.zero();
        for j in 1..=k {
            let t = f.mul(&shifted[j], &h[k - j]);
            acc = f.add(&acc, &t);
        }
        h[k] = f.neg(&f.mul(&g0inv, &acc));
    }
    // back to powers of t: h(t - lambda), then multiply by g
    let mut ht = vec![f.zero()];
    let mut upow = vec![f.one()];
    for hk in &h {
        if !f.is_zero(hk) {
            let term: Vec<Elem> = upow.iter().map(|c| f.mul(hk, c)).collect();
            if ht.len() < term.len() {
                ht.resize(term.len(), f.zero());
            }
            for (i, c) in term.iter().enumerate() {
                ht[i] = f.add(&ht[i], c);
            }
        }
        upow = poly_mul_field(f, &upow, &lin);
    }
    let mut p = poly_mul_field(f, &g, &ht);
    trim_field(f, &mut p);
    Some(p)
}

/// Projection onto the generalized eigenspace of `a` for eigenvalue
/// `lambda`, as a polynomial in `a`. The zero matrix when lambda is not an
/// eigenvalue.
pub fn eigenprojection(a: &Matrix, lambda: &Elem) -> Matrix {
    let f = a.field().clone();
    let mp = minimal_polynomial(a);
    match projector_polynomial(&f, &mp, lambda) {
        None => Matrix::zeros(&f, a.rows, a.cols),
        Some(p) => {
            let sp = crate::linalg::dense_to_sparse(a);
            apply_poly_sparse(&p, &sp, &Matrix::identity(&f, a.rows))
        }
    }
}

/// Eigenvalue data of the polynomial generators on the regular module:
/// per r, the list of (residue, projector polynomial) over the residue
/// window, with the factorization checked to be complete.
pub struct SpectralData {
    pub mats: Vec<SparseMat>,
    pub s_mats: Vec<SparseMat>,
    /// per generator r: (residue, multiplicity, projector polynomial)
    pub spectra: Vec<Vec<(i64, usize, Vec<Elem>)>>,
}

pub fn spectral_data(h: &HeckeAlgebra) -> Result<SpectralData, SpectralError> {
    let f = h.field().clone();
    let d = h.d();
    let all = h.regular_matrices();
    let mats: Vec<SparseMat> = all[..d].to_vec();
    let s_mats: Vec<SparseMat> = all[d..].to_vec();
    let window = residue_window(h.quiver(), h.weight(), d);
    let mut spectra = vec![];
    for (r, a) in mats.iter().enumerate() {
        // The local minimal polynomial at the identity coordinate vector is
        // the minimal polynomial of the generator itself: the regular
        // representation sends p(x_r) to p(A_r) and p(A_r) e_1 lists the
        // coordinates of p(x_r).
        let mut v0 = vec![f.zero(); h.dim()];
        let one = h.one();
        for (idx, c) in &one.terms {
            v0[*idx as usize] = c.clone();
        }
        let mp = krylov_min_poly(a, &v0);
        // factor over the expected spectrum
        let mut rest = mp.clone();
        let mut evs = vec![];
        for &i in &window {
            let lambda = residue_eigenvalue(&f, i);
            let lin = vec![f.neg(&lambda), f.one()];
            let mut m = 0usize;
            loop {
                let (quot, rem) = poly_divmod_field(&f, &rest, &lin);
                if rem.is_empty() && !quot.is_empty() {
                    rest = quot;
                    m += 1;
                } else {
                    break;
                }
            }
            if m > 0 {
                let p = projector_polynomial(&f, &mp, &lambda)
                    .expect("multiplicity positive yet projector missing");
                evs.push((i, m, p));
            }
        }
        if rest.len() != 1 {
            return Err(SpectralError::EigenvalueOutsideSpectrum { generator: r });
        }
        spectra.push(evs);
    }
    Ok(SpectralData {
        mats,
        s_mats,
        spectra,
    })
}

fn residue_eigenvalue(f: &Field, i: i64) -> Elem {
    if f.is_degenerate() {
        f.from_i64(i)
    } else {
        f.q_pow(i)
    }
}

/// The nonzero weight idempotents e(i) as full matrices on the regular
/// module: products of the single-variable projections. Only sequences with
/// e(i) != 0 appear.
pub fn weight_idempotents(h: &HeckeAlgebra) -> Result<BTreeMap<Vec<i64>, Matrix>, SpectralError> {
    let data = spectral_data(h)?;
    let f = h.field().clone();
    let n = h.dim();
    let mut out = BTreeMap::new();
    // depth-first over prefixes, pruning zero products
    let mut stack: Vec<(Vec<i64>, Matrix)> = vec![(vec![], Matrix::identity(&f, n))];
    while let Some((prefix, prod)) = stack.pop() {
        let r = prefix.len();
        if r == h.d() {
            out.insert(prefix, prod);
            continue;
        }
        for (i, _, p) in data.spectra[r].iter().rev() {
            let next = apply_poly_sparse(p, &data.mats[r], &prod);
            if !next.is_zero() {
                let mut pre = prefix.clone();
                pre.push(*i);
                stack.push((pre, next));
            }
        }
    }
    Ok(out)
}

struct Leaf {
    seq: Vec<i64>,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Reduced column echelon form with the columns rescaled to primitive
/// integer vectors (over Q); pivot entries stay the only nonzeros in their
/// rows, but need not be 1 after rescaling.
fn normalized_echelon(m: &Matrix) -> (Matrix, Vec<usize>) {
    let f = m.field().clone();
    let ech = reduced_column_echelon(m);
    let mut cols: Vec<Vec<crate::exactfield::Elem>> =
        (0..ech.basis.cols).map(|c| ech.basis.column(c)).collect();
    for col in cols.iter_mut() {
        f.integer_normalize(col);
    }
    (
        Matrix::from_columns(&f, m.rows, &cols),
        ech.pivots,
    )
}

/// Coordinates of the columns of `m` in a column basis whose pivot rows each
/// meet exactly one column (a rescaled reduced echelon form): read off the
/// pivot rows, divide by the pivot entries, and certify by the exact
/// residual basis * coords == m. None when a column falls outside the span.
fn pivot_coords(basis: &Matrix, pivots: &[usize], m: &Matrix) -> Option<Matrix> {
    let f = basis.field().clone();
    let mut coords = Matrix::zeros(&f, basis.cols, m.cols);
    for (row_k, &p) in pivots.iter().enumerate() {
        let scale = f.inv(basis.at(p, row_k)).expect("pivot entry nonzero");
        for c in 0..m.cols {
            coords.set(row_k, c, f.mul(&scale, m.at(p, c)));
        }
    }
    if basis.mul(&coords) == *m {
        Some(coords)
    } else {
        None
    }
}

/// A polynomial that is 1 on the generalized eigenspace of residue `own`
/// and 0 on that of `other`, of the least degree the multiplicities allow;
/// its behaviour elsewhere does not matter for vectors already known to lie
/// in the sum of the two spaces.
fn pair_projector(
    f: &Field,
    spectrum: &[(i64, usize, Vec<Elem>)],
    own: i64,
    other: i64,
) -> Vec<Elem> {
    let mult = |i: i64| {
        spectrum
            .iter()
            .find(|(j, _, _)| *j == i)
            .map(|(_, m, _)| *m)
            .unwrap_or(1)
    };
    let lam = if f.is_degenerate() {
        f.from_i64(own)
    } else {
        f.q_pow(own)
    };
    let mu = if f.is_degenerate() {
        f.from_i64(other)
    } else {
        f.q_pow(other)
    };
    // (t - lam)^{m} (t - mu)^{m'}
    let mut pairpoly = vec![f.one()];
    for _ in 0..mult(own) {
        pairpoly = poly_mul_field(f, &pairpoly, &[f.neg(&lam), f.one()]);
    }
    for _ in 0..mult(other) {
        pairpoly = poly_mul_field(f, &pairpoly, &[f.neg(&mu), f.one()]);
    }
    projector_polynomial(f, &pairpoly, &lam).expect("own residue is a root by construction")
}

fn write_block(target: &mut Matrix, coords: &Matrix, row_offset: usize, col_offset: usize) {
    for c in 0..coords.cols {
        for r in 0..coords.rows {
            let v = coords.at(r, c);
            if !target.field().is_zero(v) {
                target.set(row_offset + r, col_offset + c, v.clone());
            }
        }
    }
}

/// Decomposes H^Lambda_d into blocks H^Lambda_alpha, keyed by alpha (as the
/// sorted residue multiset). All subspace memberships are certified exactly.
pub fn block_decomposition(h: &HeckeAlgebra) -> Result<BTreeMap<Vec<i64>, Block>, SpectralError> {
    let data = spectral_data(h)?;
    let f = h.field().clone();
    let n = h.dim();
    let d = h.d();

    // Refine the regular module through the commuting projections. Each
    // node keeps a normalized reduced-echelon basis; the action of x_{r+1}
    // is restricted to node-local coordinates (certified by pivot_coords)
    // and split there, so the heavy arithmetic happens on small matrices
    // with small entries.
    let mut leaves: Vec<Leaf> = vec![];
    let root = normalized_echelon(&Matrix::identity(&f, n));
    let mut stack: Vec<(Vec<i64>, Matrix, Vec<usize>)> = vec![(vec![], root.0, root.1)];
    while let Some((prefix, basis, pivots)) = stack.pop() {
        let r = prefix.len();
        if r == d {
            leaves.push(Leaf {
                seq: prefix,
                basis,
                pivots,
            });
            continue;
        }
        let k = basis.cols;
        let ambient_image = data.mats[r].mul_dense(&basis);
        let local = pivot_coords(&basis, &pivots, &ambient_image).ok_or_else(|| {
            SpectralError::Inconsistent(format!(
                "x_{} does not preserve a refinement subspace at {:?}",
                r + 1,
                prefix
            ))
        })?;
        let local_sp = crate::linalg::dense_to_sparse(&local);
        let degmax = data.spectra[r]
            .iter()
            .map(|(_, _, p)| p.len().saturating_sub(1))
            .max()
            .unwrap_or(0);
        let mut powers: Vec<Matrix> = vec![Matrix::identity(&f, k)];
        for j in 0..degmax {
            powers.push(local_sp.mul_dense(&powers[j]));
        }
        let mut child_total = 0;
        let mut children = vec![];
        for (i, _, p) in &data.spectra[r] {
            if child_total == k {
                break;
            }
            let mut image = Matrix::zeros(&f, k, k);
            for (j, c) in p.iter().enumerate() {
                if !f.is_zero(c) {
                    image = image.add(&powers[j].scale(c));
                }
            }
            let lech = reduced_column_echelon(&image);
            if !lech.pivots.is_empty() {
                child_total += lech.pivots.len();
                let global = normalized_echelon(&basis.mul(&lech.basis));
                children.push((*i, global));
            }
        }
        if child_total != k {
            return Err(SpectralError::Inconsistent(format!(
                "projections of x_{} split a {}-dim space into {}",
                r + 1,
                k,
                child_total
            )));
        }
        // push in reverse so sequences emerge in lexicographic order
        for (i, (gb, gp)) in children.into_iter().rev() {
            let mut pre = prefix.clone();
            pre.push(i);
            stack.push((pre, gb, gp));
        }
    }
    let total: usize = leaves.iter().map(|l| l.basis.cols).sum();
    if total != n {
        return Err(SpectralError::Inconsistent(format!(
            "weight spaces sum to {} of {}",
            total, n
        )));
    }

    // group leaves by alpha
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (k, leaf) in leaves.iter().enumerate() {
        let mut key = leaf.seq.clone();
        key.sort();
        groups.entry(key).or_default().push(k);
    }

    let mut blocks = BTreeMap::new();
    for (key, leaf_ids) in groups {
        let block = assemble_block(h, &data, &leaves, &leaf_ids)?;
        blocks.insert(key, block);
    }
    Ok(blocks)
}

fn assemble_block(
    h: &HeckeAlgebra,
    data: &SpectralData,
    leaves: &[Leaf],
    leaf_ids: &[usize],
) -> Result<Block, SpectralError> {
    let f = h.field().clone();
    let d = h.d();
    let seqs: Vec<Vec<i64>> = leaf_ids.iter().map(|&k| leaves[k].seq.clone()).collect();
    let leaf_dims: Vec<usize> = leaf_ids.iter().map(|&k| leaves[k].basis.cols).collect();
    let dim: usize = leaf_dims.iter().sum();
    let offsets: Vec<usize> = leaf_dims
        .iter()
        .scan(0, |acc, &k| {
            let o = *acc;
            *acc += k;
            Some(o)
        })
        .collect();

    let mut basis = Matrix::zeros(&f, h.dim(), dim);
    for (pos, &k) in leaf_ids.iter().enumerate() {
        let b = &leaves[k].basis;
        for c in 0..b.cols {
            for r in 0..b.rows {
                basis.set(r, offsets[pos] + c, b.at(r, c).clone());
            }
        }
    }

    // restricted polynomial generators: each weight space is invariant, and
    // coordinates read off the echelon pivot rows; the residual check makes
    // the invariance exact rather than assumed.
    let mut x_gen = vec![];
    for t in 0..d {
        let mut m = Matrix::zeros(&f, dim, dim);
        for (pos, &k) in leaf_ids.iter().enumerate() {
            let leaf = &leaves[k];
            let image = data.mats[t].mul_dense(&leaf.basis);
            let coords = pivot_coords(&leaf.basis, &leaf.pivots, &image).ok_or_else(|| {
                SpectralError::Inconsistent(format!(
                    "x_{} does not preserve the weight space of {:?}",
                    t + 1,
                    leaf.seq
                ))
            })?;
            write_block(&mut m, &coords, offsets[pos], offsets[pos]);
        }
        x_gen.push(m);
    }

    // restricted Coxeter/Hecke generators: s_r maps the weight space of i
    // into those of i and s_r . i (both inside this block). The two
    // components are separated by the single projector that distinguishes
    // the residues at position r, then read off the echelon pivots; the
    // residual checks certify the covariance exactly.
    let mut s_gen = vec![];
    for r in 0..d.saturating_sub(1) {
        let mut m = Matrix::zeros(&f, dim, dim);
        for (pos, &k) in leaf_ids.iter().enumerate() {
            let leaf = &leaves[k];
            let image = data.s_mats[r].mul_dense(&leaf.basis);
            let mut swapped = leaf.seq.clone();
            swapped.swap(r, r + 1);
            let covariance_failure = || {
                SpectralError::Inconsistent(format!(
                    "s_{} image of the weight space of {:?} leaves its covariant span",
                    r + 1,
                    leaf.seq
                ))
            };
            let target_pos = seqs.iter().position(|s| *s == swapped);
            match target_pos {
                // image stays inside this weight space (either i_r = i_{r+1}
                // or e(s_r . i) = 0); the residual check certifies it
                None => {
                    let coords = pivot_coords(&leaf.basis, &leaf.pivots, &image)
                        .ok_or_else(covariance_failure)?;
                    write_block(&mut m, &coords, offsets[pos], offsets[pos]);
                }
                Some(tp) if tp == pos => {
                    let coords = pivot_coords(&leaf.basis, &leaf.pivots, &image)
                        .ok_or_else(covariance_failure)?;
                    write_block(&mut m, &coords, offsets[pos], offsets[pos]);
                }
                Some(tp) => {
                    // split off the e(i)-component with the low-degree
                    // projector separating just the two residues at r
                    let proj = pair_projector(&f, &data.spectra[r], leaf.seq[r], swapped[r]);
                    let own = apply_poly_sparse(&proj, &data.mats[r], &image);
                    let other = image.sub(&own);
                    let coords = pivot_coords(&leaf.basis, &leaf.pivots, &own)
                        .ok_or_else(covariance_failure)?;
                    write_block(&mut m, &coords, offsets[pos], offsets[pos]);
                    let tleaf = &leaves[leaf_ids[tp]];
                    let coords = pivot_coords(&tleaf.basis, &tleaf.pivots, &other)
                        .ok_or_else(covariance_failure)?;
                    write_block(&mut m, &coords, offsets[tp], offsets[pos]);
                }
            }
        }
        s_gen.push(m);
    }

    let alpha = PositiveRoot::from_sequence(h.quiver(), seqs.first().map(|s| s.as_slice()).unwrap_or(&[]));
    Ok(Block {
        field: f,
        quiver: h.quiver(),
        weight: h.weight().clone(),
        degenerate: h.is_degenerate(),
        alpha,
        seqs,
        leaf_dims,
        dim,
        d,
        basis,
        x_gen,
        s_gen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::parse_field;
    use crate::heckecore::build_hecke;
    use crate::rootdata::DominantWeight;

    fn setup(spec: &str, charge: &[i64], d: usize) -> HeckeAlgebra {
        let f = parse_field(spec).unwrap();
        let w = DominantWeight::new(Quiver::new(f.quantum_char()), charge);
        build_hecke(&f, &w, d)
    }

    #[test]
    fn eigenprojection_basics() {
        let f = parse_field("Q,q=1").unwrap();
        let id = Matrix::identity(&f, 3);
        assert_eq!(eigenprojection(&id, &f.one()), id);
        assert_eq!(
            eigenprojection(&id, &f.zero()),
            Matrix::zeros(&f, 3, 3)
        );
        // nilpotent: projection onto eigenvalue 0 is the identity
        let mut n = Matrix::zeros(&f, 2, 2);
        n.set(0, 1, f.one());
        assert_eq!(eigenprojection(&n, &f.zero()), Matrix::identity(&f, 2));
        // order-2 matrix: (1 +- A)/2
        let mut a = Matrix::zeros(&f, 2, 2);
        a.set(0, 1, f.one());
        a.set(1, 0, f.one());
        let pp = eigenprojection(&a, &f.one());
        let pm = eigenprojection(&a, &f.from_i64(-1));
        let half = f.from_i64(2);
        let want_p = Matrix::identity(&f, 2).add(&a).scale(&f.inv(&half).unwrap());
        let want_m = Matrix::identity(&f, 2).sub(&a).scale(&f.inv(&half).unwrap());
        assert_eq!(pp, want_p);
        assert_eq!(pm, want_m);
        assert_eq!(pp.mul(&pp), pp);
        assert_eq!(pp.mul(&pm), Matrix::zeros(&f, 2, 2));
        assert_eq!(pp.add(&pm), Matrix::identity(&f, 2));
        assert!(pp.commutes_with(&a));
    }

    #[test]
    fn idempotents_for_fs2() {
        // FS_2 over Q, Lambda_0: e(0,1) = (1+s_1)/2, e(0,-1) = (1-s_1)/2
        let h = setup("Q,q=1", &[0], 2);
        let f = h.field().clone();
        let idems = weight_idempotents(&h).unwrap();
        assert_eq!(idems.len(), 2);
        let s1 = h.regular_matrices()[2].to_dense();
        let two_inv = f.inv(&f.from_i64(2)).unwrap();
        let want_01 = Matrix::identity(&f, 2).add(&s1).scale(&two_inv);
        let want_0m1 = Matrix::identity(&f, 2).sub(&s1).scale(&two_inv);
        assert_eq!(idems[&vec![0, 1]], want_01);
        assert_eq!(idems[&vec![0, -1]], want_0m1);
        // completeness and orthogonality
        let sum = want_01.add(&want_0m1);
        assert_eq!(sum, Matrix::identity(&f, 2));
        assert!(want_01.mul(&want_0m1).is_zero());
    }

    #[test]
    fn idempotents_nilpotent_case() {
        // H^{2 Lambda_0}_1 over Q: single sequence (0), e(0) = identity
        let h = setup("Q,q=1", &[0, 0], 1);
        let idems = weight_idempotents(&h).unwrap();
        assert_eq!(idems.len(), 1);
        assert_eq!(idems[&vec![0]], Matrix::identity(h.field(), 2));
    }

    #[test]
    fn idempotent_sum_is_identity() {
        for (spec, charge, d) in [
            ("Q,q=1", vec![0i64], 3),
            ("Q,q=2", vec![0], 3),
            ("GF(2),q=1", vec![0], 2),
            ("Q,q=-1", vec![0, 1], 2),
        ] {
            let h = setup(spec, &charge, d);
            let f = h.field().clone();
            let idems = weight_idempotents(&h).unwrap();
            let mut sum = Matrix::zeros(&f, h.dim(), h.dim());
            for (_, m) in &idems {
                assert_eq!(m.mul(m), *m, "idempotence");
                sum = sum.add(m);
            }
            assert_eq!(sum, Matrix::identity(&f, h.dim()));
            // pairwise orthogonality
            let mats: Vec<&Matrix> = idems.values().collect();
            for i in 0..mats.len() {
                for j in 0..mats.len() {
                    if i != j {
                        assert!(mats[i].mul(mats[j]).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn fs3_block_dimensions() {
        // FS_3 over Q: three blocks of dimensions 1, 4, 1. Oracle: the group
        // algebra is semisimple, so each block dimension is the sum of
        // (number of standard tableaux)^2 over the partitions of its weight.
        let h = setup("Q,q=1", &[0], 3);
        let blocks = block_decomposition(&h).unwrap();
        let mut dims: Vec<usize> = blocks.values().map(|b| b.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 4]);
        let quiver = Quiver::new(0);
        let mut expected: std::collections::BTreeMap<Vec<i64>, usize> = Default::default();
        for lam in crate::rootdata::Partition::all(3) {
            let (alpha, _) = crate::rootdata::residue_data(&lam, quiver, 0);
            let f = lam.hook_length_count() as usize;
            *expected.entry(alpha.as_multiset()).or_insert(0) += f * f;
        }
        let got: std::collections::BTreeMap<Vec<i64>, usize> = blocks
            .iter()
            .map(|(k, b)| (k.clone(), b.dim))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn gf2_single_block() {
        // FS_2 over GF(2): the contents 0,1 and 0,-1 agree mod 2, so both
        // tableaux give the residue sequence (0,1) and there is one block of
        // dimension 2 with weight alpha_0 + alpha_1.
        let h = setup("GF(2),q=1", &[0], 2);
        let blocks = block_decomposition(&h).unwrap();
        assert_eq!(blocks.len(), 1);
        let b = blocks.values().next().unwrap();
        assert_eq!(b.dim, 2);
        assert_eq!(b.seqs, vec![vec![0, 1]]);
        assert_eq!(b.leaf_dims, vec![2]);
    }

    #[test]
    fn level2_whole_algebra_block() {
        // H^{2 Lambda_0}_1 over Q: one block, dimension 2
        let h = setup("Q,q=1", &[0, 0], 1);
        let blocks = block_decomposition(&h).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks.values().next().unwrap().dim, 2);
    }

    #[test]
    fn block_generators_satisfy_relations() {
        for spec in ["Q,q=1", "Q,q=-1", "GF(3),q=1"] {
            let h = setup(spec, &[0], 3);
            let f = h.field().clone();
            let blocks = block_decomposition(&h).unwrap();
            for b in blocks.values() {
                let id = Matrix::identity(&f, b.dim);
                for r in 0..b.s_gen.len() {
                    if h.is_degenerate() {
                        assert_eq!(b.s_gen[r].mul(&b.s_gen[r]), id);
                    } else {
                        let q = f.q();
                        let want = b.s_gen[r]
                            .scale(&f.sub(q, &f.one()))
                            .add(&id.scale(q));
                        assert_eq!(b.s_gen[r].mul(&b.s_gen[r]), want);
                    }
                }
                for a in &b.x_gen {
                    for c in &b.x_gen {
                        assert!(a.commutes_with(c));
                    }
                }
            }
        }
    }

    #[test]
    fn characters_and_block_consistency() {
        let h = setup("Q,q=1", &[0], 3);
        let blocks = block_decomposition(&h).unwrap();
        // the lambda = (2,1) block has character (0,1,-1) + (0,-1,1)
        let key = vec![-1, 0, 1];
        let b = &blocks[&key];
        let ch = b.character();
        assert_eq!(ch[&vec![0, 1, -1]], 2);
        assert_eq!(ch[&vec![0, -1, 1]], 2);
        // weight idempotent ranks match leaf dimensions
        let idems = weight_idempotents(&h).unwrap();
        for (k, seq) in b.seqs.iter().enumerate() {
            assert_eq!(idems[seq].rank(), b.leaf_dims[k]);
        }
    }
}
