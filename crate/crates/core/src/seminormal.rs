//! Specht modules S(lambda) for level one at quantum characteristic 0, built
//! directly from the explicit action of the KLR generators on standard
//! tableaux, together with the reconstructed semi-normal matrices of the
//! Coxeter/Hecke generators and an independent classical oracle (Young's
//! formulas for q = 1, Hoefsmit's for q != 1) to compare against.
//!
//! Semi-normal forms are canonical only up to diagonal rescaling of the
//! basis, so the comparison uses scale-invariant data: diagonal entries and
//! products of opposite off-diagonal entries.

use crate::exactfield::{Elem, Field};
use crate::klriso::{hecke_from_klr, KlrAction, QChoice};
use crate::linalg::Matrix;
use crate::rootdata::{DominantWeight, Partition, Quiver, standard_tableaux, Tableau};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpechtError {
    /// The construction needs quantum characteristic 0.
    NonzeroQuantumCharacteristic(u32),
}

impl std::fmt::Display for SpechtError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpechtError::NonzeroQuantumCharacteristic(e) => {
                write!(f, "Specht construction needs e = 0, got e = {}", e)
            }
        }
    }
}

impl std::error::Error for SpechtError {}

/// The Specht module on the standard tableaux of one shape, with the KLR
/// action packaged for the shared verifier. Basis in last-letter order.
pub struct SpechtModule {
    pub shape: Partition,
    pub tableaux: Vec<Tableau>,
    /// residue sequence of each basis tableau
    pub tableau_seqs: Vec<Vec<i64>>,
    pub action: KlrAction,
}

/// Builds S(lambda) over the given field (which must have e = 0): e(i) picks
/// out the tableaux with residue sequence i, every y_r acts as zero, and
/// psi_r sends v_T to v_{s_r T} when that tableau is standard.
pub fn specht_module(
    shape: &Partition,
    field: &Field,
    choice: QChoice,
) -> Result<SpechtModule, SpechtError> {
    if field.quantum_char() != 0 {
        return Err(SpechtError::NonzeroQuantumCharacteristic(field.quantum_char()));
    }
    let quiver = Quiver::new(0);
    let weight = DominantWeight::new(quiver, &[0]);
    let d = shape.size();
    let tableaux = standard_tableaux(shape);
    let n = tableaux.len();
    let tableau_seqs: Vec<Vec<i64>> = tableaux
        .iter()
        .map(|t| t.residue_sequence(quiver, 0))
        .collect();
    // at e = 0 in level one the residue sequence determines the tableau, so
    // the distinct sequences match the basis one to one
    let mut seqs: Vec<Vec<i64>> = tableau_seqs.clone();
    seqs.sort();
    seqs.dedup();
    assert_eq!(seqs.len(), n, "residue sequences must separate tableaux");

    let idem: Vec<Matrix> = seqs
        .iter()
        .map(|seq| {
            let mut m = Matrix::zeros(field, n, n);
            for (t, ts) in tableau_seqs.iter().enumerate() {
                if ts == seq {
                    m.set(t, t, field.one());
                }
            }
            m
        })
        .collect();
    let y: Vec<Matrix> = (0..d).map(|_| Matrix::zeros(field, n, n)).collect();
    let psi: Vec<Matrix> = (0..d.saturating_sub(1))
        .map(|r| {
            let mut m = Matrix::zeros(field, n, n);
            for (t, tab) in tableaux.iter().enumerate() {
                if let Some(moved) = tab.apply_transposition(r) {
                    let target = tableaux.iter().position(|u| *u == moved).unwrap();
                    m.set(target, t, field.one());
                }
            }
            m
        })
        .collect();
    let action = KlrAction::from_parts(field, quiver, &weight, seqs, idem, y, psi, choice);
    Ok(SpechtModule {
        shape: shape.clone(),
        tableaux,
        tableau_seqs,
        action,
    })
}

/// The reconstructed matrices of s_1..s_{d-1} (resp. T_1..T_{d-1}) on the
/// Specht module: the inverse map evaluated at y = 0.
pub fn seminormal_action(module: &SpechtModule) -> Vec<Matrix> {
    hecke_from_klr(&module.action).1
}

/// Axial distance data for the classical formulas: the content of the box of
/// value r+2 minus the content of the box of value r+1.
fn axial(tab: &Tableau, r: usize) -> i64 {
    let (r1, c1) = tab.position(r + 1);
    let (r2, c2) = tab.position(r + 2);
    (c2 as i64 - r2 as i64) - (c1 as i64 - r1 as i64)
}

/// Classical semi-normal matrices in the same tableau order: Young's form
/// for q = 1, Hoefsmit's for q != 1. Independent of the KLR construction.
pub fn classical_oracle(shape: &Partition, field: &Field) -> Result<Vec<Matrix>, SpechtError> {
    if field.quantum_char() != 0 {
        return Err(SpechtError::NonzeroQuantumCharacteristic(field.quantum_char()));
    }
    let tableaux = standard_tableaux(shape);
    let n = tableaux.len();
    let d = shape.size();
    let degenerate = field.is_degenerate();
    let q = field.q().clone();
    let diag_entry = |rho: i64| -> Elem {
        if degenerate {
            field.inv(&field.from_i64(rho)).unwrap()
        } else {
            // (q - 1) / (1 - q^{-rho})
            let num = field.sub(&q, &field.one());
            let den = field.sub(&field.one(), &field.q_pow(-rho));
            field.div(&num, &den)
        }
    };
    let off_product = |rho: i64| -> Elem {
        if degenerate {
            // 1 - 1/rho^2
            let r2 = field.from_i64(rho * rho);
            field.sub(&field.one(), &field.inv(&r2).unwrap())
        } else {
            // (1 - q^{1+rho})(1 - q^{1-rho}) / ((1 - q^rho)(1 - q^{-rho}))
            let num = field.mul(
                &field.sub(&field.one(), &field.q_pow(1 + rho)),
                &field.sub(&field.one(), &field.q_pow(1 - rho)),
            );
            let den = field.mul(
                &field.sub(&field.one(), &field.q_pow(rho)),
                &field.sub(&field.one(), &field.q_pow(-rho)),
            );
            field.div(&num, &den)
        }
    };
    let mut out = vec![];
    for r in 0..d.saturating_sub(1) {
        let mut m = Matrix::zeros(field, n, n);
        for (t, tab) in tableaux.iter().enumerate() {
            let rho = axial(tab, r);
            m.set(t, t, diag_entry(rho));
            if let Some(moved) = tab.apply_transposition(r) {
                let target = tableaux.iter().position(|u| *u == moved).unwrap();
                // split the off-diagonal product so the later tableau gets 1
                let b = if target > t {
                    off_product(rho)
                } else {
                    field.one()
                };
                m.set(target, t, b);
            }
        }
        out.push(m);
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct SpechtReport {
    pub dimension: usize,
    pub klr_relations_ok: bool,
    pub coxeter_ok: bool,
    pub oracle_diagonals_ok: bool,
    pub oracle_off_products_ok: bool,
    pub surjects_onto_matrix_algebra: bool,
    pub character_ok: bool,
}

impl SpechtReport {
    pub fn all_passed(&self) -> bool {
        self.klr_relations_ok
            && self.coxeter_ok
            && self.oracle_diagonals_ok
            && self.oracle_off_products_ok
            && self.surjects_onto_matrix_algebra
            && self.character_ok
    }
}

/// Full verification of one Specht module: the KLR relations hold, the
/// reconstructed generators satisfy the Coxeter (resp. Hecke) relations,
/// the scale-invariant comparison against the classical oracle passes, the
/// action generates the full matrix algebra, and the formal character is
/// the sum over standard tableaux of their residue sequences.
pub fn verify_specht(
    shape: &Partition,
    field: &Field,
    choice: QChoice,
) -> Result<SpechtReport, SpechtError> {
    let module = specht_module(shape, field, choice)?;
    let a = &module.action;
    let n = module.tableaux.len();
    let mut report = SpechtReport {
        dimension: n,
        ..Default::default()
    };

    report.klr_relations_ok = crate::klriso::verify_klr_relations(a).all_passed();

    let sgens = seminormal_action(&module);
    let id = Matrix::identity(field, n);
    let mut cox = true;
    for s in &sgens {
        if field.is_degenerate() {
            cox &= s.mul(s) == id;
        } else {
            let q = field.q();
            let want = s.scale(&field.sub(q, &field.one())).add(&id.scale(q));
            cox &= s.mul(s) == want;
        }
    }
    for r in 0..sgens.len().saturating_sub(1) {
        cox &= sgens[r].mul(&sgens[r + 1]).mul(&sgens[r])
            == sgens[r + 1].mul(&sgens[r]).mul(&sgens[r + 1]);
    }
    for r in 0..sgens.len() {
        for s in r + 2..sgens.len() {
            cox &= sgens[r].commutes_with(&sgens[s]);
        }
    }
    report.coxeter_ok = cox;

    let oracle = classical_oracle(shape, field)?;
    let mut diag_ok = true;
    let mut off_ok = true;
    for (r, (mine, theirs)) in sgens.iter().zip(&oracle).enumerate() {
        for t in 0..n {
            if mine.at(t, t) != theirs.at(t, t) {
                diag_ok = false;
            }
            if let Some(moved) = module.tableaux[t].apply_transposition(r) {
                let u = module.tableaux.iter().position(|x| *x == moved).unwrap();
                let p1 = field.mul(mine.at(t, u), mine.at(u, t));
                let p2 = field.mul(theirs.at(t, u), theirs.at(u, t));
                if p1 != p2 {
                    off_ok = false;
                }
            }
        }
    }
    report.oracle_diagonals_ok = diag_ok;
    report.oracle_off_products_ok = off_ok;

    report.surjects_onto_matrix_algebra = generated_algebra_rank(field, a) == n * n;

    // ch S(lambda) = sum over standard tableaux of i^T, each weight space of
    // dimension one here
    let ch = crate::blockspectral::character_of_action(&a.seqs, &a.idem);
    let mut want = std::collections::BTreeMap::new();
    for seq in &module.tableau_seqs {
        *want.entry(seq.clone()).or_insert(0usize) += 1;
    }
    report.character_ok = ch == want;
    Ok(report)
}

/// Dimension of the unital algebra generated by the action matrices, by
/// closing the linear span under multiplication.
fn generated_algebra_rank(field: &Field, a: &KlrAction) -> usize {
    let n = a.dim;
    let mut gens: Vec<Matrix> = vec![Matrix::identity(field, n)];
    gens.extend(a.idem.iter().cloned());
    gens.extend(a.y.iter().cloned());
    gens.extend(a.psi.iter().cloned());
    let flat = |m: &Matrix| -> Vec<Elem> {
        (0..n * n).map(|k| m.at(k / n, k % n).clone()).collect()
    };
    // incremental row reduction with the matrices that realized new ranks
    let mut reduced: Vec<(Vec<Elem>, usize)> = vec![];
    let mut span: Vec<Matrix> = vec![];
    let try_insert = |m: &Matrix, reduced: &mut Vec<(Vec<Elem>, usize)>, span: &mut Vec<Matrix>| -> bool {
        let mut v = flat(m);
        for (rv, piv) in reduced.iter() {
            let c = v[*piv].clone();
            if !field.is_zero(&c) {
                for t in 0..v.len() {
                    let x = field.mul(&c, &rv[t]);
                    v[t] = field.sub(&v[t], &x);
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !field.is_zero(x)) {
            let s = field.inv(&v[p]).unwrap();
            let rv: Vec<Elem> = v.iter().map(|x| field.mul(&s, x)).collect();
            reduced.push((rv, p));
            span.push(m.clone());
            true
        } else {
            false
        }
    };
    for g in &gens {
        try_insert(g, &mut reduced, &mut span);
    }
    loop {
        let mut grew = false;
        let current: Vec<Matrix> = span.clone();
        for a in &current {
            for g in &gens {
                if span.len() == n * n {
                    return n * n;
                }
                let prod = g.mul(a);
                grew |= try_insert(&prod, &mut reduced, &mut span);
            }
        }
        if !grew {
            return span.len();
        }
    }
}
