//! The cyclotomic Hecke algebra H^Lambda_d on its monomial basis
//! { x_1^{m_1} ... x_d^{m_d} w : 0 <= m_r < l, w in S_d }, with normal-form
//! rewriting for products and exact regular-representation matrices.
//!
//! The degenerate case (q = 1) uses the polynomial generators x_r and the
//! Coxeter generators s_r; the non-degenerate case uses X_r and T_r. Both
//! share one rewriting engine: a generator acting on a basis monomial either
//! shifts an exponent, commutes past the polynomial part picking up a
//! correction of no higher degree, or hits the exponent ceiling l and is
//! resolved through the recursion x_{t+1} = s_t x_t s_t + s_t (respectively
//! X_{t+1} = q^{-1} T_t X_t T_t), which bottoms out at the cyclotomic
//! relation for x_1. The recursion only ever moves to strictly smaller
//! generator indices, so it terminates.

use std::collections::{BTreeMap, HashMap};

use crate::exactfield::{Elem, Field};
use crate::linalg::SparseMat;
use crate::rootdata::{DominantWeight, Perm, PermTable, Quiver};

/// An element in normal form: a sparse coordinate vector over the monomial
/// basis, indexed by `expo_rank * d! + perm_rank`.
#[derive(Clone, PartialEq, Debug)]
pub struct Element {
    pub terms: BTreeMap<u32, Elem>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, field: &Field, idx: u32, c: &Elem) {
        if field.is_zero(c) {
            return;
        }
        let cur = self.terms.get(&idx).cloned().unwrap_or_else(|| field.zero());
        let v = field.add(&cur, c);
        if field.is_zero(&v) {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, v);
        }
    }
}

/// A formal word in the generators, for [`HeckeAlgebra::normal_form`].
#[derive(Clone, Debug)]
pub enum Gen {
    /// x_{t+1} (degenerate) or X_{t+1} (non-degenerate), 0-based t.
    X(usize),
    /// X_{t+1}^{-1}; only available when q != 1.
    XInv(usize),
    /// s_{r+1} or T_{r+1}, 0-based r.
    S(usize),
}

pub struct HeckeAlgebra {
    field: Field,
    degenerate: bool,
    quiver: Quiver,
    weight: DominantWeight,
    d: usize,
    level: usize,
    perms: PermTable,
    expos: Vec<Vec<u8>>,
    expo_index: HashMap<Vec<u8>, usize>,
    /// Coefficients c_0..c_{l-1} of the monic cyclotomic polynomial, so that
    /// the first polynomial generator satisfies g^l = -(c_{l-1} g^{l-1} + ... + c_0).
    cyc: Vec<Elem>,
    /// Precomputed left action of each generator (x_0..x_{d-1}, s_0..s_{d-2})
    /// on each basis monomial; frozen after construction.
    gen_action: Vec<Vec<Element>>,
}

/// Builds H^Lambda_d over the given field. The case q = 1 yields the
/// degenerate algebra; the basis has size l^d * d! either way.
pub fn build_hecke(field: &Field, weight: &DominantWeight, d: usize) -> HeckeAlgebra {
    let quiver = Quiver::new(field.quantum_char());
    let level = weight.level();
    let perms = PermTable::new(d);
    let mut expos: Vec<Vec<u8>> = vec![];
    enumerate_expos(level as u8, d, &mut vec![], &mut expos);
    expos.sort_by_key(|e| {
        (
            e.iter().map(|&x| x as usize).sum::<usize>(),
            e.clone(),
        )
    });
    let expo_index: HashMap<Vec<u8>, usize> = expos
        .iter()
        .enumerate()
        .map(|(k, e)| (e.clone(), k))
        .collect();
    // cyclotomic polynomial: product over the multicharge of (g - kappa) or (g - q^kappa)
    let mut cyc = vec![field.one()];
    for &kappa in weight.charge() {
        let root = if field.is_degenerate() {
            field.from_i64(kappa)
        } else {
            field.q_pow(kappa)
        };
        // multiply by (g - root)
        let mut next = vec![field.zero(); cyc.len() + 1];
        for (k, c) in cyc.iter().enumerate() {
            next[k + 1] = field.add(&next[k + 1], c);
            let t = field.mul(c, &root);
            next[k] = field.sub(&next[k], &t);
        }
        cyc = next;
    }
    debug_assert!(field.is_one(&cyc[level]));
    cyc.truncate(level);

    let mut alg = HeckeAlgebra {
        field: field.clone(),
        degenerate: field.is_degenerate(),
        quiver,
        weight: weight.clone(),
        d,
        level,
        perms,
        expos,
        expo_index,
        cyc,
        gen_action: vec![],
    };
    let n_gens = if d == 0 { 0 } else { 2 * d - 1 };
    let mut builder = Builder {
        alg: &alg,
        memo_x: vec![HashMap::new(); d],
    };
    let mut gen_action = Vec::with_capacity(n_gens);
    for t in 0..d {
        let col: Vec<Element> = (0..alg.dim())
            .map(|b| builder.x_on_basis(t, b as u32))
            .collect();
        gen_action.push(col);
    }
    for r in 0..d.saturating_sub(1) {
        let col: Vec<Element> = (0..alg.dim())
            .map(|b| builder.s_on_basis(r, b as u32))
            .collect();
        gen_action.push(col);
    }
    alg.gen_action = gen_action;
    alg
}

fn enumerate_expos(l: u8, d: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    for v in 0..l {
        cur.push(v);
        enumerate_expos(l, d, cur, out);
        cur.pop();
    }
}

struct Builder<'a> {
    alg: &'a HeckeAlgebra,
    memo_x: Vec<HashMap<u32, Element>>,
}

impl<'a> Builder<'a> {
    fn x_on_basis(&mut self, t: usize, b: u32) -> Element {
        if let Some(e) = self.memo_x[t].get(&b) {
            return e.clone();
        }
        let alg = self.alg;
        let f = &alg.field;
        let (n, w) = alg.split(b);
        let mut n = n.to_vec();
        let result = if (n[t] as usize + 1) < alg.level {
            n[t] += 1;
            let mut e = Element::zero();
            e.add_term(f, alg.join(&n, w), &f.one());
            e
        } else if t == 0 {
            // cyclotomic reduction: g^l = -(c_{l-1} g^{l-1} + ... + c_0)
            let mut a = n.clone();
            a[0] = 0;
            let mut e = Element::zero();
            for (k, c) in alg.cyc.iter().enumerate() {
                let mut m = a.clone();
                m[0] = k as u8;
                e.add_term(f, alg.join(&m, w), &f.neg(c));
            }
            e
        } else {
            // x_t b = (s_{t-1} x_{t-1} s_{t-1} + s_{t-1}) b, resp.
            // X_t b = q^{-1} T_{t-1} X_{t-1} T_{t-1} b; only smaller indices recurse.
            let mut base = Element::zero();
            base.add_term(f, b, &f.one());
            let a = self.left_s(t - 1, &base);
            let m = self.left_x(t - 1, &a);
            let c = self.left_s(t - 1, &m);
            if alg.degenerate {
                let mut out = c;
                for (idx, coeff) in a.terms {
                    out.add_term(f, idx, &coeff);
                }
                out
            } else {
                let qinv = f.inv(f.q()).unwrap();
                let mut out = Element::zero();
                for (idx, coeff) in c.terms {
                    out.add_term(f, idx, &f.mul(&qinv, &coeff));
                }
                out
            }
        };
        self.memo_x[t].insert(b, result.clone());
        result
    }

    fn s_on_basis(&mut self, r: usize, b: u32) -> Element {
        let alg = self.alg;
        let f = &alg.field;
        let (n, w) = alg.split(b);
        let n = n.to_vec();
        let mut out = Element::zero();
        // main term: (^{s_r} x^n) (T_{s_r} T_w)
        let mut swapped = n.clone();
        swapped.swap(r, r + 1);
        let sr = Perm::transposition(alg.d, r);
        let wp = &alg.perms.perms[w];
        let srw = sr.compose(wp);
        let srw_idx = alg.perms.index_of(&srw);
        if alg.degenerate || srw.length() > wp.length() {
            out.add_term(f, alg.join_perm(&swapped, srw_idx), &f.one());
        } else {
            // T_r T_w with a length drop: (q-1) T_w + q T_{s_r w}
            let q = f.q();
            let qm1 = f.sub(q, &f.one());
            out.add_term(f, alg.join_perm(&swapped, w), &qm1);
            out.add_term(f, alg.join_perm(&swapped, srw_idx), q);
        }
        // correction term times T_w; exponents never exceed max(a, b)
        let a = n[r] as i64;
        let bb = n[r + 1] as i64;
        if a != bb {
            let (sign_neg, lo, hi) = if a > bb {
                (true, bb, a)
            } else {
                (false, a, bb)
            };
            let count = (hi - lo) as usize;
            let scale = if alg.degenerate {
                f.one()
            } else {
                f.sub(f.q(), &f.one())
            };
            let scale = if sign_neg { f.neg(&scale) } else { scale };
            for k in 0..count {
                let mut m = n.clone();
                if alg.degenerate {
                    // derivative-style correction: exps (lo+k, hi-1-k)
                    m[r] = (lo as usize + k) as u8;
                    m[r + 1] = (hi as usize - 1 - k) as u8;
                } else {
                    // Bernstein-Lusztig correction: exps (lo+k, hi-k)
                    m[r] = (lo as usize + k) as u8;
                    m[r + 1] = (hi as usize - k) as u8;
                }
                out.add_term(f, alg.join_perm(&m, w), &scale);
            }
        }
        out
    }

    fn left_x(&mut self, t: usize, e: &Element) -> Element {
        let f = &self.alg.field;
        let mut out = Element::zero();
        let terms: Vec<(u32, Elem)> = e.terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (idx, c) in terms {
            let part = self.x_on_basis(t, idx);
            for (j, v) in &part.terms {
                out.add_term(f, *j, &f.mul(&c, v));
            }
        }
        out
    }

    fn left_s(&mut self, r: usize, e: &Element) -> Element {
        let f = &self.alg.field;
        let mut out = Element::zero();
        let terms: Vec<(u32, Elem)> = e.terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (idx, c) in terms {
            let part = self.s_on_basis(r, idx);
            for (j, v) in &part.terms {
                out.add_term(f, *j, &f.mul(&c, v));
            }
        }
        out
    }
}

impl HeckeAlgebra {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn quiver(&self) -> Quiver {
        self.quiver
    }

    pub fn weight(&self) -> &DominantWeight {
        &self.weight
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.expos.len() * self.perms.len()
    }

    pub fn perms(&self) -> &PermTable {
        &self.perms
    }

    fn split(&self, idx: u32) -> (&[u8], usize) {
        let np = self.perms.len();
        let e = (idx as usize) / np;
        let w = (idx as usize) % np;
        (&self.expos[e], w)
    }

    fn join(&self, expo: &[u8], w: usize) -> u32 {
        (self.expo_index[expo] * self.perms.len() + w) as u32
    }

    fn join_perm(&self, expo: &[u8], w: usize) -> u32 {
        self.join(expo, w)
    }

    /// The identity element.
    pub fn one(&self) -> Element {
        let mut e = Element::zero();
        e.add_term(
            &self.field,
            self.join(&vec![0u8; self.d], self.perms.index_of(&Perm::identity(self.d))),
            &self.field.one(),
        );
        e
    }

    pub fn scale(&self, c: &Elem, e: &Element) -> Element {
        let mut out = Element::zero();
        for (idx, v) in &e.terms {
            out.add_term(&self.field, *idx, &self.field.mul(c, v));
        }
        out
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        for (idx, v) in &b.terms {
            out.add_term(&self.field, *idx, v);
        }
        out
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.scale(&self.field.from_i64(-1), b))
    }

    /// Left multiplication by a generator, from the frozen action table.
    pub fn apply_gen(&self, g: &Gen, e: &Element) -> Element {
        match g {
            Gen::X(t) => self.apply_table(*t, e),
            Gen::S(r) => self.apply_table(self.d + *r, e),
            Gen::XInv(t) => {
                let inv = self.x_inverse_element(*t);
                Some(self.mul(&inv, e))
            }
        }
        .unwrap_or_else(|| panic!("generator out of range: {:?}", g))
    }

    fn apply_table(&self, gen_idx: usize, e: &Element) -> Option<Element> {
        if gen_idx >= self.gen_action.len() {
            return None;
        }
        let f = &self.field;
        let mut out = Element::zero();
        for (idx, c) in &e.terms {
            let part = &self.gen_action[gen_idx][*idx as usize];
            for (j, v) in &part.terms {
                out.add_term(f, *j, &f.mul(c, v));
            }
        }
        Some(out)
    }

    /// Product of two normal-form elements: the left factor is expanded as a
    /// word in generators and applied to the right factor.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let f = &self.field;
        let mut out = Element::zero();
        for (idx, c) in &a.terms {
            let (n, w) = self.split(*idx);
            let n = n.to_vec();
            let mut acc = b.clone();
            // T_w b: apply the reduced word from its last letter inward
            let word = self.perms.words[w].clone();
            for &letter in word.iter().rev() {
                acc = self.apply_table(self.d + letter, &acc).unwrap();
            }
            // then the polynomial part
            for (t, &k) in n.iter().enumerate() {
                for _ in 0..k {
                    acc = self.apply_table(t, &acc).unwrap();
                }
            }
            for (j, v) in &acc.terms {
                out.add_term(f, *j, &f.mul(c, v));
            }
        }
        out
    }

    /// The generator as a normal-form element.
    pub fn gen_element(&self, g: &Gen) -> Element {
        self.apply_gen(g, &self.one())
    }

    /// X_{t+1}^{-1} as an element (non-degenerate only): X_1^{-1} comes from
    /// the cyclotomic relation, higher ones from X_{t+1}^{-1} = q T_t^{-1} X_t^{-1} T_t^{-1}.
    pub fn x_inverse_element(&self, t: usize) -> Element {
        assert!(!self.degenerate, "x_r is not invertible in the degenerate case");
        let f = &self.field;
        if t == 0 {
            // X (X^{l-1} + c_{l-1} X^{l-2} + ... + c_1) = -c_0
            let c0inv = f.inv(&self.cyc[0]).unwrap();
            let neg = f.neg(&c0inv);
            let mut out = Element::zero();
            let id = self.perms.index_of(&Perm::identity(self.d));
            let mut m = vec![0u8; self.d];
            m[0] = (self.level - 1) as u8;
            out.add_term(f, self.join(&m, id), &neg);
            for k in 1..self.level {
                let mut m = vec![0u8; self.d];
                m[0] = (k - 1) as u8;
                out.add_term(f, self.join(&m, id), &f.mul(&neg, &self.cyc[k]));
            }
            out
        } else {
            let tinv = self.t_inverse_element(t - 1);
            let prev = self.x_inverse_element(t - 1);
            let prod = self.mul(&tinv, &self.mul(&prev, &tinv));
            self.scale(f.q(), &prod)
        }
    }

    /// T_{r+1}^{-1} = q^{-1} T_{r+1} + (q^{-1} - 1).
    pub fn t_inverse_element(&self, r: usize) -> Element {
        assert!(!self.degenerate);
        let f = &self.field;
        let qinv = f.inv(f.q()).unwrap();
        let a = self.scale(&qinv, &self.gen_element(&Gen::S(r)));
        let b = self.scale(&f.sub(&qinv, &f.one()), &self.one());
        self.add(&a, &b)
    }

    /// Normal form of a product word in the generators.
    pub fn normal_form(&self, word: &[Gen]) -> Element {
        let mut acc = self.one();
        for g in word.iter().rev() {
            acc = self.apply_gen(g, &acc);
        }
        acc
    }

    /// Exact sparse matrices of left multiplication by each generator on the
    /// monomial basis, in the order x_1..x_d, s_1..s_{d-1}.
    pub fn regular_matrices(&self) -> Vec<SparseMat> {
        let n = self.dim();
        self.gen_action
            .iter()
            .map(|cols| {
                let mut sp = SparseMat::new(&self.field, n, n);
                for (b, e) in cols.iter().enumerate() {
                    for (idx, c) in &e.terms {
                        sp.columns[b].push((*idx as usize, c.clone()));
                    }
                }
                sp
            })
            .collect()
    }

    /// Regular matrix of an arbitrary element.
    pub fn regular_matrix_of(&self, e: &Element) -> SparseMat {
        let n = self.dim();
        let mut sp = SparseMat::new(&self.field, n, n);
        for b in 0..n {
            let mut unit = Element::zero();
            unit.add_term(&self.field, b as u32, &self.field.one());
            let col = self.mul(e, &unit);
            for (idx, c) in &col.terms {
                sp.columns[b].push((*idx as usize, c.clone()));
            }
        }
        sp
    }

    /// Renders an element as a readable sum of basis monomials.
    pub fn show_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let xname = if self.degenerate { "x" } else { "X" };
        let sname = if self.degenerate { "s" } else { "T" };
        let mut parts = vec![];
        for (idx, c) in &e.terms {
            let (n, w) = self.split(*idx);
            let mut s = format!("({})", self.field.show(c));
            for (t, &k) in n.iter().enumerate() {
                if k > 0 {
                    s.push_str(&format!("*{}{}", xname, t + 1));
                    if k > 1 {
                        s.push_str(&format!("^{}", k));
                    }
                }
            }
            for &letter in &self.perms.words[w] {
                s.push_str(&format!("*{}{}", sname, letter + 1));
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}
