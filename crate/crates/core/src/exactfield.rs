//! Exact coefficient fields: the rationals, prime fields GF(p), and cyclotomic
//! extensions Q(zeta_n), each carrying a distinguished nonzero parameter `q`.
//!
//! The quantum characteristic `e` of a pair (F, q) is the smallest positive
//! integer with 1 + q + ... + q^(e-1) = 0 in F, or 0 if there is none. For
//! q = 1 this is the characteristic of F. All arithmetic is exact; rational
//! and cyclotomic coefficients use big integers throughout.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Which field to construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// The rational numbers Q.
    Rationals,
    /// The prime field GF(p).
    Prime(u64),
    /// The cyclotomic extension Q(zeta_n), polynomials modulo Phi_n.
    Cyclotomic(u32),
}

/// How the Hecke parameter q is specified before the field exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSpec {
    Int(i64),
    Ratio(i64, i64),
    /// The class of the variable in a cyclotomic extension.
    Zeta,
}

/// A field together with its parameter q; input to [`make_field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub q: QSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NonPrimeModulus(u64),
    ZeroQ,
    BadExtensionOrder(u32),
    NotInvertible,
    Parse(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NonPrimeModulus(p) => write!(f, "modulus {} is not prime", p),
            FieldError::ZeroQ => write!(f, "the parameter q must be nonzero"),
            FieldError::BadExtensionOrder(n) => write!(f, "bad cyclotomic order {}", n),
            FieldError::NotInvertible => write!(f, "attempt to invert a non-unit"),
            FieldError::Parse(s) => write!(f, "cannot parse field spec: {}", s),
        }
    }
}

impl std::error::Error for FieldError {}

/// A field element in canonical form: a reduced fraction, a least residue,
/// or a polynomial residue of degree < deg Phi_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    Cyc(Vec<BigRational>),
}

struct FieldInner {
    kind: FieldKind,
    /// Coefficients of Phi_n, low degree first, monic; only for extensions.
    modulus: Vec<BigRational>,
    q: Elem,
    quantum_char: u32,
}

/// An immutable field handle; cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind && self.0.q == other.0.q
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({}, q={})", self.describe(), self.show(self.q()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients of the n-th cyclotomic polynomial over Z, low degree first,
/// computed as the quotient of x^n - 1 by the lower-order cyclotomic factors.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigRational> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of polynomials over Q (low degree first); panics if inexact.
fn poly_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem: Vec<BigRational> = a.to_vec();
    let db = b.len() - 1;
    assert!(!b[db].is_zero());
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = &rem[k] / &b[db];
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                rem[k - db + j] -= t;
            }
        }
        quot[k - db] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Constructs the field described by `spec`, checking its invariants.
pub fn make_field(spec: &FieldSpec) -> Result<Field, FieldError> {
    let (kind, modulus) = match spec.kind {
        FieldKind::Rationals => (FieldKind::Rationals, Vec::new()),
        FieldKind::Prime(p) => {
            if !is_prime(p) {
                return Err(FieldError::NonPrimeModulus(p));
            }
            (FieldKind::Prime(p), Vec::new())
        }
        FieldKind::Cyclotomic(n) => {
            if n == 0 {
                return Err(FieldError::BadExtensionOrder(n));
            }
            (FieldKind::Cyclotomic(n), cyclotomic_polynomial(n))
        }
    };
    let deg = if modulus.is_empty() { 0 } else { modulus.len() - 1 };
    let proto = Field(Arc::new(FieldInner {
        kind: kind.clone(),
        modulus: modulus.clone(),
        q: Elem::Mod(0),
        quantum_char: 0,
    }));
    let q = match spec.q {
        QSpec::Int(n) => proto.from_i64(n),
        QSpec::Ratio(a, b) => {
            if b == 0 {
                return Err(FieldError::Parse("zero denominator in q".into()));
            }
            let bb = proto.from_i64(b);
            if proto.is_zero(&bb) {
                return Err(FieldError::Parse("q denominator vanishes".into()));
            }
            proto.div(&proto.from_i64(a), &bb)
        }
        QSpec::Zeta => match kind {
            FieldKind::Cyclotomic(_) => {
                if deg >= 2 {
                    let mut v = vec![BigRational::zero(); deg];
                    v[1] = BigRational::one();
                    Elem::Cyc(v)
                } else {
                    // Phi_1 = x - 1 or Phi_2 = x + 1: the class of x is rational.
                    Elem::Cyc(vec![-modulus[0].clone()])
                }
            }
            _ => return Err(FieldError::Parse("q=zeta needs a cyclotomic field".into())),
        },
    };
    if proto.is_zero(&q) {
        return Err(FieldError::ZeroQ);
    }
    let stage = Field(Arc::new(FieldInner {
        kind: kind.clone(),
        modulus: modulus.clone(),
        q: q.clone(),
        quantum_char: 0,
    }));
    let e = compute_quantum_char(&stage);
    Ok(Field(Arc::new(FieldInner {
        kind,
        modulus,
        q,
        quantum_char: e,
    })))
}

/// The quantum characteristic of (F, q): the smallest e > 0 with
/// 1 + q + ... + q^(e-1) = 0, or 0 if no such e exists.
pub fn quantum_characteristic(field: &Field) -> u32 {
    field.0.quantum_char
}

fn compute_quantum_char(f: &Field) -> u32 {
    let q = f.q().clone();
    if f.is_one(&q) {
        return f.characteristic() as u32;
    }
    // For q != 1 the partial sum vanishes iff q^e = 1, so e is the
    // multiplicative order of q. The bounds below make the searches
    // exhaustive: rational roots of unity are +-1, orders in GF(p)
    // divide p - 1, and orders in Q(zeta_n) divide lcm(2, n).
    let bound = match f.0.kind {
        FieldKind::Rationals => 2,
        FieldKind::Prime(p) => p.max(64),
        FieldKind::Cyclotomic(n) => 2 * n.max(32) as u64,
    };
    let mut sum = f.one();
    let mut pow = q.clone();
    for e in 2..=bound {
        sum = f.add(&sum, &pow);
        if f.is_zero(&sum) {
            return e as u32;
        }
        pow = f.mul(&pow, &q);
    }
    0
}

impl Field {
    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub fn q(&self) -> &Elem {
        &self.0.q
    }

    pub fn quantum_char(&self) -> u32 {
        self.0.quantum_char
    }

    /// Whether this instance is the degenerate case q = 1.
    pub fn is_degenerate(&self) -> bool {
        self.is_one(self.q())
    }

    pub fn characteristic(&self) -> u64 {
        match self.0.kind {
            FieldKind::Prime(p) => p,
            _ => 0,
        }
    }

    fn ext_deg(&self) -> usize {
        self.0.modulus.len().saturating_sub(1)
    }

    pub fn zero(&self) -> Elem {
        match self.0.kind {
            FieldKind::Rationals => Elem::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Elem::Mod(0),
            FieldKind::Cyclotomic(_) => Elem::Cyc(vec![BigRational::zero(); self.ext_deg()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match self.0.kind {
            FieldKind::Rationals => Elem::Rat(big(n)),
            FieldKind::Prime(p) => Elem::Mod(n.rem_euclid(p as i64) as u64),
            FieldKind::Cyclotomic(_) => {
                let deg = self.ext_deg();
                let mut v = vec![BigRational::zero(); deg.max(1)];
                v[0] = big(n);
                v.truncate(deg.max(1));
                Elem::Cyc(v)
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(m) => *m == 0,
            Elem::Cyc(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                let p = self.characteristic();
                Elem::Mod((x + y) % p)
            }
            (Elem::Cyc(x), Elem::Cyc(y)) => {
                Elem::Cyc(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Mod(x) => {
                let p = self.characteristic();
                Elem::Mod((p - x) % p)
            }
            Elem::Cyc(x) => Elem::Cyc(x.iter().map(|c| -c).collect()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                let p = self.characteristic() as u128;
                Elem::Mod(((*x as u128 * *y as u128) % p) as u64)
            }
            (Elem::Cyc(x), Elem::Cyc(y)) => {
                let deg = self.ext_deg();
                let mut prod = vec![BigRational::zero(); 2 * deg.max(1)];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        if !yj.is_zero() {
                            let t = xi * yj;
                            prod[i + j] += t;
                        }
                    }
                }
                Elem::Cyc(self.reduce_poly(prod))
            }
            _ => panic!("mixed field elements"),
        }
    }

    fn reduce_poly(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.ext_deg();
        let m = &self.0.modulus;
        for k in (deg..v.len()).rev() {
            let c = v[k].clone();
            if !c.is_zero() {
                for j in 0..deg {
                    let t = &c * &m[j];
                    v[k - deg + j] -= t;
                }
                v[k] = BigRational::zero();
            }
        }
        v.truncate(deg.max(1));
        v
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::NotInvertible);
        }
        Ok(match a {
            Elem::Rat(x) => Elem::Rat(x.recip()),
            Elem::Mod(x) => {
                let p = self.characteristic();
                // Fermat: x^(p-2) mod p.
                let mut acc: u128 = 1;
                let mut base = *x as u128;
                let mut k = p - 2;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc * base % p as u128;
                    }
                    base = base * base % p as u128;
                    k >>= 1;
                }
                Elem::Mod(acc as u64)
            }
            Elem::Cyc(x) => {
                // Extended Euclid in Q[t] against the cyclotomic modulus.
                let mut r0 = self.0.modulus.clone();
                let mut r1 = x.clone();
                trim(&mut r1);
                let mut s0: Vec<BigRational> = vec![];
                let mut s1 = vec![BigRational::one()];
                while !r1.is_empty() {
                    let (qt, rem) = poly_divmod(&r0, &r1);
                    let s2 = poly_sub(&s0, &poly_mul(&qt, &s1));
                    r0 = r1;
                    r1 = rem;
                    s0 = s1;
                    s1 = s2;
                }
                // r0 = gcd, a nonzero constant since Phi_n is irreducible over Q.
                assert_eq!(r0.len(), 1, "non-unit in cyclotomic field");
                let c = r0[0].recip();
                let mut out: Vec<BigRational> = s0.iter().map(|t| t * &c).collect();
                out.resize(self.ext_deg().max(1), BigRational::zero());
                Elem::Cyc(self.reduce_poly(out))
            }
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    /// a^k for integer k (negative exponents invert).
    pub fn pow_i64(&self, a: &Elem, k: i64) -> Elem {
        if k < 0 {
            let inv = self.inv(a).expect("negative power of non-unit");
            return self.pow_i64(&inv, -k);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// q^i, the eigenvalue attached to residue i in the non-degenerate case.
    pub fn q_pow(&self, i: i64) -> Elem {
        self.pow_i64(self.q(), i)
    }

    /// Short string form ("Q", "GF(5)", "Qzeta(3)").
    pub fn describe(&self) -> String {
        match self.0.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Prime(p) => format!("GF({})", p),
            FieldKind::Cyclotomic(n) => format!("Qzeta({})", n),
        }
    }

    /// Human-readable rendering of an element.
    pub fn show(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(r) => format!("{}", r),
            Elem::Mod(m) => format!("{}", m),
            Elem::Cyc(v) => {
                let mut parts = vec![];
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let cs = format!("{}", c);
                    parts.push(match k {
                        0 => cs,
                        1 if c.is_one() => "z".into(),
                        1 => format!("{}*z", cs),
                        _ if c.is_one() => format!("z^{}", k),
                        _ => format!("{}*z^{}", cs, k),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+").replace("+-", "-")
                }
            }
        }
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += t;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = &rem[k] / &b[db];
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                rem[k - db + j] -= t;
            }
        }
        quot[k - db] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Parses the short string form: "Q,q=2", "GF(5),q=4", "Qzeta(3)",
/// "Qzeta(4),q=-1". Rational q values like "q=1/2" are accepted over Q.
pub fn parse_field(s: &str) -> Result<Field, FieldError> {
    let s = s.trim();
    let (head, qpart) = match s.find(',') {
        Some(k) => (&s[..k], Some(&s[k + 1..])),
        None => (s, None),
    };
    let kind = if head == "Q" {
        FieldKind::Rationals
    } else if let Some(rest) = head.strip_prefix("GF(") {
        let p = rest
            .strip_suffix(')')
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(|| FieldError::Parse(s.into()))?;
        FieldKind::Prime(p)
    } else if let Some(rest) = head.strip_prefix("Qzeta(") {
        let n = rest
            .strip_suffix(')')
            .and_then(|t| t.parse::<u32>().ok())
            .ok_or_else(|| FieldError::Parse(s.into()))?;
        FieldKind::Cyclotomic(n)
    } else {
        return Err(FieldError::Parse(s.into()));
    };
    let q = match qpart {
        None => match kind {
            FieldKind::Cyclotomic(_) => QSpec::Zeta,
            _ => QSpec::Int(1),
        },
        Some(t) => {
            let t = t.trim();
            let v = t
                .strip_prefix("q=")
                .ok_or_else(|| FieldError::Parse(s.into()))?;
            if v == "zeta" {
                QSpec::Zeta
            } else if let Some(k) = v.find('/') {
                let a = v[..k]
                    .parse::<i64>()
                    .map_err(|_| FieldError::Parse(s.into()))?;
                let b = v[k + 1..]
                    .parse::<i64>()
                    .map_err(|_| FieldError::Parse(s.into()))?;
                QSpec::Ratio(a, b)
            } else {
                QSpec::Int(v.parse::<i64>().map_err(|_| FieldError::Parse(s.into()))?)
            }
        }
    };
    make_field(&FieldSpec { kind, q })
}

/// True when the rational content of an element is negative; only used for
/// pretty-printing decisions.
pub fn is_negative_rat(a: &Elem) -> bool {
    match a {
        Elem::Rat(r) => r.is_negative(),
        _ => false,
    }
}

impl Field {
    /// Rescales a rational vector by a positive rational so its entries are
    /// coprime integers with positive leading entry; keeps intermediate
    /// eliminations from accumulating large fractions. A no-op for other
    /// coefficient kinds, where growth is not an issue.
    pub fn integer_normalize(&self, col: &mut [Elem]) {
        if !matches!(self.0.kind, FieldKind::Rationals) {
            return;
        }
        let mut denom_lcm = BigInt::from(1);
        for e in col.iter() {
            if let Elem::Rat(r) = e {
                if !r.is_zero() {
                    let d = r.denom();
                    let g = gcd_big(&denom_lcm, d);
                    denom_lcm = &denom_lcm / &g * d;
                }
            }
        }
        let mut numer_gcd = BigInt::from(0);
        for e in col.iter() {
            if let Elem::Rat(r) = e {
                if !r.is_zero() {
                    let scaled = r.numer() * (&denom_lcm / r.denom());
                    numer_gcd = gcd_big(&numer_gcd, &scaled);
                }
            }
        }
        if numer_gcd.is_zero() {
            return;
        }
        let lead_negative = col.iter().find_map(|e| match e {
            Elem::Rat(r) if !r.is_zero() => Some(r.is_negative()),
            _ => None,
        });
        if lead_negative == Some(true) {
            numer_gcd = -numer_gcd;
        }
        let scale = BigRational::new(denom_lcm, numer_gcd);
        for e in col.iter_mut() {
            if let Elem::Rat(r) = e {
                if !r.is_zero() {
                    *e = Elem::Rat(&*r * &scale);
                }
            }
        }
    }
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = if a.is_negative() { -a } else { a.clone() };
    let mut y = if b.is_negative() { -b } else { b.clone() };
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: &str) -> Field {
        parse_field(s).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let f = field("Q,q=1");
        assert!(f.is_degenerate());
        let g5 = field("GF(5),q=4");
        assert_eq!(g5.mul(g5.q(), g5.q()), g5.one());
        let z3 = field("Qzeta(3)");
        // zeta_3 is a root of x^2 + x + 1
        let z = z3.q().clone();
        let sum = z3.add(&z3.add(&z3.mul(&z, &z), &z), &z3.one());
        assert!(z3.is_zero(&sum));
    }

    #[test]
    fn make_field_errors() {
        assert!(make_field(&FieldSpec {
            kind: FieldKind::Prime(6),
            q: QSpec::Int(1)
        })
        .is_err());
        assert!(make_field(&FieldSpec {
            kind: FieldKind::Rationals,
            q: QSpec::Int(0)
        })
        .is_err());
        assert!(make_field(&FieldSpec {
            kind: FieldKind::Cyclotomic(0),
            q: QSpec::Zeta
        })
        .is_err());
    }

    #[test]
    fn quantum_characteristic_examples() {
        assert_eq!(quantum_characteristic(&field("Q,q=2")), 0);
        assert_eq!(quantum_characteristic(&field("Q,q=-1")), 2);
        assert_eq!(quantum_characteristic(&field("GF(7),q=2")), 3);
        assert_eq!(quantum_characteristic(&field("GF(3),q=1")), 3);
        assert_eq!(quantum_characteristic(&field("Q,q=1")), 0);
        assert_eq!(quantum_characteristic(&field("GF(2),q=1")), 2);
        assert_eq!(quantum_characteristic(&field("Qzeta(3)")), 3);
        assert_eq!(quantum_characteristic(&field("Qzeta(2)")), 2);
    }

    #[test]
    fn prime_field_q1_has_e_equal_p() {
        for p in [2u64, 3, 5, 7, 11] {
            let f = make_field(&FieldSpec {
                kind: FieldKind::Prime(p),
                q: QSpec::Int(1),
            })
            .unwrap();
            assert_eq!(f.quantum_char() as u64, p);
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |v: Vec<BigRational>| -> Vec<i64> {
            v.iter()
                .map(|c| {
                    assert!(c.is_integer());
                    c.to_integer().try_into().unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    // Field axioms on pseudo-random elements, exercised per backing kind.
    #[test]
    fn field_axioms_randomized() {
        let fields = [field("Q,q=2"), field("GF(7),q=3"), field("Qzeta(5)")];
        for f in &fields {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let rand_elem = |f: &Field, r: u64| -> Elem {
                let n = (r % 19) as i64 - 9;
                match f.kind() {
                    FieldKind::Cyclotomic(_) => {
                        f.add(&f.from_i64(n), &f.mul(f.q(), &f.from_i64((r % 5) as i64)))
                    }
                    _ => f.from_i64(n),
                }
            };
            for _ in 0..100 {
                let a = rand_elem(f, next());
                let b = rand_elem(f, next());
                let c = rand_elem(f, next());
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                if !f.is_zero(&a) {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["Q,q=1", "Q,q=-1", "GF(5),q=4", "Qzeta(3)", "Q,q=1/2"] {
            let f = parse_field(s).unwrap();
            assert!(!f.is_zero(f.q()));
        }
        assert!(parse_field("R,q=1").is_err());
        assert!(parse_field("GF(4),q=1").is_err());
    }
}
