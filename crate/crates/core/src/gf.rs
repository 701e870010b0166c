//! Finite fields GF(p^e) with q <= 2^16, backed by log/antilog tables.
//!
//! Elements are `u32` values in the canonical integer encoding: the residue
//! itself for prime fields, and the base-p packing `c_0 + c_1 p + ... +
//! c_{e-1} p^{e-1}` of the coefficients of the polynomial representative for
//! extension fields.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Field element in canonical integer encoding.
pub type Elem = u32;

const MAX_ORDER: u64 = 1 << 16;

/// Primitive polynomials over GF(2) for e = 2..=16, bit i = coefficient of x^i.
const BINARY_MODULI: [u32; 15] = [
    0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003,
    0x1100B,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds 2^16")]
    TooLarge { p: u32, e: u32 },
    #[error("no built-in modulus for GF({p}^{e}); supply an irreducible modulus")]
    MissingModulus { p: u32, e: u32 },
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: u32, found: usize },
    #[error("modulus coefficient {0} is not a residue mod p")]
    ModulusCoefficient(u32),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("no primitive element found")]
    NoPrimitiveFound,
    #[error("{0} is not a primitive element")]
    NotPrimitive(Elem),
    #[error("element {elem} is outside GF({q})")]
    OutOfRange { elem: Elem, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
}

/// Binary field operation selector for [`FieldTable::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
    /// `a^b`, with `b` read as a non-negative integer exponent.
    Pow,
    /// `a^{-1}`; `b` is ignored.
    Inv,
}

/// Compact description of a field, enough to rebuild the tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, low-to-high coefficients; `None` for prime fields.
    pub modulus: Option<Vec<u32>>,
    pub alpha: Elem,
}

/// Immutable arithmetic tables for GF(q), q = p^e.
#[derive(Debug, Clone)]
pub struct FieldTable {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    alpha: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl PartialEq for FieldTable {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus && self.alpha == other.alpha
    }
}

impl Eq for FieldTable {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > u32::MAX as u64 {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Multiplies polynomials over GF(p) and reduces modulo the monic `modulus`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    prod.truncate(e);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo a monic `b` over GF(p); both low-to-high.
fn poly_rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return a.to_vec();
    }
    for deg in (db..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in b.iter().enumerate() {
            let idx = deg - db + i;
            r[idx] = (r[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    r.truncate(db);
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for tail in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut t = tail;
            for _ in 0..d {
                divisor.push((t % p as u64) as u32);
                t /= p as u64;
            }
            divisor.push(1);
            if poly_rem_monic(modulus, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn binary_modulus(e: u32) -> Option<Vec<u32>> {
    let mask = *BINARY_MODULI.get(e.checked_sub(2)? as usize)?;
    Some((0..=e).map(|i| (mask >> i) & 1).collect())
}

impl FieldTable {
    /// GF(p) for a prime `p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// Builds GF(p^e). For `e > 1` the modulus defaults to a built-in
    /// primitive polynomial when `p = 2`; other extensions need one supplied.
    /// The primitive element is the smallest generator in canonical order.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        Self::build(p, e, modulus, None)
    }

    /// Rebuilds the field from a stored description.
    pub fn from_spec(spec: &FieldSpec) -> Result<Self, FieldError> {
        Self::build(spec.p, spec.e, spec.modulus.as_deref(), Some(spec.alpha))
    }

    /// Same field with `alpha` as the table generator.
    pub fn with_primitive(&self, alpha: Elem) -> Result<Self, FieldError> {
        Self::build(self.p, self.e, self.modulus.as_deref(), Some(alpha))
    }

    pub fn build(
        p: u32,
        e: u32,
        modulus: Option<&[u32]>,
        alpha: Option<Elem>,
    ) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER);
        let q = order.ok_or(FieldError::TooLarge { p, e })? as u32;

        let modulus = if e == 1 {
            None
        } else {
            let raw = match modulus {
                Some(m) => m.to_vec(),
                None if p == 2 => binary_modulus(e).ok_or(FieldError::MissingModulus { p, e })?,
                None => return Err(FieldError::MissingModulus { p, e }),
            };
            Some(normalize_modulus(raw, p, e)?)
        };

        let mut field = FieldTable { p, e, q, modulus, alpha: 1, exp: Vec::new(), log: Vec::new() };
        let alpha = match alpha {
            Some(a) => {
                if a >= q {
                    return Err(FieldError::OutOfRange { elem: a, q });
                }
                if a == 0 || field.slow_order(a) != q - 1 {
                    return Err(FieldError::NotPrimitive(a));
                }
                a
            }
            None => (1..q)
                .find(|&g| field.slow_order(g) == q - 1)
                .ok_or(FieldError::NoPrimitiveFound)?,
        };
        field.fill_tables(alpha);
        Ok(field)
    }

    fn fill_tables(&mut self, alpha: Elem) {
        let order = (self.q - 1) as usize;
        let mut exp = vec![0; 2 * order];
        let mut log = vec![0; self.q as usize];
        let mut x = 1;
        for i in 0..order {
            exp[i] = x;
            exp[i + order] = x;
            log[x as usize] = i as u32;
            x = self.schoolbook_mul(x, alpha);
        }
        self.alpha = alpha;
        self.exp = exp;
        self.log = log;
    }

    /// Multiplicative order computed without the tables.
    fn slow_order(&self, g: Elem) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.schoolbook_mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Field cardinality.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn order(&self) -> usize {
        (self.q - 1) as usize
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, e: self.e, modulus: self.modulus.clone(), alpha: self.alpha }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.q
    }

    fn digits(&self, mut a: Elem) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, digits: &[u32]) -> Elem {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    /// Reference multiplication by polynomial arithmetic, independent of the tables.
    pub fn schoolbook_mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.modulus {
            None => ((a as u64 * b as u64) % self.p as u64) as u32,
            Some(m) => {
                let prod = poly_mulmod(&self.digits(a), &self.digits(b), m, self.p);
                self.pack(&prod)
            }
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..self.e {
                out += ((a % self.p + b % self.p) % self.p) * scale;
                a /= self.p;
                b /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else if self.p == 2 {
            a
        } else {
            let mut a = a;
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..self.e {
                out += ((self.p - a % self.p) % self.p) * scale;
                a /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let e = (self.log[a as usize] as u64 * (k % order)) % order;
        self.exp[e as usize]
    }

    /// `alpha^k` for any integer `k`, negative exponents included.
    #[inline]
    pub fn alpha_pow(&self, k: i64) -> Elem {
        let order = (self.q - 1) as i64;
        self.exp[k.rem_euclid(order) as usize]
    }

    /// Discrete log with respect to `alpha`.
    pub fn log(&self, a: Elem) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroElement);
        }
        Ok(self.log[a as usize])
    }

    /// Integer multiple `c * a` (repeated addition).
    pub fn scale_int(&self, a: Elem, c: u64) -> Elem {
        let c = (c % self.p as u64) as u32;
        let mut out = 0;
        for _ in 0..c {
            out = self.add(out, a);
        }
        out
    }

    pub fn arith(&self, a: Elem, b: Elem, kind: ArithKind) -> Result<Elem, FieldError> {
        for x in [a, b] {
            if kind != ArithKind::Pow && kind != ArithKind::Inv && !self.contains(x) {
                return Err(FieldError::OutOfRange { elem: x, q: self.q });
            }
        }
        Ok(match kind {
            ArithKind::Add => self.add(a, b),
            ArithKind::Sub => self.sub(a, b),
            ArithKind::Mul => self.mul(a, b),
            ArithKind::Div => self.div(a, b)?,
            ArithKind::Pow => self.pow(a, b as u64),
            ArithKind::Inv => self.inv(a)?,
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, g: Elem) -> Result<u32, FieldError> {
        let l = self.log(g)?;
        let n = self.q - 1;
        Ok(n / gcd(l, n))
    }

    /// True iff `g` generates the multiplicative group.
    pub fn is_primitive(&self, g: Elem) -> Result<bool, FieldError> {
        Ok(self.element_order(g)? == self.q - 1)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn normalize_modulus(mut raw: Vec<u32>, p: u32, e: u32) -> Result<Vec<u32>, FieldError> {
    if let Some(&c) = raw.iter().find(|&&c| c >= p) {
        return Err(FieldError::ModulusCoefficient(c));
    }
    while raw.last() == Some(&0) {
        raw.pop();
    }
    if raw.len() != e as usize + 1 {
        return Err(FieldError::ModulusDegree { expected: e, found: raw.len().saturating_sub(1) });
    }
    let lead = *raw.last().unwrap();
    if lead != 1 {
        // scale by the inverse of the leading coefficient mod p
        let inv = (1..p).find(|&x| (x as u64 * lead as u64) % p as u64 == 1).unwrap();
        for c in raw.iter_mut() {
            *c = ((*c as u64 * inv as u64) % p as u64) as u32;
        }
    }
    if !is_irreducible(&raw, p) {
        return Err(FieldError::ReducibleModulus(p));
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_primitive_is_two() {
        let f = FieldTable::prime(5).unwrap();
        assert_eq!(f.alpha(), 2);
        assert!(f.is_primitive(2).unwrap());
        assert!(!f.is_primitive(4).unwrap());
        assert!(!f.is_primitive(1).unwrap());
        assert_eq!(f.is_primitive(0), Err(FieldError::ZeroElement));
    }

    #[test]
    fn gf2_is_smallest_field() {
        let f = FieldTable::prime(2).unwrap();
        assert_eq!(f.alpha(), 1);
        assert_eq!(f.order(), 1);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf7_generator_has_order_six() {
        let f = FieldTable::prime(7).unwrap();
        // brute-force order of every candidate
        let orders: Vec<u32> = (1..7u32)
            .map(|g| (1..=6).find(|&j| (g.pow(j)) % 7 == 1).unwrap())
            .collect();
        let a = f.alpha();
        assert_eq!(orders[(a - 1) as usize], 6);
        assert_eq!(a, 3);
        for j in 1..6 {
            assert_ne!(f.pow(a, j), 1);
        }
        assert_eq!(f.pow(a, 6), 1);
    }

    #[test]
    fn gf5_arith_examples() {
        let f = FieldTable::prime(5).unwrap();
        assert_eq!(f.arith(2, 4, ArithKind::Mul), Ok(3));
        assert_eq!(f.arith(2, 0, ArithKind::Inv), Ok(3));
        assert_eq!(f.arith(2, 3, ArithKind::Pow), Ok(3));
        assert_eq!(f.arith(3, 0, ArithKind::Div), Err(FieldError::DivisionByZero));
        assert_eq!(f.arith(1, 4, ArithKind::Sub), Ok(2));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldTable::prime(6), Err(FieldError::NotPrime(6)));
        assert_eq!(FieldTable::new(3, 2, None), Err(FieldError::MissingModulus { p: 3, e: 2 }));
        // x^2 + 2 = (x+1)(x+2) over GF(3)
        assert_eq!(FieldTable::new(3, 2, Some(&[2, 0, 1])), Err(FieldError::ReducibleModulus(3)));
        assert_eq!(FieldTable::new(2, 17, None), Err(FieldError::TooLarge { p: 2, e: 17 }));
        let f5 = FieldTable::prime(5).unwrap();
        assert_eq!(f5.with_primitive(4), Err(FieldError::NotPrimitive(4)));
    }

    #[test]
    fn builtin_binary_moduli_are_irreducible() {
        for e in 2..=16 {
            let m = binary_modulus(e).unwrap();
            assert!(is_irreducible(&m, 2), "e = {e}");
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    fn exhaustive_axioms(f: &FieldTable) {
        let q = f.q();
        for a in 0..q {
            assert_eq!(f.sub(a, a), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                assert_eq!(f.exp[f.log[a as usize] as usize], a);
            }
            for b in 0..q {
                assert_eq!(f.mul(a, b), f.schoolbook_mul(a, b), "GF({q}) {a}*{b}");
                assert_eq!(f.add(a, b), f.add(b, a));
            }
        }
        assert_eq!(f.pow(f.alpha(), f.order() as u64), 1);
        for j in 1..f.order() as u64 {
            assert_ne!(f.pow(f.alpha(), j), 1);
        }
    }

    #[test]
    fn log_tables_match_schoolbook_small_fields() {
        for (p, e, m) in [
            (2, 1, None),
            (3, 1, None),
            (5, 1, None),
            (7, 1, None),
            (2, 3, None),
            (2, 4, None),
            (2, 6, None),
            (3, 2, Some(vec![1, 0, 1])),
            (3, 3, Some(vec![1, 2, 0, 1])),
            (5, 2, Some(vec![2, 0, 1])),
            (7, 2, Some(vec![1, 0, 1])),
        ] {
            let f = FieldTable::new(p, e, m.as_deref()).unwrap();
            exhaustive_axioms(&f);
        }
    }

    #[test]
    fn gf9_distributive() {
        let f = FieldTable::new(3, 2, Some(&[1, 0, 1])).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}
