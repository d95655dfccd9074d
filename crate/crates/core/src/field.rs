//! Exact arithmetic in GF(q) and in its cubic extension GF(q^3).
//!
//! GF(q^3) is built as GF(q)[x] / (x^3 - t2 x^2 - t1 x - t0) with a primitive
//! root `tau`. Elements are stored as dense indices `a0 + a1 q + a2 q^2` of the
//! coefficient triple `(a0, a1, a2)` meaning `a0 + a1 tau + a2 tau^2`, so the
//! subfield GF(q) embeds as the indices `0..q`. Multiplication goes through a
//! discrete-log table against `tau`; addition through a full table.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported subfield order.
pub const MAX_Q: u32 = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("order {0} is outside the supported range 2..={MAX_Q}")]
    UnsupportedOrder(u32),
    #[error("x^3 - {t2}x^2 - {t1}x - {t0} is reducible over GF({q})")]
    ReduciblePolynomial { q: u32, t0: u32, t1: u32, t2: u32 },
    #[error("root of the cubic has multiplicative order {order}, expected {expected}")]
    NonPrimitiveRoot { order: u32, expected: u32 },
    #[error("label {label} does not name an element of GF({q})")]
    BadLabel { label: u32, q: u32 },
    #[error("norm equation needs a nonzero right-hand side")]
    ZeroRightHandSide,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// An element of the subfield GF(q), identified by its canonical label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FqElem(pub(crate) u8);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn label(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// An element of GF(q^3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fq3Elem(pub(crate) u16);

impl Fq3Elem {
    pub const ZERO: Fq3Elem = Fq3Elem(0);
    pub const ONE: Fq3Elem = Fq3Elem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl From<FqElem> for Fq3Elem {
    fn from(a: FqElem) -> Self {
        Fq3Elem(a.0 as u16)
    }
}

/// Serializable identification of a field context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub q: u32,
    pub t0: u32,
    pub t1: u32,
    pub t2: u32,
}

/// GF(q) as addition/multiplication tables over labels `0..q`.
///
/// For q = p^k with k > 1 the label of `c0 + c1 y + ... ` is `c0 + c1 p + ...`
/// in GF(p)[y] modulo the smallest monic irreducible of degree k.
#[derive(Debug, Clone)]
struct BaseField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

impl BaseField {
    fn new(p: u32, k: u32) -> Self {
        let p = p as usize;
        let q = p.pow(k);
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let undigits = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);

        // monic modulus y^k + m_{k-1} y^{k-1} + ... + m_0, stored as m_0..m_{k-1}
        let modulus: Vec<usize> = if k == 1 {
            vec![0]
        } else {
            (0..q)
                .map(digits)
                .find(|m| {
                    // k <= 3 here, so irreducible iff no root in GF(p)
                    (0..p).all(|x| {
                        let mut v = 1usize;
                        for i in (0..k as usize).rev() {
                            v = (v * x + m[i]) % p;
                        }
                        v != 0
                    })
                })
                .expect("an irreducible polynomial exists")
        };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a);
            neg[a] = undigits(&da.iter().map(|&d| (p - d) % p).collect::<Vec<_>>()) as u8;
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum) as u8;
                if k == 1 {
                    mul[a * q + b] = ((a * b) % p) as u8;
                    continue;
                }
                let kk = k as usize;
                let mut prod = vec![0usize; 2 * kk - 1];
                for i in 0..kk {
                    for j in 0..kk {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (kk..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let idx = deg - kk + i;
                        prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..kk]) as u8;
            }
        }
        BaseField { q, add, mul, neg }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }
}

/// Factor `q` as `p^k`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Arithmetic context for GF(q) and GF(q^3). Immutable after construction.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    q: u32,
    p: u32,
    t: [FqElem; 3],
    size: usize,
    order: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    exp: Vec<u16>,
    log: Vec<u32>,
}

impl FieldCtx {
    /// Build the context for `q`, using `poly = (t0, t1, t2)` if given and the
    /// lexicographically smallest valid `(t2, t1, t0)` otherwise.
    pub fn new(q: u32, poly: Option<(u32, u32, u32)>) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(FieldError::UnsupportedOrder(q));
        }
        let base = BaseField::new(p, k);
        match poly {
            Some((t0, t1, t2)) => {
                for label in [t0, t1, t2] {
                    if label >= q {
                        return Err(FieldError::BadLabel { label, q });
                    }
                }
                Self::with_poly(q, p, &base, [t0 as usize, t1 as usize, t2 as usize])
            }
            None => {
                let q = q as usize;
                for t2 in 0..q {
                    for t1 in 0..q {
                        for t0 in 0..q {
                            if let Ok(ctx) = Self::with_poly(q as u32, p, &base, [t0, t1, t2]) {
                                return Ok(ctx);
                            }
                        }
                    }
                }
                unreachable!("every finite field has a primitive cubic extension")
            }
        }
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self, FieldError> {
        Self::new(spec.q, Some((spec.t0, spec.t1, spec.t2)))
    }

    fn with_poly(q: u32, p: u32, base: &BaseField, t: [usize; 3]) -> Result<Self, FieldError> {
        let qu = q as usize;
        let reducible = FieldError::ReduciblePolynomial {
            q,
            t0: t[0] as u32,
            t1: t[1] as u32,
            t2: t[2] as u32,
        };
        // a cubic is irreducible iff it has no root
        for x in 0..qu {
            let x2 = base.mul(x, x);
            let x3 = base.mul(x2, x);
            let rhs = base.add(base.add(t[0], base.mul(t[1], x)), base.mul(t[2], x2));
            if base.add(x3, base.neg[rhs] as usize) == 0 {
                return Err(reducible);
            }
        }

        let size = qu * qu * qu;
        let order = size - 1;
        let enc = |c: [usize; 3]| c[0] + c[1] * qu + c[2] * qu * qu;

        let mut exp = Vec::with_capacity(2 * order);
        let mut cur = [1usize, 0, 0];
        loop {
            exp.push(enc(cur) as u16);
            // (a0 + a1 tau + a2 tau^2) * tau, with tau^3 = t0 + t1 tau + t2 tau^2
            let [a0, a1, a2] = cur;
            cur = [
                base.mul(a2, t[0]),
                base.add(a0, base.mul(a2, t[1])),
                base.add(a1, base.mul(a2, t[2])),
            ];
            if cur == [1, 0, 0] || exp.len() > order {
                break;
            }
        }
        if exp.len() != order {
            return Err(FieldError::NonPrimitiveRoot {
                order: exp.len() as u32,
                expected: order as u32,
            });
        }
        let mut log = vec![0u32; size];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        exp.extend_from_within(..);

        let dec = |x: usize| [x % qu, (x / qu) % qu, x / (qu * qu)];
        let mut add = vec![0u16; size * size];
        let mut neg = vec![0u16; size];
        for a in 0..size {
            let ca = dec(a);
            neg[a] = enc([
                base.neg[ca[0]] as usize,
                base.neg[ca[1]] as usize,
                base.neg[ca[2]] as usize,
            ]) as u16;
            for b in 0..size {
                let cb = dec(b);
                add[a * size + b] = enc([
                    base.add(ca[0], cb[0]),
                    base.add(ca[1], cb[1]),
                    base.add(ca[2], cb[2]),
                ]) as u16;
            }
        }

        Ok(FieldCtx {
            q,
            p,
            t: [FqElem(t[0] as u8), FqElem(t[1] as u8), FqElem(t[2] as u8)],
            size,
            order,
            add,
            neg,
            exp,
            log,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Number of elements of GF(q^3).
    pub fn size(&self) -> usize {
        self.size
    }

    /// `q^3 - 1`, the order of the multiplicative group.
    pub fn mult_order(&self) -> usize {
        self.order
    }

    /// `q^2 + q + 1`.
    pub fn norm_exponent(&self) -> usize {
        let q = self.q as usize;
        q * q + q + 1
    }

    /// Coefficients `(t0, t1, t2)` of `tau^3 = t0 + t1 tau + t2 tau^2`.
    pub fn poly(&self) -> (FqElem, FqElem, FqElem) {
        (self.t[0], self.t[1], self.t[2])
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            q: self.q,
            t0: self.t[0].label(),
            t1: self.t[1].label(),
            t2: self.t[2].label(),
        }
    }

    pub fn tau(&self) -> Fq3Elem {
        Fq3Elem(self.q as u16)
    }

    /// Every element of GF(q^3) in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fq3Elem> + '_ {
        (0..self.size).map(|i| Fq3Elem(i as u16))
    }

    /// Every element of GF(q) in label order.
    pub fn base_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(|i| FqElem(i as u8))
    }

    pub fn base(&self, label: u32) -> Result<FqElem, FieldError> {
        if label < self.q {
            Ok(FqElem(label as u8))
        } else {
            Err(FieldError::BadLabel { label, q: self.q })
        }
    }

    /// The element `a0 + a1 tau + a2 tau^2`.
    pub fn from_coeffs(&self, c: [FqElem; 3]) -> Fq3Elem {
        let q = self.q as u16;
        Fq3Elem(c[0].0 as u16 + c[1].0 as u16 * q + c[2].0 as u16 * q * q)
    }

    pub fn coeffs(&self, x: Fq3Elem) -> [FqElem; 3] {
        let q = self.q as u16;
        [
            FqElem((x.0 % q) as u8),
            FqElem((x.0 / q % q) as u8),
            FqElem((x.0 / (q * q)) as u8),
        ]
    }

    /// `Some(a)` when `x` lies in the subfield GF(q).
    pub fn to_base(&self, x: Fq3Elem) -> Option<FqElem> {
        ((x.0 as u32) < self.q).then_some(FqElem(x.0 as u8))
    }

    pub fn add(&self, a: Fq3Elem, b: Fq3Elem) -> Fq3Elem {
        Fq3Elem(self.add[a.index() * self.size + b.index()])
    }

    pub fn neg(&self, a: Fq3Elem) -> Fq3Elem {
        Fq3Elem(self.neg[a.index()])
    }

    pub fn sub(&self, a: Fq3Elem, b: Fq3Elem) -> Fq3Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq3Elem, b: Fq3Elem) -> Fq3Elem {
        if a.is_zero() || b.is_zero() {
            return Fq3Elem::ZERO;
        }
        Fq3Elem(self.exp[(self.log[a.index()] + self.log[b.index()]) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fq3Elem) -> Fq3Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let l = self.log[a.index()] as usize;
        Fq3Elem(self.exp[(self.order - l) % self.order])
    }

    pub fn div(&self, a: Fq3Elem, b: Fq3Elem) -> Fq3Elem {
        self.mul(a, self.inv(b))
    }

    /// Discrete logarithm to base `tau`.
    pub fn log(&self, a: Fq3Elem) -> Option<usize> {
        (!a.is_zero()).then(|| self.log[a.index()] as usize)
    }

    /// `tau^e`.
    pub fn tau_pow(&self, e: usize) -> Fq3Elem {
        Fq3Elem(self.exp[e % self.order])
    }

    pub fn pow(&self, a: Fq3Elem, e: u64) -> Fq3Elem {
        if e == 0 {
            return Fq3Elem::ONE;
        }
        if a.is_zero() {
            return Fq3Elem::ZERO;
        }
        let l = self.log[a.index()] as u64 * (e % self.order as u64) % self.order as u64;
        Fq3Elem(self.exp[l as usize])
    }

    /// `x^(q^i)`. Any `i` is accepted; the map has order 3.
    pub fn frobenius(&self, x: Fq3Elem, i: u32) -> Fq3Elem {
        self.pow(x, (self.q as u64).pow(i % 3))
    }

    /// `N(x) = x^(q^2+q+1)`, which lies in GF(q).
    pub fn norm(&self, x: Fq3Elem) -> FqElem {
        let n = self.pow(x, self.norm_exponent() as u64);
        self.to_base(n).expect("norm lies in the subfield")
    }

    /// `T(x) = x + x^q + x^(q^2)`, which lies in GF(q).
    pub fn trace(&self, x: Fq3Elem) -> FqElem {
        let t = self.add(self.add(x, self.frobenius(x, 1)), self.frobenius(x, 2));
        self.to_base(t).expect("trace lies in the subfield")
    }

    /// All `theta` with `N(theta) = f`; there are `q^2 + q + 1` of them.
    pub fn solve_norm_eq(&self, f: FqElem) -> Result<Vec<Fq3Elem>, FieldError> {
        if f.is_zero() {
            return Err(FieldError::ZeroRightHandSide);
        }
        Ok(self.elements().filter(|&x| self.norm(x) == f).collect())
    }

    pub fn fq_add(&self, a: FqElem, b: FqElem) -> FqElem {
        self.to_base(self.add(a.into(), b.into())).unwrap()
    }

    pub fn fq_mul(&self, a: FqElem, b: FqElem) -> FqElem {
        self.to_base(self.mul(a.into(), b.into())).unwrap()
    }

    pub fn fq_neg(&self, a: FqElem) -> FqElem {
        self.to_base(self.neg(a.into())).unwrap()
    }

    pub fn fq_inv(&self, a: FqElem) -> FqElem {
        self.to_base(self.inv(a.into())).unwrap()
    }

    /// `-1` in GF(q); equal to `1` in characteristic 2.
    pub fn minus_one(&self) -> FqElem {
        self.fq_neg(FqElem::ONE)
    }

    /// Text form `a0,a1,a2` of the coefficient labels.
    pub fn format(&self, x: Fq3Elem) -> String {
        let [a0, a1, a2] = self.coeffs(x);
        format!("{},{},{}", a0.0, a1.0, a2.0)
    }

    /// Parse `a0,a1,a2`.
    pub fn parse(&self, s: &str) -> Result<Fq3Elem, FieldError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(FieldError::Parse(s.to_string()));
        }
        let mut c = [FqElem::ZERO; 3];
        for (slot, part) in c.iter_mut().zip(parts) {
            let label: u32 = part.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
            *slot = self.base(label)?;
        }
        Ok(self.from_coeffs(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent GF(2^3) multiplication by carry-less product mod x^3 + x + 1.
    fn gf8_mul(a: u16, b: u16) -> u16 {
        let mut r = 0u16;
        for i in 0..3 {
            if b >> i & 1 == 1 {
                r ^= a << i;
            }
        }
        for deg in (3..5).rev() {
            if r >> deg & 1 == 1 {
                r ^= 0b1011 << (deg - 3);
            }
        }
        r
    }

    #[test]
    fn default_poly_q2_is_x3_x_1() {
        let f = FieldCtx::new(2, None).unwrap();
        assert_eq!(f.spec(), FieldSpec { q: 2, t0: 1, t1: 1, t2: 0 });
    }

    #[test]
    fn q2_matches_bitwise_gf8() {
        let f = FieldCtx::new(2, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b).0, gf8_mul(a.0, b.0));
                assert_eq!(f.add(a, b).0, a.0 ^ b.0);
            }
        }
    }

    #[test]
    fn zero_poly_is_reducible() {
        assert!(matches!(
            FieldCtx::new(2, Some((0, 0, 0))),
            Err(FieldError::ReduciblePolynomial { .. })
        ));
        assert!(matches!(
            FieldCtx::new(7, Some((0, 0, 0))),
            Err(FieldError::ReduciblePolynomial { .. })
        ));
    }

    #[test]
    fn non_primitive_root_rejected() {
        // half of the 8 irreducible monic cubics over GF(3) have a non-primitive root
        let mut saw = false;
        for t2 in 0..3 {
            for t1 in 0..3 {
                for t0 in 0..3 {
                    if let Err(FieldError::NonPrimitiveRoot { order, .. }) =
                        FieldCtx::new(3, Some((t0, t1, t2)))
                    {
                        assert_eq!(26 % order, 0);
                        saw = true;
                    }
                }
            }
        }
        assert!(saw);
    }

    #[test]
    fn bad_orders() {
        assert_eq!(FieldCtx::new(6, None).unwrap_err(), FieldError::NotPrimePower(6));
        assert_eq!(FieldCtx::new(1, None).unwrap_err(), FieldError::NotPrimePower(1));
        assert_eq!(FieldCtx::new(11, None).unwrap_err(), FieldError::UnsupportedOrder(11));
        assert!(matches!(
            FieldCtx::new(3, Some((3, 0, 0))),
            Err(FieldError::BadLabel { label: 3, q: 3 })
        ));
    }

    #[test]
    fn tau_order_and_relation() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldCtx::new(q, None).unwrap();
            let tau = f.tau();
            // brute-force order
            let mut x = tau;
            let mut ord = 1;
            while x != Fq3Elem::ONE {
                x = f.mul(x, tau);
                ord += 1;
            }
            assert_eq!(ord, f.mult_order(), "q={q}");
            let (t0, t1, t2) = f.poly();
            let tau2 = f.mul(tau, tau);
            let rhs = f.add(f.add(t0.into(), f.mul(t1.into(), tau)), f.mul(t2.into(), tau2));
            assert_eq!(f.mul(tau2, tau), rhs);
        }
    }

    #[test]
    fn base_field_is_a_field() {
        for q in [4, 8, 9] {
            let f = FieldCtx::new(q, None).unwrap();
            let fq: Vec<FqElem> = f.base_elements().collect();
            for &a in &fq {
                if !a.is_zero() {
                    assert_eq!(f.fq_mul(a, f.fq_inv(a)), FqElem::ONE);
                }
                for &b in &fq {
                    for &c in &fq {
                        assert_eq!(
                            f.fq_mul(a, f.fq_add(b, c)),
                            f.fq_add(f.fq_mul(a, b), f.fq_mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        for q in [2, 3, 4, 5] {
            let f = FieldCtx::new(q, None).unwrap();
            assert_eq!(f.norm(Fq3Elem::ZERO), FqElem::ZERO);
            assert_eq!(f.norm(Fq3Elem::ONE), FqElem::ONE);
            // N(tau) = t0, via tau * tau^q * tau^(q^2)
            let tau = f.tau();
            let prod = f.mul(f.mul(tau, f.frobenius(tau, 1)), f.frobenius(tau, 2));
            assert_eq!(prod, f.poly().0.into());
            assert_eq!(f.norm(tau), f.poly().0);
        }
        let f = FieldCtx::new(2, None).unwrap();
        assert!(f.elements().skip(1).all(|x| f.norm(x) == FqElem::ONE));
    }

    #[test]
    fn trace_examples() {
        let f = FieldCtx::new(2, None).unwrap();
        assert_eq!(f.trace(Fq3Elem::ZERO), FqElem::ZERO);
        assert_eq!(f.trace(Fq3Elem::ONE), FqElem::ONE);
        // tau + tau^2 + tau^4 with tau^3 = tau + 1: tau^4 = tau^2 + tau
        assert_eq!(f.trace(f.tau()), FqElem::ZERO);
    }

    #[test]
    fn frobenius_examples() {
        for q in [2, 3, 4, 5] {
            let f = FieldCtx::new(q, None).unwrap();
            for x in f.elements() {
                assert_eq!(f.frobenius(x, 0), x);
                assert_eq!(f.frobenius(x, 3), x);
                let in_base = f.frobenius(x, 1) == x;
                assert_eq!(in_base, f.to_base(x).is_some());
            }
            assert_eq!(f.elements().filter(|&x| f.frobenius(x, 1) == x).count(), q as usize);
        }
        let f = FieldCtx::new(2, None).unwrap();
        assert_eq!(f.frobenius(f.tau(), 1), f.mul(f.tau(), f.tau()));
    }

    #[test]
    fn norm_fibers_partition() {
        for q in [2, 3, 4, 5] {
            let f = FieldCtx::new(q, None).unwrap();
            let mut seen = vec![false; f.size()];
            for a in f.base_elements().skip(1) {
                let sols = f.solve_norm_eq(a).unwrap();
                assert_eq!(sols.len(), f.norm_exponent());
                for s in sols {
                    assert!(!seen[s.index()]);
                    seen[s.index()] = true;
                }
            }
            assert_eq!(seen.iter().filter(|&&b| b).count(), f.mult_order());
        }
        let f = FieldCtx::new(3, None).unwrap();
        assert_eq!(f.solve_norm_eq(FqElem::ONE).unwrap().len(), 13);
        assert_eq!(f.solve_norm_eq(FqElem::ZERO), Err(FieldError::ZeroRightHandSide));
    }

    #[test]
    fn text_roundtrip() {
        let f = FieldCtx::new(3, None).unwrap();
        let x = f.parse("2,0,1").unwrap();
        assert_eq!(f.format(x), "2,0,1");
        assert!(f.parse("3,0,0").is_err());
        assert!(f.parse("1,0").is_err());
    }
}
