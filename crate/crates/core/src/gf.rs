//! Exact arithmetic in GF(p^k) for small prime powers (q <= 2^16).
//!
//! Elements are integers in `0..q` encoding coefficient vectors base p,
//! constant term first. Extension fields reduce modulo a monic irreducible
//! polynomial, validated at construction by trial division.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest admissible field cardinality.
pub const MAX_Q: u64 = 1 << 16;

/// Threshold under which a full multiplication table is precomputed.
const MUL_TABLE_Q: u32 = 256;

struct FieldRepr {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, ascending coefficients, length k+1. Empty when k = 1.
    modulus: Vec<u32>,
    mul_table: OnceLock<Vec<u32>>,
    inv_table: OnceLock<Vec<u32>>,
}

/// A finite field GF(p^k). Cheap to clone, immutable, thread-safe.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Irreducible monic polynomials for the supported built-in extensions,
/// ascending coefficients.
fn builtin_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        (2, 2) => Some(vec![1, 1, 1]),          // x^2 + x + 1
        (2, 3) => Some(vec![1, 1, 0, 1]),       // x^3 + x + 1
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),    // x^4 + x + 1
        (2, 5) => Some(vec![1, 0, 1, 0, 0, 1]), // x^5 + x^2 + 1
        (3, 2) => Some(vec![2, 1, 1]),          // x^2 + x + 2
        (3, 3) => Some(vec![1, 2, 0, 1]),       // x^3 + 2x + 1
        (5, 2) => Some(vec![2, 1, 1]),          // x^2 + x + 2
        _ => None,
    }
}

/// Polynomials over GF(p) as ascending coefficient vectors with no
/// leading zeros (the zero polynomial is the empty vector).
pub(crate) mod poly {
    pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] += ai as u64 * bj as u64;
            }
        }
        trim(out.into_iter().map(|c| (c % p as u64) as u32).collect())
    }

    /// Remainder of a by the monic divisor d.
    pub fn rem(a: &[u32], d: &[u32], p: u32) -> Vec<u32> {
        debug_assert_eq!(*d.last().unwrap(), 1, "divisor must be monic");
        let mut r: Vec<u32> = a.to_vec();
        let deg_d = d.len() - 1;
        while r.len() > deg_d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - deg_d;
            if lead != 0 {
                for (j, &dj) in d.iter().enumerate() {
                    let sub = (lead as u64 * dj as u64) % p as u64;
                    let cur = r[shift + j] as u64;
                    r[shift + j] = ((cur + p as u64 * p as u64 - sub) % p as u64) as u32;
                }
            }
            debug_assert_eq!(*r.last().unwrap(), 0);
            r.pop();
        }
        trim(r)
    }
}

/// Enumerate all monic polynomials of the given degree over GF(p), by
/// ascending encoded value of their lower coefficients.
pub(crate) fn monic_polys(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree as u32);
    (0..count).map(move |mut v| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push((v % p as u64) as u32);
            v /= p as u64;
        }
        coeffs.push(1);
        coeffs
    })
}

/// Trial division against all monic polynomials of degree 1..=k/2.
pub(crate) fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        for divisor in monic_polys(p, d) {
            if poly::rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Construct GF(p^k). For k > 1 the modulus may be omitted when a
    /// built-in irreducible polynomial exists for (p, k).
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::UnsupportedField(
                "extension degree must be >= 1".into(),
            ));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.saturating_mul(p);
            if q > MAX_Q {
                return Err(Error::FieldTooLarge(q));
            }
        }
        let p = p as u32;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            let m = match modulus {
                Some(m) => m.to_vec(),
                None => builtin_modulus(p, k).ok_or_else(|| {
                    Error::UnsupportedField(format!(
                        "no built-in modulus for GF({p}^{k}); supply one explicitly"
                    ))
                })?,
            };
            if m.len() != k as usize + 1 {
                return Err(Error::ReducibleModulus(format!(
                    "modulus must have k+1 = {} coefficients, got {}",
                    k + 1,
                    m.len()
                )));
            }
            if m[k as usize] != 1 {
                return Err(Error::ReducibleModulus("modulus is not monic".into()));
            }
            if m.iter().any(|&c| c >= p) {
                return Err(Error::ReducibleModulus(format!(
                    "modulus coefficients must lie in 0..{p}"
                )));
            }
            if !is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus(format!(
                    "polynomial is reducible over GF({p})"
                )));
            }
            m
        };
        Ok(Field(Arc::new(FieldRepr {
            p,
            k,
            q: q as u32,
            modulus,
            mul_table: OnceLock::new(),
            inv_table: OnceLock::new(),
        })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    /// Field cardinality q = p^k.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Ascending modulus coefficients; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// All elements 0, 1, ..., q-1 in increasing encoded order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.0.q
    }

    fn check(&self, a: u32) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "{a} is not an element of {self}"
            )))
        }
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.k as usize);
        for _ in 0..self.0.k {
            out.push(v % self.0.p);
            v /= self.0.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.0.p + d;
        }
        v
    }

    /// Addition. Panics on out-of-range operands in debug builds.
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(self.contains(a) && self.contains(b));
        let r = &self.0;
        if r.p == 2 {
            return a ^ b;
        }
        if r.k == 1 {
            return (a + b) % r.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % r.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(self.contains(a));
        let r = &self.0;
        if r.p == 2 {
            return a;
        }
        if r.k == 1 {
            return (r.p - a) % r.p;
        }
        let da = self.digits(a);
        let neg: Vec<u32> = da.iter().map(|&x| (r.p - x) % r.p).collect();
        self.encode(&neg)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let r = &self.0;
        if r.k == 1 {
            return ((a as u64 * b as u64) % r.p as u64) as u32;
        }
        let prod = poly::mul(
            &poly::trim(self.digits(a)),
            &poly::trim(self.digits(b)),
            r.p,
        );
        let red = poly::rem(&prod, &r.modulus, r.p);
        let mut digits = red;
        digits.resize(r.k as usize, 0);
        self.encode(&digits)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(self.contains(a) && self.contains(b));
        let r = &self.0;
        if r.q <= MUL_TABLE_Q {
            let table = r.mul_table.get_or_init(|| {
                let q = r.q as usize;
                let mut t = vec![0u32; q * q];
                for x in 0..r.q {
                    for y in 0..=x {
                        let v = self.mul_raw(x, y);
                        t[(x as usize) * q + y as usize] = v;
                        t[(y as usize) * q + x as usize] = v;
                    }
                }
                t
            });
            return table[(a as usize) * r.q as usize + b as usize];
        }
        self.mul_raw(a, b)
    }

    /// a^e by square-and-multiply; 0^0 = 1.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        debug_assert!(self.contains(a));
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let r = &self.0;
        let table = r.inv_table.get_or_init(|| {
            let mut t = vec![0u32; r.q as usize];
            for x in 1..r.q {
                t[x as usize] = self.pow(x, r.q as u64 - 2);
            }
            t
        });
        Ok(table[a as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        self.check(a)?;
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Validated arithmetic entry point used by the CLI and bindings.
    pub fn arith(&self, op: &str, a: u32, b: Option<u32>) -> Result<u32> {
        self.check(a)?;
        let need_b = |b: Option<u32>| -> Result<u32> {
            let b = b.ok_or_else(|| {
                Error::InvalidInput(format!("operation '{op}' needs a second operand"))
            })?;
            self.check(b)?;
            Ok(b)
        };
        match op {
            "add" => Ok(self.add(a, need_b(b)?)),
            "sub" => Ok(self.sub(a, need_b(b)?)),
            "mul" => Ok(self.mul(a, need_b(b)?)),
            "div" => self.div(a, need_b(b)?),
            "neg" => Ok(self.neg(a)),
            "inv" => self.inv(a),
            "pow" => {
                let e = b.ok_or_else(|| {
                    Error::InvalidInput("operation 'pow' needs an exponent".into())
                })?;
                Ok(self.pow(a, e as u64))
            }
            other => Err(Error::InvalidInput(format!(
                "unknown field operation '{other}'"
            ))),
        }
    }
}
