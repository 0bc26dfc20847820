//! Exact sparse multivariate polynomial arithmetic over `Z` and `F_p`.
//!
//! A [`RingCtx`] fixes the coefficient base and an ordered list of named
//! indeterminates, each either *Laurent* (invertible, exponents may be
//! negative) or *ordinary* (exponents must stay nonnegative). Elements are
//! kept in a canonical normal form — monomials sorted by exponent vector,
//! no zero coefficients, `F_p` coefficients reduced to `[1, p)` — so that
//! structural equality is ring equality.
//!
//! Only the operations the rest of the crate needs are provided: ring
//! arithmetic, unit recognition/inversion, signed powers of units, and exact
//! division by integer scalars. There is deliberately no general division.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// Coefficient base ring: the integers or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Base {
    Int,
    /// `F_p` for a prime `p`.
    Mod(u32),
}

/// Whether an indeterminate is invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Laurent,
    Ordinary,
}

/// A fixed polynomial ring: base plus ordered named indeterminates.
#[derive(Debug, Clone)]
pub struct RingCtx {
    base: Base,
    names: Vec<String>,
    kinds: Vec<VarKind>,
}

/// A sparse polynomial in canonical form. Only meaningful relative to the
/// [`RingCtx`] it was built with; all operations go through the context.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<i32>, i64>,
}

impl RingCtx {
    pub fn new(base: Base, vars: &[(&str, VarKind)]) -> Self {
        if let Base::Mod(p) = base {
            assert!(p >= 2 && is_prime(p), "modulus must be prime, got {p}");
        }
        RingCtx {
            base,
            names: vars.iter().map(|(n, _)| n.to_string()).collect(),
            kinds: vars.iter().map(|&(_, k)| k).collect(),
        }
    }

    /// The integers, no indeterminates.
    pub fn int() -> Self {
        RingCtx::new(Base::Int, &[])
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn red(&self, c: i64) -> i64 {
        match self.base {
            Base::Int => c,
            Base::Mod(p) => c.rem_euclid(p as i64),
        }
    }

    pub fn zero(&self) -> Poly {
        Poly::default()
    }

    pub fn one(&self) -> Poly {
        self.int_elem(1)
    }

    pub fn int_elem(&self, c: i64) -> Poly {
        self.monomial(c, &vec![0; self.nvars()])
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(1, &e)
    }

    pub fn monomial(&self, c: i64, exps: &[i32]) -> Poly {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length mismatch");
        for (x, k) in exps.iter().zip(&self.kinds) {
            assert!(*k == VarKind::Laurent || *x >= 0, "negative exponent on ordinary variable");
        }
        let c = self.red(c);
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exps.to_vec(), c);
        }
        Poly { terms }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut terms = a.terms.clone();
        for (e, c) in &b.terms {
            let v = terms.entry(e.clone()).or_insert(0);
            *v = self.red(*v + *c);
            if *v == 0 {
                terms.remove(e);
            }
        }
        Poly { terms }
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        let terms = a.terms.iter().map(|(e, c)| (e.clone(), self.red(-*c))).collect();
        Poly { terms }
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut terms: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let v = terms.entry(e).or_insert(0);
                *v = self.red(*v + ca * cb);
            }
        }
        terms.retain(|_, c| *c != 0);
        Poly { terms }
    }

    pub fn scale(&self, a: &Poly, c: i64) -> Poly {
        let mut terms: BTreeMap<Vec<i32>, i64> = BTreeMap::new();
        for (e, x) in &a.terms {
            let v = self.red(x * c);
            if v != 0 {
                terms.insert(e.clone(), v);
            }
        }
        Poly { terms }
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `a^k` for possibly negative `k`; negative powers require `a` a unit.
    pub fn pow_signed(&self, a: &Poly, k: i64) -> Result<Poly> {
        if k >= 0 {
            Ok(self.pow(a, k as u32))
        } else {
            let inv = self.unit_inv(a)?;
            Ok(self.pow(&inv, (-k) as u32))
        }
    }

    /// Units are single monomials with unit coefficient and no ordinary
    /// indeterminates.
    pub fn is_unit(&self, a: &Poly) -> bool {
        if a.terms.len() != 1 {
            return false;
        }
        let (e, c) = a.terms.iter().next().unwrap();
        let coeff_ok = match self.base {
            Base::Int => *c == 1 || *c == -1,
            Base::Mod(_) => *c != 0,
        };
        coeff_ok
            && e.iter()
                .zip(&self.kinds)
                .all(|(x, k)| *k == VarKind::Laurent || *x == 0)
    }

    pub fn unit_inv(&self, a: &Poly) -> Result<Poly> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit(self.display(a)));
        }
        let (e, c) = a.terms.iter().next().unwrap();
        let cinv = match self.base {
            Base::Int => *c, // +-1 is its own inverse
            Base::Mod(p) => mod_inverse(*c, p as i64),
        };
        let einv: Vec<i32> = e.iter().map(|x| -x).collect();
        Ok(self.monomial(cinv, &einv))
    }

    /// Exact division of every coefficient by the integer `d`.
    /// Over `F_p` this is multiplication by `d^{-1}` and fails when `p | d`
    /// (unless the polynomial is zero).
    pub fn div_int(&self, a: &Poly, d: i64) -> Option<Poly> {
        assert!(d != 0, "division by zero");
        match self.base {
            Base::Int => {
                let mut terms = BTreeMap::new();
                for (e, c) in &a.terms {
                    if c % d != 0 {
                        return None;
                    }
                    terms.insert(e.clone(), c / d);
                }
                Some(Poly { terms })
            }
            Base::Mod(p) => {
                let dm = d.rem_euclid(p as i64);
                if dm == 0 {
                    return if a.is_zero() { Some(self.zero()) } else { None };
                }
                Some(self.scale(a, mod_inverse(dm, p as i64)))
            }
        }
    }

    pub fn display(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in a.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (j, x) in e.iter().enumerate() {
                match *x {
                    0 => {}
                    1 => factors.push(self.names[j].clone()),
                    k => factors.push(format!("{}^{}", self.names[j], k)),
                }
            }
            let lead = if factors.is_empty() {
                format!("{c}")
            } else if *c == 1 {
                factors.join("*")
            } else if *c == -1 {
                format!("-{}", factors.join("*"))
            } else {
                format!("{c}*{}", factors.join("*"))
            };
            if i == 0 {
                out.push_str(&lead);
            } else if let Some(rest) = lead.strip_prefix('-') {
                let _ = write!(out, " - {rest}");
            } else {
                let _ = write!(out, " + {lead}");
            }
        }
        out
    }
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| *c == 1 && e.iter().all(|x| *x == 0))
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the given exponent vector (0 if absent).
    pub fn coeff(&self, exps: &[i32]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `c` modulo prime `p` (`c` not divisible by `p`).
fn mod_inverse(c: i64, p: i64) -> i64 {
    // Fermat: c^(p-2) mod p.
    let mut base = c.rem_euclid(p);
    assert!(base != 0, "no inverse of 0 mod {p}");
    let mut exp = p - 2;
    let mut acc = 1i64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
