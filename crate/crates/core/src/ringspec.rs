//! Symbolic descriptions of the coefficient rings the groups are taken over:
//! unit-group generators, additive generators, canonical unit decompositions,
//! formal product expressions, toral pairs with their weights, and the
//! ring-class predicates the classifier consumes.
//!
//! A [`RingSpec`] records what is *known* about a ring — generators of its
//! unit group, a finite additive generating family `x_0 = 1, x_1, ...`
//! (elements are written `sum_l a_l v_l x_l` with integer `a_l` and units
//! `v_l`), which primes are invertible, the characteristic, and curated
//! finiteness facts (are parabolic subgroups finitely generated? is the
//! rank-one Borel group finitely presented?). Everything downstream is a
//! pure function of this data; nothing is derived from an actual ring
//! element type. The handful of named rings the toolkit ships
//! ([`RingSpec::z`], [`RingSpec::z_laurent`], [`RingSpec::fq_poly`],
//! [`RingSpec::fq_laurent`], [`RingSpec::os`]) carry their facts with
//! them; custom rings load from JSON.
//!
//! The *toral pair* machinery finds, for non-proportional roots `a`, `b`, a
//! one-parameter torus fixing `x_a` pointwise while scaling `x_b` by `u^n`,
//! and minimizes `|n|`; the worst case over all root pairs is the toral
//! constant `c` of the system, which sizes the bounded unit box used in the
//! canonical decomposition `v = w^{2k} u`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::poly::{Base, Poly, RingCtx, VarKind};
use crate::rootsys::{Family, Root, RootSystem, RootSystemType};
use crate::{Error, Result, TriBool};

/// One generator of the unit group; `order = None` means infinite order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGen {
    pub name: String,
    pub order: Option<u32>,
}

/// Which rational primes are invertible in the ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSet {
    Listed(BTreeSet<u64>),
    /// Every prime different from the characteristic (e.g. any algebra over
    /// a finite field).
    AllExceptChar,
    Unknown,
}

impl PrimeSet {
    pub fn contains(&self, p: u64, char_p: u32) -> TriBool {
        match self {
            PrimeSet::Listed(set) => {
                if set.contains(&p) {
                    TriBool::Yes
                } else {
                    TriBool::No
                }
            }
            PrimeSet::AllExceptChar => {
                if p == char_p as u64 {
                    TriBool::No
                } else {
                    TriBool::Yes
                }
            }
            PrimeSet::Unknown => TriBool::Unknown,
        }
    }
}

/// Curated finiteness facts about the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFlags {
    /// Are the parabolic subgroups of the Chevalley groups over this ring
    /// finitely generated?
    pub parabolics_fg: TriBool,
    /// Is the rank-one Borel group (one root subgroup extended by the
    /// torus) finitely presented over this ring?
    pub borel2_fp: TriBool,
    /// Are the general-linear factors of block-parabolic Levis finitely
    /// presented over this ring?
    #[serde(default = "TriBool::unknown")]
    pub levi_gl_blocks_fp: TriBool,
}

/// If the ring is a ring of S-integers in a global field, its shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticData {
    /// Characteristic of the global field (must match the ring's).
    pub global_field_char: u32,
    pub s_size: usize,
}

/// A stored entry of the base product table: the fixed expression for
/// `x_i^m * x_j^n` as a formal element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRule {
    pub i: usize,
    pub m: u32,
    pub j: usize,
    pub n: u32,
    pub value: FormalRingElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub name: String,
    pub unit_gens: Vec<UnitGen>,
    /// Additive generators; index 0 must be the ring element 1.
    pub additive_gens: Vec<String>,
    pub invertible_primes: PrimeSet,
    /// 0 or a prime.
    pub char_p: u32,
    pub flags: RingFlags,
    pub arithmetic: Option<ArithmeticData>,
    #[serde(default)]
    pub product_table: Vec<ProductRule>,
    /// For prime characteristic with a known multiplicative generator: the
    /// integer whose class generates the torsion unit subgroup (used to map
    /// integer constants to units).
    #[serde(default)]
    pub torsion_int_gen: Option<u32>,
}

/// A unit written as an exponent vector over the ring's unit generators;
/// torsion coordinates are kept reduced into `[0, order)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitElement {
    pub exps: Vec<i64>,
}

/// A unit times an additive generator — the argument alphabet of the
/// unipotent generators in the finite presentations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TildeElem {
    pub unit: UnitElement,
    pub x: usize,
}

/// One term `a * w^{2k} * u * x` of a formal ring element; `u` is confined
/// to the bounded unit box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrTerm {
    pub a: i64,
    pub w: UnitElement,
    pub k: i64,
    pub u: UnitElement,
    pub x: usize,
}

/// A sum of terms `sum_l a_l w_l^{2 k_l} u_l x_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalRingElement {
    pub terms: Vec<FrTerm>,
}

impl RingSpec {
    pub fn validate(&self) -> Result<()> {
        if self.additive_gens.first().map(String::as_str) != Some("1") {
            return Err(Error::InvalidInput(
                "additive generators must start with the element 1".into(),
            ));
        }
        if self.char_p != 0 && !crate::poly::is_prime(self.char_p) {
            return Err(Error::InvalidInput(format!(
                "characteristic must be 0 or prime, got {}",
                self.char_p
            )));
        }
        for g in &self.unit_gens {
            if let Some(o) = g.order {
                if o < 2 {
                    return Err(Error::InvalidInput(format!(
                        "torsion order of unit generator {} must be >= 2",
                        g.name
                    )));
                }
            }
        }
        if self.flags.borel2_fp == TriBool::Yes && self.flags.parabolics_fg == TriBool::No {
            return Err(Error::InvalidInput(
                "a finitely presented rank-one Borel contradicts non-finitely-generated parabolics"
                    .into(),
            ));
        }
        if let Some(arith) = &self.arithmetic {
            if arith.global_field_char != self.char_p {
                return Err(Error::InvalidInput(
                    "arithmetic data characteristic does not match the ring's".into(),
                ));
            }
            if arith.s_size == 0 {
                return Err(Error::InvalidInput("need at least one place".into()));
            }
        }
        Ok(())
    }

    /// The integers.
    pub fn z() -> Self {
        RingSpec {
            name: "Z".into(),
            unit_gens: vec![UnitGen { name: "-1".into(), order: Some(2) }],
            additive_gens: vec!["1".into()],
            invertible_primes: PrimeSet::Listed(BTreeSet::new()),
            char_p: 0,
            flags: RingFlags {
                parabolics_fg: TriBool::Yes,
                borel2_fp: TriBool::Yes,
                levi_gl_blocks_fp: TriBool::Yes,
            },
            arithmetic: Some(ArithmeticData { global_field_char: 0, s_size: 1 }),
            product_table: Vec::new(),
            torsion_int_gen: None,
        }
    }

    /// Integral Laurent polynomials `Z[t, 1/t]`. The rank-one Borel group
    /// over this ring is finitely generated but not finitely presented; the
    /// general-linear Levi blocks are finitely presented.
    pub fn z_laurent() -> Self {
        RingSpec {
            name: "Z_laurent".into(),
            unit_gens: vec![
                UnitGen { name: "-1".into(), order: Some(2) },
                UnitGen { name: "t".into(), order: None },
            ],
            additive_gens: vec!["1".into()],
            invertible_primes: PrimeSet::Listed(BTreeSet::new()),
            char_p: 0,
            flags: RingFlags {
                parabolics_fg: TriBool::Yes,
                borel2_fp: TriBool::No,
                levi_gl_blocks_fp: TriBool::Yes,
            },
            arithmetic: None,
            product_table: Vec::new(),
            torsion_int_gen: None,
        }
    }

    /// Polynomials over the field with `q` elements. Parabolic subgroups
    /// over this ring are not all finitely generated, so most of the
    /// presentation machinery refuses it early.
    pub fn fq_poly(q: u32) -> Result<Self> {
        let p = base_prime(q)?;
        Ok(RingSpec {
            name: format!("F{q}_poly"),
            unit_gens: torsion_units(q),
            additive_gens: vec!["1".into(), "t".into()],
            invertible_primes: PrimeSet::AllExceptChar,
            char_p: p,
            flags: RingFlags {
                parabolics_fg: TriBool::No,
                borel2_fp: TriBool::No,
                levi_gl_blocks_fp: TriBool::Unknown,
            },
            arithmetic: Some(ArithmeticData { global_field_char: p, s_size: 1 }),
            product_table: Vec::new(),
            torsion_int_gen: primitive_root(q),
        })
    }

    /// Laurent polynomials over the field with `q` elements — the
    /// S-arithmetic ring with two places in characteristic p.
    pub fn fq_laurent(q: u32) -> Result<Self> {
        let p = base_prime(q)?;
        let mut unit_gens = torsion_units(q);
        unit_gens.push(UnitGen { name: "t".into(), order: None });
        Ok(RingSpec {
            name: format!("F{q}_laurent"),
            unit_gens,
            additive_gens: vec!["1".into()],
            invertible_primes: PrimeSet::AllExceptChar,
            char_p: p,
            flags: RingFlags {
                parabolics_fg: TriBool::Yes,
                borel2_fp: TriBool::No,
                levi_gl_blocks_fp: TriBool::Unknown,
            },
            arithmetic: Some(ArithmeticData { global_field_char: p, s_size: 2 }),
            product_table: Vec::new(),
            torsion_int_gen: primitive_root(q),
        })
    }

    /// An abstract ring of S-integers known only through its characteristic
    /// and number of places. In characteristic zero the rank-one Borel is
    /// always finitely presented; in characteristic p it is finitely
    /// presented exactly when there are at least three places.
    pub fn os(char_p: u32, s_size: usize) -> Result<Self> {
        if char_p != 0 && !crate::poly::is_prime(char_p) {
            return Err(Error::InvalidInput(format!(
                "characteristic must be 0 or prime, got {char_p}"
            )));
        }
        if s_size == 0 {
            return Err(Error::InvalidInput("need at least one place".into()));
        }
        let flags = if char_p == 0 {
            RingFlags {
                parabolics_fg: TriBool::Yes,
                borel2_fp: TriBool::Yes,
                levi_gl_blocks_fp: TriBool::Unknown,
            }
        } else {
            RingFlags {
                parabolics_fg: if s_size >= 2 { TriBool::Yes } else { TriBool::Unknown },
                borel2_fp: if s_size >= 3 { TriBool::Yes } else { TriBool::No },
                levi_gl_blocks_fp: TriBool::Unknown,
            }
        };
        Ok(RingSpec {
            name: format!("OS_char{char_p}_S{s_size}"),
            unit_gens: vec![UnitGen { name: "-1".into(), order: Some(2) }],
            additive_gens: vec!["1".into()],
            invertible_primes: if char_p == 0 {
                PrimeSet::Unknown
            } else {
                PrimeSet::AllExceptChar
            },
            char_p,
            flags,
            arithmetic: Some(ArithmeticData { global_field_char: char_p, s_size }),
            product_table: Vec::new(),
            torsion_int_gen: None,
        })
    }

    /// Resolve a preset by name, with parameters where the preset needs
    /// them.
    pub fn preset(name: &str, q: Option<u32>, char_p: Option<u32>, s: Option<usize>) -> Result<Self> {
        match name {
            "Z" => Ok(RingSpec::z()),
            "Z_laurent" => Ok(RingSpec::z_laurent()),
            "Fq_poly" => RingSpec::fq_poly(q.ok_or_else(|| {
                Error::InvalidInput("Fq_poly needs --q".into())
            })?),
            "Fq_laurent" => RingSpec::fq_laurent(q.ok_or_else(|| {
                Error::InvalidInput("Fq_laurent needs --q".into())
            })?),
            "OS" => RingSpec::os(
                char_p.ok_or_else(|| Error::InvalidInput("OS needs --char".into()))?,
                s.ok_or_else(|| Error::InvalidInput("OS needs --S".into()))?,
            ),
            _ => Err(Error::UnsupportedRing(name.to_string())),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let ring: RingSpec = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("bad ring description: {e}")))?;
        ring.validate()?;
        Ok(ring)
    }

    // ---- unit arithmetic ----

    pub fn unit_identity(&self) -> UnitElement {
        UnitElement { exps: vec![0; self.unit_gens.len()] }
    }

    pub fn unit_from_gen(&self, i: usize) -> UnitElement {
        let mut u = self.unit_identity();
        u.exps[i] = 1;
        self.unit_canon(u)
    }

    fn unit_canon(&self, mut u: UnitElement) -> UnitElement {
        for (e, g) in u.exps.iter_mut().zip(&self.unit_gens) {
            if let Some(o) = g.order {
                *e = e.rem_euclid(o as i64);
            }
        }
        u
    }

    pub fn unit_mul(&self, a: &UnitElement, b: &UnitElement) -> UnitElement {
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        self.unit_canon(UnitElement { exps })
    }

    pub fn unit_pow(&self, a: &UnitElement, k: i64) -> UnitElement {
        let exps = a.exps.iter().map(|x| x * k).collect();
        self.unit_canon(UnitElement { exps })
    }

    pub fn unit_inv(&self, a: &UnitElement) -> UnitElement {
        self.unit_pow(a, -1)
    }

    /// Whether the unit lies in the box of exponent radius `c` (torsion
    /// coordinates measured cyclically).
    pub fn unit_in_box(&self, u: &UnitElement, c: i64) -> bool {
        u.exps.iter().zip(&self.unit_gens).all(|(&e, g)| match g.order {
            None => e.abs() <= c,
            Some(o) => e.min(o as i64 - e) <= c,
        })
    }

    /// Canonical decomposition `v = w^{2k} u` with `u` in the box of radius
    /// `c`: every free exponent splits by parity, `k` is the common factor
    /// of the halves, torsion goes wholly into `u` when it fits the box.
    pub fn unit_decompose(&self, v: &UnitElement, c: i64) -> (UnitElement, i64, UnitElement) {
        assert!(c >= 1, "box radius must be at least 1");
        let mut halves = vec![0i64; v.exps.len()];
        let mut u = vec![0i64; v.exps.len()];
        for (i, (&e, g)) in v.exps.iter().zip(&self.unit_gens).enumerate() {
            let fits = match g.order {
                None => false, // free exponents always split by parity
                Some(o) => e.min(o as i64 - e) <= c,
            };
            if fits {
                u[i] = e;
            } else {
                let k = e.div_euclid(2);
                halves[i] = k;
                u[i] = e - 2 * k;
            }
        }
        let k = halves.iter().fold(0i64, |acc, &h| gcd(acc, h.abs()));
        let w = if k == 0 {
            self.unit_identity()
        } else {
            UnitElement { exps: halves.iter().map(|h| h / k).collect() }
        };
        let u = self.unit_canon(UnitElement { exps: u });
        debug_assert!(self.unit_in_box(&u, c.max(1)), "remainder must fit the box");
        debug_assert_eq!(
            self.unit_mul(&self.unit_pow(&w, 2 * k), &u),
            self.unit_canon(v.clone()),
            "decomposition must recombine"
        );
        (w, k, u)
    }

    /// The class of an integer as a unit, when it is one: over
    /// characteristic zero only for `n = +-1`; in characteristic p via the
    /// recorded multiplicative generator.
    pub fn unit_from_int(&self, n: i64) -> Result<UnitElement> {
        if n == 1 {
            return Ok(self.unit_identity());
        }
        let sign_gen = self
            .unit_gens
            .iter()
            .position(|g| g.name == "-1" && g.order == Some(2));
        if n == -1 {
            if let Some(i) = sign_gen {
                let mut u = self.unit_identity();
                u.exps[i] = 1;
                return Ok(u);
            }
        }
        if self.char_p > 0 {
            let p = self.char_p as i64;
            let r = n.rem_euclid(p);
            if r == 0 {
                return Err(Error::NotAUnit(format!("{n} in characteristic {p}")));
            }
            if r == 1 {
                return Ok(self.unit_identity());
            }
            let g = self.torsion_int_gen.ok_or_else(|| {
                Error::RingIncomplete(format!(
                    "no multiplicative generator recorded for {}",
                    self.name
                ))
            })?;
            let gi = self
                .unit_gens
                .iter()
                .position(|u| u.order.is_some() && u.name != "-1")
                .ok_or_else(|| {
                    Error::RingIncomplete(format!("no torsion unit generator in {}", self.name))
                })?;
            let order = self.unit_gens[gi].order.unwrap() as i64;
            // discrete log of r in <g> mod p (orders here are tiny)
            let mut acc = 1i64;
            for e in 0..order {
                if acc == r {
                    let mut u = self.unit_identity();
                    u.exps[gi] = e;
                    return Ok(self.unit_canon(u));
                }
                acc = acc * g as i64 % p;
            }
            return Err(Error::NotAUnit(format!(
                "{n} is not a power of the recorded generator"
            )));
        }
        Err(Error::NotAUnit(format!("{n} over {}", self.name)))
    }

    pub fn unit_display(&self, u: &UnitElement) -> String {
        let mut parts = Vec::new();
        for (e, g) in u.exps.iter().zip(&self.unit_gens) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                k => parts.push(format!("{}^{}", g.name, k)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    // ---- formal elements ----

    pub fn formal_from_tilde(&self, t: &TildeElem, c: i64) -> FormalRingElement {
        let (w, k, u) = self.unit_decompose(&t.unit, c);
        FormalRingElement { terms: vec![FrTerm { a: 1, w, k, u, x: t.x }] }
    }

    pub fn formal_one(&self) -> FormalRingElement {
        FormalRingElement {
            terms: vec![FrTerm {
                a: 1,
                w: self.unit_identity(),
                k: 0,
                u: self.unit_identity(),
                x: 0,
            }],
        }
    }

    pub fn formal_add(&self, a: &FormalRingElement, b: &FormalRingElement) -> FormalRingElement {
        FormalRingElement { terms: a.terms.iter().chain(&b.terms).cloned().collect() }
    }

    pub fn formal_scale(&self, n: i64, a: &FormalRingElement) -> FormalRingElement {
        FormalRingElement {
            terms: a.terms.iter().map(|t| FrTerm { a: n * t.a, ..t.clone() }).collect(),
        }
    }

    /// Multiply every term by a unit and restore the canonical shape.
    pub fn formal_mul_unit(
        &self,
        v: &UnitElement,
        a: &FormalRingElement,
        c: i64,
    ) -> FormalRingElement {
        let terms = a
            .terms
            .iter()
            .map(|t| {
                let total = self.unit_mul(
                    v,
                    &self.unit_mul(&self.unit_pow(&t.w, 2 * t.k), &t.u),
                );
                let (w, k, u) = self.unit_decompose(&total, c);
                FrTerm { a: t.a, w, k, u, x: t.x }
            })
            .collect();
        FormalRingElement { terms }
    }

    /// The stored expression for `x_i^m * x_j^n`. The distinguished
    /// generator 1 gives closed forms; everything else must appear in the
    /// product table.
    pub fn base_product(&self, i: usize, m: u32, j: usize, n: u32) -> Result<FormalRingElement> {
        if i == 0 && j == 0 {
            return Ok(self.formal_one());
        }
        if i == 0 && n == 1 {
            let mut e = self.formal_one();
            e.terms[0].x = j;
            return Ok(e);
        }
        if j == 0 && m == 1 {
            let mut e = self.formal_one();
            e.terms[0].x = i;
            return Ok(e);
        }
        self.product_table
            .iter()
            .find(|r| (r.i, r.m, r.j, r.n) == (i, m, j, n))
            .map(|r| r.value.clone())
            .ok_or_else(|| {
                Error::RingIncomplete(format!(
                    "no product rule for x{i}^{m} * x{j}^{n} in {}",
                    self.name
                ))
            })
    }

    /// The fixed expression for `r^m * s^n`. Honest for single-term
    /// arguments at any powers (powers of a term are again a term) and for
    /// arbitrary arguments at `m = n = 1` (bilinear expansion); anything
    /// else is rejected, because powering a sum is not term-wise.
    pub fn product_expr(
        &self,
        r: &FormalRingElement,
        s: &FormalRingElement,
        m: u32,
        n: u32,
        c: i64,
    ) -> Result<FormalRingElement> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput("powers must be at least 1".into()));
        }
        if r.terms.len() == 1 && s.terms.len() == 1 {
            return self.product_single(&r.terms[0], &s.terms[0], m, n, c);
        }
        if m == 1 && n == 1 {
            let mut out = Vec::new();
            for tr in &r.terms {
                for ts in &s.terms {
                    out.extend(self.product_single(tr, ts, 1, 1, c)?.terms);
                }
            }
            return Ok(FormalRingElement { terms: out });
        }
        Err(Error::InvalidInput(
            "product of multi-term elements only at first powers".into(),
        ))
    }

    fn product_single(
        &self,
        tr: &FrTerm,
        ts: &FrTerm,
        m: u32,
        n: u32,
        c: i64,
    ) -> Result<FormalRingElement> {
        let base = self.base_product(tr.x, m, ts.x, n)?;
        let scalar = tr.a.pow(m) * ts.a.pow(n);
        let vu = |t: &FrTerm, e: u32| {
            self.unit_pow(
                &self.unit_mul(&self.unit_pow(&t.w, 2 * t.k), &t.u),
                e as i64,
            )
        };
        let v = self.unit_mul(&vu(tr, m), &vu(ts, n));
        Ok(self.formal_scale(scalar, &self.formal_mul_unit(&v, &base, c)))
    }

    pub fn formal_display(&self, e: &FormalRingElement) -> String {
        if e.terms.is_empty() {
            return "0".to_string();
        }
        e.terms
            .iter()
            .map(|t| {
                format!(
                    "{}*({})^2k{}*{}*{}",
                    t.a,
                    self.unit_display(&t.w),
                    t.k,
                    self.unit_display(&t.u),
                    self.additive_gens[t.x]
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn base_prime(q: u32) -> Result<u32> {
    if q < 2 {
        return Err(Error::InvalidInput(format!("field size must be >= 2, got {q}")));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    if !crate::poly::is_prime(p) {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    let mut m = q;
    while m % p == 0 {
        m /= p;
    }
    if m != 1 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    Ok(p)
}

/// Unit generators of the multiplicative group of the field with `q`
/// elements: a single cyclic generator of order `q - 1` (absent for q = 2).
fn torsion_units(q: u32) -> Vec<UnitGen> {
    if q == 2 {
        Vec::new()
    } else {
        vec![UnitGen { name: "g".into(), order: Some(q - 1) }]
    }
}

/// Smallest primitive root mod q for prime q; `None` for prime powers
/// (their generator is not an integer class).
fn primitive_root(q: u32) -> Option<u32> {
    if !crate::poly::is_prime(q) {
        return None;
    }
    if q == 2 {
        return None;
    }
    'outer: for g in 2..q {
        let mut acc = 1u64;
        for e in 1..q - 1 {
            acc = acc * g as u64 % q as u64;
            if acc == 1 && e < q - 2 {
                continue 'outer;
            }
        }
        acc = acc * g as u64 % q as u64;
        if acc == 1 {
            return Some(g);
        }
    }
    None
}

// ---- concrete model of a ring, for exact evaluation ----

/// An exact realization of a [`RingSpec`]: a polynomial context plus values
/// for every unit and additive generator. Only the named rings with prime
/// (not merely prime-power) residue fields are realizable.
#[derive(Debug, Clone)]
pub struct ModelRing {
    pub ctx: RingCtx,
    pub unit_vals: Vec<Poly>,
    pub add_vals: Vec<Poly>,
}

impl ModelRing {
    pub fn for_ring(ring: &RingSpec) -> Result<ModelRing> {
        let fail = || Error::VerificationUnavailable(format!("no exact model for {}", ring.name));
        if ring.name == "Z" {
            let ctx = RingCtx::new(Base::Int, &[]);
            return Ok(ModelRing {
                unit_vals: vec![ctx.int_elem(-1)],
                add_vals: vec![ctx.one()],
                ctx,
            });
        }
        if ring.name == "Z_laurent" {
            let ctx = RingCtx::new(Base::Int, &[("t", VarKind::Laurent)]);
            return Ok(ModelRing {
                unit_vals: vec![ctx.int_elem(-1), ctx.var(0)],
                add_vals: vec![ctx.one()],
                ctx,
            });
        }
        if let Some(q) = ring.name.strip_prefix('F') {
            let (q, laurent) = if let Some(q) = q.strip_suffix("_laurent") {
                (q, true)
            } else if let Some(q) = q.strip_suffix("_poly") {
                (q, false)
            } else {
                return Err(fail());
            };
            let q: u32 = q.parse().map_err(|_| fail())?;
            if !crate::poly::is_prime(q) {
                return Err(fail());
            }
            let kind = if laurent { VarKind::Laurent } else { VarKind::Ordinary };
            let ctx = RingCtx::new(Base::Mod(q), &[("t", kind)]);
            let mut unit_vals = Vec::new();
            if q > 2 {
                let g = ring.torsion_int_gen.ok_or_else(fail)?;
                unit_vals.push(ctx.int_elem(g as i64));
            }
            let mut add_vals = vec![ctx.one()];
            if laurent {
                unit_vals.push(ctx.var(0));
            } else {
                add_vals.push(ctx.var(0));
            }
            return Ok(ModelRing { ctx, unit_vals, add_vals });
        }
        Err(fail())
    }

    pub fn eval_unit(&self, u: &UnitElement) -> Result<Poly> {
        let mut acc = self.ctx.one();
        for (&e, v) in u.exps.iter().zip(&self.unit_vals) {
            if e != 0 {
                acc = self.ctx.mul(&acc, &self.ctx.pow_signed(v, e)?);
            }
        }
        Ok(acc)
    }

    pub fn eval_tilde(&self, t: &TildeElem) -> Result<Poly> {
        Ok(self.ctx.mul(&self.eval_unit(&t.unit)?, &self.add_vals[t.x]))
    }

    pub fn eval_formal(&self, e: &FormalRingElement) -> Result<Poly> {
        let mut acc = self.ctx.zero();
        for t in &e.terms {
            let w2k = self.ctx.pow_signed(&self.eval_unit(&t.w)?, 2 * t.k)?;
            let mut term = self.ctx.mul(&w2k, &self.eval_unit(&t.u)?);
            term = self.ctx.mul(&term, &self.add_vals[t.x]);
            acc = self.ctx.add(&acc, &self.ctx.scale(&term, t.a));
        }
        Ok(acc)
    }
}

// ---- enumeration of generator arguments ----

/// Deterministically enumerate the truncated argument alphabet: units with
/// exponents bounded by `exp_bound` times each additive generator, sorted by
/// (generator index, total exponent weight, exponent vector), truncated to
/// `max_total` entries.
pub fn tilde_elems(ring: &RingSpec, exp_bound: i64, max_total: usize) -> Vec<TildeElem> {
    let mut exp_ranges: Vec<Vec<i64>> = Vec::new();
    for g in &ring.unit_gens {
        let range = match g.order {
            None => (-exp_bound..=exp_bound).collect(),
            Some(o) => (0..(o as i64).min(2 * exp_bound + 1)).collect(),
        };
        exp_ranges.push(range);
    }
    let mut units = vec![Vec::new()];
    for range in &exp_ranges {
        let mut next = Vec::new();
        for partial in &units {
            for &e in range {
                let mut v: Vec<i64> = partial.clone();
                v.push(e);
                next.push(v);
            }
        }
        units = next;
    }
    let weight = |exps: &[i64]| -> i64 {
        exps.iter()
            .zip(&ring.unit_gens)
            .map(|(&e, g)| match g.order {
                None => e.abs(),
                Some(o) => e.min(o as i64 - e),
            })
            .sum()
    };
    let mut out: Vec<TildeElem> = Vec::new();
    for x in 0..ring.additive_gens.len() {
        for exps in &units {
            out.push(TildeElem {
                unit: UnitElement { exps: exps.clone() },
                x,
            });
        }
    }
    out.sort_by_key(|t| (t.x, weight(&t.unit.exps), t.unit.exps.clone()));
    out.truncate(max_total);
    out
}

// ---- ring-class predicates ----

/// Small-prime invertibility demanded by the doubled and tripled bonds:
/// nothing for simply-laced types, 2 for the doubled-bond families, 2 and 3
/// for `G2`. Returns `true` only when invertibility is certain.
pub fn nvb(ring: &RingSpec, t: RootSystemType) -> bool {
    let need: &[u64] = match t.family {
        Family::A | Family::D | Family::E => &[],
        Family::B | Family::C | Family::F => &[2],
        Family::G => &[2, 3],
    };
    need.iter()
        .all(|&p| ring.invertible_primes.contains(p, ring.char_p) == TriBool::Yes)
}

/// The combined niceness predicate: the small primes are invertible, or the
/// rank-one Borel group over the ring is finitely presented.
pub fn qg(ring: &RingSpec, t: RootSystemType) -> TriBool {
    if nvb(ring, t) {
        return TriBool::Yes;
    }
    ring.flags.borel2_fp
}

// ---- toral pairs ----

/// How the one-parameter torus for a root pair was built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToralTag {
    /// The pair is orthogonal; the torus of `b` itself fixes `x_a`.
    Orthogonal,
    /// A third root orthogonal to `a` but not to `b` supplies its torus.
    Bystander(Root),
    /// `h_b(u)^{-q} h_a(u)^p` with `2p = q (a,b)`.
    PQ { p: i64, q: i64 },
}

/// A one-parameter torus fixing `x_a` and scaling `x_b` by `u^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralPair {
    pub tag: ToralTag,
    pub n: i64,
}

impl ToralPair {
    /// The torus element as powers of root tori: `h(u) = prod h_r(u)^e`.
    pub fn h_factors(&self, rs: &RootSystem, a: &Root, b: &Root) -> Vec<(usize, i64)> {
        match &self.tag {
            ToralTag::Orthogonal => vec![(rs.id_of(b).unwrap(), 1)],
            ToralTag::Bystander(g) => vec![(rs.id_of(g).unwrap(), 1)],
            ToralTag::PQ { p, q } => {
                vec![(rs.id_of(b).unwrap(), -q), (rs.id_of(a).unwrap(), *p)]
            }
        }
    }
}

const PQ_BOUND: i64 = 12;

/// Best (smallest `|n|`) one-parameter torus fixing `x_a` and acting on
/// `x_b` with weight `n != 0`, among: the orthogonal construction, a
/// bystander root (rank at least 3), and the bounded `(p, q)` search.
pub fn toral_pair(rs: &RootSystem, a: &Root, b: &Root) -> Result<ToralPair> {
    if a == b || *a == b.neg() {
        return Err(Error::InvalidInput(
            "toral pair needs two non-proportional roots".into(),
        ));
    }
    let ab = rs.cartan_int(a, b)?;
    let ba = rs.cartan_int(b, a)?;
    let mut best: Option<ToralPair> = None;
    let mut consider = |cand: ToralPair| {
        debug_assert!(cand.n != 0);
        if best.as_ref().map(|b| cand.n.abs() < b.n.abs()).unwrap_or(true) {
            best = Some(cand);
        }
    };
    if ab == 0 {
        consider(ToralPair { tag: ToralTag::Orthogonal, n: 2 });
    }
    if rs.rank() >= 3 {
        for g in rs.roots() {
            if rs.cartan_int(a, g)? == 0 {
                let n = rs.cartan_int(b, g)?;
                if n != 0 {
                    consider(ToralPair { tag: ToralTag::Bystander(g.clone()), n });
                }
            }
        }
    }
    for p in -PQ_BOUND..=PQ_BOUND {
        for q in -PQ_BOUND..=PQ_BOUND {
            if (p, q) == (0, 0) || 2 * p - q * ab != 0 {
                continue;
            }
            let n = p * ba - 2 * q;
            if n != 0 {
                consider(ToralPair { tag: ToralTag::PQ { p, q }, n });
            }
        }
    }
    best.ok_or_else(|| {
        Error::InvalidInput(format!(
            "no toral pair found for {} and {}",
            a.display(),
            b.display()
        ))
    })
}

/// Worst-case toral weight over all ordered non-proportional root pairs;
/// rank one has no such pairs and is set to 2 by convention (the orthogonal
/// bound), used only to size unit boxes.
pub fn toral_constant(rs: &RootSystem) -> i64 {
    if rs.rank() == 1 {
        return 2;
    }
    let mut worst = 0;
    for a in rs.roots() {
        for b in rs.roots() {
            if a == b || *a == b.neg() {
                continue;
            }
            let n = toral_pair(rs, a, b).unwrap().n.abs();
            worst = worst.max(n);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevmodel::ChevalleyBasis;

    fn sys(name: &str) -> RootSystem {
        RootSystem::build(RootSystemType::parse(name).unwrap()).unwrap()
    }

    #[test]
    fn presets_validate() {
        for ring in [
            RingSpec::z(),
            RingSpec::z_laurent(),
            RingSpec::fq_poly(9).unwrap(),
            RingSpec::fq_laurent(5).unwrap(),
            RingSpec::os(0, 1).unwrap(),
            RingSpec::os(7, 3).unwrap(),
        ] {
            ring.validate().unwrap_or_else(|e| panic!("{}: {e}", ring.name));
        }
        assert!(RingSpec::fq_poly(6).is_err());
        assert!(RingSpec::os(4, 2).is_err());
        assert!(RingSpec::os(0, 0).is_err());
    }

    #[test]
    fn ring_spec_json_round_trip() {
        let ring = RingSpec::fq_laurent(5).unwrap();
        let s = serde_json::to_string(&ring).unwrap();
        let back = RingSpec::from_json(&s).unwrap();
        assert_eq!(ring, back);
    }

    #[test]
    fn unit_arithmetic_is_canonical() {
        let ring = RingSpec::fq_laurent(5).unwrap(); // gens: g (order 4), t
        let g = ring.unit_from_gen(0);
        let t = ring.unit_from_gen(1);
        let g5 = ring.unit_pow(&g, 5);
        assert_eq!(g5, g, "torsion reduces mod order");
        let gi = ring.unit_inv(&g);
        assert_eq!(ring.unit_mul(&g, &gi), ring.unit_identity());
        let ti = ring.unit_inv(&t);
        assert_eq!(ti.exps, vec![0, -1]);
        assert_eq!(ring.unit_mul(&t, &ti), ring.unit_identity());
    }

    #[test]
    fn unit_decompose_frozen_examples() {
        let ring = RingSpec::z_laurent(); // gens: -1 (order 2), t
        let one = ring.unit_identity();
        assert_eq!(ring.unit_decompose(&one, 2), (one.clone(), 0, one.clone()));

        // -t^5 = t^(2*2) * (-t)
        let v = UnitElement { exps: vec![1, 5] };
        let (w, k, u) = ring.unit_decompose(&v, 2);
        assert_eq!(w.exps, vec![0, 1]);
        assert_eq!(k, 2);
        assert_eq!(u.exps, vec![1, 1]);

        // t^2 = t^(2*1) * 1
        let v = UnitElement { exps: vec![0, 2] };
        let (w, k, u) = ring.unit_decompose(&v, 2);
        assert_eq!((w.exps, k, u.exps), (vec![0, 1], 1, vec![0, 0]));
    }

    #[test]
    fn unit_decompose_round_trips_over_a_box() {
        for ring in [RingSpec::z_laurent(), RingSpec::fq_laurent(5).unwrap()] {
            for e0 in 0..ring.unit_gens[0].order.unwrap() as i64 {
                for e1 in -7i64..=7 {
                    let v = UnitElement { exps: vec![e0, e1] };
                    let (w, k, u) = ring.unit_decompose(&v, 2);
                    assert!(k >= 0);
                    assert!(ring.unit_in_box(&u, 2));
                    assert_eq!(ring.unit_mul(&ring.unit_pow(&w, 2 * k), &u), v);
                }
            }
        }
    }

    #[test]
    fn integer_constants_map_to_units() {
        let z = RingSpec::z();
        assert_eq!(z.unit_from_int(1).unwrap(), z.unit_identity());
        assert_eq!(z.unit_from_int(-1).unwrap().exps, vec![1]);
        assert!(z.unit_from_int(2).is_err());

        let f5 = RingSpec::fq_laurent(5).unwrap();
        // 2 generates F_5^*: 2 -> g, 4 -> g^2, 3 -> g^3
        assert_eq!(f5.torsion_int_gen, Some(2));
        assert_eq!(f5.unit_from_int(2).unwrap().exps, vec![1, 0]);
        assert_eq!(f5.unit_from_int(4).unwrap().exps, vec![2, 0]);
        assert_eq!(f5.unit_from_int(3).unwrap().exps, vec![3, 0]);
        assert_eq!(f5.unit_from_int(6).unwrap(), f5.unit_identity());
        assert_eq!(f5.unit_from_int(-1).unwrap().exps, vec![2, 0]);
        assert!(f5.unit_from_int(5).is_err());
    }

    #[test]
    fn tilde_enumeration_is_deterministic_and_truncates() {
        let ring = RingSpec::z_laurent();
        let ts = tilde_elems(&ring, 3, 8);
        assert_eq!(ts.len(), 8);
        // first is the bare 1, then weight-1 units in exponent order
        assert_eq!(ts[0].unit, ring.unit_identity());
        assert_eq!(ts[1].unit.exps, vec![0, -1]); // 1/t
        assert_eq!(ts[2].unit.exps, vec![0, 1]); // t
        assert_eq!(ts[3].unit.exps, vec![1, 0]); // -1
        let again = tilde_elems(&ring, 3, 8);
        assert_eq!(ts, again);
        let all = tilde_elems(&ring, 3, usize::MAX);
        assert_eq!(all.len(), 14); // 2 sign values * 7 exponents
    }

    #[test]
    fn product_expr_on_laurent_monomials() {
        let ring = RingSpec::z_laurent();
        // r = -t^5, s = t^-2
        let r = ring.formal_from_tilde(
            &TildeElem { unit: UnitElement { exps: vec![1, 5] }, x: 0 },
            2,
        );
        let s = ring.formal_from_tilde(
            &TildeElem { unit: UnitElement { exps: vec![0, -2] }, x: 0 },
            2,
        );
        // r * s = -t^3 = t^2 * (-t)
        let p = ring.product_expr(&r, &s, 1, 1, 2).unwrap();
        assert_eq!(p.terms.len(), 1);
        let t0 = &p.terms[0];
        assert_eq!((t0.a, t0.k, t0.x), (1, 1, 0));
        assert_eq!(t0.w.exps, vec![0, 1]);
        assert_eq!(t0.u.exps, vec![1, 1]);
        // r^2 * s = t^8 = (t)^(2*4) * 1
        let p = ring.product_expr(&r, &s, 2, 1, 2).unwrap();
        let t0 = &p.terms[0];
        assert_eq!((t0.a, t0.k, t0.x), (1, 4, 0));
        assert_eq!(t0.w.exps, vec![0, 1]);
        assert_eq!(t0.u.exps, vec![0, 0]);
    }

    #[test]
    fn product_expr_is_bilinear_and_unit_equivariant_at_first_powers() {
        let ring = RingSpec::z_laurent();
        let te = |sign: i64, e: i64| {
            ring.formal_from_tilde(
                &TildeElem { unit: UnitElement { exps: vec![sign, e] }, x: 0 },
                2,
            )
        };
        let r0 = te(0, 1);
        let r1 = te(1, -2);
        let s = te(0, 3);
        let sum = ring.formal_add(&r0, &r1);
        let lhs = ring.product_expr(&sum, &s, 1, 1, 2).unwrap();
        let rhs = ring.formal_add(
            &ring.product_expr(&r0, &s, 1, 1, 2).unwrap(),
            &ring.product_expr(&r1, &s, 1, 1, 2).unwrap(),
        );
        assert_eq!(lhs, rhs);

        let v = UnitElement { exps: vec![1, 4] };
        let lhs = ring.formal_mul_unit(&v, &ring.product_expr(&r0, &s, 1, 1, 2).unwrap(), 2);
        let rhs = ring
            .product_expr(&ring.formal_mul_unit(&v, &r0, 2), &s, 1, 1, 2)
            .unwrap();
        assert_eq!(lhs, rhs);

        // multi-term at higher powers is refused
        assert!(ring.product_expr(&sum, &s, 2, 1, 2).is_err());
    }

    #[test]
    fn product_expr_matches_model_evaluation() {
        for ring in [RingSpec::z_laurent(), RingSpec::fq_laurent(5).unwrap()] {
            let model = ModelRing::for_ring(&ring).unwrap();
            let elems = tilde_elems(&ring, 2, 10);
            for r in &elems {
                for s in &elems {
                    let fr = ring.formal_from_tilde(r, 2);
                    let fs = ring.formal_from_tilde(s, 2);
                    for (m, n) in [(1u32, 1u32), (2, 1), (1, 3), (2, 2)] {
                        let p = ring.product_expr(&fr, &fs, m, n, 2).unwrap();
                        let lhs = model.eval_formal(&p).unwrap();
                        let rv = model.eval_tilde(r).unwrap();
                        let sv = model.eval_tilde(s).unwrap();
                        let rhs = model
                            .ctx
                            .mul(&model.ctx.pow(&rv, m), &model.ctx.pow(&sv, n));
                        assert_eq!(lhs, rhs, "{}", ring.name);
                    }
                }
            }
        }
    }

    #[test]
    fn missing_product_rules_are_reported() {
        let ring = RingSpec::fq_poly(5).unwrap(); // additive gens {1, t}
        let t_elem = TildeElem { unit: ring.unit_identity(), x: 1 };
        let ft = ring.formal_from_tilde(&t_elem, 2);
        // t * t has no stored rule
        let err = ring.product_expr(&ft, &ft, 1, 1, 2).unwrap_err();
        assert!(matches!(err, Error::RingIncomplete(_)));
        // 1 * t does
        let one = ring.formal_one();
        assert_eq!(ring.product_expr(&one, &ft, 3, 1, 2).unwrap(), ft);
    }

    #[test]
    fn nvb_and_qg_tables() {
        let a2 = RootSystemType::parse("A2").unwrap();
        let b2 = RootSystemType::parse("B2").unwrap();
        let g2 = RootSystemType::parse("G2").unwrap();
        assert!(nvb(&RingSpec::z(), a2));
        assert!(!nvb(&RingSpec::z(), b2));
        assert!(nvb(&RingSpec::fq_laurent(5).unwrap(), g2));
        assert!(!nvb(&RingSpec::fq_laurent(2).unwrap(), b2));
        assert!(!nvb(&RingSpec::fq_laurent(3).unwrap(), g2));

        assert_eq!(qg(&RingSpec::z_laurent(), a2), TriBool::Yes); // vacuous
        assert_eq!(qg(&RingSpec::z_laurent(), b2), TriBool::No); // 2 not invertible, borel2 no
        assert_eq!(qg(&RingSpec::os(0, 1).unwrap(), b2), TriBool::Yes); // borel2 yes
        let mut custom = RingSpec::z();
        custom.flags.borel2_fp = TriBool::Unknown;
        assert_eq!(qg(&custom, b2), TriBool::Unknown);
        assert_eq!(qg(&custom, a2), TriBool::Yes);
    }

    #[test]
    fn toral_pairs_satisfy_their_equations() {
        for name in ["A2", "A3", "B2", "G2"] {
            let rs = sys(name);
            for a in rs.roots() {
                for b in rs.roots() {
                    if a == b || *a == b.neg() {
                        continue;
                    }
                    let tp = toral_pair(&rs, a, b).unwrap();
                    assert_ne!(tp.n, 0, "{name}");
                    match &tp.tag {
                        ToralTag::Orthogonal => {
                            assert_eq!(rs.cartan_int(a, b).unwrap(), 0, "{name}");
                            assert_eq!(tp.n, 2);
                        }
                        ToralTag::Bystander(g) => {
                            assert_eq!(rs.cartan_int(a, g).unwrap(), 0, "{name}");
                            assert_eq!(tp.n, rs.cartan_int(b, g).unwrap(), "{name}");
                        }
                        ToralTag::PQ { p, q } => {
                            let ab = rs.cartan_int(a, b).unwrap();
                            let ba = rs.cartan_int(b, a).unwrap();
                            assert_eq!(2 * p - q * ab, 0, "{name}");
                            assert_eq!(tp.n, p * ba - 2 * q, "{name}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn toral_minima_frozen_values() {
        // adjacent simples in A2: no orthogonal roots, no bystanders, best
        // (p, q) weight is 3
        let rs = sys("A2");
        let tp = toral_pair(&rs, &Root::simple(2, 0), &Root::simple(2, 1)).unwrap();
        assert!(matches!(tp.tag, ToralTag::PQ { .. }));
        assert_eq!(tp.n.abs(), 3);

        // rank 3: a bystander gives weight 1 for adjacent simples
        let rs = sys("A3");
        let tp = toral_pair(&rs, &Root::simple(3, 0), &Root::simple(3, 1)).unwrap();
        match &tp.tag {
            ToralTag::Bystander(g) => {
                assert_eq!(rs.cartan_int(&Root::simple(3, 0), g).unwrap(), 0);
            }
            other => panic!("expected bystander, got {other:?}"),
        }
        assert_eq!(tp.n.abs(), 1);

        assert_eq!(toral_constant(&sys("A2")), 3);
        assert_eq!(toral_constant(&sys("A3")), 2);
        assert_eq!(toral_constant(&sys("B2")), 2);
        assert_eq!(toral_constant(&sys("G2")), 3);
        assert_eq!(toral_constant(&sys("A1")), 2);
    }

    #[test]
    fn toral_pairs_verify_in_the_adjoint_model() {
        for name in ["A3", "B2"] {
            let cb = ChevalleyBasis::new(sys(name));
            let rs = cb.rs();
            let ctx = RingCtx::new(
                Base::Int,
                &[
                    ("u", VarKind::Laurent),
                    ("r", VarKind::Ordinary),
                    ("s", VarKind::Ordinary),
                ],
            );
            let u = ctx.var(0);
            let (r, s) = (ctx.var(1), ctx.var(2));
            for a in rs.roots() {
                for b in rs.roots() {
                    if a == b || *a == b.neg() {
                        continue;
                    }
                    let tp = toral_pair(rs, a, b).unwrap();
                    let mut h = crate::matrix::Mat::identity(&ctx, cb.dim());
                    let mut hinv = crate::matrix::Mat::identity(&ctx, cb.dim());
                    for (rid, e) in tp.h_factors(rs, a, b) {
                        let ue = ctx.pow_signed(&u, e).unwrap();
                        h = h.mul(&ctx, &cb.h_adj(&ctx, rid, &ue).unwrap());
                        let uei = ctx.pow_signed(&u, -e).unwrap();
                        hinv = hinv.mul(&ctx, &cb.h_adj(&ctx, rid, &uei).unwrap());
                    }
                    let aid = rs.id_of(a).unwrap();
                    let bid = rs.id_of(b).unwrap();
                    // h fixes x_a
                    let xa = cb.x_adj(&ctx, aid, &r);
                    assert_eq!(h.mul(&ctx, &xa).mul(&ctx, &hinv), xa, "{name}");
                    // h scales x_b by u^n
                    let xb = cb.x_adj(&ctx, bid, &s);
                    let scaled = ctx.mul(&ctx.pow_signed(&u, tp.n).unwrap(), &s);
                    assert_eq!(
                        h.mul(&ctx, &xb).mul(&ctx, &hinv),
                        cb.x_adj(&ctx, bid, &scaled),
                        "{name}"
                    );
                }
            }
        }
    }
}
