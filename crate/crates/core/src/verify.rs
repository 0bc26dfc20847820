//! Exact model checks for generated presentations.
//!
//! Words over the presentation alphabet are evaluated as matrices with
//! polynomial entries, either in the adjoint representation or (for type A)
//! in the defining representation of the special linear group. On top of the
//! evaluator sit three checks:
//!
//! * every relator of a [`Presentation`](crate::presgen::Presentation)
//!   multiplies out to the identity matrix;
//! * the parabolic subgroup retracts onto its Levi-extension part: Levi-side
//!   conjugation preserves the kernel subgroup (established by a graded
//!   normal-form peel), and the level-diagonal projection is multiplicative
//!   on sampled products;
//! * the kernel subgroup is filtered by the grading level: commutators of
//!   generators at levels `j1` and `j2` peel into factors at level
//!   `>= j1 + j2`, so the successive quotients are abelian.
//!
//! All checks are exact; randomness only selects which instances of a check
//! to run, via a seeded ChaCha8 generator.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chevmodel::{ChevalleyBasis, SlnModel};
use crate::matrix::Mat;
use crate::parab::{ParabolicProfile, ParabolicSpec};
use crate::poly::{Poly, RingCtx};
use crate::presgen::Presentation;
use crate::ringspec::{tilde_elems, ModelRing, RingSpec, TildeElem};
use crate::word::{GenSymbol, Word};
use crate::{Error, Result};

/// Which faithful matrix model evaluates the words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Adjoint representation on the Chevalley basis (every type).
    Adjoint,
    /// Defining representation of `SL_{l+1}` (type A only).
    Sln,
}

impl ModelKind {
    fn name(self) -> &'static str {
        match self {
            ModelKind::Adjoint => "adjoint",
            ModelKind::Sln => "sln",
        }
    }
}

/// Evaluates presentation words as exact matrices over a model ring.
///
/// Letter matrices are cached by `(symbol, exponent)`, so repeated letters
/// across a large relator set are computed once.
pub struct Evaluator<'a> {
    cb: &'a ChevalleyBasis,
    model: ModelRing,
    sln: Option<SlnModel>,
    cache: HashMap<(GenSymbol, i64), Mat>,
}

impl<'a> Evaluator<'a> {
    pub fn new(cb: &'a ChevalleyBasis, ring: &RingSpec, kind: ModelKind) -> Result<Self> {
        let model = ModelRing::for_ring(ring)?;
        let sln = match kind {
            ModelKind::Adjoint => None,
            ModelKind::Sln => Some(SlnModel::new(cb)?),
        };
        Ok(Evaluator { cb, model, sln, cache: HashMap::new() })
    }

    pub fn basis(&self) -> &ChevalleyBasis {
        self.cb
    }

    pub fn model(&self) -> &ModelRing {
        &self.model
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.model.ctx
    }

    pub fn dim(&self) -> usize {
        match &self.sln {
            Some(s) => s.dim(),
            None => self.cb.dim(),
        }
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(&self.model.ctx, self.dim())
    }

    /// Matrix of the root element `x_root(f)` in the active model.
    pub fn x_elem(&self, root: usize, f: &Poly) -> Mat {
        match &self.sln {
            Some(s) => s.x_mat(self.cb.rs(), &self.model.ctx, root, f),
            None => self.cb.x_adj(&self.model.ctx, root, f),
        }
    }

    /// Matrix of the torus element `h_root(u)`; `u` must be a unit.
    pub fn h_elem(&self, root: usize, u: &Poly) -> Result<Mat> {
        match &self.sln {
            Some(s) => s.h_mat(self.cb.rs(), &self.model.ctx, root, u),
            None => self.cb.h_adj(&self.model.ctx, root, u),
        }
    }

    fn letter(&mut self, sym: &GenSymbol, exp: i64) -> Result<Mat> {
        let key = (sym.clone(), exp);
        if let Some(m) = self.cache.get(&key) {
            return Ok(m.clone());
        }
        let mat = match sym {
            GenSymbol::X { root, arg } | GenSymbol::XTilde { root, arg } => {
                // x(f)^e = x(e*f)
                let f = self.model.eval_tilde(arg)?;
                let f = self.model.ctx.scale(&f, exp);
                self.x_elem(*root, &f)
            }
            GenSymbol::H { simple, unit_gen } => {
                let v = self
                    .model
                    .unit_vals
                    .get(*unit_gen)
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("no unit generator with index {unit_gen}"))
                    })?
                    .clone();
                // h(v)^e = h(v^e)
                let u = self.model.ctx.pow_signed(&v, exp)?;
                self.h_elem(self.cb.rs().simple_id(*simple), &u)?
            }
        };
        self.cache.insert(key, mat.clone());
        Ok(mat)
    }

    /// Evaluate a word letter by letter; the result is exact.
    pub fn eval_word(&mut self, w: &Word) -> Result<Mat> {
        let mut acc = self.identity();
        for (sym, exp) in w.letters() {
            let m = self.letter(sym, *exp)?;
            acc = acc.mul(&self.model.ctx, &m);
        }
        Ok(acc)
    }

    /// Greedy graded factorization of `m` over the kernel roots of a
    /// parabolic profile, in (level, height, id) order.
    ///
    /// For each kernel root `g` in order, the candidate leading coefficient
    /// is read off the torus rows of the column indexed by the opposite
    /// basis vector, divided exactly by a nonzero coroot coefficient, and
    /// stripped by a left multiplication. The input lies in the kernel
    /// subgroup exactly when the final remainder is the identity.
    pub fn peel(&mut self, profile: &ParabolicProfile, m: &Mat) -> Result<Peeled> {
        if self.sln.is_some() {
            return Err(Error::InvalidInput(
                "graded peeling is defined in the adjoint model".into(),
            ));
        }
        let rs = self.cb.rs();
        let mut order: Vec<usize> = profile.kernel_roots.clone();
        order.sort_by_key(|&id| {
            let r = &rs.roots()[id];
            (profile.alvl(r), r.height(), id)
        });
        let mut rem = m.clone();
        let mut factors = Vec::new();
        for &gid in &order {
            let col = self.cb.x_index(rs.neg_id(gid));
            let coroot = rs.coroot_coeffs(gid);
            let i0 = coroot
                .iter()
                .position(|&c| c != 0)
                .expect("coroot of a root has a nonzero coefficient");
            let entry = rem.get(self.cb.h_index(i0), col).clone();
            let c = match self.model.ctx.div_int(&entry, coroot[i0]) {
                Some(c) => c,
                // leave the obstruction in the remainder
                None => continue,
            };
            if c.is_zero() {
                continue;
            }
            let level = profile.alvl(&rs.roots()[gid]);
            let inv = self.x_elem(gid, &self.model.ctx.neg(&c));
            rem = inv.mul(&self.model.ctx, &rem);
            factors.push(PeelFactor { root: gid, coeff: c, level });
        }
        Ok(Peeled { factors, remainder: rem })
    }

    /// Kill every matrix entry linking two different grading levels.
    ///
    /// Root basis vectors sit at their grading level and torus directions at
    /// level zero. Kernel factors are strictly level-raising, so they project
    /// to the identity, while Levi-side factors are level-preserving and are
    /// fixed; on the parabolic subgroup this is the retraction onto the
    /// Levi-extension part, and it is multiplicative there because parabolic
    /// elements are block-triangular for the level decomposition.
    pub fn level_projection(&self, profile: &ParabolicProfile, m: &Mat) -> Result<Mat> {
        if self.sln.is_some() {
            return Err(Error::InvalidInput(
                "the level projection is defined in the adjoint model".into(),
            ));
        }
        let rs = self.cb.rs();
        let n = self.cb.dim();
        let level = |idx: usize| -> i64 {
            if idx < rs.num_roots() {
                profile.alvl(&rs.roots()[idx])
            } else {
                0
            }
        };
        let mut out = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                if level(i) == level(j) {
                    out.set(i, j, m.get(i, j).clone());
                }
            }
        }
        Ok(out)
    }
}

/// One factor `x_root(coeff)` recovered by the graded peel.
#[derive(Debug, Clone)]
pub struct PeelFactor {
    pub root: usize,
    pub coeff: Poly,
    pub level: i64,
}

/// Outcome of a graded peel: recovered factors plus whatever is left.
#[derive(Debug, Clone)]
pub struct Peeled {
    pub factors: Vec<PeelFactor>,
    pub remainder: Mat,
}

// ---- relator verification ----

/// A relator that did not evaluate to the identity.
#[derive(Debug, Clone, Serialize)]
pub struct RelatorFailure {
    pub index: usize,
    pub family: String,
    pub word: String,
}

/// Per-relator verification summary; failures are data, not errors.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub model: String,
    pub total: usize,
    pub passed: usize,
    pub failures: Vec<RelatorFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Evaluate every relator of a presentation in the chosen model and report
/// which ones fail to be the identity.
pub fn verify_presentation(
    cb: &ChevalleyBasis,
    ring: &RingSpec,
    pres: &Presentation,
    kind: ModelKind,
) -> Result<VerifyReport> {
    let mut ev = Evaluator::new(cb, ring, kind)?;
    let id = ev.identity();
    let mut failures = Vec::new();
    for (index, rel) in pres.relators.iter().enumerate() {
        let m = ev.eval_word(&rel.word)?;
        if m != id {
            failures.push(RelatorFailure {
                index,
                family: rel.family.to_string(),
                word: rel.word.display(cb.rs(), ring),
            });
        }
    }
    Ok(VerifyReport {
        model: kind.name().to_string(),
        total: pres.relators.len(),
        passed: pres.relators.len() - failures.len(),
        failures,
    })
}

// ---- retraction and filtration checks ----

/// Summary of the retraction checks over all profiles of a parabolic.
#[derive(Debug, Clone, Serialize)]
pub struct RetractReport {
    pub profiles: usize,
    pub conjugations: usize,
    pub projections: usize,
    pub failures: Vec<String>,
}

impl RetractReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Summary of the filtration checks over all profiles of a parabolic.
#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub profiles: usize,
    pub pairs: usize,
    pub failures: Vec<String>,
}

impl FiltrationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn levi_side_conjugators(
    profile: &ParabolicProfile,
    rank: usize,
    unit_gens: usize,
    args: &[TildeElem],
) -> Vec<Word> {
    let mut out = Vec::new();
    for &root in &profile.le_roots {
        for arg in args {
            out.push(Word::letter(GenSymbol::X { root, arg: arg.clone() }, 1));
        }
    }
    for simple in 0..rank {
        for unit_gen in 0..unit_gens {
            out.push(Word::letter(GenSymbol::H { simple, unit_gen }, 1));
        }
    }
    out
}

fn parabolic_alphabet(profile: &ParabolicProfile, rank: usize, unit_gens: usize, args: &[TildeElem]) -> Vec<GenSymbol> {
    let mut out = Vec::new();
    for &root in &profile.le_roots {
        for arg in args {
            out.push(GenSymbol::X { root, arg: arg.clone() });
        }
    }
    for &root in &profile.kernel_roots {
        for arg in args {
            out.push(GenSymbol::XTilde { root, arg: arg.clone() });
        }
    }
    for simple in 0..rank {
        for unit_gen in 0..unit_gens {
            out.push(GenSymbol::H { simple, unit_gen });
        }
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[GenSymbol], len: usize) -> Word {
    const EXPS: [i64; 4] = [-2, -1, 1, 2];
    let mut w = Word::new();
    for _ in 0..len {
        let sym = alphabet[rng.gen_range(0..alphabet.len())].clone();
        let exp = EXPS[rng.gen_range(0..EXPS.len())];
        w.push(sym, exp);
    }
    w
}

/// Check that each profile of the parabolic retracts onto its
/// Levi-extension part.
///
/// Two families of exact checks, subsampled to at most `samples` instances
/// each per profile using the seeded generator:
///
/// * conjugating a kernel generator by a Levi-side generator lands in the
///   kernel subgroup (graded peel ends at the identity);
/// * the level-diagonal projection is multiplicative on products of random
///   parabolic words, fixes Levi-side letters, and kills kernel letters.
///
/// An empty subset runs the almost-Borel profiles, one per simple root.
pub fn verify_retract(
    cb: &ChevalleyBasis,
    subset: &[usize],
    ring: &RingSpec,
    samples: usize,
    seed: u64,
) -> Result<RetractReport> {
    let spec = ParabolicSpec::new(cb.rs(), subset.iter().copied())?;
    let mut ev = Evaluator::new(cb, ring, ModelKind::Adjoint)?;
    let id = ev.identity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let args = tilde_elems(ring, 2, 6);
    let rank = cb.rs().rank();
    let units = ring.unit_gens.len();
    let mut report = RetractReport {
        profiles: 0,
        conjugations: 0,
        projections: 0,
        failures: Vec::new(),
    };
    for profile in spec.profiles() {
        report.profiles += 1;
        let conjugators = levi_side_conjugators(&profile, rank, units, &args);
        let mut triples = Vec::new();
        for &gid in &profile.kernel_roots {
            for t in &args {
                for g in &conjugators {
                    triples.push((gid, t.clone(), g.clone()));
                }
            }
        }
        let chosen: Vec<_> = if triples.len() > samples {
            triples.choose_multiple(&mut rng, samples).cloned().collect()
        } else {
            triples
        };
        for (gid, t, g) in chosen {
            let xk = Word::letter(GenSymbol::XTilde { root: gid, arg: t }, 1);
            let m = ev.eval_word(&xk.conj_by(&g))?;
            let peeled = ev.peel(&profile, &m)?;
            report.conjugations += 1;
            if peeled.remainder != id {
                report.failures.push(format!(
                    "conjugate of {} by {} left the kernel subgroup",
                    xk.display(cb.rs(), ring),
                    g.display(cb.rs(), ring),
                ));
            }
        }
        let alphabet = parabolic_alphabet(&profile, rank, units, &args);
        for _ in 0..samples {
            let a = random_word(&mut rng, &alphabet, 3);
            let b = random_word(&mut rng, &alphabet, 3);
            let ma = ev.eval_word(&a)?;
            let mb = ev.eval_word(&b)?;
            let mab = ma.mul(ev.ctx(), &mb);
            let pa = ev.level_projection(&profile, &ma)?;
            let pb = ev.level_projection(&profile, &mb)?;
            let pab = ev.level_projection(&profile, &mab)?;
            report.projections += 1;
            if pab != pa.mul(ev.ctx(), &pb) {
                report.failures.push(format!(
                    "projection not multiplicative on {} * {}",
                    a.display(cb.rs(), ring),
                    b.display(cb.rs(), ring),
                ));
            }
        }
    }
    Ok(report)
}

/// Check the level filtration of each kernel subgroup: the commutator of
/// generators at levels `j1` and `j2` peels into factors at level
/// `>= j1 + j2` and stays inside the kernel. For same-level pairs this says
/// the filtration quotients are abelian on generators.
pub fn verify_filtration(cb: &ChevalleyBasis, subset: &[usize], ring: &RingSpec) -> Result<FiltrationReport> {
    let spec = ParabolicSpec::new(cb.rs(), subset.iter().copied())?;
    let mut ev = Evaluator::new(cb, ring, ModelKind::Adjoint)?;
    let id = ev.identity();
    let args = tilde_elems(ring, 2, 4);
    let mut report = FiltrationReport { profiles: 0, pairs: 0, failures: Vec::new() };
    for profile in spec.profiles() {
        report.profiles += 1;
        for (ai, &ga) in profile.kernel_roots.iter().enumerate() {
            for &gb in profile.kernel_roots.iter().skip(ai) {
                let ja = profile.alvl(&cb.rs().roots()[ga]);
                let jb = profile.alvl(&cb.rs().roots()[gb]);
                for t in &args {
                    for s in &args {
                        let a = Word::letter(GenSymbol::XTilde { root: ga, arg: t.clone() }, 1);
                        let b = Word::letter(GenSymbol::XTilde { root: gb, arg: s.clone() }, 1);
                        let m = ev.eval_word(&Word::commutator(&a, &b))?;
                        let peeled = ev.peel(&profile, &m)?;
                        report.pairs += 1;
                        if peeled.remainder != id {
                            report.failures.push(format!(
                                "commutator of {} and {} left the kernel subgroup",
                                a.display(cb.rs(), ring),
                                b.display(cb.rs(), ring),
                            ));
                        }
                        for f in &peeled.factors {
                            if f.level < ja + jb {
                                report.failures.push(format!(
                                    "commutator of levels {ja} and {jb} has a factor at level {}",
                                    f.level,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
