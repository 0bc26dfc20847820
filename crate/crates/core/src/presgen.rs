//! Relator generation: schematic (truncated) presentations of unipotent
//! radicals and kernels, and finite presentations of Borel and parabolic
//! subgroups over rings whose description supports them.
//!
//! Every relator carries a family tag, and every word is checked to use
//! only listed generators. The load-bearing property of everything this
//! module emits is *soundness*: each relator evaluates to the identity in
//! the exact matrix models (the `verify` module tests this). Whether a
//! finite presentation is also *defining* is a theorem about the group,
//! not something this code checks; when a caller supplies truncated
//! per-root blocks for a ring without finitely presented rank-one Borel
//! groups, the output is finite and sound but not claimed complete.
//!
//! Arguments of unipotent generators are unit-times-additive-generator
//! elements. Finite presentations confine unit parts to the bounded box of
//! radius `c` (the toral constant of the root system); arguments that fall
//! outside the box are reached by conjugating with torus words
//! `h(w)^k x(u x_i) h(w)^-k`, which is what keeps the alphabet finite.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::chevmodel::{ChevalleyBasis, CommPair};
use crate::parab::{ParabolicProfile, ParabolicSpec};
use crate::ringspec::{tilde_elems, toral_constant, FormalRingElement, RingSpec, TildeElem};
use crate::rootsys::RootSystem;
use crate::word::{GenSymbol, Word};
use crate::{Error, Result};

/// Relator families. Each emitted relator names the structural reason it
/// holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelFamily {
    /// Torus presentation: torsion orders and commutation of the listed
    /// `h` generators.
    Torus,
    /// A per-root block presenting one root subgroup.
    PerRootBlock,
    /// Relators of the Levi-extension subgroup, supplied opaquely.
    LeviBlock,
    /// Torus action on a root subgroup.
    TorusConj,
    /// Commutator of a Levi-side generator with a kernel generator.
    MixedComm,
    /// Commutator of two kernel generators.
    KernelComm,
    /// Commutator of two unipotent generators (schematic presentations).
    UnipComm,
    /// Additive coincidences inside one root subgroup (schematic).
    UnipAdd,
    /// Commutation inside one root subgroup (schematic).
    SameRootComm,
    /// `x(C^-1 t)^C = x(t)` for an invertible structure constant C.
    ConstPower,
    /// `h(C) x(t) h(C)^-1 = x(t)^C` for an invertible structure constant C.
    ConstConj,
}

impl std::fmt::Display for RelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RelFamily::Torus => "torus",
            RelFamily::PerRootBlock => "per-root-block",
            RelFamily::LeviBlock => "levi-block",
            RelFamily::TorusConj => "torus-conj",
            RelFamily::MixedComm => "mixed-comm",
            RelFamily::KernelComm => "kernel-comm",
            RelFamily::UnipComm => "unip-comm",
            RelFamily::UnipAdd => "unip-add",
            RelFamily::SameRootComm => "same-root-comm",
            RelFamily::ConstPower => "const-power",
            RelFamily::ConstConj => "const-conj",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct Relator {
    pub word: Word,
    pub family: RelFamily,
}

/// Bounds for the schematic builders' argument enumeration.
#[derive(Debug, Clone, Copy)]
pub struct Truncation {
    pub exp_bound: i64,
    pub max_args: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { exp_bound: 3, max_args: 8 }
    }
}

/// Truncation metadata attached to schematic output.
#[derive(Debug, Clone, Copy)]
pub struct TruncationInfo {
    pub exp_bound: i64,
    pub max_args: usize,
    /// Relators dropped because an argument fell outside the enumerated
    /// alphabet.
    pub skipped: usize,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<GenSymbol>,
    pub relators: Vec<Relator>,
    /// Whether the relator list is complete as emitted (schematic builders
    /// set this to false and attach truncation metadata).
    pub finite: bool,
    pub truncation: Option<TruncationInfo>,
}

impl Presentation {
    pub fn family_counts(&self) -> Vec<(RelFamily, usize)> {
        let mut counts: Vec<(RelFamily, usize)> = Vec::new();
        for r in &self.relators {
            match counts.iter_mut().find(|(f, _)| *f == r.family) {
                Some((_, c)) => *c += 1,
                None => counts.push((r.family, 1)),
            }
        }
        counts
    }

    pub fn to_text(&self, rs: &RootSystem, ring: &RingSpec) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "generators: {}\nrelators: {}\nfinite: {}\n",
            self.generators.len(),
            self.relators.len(),
            self.finite
        ));
        if let Some(t) = &self.truncation {
            out.push_str(&format!(
                "truncation: exp_bound={} max_args={} skipped={}\n",
                t.exp_bound, t.max_args, t.skipped
            ));
        }
        for g in &self.generators {
            out.push_str(&format!("gen {}\n", g.display(rs, ring)));
        }
        for r in &self.relators {
            out.push_str(&format!("{}: {}\n", r.family, r.word.display(rs, ring)));
        }
        out
    }

    pub fn to_json(&self, rs: &RootSystem, ring: &RingSpec) -> serde_json::Value {
        serde_json::json!({
            "schema": "chevpres/presentation/v1",
            "generators": self.generators.iter().map(|g| g.display(rs, ring)).collect::<Vec<_>>(),
            "relators": self.relators.iter().map(|r| serde_json::json!({
                "family": r.family.to_string(),
                "word": r.word.display(rs, ring),
            })).collect::<Vec<_>>(),
            "finite": self.finite,
            "truncation": self.truncation.as_ref().map(|t| serde_json::json!({
                "exp_bound": t.exp_bound,
                "max_args": t.max_args,
                "skipped": t.skipped,
            })),
        })
    }

    fn assert_closed(&self) {
        let gens: HashSet<&GenSymbol> = self.generators.iter().collect();
        for r in &self.relators {
            for (sym, _) in r.word.letters() {
                assert!(
                    gens.contains(sym),
                    "relator uses unlisted generator in family {}",
                    r.family
                );
            }
        }
    }
}

/// A reusable per-root block: a finite presentation fragment for one root
/// subgroup, written over argument indices so it can be stamped out for
/// each root.
#[derive(Debug, Clone)]
pub struct SgTemplate {
    pub args: Vec<TildeElem>,
    /// Relators as sequences of (argument index, exponent).
    pub relators: Vec<Vec<(usize, i64)>>,
}

impl SgTemplate {
    /// Sound truncated block for any ring description: arguments are the
    /// unit box of radius `max(c, exp_bound)` times the additive
    /// generators; relators are the additive coincidences the description
    /// can see, plus commutation.
    pub fn truncated(ring: &RingSpec, c: i64, exp_bound: i64) -> SgTemplate {
        let args = tilde_box(ring, c.max(exp_bound));
        let mut relators = Vec::new();
        if ring.char_p > 0 {
            for i in 0..args.len() {
                relators.push(vec![(i, ring.char_p as i64)]);
            }
        }
        for i in 0..args.len() {
            for j in i..args.len() {
                match tilde_sum(ring, &args[i], &args[j]) {
                    Some(None) => relators.push(vec![(i, 1), (j, 1)]),
                    Some(Some(s)) => {
                        if let Some(k) = args.iter().position(|a| *a == s) {
                            relators.push(vec![(i, 1), (j, 1), (k, -1)]);
                        }
                    }
                    None => {}
                }
            }
        }
        for i in 0..args.len() {
            for j in i + 1..args.len() {
                relators.push(vec![(i, 1), (j, 1), (i, -1), (j, -1)]);
            }
        }
        SgTemplate { args, relators }
    }

    /// The ring's own finite block; only available when the rank-one Borel
    /// group over the ring is known finitely presented.
    pub fn ring_default(ring: &RingSpec, c: i64) -> Result<SgTemplate> {
        if ring.flags.borel2_fp != crate::TriBool::Yes {
            return Err(Error::HypothesisUnmet(format!(
                "ring {} has no default finite per-root block; supply one",
                ring.name
            )));
        }
        Ok(SgTemplate::truncated(ring, c, c))
    }

    fn check_covers_box(&self, ring: &RingSpec, c: i64) -> Result<()> {
        for b in tilde_box(ring, c) {
            if !self.args.contains(&b) {
                return Err(Error::InvalidInput(format!(
                    "per-root block must cover the radius-{c} unit box; missing {}",
                    ring.unit_display(&b.unit)
                )));
            }
        }
        Ok(())
    }
}

/// Where per-root blocks come from.
#[derive(Debug, Clone)]
pub enum BlockSource {
    /// Use the ring's default finite block (requires a finitely presented
    /// rank-one Borel group).
    RingDefault,
    /// Caller-supplied template, stamped out per root.
    Template(SgTemplate),
}

/// Where Levi-extension relators come from; the builders treat this block
/// as opaque.
#[derive(Debug, Clone, Default)]
pub enum LeviSource {
    /// No Levi relators (sound but silent about the Levi part).
    #[default]
    Stub,
    /// Caller-supplied relators, retagged into the Levi family.
    Supplied(Vec<Word>),
}

/// All units in the box of radius `c` times all additive generators.
pub fn tilde_box(ring: &RingSpec, c: i64) -> Vec<TildeElem> {
    tilde_elems(ring, c, usize::MAX)
}

/// Sum of two arguments, when the ring description can express it: `None`
/// means "not expressible / unknown", `Some(None)` means the sum is zero,
/// `Some(Some(t))` is the sum as a single argument.
pub fn tilde_sum(ring: &RingSpec, a: &TildeElem, b: &TildeElem) -> Option<Option<TildeElem>> {
    if a.x != b.x {
        return None;
    }
    let ratio = ring.unit_mul(&b.unit, &ring.unit_inv(&a.unit));
    // The ratio must be pure torsion for units to add to a unit multiple.
    for (e, g) in ratio.exps.iter().zip(&ring.unit_gens) {
        if g.order.is_none() && *e != 0 {
            return None;
        }
    }
    if ring.char_p == 0 {
        // Only the sign is available: v + (-v) = 0.
        return match ring.unit_from_int(-1) {
            Ok(m) if ratio == m => Some(None),
            _ => None,
        };
    }
    let p = ring.char_p as i64;
    // Interpret the pure-torsion ratio as an integer class when possible.
    let as_int = |u: &crate::ringspec::UnitElement| -> Option<i64> {
        let g = ring.torsion_int_gen? as i64;
        let mut acc = 1i64;
        for (e, gen) in u.exps.iter().zip(&ring.unit_gens) {
            match gen.order {
                None => {
                    if *e != 0 {
                        return None;
                    }
                }
                Some(_) => {
                    for _ in 0..*e {
                        acc = acc * g % p;
                    }
                }
            }
        }
        Some(acc)
    };
    if let Some(c) = as_int(&ratio) {
        let s = (1 + c).rem_euclid(p);
        if s == 0 {
            return Some(None);
        }
        if let Ok(su) = ring.unit_from_int(s) {
            return Some(Some(TildeElem {
                unit: ring.unit_mul(&a.unit, &su),
                x: a.x,
            }));
        }
        return None;
    }
    // No integer interpretation: still recognize exact negatives.
    match ring.unit_from_int(-1) {
        Ok(m) if ratio == m => Some(None),
        _ => None,
    }
}

/// The torus-conjugated word reaching `x~_root(unit * x_l)^exp` through the
/// bounded box: out-of-box units factor as `w^{2k} u` and the word becomes
/// `h(w)^k x~(u x_l)^exp h(w)^-k`.
fn xtilde_reach(
    rs: &RootSystem,
    ring: &RingSpec,
    c: i64,
    root: usize,
    unit: &crate::ringspec::UnitElement,
    x: usize,
    exp: i64,
) -> Word {
    let (w, k, u) = ring.unit_decompose(unit, c);
    let mut word = Word::new();
    if k != 0 {
        word.push_h(rs, root, &w, k);
    }
    word.push(GenSymbol::XTilde { root, arg: TildeElem { unit: u, x } }, exp);
    if k != 0 {
        word.push_h(rs, root, &w, -k);
    }
    word
}

/// The canonical word for `x~_root(.)` raised to `coeff` at a formal ring
/// element: each term contributes `h(w)^k x~(u x)^{a*coeff} h(w)^-k`.
/// Vanishing coefficients contribute nothing.
pub fn zeta_word(rs: &RootSystem, root: usize, coeff: i64, p: &FormalRingElement) -> Word {
    let mut word = Word::new();
    if coeff == 0 {
        return word;
    }
    for t in &p.terms {
        let exp = t.a * coeff;
        if exp == 0 {
            continue;
        }
        if t.k != 0 {
            word.push_h(rs, root, &t.w, t.k);
        }
        word.push(
            GenSymbol::XTilde { root, arg: TildeElem { unit: t.u.clone(), x: t.x } },
            exp,
        );
        if t.k != 0 {
            word.push_h(rs, root, &t.w, -t.k);
        }
    }
    word
}

/// One left-expansion step of a commutator: `[ab, c] = a [b, c] a^-1 [a, c]`.
pub fn commutator_expand(a: &Word, b: &Word, c: &Word) -> Word {
    Word::commutator(b, c)
        .conj_by(a)
        .concat(&Word::commutator(a, c))
}

// ---- shared builder machinery ----

struct FiniteBuilder<'a> {
    cb: &'a ChevalleyBasis,
    ring: &'a RingSpec,
    c: i64,
    args: Vec<TildeElem>,
    relators: Vec<Relator>,
    consts: BTreeSet<(usize, i64)>,
    sc_cache: HashMap<(usize, usize), Vec<CommPair>>,
}

impl<'a> FiniteBuilder<'a> {
    fn new(cb: &'a ChevalleyBasis, ring: &'a RingSpec, args: Vec<TildeElem>) -> Self {
        FiniteBuilder {
            cb,
            ring,
            c: toral_constant(cb.rs()),
            args,
            relators: Vec::new(),
            consts: BTreeSet::new(),
            sc_cache: HashMap::new(),
        }
    }

    fn rs(&self) -> &RootSystem {
        self.cb.rs()
    }

    fn torus_gens(&self) -> Vec<GenSymbol> {
        let mut gens = Vec::new();
        for i in 0..self.rs().rank() {
            for j in 0..self.ring.unit_gens.len() {
                gens.push(GenSymbol::H { simple: i, unit_gen: j });
            }
        }
        gens
    }

    fn push(&mut self, family: RelFamily, word: Word) {
        if !word.is_empty() {
            self.relators.push(Relator { word, family });
        }
    }

    fn torus_relators(&mut self) {
        let rank = self.rs().rank();
        for i in 0..rank {
            for (j, g) in self.ring.unit_gens.iter().enumerate() {
                if let Some(o) = g.order {
                    let w = Word::letter(GenSymbol::H { simple: i, unit_gen: j }, o as i64);
                    self.push(RelFamily::Torus, w);
                }
            }
        }
        let gens = self.torus_gens();
        for (a, ga) in gens.iter().enumerate() {
            for gb in gens.iter().skip(a + 1) {
                let wa = Word::letter(ga.clone(), 1);
                let wb = Word::letter(gb.clone(), 1);
                self.push(RelFamily::Torus, Word::commutator(&wa, &wb));
            }
        }
    }

    fn block_relators(&mut self, template: &SgTemplate, roots: &[usize]) {
        for &root in roots {
            for rel in &template.relators {
                let mut w = Word::new();
                for &(ai, e) in rel {
                    w.push(
                        GenSymbol::XTilde { root, arg: template.args[ai].clone() },
                        e,
                    );
                }
                self.push(RelFamily::PerRootBlock, w);
            }
        }
    }

    /// Torus action on kernel generators: conjugating `x~_root(t)` by
    /// `h_i(v)` scales the argument by `v^(root, alpha_i)`.
    fn conj_relators(&mut self, roots: &[usize]) {
        let rank = self.rs().rank();
        for &root in roots {
            for i in 0..rank {
                let n = self.rs().cartan_int_ids(root, self.rs().simple_id(i));
                for j in 0..self.ring.unit_gens.len() {
                    for t in self.args.clone() {
                        let h = Word::letter(GenSymbol::H { simple: i, unit_gen: j }, 1);
                        let xt = Word::letter(
                            GenSymbol::XTilde { root, arg: t.clone() },
                            1,
                        );
                        let lhs = xt.conj_by(&h);
                        let mut v = self.ring.unit_from_gen(j);
                        v = self.ring.unit_pow(&v, n);
                        let scaled = self.ring.unit_mul(&v, &t.unit);
                        let rhs =
                            xtilde_reach(self.rs(), self.ring, self.c, root, &scaled, t.x, 1);
                        self.push(RelFamily::TorusConj, Word::equation(&lhs, &rhs));
                    }
                }
            }
        }
    }

    fn constants(&mut self, a: usize, b: usize) -> Result<Vec<CommPair>> {
        if let Some(v) = self.sc_cache.get(&(a, b)) {
            return Ok(v.clone());
        }
        let v = self.cb.structure_constants(a, b)?;
        for p in &v {
            if p.coeff.abs() >= 2 {
                let id = self.rs().id_of(&p.root)?;
                self.consts.insert((id, p.coeff));
            }
        }
        self.sc_cache.insert((a, b), v.clone());
        Ok(v)
    }

    /// Commutator relators between two root lists; `sym_a` selects the
    /// Levi-side (plain) or kernel-side alphabet for the first letter.
    fn comm_relators(
        &mut self,
        left: &[usize],
        left_kernel: bool,
        right: &[usize],
        family: RelFamily,
    ) -> Result<()> {
        for (li, &ra) in left.iter().enumerate() {
            for &rb in right {
                if left_kernel {
                    // unordered pairs within one list
                    if right
                        .iter()
                        .position(|&r| r == rb)
                        .is_some_and(|ri| ri <= li)
                    {
                        continue;
                    }
                } else if ra == rb {
                    continue;
                }
                let pairs = self.constants(ra, rb)?;
                for t in self.args.clone() {
                    for s in self.args.clone() {
                        let la = if left_kernel {
                            GenSymbol::XTilde { root: ra, arg: t.clone() }
                        } else {
                            GenSymbol::X { root: ra, arg: t.clone() }
                        };
                        let lb = GenSymbol::XTilde { root: rb, arg: s.clone() };
                        let lhs =
                            Word::commutator(&Word::letter(la, 1), &Word::letter(lb, 1));
                        let mut rhs = Word::new();
                        for p in &pairs {
                            let id = self.rs().id_of(&p.root)?;
                            let pr = self.ring.product_expr(
                                &self.ring.formal_from_tilde(&t, self.c),
                                &self.ring.formal_from_tilde(&s, self.c),
                                p.m,
                                p.n,
                                self.c,
                            )?;
                            rhs.extend(&zeta_word(self.rs(), id, p.coeff, &pr));
                        }
                        self.push(family, Word::equation(&lhs, &rhs));
                    }
                }
            }
        }
        Ok(())
    }

    /// Power and conjugation shortcuts for the invertible structure
    /// constants collected so far.
    fn const_relators(&mut self) -> Result<()> {
        let consts = self.consts.clone();
        for &(droot, coeff) in &consts {
            let cu = self.ring.unit_from_int(coeff)?;
            let cinv = self.ring.unit_inv(&cu);
            for t in self.args.clone() {
                let shrunk = self.ring.unit_mul(&cinv, &t.unit);
                let lhs = xtilde_reach(self.rs(), self.ring, self.c, droot, &shrunk, t.x, coeff);
                let rhs = Word::letter(GenSymbol::XTilde { root: droot, arg: t.clone() }, 1);
                self.push(RelFamily::ConstPower, Word::equation(&lhs, &rhs));
            }
            // a root pairing to 1 against droot lets h(C) implement the
            // C-th power; for some long roots no such root exists and the
            // family is empty there
            let witness =
                (0..self.rs().num_roots()).find(|&a| self.rs().cartan_int_ids(droot, a) == 1);
            if let Some(alpha) = witness {
                for t in self.args.clone() {
                    let mut h = Word::new();
                    h.push_h(self.rs(), alpha, &cu, 1);
                    let xt = Word::letter(
                        GenSymbol::XTilde { root: droot, arg: t.clone() },
                        1,
                    );
                    let lhs = xt.conj_by(&h);
                    let rhs = xt.pow(coeff);
                    self.push(RelFamily::ConstConj, Word::equation(&lhs, &rhs));
                }
            }
        }
        Ok(())
    }

    fn levi_relators(&mut self, levi: &LeviSource) {
        if let LeviSource::Supplied(words) = levi {
            for w in words {
                self.push(RelFamily::LeviBlock, w.clone());
            }
        }
    }
}

fn profile_for(rs: &RootSystem, subset: &[usize]) -> Result<ParabolicProfile> {
    let ps = ParabolicSpec::new(rs, subset.iter().copied())?;
    Ok(ps
        .profiles()
        .into_iter()
        .next()
        .expect("nonempty subsets have exactly one profile"))
}

fn resolve_blocks(ring: &RingSpec, blocks: &BlockSource, c: i64) -> Result<SgTemplate> {
    let t = match blocks {
        BlockSource::RingDefault => SgTemplate::ring_default(ring, c)?,
        BlockSource::Template(t) => t.clone(),
    };
    t.check_covers_box(ring, c)?;
    Ok(t)
}

// ---- schematic builders ----

/// Truncated presentation of the unipotent radical of the parabolic for
/// `subset`: generators `x_root(t)` over the enumerated arguments, with
/// commutator, additive, and same-root commutation families. The relator
/// list is honest but incomplete; instances whose right-hand side leaves
/// the alphabet are counted as skipped.
pub fn present_unipotent(
    cb: &ChevalleyBasis,
    subset: &[usize],
    ring: &RingSpec,
    trunc: &Truncation,
) -> Result<Presentation> {
    ring.validate()?;
    let rs = cb.rs();
    let roots: Vec<usize> = if subset.is_empty() {
        rs.positive_ids().collect()
    } else {
        profile_for(rs, subset)?.unipotent_roots
    };
    let args = tilde_elems(ring, trunc.exp_bound, trunc.max_args);
    let argset: HashSet<&TildeElem> = args.iter().collect();
    let c = toral_constant(rs);

    let mut generators = Vec::new();
    for &root in &roots {
        for t in &args {
            generators.push(GenSymbol::X { root, arg: t.clone() });
        }
    }

    let mut relators = Vec::new();
    let mut skipped = 0usize;

    // commutators between distinct roots
    for (i, &ra) in roots.iter().enumerate() {
        for &rb in roots.iter().skip(i + 1) {
            let pairs = cb.structure_constants(ra, rb)?;
            for t in &args {
                for s in &args {
                    let lhs = Word::commutator(
                        &Word::letter(GenSymbol::X { root: ra, arg: t.clone() }, 1),
                        &Word::letter(GenSymbol::X { root: rb, arg: s.clone() }, 1),
                    );
                    let mut rhs = Word::new();
                    let mut ok = true;
                    for p in &pairs {
                        let id = rs.id_of(&p.root)?;
                        let pr = ring.product_expr(
                            &ring.formal_from_tilde(t, c),
                            &ring.formal_from_tilde(s, c),
                            p.m,
                            p.n,
                            c,
                        )?;
                        for term in &pr.terms {
                            let unit = ring
                                .unit_mul(&ring.unit_pow(&term.w, 2 * term.k), &term.u);
                            let arg = TildeElem { unit, x: term.x };
                            if !argset.contains(&arg) {
                                ok = false;
                                break;
                            }
                            rhs.push(
                                GenSymbol::X { root: id, arg },
                                term.a * p.coeff,
                            );
                        }
                        if !ok {
                            break;
                        }
                    }
                    if ok {
                        let w = Word::equation(&lhs, &rhs);
                        if !w.is_empty() {
                            relators.push(Relator { word: w, family: RelFamily::UnipComm });
                        }
                    } else {
                        skipped += 1;
                    }
                }
            }
        }
    }

    // additive coincidences and characteristic powers
    for &root in &roots {
        if ring.char_p > 0 {
            for t in &args {
                relators.push(Relator {
                    word: Word::letter(
                        GenSymbol::X { root, arg: t.clone() },
                        ring.char_p as i64,
                    ),
                    family: RelFamily::UnipAdd,
                });
            }
        }
        for (i, t) in args.iter().enumerate() {
            for s in args.iter().skip(i) {
                match tilde_sum(ring, t, s) {
                    Some(None) => {
                        let mut w = Word::new();
                        w.push(GenSymbol::X { root, arg: t.clone() }, 1);
                        w.push(GenSymbol::X { root, arg: s.clone() }, 1);
                        relators.push(Relator { word: w, family: RelFamily::UnipAdd });
                    }
                    Some(Some(sum)) => {
                        if argset.contains(&sum) {
                            let mut w = Word::new();
                            w.push(GenSymbol::X { root, arg: t.clone() }, 1);
                            w.push(GenSymbol::X { root, arg: s.clone() }, 1);
                            w.push(GenSymbol::X { root, arg: sum }, -1);
                            relators.push(Relator { word: w, family: RelFamily::UnipAdd });
                        } else {
                            skipped += 1;
                        }
                    }
                    None => {}
                }
            }
        }
        for (i, t) in args.iter().enumerate() {
            for s in args.iter().skip(i + 1) {
                let w = Word::commutator(
                    &Word::letter(GenSymbol::X { root, arg: t.clone() }, 1),
                    &Word::letter(GenSymbol::X { root, arg: s.clone() }, 1),
                );
                relators.push(Relator { word: w, family: RelFamily::SameRootComm });
            }
        }
    }

    let finite = roots.is_empty();
    let pres = Presentation {
        generators,
        relators,
        finite,
        truncation: if finite {
            None
        } else {
            Some(TruncationInfo {
                exp_bound: trunc.exp_bound,
                max_args: trunc.max_args,
                skipped,
            })
        },
    };
    pres.assert_closed();
    Ok(pres)
}

/// Truncated presentation of the kernel of the retraction onto the
/// Levi-extension subgroup, for a nonempty simple subset. Same families as
/// the unipotent builder, over the kernel roots only, with relators
/// ordered by the kernel grading level they live at.
pub fn present_kernel(
    cb: &ChevalleyBasis,
    subset: &[usize],
    ring: &RingSpec,
    trunc: &Truncation,
) -> Result<Presentation> {
    if subset.is_empty() {
        return Err(Error::HypothesisUnmet(
            "the kernel builder needs a nonempty simple subset; use the unipotent builder for the Borel case"
                .into(),
        ));
    }
    ring.validate()?;
    let rs = cb.rs();
    let profile = profile_for(rs, subset)?;
    let roots = profile.kernel_roots.clone();
    let args = tilde_elems(ring, trunc.exp_bound, trunc.max_args);
    let argset: HashSet<&TildeElem> = args.iter().collect();
    let c = toral_constant(rs);
    let lvl = |id: usize| profile.alvl(rs.root(id));

    let mut generators = Vec::new();
    for &root in &roots {
        for t in &args {
            generators.push(GenSymbol::XTilde { root, arg: t.clone() });
        }
    }

    // collect (level, relator), then sort stably by level
    let mut leveled: Vec<(i64, Relator)> = Vec::new();
    let mut skipped = 0usize;

    for (i, &ra) in roots.iter().enumerate() {
        for &rb in roots.iter().skip(i + 1) {
            let pairs = cb.structure_constants(ra, rb)?;
            let level = lvl(ra) + lvl(rb);
            for t in &args {
                for s in &args {
                    let lhs = Word::commutator(
                        &Word::letter(GenSymbol::XTilde { root: ra, arg: t.clone() }, 1),
                        &Word::letter(GenSymbol::XTilde { root: rb, arg: s.clone() }, 1),
                    );
                    let mut rhs = Word::new();
                    let mut ok = true;
                    for p in &pairs {
                        let id = rs.id_of(&p.root)?;
                        debug_assert!(
                            profile.kernel_roots.contains(&id),
                            "kernel commutators stay in the kernel"
                        );
                        let pr = ring.product_expr(
                            &ring.formal_from_tilde(t, c),
                            &ring.formal_from_tilde(s, c),
                            p.m,
                            p.n,
                            c,
                        )?;
                        for term in &pr.terms {
                            let unit =
                                ring.unit_mul(&ring.unit_pow(&term.w, 2 * term.k), &term.u);
                            let arg = TildeElem { unit, x: term.x };
                            if !argset.contains(&arg) {
                                ok = false;
                                break;
                            }
                            rhs.push(GenSymbol::XTilde { root: id, arg }, term.a * p.coeff);
                        }
                        if !ok {
                            break;
                        }
                    }
                    if ok {
                        let w = Word::equation(&lhs, &rhs);
                        if !w.is_empty() {
                            leveled.push((
                                level,
                                Relator { word: w, family: RelFamily::UnipComm },
                            ));
                        }
                    } else {
                        skipped += 1;
                    }
                }
            }
        }
    }

    for &root in &roots {
        let level = lvl(root);
        if ring.char_p > 0 {
            for t in &args {
                leveled.push((
                    level,
                    Relator {
                        word: Word::letter(
                            GenSymbol::XTilde { root, arg: t.clone() },
                            ring.char_p as i64,
                        ),
                        family: RelFamily::UnipAdd,
                    },
                ));
            }
        }
        for (i, t) in args.iter().enumerate() {
            for s in args.iter().skip(i) {
                match tilde_sum(ring, t, s) {
                    Some(None) => {
                        let mut w = Word::new();
                        w.push(GenSymbol::XTilde { root, arg: t.clone() }, 1);
                        w.push(GenSymbol::XTilde { root, arg: s.clone() }, 1);
                        leveled.push((level, Relator { word: w, family: RelFamily::UnipAdd }));
                    }
                    Some(Some(sum)) => {
                        if argset.contains(&sum) {
                            let mut w = Word::new();
                            w.push(GenSymbol::XTilde { root, arg: t.clone() }, 1);
                            w.push(GenSymbol::XTilde { root, arg: s.clone() }, 1);
                            w.push(GenSymbol::XTilde { root, arg: sum }, -1);
                            leveled.push((level, Relator { word: w, family: RelFamily::UnipAdd }));
                        } else {
                            skipped += 1;
                        }
                    }
                    None => {}
                }
            }
        }
        for (i, t) in args.iter().enumerate() {
            for s in args.iter().skip(i + 1) {
                let w = Word::commutator(
                    &Word::letter(GenSymbol::XTilde { root, arg: t.clone() }, 1),
                    &Word::letter(GenSymbol::XTilde { root, arg: s.clone() }, 1),
                );
                leveled.push((level, Relator { word: w, family: RelFamily::SameRootComm }));
            }
        }
    }

    leveled.sort_by_key(|(l, _)| *l);
    let relators = leveled.into_iter().map(|(_, r)| r).collect();
    let finite = roots.is_empty();
    let pres = Presentation {
        generators,
        relators,
        finite,
        truncation: if finite {
            None
        } else {
            Some(TruncationInfo {
                exp_bound: trunc.exp_bound,
                max_args: trunc.max_args,
                skipped,
            })
        },
    };
    pres.assert_closed();
    Ok(pres)
}

// ---- finite builders ----

/// Finite presentation of the Borel subgroup: torus relators, one per-root
/// block per positive root, the torus action, and commutators with
/// box-confined right-hand sides.
pub fn present_borel_finite(
    cb: &ChevalleyBasis,
    ring: &RingSpec,
    blocks: &BlockSource,
) -> Result<Presentation> {
    ring.validate()?;
    let rs = cb.rs();
    let c = toral_constant(rs);
    let template = resolve_blocks(ring, blocks, c)?;
    let positives: Vec<usize> = rs.positive_ids().collect();

    let mut b = FiniteBuilder::new(cb, ring, template.args.clone());
    let mut generators = Vec::new();
    for &root in &positives {
        for t in &template.args {
            generators.push(GenSymbol::XTilde { root, arg: t.clone() });
        }
    }
    generators.extend(b.torus_gens());

    b.torus_relators();
    b.block_relators(&template, &positives);
    b.conj_relators(&positives);
    b.comm_relators(&positives, true, &positives, RelFamily::KernelComm)?;

    let pres = Presentation {
        generators,
        relators: b.relators,
        finite: true,
        truncation: None,
    };
    pres.assert_closed();
    Ok(pres)
}

/// Finite presentation of the parabolic for a nonempty subset, built from
/// per-root blocks: an opaque Levi block, block copies over the kernel
/// roots, the torus action on the kernel, and mixed/kernel commutators.
pub fn present_parabolic_case1(
    cb: &ChevalleyBasis,
    subset: &[usize],
    ring: &RingSpec,
    blocks: &BlockSource,
    levi: &LeviSource,
) -> Result<Presentation> {
    if subset.is_empty() {
        return Err(Error::HypothesisUnmet(
            "this builder needs a nonempty simple subset; use the Borel builder".into(),
        ));
    }
    ring.validate()?;
    let rs = cb.rs();
    let profile = profile_for(rs, subset)?;
    let c = toral_constant(rs);
    let template = resolve_blocks(ring, blocks, c)?;

    let mut b = FiniteBuilder::new(cb, ring, template.args.clone());
    let mut generators = Vec::new();
    for &root in &profile.le_roots {
        for t in &template.args {
            generators.push(GenSymbol::X { root, arg: t.clone() });
        }
    }
    for &root in &profile.kernel_roots {
        for t in &template.args {
            generators.push(GenSymbol::XTilde { root, arg: t.clone() });
        }
    }
    generators.extend(b.torus_gens());

    b.levi_relators(levi);
    b.block_relators(&template, &profile.kernel_roots);
    b.conj_relators(&profile.kernel_roots);
    b.comm_relators(
        &profile.le_roots,
        false,
        &profile.kernel_roots,
        RelFamily::MixedComm,
    )?;
    b.comm_relators(
        &profile.kernel_roots,
        true,
        &profile.kernel_roots,
        RelFamily::KernelComm,
    )?;

    let pres = Presentation {
        generators,
        relators: b.relators,
        finite: true,
        truncation: None,
    };
    pres.assert_closed();
    Ok(pres)
}

/// Finite presentation of the parabolic using invertibility of the bond
/// constants instead of per-root blocks: torus action, mixed and kernel
/// commutators, plus power and conjugation shortcuts for each invertible
/// structure constant. Refuses the one genuinely open configuration (the
/// doubly-exceptional long-root parabolic of `G2`).
pub fn present_parabolic_nvb(
    cb: &ChevalleyBasis,
    subset: &[usize],
    ring: &RingSpec,
    levi: &LeviSource,
) -> Result<Presentation> {
    if subset.is_empty() {
        return Err(Error::HypothesisUnmet(
            "this builder needs a nonempty simple subset; use the Borel builder".into(),
        ));
    }
    ring.validate()?;
    let rs = cb.rs();
    if !crate::ringspec::nvb(ring, rs.rstype) {
        return Err(Error::HypothesisUnmet(format!(
            "the bond constants of {} are not known invertible in {}",
            rs.rstype,
            ring.name
        )));
    }
    if rs.rstype.family == crate::rootsys::Family::G
        && subset.len() == 1
        && rs.is_long(rs.root(rs.simple_id(subset[0])))
    {
        return Err(Error::ExceptionalCase);
    }
    let profile = profile_for(rs, subset)?;
    let c = toral_constant(rs);
    let args = tilde_box(ring, c);

    let mut b = FiniteBuilder::new(cb, ring, args.clone());
    let mut generators = Vec::new();
    for &root in &profile.le_roots {
        for t in &args {
            generators.push(GenSymbol::X { root, arg: t.clone() });
        }
    }
    for &root in &profile.kernel_roots {
        for t in &args {
            generators.push(GenSymbol::XTilde { root, arg: t.clone() });
        }
    }
    generators.extend(b.torus_gens());

    b.levi_relators(levi);
    b.conj_relators(&profile.kernel_roots);
    b.comm_relators(
        &profile.le_roots,
        false,
        &profile.kernel_roots,
        RelFamily::MixedComm,
    )?;
    b.comm_relators(
        &profile.kernel_roots,
        true,
        &profile.kernel_roots,
        RelFamily::KernelComm,
    )?;
    b.const_relators()?;

    let pres = Presentation {
        generators,
        relators: b.relators,
        finite: true,
        truncation: None,
    };
    pres.assert_closed();
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystemType;

    fn basis(name: &str) -> ChevalleyBasis {
        ChevalleyBasis::new(
            RootSystem::build(RootSystemType::parse(name).unwrap()).unwrap(),
        )
    }

    #[test]
    fn unipotent_borel_a2_shape() {
        let cb = basis("A2");
        let ring = RingSpec::z();
        let p = present_unipotent(&cb, &[], &ring, &Truncation::default()).unwrap();
        assert!(!p.finite);
        // 3 positive roots, arguments {1, -1}
        assert_eq!(p.generators.len(), 6);
        let fams: BTreeSet<RelFamily> =
            p.relators.iter().map(|r| r.family).collect();
        assert!(fams.contains(&RelFamily::UnipComm));
        assert!(fams.contains(&RelFamily::UnipAdd));
        assert!(fams.contains(&RelFamily::SameRootComm));
        // [x_a(1), x_b(1)] = x_{a+b}(+-1): a 5-letter relator
        assert!(p
            .relators
            .iter()
            .any(|r| r.family == RelFamily::UnipComm && r.word.length() == 5));
        // x(1) x(-1) = 1 appears per root
        assert_eq!(
            p.relators
                .iter()
                .filter(|r| r.family == RelFamily::UnipAdd)
                .count(),
            3
        );
    }

    #[test]
    fn unipotent_of_whole_subset_is_empty() {
        let cb = basis("A2");
        let ring = RingSpec::z();
        let p = present_unipotent(&cb, &[0, 1], &ring, &Truncation::default()).unwrap();
        assert!(p.finite);
        assert!(p.generators.is_empty());
        assert!(p.relators.is_empty());
        assert!(p.truncation.is_none());
    }

    #[test]
    fn additive_family_sees_characteristic_and_torsion_sums() {
        let cb = basis("A1");
        let ring = RingSpec::fq_laurent(5).unwrap();
        let p = present_unipotent(&cb, &[], &ring, &Truncation::default()).unwrap();
        // characteristic power x(t)^5
        assert!(p.relators.iter().any(|r| {
            r.family == RelFamily::UnipAdd && r.word.letters().len() == 1
                && r.word.letters()[0].1 == 5
        }));
        // a three-letter sum: 1 + g = g^3 over F5 (1 + 2 = 3)
        assert!(p
            .relators
            .iter()
            .any(|r| r.family == RelFamily::UnipAdd && r.word.letters().len() == 3));
    }

    #[test]
    fn kernel_builder_needs_a_subset_and_orders_by_level() {
        let cb = basis("A3");
        let ring = RingSpec::z();
        assert!(matches!(
            present_kernel(&cb, &[], &ring, &Truncation::default()),
            Err(Error::HypothesisUnmet(_))
        ));
        let p = present_kernel(&cb, &[0], &ring, &Truncation::default()).unwrap();
        assert!(!p.finite);
        // kernel of A3 with I = {a1}: 4 roots, levels 1 and 2
        let rs = cb.rs();
        let profile = profile_for(rs, &[0]).unwrap();
        assert_eq!(profile.kernel_roots.len(), 4);
        // relator levels never decrease; recompute per relator from its
        // first letter's roots
        let level_of = |r: &Relator| -> i64 {
            let mut roots: Vec<usize> = Vec::new();
            for (sym, _) in r.word.letters() {
                if let GenSymbol::XTilde { root, .. } = sym {
                    if !roots.contains(root) {
                        roots.push(*root);
                    }
                }
            }
            match r.family {
                RelFamily::UnipComm => {
                    profile.alvl(rs.root(roots[0])) + profile.alvl(rs.root(roots[1]))
                }
                _ => profile.alvl(rs.root(roots[0])),
            }
        };
        let mut prev = 0;
        for r in &p.relators {
            let l = level_of(r);
            assert!(l >= prev, "levels grouped in order");
            prev = l;
        }
    }

    #[test]
    fn borel_a1_over_z_is_minimal() {
        let cb = basis("A1");
        let ring = RingSpec::z();
        let p = present_borel_finite(&cb, &ring, &BlockSource::RingDefault).unwrap();
        assert!(p.finite);
        let fams: BTreeSet<RelFamily> = p.relators.iter().map(|r| r.family).collect();
        assert_eq!(
            fams,
            BTreeSet::from([RelFamily::Torus, RelFamily::PerRootBlock, RelFamily::TorusConj])
        );
        // gens: x~ over {1,-1}, h[a1](-1); relators: h^2, block sum+comm,
        // conjugation for (1 root x 2 args x 1 h-gen)
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relators.len(), 1 + 2 + 2);
    }

    #[test]
    fn borel_relator_count_closed_form() {
        let cb = basis("A2");
        let ring = RingSpec::z();
        let p = present_borel_finite(&cb, &ring, &BlockSource::RingDefault).unwrap();
        let rank = 2usize;
        let n_pos = 3usize;
        let n_units = ring.unit_gens.len(); // 1
        let n_torsion = 1usize;
        let n_args = 2usize; // {1, -1}
        let h = rank * n_units;
        let template = SgTemplate::ring_default(&ring, toral_constant(cb.rs())).unwrap();
        let expected = rank * n_torsion + h * (h - 1) / 2          // torus
            + n_pos * template.relators.len()                      // blocks
            + n_pos * n_args * h                                   // conjugation
            + n_pos * (n_pos - 1) / 2 * n_args * n_args; // commutators
        assert_eq!(p.relators.len(), expected);
        assert!(p.finite);
    }

    #[test]
    fn borel_over_laurent_needs_supplied_blocks_and_uses_the_trick() {
        let cb = basis("A2");
        let ring = RingSpec::z_laurent();
        assert!(matches!(
            present_borel_finite(&cb, &ring, &BlockSource::RingDefault),
            Err(Error::HypothesisUnmet(_))
        ));
        let c = toral_constant(cb.rs());
        let template = SgTemplate::truncated(&ring, c, c);
        let p =
            present_borel_finite(&cb, &ring, &BlockSource::Template(template)).unwrap();
        assert!(p.finite);
        // some commutator right-hand side must leave the box and use the
        // h-conjugation trick
        assert!(p.relators.iter().any(|r| {
            r.family == RelFamily::KernelComm
                && r.word
                    .letters()
                    .iter()
                    .any(|(s, _)| matches!(s, GenSymbol::H { .. }))
        }));
    }

    #[test]
    fn case1_parabolic_shape() {
        let cb = basis("A2");
        let ring = RingSpec::z();
        assert!(matches!(
            present_parabolic_case1(&cb, &[], &ring, &BlockSource::RingDefault, &LeviSource::Stub),
            Err(Error::HypothesisUnmet(_))
        ));
        let p = present_parabolic_case1(
            &cb,
            &[0],
            &ring,
            &BlockSource::RingDefault,
            &LeviSource::Stub,
        )
        .unwrap();
        assert!(p.finite);
        let fams: BTreeSet<RelFamily> = p.relators.iter().map(|r| r.family).collect();
        assert!(fams.contains(&RelFamily::MixedComm));
        assert!(fams.contains(&RelFamily::KernelComm));
        assert!(fams.contains(&RelFamily::PerRootBlock));
        assert!(!fams.contains(&RelFamily::Torus), "torus lives in the opaque block");
        // supplied Levi words are retagged
        let real = Word::commutator(
            &Word::letter(
                GenSymbol::X {
                    root: cb.rs().simple_id(0),
                    arg: TildeElem { unit: ring.unit_identity(), x: 0 },
                },
                1,
            ),
            &Word::letter(
                GenSymbol::X {
                    root: cb.rs().neg_id(cb.rs().simple_id(0)),
                    arg: TildeElem { unit: ring.unit_identity(), x: 0 },
                },
                1,
            ),
        );
        let p2 = present_parabolic_case1(
            &cb,
            &[0],
            &ring,
            &BlockSource::RingDefault,
            &LeviSource::Supplied(vec![real]),
        )
        .unwrap();
        assert!(p2.relators.iter().any(|r| r.family == RelFamily::LeviBlock));
    }

    #[test]
    fn nvb_preconditions_and_constant_families() {
        let b2 = basis("B2");
        // B2 over Z: 2 is not invertible
        assert!(matches!(
            present_parabolic_nvb(&b2, &[0], &RingSpec::z(), &LeviSource::Stub),
            Err(Error::HypothesisUnmet(_))
        ));
        let f5 = RingSpec::fq_laurent(5).unwrap();
        let p = present_parabolic_nvb(&b2, &[0], &f5, &LeviSource::Stub).unwrap();
        assert!(p.finite);
        let fams: BTreeSet<RelFamily> = p.relators.iter().map(|r| r.family).collect();
        assert!(fams.contains(&RelFamily::ConstPower));
        // the only doubled constant of B2 lands on the long root a1+2a2,
        // and nothing pairs to 1 against it, so no conjugation shortcut
        assert!(!fams.contains(&RelFamily::ConstConj));
        assert!(!fams.contains(&RelFamily::PerRootBlock));

        // the G2 long-root parabolic is refused; the short-root one works
        let g2 = basis("G2");
        assert!(matches!(
            present_parabolic_nvb(&g2, &[1], &f5, &LeviSource::Stub),
            Err(Error::ExceptionalCase)
        ));
        let p = present_parabolic_nvb(&g2, &[0], &f5, &LeviSource::Stub).unwrap();
        assert!(p.relators.iter().any(|r| r.family == RelFamily::ConstPower));
        assert!(p.relators.iter().any(|r| r.family == RelFamily::ConstConj));

        // simply-laced: constants are all +-1, so no constant shortcuts,
        // and the builder works over Z
        let a2 = basis("A2");
        let p = present_parabolic_nvb(&a2, &[0], &RingSpec::z(), &LeviSource::Stub).unwrap();
        let fams: BTreeSet<RelFamily> = p.relators.iter().map(|r| r.family).collect();
        assert!(!fams.contains(&RelFamily::ConstPower));
        assert!(!fams.contains(&RelFamily::ConstConj));
    }

    #[test]
    fn zeta_word_wraps_out_of_box_units() {
        let cb = basis("A2");
        let ring = RingSpec::z_laurent();
        let c = toral_constant(cb.rs());
        let high = cb.rs().highest_root_id();
        // p = t^6 * 1: decomposes with k = 3
        let p = ring.formal_from_tilde(
            &TildeElem {
                unit: crate::ringspec::UnitElement { exps: vec![0, 6] },
                x: 0,
            },
            c,
        );
        assert_eq!(p.terms[0].k, 3);
        let w = zeta_word(cb.rs(), high, 1, &p);
        let kinds: Vec<bool> = w
            .letters()
            .iter()
            .map(|(s, _) | matches!(s, GenSymbol::H { .. }))
            .collect();
        // h-letters, then the kernel letter, then h-letters back
        assert!(kinds.first() == Some(&true) && kinds.last() == Some(&true));
        assert!(kinds.iter().filter(|b| !*b).count() == 1);
        assert!(zeta_word(cb.rs(), high, 0, &p).is_empty());
    }

    #[test]
    fn commutator_expand_is_a_free_identity() {
        let a = Word::letter(
            GenSymbol::X {
                root: 0,
                arg: TildeElem {
                    unit: crate::ringspec::UnitElement { exps: vec![] },
                    x: 0,
                },
            },
            1,
        );
        let b = Word::letter(
            GenSymbol::X {
                root: 1,
                arg: TildeElem {
                    unit: crate::ringspec::UnitElement { exps: vec![] },
                    x: 0,
                },
            },
            1,
        );
        let c = Word::letter(
            GenSymbol::X {
                root: 2,
                arg: TildeElem {
                    unit: crate::ringspec::UnitElement { exps: vec![] },
                    x: 0,
                },
            },
            1,
        );
        let lhs = Word::commutator(&a.clone().concat(&b), &c);
        let rhs = commutator_expand(&a, &b, &c);
        assert_eq!(lhs, rhs);
    }
}
