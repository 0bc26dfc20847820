//! Finite-presentability classification with reason trails.
//!
//! Two decision procedures plus a worked demonstration:
//!
//! * [`ring_level`]: over a general base ring, the parabolic subgroup is
//!   finitely presented exactly when its Levi-extension subgroup is, provided
//!   the ring is quasi-good for the root system; the caller supplies what is
//!   known about the Levi-extension subgroup.
//! * [`s_arithmetic`]: over a ring of S-integers the verdict follows from
//!   the characteristic, the number of places, and the ranks of the Levi
//!   components.
//! * [`block_demo`]: the contrasting pair of block parabolic subgroups of
//!   the 12-by-12 general linear group over integer Laurent polynomials --
//!   one finitely presented, one not -- classified from stored ring facts.
//!
//! Every verdict lists the rules that fired, each with an optional citation
//! tag; imported theorems are looked up, never re-proved. A verdict of
//! `unknown` always names the blocking condition.

use serde::Serialize;

use crate::parab::{blocks_to_subset, ParabolicSpec};
use crate::ringspec::{nvb, qg, ArithmeticData, RingSpec};
use crate::rootsys::{Family, RootSystem};
use crate::{Error, Result, TriBool};

/// Classification outcome for one parabolic subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FinitelyPresented,
    NotFinitelyPresented,
    /// Finite presentability of the parabolic and of its Levi-extension
    /// subgroup are equivalent, and the latter was not supplied.
    EquivalentToLe,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::FinitelyPresented => "finitely_presented",
            Verdict::NotFinitelyPresented => "not_finitely_presented",
            Verdict::EquivalentToLe => "equivalent_to_LE",
            Verdict::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Source tags for imported facts used by the rule table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Citation {
    /// Elementary groups over polynomial rings over finite fields have
    /// infinitely generated parabolic subgroups.
    Nagao,
    /// The rank-1 Borel group over integer Laurent polynomials is not
    /// finitely presented.
    KrsticMcCool,
    /// Solvable S-arithmetic groups in characteristic zero are finitely
    /// presented.
    Abels,
    /// S-arithmetic subgroups of reductive groups in characteristic zero
    /// are finitely presented.
    BorelSerre,
    /// Borel-type S-arithmetic groups over global function fields are
    /// finitely presented exactly when the number of places is at least 3.
    Bux,
    /// S-arithmetic Chevalley groups over global function fields are
    /// finitely presented exactly when places times rank is at least 3.
    Behr,
    /// Structure theory of S-integer rings: more than one place gives
    /// finitely generated parabolic subgroups; the prime field embeds.
    OMeara,
    /// The special linear group over (Laurent) polynomial rings over
    /// nice coefficients coincides with its elementary subgroup.
    Suslin,
    /// A retract of a finitely presented group is finitely presented.
    Stallings,
    /// No published answer either way.
    OpenProblem,
}

impl std::fmt::Display for Citation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Citation::Nagao => "Nagao",
            Citation::KrsticMcCool => "Krstic-McCool",
            Citation::Abels => "Abels",
            Citation::BorelSerre => "Borel-Serre",
            Citation::Bux => "Bux",
            Citation::Behr => "Behr",
            Citation::OMeara => "O'Meara",
            Citation::Suslin => "Suslin",
            Citation::Stallings => "Stallings",
            Citation::OpenProblem => "open problem",
        };
        f.write_str(s)
    }
}

/// One fired rule: a stable tag, an optional citation, and a readable line.
#[derive(Debug, Clone, Serialize)]
pub struct Reason {
    pub rule: String,
    pub citation: Option<Citation>,
    pub line: String,
}

impl Reason {
    fn new(rule: &str, citation: Option<Citation>, line: impl Into<String>) -> Self {
        Reason { rule: rule.into(), citation, line: line.into() }
    }
}

/// A verdict together with the ordered list of rules that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct FPStatus {
    pub verdict: Verdict,
    pub reasons: Vec<Reason>,
}

impl FPStatus {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("status serializes")
    }

    /// Multi-line plain-text rendering: verdict, then one line per reason.
    pub fn to_text(&self) -> String {
        let mut out = format!("verdict: {}\n", self.verdict);
        for r in &self.reasons {
            let cite = match &r.citation {
                Some(c) => format!(" [{c}]"),
                None => String::new(),
            };
            out.push_str(&format!("  - ({}){} {}\n", r.rule, cite, r.line));
        }
        out
    }
}

fn exceptional_g2_long(spec: &ParabolicSpec, ring: &RingSpec) -> bool {
    let rs = spec.rs();
    let t = rs.rstype;
    t.family == Family::G
        && spec.subset().len() == 1
        && rs.is_long(rs.root(rs.simple_id(spec.subset()[0])))
        && nvb(ring, t)
        && ring.flags.borel2_fp != TriBool::Yes
}

/// Decide finite presentability of a parabolic subgroup over a general base
/// ring, given the caller's knowledge of its Levi-extension subgroup.
///
/// Rule order: the standing finite-generation hypothesis is checked first
/// (a ring without finitely generated parabolic subgroups is refused); an
/// infinitely presented Levi-extension subgroup forces a negative verdict
/// unconditionally; the open long-root configuration in type G2 is reported
/// as unknown; otherwise, over a quasi-good ring the verdict mirrors the
/// supplied status, and over a ring not known to be quasi-good it is
/// unknown.
pub fn ring_level(spec: &ParabolicSpec, ring: &RingSpec, le_status: TriBool) -> Result<FPStatus> {
    if ring.flags.parabolics_fg != TriBool::Yes {
        return Err(Error::HypothesisUnmet(format!(
            "refused: parabolic subgroups over {} are not known to be finitely generated \
             (Nagao-type obstruction), so finite presentability is out of reach",
            ring.name
        )));
    }
    let mut reasons = Vec::new();
    if le_status == TriBool::No {
        reasons.push(Reason::new(
            "retract-necessity",
            Some(Citation::Stallings),
            "the Levi-extension subgroup is a retract of the parabolic, and retracts inherit \
             finite presentability; an infinitely presented retract rules the parabolic out",
        ));
        return Ok(FPStatus { verdict: Verdict::NotFinitelyPresented, reasons });
    }
    if exceptional_g2_long(spec, ring) {
        reasons.push(Reason::new(
            "exceptional-g2-long",
            Some(Citation::OpenProblem),
            "the long-root parabolic in type G2 over a ring whose rank-1 Borel group is not \
             known to be finitely presented has no known two-sided criterion",
        ));
        return Ok(FPStatus { verdict: Verdict::Unknown, reasons });
    }
    match qg(ring, spec.rs().rstype) {
        TriBool::Yes => {
            reasons.push(Reason::new(
                "qg-equivalence",
                None,
                "the ring is quasi-good for this root system: the parabolic is finitely \
                 presented if and only if its Levi-extension subgroup is",
            ));
            if le_status == TriBool::Yes {
                reasons.push(Reason::new(
                    "le-status-input",
                    None,
                    "the Levi-extension subgroup was supplied as finitely presented",
                ));
                Ok(FPStatus { verdict: Verdict::FinitelyPresented, reasons })
            } else {
                reasons.push(Reason::new(
                    "le-status-input",
                    None,
                    "no status was supplied for the Levi-extension subgroup; the two \
                     questions stand or fall together",
                ));
                Ok(FPStatus { verdict: Verdict::EquivalentToLe, reasons })
            }
        }
        _ => {
            reasons.push(Reason::new(
                "qg-missing",
                None,
                "the ring is not known to be quasi-good for this root system: the doubled \
                 structure constants are not invertible and the rank-1 Borel group is not \
                 known to be finitely presented",
            ));
            Ok(FPStatus { verdict: Verdict::Unknown, reasons })
        }
    }
}

fn bad_primes(family: Family) -> &'static [u32] {
    match family {
        Family::B | Family::C | Family::F => &[2],
        Family::G => &[2, 3],
        Family::A | Family::D | Family::E => &[],
    }
}

/// Decide finite presentability of an S-arithmetic parabolic subgroup from
/// the characteristic of the global field, the number of places, and the
/// ranks of the Levi components.
///
/// In characteristic zero the answer is always positive. In positive
/// characteristic, a parabolic that retracts onto an almost-Borel subgroup
/// is finitely presented exactly when there are at least 3 places; the
/// remaining parabolics (which require the characteristic to avoid the bad
/// primes of the root system) are finitely presented exactly when
/// `min_i(places * rank_i) >= 3` over the Levi components.
pub fn s_arithmetic(
    spec: &ParabolicSpec,
    arith: &ArithmeticData,
    levi_ranks: &[usize],
) -> Result<FPStatus> {
    if arith.s_size == 0 {
        return Err(Error::InvalidInput("need at least one place".into()));
    }
    if arith.global_field_char > 0 && arith.s_size == 1 {
        return Err(Error::HypothesisUnmet(
            "refused: one place over a global function field leaves even finite generation \
             of the parabolic subgroups open"
                .into(),
        ));
    }
    let mut reasons = Vec::new();
    if arith.global_field_char == 0 {
        reasons.push(Reason::new(
            "char-zero",
            Some(Citation::BorelSerre),
            "S-arithmetic subgroups of reductive groups in characteristic zero are finitely \
             presented",
        ));
        reasons.push(Reason::new(
            "char-zero-solvable",
            Some(Citation::Abels),
            "the solvable pieces are finitely presented in characteristic zero as well, so \
             the whole parabolic is",
        ));
        return Ok(FPStatus { verdict: Verdict::FinitelyPresented, reasons });
    }
    reasons.push(Reason::new(
        "s-finite-generation",
        Some(Citation::OMeara),
        format!(
            "with {} places the parabolic subgroups over the S-integers are finitely generated",
            arith.s_size
        ),
    ));
    let retracts = spec.profiles().iter().all(|p| p.retracts_onto_almost_borel());
    if retracts {
        let fp = arith.s_size >= 3;
        reasons.push(Reason::new(
            "almost-borel-threshold",
            Some(Citation::Bux),
            format!(
                "the parabolic retracts onto an almost-Borel group, which is finitely \
                 presented exactly when there are at least 3 places (here: {})",
                arith.s_size
            ),
        ));
        let verdict = if fp { Verdict::FinitelyPresented } else { Verdict::NotFinitelyPresented };
        return Ok(FPStatus { verdict, reasons });
    }
    let p = arith.global_field_char;
    if bad_primes(spec.rs().rstype.family).contains(&p) {
        reasons.push(Reason::new(
            "very-bad-characteristic",
            None,
            format!(
                "characteristic {p} is very bad for this root system, so the deep branch \
                 of the criterion does not apply; no verdict"
            ),
        ));
        return Ok(FPStatus { verdict: Verdict::Unknown, reasons });
    }
    if levi_ranks.is_empty() || levi_ranks.contains(&0) {
        return Err(Error::InvalidInput(
            "this branch needs the positive ranks of the Levi components".into(),
        ));
    }
    let d = levi_ranks.iter().map(|&r| arith.s_size * r).min().expect("nonempty");
    let fp = d >= 3;
    reasons.push(Reason::new(
        "deep-rank-threshold",
        Some(Citation::Behr),
        format!(
            "each Levi component is an S-arithmetic Chevalley group, finitely presented \
             exactly when places times rank is at least 3; the minimum over the components \
             is {d}"
        ),
    ));
    let verdict = if fp { Verdict::FinitelyPresented } else { Verdict::NotFinitelyPresented };
    Ok(FPStatus { verdict, reasons })
}

/// The two block parabolic subgroups of the 12-by-12 general linear group
/// with column widths `1,5,1,5` and `5,1,1,5`.
///
/// Over integer Laurent polynomials the first is finitely presented (its
/// Levi-extension subgroup is the Levi factor, whose general-linear blocks
/// are finitely presented) while the second is not (the adjacent size-1
/// blocks create a triangular block whose rank-1 Borel retract is not
/// finitely presented). Over a characteristic-zero ring of S-integers both
/// are finitely presented.
pub fn block_demo(ring: &RingSpec) -> Result<(FPStatus, FPStatus)> {
    const P1: [usize; 4] = [1, 5, 1, 5];
    const P2: [usize; 4] = [5, 1, 1, 5];
    let (rstype, subset1) = blocks_to_subset(&P1)?;
    let (_, subset2) = blocks_to_subset(&P2)?;
    let rs = RootSystem::build(rstype)?;
    let spec1 = ParabolicSpec::new(&rs, subset1)?;
    let spec2 = ParabolicSpec::new(&rs, subset2)?;

    if ring.name == "Z_laurent" {
        let profile1 = spec1.profiles().remove(0);
        let le1 = if profile1.nonadj.is_empty() && ring.flags.levi_gl_blocks_fp == TriBool::Yes
        {
            TriBool::Yes
        } else {
            TriBool::Unknown
        };
        let mut p1 = ring_level(&spec1, ring, le1)?;
        p1.reasons.insert(
            0,
            Reason::new(
                "levi-blocks-input",
                Some(Citation::Suslin),
                "no two size-1 blocks are adjacent, so the Levi-extension subgroup is the \
                 Levi factor itself; its general-linear blocks over integer Laurent \
                 polynomials are finitely presented (stored ring fact)",
            ),
        );
        let profile2 = spec2.profiles().remove(0);
        let le2 = if !profile2.nonadj.is_empty() && ring.flags.borel2_fp == TriBool::No {
            TriBool::No
        } else {
            TriBool::Unknown
        };
        let mut p2 = ring_level(&spec2, ring, le2)?;
        p2.reasons.insert(
            0,
            Reason::new(
                "triangular-block-obstruction",
                Some(Citation::KrsticMcCool),
                "the adjacent size-1 blocks create a triangular block, so the \
                 Levi-extension subgroup retracts onto a rank-1 Borel group that is not \
                 finitely presented over integer Laurent polynomials (stored ring fact)",
            ),
        );
        return Ok((p1, p2));
    }
    if let Some(arith) = &ring.arithmetic {
        if arith.global_field_char == 0 {
            let ranks1: Vec<usize> =
                spec1.profiles()[0].levi_components.iter().map(Vec::len).collect();
            let ranks2: Vec<usize> =
                spec2.profiles()[0].levi_components.iter().map(Vec::len).collect();
            let p1 = s_arithmetic(&spec1, arith, &ranks1)?;
            let p2 = s_arithmetic(&spec2, arith, &ranks2)?;
            return Ok((p1, p2));
        }
    }
    Err(Error::InvalidInput(format!(
        "the block demonstration is defined over integer Laurent polynomials or a \
         characteristic-zero ring of S-integers, not {}",
        ring.name
    )))
}
