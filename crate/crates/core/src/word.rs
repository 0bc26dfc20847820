//! Group words over the presentation alphabet: unipotent generators
//! `x_root(arg)`, kernel generators `x~_root(arg)`, and torus generators
//! `h_simple(unit-generator)`. Words are kept freely reduced; adjacent
//! letters with the same symbol merge their exponents.

use serde::{Deserialize, Serialize};

use crate::ringspec::{RingSpec, TildeElem, UnitElement};
use crate::rootsys::RootSystem;

/// One generator symbol of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSymbol {
    /// Unipotent root element `x_root(arg)` (schematic presentations).
    X { root: usize, arg: TildeElem },
    /// Kernel root element `x~_root(arg)` (finite presentations).
    XTilde { root: usize, arg: TildeElem },
    /// Torus element `h_simple(v)` for a unit-group generator `v`.
    H { simple: usize, unit_gen: usize },
}

impl GenSymbol {
    pub fn display(&self, rs: &RootSystem, ring: &RingSpec) -> String {
        match self {
            GenSymbol::X { root, arg } => {
                format!(
                    "x[{}]({})",
                    rs.roots()[*root].display(),
                    tilde_display(ring, arg)
                )
            }
            GenSymbol::XTilde { root, arg } => {
                format!(
                    "x~[{}]({})",
                    rs.roots()[*root].display(),
                    tilde_display(ring, arg)
                )
            }
            GenSymbol::H { simple, unit_gen } => {
                format!("h[a{}]({})", simple + 1, ring.unit_gens[*unit_gen].name)
            }
        }
    }
}

fn tilde_display(ring: &RingSpec, t: &TildeElem) -> String {
    let u = ring.unit_display(&t.unit);
    let x = &ring.additive_gens[t.x];
    match (u.as_str(), x.as_str()) {
        ("1", x) => x.to_string(),
        (u, "1") => u.to_string(),
        (u, x) => format!("{u}*{x}"),
    }
}

/// A freely reduced word; exponents are never zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<(GenSymbol, i64)>,
}

impl Word {
    pub fn new() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn letter(sym: GenSymbol, exp: i64) -> Self {
        let mut w = Word::new();
        w.push(sym, exp);
        w
    }

    /// Build a word from raw letters, freely reducing as they are pushed.
    pub fn from_letters(letters: impl IntoIterator<Item = (GenSymbol, i64)>) -> Self {
        let mut w = Word::new();
        for (sym, exp) in letters {
            w.push(sym, exp);
        }
        w
    }

    pub fn letters(&self) -> &[(GenSymbol, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Append one letter, merging with the tail when symbols coincide.
    pub fn push(&mut self, sym: GenSymbol, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some((last, e)) = self.letters.last_mut() {
            if *last == sym {
                *e += exp;
                if *e == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((sym, exp));
    }

    pub fn extend(&mut self, other: &Word) {
        for (sym, exp) in &other.letters {
            self.push(sym.clone(), *exp);
        }
    }

    pub fn concat(mut self, other: &Word) -> Word {
        self.extend(other);
        self
    }

    pub fn inv(&self) -> Word {
        let mut w = Word::new();
        for (sym, exp) in self.letters.iter().rev() {
            w.push(sym.clone(), -exp);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut w = Word::new();
        for _ in 0..k.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    /// `g self g^-1`.
    pub fn conj_by(&self, g: &Word) -> Word {
        g.clone().concat(self).concat(&g.inv())
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.clone().concat(b).concat(&a.inv()).concat(&b.inv())
    }

    /// The relator expressing `lhs = rhs`.
    pub fn equation(lhs: &Word, rhs: &Word) -> Word {
        lhs.clone().concat(&rhs.inv())
    }

    /// Append the expansion of `h_root(unit)^k` into the listed simple-root
    /// torus generators, via the coroot coefficients of `root` and
    /// multiplicativity in the argument.
    pub fn push_h(
        &mut self,
        rs: &RootSystem,
        root: usize,
        unit: &UnitElement,
        k: i64,
    ) {
        let coroot = rs.coroot_coeffs(root);
        for (i, &c) in coroot.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &e) in unit.exps.iter().enumerate() {
                let total = c * e * k;
                if total != 0 {
                    self.push(GenSymbol::H { simple: i, unit_gen: j }, total);
                }
            }
        }
    }

    pub fn display(&self, rs: &RootSystem, ring: &RingSpec) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|(sym, exp)| {
                let s = sym.display(rs, ring);
                if *exp == 1 {
                    s
                } else {
                    format!("{s}^{exp}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringspec::UnitElement;
    use crate::rootsys::RootSystemType;

    fn sym_x(root: usize) -> GenSymbol {
        GenSymbol::X {
            root,
            arg: TildeElem { unit: UnitElement { exps: vec![0, 0] }, x: 0 },
        }
    }

    #[test]
    fn words_reduce_freely() {
        let a = sym_x(3);
        let b = sym_x(4);
        let mut w = Word::new();
        w.push(a.clone(), 2);
        w.push(b.clone(), 1);
        w.push(b.clone(), -1);
        w.push(a.clone(), -2);
        assert!(w.is_empty());

        let mut w = Word::new();
        w.push(a.clone(), 1);
        w.push(a.clone(), 1);
        assert_eq!(w.letters(), &[(a.clone(), 2)]);
        assert_eq!(w.length(), 2);
    }

    #[test]
    fn inverse_and_commutator_shapes() {
        let a = Word::letter(sym_x(0), 1);
        let b = Word::letter(sym_x(1), 1);
        let c = Word::commutator(&a, &b);
        assert_eq!(c.length(), 4);
        assert!(c.clone().concat(&c.inv()).is_empty());
        let conj = b.conj_by(&a);
        assert_eq!(conj.length(), 3);
        assert!(Word::equation(&a, &a).is_empty());
    }

    #[test]
    fn composite_torus_letters_expand_through_coroots() {
        let rs = RootSystem::build(RootSystemType::parse("A2").unwrap()).unwrap();
        let ring = crate::ringspec::RingSpec::z_laurent();
        // highest root a1 + a2 has coroot coefficients (1, 1)
        let high = rs.highest_root_id();
        let t = UnitElement { exps: vec![0, 1] };
        let mut w = Word::new();
        w.push_h(&rs, high, &t, 2);
        assert_eq!(
            w.letters(),
            &[
                (GenSymbol::H { simple: 0, unit_gen: 1 }, 2),
                (GenSymbol::H { simple: 1, unit_gen: 1 }, 2),
            ]
        );
        assert_eq!(w.display(&rs, &ring), "h[a1](t)^2 h[a2](t)^2");
    }
}
