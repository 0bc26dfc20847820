//! Combinatorics of standard parabolic subgroups: Levi decompositions,
//! adjacency splits of the complement, kernel root sets, and the grading
//! that filters the kernel.
//!
//! A subset `I` of the simple roots determines the standard parabolic
//! `P_I = <torus, all x_a with a positive or supported on I>`. The
//! complement `Delta \ I` splits into the simples *adjacent* to `I` in the
//! diagram and the rest; `I` together with the non-adjacent part spans an
//! orthogonal union of subsystems. Positive roots then fall into three
//! disjoint classes: roots of the Levi subsystem `Phi_I`, positive roots of
//! the non-adjacent subsystem, and the *kernel* — roots using at least one
//! adjacent simple. Summing the adjacent-simple coefficients grades the
//! kernel; the grading is additive and at least 1 on every kernel root,
//! which is what makes the kernel subgroup nilpotent-filtered.
//!
//! The empty subset (Borel case) is profiled once per choice of a
//! distinguished simple root `a_n`: the retract target is generated by
//! `x_{a_n}` and the torus, the kernel is every other positive root, and the
//! grading sums all coefficients except the `n`-th.

use std::collections::BTreeSet;

use crate::rootsys::{Family, Root, RootSystem, RootSystemType};
use crate::{Error, Result};

/// A root system together with a validated subset of its simple roots.
#[derive(Debug, Clone)]
pub struct ParabolicSpec<'a> {
    rs: &'a RootSystem,
    subset: Vec<usize>,
}

/// The combinatorial shape of one parabolic (or one Borel profile).
///
/// All root sets hold root ids of the ambient system; simple roots are
/// referred to by index. `grading` lists the simple indices whose
/// coefficients are summed by [`ParabolicProfile::alvl`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicProfile {
    pub subset: Vec<usize>,
    /// Complement simples adjacent to the subset in the diagram.
    pub adj: Vec<usize>,
    /// Complement simples not adjacent to the subset.
    pub nonadj: Vec<usize>,
    /// `subset` plus `nonadj`: spans an orthogonal union of subsystems.
    pub ext: Vec<usize>,
    /// Connected components of the subset in the diagram.
    pub levi_components: Vec<Vec<usize>>,
    /// All roots of the Levi subsystem `Phi_I`.
    pub levi_roots: Vec<usize>,
    /// Root support of the retract target: `Phi_I` plus the positive roots
    /// of the non-adjacent subsystem (for the Borel profile: the single
    /// distinguished simple root).
    pub le_roots: Vec<usize>,
    /// Positive roots outside the span of `ext` — the filtered kernel.
    pub kernel_roots: Vec<usize>,
    /// Positive roots outside the Levi: support of the unipotent radical.
    pub unipotent_roots: Vec<usize>,
    /// Simple indices summed by the kernel grading.
    pub grading: Vec<usize>,
    /// For the Borel case, the distinguished simple index.
    pub borel_choice: Option<usize>,
}

impl<'a> ParabolicSpec<'a> {
    pub fn new(rs: &'a RootSystem, subset: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = subset.into_iter().collect();
        for &i in &set {
            if i >= rs.rank() {
                return Err(Error::InvalidInput(format!(
                    "simple root index {i} out of range for rank {}",
                    rs.rank()
                )));
            }
        }
        Ok(ParabolicSpec { rs, subset: set.into_iter().collect() })
    }

    /// Parse a subset given as 1-based indices (`"1,3"`), or the keywords
    /// `"long"` / `"short"` selecting all simple roots of that length, or
    /// `""` / `"none"` for the Borel case.
    pub fn parse(rs: &'a RootSystem, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "none" {
            return ParabolicSpec::new(rs, []);
        }
        if s == "long" || s == "short" {
            let want_long = s == "long";
            let idx = (0..rs.rank())
                .filter(|&i| rs.is_long(&Root::simple(rs.rank(), i)) == want_long);
            let spec = ParabolicSpec::new(rs, idx)?;
            if spec.subset.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "system {} has no {s} simple roots",
                    rs.rstype
                )));
            }
            return Ok(spec);
        }
        let mut idx = Vec::new();
        for part in s.split(',') {
            let k: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad simple-root index '{part}'")))?;
            if k == 0 {
                return Err(Error::InvalidInput("simple-root indices are 1-based".into()));
            }
            idx.push(k - 1);
        }
        ParabolicSpec::new(rs, idx)
    }

    pub fn rs(&self) -> &RootSystem {
        self.rs
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// One profile for a proper subset; one per distinguished simple for the
    /// Borel case.
    pub fn profiles(&self) -> Vec<ParabolicProfile> {
        if self.subset.is_empty() {
            (0..self.rs.rank()).map(|n| self.borel_profile(n)).collect()
        } else {
            vec![self.parabolic_profile()]
        }
    }

    fn parabolic_profile(&self) -> ParabolicProfile {
        let rs = self.rs;
        let in_subset = |i: usize| self.subset.contains(&i);
        let adjacent_to_subset = |i: usize| {
            self.subset
                .iter()
                .any(|&j| rs.cartan_matrix()[i][j] != 0 && i != j)
        };
        let mut adj = Vec::new();
        let mut nonadj = Vec::new();
        for i in 0..rs.rank() {
            if in_subset(i) {
                continue;
            }
            if adjacent_to_subset(i) {
                adj.push(i);
            } else {
                nonadj.push(i);
            }
        }
        let ext: Vec<usize> = {
            let mut v: Vec<usize> = self.subset.iter().chain(&nonadj).copied().collect();
            v.sort_unstable();
            v
        };

        let supported_on = |r: &Root, set: &[usize]| {
            r.coeffs
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || set.contains(&i))
        };
        let mut levi_roots = Vec::new();
        let mut le_roots = Vec::new();
        let mut kernel_roots = Vec::new();
        let mut unipotent_roots = Vec::new();
        for (id, r) in rs.roots().iter().enumerate() {
            if supported_on(r, &self.subset) {
                levi_roots.push(id);
                le_roots.push(id);
            } else if r.is_positive() {
                unipotent_roots.push(id);
                if supported_on(r, &nonadj) {
                    le_roots.push(id);
                } else {
                    debug_assert!(!supported_on(r, &ext), "orthogonal parts never mix");
                    kernel_roots.push(id);
                }
            }
        }

        ParabolicProfile {
            subset: self.subset.clone(),
            grading: adj.clone(),
            adj,
            nonadj,
            ext,
            levi_components: components(rs, &self.subset),
            levi_roots,
            le_roots,
            kernel_roots,
            unipotent_roots,
            borel_choice: None,
        }
    }

    fn borel_profile(&self, n: usize) -> ParabolicProfile {
        let rs = self.rs;
        let anchor = rs.simple_id(n);
        let kernel_roots: Vec<usize> = rs.positive_ids().filter(|&id| id != anchor).collect();
        ParabolicProfile {
            subset: Vec::new(),
            adj: Vec::new(),
            nonadj: (0..rs.rank()).collect(),
            ext: (0..rs.rank()).collect(),
            levi_components: Vec::new(),
            levi_roots: Vec::new(),
            le_roots: vec![anchor],
            kernel_roots,
            unipotent_roots: rs.positive_ids().collect(),
            grading: (0..rs.rank()).filter(|&i| i != n).collect(),
            borel_choice: Some(n),
        }
    }
}

impl ParabolicProfile {
    /// Kernel grading: sum of the root's coefficients over the grading
    /// simples. Additive in the root, zero on the retract-target roots,
    /// and at least 1 on every kernel root.
    pub fn alvl(&self, r: &Root) -> i64 {
        self.grading.iter().map(|&i| r.coeffs[i] as i64).sum()
    }

    /// Whether the subgroup this profiles retracts onto an almost-Borel
    /// (torus plus a single root subgroup): always in the Borel case, and
    /// exactly when some complement simple is non-adjacent otherwise.
    pub fn retracts_onto_almost_borel(&self) -> bool {
        self.subset.is_empty() || !self.nonadj.is_empty()
    }

    pub fn is_borel(&self) -> bool {
        self.subset.is_empty()
    }

    /// Largest kernel grading value.
    pub fn max_alvl(&self, rs: &RootSystem) -> i64 {
        self.kernel_roots
            .iter()
            .map(|&id| self.alvl(rs.root(id)))
            .max()
            .unwrap_or(0)
    }
}

/// Connected components of a set of simple indices in the diagram.
fn components(rs: &RootSystem, set: &[usize]) -> Vec<Vec<usize>> {
    let mut left: BTreeSet<usize> = set.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        left.remove(&start);
        let mut comp = vec![start];
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            let neighbors: Vec<usize> = left
                .iter()
                .copied()
                .filter(|&j| rs.cartan_matrix()[i][j] != 0)
                .collect();
            for j in neighbors {
                left.remove(&j);
                comp.push(j);
                frontier.push(j);
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Translate a composition of block sizes (a block-upper-triangular
/// subgroup of the special linear group of their total) into the ambient
/// type-A system and the parabolic subset: every simple root except the
/// ones at block boundaries.
pub fn blocks_to_subset(blocks: &[usize]) -> Result<(RootSystemType, Vec<usize>)> {
    if blocks.is_empty() || blocks.iter().any(|&b| b == 0) {
        return Err(Error::InvalidInput("block sizes must be positive".into()));
    }
    let n: usize = blocks.iter().sum();
    if n < 2 {
        return Err(Error::InvalidInput("need total size at least 2".into()));
    }
    let rstype = RootSystemType::new(Family::A, n - 1)?;
    let mut boundaries = BTreeSet::new();
    let mut acc = 0;
    for &b in &blocks[..blocks.len() - 1] {
        acc += b;
        boundaries.insert(acc - 1); // 0-based simple index of alpha_acc
    }
    let subset = (0..n - 1).filter(|i| !boundaries.contains(i)).collect();
    Ok((rstype, subset))
}
