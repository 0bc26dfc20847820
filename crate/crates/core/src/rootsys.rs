//! Reduced irreducible root systems of types `A`–`G` in Bourbaki numbering.
//!
//! Roots are stored as integer coordinate vectors over the simple roots, so
//! all computations are exact integer arithmetic. The system is built by
//! closing the simple roots under the simple reflections
//! `r_i(b) = b - <b, alpha_i^v> alpha_i`, which needs only the Cartan matrix.
//! The inner product used for general Cartan integers is the symmetrization
//! `<a_i, a_j> = A_ij * d_j` with `d_j = <a_j, a_j> / 2` in `{1, 2, 3}`
//! (short roots normalized to squared length 2).
//!
//! The root list is sorted by (height, lexicographic coefficients); this
//! fixed total order is relied on throughout the crate (extraspecial pairs,
//! route tie-breaking, canonical serialization).

use std::collections::{HashMap, VecDeque};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRootSystem(format!("{family:?}{rank}")));
        }
        Ok(RootSystemType { family, rank })
    }

    /// Parse e.g. `"G2"`, `"A3"`, `"B12"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (fam, digits) = s.split_at(1);
        let family = match fam {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return Err(Error::InvalidRootSystem(s.to_string())),
        };
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::InvalidRootSystem(s.to_string()))?;
        RootSystemType::new(family, rank)
    }
}

impl std::fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root, as integer coefficients over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root { coeffs: c }
    }

    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }

    pub fn neg(&self) -> Root {
        Root { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Index of the unique nonzero coordinate if this is (+-) a simple root.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 | -1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// Compact display like `a1+2a2` or `-a1-a2`.
    pub fn display(&self) -> String {
        if self.coeffs.iter().all(|&c| c == 0) {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            if mag == 1 {
                out.push_str(&format!("{sign}a{}", i + 1));
            } else {
                out.push_str(&format!("{sign}{mag}a{}", i + 1));
            }
        }
        out
    }
}

/// A complete root system with its fixed root order and lookup index.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub rstype: RootSystemType,
    cartan: Vec<Vec<i64>>,
    dsym: Vec<i64>,
    roots: Vec<Root>,
    index: HashMap<Vec<i32>, usize>,
    n_pos: usize,
}

/// Dynkin-diagram edges and the symmetrizer `d` for each family, Bourbaki
/// numbering (for `B`: last simple short; `C`: last long; `F4`: 1,2 long;
/// `G2`: first short, second long; `D`/`E`: the usual fork).
fn diagram(t: RootSystemType) -> (Vec<(usize, usize)>, Vec<i64>) {
    let n = t.rank;
    let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match t.family {
        Family::A => (chain(n), vec![1; n]),
        Family::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (chain(n), d)
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (chain(n), d)
        }
        Family::D => {
            let mut e = chain(n - 1); // 1-2-...-(n-1)
            e.push((n - 3, n - 1)); // fork at n-2
            (e, vec![1; n])
        }
        Family::E => {
            // chain 1-3-4-5-6(-7)(-8), node 2 hangs off node 4
            let mut e = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
            if n >= 7 {
                e.push((5, 6));
            }
            if n == 8 {
                e.push((6, 7));
            }
            (e, vec![1; n])
        }
        Family::F => (chain(4), vec![2, 2, 1, 1]),
        Family::G => (vec![(0, 1)], vec![1, 3]),
    }
}

impl RootSystem {
    pub fn build(rstype: RootSystemType) -> Result<Self> {
        let n = rstype.rank;
        let (edges, dsym) = diagram(rstype);
        // Cartan matrix A[i][j] = <alpha_i, alpha_j^v> = <a_i,a_j> / d_j,
        // with <a_i,a_j> = -max(d_i, d_j) on diagram edges.
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
        }
        for &(i, j) in &edges {
            let m = dsym[i].max(dsym[j]);
            cartan[i][j] = -m / dsym[j];
            cartan[j][i] = -m / dsym[i];
        }

        // Close the simple roots under simple reflections.
        let mut index: HashMap<Vec<i32>, usize> = HashMap::new();
        let mut roots: Vec<Root> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for i in 0..n {
            let r = Root::simple(n, i);
            index.insert(r.coeffs.clone(), roots.len());
            roots.push(r);
            queue.push_back(i);
        }
        while let Some(id) = queue.pop_front() {
            let b = roots[id].clone();
            for i in 0..n {
                // <b, alpha_i^v> = sum_j b_j A[j][i]
                let pairing: i64 = b
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| c as i64 * cartan[j][i])
                    .sum();
                let mut r = b.clone();
                r.coeffs[i] -= pairing as i32;
                if !index.contains_key(&r.coeffs) {
                    index.insert(r.coeffs.clone(), roots.len());
                    queue.push_back(roots.len());
                    roots.push(r);
                }
            }
        }

        roots.sort_by_key(|r| (r.height(), r.coeffs.clone()));
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect();
        let n_pos = roots.len() / 2;
        Ok(RootSystem { rstype, cartan, dsym, roots, index, n_pos })
    }

    pub fn rank(&self) -> usize {
        self.rstype.rank
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    /// Ids of the positive roots in the fixed order (they are the upper half
    /// of the root list).
    pub fn positive_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.n_pos..self.roots.len()
    }

    pub fn root(&self, id: usize) -> &Root {
        &self.roots[id]
    }

    pub fn id_of(&self, r: &Root) -> Result<usize> {
        self.index
            .get(&r.coeffs)
            .copied()
            .ok_or_else(|| Error::RootNotInSystem(r.display()))
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(&r.coeffs)
    }

    pub fn try_id(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn neg_id(&self, id: usize) -> usize {
        self.index[&self.roots[id].neg().coeffs]
    }

    pub fn simple_id(&self, i: usize) -> usize {
        self.index[&Root::simple(self.rank(), i).coeffs]
    }

    pub fn is_positive_id(&self, id: usize) -> bool {
        id >= self.n_pos
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i = <alpha_i, alpha_i> / 2`.
    pub fn dsym(&self) -> &[i64] {
        &self.dsym
    }

    /// Symmetric bilinear form `<a, b>` (squared length of short roots is 2).
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let mut acc = 0i64;
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                acc += x as i64 * y as i64 * self.cartan[i][j] * self.dsym[j];
            }
        }
        acc
    }

    /// Cartan integer `(a, b) = 2<a, b> / <b, b>`; both arguments must be
    /// roots of this system.
    pub fn cartan_int(&self, a: &Root, b: &Root) -> Result<i64> {
        self.id_of(a)?;
        self.id_of(b)?;
        let num = 2 * self.inner(a, b);
        let den = self.inner(b, b);
        debug_assert!(num % den == 0, "Cartan integer must be integral");
        Ok(num / den)
    }

    pub fn cartan_int_ids(&self, a: usize, b: usize) -> i64 {
        let num = 2 * self.inner(&self.roots[a], &self.roots[b]);
        let den = self.inner(&self.roots[b], &self.roots[b]);
        num / den
    }

    /// Reflection of `b` in the hyperplane orthogonal to `a`:
    /// `r_a(b) = b - (b, a) a`.
    pub fn reflect(&self, a: &Root, b: &Root) -> Result<Root> {
        let c = self.cartan_int(b, a)?;
        let coeffs = b
            .coeffs
            .iter()
            .zip(&a.coeffs)
            .map(|(&x, &y)| x - (c as i32) * y)
            .collect();
        let r = Root::new(coeffs);
        debug_assert!(self.contains(&r));
        Ok(r)
    }

    /// `true` if the root is long (in simply laced systems every root counts
    /// as long).
    pub fn is_long(&self, r: &Root) -> bool {
        let sq = self.inner(r, r);
        let max = self.roots.iter().map(|x| self.inner(x, x)).max().unwrap();
        sq == max
    }

    pub fn is_simply_laced(&self) -> bool {
        self.dsym.iter().all(|&d| d == 1)
    }

    pub fn highest_root_id(&self) -> usize {
        self.roots.len() - 1
    }

    /// Coefficients of the coroot `a^v` over the simple coroots:
    /// `a^v = sum_i (m_i d_i / d_a) alpha_i^v` for `a = sum_i m_i alpha_i`.
    pub fn coroot_coeffs(&self, id: usize) -> Vec<i64> {
        let a = &self.roots[id];
        let da = self.inner(a, a) / 2;
        a.coeffs
            .iter()
            .zip(&self.dsym)
            .map(|(&m, &d)| {
                let num = m as i64 * d;
                debug_assert!(num % da == 0, "coroot coefficients must be integral");
                num / da
            })
            .collect()
    }

    /// Split a positive non-simple root as `simple + positive root`, taking
    /// the first simple root (in Bourbaki order) that works.
    pub fn decompose_positive(&self, g: &Root) -> Result<(Root, Root)> {
        let id = self.id_of(g)?;
        if !self.is_positive_id(id) {
            return Err(Error::InvalidInput(format!("{} is not positive", g.display())));
        }
        if g.simple_index().is_some() {
            return Err(Error::InvalidInput(format!("{} is simple", g.display())));
        }
        for i in 0..self.rank() {
            let mut rest = g.clone();
            rest.coeffs[i] -= 1;
            if let Some(rid) = self.try_id(&rest.coeffs) {
                if self.is_positive_id(rid) {
                    return Ok((Root::simple(self.rank(), i), rest));
                }
            }
        }
        unreachable!("every positive non-simple root splits off a simple root")
    }

    /// All roots lying in the integer span of the given roots, as sorted ids.
    /// Exact lattice membership via a Hermite-style column echelon basis.
    pub fn subsystem(&self, gens: &[Root]) -> Result<Vec<usize>> {
        for g in gens {
            self.id_of(g)?;
        }
        let cols: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.coeffs.iter().map(|&c| c as i64).collect())
            .collect();
        let basis = lattice_echelon(self.rank(), cols);
        let mut out: Vec<usize> = Vec::new();
        for (id, r) in self.roots.iter().enumerate() {
            let v: Vec<i64> = r.coeffs.iter().map(|&c| c as i64).collect();
            if lattice_contains(&basis, &v) {
                out.push(id);
            }
        }
        Ok(out)
    }

    /// Shortest sequence of reflections in positive roots carrying the
    /// positive root `g` to a simple root (breadth-first over the orbit;
    /// ties resolved by the fixed root order). Returns the reflecting roots
    /// in application order together with the simple root reached.
    pub fn weyl_route_to_simple(&self, g: &Root) -> Result<(Vec<Root>, Root)> {
        let gid = self.id_of(g)?;
        if !self.is_positive_id(gid) {
            return Err(Error::InvalidInput(format!("{} is not positive", g.display())));
        }
        // parent[id] = (previous id, reflecting root id)
        let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::new();
        parent.insert(gid, (gid, usize::MAX));
        queue.push_back(gid);
        while let Some(cur) = queue.pop_front() {
            if self.roots[cur].simple_index().is_some() && self.is_positive_id(cur) {
                // reconstruct
                let mut route = Vec::new();
                let mut at = cur;
                while at != gid {
                    let (prev, refl) = parent[&at];
                    route.push(self.roots[refl].clone());
                    at = prev;
                }
                route.reverse();
                return Ok((route, self.roots[cur].clone()));
            }
            for b in self.positive_ids() {
                let img = self.reflect(&self.roots[b], &self.roots[cur]).unwrap();
                let iid = self.id_of(&img).unwrap();
                if !parent.contains_key(&iid) {
                    parent.insert(iid, (cur, b));
                    queue.push_back(iid);
                }
            }
        }
        unreachable!("the orbit of a positive root always contains a simple root")
    }

    /// Canonical JSON form: type, simple roots, positive roots in the fixed
    /// order, all as coefficient vectors.
    pub fn to_json(&self) -> serde_json::Value {
        let simples: Vec<Vec<i32>> = (0..self.rank())
            .map(|i| Root::simple(self.rank(), i).coeffs)
            .collect();
        let positive: Vec<Vec<i32>> = self
            .positive_ids()
            .map(|id| self.roots[id].coeffs.clone())
            .collect();
        serde_json::json!({
            "type": self.rstype.to_string(),
            "simples": simples,
            "positive": positive,
        })
    }
}

/// Column-echelon basis of the lattice spanned by `cols` (integer column
/// operations only, so the lattice is unchanged).
fn lattice_echelon(dim: usize, mut cols: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    cols.retain(|c| c.iter().any(|&x| x != 0));
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut row = 0;
    while row < dim && !cols.is_empty() {
        // repeatedly reduce at this row until at most one column is nonzero there
        loop {
            let mut nz: Vec<usize> = (0..cols.len()).filter(|&j| cols[j][row] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&j| cols[j][row].abs());
            let pivot = nz[0];
            for &j in &nz[1..] {
                let q = cols[j][row] / cols[pivot][row];
                for r in 0..dim {
                    cols[j][r] -= q * cols[pivot][r];
                }
            }
            cols.retain(|c| c.iter().any(|&x| x != 0));
        }
        if let Some(j) = (0..cols.len()).find(|&j| cols[j][row] != 0) {
            let mut col = cols.swap_remove(j);
            if col[row] < 0 {
                for x in col.iter_mut() {
                    *x = -*x;
                }
            }
            basis.push(col);
        }
        row += 1;
    }
    basis
}

/// Membership of `v` in the lattice spanned by an echelon `basis`.
fn lattice_contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v = v.to_vec();
    for b in basis {
        let row = b.iter().position(|&x| x != 0).unwrap();
        if v[row] % b[row] != 0 {
            return false;
        }
        let q = v[row] / b[row];
        if q != 0 {
            for (x, y) in v.iter_mut().zip(b) {
                *x -= q * y;
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::build(RootSystemType::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn root_counts_match_closed_forms() {
        // |A_n| = n(n+1), |B_n| = |C_n| = 2n^2, |D_n| = 2n(n-1),
        // |G2| = 12, |F4| = 48, |E6| = 72, |E7| = 126, |E8| = 240.
        let cases = [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("A4", 20),
            ("B2", 8),
            ("B3", 18),
            ("B4", 32),
            ("C3", 18),
            ("C4", 32),
            ("D3", 12),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ];
        for (name, count) in cases {
            let rs = sys(name);
            assert_eq!(rs.num_roots(), count, "{name}");
            assert_eq!(rs.num_positive() * 2, rs.num_roots(), "{name}");
        }
    }

    #[test]
    fn a2_roots_are_the_expected_six() {
        let rs = sys("A2");
        let mut got: Vec<Vec<i32>> = rs.roots().iter().map(|r| r.coeffs.clone()).collect();
        got.sort();
        let mut want = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![-1, 0],
            vec![0, -1],
            vec![-1, -1],
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn g2_highest_root_and_lengths() {
        let rs = sys("G2");
        assert_eq!(rs.root(rs.highest_root_id()).coeffs, vec![3, 2]);
        // first simple short, second long
        assert!(!rs.is_long(&Root::simple(2, 0)));
        assert!(rs.is_long(&Root::simple(2, 1)));
        // the G2 cartan integers: (long, short) = -3, (short, long) = -1
        let s = Root::simple(2, 0);
        let l = Root::simple(2, 1);
        assert_eq!(rs.cartan_int(&l, &s).unwrap(), -3);
        assert_eq!(rs.cartan_int(&s, &l).unwrap(), -1);
    }

    #[test]
    fn order_is_by_height_then_lex() {
        let rs = sys("A2");
        let heights: Vec<i32> = rs.roots().iter().map(|r| r.height()).collect();
        let mut sorted = heights.clone();
        sorted.sort();
        assert_eq!(heights, sorted);
        // positives occupy the top half
        assert!(rs.positive_ids().all(|id| rs.root(id).is_positive()));
    }

    #[test]
    fn cartan_integers_stay_in_range() {
        for name in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let rs = sys(name);
            for a in rs.roots() {
                for b in rs.roots() {
                    let c = rs.cartan_int(a, b).unwrap();
                    assert!((-3..=3).contains(&c) || a == b || *a == b.neg(), "{name}");
                    if a == b {
                        assert_eq!(c, 2);
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_is_an_involution_preserving_the_system() {
        for name in ["A2", "B2", "G2", "D4"] {
            let rs = sys(name);
            for a in rs.roots() {
                for b in rs.roots() {
                    let r = rs.reflect(a, b).unwrap();
                    assert!(rs.contains(&r));
                    assert_eq!(rs.reflect(a, &r).unwrap(), *b);
                }
            }
        }
    }

    #[test]
    fn reflection_fixes_orthogonal_and_negates_self() {
        let rs = sys("B2");
        let a1 = Root::simple(2, 0);
        assert_eq!(rs.reflect(&a1, &a1).unwrap(), a1.neg());
        // a1 _|_ a1 + 2a2 in B2
        let orth = Root::new(vec![1, 2]);
        assert_eq!(rs.inner(&a1, &orth), 0);
        assert_eq!(rs.reflect(&a1, &orth).unwrap(), orth);
    }

    #[test]
    fn decompose_positive_picks_minimal_simple() {
        let rs = sys("A3");
        let g = Root::new(vec![1, 1, 1]);
        let (a, b) = rs.decompose_positive(&g).unwrap();
        assert_eq!(a.coeffs, vec![1, 0, 0]);
        assert_eq!(b.coeffs, vec![0, 1, 1]);

        // G2 highest root: first simple summand in Bourbaki order is a2
        let rs = sys("G2");
        let g = Root::new(vec![3, 2]);
        let (a, b) = rs.decompose_positive(&g).unwrap();
        assert_eq!(a.coeffs, vec![0, 1]);
        assert_eq!(b.coeffs, vec![3, 1]);
        assert!(rs.contains(&b));

        assert!(rs.decompose_positive(&Root::simple(2, 0)).is_err());
        assert!(rs.decompose_positive(&Root::new(vec![-1, -1])).is_err());
    }

    #[test]
    fn every_positive_nonsimple_root_decomposes() {
        for name in ["A4", "B3", "C3", "D4", "G2", "F4"] {
            let rs = sys(name);
            for id in rs.positive_ids() {
                let g = rs.root(id).clone();
                if g.simple_index().is_some() {
                    continue;
                }
                let (a, b) = rs.decompose_positive(&g).unwrap();
                let sum: Vec<i32> = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
                assert_eq!(sum, g.coeffs, "{name}");
                assert!(b.is_positive());
            }
        }
    }

    #[test]
    fn subsystem_of_g2_simples_is_everything() {
        let rs = sys("G2");
        let ids = rs
            .subsystem(&[Root::simple(2, 0), Root::simple(2, 1)])
            .unwrap();
        assert_eq!(ids.len(), 12);
    }

    #[test]
    fn subsystem_matches_bounded_brute_force() {
        // Independent oracle: integer combinations with coefficients in
        // [-4, 4] (enough at this scale: all coefficients of roots are small).
        let rs = sys("B3");
        let gens = vec![Root::simple(3, 0), Root::new(vec![0, 1, 1])];
        let fast = rs.subsystem(&gens).unwrap();
        let mut slow = Vec::new();
        for (id, r) in rs.roots().iter().enumerate() {
            let mut found = false;
            'outer: for x in -4i32..=4 {
                for y in -4i32..=4 {
                    let v: Vec<i32> = gens[0]
                        .coeffs
                        .iter()
                        .zip(&gens[1].coeffs)
                        .map(|(a, b)| x * a + y * b)
                        .collect();
                    if v == r.coeffs {
                        found = true;
                        break 'outer;
                    }
                }
            }
            if found {
                slow.push(id);
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn weyl_route_reaches_a_simple_root() {
        for name in ["A3", "B3", "G2", "F4"] {
            let rs = sys(name);
            for id in rs.positive_ids() {
                let g = rs.root(id).clone();
                let (route, target) = rs.weyl_route_to_simple(&g).unwrap();
                assert!(route.len() <= rs.num_positive(), "{name}");
                let mut cur = g;
                for b in &route {
                    cur = rs.reflect(b, &cur).unwrap();
                }
                assert_eq!(cur, target, "{name}");
                assert!(target.simple_index().is_some());
            }
        }
    }

    #[test]
    fn g2_highest_short_root_has_short_route() {
        let rs = sys("G2");
        let (route, _) = rs.weyl_route_to_simple(&Root::new(vec![2, 1])).unwrap();
        assert!(route.len() <= 6);
    }

    #[test]
    fn coroot_coefficients_are_integral() {
        for name in ["B3", "C3", "G2", "F4"] {
            let rs = sys(name);
            for (id, r) in rs.roots().iter().enumerate() {
                let co = rs.coroot_coeffs(id);
                // sanity: (b, a) = <b, a^v> = sum_i co_i (b, alpha_i)
                for b in rs.roots() {
                    let direct = rs.cartan_int(b, r).unwrap();
                    let via: i64 = co
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| c * rs.cartan_int(b, &Root::simple(rs.rank(), i)).unwrap())
                        .sum();
                    assert_eq!(direct, via, "{name}");
                }
            }
        }
    }

    #[test]
    fn canonical_json_shape() {
        let rs = sys("G2");
        let v = rs.to_json();
        assert_eq!(v["type"], "G2");
        assert_eq!(v["simples"], serde_json::json!([[1, 0], [0, 1]]));
        assert_eq!(
            v["positive"],
            serde_json::json!([[0, 1], [1, 0], [1, 1], [2, 1], [3, 1], [3, 2]])
        );
    }

    #[test]
    fn invalid_types_are_rejected() {
        assert!(RootSystemType::parse("E9").is_err());
        assert!(RootSystemType::parse("F3").is_err());
        assert!(RootSystemType::parse("G3").is_err());
        assert!(RootSystemType::parse("B1").is_err());
        assert!(RootSystemType::parse("H2").is_err());
        assert!(RootSystemType::parse("A0").is_err());
    }
}
