//! Exact finite permutation groups.
//!
//! Orders come from a deterministic Schreier–Sims stabilizer chain;
//! centralizers, normalizers and conjugacy tests are exhaustive scans for
//! groups whose order is at most the enumeration cap, and stabilizer-chain
//! backtrack searches above it. All values are immutable after construction
//! and every iteration order is deterministic.

mod backtrack;
mod chain;
mod perm;

pub use perm::Perm;

use crate::elemab::ElemAbSubgroup;
use crate::fplin::FpMatrix;
use crate::{Error, Result};
use backtrack::{commuting_prune, conjugating_prune, orbit_profile_prune, Search};
use chain::StabChain;
use std::collections::HashSet;
use std::ops::ControlFlow;
use std::sync::OnceLock;

/// Node budget for backtrack searches above the enumeration cap.
const BACKTRACK_NODE_BUDGET: u64 = 1 << 26;

/// Finitely generated permutation group of fixed degree.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
    elements: OnceLock<Vec<Perm>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let g = PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        };
        if let Some(e) = self.elements.get() {
            let _ = g.elements.set(e.clone());
        }
        g
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Group generated by `generators`; panics if a generator has the wrong
    /// degree.
    pub fn new(degree: usize, generators: Vec<Perm>) -> PermGroup {
        for g in &generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new())
    }

    pub fn symmetric(n: usize) -> PermGroup {
        if n < 2 {
            return PermGroup::trivial(n);
        }
        let transposition = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
        let cycle = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        PermGroup::new(n, vec![transposition, cycle])
    }

    pub fn alternating(n: usize) -> PermGroup {
        if n < 3 {
            return PermGroup::trivial(n);
        }
        let three_cycle = Perm::from_cycles(n, &[vec![0, 1, 2]]).unwrap();
        let long = if n % 2 == 1 {
            Perm::from_cycles(n, &[(0..n).collect()]).unwrap()
        } else {
            Perm::from_cycles(n, &[(1..n).collect()]).unwrap()
        };
        PermGroup::new(n, vec![three_cycle, long])
    }

    pub fn cyclic(n: usize) -> PermGroup {
        if n < 2 {
            return PermGroup::trivial(n);
        }
        PermGroup::new(n, vec![Perm::from_cycles(n, &[(0..n).collect()]).unwrap()])
    }

    /// Group given by its full element list (which must be closed under the
    /// group operations). A small strong generating set is extracted and the
    /// list is kept as the cached enumeration.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let mut chain = StabChain::build(degree, &[]);
        let mut gens = Vec::new();
        for e in &elements {
            assert_eq!(e.degree(), degree, "element degree mismatch");
            if !chain.contains(e) {
                chain.insert(e.clone());
                gens.push(e.clone());
            }
        }
        assert_eq!(
            chain.order(),
            elements.len() as u64,
            "element list is not closed under the group operations"
        );
        let group = PermGroup {
            degree,
            generators: gens,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        };
        let _ = group.chain.set(chain);
        let _ = group.elements.set(elements);
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    /// Exact group order via the stabilizer chain.
    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.chain().contains(p)
    }

    pub fn contains_subgroup(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.generators.iter().all(|g| self.contains(g))
    }

    /// Independent oracle for `order`: breadth-first closure of the
    /// generating set, capped.
    pub fn closure_order(&self, cap: u64) -> Result<u64> {
        Ok(self.closure_elements(cap)?.len() as u64)
    }

    /// Breadth-first closure of the generating set, sorted; errors above `cap`.
    pub fn closure_elements(&self, cap: u64) -> Result<Vec<Perm>> {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in &self.generators {
                let y = g.compose(&x);
                if !seen.contains(&y) {
                    if seen.len() as u64 + 1 > cap {
                        return Err(Error::limit(format!(
                            "closure enumeration exceeds cap {cap}"
                        )));
                    }
                    seen.insert(y.clone());
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Full element list in lexicographic image order; errors if the order
    /// exceeds `cap`. The list is cached.
    pub fn elements(&self, cap: u64) -> Result<&[Perm]> {
        if self.elements.get().is_none() {
            if self.order() > cap {
                return Err(Error::limit(format!(
                    "group of order {} exceeds enumeration cap {cap}",
                    self.order()
                )));
            }
            let mut out = Vec::with_capacity(self.order() as usize);
            self.chain()
                .for_each_element(&mut |p: &Perm| out.push(p.clone()));
            out.sort();
            let _ = self.elements.set(out);
        }
        Ok(self.elements.get().unwrap())
    }

    /// Stream every element exactly once without materializing the list.
    pub fn for_each_element<F: FnMut(&Perm)>(&self, mut f: F) {
        self.chain().for_each_element(&mut f);
    }

    /// Stream elements with early exit.
    pub fn try_for_each_element<F: FnMut(&Perm) -> ControlFlow<()>>(&self, mut f: F) {
        fn rec<F: FnMut(&Perm) -> ControlFlow<()>>(
            levels: &[chain::Level],
            acc: &Perm,
            f: &mut F,
        ) -> ControlFlow<()> {
            match levels.first() {
                None => f(acc),
                Some(level) => {
                    for pt in level.orbit_points() {
                        let rep = level.transversal[pt].as_ref().unwrap();
                        rec(&levels[1..], &acc.compose(rep), f)?;
                    }
                    ControlFlow::Continue(())
                }
            }
        }
        let chain = self.chain();
        let _ = rec(&chain.levels, &Perm::identity(self.degree), &mut f);
    }

    /// Orbits of the group on {0..degree−1}, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut qi = 0;
            while qi < orbit.len() {
                let pt = orbit[qi];
                qi += 1;
                for g in &self.generators {
                    let img = g.apply(pt);
                    if !seen[img] {
                        seen[img] = true;
                        orbit.push(img);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Centralizer of `g`, with a full element list when the group order is
    /// at most `cap`, by backtrack search otherwise.
    pub fn centralizer(&self, g: &Perm, cap: u64) -> Result<PermGroup> {
        if !self.contains(g) {
            return Err(Error::NotAMember);
        }
        if g.is_identity() {
            return Ok(self.clone());
        }
        if self.order() <= cap {
            let mut found = Vec::new();
            self.for_each_element(|x| {
                if g.conjugate_by(x) == *g {
                    found.push(x.clone());
                }
            });
            return Ok(PermGroup::from_elements(self.degree, found));
        }
        let prune = commuting_prune(g);
        let leaf = |x: &Perm| g.conjugate_by(x) == *g;
        let gens = Search {
            chain: self.chain(),
            prune: &prune,
            leaf: &leaf,
            node_budget: BACKTRACK_NODE_BUDGET,
        }
        .find_subgroup()?;
        Ok(PermGroup::new(self.degree, gens))
    }

    /// Normalizer of the subgroup `h`.
    pub fn normalizer(&self, h: &PermGroup, cap: u64) -> Result<PermGroup> {
        if !self.contains_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        if h.order() == self.order() {
            return Ok(self.clone());
        }
        let h_set: HashSet<Perm> = h.elements(cap)?.iter().cloned().collect();
        let normalizes = |x: &Perm| {
            h.generators
                .iter()
                .all(|hg| h_set.contains(&hg.conjugate_by(x)))
        };
        if self.order() <= cap {
            let mut found = Vec::new();
            self.for_each_element(|x| {
                if normalizes(x) {
                    found.push(x.clone());
                }
            });
            return Ok(PermGroup::from_elements(self.degree, found));
        }
        let orbit_size = {
            let mut size = vec![0usize; self.degree];
            for orbit in h.orbits() {
                for &pt in &orbit {
                    size[pt] = orbit.len();
                }
            }
            size
        };
        let prune = orbit_profile_prune(orbit_size);
        let gens = Search {
            chain: self.chain(),
            prune: &prune,
            leaf: &normalizes,
            node_budget: BACKTRACK_NODE_BUDGET,
        }
        .find_subgroup()?;
        Ok(PermGroup::new(self.degree, gens))
    }

    /// Search for an element conjugating the subgroup `h` onto the subgroup
    /// `k` as sets. Both must be enumerable within `cap`.
    pub fn subgroup_conjugator(
        &self,
        h: &PermGroup,
        k: &PermGroup,
        cap: u64,
    ) -> Result<Option<Perm>> {
        if !self.contains_subgroup(h) || !self.contains_subgroup(k) {
            return Err(Error::NotASubgroup);
        }
        if h.order() != k.order() {
            return Ok(None);
        }
        let k_set: HashSet<Perm> = k.elements(cap)?.iter().cloned().collect();
        let maps_onto = |z: &Perm| {
            h.generators
                .iter()
                .all(|hg| k_set.contains(&hg.conjugate_by(z)))
        };
        if self.order() <= cap {
            let mut found = None;
            self.try_for_each_element(|z| {
                if maps_onto(z) {
                    found = Some(z.clone());
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            return Ok(found);
        }
        let orbit_size_of = |grp: &PermGroup| {
            let mut size = vec![0usize; self.degree];
            for orbit in grp.orbits() {
                for &pt in &orbit {
                    size[pt] = orbit.len();
                }
            }
            size
        };
        let h_sizes = orbit_size_of(h);
        let k_sizes = orbit_size_of(k);
        let prune = move |bases: &[usize], images: &[usize]| {
            bases
                .iter()
                .zip(images)
                .all(|(&b, &img)| h_sizes[b] == k_sizes[img])
        };
        Search {
            chain: self.chain(),
            prune: &prune,
            leaf: &maps_onto,
            node_budget: BACKTRACK_NODE_BUDGET,
        }
        .find_one()
    }

    /// Whether some element of the group conjugates `x` to `y`.
    pub fn are_conjugate(&self, x: &Perm, y: &Perm, cap: u64) -> Result<bool> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::NotAMember);
        }
        if x.cycle_type() != y.cycle_type() {
            return Ok(false);
        }
        if x == y {
            return Ok(true);
        }
        if self.order() <= cap {
            let mut found = false;
            self.try_for_each_element(|z| {
                if x.conjugate_by(z) == *y {
                    found = true;
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            return Ok(found);
        }
        let prune = conjugating_prune(x, y);
        let leaf = |z: &Perm| x.conjugate_by(z) == *y;
        let sol = Search {
            chain: self.chain(),
            prune: &prune,
            leaf: &leaf,
            node_budget: BACKTRACK_NODE_BUDGET,
        }
        .find_one()?;
        Ok(sol.is_some())
    }
}

/// The Weyl action of `g` on an elementary abelian subgroup, together with
/// the counts needed to audit it.
#[derive(Debug, Clone)]
pub struct WeylAction {
    /// Image of the normalizer in Aut(E) ≅ GL_k(F_p) as matrices in the
    /// fixed ordered basis of E, sorted and duplicate-free.
    pub matrices: Vec<FpMatrix>,
    pub normalizer_order: u64,
    /// Order of the kernel of N_G(E) → Aut(E) (elements acting trivially).
    pub kernel_order: u64,
}

/// Compute the Weyl group W_G(E) = N_G(E)/C as explicit matrices: row i of
/// each matrix is the exponent vector of n·e_i·n⁻¹ in the ordered basis
/// (e_1, …, e_k) of E, matching the row-vector action convention of `fplin`.
pub fn weyl_action(g: &PermGroup, e: &ElemAbSubgroup, cap: u64) -> Result<WeylAction> {
    let p = e.p();
    let k = e.rank();
    if k == 0 {
        return Err(Error::invalid(
            "weyl_action needs a subgroup of positive rank",
        ));
    }
    let gens = e.generators();
    for x in gens {
        if !g.contains(x) {
            return Err(Error::NotASubgroup);
        }
    }
    let expo = exponent_table(gens, p, k)?;
    let e_set: HashSet<Perm> = expo.keys().cloned().collect();

    let normalizer_elems: Vec<Perm> = if g.order() <= cap {
        let mut found = Vec::new();
        g.for_each_element(|x| {
            if gens.iter().all(|eg| e_set.contains(&eg.conjugate_by(x))) {
                found.push(x.clone());
            }
        });
        found
    } else {
        let n = g.normalizer(&e.group(), cap)?;
        if n.order() > cap {
            return Err(Error::limit(format!(
                "normalizer of order {} exceeds cap {cap}",
                n.order()
            )));
        }
        n.elements(cap)?.to_vec()
    };

    let mut matrices = std::collections::BTreeSet::new();
    let mut kernel_order = 0u64;
    let identity = FpMatrix::identity(p, k)?;
    for x in &normalizer_elems {
        let mut rows = Vec::with_capacity(k * k);
        for eg in gens {
            rows.extend_from_slice(&expo[&eg.conjugate_by(x)]);
        }
        let m = FpMatrix::new(p, k, k, rows)?;
        if m == identity {
            kernel_order += 1;
        }
        matrices.insert(m);
    }
    Ok(WeylAction {
        matrices: matrices.into_iter().collect(),
        normalizer_order: normalizer_elems.len() as u64,
        kernel_order,
    })
}

/// Exponent vectors for all products Π gens[i]^{a_i}; errors unless the
/// generators commute, have order p, and generate (Z/p)^k freely.
pub(crate) fn exponent_table(
    gens: &[Perm],
    p: u64,
    k: usize,
) -> Result<std::collections::HashMap<Perm, Vec<u64>>> {
    for (i, a) in gens.iter().enumerate() {
        if a.order() != p {
            return Err(Error::invalid(format!(
                "generator {i} does not have order {p}"
            )));
        }
        for b in &gens[i + 1..] {
            if a.compose(b) != b.compose(a) {
                return Err(Error::invalid("generators do not commute"));
            }
        }
    }
    let count = (p as u128).pow(k as u32);
    if count > (1 << 20) {
        return Err(Error::limit(format!("p^k = {count} too large to tabulate")));
    }
    let degree = gens[0].degree();
    let mut table = std::collections::HashMap::with_capacity(count as usize);
    let mut evec = vec![0u64; k];
    let mut elem = Perm::identity(degree);
    loop {
        table.insert(elem.clone(), evec.clone());
        // odometer increment, updating the running product as we go
        let mut i = 0;
        loop {
            if i == k {
                if table.len() as u128 != count {
                    return Err(Error::invalid("generators do not generate (Z/p)^k freely"));
                }
                return Ok(table);
            }
            evec[i] += 1;
            elem = gens[i].compose(&elem);
            if evec[i] < p {
                break;
            }
            // gens[i]^p = identity, so the product is already correct
            evec[i] = 0;
            i += 1;
        }
    }
}
