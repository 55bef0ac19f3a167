//! Deterministic Schreier–Sims stabilizer chains.
//!
//! Each element is stored at the deepest level whose base prefix it fixes,
//! and the generating set of level i is the union of everything stored at
//! levels ≥ i. Orbits are recomputed and Schreier generators re-sifted to a
//! fixpoint, so the final chain satisfies the full verification condition.
//! Base points are the smallest moved points of new residues and orbits are
//! iterated in ascending point order, making construction, orders, and
//! element enumeration reproducible.

use super::Perm;
use std::collections::HashSet;

pub(crate) struct Level {
    pub base: usize,
    /// Elements placed at exactly this level (they fix all earlier bases).
    pub gens: Vec<Perm>,
    /// `transversal[β]` maps the base point to β, if β is in the orbit.
    pub transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
        }
    }

    pub fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }

    pub fn orbit_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.transversal
            .iter()
            .enumerate()
            .filter_map(|(pt, t)| t.as_ref().map(|_| pt))
    }
}

pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
    stored: HashSet<Perm>,
}

impl StabChain {
    pub fn build(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
            stored: HashSet::new(),
        };
        for g in gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
            chain.insert(g.clone());
        }
        chain
    }

    /// Add one element and re-close the chain; no-op for known members.
    pub fn insert(&mut self, g: Perm) {
        if g.is_identity() || self.contains(&g) {
            return;
        }
        self.place(g);
        self.close();
    }

    /// Store g at the deepest level whose base prefix it fixes.
    fn place(&mut self, g: Perm) {
        let mut i = 0;
        while i < self.levels.len() && g.apply(self.levels[i].base) == self.levels[i].base {
            i += 1;
        }
        if i == self.levels.len() {
            let base = g.min_moved().expect("identity is never placed");
            self.levels.push(Level::new(base, self.degree));
        }
        self.stored.insert(g.clone());
        self.levels[i].gens.push(g);
    }

    /// Generators of the level-l stabilizer: everything stored at depth ≥ l.
    fn level_gens(&self, l: usize) -> Vec<Perm> {
        self.levels[l..]
            .iter()
            .flat_map(|lvl| lvl.gens.iter().cloned())
            .collect()
    }

    fn rebuild_orbits(&mut self) {
        for l in 0..self.levels.len() {
            let gens = self.level_gens(l);
            let base = self.levels[l].base;
            let level = &mut self.levels[l];
            level.transversal = vec![None; self.degree];
            level.transversal[base] = Some(Perm::identity(self.degree));
            let mut queue = vec![base];
            let mut qi = 0;
            while qi < queue.len() {
                let pt = queue[qi];
                qi += 1;
                let rep = level.transversal[pt].clone().unwrap();
                for s in &gens {
                    let img = s.apply(pt);
                    if level.transversal[img].is_none() {
                        level.transversal[img] = Some(s.compose(&rep));
                        queue.push(img);
                    }
                }
            }
        }
    }

    /// Re-sift every Schreier generator of every level until all of them
    /// reduce to the identity; each failure stores one new residue.
    fn close(&mut self) {
        'outer: loop {
            self.rebuild_orbits();
            for l in 0..self.levels.len() {
                let gens = self.level_gens(l);
                let orbit: Vec<usize> = self.levels[l].orbit_points().collect();
                for &beta in &orbit {
                    let rep = self.levels[l].transversal[beta].clone().unwrap();
                    for s in &gens {
                        let target = s.apply(beta);
                        let u = self.levels[l].transversal[target]
                            .clone()
                            .expect("orbit is closed under the level generators");
                        let schreier = u.inverse().compose(&s.compose(&rep));
                        if schreier.is_identity() {
                            continue;
                        }
                        let residue = self.sift_from(l + 1, schreier);
                        if !residue.is_identity() && !self.stored.contains(&residue) {
                            self.place(residue);
                            continue 'outer;
                        }
                    }
                }
            }
            return;
        }
    }

    /// Transversal sift starting at the given level.
    fn sift_from(&self, start: usize, g: Perm) -> Perm {
        let mut cur = g;
        for level in &self.levels[start..] {
            if cur.is_identity() {
                return cur;
            }
            let beta = cur.apply(level.base);
            match &level.transversal[beta] {
                Some(rep) => cur = rep.inverse().compose(&cur),
                None => return cur,
            }
        }
        cur
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().fold(1u64, |acc, level| {
            acc.checked_mul(level.orbit_len() as u64)
                .expect("group order overflows u64")
        })
    }

    /// Residue of sifting `p` through the chain; identity iff `p` is a member.
    pub fn strip(&self, p: &Perm) -> Perm {
        self.sift_from(0, p.clone())
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.strip(p).is_identity()
    }

    /// Visit every element exactly once as products of transversal
    /// representatives, deterministically.
    pub fn for_each_element<F: FnMut(&Perm)>(&self, f: &mut F) {
        fn rec<F: FnMut(&Perm)>(levels: &[Level], acc: &Perm, f: &mut F) {
            match levels.first() {
                None => f(acc),
                Some(level) => {
                    for pt in level.orbit_points() {
                        let rep = level.transversal[pt].as_ref().unwrap();
                        rec(&levels[1..], &acc.compose(rep), f);
                    }
                }
            }
        }
        rec(&self.levels, &Perm::identity(self.degree), f);
    }
}
