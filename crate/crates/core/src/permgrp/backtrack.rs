//! Backtrack searches over a stabilizer chain, for groups too large to
//! enumerate. The DFS walks transversal products level by level; at depth d
//! the images of the first d base points are already determined, which is
//! what the prune callbacks inspect.

use super::chain::StabChain;
use super::Perm;
use crate::{Error, Result};

pub(crate) struct Search<'a> {
    pub chain: &'a StabChain,
    /// Sound partial filter: given parallel slices of determined base points
    /// and their images, return false only if no completion can satisfy the
    /// target predicate.
    pub prune: &'a dyn Fn(&[usize], &[usize]) -> bool,
    /// Full predicate, evaluated on complete elements.
    pub leaf: &'a dyn Fn(&Perm) -> bool,
    pub node_budget: u64,
}

enum Goal {
    FirstSolution(Option<Perm>),
    /// All solutions form a subgroup; collect a strong generating set.
    Subgroup {
        found: StabChain,
        gens: Vec<Perm>,
    },
}

impl Search<'_> {
    pub fn find_one(&self) -> Result<Option<Perm>> {
        let mut goal = Goal::FirstSolution(None);
        self.run(&mut goal)?;
        match goal {
            Goal::FirstSolution(sol) => Ok(sol),
            _ => unreachable!(),
        }
    }

    /// Collect generators for the set of all solutions, which the caller
    /// guarantees is a subgroup.
    pub fn find_subgroup(&self) -> Result<Vec<Perm>> {
        let mut goal = Goal::Subgroup {
            found: StabChain::build(self.chain.degree, &[]),
            gens: Vec::new(),
        };
        self.run(&mut goal)?;
        match goal {
            Goal::Subgroup { gens, .. } => Ok(gens),
            _ => unreachable!(),
        }
    }

    fn run(&self, goal: &mut Goal) -> Result<()> {
        let mut nodes = 0u64;
        let mut bases = Vec::new();
        let mut images = Vec::new();
        self.dfs(
            0,
            &Perm::identity(self.chain.degree),
            &mut bases,
            &mut images,
            &mut nodes,
            goal,
        )?;
        Ok(())
    }

    fn dfs(
        &self,
        depth: usize,
        acc: &Perm,
        bases: &mut Vec<usize>,
        images: &mut Vec<usize>,
        nodes: &mut u64,
        goal: &mut Goal,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > self.node_budget {
            return Err(Error::limit(format!(
                "backtrack search exceeded node budget {}",
                self.node_budget
            )));
        }
        if depth == self.chain.levels.len() {
            if (self.leaf)(acc) {
                match goal {
                    Goal::FirstSolution(slot) => {
                        *slot = Some(acc.clone());
                        return Ok(true);
                    }
                    Goal::Subgroup { found, gens } => {
                        if !found.contains(acc) {
                            found.insert(acc.clone());
                            gens.push(acc.clone());
                        }
                    }
                }
            }
            return Ok(false);
        }
        let level = &self.chain.levels[depth];
        for beta in level.orbit_points() {
            let rep = level.transversal[beta].as_ref().unwrap();
            let next = acc.compose(rep);
            bases.push(level.base);
            images.push(next.apply(level.base));
            let keep = (self.prune)(bases, images);
            let stop = if keep {
                self.dfs(depth + 1, &next, bases, images, nodes, goal)?
            } else {
                false
            };
            bases.pop();
            images.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Prune for the centralizer of `g`: whenever b and g(b) are both
/// determined, their images must be compatible with x∘g = g∘x.
pub(crate) fn commuting_prune(g: &Perm) -> impl Fn(&[usize], &[usize]) -> bool + '_ {
    move |bases, images| {
        for (i, &b) in bases.iter().enumerate() {
            let gb = g.apply(b);
            if let Some(j) = bases.iter().position(|&b2| b2 == gb) {
                if images[j] != g.apply(images[i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Prune for conjugator search x·sigma·x⁻¹ = tau, i.e. x∘sigma = tau∘x.
pub(crate) fn conjugating_prune<'a>(
    sigma: &'a Perm,
    tau: &'a Perm,
) -> impl Fn(&[usize], &[usize]) -> bool + 'a {
    move |bases, images| {
        for (i, &b) in bases.iter().enumerate() {
            let sb = sigma.apply(b);
            if let Some(j) = bases.iter().position(|&b2| b2 == sb) {
                if images[j] != tau.apply(images[i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Prune for the normalizer of a subgroup with the given orbit-size profile:
/// a normalizing element maps each orbit to an orbit of the same size.
pub(crate) fn orbit_profile_prune(orbit_size: Vec<usize>) -> impl Fn(&[usize], &[usize]) -> bool {
    move |bases, images| {
        bases
            .iter()
            .zip(images)
            .all(|(&b, &img)| orbit_size[b] == orbit_size[img])
    }
}
