//! Complete monomial groups Σ_m(H) = H ≀ S_m and their structure theory:
//! unique decomposition into commuting monomial cycles, conjugacy classified
//! by (length, determinant class), centralizer shapes with their order
//! formula, and the Z' subgroup that carries a p-Sylow of the centralizer
//! inside A ≀ A_m.
//!
//! Multiplication convention: ((h); σ)·((h'); σ') = ((h_i·h'_{σ⁻¹(i)}); σσ'),
//! which makes the projection to S_m a homomorphism under the composition
//! convention (p∘q)(x) = p(q(x)).

use crate::permgrp::{Perm, PermGroup};
use crate::{is_prime, Error, Result};
use serde::Serialize;
use std::collections::HashMap;

/// Finite group presented by its full multiplication table, with a faithful
/// permutation representation (the natural one when built from permutations,
/// the regular one otherwise). Element 0..size−1 are the indices.
#[derive(Debug, Clone)]
pub struct GroupTable {
    size: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    orders: Vec<u64>,
    class_rep: Vec<usize>,
    z_order: Vec<u64>,
    perm_rep: Vec<Perm>,
}

const TABLE_VALIDATION_LIMIT: usize = 512;

impl GroupTable {
    /// Build from a raw multiplication table; validates the group axioms
    /// exhaustively (latin square, associativity, identity, inverses).
    pub fn from_raw(table: &[Vec<usize>]) -> Result<GroupTable> {
        let size = table.len();
        if size == 0 {
            return Err(Error::invalid("empty multiplication table"));
        }
        if size > TABLE_VALIDATION_LIMIT {
            return Err(Error::limit(format!(
                "table of size {size} exceeds the validation limit {TABLE_VALIDATION_LIMIT}"
            )));
        }
        let mut mul = Vec::with_capacity(size * size);
        for row in table {
            if row.len() != size {
                return Err(Error::invalid("multiplication table is not square"));
            }
            for &v in row {
                if v >= size {
                    return Err(Error::invalid("table entry out of range"));
                }
                mul.push(v);
            }
        }
        // latin square
        for i in 0..size {
            let mut row_seen = vec![false; size];
            let mut col_seen = vec![false; size];
            for j in 0..size {
                if row_seen[mul[i * size + j]] || col_seen[mul[j * size + i]] {
                    return Err(Error::invalid("table is not a latin square"));
                }
                row_seen[mul[i * size + j]] = true;
                col_seen[mul[j * size + i]] = true;
            }
        }
        // associativity
        for a in 0..size {
            for b in 0..size {
                let ab = mul[a * size + b];
                for c in 0..size {
                    if mul[ab * size + c] != mul[a * size + mul[b * size + c]] {
                        return Err(Error::invalid("table is not associative"));
                    }
                }
            }
        }
        let identity = (0..size)
            .find(|&e| (0..size).all(|j| mul[e * size + j] == j && mul[j * size + e] == j))
            .ok_or_else(|| Error::invalid("table has no identity"))?;
        // left translations are the regular representation
        let perm_rep: Vec<Perm> = (0..size)
            .map(|i| Perm::from_images((0..size).map(|x| mul[i * size + x]).collect()).unwrap())
            .collect();
        Ok(GroupTable::finish(size, mul, identity, perm_rep))
    }

    /// Tabulate a concrete permutation group (must be enumerable within
    /// `cap`); elements are indexed in lexicographic image order and the
    /// natural action is kept as the faithful representation.
    pub fn from_perm_group(g: &PermGroup, cap: u64) -> Result<GroupTable> {
        let elements = g.elements(cap)?.to_vec();
        let size = elements.len();
        if size > TABLE_VALIDATION_LIMIT {
            return Err(Error::limit(format!(
                "group of order {size} exceeds the table limit {TABLE_VALIDATION_LIMIT}"
            )));
        }
        let index: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut mul = vec![0usize; size * size];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * size + j] = index[&a.compose(b)];
            }
        }
        let identity = index[&Perm::identity(g.degree())];
        Ok(GroupTable::finish(size, mul, identity, elements))
    }

    /// C_k in its natural action; panics if k exceeds the table limit.
    pub fn cyclic(k: usize) -> GroupTable {
        GroupTable::from_perm_group(&PermGroup::cyclic(k), 1 << 16).unwrap()
    }

    /// S_k in its natural action; panics for k > 5 (the table limit).
    pub fn symmetric(k: usize) -> GroupTable {
        GroupTable::from_perm_group(&PermGroup::symmetric(k), 1 << 16).unwrap()
    }

    pub fn elem_abelian(p: u64, r: u32) -> Result<GroupTable> {
        let g = crate::elemab::regular_embedding(&vec![p; r as usize], 1 << 16)?;
        GroupTable::from_perm_group(&g, 1 << 16)
    }

    fn finish(size: usize, mul: Vec<usize>, identity: usize, perm_rep: Vec<Perm>) -> GroupTable {
        let mut inv = vec![0usize; size];
        for i in 0..size {
            inv[i] = (0..size).find(|&j| mul[i * size + j] == identity).unwrap();
        }
        let orders: Vec<u64> = (0..size)
            .map(|i| {
                let mut o = 1u64;
                let mut x = i;
                while x != identity {
                    x = mul[x * size + i];
                    o += 1;
                }
                o
            })
            .collect();
        let mut class_rep = vec![usize::MAX; size];
        for h in 0..size {
            if class_rep[h] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..size)
                .map(|x| mul[mul[x * size + h] * size + inv[x]])
                .collect();
            class.sort_unstable();
            class.dedup();
            let rep = class[0];
            for c in class {
                class_rep[c] = rep;
            }
        }
        let z_order: Vec<u64> = (0..size)
            .map(|h| {
                (0..size)
                    .filter(|&x| mul[x * size + h] == mul[h * size + x])
                    .count() as u64
            })
            .collect();
        GroupTable {
            size,
            mul,
            inv,
            identity,
            orders,
            class_rep,
            z_order,
            perm_rep,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn order_of(&self, a: usize) -> u64 {
        self.orders[a]
    }

    /// Canonical conjugacy-class representative: least index in the class.
    pub fn class_rep(&self, a: usize) -> usize {
        self.class_rep[a]
    }

    /// |Z_H(a)|.
    pub fn centralizer_order_of(&self, a: usize) -> u64 {
        self.z_order[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Faithful permutation action, aligned with element indices.
    pub fn perm_rep(&self) -> &[Perm] {
        &self.perm_rep
    }

    pub fn rep_degree(&self) -> usize {
        self.perm_rep.first().map_or(0, |p| p.degree())
    }

    /// Small generating set, chosen greedily in index order.
    pub fn small_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut generated = vec![false; self.size];
        generated[self.identity] = true;
        let mut count = 1;
        for cand in 0..self.size {
            if generated[cand] {
                continue;
            }
            gens.push(cand);
            // close under multiplication by the new generator set
            let mut frontier: Vec<usize> = (0..self.size).filter(|&x| generated[x]).collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    for y in [self.mul(x, g), self.mul(g, x)] {
                        if !generated[y] {
                            generated[y] = true;
                            count += 1;
                            frontier.push(y);
                        }
                    }
                }
            }
            if count == self.size {
                break;
            }
        }
        gens
    }
}

/// Element ((h_1,…,h_m); σ) of Σ_m(H): `components[i]` is the H-index at
/// position i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialElement {
    pub components: Vec<usize>,
    pub sigma: Perm,
}

/// Monomial cycle: `support` lists the underlying cycle in traversal order
/// starting from its smallest point, `components[t]` is the H-component at
/// `support[t]`, and `det_class_rep` is the canonical representative of the
/// H-conjugacy class of the product of the components along the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCycle {
    pub support: Vec<usize>,
    pub components: Vec<usize>,
    pub det_class_rep: usize,
}

impl MonomialCycle {
    pub fn length(&self) -> usize {
        self.support.len()
    }
}

/// One group of cycles of equal (length, determinant class) in a
/// centralizer-shape description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeBlock {
    /// Number of cycles in the group (k_i).
    pub multiplicity: usize,
    /// Common cycle length (n_i).
    pub cycle_length: usize,
    /// Canonical representative of the common determinant class.
    pub det_class_rep: usize,
    /// |Z_H(h_i)| for the class representative.
    pub z_h_order: u64,
}

/// Ore's description of a centralizer: Z(x) ≅ Π Σ_{k_i}(Z_{Σ_{n_i}(H)}(y_i)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerShape {
    pub blocks: Vec<ShapeBlock>,
}

/// Predicted centralizer order: Π (n_i·z_i)^{k_i} · k_i!.
pub fn centralizer_order(shape: &CentralizerShape) -> u64 {
    let mut total: u128 = 1;
    for b in &shape.blocks {
        let factor = (b.cycle_length as u128) * (b.z_h_order as u128);
        for _ in 0..b.multiplicity {
            total *= factor;
        }
        for k in 1..=b.multiplicity as u128 {
            total *= k;
        }
    }
    u64::try_from(total).expect("centralizer order overflows u64")
}

/// The complete monomial group Σ_m(H) = H ≀ S_m.
#[derive(Debug, Clone)]
pub struct SigmaGroup {
    h: GroupTable,
    m: usize,
}

impl SigmaGroup {
    pub fn new(h: GroupTable, m: usize) -> Result<SigmaGroup> {
        if m == 0 {
            return Err(Error::invalid("degree m must be positive"));
        }
        Ok(SigmaGroup { h, m })
    }

    pub fn h(&self) -> &GroupTable {
        &self.h
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// |H|^m · m!.
    pub fn order(&self) -> u64 {
        let mut total: u128 = 1;
        for _ in 0..self.m {
            total *= self.h.size as u128;
        }
        for k in 1..=self.m as u128 {
            total *= k;
        }
        u64::try_from(total).expect("group order overflows u64")
    }

    pub fn identity(&self) -> MonomialElement {
        MonomialElement {
            components: vec![self.h.identity; self.m],
            sigma: Perm::identity(self.m),
        }
    }

    pub fn element(&self, components: Vec<usize>, sigma: Perm) -> Result<MonomialElement> {
        if components.len() != self.m || sigma.degree() != self.m {
            return Err(Error::invalid("element does not match the ambient Σ_m(H)"));
        }
        if components.iter().any(|&c| c >= self.h.size) {
            return Err(Error::invalid("component index out of range"));
        }
        Ok(MonomialElement { components, sigma })
    }

    pub fn mul(&self, x: &MonomialElement, y: &MonomialElement) -> MonomialElement {
        let sigma_inv = x.sigma.inverse();
        let components = (0..self.m)
            .map(|i| {
                self.h
                    .mul(x.components[i], y.components[sigma_inv.apply(i)])
            })
            .collect();
        MonomialElement {
            components,
            sigma: x.sigma.compose(&y.sigma),
        }
    }

    pub fn inv(&self, x: &MonomialElement) -> MonomialElement {
        let components = (0..self.m)
            .map(|i| self.h.inv(x.components[x.sigma.apply(i)]))
            .collect();
        MonomialElement {
            components,
            sigma: x.sigma.inverse(),
        }
    }

    /// All elements, ordered by (component tuple, permutation); errors when
    /// the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<MonomialElement>> {
        if self.order() > cap {
            return Err(Error::limit(format!(
                "Σ_m(H) of order {} exceeds cap {cap}",
                self.order()
            )));
        }
        let perms = PermGroup::symmetric(self.m).elements(cap)?.to_vec();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut tuple = vec![0usize; self.m];
        loop {
            for sigma in &perms {
                out.push(MonomialElement {
                    components: tuple.clone(),
                    sigma: sigma.clone(),
                });
            }
            let mut i = 0;
            loop {
                if i == self.m {
                    return Ok(out);
                }
                tuple[i] += 1;
                if tuple[i] < self.h.size {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
        }
    }

    /// Unique decomposition into commuting monomial cycles with pairwise
    /// disjoint supports; length-1 cycles with identity component are
    /// omitted. Ordered by smallest support point.
    pub fn disjoint_cycles(&self, x: &MonomialElement) -> Vec<MonomialCycle> {
        let mut cycles: Vec<MonomialCycle> = x
            .sigma
            .cycles()
            .into_iter()
            .map(|support| self.make_cycle(x, support))
            .collect();
        for pt in 0..self.m {
            if !x.sigma.moves(pt) && x.components[pt] != self.h.identity {
                cycles.push(self.make_cycle(x, vec![pt]));
            }
        }
        cycles.sort_by_key(|c| c.support[0]);
        cycles
    }

    /// As `disjoint_cycles`, but fixed points with identity component are
    /// kept as trivial length-1 cycles, so the supports partition {0..m−1}.
    pub fn cycles_with_trivial(&self, x: &MonomialElement) -> Vec<MonomialCycle> {
        let mut cycles: Vec<MonomialCycle> = x
            .sigma
            .cycles()
            .into_iter()
            .map(|support| self.make_cycle(x, support))
            .collect();
        for pt in 0..self.m {
            if !x.sigma.moves(pt) {
                cycles.push(self.make_cycle(x, vec![pt]));
            }
        }
        cycles.sort_by_key(|c| c.support[0]);
        cycles
    }

    fn make_cycle(&self, x: &MonomialElement, support: Vec<usize>) -> MonomialCycle {
        let components: Vec<usize> = support.iter().map(|&pt| x.components[pt]).collect();
        let det = self.determinant_of(&components);
        MonomialCycle {
            support,
            components,
            det_class_rep: self.h.class_rep(det),
        }
    }

    /// Product of the components along the cycle: the component of
    /// y^length at the starting point, i.e. h_{c_0}·h_{c_{n−1}}·…·h_{c_1}.
    /// Its H-conjugacy class is independent of the starting point.
    fn determinant_of(&self, components: &[usize]) -> usize {
        let mut acc = components[0];
        for t in (1..components.len()).rev() {
            acc = self.h.mul(acc, components[t]);
        }
        acc
    }

    /// Canonical representative of the determinant class of a cycle.
    pub fn determinant_class(&self, cycle: &MonomialCycle) -> usize {
        cycle.det_class_rep
    }

    /// Rebuild a cycle as a full element of Σ_m(H).
    pub fn cycle_element(&self, cycle: &MonomialCycle) -> MonomialElement {
        let mut components = vec![self.h.identity; self.m];
        let mut images: Vec<usize> = (0..self.m).collect();
        for (t, &pt) in cycle.support.iter().enumerate() {
            components[pt] = cycle.components[t];
            if cycle.support.len() > 1 {
                images[pt] = cycle.support[(t + 1) % cycle.support.len()];
            }
        }
        MonomialElement {
            components,
            sigma: Perm::from_images(images).unwrap(),
        }
    }

    /// Ore's conjugacy criterion: x and y are conjugate in Σ_m(H) iff the
    /// multisets of (length, determinant class) of their cycles coincide.
    pub fn conjugate_test(&self, x: &MonomialElement, y: &MonomialElement) -> bool {
        let key = |e: &MonomialElement| {
            let mut pairs: Vec<(usize, usize)> = self
                .disjoint_cycles(e)
                .iter()
                .map(|c| (c.length(), c.det_class_rep))
                .collect();
            pairs.sort_unstable();
            pairs
        };
        key(x) == key(y)
    }

    /// Group the cycles of x (trivial fixed points included) by
    /// (length, determinant class).
    pub fn centralizer_shape(&self, x: &MonomialElement) -> CentralizerShape {
        let mut counts: std::collections::BTreeMap<(usize, usize), usize> =
            std::collections::BTreeMap::new();
        for cycle in self.cycles_with_trivial(x) {
            *counts
                .entry((cycle.length(), cycle.det_class_rep))
                .or_insert(0) += 1;
        }
        let blocks = counts
            .into_iter()
            .map(|((cycle_length, det_class_rep), multiplicity)| ShapeBlock {
                multiplicity,
                cycle_length,
                det_class_rep,
                z_h_order: self.h.centralizer_order_of(det_class_rep),
            })
            .collect();
        CentralizerShape { blocks }
    }

    /// Degree of the permutation embedding: m · (degree of H's action).
    pub fn embed_degree(&self) -> usize {
        self.m * self.h.rep_degree()
    }

    /// Faithful image of one element: block i carries H's action of the
    /// component at σ(i), and blocks are permuted by σ.
    pub fn embed_element(&self, x: &MonomialElement) -> Perm {
        let d = self.h.rep_degree();
        let mut images = vec![0usize; self.embed_degree()];
        for i in 0..self.m {
            let target = x.sigma.apply(i);
            let h_perm = &self.h.perm_rep[x.components[target]];
            for a in 0..d {
                images[i * d + a] = target * d + h_perm.apply(a);
            }
        }
        Perm::from_images(images).unwrap()
    }

    /// Faithful image of all of Σ_m(H) as a permutation group of degree m·d.
    pub fn embed(&self) -> PermGroup {
        let mut gens = Vec::new();
        for g in self.h.small_generators() {
            let mut components = vec![self.h.identity; self.m];
            components[0] = g;
            gens.push(self.embed_element(&MonomialElement {
                components,
                sigma: Perm::identity(self.m),
            }));
        }
        for tau in PermGroup::symmetric(self.m).generators() {
            gens.push(self.embed_element(&MonomialElement {
                components: vec![self.h.identity; self.m],
                sigma: tau.clone(),
            }));
        }
        PermGroup::new(self.embed_degree(), gens)
    }

    /// The subgroup H ≀ A_m of the embedding (all components, even top
    /// permutations only).
    pub fn wreath_alternating(&self) -> PermGroup {
        let mut gens = Vec::new();
        for copy in 0..self.m {
            for g in self.h.small_generators() {
                let mut components = vec![self.h.identity; self.m];
                components[copy] = g;
                gens.push(self.embed_element(&MonomialElement {
                    components,
                    sigma: Perm::identity(self.m),
                }));
            }
        }
        for tau in PermGroup::alternating(self.m).generators() {
            gens.push(self.embed_element(&MonomialElement {
                components: vec![self.h.identity; self.m],
                sigma: tau.clone(),
            }));
        }
        PermGroup::new(self.embed_degree(), gens)
    }

    pub fn element_order(&self, x: &MonomialElement) -> u64 {
        self.embed_element(x).order()
    }

    /// The subgroup Z' = Π_h A_h ≀ A_{k_h} of the centralizer of x in
    /// A ≀ A_m (A abelian p-group, x of p-power order, p odd), returned in
    /// the permutation embedding. Z' contains a p-Sylow of the centralizer;
    /// every generator is verified to commute with x and to lie in A ≀ A_m.
    pub fn zprime(&self, x: &MonomialElement, p: u64) -> Result<PermGroup> {
        if p < 3 || !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not an odd prime")));
        }
        if !self.h.is_abelian() {
            return Err(Error::invalid("the base group must be abelian"));
        }
        let mut size = self.h.size as u64;
        while size.is_multiple_of(p) {
            size /= p;
        }
        if size != 1 {
            return Err(Error::invalid("the base group must be a p-group"));
        }
        if !x.sigma.is_even() {
            return Err(Error::invalid("element does not lie in A ≀ A_m"));
        }
        let order = self.element_order(x);
        let mut reduced = order;
        while reduced.is_multiple_of(p) {
            reduced /= p;
        }
        if reduced != 1 {
            return Err(Error::invalid(format!(
                "element order {order} is not a power of {p}"
            )));
        }

        let cycles = self.cycles_with_trivial(x);
        let mut blocks: std::collections::BTreeMap<(usize, usize), Vec<&MonomialCycle>> =
            std::collections::BTreeMap::new();
        for c in &cycles {
            blocks
                .entry((c.length(), c.det_class_rep))
                .or_default()
                .push(c);
        }

        let x_embedded = self.embed_element(x);
        let h_gens = self.h.small_generators();
        let mut gens: Vec<MonomialElement> = Vec::new();
        for copies in blocks.values() {
            for cycle in copies {
                // A_h = <y_j, diagonal A on the support of y_j>
                gens.push(self.cycle_element(cycle));
                for &g in &h_gens {
                    let mut components = vec![self.h.identity; self.m];
                    for &pt in &cycle.support {
                        components[pt] = g;
                    }
                    gens.push(MonomialElement {
                        components,
                        sigma: Perm::identity(self.m),
                    });
                }
            }
            // A_{k_h} on the copies, realized by aligned conjugators
            let k = copies.len();
            for copy_perm in PermGroup::alternating(k).generators() {
                gens.push(self.copy_permuter(x, copies, copy_perm));
            }
        }

        let mut embedded = Vec::with_capacity(gens.len());
        for gen in &gens {
            let e = self.embed_element(gen);
            assert_eq!(
                x_embedded.conjugate_by(&e),
                x_embedded,
                "Z' generator must centralize x"
            );
            assert!(gen.sigma.is_even(), "Z' generator must lie in A ≀ A_m");
            embedded.push(e);
        }
        Ok(PermGroup::new(self.embed_degree(), embedded))
    }

    /// Element permuting the aligned copies of a block of equal cycles
    /// according to `copy_perm`, with component twists chosen so that it
    /// conjugates each cycle exactly onto its target.
    fn copy_permuter(
        &self,
        x: &MonomialElement,
        copies: &[&MonomialCycle],
        copy_perm: &Perm,
    ) -> MonomialElement {
        let mut components = vec![self.h.identity; self.m];
        let mut images: Vec<usize> = (0..self.m).collect();
        for (j, cycle) in copies.iter().enumerate() {
            if copy_perm.apply(j) == j {
                continue;
            }
            let target = copies[copy_perm.apply(j)];
            let len = cycle.length();
            for t in 0..len {
                images[cycle.support[t]] = target.support[t];
            }
            // solve the twist recursion t_{c'_t} = h'_{c'_t}·h⁻¹_{c_t}·t_{c'_{t−1}};
            // consistency at the wraparound is exactly equality of determinants
            let mut twist = self.h.identity;
            for t in 1..len {
                let h_src = x.components[cycle.support[t]];
                let h_dst = x.components[target.support[t]];
                twist = self.h.mul(self.h.mul(h_dst, self.h.inv(h_src)), twist);
                components[target.support[t]] = twist;
            }
        }
        let result = MonomialElement {
            components,
            sigma: Perm::from_images(images).unwrap(),
        };
        debug_assert_eq!(
            self.mul(&self.mul(&result, x), &self.inv(&result)),
            *x,
            "copy permuter must conjugate x to itself"
        );
        result
    }
}

/// Exhaustive verification report of Ore's structure theory for one Σ_m(H):
/// decomposition soundness for every element, conjugacy-criterion agreement
/// with brute force on all ordered pairs, and the centralizer order formula
/// against brute-force centralizer sizes.
#[derive(Debug, Clone, Serialize)]
pub struct OreReport {
    pub m: usize,
    pub h_order: usize,
    pub group_order: u64,
    pub decomposition_failures: u64,
    pub conjugacy_pairs: u64,
    pub conjugacy_mismatches: u64,
    pub centralizer_mismatches: u64,
}

impl OreReport {
    pub fn all_ok(&self) -> bool {
        self.decomposition_failures == 0
            && self.conjugacy_mismatches == 0
            && self.centralizer_mismatches == 0
    }
}

/// Hard bound for the all-pairs brute force in `ore_report`; the cost is
/// quadratic in the group order.
const ORE_PAIRWISE_CAP: u64 = 4096;

pub fn ore_report(sigma: &SigmaGroup, cap: u64) -> Result<OreReport> {
    let pairwise_cap = cap.min(ORE_PAIRWISE_CAP);
    if sigma.order() > pairwise_cap {
        return Err(Error::limit(format!(
            "all-pairs verification of a group of order {} exceeds the bound {pairwise_cap}",
            sigma.order()
        )));
    }
    let elements = sigma.elements(cap)?;
    let n = elements.len();

    let mut decomposition_failures = 0u64;
    for x in &elements {
        let cycles = sigma.disjoint_cycles(x);
        // supports pairwise disjoint
        let mut seen = vec![false; sigma.m()];
        let mut disjoint = true;
        for c in &cycles {
            for &pt in &c.support {
                if seen[pt] {
                    disjoint = false;
                }
                seen[pt] = true;
            }
        }
        // product (in canonical order) reassembles x, and cycles commute
        let mut product = sigma.identity();
        for c in &cycles {
            product = sigma.mul(&product, &sigma.cycle_element(c));
        }
        let mut commute = true;
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                let a = sigma.cycle_element(&cycles[i]);
                let b = sigma.cycle_element(&cycles[j]);
                if sigma.mul(&a, &b) != sigma.mul(&b, &a) {
                    commute = false;
                }
            }
        }
        if !disjoint || product != *x || !commute {
            decomposition_failures += 1;
        }
    }

    // brute-force conjugacy classes and centralizer sizes via the embedding
    let embedded: Vec<Perm> = elements.iter().map(|x| sigma.embed_element(x)).collect();
    let index: HashMap<&Perm, usize> = embedded.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut n_classes = 0usize;
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        for z in &embedded {
            class_of[index[&embedded[i].conjugate_by(z)]] = n_classes;
        }
        n_classes += 1;
    }

    let mut conjugacy_mismatches = 0u64;
    for i in 0..n {
        for j in 0..n {
            let ore = sigma.conjugate_test(&elements[i], &elements[j]);
            if ore != (class_of[i] == class_of[j]) {
                conjugacy_mismatches += 1;
            }
        }
    }

    let mut centralizer_mismatches = 0u64;
    for (i, x) in elements.iter().enumerate() {
        let brute = embedded
            .iter()
            .filter(|z| embedded[i].conjugate_by(z) == embedded[i])
            .count() as u64;
        let predicted = centralizer_order(&sigma.centralizer_shape(x));
        if brute != predicted {
            centralizer_mismatches += 1;
        }
    }

    Ok(OreReport {
        m: sigma.m(),
        h_order: sigma.h().size(),
        group_order: sigma.order(),
        decomposition_failures,
        conjugacy_pairs: (n * n) as u64,
        conjugacy_mismatches,
        centralizer_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUM_CAP as CAP;

    fn sigma(h: GroupTable, m: usize) -> SigmaGroup {
        SigmaGroup::new(h, m).unwrap()
    }

    #[test]
    fn table_constructors() {
        let c3 = GroupTable::cyclic(3);
        assert_eq!(c3.size(), 3);
        assert!(c3.is_abelian());
        let s3 = GroupTable::symmetric(3);
        assert_eq!(s3.size(), 6);
        assert!(!s3.is_abelian());
        let e9 = GroupTable::elem_abelian(3, 2).unwrap();
        assert_eq!(e9.size(), 9);
        // S_3 has 3 conjugacy classes
        let mut reps: Vec<usize> = (0..6).map(|i| s3.class_rep(i)).collect();
        reps.sort_unstable();
        reps.dedup();
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn raw_table_validation() {
        // Z/2 is fine
        assert!(GroupTable::from_raw(&[vec![0, 1], vec![1, 0]]).is_ok());
        // latin square that is not associative (order-5 quasigroup)
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(GroupTable::from_raw(&bad).is_err());
        // not a latin square
        assert!(GroupTable::from_raw(&[vec![0, 0], vec![1, 1]]).is_err());
    }

    #[test]
    fn small_generators_generate() {
        for table in [GroupTable::cyclic(6), GroupTable::symmetric(3)] {
            let gens = table.small_generators();
            let mut generated = std::collections::HashSet::from([table.identity()]);
            let mut frontier = vec![table.identity()];
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = table.mul(x, g);
                    if generated.insert(y) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(generated.len(), table.size());
        }
    }

    #[test]
    fn wreath_law_identity_inverse_associativity() {
        let s = sigma(GroupTable::cyclic(3), 2);
        let elems = s.elements(CAP).unwrap();
        assert_eq!(elems.len() as u64, s.order());
        assert_eq!(s.order(), 18);
        let id = s.identity();
        for x in &elems {
            assert_eq!(s.mul(&id, x), *x);
            assert_eq!(s.mul(x, &s.inv(x)), id);
        }
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    assert_eq!(s.mul(&s.mul(x, y), z), s.mul(x, &s.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn projection_to_sm_is_a_homomorphism() {
        let s = sigma(GroupTable::symmetric(3), 2);
        let elems = s.elements(CAP).unwrap();
        for x in elems.iter().take(20) {
            for y in elems.iter().rev().take(20) {
                assert_eq!(s.mul(x, y).sigma, x.sigma.compose(&y.sigma));
            }
        }
    }

    #[test]
    fn square_of_a_swap_cycle_collects_the_product() {
        // in Σ_2(C_3): ((g,1); swap)^2 = ((g,g); id)
        let s = sigma(GroupTable::cyclic(3), 2);
        let g = 1usize; // the 3-cycle generator index in C_3
        let swap = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        let x = s.element(vec![g, 0], swap).unwrap();
        let sq = s.mul(&x, &x);
        assert_eq!(sq, s.element(vec![g, g], Perm::identity(2)).unwrap());
    }

    #[test]
    fn cycle_decomposition_examples() {
        let s = sigma(GroupTable::cyclic(3), 3);
        assert!(s.disjoint_cycles(&s.identity()).is_empty());

        let g = 1usize;
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let x = s.element(vec![g, 0, 0], rot).unwrap();
        let cycles = s.disjoint_cycles(&x);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].length(), 3);
        assert_eq!(cycles[0].det_class_rep, g);

        let g2 = 2usize;
        let y = s.element(vec![g, 0, g2], Perm::identity(3)).unwrap();
        let cycles = s.disjoint_cycles(&y);
        assert_eq!(cycles.len(), 2);
        assert_eq!((cycles[0].length(), cycles[0].det_class_rep), (1, g));
        assert_eq!((cycles[1].length(), cycles[1].det_class_rep), (1, g2));
    }

    #[test]
    fn determinant_class_examples() {
        let s = sigma(GroupTable::cyclic(3), 3);
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        // all components trivial
        let x = s.element(vec![0, 0, 0], rot.clone()).unwrap();
        assert_eq!(s.disjoint_cycles(&x)[0].det_class_rep, 0);
        // (g,g,g) along a 3-cycle: g^3 = 1
        let g = 1usize;
        let x = s.element(vec![g, g, g], rot.clone()).unwrap();
        assert_eq!(s.disjoint_cycles(&x)[0].det_class_rep, 0);
        // fact (4) shape
        let x = s.element(vec![g, 0, 0], rot).unwrap();
        assert_eq!(s.disjoint_cycles(&x)[0].det_class_rep, g);
    }

    #[test]
    fn conjugate_test_examples() {
        let s = sigma(GroupTable::cyclic(3), 3);
        let g = 1usize;
        let g2 = 2usize;
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let rot_back = Perm::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        let x = s.element(vec![g, 0, 0], rot.clone()).unwrap();
        assert!(s.conjugate_test(&x, &x));
        // both length 3 with determinant class g
        let y = s.element(vec![0, 0, g], rot_back).unwrap();
        assert!(s.conjugate_test(&x, &y));
        // determinant classes g vs g² are distinct in abelian C_3
        let z = s.element(vec![g2, 0, 0], rot).unwrap();
        assert!(!s.conjugate_test(&x, &z));
    }

    #[test]
    fn centralizer_shape_examples() {
        // identity in Σ_2(C_3): single block, predicted order 3^2·2! = 18
        let s2 = sigma(GroupTable::cyclic(3), 2);
        let shape = s2.centralizer_shape(&s2.identity());
        assert_eq!(shape.blocks.len(), 1);
        assert_eq!(shape.blocks[0].multiplicity, 2);
        assert_eq!(centralizer_order(&shape), 18);

        // ((g,1,1); (0 1 2)) in Σ_3(C_3): one block (k=1, n=3, z=3), order 9
        let s3 = sigma(GroupTable::cyclic(3), 3);
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let x = s3.element(vec![1, 0, 0], rot).unwrap();
        let shape = s3.centralizer_shape(&x);
        assert_eq!(shape.blocks.len(), 1);
        assert_eq!(centralizer_order(&shape), 9);

        // ((g,g); id) in Σ_2(C_3): one block (k=2, n=1, z=3), the full group
        let x = s2.element(vec![1, 1], Perm::identity(2)).unwrap();
        assert_eq!(centralizer_order(&s2.centralizer_shape(&x)), 18);

        // ((g,1,h); id) in Σ_3(C_5), g ≠ h nontrivial: three blocks including
        // the identity fixed point, predicted order 5·5·5 = 125 (matches the
        // brute-force centralizer; see ore_report tests)
        let s35 = sigma(GroupTable::cyclic(5), 3);
        let x = s35.element(vec![1, 0, 2], Perm::identity(3)).unwrap();
        let shape = s35.centralizer_shape(&x);
        assert_eq!(shape.blocks.len(), 3);
        assert_eq!(centralizer_order(&shape), 125);
        let emb = s35.embed();
        let z = emb.centralizer(&s35.embed_element(&x), CAP).unwrap();
        assert_eq!(z.order(), 125);
    }

    #[test]
    fn embedding_orders() {
        let s = sigma(GroupTable::cyclic(3), 2);
        assert_eq!(s.embed().order(), 18);
        let s = sigma(GroupTable::cyclic(3), 3);
        let emb = s.embed();
        assert_eq!(emb.degree(), 9);
        assert_eq!(emb.order(), 162);
        assert_eq!(emb.closure_order(CAP).unwrap(), 162);
        // m = 1 gives H itself
        let s1 = sigma(GroupTable::symmetric(3), 1);
        assert_eq!(s1.embed().order(), 6);
        // Σ_2(S_3) has order 72 in S_6
        let s23 = sigma(GroupTable::symmetric(3), 2);
        assert_eq!(s23.embed().degree(), 6);
        assert_eq!(s23.embed().order(), 72);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let s = sigma(GroupTable::symmetric(3), 2);
        let elems = s.elements(CAP).unwrap();
        for x in elems.iter().take(15) {
            for y in elems.iter().rev().take(15) {
                assert_eq!(
                    s.embed_element(&s.mul(x, y)),
                    s.embed_element(x).compose(&s.embed_element(y))
                );
            }
        }
    }

    #[test]
    fn ore_report_small_groups() {
        // abelian and nonabelian H, prime and composite orders
        for (h, m) in [
            (GroupTable::cyclic(3), 2usize),
            (GroupTable::symmetric(3), 2),
            (GroupTable::cyclic(5), 3),
            (GroupTable::cyclic(6), 2),
        ] {
            let s = sigma(h, m);
            let report = ore_report(&s, CAP).unwrap();
            assert!(report.all_ok(), "Ore suite failed: {report:?}");
        }
    }

    #[test]
    fn ore_report_respects_the_pairwise_bound() {
        let s = sigma(GroupTable::symmetric(3), 4);
        assert!(matches!(ore_report(&s, CAP), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn decomposition_sound_on_sigma_4() {
        // every element of Σ_4(C_3): disjoint supports, commuting cycles,
        // product reassembles the element
        let s = sigma(GroupTable::cyclic(3), 4);
        for x in s.elements(CAP).unwrap() {
            let cycles = s.disjoint_cycles(&x);
            let mut seen = [false; 4];
            for c in &cycles {
                for &pt in &c.support {
                    assert!(!seen[pt], "supports must be disjoint");
                    seen[pt] = true;
                }
            }
            let mut product = s.identity();
            for c in &cycles {
                product = s.mul(&product, &s.cycle_element(c));
            }
            assert_eq!(product, x);
            for i in 0..cycles.len() {
                for j in i + 1..cycles.len() {
                    let a = s.cycle_element(&cycles[i]);
                    let b = s.cycle_element(&cycles[j]);
                    assert_eq!(s.mul(&a, &b), s.mul(&b, &a));
                }
            }
        }
    }

    #[test]
    fn zprime_examples() {
        // x = id in C_3 ≀ A_3: Z' = C_3 ≀ A_3 of order 81, index 1
        let s = sigma(GroupTable::cyclic(3), 3);
        let z = s.zprime(&s.identity(), 3).unwrap();
        assert_eq!(z.order(), 81);
        let wa = s.wreath_alternating();
        assert_eq!(wa.order(), 81);
        assert!(wa.contains_subgroup(&z));

        // x = ((g,1,1); (0 1 2)): centralizer has order 9, index 1
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let x = s.element(vec![1, 0, 0], rot).unwrap();
        let z = s.zprime(&x, 3).unwrap();
        assert_eq!(z.order(), 9);
        let cent = wa.centralizer(&s.embed_element(&x), CAP).unwrap();
        assert_eq!(cent.order(), 9);

        // ((g,1,g,1); id) in C_3 ≀ A_4: two k=2 blocks give index exactly 2
        let s4 = sigma(GroupTable::cyclic(3), 4);
        let x = s4.element(vec![1, 0, 1, 0], Perm::identity(4)).unwrap();
        let z = s4.zprime(&x, 3).unwrap();
        assert_eq!(z.order(), 81);
        let wa4 = s4.wreath_alternating();
        assert_eq!(wa4.order(), 972);
        let cent = wa4.centralizer(&s4.embed_element(&x), CAP).unwrap();
        assert_eq!(cent.order(), 162);
        assert!(cent.contains_subgroup(&z));

        // ((g,1,g²,1); id): blocks of classes g, g², and 1 give
        // Z' = C_3 × C_3 × (C_3 ≀ A_2) of order 81, here with index 1
        let x = s4.element(vec![1, 0, 2, 0], Perm::identity(4)).unwrap();
        let z = s4.zprime(&x, 3).unwrap();
        assert_eq!(z.order(), 81);
        let cent = wa4.centralizer(&s4.embed_element(&x), CAP).unwrap();
        assert_eq!(cent.order(), 81);
        assert!(cent.contains_subgroup(&z));

        // odd-order constraint: elements of order 2 are rejected
        let swap = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let y = s4.element(vec![0, 0, 0, 0], swap).unwrap();
        assert!(s4.zprime(&y, 3).is_err());
        // nonabelian base group rejected
        let sn = sigma(GroupTable::symmetric(3), 2);
        assert!(sn.zprime(&sn.identity(), 3).is_err());
    }
}
