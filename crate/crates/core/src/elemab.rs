//! Elementary abelian p-subgroups of symmetric and alternating groups.
//!
//! Everything is built from regular-representation blocks: a block of size
//! p^j carries a copy of (Z/p)^j acting on itself by translation. The
//! subgroup T(i_1,…,i_m) of S_{p^m} has i_j independent blocks of size p^j;
//! the detecting subgroup E of A_n is assembled from the base-p digits of n.
//!
//! Layout convention: blocks are laid out consecutively from point 0,
//! ordered by block size (j ascending) and then by copy index, with any
//! leftover a_0 points fixed at the end. The Sylow construction uses the
//! same layout so that E ≤ Syl_p(A_n) holds on the nose.

use crate::permgrp::{Perm, PermGroup};
use crate::{is_prime, Error, Result};
use std::collections::HashSet;

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(())
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut m = n;
            while m.is_multiple_of(q) {
                m /= q;
            }
            return m == 1;
        }
        q += 1;
    }
    true // n itself prime
}

/// Solution (i_1,…,i_m) of Σ i_j·p^j = p^m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexVector {
    p: u64,
    parts: Vec<u64>,
}

impl IndexVector {
    pub fn new(p: u64, parts: Vec<u64>) -> Result<IndexVector> {
        check_odd_prime(p)?;
        let m = parts.len() as u32;
        if m == 0 {
            return Err(Error::invalid("index vector must have m ≥ 1 entries"));
        }
        let total: u64 = parts
            .iter()
            .enumerate()
            .map(|(idx, &i)| i * p.pow(idx as u32 + 1))
            .sum();
        if total != p.pow(m) {
            return Err(Error::invalid(format!(
                "Σ i_j p^j = {total} ≠ p^m = {}",
                p.pow(m)
            )));
        }
        Ok(IndexVector { p, parts })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    /// i_j for j = 1..=m, as a slice indexed by j−1.
    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// Rank of T(i_1,…,i_m): Σ j·i_j.
    pub fn rank(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .map(|(idx, &i)| (idx + 1) * i as usize)
            .sum()
    }
}

/// All solutions of Σ i_j p^j = p^m, in lexicographic order.
pub fn index_vectors(m: u32, p: u64) -> Result<Vec<IndexVector>> {
    check_odd_prime(p)?;
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(
        j: u32,
        m: u32,
        p: u64,
        remaining: u64,
        prefix: &mut Vec<u64>,
        out: &mut Vec<IndexVector>,
    ) {
        if j == m {
            let pm = p.pow(m);
            if remaining.is_multiple_of(pm) {
                let mut parts = prefix.clone();
                parts.push(remaining / pm);
                out.push(IndexVector { p, parts });
            }
            return;
        }
        let pj = p.pow(j);
        for i in 0..=remaining / pj {
            prefix.push(i);
            rec(j + 1, m, p, remaining - i * pj, prefix, out);
            prefix.pop();
        }
    }
    rec(1, m, p, p.pow(m), &mut prefix, &mut out);
    Ok(out)
}

/// Base-p expansion n = a_0 + a_1 p + … + a_m p^m with a_m ≠ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePDigits {
    pub n: u64,
    pub p: u64,
    /// digits[j] = a_j
    pub digits: Vec<u64>,
}

pub fn base_p_digits(n: u64, p: u64) -> Result<BasePDigits> {
    check_odd_prime(p)?;
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    Ok(BasePDigits { n, p, digits })
}

/// One regular-representation block: a segment of `size` = p^j consecutive
/// points carrying a translation action of (Z/p)^j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularBlock {
    pub start: usize,
    pub size: usize,
}

/// Elementary abelian p-subgroup with a fixed ordered basis and a record of
/// the regular blocks it was built from.
#[derive(Debug, Clone)]
pub struct ElemAbSubgroup {
    ambient_degree: usize,
    p: u64,
    generators: Vec<Perm>,
    blocks: Vec<RegularBlock>,
}

impl ElemAbSubgroup {
    /// Validates that the generators pairwise commute, each has order p, and
    /// together they generate a group of order p^rank.
    pub fn new(
        ambient_degree: usize,
        p: u64,
        generators: Vec<Perm>,
        blocks: Vec<RegularBlock>,
    ) -> Result<ElemAbSubgroup> {
        check_odd_prime(p)?;
        for g in &generators {
            if g.degree() != ambient_degree {
                return Err(Error::DegreeMismatch(g.degree(), ambient_degree));
            }
        }
        if !generators.is_empty() {
            crate::permgrp::exponent_table(&generators, p, generators.len())?;
        }
        Ok(ElemAbSubgroup {
            ambient_degree,
            p,
            generators,
            blocks,
        })
    }

    pub fn ambient_degree(&self) -> usize {
        self.ambient_degree
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.rank() as u32)
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn blocks(&self) -> &[RegularBlock] {
        &self.blocks
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.ambient_degree, self.generators.clone())
    }

    /// All p^rank elements, sorted.
    pub fn elements(&self) -> Vec<Perm> {
        let mut elems = vec![Perm::identity(self.ambient_degree)];
        for g in &self.generators {
            let mut next = Vec::with_capacity(elems.len() * self.p as usize);
            for e in &elems {
                let mut power = e.clone();
                next.push(power.clone());
                for _ in 1..self.p {
                    power = g.compose(&power);
                    next.push(power.clone());
                }
            }
            elems = next;
        }
        elems.sort();
        elems
    }
}

/// Regular-representation generators of (Z/p)^j on the segment
/// [start, start+p^j): generator t shifts base-p digit t of the offset.
fn regular_block_generators(degree: usize, start: usize, p: u64, j: u32) -> Vec<Perm> {
    let size = (p as usize).pow(j);
    let mut gens = Vec::with_capacity(j as usize);
    for t in 0..j {
        let stride = (p as usize).pow(j - 1 - t);
        let mut images: Vec<usize> = (0..degree).collect();
        for offset in 0..size {
            let digit = offset / stride % p as usize;
            let image_offset = if digit + 1 == p as usize {
                offset - digit * stride
            } else {
                offset + stride
            };
            images[start + offset] = start + image_offset;
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    gens
}

/// The subgroup T(i_1,…,i_m) ≤ S_{p^m}: for each j, i_j independent blocks
/// of size p^j, each carrying (Z/p)^j by its regular representation.
pub fn build_t(iv: &IndexVector) -> ElemAbSubgroup {
    let p = iv.p();
    let m = iv.m() as u32;
    let degree = (p as usize).pow(m);
    let mut generators = Vec::new();
    let mut blocks = Vec::new();
    let mut start = 0usize;
    for j in 1..=m {
        let size = (p as usize).pow(j);
        for _copy in 0..iv.parts()[j as usize - 1] {
            generators.extend(regular_block_generators(degree, start, p, j));
            blocks.push(RegularBlock { start, size });
            start += size;
        }
    }
    ElemAbSubgroup::new(degree, p, generators, blocks).expect("T(i) construction is valid")
}

/// Faithful image of Π Z/(orders[i]) in S_{Π orders[i]} by left translation;
/// transitive and free. Elements are indexed lexicographically by their
/// exponent vectors (first factor most significant).
pub fn regular_embedding(cyclic_factors: &[u64], cap: u64) -> Result<PermGroup> {
    if cyclic_factors.is_empty() {
        return Err(Error::invalid("need at least one cyclic factor"));
    }
    for &o in cyclic_factors {
        if !is_prime_power(o) {
            return Err(Error::invalid(format!("factor {o} is not a prime power")));
        }
    }
    let mut total = 1u64;
    for &o in cyclic_factors {
        total = total
            .checked_mul(o)
            .ok_or_else(|| Error::limit("regular representation degree overflows"))?;
        if total > cap {
            return Err(Error::limit(format!(
                "regular representation on {total}+ points exceeds cap {cap}"
            )));
        }
    }
    let degree = total as usize;
    let mut strides = vec![1u64; cyclic_factors.len()];
    for i in (0..cyclic_factors.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * cyclic_factors[i + 1];
    }
    let mut gens = Vec::new();
    for (i, &order) in cyclic_factors.iter().enumerate() {
        let stride = strides[i];
        let mut images: Vec<usize> = Vec::with_capacity(degree);
        for x in 0..total {
            let digit = x / stride % order;
            let image = if digit + 1 == order {
                x - digit * stride
            } else {
                x + stride
            };
            images.push(image as usize);
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    Ok(PermGroup::new(degree, gens))
}

/// The detecting subgroup E ≤ A_n for odd p: a_j copies of T_{1,j} per
/// base-p digit of n, of rank (n − a_0)/p. Each generator is a single
/// p-cycle, hence even. For n < p the trivial subgroup is returned.
pub fn detecting_subgroup(n: u64, p: u64) -> Result<ElemAbSubgroup> {
    let digits = base_p_digits(n, p)?;
    let degree = n as usize;
    let mut generators = Vec::new();
    let mut blocks = Vec::new();
    let mut start = 0usize;
    for (j, &a) in digits.digits.iter().enumerate().skip(1) {
        let seg = (p as usize).pow(j as u32);
        for _copy in 0..a {
            // T_{1,j}: p^{j-1} regular blocks of size p inside this segment
            for b in 0..seg / p as usize {
                let cycle_start = start + b * p as usize;
                generators.extend(regular_block_generators(degree, cycle_start, p, 1));
                blocks.push(RegularBlock {
                    start: cycle_start,
                    size: p as usize,
                });
            }
            start += seg;
        }
    }
    let e = ElemAbSubgroup::new(degree, p, generators, blocks)?;
    debug_assert_eq!(e.rank() as u64, (n - digits.digits[0]) / p);
    Ok(e)
}

/// Generators of Syl_p(A_n) = Syl_p(S_n) for odd p: per base-p digit a_j, a_j
/// copies of the iterated wreath product Z/p ≀ … ≀ Z/p (j factors) on p^j
/// points, in the same layout as `detecting_subgroup`.
pub fn sylow_generators(n: u64, p: u64) -> Result<PermGroup> {
    let digits = base_p_digits(n, p)?;
    let degree = n as usize;
    let mut gens: Vec<Perm> = Vec::new();
    let mut start = 0usize;
    for (j, &a) in digits.digits.iter().enumerate().skip(1) {
        let seg = (p as usize).pow(j as u32);
        for _copy in 0..a {
            // level-t block rotation x ↦ x + p^{t-1} (mod p^t) for t = 1..=j
            for t in 1..=j as u32 {
                let span = (p as usize).pow(t);
                let step = span / p as usize;
                let mut images: Vec<usize> = (0..degree).collect();
                for offset in 0..span {
                    images[start + offset] = start + (offset + step) % span;
                }
                gens.push(Perm::from_images(images).unwrap());
            }
            start += seg;
        }
    }
    Ok(PermGroup::new(degree, gens))
}

/// Legendre's formula: the exponent of p in n!.
pub fn legendre_exponent(n: u64, p: u64) -> u32 {
    let mut total = 0u32;
    let mut q = p;
    while q <= n {
        total += (n / q) as u32;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

fn canonical_conjugate(elems: &[Perm], z: &Perm) -> Vec<Perm> {
    let mut out: Vec<Perm> = elems.iter().map(|x| x.conjugate_by(z)).collect();
    out.sort();
    out
}

/// Cárdenas–Kuhn closedness: every G-conjugate of E that lands inside S is
/// already S-conjugate to E. Exhaustive over G below the cap; above it, the
/// candidate subgroups of S are enumerated and tested by backtrack search.
pub fn closed_system_check(
    e: &ElemAbSubgroup,
    s: &PermGroup,
    g: &PermGroup,
    cap: u64,
) -> Result<bool> {
    let e_group = e.group();
    if !s.contains_subgroup(&e_group) || !g.contains_subgroup(s) {
        return Err(Error::NotASubgroup);
    }
    let e_elems = e.elements();
    let s_elements = s.elements(cap)?;
    let s_set: HashSet<Perm> = s_elements.iter().cloned().collect();
    // all S-conjugates of E, in canonical form
    let s_conjugates: HashSet<Vec<Perm>> = s_elements
        .iter()
        .map(|z| canonical_conjugate(&e_elems, z))
        .collect();

    if g.order() <= cap {
        let mut closed = true;
        g.try_for_each_element(|x| {
            if e.generators()
                .iter()
                .all(|eg| s_set.contains(&eg.conjugate_by(x)))
                && !s_conjugates.contains(&canonical_conjugate(&e_elems, x))
            {
                closed = false;
                return std::ops::ControlFlow::Break(());
            }
            std::ops::ControlFlow::Continue(())
        });
        return Ok(closed);
    }

    // G too large to scan: enumerate elementary abelian subgroups of S with
    // the same order as E and test G-conjugacy to E by backtracking.
    for candidate in elem_ab_subgroups_of(s, e.p(), e.rank(), cap)? {
        if s_conjugates.contains(&candidate) {
            continue;
        }
        let candidate_group = PermGroup::from_elements(s.degree(), candidate);
        if g.subgroup_conjugator(&e_group, &candidate_group, cap)?
            .is_some()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All elementary abelian p-subgroups of `s` of order exactly p^rank, as
/// canonical sorted element lists.
pub fn elem_ab_subgroups_of(
    s: &PermGroup,
    p: u64,
    rank: usize,
    cap: u64,
) -> Result<Vec<Vec<Perm>>> {
    let elems = s.elements(cap)?;
    let order_p: Vec<&Perm> = elems.iter().filter(|x| x.order() == p).collect();
    let mut current: Vec<Vec<Perm>> = vec![vec![Perm::identity(s.degree())]];
    for _ in 0..rank {
        let mut next: HashSet<Vec<Perm>> = HashSet::new();
        for subgroup in &current {
            for &y in &order_p {
                if subgroup.contains(y) {
                    continue;
                }
                if !subgroup.iter().all(|x| x.compose(y) == y.compose(x)) {
                    continue;
                }
                let mut bigger = Vec::with_capacity(subgroup.len() * p as usize);
                for x in subgroup {
                    let mut power = x.clone();
                    bigger.push(power.clone());
                    for _ in 1..p {
                        power = y.compose(&power);
                        bigger.push(power.clone());
                    }
                }
                bigger.sort();
                next.insert(bigger);
            }
        }
        current = next.into_iter().collect();
        current.sort();
    }
    Ok(current)
}

/// Result of reducing an abelian p-subgroup to a product of smaller
/// alternating groups.
#[derive(Debug, Clone)]
pub enum AbelianReduction {
    /// A is intransitive: each orbit gives a factor A_{|orbit|}, all smaller
    /// than the ambient degree.
    OrbitSplit { orbits: Vec<Vec<usize>> },
    /// A is transitive, hence regular: a direct cyclic factor of order
    /// `cyclic_order` permutes the `blocks` (orbits of a complement, which
    /// acts the same way on every block), so A ≤ A_{inner_order} × A_{cyclic_order}.
    RegularSplit {
        blocks: Vec<Vec<usize>>,
        inner_order: u64,
        cyclic_order: u64,
    },
}

impl AbelianReduction {
    /// The factor sizes t_h with A ≤ Π A_{t_h}.
    pub fn factors(&self) -> Vec<u64> {
        match self {
            AbelianReduction::OrbitSplit { orbits } => {
                orbits.iter().map(|o| o.len() as u64).collect()
            }
            AbelianReduction::RegularSplit {
                inner_order,
                cyclic_order,
                ..
            } => {
                vec![*inner_order, *cyclic_order]
            }
        }
    }
}

/// Exhibit a non-cyclic abelian p-subgroup of A_N as a subgroup of a product
/// of strictly smaller alternating groups. Errors if the input is cyclic.
pub fn reduce_abelian(
    gens: &[Perm],
    ambient_degree: usize,
    p: u64,
    cap: u64,
) -> Result<AbelianReduction> {
    check_odd_prime(p)?;
    if gens.is_empty() {
        return Err(Error::invalid("trivial group is cyclic; nothing to reduce"));
    }
    for (i, a) in gens.iter().enumerate() {
        if a.degree() != ambient_degree {
            return Err(Error::DegreeMismatch(a.degree(), ambient_degree));
        }
        let o = a.order();
        let mut m = o;
        while m % p == 0 {
            m /= p;
        }
        if m != 1 {
            return Err(Error::invalid(format!(
                "generator order {o} is not a power of {p}"
            )));
        }
        for b in &gens[i + 1..] {
            if a.compose(b) != b.compose(a) {
                return Err(Error::invalid("generators do not commute"));
            }
        }
    }
    let group = PermGroup::new(ambient_degree, gens.to_vec());
    let elements = group.elements(cap)?.to_vec();
    let order = elements.len() as u64;
    if elements.iter().any(|x| x.order() == order) {
        return Err(Error::invalid(
            "subgroup is cyclic; the reduction hypothesis fails",
        ));
    }

    let orbits: Vec<Vec<usize>> = group.orbits().into_iter().filter(|o| o.len() > 1).collect();
    let transitive = orbits.len() == 1 && orbits[0].len() == ambient_degree;
    if !transitive {
        for orbit in &orbits {
            for g in gens {
                assert!(
                    restriction_is_even(g, orbit),
                    "orbit restriction must be even"
                );
            }
        }
        return Ok(AbelianReduction::OrbitSplit { orbits });
    }

    // Transitive abelian means regular.
    assert_eq!(
        order as usize, ambient_degree,
        "transitive abelian group must be regular"
    );
    let max_elem = elements
        .iter()
        .max_by_key(|x| x.order())
        .expect("nontrivial group has a maximal-order element")
        .clone();
    let cyclic_order = max_elem.order();
    let cyclic_part: HashSet<Perm> = {
        let mut set = HashSet::new();
        let mut x = Perm::identity(ambient_degree);
        for _ in 0..cyclic_order {
            set.insert(x.clone());
            x = max_elem.compose(&x);
        }
        set
    };
    // Greedy complement: a subgroup maximal among those meeting <g> trivially
    // is a direct complement when g has maximal order.
    let mut complement: HashSet<Perm> = HashSet::new();
    complement.insert(Perm::identity(ambient_degree));
    for x in &elements {
        if complement.contains(x) {
            continue;
        }
        let mut candidate = complement.clone();
        let mut power = x.clone();
        while !candidate.contains(&power) {
            let products: Vec<Perm> = candidate.iter().map(|c| power.compose(c)).collect();
            candidate.extend(products);
            power = x.compose(&power);
        }
        if candidate
            .iter()
            .filter(|c| cyclic_part.contains(*c))
            .count()
            == 1
        {
            complement = candidate;
        }
    }
    let inner_order = complement.len() as u64;
    assert_eq!(
        inner_order * cyclic_order,
        order,
        "complement of the maximal cyclic factor must be direct"
    );

    let complement_group = PermGroup::new(ambient_degree, complement.iter().cloned().collect());
    let blocks = complement_group.orbits();
    assert!(blocks.iter().all(|b| b.len() as u64 == inner_order));
    assert_eq!(blocks.len() as u64, cyclic_order);

    certify_regular_split(gens, &blocks)?;
    Ok(AbelianReduction::RegularSplit {
        blocks,
        inner_order,
        cyclic_order,
    })
}

fn restriction_is_even(g: &Perm, orbit: &[usize]) -> bool {
    let in_orbit: HashSet<usize> = orbit.iter().copied().collect();
    let mut transpositions = 0usize;
    for cycle in g.cycles() {
        if in_orbit.contains(&cycle[0]) {
            transpositions += cycle.len() - 1;
        }
    }
    transpositions.is_multiple_of(2)
}

/// Containment certificate for the transitive case: every generator permutes
/// the blocks, acts the same way on each block relative to a fixed
/// identification, and both factor images are even permutations.
fn certify_regular_split(gens: &[Perm], blocks: &[Vec<usize>]) -> Result<()> {
    let mut block_of = std::collections::HashMap::new();
    for (b, block) in blocks.iter().enumerate() {
        for (pos, &pt) in block.iter().enumerate() {
            block_of.insert(pt, (b, pos));
        }
    }
    for g in gens {
        let mut block_image = vec![usize::MAX; blocks.len()];
        let mut inner_map: Option<Vec<usize>> = None;
        for (b, block) in blocks.iter().enumerate() {
            let mut target = usize::MAX;
            let mut map = vec![usize::MAX; block.len()];
            for (pos, &pt) in block.iter().enumerate() {
                let (tb, tpos) = block_of[&g.apply(pt)];
                if target == usize::MAX {
                    target = tb;
                } else if target != tb {
                    return Err(Error::invalid(
                        "generator does not permute the block system",
                    ));
                }
                map[pos] = tpos;
            }
            block_image[b] = target;
            match &inner_map {
                None => inner_map = Some(map),
                Some(existing) => {
                    if *existing != map {
                        return Err(Error::invalid(
                            "generator does not act diagonally across blocks",
                        ));
                    }
                }
            }
        }
        let block_perm = Perm::from_images(block_image)?;
        let inner_perm = Perm::from_images(inner_map.unwrap())?;
        if !block_perm.is_even() || !inner_perm.is_even() {
            return Err(Error::invalid("factor image is an odd permutation"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUM_CAP as CAP;

    #[test]
    fn index_vectors_small() {
        let v = index_vectors(1, 3).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].parts(), &[1]);

        let v = index_vectors(2, 3).unwrap();
        let parts: Vec<&[u64]> = v.iter().map(|iv| iv.parts()).collect();
        assert_eq!(parts, vec![&[0, 1][..], &[3, 0][..]]);
    }

    #[test]
    fn index_vectors_match_brute_force() {
        // independent Diophantine enumeration of 3i1 + 9i2 + 27i3 = 27
        let mut expected = Vec::new();
        for i1 in 0..=9u64 {
            for i2 in 0..=3u64 {
                for i3 in 0..=1u64 {
                    if 3 * i1 + 9 * i2 + 27 * i3 == 27 {
                        expected.push(vec![i1, i2, i3]);
                    }
                }
            }
        }
        expected.sort();
        assert_eq!(expected.len(), 5);
        let got: Vec<Vec<u64>> = index_vectors(3, 3)
            .unwrap()
            .iter()
            .map(|iv| iv.parts().to_vec())
            .collect();
        assert_eq!(got, expected);

        for iv in index_vectors(3, 3).unwrap() {
            let total: u64 = iv
                .parts()
                .iter()
                .enumerate()
                .map(|(idx, &i)| i * 3u64.pow(idx as u32 + 1))
                .sum();
            assert_eq!(total, 27);
        }
    }

    #[test]
    fn build_t_examples() {
        let t11 = build_t(&IndexVector::new(3, vec![1]).unwrap());
        assert_eq!(t11.rank(), 1);
        assert_eq!(
            t11.generators()[0],
            Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()
        );

        let t22 = build_t(&IndexVector::new(3, vec![0, 1]).unwrap());
        assert_eq!(t22.rank(), 2);
        assert_eq!(t22.group().order(), 9);
        // regular: transitive on 9 points, every nonidentity element free
        assert_eq!(t22.group().orbits(), vec![(0..9).collect::<Vec<_>>()]);
        for x in t22.elements() {
            if !x.is_identity() {
                assert!(x.min_moved().is_some());
                assert!((0..9).all(|pt| x.apply(pt) != pt));
            }
        }

        let t12 = build_t(&IndexVector::new(3, vec![3, 0]).unwrap());
        assert_eq!(t12.rank(), 3);
        assert_eq!(t12.group().order(), 27);
        assert_eq!(t12.blocks().len(), 3);
    }

    #[test]
    fn build_t_order_matches_rank() {
        for iv in index_vectors(2, 3).unwrap() {
            let t = build_t(&iv);
            assert_eq!(t.group().order(), 3u64.pow(iv.rank() as u32));
        }
    }

    #[test]
    fn build_t_blocks_are_regular_orbits() {
        for iv in index_vectors(2, 3)
            .unwrap()
            .iter()
            .chain(&index_vectors(3, 3).unwrap())
        {
            let t = build_t(iv);
            let orbit_partition: Vec<Vec<usize>> = t.group().orbits();
            let block_partition: Vec<Vec<usize>> = t
                .blocks()
                .iter()
                .map(|b| (b.start..b.start + b.size).collect())
                .collect();
            assert_eq!(orbit_partition, block_partition, "T{:?}", iv.parts());
            // free on each block: the block subgroup has order = block size
            // and no nonidentity element fixes a block point
            for block in t.blocks() {
                let local: Vec<Perm> = t
                    .generators()
                    .iter()
                    .filter(|g| {
                        g.min_moved()
                            .is_some_and(|pt| pt >= block.start && pt < block.start + block.size)
                    })
                    .cloned()
                    .collect();
                let local_group = PermGroup::new(t.ambient_degree(), local);
                assert_eq!(local_group.order() as usize, block.size);
                for x in local_group.elements(CAP).unwrap() {
                    if !x.is_identity() {
                        for pt in block.start..block.start + block.size {
                            assert_ne!(x.apply(pt), pt);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_of_t11_in_s3_is_gl1() {
        let t11 = build_t(&IndexVector::new(3, vec![1]).unwrap());
        let s3 = PermGroup::symmetric(3);
        let w = crate::permgrp::weyl_action(&s3, &t11, CAP).unwrap();
        assert_eq!(w.matrices.len(), 2);
        let values: Vec<u64> = w.matrices.iter().map(|m| m.get(0, 0)).collect();
        assert_eq!(values, vec![1, 2]);
        // the alternating Weyl group is only the identity
        let a3 = PermGroup::alternating(3);
        let w = crate::permgrp::weyl_action(&a3, &t11, CAP).unwrap();
        assert_eq!(w.matrices.len(), 1);
    }

    #[test]
    fn regular_embedding_examples() {
        let c3 = regular_embedding(&[3], CAP).unwrap();
        assert_eq!(c3.order(), 3);
        assert_eq!(
            c3.generators()[0],
            Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()
        );

        let c9 = regular_embedding(&[9], CAP).unwrap();
        assert_eq!(c9.order(), 9);
        assert_eq!(c9.generators()[0].cycle_type(), vec![9]);

        let c3c3 = regular_embedding(&[3, 3], CAP).unwrap();
        assert_eq!(c3c3.order(), 9);
        for x in c3c3.elements(CAP).unwrap() {
            if !x.is_identity() {
                assert!(
                    (0..9).all(|pt| x.apply(pt) != pt),
                    "regular action must be free"
                );
            }
        }
        assert_eq!(c3c3.orbits().len(), 1);

        assert!(regular_embedding(&[6], CAP).is_err());
    }

    #[test]
    fn detecting_subgroup_examples() {
        let e = detecting_subgroup(3, 3).unwrap();
        assert_eq!(e.rank(), 1);

        let e = detecting_subgroup(9, 3).unwrap();
        assert_eq!(e.rank(), 3);

        let e = detecting_subgroup(12, 3).unwrap();
        assert_eq!(e.rank(), 4);
        assert_eq!(e.group().order(), 81);

        let trivial = detecting_subgroup(2, 3).unwrap();
        assert_eq!(trivial.rank(), 0);

        // every generator is even, so E ≤ A_n
        for n in [3u64, 5, 6, 9, 10, 12, 13] {
            let e = detecting_subgroup(n, 3).unwrap();
            assert!(e.generators().iter().all(|g| g.is_even()));
            let digits = base_p_digits(n, 3).unwrap();
            assert_eq!(e.rank() as u64, (n - digits.digits[0]) / 3);
        }
    }

    #[test]
    fn sylow_orders_match_legendre() {
        for (n, p) in [(3u64, 3u64), (9, 3), (12, 3), (10, 5), (7, 7), (13, 3)] {
            let syl = sylow_generators(n, p).unwrap();
            assert_eq!(syl.order(), p.pow(legendre_exponent(n, p)), "n={n} p={p}");
            assert!(syl.generators().iter().all(|g| g.is_even()));
            let e = detecting_subgroup(n, p).unwrap();
            assert!(
                syl.contains_subgroup(&e.group()),
                "E must sit inside Syl_p, n={n} p={p}"
            );
        }
        assert_eq!(sylow_generators(3, 3).unwrap().order(), 3);
        assert_eq!(sylow_generators(9, 3).unwrap().order(), 81);
        assert_eq!(sylow_generators(12, 3).unwrap().order(), 243);
    }

    #[test]
    fn closed_system_trivial_cases() {
        let e = detecting_subgroup(3, 3).unwrap();
        let s = e.group();
        let g = PermGroup::alternating(3);
        assert!(closed_system_check(&e, &s, &g, CAP).unwrap());
    }

    #[test]
    fn closed_system_small_alternating() {
        // E = Syl_3(A_4) = C_3: all Sylow subgroups are conjugate but only
        // the identity conjugation lands inside S = E, so the system is closed.
        let e = detecting_subgroup(4, 3).unwrap();
        let s = sylow_generators(4, 3).unwrap();
        let g = PermGroup::alternating(4);
        assert!(closed_system_check(&e, &s, &g, CAP).unwrap());
    }

    #[test]
    fn reduce_abelian_examples() {
        // (Z/3)^2 regular in A_9: transitive case, factors (3, 3)
        let a = regular_embedding(&[3, 3], CAP).unwrap();
        let red = reduce_abelian(a.generators(), 9, 3, CAP).unwrap();
        assert_eq!(red.factors(), vec![3, 3]);
        match red {
            AbelianReduction::RegularSplit { blocks, .. } => {
                assert_eq!(blocks.len(), 3);
                assert!(blocks.iter().all(|b| b.len() == 3));
            }
            _ => panic!("expected the transitive split"),
        }

        // two orbits of sizes 3 and 9 inside A_12
        let g1 = Perm::from_cycles(12, &[vec![0, 1, 2]]).unwrap();
        let t22 = build_t(&IndexVector::new(3, vec![0, 1]).unwrap());
        let mut gens = vec![g1];
        for g in t22.generators() {
            let shifted: Vec<usize> = (0..12)
                .map(|pt| if pt < 3 { pt } else { g.apply(pt - 3) + 3 })
                .collect();
            gens.push(Perm::from_images(shifted).unwrap());
        }
        let red = reduce_abelian(&gens, 12, 3, CAP).unwrap();
        assert_eq!(red.factors(), vec![3, 9]);

        // cyclic input is rejected
        let c9 = regular_embedding(&[9], CAP).unwrap();
        assert!(matches!(
            reduce_abelian(c9.generators(), 9, 3, CAP),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn subgroup_constructor_validates() {
        // non-commuting generators
        let bad = ElemAbSubgroup::new(
            3,
            3,
            vec![
                Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
                Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
            ],
            vec![],
        );
        assert!(bad.is_err());
        // wrong order
        let bad = ElemAbSubgroup::new(
            9,
            3,
            vec![Perm::from_cycles(9, &[(0..9).collect()]).unwrap()],
            vec![],
        );
        assert!(bad.is_err());
        // dependent generators do not generate (Z/p)^k freely
        let g = Perm::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let bad = ElemAbSubgroup::new(6, 3, vec![g.clone(), g.compose(&g)], vec![]);
        assert!(bad.is_err());
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Perm>();
        assert_send_sync::<PermGroup>();
        assert_send_sync::<ElemAbSubgroup>();
        assert_send_sync::<crate::fplin::FpMatrix>();
        assert_send_sync::<crate::monomial::SigmaGroup>();
        assert_send_sync::<crate::exterior::ExtElement>();
        assert_send_sync::<crate::stablecoh::CohomologyTable>();
    }

    #[test]
    fn elem_ab_subgroup_enumeration_small() {
        // A_4 has a unique (Z/2)^2... but p must be odd here; use C_3 × C_3 in S_6
        let g = PermGroup::new(
            6,
            vec![
                Perm::from_cycles(6, &[vec![0, 1, 2]]).unwrap(),
                Perm::from_cycles(6, &[vec![3, 4, 5]]).unwrap(),
            ],
        );
        let rank2 = elem_ab_subgroups_of(&g, 3, 2, CAP).unwrap();
        assert_eq!(rank2.len(), 1);
        assert_eq!(rank2[0].len(), 9);
        let rank1 = elem_ab_subgroups_of(&g, 3, 1, CAP).unwrap();
        assert_eq!(rank1.len(), 4);
    }
}
