//! The exterior algebra Λ(e_1,…,e_k) over F_p as a graded vector space with
//! induced matrix-group actions.
//!
//! Monomials are index subsets of {0..k−1}, stored as bitmasks; the basis of
//! each graded piece is ordered by (degree, lexicographic subset order). A
//! matrix g acts on degree 1 by e_i ↦ Σ_j g[i][j]·e_j (row i of g, matching
//! the row-vector convention of `fplin`) and extends multiplicatively, so on
//! the top form it acts by det(g).

use crate::fplin::{self, FpMatrix, FpSubspace};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Element of Λ(e_1,…,e_k) over F_p: monomial bitmask → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    p: u64,
    k: usize,
    terms: BTreeMap<u32, u64>,
}

impl ExtElement {
    pub fn zero(p: u64, k: usize) -> ExtElement {
        ExtElement {
            p,
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: u64, k: usize) -> ExtElement {
        let mut e = ExtElement::zero(p, k);
        e.terms.insert(0, 1);
        e
    }

    /// The generator e_i (0-based).
    pub fn generator(p: u64, k: usize, i: usize) -> ExtElement {
        assert!(i < k, "generator index out of range");
        let mut e = ExtElement::zero(p, k);
        e.terms.insert(1 << i, 1);
        e
    }

    /// The top form e_1 ∧ … ∧ e_k.
    pub fn top_form(p: u64, k: usize) -> ExtElement {
        let mut e = ExtElement::zero(p, k);
        e.terms.insert((1u32 << k) - 1, 1);
        e
    }

    pub fn from_terms(p: u64, k: usize, terms: &[(u32, u64)]) -> ExtElement {
        let mut e = ExtElement::zero(p, k);
        for &(mask, coeff) in terms {
            assert!(mask < 1 << k, "monomial out of range");
            e.add_term(mask, coeff);
        }
        e
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn num_generators(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mask: u32) -> u64 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    fn add_term(&mut self, mask: u32, coeff: u64) {
        let c = (self.terms.get(&mask).copied().unwrap_or(0) + coeff) % self.p;
        if c == 0 {
            self.terms.remove(&mask);
        } else {
            self.terms.insert(mask, c);
        }
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        assert_eq!((self.p, self.k), (other.p, other.k), "algebra mismatch");
        let mut out = self.clone();
        for (mask, coeff) in other.terms() {
            out.add_term(mask, coeff);
        }
        out
    }

    pub fn scale(&self, c: u64) -> ExtElement {
        let c = c % self.p;
        let mut out = ExtElement::zero(self.p, self.k);
        if c != 0 {
            for (mask, coeff) in self.terms() {
                out.terms.insert(mask, coeff * c % self.p);
            }
        }
        out
    }
}

/// Sign of merging two disjoint sorted index sets: (−1)^inversions where an
/// inversion is a pair (i ∈ a, j ∈ b) with j < i.
fn merge_sign(a: u32, b: u32) -> i32 {
    let mut inversions = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inversions += (b & ((1 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Exterior product; bilinear, associative, graded-anticommutative.
pub fn wedge(a: &ExtElement, b: &ExtElement) -> ExtElement {
    assert_eq!((a.p, a.k), (b.p, b.k), "algebra mismatch");
    let p = a.p;
    let mut out = ExtElement::zero(p, a.k);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if ma & mb != 0 {
                continue;
            }
            let mut c = ca * cb % p;
            if merge_sign(ma, mb) < 0 {
                c = (p - c) % p;
            }
            out.add_term(ma | mb, c);
        }
    }
    out
}

/// The algebra automorphism extending e_i ↦ Σ_j g[i][j]·e_j; errors if g is
/// singular.
pub fn act(g: &FpMatrix, a: &ExtElement) -> Result<ExtElement> {
    if !g.is_square() || g.rows() != a.k {
        return Err(Error::invalid(format!(
            "action matrix must be {}x{}",
            a.k, a.k
        )));
    }
    if g.modulus() != a.p {
        return Err(Error::invalid("modulus mismatch"));
    }
    if !g.is_invertible() {
        return Err(Error::invalid("singular matrix cannot act"));
    }
    Ok(act_unchecked(g, a))
}

fn act_unchecked(g: &FpMatrix, a: &ExtElement) -> ExtElement {
    let p = a.p;
    let k = a.k;
    let row_images: Vec<ExtElement> = (0..k)
        .map(|i| {
            let mut e = ExtElement::zero(p, k);
            for (j, &c) in g.row(i).iter().enumerate() {
                if c != 0 {
                    e.terms.insert(1 << j, c);
                }
            }
            e
        })
        .collect();
    let mut out = ExtElement::zero(p, k);
    for (mask, coeff) in a.terms() {
        let mut image = ExtElement::one(p, k);
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            image = wedge(&image, &row_images[i]);
            rest &= rest - 1;
        }
        out = out.add(&image.scale(coeff));
    }
    out
}

/// Basis monomials of degree d in lexicographic subset order.
pub fn degree_basis(k: usize, d: usize) -> Vec<u32> {
    fn rec(k: usize, d: usize, start: usize, mask: u32, out: &mut Vec<u32>) {
        if d == 0 {
            out.push(mask);
            return;
        }
        for i in start..=k - d {
            rec(k, d - 1, i + 1, mask | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if d <= k {
        rec(k, d, 0, 0, &mut out);
    }
    out
}

/// Matrix of the induced action of g on the degree-d graded piece, in the
/// `degree_basis` coordinates (rows act from the right, as in `fplin`).
pub fn degree_matrix(g: &FpMatrix, d: usize) -> Result<FpMatrix> {
    let k = g.rows();
    let basis = degree_basis(k, d);
    let position: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut rows = Vec::with_capacity(basis.len() * basis.len());
    for &mask in &basis {
        let mono = ExtElement::from_terms(g.modulus(), k, &[(mask, 1)]);
        let image = act(g, &mono)?;
        let mut row = vec![0u64; basis.len()];
        for (m, c) in image.terms() {
            row[position[&m]] = c;
        }
        rows.extend(row);
    }
    FpMatrix::new(g.modulus(), basis.len(), basis.len(), rows)
}

/// Per-degree dimensions (and optional echelon bases) of the invariants of
/// Λ(e_1,…,e_k) under the group generated by `gens`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedInvariantTable {
    pub p: u64,
    pub k: usize,
    /// dims[d] for d = 0..=k
    pub dims: Vec<usize>,
    /// Echelon bases per degree, in `degree_basis` coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<Vec<u64>>>>,
}

impl GradedInvariantTable {
    /// Positive degrees with nonzero invariants.
    pub fn positive_support(&self) -> Vec<usize> {
        (1..self.dims.len()).filter(|&d| self.dims[d] > 0).collect()
    }
}

/// Fixed subspace of the induced action on each graded piece. Generators
/// suffice. With no generators the action is trivial and dims[d] = C(k,d).
pub fn invariants(
    gens: &[FpMatrix],
    k: usize,
    p: u64,
    with_bases: bool,
) -> Result<GradedInvariantTable> {
    for g in gens {
        if !g.is_square() || g.rows() != k || g.modulus() != p {
            return Err(Error::invalid(format!(
                "generators must be {k}x{k} over F_{p}"
            )));
        }
    }
    let mut dims = Vec::with_capacity(k + 1);
    let mut bases = Vec::with_capacity(k + 1);
    for d in 0..=k {
        let piece_dim = degree_basis(k, d).len();
        let space: FpSubspace = if gens.is_empty() {
            fplin::kernel(&FpMatrix::zero(p, 1, piece_dim)?)
        } else {
            let mats: Vec<FpMatrix> = gens
                .iter()
                .map(|g| degree_matrix(g, d))
                .collect::<Result<_>>()?;
            fplin::fixed_subspace(&mats, piece_dim)?
        };
        dims.push(space.dim());
        if with_bases {
            bases.push(space.basis().to_vec());
        }
    }
    Ok(GradedInvariantTable {
        p,
        k,
        dims,
        bases: with_bases.then_some(bases),
    })
}

/// Generating matrices over F_3 of the Weyl group of the rank-k detecting
/// subgroup inside A_{3k}: adjacent signed transpositions e_i ↦ e_{i+1},
/// e_{i+1} ↦ −e_i, together with paired sign changes on (e_i, e_{i+1}).
/// The generated group has order k!·2^{k−1}.
pub fn weyl_alternating_action(k: usize) -> Vec<FpMatrix> {
    let p = 3u64;
    let mut gens = Vec::new();
    for i in 0..k.saturating_sub(1) {
        let mut rows: Vec<Vec<u64>> = (0..k)
            .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
            .collect();
        rows[i] = (0..k).map(|c| u64::from(c == i + 1)).collect();
        rows[i + 1] = (0..k).map(|c| if c == i { p - 1 } else { 0 }).collect();
        gens.push(FpMatrix::from_rows(p, &rows).unwrap());

        let mut diag: Vec<Vec<u64>> = (0..k)
            .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
            .collect();
        diag[i][i] = p - 1;
        diag[i + 1][i + 1] = p - 1;
        gens.push(FpMatrix::from_rows(p, &diag).unwrap());
    }
    gens
}

/// The full signed-permutation generators over F_3 (adds a single sign
/// change), which is the Weyl group when n ≡ 2 (mod 3); order k!·2^k.
pub fn weyl_full_signed_action(k: usize) -> Vec<FpMatrix> {
    let p = 3u64;
    let mut gens = weyl_alternating_action(k);
    let mut diag: Vec<Vec<u64>> = (0..k)
        .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
        .collect();
    diag[0][0] = p - 1;
    gens.push(FpMatrix::from_rows(p, &diag).unwrap());
    gens
}
