use std::fmt;

/// Permutation of {0..n−1}, stored as the image list: `images[i]` is the
/// image of point `i`. Composition convention throughout the crate:
/// `(p ∘ q)(x) = p(q(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Build from an image list; fails unless it is a bijection of {0..n−1}.
    pub fn from_images(images: Vec<usize>) -> crate::Result<Perm> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(crate::Error::invalid(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(crate::Error::invalid(
                    "image list is not a bijection of {0..n-1}",
                ));
            }
            seen[img] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Build from disjoint cycles on {0..n−1}; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> crate::Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (t, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(crate::Error::invalid(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if touched[pt] {
                    return Err(crate::Error::invalid("cycles are not disjoint"));
                }
                touched[pt] = true;
                images[pt] = cycle[(t + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `(self ∘ other)(x) = self(other(x))`; panics on degree mismatch.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch: {} vs {}",
            self.degree(),
            other.degree()
        );
        Perm {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Perm { images }
    }

    /// `z ∘ self ∘ z⁻¹` without forming intermediates.
    pub fn conjugate_by(&self, z: &Perm) -> Perm {
        assert_eq!(self.degree(), z.degree(), "degree mismatch");
        let mut images = vec![0u16; self.images.len()];
        for i in 0..self.images.len() {
            images[z.images[i] as usize] = z.images[self.images[i] as usize];
        }
        Perm { images }
    }

    /// Parity: +1 for even, −1 for odd; multiplicative under compose.
    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0usize;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                pt = self.images[pt] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut acc = 1u64;
        for cycle in self.cycles() {
            let len = cycle.len() as u64;
            acc = acc / gcd(acc, len) * len;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                cycle.push(pt);
                pt = self.images[pt] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of nontrivial cycle lengths, sorted (conjugacy invariant).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lens.sort_unstable();
        lens
    }

    /// Smallest moved point, if any.
    pub fn min_moved(&self) -> Option<usize> {
        (0..self.images.len()).find(|&i| self.images[i] as usize != i)
    }

    pub fn moves(&self, point: usize) -> bool {
        self.images[point] as usize != point
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// Cycle notation on 1-based points, e.g. `(1 2 3)(4 5)`; identity prints `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
