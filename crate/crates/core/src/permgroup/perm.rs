use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection of `{1, …, k}`.
///
/// Positions and images are 1-based at the API boundary; the images are
/// stored 0-based. Composition follows `(p ∘ q)(x) = p(q(x))`: the right
/// factor acts first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation {
            map: (0..k).collect(),
        }
    }

    /// Builds a permutation from its one-line notation `[p(1), …, p(k)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let k = images.len();
        if k == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        let mut seen = vec![false; k];
        let mut map = Vec::with_capacity(k);
        for &img in images {
            if img == 0 || img > k || seen[img - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={k}"
                )));
            }
            seen[img - 1] = true;
            map.push(img - 1);
        }
        Ok(Permutation { map })
    }

    pub(crate) fn from_zero_based(map: Vec<usize>) -> Self {
        debug_assert!({
            let mut sorted = map.clone();
            sorted.sort_unstable();
            sorted.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { map }
    }

    /// The transposition `(a b)`; the identity when `a == b`.
    pub fn transposition(k: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > k || b > k {
            return Err(Error::InvalidPermutation(format!(
                "({a} {b}) out of range for degree {k}"
            )));
        }
        let mut p = Self::identity(k);
        p.map.swap(a - 1, b - 1);
        Ok(p)
    }

    /// The long cycle `c = (1 2 ⋯ k)`, i.e. `c(x) = x + 1` and `c(k) = 1`.
    pub fn long_cycle(k: usize) -> Self {
        Permutation {
            map: (0..k).map(|x| (x + 1) % k).collect(),
        }
    }

    /// Builds a permutation of degree `k` from disjoint cycles (1-based).
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidPermutation(
                "degree must be at least 1".into(),
            ));
        }
        let mut map: Vec<usize> = (0..k).collect();
        let mut used = vec![false; k];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > k {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range 1..={k}"
                    )));
                }
                if used[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} repeated in cycles"
                    )));
                }
                used[x - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                map[x - 1] = next - 1;
            }
        }
        Ok(Permutation { map })
    }

    /// Parses whitespace-separated cycles in parentheses, e.g. `"(1 2)(3 5 4)"`.
    /// The empty string and `"()"` denote the identity.
    pub fn parse_cycles(k: usize, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidPermutation(format!("'{text}': {msg}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("missing ')'"))?;
            let body = &rest[1..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("non-integer point")))
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Self::from_cycles(k, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.map[x - 1] + 1
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v + 1).collect()
    }

    pub(crate) fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`, so `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.map[x - 1] == x - 1
    }

    /// All cycles including fixed points, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.map[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut count = 0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x];
            }
        }
        count
    }

    /// Cycle lengths in non-increasing order: the partition of `k` labelling
    /// the conjugacy class.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// `|p|`: the minimal number of transpositions whose product is `p`.
    pub fn transposition_distance(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    /// Non-fixed points, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&x| self.map[x] != x)
            .map(|x| x + 1)
            .collect()
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g * &(self * &g.inverse())
    }

    /// Drops the last point, which must be fixed.
    pub fn restrict_drop_last(&self) -> Result<Permutation> {
        let k = self.degree();
        if k < 2 || self.map[k - 1] != k - 1 {
            return Err(Error::InvalidPermutation(format!(
                "{self} does not fix {k}; cannot restrict to 1..={}",
                k.saturating_sub(1)
            )));
        }
        Ok(Permutation {
            map: self.map[..k - 1].to_vec(),
        })
    }

    /// Extends to degree `k + 1` by fixing the new last point.
    pub fn extend_fixing_last(&self) -> Permutation {
        let mut map = self.map.clone();
        map.push(map.len());
        Permutation { map }
    }

    /// Lexicographic rank among all permutations of the same degree (Lehmer code).
    pub fn rank(&self) -> usize {
        let k = self.degree();
        let mut rank = 0usize;
        for i in 0..k {
            let smaller = self.map[i + 1..]
                .iter()
                .filter(|&&v| v < self.map[i])
                .count();
            rank = rank * (k - i) + smaller;
        }
        rank
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// `self ∘ rhs`. Panics on degree mismatch; use [`Permutation::compose`]
    /// for a fallible version.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation degrees must agree")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            let body: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

/// A tuple `i = (i_1, …, i_k)` with entries in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexTuple {
    indices: Vec<usize>,
    n: usize,
}

impl IndexTuple {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidIndex(format!("entry {bad} not in 1..={n}")));
        }
        Ok(IndexTuple { indices, n })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    /// Entry at the 1-based position `l`.
    pub fn get(&self, l: usize) -> usize {
        self.indices[l - 1]
    }

    /// `(i_{φ(1)}, …, i_{φ(k)})`.
    pub fn permuted(&self, phi: &Permutation) -> IndexTuple {
        let indices = (1..=self.len()).map(|l| self.get(phi.apply(l))).collect();
        IndexTuple { indices, n: self.n }
    }

    /// Equality pattern as a restricted growth string: position `l` gets the
    /// label of the first position holding the same value, numbered 0, 1, …
    pub fn pattern(&self) -> Vec<usize> {
        let mut labels: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(self.len());
        for &v in &self.indices {
            let label = match labels.iter().position(|&w| w == v) {
                Some(p) => p,
                None => {
                    labels.push(v);
                    labels.len() - 1
                }
            };
            out.push(label);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let q = p(&[3, 1, 2, 4]);
        let id = Permutation::identity(4);
        assert_eq!(&id * &q, q);
        assert_eq!(&q * &id, q);
    }

    #[test]
    fn transposition_is_an_involution() {
        let t = Permutation::transposition(3, 1, 2).unwrap();
        assert!((&t * &t).is_identity());
    }

    #[test]
    fn composition_convention_right_acts_first() {
        let a = Permutation::transposition(3, 1, 2).unwrap();
        let b = Permutation::transposition(3, 2, 3).unwrap();
        let r = &a * &b;
        for x in 1..=3 {
            assert_eq!(r.apply(x), a.apply(b.apply(x)));
        }
        assert_eq!(r.images(), vec![2, 3, 1]);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(2)
            .compose(&Permutation::identity(3))
            .unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[]).is_err());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let q = Permutation::parse_cycles(5, "(1 3)(2 5 4)").unwrap();
        assert_eq!(q.images(), vec![3, 5, 1, 2, 4]);
        assert_eq!(q.to_string(), "(1 3)(2 5 4)");
        assert!(Permutation::parse_cycles(3, "()").unwrap().is_identity());
        assert!(Permutation::parse_cycles(3, "").unwrap().is_identity());
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse_cycles(3, "1 2").is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(Permutation::identity(5).transposition_distance(), 0);
        assert_eq!(
            Permutation::transposition(4, 1, 3)
                .unwrap()
                .transposition_distance(),
            1
        );
        assert_eq!(Permutation::long_cycle(4).transposition_distance(), 3);
    }

    #[test]
    fn long_cycle_maps_k_to_one() {
        let c = Permutation::long_cycle(4);
        assert_eq!(c.images(), vec![2, 3, 4, 1]);
    }

    #[test]
    fn restriction_requires_fixed_last_point() {
        let q = p(&[2, 1, 3]);
        assert_eq!(q.restrict_drop_last().unwrap().images(), vec![2, 1]);
        assert!(p(&[3, 1, 2]).restrict_drop_last().is_err());
        assert_eq!(q.restrict_drop_last().unwrap().extend_fixing_last(), q);
    }

    #[test]
    fn ranks_are_lexicographic() {
        assert_eq!(p(&[1, 2, 3]).rank(), 0);
        assert_eq!(p(&[1, 3, 2]).rank(), 1);
        assert_eq!(p(&[3, 2, 1]).rank(), 5);
    }

    #[test]
    fn index_tuple_pattern_and_permutation() {
        let i = IndexTuple::new(vec![7, 3, 7, 5], 9).unwrap();
        assert_eq!(i.pattern(), vec![0, 1, 0, 2]);
        let phi = p(&[2, 1, 3, 4]);
        assert_eq!(i.permuted(&phi).as_slice(), &[3, 7, 7, 5]);
        assert!(IndexTuple::new(vec![0], 3).is_err());
        assert!(IndexTuple::new(vec![4], 3).is_err());
    }
}
