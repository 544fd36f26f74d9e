use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use super::perm::{IndexTuple, Permutation};
use crate::error::{Error, Result};

/// Largest degree for which whole-group tables are built.
pub const MAX_DEGREE: usize = 8;

/// Lexicographic enumeration of all permutations of a given degree. Degree 0
/// yields the single empty permutation.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(k: usize) -> Self {
        Permutations {
            next: Some((0..k).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Standard next-permutation step.
        if let Some(i) = (0..succ.len().saturating_sub(1))
            .rev()
            .find(|&i| succ[i] < succ[i + 1])
        {
            let j = (i + 1..succ.len())
                .rev()
                .find(|&j| succ[j] > succ[i])
                .unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation::from_zero_based(current))
    }
}

pub fn symmetric_group(k: usize) -> Vec<Permutation> {
    Permutations::new(k).collect()
}

/// `S_k⁰ = {φ : φ(1) = 1, φ(k) = k}`, in lexicographic order.
pub fn enumerate_sk0(k: usize) -> Result<impl Iterator<Item = Permutation>> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("S_k^0 needs k >= 2, got {k}")));
    }
    Ok(Permutations::new(k - 2).map(move |inner| {
        let mut map = Vec::with_capacity(k);
        map.push(0);
        map.extend(inner.as_slice().iter().map(|&v| v + 1));
        map.push(k - 1);
        Permutation::from_zero_based(map)
    }))
}

/// Which ambient group a stabilizer is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    /// The full symmetric group `S_k`.
    Full,
    /// `S_k⁰`, the permutations fixing both 1 and `k`.
    FixEnds,
}

impl Universe {
    pub fn elements(self, k: usize) -> Result<Vec<Permutation>> {
        match self {
            Universe::Full => Ok(symmetric_group(k)),
            Universe::FixEnds => Ok(enumerate_sk0(k)?.collect()),
        }
    }
}

/// All `α` in the universe with `i_{α(ℓ)} = i_ℓ` for every `ℓ`, sorted.
///
/// Built directly as a product of symmetric groups on the positions sharing
/// a value (minus the pinned ends for [`Universe::FixEnds`]).
pub fn stabilizer(i: &IndexTuple, universe: Universe) -> Vec<Permutation> {
    let k = i.len();
    let pattern = i.pattern();
    let blocks = pattern.iter().copied().max().map_or(0, |m| m + 1);
    let mut movable: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    for (pos, &label) in pattern.iter().enumerate() {
        let pinned = universe == Universe::FixEnds && (pos == 0 || pos + 1 == k);
        if !pinned {
            movable[label].push(pos);
        }
    }
    let mut out = vec![(0..k).collect::<Vec<usize>>()];
    for block in movable.iter().filter(|b| b.len() > 1) {
        let mut next = Vec::new();
        for base in &out {
            for arrangement in Permutations::new(block.len()) {
                let mut map = base.clone();
                for (from, &to) in block.iter().zip(arrangement.as_slice()) {
                    map[*from] = block[to];
                }
                next.push(map);
            }
        }
        out = next;
    }
    let mut perms: Vec<Permutation> = out.into_iter().map(Permutation::from_zero_based).collect();
    perms.sort();
    perms
}

/// One representative per orbit of the left action `φ ↦ αφ` of `stab` on
/// `universe`, taking the first element met in `universe` order.
pub fn coset_representatives(
    universe: &[Permutation],
    stab: &[Permutation],
) -> Result<Vec<Permutation>> {
    let members: HashSet<&Permutation> = stab.iter().collect();
    for a in stab {
        for b in stab {
            if !members.contains(&a.compose(b)?) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    let mut seen: HashSet<Permutation> = HashSet::with_capacity(universe.len());
    let mut reps = Vec::new();
    for phi in universe {
        if seen.contains(phi) {
            continue;
        }
        for alpha in stab {
            seen.insert(alpha.compose(phi)?);
        }
        reps.push(phi.clone());
    }
    Ok(reps)
}

/// Integer partitions of `k` in reverse lexicographic order, starting at `[k]`.
pub fn integer_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Set partitions of `{0, …, k-1}` as restricted growth strings.
pub fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(pos: usize, k: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == k {
            out.push(cur.clone());
            return;
        }
        for label in 0..=blocks {
            cur.push(label);
            rec(pos + 1, k, blocks.max(label + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Conjugacy-class data for `S_k`: the class of every element (indexed by
/// lexicographic rank), and the partition labelling each class.
pub struct ConjugacyClasses {
    k: usize,
    partitions: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    class_of_rank: Vec<u16>,
}

impl ConjugacyClasses {
    /// Shared table for degree `k ≤ MAX_DEGREE`.
    pub fn get(k: usize) -> Result<&'static ConjugacyClasses> {
        static TABLES: [OnceLock<ConjugacyClasses>; MAX_DEGREE + 1] =
            [const { OnceLock::new() }; MAX_DEGREE + 1];
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::OutOfRange(format!(
                "degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        Ok(TABLES[k].get_or_init(|| ConjugacyClasses::build(k)))
    }

    fn build(k: usize) -> Self {
        let partitions = integer_partitions(k);
        let lookup: HashMap<Vec<usize>, usize> = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let class_of_rank = Permutations::new(k)
            .map(|p| lookup[&p.cycle_type()] as u16)
            .collect();
        ConjugacyClasses {
            k,
            partitions,
            lookup,
            class_of_rank,
        }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn partitions(&self) -> &[Vec<usize>] {
        &self.partitions
    }

    pub fn index_of_partition(&self, partition: &[usize]) -> Option<usize> {
        self.lookup.get(partition).copied()
    }

    pub fn class_of(&self, p: &Permutation) -> usize {
        debug_assert_eq!(p.degree(), self.k);
        self.class_of_rank[p.rank()] as usize
    }

    pub fn class_of_rank(&self, rank: usize) -> usize {
        self.class_of_rank[rank] as usize
    }

    /// A permutation with the given class: consecutive cycles `(1 2 … λ_1)(…)`.
    pub fn representative(&self, class: usize) -> Permutation {
        let mut map = Vec::with_capacity(self.k);
        let mut start = 0;
        for &len in &self.partitions[class] {
            for j in 0..len {
                map.push(start + (j + 1) % len);
            }
            start += len;
        }
        Permutation::from_zero_based(map)
    }

    /// Index of the identity class `1^k`.
    pub fn identity_class(&self) -> usize {
        self.partitions.len() - 1
    }

    /// Number of cycles of any element in the class.
    pub fn cycle_count(&self, class: usize) -> usize {
        self.partitions[class].len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn enumerates_all_permutations_once() {
        for k in 1..=5 {
            let all = symmetric_group(k);
            assert_eq!(all.len(), factorial(k));
            let set: HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            for (r, p) in all.iter().enumerate() {
                assert_eq!(p.rank(), r);
            }
        }
    }

    #[test]
    fn sk0_small_cases() {
        assert_eq!(
            enumerate_sk0(2).unwrap().collect::<Vec<_>>(),
            vec![Permutation::identity(2)]
        );
        assert_eq!(
            enumerate_sk0(3).unwrap().collect::<Vec<_>>(),
            vec![Permutation::identity(3)]
        );
        assert!(enumerate_sk0(1).is_err());
    }

    #[test]
    fn sk0_matches_filtered_full_group() {
        for k in 2..=6 {
            let direct: Vec<_> = enumerate_sk0(k).unwrap().collect();
            let filtered: Vec<_> = symmetric_group(k)
                .into_iter()
                .filter(|p| p.fixes(1) && p.fixes(k))
                .collect();
            assert_eq!(direct, filtered);
            assert_eq!(direct.len(), factorial(k - 2));
        }
    }

    #[test]
    fn stabilizer_examples() {
        let distinct = IndexTuple::new(vec![4, 1, 3, 2], 4).unwrap();
        assert_eq!(
            stabilizer(&distinct, Universe::FixEnds),
            vec![Permutation::identity(4)]
        );

        let constant = IndexTuple::new(vec![7, 7, 7], 7).unwrap();
        assert_eq!(stabilizer(&constant, Universe::Full).len(), 6);

        let i = IndexTuple::new(vec![1, 2, 2, 1], 2).unwrap();
        let stab = stabilizer(&i, Universe::FixEnds);
        let expected = vec![
            Permutation::identity(4),
            Permutation::transposition(4, 2, 3).unwrap(),
        ];
        assert_eq!(stab, expected);
    }

    #[test]
    fn stabilizer_matches_brute_force_filter() {
        for indices in [
            vec![1, 2, 1, 2, 1],
            vec![3, 3, 1, 3, 2],
            vec![1, 1, 1, 1, 1],
        ] {
            let i = IndexTuple::new(indices, 3).unwrap();
            for universe in [Universe::Full, Universe::FixEnds] {
                let brute: Vec<_> = universe
                    .elements(5)
                    .unwrap()
                    .into_iter()
                    .filter(|a| (1..=5).all(|l| i.get(a.apply(l)) == i.get(l)))
                    .collect();
                assert_eq!(stabilizer(&i, universe), brute);
            }
        }
    }

    #[test]
    fn coset_examples() {
        let universe: Vec<_> = enumerate_sk0(5).unwrap().collect();
        let trivial = vec![Permutation::identity(5)];
        assert_eq!(
            coset_representatives(&universe, &trivial).unwrap(),
            universe
        );
        assert_eq!(
            coset_representatives(&universe, &universe).unwrap().len(),
            1
        );

        let sk0_4: Vec<_> = enumerate_sk0(4).unwrap().collect();
        let i = IndexTuple::new(vec![1, 2, 2, 1], 2).unwrap();
        let stab = stabilizer(&i, Universe::FixEnds);
        assert_eq!(coset_representatives(&sk0_4, &stab).unwrap().len(), 1);
    }

    #[test]
    fn coset_rejects_non_subgroup() {
        let universe = symmetric_group(3);
        let not_closed = vec![Permutation::identity(3), Permutation::long_cycle(3)];
        assert_eq!(
            coset_representatives(&universe, &not_closed),
            Err(Error::NotASubgroup)
        );
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|k| integer_partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        let bell: Vec<usize> = (1..=6).map(|k| set_partitions(k).len()).collect();
        assert_eq!(bell, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn class_table_is_consistent() {
        let table = ConjugacyClasses::get(5).unwrap();
        for p in symmetric_group(5) {
            let class = table.class_of(&p);
            assert_eq!(table.partitions()[class], p.cycle_type());
            assert_eq!(table.representative(class).cycle_type(), p.cycle_type());
        }
        assert_eq!(table.partitions()[table.identity_class()], vec![1; 5]);
        assert!(ConjugacyClasses::get(9).is_err());
    }
}
