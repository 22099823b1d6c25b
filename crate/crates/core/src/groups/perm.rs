use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};

pub const DEFAULT_SIZE_BOUND: usize = 5000;

/// A finite permutation group with all elements enumerated.
///
/// Products follow function composition: `(a·b)(x) = a(b(x))`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Vec<u32>>,
    lookup: HashMap<Vec<u32>, usize>,
    generators: Vec<usize>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    exponent: usize,
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn check_perm(p: &[usize], degree: usize) -> Result<Vec<u32>> {
    if p.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "expected {degree} images, got {}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || seen[x] {
            return Err(Error::InvalidPermutation(format!("{p:?} is not a bijection")));
        }
        seen[x] = true;
    }
    Ok(p.iter().map(|&x| x as u32).collect())
}

impl FiniteGroup {
    pub fn from_permutations(gens: &[Vec<usize>], degree: usize) -> Result<Self> {
        Self::from_permutations_bounded(gens, degree, DEFAULT_SIZE_BOUND)
    }

    pub fn from_permutations_bounded(
        gens: &[Vec<usize>],
        degree: usize,
        bound: usize,
    ) -> Result<Self> {
        let gens: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| check_perm(g, degree))
            .collect::<Result<_>>()?;
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = compose(&elements[x], s);
                if !lookup.contains_key(&y) {
                    if elements.len() == bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    lookup.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let generators = gens.iter().map(|s| lookup[s]).collect();
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = lookup[&compose(&elements[i], &elements[j])] as u32;
            }
        }
        let mut inverses = vec![0; n];
        for i in 0..n {
            let mut inv = vec![0u32; degree];
            for (x, &y) in elements[i].iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            inverses[i] = lookup[&inv];
        }
        let mut group = FiniteGroup {
            degree,
            elements,
            lookup,
            generators,
            table,
            inverses,
            orders: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            exponent: 1,
        };
        group.orders = (0..n).map(|i| group.element_order(i)).collect();
        group.exponent = group.orders.iter().fold(1, |acc, &o| acc.lcm(&o));
        group.compute_classes();
        Ok(group)
    }

    fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in &self.generators {
                    let y = self.mul(self.mul(s, x), self.inverses[s]);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn trivial() -> Self {
        Self::from_permutations(&[], 1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i]
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        let p: Vec<u32> = perm.iter().map(|&x| x as u32).collect();
        self.lookup.get(&p).copied()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let e = k.unsigned_abs() as usize % self.orders[a];
        (0..e).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn order_of(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Conjugacy classes, sorted by their minimal element.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Row-major multiplication table, used as a content key.
    pub fn multiplication_table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.classes[self.class_of[a]].len() == 1
    }

    /// Elements of the subgroup generated by `subset`.
    pub fn closure(&self, subset: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in subset {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn generates(&self, subset: &[usize]) -> bool {
        self.closure(subset).len() == self.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0]], 2).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.classes().len(), 2);
    }

    #[test]
    fn sym3_structure() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.classes().len(), 3);
        assert_eq!(g.exponent(), 6);
        for (c, members) in g.classes().iter().enumerate() {
            assert_eq!(g.class_representative(c), *members.iter().min().unwrap());
        }
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_permutations(&[], 3).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generates(&[]));
    }

    #[test]
    fn size_bound_enforced() {
        let gens = vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]];
        assert_eq!(
            FiniteGroup::from_permutations_bounded(&gens, 5, 100).unwrap_err(),
            Error::GroupTooLarge { bound: 100 }
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(FiniteGroup::from_permutations(&[vec![0, 0]], 2).is_err());
    }

    #[test]
    fn generation() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
        assert!(g.generates(g.generators()));
        assert!(!g.generates(&[]));
        assert!(!g.generates(&[g.generators()[0]]));
    }
}
