use std::collections::VecDeque;

use super::{PermGroup, Permutation};

/// One conjugacy class with its power map.
#[derive(Debug, Clone)]
pub struct ConjugacyClassData {
    /// Least element of the class in point-image lexicographic order.
    pub representative: Permutation,
    pub size: usize,
    pub element_order: u64,
    /// `power_map[k]` is the class of `representative^k` for `k` in `0..e`,
    /// `e` the group exponent.
    pub power_map: Vec<usize>,
    /// Element indices (into the group's element list) of the class.
    pub elements: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClassData>,
    /// Class index of every element, by element index.
    pub class_of: Vec<usize>,
    pub exponent: u64,
}

impl ClassData {
    /// Classes sorted by (element order, class size, representative).
    pub(super) fn compute(g: &PermGroup) -> ClassData {
        let n = g.order();
        let mut raw_class = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            let mut members = vec![start];
            raw_class[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for h in g.generators() {
                    let j = g.index[&g.elements[i].conjugate_by(h)];
                    if raw_class[j] == usize::MAX {
                        raw_class[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            raw.push(members);
        }

        let mut keyed: Vec<(u64, usize, Permutation, Vec<usize>)> = raw
            .into_iter()
            .map(|mut members| {
                members.sort_unstable();
                let rep = members
                    .iter()
                    .map(|&i| &g.elements[i])
                    .min()
                    .expect("nonempty class")
                    .clone();
                (rep.order(), members.len(), rep, members)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));

        let mut class_of = vec![0usize; n];
        for (c, (_, _, _, members)) in keyed.iter().enumerate() {
            for &i in members {
                class_of[i] = c;
            }
        }
        let exponent = keyed
            .iter()
            .fold(1u64, |acc, k| num_integer::lcm(acc, k.0));

        let classes = keyed
            .into_iter()
            .map(|(order, size, rep, members)| {
                let mut powers = Vec::with_capacity(order as usize);
                let mut x = Permutation::identity(g.degree());
                for _ in 0..order {
                    powers.push(class_of[g.index[&x]]);
                    x = x.mul(&rep);
                }
                let power_map = (0..exponent)
                    .map(|k| powers[(k % order) as usize])
                    .collect();
                ConjugacyClassData {
                    representative: rep,
                    size,
                    element_order: order,
                    power_map,
                    elements: members,
                }
            })
            .collect();
        ClassData {
            classes,
            class_of,
            exponent,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class of inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        let cls = &self.classes[c];
        cls.power_map[(cls.element_order as usize - 1) % self.exponent as usize]
    }

    /// Class of `x^k` for `x` in class `c`.
    pub fn power(&self, c: usize, k: i64) -> usize {
        self.classes[c].power_map[k.rem_euclid(self.exponent as i64) as usize]
    }

    /// Classes closed under all Galois-type powers `x ↦ x^k`, `gcd(k, e) = 1`.
    pub fn rational_class_count(&self) -> usize {
        let e = self.exponent;
        let units: Vec<i64> = (1..=e.max(1))
            .filter(|&k| num_integer::gcd(k, e) == 1)
            .map(|k| k as i64)
            .collect();
        (0..self.len())
            .filter(|&c| units.iter().all(|&k| self.power(c, k) == c))
            .count()
    }
}
