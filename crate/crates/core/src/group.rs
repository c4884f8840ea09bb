//! A minimal finite-group interface shared by Coxeter groups and the cyclic
//! groups `μ_d`, plus conjugacy classes.

/// A finite group whose elements are indexed `0..order()`.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inverse(&self, a: usize) -> usize;
    /// A generating set.
    fn generators(&self) -> Vec<usize>;

    fn element_order(&self, a: usize) -> usize {
        let e = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `a^k` for `k ≥ 0`.
    fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }
}

/// Conjugacy classes ordered by their least element, which also serves as
/// the class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn compute<G: FiniteGroup + ?Sized>(group: &G) -> Self {
        let n = group.order();
        let gens: Vec<(usize, usize)> = group
            .generators()
            .into_iter()
            .map(|g| (g, group.inverse(g)))
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &(g, gi) in &gens {
                    let y = group.mul(group.mul(gi, x), g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        ConjugacyClasses { class_of, classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn representative(&self, i: usize) -> usize {
        self.classes[i][0]
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }
}

/// The cyclic group `μ_d = ⟨s⟩`; element `i` is `s^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroup {
    pub d: usize,
}

impl FiniteGroup for CyclicGroup {
    fn order(&self) -> usize {
        self.d
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (a + b) % self.d
    }
    fn inverse(&self, a: usize) -> usize {
        (self.d - a) % self.d
    }
    fn generators(&self) -> Vec<usize> {
        if self.d == 1 {
            vec![]
        } else {
            vec![1]
        }
    }
}
