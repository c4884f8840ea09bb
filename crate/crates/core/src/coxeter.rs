//! Finite Coxeter groups built from a Coxeter matrix.
//!
//! Elements are enumerated as permutations of the root system of the
//! geometric representation, where `s_i(α_j) = α_j + 2cos(π/m_ij) α_i`.
//! The scalars `2cos(π/m)` live in a cyclotomic field, so the construction is
//! exact for every finite type, including `I2(m)` and `H3`/`H4`.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::group::{ConjugacyClasses, FiniteGroup};
use crate::ordered::{exponent_is_nonnegative, Exponent, GammaMode};

pub const DEFAULT_SIZE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("group is infinite or exceeds the size cap of {cap}")]
    InfiniteOrTooLarge { cap: usize },
    #[error("generators {s} and {t} are conjugate but have different weights")]
    ConjugacyViolation { s: String, t: String },
    #[error("weight of generator {0} is negative")]
    NegativeWeight(String),
    #[error("weight function has {got} values for {rank} generators")]
    WeightArity { got: usize, rank: usize },
    #[error("weights mix exponent modes")]
    MixedModes,
}

/// Named finite types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    I2(u32),
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A {n}"),
            CoxeterType::B(n) => write!(f, "B {n}"),
            CoxeterType::D(n) => write!(f, "D {n}"),
            CoxeterType::I2(m) => write!(f, "I2 {m}"),
        }
    }
}

/// A symmetric Coxeter matrix with `1` on the diagonal and `m_st ≥ 2`
/// elsewhere. Infinite entries are not representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = entries.len();
        if n == 0 {
            return Err(CoxeterError::InvalidMatrix("rank must be positive".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::InvalidMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 1 {
                return Err(CoxeterError::InvalidMatrix(format!("diagonal entry {} is not 1", i + 1)));
            }
            for j in 0..n {
                if i != j && row[j] < 2 {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "entry ({}, {}) must be at least 2",
                        i + 1,
                        j + 1
                    )));
                }
                if entries[j][i] != row[j] {
                    return Err(CoxeterError::InvalidMatrix(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { entries })
    }

    /// Builds from the strict upper triangle, row by row.
    pub fn from_upper_triangle(rank: usize, upper: &[Vec<u32>]) -> Result<Self, CoxeterError> {
        if upper.len() != rank.saturating_sub(1) {
            return Err(CoxeterError::InvalidMatrix(format!(
                "expected {} upper-triangle rows, got {}",
                rank.saturating_sub(1),
                upper.len()
            )));
        }
        let mut m = vec![vec![1; rank]; rank];
        for (i, row) in upper.iter().enumerate() {
            if row.len() != rank - 1 - i {
                return Err(CoxeterError::InvalidMatrix(format!(
                    "upper-triangle row {} should have {} entries",
                    i + 1,
                    rank - 1 - i
                )));
            }
            for (k, &v) in row.iter().enumerate() {
                let j = i + 1 + k;
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        Self::new(m)
    }

    /// `A_n`: a chain with `m = 3`. `B_n`: the first edge has `m = 4`.
    /// `D_n`: a chain `s_1 … s_{n-1}` with `s_n` attached to `s_{n-2}`.
    pub fn named(ty: CoxeterType) -> Result<Self, CoxeterError> {
        let chain = |n: usize| {
            let mut m = vec![vec![2; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            for i in 1..n {
                m[i - 1][i] = 3;
                m[i][i - 1] = 3;
            }
            m
        };
        let m = match ty {
            CoxeterType::A(n) if n >= 1 => chain(n),
            CoxeterType::B(n) if n >= 2 => {
                let mut m = chain(n);
                m[0][1] = 4;
                m[1][0] = 4;
                m
            }
            CoxeterType::D(n) if n >= 2 => {
                let mut m = chain(n);
                if n >= 3 {
                    m[n - 2][n - 1] = 2;
                    m[n - 1][n - 2] = 2;
                    m[n - 3][n - 1] = 3;
                    m[n - 1][n - 3] = 3;
                } else {
                    m[0][1] = 2;
                    m[1][0] = 2;
                }
                m
            }
            CoxeterType::I2(k) if k >= 2 => vec![vec![1, k], vec![k, 1]],
            _ => return Err(CoxeterError::InvalidMatrix(format!("unsupported type {ty}"))),
        };
        Self::new(m)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<u32>] {
        &self.entries
    }

    /// Strict upper triangle, row by row.
    pub fn upper_triangle(&self) -> Vec<Vec<u32>> {
        let n = self.rank();
        (0..n.saturating_sub(1))
            .map(|i| (i + 1..n).map(|j| self.entries[i][j]).collect())
            .collect()
    }
}

/// Default generator names: `s, t, u` up to rank 3, otherwise `s1 … sn`.
pub fn default_generator_names(rank: usize) -> Vec<String> {
    if rank <= 3 {
        ["s", "t", "u"][..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("s{i}")).collect()
    }
}

/// Index of a group element in its [`CoxeterGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A fully enumerated finite Coxeter group.
///
/// Elements are numbered in ShortLex order of their canonical reduced words,
/// so element `0` is the identity and lengths are nondecreasing in the index.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    names: Vec<String>,
    words: Vec<Vec<u8>>,
    length: Vec<u32>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    /// For each generator, its action on root indices. Positive roots are
    /// `0..P`, and `P + i` is the negative of root `i`.
    root_action: Vec<Vec<u32>>,
    positive_roots: usize,
}

impl CoxeterGroup {
    pub fn build(matrix: &CoxeterMatrix, size_cap: usize) -> Result<Self, CoxeterError> {
        let rank = matrix.rank();
        let (root_action, positive_roots) = root_system(matrix, size_cap)?;
        let nroots = 2 * positive_roots;

        let apply = |perm: &[u32], r: u32| -> u32 {
            let r = r as usize;
            if r < positive_roots {
                perm[r]
            } else {
                negate(perm[r - positive_roots], positive_roots)
            }
        };
        // An element is stored by its images of the positive roots.
        let gen_perm: Vec<Vec<u32>> = root_action
            .iter()
            .map(|a| a[..positive_roots].to_vec())
            .collect();
        debug_assert_eq!(root_action.first().map_or(nroots, Vec::len), nroots);

        let identity: Vec<u32> = (0..positive_roots as u32).collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut perms = vec![identity];
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        let mut length = vec![0u32];
        let mut right: Vec<u32> = Vec::new();

        let mut head = 0;
        while head < perms.len() {
            for s in 0..rank {
                // (w s)(r) = w(s(r))
                let ws: Vec<u32> = gen_perm[s].iter().map(|&r| apply(&perms[head], r)).collect();
                let id = match index.get(&ws) {
                    Some(&id) => id,
                    None => {
                        if perms.len() >= size_cap {
                            return Err(CoxeterError::InfiniteOrTooLarge { cap: size_cap });
                        }
                        let id = perms.len() as u32;
                        index.insert(ws.clone(), id);
                        let mut word = words[head].clone();
                        word.push(s as u8);
                        words.push(word);
                        length.push(length[head] + 1);
                        perms.push(ws);
                        id
                    }
                };
                right.push(id);
            }
            head += 1;
        }

        let mut left = Vec::with_capacity(perms.len() * rank);
        for perm in &perms {
            for s in 0..rank {
                // (s w)(r) = s(w(r))
                let sw: Vec<u32> = perm.iter().map(|&r| root_action[s][r as usize]).collect();
                left.push(index[&sw]);
            }
        }

        let mut group = CoxeterGroup {
            matrix: matrix.clone(),
            names: default_generator_names(rank),
            words,
            length,
            right,
            left,
            inverse: Vec::new(),
            root_action,
            positive_roots,
        };
        group.inverse = (0..group.len())
            .map(|w| {
                let word = &group.words[w];
                word.iter()
                    .rev()
                    .fold(Elem::IDENTITY, |acc, &s| group.right_mul(acc, s as usize))
                    .0
            })
            .collect();
        Ok(group)
    }

    pub fn from_type(ty: CoxeterType) -> Result<Self, CoxeterError> {
        Self::build(&CoxeterMatrix::named(ty)?, DEFAULT_SIZE_CAP)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.rank());
        self.names = names;
        self
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + DoubleEndedIterator {
        (0..self.len() as u32).map(Elem)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator(&self, s: usize) -> Elem {
        self.right_mul(Elem::IDENTITY, s)
    }

    pub fn length(&self, w: Elem) -> u32 {
        self.length[w.index()]
    }

    /// The canonical (ShortLex-least) reduced word, as generator indices.
    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w.index()]
    }

    pub fn right_mul(&self, w: Elem, s: usize) -> Elem {
        Elem(self.right[w.index() * self.rank() + s])
    }

    pub fn left_mul(&self, s: usize, w: Elem) -> Elem {
        Elem(self.left[w.index() * self.rank() + s])
    }

    pub fn multiply(&self, w: Elem, u: Elem) -> Elem {
        self.word(u)
            .iter()
            .fold(w, |acc, &s| self.right_mul(acc, s as usize))
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        Elem(self.inverse[w.index()])
    }

    /// Evaluates an arbitrary (not necessarily reduced) word.
    pub fn evaluate(&self, word: &[u8]) -> Elem {
        word.iter()
            .fold(Elem::IDENTITY, |acc, &s| self.right_mul(acc, s as usize))
    }

    pub fn is_descent(&self, w: Elem, s: usize, side: Side) -> bool {
        let ws = match side {
            Side::Left => self.left_mul(s, w),
            Side::Right => self.right_mul(w, s),
        };
        self.length(ws) < self.length(w)
    }

    pub fn descents(&self, w: Elem, side: Side) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_descent(w, s, side)).collect()
    }

    pub fn longest_element(&self) -> Elem {
        Elem(self.len() as u32 - 1)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots
    }

    /// The permutation of root indices induced by `w`.
    pub fn root_permutation(&self, w: Elem) -> Vec<u32> {
        let n = 2 * self.positive_roots;
        let mut perm: Vec<u32> = (0..n as u32).collect();
        // w = s_1 … s_k acts as s_1(…(s_k(r)))
        for &s in self.word(w).iter().rev() {
            for r in perm.iter_mut() {
                *r = self.root_action[s as usize][*r as usize];
            }
        }
        perm
    }

    /// Renders `w` as its canonical word, `e` for the identity.
    pub fn format_word(&self, w: Elem) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "e".into();
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            "."
        };
        word.iter()
            .map(|&s| self.names[s as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        ConjugacyClasses::compute(self)
    }

    /// Elements of the form `w s w^{-1}`.
    pub fn reflections(&self) -> Vec<Elem> {
        let mut out: Vec<Elem> = self
            .elements()
            .flat_map(|w| {
                (0..self.rank()).map(move |s| {
                    let ws = self.right_mul(w, s);
                    self.multiply(ws, self.inverse(w))
                })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `L(w)`: the sum of generator weights along a reduced word.
    pub fn weight_of(&self, w: Elem, weights: &WeightFunction) -> Exponent {
        self.word(w).iter().fold(Exponent::zero(weights.mode()), |acc, &s| {
            acc.checked_add(&weights.values[s as usize])
                .expect("weights share one mode")
        })
    }
}

impl FiniteGroup for CoxeterGroup {
    fn order(&self) -> usize {
        self.len()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.multiply(Elem(a as u32), Elem(b as u32)).index()
    }
    fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    fn generators(&self) -> Vec<usize> {
        (0..self.rank()).map(|s| self.generator(s).index()).collect()
    }
}

fn negate(r: u32, positive: usize) -> u32 {
    let r = r as usize;
    if r < positive {
        (r + positive) as u32
    } else {
        (r - positive) as u32
    }
}

/// Enumerates the positive roots as the closure of the simple roots under
/// `β ↦ s_i(β)` for `β ≠ α_i`, and returns each generator's action on the
/// full root set.
fn root_system(matrix: &CoxeterMatrix, cap: usize) -> Result<(Vec<Vec<u32>>, usize), CoxeterError> {
    let rank = matrix.rank();
    let mut n: u32 = 1;
    for i in 0..rank {
        for j in i + 1..rank {
            let m = matrix.entry(i, j);
            if m >= 3 {
                n = n.lcm(&(2 * m));
            }
        }
    }
    let field = CyclotomicField::get(n);
    // cartan[i][j] = 2 B(α_i, α_j)
    let cartan: Vec<Vec<Cyclotomic>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    if i == j {
                        Cyclotomic::from_int(&field, 2)
                    } else {
                        let m = matrix.entry(i, j);
                        if m == 2 {
                            Cyclotomic::zero(&field)
                        } else {
                            let k = (n / (2 * m)) as i64;
                            let two_cos = &Cyclotomic::zeta_pow(&field, k)
                                + &Cyclotomic::zeta_pow(&field, -k);
                            -&two_cos
                        }
                    }
                })
                .collect()
        })
        .collect();

    let reflect = |i: usize, beta: &[Cyclotomic]| -> Vec<Cyclotomic> {
        let mut pairing = Cyclotomic::zero(&field);
        for (j, b) in beta.iter().enumerate() {
            if !b.is_zero() && !cartan[i][j].is_zero() {
                pairing = &pairing + &(&cartan[i][j] * b);
            }
        }
        let mut out = beta.to_vec();
        out[i] = &out[i] - &pairing;
        out
    };

    let simple = |i: usize| -> Vec<Cyclotomic> {
        (0..rank)
            .map(|j| Cyclotomic::from_int(&field, (i == j) as i64))
            .collect()
    };

    let mut roots: Vec<Vec<Cyclotomic>> = (0..rank).map(simple).collect();
    let mut index: HashMap<Vec<Cyclotomic>, u32> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), i as u32))
        .collect();
    // images of positive roots under each generator; u32::MAX marks -α_i
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); rank];
    let mut head = 0;
    while head < roots.len() {
        for (i, img) in images.iter_mut().enumerate() {
            if head == i {
                img.push(u32::MAX);
                continue;
            }
            let gamma = reflect(i, &roots[head]);
            let id = match index.get(&gamma) {
                Some(&id) => id,
                None => {
                    if roots.len() >= cap {
                        return Err(CoxeterError::InfiniteOrTooLarge { cap });
                    }
                    let id = roots.len() as u32;
                    index.insert(gamma.clone(), id);
                    roots.push(gamma);
                    id
                }
            };
            img.push(id);
        }
        head += 1;
    }
    let p = roots.len();
    let actions = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            let mut full = vec![0u32; 2 * p];
            for (r, &to) in img.iter().enumerate() {
                let to = if to == u32::MAX { (i + p) as u32 } else { to };
                full[r] = to;
                full[r + p] = negate(to, p);
            }
            full
        })
        .collect();
    Ok((actions, p))
}

/// A weight function `L`, given by its values on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    pub values: Vec<Exponent>,
}

impl WeightFunction {
    pub fn new(values: Vec<Exponent>) -> Self {
        assert!(!values.is_empty());
        WeightFunction { values }
    }

    pub fn rational(values: &[(i64, i64)]) -> Self {
        Self::new(values.iter().map(|&(n, d)| Exponent::rational(n, d)).collect())
    }

    pub fn uniform(rank: usize, value: Exponent) -> Self {
        Self::new(vec![value; rank])
    }

    pub fn mode(&self) -> GammaMode {
        self.values[0].mode()
    }

    pub fn get(&self, s: usize) -> &Exponent {
        &self.values[s]
    }

    /// Checks arity, a single exponent mode, nonnegativity, and that
    /// conjugate generators carry equal weight.
    pub fn validate(&self, group: &CoxeterGroup) -> Result<(), CoxeterError> {
        let rank = group.rank();
        if self.values.len() != rank {
            return Err(CoxeterError::WeightArity {
                got: self.values.len(),
                rank,
            });
        }
        let mode = self.mode();
        if self.values.iter().any(|v| v.mode() != mode) {
            return Err(CoxeterError::MixedModes);
        }
        let names = group.generator_names();
        for (s, v) in self.values.iter().enumerate() {
            if !exponent_is_nonnegative(v) {
                return Err(CoxeterError::NegativeWeight(names[s].clone()));
            }
        }
        let classes = group.conjugacy_classes();
        for s in 0..rank {
            for t in s + 1..rank {
                let cs = classes.class_of(group.generator(s).index());
                let ct = classes.class_of(group.generator(t).index());
                if cs == ct && self.values[s] != self.values[t] {
                    return Err(CoxeterError::ConjugacyViolation {
                        s: names[s].clone(),
                        t: names[t].clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn group(ty: CoxeterType) -> CoxeterGroup {
        CoxeterGroup::from_type(ty).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn orders_match_classification() {
        assert_eq!(group(CoxeterType::A(1)).len(), 2);
        for n in 1..=4 {
            assert_eq!(group(CoxeterType::A(n)).len(), factorial(n + 1));
        }
        for n in 2..=4 {
            assert_eq!(group(CoxeterType::B(n)).len(), (1 << n) * factorial(n));
        }
        for n in 2..=4 {
            assert_eq!(group(CoxeterType::D(n)).len(), (1 << (n - 1)) * factorial(n));
        }
        for m in 2..=12 {
            assert_eq!(group(CoxeterType::I2(m)).len(), 2 * m as usize);
        }
    }

    #[test]
    fn h3_is_exact() {
        let m = CoxeterMatrix::from_upper_triangle(3, &[vec![5, 2], vec![3]]).unwrap();
        let g = CoxeterGroup::build(&m, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(g.len(), 120);
        assert_eq!(g.num_positive_roots(), 15);
    }

    #[test]
    fn affine_groups_are_rejected() {
        // affine A2~: triangle with all m = 3
        let m = CoxeterMatrix::from_upper_triangle(3, &[vec![3, 3], vec![3]]).unwrap();
        assert_eq!(
            CoxeterGroup::build(&m, 500).unwrap_err(),
            CoxeterError::InfiniteOrTooLarge { cap: 500 }
        );
        // finite but over the cap
        let a4 = CoxeterMatrix::named(CoxeterType::A(4)).unwrap();
        assert!(CoxeterGroup::build(&a4, 100).is_err());
    }

    #[test]
    fn matrix_validation() {
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![2]]).is_err());
        assert!(CoxeterMatrix::from_upper_triangle(3, &[vec![3]]).is_err());
        let m = CoxeterMatrix::named(CoxeterType::B(3)).unwrap();
        assert_eq!(
            CoxeterMatrix::from_upper_triangle(3, &m.upper_triangle()).unwrap(),
            m
        );
    }

    #[test]
    fn multiply_examples() {
        let g = group(CoxeterType::I2(3));
        let e = Elem::IDENTITY;
        let s = g.generator(0);
        let t = g.generator(1);
        for w in g.elements() {
            assert_eq!(g.multiply(w, e), w);
        }
        assert_eq!(g.multiply(s, s), e);
        let st = g.multiply(s, t);
        assert_eq!(g.multiply(g.multiply(st, st), st), e);
        assert_ne!(g.multiply(st, st), e);
    }

    #[test]
    fn multiplication_is_associative() {
        let g = group(CoxeterType::B(3));
        let n = g.len() as u32;
        for (a, b, c) in [(3, 17, 40), (47, 1, 22), (11, 11, 30), (5, 46, 29)] {
            let (a, b, c) = (Elem(a % n), Elem(b % n), Elem(c % n));
            assert_eq!(
                g.multiply(g.multiply(a, b), c),
                g.multiply(a, g.multiply(b, c))
            );
        }
    }

    #[test]
    fn descent_examples() {
        let g = group(CoxeterType::I2(4));
        assert!(g.descents(Elem::IDENTITY, Side::Left).is_empty());
        let w0 = g.longest_element();
        assert_eq!(g.length(w0), 4);
        assert_eq!(g.descents(w0, Side::Left), vec![0, 1]);
        assert_eq!(g.descents(w0, Side::Right), vec![0, 1]);

        // In A2, sts = w0 has both descents; brute force via lengths.
        let a2 = group(CoxeterType::A(2));
        let sts = a2.evaluate(&[0, 1, 0]);
        assert_eq!(sts, a2.longest_element());
        assert_eq!(a2.descents(sts, Side::Left), vec![0, 1]);
        let st = a2.evaluate(&[0, 1]);
        assert_eq!(a2.descents(st, Side::Left), vec![0]);
        assert_eq!(a2.descents(st, Side::Right), vec![1]);
    }

    #[test]
    fn conjugacy_class_counts() {
        assert_eq!(group(CoxeterType::A(1)).conjugacy_classes().len(), 2);
        assert_eq!(group(CoxeterType::A(2)).conjugacy_classes().len(), 3);
        assert_eq!(group(CoxeterType::B(2)).conjugacy_classes().len(), 5);
        assert_eq!(group(CoxeterType::A(3)).conjugacy_classes().len(), 5);
        assert_eq!(group(CoxeterType::B(3)).conjugacy_classes().len(), 10);
    }

    #[test]
    fn weight_validation() {
        let b2 = group(CoxeterType::I2(4));
        assert!(WeightFunction::rational(&[(1, 1), (2, 1)]).validate(&b2).is_ok());
        let a2 = group(CoxeterType::A(2));
        assert_eq!(
            WeightFunction::rational(&[(1, 1), (2, 1)]).validate(&a2),
            Err(CoxeterError::ConjugacyViolation {
                s: "s".into(),
                t: "t".into()
            })
        );
        for g in [&a2, &b2] {
            assert!(WeightFunction::uniform(2, Exponent::integer(0)).validate(g).is_ok());
        }
        assert!(matches!(
            WeightFunction::rational(&[(-1, 1), (-1, 1)]).validate(&a2),
            Err(CoxeterError::NegativeWeight(_))
        ));
        assert!(matches!(
            WeightFunction::rational(&[(1, 1)]).validate(&a2),
            Err(CoxeterError::WeightArity { .. })
        ));
        let mixed = WeightFunction::new(vec![Exponent::integer(1), Exponent::unit(2, 0)]);
        assert_eq!(mixed.validate(&b2), Err(CoxeterError::MixedModes));
        // B3: s–t has m=4, t–u has m=3, so t and u are conjugate
        let b3 = group(CoxeterType::B(3));
        assert!(WeightFunction::rational(&[(2, 1), (1, 1), (1, 1)]).validate(&b3).is_ok());
        assert!(WeightFunction::rational(&[(1, 1), (1, 1), (2, 1)]).validate(&b3).is_err());
    }

    #[test]
    fn structural_invariants() {
        for ty in [
            CoxeterType::A(3),
            CoxeterType::B(3),
            CoxeterType::D(4),
            CoxeterType::I2(7),
        ] {
            let g = group(ty);
            let mut perms = HashSet::new();
            for w in g.elements() {
                assert_eq!(g.length(w), g.length(g.inverse(w)));
                assert_eq!(g.word(w).len() as u32, g.length(w));
                assert_eq!(g.evaluate(g.word(w)), w);
                for s in 0..g.rank() {
                    let d = g.length(g.left_mul(s, w)) as i64 - g.length(w) as i64;
                    assert!(d == 1 || d == -1);
                    // exchange condition: a left descent starts some reduced word
                    if d == -1 {
                        let rest = g.left_mul(s, w);
                        assert_eq!(g.length(rest) + 1, g.length(w));
                    }
                }
                // length equals the number of positive roots sent negative
                let perm = g.root_permutation(w);
                let p = g.num_positive_roots();
                let inversions = perm[..p].iter().filter(|&&r| r as usize >= p).count();
                assert_eq!(inversions as u32, g.length(w));
                assert!(perms.insert(perm));
            }
            assert_eq!(g.reflections().len(), g.num_positive_roots());
        }
    }

    #[test]
    fn canonical_words_are_shortlex_least() {
        let g = group(CoxeterType::A(3));
        // brute force: all words up to length 6 in lexicographic order
        let mut best: HashMap<Elem, Vec<u8>> = HashMap::new();
        for len in 0..=6u32 {
            let total = 3usize.pow(len);
            for code in 0..total {
                let mut word = Vec::with_capacity(len as usize);
                let mut c = code;
                for _ in 0..len {
                    word.push((c % 3) as u8);
                    c /= 3;
                }
                word.reverse();
                let w = g.evaluate(&word);
                if g.length(w) == len {
                    best.entry(w)
                        .and_modify(|b| {
                            if word < *b {
                                *b = word.clone()
                            }
                        })
                        .or_insert(word);
                }
            }
        }
        for w in g.elements() {
            assert_eq!(g.word(w), best[&w].as_slice());
        }
    }

    #[test]
    fn format_words() {
        let g = group(CoxeterType::A(2));
        assert_eq!(g.format_word(Elem::IDENTITY), "e");
        assert_eq!(g.format_word(g.longest_element()), "sts");
        let g4 = group(CoxeterType::A(4));
        assert_eq!(g4.format_word(g4.evaluate(&[0, 2])), "s1.s3");
    }
}
