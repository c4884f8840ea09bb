//! Exact character tables by the Burnside–Dixon–Schneider method.
//!
//! Class-sum structure constants are diagonalized simultaneously over `F_p`
//! with `p ≡ 1 (mod exponent)`; the resulting modular character values are
//! lifted to `Z[ζ_e]` through eigenvalue multiplicities on cyclic subgroups.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::group::{ConjugacyClasses, FiniteGroup};

/// A class function, indexed like the classes of its [`CharacterTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn from_ints(field: &std::sync::Arc<CyclotomicField>, values: &[i64]) -> Self {
        ClassFunction {
            values: values.iter().map(|&v| Cyclotomic::from_int(field, v)).collect(),
        }
    }

    /// Integer values, if every value is a rational integer.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.values
            .iter()
            .map(|v| v.as_integer().and_then(|n| i64::try_from(n).ok()))
            .collect()
    }
}

/// Multiplicities `⟨f, χ_i⟩` and whether they are all nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub multiplicities: Vec<Cyclotomic>,
    pub nonnegative_integral: bool,
}

impl Decomposition {
    pub fn as_counts(&self) -> Option<Vec<u64>> {
        if !self.nonnegative_integral {
            return None;
        }
        self.multiplicities
            .iter()
            .map(|m| m.as_integer().and_then(|n| u64::try_from(n).ok()))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group_order: usize,
    exponent: u32,
    classes: ConjugacyClasses,
    class_orders: Vec<usize>,
    rows: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn compute<G: FiniteGroup + ?Sized>(group: &G) -> Self {
        let classes = ConjugacyClasses::compute(group);
        let n = group.order();
        let r = classes.len();
        let class_orders: Vec<usize> = (0..r)
            .map(|j| group.element_order(classes.representative(j)))
            .collect();
        let exponent = class_orders.iter().fold(1usize, |a, &o| a.lcm(&o)) as u32;
        let field = CyclotomicField::get(exponent);
        let p = choose_prime(exponent as u64, 2 * n as u64);
        let z = primitive_root(p);
        let zeta = pow_mod(z, (p - 1) / exponent as u64, p);

        // a[j][k][l] = #{x ∈ C_j : x^{-1} z_l ∈ C_k}
        let mut consts = vec![vec![vec![0u64; r]; r]; r];
        for l in 0..r {
            let zl = classes.representative(l);
            for x in 0..n {
                let y = group.mul(group.inverse(x), zl);
                consts[classes.class_of(x)][classes.class_of(y)][l] += 1;
            }
        }

        // Simultaneous eigenspaces of the matrices (A_j)_{k,l} = a[j][k][l].
        let mut spaces = vec![Subspace::full(r)];
        for a_j in consts.iter().skip(1) {
            if spaces.iter().all(|s| s.dim() == 1) {
                break;
            }
            let mut next = Vec::new();
            for space in spaces {
                if space.dim() == 1 {
                    next.push(space);
                } else {
                    next.extend(space.split(a_j, p));
                }
            }
            spaces = next;
        }
        assert_eq!(spaces.len(), r, "class sums failed to separate characters");

        let inverse_class: Vec<usize> = (0..r)
            .map(|j| classes.class_of(group.inverse(classes.representative(j))))
            .collect();
        let isqrt_n = (n as u64).sqrt();
        let mut rows = Vec::with_capacity(r);
        for space in &spaces {
            let mut omega = space.basis[0].clone();
            let inv0 = inv_mod(omega[0], p);
            for w in omega.iter_mut() {
                *w = mul_mod(*w, inv0, p);
            }
            // |G| / d^2 = Σ_j ω_j ω_{j'} / |C_j|
            let mut s = 0;
            for j in 0..r {
                let t = mul_mod(omega[j], omega[inverse_class[j]], p);
                s = (s + mul_mod(t, inv_mod(classes.size(j) as u64 % p, p), p)) % p;
            }
            let d2 = mul_mod(n as u64 % p, inv_mod(s, p), p);
            let d = (1..=isqrt_n)
                .find(|d| d * d % p == d2)
                .expect("character degree out of range");
            let modular: Vec<u64> = (0..r)
                .map(|j| {
                    let num = mul_mod(d, omega[j], p);
                    mul_mod(num, inv_mod(classes.size(j) as u64 % p, p), p)
                })
                .collect();
            let row: Vec<Cyclotomic> = (0..r)
                .map(|j| {
                    lift_value(
                        group,
                        &classes,
                        j,
                        class_orders[j],
                        &modular,
                        zeta,
                        exponent,
                        p,
                        &field,
                    )
                })
                .collect();
            rows.push(row);
        }
        // degree first; among equal degrees, larger values first so the
        // trivial character leads
        rows.sort_by_cached_key(|row| {
            let degree = row[0].coeffs()[0].clone();
            let rest: Vec<Vec<BigRational>> = row
                .iter()
                .map(|v| v.coeffs().iter().map(|c| -c).collect())
                .collect();
            (degree, rest)
        });

        CharacterTable {
            group_order: n,
            exponent,
            classes,
            class_orders,
            rows,
        }
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn field(&self) -> std::sync::Arc<CyclotomicField> {
        CyclotomicField::get(self.exponent)
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn class_orders(&self) -> &[usize] {
        &self.class_orders
    }

    pub fn num_characters(&self) -> usize {
        self.rows.len()
    }

    pub fn character(&self, i: usize) -> ClassFunction {
        ClassFunction {
            values: self.rows[i].clone(),
        }
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn degree(&self, i: usize) -> u64 {
        u64::try_from(self.rows[i][0].as_integer().expect("degrees are integers"))
            .expect("degrees are positive")
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.rows.len()).map(|i| self.degree(i)).collect()
    }

    /// The class function of a character given on every group element.
    pub fn class_function_from_elements(&self, f: impl Fn(usize) -> Cyclotomic) -> ClassFunction {
        ClassFunction {
            values: (0..self.classes.len())
                .map(|j| f(self.classes.representative(j)))
                .collect(),
        }
    }

    pub fn regular_character(&self) -> ClassFunction {
        let field = self.field();
        let mut vals = vec![0i64; self.classes.len()];
        vals[0] = self.group_order as i64;
        ClassFunction::from_ints(&field, &vals)
    }

    /// `(1/|G|) Σ_j |C_j| f(g_j) conj(g(g_j))`.
    pub fn inner_product(&self, f: &ClassFunction, g: &ClassFunction) -> Cyclotomic {
        let field = self.field();
        let mut acc = Cyclotomic::zero(&field);
        for j in 0..self.classes.len() {
            let size = BigRational::from_integer(BigInt::from(self.classes.size(j)));
            acc = &acc + &(&f.values[j] * &g.values[j].conj()).scale(&size);
        }
        acc.scale(&BigRational::new(1.into(), BigInt::from(self.group_order)))
    }

    pub fn decompose(&self, f: &ClassFunction) -> Decomposition {
        let multiplicities: Vec<Cyclotomic> = (0..self.rows.len())
            .map(|i| self.inner_product(f, &self.character(i)))
            .collect();
        let nonnegative_integral = multiplicities.iter().all(|m| {
            m.as_rational()
                .is_some_and(|q| q.is_integer() && !q.is_negative())
        });
        Decomposition {
            multiplicities,
            nonnegative_integral,
        }
    }

    /// JSON with cyclotomic values as coefficient vectors in powers of `ζ_e`.
    pub fn to_json(&self, class_name: impl Fn(usize) -> String) -> Value {
        let classes: Vec<Value> = (0..self.classes.len())
            .map(|j| {
                json!({
                    "representative": class_name(self.classes.representative(j)),
                    "size": self.classes.size(j),
                    "order": self.class_orders[j],
                })
            })
            .collect();
        let chars: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cyclotomic::to_json).collect()))
            .collect();
        json!({
            "group_order": self.group_order,
            "exponent": self.exponent,
            "classes": classes,
            "characters": chars,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn lift_value<G: FiniteGroup + ?Sized>(
    group: &G,
    classes: &ConjugacyClasses,
    j: usize,
    order: usize,
    modular: &[u64],
    zeta: u64,
    exponent: u32,
    p: u64,
    field: &std::sync::Arc<CyclotomicField>,
) -> Cyclotomic {
    let g = classes.representative(j);
    let step = exponent as u64 / order as u64;
    let zeta_o = pow_mod(zeta, step, p);
    let zeta_o_inv = inv_mod(zeta_o, p);
    let inv_o = inv_mod(order as u64 % p, p);
    // χ(g^t) for t = 0..order
    let mut powers = Vec::with_capacity(order);
    let mut x = group.identity();
    for _ in 0..order {
        powers.push(modular[classes.class_of(x)]);
        x = group.mul(x, g);
    }
    let mut poly = vec![BigRational::zero(); exponent as usize];
    for k in 0..order {
        let mut m = 0u64;
        let base = pow_mod(zeta_o_inv, k as u64, p);
        let mut rot = 1u64;
        for &chi in &powers {
            m = (m + mul_mod(chi, rot, p)) % p;
            rot = mul_mod(rot, base, p);
        }
        let m = mul_mod(m, inv_o, p);
        if m != 0 {
            poly[(k as u64 * step) as usize] += BigRational::from_integer(BigInt::from(m));
        }
    }
    Cyclotomic::from_poly(field, poly)
}

/// A subspace of `F_p^r` in reduced row-echelon form.
#[derive(Debug, Clone)]
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn full(r: usize) -> Self {
        Subspace {
            basis: (0..r)
                .map(|i| {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    v
                })
                .collect(),
            pivots: (0..r).collect(),
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn from_vectors(vectors: Vec<Vec<u64>>, p: u64) -> Self {
        let mut rows = vectors;
        let n = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = inv_mod(rows[rank][col], p);
            for x in rows[rank].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for k in 0..n {
                        let t = mul_mod(f, rows[rank][k], p);
                        rows[i][k] = (rows[i][k] + p - t) % p;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Subspace {
            basis: rows,
            pivots,
        }
    }

    /// Splits into the eigenspaces of `a` restricted to this (invariant)
    /// subspace.
    fn split(self, a: &[Vec<u64>], p: u64) -> Vec<Subspace> {
        let dim = self.dim();
        let r = a.len();
        // image of each basis vector, in coordinates of the basis
        let images: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|u| {
                (0..r)
                    .map(|k| (0..r).fold(0, |acc, l| (acc + mul_mod(a[k][l] % p, u[l], p)) % p))
                    .collect()
            })
            .collect();
        // b[m][i] = coordinate m of A u_i
        let b: Vec<Vec<u64>> = (0..dim)
            .map(|m| images.iter().map(|img| img[self.pivots[m]]).collect())
            .collect();
        let poly = char_poly(&b, p);
        let roots: Vec<u64> = (0..p).filter(|&x| eval_poly(&poly, x, p) == 0).collect();
        if roots.len() <= 1 {
            return vec![self];
        }
        roots
            .into_iter()
            .map(|lambda| {
                let mut m = b.clone();
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = (row[i] + p - lambda) % p;
                }
                let kernel = kernel(&m, p);
                let vectors = kernel
                    .into_iter()
                    .map(|c| {
                        (0..r)
                            .map(|k| {
                                (0..dim).fold(0, |acc, i| (acc + mul_mod(c[i], self.basis[i][k], p)) % p)
                            })
                            .collect()
                    })
                    .collect();
                Subspace::from_vectors(vectors, p)
            })
            .collect()
    }
}

/// Characteristic polynomial by Faddeev–LeVerrier, lowest degree first.
fn char_poly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut mk = vec![vec![0u64; n]; n]; // M_0 = 0
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(m, &mk, p);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = (row[i] + coeffs[n - k + 1]) % p;
        }
        mk = next;
        let am = matmul(m, &mk, p);
        let tr = (0..n).fold(0, |acc, i| (acc + am[i][i]) % p);
        // c_{n-k} = -tr(A M_k)/k
        let c = mul_mod(tr, inv_mod(k as u64 % p, p), p);
        coeffs[n - k] = (p - c) % p;
    }
    coeffs
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] = (out[i][j] + mul_mod(a[i][k], b[k][j], p)) % p;
            }
        }
    }
    out
}

fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Basis of the null space of `m` over `F_p`.
fn kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let ech = Subspace::from_vectors(m.to_vec(), p);
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in ech.basis.iter().zip(&ech.pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "division by zero mod {p}");
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Least prime `p ≡ 1 (mod e)` with `p > lower`.
pub fn choose_prime(e: u64, lower: u64) -> u64 {
    let mut p = (lower / e) * e + 1;
    if p <= lower {
        p += e;
    }
    while !is_prime(p) {
        p += e;
    }
    p
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("F_p^* is cyclic")
}
