//! The rational Cherednik algebra at `t = 0` of the cyclic group `μ_d` acting
//! on a line, and its Calogero–Moser cells and families.
//!
//! The algebra is generated by `x`, `ξ`, `s` over `Q(ζ_d)` with
//! `s x s^{-1} = ζ^{-1} x`, `s ξ s^{-1} = ζ ξ` and `[ξ, x] = Σ_{i=1}^{d-1} c_i s^i`.
//! Elements are kept in the normal form `Σ a · x^a ξ^b s^i`.
//!
//! Index convention: `κ_i` pairs with `s^i` for `1 ≤ i ≤ d`, with
//! `s^d = s^0 = 1` pairing with `κ_d = κ_0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclotomic::{solve_cyclotomic, Cyclotomic, CyclotomicField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CherednikError {
    #[error("d must be at least 2, got {0}")]
    BadRank(usize),
    #[error("expected {expected} parameters, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("κ values must sum to zero")]
    NonzeroConstantTerm,
    #[error("parameter field Q(ζ_{got}) does not match d = {d}")]
    FieldMismatch { d: usize, got: u32 },
}

/// Parameters `c_1..c_{d-1}` and the matching `κ_1..κ_d` with `Σκ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Params {
    d: usize,
    c: Vec<Cyclotomic>,
    kappa: Vec<Cyclotomic>,
}

impl Rank1Params {
    pub fn from_c(d: usize, c: Vec<Cyclotomic>) -> Result<Self, CherednikError> {
        let kappa = c_to_kappa(d, &c)?;
        Ok(Rank1Params { d, c, kappa })
    }

    pub fn from_kappa(d: usize, kappa: Vec<Cyclotomic>) -> Result<Self, CherednikError> {
        let c = kappa_to_c(d, &kappa)?;
        Ok(Rank1Params { d, c, kappa })
    }

    pub fn from_rational_c(d: usize, c: &[BigRational]) -> Result<Self, CherednikError> {
        let field = field_for(d)?;
        Self::from_c(d, c.iter().map(|q| Cyclotomic::from_rational(&field, q.clone())).collect())
    }

    pub fn from_rational_kappa(d: usize, kappa: &[BigRational]) -> Result<Self, CherednikError> {
        let field = field_for(d)?;
        Self::from_kappa(
            d,
            kappa.iter().map(|q| Cyclotomic::from_rational(&field, q.clone())).collect(),
        )
    }

    /// Parameters whose `κ` need not match `c`; for negative controls.
    pub fn unchecked(d: usize, c: Vec<Cyclotomic>, kappa: Vec<Cyclotomic>) -> Self {
        Rank1Params { d, c, kappa }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Arc<CyclotomicField> {
        CyclotomicField::get(self.d as u32)
    }

    /// `c_1..c_{d-1}`.
    pub fn c(&self) -> &[Cyclotomic] {
        &self.c
    }

    /// `κ_1..κ_d`.
    pub fn kappa(&self) -> &[Cyclotomic] {
        &self.kappa
    }
}

fn field_for(d: usize) -> Result<Arc<CyclotomicField>, CherednikError> {
    if d < 2 {
        return Err(CherednikError::BadRank(d));
    }
    Ok(CyclotomicField::get(d as u32))
}

fn check_field(d: usize, xs: &[Cyclotomic]) -> Result<(), CherednikError> {
    match xs.iter().find(|x| x.field().order() as usize != d) {
        Some(x) => Err(CherednikError::FieldMismatch {
            d,
            got: x.field().order(),
        }),
        None => Ok(()),
    }
}

/// Coefficients on `1, s, …, s^{d-1}` of `Σ_{i=0}^{d-1} (κ_i − κ_{i+1}) ε_i`
/// where `ε_i = (1/d) Σ_j ζ^{ij} s^j`, as linear forms in `κ_1..κ_d`.
/// Row `j`, column `m` is the coefficient of `κ_{m+1}` in the `s^j` entry.
fn idempotent_expansion(d: usize, field: &Arc<CyclotomicField>) -> Vec<Vec<Cyclotomic>> {
    let inv_d = BigRational::new(1.into(), (d as i64).into());
    let mut rows = vec![vec![Cyclotomic::zero(field); d]; d];
    for (j, row) in rows.iter_mut().enumerate() {
        for i in 0..d {
            let w = Cyclotomic::zeta_pow(field, (i * j) as i64).scale(&inv_d);
            // κ_i with κ_0 = κ_d sits in column (i + d - 1) % d
            let ci = (i + d - 1) % d;
            let cn = i % d;
            row[ci] = &row[ci] + &w;
            row[cn] = &row[cn] - &w;
        }
    }
    rows
}

/// Solves `Σ c_i s^i = Σ (κ_i − κ_{i+1}) ε_i` together with `Σ κ = 0`.
pub fn c_to_kappa(d: usize, c: &[Cyclotomic]) -> Result<Vec<Cyclotomic>, CherednikError> {
    let field = field_for(d)?;
    if c.len() != d - 1 {
        return Err(CherednikError::Arity {
            expected: d - 1,
            got: c.len(),
        });
    }
    check_field(d, c)?;
    let mut matrix = idempotent_expansion(d, &field);
    // the s^0 row is identically zero; replace it by the normalization Σκ = 0
    debug_assert!(matrix[0].iter().all(Cyclotomic::is_zero));
    matrix[0] = vec![Cyclotomic::one(&field); d];
    let mut rhs = vec![Cyclotomic::zero(&field)];
    rhs.extend(c.iter().cloned());
    Ok(solve_cyclotomic(matrix, rhs).expect("the c ↔ κ system is nonsingular"))
}

/// The `s^1..s^{d-1}` coefficients of `Σ (κ_i − κ_{i+1}) ε_i`.
pub fn kappa_to_c(d: usize, kappa: &[Cyclotomic]) -> Result<Vec<Cyclotomic>, CherednikError> {
    let field = field_for(d)?;
    if kappa.len() != d {
        return Err(CherednikError::Arity {
            expected: d,
            got: kappa.len(),
        });
    }
    check_field(d, kappa)?;
    let sum = kappa.iter().fold(Cyclotomic::zero(&field), |acc, k| &acc + k);
    if !sum.is_zero() {
        return Err(CherednikError::NonzeroConstantTerm);
    }
    let matrix = idempotent_expansion(d, &field);
    let coeffs: Vec<Cyclotomic> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(kappa)
                .fold(Cyclotomic::zero(&field), |acc, (a, k)| &acc + &(a * k))
        })
        .collect();
    debug_assert!(coeffs[0].is_zero());
    Ok(coeffs[1..].to_vec())
}

/// A normal-form monomial `x^a ξ^b s^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: u32,
    pub xi: u32,
    pub s: u32,
}

/// A generator of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    Xi,
    S,
}

/// An element `Σ a_m · m` over normal-form monomials.
#[derive(Clone)]
pub struct AlgebraElt {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl AlgebraElt {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        AlgebraElt {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(a: Cyclotomic) -> Self {
        let mut out = Self::zero(a.field());
        out.add_term(Monomial { x: 0, xi: 0, s: 0 }, a);
        out
    }

    pub fn monomial(field: &Arc<CyclotomicField>, m: Monomial) -> Self {
        let mut out = Self::zero(field);
        out.add_term(m, Cyclotomic::one(field));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Cyclotomic {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(&self.field))
    }

    fn add_term(&mut self, m: Monomial, a: Cyclotomic) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = &*slot + &a;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, a);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElt) -> AlgebraElt {
        let mut out = self.clone();
        for (m, a) in other.terms() {
            out.add_term(*m, a.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElt) -> AlgebraElt {
        let mut out = self.clone();
        for (m, a) in other.terms() {
            out.add_term(*m, -a);
        }
        out
    }

    pub fn scale(&self, a: &Cyclotomic) -> AlgebraElt {
        let mut out = AlgebraElt::zero(&self.field);
        for (m, b) in self.terms() {
            out.add_term(*m, a * b);
        }
        out
    }
}

impl PartialEq for AlgebraElt {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.terms == other.terms
    }
}

impl Eq for AlgebraElt {}

impl fmt::Debug for AlgebraElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, a)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({a})*x^{}*xi^{}*s^{}", m.x, m.xi, m.s)?;
        }
        Ok(())
    }
}

/// Multiplication in the algebra for fixed parameters.
pub struct Rank1Algebra {
    params: Rank1Params,
    field: Arc<CyclotomicField>,
    /// `ζ^k` for `k = 0..d`
    zeta: Vec<Cyclotomic>,
}

impl Rank1Algebra {
    pub fn new(params: Rank1Params) -> Self {
        let field = params.field();
        let zeta = (0..params.d)
            .map(|k| Cyclotomic::zeta_pow(&field, k as i64))
            .collect();
        Rank1Algebra {
            params,
            field,
            zeta,
        }
    }

    pub fn params(&self) -> &Rank1Params {
        &self.params
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    fn zeta_pow(&self, k: i64) -> &Cyclotomic {
        &self.zeta[k.rem_euclid(self.params.d as i64) as usize]
    }

    pub fn one(&self) -> AlgebraElt {
        AlgebraElt::scalar(Cyclotomic::one(&self.field))
    }

    pub fn letter(&self, l: Letter) -> AlgebraElt {
        let m = match l {
            Letter::X => Monomial { x: 1, xi: 0, s: 0 },
            Letter::Xi => Monomial { x: 0, xi: 1, s: 0 },
            Letter::S => Monomial { x: 0, xi: 0, s: 1 },
        };
        AlgebraElt::monomial(&self.field, m)
    }

    pub fn x_pow(&self, a: u32) -> AlgebraElt {
        AlgebraElt::monomial(&self.field, Monomial { x: a, xi: 0, s: 0 })
    }

    pub fn xi_pow(&self, b: u32) -> AlgebraElt {
        AlgebraElt::monomial(&self.field, Monomial { x: 0, xi: b, s: 0 })
    }

    pub fn s_pow(&self, i: u32) -> AlgebraElt {
        let d = self.params.d as u32;
        AlgebraElt::monomial(&self.field, Monomial { x: 0, xi: 0, s: i % d })
    }

    /// `letter · h`, rewritten to normal form.
    pub fn left_mul(&self, letter: Letter, h: &AlgebraElt) -> AlgebraElt {
        let d = self.params.d as u32;
        let mut out = AlgebraElt::zero(&self.field);
        for (&m, a) in h.terms() {
            match letter {
                Letter::X => out.add_term(Monomial { x: m.x + 1, ..m }, a.clone()),
                Letter::S => {
                    // s x^a ξ^b = ζ^{b-a} x^a ξ^b s
                    let z = self.zeta_pow(m.xi as i64 - m.x as i64);
                    out.add_term(Monomial { s: (m.s + 1) % d, ..m }, a * z);
                }
                Letter::Xi => {
                    // ξ x^a = x^a ξ + Σ_i c_i (Σ_{k<a} ζ^{-ik}) x^{a-1} s^i
                    out.add_term(Monomial { xi: m.xi + 1, ..m }, a.clone());
                    if m.x == 0 {
                        continue;
                    }
                    for (idx, ci) in self.params.c.iter().enumerate() {
                        if ci.is_zero() {
                            continue;
                        }
                        let i = idx as i64 + 1;
                        let geom = (0..m.x as i64).fold(Cyclotomic::zero(&self.field), |acc, k| {
                            &acc + self.zeta_pow(-i * k)
                        });
                        // s^i ξ^b = ζ^{ib} ξ^b s^i
                        let coeff = &(&(ci * &geom) * self.zeta_pow(i * m.xi as i64)) * a;
                        out.add_term(
                            Monomial {
                                x: m.x - 1,
                                xi: m.xi,
                                s: ((i as u32) + m.s) % d,
                            },
                            coeff,
                        );
                    }
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &AlgebraElt, b: &AlgebraElt) -> AlgebraElt {
        let mut out = AlgebraElt::zero(&self.field);
        for (m, coeff) in a.terms() {
            let mut acc = b.clone();
            for _ in 0..m.s {
                acc = self.left_mul(Letter::S, &acc);
            }
            for _ in 0..m.xi {
                acc = self.left_mul(Letter::Xi, &acc);
            }
            for _ in 0..m.x {
                acc = self.left_mul(Letter::X, &acc);
            }
            out = out.add(&acc.scale(coeff));
        }
        out
    }

    /// Normal form of a word in the generators.
    pub fn normal_form(&self, word: &[Letter]) -> AlgebraElt {
        word.iter()
            .rev()
            .fold(self.one(), |acc, &l| self.left_mul(l, &acc))
    }

    pub fn commutator(&self, a: &AlgebraElt, b: &AlgebraElt) -> AlgebraElt {
        self.multiply(a, b).sub(&self.multiply(b, a))
    }

    /// `eu = ξx − Σ_{i=1}^{d-1} (1 − ζ^i)^{-1} c_i s^i`.
    pub fn euler_element(&self) -> AlgebraElt {
        let mut eu = self.normal_form(&[Letter::Xi, Letter::X]);
        for (idx, ci) in self.params.c.iter().enumerate() {
            let i = idx as i64 + 1;
            let denom = &Cyclotomic::one(&self.field) - self.zeta_pow(i);
            let coeff = ci * &denom.inverse().expect("ζ^i ≠ 1 for 0 < i < d");
            eu = eu.sub(&self.s_pow(i as u32).scale(&coeff));
        }
        eu
    }

    /// Whether `z` commutes with `x`, `ξ` and `s`.
    pub fn is_central(&self, z: &AlgebraElt) -> bool {
        [Letter::X, Letter::Xi, Letter::S]
            .iter()
            .all(|&l| self.commutator(&self.letter(l), z).is_zero())
    }

    /// `ε_i = (1/d) Σ_j ζ^{ij} s^j`.
    pub fn idempotent(&self, i: usize) -> AlgebraElt {
        let d = self.params.d;
        let inv_d = BigRational::new(1.into(), (d as i64).into());
        (0..d).fold(AlgebraElt::zero(&self.field), |acc, j| {
            acc.add(&self.s_pow(j as u32).scale(&self.zeta_pow((i * j) as i64).scale(&inv_d)))
        })
    }

    /// `x^d ξ^d − ∏_i (eu − κ_i)`, which vanishes exactly when the center
    /// relation holds.
    pub fn presentation_residual(&self) -> AlgebraElt {
        let d = self.params.d as u32;
        let lhs = self.multiply(&self.x_pow(d), &self.xi_pow(d));
        let eu = self.euler_element();
        let rhs = self.params.kappa.iter().fold(self.one(), |acc, k| {
            let factor = eu.sub(&AlgebraElt::scalar(k.clone()));
            self.multiply(&acc, &factor)
        });
        lhs.sub(&rhs)
    }
}

/// Checks `x^d ξ^d = ∏_i (eu − κ_i)` in normal form; returns the nonzero
/// residual otherwise.
pub fn verify_presentation(params: &Rank1Params) -> Result<(), AlgebraElt> {
    let residual = Rank1Algebra::new(params.clone()).presentation_residual();
    if residual.is_zero() {
        Ok(())
    } else {
        Err(residual)
    }
}

/// A permutation of `{1..d}` in cycle notation (only transpositions here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transposition(pub usize, pub usize);

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Calogero–Moser cells, inertia group and families for given parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmCellData {
    pub params: Rank1Params,
    /// Cells as sets of exponents `j` of `s^j`, `0 ≤ j < d`; sorted.
    pub cells: Vec<Vec<usize>>,
    /// Generators of the inertia group, a Young subgroup of `S_d`.
    pub inertia: Vec<Transposition>,
    /// Blocks of indices `1..=d` with equal `κ`, i.e. the inertia orbits.
    pub orbits: Vec<Vec<usize>>,
    /// Distinct `κ` values: the points of the fiber over `c × 0 × 0`.
    pub fiber: Vec<Cyclotomic>,
    /// Families as sets of `j` for `det^j`; sorted.
    pub families: Vec<Vec<usize>>,
}

fn canonical(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// Blocks of `{1..=d}` grouped by equal `κ_i`.
pub fn kappa_equality_blocks(kappa: &[Cyclotomic]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, k) in kappa.iter().enumerate() {
        match blocks.iter_mut().find(|b| kappa[b[0] - 1] == *k) {
            Some(b) => b.push(i + 1),
            None => blocks.push(vec![i + 1]),
        }
    }
    canonical(blocks)
}

/// Orbits of the group generated by `gens` on `{1..=d}`.
pub fn orbits(d: usize, gens: &[Transposition]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d + 1];
    let mut out = Vec::new();
    for start in 1..=d {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let i = orbit[head];
            head += 1;
            for t in gens {
                let j = if t.0 == i {
                    t.1
                } else if t.1 == i {
                    t.0
                } else {
                    continue;
                };
                if !seen[j] {
                    seen[j] = true;
                    orbit.push(j);
                }
            }
        }
        out.push(orbit);
    }
    canonical(out)
}

pub fn inertia_and_cells(params: &Rank1Params) -> CmCellData {
    let d = params.d;
    let kappa = &params.kappa;
    // Young subgroup: adjacent transpositions inside each equal-κ block
    let by_value = kappa_equality_blocks(kappa);
    let inertia: Vec<Transposition> = by_value
        .iter()
        .flat_map(|b| b.windows(2).map(|w| Transposition(w[0], w[1])))
        .collect();
    // the stabilizer really fixes κ
    debug_assert!(inertia.iter().all(|t| kappa[t.0 - 1] == kappa[t.1 - 1]));
    let orbit_blocks = orbits(d, &inertia);
    assert_eq!(orbit_blocks, by_value, "inertia orbits disagree with κ-equality");

    let cells = canonical(
        orbit_blocks
            .iter()
            .map(|b| b.iter().map(|&i| i % d).collect())
            .collect(),
    );
    let fiber: Vec<Cyclotomic> = orbit_blocks.iter().map(|b| kappa[b[0] - 1].clone()).collect();
    let families = cells.clone();
    CmCellData {
        params: params.clone(),
        cells,
        inertia,
        orbits: orbit_blocks,
        fiber,
        families,
    }
}

/// `m_Γ(det^j) = 1` if `s^j ∈ Γ`, else `0`; rows are cells, columns `j`.
pub fn cm_multiplicities(data: &CmCellData) -> Vec<Vec<u8>> {
    let d = data.params.d;
    data.cells
        .iter()
        .map(|cell| (0..d).map(|j| cell.contains(&j) as u8).collect())
        .collect()
}

/// Families of `Irr(μ_d)`: `det^j ∼ det^k` iff `κ_j = κ_k`.
pub fn cm_families(data: &CmCellData) -> Vec<Vec<usize>> {
    data.families.clone()
}

pub fn element_name(j: usize) -> String {
    match j {
        0 => "1".into(),
        1 => "s".into(),
        _ => format!("s^{j}"),
    }
}

impl CmCellData {
    pub fn to_json(&self) -> Value {
        let names = |blocks: &[Vec<usize>], f: &dyn Fn(usize) -> String| -> Value {
            Value::Array(
                blocks
                    .iter()
                    .map(|b| Value::Array(b.iter().map(|&j| Value::from(f(j))).collect()))
                    .collect(),
            )
        };
        json!({
            "d": self.params.d,
            "c": self.params.c.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
            "kappa": self.params.kappa.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
            "cells": names(&self.cells, &element_name),
            "inertia_generators": self.inertia.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "fiber": self.fiber.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
            "families": names(&self.families, &|j| format!("det^{j}")),
            "multiplicities": cm_multiplicities(self),
        })
    }
}
