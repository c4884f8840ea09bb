//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are polynomial residues modulo the `n`-th cyclotomic polynomial
//! `Φ_n`, stored as a coefficient vector of fixed length `φ(n)`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ordered::render_rational;

/// The field `Q(ζ_n)` together with the reduction data for `Φ_n`.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u32,
    /// Monic `Φ_n`, lowest degree first.
    phi: Vec<BigInt>,
}

impl CyclotomicField {
    /// Shared handle for `Q(ζ_n)`; fields are interned.
    pub fn get(n: u32) -> Arc<CyclotomicField> {
        assert!(n >= 1, "cyclotomic order must be positive");
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let mut fields = FIELDS.get_or_init(Default::default).lock().unwrap();
        fields
            .entry(n)
            .or_insert_with(|| {
                Arc::new(CyclotomicField {
                    n,
                    phi: cyclotomic_polynomial(n),
                })
            })
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// `φ(n)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of `Φ_n`, lowest degree first.
    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.phi
    }

    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        for k in (deg..poly.len()).rev() {
            let lead = std::mem::take(&mut poly[k]);
            if lead.is_zero() {
                continue;
            }
            for (j, p) in self.phi[..deg].iter().enumerate() {
                if !p.is_zero() {
                    poly[k - deg + j] -= &lead * BigRational::from_integer(p.clone());
                }
            }
        }
        poly.resize(deg, BigRational::zero());
        poly
    }
}

/// `Φ_n` with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(field: &Arc<CyclotomicField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.n as i64;
        let k = k.rem_euclid(n) as usize;
        let mut poly = vec![BigRational::zero(); k.max(field.degree()) + 1];
        poly[k] = BigRational::one();
        Cyclotomic {
            field: field.clone(),
            coeffs: field.reduce(poly),
        }
    }

    /// Builds an element from a polynomial in `ζ_n`, reducing it.
    pub fn from_poly(field: &Arc<CyclotomicField>, poly: Vec<BigRational>) -> Self {
        let mut poly = poly;
        if poly.len() < field.degree() {
            poly.resize(field.degree(), BigRational::zero());
        }
        Cyclotomic {
            field: field.clone(),
            coeffs: field.reduce(poly),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// The value as an integer, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    fn check_field(&self, other: &Cyclotomic) {
        assert_eq!(
            self.field.n, other.field.n,
            "cyclotomic field mismatch: Q(ζ_{}) vs Q(ζ_{})",
            self.field.n, other.field.n
        );
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        let n = self.field.n as usize;
        let mut poly = vec![BigRational::zero(); n.max(self.field.degree())];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(n - k) % n] += c;
        }
        Cyclotomic::from_poly(&self.field, poly)
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        let deg = self.field.degree();
        // columns: coordinates of self * ζ^j
        let mut cols = Vec::with_capacity(deg);
        for j in 0..deg {
            let zj = Cyclotomic::zeta_pow(&self.field, j as i64);
            cols.push((self * &zj).coeffs);
        }
        let matrix: Vec<Vec<BigRational>> = (0..deg)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let mut rhs = vec![BigRational::zero(); deg];
        rhs[0] = BigRational::one();
        let sol = solve_rational(matrix, rhs)?;
        Some(Cyclotomic {
            field: self.field.clone(),
            coeffs: sol,
        })
    }

    pub fn pow(&self, mut e: u32) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Coefficient vector rendered for JSON: integers as numbers, other
    /// rationals as `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(rational_to_json).collect())
    }
}

pub(crate) fn rational_to_json(q: &BigRational) -> serde_json::Value {
    if q.is_integer() {
        if let Ok(n) = i64::try_from(q.to_integer()) {
            return serde_json::Value::from(n);
        }
    }
    serde_json::Value::from(render_rational(q))
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints as a polynomial in `z` (for `ζ_n`), e.g. `1/2 - z^2`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = render_rational(&c.abs());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => f.write_str(&mag)?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_field(rhs);
        let deg = self.field.degree();
        let mut poly = vec![BigRational::zero(); 2 * deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.field.reduce(poly),
        }
    }
}

/// Solves the square system `matrix · x = rhs` over `Q`; `None` if singular.
pub fn solve_rational(
    mut matrix: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = matrix[col][col].recip();
        for k in col..n {
            matrix[col][k] = &matrix[col][k] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !matrix[r][col].is_zero() {
                let f = matrix[r][col].clone();
                for k in col..n {
                    let t = &f * &matrix[col][k];
                    matrix[r][k] -= t;
                }
                let t = &f * &rhs[col];
                rhs[r] -= t;
            }
        }
    }
    Some(rhs)
}

/// Solves the square system `matrix · x = rhs` over a cyclotomic field;
/// `None` if singular.
pub fn solve_cyclotomic(
    mut matrix: Vec<Vec<Cyclotomic>>,
    mut rhs: Vec<Cyclotomic>,
) -> Option<Vec<Cyclotomic>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = matrix[col][col].inverse()?;
        for k in col..n {
            matrix[col][k] = &matrix[col][k] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r != col && !matrix[r][col].is_zero() {
                let f = matrix[r][col].clone();
                for k in col..n {
                    let t = &f * &matrix[col][k];
                    matrix[r][k] = &matrix[r][k] - &t;
                }
                let t = &f * &rhs[col];
                rhs[r] = &rhs[r] - &t;
            }
        }
    }
    Some(rhs)
}
