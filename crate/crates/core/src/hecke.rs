//! The Iwahori–Hecke algebra over `Z[Γ]` in the standard basis `T_w`, its bar
//! involution, and the Kazhdan–Lusztig basis `C_w` for a weight function `L`.
//!
//! Conventions: `(T_s − v^{L(s)})(T_s + v^{−L(s)}) = 0`, `C_w` is bar-invariant
//! and `C_w − T_w` has coefficients in `Z[Γ_{<0}]`. In particular
//! `C_s = T_s + v^{−L(s)}` when `L(s) > 0` and `C_s = T_s` when `L(s) = 0`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::coxeter::{CoxeterGroup, Elem, Side, WeightFunction};
use crate::ordered::{symmetrize_nonnegative, Exponent, GammaMode, Laurent};

/// A finitely supported map `W → Z[Γ]`, read as `Σ a_w T_w` (or as a C-basis
/// expansion where noted).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HeckeElt {
    coeffs: BTreeMap<Elem, Laurent>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: Elem, mode: GammaMode) -> Self {
        Self::term(w, Laurent::one(mode))
    }

    pub fn term(w: Elem, a: Laurent) -> Self {
        let mut h = Self::zero();
        h.add_term(w, &a);
        h
    }

    pub fn from_map(coeffs: BTreeMap<Elem, Laurent>) -> Self {
        HeckeElt {
            coeffs: coeffs.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: Elem) -> Laurent {
        self.coeffs.get(&w).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, w: Elem) -> Option<&Laurent> {
        self.coeffs.get(&w)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Elem, &Laurent)> + '_ {
        self.coeffs.iter().map(|(&w, a)| (w, a))
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = Elem> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn into_map(self) -> BTreeMap<Elem, Laurent> {
        self.coeffs
    }

    pub fn as_map(&self) -> &BTreeMap<Elem, Laurent> {
        &self.coeffs
    }

    pub fn add_term(&mut self, w: Elem, a: &Laurent) {
        if a.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(w).or_default();
        *slot += a;
        if slot.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    /// `self += a · other`.
    pub fn add_scaled(&mut self, a: &Laurent, other: &HeckeElt) {
        for (w, b) in other.iter() {
            self.add_term(w, &(a * b));
        }
    }

    pub fn add(&mut self, other: &HeckeElt) {
        for (w, b) in other.iter() {
            self.add_term(w, b);
        }
    }

    pub fn sub(&mut self, other: &HeckeElt) {
        for (w, b) in other.iter() {
            self.add_term(w, &-b);
        }
    }

    pub fn scaled(&self, a: &Laurent) -> HeckeElt {
        let mut out = HeckeElt::zero();
        out.add_scaled(a, self);
        out
    }
}

/// Hecke algebra context for a group and a weight function.
pub struct Hecke<'g> {
    group: &'g CoxeterGroup,
    weights: WeightFunction,
    /// `v^{L(s)} − v^{−L(s)}`
    quad: Vec<Laurent>,
    /// `v^{−L(s)}`, or zero when `L(s) = 0`
    c_shift: Vec<Laurent>,
    bar_table: OnceLock<Vec<HeckeElt>>,
}

impl<'g> Hecke<'g> {
    /// The weights are assumed validated against the group.
    pub fn new(group: &'g CoxeterGroup, weights: WeightFunction) -> Self {
        let quad = weights
            .values
            .iter()
            .map(|l| &Laurent::v_pow(l.clone()) - &Laurent::v_pow(-l))
            .collect();
        let c_shift = weights
            .values
            .iter()
            .map(|l| {
                if l.is_zero() {
                    Laurent::zero()
                } else {
                    Laurent::v_pow(-l)
                }
            })
            .collect();
        Hecke {
            group,
            weights,
            quad,
            c_shift,
            bar_table: OnceLock::new(),
        }
    }

    pub fn group(&self) -> &'g CoxeterGroup {
        self.group
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn mode(&self) -> GammaMode {
        self.weights.mode()
    }

    pub fn t(&self, w: Elem) -> HeckeElt {
        HeckeElt::basis(w, self.mode())
    }

    /// `v^{L(s)} − v^{−L(s)}`.
    pub fn quadratic_coeff(&self, s: usize) -> &Laurent {
        &self.quad[s]
    }

    /// The element `C_s`.
    pub fn c_s(&self, s: usize) -> HeckeElt {
        let mut h = self.t(self.group.generator(s));
        h.add_term(Elem::IDENTITY, &self.c_shift[s]);
        h
    }

    /// `T_s · h` or `h · T_s`.
    pub fn mul_ts(&self, s: usize, h: &HeckeElt, side: Side) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, a) in h.iter() {
            let sw = match side {
                Side::Left => self.group.left_mul(s, w),
                Side::Right => self.group.right_mul(w, s),
            };
            out.add_term(sw, a);
            if self.group.length(sw) < self.group.length(w) {
                out.add_term(w, &(a * &self.quad[s]));
            }
        }
        out
    }

    /// `C_s · h`.
    pub fn mul_cs(&self, s: usize, h: &HeckeElt) -> HeckeElt {
        let mut out = self.mul_ts(s, h, Side::Left);
        if !self.c_shift[s].is_zero() {
            out.add_scaled(&self.c_shift[s], h);
        }
        out
    }

    /// `T_w · h`.
    pub fn mul_tw(&self, w: Elem, h: &HeckeElt) -> HeckeElt {
        self.group
            .word(w)
            .iter()
            .rev()
            .fold(h.clone(), |acc, &s| self.mul_ts(s as usize, &acc, Side::Left))
    }

    pub fn multiply(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in a.iter() {
            out.add_scaled(c, &self.mul_tw(w, b));
        }
        out
    }

    /// `i(T_w)` for every `w`, built as `i(T_w) = (T_s − q_s)·i(T_{sw})` with
    /// `s` the first left descent.
    fn bar_table(&self) -> &[HeckeElt] {
        self.bar_table.get_or_init(|| {
            let g = self.group;
            let mut table: Vec<HeckeElt> = Vec::with_capacity(g.len());
            table.push(self.t(Elem::IDENTITY));
            for w in g.elements().skip(1) {
                let s = g.word(w)[0] as usize;
                let prev = &table[g.left_mul(s, w).index()];
                let mut h = self.mul_ts(s, prev, Side::Left);
                h.add_scaled(&-&self.quad[s], prev);
                table.push(h);
            }
            table
        })
    }

    /// `i(T_w)`.
    pub fn bar_t(&self, w: Elem) -> &HeckeElt {
        &self.bar_table()[w.index()]
    }

    /// The ring involution `v^γ ↦ v^{−γ}`, `T_s ↦ T_s^{−1}`.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let table = self.bar_table();
        let mut out = HeckeElt::zero();
        for (w, a) in h.iter() {
            out.add_scaled(&a.bar(), &table[w.index()]);
        }
        out
    }

    /// Computes `C_w` for every `w`, one length stratum at a time.
    pub fn kl_basis(&self) -> KlTable {
        let g = self.group;
        let mut c: Vec<HeckeElt> = vec![self.t(Elem::IDENTITY)];
        let mut start = 1;
        while start < g.len() {
            let len = g.length(Elem(start as u32));
            let end = (start..g.len())
                .find(|&i| g.length(Elem(i as u32)) != len)
                .unwrap_or(g.len());
            let stratum: Vec<HeckeElt> = (start..end)
                .into_par_iter()
                .map(|i| self.kl_element(Elem(i as u32), &c))
                .collect();
            c.extend(stratum);
            start = end;
        }
        let rank = g.rank();
        let products: Vec<Vec<HeckeElt>> = (0..rank)
            .map(|s| {
                g.elements()
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .map(|w| {
                        let h = self.mul_cs(s, &c[w.index()]);
                        express_in_basis(&h, &c)
                    })
                    .collect()
            })
            .collect();
        KlTable {
            weights: self.weights.clone(),
            c,
            products,
        }
    }

    /// `C_w` from `C_s · C_{sw}` minus bar-invariant corrections, given all
    /// shorter `C_y`.
    fn kl_element(&self, w: Elem, shorter: &[HeckeElt]) -> HeckeElt {
        let g = self.group;
        let s = g.word(w)[0] as usize;
        let sw = g.left_mul(s, w);
        let mut h = self.mul_cs(s, &shorter[sw.index()]);
        debug_assert!(h.coeff(w) == Laurent::one(self.mode()));
        // Corrections at y only touch strictly shorter elements, so a single
        // pass in decreasing index order suffices.
        let mut cursor = w;
        loop {
            let next = h.support().rev().find(|&y| y < cursor);
            let Some(y) = next else { break };
            cursor = y;
            let r = h.coeff(y);
            let p = symmetrize_nonnegative(&r);
            if !p.is_zero() {
                h.add_scaled(&-&p, &shorter[y.index()]);
            }
        }
        h
    }
}

/// Expands `h` (given in the T-basis) in the basis `basis[w] = T_w + lower`.
fn express_in_basis(h: &HeckeElt, basis: &[HeckeElt]) -> HeckeElt {
    let mut rest = h.clone();
    let mut out = HeckeElt::zero();
    loop {
        let top = rest.iter().next_back().map(|(y, a)| (y, a.clone()));
        let Some((y, a)) = top else { break };
        rest.add_scaled(&-&a, &basis[y.index()]);
        out.add_term(y, &a);
    }
    out
}

/// The Kazhdan–Lusztig basis of a Hecke algebra, together with the C-basis
/// expansions of all products `C_s · C_w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlTable {
    weights: WeightFunction,
    c: Vec<HeckeElt>,
    products: Vec<Vec<HeckeElt>>,
}

impl KlTable {
    pub(crate) fn from_parts(
        weights: WeightFunction,
        c: Vec<HeckeElt>,
        products: Vec<Vec<HeckeElt>>,
    ) -> Self {
        KlTable {
            weights,
            c,
            products,
        }
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.products.len()
    }

    /// `C_w` in the T-basis.
    pub fn c(&self, w: Elem) -> &HeckeElt {
        &self.c[w.index()]
    }

    pub fn c_basis(&self) -> &[HeckeElt] {
        &self.c
    }

    /// `C_s · C_w` in the C-basis.
    pub fn product(&self, s: usize, w: Elem) -> &HeckeElt {
        &self.products[s][w.index()]
    }

    pub fn products(&self) -> &[Vec<HeckeElt>] {
        &self.products
    }

    /// Coefficients of `h` (T-basis) in the C-basis.
    pub fn express(&self, h: &HeckeElt) -> HeckeElt {
        express_in_basis(h, &self.c)
    }

    /// Converts a C-basis expansion back to the T-basis.
    pub fn expand(&self, in_c: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, a) in in_c.iter() {
            out.add_scaled(a, &self.c[w.index()]);
        }
        out
    }

    /// The polynomial `p_{y,w}`: the coefficient of `T_y` in `C_w`.
    pub fn p(&self, y: Elem, w: Elem) -> Laurent {
        self.c[w.index()].coeff(y)
    }
}

/// `v^γ` helper for callers assembling Hecke elements by hand.
pub fn v(exp: Exponent) -> Laurent {
    Laurent::v_pow(exp)
}
