//! Oracles shared by the integration tests. None of them call into the
//! Hecke, cell or character code under test: they only use the group
//! multiplication tables and the coefficient ring.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cmkl_core::{CoxeterGroup, CoxeterType, Elem, Exponent, GammaMode, Laurent, WeightFunction};

pub type TElt = BTreeMap<Elem, Laurent>;

fn add_into(h: &mut TElt, w: Elem, a: &Laurent) {
    let slot = h.entry(w).or_insert_with(Laurent::zero);
    *slot += a;
    if slot.is_zero() {
        h.remove(&w);
    }
}

/// A direct implementation of the T-basis multiplication.
pub struct MiniHecke<'g> {
    g: &'g CoxeterGroup,
    /// `v^{L(s)} − v^{−L(s)}`
    q: Vec<Laurent>,
    mode: GammaMode,
}

impl<'g> MiniHecke<'g> {
    pub fn new(g: &'g CoxeterGroup, w: &WeightFunction) -> Self {
        let q = w
            .values
            .iter()
            .map(|l| &Laurent::v_pow(l.clone()) - &Laurent::v_pow(-l))
            .collect();
        MiniHecke { g, q, mode: w.mode() }
    }

    /// `T_s · h`
    pub fn ts_left(&self, s: usize, h: &TElt) -> TElt {
        let mut out = TElt::new();
        for (&w, a) in h {
            let sw = self.g.left_mul(s, w);
            add_into(&mut out, sw, a);
            if self.g.length(sw) < self.g.length(w) {
                add_into(&mut out, w, &(a * &self.q[s]));
            }
        }
        out
    }

    pub fn multiply(&self, a: &TElt, b: &TElt) -> TElt {
        let mut out = TElt::new();
        for (&w, c) in a {
            let mut acc = b.clone();
            for &s in self.g.word(w).iter().rev() {
                acc = self.ts_left(s as usize, &acc);
            }
            for (y, d) in &acc {
                add_into(&mut out, *y, &(c * d));
            }
        }
        out
    }

    /// `i(T_w) = (T_{s_1} − q_{s_1}) ⋯ (T_{s_k} − q_{s_k})`
    fn bar_t(&self, w: Elem) -> TElt {
        let mut acc = TElt::from([(Elem::IDENTITY, Laurent::one(self.mode))]);
        for &s in self.g.word(w).iter().rev() {
            let mut next = self.ts_left(s as usize, &acc);
            for (y, a) in &acc {
                add_into(&mut next, *y, &-&(a * &self.q[s as usize]));
            }
            acc = next;
        }
        acc
    }

    pub fn bar(&self, h: &TElt) -> TElt {
        let mut out = TElt::new();
        for (&w, a) in h {
            for (y, b) in &self.bar_t(w) {
                add_into(&mut out, *y, &(&a.bar() * b));
            }
        }
        out
    }
}

/// `{y : y ≤ w}` in the Bruhat order, by the subword property.
pub fn bruhat_below(g: &CoxeterGroup, w: Elem) -> BTreeSet<Elem> {
    let mut set = BTreeSet::from([Elem::IDENTITY]);
    for &s in g.word(w) {
        let ext: Vec<Elem> = set.iter().map(|&x| g.right_mul(x, s as usize)).collect();
        set.extend(ext);
    }
    set
}

/// One-line notation of an element of `A_n = S_{n+1}`.
pub fn one_line(g: &CoxeterGroup, w: Elem) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..=g.rank()).collect();
    for &s in g.word(w) {
        perm.swap(s as usize, s as usize + 1);
    }
    perm
}

/// Robinson–Schensted insertion and recording tableaux.
pub fn robinson_schensted(seq: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in seq.iter().enumerate() {
        let mut x = x;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step]);
                break;
            }
            match p[row].iter().position(|&y| y > x) {
                Some(i) => {
                    std::mem::swap(&mut p[row][i], &mut x);
                    row += 1;
                }
                None => {
                    p[row].push(x);
                    q[row].push(step);
                    break;
                }
            }
        }
    }
    (p, q)
}

pub type Partition = BTreeSet<BTreeSet<Elem>>;

pub fn partition_by<K: Ord>(g: &CoxeterGroup, key: impl Fn(Elem) -> K) -> Partition {
    let mut m: BTreeMap<K, BTreeSet<Elem>> = BTreeMap::new();
    for w in g.elements() {
        m.entry(key(w)).or_default().insert(w);
    }
    m.into_values().collect()
}

pub fn as_partition(blocks: &[Vec<Elem>]) -> Partition {
    blocks.iter().map(|b| b.iter().copied().collect()).collect()
}

/// Cycle type of a permutation in one-line notation, decreasing.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule on beta-sets.
pub fn murnaghan_nakayama(lambda: &[usize], mu: &[usize]) -> i64 {
    let k = lambda.len();
    let beta: BTreeSet<usize> = lambda.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
    mn_beta(&beta, mu)
}

fn mn_beta(beta: &BTreeSet<usize>, mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.range(b - r + 1..b).count();
        let mut next = beta.clone();
        next.remove(&b);
        next.insert(b - r);
        let sign = if height.is_multiple_of(2) { 1 } else { -1 };
        total += sign * mn_beta(&next, rest);
    }
    total
}

/// The `(W, L)` instances used for the KL property checks: equal weights
/// everywhere and two unequal regimes where generators are not conjugate.
pub fn kl_instances() -> Vec<(String, CoxeterGroup, WeightFunction)> {
    let mut out = Vec::new();
    let mut push = |ty: CoxeterType, ws: Vec<WeightFunction>| {
        let g = CoxeterGroup::from_type(ty).unwrap();
        for w in ws {
            w.validate(&g).unwrap();
            let label = format!(
                "{ty} L=({})",
                w.values.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            );
            out.push((label, g.clone(), w));
        }
    };
    let r = |v: &[(i64, i64)]| WeightFunction::rational(v);
    push(CoxeterType::A(2), vec![r(&[(1, 1), (1, 1)])]);
    push(CoxeterType::A(3), vec![r(&[(1, 1), (1, 1), (1, 1)])]);
    push(
        CoxeterType::B(2),
        vec![r(&[(1, 1), (1, 1)]), r(&[(2, 1), (1, 1)]), r(&[(1, 1), (3, 1)])],
    );
    push(
        CoxeterType::B(3),
        vec![
            r(&[(1, 1), (1, 1), (1, 1)]),
            r(&[(3, 1), (1, 1), (1, 1)]),
            r(&[(1, 2), (1, 1), (1, 1)]),
        ],
    );
    for m in 3..=8u32 {
        let mut ws = vec![r(&[(1, 1), (1, 1)])];
        if m % 2 == 0 {
            ws.push(r(&[(3, 2), (1, 1)]));
            ws.push(r(&[(1, 1), (5, 1)]));
        }
        push(CoxeterType::I2(m), ws);
    }
    push(
        CoxeterType::B(2),
        vec![WeightFunction::new(vec![Exponent::unit(2, 0), Exponent::unit(2, 1)])],
    );
    out
}

/// A reproducible seed: `CMKL_SEED` if set, otherwise a fixed default.
pub fn seed() -> u64 {
    std::env::var("CMKL_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_c0de)
}

/// Checks `i(C_w) = C_w`, `C_w − T_w ∈ Σ Z[Γ<0] T_y` with `y < w` in the
/// Bruhat order, and the cached products `C_s C_w` against the oracle.
pub fn check_kl_table(g: &CoxeterGroup, table: &cmkl_core::KlTable) -> Result<(), String> {
    let h = MiniHecke::new(g, table.weights());
    for w in g.elements() {
        let c: TElt = table.c(w).as_map().clone();
        if h.bar(&c) != c {
            return Err(format!("C_{} is not bar-invariant", g.format_word(w)));
        }
        let below = bruhat_below(g, w);
        for (y, a) in &c {
            if *y == w {
                if !(a - &Laurent::one(table.weights().mode())).is_zero() {
                    return Err(format!("leading coefficient of C_{} is {a}", g.format_word(w)));
                }
            } else if !below.contains(y) {
                return Err(format!("T_{} in C_{} but not below it", g.format_word(*y), g.format_word(w)));
            } else if !a.is_strictly_negative() {
                return Err(format!("p_{{{},{}}} = {a} has a nonnegative exponent", g.format_word(*y), g.format_word(w)));
            }
        }
    }
    for s in 0..g.rank() {
        let cs = {
            let mut m = TElt::new();
            let one = Laurent::one(table.weights().mode());
            m.insert(g.generator(s), one);
            let l = table.weights().get(s);
            if !l.is_zero() {
                m.insert(Elem::IDENTITY, Laurent::v_pow(-l));
            }
            m
        };
        for w in g.elements() {
            let direct = h.multiply(&cs, table.c(w).as_map());
            if &direct != table.expand(table.product(s, w)).as_map() {
                return Err(format!("C_s C_w mismatch for s={s}, w={}", g.format_word(w)));
            }
        }
    }
    Ok(())
}

/// Compares the computed table of `A_n` with the Murnaghan–Nakayama rule,
/// classes matched through cycle types.
pub fn check_type_a_table(n: usize) -> Result<(), String> {
    let g = CoxeterGroup::from_type(CoxeterType::A(n)).unwrap();
    let t = cmkl_core::CharacterTable::compute(&g);
    let types: Vec<Vec<usize>> = (0..t.classes().len())
        .map(|j| cycle_type(&one_line(&g, cmkl_core::Elem(t.classes().representative(j) as u32))))
        .collect();
    let mut ours: Vec<Vec<i64>> = (0..t.num_characters())
        .map(|i| t.character(i).as_integers().ok_or("non-integral character of S_n".to_string()))
        .collect::<Result<_, _>>()?;
    let mut theirs: Vec<Vec<i64>> = partitions(n + 1)
        .iter()
        .map(|lambda| types.iter().map(|mu| murnaghan_nakayama(lambda, mu)).collect())
        .collect();
    ours.sort();
    theirs.sort();
    if ours == theirs {
        Ok(())
    } else {
        Err(format!("S{}: {ours:?} vs {theirs:?}", n + 1))
    }
}
