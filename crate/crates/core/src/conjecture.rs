//! Comparison of Calogero–Moser and Kazhdan–Lusztig cells where both sides
//! are computable (`μ_2 ≅ A_1`), and KL-side reports across the parameter
//! regimes of `B_2`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::analysis::{analyze, AnalysisError, CellAnalysis};
use crate::cache::{cache_key, CacheError, KlCache};
use crate::cells::{check_refinement, CellPartition};
use crate::cherednik::{cm_multiplicities, element_name, inertia_and_cells, CmCellData, Rank1Params};
use crate::coxeter::{CoxeterGroup, CoxeterType, Elem, WeightFunction};
use crate::ordered::{render_rational, Exponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: &'static str,
    pub verdict: Verdict,
    /// The first CM cell, as words, for which the sides disagree.
    pub offending_block: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Comparison {
    pub c: BigRational,
    pub cm_cells: Vec<Vec<String>>,
    pub kl_left_cells: Vec<Vec<String>>,
    pub kl_two_sided_cells: Vec<Vec<String>>,
    /// `Σ_E m_Γ(E)·E` on the classes of `A_1`, one row per CM cell.
    pub cm_characters: Vec<Vec<i64>>,
    /// Left-cell character of the KL cell matched to each CM cell.
    pub kl_characters: Vec<Option<Vec<i64>>>,
    pub components: Vec<Component>,
}

impl Rank1Comparison {
    pub fn verdict(&self) -> Verdict {
        if self.components.iter().all(|c| c.verdict == Verdict::Match) {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "rank1_vs_A1",
            "c": render_rational(&self.c),
            "verdict": self.verdict().to_string(),
            "cm_cells": self.cm_cells,
            "kl_left_cells": self.kl_left_cells,
            "kl_two_sided_cells": self.kl_two_sided_cells,
            "cm_characters": self.cm_characters,
            "kl_characters": self.kl_characters,
            "components": self.components.iter().map(|c| json!({
                "name": c.name,
                "verdict": c.verdict.to_string(),
                "offending_block": c.offending_block,
            })).collect::<Vec<_>>(),
        })
    }
}

fn a1(c: &BigRational) -> (CoxeterGroup, WeightFunction) {
    let group = CoxeterGroup::from_type(CoxeterType::A(1)).expect("A1");
    (group, WeightFunction::new(vec![Exponent::Rational(c.clone())]))
}

/// `s^j ↦ e` for `j = 0` and `s` for `j = 1`.
fn identify(j: usize) -> Elem {
    Elem(j as u32)
}

fn elem_set(block: &[usize]) -> BTreeSet<Elem> {
    block.iter().map(|&j| identify(j)).collect()
}

fn compare_partition(
    name: &'static str,
    cm: &CmCellData,
    kl: &CellPartition,
) -> Component {
    let kl_blocks: BTreeSet<BTreeSet<Elem>> = kl.blocks.iter().map(|b| b.iter().copied().collect()).collect();
    let offending = cm.cells.iter().find(|b| !kl_blocks.contains(&elem_set(b)));
    let covered: usize = cm.cells.iter().map(Vec::len).sum();
    let total: usize = kl.blocks.iter().map(Vec::len).sum();
    let verdict = if offending.is_none() && cm.cells.len() == kl.len() && covered == total {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    Component {
        name,
        verdict,
        offending_block: offending.map(|b| b.iter().map(|&j| element_name(j)).collect()),
    }
}

/// Compares precomputed CM data for `d = 2` with the KL side of `A_1`.
pub fn compare_rank1(cm: &CmCellData, group: &CoxeterGroup, kl: &CellAnalysis) -> Rank1Comparison {
    assert_eq!(cm.params.d(), 2, "the comparison is defined for d = 2");
    let classes = kl.characters.classes();
    let mult = cm_multiplicities(cm);
    // det^j(s^k) = (−1)^{jk}, evaluated at the class representative s^k
    let cm_characters: Vec<Vec<i64>> = mult
        .iter()
        .map(|row| {
            (0..classes.len())
                .map(|cl| {
                    let k = classes.representative(cl);
                    row.iter()
                        .enumerate()
                        .map(|(j, &m)| m as i64 * if (j * k).is_multiple_of(2) { 1 } else { -1 })
                        .sum()
                })
                .collect()
        })
        .collect();
    let kl_characters: Vec<Option<Vec<i64>>> = cm
        .cells
        .iter()
        .map(|b| {
            let target = elem_set(b);
            kl.left
                .blocks
                .iter()
                .position(|kb| kb.iter().copied().collect::<BTreeSet<_>>() == target)
                .map(|i| kl.cell_characters[i].values.clone())
        })
        .collect();
    let char_offending = cm
        .cells
        .iter()
        .zip(&cm_characters)
        .zip(&kl_characters)
        .find(|((_, cmc), klc)| klc.as_ref() != Some(*cmc))
        .map(|((b, _), _)| b.iter().map(|&j| element_name(j)).collect::<Vec<_>>());
    let characters = Component {
        name: "characters",
        verdict: if char_offending.is_none() { Verdict::Match } else { Verdict::Mismatch },
        offending_block: char_offending,
    };
    let words = |p: &CellPartition| -> Vec<Vec<String>> {
        p.blocks
            .iter()
            .map(|b| b.iter().map(|&w| group.format_word(w)).collect())
            .collect()
    };
    let c = cm.params.c()[0]
        .as_rational()
        .expect("rank-1 comparison uses rational c");
    Rank1Comparison {
        c,
        cm_cells: cm
            .cells
            .iter()
            .map(|b| b.iter().map(|&j| element_name(j)).collect())
            .collect(),
        kl_left_cells: words(&kl.left),
        kl_two_sided_cells: words(&kl.two_sided),
        cm_characters,
        kl_characters,
        components: vec![
            compare_partition("left_cells", cm, &kl.left),
            compare_partition("two_sided_cells", cm, &kl.two_sided),
            characters,
        ],
    }
}

/// Both pipelines at `d = 2` with parameter `c`, matched under `1 ↔ e`, `s ↔ s`.
pub fn check_rank1_vs_a1(c: &BigRational, cache: &KlCache) -> Result<Rank1Comparison, ConjectureError> {
    if c.is_negative() {
        return Err(ConjectureError::NegativeParameter);
    }
    let params = Rank1Params::from_rational_c(2, std::slice::from_ref(c)).expect("d = 2 is valid");
    let cm = inertia_and_cells(&params);
    let (group, weights) = a1(c);
    let (table, _) = cache.get_or_compute(&group, &weights)?;
    let kl = analyze(&group, &table)?;
    Ok(compare_rank1(&cm, &group, &kl))
}

#[derive(Debug, thiserror::Error)]
pub enum ConjectureError {
    #[error("parameters must be nonnegative")]
    NegativeParameter,
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("snapshot i/o: {0}")]
    Io(#[from] io::Error),
}

/// The parameter regimes of `B_2` with `a = L(s)`, `b = L(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    BelowA,
    Equal,
    Between,
    Double,
    AboveDouble,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::BelowA,
        Regime::Equal,
        Regime::Between,
        Regime::Double,
        Regime::AboveDouble,
    ];

    pub fn classify(a: &BigRational, b: &BigRational) -> Regime {
        let two_a = a + a;
        match (b.cmp(a), b.cmp(&two_a)) {
            (Ordering::Less, _) => Regime::BelowA,
            (Ordering::Equal, _) => Regime::Equal,
            (_, Ordering::Less) => Regime::Between,
            (_, Ordering::Equal) => Regime::Double,
            _ => Regime::AboveDouble,
        }
    }

    pub fn is_open(self) -> bool {
        matches!(self, Regime::BelowA | Regime::Between | Regime::AboveDouble)
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::BelowA => "b<a",
            Regime::Equal => "b=a",
            Regime::Between => "a<b<2a",
            Regime::Double => "b=2a",
            Regime::AboveDouble => "b>2a",
        }
    }

    /// Fixed sample points `(a, b)`, three per regime.
    pub fn samples(self) -> Vec<(BigRational, BigRational)> {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let pts = match self {
            Regime::BelowA => [(1, 1, 1, 2), (1, 1, 1, 3), (3, 1, 2, 1)],
            Regime::Equal => [(1, 1, 1, 1), (2, 1, 2, 1), (1, 2, 1, 2)],
            Regime::Between => [(1, 1, 3, 2), (2, 1, 3, 1), (1, 1, 5, 4)],
            Regime::Double => [(1, 1, 2, 1), (1, 2, 1, 1), (3, 1, 6, 1)],
            Regime::AboveDouble => [(1, 1, 3, 1), (1, 1, 5, 2), (2, 1, 7, 1)],
        };
        pts.iter().map(|&(an, ad, bn, bd)| (r(an, ad), r(bn, bd))).collect()
    }
}

#[derive(Debug, Clone)]
pub struct B2Report {
    pub a: BigRational,
    pub b: BigRational,
    pub regime: Regime,
    pub key: String,
    pub group: CoxeterGroup,
    pub weights: WeightFunction,
    pub analysis: CellAnalysis,
}

impl B2Report {
    /// Left cells as sets of reduced words, for comparing partitions.
    pub fn left_partition(&self) -> BTreeSet<BTreeSet<String>> {
        words_partition(&self.group, &self.analysis.left)
    }

    pub fn two_sided_partition(&self) -> BTreeSet<BTreeSet<String>> {
        words_partition(&self.group, &self.analysis.two_sided)
    }

    pub fn refinement_holds(&self) -> bool {
        check_refinement(&self.analysis.left, &self.analysis.two_sided).is_ok()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "B2_regime",
            "a": render_rational(&self.a),
            "b": render_rational(&self.b),
            "regime": self.regime.name(),
            "key": self.key,
            "cells": self.analysis.to_json(&self.group, &self.weights),
        })
    }
}

fn words_partition(group: &CoxeterGroup, p: &CellPartition) -> BTreeSet<BTreeSet<String>> {
    p.blocks
        .iter()
        .map(|b| b.iter().map(|&w| group.format_word(w)).collect())
        .collect()
}

pub fn b2_regime_report(a: &BigRational, b: &BigRational, cache: &KlCache) -> Result<B2Report, ConjectureError> {
    if !a.is_positive() || !b.is_positive() {
        return Err(ConjectureError::NegativeParameter);
    }
    let group = CoxeterGroup::from_type(CoxeterType::B(2)).expect("B2");
    let weights = WeightFunction::new(vec![Exponent::Rational(a.clone()), Exponent::Rational(b.clone())]);
    let (table, _) = cache.get_or_compute(&group, &weights)?;
    let analysis = analyze(&group, &table)?;
    Ok(B2Report {
        a: a.clone(),
        b: b.clone(),
        regime: Regime::classify(a, b),
        key: cache_key(&group, &weights),
        group,
        weights,
        analysis,
    })
}

pub enum ReportEntry {
    Rank1(Rank1Comparison),
    B2(Box<B2Report>),
}

/// One document for a batch of results; keys are emitted in sorted order.
pub fn emit_report(results: &[ReportEntry]) -> Value {
    let mut matched = 0;
    let mut mismatched = 0;
    let entries: Vec<Value> = results
        .iter()
        .map(|r| match r {
            ReportEntry::Rank1(c) => {
                match c.verdict() {
                    Verdict::Match => matched += 1,
                    Verdict::Mismatch => mismatched += 1,
                }
                c.to_json()
            }
            ReportEntry::B2(b) => b.to_json(),
        })
        .collect();
    let verdict = if mismatched > 0 { Verdict::Mismatch } else { Verdict::Match };
    json!({
        "results": entries,
        "summary": {
            "total": results.len(),
            "match": matched,
            "mismatch": mismatched,
            "verdict": verdict.to_string(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnapshotOutcome {
    Created,
    Matched,
    Changed { path: PathBuf },
}

/// JSON snapshots named `<key>.json`. A snapshot that differs from the
/// fresh document is reported and left untouched unless `update` is set.
pub struct SnapshotStore {
    dir: PathBuf,
    update: bool,
}

impl SnapshotStore {
    pub fn new(dir: impl Into<PathBuf>, update: bool) -> Self {
        SnapshotStore {
            dir: dir.into(),
            update,
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn check(&self, key: &str, doc: &Value) -> Result<SnapshotOutcome, io::Error> {
        fs::create_dir_all(&self.dir)?;
        let path = self.dir.join(format!("{key}.json"));
        let text = serde_json::to_string_pretty(doc).expect("json") + "\n";
        match fs::read_to_string(&path) {
            Ok(old) if old == text => Ok(SnapshotOutcome::Matched),
            Ok(_) if !self.update => Ok(SnapshotOutcome::Changed { path }),
            Ok(_) => {
                fs::write(&path, text)?;
                Ok(SnapshotOutcome::Created)
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                fs::write(&path, text)?;
                Ok(SnapshotOutcome::Created)
            }
            Err(e) => Err(e),
        }
    }
}
