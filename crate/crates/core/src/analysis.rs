//! The full cell pipeline for one `(W, L)`: KL cells of every kind, the
//! character table and the left-cell characters, with the structural checks
//! that must hold for any output.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cells::{
    cells, check_refinement, left_cell_character, left_preorder, CellCharacter, CellError, CellKind,
    CellPartition, RefinementViolation,
};
use crate::characters::{CharacterTable, ClassFunction};
use crate::coxeter::{CoxeterGroup, Elem, WeightFunction};
use crate::hecke::KlTable;
use crate::ordered::{render_rational, Exponent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Refinement(#[from] RefinementViolation),
    #[error("the left-cell characters do not sum to the regular character")]
    RegularSum,
}

#[derive(Debug, Clone)]
pub struct CellAnalysis {
    pub left: CellPartition,
    pub right: CellPartition,
    pub two_sided: CellPartition,
    pub characters: CharacterTable,
    pub cell_characters: Vec<CellCharacter>,
}

pub fn analyze(group: &CoxeterGroup, table: &KlTable) -> Result<CellAnalysis, AnalysisError> {
    let graph = left_preorder(table);
    let left = cells(group, &graph, CellKind::Left);
    let right = cells(group, &graph, CellKind::Right);
    let two_sided = cells(group, &graph, CellKind::TwoSided);
    check_refinement(&left, &two_sided)?;
    check_refinement(&right, &two_sided)?;

    let characters = CharacterTable::compute(group);
    let cell_characters = (0..left.len())
        .map(|b| left_cell_character(group, table, &left, b, &characters))
        .collect::<Result<Vec<_>, _>>()?;

    let mut sum = vec![0i64; characters.classes().len()];
    for ch in &cell_characters {
        for (acc, x) in sum.iter_mut().zip(&ch.values) {
            *acc += x;
        }
    }
    let sum = ClassFunction::from_ints(&characters.field(), &sum);
    if sum != characters.regular_character() {
        return Err(AnalysisError::RegularSum);
    }
    Ok(CellAnalysis {
        left,
        right,
        two_sided,
        characters,
        cell_characters,
    })
}

pub fn render_exponent(e: &Exponent) -> String {
    match e {
        Exponent::Rational(q) => render_rational(q),
        Exponent::Lex(_) => e.to_string(),
    }
}

/// `{"s": "1", "t": "1/2"}` keyed by generator name.
pub fn weights_json(group: &CoxeterGroup, weights: &WeightFunction) -> Value {
    let map: Map<String, Value> = group
        .generator_names()
        .iter()
        .zip(&weights.values)
        .map(|(n, e)| (n.clone(), Value::from(render_exponent(e))))
        .collect();
    Value::Object(map)
}

fn partition_json(group: &CoxeterGroup, p: &CellPartition) -> Value {
    json!({
        "cells": p.blocks.iter()
            .map(|b| b.iter().map(|&w| group.format_word(w)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "order": p.hasse.iter().map(|&(lo, hi)| [lo, hi]).collect::<Vec<_>>(),
    })
}

fn header(group: &CoxeterGroup, weights: &WeightFunction) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("generators".into(), json!(group.generator_names()));
    m.insert("coxeter_matrix".into(), json!(group.matrix().entries()));
    m.insert("order".into(), json!(group.len()));
    m.insert("mode".into(), json!(weights.mode().to_string()));
    m.insert("weights".into(), weights_json(group, weights));
    m
}

impl CellAnalysis {
    /// Cells of every kind (`order` lists covering pairs `[lower, upper]` of
    /// block indices) and the left-cell characters.
    pub fn to_json(&self, group: &CoxeterGroup, weights: &WeightFunction) -> Value {
        let mut m = header(group, weights);
        m.insert("left".into(), partition_json(group, &self.left));
        m.insert("right".into(), partition_json(group, &self.right));
        m.insert("two_sided".into(), partition_json(group, &self.two_sided));
        m.insert(
            "character_degrees".into(),
            json!(self.characters.degrees()),
        );
        m.insert(
            "cell_characters".into(),
            Value::Array(
                self.cell_characters
                    .iter()
                    .map(|c| {
                        json!({
                            "cell": c.block,
                            "values": c.values,
                            "multiplicities": c.multiplicities,
                        })
                    })
                    .collect(),
            ),
        );
        Value::Object(m)
    }
}

/// `C_w = Σ_y p_{y,w} T_y` for every `w`, keyed by reduced words.
pub fn kl_basis_json(group: &CoxeterGroup, table: &KlTable) -> Value {
    let mut m = header(group, table.weights());
    let basis: Vec<Value> = group
        .elements()
        .map(|w| {
            let terms: Vec<Value> = table
                .c(w)
                .iter()
                .map(|(y, a)| json!([group.format_word(y), a.to_string()]))
                .collect();
            json!({ "w": group.format_word(w), "terms": terms })
        })
        .collect();
    m.insert("basis".into(), Value::Array(basis));
    Value::Object(m)
}

pub fn characters_json(group: &CoxeterGroup, table: &CharacterTable) -> Value {
    let mut v = table.to_json(|g| group.format_word(Elem(g as u32)));
    v["generators"] = json!(group.generator_names());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterType;
    use crate::hecke::Hecke;

    #[test]
    fn b2_equal_weights() {
        let g = CoxeterGroup::from_type(CoxeterType::B(2)).unwrap();
        let w = WeightFunction::rational(&[(1, 1), (1, 1)]);
        let t = Hecke::new(&g, w.clone()).kl_basis();
        let a = analyze(&g, &t).unwrap();
        assert_eq!(a.left.len(), 4);
        assert_eq!(a.two_sided.sizes(), vec![1, 6, 1]);
        let j = a.to_json(&g, &w);
        assert_eq!(j["weights"], json!({"s": "1", "t": "1"}));
        assert_eq!(j["left"]["cells"][0], json!(["e"]));
    }

    #[test]
    fn kl_json_lists_every_element() {
        let g = CoxeterGroup::from_type(CoxeterType::A(2)).unwrap();
        let t = Hecke::new(&g, WeightFunction::rational(&[(1, 1), (1, 1)])).kl_basis();
        let j = kl_basis_json(&g, &t);
        assert_eq!(j["basis"].as_array().unwrap().len(), 6);
        assert_eq!(j["basis"][1]["terms"], json!([["e", "1*v^(-1)"], ["s", "1*v^(0)"]]));
    }
}
