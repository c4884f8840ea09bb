//! Left, right and two-sided Kazhdan–Lusztig cells, the order on cells, and
//! left-cell characters.
//!
//! Edge convention: `w → y` whenever `C_y` occurs in some `C_s · C_w`, so
//! `y ≤_L w`. Cells are the strongly connected components.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use rayon::prelude::*;
use thiserror::Error;

use crate::characters::{CharacterTable, ClassFunction};
use crate::coxeter::{CoxeterGroup, Elem};
use crate::hecke::KlTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("cell character of block {block} has a non-integral or negative multiplicity")]
    NonIntegerMultiplicity { block: usize },
    #[error("block {0} is not a block of a left-cell partition")]
    NotALeftCell(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Left,
    Right,
    TwoSided,
}

impl CellKind {
    pub fn name(self) -> &'static str {
        match self {
            CellKind::Left => "left",
            CellKind::Right => "right",
            CellKind::TwoSided => "two-sided",
        }
    }
}

/// The generating relation of `≤_L` as an adjacency list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreorderGraph {
    edges: Vec<Vec<Elem>>,
}

impl PreorderGraph {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn successors(&self, w: Elem) -> &[Elem] {
        &self.edges[w.index()]
    }

    pub fn has_edge(&self, from: Elem, to: Elem) -> bool {
        self.edges[from.index()].binary_search(&to).is_ok()
    }

    /// The relation transported along `w ↦ w^{-1}`.
    pub fn inverted(&self, group: &CoxeterGroup) -> PreorderGraph {
        let mut edges = vec![Vec::new(); self.len()];
        for (w, succ) in self.edges.iter().enumerate() {
            let wi = group.inverse(Elem(w as u32));
            edges[wi.index()].extend(succ.iter().map(|&y| group.inverse(y)));
        }
        for e in edges.iter_mut() {
            e.sort_unstable();
            e.dedup();
        }
        PreorderGraph { edges }
    }

    pub fn union(&self, other: &PreorderGraph) -> PreorderGraph {
        let edges = self
            .edges
            .iter()
            .zip(&other.edges)
            .map(|(a, b)| {
                let mut e: Vec<Elem> = a.iter().chain(b).copied().collect();
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        PreorderGraph { edges }
    }
}

pub fn left_preorder(table: &KlTable) -> PreorderGraph {
    let edges = (0..table.len())
        .into_par_iter()
        .map(|w| {
            let mut succ: Vec<Elem> = (0..table.rank())
                .flat_map(|s| table.product(s, Elem(w as u32)).support())
                .collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect();
    PreorderGraph { edges }
}

/// A partition of `W` into cells with the induced order on blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPartition {
    pub kind: CellKind,
    /// Each block sorted; blocks sorted by their least element.
    pub blocks: Vec<Vec<Elem>>,
    block_of: Vec<usize>,
    /// Covering relations `(lower, upper)` of the block order.
    pub hasse: Vec<(usize, usize)>,
}

impl CellPartition {
    /// Strongly connected components of `graph`, with the condensed order.
    pub fn from_graph(graph: &PreorderGraph, kind: CellKind) -> Self {
        let n = graph.len();
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
        let nodes: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
        for (w, succ) in graph.edges.iter().enumerate() {
            for y in succ {
                g.add_edge(nodes[w], nodes[y.index()], ());
            }
        }
        let blocks: Vec<Vec<Elem>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| c.into_iter().map(|i| Elem(i.index() as u32)).collect())
            .collect();
        let mut part = Self::from_blocks(kind, blocks);

        let k = part.blocks.len();
        let mut succ = vec![Vec::new(); k];
        for (w, ys) in graph.edges.iter().enumerate() {
            let bw = part.block_of[w];
            for y in ys {
                let by = part.block_of[y.index()];
                if by != bw {
                    succ[bw].push(by);
                }
            }
        }
        for s in succ.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        part.hasse = hasse_from_dag(&succ);
        part
    }

    /// Builds a canonical partition from arbitrary blocks; no order.
    pub fn from_blocks(kind: CellKind, blocks: Vec<Vec<Elem>>) -> Self {
        let mut blocks: Vec<Vec<Elem>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let n = blocks.iter().map(Vec::len).sum();
        let mut block_of = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for w in b {
                block_of[w.index()] = i;
            }
        }
        CellPartition {
            kind,
            blocks,
            block_of,
            hasse: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, w: Elem) -> usize {
        self.block_of[w.index()]
    }

    pub fn block(&self, i: usize) -> &[Elem] {
        &self.blocks[i]
    }

    /// Block sizes in block order.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// The same partition with every element replaced by its inverse.
    pub fn inverted(&self, group: &CoxeterGroup, kind: CellKind) -> CellPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&w| group.inverse(w)).collect())
            .collect();
        CellPartition::from_blocks(kind, blocks)
    }

    /// Whether two partitions have the same blocks, ignoring kind and order.
    pub fn same_blocks(&self, other: &CellPartition) -> bool {
        self.blocks == other.blocks
    }
}

/// Transitive reduction of a DAG given by successor lists (`u → v` means
/// `v` below `u`); returns `(lower, upper)` pairs.
fn hasse_from_dag(succ: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let k = succ.len();
    // reach[u] = all nodes strictly reachable from u
    let mut reach = vec![vec![false; k]; k];
    for u in 0..k {
        let mut stack: Vec<usize> = succ[u].clone();
        while let Some(v) = stack.pop() {
            if !reach[u][v] {
                reach[u][v] = true;
                stack.extend(&succ[v]);
            }
        }
    }
    let mut out = Vec::new();
    for u in 0..k {
        for &v in &succ[u] {
            let covered = succ[u].iter().any(|&m| m != v && reach[m][v]);
            if !covered {
                out.push((v, u));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Left, right or two-sided cells from the left preorder graph.
pub fn cells(group: &CoxeterGroup, left: &PreorderGraph, kind: CellKind) -> CellPartition {
    match kind {
        CellKind::Left => CellPartition::from_graph(left, kind),
        CellKind::Right => CellPartition::from_graph(&left.inverted(group), kind),
        CellKind::TwoSided => CellPartition::from_graph(&left.union(&left.inverted(group)), kind),
    }
}

/// Returns the first left block not contained in a single two-sided block.
pub fn check_refinement(left: &CellPartition, two_sided: &CellPartition) -> Result<(), RefinementViolation> {
    for (i, block) in left.blocks.iter().enumerate() {
        let target = two_sided.block_of(block[0]);
        if let Some(&w) = block.iter().find(|&&w| two_sided.block_of(w) != target) {
            return Err(RefinementViolation {
                left_block: i,
                first: block[0],
                stray: w,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("left block {left_block} is split across two-sided cells ({first:?} vs {stray:?})")]
pub struct RefinementViolation {
    pub left_block: usize,
    pub first: Elem,
    pub stray: Elem,
}

/// The character of a left-cell module and its decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCharacter {
    pub block: usize,
    /// One value per conjugacy class of the character table.
    pub values: Vec<i64>,
    pub multiplicities: Vec<u64>,
}

/// Integer matrices of the generators on the specialized cell module.
///
/// The quotient module has basis `{C_w : w ∈ Γ}`; `C_s` acts through the
/// cached structure constants with terms outside `Γ` dropped. At `v = 1` the
/// generator `T_s` is sent to `−s`, so the cell of the identity affords the
/// unit representation and the cell of `w_0` the sign representation.
pub fn cell_module_matrices(
    group: &CoxeterGroup,
    table: &KlTable,
    partition: &CellPartition,
    block: usize,
) -> Vec<Vec<Vec<i64>>> {
    let cell = partition.block(block);
    let pos = |w: Elem| cell.binary_search(&w).ok();
    (0..group.rank())
        .map(|s| {
            let shift = if table.weights().get(s).is_zero() { 0 } else { 1 };
            let dim = cell.len();
            let mut m = vec![vec![0i64; dim]; dim];
            for (j, &w) in cell.iter().enumerate() {
                for (y, a) in table.product(s, w).iter() {
                    if let Some(i) = pos(y) {
                        m[i][j] += a.evaluate_at_one();
                    }
                }
                m[j][j] -= shift;
            }
            // T_s ↦ −s
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
            m
        })
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

/// Character values of a left cell on the class representatives of `chars`,
/// decomposed into irreducibles.
pub fn left_cell_character(
    group: &CoxeterGroup,
    table: &KlTable,
    partition: &CellPartition,
    block: usize,
    chars: &CharacterTable,
) -> Result<CellCharacter, CellError> {
    if partition.kind != CellKind::Left || block >= partition.len() {
        return Err(CellError::NotALeftCell(block));
    }
    let mats = cell_module_matrices(group, table, partition, block);
    let dim = partition.block(block).len();
    let classes = chars.classes();
    let values: Vec<i64> = (0..classes.len())
        .map(|j| {
            let rep = Elem(classes.representative(j) as u32);
            let mut acc: Vec<Vec<i64>> = (0..dim)
                .map(|i| (0..dim).map(|k| (i == k) as i64).collect())
                .collect();
            for &s in group.word(rep) {
                acc = mat_mul(&acc, &mats[s as usize]);
            }
            (0..dim).map(|i| acc[i][i]).sum()
        })
        .collect();
    let f = ClassFunction::from_ints(&chars.field(), &values);
    let decomposition = chars.decompose(&f);
    let multiplicities = decomposition
        .as_counts()
        .ok_or(CellError::NonIntegerMultiplicity { block })?;
    Ok(CellCharacter {
        block,
        values,
        multiplicities,
    })
}
