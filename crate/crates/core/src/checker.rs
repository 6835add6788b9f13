//! Call-graph completion and the lexicographic termination check.
//!
//! If `f` calls `g` with matrix `A` and `g` calls `h` with matrix `B`,
//! then `f` indirectly calls `h` with matrix `BA`. The completed graph
//! closes the edge set under this combination; iterating
//! `E := E ∪ (E ∘ base)` terminates because only finitely many matrices
//! of fixed dimensions exist. Termination of `f` is then judged from the
//! diagonals of all completed `f -> f` edges: the checker looks for an
//! order of parameter positions such that every recursive call strictly
//! decreases the first listed position it does not preserve.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::extract::{Call, FunId, FunctionInfo};
use crate::relations::{CallMatrix, Relation};

/// Composing two calls whose endpoints do not meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComposeMismatch;

impl fmt::Display for ComposeMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("calls do not share an intermediate function")
    }
}

/// `second` after `first`: combining `f -> g` with `g -> h` yields
/// `f -> h` carrying the matrix product `second * first`.
pub fn combine(second: &Call, first: &Call) -> Result<Call, ComposeMismatch> {
    if first.callee != second.caller {
        return Err(ComposeMismatch);
    }
    let matrix = second
        .matrix
        .multiply(&first.matrix)
        .map_err(|_| ComposeMismatch)?;
    let mut path = first.path.clone();
    path.extend_from_slice(&second.path[1..]);
    Ok(Call {
        caller: first.caller,
        callee: second.callee,
        matrix,
        path,
    })
}

type EdgeKey = (FunId, FunId, CallMatrix);

/// Multigraph of calls. Edges are identified by caller, callee and
/// matrix; inserting an existing key keeps the first-discovered path.
#[derive(Debug, Clone, Default)]
pub struct CallGraph {
    vertices: Vec<FunctionInfo>,
    edges: Vec<Call>,
    keys: BTreeSet<EdgeKey>,
}

impl CallGraph {
    /// `vertices[i].id` must be `FunId(i)`, as produced by extraction.
    pub fn new(vertices: Vec<FunctionInfo>, calls: impl IntoIterator<Item = Call>) -> Self {
        let mut graph = CallGraph {
            vertices,
            edges: Vec::new(),
            keys: BTreeSet::new(),
        };
        for call in calls {
            graph.insert(call);
        }
        graph
    }

    pub fn vertices(&self) -> &[FunctionInfo] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Call] {
        &self.edges
    }

    /// Returns false (and keeps the existing edge) when an edge with the
    /// same caller, callee and matrix is already present.
    pub fn insert(&mut self, call: Call) -> bool {
        let key = (call.caller, call.callee, call.matrix.clone());
        if !self.keys.insert(key) {
            return false;
        }
        self.edges.push(call);
        true
    }

    pub fn self_edges(&self, f: FunId) -> impl Iterator<Item = &Call> {
        self.edges
            .iter()
            .filter(move |c| c.caller == f && c.callee == f)
    }

    /// Smallest supergraph closed under call combination. Each round
    /// prepends a base edge to every call found so far; base edges are
    /// taken most recently extracted first, which fixes the reported
    /// path for combined calls that arise in the same round.
    pub fn complete(&self) -> CallGraph {
        let mut done = self.clone();
        let base: Vec<Call> = self.edges.clone();
        loop {
            let known = done.edges.len();
            for first in base.iter().rev() {
                for i in 0..known {
                    if done.edges[i].caller != first.callee {
                        continue;
                    }
                    let second = done.edges[i].clone();
                    let combined = combine(&second, first).expect("endpoints match");
                    done.insert(combined);
                }
            }
            if done.edges.len() == known {
                break;
            }
        }
        done
    }
}

/// One recursive call of a function: the diagonal of its matrix plus the
/// vertex path it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviourRow {
    pub diagonal: Vec<Relation>,
    pub path: Vec<FunId>,
}

/// Diagonals of all self-edges of one function in a completed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionBehaviour {
    pub function: FunId,
    pub rows: Vec<BehaviourRow>,
}

pub fn recursion_behaviour(graph: &CallGraph, f: FunId) -> RecursionBehaviour {
    let rows = graph
        .self_edges(f)
        .map(|call| BehaviourRow {
            diagonal: call.matrix.diagonal().expect("self edges are square"),
            path: call.path.clone(),
        })
        .collect();
    RecursionBehaviour { function: f, rows }
}

/// Parameter positions in descent order; positions not listed are
/// irrelevant for termination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminationOrder(pub Vec<usize>);

impl fmt::Display for TerminationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", idx)?;
        }
        Ok(())
    }
}

/// Searches for a lexicographic termination order over `rows`, each of
/// length `arity`. A column qualifies if some row decreases there and no
/// row is unknown there; the smallest qualifying column is chosen, rows
/// it decreases are discharged, and the search recurses on the rest.
/// Returns the chosen original positions, or `None` if rows remain but
/// no column qualifies.
pub fn find_termination_order(rows: &[Vec<Relation>], arity: usize) -> Option<TerminationOrder> {
    debug_assert!(rows.iter().all(|r| r.len() == arity));
    let mut rows: Vec<Vec<Relation>> = rows.to_vec();
    let mut columns: Vec<usize> = (0..arity).collect();
    let mut chosen = Vec::new();
    while !rows.is_empty() {
        let pick = columns.iter().position(|&j| {
            rows.iter().any(|r| r[j] == Relation::Less)
                && rows.iter().all(|r| r[j] != Relation::Unknown)
        })?;
        let column = columns.remove(pick);
        chosen.push(column);
        rows.retain(|r| r[column] != Relation::Less);
    }
    Some(TerminationOrder(chosen))
}

/// Direct reading of the declarative termination-order definition: under
/// the full permutation, every row must decrease at some position after
/// being preserved at all earlier ones. Serves as an independent oracle
/// for [`find_termination_order`].
pub fn verify_order_def1(rows: &[Vec<Relation>], permutation: &[usize]) -> bool {
    rows.iter().all(|row| {
        for &j in permutation {
            match row[j] {
                Relation::Less => return true,
                Relation::Equal => continue,
                Relation::Unknown => return false,
            }
        }
        false
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No self-edge in the completed graph.
    PassesNoRecursion,
    PassesWithOrder(TerminationOrder),
    Fails,
}

/// Judges one function of a completed graph.
pub fn check_function(graph: &CallGraph, f: FunId) -> Verdict {
    let behaviour = recursion_behaviour(graph, f);
    if behaviour.rows.is_empty() {
        return Verdict::PassesNoRecursion;
    }
    let arity = graph.vertices()[f.0].arity();
    let rows: Vec<Vec<Relation>> = behaviour.rows.iter().map(|r| r.diagonal.clone()).collect();
    match find_termination_order(&rows, arity) {
        Some(order) => Verdict::PassesWithOrder(order),
        None => Verdict::Fails,
    }
}
