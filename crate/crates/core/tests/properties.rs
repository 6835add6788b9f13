//! Property tests: algebraic laws of the relation rig and call matrices,
//! parser round trips, and graph completion checked against a brute-force
//! enumeration of base-edge products.

use std::collections::BTreeSet;
use std::rc::Rc;

use proptest::prelude::*;

use termite_core::checker::{find_termination_order, verify_order_def1, CallGraph};
use termite_core::extract::{Call, FunId, FunctionInfo};
use termite_core::relations::{CallMatrix, Relation};
use termite_core::syntax::{parse_program, tokenize, Branch, Pos, Statement, Term};

fn relation() -> impl Strategy<Value = Relation> {
    prop::sample::select(vec![Relation::Less, Relation::Equal, Relation::Unknown])
}

fn known_relation() -> impl Strategy<Value = Relation> {
    prop::sample::select(vec![Relation::Less, Relation::Equal])
}

/// A valid call matrix: per row at most one known entry.
fn call_matrix(rows: usize, cols: usize) -> impl Strategy<Value = CallMatrix> {
    let row = if cols == 0 {
        Just(None).boxed()
    } else {
        prop::option::of((0..cols, known_relation())).boxed()
    };
    prop::collection::vec(row, rows).prop_map(move |specs| {
        let mut entries = vec![Relation::Unknown; rows * cols];
        for (i, spec) in specs.iter().enumerate() {
            if let Some((j, r)) = spec {
                entries[i * cols + j] = *r;
            }
        }
        CallMatrix::new(rows, cols, entries).expect("rows have at most one known entry")
    })
}

proptest! {
    #[test]
    fn matrix_multiplication_associates(
        (a, b, c) in (0..=5usize, 0..=5usize, 0..=5usize, 0..=5usize)
            .prop_flat_map(|(n, m, l, k)| (call_matrix(n, m), call_matrix(m, l), call_matrix(l, k)))
    ) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_keep_at_most_one_known_entry_per_row(
        (a, b) in (0..=5usize, 0..=5usize, 0..=5usize)
            .prop_flat_map(|(n, m, l)| (call_matrix(n, m), call_matrix(m, l)))
    ) {
        let p = a.multiply(&b).unwrap();
        for i in 0..p.rows() {
            let known = p.row(i).iter().filter(|r| **r != Relation::Unknown).count();
            prop_assert!(known <= 1, "row {} of {} has {} known entries", i, p, known);
        }
    }
}

fn lower_name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "b", "x", "y", "x'", "k_1", "zed"]).prop_map(String::from)
}

fn upper_name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["A", "B", "S", "HD", "TL", "Cons"]).prop_map(String::from)
}

fn term_strategy() -> impl Strategy<Value = Rc<Term>> {
    let leaf = lower_name().prop_map(|n| Rc::new(Term::Var(n)));
    leaf.prop_recursive(4, 32, 4, |inner| {
        let branch = (upper_name(), lower_name(), inner.clone());
        let entry = (upper_name(), inner.clone());
        let binding = (lower_name(), inner.clone());
        prop_oneof![
            (lower_name(), inner.clone()).prop_map(|(p, b)| Rc::new(Term::Lam(p, b))),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Rc::new(Term::App(f, a))),
            (upper_name(), inner.clone()).prop_map(|(c, a)| Rc::new(Term::Con(c, a))),
            (inner.clone(), prop::collection::vec(branch, 1..3)).prop_map(|(s, raw)| {
                let mut seen = BTreeSet::new();
                let branches: Vec<Branch> = raw
                    .into_iter()
                    .filter(|(c, _, _)| seen.insert(c.clone()))
                    .map(|(con, binder, body)| Branch { con, binder, body })
                    .collect();
                Rc::new(Term::Case(s, branches))
            }),
            prop::collection::vec(entry, 0..3).prop_map(|raw| {
                let mut seen = BTreeSet::new();
                let entries: Vec<_> = raw
                    .into_iter()
                    .filter(|(l, _)| seen.insert(l.clone()))
                    .collect();
                Rc::new(Term::Tuple(entries))
            }),
            (inner.clone(), upper_name()).prop_map(|(t, l)| Rc::new(Term::Proj(t, l))),
            (prop::collection::vec(binding, 1..3), inner).prop_map(|(raw, body)| {
                let mut seen = BTreeSet::new();
                let bindings: Vec<_> = raw
                    .into_iter()
                    .filter(|(n, _)| seen.insert(n.clone()))
                    .collect();
                Rc::new(Term::Let(bindings, body))
            }),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(term in term_strategy()) {
        let src = format!("{};", term);
        let tokens = tokenize(&src).unwrap();
        let program = parse_program(&tokens).unwrap();
        match &program.statements[..] {
            [Statement::Evaluate(parsed)] => prop_assert_eq!(&term, parsed),
            other => prop_assert!(false, "unexpected program shape {:?}", other),
        }
    }
}

fn legal_source() -> impl Strategy<Value = String> {
    let fragment = prop_oneof![
        prop::sample::select(vec![
            "(", ")", "[", "]", "{", "}", "|", ".", ",", ";", "=", "=>", " ", "\n", "\t",
            "(* a comment *)", "(* nested (* comment *) x *)",
        ])
        .prop_map(String::from),
        lower_name(),
        upper_name(),
    ];
    prop::collection::vec(fragment, 0..40).prop_map(|v| v.concat())
}

proptest! {
    #[test]
    fn tokenize_is_total_on_legal_text(src in legal_source()) {
        prop_assert!(tokenize(&src).is_ok(), "failed on {:?}", src);
    }

    #[test]
    fn error_positions_point_into_the_source(src in "[ -~\n]{0,60}") {
        let lines: Vec<&str> = src.split('\n').collect();
        let in_range = |pos: Pos| {
            let line_ok = pos.line >= 1 && (pos.line as usize) <= lines.len().max(1);
            let col_ok = pos.col >= 1
                && lines
                    .get(pos.line as usize - 1)
                    .map_or(pos.col == 1, |l| (pos.col as usize) <= l.chars().count() + 1);
            line_ok && col_ok
        };
        match tokenize(&src) {
            Err(e) => prop_assert!(in_range(e.pos), "lex position {:?} outside {:?}", e.pos, src),
            Ok(tokens) => {
                if let Err(e) = parse_program(&tokens) {
                    prop_assert!(in_range(e.pos), "parse position {:?} outside {:?}", e.pos, src);
                }
            }
        }
    }
}

type RawRowSpec = Vec<Option<(usize, Relation)>>;

#[derive(Debug, Clone)]
struct RawGraph {
    arities: Vec<usize>,
    edges: Vec<(usize, usize, RawRowSpec)>,
}

fn raw_graph() -> impl Strategy<Value = RawGraph> {
    (1..=4usize).prop_flat_map(|n| {
        (
            prop::collection::vec(0..=3usize, n),
            prop::collection::vec(
                (
                    0..n,
                    0..n,
                    prop::collection::vec(prop::option::of((0..3usize, known_relation())), 3),
                ),
                1..=6,
            ),
        )
            .prop_map(|(arities, edges)| RawGraph { arities, edges })
    })
}

fn build_graph(raw: &RawGraph) -> CallGraph {
    let functions: Vec<FunctionInfo> = raw
        .arities
        .iter()
        .enumerate()
        .map(|(i, a)| FunctionInfo {
            id: FunId(i),
            name: format!("f{i}"),
            params: (0..*a).map(|k| format!("p{k}")).collect(),
            site: Pos::new(1, 1),
        })
        .collect();
    let mut calls = Vec::new();
    for (caller, callee, rowspec) in &raw.edges {
        let rows = raw.arities[*callee];
        let cols = raw.arities[*caller];
        let mut entries = vec![Relation::Unknown; rows * cols];
        for i in 0..rows {
            if let Some(Some((j, r))) = rowspec.get(i) {
                if cols > 0 {
                    entries[i * cols + j % cols] = *r;
                }
            }
        }
        calls.push(Call {
            caller: FunId(*caller),
            callee: FunId(*callee),
            matrix: CallMatrix::new(rows, cols, entries).unwrap(),
            path: vec![FunId(*caller), FunId(*callee)],
        });
    }
    CallGraph::new(functions, calls)
}

type Key = (FunId, FunId, CallMatrix);

/// Products of all base-edge paths, enumerated level by level; a level
/// that contributes no new key ends the search (any longer product
/// factors through an already-seen key).
fn bruteforce_products(base: &[Call]) -> BTreeSet<Key> {
    let mut all: BTreeSet<Key> = BTreeSet::new();
    let mut level: Vec<Key> = base
        .iter()
        .map(|c| (c.caller, c.callee, c.matrix.clone()))
        .collect();
    loop {
        let mut grew = false;
        for key in &level {
            if all.insert(key.clone()) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
        let mut next: BTreeSet<Key> = BTreeSet::new();
        for (caller, mid, product) in &level {
            for edge in base.iter().filter(|e| e.caller == *mid) {
                next.insert((
                    *caller,
                    edge.callee,
                    edge.matrix.multiply(product).unwrap(),
                ));
            }
        }
        level = next.into_iter().collect();
    }
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn completion_matches_bruteforce_products(raw in raw_graph()) {
        let graph = build_graph(&raw);
        let done = graph.complete();
        let completed: BTreeSet<Key> = done
            .edges()
            .iter()
            .map(|c| (c.caller, c.callee, c.matrix.clone()))
            .collect();
        prop_assert_eq!(completed, bruteforce_products(graph.edges()));
    }

    #[test]
    fn completion_is_idempotent(raw in raw_graph()) {
        let done = build_graph(&raw).complete();
        let again = done.complete();
        prop_assert_eq!(done.edges().len(), again.edges().len());
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for at in 0..=rest.len() {
            let mut pi = rest.clone();
            pi.insert(at, n - 1);
            out.push(pi);
        }
    }
    out
}

fn behaviour_strategy() -> impl Strategy<Value = (Vec<Vec<Relation>>, usize)> {
    (1..=4usize).prop_flat_map(|arity| {
        (
            prop::collection::vec(prop::collection::vec(relation(), arity), 0..=4),
            Just(arity),
        )
    })
}

proptest! {
    #[test]
    fn found_orders_extend_to_declarative_orders((rows, arity) in behaviour_strategy()) {
        if let Some(order) = find_termination_order(&rows, arity) {
            let mut pi = order.0.clone();
            for j in 0..arity {
                if !pi.contains(&j) {
                    pi.push(j);
                }
            }
            prop_assert!(verify_order_def1(&rows, &pi), "order {:?} fails on {:?}", pi, rows);
        }
    }

    #[test]
    fn search_succeeds_exactly_when_a_declarative_order_exists((rows, arity) in behaviour_strategy()) {
        let found = find_termination_order(&rows, arity).is_some();
        let exists = permutations(arity).iter().any(|pi| verify_order_def1(&rows, pi));
        prop_assert_eq!(found, exists, "behaviour {:?}", rows);
    }

    #[test]
    fn an_all_equal_row_cannot_create_an_order((rows, arity) in behaviour_strategy()) {
        if find_termination_order(&rows, arity).is_none() {
            let mut more = rows.clone();
            more.push(vec![Relation::Equal; arity]);
            prop_assert!(find_termination_order(&more, arity).is_none());
        }
    }
}
