//! Function discovery and call extraction.
//!
//! Every top-level or `let` binding becomes a call-graph vertex whose
//! arity is its number of leading lambdas. Walking a function body, each
//! application spine whose head resolves to a known function yields one
//! call, with a matrix row per argument of the callee relating it to the
//! parameters of the (innermost) enclosing function:
//!
//! - a pattern binder is strictly below whatever the scrutinee was
//!   related to,
//! - a projection is as large as the tuple it projects from,
//! - applying a tracked function variable preserves its relation,
//! - everything else (constructors, tuples, unresolved heads) is unknown.
//!
//! Unknown entries are safe: they can only prevent a termination proof,
//! never fabricate one.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::relations::{CallMatrix, Relation};
use crate::syntax::{Name, Pos, Program, Statement, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionInfo {
    /// Index into the function list; doubles as declaration order.
    pub id: FunId,
    /// Source name. Distinct vertices may share one when scopes shadow.
    pub name: Name,
    pub params: Vec<Name>,
    pub site: Pos,
}

impl FunctionInfo {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Call {
    pub caller: FunId,
    pub callee: FunId,
    /// callee-arity rows by caller-arity columns.
    pub matrix: CallMatrix,
    /// Vertices from caller to callee; two entries for a direct call.
    pub path: Vec<FunId>,
}

#[derive(Debug, Clone, Default)]
pub struct Extraction {
    pub functions: Vec<FunctionInfo>,
    pub calls: Vec<Call>,
}

/// Extracts all functions and calls of a program.
pub fn extract_calls(program: &Program) -> Extraction {
    let mut extractor = Extractor::new();
    for stmt in &program.statements {
        extractor.add_statement(stmt);
    }
    extractor.into_extraction()
}

#[derive(Debug, Clone)]
enum Binding {
    /// A variable with a known relation vector, valid only within the
    /// analysis frame that introduced it.
    Tracked { frame: usize, vector: Vec<Relation> },
    /// A name bound by a definition or `let`: a call-graph vertex.
    Func(FunId),
}

#[derive(Debug, Clone)]
struct ScopeEntry {
    name: Name,
    binding: Binding,
}

/// Position-independent context of the function body being walked.
#[derive(Debug, Clone, Copy)]
struct Ctx {
    /// Calls found outside any named function are dropped.
    fun: Option<FunId>,
    arity: usize,
    /// Identifies which tracked bindings belong to this function; tracked
    /// bindings of enclosing functions read as all-unknown.
    frame: usize,
    site: Pos,
}

/// Incremental extraction, one statement at a time, with earlier
/// definitions staying in scope.
#[derive(Debug, Default)]
pub struct Extractor {
    functions: Vec<FunctionInfo>,
    calls: Vec<Call>,
    top: Vec<(Name, FunId)>,
    frames: usize,
}

fn unknown_vector(arity: usize) -> Vec<Relation> {
    vec![Relation::Unknown; arity]
}

fn unit_vector(slot: usize, arity: usize) -> Vec<Relation> {
    let mut v = unknown_vector(arity);
    v[slot] = Relation::Equal;
    v
}

/// Head and arguments of a (possibly nested) application.
fn spine(term: &Term) -> (&Term, Vec<&Term>) {
    let mut head = term;
    let mut args = Vec::new();
    while let Term::App(fun, arg) = head {
        args.push(&**arg);
        head = fun;
    }
    args.reverse();
    (head, args)
}

fn leading_params(term: &Term) -> Vec<Name> {
    let mut params = Vec::new();
    let mut t = term;
    while let Term::Lam(p, body) = t {
        params.push(p.clone());
        t = body;
    }
    params
}

impl Extractor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn functions(&self) -> &[FunctionInfo] {
        &self.functions
    }

    pub fn calls(&self) -> &[Call] {
        &self.calls
    }

    pub fn into_extraction(self) -> Extraction {
        Extraction {
            functions: self.functions,
            calls: self.calls,
        }
    }

    /// Processes one statement and returns the index range of the
    /// functions it introduced, outer bindings before their let-nested
    /// ones.
    pub fn add_statement(&mut self, stmt: &Statement) -> Range<usize> {
        let start = self.functions.len();
        match stmt {
            Statement::Define(bindings) => {
                let first = self.functions.len();
                for b in bindings {
                    self.new_function(&b.name, &b.term, b.pos);
                }
                // simultaneous bindings see each other
                for (k, b) in bindings.iter().enumerate() {
                    self.top.push((b.name.clone(), FunId(first + k)));
                }
                let mut scope = Vec::new();
                for (k, b) in bindings.iter().enumerate() {
                    self.analyze_function(FunId(first + k), &b.term, &mut scope, b.pos);
                }
            }
            Statement::Evaluate(term) => {
                // a bare term produces no calls itself, but functions
                // bound by `let`s inside it are still analyzed
                self.frames += 1;
                let ctx = Ctx {
                    fun: None,
                    arity: 0,
                    frame: self.frames,
                    site: Pos::new(1, 1),
                };
                let mut scope = Vec::new();
                self.walk(term, ctx, &mut scope);
            }
        }
        start..self.functions.len()
    }

    fn new_function(&mut self, name: &str, term: &Term, site: Pos) -> FunId {
        let id = FunId(self.functions.len());
        self.functions.push(FunctionInfo {
            id,
            name: name.to_string(),
            params: leading_params(term),
            site,
        });
        id
    }

    fn lookup(&self, name: &str, scope: &[ScopeEntry]) -> Option<Binding> {
        if let Some(entry) = scope.iter().rev().find(|e| e.name == name) {
            return Some(entry.binding.clone());
        }
        self.top
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, id)| Binding::Func(*id))
    }

    fn analyze_function(&mut self, id: FunId, term: &Term, scope: &mut Vec<ScopeEntry>, site: Pos) {
        self.frames += 1;
        let frame = self.frames;
        let arity = self.functions[id.0].arity();
        let depth = scope.len();
        let mut body = term;
        let mut slot = 0;
        while let Term::Lam(param, rest) = body {
            scope.push(ScopeEntry {
                name: param.clone(),
                binding: Binding::Tracked {
                    frame,
                    vector: unit_vector(slot, arity),
                },
            });
            body = rest;
            slot += 1;
        }
        let ctx = Ctx {
            fun: Some(id),
            arity,
            frame,
            site,
        };
        self.walk(body, ctx, scope);
        scope.truncate(depth);
    }

    fn walk(&mut self, term: &Term, ctx: Ctx, scope: &mut Vec<ScopeEntry>) {
        match term {
            Term::Var(_) => {}
            Term::Lam(param, body) => {
                scope.push(ScopeEntry {
                    name: param.clone(),
                    binding: Binding::Tracked {
                        frame: ctx.frame,
                        vector: unknown_vector(ctx.arity),
                    },
                });
                self.walk(body, ctx, scope);
                scope.pop();
            }
            Term::App(..) => {
                let (head, args) = spine(term);
                if let Term::Var(name) = head {
                    if let (Some(Binding::Func(callee)), Some(caller)) =
                        (self.lookup(name, scope), ctx.fun)
                    {
                        self.record_call(caller, callee, &args, ctx, scope);
                    }
                } else {
                    self.walk(head, ctx, scope);
                }
                for arg in args {
                    self.walk(arg, ctx, scope);
                }
            }
            Term::Con(_, arg) => self.walk(arg, ctx, scope),
            Term::Case(scrutinee, branches) => {
                self.walk(scrutinee, ctx, scope);
                let scrutinee_vector = self.vector_of(scrutinee, ctx, scope);
                for branch in branches {
                    let vector = scrutinee_vector
                        .iter()
                        .map(|r| Relation::Less.times(*r))
                        .collect();
                    scope.push(ScopeEntry {
                        name: branch.binder.clone(),
                        binding: Binding::Tracked {
                            frame: ctx.frame,
                            vector,
                        },
                    });
                    self.walk(&branch.body, ctx, scope);
                    scope.pop();
                }
            }
            Term::Tuple(entries) => {
                for (_, t) in entries {
                    self.walk(t, ctx, scope);
                }
            }
            Term::Proj(tuple, _) => self.walk(tuple, ctx, scope),
            Term::Let(bindings, body) => {
                let depth = scope.len();
                let first = self.functions.len();
                for (name, t) in bindings {
                    self.new_function(name, t, ctx.site);
                }
                for (k, (name, _)) in bindings.iter().enumerate() {
                    scope.push(ScopeEntry {
                        name: name.clone(),
                        binding: Binding::Func(FunId(first + k)),
                    });
                }
                for (k, (_, t)) in bindings.iter().enumerate() {
                    self.analyze_function(FunId(first + k), t, scope, ctx.site);
                }
                self.walk(body, ctx, scope);
                scope.truncate(depth);
            }
        }
    }

    fn record_call(
        &mut self,
        caller: FunId,
        callee: FunId,
        args: &[&Term],
        ctx: Ctx,
        scope: &[ScopeEntry],
    ) {
        let callee_arity = self.functions[callee.0].arity();
        let mut entries = Vec::with_capacity(callee_arity * ctx.arity);
        for slot in 0..callee_arity {
            // missing arguments stay unknown; surplus ones get no row but
            // are still walked by the caller for nested calls
            let row = match args.get(slot) {
                Some(arg) => self.vector_of(arg, ctx, scope),
                None => unknown_vector(ctx.arity),
            };
            entries.extend(row);
        }
        let matrix = CallMatrix::new(callee_arity, ctx.arity, entries)
            .expect("extracted rows satisfy the call-matrix constraint");
        self.calls.push(Call {
            caller,
            callee,
            matrix,
            path: vec![caller, callee],
        });
    }

    /// Relation of a call argument to the parameters of the enclosing
    /// function.
    fn vector_of(&self, term: &Term, ctx: Ctx, scope: &[ScopeEntry]) -> Vec<Relation> {
        match term {
            Term::Var(name) => self.var_vector(name, ctx, scope),
            Term::Proj(tuple, _) => self.vector_of(tuple, ctx, scope),
            Term::App(..) => match spine(term).0 {
                Term::Var(name) => self.var_vector(name, ctx, scope),
                _ => unknown_vector(ctx.arity),
            },
            _ => unknown_vector(ctx.arity),
        }
    }

    fn var_vector(&self, name: &str, ctx: Ctx, scope: &[ScopeEntry]) -> Vec<Relation> {
        match self.lookup(name, scope) {
            Some(Binding::Tracked { frame, vector }) if frame == ctx.frame => vector,
            _ => unknown_vector(ctx.arity),
        }
    }
}
