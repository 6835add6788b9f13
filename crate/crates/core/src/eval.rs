//! Call-by-value evaluation in a closure environment.
//!
//! Definition and `let` frames hold their right-hand sides as thunks that
//! close over the frame itself, so simultaneously defined names can refer
//! to each other; a thunk is re-evaluated on every lookup. Lambda
//! parameters and pattern binders hold evaluated values.

use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{Name, Term};

#[derive(Debug, Clone)]
pub enum Frame {
    /// Evaluated bindings: lambda parameters and case binders.
    Params(Vec<(Name, Value)>),
    /// Simultaneously recursive bindings, stored unevaluated.
    Recursive(Rc<Vec<(Name, Rc<Term>)>>),
}

#[derive(Debug)]
struct EnvNode {
    frame: Frame,
    parent: Env,
}

/// Chain of frames; lookup returns the innermost binding.
#[derive(Debug, Clone, Default)]
pub struct Env(Option<Rc<EnvNode>>);

enum Lookup {
    Value(Value),
    /// Unevaluated binding plus the environment it closes over (which
    /// includes its own frame, tying the recursive knot).
    Thunk(Rc<Term>, Env),
}

impl Env {
    pub fn empty() -> Self {
        Env(None)
    }

    pub fn with_params(&self, params: Vec<(Name, Value)>) -> Env {
        Env(Some(Rc::new(EnvNode {
            frame: Frame::Params(params),
            parent: self.clone(),
        })))
    }

    pub fn with_recursive(&self, bindings: Rc<Vec<(Name, Rc<Term>)>>) -> Env {
        Env(Some(Rc::new(EnvNode {
            frame: Frame::Recursive(bindings),
            parent: self.clone(),
        })))
    }

    fn lookup(&self, name: &str) -> Option<Lookup> {
        let mut node = self.0.clone();
        while let Some(rc) = node {
            match &rc.frame {
                Frame::Params(bindings) => {
                    if let Some((_, v)) = bindings.iter().rev().find(|(n, _)| n == name) {
                        return Some(Lookup::Value(v.clone()));
                    }
                }
                Frame::Recursive(bindings) => {
                    if let Some((_, t)) = bindings.iter().rev().find(|(n, _)| n == name) {
                        return Some(Lookup::Thunk(t.clone(), Env(Some(rc.clone()))));
                    }
                }
            }
            node = rc.parent.0.clone();
        }
        None
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    Con(Name, Rc<Value>),
    Tuple(Vec<(Name, Value)>),
    Closure(Name, Rc<Term>, Env),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable(Name),
    /// The scrutinee's constructor has no matching branch.
    NoMatchingBranch(Name),
    MissingLabel(Name),
    ApplyNonFunction,
    CaseNonConstructor,
    ProjectNonTuple,
    FuelExhausted,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(n) => write!(f, "unbound variable '{}'", n),
            EvalError::NoMatchingBranch(c) => write!(f, "no branch matches constructor '{}'", c),
            EvalError::MissingLabel(l) => write!(f, "tuple has no label '{}'", l),
            EvalError::ApplyNonFunction => write!(f, "applied a value that is not a function"),
            EvalError::CaseNonConstructor => {
                write!(f, "case scrutinee is not a constructor value")
            }
            EvalError::ProjectNonTuple => write!(f, "projection from a value that is not a tuple"),
            EvalError::FuelExhausted => write!(f, "evaluation step budget exhausted"),
        }
    }
}

/// Reduces `term` to a value. Each lookup, beta, case and projection
/// reduction consumes one unit of `fuel` when a budget is given.
pub fn evaluate(term: &Term, env: &Env, fuel: Option<u64>) -> Result<Value, EvalError> {
    Evaluator { remaining: fuel }.eval(term, env)
}

struct Evaluator {
    remaining: Option<u64>,
}

impl Evaluator {
    fn step(&mut self) -> Result<(), EvalError> {
        if let Some(n) = &mut self.remaining {
            if *n == 0 {
                return Err(EvalError::FuelExhausted);
            }
            *n -= 1;
        }
        Ok(())
    }

    fn eval(&mut self, term: &Term, env: &Env) -> Result<Value, EvalError> {
        match term {
            Term::Var(name) => {
                self.step()?;
                match env.lookup(name) {
                    Some(Lookup::Value(v)) => Ok(v),
                    Some(Lookup::Thunk(t, tenv)) => self.eval(&t, &tenv),
                    None => Err(EvalError::UnboundVariable(name.clone())),
                }
            }
            Term::Lam(param, body) => Ok(Value::Closure(param.clone(), body.clone(), env.clone())),
            Term::App(fun, arg) => {
                let vf = self.eval(fun, env)?;
                let va = self.eval(arg, env)?;
                match vf {
                    Value::Closure(param, body, cenv) => {
                        self.step()?;
                        let inner = cenv.with_params(alloc::vec![(param, va)]);
                        self.eval(&body, &inner)
                    }
                    _ => Err(EvalError::ApplyNonFunction),
                }
            }
            Term::Con(con, arg) => Ok(Value::Con(con.clone(), Rc::new(self.eval(arg, env)?))),
            Term::Case(scrutinee, branches) => {
                let vs = self.eval(scrutinee, env)?;
                match vs {
                    Value::Con(con, payload) => {
                        let branch = branches
                            .iter()
                            .find(|b| b.con == con)
                            .ok_or(EvalError::NoMatchingBranch(con))?;
                        self.step()?;
                        let inner = env
                            .with_params(alloc::vec![(branch.binder.clone(), (*payload).clone())]);
                        self.eval(&branch.body, &inner)
                    }
                    _ => Err(EvalError::CaseNonConstructor),
                }
            }
            Term::Tuple(entries) => {
                let mut out = Vec::with_capacity(entries.len());
                for (label, t) in entries {
                    out.push((label.clone(), self.eval(t, env)?));
                }
                Ok(Value::Tuple(out))
            }
            Term::Proj(tuple, label) => {
                let vt = self.eval(tuple, env)?;
                match vt {
                    Value::Tuple(entries) => {
                        let (_, v) = entries
                            .iter()
                            .find(|(l, _)| l == label)
                            .ok_or_else(|| EvalError::MissingLabel(label.clone()))?;
                        self.step()?;
                        Ok(v.clone())
                    }
                    _ => Err(EvalError::ProjectNonTuple),
                }
            }
            Term::Let(bindings, body) => {
                let inner = env.with_recursive(Rc::new(bindings.clone()));
                self.eval(body, &inner)
            }
        }
    }
}

/// Prints a value the way results are reported: `C()` for a constructor
/// of the empty tuple, `C(L1=v1, L2=v2)` for a constructor of a tuple,
/// `C(v)` otherwise, `(L1=v1, ...)` for bare tuples and `[x]<fn>` for
/// functions.
pub fn render_value(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value);
    out
}

fn write_value(out: &mut String, value: &Value) {
    match value {
        Value::Con(con, arg) => {
            out.push_str(con);
            match &**arg {
                Value::Tuple(entries) => {
                    out.push('(');
                    write_tuple_entries(out, entries);
                    out.push(')');
                }
                other => {
                    out.push('(');
                    write_value(out, other);
                    out.push(')');
                }
            }
        }
        Value::Tuple(entries) => {
            out.push('(');
            write_tuple_entries(out, entries);
            out.push(')');
        }
        Value::Closure(param, _, _) => {
            out.push('[');
            out.push_str(param);
            out.push_str("]<fn>");
        }
    }
}

fn write_tuple_entries(out: &mut String, entries: &[(Name, Value)]) {
    for (i, (label, v)) in entries.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(label);
        out.push('=');
        write_value(out, v);
    }
}
