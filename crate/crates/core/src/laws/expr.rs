//! Law expressions over the dendriform and codendriform signature.
//!
//! Every value is a combination of tensors; algebra elements are tensors of
//! length one and scalars are the empty tensor. `Sweedler` sums a body over
//! the terms of a tensor, binding each factor to a variable.

use std::fmt;

use crate::error::{Error, Result};
use crate::linear::{LinComb, Tensor};

use super::Signature;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Prec,
    Succ,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoOp {
    Pre,
    Suc,
    Tilde,
}

#[derive(Clone, Debug)]
pub enum Expr {
    Var(usize),
    Op(BinOp, Box<Expr>, Box<Expr>),
    Co(CoOp, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Sum(Vec<Expr>),
    Sweedler { src: Box<Expr>, bind: Vec<usize>, body: Box<Expr> },
    Pair(Box<Expr>, Box<Expr>),
}

pub type Value<K> = LinComb<Tensor<K>>;

pub fn v(i: usize) -> Expr {
    Expr::Var(i)
}

pub fn pre(x: Expr, y: Expr) -> Expr {
    Expr::Op(BinOp::Prec, Box::new(x), Box::new(y))
}

pub fn suc(x: Expr, y: Expr) -> Expr {
    Expr::Op(BinOp::Succ, Box::new(x), Box::new(y))
}

pub fn mul(x: Expr, y: Expr) -> Expr {
    Expr::Op(BinOp::Mul, Box::new(x), Box::new(y))
}

pub fn dpre(x: Expr) -> Expr {
    Expr::Co(CoOp::Pre, Box::new(x))
}

pub fn dsuc(x: Expr) -> Expr {
    Expr::Co(CoOp::Suc, Box::new(x))
}

pub fn dtil(x: Expr) -> Expr {
    Expr::Co(CoOp::Tilde, Box::new(x))
}

pub fn t(x: Expr, y: Expr) -> Expr {
    Expr::Tensor(Box::new(x), Box::new(y))
}

pub fn sum(xs: Vec<Expr>) -> Expr {
    Expr::Sum(xs)
}

pub fn add(x: Expr, y: Expr) -> Expr {
    Expr::Sum(vec![x, y])
}

/// `Σ body` over the terms `x' ⊗ x''` of `src`, with `x'`, `x''` bound to `i`, `j`.
pub fn sw(src: Expr, i: usize, j: usize, body: Expr) -> Expr {
    Expr::Sweedler { src: Box::new(src), bind: vec![i, j], body: Box::new(body) }
}

pub fn pair(x: Expr, y: Expr) -> Expr {
    Expr::Pair(Box::new(x), Box::new(y))
}

fn single<K: Clone>(t: &Tensor<K>) -> Result<&K> {
    match t.factors() {
        [k] => Ok(k),
        f => Err(Error::Domain(format!("expected an algebra element, got a tensor of length {}", f.len()))),
    }
}

/// Evaluates `e` with variables bound to basis keys in `env`.
pub fn eval<S: Signature + ?Sized>(s: &S, e: &Expr, env: &[Option<S::Key>]) -> Result<Value<S::Key>> {
    Ok(match e {
        Expr::Var(i) => {
            let k = env.get(*i).and_then(Option::as_ref);
            let k = k.ok_or_else(|| Error::Precondition(format!("unbound variable {i}")))?;
            LinComb::basis(Tensor::new(vec![k.clone()]))
        }
        Expr::Op(op, x, y) => {
            let (x, y) = (eval(s, x, env)?, eval(s, y, env)?);
            let mut out = LinComb::zero();
            for (p, cp) in x.iter() {
                let a = single(p)?;
                for (q, cq) in y.iter() {
                    let b = single(q)?;
                    let r = match op {
                        BinOp::Prec => s.prec(a, b),
                        BinOp::Succ => s.succ(a, b),
                        BinOp::Mul => s.mul(a, b),
                    };
                    out.add_scaled(&(cp * cq), &r.as_tensor());
                }
            }
            out
        }
        Expr::Co(op, x) => eval(s, x, env)?.apply_result(|p| {
            let a = single(p)?;
            s.coproduct(*op, a).ok_or_else(|| Error::Domain(format!("{} has no half-coproducts", s.label())))
        })?,
        Expr::Tensor(x, y) => eval(s, x, env)?.tensor_concat(&eval(s, y, env)?),
        Expr::Sum(xs) => {
            let mut out = LinComb::zero();
            for x in xs {
                out.add_assign_ref(&eval(s, x, env)?);
            }
            out
        }
        Expr::Sweedler { src, bind, body } => {
            let src = eval(s, src, env)?;
            let mut out = LinComb::zero();
            let width = bind.iter().max().map_or(env.len(), |&m| env.len().max(m + 1));
            for (p, c) in src.iter() {
                if p.len() != bind.len() {
                    return Err(Error::Domain(format!("cannot bind {} variables to {p}", bind.len())));
                }
                let mut inner = env.to_vec();
                inner.resize(width, None);
                for (&i, k) in bind.iter().zip(p.factors()) {
                    inner[i] = Some(k.clone());
                }
                out.add_scaled(c, &eval(s, body, &inner)?);
            }
            out
        }
        Expr::Pair(x, y) => {
            let (x, y) = (eval(s, x, env)?, eval(s, y, env)?);
            let mut acc = crate::linear::Rational::default();
            for (p, cp) in x.iter() {
                for (q, cq) in y.iter() {
                    if p.len() != q.len() {
                        return Err(Error::Domain(format!("cannot pair {p} with {q}")));
                    }
                    let mut v = cp * cq;
                    for (a, b) in p.factors().iter().zip(q.factors()) {
                        let w = s.pair(a, b).ok_or_else(|| Error::Domain(format!("{} has no pairing", s.label())))?;
                        v *= w;
                    }
                    acc += v;
                }
            }
            LinComb::term(acc, Tensor::scalar())
        }
    })
}

/// Variable names used when printing laws.
const NAMES: [&str; 9] = ["a", "b", "c", "a′", "a″", "b′", "b″", "x", "y"];

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => match NAMES.get(*i) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "v{i}"),
            },
            Expr::Op(op, x, y) => {
                let sym = match op {
                    BinOp::Prec => "≺",
                    BinOp::Succ => "≻",
                    BinOp::Mul => "·",
                };
                write!(f, "({x}{sym}{y})")
            }
            Expr::Co(op, x) => {
                let sym = match op {
                    CoOp::Pre => "Δ≺",
                    CoOp::Suc => "Δ≻",
                    CoOp::Tilde => "Δ̃",
                };
                write!(f, "{sym}{x}")
            }
            Expr::Tensor(x, y) => write!(f, "{x}⊗{y}"),
            Expr::Sum(xs) if xs.is_empty() => write!(f, "0"),
            Expr::Sum(xs) => {
                let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" + "))
            }
            Expr::Sweedler { src, bind, body } => {
                let names: Vec<String> = bind.iter().map(|&i| Expr::Var(i).to_string()).collect();
                write!(f, "Σ[{}←{src}] {body}", names.join("⊗"))
            }
            Expr::Pair(x, y) => write!(f, "⟨{x}, {y}⟩"),
        }
    }
}
