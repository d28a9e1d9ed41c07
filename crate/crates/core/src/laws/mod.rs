//! Law checking: every axiom family evaluated on basis instances, exhaustively
//! in low degree and on seeded samples above.

pub mod bar;
pub mod catalog;
pub mod expr;

use std::collections::HashMap;
use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Bidendriform;
use crate::error::{Error, Result};
use crate::linear::{BasisKey, LinComb, Rational, Tensor};

use bar::{act, associate, bar_delta, bar_delta_pre, bar_delta_suc, op_elem, Bar, BarKey};
use catalog::{suite_laws, Law};
use expr::{eval, BinOp, CoOp};

pub use catalog::{catalog, SUITES};

/// Basis-level operations that laws are stated in. Half-coproducts and the
/// pairing are optional; laws using a missing operation fail to evaluate.
pub trait Signature: Sync {
    type Key: BasisKey;

    fn label(&self) -> String;
    fn basis(&self, n: usize) -> Vec<Self::Key>;
    fn bound(&self) -> Option<usize>;
    fn prec(&self, a: &Self::Key, b: &Self::Key) -> LinComb<Self::Key>;
    fn succ(&self, a: &Self::Key, b: &Self::Key) -> LinComb<Self::Key>;
    fn mul(&self, a: &Self::Key, b: &Self::Key) -> LinComb<Self::Key>;

    fn coproduct(&self, _op: CoOp, _a: &Self::Key) -> Option<LinComb<Tensor<Self::Key>>> {
        None
    }

    fn pair(&self, _a: &Self::Key, _b: &Self::Key) -> Option<Rational> {
        None
    }
}

impl<A: Bidendriform> Signature for A {
    type Key = A::Key;

    fn label(&self) -> String {
        self.name()
    }

    fn basis(&self, n: usize) -> Vec<A::Key> {
        Bidendriform::basis(self, n)
    }

    fn bound(&self) -> Option<usize> {
        self.product_bound()
    }

    fn prec(&self, a: &A::Key, b: &A::Key) -> LinComb<A::Key> {
        Bidendriform::prec(self, a, b)
    }

    fn succ(&self, a: &A::Key, b: &A::Key) -> LinComb<A::Key> {
        Bidendriform::succ(self, a, b)
    }

    fn mul(&self, a: &A::Key, b: &A::Key) -> LinComb<A::Key> {
        Bidendriform::mul(self, a, b)
    }

    fn coproduct(&self, op: CoOp, a: &A::Key) -> Option<LinComb<Tensor<A::Key>>> {
        Some(match op {
            CoOp::Pre => self.delta_pre(a),
            CoOp::Suc => self.delta_suc(a),
            CoOp::Tilde => self.delta_tilde(a),
        })
    }

    fn pair(&self, a: &A::Key, b: &A::Key) -> Option<Rational> {
        Some(Bidendriform::pair(self, a, b))
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Options {
    pub max_degree: usize,
    /// Instances are exhaustive through this total degree, sampled above it.
    pub exhaustive: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self { max_degree: 6, exhaustive: 4, samples: 500, seed: 0 }
    }
}

/// Witnesses kept per failing law.
const WITNESSES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub law: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub law: String,
    pub instances: usize,
    pub failures: usize,
}

struct Outcome {
    tally: LawTally,
    witnesses: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub algebra: String,
    pub max_degree: usize,
    pub options: OptionsRecord,
    pub laws: Vec<LawTally>,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptionsRecord {
    pub exhaustive: usize,
    pub samples: usize,
    pub seed: u64,
}

impl LawReport {
    fn new(suite: &str, algebra: String, max_degree: usize, opts: &Options, outcomes: Vec<Outcome>) -> Self {
        let mut laws = Vec::new();
        let mut failures = Vec::new();
        for o in outcomes {
            laws.push(o.tally);
            failures.extend(o.witnesses);
        }
        Self {
            suite: suite.to_string(),
            algebra,
            max_degree,
            options: OptionsRecord { exhaustive: opts.exhaustive, samples: opts.samples, seed: opts.seed },
            laws,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.failures == 0)
    }

    pub fn instances(&self) -> usize {
        self.laws.iter().map(|l| l.instances).sum()
    }

    pub fn failed_laws(&self) -> Vec<&str> {
        self.laws.iter().filter(|l| l.failures > 0).map(|l| l.law.as_str()).collect()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} on {} through degree {}", self.suite, self.algebra, self.max_degree)?;
        for l in &self.laws {
            let status = if l.failures == 0 { "ok".to_string() } else { format!("FAIL ({})", l.failures) };
            writeln!(f, "  {:<22} {:>7} instances  {status}", l.law, l.instances)?;
        }
        for w in &self.failures {
            writeln!(f, "  witness {} at ({}):", w.law, w.inputs.join(", "))?;
            writeln!(f, "    lhs = {}", w.lhs)?;
            writeln!(f, "    rhs = {}", w.rhs)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Positive compositions of `total` into `parts` parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product<T: Clone>(lists: &[&[T]]) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Input tuples for a law of `arity` slots. The instance degree is the sum
/// of the free slots; a balanced slot takes that degree itself.
fn generate<T: Clone>(
    arity: usize,
    balance: Option<usize>,
    max: usize,
    opts: &Options,
    rng: &mut ChaCha8Rng,
    basis: &dyn Fn(usize, usize) -> Vec<T>,
) -> Vec<Vec<T>> {
    let free: Vec<usize> = (0..arity).filter(|&s| Some(s) != balance).collect();
    let mut cache: HashMap<(usize, usize), Vec<T>> = HashMap::new();
    let mut get = |slot: usize, deg: usize| -> Vec<T> { cache.entry((slot, deg)).or_insert_with(|| basis(slot, deg)).clone() };
    let assemble = |degs: &[usize], total: usize| -> Vec<usize> {
        (0..arity)
            .map(|s| match free.iter().position(|&f| f == s) {
                Some(i) => degs[i],
                None => total,
            })
            .collect()
    };
    let mut out = Vec::new();
    for d in 1..=opts.exhaustive.min(max) {
        for comp in compositions(d, free.len()) {
            let lists: Vec<Vec<T>> = assemble(&comp, d).into_iter().enumerate().map(|(s, k)| get(s, k)).collect();
            let refs: Vec<&[T]> = lists.iter().map(Vec::as_slice).collect();
            out.extend(product(&refs));
        }
    }
    if max > opts.exhaustive {
        for _ in 0..opts.samples {
            let d = rng.gen_range(opts.exhaustive + 1..=max);
            if d < free.len() {
                continue;
            }
            let mut cuts: Vec<usize> = index::sample(rng, d - 1, free.len() - 1).into_iter().map(|c| c + 1).collect();
            cuts.sort_unstable();
            let mut comp = Vec::with_capacity(free.len());
            let mut prev = 0;
            for c in cuts.into_iter().chain(std::iter::once(d)) {
                comp.push(c - prev);
                prev = c;
            }
            let mut inst = Vec::with_capacity(arity);
            for (s, k) in assemble(&comp, d).into_iter().enumerate() {
                let list = get(s, k);
                if list.is_empty() {
                    break;
                }
                inst.push(list[rng.gen_range(0..list.len())].clone());
            }
            if inst.len() == arity {
                out.push(inst);
            }
        }
    }
    out
}

/// Evaluates both sides on every instance, in parallel, keeping instance order.
fn tally<T, V, F>(law: &str, instances: &[Vec<T>], f: F) -> Result<Outcome>
where
    T: fmt::Display + Sync,
    V: PartialEq + fmt::Display + Send,
    F: Fn(&[T]) -> Result<(V, V)> + Sync,
{
    let results: Vec<Option<Failure>> = instances
        .par_iter()
        .map(|inst| {
            let (lhs, rhs) = f(inst)?;
            Ok((lhs != rhs).then(|| Failure {
                law: law.to_string(),
                inputs: inst.iter().map(ToString::to_string).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<Failure> = results.into_iter().flatten().collect();
    Ok(Outcome {
        tally: LawTally { law: law.to_string(), instances: instances.len(), failures: failures.len() },
        witnesses: failures.into_iter().take(WITNESSES).collect(),
    })
}

fn effective_max<S: Signature + ?Sized>(s: &S, opts: &Options) -> usize {
    s.bound().map_or(opts.max_degree, |b| b.min(opts.max_degree))
}

fn check_laws<S: Signature + ?Sized>(
    s: &S,
    laws: &[Law],
    prefix: &str,
    max: usize,
    opts: &Options,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for law in laws {
        let insts = generate(law.arity, law.balance, max, opts, rng, &|_, n| s.basis(n));
        let name = format!("{prefix}{}", law.id);
        out.push(tally(&name, &insts, |inst| {
            let env: Vec<Option<S::Key>> = inst.iter().cloned().map(Some).collect();
            Ok((eval(s, &law.lhs, &env)?, eval(s, &law.rhs, &env)?))
        })?);
    }
    Ok(out)
}

/// An instance slot holding either an algebra key or a key of `A ⊗̄ A`.
#[derive(Clone, Debug)]
enum Slot<K> {
    Elem(K),
    Bar(BarKey<K, K>),
}

impl<K: fmt::Display> fmt::Display for Slot<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Elem(k) => write!(f, "{k}"),
            Slot::Bar(k) => write!(f, "{k}"),
        }
    }
}

fn elem<K: BasisKey>(s: &Slot<K>) -> LinComb<K> {
    match s {
        Slot::Elem(k) => LinComb::basis(k.clone()),
        Slot::Bar(_) => unreachable!("slot holds a key of A⊗̄A"),
    }
}

fn bar_elem<K: BasisKey>(s: &Slot<K>) -> LinComb<BarKey<K, K>> {
    match s {
        Slot::Bar(k) => LinComb::basis(k.clone()),
        Slot::Elem(_) => unreachable!("slot holds an algebra key"),
    }
}

type ModuleLaw<S> = fn(&S, &LinComb<<S as Signature>::Key>, &LinComb<<S as Signature>::Key>, &bar::BarElem<<S as Signature>::Key, <S as Signature>::Key>) -> Result<(bar::BarElem<<S as Signature>::Key, <S as Signature>::Key>, bar::BarElem<<S as Signature>::Key, <S as Signature>::Key>)>;

type MorphismLaw<S> = fn(&S, &LinComb<<S as Signature>::Key>, &LinComb<<S as Signature>::Key>) -> Result<(bar::BarElem<<S as Signature>::Key, <S as Signature>::Key>, bar::BarElem<<S as Signature>::Key, <S as Signature>::Key>)>;

/// The module axioms for `A` acting on `A ⊗̄ A` through `Δ`, and the
/// statements that `Δ`, `Δ̄≺`, `Δ̄≻` intertwine the half-products.
fn bar_module_outcomes<S: Signature>(s: &S, max: usize, opts: &Options, rng: &mut ChaCha8Rng) -> Result<Vec<Outcome>> {
    let module: Vec<(&str, ModuleLaw<S>)> = vec![
        ("bar-E16", |s, a, b, m| {
            let lhs = act(s, BinOp::Prec, &op_elem(s, BinOp::Prec, a, b), m)?;
            let inner = &act(s, BinOp::Prec, b, m)? + &act(s, BinOp::Succ, b, m)?;
            Ok((lhs, act(s, BinOp::Prec, a, &inner)?))
        }),
        ("bar-E17", |s, a, b, m| {
            let lhs = act(s, BinOp::Prec, &op_elem(s, BinOp::Succ, a, b), m)?;
            Ok((lhs, act(s, BinOp::Succ, a, &act(s, BinOp::Prec, b, m)?)?))
        }),
        ("bar-E18", |s, a, b, m| {
            let lhs = act(s, BinOp::Succ, &op_elem(s, BinOp::Mul, a, b), m)?;
            Ok((lhs, act(s, BinOp::Succ, a, &act(s, BinOp::Succ, b, m)?)?))
        }),
    ];
    let pair = Bar::new(s, s);
    let mut out = Vec::new();
    for (id, law) in module {
        let insts = generate(3, None, max, opts, rng, &|slot, n| {
            if slot == 2 {
                pair.basis(n).into_iter().map(Slot::Bar).collect()
            } else {
                s.basis(n).into_iter().map(Slot::Elem).collect()
            }
        });
        out.push(tally(id, &insts, |inst| law(s, &elem(&inst[0]), &elem(&inst[1]), &bar_elem(&inst[2])))?);
    }
    let morphisms: Vec<(&str, MorphismLaw<S>)> = vec![
        ("bar-E68", |s, a, b| {
            let rhs = op_elem(&Bar::new(s, s), BinOp::Prec, &bar_delta(s, a)?, &bar_delta(s, b)?);
            Ok((bar_delta(s, &op_elem(s, BinOp::Prec, a, b))?, rhs))
        }),
        ("bar-E57", |s, a, b| {
            let rhs = op_elem(&Bar::new(s, s), BinOp::Succ, &bar_delta(s, a)?, &bar_delta(s, b)?);
            Ok((bar_delta(s, &op_elem(s, BinOp::Succ, a, b))?, rhs))
        }),
        ("bar-E5", |s, a, b| {
            let rhs = op_elem(&Bar::new(s, s), BinOp::Succ, &bar_delta(s, a)?, &bar_delta_suc(s, b)?);
            Ok((bar_delta_suc(s, &op_elem(s, BinOp::Succ, a, b))?, rhs))
        }),
        ("bar-E6", |s, a, b| {
            let rhs = op_elem(&Bar::new(s, s), BinOp::Prec, &bar_delta(s, a)?, &bar_delta_suc(s, b)?);
            Ok((bar_delta_suc(s, &op_elem(s, BinOp::Prec, a, b))?, rhs))
        }),
        ("bar-E7", |s, a, b| {
            let rhs = op_elem(&Bar::new(s, s), BinOp::Succ, &bar_delta(s, a)?, &bar_delta_pre(s, b)?);
            Ok((bar_delta_pre(s, &op_elem(s, BinOp::Succ, a, b))?, rhs))
        }),
        ("bar-E8", |s, a, b| {
            let rhs = op_elem(&Bar::new(s, s), BinOp::Prec, &bar_delta(s, a)?, &bar_delta_pre(s, b)?);
            Ok((bar_delta_pre(s, &op_elem(s, BinOp::Prec, a, b))?, rhs))
        }),
    ];
    for (id, law) in morphisms {
        let insts = generate(2, None, max, opts, rng, &|_, n| s.basis(n));
        out.push(tally(id, &insts, |inst| {
            law(s, &LinComb::basis(inst[0].clone()), &LinComb::basis(inst[1].clone()))
        })?);
    }
    Ok(out)
}

/// The dendriform axioms on `A ⊗̄ A`, and the associator
/// `(A⊗̄A)⊗̄A → A⊗̄(A⊗̄A)` as a bijective dendriform morphism.
fn tensor_outcomes<S: Signature>(s: &S, max: usize, opts: &Options, rng: &mut ChaCha8Rng) -> Result<Vec<Outcome>> {
    let pair = Bar::new(s, s);
    let laws = suite_laws("dendriform").expect("dendriform suite");
    let mut out = check_laws(&pair, &laws, "bar-", max, opts, rng)?;
    let left = Bar::new(&pair, s);
    let right = Bar::new(s, &pair);
    for (id, op) in [("associator-prec", BinOp::Prec), ("associator-succ", BinOp::Succ)] {
        let insts = generate(2, None, max, opts, rng, &|_, n| left.basis(n));
        out.push(tally(id, &insts, |inst| {
            let lhs = op_elem(&left, op, &LinComb::basis(inst[0].clone()), &LinComb::basis(inst[1].clone()));
            let x = LinComb::basis(associate(&inst[0]));
            let y = LinComb::basis(associate(&inst[1]));
            Ok((lhs.map_keys(associate), op_elem(&right, op, &x, &y)))
        })?);
    }
    let mut insts = Vec::new();
    for n in 1..=max.min(opts.exhaustive) {
        let mut images: Vec<_> = left.basis(n).iter().map(associate).collect();
        images.sort();
        images.dedup();
        let mut target = right.basis(n);
        target.sort();
        insts.push(vec![DegreeCheck(n, images == target)]);
    }
    out.push(tally("associator-bijective", &insts, |inst| Ok((Flag(inst[0].1), Flag(true))))?);
    Ok(out)
}

/// Degree and result of a bijectivity check, printable as an instance.
#[derive(Clone, Copy, Debug)]
struct DegreeCheck(usize, bool);

impl fmt::Display for DegreeCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Flag(bool);

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.0 { "bijective" } else { "not bijective" })
    }
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs one suite; deterministic for a fixed seed.
pub fn run_suite<A: Bidendriform>(name: &str, alg: &A, opts: &Options) -> Result<LawReport> {
    let laws = suite_laws(name).ok_or_else(|| Error::Unknown { kind: "suite", name: name.to_string() })?;
    let max = effective_max(alg, opts);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut outcomes = check_laws(alg, &laws, "", max, opts, &mut rng)?;
    match name {
        "module" => outcomes.extend(bar_module_outcomes(alg, max, opts, &mut rng)?),
        "tensor" => outcomes.extend(tensor_outcomes(alg, max, opts, &mut rng)?),
        _ => {}
    }
    Ok(LawReport::new(name, alg.name(), max, opts, outcomes))
}

/// The dendriform-module axioms: `A` over itself and over `A ⊗̄ A`.
pub fn check_module_axioms<A: Bidendriform>(alg: &A, opts: &Options) -> Result<LawReport> {
    run_suite("module", alg, opts)
}

#[cfg(test)]
mod tests;
