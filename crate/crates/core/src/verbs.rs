//! Named operations on text expressions, shared by the command line and the
//! golden-data runner.

use std::fmt;

use crate::error::{Error, Result};
use crate::fqsym::{self, FqElem, FqTensor, Perm};
use crate::halfprod::HalfProducts;
use crate::hck::{self, HckElem, HckTensor};
use crate::linear::{parse_lincomb, parse_tensor_key, LinComb, Rational};
use crate::pairing;
use crate::pforest::{b_plus, parse_forest, xi, Decoration, DecorationSet, Forest};

pub const HCK_OPS: &[&str] = &[
    "mul", "cop", "copl", "copr", "coplprime", "coprprime", "reduced", "antipode", "counit", "preml", "premr",
    "xi", "bplus", "pair",
];

pub const FQSYM_OPS: &[&str] = &["mul", "preml", "premr", "cop", "copl", "copr", "reduced", "pair"];

/// The value of an operation, tagged by its shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Computed {
    Forests(HckElem),
    ForestTensors(HckTensor),
    Perms(FqElem),
    PermTensors(FqTensor),
    Scalar(Rational),
}

impl fmt::Display for Computed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Computed::Forests(x) => write!(f, "{x}"),
            Computed::ForestTensors(x) => write!(f, "{x}"),
            Computed::Perms(x) => write!(f, "{x}"),
            Computed::PermTensors(x) => write!(f, "{x}"),
            Computed::Scalar(c) => write!(f, "{c}"),
        }
    }
}

impl Computed {
    /// Parses `text` as a value of the same shape as `self`.
    pub fn parse_like(&self, text: &str, decorations: &DecorationSet) -> Result<Computed> {
        let forest = |k: &str, _| parse_forest(k, decorations);
        let perm = |k: &str, _| Perm::parse(k);
        Ok(match self {
            Computed::Forests(_) => Computed::Forests(parse_lincomb(text, forest)?),
            Computed::ForestTensors(_) => {
                Computed::ForestTensors(parse_lincomb(text, |k, o| parse_tensor_key(k, |f, p| forest(f, o + p)))?)
            }
            Computed::Perms(_) => Computed::Perms(fqsym::parse_elem(text)?),
            Computed::PermTensors(_) => {
                Computed::PermTensors(parse_lincomb(text, |k, o| parse_tensor_key(k, |f, p| perm(f, o + p)))?)
            }
            Computed::Scalar(_) => Computed::Scalar(
                crate::linear::parse_rational(text.trim())
                    .ok_or_else(|| Error::Syntax { offset: 0, message: format!("bad rational `{text}`") })?,
            ),
        })
    }

    /// Number of terms; a scalar counts as one.
    pub fn terms(&self) -> usize {
        match self {
            Computed::Forests(x) => x.len(),
            Computed::ForestTensors(x) => x.len(),
            Computed::Perms(x) => x.len(),
            Computed::PermTensors(x) => x.len(),
            Computed::Scalar(_) => 1,
        }
    }
}

/// Parses `a,b:2,c` or `a b c`; a label without a degree gets its default degree.
pub fn parse_decorations(text: &str) -> Result<DecorationSet> {
    let mut out = Vec::new();
    for item in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let d = match item.split_once(':') {
            Some((label, deg)) => {
                let deg = deg
                    .parse()
                    .map_err(|_| Error::InvalidDecorations(format!("bad degree in `{item}`")))?;
                Decoration::new(label, deg)?
            }
            None => Decoration::new(item, crate::pforest::default_degree(item))?,
        };
        out.push(d);
    }
    DecorationSet::new(out)
}

/// The explicit set when given, else every label occurring in `texts`.
pub fn decorations_for(explicit: Option<&str>, texts: &[&str]) -> Result<DecorationSet> {
    match explicit {
        Some(s) => parse_decorations(s),
        None => Ok(DecorationSet::infer_from(&texts.join(" "))),
    }
}

pub fn parse_hck(text: &str, d: &DecorationSet) -> Result<HckElem> {
    parse_lincomb(text, |k, offset| {
        parse_forest(k, d).map_err(|e| match e {
            Error::Syntax { offset: o, message } => Error::Syntax { offset: offset + o, message },
            other => other,
        })
    })
}

fn arity(op: &str, args: &[&str], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Precondition(format!("`{op}` takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn label<'a>(d: &'a DecorationSet, l: &str) -> Result<&'a Decoration> {
    d.get(l).ok_or_else(|| Error::UnknownDecoration(l.to_string()))
}

/// `x ≺ y` (`left`) or `x ≻ y` on forests, through the Gram systems.
pub fn half_product(d: &DecorationSet, left: bool, x: &HckElem, y: &HckElem) -> Result<HckElem> {
    let bound = x.max_degree() + y.max_degree();
    let solver = HalfProducts::new(d.clone(), bound);
    let mut out = LinComb::zero();
    for (f, cf) in x.iter() {
        for (g, cg) in y.iter() {
            let r = if left { solver.solve_prec(f, g)? } else { solver.solve_succ(f, g)? };
            out.add_scaled(&(cf * cg), &r);
        }
    }
    Ok(out)
}

/// Runs `op` on forest expressions over the decoration set `d`.
pub fn hck(op: &str, args: &[&str], d: &DecorationSet) -> Result<Computed> {
    let elem = |i: usize| parse_hck(args[i], d);
    let cuts = |f: fn(&Forest) -> Result<HckTensor>| -> Result<Computed> {
        arity(op, args, 1)?;
        Ok(Computed::ForestTensors(elem(0)?.apply_result(f)?))
    };
    match op {
        "mul" => {
            arity(op, args, 2)?;
            Ok(Computed::Forests(hck::concat(&elem(0)?, &elem(1)?)))
        }
        "cop" => {
            arity(op, args, 1)?;
            Ok(Computed::ForestTensors(hck::coproduct_elem(&elem(0)?)))
        }
        "reduced" => {
            arity(op, args, 1)?;
            Ok(Computed::ForestTensors(hck::reduced_coproduct_elem(&elem(0)?)))
        }
        "copl" => cuts(hck::delta_pre),
        "copr" => cuts(hck::delta_suc),
        "coplprime" => cuts(hck::delta_pre_prime),
        "coprprime" => cuts(hck::delta_suc_prime),
        "antipode" => {
            arity(op, args, 1)?;
            Ok(Computed::Forests(hck::antipode(&elem(0)?)))
        }
        "counit" => {
            arity(op, args, 1)?;
            Ok(Computed::Scalar(hck::counit(&elem(0)?)))
        }
        "preml" | "premr" => {
            arity(op, args, 2)?;
            Ok(Computed::Forests(half_product(d, op == "preml", &elem(0)?, &elem(1)?)?))
        }
        "xi" => {
            arity(op, args, 2)?;
            let dec = label(d, args[0])?;
            let x = elem(1)?;
            let mut out = LinComb::zero();
            for (f, c) in x.iter() {
                if let Some(g) = xi(dec, f)? {
                    out.add_term(g, c.clone());
                }
            }
            Ok(Computed::Forests(out))
        }
        "bplus" => {
            arity(op, args, 2)?;
            let dec = label(d, args[0])?;
            Ok(Computed::Forests(elem(1)?.map_keys(|f| Forest::single(b_plus(dec, f)))))
        }
        "pair" => {
            arity(op, args, 2)?;
            Ok(Computed::Scalar(pairing::pair_elem(&elem(0)?, &elem(1)?)))
        }
        _ => Err(Error::Unknown { kind: "hck operation", name: op.to_string() }),
    }
}

/// Runs `op` on FQSym expressions.
pub fn fqsym(op: &str, args: &[&str]) -> Result<Computed> {
    let elem = |i: usize| fqsym::parse_elem(args[i]);
    let binary = |f: fn(&Perm, &Perm) -> Result<FqElem>| -> Result<Computed> {
        arity(op, args, 2)?;
        let (x, y) = (elem(0)?, elem(1)?);
        let mut out = LinComb::zero();
        for (u, cu) in x.iter() {
            for (v, cv) in y.iter() {
                out.add_scaled(&(cu * cv), &f(u, v)?);
            }
        }
        Ok(Computed::Perms(out))
    };
    let unary = |f: fn(&Perm) -> Result<FqTensor>| -> Result<Computed> {
        arity(op, args, 1)?;
        Ok(Computed::PermTensors(elem(0)?.apply_result(f)?))
    };
    match op {
        "mul" => binary(|u, v| Ok(fqsym::product(u, v))),
        "preml" => binary(fqsym::prec),
        "premr" => binary(fqsym::succ),
        "cop" => unary(|u| Ok(fqsym::coproduct(u))),
        "reduced" => unary(|u| Ok(fqsym::reduced_coproduct(u))),
        "copl" => unary(fqsym::delta_pre),
        "copr" => unary(fqsym::delta_suc),
        "pair" => {
            arity(op, args, 2)?;
            Ok(Computed::Scalar(fqsym::dual_pairing_elem(&elem(0)?, &elem(1)?)))
        }
        _ => Err(Error::Unknown { kind: "fqsym operation", name: op.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_hck(op: &str, args: &[&str]) -> String {
        let d = decorations_for(None, args).unwrap();
        hck(op, args, &d).unwrap().to_string()
    }

    #[test]
    fn forest_ops() {
        assert_eq!(run_hck("mul", &["a", "b[c]"]), "1*(a b[c])");
        assert_eq!(run_hck("bplus", &["a", "b c"]), "1*a[b,c]");
        assert_eq!(run_hck("xi", &["e", "a[b] c[d,e]"]), "1*(a[b] c[d])");
        assert_eq!(run_hck("xi", &["d", "a[b] c[d,e]"]), "0");
        assert_eq!(run_hck("counit", &["a b"]), "0");
        assert_eq!(run_hck("counit", &["1"]), "1");
        assert_eq!(run_hck("pair", &["*[*]", "*[*]"]), "1");
        assert_eq!(run_hck("preml", &["d", "d"]), "1*d[d]");
    }

    #[test]
    fn perm_ops() {
        let r = fqsym("preml", &["12", "123"]).unwrap();
        assert_eq!(r.terms(), 4);
        let want = r.parse_like("34512 + 13452 + 31452 + 34152", &DecorationSet::empty()).unwrap();
        assert_eq!(r, want);
    }

    #[test]
    fn decoration_lists() {
        let d = parse_decorations("a,b:2 c").unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.get("b").unwrap().degree(), 2);
        assert!(parse_decorations("a:x").is_err());
        assert!(matches!(hck("nope", &[], &d), Err(Error::Unknown { .. })));
        assert!(hck("mul", &["a"], &d).is_err());
    }
}
