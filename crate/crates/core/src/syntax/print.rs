//! Concrete syntax output. Everything printed here parses back to the same tree.

use std::fmt::{self, Display, Formatter, Write};

use num_traits::{One, Zero};

use super::formula::{Atom, Cube, Formula, Literal};
use super::term::{LinearTerm, Monomial, OrderBase, OrderTerm, Sign, Term};

impl Display for OrderTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for _ in 0..self.succ {
            f.write_str("s(")?;
        }
        match &self.base {
            OrderBase::Zero => f.write_str("0")?,
            OrderBase::Var(v) => write!(f, "{v}")?,
        }
        for _ in 0..self.succ {
            f.write_char(')')?;
        }
        Ok(())
    }
}

impl Display for LinearTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, c) in self.coeffs() {
            parts.push(if c.is_one() {
                v.to_string()
            } else if *c == -num_bigint::BigInt::one() {
                format!("-{v}")
            } else {
                format!("{c}*{v}")
            });
        }
        let k = self.constant_part();
        if !k.is_zero() || parts.is_empty() {
            parts.push(k.to_string());
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Display for Monomial {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.sign() == Sign::Zero {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.sign() == Sign::Neg {
            parts.push("-1".to_string());
        }
        for (v, e) in self.exps() {
            if e.is_one() {
                parts.push(v.to_string());
            } else if e.is_zero() {
                parts.push(format!("{v} * {v}^-1"));
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        f.write_str(&parts.join(" * "))
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Order(t) => t.fmt(f),
            Term::Linear(t) => t.fmt(f),
            Term::Mono(t) => t.fmt(f),
        }
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Less(a, b) => write!(f, "{a} < {b}"),
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::Cong { modulus, lhs, rhs } => write!(f, "{lhs} == {rhs} mod {modulus}"),
            Atom::Re { degree, arg } => write!(f, "pow({degree}, {arg})"),
        }
    }
}

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Iff(..) => 1,
        Formula::Imp(..) => 2,
        Formula::Or(v) if v.len() > 1 => 3,
        Formula::And(v) if v.len() > 1 => 4,
        Formula::Or(v) | Formula::And(v) => v.first().map_or(5, level),
        _ => 5,
    }
}

fn write_at(out: &mut Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    if level(f) < min {
        out.write_char('(')?;
        write_at(out, f, 0)?;
        return out.write_char(')');
    }
    match f {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Atom(a) => write!(out, "{a}"),
        Formula::Not(g) => {
            out.write_char('~')?;
            write_at(out, g, 5)
        }
        Formula::And(v) | Formula::Or(v) if v.is_empty() => {
            out.write_str(if matches!(f, Formula::And(_)) { "true" } else { "false" })
        }
        Formula::And(v) => join(out, v, " /\\ ", 5),
        Formula::Or(v) => join(out, v, " \\/ ", 4),
        Formula::Imp(a, b) => {
            write_at(out, a, 3)?;
            out.write_str(" -> ")?;
            write_at(out, b, 2)
        }
        Formula::Iff(a, b) => {
            write_at(out, a, 1)?;
            out.write_str(" <-> ")?;
            write_at(out, b, 2)
        }
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let q = if matches!(f, Formula::Exists(..)) { "exists" } else { "forall" };
            write!(out, "{q} {x}. ")?;
            let l = level(g);
            if (1..=4).contains(&l) {
                out.write_char('(')?;
                write_at(out, g, 0)?;
                out.write_char(')')
            } else {
                write_at(out, g, 0)
            }
        }
    }
}

fn join(out: &mut Formatter<'_>, v: &[Formula], sep: &str, min: u8) -> fmt::Result {
    for (i, g) in v.iter().enumerate() {
        if i > 0 {
            out.write_str(sep)?;
        }
        write_at(out, g, min)?;
    }
    Ok(())
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}

impl Display for Literal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~{}", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

impl Display for Cube {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "exists {}. ", self.var)?;
        let body = self.to_formula();
        if (1..=4).contains(&level(&body)) {
            write!(f, "({body})")
        } else {
            write!(f, "{body}")
        }
    }
}

/// Printing entry point.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}
