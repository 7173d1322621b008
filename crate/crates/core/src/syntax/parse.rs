//! Recursive-descent parser for the formula grammar, one term language per theory.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::formula::{Atom, Formula};
use super::term::{LinearTerm, Monomial, OrderTerm, Term, Var};
use super::theory::{Sort, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("signature error at {line}:{col}: `{symbol}` is not in the signature of {theory}")]
    Signature { line: usize, col: usize, symbol: String, theory: Theory },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    LParen,
    RParen,
    Dot,
    Comma,
    Tilde,
    And,
    Or,
    Imp,
    Iff,
    Eq,
    Less,
    Leq,
    Neq,
    Cong,
    Caret,
    Star,
    Plus,
    Minus,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Eof => "end of input".to_string(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Dot => ".",
            Tok::Comma => ",",
            Tok::Tilde => "~",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Imp => "->",
            Tok::Iff => "<->",
            Tok::Eq => "=",
            Tok::Less => "<",
            Tok::Leq => "<=",
            Tok::Neq => "!=",
            Tok::Cong => "==",
            Tok::Caret => "^",
            Tok::Star => "*",
            Tok::Plus => "+",
            Tok::Minus => "-",
            _ => "",
        }
    }
}

const KEYWORDS: [&str; 5] = ["forall", "exists", "true", "false", "mod"];

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| SyntaxError::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = (line, col);
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let sym = [
            ("<->", Tok::Iff),
            ("/\\", Tok::And),
            ("\\/", Tok::Or),
            ("->", Tok::Imp),
            ("<=", Tok::Leq),
            ("!=", Tok::Neq),
            ("==", Tok::Cong),
            ("<", Tok::Less),
            ("=", Tok::Eq),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            (".", Tok::Dot),
            (",", Tok::Comma),
            ("~", Tok::Tilde),
            ("^", Tok::Caret),
            ("*", Tok::Star),
            ("+", Tok::Plus),
            ("-", Tok::Minus),
        ]
        .into_iter()
        .find(|(s, _)| rest.starts_with(s));
        if let Some((s, t)) = sym {
            let n = s.chars().count();
            i += n;
            col += n;
            out.push((t, start.0, start.1));
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            col += j - i;
            i = j;
            out.push((Tok::Nat(digits.parse().unwrap()), start.0, start.1));
        } else if c.is_ascii_lowercase() {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let name: String = chars[i..j].iter().collect();
            col += j - i;
            i = j;
            out.push((Tok::Ident(name), start.0, start.1));
        } else {
            return Err(err(line, col, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    theory: Theory,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = &self.toks[self.pos];
        (*l, *c)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(SyntaxError::Parse { line, col, msg: msg.into() })
    }

    fn signature<T>(&self, symbol: &str) -> PResult<T> {
        let (line, col) = self.here();
        Err(SyntaxError::Signature { line, col, symbol: symbol.to_string(), theory: self.theory })
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", t.describe(), self.peek().describe()))
        }
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(n) if n == s)
    }

    fn variable(&mut self) -> PResult<Var> {
        match self.peek().clone() {
            Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => {
                self.bump();
                Ok(Var::new(&n))
            }
            t => self.error(format!("expected a variable, found {}", t.describe())),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        for (kw, exists) in [("exists", true), ("forall", false)] {
            if self.is_ident(kw) {
                self.bump();
                let v = self.variable()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                return Ok(if exists { Formula::exists(v, body) } else { Formula::forall(v, body) });
            }
        }
        self.iff()
    }

    fn iff(&mut self) -> PResult<Formula> {
        let mut l = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let r = self.imp()?;
            l = Formula::iff(l, r);
        }
        Ok(l)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let l = self.disj()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let r = self.imp()?;
            return Ok(Formula::imp(l, r));
        }
        Ok(l)
    }

    fn disj(&mut self) -> PResult<Formula> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Or {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conj(&mut self) -> PResult<Formula> {
        let mut parts = vec![self.neg()?];
        while *self.peek() == Tok::And {
            self.bump();
            parts.push(self.neg()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn neg(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.neg()?))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn nat(&mut self) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            t => self.error(format!("expected a natural number, found {}", t.describe())),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        if self.is_ident("true") {
            self.bump();
            return Ok(Formula::True);
        }
        if self.is_ident("false") {
            self.bump();
            return Ok(Formula::False);
        }
        if self.is_ident("pow") && *self.peek_at(1) == Tok::LParen {
            if !self.theory.has_powers() {
                return self.signature("pow");
            }
            self.bump();
            self.bump();
            let degree = self.nat()?;
            if degree < BigInt::from(2) {
                return self.error("power predicate degree must be at least 2");
            }
            self.expect(Tok::Comma)?;
            let arg = self.mono_product()?;
            self.expect(Tok::RParen)?;
            return Ok(Formula::Atom(Atom::Re { degree, arg }));
        }
        let lhs = self.term()?;
        let rel = self.peek().clone();
        match rel {
            Tok::Eq | Tok::Less | Tok::Leq | Tok::Neq => {
                self.bump();
                let rhs = self.term()?;
                Ok(match rel {
                    Tok::Eq => Formula::eq(lhs, rhs),
                    Tok::Less => Formula::less(lhs, rhs),
                    Tok::Leq => Formula::Or(vec![Formula::less(lhs.clone(), rhs.clone()), Formula::eq(lhs, rhs)]),
                    _ => Formula::not(Formula::eq(lhs, rhs)),
                })
            }
            Tok::Cong => {
                if !self.theory.is_presburger() {
                    return self.signature("==");
                }
                self.bump();
                let rhs = self.term()?;
                if !self.is_ident("mod") {
                    return self.error(format!("expected `mod`, found {}", self.peek().describe()));
                }
                self.bump();
                let modulus = self.nat()?;
                if modulus < BigInt::from(2) {
                    return self.error("modulus must be at least 2");
                }
                let (Term::Linear(lhs), Term::Linear(rhs)) = (lhs, rhs) else { unreachable!() };
                Ok(Formula::Atom(Atom::Cong { modulus, lhs, rhs }))
            }
            Tok::Minus if self.theory.sort() == Sort::Additive => self.error("there is no binary minus; write `x + -y`"),
            t @ (Tok::Plus | Tok::Star | Tok::Caret | Tok::Minus) => self.signature(t.symbol()),
            t => self.error(format!("expected a relation, found {}", t.describe())),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let t = match self.theory.sort() {
            Sort::Order => Term::Order(self.order_term()?),
            Sort::Additive => Term::Linear(self.lin_sum()?),
            Sort::Multiplicative => Term::Mono(self.mono_product()?),
        };
        Ok(t)
    }

    /// Function application `name(`: reports foreign function symbols as signature errors.
    fn application(&self) -> Option<String> {
        match (self.peek(), self.peek_at(1)) {
            (Tok::Ident(n), Tok::LParen) if !KEYWORDS.contains(&n.as_str()) => Some(n.clone()),
            _ => None,
        }
    }

    fn foreign_application<T>(&self, name: &str) -> PResult<T> {
        if ["s", "inv", "pow"].contains(&name) {
            self.signature(name)
        } else {
            self.error(format!("unknown function `{name}`"))
        }
    }

    fn order_term(&mut self) -> PResult<OrderTerm> {
        if let Some(name) = self.application() {
            if name != "s" || !matches!(self.theory, Theory::OrderZ | Theory::OrderN) {
                return self.foreign_application(&name);
            }
            self.bump();
            self.bump();
            let t = self.order_term()?;
            self.expect(Tok::RParen)?;
            return Ok(t.succ_by(1));
        }
        match self.peek().clone() {
            Tok::Nat(n) if n.is_zero() => {
                if self.theory != Theory::OrderN {
                    return self.signature("0");
                }
                self.bump();
                Ok(OrderTerm::zero())
            }
            Tok::Nat(n) => self.signature(&n.to_string()),
            Tok::Minus => self.signature("-"),
            Tok::Ident(_) => Ok(OrderTerm::var(self.variable()?)),
            t => self.error(format!("expected a term, found {}", t.describe())),
        }
    }

    fn lin_sum(&mut self) -> PResult<LinearTerm> {
        let mut t = self.lin_unary()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            t = t.add(&self.lin_unary()?);
        }
        Ok(t)
    }

    fn lin_unary(&mut self) -> PResult<LinearTerm> {
        if let Some(name) = self.application() {
            return self.foreign_application(&name);
        }
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                Ok(self.lin_unary()?.neg())
            }
            Tok::Nat(n) => {
                if *self.peek_at(1) == Tok::Star {
                    self.bump();
                    self.bump();
                    return Ok(self.lin_unary()?.scale(&n));
                }
                // Bare numerals beyond 0 belong to Presburger arithmetic (which has 1).
                if !n.is_zero() && !self.theory.is_presburger() {
                    return self.signature(&n.to_string());
                }
                self.bump();
                Ok(LinearTerm::constant(n))
            }
            Tok::Ident(_) => Ok(LinearTerm::var(self.variable()?)),
            t => self.error(format!("expected a term, found {}", t.describe())),
        }
    }

    fn mono_product(&mut self) -> PResult<Monomial> {
        let mut m = self.mono_power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            m = m.mul(&self.mono_power()?);
        }
        if self.theory == Theory::MulQPos {
            m = m.strip_guards();
        }
        Ok(m)
    }

    fn mono_power(&mut self) -> PResult<Monomial> {
        let mut m = self.mono_base()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let neg = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let k = self.nat()?;
            m = m.pow(&if neg { -k } else { k });
        }
        Ok(m)
    }

    fn mono_base(&mut self) -> PResult<Monomial> {
        if let Some(name) = self.application() {
            if name != "inv" {
                return self.foreign_application(&name);
            }
            self.bump();
            self.bump();
            let m = self.mono_product()?;
            self.expect(Tok::RParen)?;
            return Ok(m.inv());
        }
        let pos_only = self.theory == Theory::MulQPos;
        match self.peek().clone() {
            Tok::Nat(n) if n.is_one() => {
                self.bump();
                Ok(Monomial::one())
            }
            Tok::Nat(n) if n.is_zero() => {
                if pos_only {
                    return self.signature("0");
                }
                self.bump();
                Ok(Monomial::zero())
            }
            Tok::Nat(n) => self.signature(&n.to_string()),
            Tok::Minus => {
                if pos_only {
                    return self.signature("-1");
                }
                match self.peek_at(1) {
                    Tok::Nat(n) if n.is_one() => {
                        self.bump();
                        self.bump();
                        Ok(Monomial::minus_one())
                    }
                    _ => self.signature("-"),
                }
            }
            Tok::Ident(_) => Ok(Monomial::var(self.variable()?)),
            t => self.error(format!("expected a term, found {}", t.describe())),
        }
    }
}

/// Parses `text` in the language of `theory` and renames bound variables apart.
pub fn parse_formula(text: &str, theory: Theory) -> Result<Formula, SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, theory };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(rename_apart(&f))
}

/// Gives every binder a name distinct from all other binders and from the
/// free variables; unchanged formulas come back identical.
pub fn rename_apart(f: &Formula) -> Formula {
    let mut taken: BTreeSet<Var> = f.free_vars();
    let all = f.all_vars();
    let mut env = BTreeMap::new();
    rename(f, &mut taken, &all, &mut env)
}

fn rename(f: &Formula, taken: &mut BTreeSet<Var>, all: &BTreeSet<Var>, env: &mut BTreeMap<Var, Var>) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => {
            let mut a = a.clone();
            for v in a.vars() {
                if let Some(w) = env.get(&v) {
                    if w != &v {
                        a = rename_in_atom(&a, &v, w);
                    }
                }
            }
            Formula::Atom(a)
        }
        Formula::Not(g) => Formula::not(rename(g, taken, all, env)),
        Formula::And(v) => Formula::And(v.iter().map(|g| rename(g, taken, all, env)).collect()),
        Formula::Or(v) => Formula::Or(v.iter().map(|g| rename(g, taken, all, env)).collect()),
        Formula::Imp(a, b) => Formula::imp(rename(a, taken, all, env), rename(b, taken, all, env)),
        Formula::Iff(a, b) => Formula::iff(rename(a, taken, all, env), rename(b, taken, all, env)),
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let new = if taken.contains(x) { fresh_name(x, taken, all) } else { x.clone() };
            taken.insert(new.clone());
            let saved = env.insert(x.clone(), new.clone());
            let body = rename(g, taken, all, env);
            match saved {
                Some(s) => env.insert(x.clone(), s),
                None => env.remove(x),
            };
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(new, body)
            } else {
                Formula::forall(new, body)
            }
        }
    }
}

/// Renames one variable inside an atom (works for every term language,
/// zero guards included).
pub(crate) fn rename_in_atom(a: &Atom, from: &Var, to: &Var) -> Atom {
    let by = match a {
        Atom::Less(t, _) | Atom::Eq(t, _) => t.var_like(to.clone()),
        Atom::Cong { .. } => Term::Linear(LinearTerm::var(to.clone())),
        Atom::Re { .. } => Term::Mono(Monomial::var(to.clone())),
    };
    a.substitute(from, &by)
}

fn fresh_name(x: &Var, taken: &BTreeSet<Var>, all: &BTreeSet<Var>) -> Var {
    (1..)
        .map(|i| Var::new(&format!("{}_{i}", x.name())))
        .find(|v| !taken.contains(v) && !all.contains(v))
        .unwrap()
}

/// Checks that a formula only uses symbols of the theory's signature.
pub fn check_signature(f: &Formula, theory: Theory) -> Result<(), String> {
    let mut bad = None;
    f.visit_atoms(&mut |a| {
        if bad.is_some() {
            return;
        }
        let sort_ok = |t: &Term| match (t, theory.sort()) {
            (Term::Order(o), Sort::Order) => {
                (o.succ == 0 || matches!(theory, Theory::OrderZ | Theory::OrderN))
                    && (o.variable().is_some() || theory == Theory::OrderN)
            }
            (Term::Linear(l), Sort::Additive) => theory.is_presburger() || l.constant_part().is_zero(),
            (Term::Mono(m), Sort::Multiplicative) => {
                theory != Theory::MulQPos || (m.sign() == super::term::Sign::Pos && !m.has_guards())
            }
            _ => false,
        };
        bad = match a {
            Atom::Less(x, y) | Atom::Eq(x, y) => (!sort_ok(x) || !sort_ok(y)).then(|| format!("term in {a}")),
            Atom::Cong { modulus, .. } => (!theory.is_presburger() || modulus < &BigInt::from(2)).then(|| "==".to_string()),
            Atom::Re { degree, arg } => (!theory.has_powers()
                || degree.to_u32().map_or(true, |d| d < 2)
                || !sort_ok(&Term::Mono(arg.clone())))
            .then(|| "pow".to_string()),
        };
    });
    match bad {
        Some(s) => Err(s),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, t: Theory) -> Formula {
        parse_formula(s, t).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn spec_shapes() {
        let f = p("exists x. y < x /\\ x < z", Theory::DloQ);
        assert_eq!(f.to_string(), "exists x. (y < x /\\ x < z)");
        let g = p("forall x. exists y. x = 2*y", Theory::OagQ);
        assert_eq!(g.to_string(), "forall x. exists y. x = 2*y");
        assert!(matches!(parse_formula("pow(2, x) /\\ x = y", Theory::DloQ), Err(SyntaxError::Signature { ref symbol, .. }) if symbol == "pow"));
        assert_eq!(p("true", Theory::MulR).to_string(), "true");
        assert_eq!(p("3 == 1 mod 2", Theory::PresburgerZ).to_string(), "3 == 1 mod 2");
    }

    #[test]
    fn signature_errors_name_the_symbol() {
        let sym = |s: &str, t: Theory| match parse_formula(s, t) {
            Err(SyntaxError::Signature { symbol, .. }) => symbol,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(sym("s(x) < y", Theory::DloQ), "s");
        assert_eq!(sym("x + y < z", Theory::DloR), "+");
        assert_eq!(sym("0 < x", Theory::OrderZ), "0");
        assert_eq!(sym("x < 1", Theory::OagQ), "1");
        assert_eq!(sym("x == y mod 2", Theory::OagQ), "==");
        assert_eq!(sym("x * y < z", Theory::PresburgerZ), "*");
        assert_eq!(sym("-1 < x", Theory::MulQPos), "-1");
        assert_eq!(sym("0 < x", Theory::MulQPos), "0");
        assert_eq!(sym("pow(2, x)", Theory::MulR), "pow");
        assert_eq!(sym("inv(x) < 2", Theory::MulQ), "2");
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_formula("exists x.\n  (x < ", Theory::DloQ) {
            Err(SyntaxError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 8)),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("x < y )", Theory::DloQ).is_err());
        assert!(parse_formula("x # y", Theory::DloQ).is_err());
        assert!(parse_formula("x == y mod 1", Theory::PresburgerZ).is_err());
        assert!(parse_formula("exists true. x < y", Theory::DloQ).is_err());
    }

    #[test]
    fn sugar_desugars() {
        assert_eq!(p("x <= y", Theory::DloQ).to_string(), "x < y \\/ x = y");
        assert_eq!(p("x != y", Theory::DloQ).to_string(), "~x = y");
    }

    #[test]
    fn terms_normalize() {
        assert_eq!(p("x + x + -y + 3 < 2*x", Theory::PresburgerZ).to_string(), "2*x + -y + 3 < 2*x");
        assert_eq!(p("x * x * inv(y) = -1 * z^-2", Theory::MulQ).to_string(), "x^2 * y^-1 = -1 * z^-2");
        assert_eq!(p("x * inv(x) = 1", Theory::MulR).to_string(), "x * x^-1 = 1");
        assert_eq!(p("x * inv(x) = 1", Theory::MulQPos).to_string(), "1 = 1");
        assert_eq!(p("s(s(x)) < s(0)", Theory::OrderN).to_string(), "s(s(x)) < s(0)");
        assert_eq!(p("pow(3, x^2 * y)", Theory::MulQ).to_string(), "pow(3, x^2 * y)");
        assert_eq!(p("x^0 = 1", Theory::MulQ).to_string(), "1 = 1");
    }

    #[test]
    fn precedence() {
        let f = p("a < b /\\ b < c \\/ c < a -> a = b <-> b = c", Theory::DloQ);
        let Formula::Iff(l, _) = &f else { panic!() };
        let Formula::Imp(d, _) = &**l else { panic!() };
        assert!(matches!(&**d, Formula::Or(v) if v.len() == 2));
        let g = p("a < b -> b < c -> c < a", Theory::DloQ);
        let Formula::Imp(_, r) = &g else { panic!() };
        assert!(matches!(&**r, Formula::Imp(..)));
        let h = p("~(a < b /\\ b < c)", Theory::DloQ);
        assert_eq!(h.to_string(), "~(a < b /\\ b < c)");
    }

    #[test]
    fn renaming_apart() {
        let f = p("exists x. (x < y /\\ (exists x. x < y)) /\\ (forall y. y < x)", Theory::DloQ);
        assert_eq!(f.to_string(), "exists x. ((x < y /\\ (exists x_1. x_1 < y)) /\\ (forall y_1. y_1 < x))");
        let g = p("x < y /\\ (exists x. x < y)", Theory::DloQ);
        assert_eq!(g.to_string(), "x < y /\\ (exists x_1. x_1 < y)");
        let h = p("exists x. x * inv(x) = y", Theory::MulQ);
        let h2 = p("exists x. x < y /\\ (exists x. x * inv(x) = y)", Theory::MulQ);
        assert_eq!(h.to_string(), "exists x. x * x^-1 = y");
        assert!(h2.to_string().contains("x_1 * x_1^-1"));
    }

    #[test]
    fn signature_check_agrees_with_parser() {
        for (s, t) in [("exists x. x < y", Theory::DloQ), ("x == 3 mod 4", Theory::PresburgerN), ("pow(2, x)", Theory::MulQPos)] {
            assert!(check_signature(&p(s, t), t).is_ok());
        }
        let f = p("pow(2, x)", Theory::MulQ);
        assert!(check_signature(&f, Theory::MulR).is_err());
    }
}
