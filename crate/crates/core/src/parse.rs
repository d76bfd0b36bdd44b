//! Text grammar for scalars, Lie elements, covariant elements and module states.
//!
//! Scalars are arithmetic expressions in `q` with rational constants:
//! `(q^-1 - q) * 2/3`, `q^(2*k+1)`. Elements are sums of `coef * KEY` where a
//! key is `E[k,l]`, `Eij[m,n]`, `G[a,m]`, `c1`, `c2`, `K1`, `K2`, or a looped
//! key `(KEY)@t^i`. States are sums of `coef * KEY ... KEY v`, the keys applied
//! right to left to the bottom vector `v` (also `vac`, or `v[i]`).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::liealg::{key_elem, BasisKey, LieElem};
use crate::qcoeff::{QLaurent, Rational};

/// Integer bindings for identifiers inside exponents and coefficients.
pub type Env = HashMap<String, i64>;

/// Key vocabularies the parser can build.
pub trait KeySyntax: Ord + Clone + Sized {
    /// Returns `None` when `name` is not a key of this vocabulary.
    fn atom(name: &str, args: &[i64]) -> Option<std::result::Result<LinComb<Self>, String>>;

    fn looped(_x: &LinComb<Self>, _i: i64) -> std::result::Result<LinComb<Self>, String> {
        Err("loop elements are not allowed here".into())
    }
}

impl KeySyntax for BasisKey {
    fn atom(name: &str, args: &[i64]) -> Option<std::result::Result<LieElem, String>> {
        let key = match (name, args) {
            ("E", [k, l]) => BasisKey::E(*k, *l),
            ("Eij", [m, n]) => BasisKey::Eij(*m, *n),
            ("G", [a, m]) => BasisKey::G(*a, *m),
            ("c1", []) => BasisKey::C1,
            ("c2", []) => BasisKey::C2,
            ("K1", []) => BasisKey::K1,
            ("K2", []) => BasisKey::K2,
            ("E" | "Eij" | "G", _) => {
                return Some(Err(format!("`{name}` takes two indices")));
            }
            ("c1" | "c2" | "K1" | "K2", _) => {
                return Some(Err(format!("`{name}` takes no indices")));
            }
            _ => return None,
        };
        Some(Ok(key_elem(key)))
    }

    fn looped(x: &LieElem, i: i64) -> std::result::Result<LieElem, String> {
        if x.keys().any(|k| matches!(k, BasisKey::Loop(..) | BasisKey::K2)) {
            return Err("only G and K1 keys can be looped".into());
        }
        Ok(crate::liealg::tensor_t(x, i))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push(Token {
                tok: Tok::Num(n),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                pos: start,
            });
        } else if "+-*/^()[],@".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                pos: i,
            });
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone)]
enum Value<K: Ord> {
    Scalar(QLaurent),
    Elem(LinComb<K>),
}

struct Parser<'a> {
    toks: Vec<Token>,
    idx: usize,
    end: usize,
    env: &'a Env,
}

impl<'a> Parser<'a> {
    fn new(text: &str, env: &'a Env) -> Result<Self> {
        Ok(Self {
            toks: tokenize(text)?,
            idx: 0,
            end: text.len(),
            env,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|t| t.pos).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    // ---- integer expressions (indices and exponents)

    fn int_expr(&mut self) -> Result<i64> {
        let mut acc = self.int_term()?;
        loop {
            if self.eat_sym('+') {
                acc = acc
                    .checked_add(self.int_term()?)
                    .ok_or_else(|| self.overflow())?;
            } else if self.eat_sym('-') {
                acc = acc
                    .checked_sub(self.int_term()?)
                    .ok_or_else(|| self.overflow())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn int_term(&mut self) -> Result<i64> {
        let mut acc = self.int_unary()?;
        while self.eat_sym('*') {
            acc = acc
                .checked_mul(self.int_unary()?)
                .ok_or_else(|| self.overflow())?;
        }
        Ok(acc)
    }

    fn overflow(&self) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: "integer overflow".into(),
        }
    }

    fn int_unary(&mut self) -> Result<i64> {
        if self.eat_sym('-') {
            return Ok(-self.int_unary()?);
        }
        if self.eat_sym('+') {
            return self.int_unary();
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.idx += 1;
                i64::try_from(&n).or_else(|_| self.err("index out of range"))
            }
            Some(Tok::Ident(name)) => match self.env.get(&name) {
                Some(v) => {
                    self.idx += 1;
                    Ok(*v)
                }
                None => self.err(format!("unbound integer `{name}`")),
            },
            Some(Tok::Sym('(')) => {
                self.idx += 1;
                let v = self.int_expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            _ => self.err("expected integer"),
        }
    }

    /// Exponent after `^`: a signed integer, a bound name, or `( int-expr )`.
    fn exponent(&mut self) -> Result<i64> {
        self.int_unary()
    }

    // ---- value expressions

    fn expr<K: KeySyntax>(&mut self) -> Result<Value<K>> {
        let mut acc = self.term::<K>()?;
        loop {
            let pos = self.pos();
            if self.eat_sym('+') {
                let rhs = self.term::<K>()?;
                acc = add(acc, rhs, false, pos)?;
            } else if self.eat_sym('-') {
                let rhs = self.term::<K>()?;
                acc = add(acc, rhs, true, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<K: KeySyntax>(&mut self) -> Result<Value<K>> {
        let mut acc = self.unary::<K>()?;
        loop {
            let pos = self.pos();
            if self.eat_sym('*') {
                let rhs = self.unary::<K>()?;
                acc = mul(acc, rhs, pos)?;
            } else if self.eat_sym('/') {
                let rhs = self.unary::<K>()?;
                let inv = match rhs {
                    Value::Scalar(s) => s.inverse().ok_or(Error::Parse {
                        pos,
                        msg: "can only divide by a nonzero monomial".into(),
                    })?,
                    Value::Elem(_) => {
                        return Err(Error::Parse {
                            pos,
                            msg: "cannot divide by an element".into(),
                        })
                    }
                };
                acc = mul(acc, Value::Scalar(inv), pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<K: KeySyntax>(&mut self) -> Result<Value<K>> {
        if self.eat_sym('-') {
            let v = self.unary::<K>()?;
            return Ok(match v {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Elem(e) => Value::Elem(e.neg()),
            });
        }
        if self.eat_sym('+') {
            return self.unary::<K>();
        }
        self.postfix::<K>()
    }

    fn postfix<K: KeySyntax>(&mut self) -> Result<Value<K>> {
        let v = self.primary::<K>()?;
        if self.at_sym('@') {
            let pos = self.pos();
            self.idx += 1;
            match self.peek() {
                Some(Tok::Ident(t)) if t == "t" => self.idx += 1,
                _ => return self.err("expected `t` after `@`"),
            }
            self.expect_sym('^')?;
            let i = self.exponent()?;
            return match v {
                Value::Elem(e) => K::looped(&e, i)
                    .map(Value::Elem)
                    .map_err(|msg| Error::Parse { pos, msg }),
                Value::Scalar(_) => Err(Error::Parse {
                    pos,
                    msg: "`@t^i` applies to elements only".into(),
                }),
            };
        }
        Ok(v)
    }

    fn primary<K: KeySyntax>(&mut self) -> Result<Value<K>> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.idx += 1;
                Ok(Value::Scalar(QLaurent::from_rational(Rational::from_integer(n))))
            }
            Some(Tok::Sym('(')) => {
                self.idx += 1;
                let v = self.expr::<K>()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.idx += 1;
                if name == "q" {
                    let e = if self.eat_sym('^') { self.exponent()? } else { 1 };
                    return Ok(Value::Scalar(QLaurent::q_pow(e)));
                }
                if let Some(v) = self.env.get(&name) {
                    return Ok(Value::Scalar(QLaurent::from_int(*v)));
                }
                let args = if self.eat_sym('[') {
                    let mut args = vec![self.int_expr()?];
                    while self.eat_sym(',') {
                        args.push(self.int_expr()?);
                    }
                    self.expect_sym(']')?;
                    args
                } else {
                    Vec::new()
                };
                match K::atom(&name, &args) {
                    Some(Ok(e)) => Ok(Value::Elem(e)),
                    Some(Err(msg)) => Err(Error::Parse { pos, msg }),
                    None => Err(Error::Parse {
                        pos,
                        msg: format!("unknown key `{name}`"),
                    }),
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn add<K: KeySyntax>(a: Value<K>, b: Value<K>, negate: bool, pos: usize) -> Result<Value<K>> {
    let b = match b {
        Value::Scalar(s) if negate => Value::Scalar(-s),
        Value::Elem(e) if negate => Value::Elem(e.neg()),
        other => other,
    };
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
        (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(x.plus(&y))),
        (Value::Elem(x), Value::Scalar(s)) | (Value::Scalar(s), Value::Elem(x)) if s.is_zero() => {
            Ok(Value::Elem(x))
        }
        _ => Err(Error::Parse {
            pos,
            msg: "cannot add a scalar to an element".into(),
        }),
    }
}

fn mul<K: KeySyntax>(a: Value<K>, b: Value<K>, pos: usize) -> Result<Value<K>> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
        (Value::Scalar(s), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(s)) => {
            Ok(Value::Elem(e.scale(&s)))
        }
        (Value::Elem(_), Value::Elem(_)) => Err(Error::Parse {
            pos,
            msg: "cannot multiply two elements".into(),
        }),
    }
}

/// Parses a scalar expression in `q`.
pub fn parse_scalar(text: &str) -> Result<QLaurent> {
    parse_scalar_env(text, &Env::new())
}

/// Parses a scalar expression with integer names bound by `env`.
pub fn parse_scalar_env(text: &str, env: &Env) -> Result<QLaurent> {
    let mut p = Parser::new(text, env)?;
    let v = p.expr::<BasisKey>()?;
    p.finish()?;
    match v {
        Value::Scalar(s) => Ok(s),
        Value::Elem(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a scalar, found an element".into(),
        }),
    }
}

/// Parses a linear combination of keys from vocabulary `K`.
pub fn parse_lincomb<K: KeySyntax>(text: &str) -> Result<LinComb<K>> {
    let env = Env::new();
    let mut p = Parser::new(text, &env)?;
    let v = p.expr::<K>()?;
    p.finish()?;
    match v {
        Value::Elem(e) => Ok(e),
        Value::Scalar(s) if s.is_zero() => Ok(LinComb::new()),
        Value::Scalar(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected an element, found a nonzero scalar".into(),
        }),
    }
}

/// Parses a Lie element; `E[0,0]` parses to zero.
pub fn parse_element(text: &str) -> Result<LieElem> {
    parse_lincomb::<BasisKey>(text)
}

/// One summand of a parsed state: `coef * keys[0] keys[1] ... v[bottom]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateTerm {
    pub coef: QLaurent,
    /// Left to right as written; the last key acts first.
    pub keys: Vec<BasisKey>,
    pub bottom: usize,
}

fn bottom_index(p: &mut Parser<'_>) -> Result<Option<usize>> {
    match p.peek() {
        Some(Tok::Ident(n)) if n == "v" || n == "vac" => {
            let vac = n == "vac";
            p.idx += 1;
            if !vac && p.eat_sym('[') {
                let i = p.int_expr()?;
                p.expect_sym(']')?;
                if i < 0 {
                    return p.err("bottom index must be nonnegative");
                }
                return Ok(Some(i as usize));
            }
            Ok(Some(0))
        }
        _ => Ok(None),
    }
}

/// Parses a state expression such as `E[2,-1] E[1,-2] v` or
/// `2 * v + (1*q^-1 + -1*q^1) * E[-1,-1] v`. `0` is the zero state.
pub fn parse_state(text: &str) -> Result<Vec<StateTerm>> {
    let env = Env::new();
    let mut p = Parser::new(text, &env)?;
    if p.toks.len() == 1 && matches!(&p.toks[0].tok, Tok::Num(n) if n.is_zero()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut negate = false;
    if p.eat_sym('-') {
        negate = true;
    } else {
        p.eat_sym('+');
    }
    loop {
        let mut coef = QLaurent::one();
        let mut keys = Vec::new();
        let bottom = loop {
            if let Some(b) = bottom_index(&mut p)? {
                break b;
            }
            if p.at_end() {
                return p.err("state term must end with `v`");
            }
            let pos = p.pos();
            let item = p.postfix::<BasisKey>()?;
            match item {
                Value::Scalar(s) => {
                    if !keys.is_empty() {
                        return Err(Error::Parse {
                            pos,
                            msg: "coefficients must precede generators".into(),
                        });
                    }
                    coef = coef * s;
                }
                Value::Elem(e) => {
                    let single = e.len() == 1 && e.iter().next().is_some_and(|(_, c)| c.is_one());
                    if !single {
                        return Err(Error::Parse {
                            pos,
                            msg: "generators in a state must be single keys".into(),
                        });
                    }
                    keys.push(e.keys().next().cloned().expect("one key"));
                }
            }
            if p.eat_sym('/') {
                let pos = p.pos();
                match p.postfix::<BasisKey>()? {
                    Value::Scalar(s) if keys.is_empty() => {
                        let inv = s.inverse().ok_or(Error::Parse {
                            pos,
                            msg: "can only divide by a nonzero monomial".into(),
                        })?;
                        coef = coef * inv;
                    }
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: "bad divisor".into(),
                        })
                    }
                }
            }
            p.eat_sym('*');
        };
        if negate {
            coef = -coef;
        }
        out.push(StateTerm { coef, keys, bottom });
        if p.eat_sym('+') {
            negate = false;
        } else if p.eat_sym('-') {
            negate = true;
        } else {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}
