use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::superalg::{GeneratorSet, Scalar, SuperPoly};
use crate::tensor::TensorElement;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Hash,
    Star,
    Caret,
    Slash,
    Num(BigInt),
    Ident(String),
}

fn tokenize(text: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = offset + i + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '#' => Some(Tok::Hash),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(digits.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    gens: &'a Arc<GeneratorSet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a number")),
        }
    }

    /// atom := int ['/' int] | ident ['^' ['-'] int]
    fn atom(&mut self) -> Result<(SuperPoly, bool)> {
        let field = self.gens.field();
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let den = if self.eat(&Tok::Slash) { self.number()? } else { BigInt::from(1) };
                let c = Scalar::from_ratio(field, &n, &den).map_err(|e| Error::parse(self.line, col, e.to_string()))?;
                Ok((SuperPoly::constant(self.gens, c), true))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let sym = self
                    .gens
                    .lookup(&name)
                    .ok_or_else(|| Error::parse(self.line, col, format!("unknown generator `{name}`")))?;
                let mut exp: i64 = 1;
                if self.eat(&Tok::Caret) {
                    let neg = self.eat(&Tok::Minus);
                    let n = self.number()?;
                    let n: i64 = i64::try_from(n).map_err(|_| Error::parse(self.line, col, "exponent too large"))?;
                    exp = if neg { -n } else { n };
                }
                let base = SuperPoly::symbol(self.gens, sym);
                let value = if exp >= 0 {
                    base.pow(exp as u32)
                } else {
                    let inv = match sym {
                        crate::superalg::Symbol::Gen(i) if self.gens.is_invertible(i) => {
                            crate::superalg::Symbol::Inverse(i)
                        }
                        crate::superalg::Symbol::Inverse(i) => crate::superalg::Symbol::Gen(i),
                        _ => {
                            return Err(Error::parse(
                                self.line,
                                col,
                                format!("negative exponent on non-invertible `{name}`"),
                            ))
                        }
                    };
                    SuperPoly::symbol(self.gens, inv).pow(exp.unsigned_abs() as u32)
                };
                Ok((value, false))
            }
            _ => Err(self.err("expected a number or a generator")),
        }
    }

    /// factor := atom ('*' atom)*; also reports whether it is purely numeric.
    fn factor(&mut self) -> Result<(SuperPoly, bool)> {
        let (mut acc, mut numeric) = self.atom()?;
        while self.eat(&Tok::Star) {
            let (a, n) = self.atom()?;
            acc = &acc * &a;
            numeric &= n;
        }
        Ok((acc, numeric))
    }

    /// term := factor ('#' factor)*
    fn term(&mut self, arity: usize) -> Result<TensorElement> {
        let col = self.col();
        let mut factors = vec![self.factor()?];
        while self.eat(&Tok::Hash) {
            factors.push(self.factor()?);
        }
        if arity == 0 {
            return match factors.as_slice() {
                [(p, true)] => Ok(TensorElement::scalar(self.gens, p.constant_term())),
                _ => Err(Error::parse(self.line, col, "expected a scalar")),
            };
        }
        if factors.len() != arity {
            // A lone zero is accepted in every block.
            if let [(p, true)] = factors.as_slice() {
                if p.is_zero() {
                    return Ok(TensorElement::zero(self.gens, arity));
                }
            }
            return Err(Error::parse(
                self.line,
                col,
                format!("expected {arity} tensor factors, found {}", factors.len()),
            ));
        }
        let polys: Vec<SuperPoly> = factors.into_iter().map(|(p, _)| p).collect();
        TensorElement::decomposable(self.gens, &polys)
    }

    /// expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self, arity: usize) -> Result<TensorElement> {
        let mut acc = TensorElement::zero(self.gens, arity);
        let mut negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let t = self.term(arity)?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(&Tok::Plus) {
                negate = false;
            } else if self.eat(&Tok::Minus) {
                negate = true;
            } else {
                break;
            }
        }
        if self.pos < self.toks.len() {
            return Err(self.err("unexpected token"));
        }
        Ok(acc)
    }
}

pub(super) fn parse_expr_at(
    gens: &Arc<GeneratorSet>,
    text: &str,
    arity: usize,
    line: usize,
    offset: usize,
) -> Result<TensorElement> {
    let toks = tokenize(text, line, offset)?;
    let end_col = offset + text.chars().count() + 1;
    if toks.is_empty() {
        return Err(Error::parse(line, end_col, "empty expression"));
    }
    Parser { toks, pos: 0, line, end_col, gens }.expr(arity)
}

/// Parses one expression of the given tensor arity (0 for scalars).
pub fn parse_expr(gens: &Arc<GeneratorSet>, text: &str, arity: usize) -> Result<TensorElement> {
    parse_expr_at(gens, text, arity, 1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalg::{Field, Generator};

    fn gens() -> Arc<GeneratorSet> {
        Arc::new(
            GeneratorSet::new(Field::Rational, vec![Generator::invertible("x", "xinv"), Generator::odd("theta")])
                .unwrap(),
        )
    }

    #[test]
    fn parses_and_renders_back() {
        let g = gens();
        for (text, arity) in [
            ("x # xinv # theta - x # x^-2*theta # x + theta # x^-1 # x", 3),
            ("2*x # theta", 2),
            ("-1/2 # theta", 2),
            ("0", 2),
        ] {
            let e = parse_expr(&g, text, arity).unwrap();
            let again = parse_expr(&g, &e.to_string(), arity).unwrap();
            assert_eq!(again, e, "{text}");
        }
    }

    #[test]
    fn inverse_alias_equals_negative_exponent() {
        let g = gens();
        assert_eq!(parse_expr(&g, "xinv^2", 1).unwrap(), parse_expr(&g, "x^-2", 1).unwrap());
        assert_eq!(parse_expr(&g, "xinv^-1", 1).unwrap(), parse_expr(&g, "x", 1).unwrap());
    }

    #[test]
    fn errors_are_positioned() {
        let g = gens();
        let err = parse_expr(&g, "x # y", 2).unwrap_err();
        assert_eq!(err, Error::parse(1, 5, "unknown generator `y`"));
        assert!(matches!(parse_expr(&g, "theta^-1", 1), Err(Error::Parse { col: 1, .. })));
        assert!(matches!(parse_expr(&g, "x # x", 0), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr(&g, "x +", 1), Err(Error::Parse { col: 4, .. })));
    }
}
