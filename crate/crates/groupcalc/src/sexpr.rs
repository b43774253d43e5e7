//! Parser for the prefix text form of expressions and group names.

use groupcalc_core::{Expr, GroupSpec, Primitive};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(src: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in src.char_indices() {
        let delim = c == '(' || c == ')' || c.is_whitespace();
        if delim {
            if let Some(s) = start.take() {
                out.push((s, Token::Atom(&src[s..i])));
            }
            match c {
                '(' => out.push((i, Token::Open)),
                ')' => out.push((i, Token::Close)),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, Token::Atom(&src[s..])));
    }
    out
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { tokens: tokenize(src), pos: 0, len: src.len() }
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |t| t.0)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { message: message.into(), offset: self.offset() })
    }

    fn next(&mut self) -> Result<Token<'a>, ParseError> {
        match self.tokens.get(self.pos) {
            Some((_, t)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => self.fail("unexpected end of input"),
        }
    }

    fn atom(&mut self, what: &str) -> Result<&'a str, ParseError> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Atom(a))) => {
                self.pos += 1;
                Ok(a)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn index(&mut self, what: &str) -> Result<usize, ParseError> {
        let at = self.offset();
        let a = self.atom(what)?;
        a.parse().map_err(|_| ParseError { message: format!("expected {what}, found `{a}`"), offset: at })
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let at = self.offset();
        let a = self.atom("a number")?;
        parse_number(a).ok_or(ParseError { message: format!("bad number `{a}`"), offset: at })
    }

    fn close(&mut self) -> Result<(), ParseError> {
        match self.next()? {
            Token::Close => Ok(()),
            _ => {
                self.pos -= 1;
                self.fail("expected `)`")
            }
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            self.fail("trailing input")
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.next()? {
            Token::Close => {
                self.pos -= 1;
                self.fail("unexpected `)`")
            }
            Token::Atom(a) => parse_number(a)
                .map(Expr::constant)
                .ok_or(ParseError { message: format!("unknown atom `{a}`"), offset: at }),
            Token::Open => {
                let head = self.atom("an operator")?;
                let e = match head {
                    "entry" => {
                        let arg = self.index("argument index")?;
                        let row = self.index("row")?;
                        let col = self.index("column")?;
                        Expr::entry(arg, row, col)
                    }
                    "coord" => {
                        let arg = self.index("argument index")?;
                        Expr::coord(arg, self.index("coordinate index")?)
                    }
                    "add" | "sub" | "mul" | "div" => {
                        let a = self.expr()?;
                        let b = self.expr()?;
                        match head {
                            "add" => a + b,
                            "sub" => a - b,
                            "mul" => a * b,
                            _ => a / b,
                        }
                    }
                    "neg" => -self.expr()?,
                    "exp" => self.expr()?.apply(Primitive::Exp),
                    "log" => self.expr()?.apply(Primitive::Log),
                    "sin" => self.expr()?.apply(Primitive::Sin),
                    "cos" => self.expr()?.apply(Primitive::Cos),
                    "recip" => self.expr()?.apply(Primitive::Recip),
                    "pow" => {
                        let c = self.number()?;
                        self.expr()?.apply(Primitive::Pow(c))
                    }
                    other => {
                        return Err(ParseError { message: format!("unknown operator `{other}`"), offset: at })
                    }
                };
                self.close()?;
                Ok(e)
            }
        }
    }

    fn group(&mut self) -> Result<GroupSpec, ParseError> {
        let at = self.offset();
        match self.next()? {
            Token::Atom(a) => parse_group_atom(a)
                .ok_or(ParseError { message: format!("unknown group `{a}`"), offset: at }),
            Token::Open => {
                let head = self.atom("`product`")?;
                if head != "product" {
                    return Err(ParseError { message: format!("unknown group constructor `{head}`"), offset: at });
                }
                let a = self.group()?;
                let b = self.group()?;
                self.close()?;
                Ok(GroupSpec::product(a, b))
            }
            Token::Close => {
                self.pos -= 1;
                self.fail("unexpected `)`")
            }
        }
    }
}

fn parse_number(a: &str) -> Option<f64> {
    a.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn parse_group_atom(a: &str) -> Option<GroupSpec> {
    let dim = |rest: &str| rest.parse::<usize>().ok().filter(|&n| n >= 1);
    match a {
        "heisenberg3" | "heisenberg" => Some(GroupSpec::Heisenberg3),
        "se2" => Some(GroupSpec::SE2),
        _ => {
            if let Some(rest) = a.strip_prefix("gl") {
                dim(rest).map(GroupSpec::GL)
            } else if let Some(rest) = a.strip_prefix('r') {
                dim(rest).map(GroupSpec::Translation)
            } else {
                None
            }
        }
    }
}

/// Parses the text printed by `Expr`'s `Display`.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses `heisenberg3`, `r<n>`, `gl<n>`, `se2` or `(product a b)`.
pub fn parse_group(src: &str) -> Result<GroupSpec, ParseError> {
    let mut p = Parser::new(src);
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let e = parse_expr("(mul (entry 0 0 1) (entry 1 0 1))").unwrap();
        assert_eq!(e, Expr::entry(0, 0, 1) * Expr::entry(1, 0, 1));
        let e = parse_expr(" (pow 2.0 (coord 0 0))").unwrap();
        assert_eq!(e, Expr::coord(0, 0).pow(2.0));
        assert_eq!(parse_expr("-1.5e-3").unwrap(), Expr::constant(-1.5e-3));
        assert_eq!(parse_expr("(neg (sin (coord 1 2)))").unwrap(), -Expr::coord(1, 2).sin());
    }

    #[test]
    fn reports_offsets() {
        assert_eq!(parse_expr("(mul 1.0)").unwrap_err().offset, 8);
        assert_eq!(parse_expr("(foo 1)").unwrap_err().message, "unknown operator `foo`");
        assert!(parse_expr("(add 1 2) 3").is_err());
        assert!(parse_expr("(entry 0 x 1)").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("nan").is_err());
    }

    #[test]
    fn parses_groups() {
        assert_eq!(parse_group("heisenberg3").unwrap(), GroupSpec::Heisenberg3);
        assert_eq!(parse_group("r2").unwrap(), GroupSpec::Translation(2));
        assert_eq!(parse_group("gl2").unwrap(), GroupSpec::GL(2));
        assert_eq!(
            parse_group("(product se2 r1)").unwrap(),
            GroupSpec::product(GroupSpec::SE2, GroupSpec::Translation(1))
        );
        assert!(parse_group("r0").is_err());
        assert!(parse_group("so3").is_err());
        for g in ["heisenberg3", "r3", "gl2", "se2", "(product heisenberg3 (product r1 gl3))"] {
            assert_eq!(parse_group(g).unwrap().to_string(), g);
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0usize..2, 0usize..3, 0usize..3).prop_map(|(a, r, c)| Expr::entry(a, r, c)),
            (0usize..2, 0usize..4).prop_map(|(a, k)| Expr::coord(a, k)),
            any::<f64>().prop_filter("finite", |v| v.is_finite()).prop_map(Expr::constant),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
                inner.clone().prop_map(|a| -a),
                inner.clone().prop_map(Expr::exp),
                inner.clone().prop_map(Expr::log),
                inner.clone().prop_map(Expr::sin),
                inner.clone().prop_map(Expr::cos),
                inner.clone().prop_map(Expr::recip),
                (-4.0f64..4.0, inner).prop_map(|(c, a)| a.pow(c)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_round_trips(e in arb_expr()) {
            prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }
}
