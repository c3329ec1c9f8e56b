//! Exact-looking numbers for configuration files.
//!
//! Values such as `sqrt(3)/4` or `2*pi/49` are kept as written and evaluated
//! once, so incommensurate ratios are not truncated to a decimal in the file.
//!
//! Grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'pi' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real number together with the expression it was written as.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactReal {
    text: String,
    value: f64,
}

impl ExactReal {
    pub fn parse(text: &str) -> Result<Self, String> {
        let value = evaluate(text)?;
        Ok(ExactReal {
            text: text.trim().to_string(),
            value,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

impl From<f64> for ExactReal {
    fn from(value: f64) -> Self {
        ExactReal {
            text: format!("{value}"),
            value,
        }
    }
}

impl From<i32> for ExactReal {
    fn from(value: i32) -> Self {
        ExactReal::from(value as f64)
    }
}

impl From<&str> for ExactReal {
    /// Panics on a malformed expression; meant for literals in presets.
    fn from(text: &str) -> Self {
        ExactReal::parse(text).unwrap_or_else(|e| panic!("bad expression `{text}`: {e}"))
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

impl<'de> Deserialize<'de> for ExactReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;

        impl Visitor<'_> for V {
            type Value = ExactReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or an expression such as \"sqrt(3)/4\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactReal, E> {
                ExactReal::parse(v).map_err(E::custom)
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExactReal, E> {
                Ok(ExactReal::from(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactReal, E> {
                Ok(ExactReal::from(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactReal, E> {
                Ok(ExactReal::from(v as f64))
            }
        }

        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let v = lit
                .parse::<f64>()
                .map_err(|_| format!("bad number `{lit}`"))?;
            out.push(Token::Num(v));
        } else if c.is_ascii_alphabetic() || c == 'π' {
            if c == 'π' {
                out.push(Token::Ident("pi".into()));
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(
                chars[start..i].iter().collect::<String>().to_lowercase(),
            ));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, op: char) -> Result<(), String> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{op}`"))
        }
    }

    fn expr(&mut self) -> Result<f64, String> {
        let mut v = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            v = if op == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<f64, String> {
        let mut v = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            v = if op == '*' { v * rhs } else { v / rhs };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<f64, String> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<f64, String> {
        let base = self.primary()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(base.powf(exp));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<f64, String> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| "unexpected end of expression".to_string())?;
        self.pos += 1;
        match tok {
            Token::Num(v) => Ok(v),
            Token::Ident(name) => match name.as_str() {
                "pi" => Ok(std::f64::consts::PI),
                "sqrt" => {
                    self.expect('(')?;
                    let v = self.expr()?;
                    self.expect(')')?;
                    if v < 0.0 {
                        return Err("square root of a negative number".into());
                    }
                    Ok(v.sqrt())
                }
                other => Err(format!("unknown name `{other}`")),
            },
            Token::Op('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Token::Op(c) => Err(format!("unexpected `{c}`")),
        }
    }
}

/// Evaluates an expression in the grammar above.
pub fn evaluate(src: &str) -> Result<f64, String> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser { tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input in `{src}`"));
    }
    if !v.is_finite() {
        return Err(format!("`{src}` is not finite"));
    }
    Ok(v)
}
