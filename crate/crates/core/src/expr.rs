//! Manifold expressions.
//!
//! ```text
//! Expr := Term ('#' Term)*
//! Term := INT '*' Gen | Gen
//! Gen  := 'K3' | 'SP(' INT ',' INT ')' | 'CP2' | '~CP2' | 'S1xS3' | 'S4' | '@' FILEPATH
//! ```
//!
//! Whitespace between tokens is ignored. A file path runs to the next `#` or
//! the end of input and is trimmed. Connected sums associate to the left.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::atlas::{cp2, cp2bar, k3, s1xs3, s4, surface_product, ManifoldData};
use crate::descriptor::ManifoldDescriptor;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    K3,
    SurfaceProduct(u32, u32),
    Cp2,
    Cp2Bar,
    S1xS3,
    S4,
    File(String),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::K3 => write!(f, "K3"),
            Generator::SurfaceProduct(g, gp) => write!(f, "SP({g},{gp})"),
            Generator::Cp2 => write!(f, "CP2"),
            Generator::Cp2Bar => write!(f, "~CP2"),
            Generator::S1xS3 => write!(f, "S1xS3"),
            Generator::S4 => write!(f, "S4"),
            Generator::File(path) => write!(f, "@{path}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub multiplicity: u32,
    pub generator: Generator,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity == 1 {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}*{}", self.multiplicity, self.generator)
        }
    }
}

/// Parsed connected-sum expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldExpression {
    pub terms: Vec<Term>,
}

impl fmt::Display for ManifoldExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " # ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for ManifoldExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(input: &str) -> Result<ManifoldExpression> {
    let mut p = Parser { src: input, pos: 0 };
    let mut terms = vec![p.term()?];
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        let hash = p.pos;
        p.expect(b'#', "expected '#'")?;
        p.skip_ws();
        if p.at_end() {
            return Err(syntax(hash, "expected a term after trailing '#'"));
        }
        terms.push(p.term()?);
    }
    Ok(ManifoldExpression { terms })
}

fn syntax(offset: usize, message: &str) -> Error {
    Error::Syntax {
        offset,
        message: message.to_string(),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8, message: &str) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.pos, message))
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| syntax(start, "integer out of range"))
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        let mut multiplicity = 1;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let start = self.pos;
            multiplicity = self.int()?;
            if multiplicity == 0 {
                return Err(syntax(start, "multiplicity must be positive"));
            }
            self.expect(b'*', "expected '*' after multiplicity")?;
        }
        let generator = self.generator()?;
        Ok(Term { multiplicity, generator })
    }

    fn generator(&mut self) -> Result<Generator> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'@') {
            let rest = &self.src[start + 1..];
            let len = rest.find('#').unwrap_or(rest.len());
            let path = rest[..len].trim();
            if path.is_empty() {
                return Err(syntax(start, "expected a file path after '@'"));
            }
            self.pos = start + 1 + len;
            return Ok(Generator::File(path.to_string()));
        }
        while self.peek().is_some_and(|b| b.is_ascii_alphanumeric() || b == b'~') {
            self.pos += 1;
        }
        let word = &self.src[start..self.pos];
        match word {
            "" => Err(syntax(start, "expected a generator")),
            "K3" => Ok(Generator::K3),
            "CP2" => Ok(Generator::Cp2),
            "~CP2" => Ok(Generator::Cp2Bar),
            "S1xS3" => Ok(Generator::S1xS3),
            "S4" => Ok(Generator::S4),
            "SP" => {
                self.expect(b'(', "expected '(' after SP")?;
                let g = self.int()?;
                self.expect(b',', "expected ',' between genera")?;
                let gp = self.int()?;
                self.expect(b')', "expected ')'")?;
                Ok(Generator::SurfaceProduct(g, gp))
            }
            _ => Err(Error::UnknownGenerator {
                offset: start,
                token: word.to_string(),
            }),
        }
    }
}

impl Generator {
    fn build(&self, base: &Path) -> Result<ManifoldData> {
        Ok(match self {
            Generator::K3 => k3(),
            Generator::SurfaceProduct(g, gp) => surface_product(*g, *gp)?,
            Generator::Cp2 => cp2(),
            Generator::Cp2Bar => cp2bar(),
            Generator::S1xS3 => s1xs3(),
            Generator::S4 => s4(),
            Generator::File(path) => ManifoldDescriptor::from_path(&base.join(path))?.to_manifold()?,
        })
    }
}

impl ManifoldExpression {
    /// Builds the manifold, resolving `@file` paths against the working
    /// directory.
    pub fn resolve(&self) -> Result<ManifoldData> {
        self.resolve_in(Path::new("."))
    }

    /// Builds the manifold, resolving relative `@file` paths against `base`.
    pub fn resolve_in(&self, base: &Path) -> Result<ManifoldData> {
        let built = self
            .terms
            .iter()
            .map(|t| t.generator.build(base))
            .collect::<Result<Vec<_>>>()?;
        let parts = self
            .terms
            .iter()
            .zip(&built)
            .flat_map(|(t, m)| std::iter::repeat_n(m, t.multiplicity as usize));
        Ok(ManifoldData::connected_sum_all(parts))
    }
}
