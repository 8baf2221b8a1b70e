use std::fmt;

use thiserror::Error;

use super::{CurveClass, SurfaceKind, SurfaceModel};

/// Curves that may be twisted along directly in a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistCurve {
    A(u8),
    B0,
}

impl TwistCurve {
    pub fn class(self) -> CurveClass {
        match self {
            TwistCurve::A(i) => CurveClass::a(usize::from(i)),
            TwistCurve::B0 => CurveClass::b0(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Rho(u8),
    Tau(u8),
    Sigma(u8),
    Twist(TwistCurve),
    /// `A_ij = rho_i tau_j^-1 rho_i^-1 tau_j`
    RelA(u8, u8),
    /// `C_ij = tau_i rho_j^-1 tau_i^-1 rho_j`
    RelC(u8, u8),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Rho(i) => write!(f, "r{i}"),
            Generator::Tau(i) => write!(f, "t{i}"),
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::Twist(TwistCurve::A(i)) => write!(f, "Ta{i}"),
            Generator::Twist(TwistCurve::B0) => write!(f, "Tb0"),
            Generator::RelA(i, j) => write!(f, "A{i}{j}"),
            Generator::RelC(i, j) => write!(f, "C{i}{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: Generator, exponent: i64) -> Self {
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, -self.exponent)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}^{}", self.generator, self.exponent)
        }
    }
}

/// A word in mapping class generators; letters compose right to left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MCGWord {
    pub surface: SurfaceModel,
    pub letters: Vec<Letter>,
}

impl MCGWord {
    pub fn new(surface: SurfaceModel, letters: Vec<Letter>) -> Self {
        MCGWord { surface, letters }
    }

    pub fn identity(surface: SurfaceModel) -> Self {
        MCGWord { surface, letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> MCGWord {
        MCGWord::new(self.surface.clone(), self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self` followed by `other` as written, i.e. the composite `self ∘ other`.
    pub fn concat(&self, other: &MCGWord) -> MCGWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        MCGWord::new(self.surface.clone(), letters)
    }
}

impl fmt::Display for MCGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token {index} '{token}' at column {column}: {reason}")]
pub struct ParseError {
    /// 1-based token number.
    pub index: usize,
    /// 1-based character column of the token start.
    pub column: usize,
    pub token: String,
    pub reason: String,
}

fn parse_index(c: char) -> Option<u8> {
    match c {
        '1'..='4' => Some(c as u8 - b'0'),
        _ => None,
    }
}

fn parse_generator(body: &str, kind: SurfaceKind) -> Result<Generator, String> {
    let chars: Vec<char> = body.chars().collect();
    let torus_only = |g: Generator| {
        if kind == SurfaceKind::Torus4 {
            Ok(g)
        } else {
            Err(format!("'{body}' is only defined on torus4"))
        }
    };
    match chars.as_slice() {
        ['r', i] => torus_only(Generator::Rho(parse_index(*i).ok_or("index must be 1..4")?)),
        ['t', i] => torus_only(Generator::Tau(parse_index(*i).ok_or("index must be 1..4")?)),
        ['s', i] => {
            let i = parse_index(*i).filter(|&i| i <= 3).ok_or("sigma index must be 1..3")?;
            if kind == SurfaceKind::Sphere4 {
                Ok(Generator::Sigma(i))
            } else {
                Err(format!("'{body}' is only defined on sphere4"))
            }
        }
        ['T', 'a', d @ '0'..='3'] => torus_only(Generator::Twist(TwistCurve::A(*d as u8 - b'0'))),
        ['T', 'b', '0'] => torus_only(Generator::Twist(TwistCurve::B0)),
        [c @ ('A' | 'C'), i, j] => {
            let (i, j) = (
                parse_index(*i).ok_or("index must be 1..4")?,
                parse_index(*j).ok_or("index must be 1..4")?,
            );
            if i >= j {
                return Err("relation letters need i < j".into());
            }
            torus_only(if *c == 'A' { Generator::RelA(i, j) } else { Generator::RelC(i, j) })
        }
        _ => Err("unknown generator".into()),
    }
}

/// Parses whitespace-separated letters such as `t3^-1 r2 C12`.
pub fn parse_word(text: &str, s: &SurfaceModel) -> Result<MCGWord, ParseError> {
    let mut letters = Vec::new();
    let mut column = 0;
    let mut rest = text;
    let mut index = 0;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        column += rest[..start].chars().count();
        rest = &rest[start..];
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..end];
        index += 1;
        let fail = |reason: String| ParseError {
            index,
            column: column + 1,
            token: token.to_string(),
            reason,
        };
        let (body, exponent) = match token.split_once('^') {
            None => (token, 1),
            Some((b, e)) => {
                let e: i64 = e.parse().map_err(|_| fail(format!("malformed exponent '{e}'")))?;
                if e == 0 {
                    return Err(fail("exponent must be nonzero".into()));
                }
                (b, e)
            }
        };
        let generator = parse_generator(body, s.kind()).map_err(fail)?;
        letters.push(Letter::new(generator, exponent));
        column += token.chars().count();
        rest = &rest[end..];
    }
    Ok(MCGWord::new(s.clone(), letters))
}

fn expansion(g: Generator) -> Option<[Letter; 4]> {
    let l = Letter::new;
    match g {
        Generator::RelA(i, j) => Some([
            l(Generator::Rho(i), 1),
            l(Generator::Tau(j), -1),
            l(Generator::Rho(i), -1),
            l(Generator::Tau(j), 1),
        ]),
        Generator::RelC(i, j) => Some([
            l(Generator::Tau(i), 1),
            l(Generator::Rho(j), -1),
            l(Generator::Tau(i), -1),
            l(Generator::Rho(j), 1),
        ]),
        _ => None,
    }
}

/// Replaces each `A_ij` and `C_ij` letter by its four-letter definition.
/// No cancellation is performed; see [`free_reduce`].
pub fn expand_relations(w: &MCGWord) -> MCGWord {
    let mut letters = Vec::new();
    for &letter in &w.letters {
        match expansion(letter.generator) {
            None => letters.push(letter),
            Some(block) => {
                for _ in 0..letter.exponent.unsigned_abs() {
                    if letter.exponent > 0 {
                        letters.extend_from_slice(&block);
                    } else {
                        letters.extend(block.iter().rev().map(|l| l.inverse()));
                    }
                }
            }
        }
    }
    MCGWord::new(w.surface.clone(), letters)
}

/// Free-group reduction: merges adjacent powers of the same generator and
/// drops those that cancel.
pub fn free_reduce(w: &MCGWord) -> MCGWord {
    let mut out: Vec<Letter> = Vec::new();
    for &letter in &w.letters {
        match out.last_mut() {
            Some(top) if top.generator == letter.generator => {
                top.exponent += letter.exponent;
                if top.exponent == 0 {
                    out.pop();
                }
            }
            _ => out.push(letter),
        }
    }
    MCGWord::new(w.surface.clone(), out)
}
