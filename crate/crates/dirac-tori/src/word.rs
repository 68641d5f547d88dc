//! Generator-word DSL for building group elements.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! word  := term (';' term)*
//! term  := 'sigma' '{' int (',' int)* '}' | 'sigma' '{' '}'
//!        | 'rho' matrix | 'nu' matrix | 'raw' matrix | 'inv' '(' term ')'
//! matrix:= '[' row (',' row)* ']'
//! row   := '[' rational (',' rational)* ']'
//! rational := int | int '/' int
//! ```
//!
//! Composition order is leftmost-applied-first: the word "t1;...;tk"
//! evaluates to the matrix product M(tk) * ... * M(t1).

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{rat_to_string, IntegerMatrix, Rat, RationalMatrix};
use num::{BigInt, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Sigma(Vec<usize>),
    Rho(IntegerMatrix),
    Nu(IntegerMatrix),
    Raw(RationalMatrix),
    Inv(Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    pub terms: Vec<Term>,
}

impl Word {
    pub fn empty() -> Self {
        Word { terms: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn int_matrix_text(m: &IntegerMatrix) -> String {
    matrix_text(&m.to_rational())
}

fn matrix_text(m: &RationalMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = m.row(i).iter().map(rat_to_string).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Sigma(idx) => {
                let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                write!(f, "sigma{{{}}}", parts.join(","))
            }
            Term::Rho(m) => write!(f, "rho{}", int_matrix_text(m)),
            Term::Nu(m) => write!(f, "nu{}", int_matrix_text(m)),
            Term::Raw(m) => write!(f, "raw{}", matrix_text(m)),
            Term::Inv(t) => write!(f, "inv({t})"),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn keyword(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a term keyword (sigma, rho, nu, raw, inv)");
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.text.get(self.pos) == Some(&b'-') || self.text.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected an integer");
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn rational(&mut self) -> Result<Rat> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    fn matrix(&mut self) -> Result<RationalMatrix> {
        self.expect(b'[')?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        loop {
            self.expect(b'[')?;
            let mut row = vec![self.rational()?];
            while self.peek() == Some(b',') {
                self.pos += 1;
                row.push(self.rational()?);
            }
            self.expect(b']')?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return self.err("ragged matrix rows");
                }
            }
            rows.push(row);
            match self.peek() {
                Some(b',') => self.pos += 1,
                _ => break,
            }
        }
        self.expect(b']')?;
        Ok(RationalMatrix::from_rows(rows))
    }

    fn integer_matrix(&mut self, ctx: &str) -> Result<IntegerMatrix> {
        let start = self.pos;
        let m = self.matrix()?;
        m.to_integer().map_err(|_| Error::ParseError {
            pos: start,
            msg: format!("{ctx} matrix must have integer entries"),
        })
    }

    fn term(&mut self) -> Result<Term> {
        match self.keyword()?.as_str() {
            "sigma" => {
                self.expect(b'{')?;
                let mut idx = Vec::new();
                if self.peek() != Some(b'}') {
                    loop {
                        let i = self.integer()?;
                        let i: usize = match TryInto::<u64>::try_into(&i) {
                            Ok(v) if v >= 1 => v as usize,
                            _ => return self.err("sigma indices must be positive integers"),
                        };
                        idx.push(i);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b'}')?;
                Ok(Term::Sigma(idx))
            }
            "rho" => Ok(Term::Rho(self.integer_matrix("rho")?)),
            "nu" => Ok(Term::Nu(self.integer_matrix("nu")?)),
            "raw" => Ok(Term::Raw(self.matrix()?)),
            "inv" => {
                self.expect(b'(')?;
                let inner = self.term()?;
                self.expect(b')')?;
                Ok(Term::Inv(Box::new(inner)))
            }
            other => self.err(format!("unknown term keyword {other:?}")),
        }
    }

    fn word(&mut self) -> Result<Word> {
        self.skip_ws();
        if self.pos == self.text.len() {
            return Ok(Word::empty());
        }
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b';') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        self.skip_ws();
        if self.pos != self.text.len() {
            return self.err("trailing input after word");
        }
        Ok(Word { terms })
    }
}

/// Parse the generator-word DSL; the empty string is the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    Parser::new(text).word()
}

use crate::onn::GroupElement;

fn eval_term(term: &Term, n: usize) -> Result<GroupElement> {
    match term {
        Term::Sigma(idx) => GroupElement::sigma(idx, n),
        Term::Rho(a) => {
            if a.rows() != n || a.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "rho matrix is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
            GroupElement::rho(a)
        }
        Term::Nu(m) => {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "nu matrix is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            GroupElement::nu(m)
        }
        Term::Raw(m) => GroupElement::from_matrix(m, n),
        Term::Inv(t) => Ok(eval_term(t, n)?.inverse()),
    }
}

/// Evaluate "t1;...;tk" to M(tk) * ... * M(t1), leftmost term applied first.
pub fn eval_word(word: &Word, n: usize) -> Result<GroupElement> {
    let mut acc = GroupElement::identity(n);
    for term in &word.terms {
        let g = eval_term(term, n)?;
        acc = g.mul(&acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_cancels() {
        let w = parse_word("sigma{1};sigma{1}").unwrap();
        assert_eq!(eval_word(&w, 3).unwrap(), GroupElement::identity(3));
    }

    #[test]
    fn rho_word() {
        let w = parse_word("rho[[1,0],[1,1]]").unwrap();
        let g = eval_word(&w, 2).unwrap();
        assert_eq!(
            g,
            GroupElement::rho(&IntegerMatrix::from_i64(&[&[1, 0], &[1, 1]])).unwrap()
        );
    }

    #[test]
    fn nu_equals_conjugated_transvection() {
        let nu = eval_word(&parse_word("nu[[0,-1],[1,0]]").unwrap(), 2).unwrap();
        let conj = eval_word(&parse_word("sigma{1};rho[[1,0],[1,1]];sigma{1}").unwrap(), 2).unwrap();
        assert_eq!(nu, conj);
        assert_eq!(nu, GroupElement::nu_elementary(1, 2, 2).unwrap());
    }

    #[test]
    fn composition_order_is_leftmost_first() {
        // "a;b" must be M(b) * M(a)
        let a = parse_word("rho[[1,1],[0,1]]").unwrap();
        let b = parse_word("sigma{1}").unwrap();
        let ab = parse_word("rho[[1,1],[0,1]];sigma{1}").unwrap();
        let ga = eval_word(&a, 2).unwrap();
        let gb = eval_word(&b, 2).unwrap();
        assert_eq!(eval_word(&ab, 2).unwrap(), gb.mul(&ga).unwrap());
    }

    #[test]
    fn inv_and_raw_terms() {
        let w = parse_word("inv(rho[[1,2],[0,1]]);rho[[1,2],[0,1]]").unwrap();
        assert_eq!(eval_word(&w, 2).unwrap(), GroupElement::identity(2));

        let w = parse_word("raw[[2,0],[0,1/2]]").unwrap();
        let g = eval_word(&w, 1).unwrap();
        assert!(!g.is_integral());
    }

    #[test]
    fn empty_and_whitespace() {
        assert!(parse_word("").unwrap().is_empty());
        let w = parse_word("  sigma { 1 , 2 } ;  nu [ [0, -1], [1, 0] ] ").unwrap();
        assert_eq!(w.terms.len(), 2);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_word("sigma{1};bogus{2}") {
            Err(Error::ParseError { pos, .. }) => assert!(pos >= 9),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_word("rho[[1,1/2],[0,1]]").is_err());
        assert!(parse_word("sigma{0}").is_err());
        assert!(parse_word("sigma{1} sigma{2}").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "sigma{1,2}",
            "rho[[1,0],[1,1]]",
            "nu[[0,-1],[1,0]]",
            "raw[[1/2,0],[0,2]]",
            "inv(rho[[1,1],[0,1]])",
            "sigma{1};rho[[1,0],[1,1]];sigma{1}",
        ] {
            let w = parse_word(text).unwrap();
            assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn eval_dimension_errors() {
        let w = parse_word("sigma{9}").unwrap();
        assert!(matches!(eval_word(&w, 2), Err(Error::IndexOutOfRange(_))));
        let w = parse_word("rho[[1]]").unwrap();
        assert!(matches!(eval_word(&w, 2), Err(Error::DimensionMismatch(_))));
    }
}
