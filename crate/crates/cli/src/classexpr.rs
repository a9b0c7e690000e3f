//! Parser for class expressions on the command line.
//!
//! Grammar, with whitespace allowed between tokens:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INTEGER | atom | '(' expr ')'
//! atom   := 'pt' | 'Gm' | 'A' '(' N ')' | 'P' '(' N ')'
//!         | 'curve' '(' 'g' '=' N ';' 'L' '=' '[' INT, ... ']' ')'
//!         | 'custom' '(' 'N' '=' '[' RAT, ... ']' ')'
//! ```
//!
//! Syntax errors carry the byte offset of the first offending position.
//! A grammatically valid curve atom can still be rejected by the class
//! module (for example a length mismatch between the genus and the
//! L-polynomial); those come back as `ClassParseError::Atom`.

use num_bigint::BigInt;
use wittzeta::grothendieck::{Atom, ClassError, ClassExpr};
use wittzeta::{parse_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassParseError {
    Syntax { offset: usize, message: String },
    Atom(ClassError),
}

impl std::fmt::Display for ClassParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassParseError::Syntax { offset, message } => {
                write!(f, "parse error at offset {offset}: {message}")
            }
            ClassParseError::Atom(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ClassParseError {}

pub fn parse_class(input: &str) -> Result<ClassExpr, ClassParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> ClassParseError {
        ClassParseError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, expected: u8) -> Result<(), ClassParseError> {
        self.skip_ws();
        if self.peek() == Some(expected) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", expected as char)))
        }
    }

    fn expr(&mut self) -> Result<ClassExpr, ClassParseError> {
        self.skip_ws();
        let negated = self.peek() == Some(b'-');
        if negated {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negated {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr, ClassParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ClassExpr, ClassParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(b')')?;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let digits = self.digits()?;
                Ok(ClassExpr::integer(digits.parse::<BigInt>().unwrap()))
            }
            Some(b) if b.is_ascii_alphabetic() => self.atom(),
            _ => Err(self.syntax("expected a class atom, integer, or `(`")),
        }
    }

    fn atom(&mut self) -> Result<ClassExpr, ClassParseError> {
        let start = self.pos;
        let name = self.ident();
        match name {
            "pt" => Ok(ClassExpr::point()),
            "Gm" => Ok(ClassExpr::atom(Atom::Torus)),
            "A" => Ok(ClassExpr::atom(Atom::Affine(self.dimension()?))),
            "P" => Ok(ClassExpr::atom(Atom::Projective(self.dimension()?))),
            "curve" => {
                self.eat(b'(')?;
                self.keyword("g")?;
                self.eat(b'=')?;
                let genus = self.uint()?;
                self.eat(b';')?;
                self.keyword("L")?;
                self.eat(b'=')?;
                let l_coeffs = self.int_list()?;
                self.eat(b')')?;
                Atom::curve(genus, l_coeffs)
                    .map(ClassExpr::atom)
                    .map_err(ClassParseError::Atom)
            }
            "custom" => {
                self.eat(b'(')?;
                self.keyword("N")?;
                self.eat(b'=')?;
                let counts = self.rat_list()?;
                self.eat(b')')?;
                Ok(ClassExpr::atom(Atom::custom(counts)))
            }
            "" => Err(self.syntax("expected a class atom")),
            other => {
                self.pos = start;
                Err(self.syntax(&format!("unknown atom `{other}`")))
            }
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap()
    }

    fn keyword(&mut self, word: &str) -> Result<(), ClassParseError> {
        self.skip_ws();
        let found = self.ident();
        if found == word {
            Ok(())
        } else {
            self.pos -= found.len();
            Err(self.syntax(&format!("expected `{word}`")))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ClassParseError> {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected digit"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn uint(&mut self) -> Result<u32, ClassParseError> {
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits()?;
        digits.parse::<u32>().map_err(|_| ClassParseError::Syntax {
            offset: at,
            message: format!("integer `{digits}` out of range"),
        })
    }

    fn dimension(&mut self) -> Result<u32, ClassParseError> {
        self.eat(b'(')?;
        self.skip_ws();
        let n = self.uint()?;
        self.eat(b')')?;
        Ok(n)
    }

    fn int_token(&mut self) -> Result<BigInt, ClassParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        self.digits()?;
        let token = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(token.parse::<BigInt>().unwrap())
    }

    fn rat_token(&mut self) -> Result<Rat, ClassParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.digits()?;
        }
        let token = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        parse_rat(token).map_err(|e| ClassParseError::Syntax {
            offset: start,
            message: e.to_string(),
        })
    }

    fn int_list(&mut self) -> Result<Vec<BigInt>, ClassParseError> {
        self.list(Parser::int_token)
    }

    fn rat_list(&mut self) -> Result<Vec<Rat>, ClassParseError> {
        self.list(Parser::rat_token)
    }

    fn list<T>(
        &mut self,
        element: fn(&mut Parser<'a>) -> Result<T, ClassParseError>,
    ) -> Result<Vec<T>, ClassParseError> {
        self.eat(b'[')?;
        let mut out = vec![element(self)?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b',') {
                self.pos += 1;
                out.push(element(self)?);
            } else {
                self.eat(b']')?;
                return Ok(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use wittzeta::grothendieck::CountingMeasure;
    use wittzeta::rat_i64;

    #[test]
    fn parses_sums_products_and_scalars() {
        let x = parse_class("P(2) + A(1) - pt").unwrap();
        assert_eq!(x.terms().len(), 3);

        let x = parse_class("3 * Gm").unwrap();
        let only = x.terms().iter().next().unwrap();
        assert_eq!(only.0, &vec![Atom::Torus]);
        assert_eq!(only.1, &BigInt::from(3));

        let x = parse_class("  - 2*pt + (P(1) - Gm) * A(2) ").unwrap();
        assert_eq!(x.terms().len(), 3);
    }

    #[test]
    fn parses_curve_and_custom_atoms() {
        let x = parse_class("curve(g=1; L=[1,-2,5]) * Gm").unwrap();
        let (monomial, c) = x.terms().iter().next().unwrap();
        assert_eq!(monomial.len(), 2);
        assert!(c.is_one());

        let x = parse_class("custom(N=[3, 9/2, 27])").unwrap();
        let measure = CountingMeasure::new(2, 3).unwrap();
        let ghosts = measure.ghosts(&x).unwrap();
        assert_eq!(ghosts.value(2), &(rat_i64(9) / rat_i64(2)));
    }

    #[test]
    fn reports_offsets_for_syntax_errors() {
        let err = parse_class("P(").unwrap_err();
        assert_eq!(
            err,
            ClassParseError::Syntax {
                offset: 2,
                message: "expected digit".to_string()
            }
        );

        let err = parse_class("pt + + Gm").unwrap_err();
        let ClassParseError::Syntax { offset, .. } = err else {
            panic!("expected syntax error");
        };
        assert_eq!(offset, 5);

        let err = parse_class("torus").unwrap_err();
        let ClassParseError::Syntax { offset, .. } = err else {
            panic!("expected syntax error");
        };
        assert_eq!(offset, 0);

        let err = parse_class("pt Gm").unwrap_err();
        let ClassParseError::Syntax { message, .. } = err else {
            panic!("expected syntax error");
        };
        assert_eq!(message, "unexpected trailing input");
    }

    #[test]
    fn rejects_invalid_curve_data_as_class_errors() {
        let err = parse_class("curve(g=2; L=[1,-2,5])").unwrap_err();
        assert!(matches!(
            err,
            ClassParseError::Atom(ClassError::BadLPolynomial { .. })
        ));
    }
}
