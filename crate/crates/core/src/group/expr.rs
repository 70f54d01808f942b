//! Group construction expressions: `expr := term ('*' term)*`,
//! `term := ('C'|'D'|'Q'|'H'|'M') integer`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constructor {
    /// Cyclic group of order k.
    Cyclic,
    /// Dihedral group of order k.
    Dihedral,
    /// Generalized quaternion group of order 2^j.
    Quaternion,
    /// Extraspecial group of order p^3 and exponent p, p odd.
    Heisenberg,
    /// `<a, b | a^(p^(j-1)) = b^p = 1, b^-1 a b = a^(1+p^(j-2))>`.
    Modular,
}

impl Constructor {
    pub fn letter(self) -> char {
        match self {
            Self::Cyclic => 'C',
            Self::Dihedral => 'D',
            Self::Quaternion => 'Q',
            Self::Heisenberg => 'H',
            Self::Modular => 'M',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'C' => Self::Cyclic,
            'D' => Self::Dihedral,
            'Q' => Self::Quaternion,
            'H' => Self::Heisenberg,
            'M' => Self::Modular,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Leaf(Constructor, u64),
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

impl GroupExpr {
    pub fn leaf(c: Constructor, k: u64) -> Self {
        Self::Leaf(c, k)
    }

    /// Left-nested product of the given terms.
    pub fn product_of(terms: impl IntoIterator<Item = GroupExpr>) -> Option<Self> {
        terms
            .into_iter()
            .reduce(|acc, t| Self::Product(Box::new(acc), Box::new(t)))
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<(Constructor, u64)> {
        match self {
            Self::Leaf(c, k) => vec![(*c, *k)],
            Self::Product(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }
}

/// Normalized form: no whitespace, `*` between terms.
impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(c, k) => write!(f, "{}{}", c.letter(), k),
            Self::Product(l, r) => write!(f, "{l}*{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: &'static str },
    #[error("unknown constructor '{letter}' at byte {offset}")]
    UnknownConstructor { offset: usize, letter: char },
    #[error("integer overflow at byte {offset}")]
    IntegerOverflow { offset: usize },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn term(&mut self) -> Result<GroupExpr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let letter = self.peek().ok_or(ExprError::Syntax {
            offset: start,
            msg: "expected a constructor",
        })?;
        if !letter.is_ascii_alphabetic() {
            return Err(ExprError::Syntax {
                offset: start,
                msg: "expected a constructor",
            });
        }
        let ctor = Constructor::from_letter(letter).ok_or(ExprError::UnknownConstructor {
            offset: start,
            letter,
        })?;
        self.pos += 1;
        let digits_at = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(ExprError::IntegerOverflow { offset: digits_at })?;
            self.pos += 1;
        }
        if self.pos == digits_at {
            return Err(ExprError::Syntax {
                offset: digits_at,
                msg: "expected an integer",
            });
        }
        if value == 0 {
            return Err(ExprError::Syntax {
                offset: digits_at,
                msg: "integer must be at least 1",
            });
        }
        Ok(GroupExpr::Leaf(ctor, value))
    }

    fn expr(&mut self) -> Result<GroupExpr, ExprError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = GroupExpr::Product(Box::new(acc), Box::new(rhs));
                }
                Some(_) => {
                    return Err(ExprError::Syntax {
                        offset: self.pos,
                        msg: "expected '*' or end of input",
                    })
                }
            }
        }
    }
}

pub fn parse_group_expr(text: &str) -> Result<GroupExpr, ExprError> {
    Parser { src: text, pos: 0 }.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Constructor::*;

    #[test]
    fn single_leaf() {
        assert_eq!(parse_group_expr("C8").unwrap(), GroupExpr::Leaf(Cyclic, 8));
    }

    #[test]
    fn products_nest_left() {
        let e = parse_group_expr("D16*C2*C2*C2*C2").unwrap();
        let expected = GroupExpr::product_of(
            std::iter::once(GroupExpr::leaf(Dihedral, 16))
                .chain(std::iter::repeat_n(GroupExpr::leaf(Cyclic, 2), 4)),
        )
        .unwrap();
        assert_eq!(e, expected);
        // outermost right child is a leaf
        match &e {
            GroupExpr::Product(l, r) => {
                assert_eq!(**r, GroupExpr::leaf(Cyclic, 2));
                assert_eq!(l.leaves().len(), 4);
            }
            _ => panic!("expected a product"),
        }
        let q = parse_group_expr("C4*C4*C4*C4").unwrap();
        assert_eq!(q.leaves(), vec![(Cyclic, 4); 4]);
    }

    #[test]
    fn whitespace_is_ignored_and_normalized() {
        let e = parse_group_expr("  C9 *\tC3 ").unwrap();
        assert_eq!(e.to_string(), "C9*C3");
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_group_expr("X9"),
            Err(ExprError::UnknownConstructor {
                offset: 0,
                letter: 'X'
            })
        );
        assert_eq!(
            parse_group_expr("C4*"),
            Err(ExprError::Syntax {
                offset: 3,
                msg: "expected a constructor"
            })
        );
        assert!(matches!(
            parse_group_expr("C"),
            Err(ExprError::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            parse_group_expr("C4 C2"),
            Err(ExprError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse_group_expr("C0"),
            Err(ExprError::Syntax { offset: 1, .. })
        ));
        assert_eq!(
            parse_group_expr("C99999999999999999999999"),
            Err(ExprError::IntegerOverflow { offset: 1 })
        );
        assert!(parse_group_expr("").is_err());
    }
}
