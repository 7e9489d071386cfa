//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! poly     := sign? term (('+'|'-') term)*
//! term     := rational ('*' factor)* | factor ('*' factor)*
//! factor   := name ('^' posint)?
//! rational := int ('/' posint)?
//! ```
//!
//! Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{Monomial, ParameterSpace, Poly};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character `{}`", text[start..].chars().next().unwrap_or('?')),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    space: &'a ParameterSpace,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn posint(&mut self, what: &str) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) if !n.is_zero() => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.err(format!("expected positive integer {what}")),
        }
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let Some(Tok::Name(name)) = self.peek().cloned() else {
            return self.err("expected parameter name");
        };
        let Some(idx) = self.space.index_of(&name) else {
            return self.err(format!("unknown parameter `{name}`"));
        };
        self.pos += 1;
        let mut e = 1u32;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let n = self.posint("exponent")?;
            e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
        }
        exps[idx] += e;
        Ok(())
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut exps = vec![0u32; self.space.len()];
        let coeff = match self.peek() {
            Some(Tok::Int(n)) => {
                let num = n.clone();
                self.pos += 1;
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    self.posint("denominator")?
                } else {
                    BigInt::one()
                };
                Rational::new(num, den)
            }
            Some(Tok::Name(_)) => {
                self.factor(&mut exps)?;
                Rational::one()
            }
            _ => return self.err("expected a term"),
        };
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        Ok((Monomial(exps), coeff))
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        let mut negative = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negative = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
            match self.peek() {
                None => break,
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => return self.err("expected `+` or `-`"),
            }
            self.pos += 1;
        }
        Poly::from_terms(self.space, terms)
    }
}

pub(super) fn parse_poly(space: &ParameterSpace, text: &str) -> Result<Poly> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        space,
    };
    p.poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn parses_tau() {
        let s = ParameterSpace::family();
        let text = "-3/2*l1^2 - 3/2*l2^2 + 3/2*l3^2 + 3/2*l4^2";
        let p = Poly::parse(&s, text).unwrap();
        assert_eq!(p.to_string(), text);
        let l = s.vars();
        let q = &(&(&l[0] * &l[0]) + &(&l[1] * &l[1])) - &(&(&l[2] * &l[2]) + &(&l[3] * &l[3]));
        assert_eq!(p, q.scale(&rat(-3, 2)));
    }

    #[test]
    fn whitespace_and_repeated_factors() {
        let s = ParameterSpace::family();
        let a = Poly::parse(&s, " l1 * l1*2 ").unwrap_err();
        assert!(matches!(a, Error::Parse { .. }));
        let b = Poly::parse(&s, "2*l1*l1").unwrap();
        assert_eq!(b, Poly::parse(&s, "2 * l1^2").unwrap());
        assert_eq!(Poly::parse(&s, "0").unwrap(), Poly::zero(&s));
        assert_eq!(Poly::parse(&s, "l1 - l1").unwrap(), Poly::zero(&s));
    }

    #[test]
    fn errors_carry_positions() {
        let s = ParameterSpace::family();
        match Poly::parse(&s, "l1 + x2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        match Poly::parse(&s, "l1 +") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(Poly::parse(&s, "").is_err());
        assert!(Poly::parse(&s, "1/0*l1").is_err());
        assert!(Poly::parse(&s, "l1^0").is_err());
        assert!(Poly::parse(&s, "l1 # 2").is_err());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        let s = ParameterSpace::family();
        prop::collection::vec((prop::collection::vec(0u32..3, 4), -6i64..6, 1i64..4), 0..5).prop_map(move |terms| {
            Poly::from_terms(&s, terms.into_iter().map(|(e, n, d)| (Monomial(e), rat(n, d)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in small_poly(), b in small_poly(),
                                       v in prop::collection::vec((-4i64..4, 1i64..3), 4)) {
            let at: Vec<_> = v.iter().map(|&(n, d)| rat(n, d)).collect();
            prop_assert_eq!((&a * &b).eval_at(&at).unwrap(), a.eval_at(&at).unwrap() * b.eval_at(&at).unwrap());
            prop_assert_eq!((&a + &b).eval_at(&at).unwrap(), a.eval_at(&at).unwrap() + b.eval_at(&at).unwrap());
        }

        #[test]
        fn serialization_is_canonical(a in small_poly()) {
            let s = a.to_string();
            let back = Poly::parse(a.space(), &s).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
