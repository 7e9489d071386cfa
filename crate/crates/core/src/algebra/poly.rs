use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{abs, format_rational, Rational};
use crate::error::{Error, Result};

/// Ordered, named parameters a polynomial ranges over.
#[derive(Clone)]
pub struct ParameterSpace {
    names: Arc<[String]>,
}

impl ParameterSpace {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for name in names {
            let name = name.as_ref();
            let mut chars = name.chars();
            let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidSpace(format!("bad parameter name `{name}`")));
            }
            if !seen.insert(name.to_string()) {
                return Err(Error::InvalidSpace(format!("duplicate parameter `{name}`")));
            }
        }
        Ok(Self {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    /// The four family parameters `l1..l4`.
    pub fn family() -> Self {
        Self::new(&["l1", "l2", "l3", "l4"]).expect("static names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The generator for parameter `index`.
    pub fn var(&self, index: usize) -> Poly {
        assert!(index < self.len(), "parameter index out of range");
        let mut exps = vec![0; self.len()];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Rational::one());
        Poly {
            space: self.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.len()).map(|i| self.var(i)).collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left: self.names.to_vec(),
                right: other.names.to_vec(),
            })
        }
    }
}

impl PartialEq for ParameterSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for ParameterSpace {}

impl fmt::Debug for ParameterSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Exponent vector, one entry per parameter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Graded lexicographic order, largest first.
    pub fn grlex_desc(a: &Monomial, b: &Monomial) -> Ordering {
        b.degree().cmp(&a.degree()).then_with(|| b.0.cmp(&a.0))
    }
}

/// Sparse polynomial with exact rational coefficients. The term map never
/// stores a zero coefficient, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Poly {
    space: ParameterSpace,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(space: &ParameterSpace) -> Self {
        Self {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: &ParameterSpace, value: Rational) -> Self {
        let mut p = Self::zero(space);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(space.len()), value);
        }
        p
    }

    pub fn from_int(space: &ParameterSpace, value: i64) -> Self {
        Self::constant(space, Rational::from_integer(value.into()))
    }

    /// Build from raw terms; zero coefficients are dropped and repeated
    /// monomials are summed.
    pub fn from_terms<I>(space: &ParameterSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(space);
        for (m, c) in terms {
            if m.0.len() != space.len() {
                return Err(Error::Shape(format!(
                    "monomial of length {} in a space of {} parameters",
                    m.0.len(),
                    space.len()
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn space(&self) -> &ParameterSpace {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a degree-0 polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.space.check(&other.space)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.space.check(&other.space)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.space.check(&other.space)?;
        let mut out = Poly::zero(&self.space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(&self.space);
        }
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut out = Poly::constant(&self.space, Rational::one());
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Exact evaluation. Only parameters that actually occur in `self` need
    /// an assignment.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut values = Vec::with_capacity(self.space.len());
        for (i, name) in self.space.names().iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] > 0);
            match assignment.get(name) {
                Some(v) => values.push(v.clone()),
                None if !used => values.push(Rational::zero()),
                None => return Err(Error::MissingAssignment(name.clone())),
            }
        }
        self.eval_at(&values)
    }

    /// Evaluate with values given positionally, in space order.
    pub fn eval_at(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.space.len() {
            return Err(Error::Shape(format!(
                "{} values for {} parameters",
                values.len(),
                self.space.len()
            )));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    term *= v;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitute values positionally, keeping the result in the same space.
    pub fn substitute(&self, values: &[Rational]) -> Result<Poly> {
        Ok(Poly::constant(&self.space, self.eval_at(values)?))
    }

    /// `Some(c)` when `self == c * other` for a rational `c`; `other` must be
    /// nonzero.
    pub fn rational_multiple_of(&self, other: &Poly) -> Option<Rational> {
        if self.space != other.space {
            return None;
        }
        let (m, c) = other.terms.iter().next()?;
        let factor = match self.terms.get(m) {
            Some(s) => s / c,
            None => Rational::zero(),
        };
        (other.scale(&factor) == *self).then_some(factor)
    }

    /// Terms in canonical (graded lexicographic, descending) order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| Monomial::grlex_desc(a.0, b.0));
        v
    }

    /// Parse the canonical grammar; see the crate README for the syntax.
    pub fn parse(space: &ParameterSpace, text: &str) -> Result<Poly> {
        super::parse::parse_poly(space, text)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = *c < Rational::zero();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&format_rational(&abs(c)))?;
            for (name, &e) in self.space.names().iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// Operator impls panic on a space mismatch; use the `checked_*` methods at
// API boundaries where operands may come from different sources.

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("poly add")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("poly sub")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("poly mul")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.space.check(&rhs.space).expect("poly add");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.space.check(&rhs.space).expect("poly sub");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}
