use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rug::ops::Pow;
use rug::{Float, Rational};

use super::consts::{const_gamma, const_pi};

/// A finite sum of monomials `q · π^i · γ^j` with rational `q`, where
/// `γ = Γ(1/4)`.
///
/// Terms are kept merged by `(i, j)` with zero coefficients dropped, so the
/// zero element is the empty map and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactCoeff {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl ExactCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::from(1))
    }

    pub fn rational(q: Rational) -> Self {
        Self::monomial(q, 0, 0)
    }

    pub fn monomial(q: Rational, pi_power: i32, gamma_power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if q != 0 {
            terms.insert((pi_power, gamma_power), q);
        }
        ExactCoeff { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(coeff, pi_power, gamma_power)` in ascending power order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, i32, i32)> {
        self.terms.iter().map(|(&(i, j), q)| (q, i, j))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if this is a pure rational (no π or γ dependence).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::new()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return Self::zero();
        }
        ExactCoeff {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, Rational::from(c * q)))
                .collect(),
        }
    }

    /// Multiplies by `π^di · γ^dj`.
    pub fn shift(&self, di: i32, dj: i32) -> Self {
        ExactCoeff {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + di, j + dj), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, key: (i32, i32), q: Rational) {
        if q == 0 {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += q;
                if *c == 0 {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, q);
            }
        }
    }

    /// `self += a * b` without materializing the product.
    pub fn add_product(&mut self, a: &ExactCoeff, b: &ExactCoeff) {
        for (&(i1, j1), q1) in &a.terms {
            for (&(i2, j2), q2) in &b.terms {
                self.add_term((i1 + i2, j1 + j2), Rational::from(q1 * q2));
            }
        }
    }

    /// Evaluates at `precision_bits`, accumulating with 64 guard bits.
    pub fn eval(&self, precision_bits: u32) -> Float {
        let work = precision_bits + 64;
        let pi = const_pi(work);
        let gamma = const_gamma(work).expect("working precision above minimum");
        let mut acc = Float::with_val(work, 0);
        for (&(i, j), q) in &self.terms {
            let mut t = Float::with_val(work, q);
            if i != 0 {
                t *= Float::with_val(work, (&pi).pow(i));
            }
            if j != 0 {
                t *= Float::with_val(work, (&gamma).pow(j));
            }
            acc += t;
        }
        Float::with_val(precision_bits, acc)
    }
}

impl From<Rational> for ExactCoeff {
    fn from(q: Rational) -> Self {
        ExactCoeff::rational(q)
    }
}

impl From<i64> for ExactCoeff {
    fn from(v: i64) -> Self {
        ExactCoeff::rational(Rational::from(v))
    }
}

impl<'a> Add<&'a ExactCoeff> for &'a ExactCoeff {
    type Output = ExactCoeff;
    fn add(self, rhs: &ExactCoeff) -> ExactCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ExactCoeff {
    type Output = ExactCoeff;
    fn add(mut self, rhs: ExactCoeff) -> ExactCoeff {
        self += &rhs;
        self
    }
}

impl AddAssign<&ExactCoeff> for ExactCoeff {
    fn add_assign(&mut self, rhs: &ExactCoeff) {
        for (&k, q) in &rhs.terms {
            self.add_term(k, q.clone());
        }
    }
}

impl SubAssign<&ExactCoeff> for ExactCoeff {
    fn sub_assign(&mut self, rhs: &ExactCoeff) {
        for (&k, q) in &rhs.terms {
            self.add_term(k, Rational::from(-q));
        }
    }
}

impl<'a> Sub<&'a ExactCoeff> for &'a ExactCoeff {
    type Output = ExactCoeff;
    fn sub(self, rhs: &ExactCoeff) -> ExactCoeff {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ExactCoeff {
    type Output = ExactCoeff;
    fn sub(mut self, rhs: ExactCoeff) -> ExactCoeff {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a ExactCoeff> for &'a ExactCoeff {
    type Output = ExactCoeff;
    fn mul(self, rhs: &ExactCoeff) -> ExactCoeff {
        let mut out = ExactCoeff::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Mul for ExactCoeff {
    type Output = ExactCoeff;
    fn mul(self, rhs: ExactCoeff) -> ExactCoeff {
        &self * &rhs
    }
}

impl Neg for ExactCoeff {
    type Output = ExactCoeff;
    fn neg(self) -> ExactCoeff {
        ExactCoeff {
            terms: self.terms.into_iter().map(|(k, q)| (k, -q)).collect(),
        }
    }
}

impl Neg for &ExactCoeff {
    type Output = ExactCoeff;
    fn neg(self) -> ExactCoeff {
        -self.clone()
    }
}

impl fmt::Display for ExactCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), q)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({q})")?;
            if i != 0 {
                write!(f, "*pi^{i}")?;
            }
            if j != 0 {
                write!(f, "*gamma^{j}")?;
            }
        }
        Ok(())
    }
}
