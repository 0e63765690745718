//! Cantor normal form arithmetic below epsilon_0.
//!
//! Ordinals are represented as sums `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves ordinals of the same kind) and positive
//! natural coefficients. Zero is the empty sum.
//!
//! This module is deliberately self-contained: it is the independent oracle
//! against which the countable fragments of the notation systems are tested,
//! so it must not depend on them.

use std::cmp::Ordering;

/// An ordinal below epsilon_0 in Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordinal {
    /// Monomials `(exponent, coefficient)`, exponents strictly decreasing,
    /// coefficients >= 1.
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(Self::zero(), n)] }
        }
    }

    pub fn one() -> Self {
        Self::from_nat(1)
    }

    pub fn omega() -> Self {
        Ordinal { terms: vec![(Self::one(), 1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `w^self`.
    pub fn omega_pow(&self) -> Ordinal {
        Ordinal { terms: vec![(self.clone(), 1)] }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    /// Ordinal addition: monomials of `self` strictly below the leading
    /// monomial of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((head, head_coeff)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            match e.cmp(head) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => {
                    terms.push((e.clone(), c + head_coeff));
                    terms.extend(rhs.terms[1..].iter().cloned());
                    return Ordinal { terms };
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rhs.terms.iter().cloned());
        Ordinal { terms }
    }

    /// Multiplication by a natural number.
    pub fn mul_nat(&self, n: u64) -> Ordinal {
        if n == 0 || self.is_zero() {
            return Self::zero();
        }
        // Only the leading coefficient is multiplied: w^e*c*n + tail.
        let mut terms = self.terms.clone();
        terms[0].1 *= n;
        Ordinal { terms }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut i = 0;
        loop {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((e1, c1)), Some((e2, c2))) => {
                    match e1.cmp(e2).then(c1.cmp(c2)) {
                        Ordering::Equal => i += 1,
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl std::fmt::Display for Ordinal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if *e == Ordinal::one() {
                write!(f, "w")?;
                if *c > 1 {
                    write!(f, "*{c}")?;
                }
            } else {
                write!(f, "w^({e})")?;
                if *c > 1 {
                    write!(f, "*{c}")?;
                }
            }
        }
        Ok(())
    }
}
