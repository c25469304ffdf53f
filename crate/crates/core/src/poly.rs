use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense polynomial with integer coefficients, indexed by degree.
///
/// Trailing zeros are always trimmed, so two polynomials compare equal
/// exactly when they have the same coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn one() -> Self {
        IntPolynomial::new(vec![1])
    }

    /// Builds the polynomial whose coefficient `i` counts the occurrences of `i`.
    pub fn from_histogram<I: IntoIterator<Item = usize>>(values: I) -> Self {
        let mut coeffs = Vec::new();
        for v in values {
            if coeffs.len() <= v {
                coeffs.resize(v + 1, 0);
            }
            coeffs[v] += 1;
        }
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree of the highest nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_at_one(&self) -> Result<i64> {
        self.coeffs.iter().try_fold(0i64, |acc, &c| {
            acc.checked_add(c).ok_or(Error::Overflow("polynomial evaluation"))
        })
    }
}

impl From<Vec<i64>> for IntPolynomial {
    fn from(coeffs: Vec<i64>) -> Self {
        IntPolynomial::new(coeffs)
    }
}

impl From<IntPolynomial> for Vec<i64> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{mag}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_reports_degree() {
        let p = IntPolynomial::new(vec![1, 4, 1, 0, 0]);
        assert_eq!(p.coeffs(), &[1, 4, 1]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval_at_one().unwrap(), 6);
        assert_eq!(IntPolynomial::new(vec![0, 0]).degree(), None);
    }

    #[test]
    fn histogram() {
        let p = IntPolynomial::from_histogram([0, 1, 1, 1, 2, 1]);
        assert_eq!(p, IntPolynomial::new(vec![1, 4, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::new(vec![1, 4, 1]).to_string(), "1 + 4t + t^2");
        assert_eq!(IntPolynomial::new(vec![1, -1]).to_string(), "1 - t");
        assert_eq!(IntPolynomial::new(vec![0, 0, 3]).to_string(), "3t^2");
        assert_eq!(IntPolynomial::default().to_string(), "0");
    }

    #[test]
    fn serializes_as_plain_list() {
        let p = IntPolynomial::new(vec![1, 2, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,2,1]");
        let back: IntPolynomial = serde_json::from_str("[1,2,1,0]").unwrap();
        assert_eq!(back, p);
    }
}
