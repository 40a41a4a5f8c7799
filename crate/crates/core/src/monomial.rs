use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector over `a_1, ..., a_n`; position `j` holds the exponent of `a_{j+1}`.
///
/// The `Ord` impl is graded reverse lexicographic with `a_1 > a_2 > ...`,
/// which is the canonical iteration order for [`crate::MultiPoly`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// The monomial `a_{var+1}^exp`.
    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[var] = exp;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree with `weight(a_j) = j`.
    pub fn weighted_degree(&self) -> u32 {
        self.0.iter().enumerate().map(|(j, &e)| (j as u32 + 1) * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * n).collect())
    }

    /// The single variable this monomial is a pure power of, if any.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (j, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(j);
            }
        }
        found
    }

    /// Appends a variable with the given exponent.
    pub fn extend(&self, exp: u32) -> Monomial {
        let mut v = self.0.clone();
        v.push(exp);
        Monomial(v)
    }

    /// Drops the last variable, which must have exponent zero.
    pub fn truncate_last(&self) -> Option<Monomial> {
        match self.0.last() {
            Some(0) => Some(Monomial(SmallVec::from_slice(&self.0[..self.0.len() - 1]))),
            _ => None,
        }
    }

    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        // a1 > a2 > a3
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // a1*a3 vs a2^2: smaller exponent in last var wins
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert_eq!(m(&[0, 0, 0]).cmp(&m(&[0, 0, 0])), Ordering::Equal);
    }

    #[test]
    fn lex_basics() {
        assert_eq!(m(&[1, 0]).cmp_lex(&m(&[0, 5])), Ordering::Greater);
        assert_eq!(m(&[1, 2]).cmp_lex(&m(&[1, 3])), Ordering::Less);
    }

    #[test]
    fn divisibility_and_lcm() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert!(!m(&[0, 2]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 0]).divide_into(&m(&[2, 1])), Some(m(&[1, 1])));
        assert_eq!(m(&[2, 0]).lcm(&m(&[1, 3])), m(&[2, 3]));
        assert_eq!(m(&[0, 3, 0]).pure_power_var(), Some(1));
        assert_eq!(m(&[1, 3, 0]).pure_power_var(), None);
        assert_eq!(m(&[1, 1, 1]).weighted_degree(), 6);
    }
}
