use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error};
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grevlex,
}

/// Monomial order, optionally applied after renaming variables.
///
/// With `perm = Some(p)`, variable `p[0]` is the largest, `p[1]` the next,
/// and so on; without it `a_1 > a_2 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, perm: None }
    }

    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Result<Self, Error> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(invalid(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(MonomialOrder { kind, perm: Some(perm) })
    }

    #[inline]
    fn exp(&self, m: &Monomial, rank: usize) -> u32 {
        match &self.perm {
            Some(p) => m.exponent(p[rank]),
            None => m.exponent(rank),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.perm.is_none() {
            return match self.kind {
                OrderKind::Lex => a.cmp_lex(b),
                OrderKind::Grevlex => a.cmp_grevlex(b),
            };
        }
        let n = a.nvars();
        match self.kind {
            OrderKind::Lex => {
                for r in 0..n {
                    match self.exp(a, r).cmp(&self.exp(b, r)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for r in (0..n).rev() {
                    match self.exp(a, r).cmp(&self.exp(b, r)) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// The same order on a ring with one more variable (index `nvars`),
    /// ranked above all the others. With the Rabinowitsch variable on top,
    /// `1 - t p` eliminates `t` early; placing it last is dramatically slower
    /// under lex.
    pub(crate) fn extended(&self, nvars: usize) -> MonomialOrder {
        let mut perm = vec![nvars];
        match &self.perm {
            Some(p) => perm.extend(p),
            None => perm.extend(0..nvars),
        }
        MonomialOrder { kind: self.kind, perm: Some(perm) }
    }

    pub fn tag(&self) -> String {
        let base = match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::Grevlex => "grevlex",
        };
        match &self.perm {
            None => base.to_string(),
            Some(p) => format!("{base}:{}", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (kind, perm) = match s.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (s, None),
        };
        let kind = match kind.trim() {
            "lex" => OrderKind::Lex,
            "grevlex" => OrderKind::Grevlex,
            other => return Err(invalid(format!("unknown monomial order {other:?}"))),
        };
        match perm {
            None => Ok(MonomialOrder { kind, perm: None }),
            Some(p) => {
                let perm = p
                    .split(',')
                    .map(|v| v.trim().parse::<usize>().map_err(|_| invalid(format!("bad permutation {p:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                MonomialOrder::with_permutation(kind, perm)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuted_lex() {
        let o = MonomialOrder::with_permutation(OrderKind::Lex, vec![1, 0]).unwrap();
        let a1 = Monomial::from_exponents(&[1, 0]);
        let a2 = Monomial::from_exponents(&[0, 1]);
        assert_eq!(o.cmp(&a2, &a1), Ordering::Greater);
        assert_eq!(MonomialOrder::lex().cmp(&a2, &a1), Ordering::Less);
        assert!(MonomialOrder::with_permutation(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn tags_round_trip() {
        for s in ["lex", "grevlex", "grevlex:2,0,1"] {
            assert_eq!(s.parse::<MonomialOrder>().unwrap().tag(), s);
        }
        assert!("deglex".parse::<MonomialOrder>().is_err());
    }
}
