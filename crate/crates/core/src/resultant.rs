//! Sylvester matrices and exact resultants over `Q[a_1, ..., a_n]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{invalid, Error, Result};
use crate::multipoly::MultiPoly;
use crate::unipoly::{generic_casas_polynomial, UniPoly};

/// Square Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted
/// rows of `f`'s coefficients followed by m shifted rows of `g`'s, highest
/// degree leftmost.
#[derive(Clone, Debug, PartialEq)]
pub struct SylvesterMatrix {
    entries: Vec<Vec<MultiPoly>>,
}

impl SylvesterMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    pub fn into_rows(self) -> Vec<Vec<MultiPoly>> {
        self.entries
    }
}

pub fn sylvester_matrix(f: &UniPoly, g: &UniPoly) -> Result<SylvesterMatrix> {
    if f.nvars() != g.nvars() {
        return Err(Error::AmbientMismatch { left: f.nvars(), right: g.nvars() });
    }
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(invalid("Sylvester matrix of a zero polynomial"));
    };
    if m == 0 || n == 0 {
        return Err(invalid("Sylvester matrix needs both polynomials of degree at least 1"));
    }
    let size = m + n;
    let zero = MultiPoly::zero(f.nvars());
    let mut entries = vec![vec![zero; size]; size];
    for r in 0..n {
        for k in 0..=m {
            entries[r][r + k] = f.coeff(m - k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            entries[n + r][r + k] = g.coeff(n - k);
        }
    }
    Ok(SylvesterMatrix { entries })
}

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn bareiss_determinant(matrix: &[Vec<MultiPoly>], budget: &Budget) -> Result<MultiPoly> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(invalid("determinant of a non-square matrix"));
    }
    let Some(nvars) = matrix.first().and_then(|r| r.first()).map(MultiPoly::nvars) else {
        return Err(invalid("determinant of an empty matrix"));
    };
    if matrix.iter().flatten().any(|e| e.nvars() != nvars) {
        return Err(invalid("matrix entries live in different rings"));
    }
    let mut m: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n {
        // Pivot: the sparsest non-zero entry in column k at or below row k.
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| (m[i][k].num_terms(), i));
        let Some(p) = pivot else {
            return Ok(MultiPoly::zero(nvars));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pkk = &pivot_row[k];
        rest.par_iter_mut().try_for_each(|row| -> Result<()> {
            let rik = std::mem::replace(&mut row[k], MultiPoly::zero(nvars));
            for j in k + 1..n {
                let mut num = pkk.mul_budgeted(&row[j], budget)?;
                if !rik.is_zero() && !pivot_row[j].is_zero() {
                    num = &num - &rik.mul_budgeted(&pivot_row[j], budget)?;
                }
                row[j] = if num.is_zero() { num } else { num.exact_div(&prev, budget)? };
            }
            Ok(())
        })?;
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<MultiPoly> {
    resultant_with_budget(f, g, &Budget::unlimited())
}

pub fn resultant_with_budget(f: &UniPoly, g: &UniPoly, budget: &Budget) -> Result<MultiPoly> {
    let s = sylvester_matrix(f, g)?;
    bareiss_determinant(s.entries(), budget)
}

/// `R_1, ..., R_(d-1)` with `R_i = Res(f, H_i(f))` for the generic `f` of degree d.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultantFamily {
    pub degree: usize,
    #[serde(serialize_with = "serialize_polys")]
    pub members: Vec<MultiPoly>,
}

fn serialize_polys<S: serde::Serializer>(polys: &[MultiPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(polys.iter().map(|p| p.to_string()))
}

impl ResultantFamily {
    pub fn nvars(&self) -> usize {
        self.degree - 1
    }

    /// `R_i` for `1 <= i <= d - 1`.
    pub fn get(&self, i: usize) -> &MultiPoly {
        &self.members[i - 1]
    }
}

pub fn casas_resultants(d: usize) -> Result<ResultantFamily> {
    casas_resultants_with_budget(d, &Budget::unlimited())
}

pub fn casas_resultants_with_budget(d: usize, budget: &Budget) -> Result<ResultantFamily> {
    if d < 2 {
        return Err(invalid(format!("resultant family needs degree at least 2, got {d}")));
    }
    let f = generic_casas_polynomial(d)?;
    let members = (1..d)
        .into_par_iter()
        .map(|i| resultant_with_budget(&f, &f.hasse_derivative(i)?, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(ResultantFamily { degree: d, members })
}
