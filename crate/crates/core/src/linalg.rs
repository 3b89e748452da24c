//! Rank of a family of polynomials over `Q(t)`.
//!
//! Each polynomial is a sparse row indexed by its monomials. Rows whose
//! supports never meet (directly or through other rows) are eliminated
//! independently, which keeps weight blocks apart.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::{Monomial, Poly};
use crate::scalar::QScalar;

type Row = BTreeMap<usize, QScalar>;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Dimension of the span of `polys`.
pub fn rank(polys: &[Poly]) -> usize {
    let mut columns: HashMap<&Monomial, usize> = HashMap::new();
    let rows: Vec<Row> = polys
        .iter()
        .map(|p| {
            p.terms()
                .map(|(m, c)| {
                    let next = columns.len();
                    (*columns.entry(m).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect();
    rank_of_rows(rows, columns.len())
}

/// Rank of a dense matrix with entries in `Q(t)`.
pub fn matrix_rank(matrix: &[Vec<QScalar>]) -> usize {
    let width = matrix.iter().map(Vec::len).max().unwrap_or(0);
    let rows = matrix
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect())
        .collect();
    rank_of_rows(rows, width)
}

fn rank_of_rows(rows: Vec<Row>, width: usize) -> usize {
    let mut uf = UnionFind((0..width).collect());
    for row in &rows {
        let mut cols = row.keys();
        if let Some(&first) = cols.next() {
            for &c in cols {
                uf.union(first, c);
            }
        }
    }
    let mut blocks: HashMap<usize, Vec<Row>> = HashMap::new();
    for row in rows {
        if let Some(&first) = row.keys().next() {
            blocks.entry(uf.find(first)).or_default().push(row);
        }
    }
    let blocks: Vec<Vec<Row>> = blocks.into_values().collect();
    blocks.into_par_iter().map(echelon_rank).sum()
}

/// Sparse row echelon form; pivots are normalized to leading coefficient 1.
fn echelon_rank(rows: Vec<Row>) -> usize {
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for mut row in rows {
        while let Some((&lead, c)) = row.iter().next() {
            match pivots.get(&lead) {
                Some(piv) => {
                    let c = c.clone();
                    for (j, v) in piv {
                        let entry = row.entry(*j).or_insert_with(QScalar::zero);
                        *entry = &*entry - &(&c * v);
                        if entry.is_zero() {
                            row.remove(j);
                        }
                    }
                }
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    let normalized = row.into_iter().map(|(j, v)| (j, v * &inv)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Space;

    #[test]
    fn rank_of_dependent_family() {
        let s = Space::new(3).unwrap();
        let x1 = Poly::generator(&s, 1).unwrap();
        let x2 = Poly::generator(&s, 2).unwrap();
        let t = QScalar::t_pow(1);
        let combo = x1.scale(&t) + x2.scale(&(QScalar::one() - QScalar::q()));
        assert_eq!(rank(&[x1.clone(), x2.clone(), combo]), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[Poly::zero(&s)]), 0);
        assert_eq!(rank(&[x1, x2, Poly::one(&s)]), 3);
    }

    #[test]
    fn matrix_rank_over_rational_functions() {
        let q = QScalar::q();
        let one = QScalar::one();
        let m = vec![vec![one.clone(), q.clone()], vec![q.clone(), &q * &q]];
        assert_eq!(matrix_rank(&m), 1);
        let m = vec![vec![one.clone(), q.clone()], vec![q.clone(), one.clone()]];
        assert_eq!(matrix_rank(&m), 2);
    }
}
