//! Dense matrices of polynomials, used for differentials and chain maps.

use crate::groebner::{FreeModuleShape, ModuleElement};
use crate::poly::{Polynomial, Ring};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>, // row-major
}

impl PolyMatrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: Arc::clone(ring),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix {
            ring: Arc::clone(ring),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Polynomial::one(ring);
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> Self {
        PolyMatrix {
            ring: Arc::clone(&self.ring),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = PolyMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    *out.at_mut(i, j) = out.at(i, j).add(&prod);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Column `c` as a module element of the target shape (rank = rows).
    pub fn column(&self, shape: &Arc<FreeModuleShape>, c: usize) -> ModuleElement {
        assert_eq!(shape.rank(), self.rows);
        let comps: Vec<(usize, Polynomial)> = (0..self.rows)
            .map(|r| (r, self.at(r, c).clone()))
            .collect();
        ModuleElement::from_components(&self.ring, shape, comps)
    }

    /// Apply to a module element of the source (rank = cols), producing one
    /// of the target shape.
    pub fn apply(&self, v: &ModuleElement, target: &Arc<FreeModuleShape>) -> ModuleElement {
        assert_eq!(v.shape().rank(), self.cols);
        let mut acc = ModuleElement::zero(&self.ring, target);
        for (c, p) in v.components() {
            let col = self.column(target, c);
            acc = acc.add(&col.mul_poly(p));
        }
        acc
    }

    /// Determinant by Laplace expansion; intended for the small coefficient
    /// matrices of complete intersections.
    pub fn determinant(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(&self.ring);
        }
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = Polynomial::zero(&self.ring);
        for c in 0..n {
            let entry = self.at(0, c);
            if entry.is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<Polynomial>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&cc| cc != c)
                        .map(|cc| self.at(r, cc).clone())
                        .collect()
                })
                .collect();
            let minor = PolyMatrix::from_rows(&self.ring, minor_rows).determinant();
            let term = entry.mul(&minor);
            acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|r| {
                let cells: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}
