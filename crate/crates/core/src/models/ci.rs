//! Complete intersections: `n = m` homogeneous generators forming a regular
//! sequence, where `epsilon` has the closed form `g_0^(p-1) ... g_(n-1)^(p-1)`
//! and the socle degree is `sum deg(g_i) - m`.

use super::ModelError;
use crate::groebner::IdealBasis;
use crate::matrix::PolyMatrix;
use crate::poly::{Polynomial, Ring};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct CompleteIntersectionSpec {
    ring: Ring,
    generators: Vec<Polynomial>,
    n_matrix: Option<PolyMatrix>,
}

impl CompleteIntersectionSpec {
    /// Validates that the generators form a regular sequence: the quotient is
    /// Artinian with total dimension the product of the generator degrees.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self, ModelError> {
        if generators.len() != ring.num_vars() {
            return Err(ModelError::NotCompleteIntersection(format!(
                "{} generators in {} variables",
                generators.len(),
                ring.num_vars()
            )));
        }
        let ideal = IdealBasis::new(ring, generators.clone())?;
        let gb = ideal.groebner();
        if !gb.is_artinian() {
            return Err(ModelError::NotCompleteIntersection(
                "quotient is not Artinian".to_string(),
            ));
        }
        let expected: usize = generators
            .iter()
            .map(|g| g.degree().unwrap() as usize)
            .product();
        let total = gb.total_dimension()?;
        if total != expected {
            return Err(ModelError::NotCompleteIntersection(format!(
                "quotient dimension {} differs from the degree product {}",
                total, expected
            )));
        }
        Ok(CompleteIntersectionSpec {
            ring: Arc::clone(ring),
            generators,
            n_matrix: None,
        })
    }

    /// Attach the matrix `N` with `(g) = N (x)`; the relation is checked
    /// entry by entry.
    pub fn with_matrix(
        ring: &Ring,
        generators: Vec<Polynomial>,
        n_matrix: PolyMatrix,
    ) -> Result<Self, ModelError> {
        let spec = Self::new(ring, generators)?;
        let n = ring.num_vars();
        assert_eq!((n_matrix.rows(), n_matrix.cols()), (n, n));
        for (i, g) in spec.generators.iter().enumerate() {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                acc = acc.add(&n_matrix.at(i, j).mul(&Polynomial::var(ring, j)));
            }
            if &acc != g {
                return Err(ModelError::MatrixRelation(i));
            }
        }
        Ok(CompleteIntersectionSpec {
            n_matrix: Some(n_matrix),
            ..spec
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn n_matrix(&self) -> Option<&PolyMatrix> {
        self.n_matrix.as_ref()
    }

    pub fn ideal(&self) -> IdealBasis {
        IdealBasis::new(&self.ring, self.generators.clone()).expect("validated at construction")
    }

    /// `s = -m + sum deg(g_i)`.
    pub fn socle_degree(&self) -> u32 {
        let total: u32 = self.generators.iter().map(|g| g.degree().unwrap()).sum();
        total - self.ring.num_vars() as u32
    }

    /// A coefficient matrix with `(g) = N (x)`, either the one supplied at
    /// construction or one derived by splitting each monomial at its first
    /// variable of positive exponent.
    pub fn coefficient_matrix(&self) -> PolyMatrix {
        if let Some(n) = &self.n_matrix {
            return n.clone();
        }
        let ring = &self.ring;
        let nvars = ring.num_vars();
        let mut rows = vec![vec![Polynomial::zero(ring); nvars]; nvars];
        for (i, g) in self.generators.iter().enumerate() {
            for (mono, coeff) in g.terms() {
                let v = mono
                    .exponents()
                    .iter()
                    .position(|&e| e > 0)
                    .expect("positive-degree generator");
                let mut exps = mono.exponents().to_vec();
                exps[v] -= 1;
                let cof = Polynomial::from_term(
                    ring,
                    crate::poly::Monomial::new(exps),
                    coeff.clone(),
                );
                rows[i][v] = rows[i][v].add(&cof);
            }
        }
        PolyMatrix::from_rows(ring, rows)
    }

    /// The volume normalized on the determinant class of the coefficient
    /// matrix; with this choice the closed form `prod g_i^(p-1)` is exactly
    /// the normalized epsilon.
    pub fn canonical_vol(&self) -> Result<crate::parseval::VolumeFunctional, ModelError> {
        let det = self.coefficient_matrix().determinant();
        Ok(crate::parseval::compute_vol_on_polynomial(&self.ideal(), &det)?)
    }

    /// The closed form `prod g_i^(p-1)`, expanded by repeated multiplication
    /// (independent of the Frobenius fast path).
    pub fn epsilon_oracle(&self) -> Polynomial {
        let p = u32::from(self.ring.field().characteristic());
        let mut acc = Polynomial::one(&self.ring);
        for g in &self.generators {
            let mut power = Polynomial::one(&self.ring);
            for _ in 0..(p - 1) {
                power = power.mul(g);
            }
            acc = acc.mul(&power);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::poly::{parse_polynomial, PolyRing};

    fn ring2(p: u64) -> Ring {
        PolyRing::new(FieldConfig::prime(p).unwrap(), vec!["x".into(), "y".into()])
    }

    fn polys(ring: &Ring, strs: &[&str]) -> Vec<Polynomial> {
        strs.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect()
    }

    #[test]
    fn epsilon_oracle_examples() {
        let ring = ring2(2);
        let spec = CompleteIntersectionSpec::new(&ring, polys(&ring, &["x^2", "y^2"])).unwrap();
        assert_eq!(spec.epsilon_oracle(), parse_polynomial(&ring, "x^2*y^2").unwrap());

        // p = 2 always gives the plain product
        let spec2 =
            CompleteIntersectionSpec::new(&ring, polys(&ring, &["x^2+x*y", "y^3"])).unwrap();
        assert_eq!(
            spec2.epsilon_oracle(),
            parse_polynomial(&ring, "x^2+x*y").unwrap().mul(&parse_polynomial(&ring, "y^3").unwrap())
        );

        let ring3 = PolyRing::new(
            FieldConfig::prime(3).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        );
        let spec3 = CompleteIntersectionSpec::new(
            &ring3,
            polys(&ring3, &["x^2", "y^3", "z^2"]),
        )
        .unwrap();
        let expect = parse_polynomial(&ring3, "x^4*y^6*z^4").unwrap();
        assert_eq!(spec3.epsilon_oracle(), expect);
    }

    #[test]
    fn socle_degree_formula() {
        let ring = ring2(3);
        let spec = CompleteIntersectionSpec::new(&ring, polys(&ring, &["x^2", "y^2"])).unwrap();
        assert_eq!(spec.socle_degree(), 2);
        assert_eq!(spec.ideal().groebner().socle_degree().unwrap(), 2);

        let ring3 = PolyRing::new(
            FieldConfig::prime(3).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        );
        let vars = CompleteIntersectionSpec::new(&ring3, polys(&ring3, &["x", "y", "z"])).unwrap();
        assert_eq!(vars.socle_degree(), 0);
        let spec3 =
            CompleteIntersectionSpec::new(&ring3, polys(&ring3, &["x^2", "y^3", "z^2"])).unwrap();
        assert_eq!(spec3.socle_degree(), 4);
        assert_eq!(spec3.ideal().groebner().socle_degree().unwrap(), 4);
    }

    #[test]
    fn rejects_non_regular_sequences() {
        let ring = ring2(3);
        // wrong count
        assert!(CompleteIntersectionSpec::new(&ring, polys(&ring, &["x^2"])).is_err());
        // not Artinian
        assert!(CompleteIntersectionSpec::new(&ring, polys(&ring, &["x^2", "x*y"])).is_err());
    }

    #[test]
    fn matrix_relation_checked() {
        let ring = ring2(3);
        let gens = polys(&ring, &["x^2", "y^2"]);
        let n = PolyMatrix::from_rows(
            &ring,
            vec![
                polys(&ring, &["x", "0"]),
                polys(&ring, &["0", "y"]),
            ],
        );
        let spec = CompleteIntersectionSpec::with_matrix(&ring, gens.clone(), n).unwrap();
        assert!(spec.n_matrix().is_some());

        let bad = PolyMatrix::from_rows(
            &ring,
            vec![polys(&ring, &["x", "0"]), polys(&ring, &["y", "0"])],
        );
        assert!(matches!(
            CompleteIntersectionSpec::with_matrix(&ring, gens, bad),
            Err(ModelError::MatrixRelation(1))
        ));
    }
}
