//! The minimal non-complete-intersection fixture: the five-generator height-3
//! Gorenstein ideal `(x^2, -yz, xy+z^2, -xz, y^2)` in three variables, with
//! its resolution differentials and the explicit chain maps to the Koszul
//! complex and from the Frobenius base change, instantiated at a given `p`.

use crate::complexes::{koszul_complex, GradedComplex};
use crate::field::FieldConfig;
use crate::groebner::{FreeModuleShape, IdealBasis};
use crate::lifting::ChainMap;
use crate::matrix::PolyMatrix;
use crate::poly::{parse_monomial, parse_polynomial, Monomial, PolyRing, Polynomial, Ring};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Everything the acceptance runs need about the fixture.
#[derive(Debug, Clone)]
pub struct NonCiFixture {
    pub ring: Ring,
    pub ideal: IdealBasis,
    pub vol_monomial: Monomial,
    /// The resolution with the reference differentials (the second one is
    /// skew-shaped; the last is the transpose of the first).
    pub resolution: Arc<GradedComplex>,
    pub resolution_hat: Arc<GradedComplex>,
    pub koszul: Arc<GradedComplex>,
    pub koszul_hat: Arc<GradedComplex>,
    /// Chain map resolution -> Koszul with top entry `x*y`.
    pub n_map: ChainMap,
    /// Chain map from the base-changed resolution with top entry `epsilon`.
    pub p_map: ChainMap,
    pub expected_nu: Polynomial,
    pub expected_epsilon: Polynomial,
    pub expected_socle: u32,
    pub expected_socle_hat: u32,
    pub expected_betti: Vec<usize>,
}

fn pm(ring: &Ring, rows: &[&[&str]]) -> PolyMatrix {
    let rows: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_polynomial(ring, s).unwrap())
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(ring, rows)
}

/// Build the fixture over `F_p`.
pub fn nonci_fixture(p: u64) -> NonCiFixture {
    let field = FieldConfig::prime(p).expect("p must be prime");
    let ring = PolyRing::new(field, vec!["x".into(), "y".into(), "z".into()]);
    let pu = p as u32;

    let gens: Vec<Polynomial> = ["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"]
        .iter()
        .map(|s| parse_polynomial(&ring, s).unwrap())
        .collect();
    let ideal = IdealBasis::new(&ring, gens.clone()).unwrap();

    // the reference resolution
    let mut terms = BTreeMap::new();
    terms.insert(0, FreeModuleShape::ring_shape());
    terms.insert(-1, FreeModuleShape::with_prefix(vec![2; 5], "a"));
    terms.insert(-2, FreeModuleShape::with_prefix(vec![3; 5], "b"));
    terms.insert(-3, FreeModuleShape::with_prefix(vec![5], "c"));
    let d1 = PolyMatrix::from_rows(&ring, vec![gens.clone()]);
    let d2 = pm(
        &ring,
        &[
            &["0", "y", "0", "0", "z"],
            &["-y", "0", "x", "z", "0"],
            &["0", "-x", "0", "y", "0"],
            &["0", "-z", "-y", "0", "x"],
            &["-z", "0", "0", "-x", "0"],
        ],
    );
    let d3 = d1.transpose();
    let mut diffs = BTreeMap::new();
    diffs.insert(-1, d1);
    diffs.insert(-2, d2);
    diffs.insert(-3, d3);
    let resolution = Arc::new(GradedComplex::new(
        &ring,
        terms,
        diffs,
        "S/(x^2, -y*z, x*y+z^2, -x*z, y^2)".to_string(),
    ));
    let resolution_hat = Arc::new(resolution.frobenius_base_change());

    let vars: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&ring, i)).collect();
    let koszul = Arc::new(koszul_complex(&ring, &vars));
    let koszul_hat = Arc::new(koszul.frobenius_base_change());

    // N : resolution -> Koszul
    let n1 = pm(
        &ring,
        &[
            &["x", "0", "0", "0", "0"],
            &["0", "0", "x", "0", "y"],
            &["0", "-y", "z", "-x", "0"],
        ],
    );
    let n2 = pm(
        &ring,
        &[
            &["y", "0", "0", "0", "0"],
            &["0", "0", "0", "0", "x"],
            &["0", "-x", "0", "0", "0"],
        ],
    );
    let n3 = pm(&ring, &[&["x*y"]]);
    let mut n_levels = BTreeMap::new();
    n_levels.insert(0, PolyMatrix::identity(&ring, 1));
    n_levels.insert(-1, n1);
    n_levels.insert(-2, n2);
    n_levels.insert(-3, n3);
    let n_map = ChainMap::new(&resolution, &koszul, n_levels);

    // P : base-changed resolution -> resolution, at this p
    let poly = |s: &str| parse_polynomial(&ring, s).unwrap();
    let a = poly("x*y+z^2").pow(pu - 1);
    // z * ((x*y + z^2)^(p-1) - z^(2p-2)), divisible by x*y
    let t = poly("z").mul(&a.sub(&poly("z").pow(2 * pu - 2)));
    let mono = |s: &str| {
        Polynomial::from_term(
            &ring,
            parse_monomial(&ring, s).unwrap(),
            ring.field().one(),
        )
    };
    let xexp = |e: u32| poly("x").pow(e);
    let yexp = |e: u32| poly("y").pow(e);
    let zexp = |e: u32| poly("z").pow(e);
    let zero = Polynomial::zero(&ring);

    let p1_diag = vec![
        xexp(2 * pu - 2),
        poly("-y*z").pow(pu - 1),
        a.clone(),
        poly("-x*z").pow(pu - 1),
        yexp(2 * pu - 2),
    ];
    let mut p1 = PolyMatrix::zero(&ring, 5, 5);
    for (i, e) in p1_diag.into_iter().enumerate() {
        *p1.at_mut(i, i) = e;
    }

    let mut p2 = PolyMatrix::zero(&ring, 5, 5);
    *p2.at_mut(0, 0) = yexp(2 * pu - 2).mul(&zexp(pu - 1));
    *p2.at_mut(0, 3) = if pu >= 2 { yexp(pu - 2).mul(&t) } else { zero.clone() };
    *p2.at_mut(1, 1) = xexp(pu - 1).mul(&a);
    *p2.at_mut(2, 2) = mono("x*y*z").pow(pu - 1);
    *p2.at_mut(3, 3) = yexp(pu - 1).mul(&a);
    *p2.at_mut(4, 1) = if pu >= 2 { xexp(pu - 2).mul(&t) } else { zero };
    *p2.at_mut(4, 4) = xexp(2 * pu - 2).mul(&zexp(pu - 1));

    let expected_epsilon = mono("x*y*z").pow(pu - 1).mul(&a);
    let mut p3 = PolyMatrix::zero(&ring, 1, 1);
    *p3.at_mut(0, 0) = expected_epsilon.clone();

    let mut p_levels = BTreeMap::new();
    p_levels.insert(0, PolyMatrix::identity(&ring, 1));
    p_levels.insert(-1, p1);
    p_levels.insert(-2, p2);
    p_levels.insert(-3, p3);
    let p_map = ChainMap::new(&resolution_hat, &resolution, p_levels);

    NonCiFixture {
        vol_monomial: parse_monomial(&ring, "x*y").unwrap(),
        expected_nu: poly("x*y"),
        expected_epsilon,
        expected_socle: 2,
        expected_socle_hat: (5 * pu - 3),
        expected_betti: vec![1, 5, 5, 1],
        ring,
        ideal,
        resolution,
        resolution_hat,
        koszul,
        koszul_hat,
        n_map,
        p_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::top_component;

    #[test]
    fn reference_complexes_verify() {
        for p in [2u64, 3, 5] {
            let fx = nonci_fixture(p);
            assert!(fx.resolution.verify(true).ok(), "p={}", p);
            assert!(fx.resolution_hat.verify(true).ok(), "p={}", p);
            assert_eq!(fx.resolution.betti_numbers(), fx.expected_betti);
        }
    }

    #[test]
    fn reference_chain_maps_verify() {
        for p in [2u64, 3] {
            let fx = nonci_fixture(p);
            let rep_n = fx.n_map.verify();
            assert!(rep_n.ok(), "p={}, N violations: {:?}", p, rep_n.violations);
            let rep_p = fx.p_map.verify();
            assert!(rep_p.ok(), "p={}, P violations: {:?}", p, rep_p.violations);
        }
    }

    #[test]
    fn top_components_match() {
        let fx = nonci_fixture(2);
        assert_eq!(
            top_component(&fx.n_map).unwrap().polynomial,
            fx.expected_nu
        );
        let eps = top_component(&fx.p_map).unwrap();
        assert_eq!(eps.polynomial, fx.expected_epsilon);
        assert_eq!(eps.degree, 5);
        assert_eq!(
            fx.expected_epsilon,
            parse_polynomial(&fx.ring, "x^2*y^2*z + x*y*z^3").unwrap()
        );
    }

    #[test]
    fn socle_degrees() {
        for p in [2u64, 3, 5] {
            let fx = nonci_fixture(p);
            assert_eq!(fx.expected_socle_hat, (5 * p - 3) as u32);
            let gb = fx.ideal.groebner();
            assert_eq!(gb.socle_degree().unwrap(), 2);
        }
    }

    #[test]
    fn negative_test_flipped_sign_breaks_commutation() {
        let fx = nonci_fixture(3);
        let mut levels = BTreeMap::new();
        for j in 0..=3 {
            levels.insert(-j, fx.n_map.level(-j).unwrap().clone());
        }
        let l2 = levels.get_mut(&-2).unwrap();
        *l2.at_mut(2, 1) = l2.at(2, 1).neg();
        let broken = ChainMap::new(&fx.resolution, &fx.koszul, levels);
        let rep = broken.verify();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.contains("commutation fails at level")));
    }
}
