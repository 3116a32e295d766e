//! Chain maps between graded free complexes: lifting quotient maps of cyclic
//! quotients, top-component extraction, and the Koszul comparison map.
//!
//! Lifting works level by level. The image of a source generator under the
//! previous level composed with the source differential is a cycle, hence a
//! member of the column module of the target differential by exactness; a
//! division with witnesses turns that membership into the next column of the
//! chain map. A division that leaves a remainder means the input complexes
//! were not resolutions, and is reported loudly.

use crate::complexes::{GradedComplex, KoszulBasisLabels, VerifyReport};
use crate::groebner::{groebner_basis, IdealGroebner, ModuleElement, ModuleGroebnerBasis};
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Polynomial};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("source ideal is not contained in the target ideal")]
    NotASubideal,
    #[error("complexes have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("complex fails verification: {0}")]
    InvalidComplex(String),
    #[error("division left a remainder at level {level}, column {column}: broken resolution")]
    BrokenResolution { level: i32, column: usize },
    #[error("expected the Koszul complex on {0}")]
    NotKoszul(String),
}

/// A degree-0 chain map between two complexes of equal length, stored as one
/// polynomial matrix per cohomological level.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: Arc<GradedComplex>,
    target: Arc<GradedComplex>,
    levels: BTreeMap<i32, PolyMatrix>,
}

impl ChainMap {
    pub fn new(
        source: &Arc<GradedComplex>,
        target: &Arc<GradedComplex>,
        levels: BTreeMap<i32, PolyMatrix>,
    ) -> Self {
        for (&i, m) in &levels {
            let src = source.term(i).expect("level without source term");
            let tgt = target.term(i).expect("level without target term");
            assert_eq!(m.cols(), src.rank(), "level {} has wrong cols", i);
            assert_eq!(m.rows(), tgt.rank(), "level {} has wrong rows", i);
        }
        ChainMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            levels,
        }
    }

    pub fn source(&self) -> &Arc<GradedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedComplex> {
        &self.target
    }

    pub fn level(&self, i: i32) -> Option<&PolyMatrix> {
        self.levels.get(&i)
    }

    /// `self` after `inner`: composition of `inner : A -> B` with
    /// `self : B -> C`.
    pub fn compose_after(&self, inner: &ChainMap) -> ChainMap {
        let levels = self
            .levels
            .iter()
            .filter_map(|(&i, m)| inner.levels.get(&i).map(|n| (i, m.mul(n))))
            .collect();
        ChainMap {
            source: Arc::clone(&inner.source),
            target: Arc::clone(&self.target),
            levels,
        }
    }

    /// Asserts level 0 is the identity, per-level commutation with the
    /// differentials, and degree-0 homogeneity of every entry.
    pub fn verify(&self) -> VerifyReport {
        let mut violations = Vec::new();
        match self.levels.get(&0) {
            None => violations.push("missing level 0".to_string()),
            Some(m) => {
                let id = PolyMatrix::identity(self.source.ring(), m.rows());
                if m != &id {
                    violations.push("level 0 is not the identity".to_string());
                }
            }
        }
        for (&i, m) in &self.levels {
            let src_shape = self.source.term(i).unwrap();
            let tgt_shape = self.target.term(i).unwrap();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let entry = m.at(r, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let want = src_shape.degrees()[c] - tgt_shape.degrees()[r];
                    if !(entry.is_homogeneous() && entry.degree().map(i64::from) == Some(want)) {
                        violations.push(format!(
                            "level {} entry ({}, {}) is not homogeneous of degree {}",
                            i, r, c, want
                        ));
                    }
                }
            }
            if i < 0 {
                let d_src = self.source.differential(i).unwrap();
                let d_tgt = self.target.differential(i).unwrap();
                if let Some(above) = self.levels.get(&(i + 1)) {
                    let lhs = d_tgt.mul(m);
                    let rhs = above.mul(d_src);
                    for r in 0..lhs.rows() {
                        for c in 0..lhs.cols() {
                            if lhs.at(r, c) != rhs.at(r, c) {
                                violations.push(format!(
                                    "commutation fails at level {} entry ({}, {})",
                                    i, r, c
                                ));
                            }
                        }
                    }
                } else {
                    violations.push(format!("missing level {}", i + 1));
                }
            }
        }
        VerifyReport { violations }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (&i, m) in self.levels.iter().rev() {
            out.push_str(&format!("level {}:\n{}\n", i, m.render()));
        }
        out
    }
}

/// The unique entry of the top level of a chain map between equal-length
/// complexes, read in the distinguished top generators.
#[derive(Debug, Clone)]
pub struct TopComponent {
    pub polynomial: Polynomial,
    pub degree: i64,
}

pub fn top_component(map: &ChainMap) -> Result<TopComponent, LiftError> {
    let ms = map.source().length();
    let mt = map.target().length();
    if ms != mt {
        return Err(LiftError::LengthMismatch(ms, mt));
    }
    let level = -(ms as i32);
    let m = map.level(level).expect("top level present");
    assert_eq!((m.rows(), m.cols()), (1, 1), "top terms must have rank one");
    let degree =
        map.source().term(level).unwrap().degrees()[0] - map.target().term(level).unwrap().degrees()[0];
    Ok(TopComponent {
        polynomial: m.at(0, 0).clone(),
        degree,
    })
}

/// Lift the quotient map `S/J -> S/I` to a chain map between resolutions of
/// the two quotients. `target_gb` is the membership oracle for `I` (also used
/// to check `J` is contained in `I`). `shuffle_seed` permutes the division
/// preference order inside the lifter; any seed yields a valid lift, and all
/// lifts agree up to homotopy.
pub fn lift_quotient_map(
    source: &Arc<GradedComplex>,
    target: &Arc<GradedComplex>,
    target_gb: &IdealGroebner,
    shuffle_seed: Option<u64>,
) -> Result<ChainMap, LiftError> {
    let ms = source.length();
    let mt = target.length();
    if ms != mt {
        return Err(LiftError::LengthMismatch(ms, mt));
    }
    for (name, c) in [("source", source), ("target", target)] {
        let rep = c.verify(false);
        if !rep.ok() {
            return Err(LiftError::InvalidComplex(format!(
                "{}: {}",
                name, rep.violations[0]
            )));
        }
    }
    // J is contained in I: every source generator reduces to zero
    let d1 = source.differential(-1).unwrap();
    for c in 0..d1.cols() {
        if !target_gb.contains(d1.at(0, c)) {
            return Err(LiftError::NotASubideal);
        }
    }

    let ring = Arc::clone(source.ring());
    let mut rng = shuffle_seed.map(ChaCha12Rng::seed_from_u64);
    let mut levels: BTreeMap<i32, PolyMatrix> = BTreeMap::new();
    levels.insert(0, PolyMatrix::identity(&ring, 1));

    // level -1 columns come from the ideal membership certificates
    {
        let src_shape = source.term(-1).unwrap();
        let tgt_shape = target.term(-1).unwrap();
        let mut m = PolyMatrix::zero(&ring, tgt_shape.rank(), src_shape.rank());
        let pref = make_pref(target_gb.module().elements().len(), &mut rng);
        for c in 0..src_shape.rank() {
            let v = ModuleElement::from_poly(d1.at(0, c).clone());
            let res = target_gb.module().divide_with_witness(&v, pref.as_deref());
            if !res.remainder.is_zero() {
                return Err(LiftError::BrokenResolution { level: -1, column: c });
            }
            for (r, q) in res.quotients.iter().enumerate() {
                *m.at_mut(r, c) = q.clone();
            }
        }
        levels.insert(-1, m);
    }

    // deeper levels: divide against the column module of the target
    // differential, whose Groebner basis is computed once per level
    for j in 2..=ms {
        let i = -(j as i32);
        let d_src = source.differential(i).unwrap();
        let d_tgt = target.differential(i).unwrap();
        let tgt_above = Arc::clone(target.term(i + 1).unwrap());
        let columns: Vec<ModuleElement> = (0..d_tgt.cols())
            .map(|c| d_tgt.column(&tgt_above, c))
            .collect();
        let gb: ModuleGroebnerBasis = groebner_basis(&columns);
        let pref = make_pref(gb.elements().len(), &mut rng);
        let prev = levels.get(&(i + 1)).unwrap().clone();
        let src_shape = source.term(i).unwrap();
        let src_above = Arc::clone(source.term(i + 1).unwrap());
        let mut m = PolyMatrix::zero(&ring, d_tgt.cols(), src_shape.rank());
        for c in 0..src_shape.rank() {
            let w = d_src.column(&src_above, c);
            let v = prev.apply(&w, &tgt_above);
            let res = gb.divide_with_witness(&v, pref.as_deref());
            if !res.remainder.is_zero() {
                return Err(LiftError::BrokenResolution { level: i, column: c });
            }
            for (r, q) in res.quotients.iter().enumerate() {
                *m.at_mut(r, c) = q.clone();
            }
        }
        levels.insert(i, m);
    }

    Ok(ChainMap::new(source, target, levels))
}

fn make_pref(n: usize, rng: &mut Option<ChaCha12Rng>) -> Option<Vec<usize>> {
    rng.as_mut().map(|r| {
        let mut pref: Vec<usize> = (0..n).collect();
        pref.shuffle(r);
        pref
    })
}

/// The multiplicative comparison map between the Koszul complex on the p-th
/// powers of the variables and the Koszul complex on the variables: diagonal
/// at every level, with entry `prod_{v in T} x_v^(p-1)` on the subset `T`.
pub fn koszul_comparison(
    khat: &Arc<GradedComplex>,
    k: &Arc<GradedComplex>,
) -> Result<ChainMap, LiftError> {
    let ring = Arc::clone(k.ring());
    let m = ring.num_vars();
    let p = ring.field().characteristic() as u16;
    if k.length() != m || khat.length() != m {
        return Err(LiftError::LengthMismatch(khat.length(), k.length()));
    }
    let d1 = k
        .differential(-1)
        .ok_or_else(|| LiftError::NotKoszul("the variables".into()))?;
    for v in 0..m {
        if d1.at(0, v) != &Polynomial::var(&ring, v) {
            return Err(LiftError::NotKoszul("the variables".into()));
        }
    }
    let d1h = khat.differential(-1).unwrap();
    for v in 0..m {
        if d1h.at(0, v) != &Polynomial::var(&ring, v).pow(u32::from(p)) {
            return Err(LiftError::NotKoszul("the p-th powers of the variables".into()));
        }
    }
    let labels = KoszulBasisLabels::new(m);
    let mut levels = BTreeMap::new();
    levels.insert(0, PolyMatrix::identity(&ring, 1));
    for j in 1..=m {
        let basis = &labels.levels[j];
        let mut mat = PolyMatrix::zero(&ring, basis.len(), basis.len());
        for (idx, (t, _)) in basis.iter().enumerate() {
            let mut exps = vec![0u16; m];
            for &v in t {
                exps[v] = p - 1;
            }
            *mat.at_mut(idx, idx) =
                Polynomial::from_term(&ring, Monomial::new(exps), ring.field().one());
        }
        levels.insert(-(j as i32), mat);
    }
    Ok(ChainMap::new(khat, k, levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{koszul_complex, minimal_free_resolution};
    use crate::field::FieldConfig;
    use crate::groebner::IdealBasis;
    use crate::poly::{parse_polynomial, PolyRing, Ring};

    fn ring_p(p: u64) -> Ring {
        PolyRing::new(
            FieldConfig::prime(p).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
        )
    }

    fn polys(ring: &Ring, strs: &[&str]) -> Vec<Polynomial> {
        strs.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect()
    }

    fn nonci(ring: &Ring) -> IdealBasis {
        IdealBasis::new(ring, polys(ring, &["x^2", "-y*z", "x*y+z^2", "-x*z", "y^2"])).unwrap()
    }

    fn variables_ideal(ring: &Ring) -> IdealBasis {
        IdealBasis::new(ring, polys(ring, &["x", "y", "z"])).unwrap()
    }

    #[test]
    fn identity_lift_is_valid() {
        let ring = ring_p(3);
        let i = nonci(&ring);
        let f = Arc::new(minimal_free_resolution(&i).unwrap());
        let gb = i.groebner();
        let lift = lift_quotient_map(&f, &f, &gb, None).unwrap();
        assert!(lift.verify().ok(), "{:?}", lift.verify().violations);
        // any valid self-lift has top component congruent to 1 modulo I
        let top = top_component(&lift).unwrap();
        assert_eq!(top.degree, 0);
        assert_eq!(top.polynomial, Polynomial::one(&ring));
    }

    #[test]
    fn lift_resolution_to_koszul_gives_nu() {
        let ring = ring_p(3);
        let i = nonci(&ring);
        let f = Arc::new(minimal_free_resolution(&i).unwrap());
        let k = Arc::new(koszul_complex(&ring, &polys(&ring, &["x", "y", "z"])));
        let gb_m = variables_ideal(&ring).groebner();
        let n = lift_quotient_map(&f, &k, &gb_m, None).unwrap();
        assert!(n.verify().ok(), "{:?}", n.verify().violations);
        let top = top_component(&n).unwrap();
        assert_eq!(top.degree, 2);
        // the top generator of the computed resolution is only pinned up to a
        // unit, so the class modulo I is a nonzero scalar multiple of x*y
        let gb = i.groebner();
        let nf_top = gb.normal_form(&top.polynomial);
        let nf_xy = gb.normal_form(&parse_polynomial(&ring, "x*y").unwrap());
        assert!(!nf_top.is_zero());
        let field = ring.field();
        let lambda = field
            .div(nf_top.leading_term().unwrap().1, nf_xy.leading_term().unwrap().1)
            .unwrap();
        assert_eq!(nf_top, nf_xy.scale(&lambda));
    }

    #[test]
    fn lift_frobenius_change_gives_epsilon_class() {
        let ring = ring_p(2);
        let i = nonci(&ring);
        let f = Arc::new(minimal_free_resolution(&i).unwrap());
        let fhat = Arc::new(f.frobenius_base_change());
        let gb = i.groebner();
        let p_map = lift_quotient_map(&fhat, &f, &gb, None).unwrap();
        assert!(p_map.verify().ok(), "{:?}", p_map.verify().violations);
        let top = top_component(&p_map).unwrap();
        assert_eq!(top.degree, 5); // shat - s = (5p-3) - 2 = 5 at p = 2
        // congruent to x*y*z*(x*y + z^2) modulo the bracket power
        let eps_paper = parse_polynomial(&ring, "x^2*y^2*z + x*y*z^3").unwrap();
        let gb_bracket = i.bracket_power().groebner();
        let diff = top.polynomial.sub(&eps_paper);
        assert!(gb_bracket.normal_form(&diff).is_zero());
    }

    #[test]
    fn subideal_precondition_enforced() {
        let ring = ring_p(3);
        let i = nonci(&ring);
        let f = Arc::new(minimal_free_resolution(&i).unwrap());
        let k = Arc::new(koszul_complex(&ring, &polys(&ring, &["x", "y", "z"])));
        // wrong direction: the maximal ideal is not inside I
        let gb = i.groebner();
        assert!(matches!(
            lift_quotient_map(&k, &f, &gb, None),
            Err(LiftError::NotASubideal)
        ));
    }

    #[test]
    fn koszul_comparison_examples() {
        let ring = ring_p(3);
        let k = Arc::new(koszul_complex(&ring, &polys(&ring, &["x", "y", "z"])));
        let khat = Arc::new(k.frobenius_base_change());
        let d = koszul_comparison(&khat, &k).unwrap();
        assert!(d.verify().ok(), "{:?}", d.verify().violations);
        let top = top_component(&d).unwrap();
        assert_eq!(top.polynomial, parse_polynomial(&ring, "x^2*y^2*z^2").unwrap());
        // level -1 diagonal
        let l1 = d.level(-1).unwrap();
        assert_eq!(l1.at(0, 0), &parse_polynomial(&ring, "x^2").unwrap());
        assert_eq!(l1.at(1, 1), &parse_polynomial(&ring, "y^2").unwrap());
        assert!(l1.at(0, 1).is_zero());

        // single variable
        let ring1 = PolyRing::new(FieldConfig::prime(3).unwrap(), vec!["x".into()]);
        let k1 = Arc::new(koszul_complex(
            &ring1,
            &[parse_polynomial(&ring1, "x").unwrap()],
        ));
        let k1h = Arc::new(k1.frobenius_base_change());
        let d1 = koszul_comparison(&k1h, &k1).unwrap();
        assert_eq!(
            top_component(&d1).unwrap().polynomial,
            parse_polynomial(&ring1, "x^2").unwrap()
        );
    }

    #[test]
    fn koszul_comparison_rejects_wrong_input() {
        let ring = ring_p(3);
        let k = Arc::new(koszul_complex(&ring, &polys(&ring, &["x^2", "y", "z"])));
        let khat = Arc::new(k.frobenius_base_change());
        assert!(matches!(
            koszul_comparison(&khat, &k),
            Err(LiftError::NotKoszul(_))
        ));
    }

    #[test]
    fn corrupted_chain_map_reported() {
        let ring = ring_p(3);
        let i = nonci(&ring);
        let f = Arc::new(minimal_free_resolution(&i).unwrap());
        let k = Arc::new(koszul_complex(&ring, &polys(&ring, &["x", "y", "z"])));
        let gb_m = variables_ideal(&ring).groebner();
        let n = lift_quotient_map(&f, &k, &gb_m, None).unwrap();
        let mut levels = BTreeMap::new();
        for j in 0..=3 {
            levels.insert(-j, n.level(-j).unwrap().clone());
        }
        let l1 = levels.get_mut(&-1).unwrap();
        *l1.at_mut(0, 0) = l1.at(0, 0).neg();
        let broken = ChainMap::new(&f, &k, levels);
        let rep = broken.verify();
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|v| v.contains("commutation")));
    }

    #[test]
    fn homotopy_stability_of_top_class() {
        let ring = ring_p(2);
        let i = nonci(&ring);
        let f = Arc::new(minimal_free_resolution(&i).unwrap());
        let fhat = Arc::new(f.frobenius_base_change());
        let gb = i.groebner();
        let gb_bracket = i.bracket_power().groebner();
        let base = lift_quotient_map(&fhat, &f, &gb, None).unwrap();
        let t0 = top_component(&base).unwrap().polynomial;
        for seed in [1u64, 7, 42] {
            let other = lift_quotient_map(&fhat, &f, &gb, Some(seed)).unwrap();
            assert!(other.verify().ok());
            let t1 = top_component(&other).unwrap().polynomial;
            assert!(gb_bracket.normal_form(&t0.sub(&t1)).is_zero());
        }
    }

    #[test]
    fn composition_consistency_nu_epsilon() {
        // top(N o P) = nu * eps and top(D o Nhat) = x^(p-1)... nu^p agree
        // modulo the bracket power
        for p in [2u64, 3] {
            let ring = ring_p(p);
            let i = nonci(&ring);
            let f = Arc::new(minimal_free_resolution(&i).unwrap());
            let fhat = Arc::new(f.frobenius_base_change());
            let k = Arc::new(koszul_complex(&ring, &polys(&ring, &["x", "y", "z"])));
            let khat = Arc::new(k.frobenius_base_change());
            let gb = i.groebner();
            let gb_m = variables_ideal(&ring).groebner();
            let n = lift_quotient_map(&f, &k, &gb_m, None).unwrap();
            let p_map = lift_quotient_map(&fhat, &f, &gb, None).unwrap();
            let d = koszul_comparison(&khat, &k).unwrap();

            // nhat is n with every entry raised to the p-th power
            let mut nhat_levels = BTreeMap::new();
            for j in 0..=3 {
                nhat_levels.insert(-j, n.level(-j).unwrap().map(|f| f.pth_power()));
            }
            let nhat = ChainMap::new(&fhat, &khat, nhat_levels);
            assert!(nhat.verify().ok());

            let np = n.compose_after(&p_map);
            let dn = d.compose_after(&nhat);
            let top_np = top_component(&np).unwrap().polynomial;
            let top_dn = top_component(&dn).unwrap().polynomial;
            let gb_bracket = i.bracket_power().groebner();
            assert!(gb_bracket.normal_form(&top_np.sub(&top_dn)).is_zero());
        }
    }

    #[test]
    fn degree_bookkeeping() {
        let ring = ring_p(3);
        let i = nonci(&ring);
        let f = Arc::new(minimal_free_resolution(&i).unwrap());
        let fhat = Arc::new(f.frobenius_base_change());
        let gb = i.groebner();
        let p_map = lift_quotient_map(&fhat, &f, &gb, None).unwrap();
        // shat - s = (p-1)(s+m) = 2 * 5 = 10
        assert_eq!(top_component(&p_map).unwrap().degree, 10);
    }
}
