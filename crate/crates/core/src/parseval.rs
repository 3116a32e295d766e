//! The theorem pipeline: volume functionals, the distinguished classes `nu`
//! and `epsilon`, and exact verification of the identity
//!
//! `vol(w) = sum_{u in M_s} ((x_0^(p-1)...x_(m-1)^(p-1) u^p) o (eps w)) vol(u)^p`
//!
//! for every homogeneous `w` of socle degree. `epsilon` is computed two ways:
//! homologically as the top component of a chain map lifting the quotient by
//! the bracket power, and directly from the colon ideal; both land in the
//! same class and are normalized by `hat_vol(eps nu) = 1`.

use crate::complexes::minimal_free_resolution;
use crate::field::FieldElement;
use crate::groebner::{colon_ideal, GroebnerError, IdealBasis, IdealGroebner};
use crate::lifting::{lift_quotient_map, top_component, LiftError};
use crate::poly::{monomials_of_degree, Monomial, Polynomial, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsevalError {
    #[error("quotient is not Gorenstein in degree {degree}: socle dimension {dim}")]
    NotGorenstein { degree: u32, dim: usize },
    #[error("normalization monomial has zero class in the quotient")]
    ZeroNormalizationClass(String),
    #[error("normalization value must be nonzero")]
    ZeroNormalizationValue,
    #[error("normalizer class vanishes: corrupted nu or non-Gorenstein input")]
    ZeroNormalizer,
    #[error("expected socle degree {want}, found {got}")]
    UnexpectedSocleDegree { want: u32, got: u32 },
    #[error("input must be homogeneous of degree {want}")]
    WrongInputDegree { want: u32 },
    #[error("graded piece of the colon quotient has dimension {got}, expected 1")]
    ColonDimension { got: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// How a volume functional was pinned down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VolProvenance {
    /// `vol(m0) = value` for an explicit monomial.
    MonomialNormalized(Monomial),
    /// Kustin-Miller normalization on an oriented facet.
    KustinMiller(usize),
    /// `hat_vol(x^(p-1) nu^p) = 1`.
    HatVol,
}

/// A linear functional on the degree-`d` piece of a quotient ring, stored
/// extensionally on the full monomial basis of degree `d`. Vanishes on the
/// ideal by construction (values come from normal forms).
#[derive(Debug, Clone)]
pub struct VolumeFunctional {
    degree: u32,
    monomials: Vec<Monomial>,
    values: Vec<FieldElement>,
    index: HashMap<Monomial, usize>,
    provenance: VolProvenance,
}

impl VolumeFunctional {
    fn build(
        gb: &IdealGroebner,
        degree: u32,
        scale_by: impl Fn(&FieldElement) -> FieldElement,
        provenance: VolProvenance,
    ) -> Result<Self, ParsevalError> {
        let table = gb.normal_form_table(degree);
        if table.std_monomials.len() != 1 {
            return Err(ParsevalError::NotGorenstein {
                degree,
                dim: table.std_monomials.len(),
            });
        }
        let monomials = monomials_of_degree(gb.ring(), degree);
        let values: Vec<FieldElement> = monomials
            .iter()
            .map(|u| scale_by(&table.coords(u)[0]))
            .collect();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(VolumeFunctional {
            degree,
            monomials,
            values,
            index,
            provenance,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn provenance(&self) -> &VolProvenance {
        &self.provenance
    }

    /// The monomial basis of the degree-`d` piece, decreasing in the ring
    /// order, aligned with [`Self::values`].
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn value(&self, m: &Monomial) -> &FieldElement {
        &self.values[self.index[m]]
    }

    /// Linear extension to an arbitrary homogeneous polynomial of the degree.
    pub fn evaluate(&self, f: &Polynomial) -> Result<FieldElement, ParsevalError> {
        let field = f.ring().field();
        let mut acc = field.zero();
        for (m, c) in f.terms() {
            if m.degree() != self.degree {
                return Err(ParsevalError::WrongInputDegree { want: self.degree });
            }
            let v = self
                .index
                .get(m)
                .map(|&i| &self.values[i])
                .expect("monomial of the right degree");
            acc = field.add(&acc, &field.mul(c, v));
        }
        Ok(acc)
    }

    /// Structural equality of functional values (same basis, same values).
    pub fn same_values(&self, other: &VolumeFunctional) -> bool {
        self.degree == other.degree && self.values == other.values
    }

    pub fn with_provenance(self, provenance: VolProvenance) -> Self {
        VolumeFunctional { provenance, ..self }
    }
}

/// `epsilon` together with its construction method and the normalization
/// certificate `hat_vol(eps_raw * nu)` measured before rescaling.
#[derive(Debug, Clone)]
pub struct EpsilonResult {
    pub epsilon: Polynomial,
    pub method: EpsilonMethod,
    pub certificate: FieldElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonMethod {
    Homological,
    Colon,
}

/// Everything the identity needs, computed once per (ideal, vol) pair.
#[derive(Debug, Clone)]
pub struct ParsevalContext {
    ideal: IdealBasis,
    gb: IdealGroebner,
    socle: u32,
    vol: VolumeFunctional,
    nu: Polynomial,
    bracket: IdealBasis,
    gb_bracket: IdealGroebner,
    socle_hat: u32,
    hat_vol: VolumeFunctional,
}

/// The volume functional with `vol(m0) = value`. Checks that the quotient is
/// Gorenstein at its socle degree and that `m0` has nonzero class there.
pub fn compute_vol(
    ideal: &IdealBasis,
    m0: &Monomial,
    value: &FieldElement,
) -> Result<VolumeFunctional, ParsevalError> {
    let gb = ideal.groebner();
    compute_vol_with_gb(ideal, &gb, m0, value)
}

fn compute_vol_with_gb(
    ideal: &IdealBasis,
    gb: &IdealGroebner,
    m0: &Monomial,
    value: &FieldElement,
) -> Result<VolumeFunctional, ParsevalError> {
    let field = ideal.ring().field();
    if value.is_zero() {
        return Err(ParsevalError::ZeroNormalizationValue);
    }
    let s = gb.socle_degree()?;
    if m0.degree() != s {
        return Err(ParsevalError::WrongInputDegree { want: s });
    }
    // first pass to read lambda(m0)
    let raw = VolumeFunctional::build(
        gb,
        s,
        |lam| lam.clone(),
        VolProvenance::MonomialNormalized(m0.clone()),
    )?;
    let lambda0 = raw.value(m0).clone();
    if lambda0.is_zero() {
        return Err(ParsevalError::ZeroNormalizationClass(format!("{:?}", m0)));
    }
    let scale = field.div(value, &lambda0).unwrap();
    Ok(VolumeFunctional {
        values: raw.values.iter().map(|v| field.mul(v, &scale)).collect(),
        ..raw
    })
}

/// The volume functional with `vol(f) = 1` for a homogeneous polynomial of
/// socle degree with nonzero class (for instance the determinant class of a
/// complete intersection's coefficient matrix).
pub fn compute_vol_on_polynomial(
    ideal: &IdealBasis,
    f: &Polynomial,
) -> Result<VolumeFunctional, ParsevalError> {
    let field = ideal.ring().field();
    let gb = ideal.groebner();
    let s = gb.socle_degree()?;
    if f.is_zero() || !f.is_homogeneous() || f.degree() != Some(s) {
        return Err(ParsevalError::WrongInputDegree { want: s });
    }
    let raw = VolumeFunctional::build(
        &gb,
        s,
        |lam| lam.clone(),
        VolProvenance::MonomialNormalized(Monomial::one(ideal.ring().num_vars())),
    )?;
    let lambda0 = raw.evaluate(f)?;
    if lambda0.is_zero() {
        return Err(ParsevalError::ZeroNormalizationClass(f.to_string()));
    }
    let scale = field.inv(&lambda0).unwrap();
    Ok(VolumeFunctional {
        values: raw.values.iter().map(|v| field.mul(v, &scale)).collect(),
        ..raw
    })
}

/// The unique class of socle degree with `vol(nu) = 1`, represented by the
/// scaled standard monomial.
pub fn compute_nu(
    gb: &IdealGroebner,
    vol: &VolumeFunctional,
) -> Result<Polynomial, ParsevalError> {
    let ring = gb.ring();
    let field = ring.field();
    let basis = gb.monomial_basis_in_degree(vol.degree());
    if basis.len() != 1 {
        return Err(ParsevalError::NotGorenstein {
            degree: vol.degree(),
            dim: basis.len(),
        });
    }
    let b = basis.into_iter().next().unwrap();
    let vb = vol.value(&b).clone();
    if vb.is_zero() {
        return Err(ParsevalError::ZeroNormalizer);
    }
    let inv = field.inv(&vb).unwrap();
    Ok(Polynomial::from_term(ring, b, inv))
}

/// The monomial `x_0^(p-1) ... x_(m-1)^(p-1)`.
pub fn socle_shift_monomial(ring: &Ring) -> Monomial {
    let p = ring.field().characteristic() as u16;
    Monomial::new(vec![p - 1; ring.num_vars()])
}

impl ParsevalContext {
    /// Build the full context from an ideal and a vol normalization
    /// `vol(m0) = value`.
    pub fn new(
        ideal: IdealBasis,
        m0: &Monomial,
        value: &FieldElement,
    ) -> Result<Self, ParsevalError> {
        let gb = ideal.groebner();
        let vol = compute_vol_with_gb(&ideal, &gb, m0, value)?;
        Self::with_vol(ideal, gb, vol)
    }

    /// Build the context from an externally constructed vol (Kustin-Miller).
    pub fn with_vol(
        ideal: IdealBasis,
        gb: IdealGroebner,
        vol: VolumeFunctional,
    ) -> Result<Self, ParsevalError> {
        let ring = Arc::clone(ideal.ring());
        let field = ring.field();
        let p = u32::from(field.characteristic());
        let m = ring.num_vars() as u32;
        let s = gb.socle_degree()?;
        if vol.degree() != s {
            return Err(ParsevalError::WrongInputDegree { want: s });
        }
        let nu = compute_nu(&gb, &vol)?;

        let bracket = ideal.bracket_power();
        let gb_bracket = bracket.groebner();
        let socle_hat = gb_bracket.socle_degree()?;
        let want_hat = p * s + m * (p - 1);
        if socle_hat != want_hat {
            return Err(ParsevalError::UnexpectedSocleDegree {
                want: want_hat,
                got: socle_hat,
            });
        }

        // hat_vol normalized on x^(p-1) * nu^p
        let normalizer = nu.pth_power().mul_monomial(&socle_shift_monomial(&ring));
        let raw = VolumeFunctional::build(&gb_bracket, socle_hat, |l| l.clone(), VolProvenance::HatVol)?;
        let c = raw.evaluate(&normalizer)?;
        if c.is_zero() {
            return Err(ParsevalError::ZeroNormalizer);
        }
        // well-definedness across lifts of nu: replace nu by nu + (random
        // element of I_s) and require the same normalizer value
        let mut rng = ChaCha12Rng::seed_from_u64(0x9e3779b97f4a7c15);
        let mut shift = Polynomial::zero(&ring);
        for g in ideal.generators() {
            let gd = g.degree().unwrap();
            if gd > s {
                continue;
            }
            let mut h = Polynomial::zero(&ring);
            for mono in monomials_of_degree(&ring, s - gd) {
                h = h.add(&Polynomial::from_term(
                    &ring,
                    mono,
                    field.random_element(&mut rng),
                ));
            }
            shift = shift.add(&g.mul(&h));
        }
        let nu_alt = nu.add(&shift);
        let alt_normalizer = nu_alt.pth_power().mul_monomial(&socle_shift_monomial(&ring));
        let c_alt = raw.evaluate(&alt_normalizer)?;
        assert_eq!(
            c, c_alt,
            "hat_vol normalizer must not depend on the lift of nu"
        );

        let cinv = field.inv(&c).unwrap();
        let new_values: Vec<FieldElement> =
            raw.values.iter().map(|v| field.mul(v, &cinv)).collect();
        let hat_vol = VolumeFunctional {
            values: new_values,
            ..raw
        };

        Ok(ParsevalContext {
            ideal,
            gb,
            socle: s,
            vol,
            nu,
            bracket,
            gb_bracket,
            socle_hat,
            hat_vol,
        })
    }

    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }

    pub fn groebner(&self) -> &IdealGroebner {
        &self.gb
    }

    pub fn bracket_ideal(&self) -> &IdealBasis {
        &self.bracket
    }

    pub fn bracket_groebner(&self) -> &IdealGroebner {
        &self.gb_bracket
    }

    pub fn socle_degree(&self) -> u32 {
        self.socle
    }

    pub fn socle_degree_hat(&self) -> u32 {
        self.socle_hat
    }

    pub fn vol(&self) -> &VolumeFunctional {
        &self.vol
    }

    pub fn hat_vol(&self) -> &VolumeFunctional {
        &self.hat_vol
    }

    pub fn nu(&self) -> &Polynomial {
        &self.nu
    }

    fn normalize_epsilon(
        &self,
        raw: Polynomial,
        method: EpsilonMethod,
    ) -> Result<EpsilonResult, ParsevalError> {
        let field = self.ring().field();
        let c = self.hat_vol.evaluate(&raw.mul(&self.nu))?;
        if c.is_zero() {
            return Err(ParsevalError::ZeroNormalizer);
        }
        let cinv = field.inv(&c).unwrap();
        let epsilon = raw.scale(&cinv);
        let result = EpsilonResult {
            epsilon,
            method,
            certificate: c,
        };
        // construction invariants: eps * g_i in the bracket power, and
        // hat_vol(eps * nu) = 1
        for g in self.ideal.generators() {
            debug_assert!(self.gb_bracket.contains(&result.epsilon.mul(g)));
        }
        debug_assert_eq!(
            self.hat_vol.evaluate(&result.epsilon.mul(&self.nu)).unwrap(),
            field.one()
        );
        Ok(result)
    }

    /// `epsilon` as the top component of a chain map lifting the quotient by
    /// the bracket power, normalized by `hat_vol(eps nu) = 1`. The optional
    /// seed shuffles division preferences in the lifter; the normalized class
    /// does not depend on it.
    pub fn epsilon_homological_seeded(
        &self,
        shuffle_seed: Option<u64>,
    ) -> Result<EpsilonResult, ParsevalError> {
        let f = Arc::new(minimal_free_resolution(&self.ideal)?);
        let fhat = Arc::new(f.frobenius_base_change());
        let lift = lift_quotient_map(&fhat, &f, &self.gb, shuffle_seed)?;
        let top = top_component(&lift)?;
        self.normalize_epsilon(top.polynomial, EpsilonMethod::Homological)
    }

    pub fn epsilon_homological(&self) -> Result<EpsilonResult, ParsevalError> {
        self.epsilon_homological_seeded(None)
    }

    /// `epsilon` from the colon ideal `(I^[p] : I)`: its class spans the
    /// one-dimensional piece of `(I^[p]:I)/I^[p]` in degree `shat - s`.
    pub fn epsilon_colon(&self) -> Result<EpsilonResult, ParsevalError> {
        let dstar = self.socle_hat - self.socle;
        let colon = colon_ideal(&self.bracket, &self.ideal);
        let gb_colon = colon.groebner();
        let dim_bracket = self.gb_bracket.dimension_in_degree(dstar);
        let dim_colon = gb_colon.dimension_in_degree(dstar);
        if dim_bracket - dim_colon != 1 {
            return Err(ParsevalError::ColonDimension {
                got: dim_bracket - dim_colon,
            });
        }
        // any element of the colon with nonzero class modulo the bracket
        let mut raw = None;
        'search: for g in colon.generators() {
            let gd = g.degree().unwrap();
            if gd > dstar {
                continue;
            }
            for mono in monomials_of_degree(self.ring(), dstar - gd) {
                let cand = g.mul_monomial(&mono);
                if !self.gb_bracket.normal_form(&cand).is_zero() {
                    raw = Some(cand);
                    break 'search;
                }
            }
        }
        let raw = raw.ok_or(ParsevalError::ColonDimension { got: 0 })?;
        self.normalize_epsilon(raw, EpsilonMethod::Colon)
    }

    /// Both sides of the identity for one `w`, evaluated exactly.
    pub fn verify_identity(
        &self,
        eps: &EpsilonResult,
        w: &Polynomial,
    ) -> Result<IdentityCheck, ParsevalError> {
        if w.is_zero() || !w.is_homogeneous() || w.degree() != Some(self.socle) {
            return Err(ParsevalError::WrongInputDegree { want: self.socle });
        }
        let field = self.ring().field();
        let shift = socle_shift_monomial(self.ring());
        let p = u16::from(field.characteristic() as u16);
        let lhs = self.vol.evaluate(w)?;
        let eps_w = eps.epsilon.mul(w);
        let mut rhs = field.zero();
        for u in self.vol.monomials() {
            let filter = u.pow(p).mul(&shift);
            let pairing = eps_w.coefficient_of(&filter);
            if pairing.is_zero() {
                continue;
            }
            let volp = field.frobenius(self.vol.value(u));
            rhs = field.add(&rhs, &field.mul(&pairing, &volp));
        }
        Ok(IdentityCheck {
            w: w.clone(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            pass: lhs == rhs,
        })
    }

    /// The four lemma checks: `vol(nu) = 1`; `eps g_i` in the bracket power;
    /// `hat_vol(eps nu) = 1`; `eps nu = x^(p-1) nu^p` modulo the bracket.
    pub fn check_lemmas(&self, eps: &EpsilonResult) -> LemmaReport {
        let field = self.ring().field();
        let one = field.one();
        let vol_nu = self
            .vol
            .evaluate(&self.nu)
            .map(|v| v == one)
            .unwrap_or(false);
        let eps_annihilates = self
            .ideal
            .generators()
            .iter()
            .all(|g| self.gb_bracket.contains(&eps.epsilon.mul(g)));
        let hat_vol_eps_nu = self
            .hat_vol
            .evaluate(&eps.epsilon.mul(&self.nu))
            .map(|v| v == one)
            .unwrap_or(false);
        let diff = eps
            .epsilon
            .mul(&self.nu)
            .sub(&self.nu.pth_power().mul_monomial(&socle_shift_monomial(self.ring())));
        let congruence = self.gb_bracket.normal_form(&diff).is_zero();
        LemmaReport {
            vol_nu_is_one: vol_nu,
            eps_annihilates_ideal: eps_annihilates,
            hat_vol_eps_nu_is_one: hat_vol_eps_nu,
            eps_nu_congruence: congruence,
        }
    }
}

/// Outcome of one identity evaluation.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub w: Polynomial,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaReport {
    pub vol_nu_is_one: bool,
    pub eps_annihilates_ideal: bool,
    pub hat_vol_eps_nu_is_one: bool,
    pub eps_nu_congruence: bool,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.vol_nu_is_one
            && self.eps_annihilates_ideal
            && self.hat_vol_eps_nu_is_one
            && self.eps_nu_congruence
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::poly::{parse_monomial, parse_polynomial, PolyRing};

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

    fn nonci_context(p: u64) -> ParsevalContext {
        let ring = ring_p(p);
        let i = nonci(&ring);
        let m0 = parse_monomial(&ring, "x*y").unwrap();
        ParsevalContext::new(i, &m0, &ring.field().one()).unwrap()
    }

    #[test]
    fn vol_values_on_nonci() {
        let ctx = nonci_context(3);
        let ring = ctx.ring().clone();
        let field = ring.field();
        let vol = ctx.vol();
        let val = |s: &str| vol.value(&parse_monomial(&ring, s).unwrap()).clone();
        assert_eq!(val("x*y"), field.one());
        assert_eq!(val("z^2"), field.from_i64(-1));
        for m in ["x^2", "y^2", "x*z", "y*z"] {
            assert!(val(m).is_zero(), "vol({}) should vanish", m);
        }
    }

    #[test]
    fn vol_rejects_zero_class_normalization() {
        let ring = ring_p(3);
        let i = nonci(&ring);
        let m0 = parse_monomial(&ring, "x^2").unwrap();
        assert!(matches!(
            ParsevalContext::new(i, &m0, &ring.field().one()),
            Err(ParsevalError::ZeroNormalizationClass(_))
        ));
    }

    #[test]
    fn nu_is_xy_class() {
        let ctx = nonci_context(3);
        let ring = ctx.ring().clone();
        // the canonical representative is the scaled standard monomial; its
        // class equals the class of x*y
        let diff = ctx.nu().sub(&parse_polynomial(&ring, "x*y").unwrap());
        assert!(ctx.groebner().normal_form(&diff).is_zero());
        assert_eq!(
            ctx.vol().evaluate(ctx.nu()).unwrap(),
            ring.field().one()
        );
    }

    #[test]
    fn ci_vol_and_nu() {
        let ring = PolyRing::new(FieldConfig::prime(3).unwrap(), vec!["x".into(), "y".into()]);
        let i = IdealBasis::new(&ring, polys(&ring, &["x^2", "y^2"])).unwrap();
        let m0 = parse_monomial(&ring, "x*y").unwrap();
        let ctx = ParsevalContext::new(i, &m0, &ring.field().one()).unwrap();
        assert!(ctx.vol().value(&parse_monomial(&ring, "x^2").unwrap()).is_zero());
        assert!(ctx.vol().value(&parse_monomial(&ring, "y^2").unwrap()).is_zero());
        assert_eq!(ctx.nu(), &parse_polynomial(&ring, "x*y").unwrap());
    }

    #[test]
    fn degenerate_socle_zero() {
        let ring = ring_p(3);
        let i = IdealBasis::new(&ring, polys(&ring, &["x", "y", "z"])).unwrap();
        let m0 = parse_monomial(&ring, "1").unwrap();
        let ctx = ParsevalContext::new(i, &m0, &ring.field().one()).unwrap();
        assert_eq!(ctx.socle_degree(), 0);
        assert_eq!(ctx.nu(), &Polynomial::one(&ring));
        let eps = ctx.epsilon_homological().unwrap();
        // class of x^(p-1) y^(p-1) z^(p-1) modulo the bracket power
        let expect = Polynomial::from_term(&ring, socle_shift_monomial(&ring), ring.field().one());
        let diff = eps.epsilon.sub(&expect);
        assert!(ctx.bracket_groebner().normal_form(&diff).is_zero());
    }

    #[test]
    fn hat_vol_examples_p2_p3() {
        let ctx = nonci_context(2);
        assert_eq!(ctx.socle_degree_hat(), 7);
        let ring = ctx.ring().clone();
        let field = ring.field();
        // hat_vol(x^3 y^3 z) = 1 at p = 2
        let m = parse_polynomial(&ring, "x^3*y^3*z").unwrap();
        assert_eq!(ctx.hat_vol().evaluate(&m).unwrap(), field.one());

        let ctx3 = nonci_context(3);
        assert_eq!(ctx3.socle_degree_hat(), 12);
        let ring3 = ctx3.ring().clone();
        let m3 = parse_polynomial(&ring3, "x^5*y^5*z^2").unwrap();
        assert_eq!(ctx3.hat_vol().evaluate(&m3).unwrap(), ring3.field().one());
        // vanishes on the bracket ideal
        let g0p = parse_polynomial(&ring3, "x^6*y^6").unwrap(); // x^6 * y^6 in I^[3]
        assert!(ctx3.hat_vol().evaluate(&g0p).unwrap().is_zero());
    }

    #[test]
    fn epsilon_homological_nonci() {
        for p in [2u64, 3] {
            let ctx = nonci_context(p);
            let ring = ctx.ring().clone();
            let eps = ctx.epsilon_homological().unwrap();
            let paper = parse_polynomial(&ring, "x*y*z")
                .unwrap()
                .pow(p as u32 - 1)
                .mul(&parse_polynomial(&ring, "x*y+z^2").unwrap().pow(p as u32 - 1));
            let diff = eps.epsilon.sub(&paper);
            assert!(
                ctx.bracket_groebner().normal_form(&diff).is_zero(),
                "epsilon class mismatch at p = {}",
                p
            );
        }
    }

    #[test]
    fn epsilon_methods_agree() {
        for p in [2u64, 3] {
            let ctx = nonci_context(p);
            let h = ctx.epsilon_homological().unwrap();
            let c = ctx.epsilon_colon().unwrap();
            let nd = ctx.gb_bracket.normal_form(&h.epsilon.sub(&c.epsilon));
            assert!(nd.is_zero(), "methods disagree at p = {}", p);
        }
    }

    #[test]
    fn ci_epsilon_is_generator_power_product() {
        // (x^2, y^2) at p = 3: eps = x^4 y^4
        let ring = PolyRing::new(FieldConfig::prime(3).unwrap(), vec!["x".into(), "y".into()]);
        let i = IdealBasis::new(&ring, polys(&ring, &["x^2", "y^2"])).unwrap();
        let m0 = parse_monomial(&ring, "x*y").unwrap();
        let ctx = ParsevalContext::new(i, &m0, &ring.field().one()).unwrap();
        let eps = ctx.epsilon_homological().unwrap();
        let expect = parse_polynomial(&ring, "x^4*y^4").unwrap();
        assert!(ctx
            .bracket_groebner()
            .normal_form(&eps.epsilon.sub(&expect))
            .is_zero());
        // and the colon route agrees: class of x^2 y^2 at p = 2
        let ring2 = PolyRing::new(FieldConfig::prime(2).unwrap(), vec!["x".into(), "y".into()]);
        let i2 = IdealBasis::new(&ring2, polys(&ring2, &["x^2", "y^2"])).unwrap();
        let m02 = parse_monomial(&ring2, "x*y").unwrap();
        let ctx2 = ParsevalContext::new(i2, &m02, &ring2.field().one()).unwrap();
        let eps2 = ctx2.epsilon_colon().unwrap();
        let expect2 = parse_polynomial(&ring2, "x^2*y^2").unwrap();
        assert!(ctx2
            .bracket_groebner()
            .normal_form(&eps2.epsilon.sub(&expect2))
            .is_zero());
    }

    #[test]
    fn identity_hand_checked_cases() {
        // p = 3, w = z^2: both sides -1
        let ctx = nonci_context(3);
        let ring = ctx.ring().clone();
        let eps = ctx.epsilon_homological().unwrap();
        let w = parse_polynomial(&ring, "z^2").unwrap();
        let check = ctx.verify_identity(&eps, &w).unwrap();
        assert!(check.pass);
        assert_eq!(check.lhs, ring.field().from_i64(-1));

        // any p, w = x^2 (a generator): both sides 0
        let w0 = parse_polynomial(&ring, "x^2").unwrap();
        let check0 = ctx.verify_identity(&eps, &w0).unwrap();
        assert!(check0.pass);
        assert!(check0.lhs.is_zero());

        // p = 2, w = x*y: both sides 1
        let ctx2 = nonci_context(2);
        let ring2 = ctx2.ring().clone();
        let eps2 = ctx2.epsilon_homological().unwrap();
        let w2 = parse_polynomial(&ring2, "x*y").unwrap();
        let check2 = ctx2.verify_identity(&eps2, &w2).unwrap();
        assert!(check2.pass);
        assert_eq!(check2.lhs, ring2.field().one());
    }

    #[test]
    fn identity_for_all_monomials_and_random_w() {
        for p in [2u64, 3] {
            let ctx = nonci_context(p);
            let ring = ctx.ring().clone();
            let eps = ctx.epsilon_homological().unwrap();
            for u in ctx.vol().monomials() {
                let w = Polynomial::from_term(&ring, u.clone(), ring.field().one());
                assert!(ctx.verify_identity(&eps, &w).unwrap().pass);
            }
            let mut rng = ChaCha12Rng::seed_from_u64(p);
            for _ in 0..10 {
                let mut w = Polynomial::zero(&ring);
                for u in ctx.vol().monomials() {
                    w = w.add(&Polynomial::from_term(
                        &ring,
                        u.clone(),
                        ring.field().random_element(&mut rng),
                    ));
                }
                if w.is_zero() {
                    continue;
                }
                assert!(ctx.verify_identity(&eps, &w).unwrap().pass);
            }

        }
    }

    #[test]
    fn non_homogeneous_w_rejected() {
        let ctx = nonci_context(3);
        let ring = ctx.ring().clone();
        let eps = ctx.epsilon_homological().unwrap();
        let w = parse_polynomial(&ring, "x^2 + x").unwrap();
        assert!(matches!(
            ctx.verify_identity(&eps, &w),
            Err(ParsevalError::WrongInputDegree { .. })
        ));
        let w3 = parse_polynomial(&ring, "x^3").unwrap();
        assert!(ctx.verify_identity(&eps, &w3).is_err());
    }

    #[test]
    fn lemma_checks_pass_and_detect_corruption() {
        for p in [2u64, 3] {
            let ctx = nonci_context(p);
            let eps = ctx.epsilon_homological().unwrap();
            let report = ctx.check_lemmas(&eps);
            assert!(report.all_pass(), "lemmas fail at p = {}: {:?}", p, report);

            // scaling eps by 2 breaks only the normalization checks
            if p == 3 {
                let mut bad = eps.clone();
                bad.epsilon = bad.epsilon.scale(&ctx.ring().field().from_u64(2));
                let rep = ctx.check_lemmas(&bad);
                assert!(rep.eps_annihilates_ideal);
                assert!(!rep.hat_vol_eps_nu_is_one);
                assert!(!rep.all_pass());
            }
        }
    }

    #[test]
    fn rhs_is_linear_in_w() {
        use rand::Rng;
        let ctx = nonci_context(3);
        let ring = ctx.ring().clone();
        let field = ring.field();
        let eps = ctx.epsilon_homological().unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let ms = ctx.vol().monomials().to_vec();
        for _ in 0..10 {
            let w1 = Polynomial::from_term(&ring, ms[rng.random_range(0..ms.len())].clone(), field.one());
            let w2 = Polynomial::from_term(&ring, ms[rng.random_range(0..ms.len())].clone(), field.one());
            let a = field.random_element(&mut rng);
            let b = field.random_element(&mut rng);
            let combo = w1.scale(&a).add(&w2.scale(&b));
            if combo.is_zero() {
                continue;
            }
            let r1 = ctx.verify_identity(&eps, &w1).unwrap().rhs;
            let r2 = ctx.verify_identity(&eps, &w2).unwrap().rhs;
            let rc = ctx.verify_identity(&eps, &combo).unwrap().rhs;
            let expect = field.add(&field.mul(&a, &r1), &field.mul(&b, &r2));
            assert_eq!(rc, expect);
        }
    }

    #[test]
    fn normalization_independence() {
        // replacing vol by lambda*vol still verifies for every monomial
        let ring = ring_p(3);
        let i = nonci(&ring);
        let m0 = parse_monomial(&ring, "x*y").unwrap();
        let lambda = ring.field().from_u64(2);
        let ctx = ParsevalContext::new(i, &m0, &lambda).unwrap();
        // nu scales inversely
        let nf_nu = ctx.groebner().normal_form(ctx.nu());
        let xy_nf = ctx
            .groebner()
            .normal_form(&parse_polynomial(&ring, "x*y").unwrap());
        let two_inv = ring.field().inv(&lambda).unwrap();
        assert_eq!(nf_nu, xy_nf.scale(&two_inv));
        let eps = ctx.epsilon_homological().unwrap();
        for u in ctx.vol().monomials() {
            let w = Polynomial::from_term(&ring, u.clone(), ring.field().one());
            assert!(ctx.verify_identity(&eps, &w).unwrap().pass);
        }
        assert!(ctx.check_lemmas(&eps).all_pass());
    }

    #[test]
    fn hat_vol_well_defined_across_nu_lifts() {
        // the context itself asserts this; also check an explicit alternate
        // lift reproduces the functional values
        let ctx = nonci_context(2);
        let ring = ctx.ring().clone();
        let nu_alt = ctx
            .nu()
            .add(&parse_polynomial(&ring, "x^2").unwrap()); // + element of I_s
        let normalizer = nu_alt
            .pth_power()
            .mul_monomial(&socle_shift_monomial(&ring));
        assert_eq!(
            ctx.hat_vol().evaluate(&normalizer).unwrap(),
            ring.field().one()
        );
    }
}
