//! Gröbner bases for homogeneous ideals and graded submodules of free
//! modules, with witness tracking.
//!
//! The module order is position-over-term with earlier generators greater,
//! extending the ring's monomial order. Every basis element carries its
//! expression over the original generators ("witness"); chain-map lifting
//! consumes those membership certificates, so tracking is not optional.
//!
//! Buchberger uses the normal selection strategy (minimal S-pair degree
//! first, ties broken by input index) so bases are reproducible. The product
//! criterion is applied in the rank-one case only, where it is valid.

use crate::field::FieldElement;
use crate::poly::{monomials_of_degree, Monomial, Polynomial, Ring};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("ideal generators must be nonzero")]
    ZeroGenerator,
    #[error("ideal generators must be homogeneous")]
    NonHomogeneous,
    #[error("ideal is not Artinian")]
    NotArtinian,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Shape of a graded free module: one generator degree and label per
/// generator. The term `S(-a)` corresponds to generator degree `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModuleShape {
    degrees: Vec<i64>,
    labels: Vec<String>,
}

impl FreeModuleShape {
    pub fn new(degrees: Vec<i64>, labels: Vec<String>) -> Arc<Self> {
        assert_eq!(degrees.len(), labels.len());
        Arc::new(FreeModuleShape { degrees, labels })
    }

    /// Shape with autogenerated labels `prefix0, prefix1, ...`.
    pub fn with_prefix(degrees: Vec<i64>, prefix: &str) -> Arc<Self> {
        let labels = (0..degrees.len()).map(|i| format!("{}{}", prefix, i)).collect();
        Self::new(degrees, labels)
    }

    /// The rank-one shape of the ring itself.
    pub fn ring_shape() -> Arc<Self> {
        Self::new(vec![0], vec!["1".to_string()])
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Multiset of twists as a displayable summand list, e.g. `S(-3)^5`.
    pub fn twist_summary(&self) -> String {
        if self.degrees.is_empty() {
            return "0".to_string();
        }
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for &d in &self.degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        counts
            .iter()
            .map(|(&d, &n)| {
                let base = if d == 0 {
                    "S".to_string()
                } else {
                    format!("S(-{})", d)
                };
                if n == 1 {
                    base
                } else {
                    format!("{}^{}", base, n)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// An element of a graded free module: sparse components, nonzero only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    ring: Ring,
    shape: Arc<FreeModuleShape>,
    comps: BTreeMap<usize, Polynomial>,
}

impl ModuleElement {
    pub fn zero(ring: &Ring, shape: &Arc<FreeModuleShape>) -> Self {
        ModuleElement {
            ring: Arc::clone(ring),
            shape: Arc::clone(shape),
            comps: BTreeMap::new(),
        }
    }

    pub fn from_components(
        ring: &Ring,
        shape: &Arc<FreeModuleShape>,
        comps: Vec<(usize, Polynomial)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (i, p) in comps {
            assert!(i < shape.rank(), "component index out of range");
            if p.is_zero() {
                continue;
            }
            match map.remove(&i) {
                None => {
                    map.insert(i, p);
                }
                Some(q) => {
                    let s = q.add(&p);
                    if !s.is_zero() {
                        map.insert(i, s);
                    }
                }
            }
        }
        ModuleElement {
            ring: Arc::clone(ring),
            shape: Arc::clone(shape),
            comps: map,
        }
    }

    /// Wrap an ideal element as a rank-one module element.
    pub fn from_poly(p: Polynomial) -> Self {
        let ring = Arc::clone(p.ring());
        let shape = FreeModuleShape::ring_shape();
        Self::from_components(&ring, &shape, vec![(0, p)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shape(&self) -> &Arc<FreeModuleShape> {
        &self.shape
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.comps.iter().map(|(&i, p)| (i, p))
    }

    pub fn component(&self, i: usize) -> Option<&Polynomial> {
        self.comps.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Leading term under position-over-term (earlier generators greater):
    /// the smallest occupied component index, with its leading monomial.
    pub fn lead(&self) -> Option<(usize, &Monomial, &FieldElement)> {
        self.comps.iter().next().map(|(&i, p)| {
            let (m, c) = p.leading_term().expect("components are nonzero");
            (i, m, c)
        })
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        debug_assert!(Arc::ptr_eq(&self.shape, &other.shape) || self.shape == other.shape);
        let mut comps = self.comps.clone();
        for (&i, p) in &other.comps {
            match comps.remove(&i) {
                None => {
                    comps.insert(i, p.clone());
                }
                Some(q) => {
                    let s = q.add(p);
                    if !s.is_zero() {
                        comps.insert(i, s);
                    }
                }
            }
        }
        ModuleElement {
            ring: Arc::clone(&self.ring),
            shape: Arc::clone(&self.shape),
            comps,
        }
    }

    pub fn neg(&self) -> ModuleElement {
        ModuleElement {
            ring: Arc::clone(&self.ring),
            shape: Arc::clone(&self.shape),
            comps: self.comps.iter().map(|(&i, p)| (i, p.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> ModuleElement {
        if c.is_zero() {
            return ModuleElement::zero(&self.ring, &self.shape);
        }
        ModuleElement {
            ring: Arc::clone(&self.ring),
            shape: Arc::clone(&self.shape),
            comps: self.comps.iter().map(|(&i, p)| (i, p.scale(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> ModuleElement {
        if c.is_zero() {
            return ModuleElement::zero(&self.ring, &self.shape);
        }
        ModuleElement {
            ring: Arc::clone(&self.ring),
            shape: Arc::clone(&self.shape),
            comps: self
                .comps
                .iter()
                .map(|(&i, p)| (i, p.mul_term(m, c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial) -> ModuleElement {
        let mut acc = ModuleElement::zero(&self.ring, &self.shape);
        for (m, c) in f.terms() {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn monic(&self) -> ModuleElement {
        match self.lead() {
            None => self.clone(),
            Some((_, _, c)) => {
                let inv = self.ring.field().inv(c).expect("nonzero lead");
                self.scale(&inv)
            }
        }
    }

    /// Degree as a homogeneous module element (component degree plus
    /// generator degree, constant across components); `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        let mut deg = None;
        for (&i, p) in &self.comps {
            if !p.is_homogeneous() {
                return None;
            }
            let d = i64::from(p.degree().unwrap()) + self.shape.degrees[i];
            match deg {
                None => deg = Some(d),
                Some(existing) if existing == d => {}
                Some(_) => return None,
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Golden-file format: nonzero components ascending, each polynomial in
    /// the shared text syntax with a `[i]` component marker.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.comps
            .iter()
            .map(|(i, p)| format!("({})*[{}]", p, i))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Result of dividing a module element by an ordered list of divisors.
/// The invariant `input = sum quotients[k] * divisor[k] + remainder` holds
/// exactly, and no remainder term is divisible by any divisor's lead term.
#[derive(Debug, Clone)]
pub struct DivisionResult {
    pub quotients: Vec<Polynomial>,
    pub remainder: ModuleElement,
}

/// Full multivariate division. Divisors are tried in `pref` order at every
/// reduction step; the remainder is independent of `pref` when the divisors
/// form a Gröbner basis, the quotients are not.
pub fn divide(
    v: &ModuleElement,
    divisors: &[ModuleElement],
    pref: Option<&[usize]>,
) -> DivisionResult {
    let ring = Arc::clone(v.ring());
    let default_pref: Vec<usize>;
    let pref = match pref {
        Some(p) => p,
        None => {
            default_pref = (0..divisors.len()).collect();
            &default_pref
        }
    };
    let field = ring.field();
    let mut quotients = vec![Polynomial::zero(&ring); divisors.len()];
    let mut remainder = ModuleElement::zero(&ring, v.shape());
    let mut work = v.clone();
    let leads: Vec<Option<(usize, Monomial, FieldElement)>> = divisors
        .iter()
        .map(|d| d.lead().map(|(i, m, c)| (i, m.clone(), c.clone())))
        .collect();
    'outer: while let Some((idx, mono, coeff)) = work.lead().map(|(i, m, c)| (i, m.clone(), c.clone())) {
        for &k in pref {
            if let Some((di, dm, dc)) = &leads[k] {
                if *di == idx && dm.divides(&mono) {
                    let qm = dm.quotient_into(&mono);
                    let qc = field.div(&coeff, dc).expect("nonzero divisor lead");
                    work = work.sub(&divisors[k].mul_term(&qm, &qc));
                    quotients[k] = quotients[k].add(&Polynomial::from_term(&ring, qm, qc));
                    continue 'outer;
                }
            }
        }
        // no divisor applies: move the leading term to the remainder
        let comp = work.component(idx).unwrap();
        let term = Polynomial::from_term(&ring, mono.clone(), coeff.clone());
        remainder = remainder.add(&ModuleElement::from_components(
            &ring,
            v.shape(),
            vec![(idx, term.clone())],
        ));
        let reduced = comp.sub(&term);
        let mut comps: Vec<(usize, Polynomial)> = work
            .components()
            .filter(|&(i, _)| i != idx)
            .map(|(i, p)| (i, p.clone()))
            .collect();
        if !reduced.is_zero() {
            comps.push((idx, reduced));
        }
        work = ModuleElement::from_components(&ring, v.shape(), comps);
    }
    DivisionResult {
        quotients,
        remainder,
    }
}

/// Incremental Buchberger state. Elements are kept monic; witnesses (when
/// tracked) express each element over the original generators.
struct GbCore {
    ring: Ring,
    shape: Arc<FreeModuleShape>,
    elements: Vec<ModuleElement>,
    witnesses: Vec<Vec<Polynomial>>,
    track_witnesses: bool,
    num_gens: usize,
    // (S-pair degree, i, j); min-degree first, then index order
    pairs: BinaryHeap<Reverse<(i64, usize, usize)>>,
}

impl GbCore {
    fn new(ring: &Ring, shape: &Arc<FreeModuleShape>, num_gens: usize, track: bool) -> Self {
        GbCore {
            ring: Arc::clone(ring),
            shape: Arc::clone(shape),
            elements: Vec::new(),
            witnesses: Vec::new(),
            track_witnesses: track,
            num_gens,
            pairs: BinaryHeap::new(),
        }
    }

    fn pair_degree(&self, i: usize, j: usize) -> i64 {
        let (ci, mi, _) = self.elements[i].lead().unwrap();
        let (_, mj, _) = self.elements[j].lead().unwrap();
        i64::from(mi.lcm(mj).degree()) + self.shape.degrees[ci]
    }

    fn reduce_with_witness(
        &self,
        v: &ModuleElement,
        w: Vec<Polynomial>,
    ) -> (ModuleElement, Vec<Polynomial>) {
        let res = divide(v, &self.elements, None);
        let mut w = w;
        if self.track_witnesses {
            for (k, q) in res.quotients.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (g, wit) in self.witnesses[k].iter().enumerate() {
                    if !wit.is_zero() {
                        w[g] = w[g].sub(&q.mul(wit));
                    }
                }
            }
        }
        (res.remainder, w)
    }

    fn push(&mut self, elem: ModuleElement, witness: Vec<Polynomial>) {
        debug_assert!(!elem.is_zero());
        let (_, _, c) = elem.lead().unwrap();
        let inv = self.ring.field().inv(c).unwrap();
        let elem = elem.scale(&inv);
        let witness = if self.track_witnesses {
            witness.iter().map(|p| p.scale(&inv)).collect()
        } else {
            witness
        };
        let new = self.elements.len();
        self.elements.push(elem);
        self.witnesses.push(witness);
        for i in 0..new {
            let (ci, mi, _) = self.elements[i].lead().unwrap();
            let (cj, mj, _) = self.elements[new].lead().unwrap();
            if ci != cj {
                continue;
            }
            // product criterion, valid for ideals only
            if self.shape.rank() == 1 && mi.is_coprime(mj) {
                continue;
            }
            self.pairs.push(Reverse((self.pair_degree(i, new), i, new)));
        }
    }

    fn add_generator(&mut self, elem: &ModuleElement, witness: Vec<Polynomial>) {
        if elem.is_zero() {
            return;
        }
        let (r, w) = self.reduce_with_witness(elem, witness);
        if !r.is_zero() {
            self.push(r, w);
        }
    }

    fn s_pair(&self, i: usize, j: usize) -> (ModuleElement, Vec<Polynomial>) {
        let (_, mi, _) = self.elements[i].lead().unwrap();
        let (_, mj, _) = self.elements[j].lead().unwrap();
        let lcm = mi.lcm(mj);
        let ui = mi.quotient_into(&lcm);
        let uj = mj.quotient_into(&lcm);
        let one = self.ring.field().one();
        // elements are monic, so the S-pair is u_i * g_i - u_j * g_j
        let elem = self.elements[i]
            .mul_term(&ui, &one)
            .sub(&self.elements[j].mul_term(&uj, &one));
        let witness = if self.track_witnesses {
            self.witnesses[i]
                .iter()
                .zip(&self.witnesses[j])
                .map(|(wi, wj)| wi.mul_monomial(&ui).sub(&wj.mul_monomial(&uj)))
                .collect()
        } else {
            Vec::new()
        };
        (elem, witness)
    }

    fn saturate(&mut self) {
        while let Some(Reverse((_, i, j))) = self.pairs.pop() {
            let (sp, w) = self.s_pair(i, j);
            if sp.is_zero() {
                continue;
            }
            let (r, w) = self.reduce_with_witness(&sp, w);
            if !r.is_zero() {
                self.push(r, w);
            }
        }
    }

    fn zero_witness(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(&self.ring); self.num_gens]
    }

    fn unit_witness(&self, g: usize) -> Vec<Polynomial> {
        let mut w = self.zero_witness();
        w[g] = Polynomial::one(&self.ring);
        w
    }
}

/// A reduced Gröbner basis of a graded submodule, with witnesses.
#[derive(Debug, Clone)]
pub struct ModuleGroebnerBasis {
    ring: Ring,
    shape: Arc<FreeModuleShape>,
    generators: Vec<ModuleElement>,
    elements: Vec<ModuleElement>,
    witnesses: Vec<Vec<Polynomial>>,
}

impl ModuleGroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn shape(&self) -> &Arc<FreeModuleShape> {
        &self.shape
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    /// Witness of basis element `k`: `elements[k] = sum witness[g] * generators[g]`.
    pub fn witness(&self, k: usize) -> &[Polynomial] {
        &self.witnesses[k]
    }

    pub fn normal_form(&self, v: &ModuleElement) -> ModuleElement {
        self.check_shape(v);
        divide(v, &self.elements, None).remainder
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        self.normal_form(v).is_zero()
    }

    fn check_shape(&self, v: &ModuleElement) {
        assert!(
            Arc::ptr_eq(&self.shape, v.shape()) || self.shape == *v.shape(),
            "module shape mismatch"
        );
    }

    /// Divide and express the quotients over the ORIGINAL generators. When
    /// the remainder is zero the quotients certify membership exactly.
    /// `pref` permutes the divisor preference order (used by the
    /// homotopy-stability tests); `None` is the stored basis order.
    pub fn divide_with_witness(&self, v: &ModuleElement, pref: Option<&[usize]>) -> DivisionResult {
        self.check_shape(v);
        let res = divide(v, &self.elements, pref);
        let mut quotients = vec![Polynomial::zero(&self.ring); self.generators.len()];
        for (k, q) in res.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (g, wit) in self.witnesses[k].iter().enumerate() {
                if !wit.is_zero() {
                    quotients[g] = quotients[g].add(&q.mul(wit));
                }
            }
        }
        DivisionResult {
            quotients,
            remainder: res.remainder,
        }
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`, with witness
/// tracking. Deterministic for a fixed input order.
pub fn groebner_basis(gens: &[ModuleElement]) -> ModuleGroebnerBasis {
    assert!(!gens.is_empty(), "need at least one generator");
    let ring = Arc::clone(gens[0].ring());
    let shape = Arc::clone(gens[0].shape());
    let mut core = GbCore::new(&ring, &shape, gens.len(), true);
    for (g, elem) in gens.iter().enumerate() {
        let w = core.unit_witness(g);
        core.add_generator(elem, w);
    }
    core.saturate();

    // minimize: drop elements whose lead is divisible by another surviving lead
    let n = core.elements.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        let (ci, mi, _) = core.elements[i].lead().unwrap();
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let (cj, mj, _) = core.elements[j].lead().unwrap();
            if ci == cj && mj.divides(mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut elements: Vec<ModuleElement> = Vec::new();
    let mut witnesses: Vec<Vec<Polynomial>> = Vec::new();
    for i in 0..n {
        if keep[i] {
            elements.push(core.elements[i].clone());
            witnesses.push(core.witnesses[i].clone());
        }
    }

    // tail-reduce every element against the others
    let t = elements.len();
    for i in 0..t {
        let others: Vec<ModuleElement> = (0..t).filter(|&j| j != i).map(|j| elements[j].clone()).collect();
        let res = divide(&elements[i], &others, None);
        if res.quotients.iter().all(|q| q.is_zero()) {
            continue;
        }
        let mut w = witnesses[i].clone();
        for (slot, j) in (0..t).filter(|&j| j != i).enumerate() {
            let q = &res.quotients[slot];
            if q.is_zero() {
                continue;
            }
            for g in 0..w.len() {
                if !witnesses[j][g].is_zero() {
                    w[g] = w[g].sub(&q.mul(&witnesses[j][g]));
                }
            }
        }
        elements[i] = res.remainder;
        witnesses[i] = w;
    }

    // canonical order: greatest lead first under POT
    let mut idx: Vec<usize> = (0..t).collect();
    idx.sort_by(|&a, &b| {
        let (ca, ma, _) = elements[a].lead().unwrap();
        let (cb, mb, _) = elements[b].lead().unwrap();
        ca.cmp(&cb).then_with(|| ring.order().cmp(mb, ma))
    });
    let elements: Vec<ModuleElement> = idx.iter().map(|&i| elements[i].clone()).collect();
    let witnesses: Vec<Vec<Polynomial>> = idx.iter().map(|&i| witnesses[i].clone()).collect();

    ModuleGroebnerBasis {
        ring,
        shape,
        generators: gens.to_vec(),
        elements,
        witnesses,
    }
}

/// Generators of the syzygy module of `gens`: the kernel of
/// `(q_1,...,q_r) -> sum q_k gens[k]`, in a fresh free module with one
/// generator per input, via Schreyer's construction from S-pair reductions.
pub fn syzygy_basis(gens: &[ModuleElement]) -> Vec<ModuleElement> {
    assert!(!gens.is_empty());
    let ring = Arc::clone(gens[0].ring());
    let gb = groebner_basis(gens);
    let t = gb.elements.len();
    let r = gens.len();
    let degrees: Vec<i64> = gens
        .iter()
        .map(|g| g.degree().expect("homogeneous nonzero generators"))
        .collect();
    let syz_shape = FreeModuleShape::with_prefix(degrees, "s");

    let mut syzygies: Vec<ModuleElement> = Vec::new();
    let one = ring.field().one();

    // Schreyer syzygies of the GB elements, pushed down to the generators
    // through the witness matrix.
    for i in 0..t {
        for j in (i + 1)..t {
            let (ci, mi, _) = gb.elements[i].lead().unwrap();
            let (cj, mj, _) = gb.elements[j].lead().unwrap();
            if ci != cj {
                continue;
            }
            let lcm = mi.lcm(mj);
            let ui = mi.quotient_into(&lcm);
            let uj = mj.quotient_into(&lcm);
            let sp = gb.elements[i]
                .mul_term(&ui, &one)
                .sub(&gb.elements[j].mul_term(&uj, &one));
            let res = divide(&sp, &gb.elements, None);
            assert!(
                res.remainder.is_zero(),
                "S-pair of a Groebner basis must reduce to zero"
            );
            // sigma over the GB basis: u_i e_i - u_j e_j - sum q_k e_k
            let mut sigma = vec![Polynomial::zero(&ring); t];
            sigma[i] = Polynomial::from_term(&ring, ui, one.clone());
            sigma[j] = sigma[j].sub(&Polynomial::from_term(&ring, uj, one.clone()));
            for (k, q) in res.quotients.iter().enumerate() {
                sigma[k] = sigma[k].sub(q);
            }
            // transport to generator coordinates: sigma . W
            let mut comps = vec![Polynomial::zero(&ring); r];
            for (k, s) in sigma.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                for g in 0..r {
                    let w = &gb.witnesses[k][g];
                    if !w.is_zero() {
                        comps[g] = comps[g].add(&s.mul(w));
                    }
                }
            }
            let elem = ModuleElement::from_components(
                &ring,
                &syz_shape,
                comps.into_iter().enumerate().collect(),
            );
            if !elem.is_zero() {
                syzygies.push(elem);
            }
        }
    }

    // rows of (I - V.W) where gens = V . GB
    for (g, gen) in gens.iter().enumerate() {
        let res = gb.divide_with_witness(gen, None);
        assert!(res.remainder.is_zero(), "generator must reduce to zero");
        let mut comps = res.quotients.iter().map(|q| q.neg()).collect::<Vec<_>>();
        comps[g] = comps[g].add(&Polynomial::one(&ring));
        let elem = ModuleElement::from_components(
            &ring,
            &syz_shape,
            comps.into_iter().enumerate().collect(),
        );
        if !elem.is_zero() {
            syzygies.push(elem);
        }
    }

    syzygies.dedup();
    syzygies
}

/// Greedy minimal generating subset: process candidates in ascending module
/// degree (ties by index) and keep the ones not already generated. By graded
/// Nakayama the kept subset is a minimal generating set.
pub fn minimal_generating_subset(elems: &[ModuleElement]) -> Vec<usize> {
    let nonzero: Vec<usize> = (0..elems.len()).filter(|&i| !elems[i].is_zero()).collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let ring = Arc::clone(elems[nonzero[0]].ring());
    let shape = Arc::clone(elems[nonzero[0]].shape());
    let mut order: Vec<usize> = nonzero;
    order.sort_by_key(|&i| (elems[i].degree().expect("homogeneous"), i));
    let mut core = GbCore::new(&ring, &shape, 0, false);
    let mut kept = Vec::new();
    for i in order {
        if core.elements.is_empty() {
            kept.push(i);
            core.add_generator(&elems[i], Vec::new());
            core.saturate();
            continue;
        }
        let r = divide(&elems[i], &core.elements, None).remainder;
        if !r.is_zero() {
            kept.push(i);
            core.push(r, Vec::new());
            core.saturate();
        }
    }
    kept.sort_unstable();
    kept
}

// ---------------------------------------------------------------------------
// ideals
// ---------------------------------------------------------------------------

/// An ordered homogeneous generating set of an ideal. The order is preserved
/// verbatim: it labels resolution bases and fixes the bracket power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        if gens.iter().any(|g| g.is_zero()) {
            return Err(GroebnerError::ZeroGenerator);
        }
        if gens.iter().any(|g| !g.is_homogeneous()) {
            return Err(GroebnerError::NonHomogeneous);
        }
        for g in &gens {
            assert!(
                crate::poly::same_ring(g.ring(), ring),
                "generator from a different ring"
            );
        }
        Ok(IdealBasis {
            ring: Arc::clone(ring),
            gens,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// The bracket power `I^[p] = (g_0^p, ..., g_{n-1}^p)`, order preserved.
    /// Depends on the generating set, not only on the ideal.
    pub fn bracket_power(&self) -> IdealBasis {
        IdealBasis {
            ring: Arc::clone(&self.ring),
            gens: self.gens.iter().map(|g| g.pth_power()).collect(),
        }
    }

    pub fn groebner(&self) -> IdealGroebner {
        let elems: Vec<ModuleElement> = self
            .gens
            .iter()
            .map(|g| ModuleElement::from_poly(g.clone()))
            .collect();
        IdealGroebner {
            inner: groebner_basis(&elems),
        }
    }
}

/// Rank-one convenience wrapper around [`ModuleGroebnerBasis`].
#[derive(Debug, Clone)]
pub struct IdealGroebner {
    inner: ModuleGroebnerBasis,
}

impl IdealGroebner {
    pub fn ring(&self) -> &Ring {
        self.inner.ring()
    }

    pub fn module(&self) -> &ModuleGroebnerBasis {
        &self.inner
    }

    pub fn basis_polynomials(&self) -> Vec<&Polynomial> {
        self.inner
            .elements()
            .iter()
            .map(|e| e.component(0).expect("rank-one nonzero"))
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let v = ModuleElement::from_poly(f.clone());
        let r = self.inner.normal_form(&v);
        r.component(0)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.ring()))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    fn lead_monomials(&self) -> Vec<&Monomial> {
        self.inner
            .elements()
            .iter()
            .map(|e| e.lead().expect("nonzero").1)
            .collect()
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.lead_monomials().iter().all(|lm| !lm.divides(m))
    }

    /// Count of standard monomials of degree `d`, i.e. `dim_k (S/I)_d`.
    pub fn dimension_in_degree(&self, d: u32) -> usize {
        monomials_of_degree(self.ring(), d)
            .iter()
            .filter(|m| self.is_standard(m))
            .count()
    }

    /// Standard monomials of degree `d`, decreasing in the ring order.
    pub fn monomial_basis_in_degree(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.ring(), d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    /// True iff some power of every variable lies in the lead-term ideal.
    pub fn is_artinian(&self) -> bool {
        let n = self.ring().num_vars();
        let leads = self.lead_monomials();
        (0..n).all(|v| {
            leads.iter().any(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(i, &e)| (i == v) == (e > 0))
            })
        })
    }

    /// Largest `d` with `(S/I)_d` nonzero. Errors on non-Artinian input.
    pub fn socle_degree(&self) -> Result<u32, GroebnerError> {
        if !self.is_artinian() {
            return Err(GroebnerError::NotArtinian);
        }
        // (S/I)_d = 0 forces (S/I)_{d'} = 0 for d' > d, so scan upward; the
        // pure powers in the lead ideal bound the scan.
        let n = self.ring().num_vars();
        let leads = self.lead_monomials();
        let mut bound: u32 = 0;
        for v in 0..n {
            let k = leads
                .iter()
                .filter(|m| {
                    m.exponents()
                        .iter()
                        .enumerate()
                        .all(|(i, &e)| (i == v) == (e > 0))
                })
                .map(|m| u32::from(m.exponents()[v]))
                .min()
                .unwrap();
            bound += k - 1;
        }
        let mut socle = 0;
        for d in 0..=bound {
            if self.dimension_in_degree(d) > 0 {
                socle = d;
            } else {
                return Ok(socle);
            }
        }
        Ok(socle)
    }

    /// Sum of quotient dimensions over all degrees; finite for Artinian `I`.
    pub fn total_dimension(&self) -> Result<usize, GroebnerError> {
        let s = self.socle_degree()?;
        Ok((0..=s).map(|d| self.dimension_in_degree(d)).sum())
    }

    /// Normal forms of every monomial of degree `d`, as coordinate vectors
    /// over the standard monomials of that degree. Computed within the single
    /// degree by processing monomials in increasing order: one reduction step
    /// rewrites a non-standard monomial into strictly smaller monomials of
    /// the same degree, whose rows are already known.
    pub fn normal_form_table(&self, d: u32) -> NormalFormTable {
        let ring = self.ring();
        let field = ring.field();
        let all = monomials_of_degree(ring, d);
        let std_monomials: Vec<Monomial> =
            all.iter().filter(|m| self.is_standard(m)).cloned().collect();
        let std_index: HashMap<&Monomial, usize> =
            std_monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = std_monomials.len();
        let mut coords: HashMap<Monomial, Vec<FieldElement>> = HashMap::with_capacity(all.len());
        let leads: Vec<(usize, &Monomial, &Polynomial)> = self
            .inner
            .elements()
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let p = e.component(0).unwrap();
                (k, p.leading_term().unwrap().0, p)
            })
            .collect();
        for u in all.iter().rev() {
            if let Some(&i) = std_index.get(u) {
                let mut row = vec![field.zero(); dim];
                row[i] = field.one();
                coords.insert(u.clone(), row);
                continue;
            }
            let (_, lm, g) = leads
                .iter()
                .find(|(_, lm, _)| lm.divides(u))
                .expect("non-standard monomial has a reducer");
            let q = lm.quotient_into(u);
            // u = q*lt(g); NF(u) = -sum over tail terms c * NF(q * m)
            let mut row = vec![field.zero(); dim];
            for (m, c) in g.terms().iter().skip(1) {
                let target = q.mul(m);
                let sub = coords
                    .get(&target)
                    .expect("smaller monomial already processed");
                for (i, s) in sub.iter().enumerate() {
                    if !s.is_zero() {
                        let delta = field.mul(c, s);
                        row[i] = field.sub(&row[i], &delta);
                    }
                }
            }
            coords.insert(u.clone(), row);
        }
        NormalFormTable {
            degree: d,
            std_monomials,
            coords,
        }
    }
}

/// Per-degree normal-form coordinates over the standard monomial basis.
#[derive(Debug, Clone)]
pub struct NormalFormTable {
    pub degree: u32,
    pub std_monomials: Vec<Monomial>,
    coords: HashMap<Monomial, Vec<FieldElement>>,
}

impl NormalFormTable {
    pub fn coords(&self, m: &Monomial) -> &[FieldElement] {
        &self.coords[m]
    }

    /// Evaluate a linear functional given by its values on the standard
    /// monomials, extended by normal form to all of the degree-`d` piece.
    pub fn evaluate(
        &self,
        f: &Polynomial,
        std_values: &[FieldElement],
    ) -> FieldElement {
        let field = f.ring().field();
        let mut acc = field.zero();
        for (m, c) in f.terms() {
            assert_eq!(m.degree(), self.degree, "degree mismatch in evaluation");
            for (i, s) in self.coords[m].iter().enumerate() {
                if !s.is_zero() {
                    acc = field.add(&acc, &field.mul(&field.mul(c, s), &std_values[i]));
                }
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// colon ideals
// ---------------------------------------------------------------------------

/// Generators of `(J : g) = { f : f g in J }`, via the syzygies of
/// `(g, h_1, ..., h_k)`: the first components are exactly the colon ideal.
fn colon_by_element(j: &IdealBasis, g: &Polynomial) -> Vec<Polynomial> {
    let ring = Arc::clone(j.ring());
    let mut gens = vec![ModuleElement::from_poly(g.clone())];
    for h in j.generators() {
        gens.push(ModuleElement::from_poly(h.clone()));
    }
    let syz = syzygy_basis(&gens);
    let mut out = Vec::new();
    for s in syz {
        if let Some(q) = s.component(0) {
            out.push(q.clone());
        }
    }
    trim_ideal_generators(&ring, out)
}

/// Generators of the intersection of two ideals, by the two-block trick:
/// syzygies of the rank-2 module generated by `(1,1)`, `(a_i, 0)`, `(0, b_j)`
/// have first components exactly `-f` with `f` in the intersection.
fn intersect_ideals(ring: &Ring, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let shape = FreeModuleShape::with_prefix(vec![0, 0], "t");
    let one = Polynomial::one(ring);
    let mut gens = vec![ModuleElement::from_components(
        ring,
        &shape,
        vec![(0, one.clone()), (1, one)],
    )];
    for p in a {
        gens.push(ModuleElement::from_components(ring, &shape, vec![(0, p.clone())]));
    }
    for p in b {
        gens.push(ModuleElement::from_components(ring, &shape, vec![(1, p.clone())]));
    }
    // the diagonal generator (1,1) is not homogeneous as written unless the
    // two blocks carry the same twist, which they do (both zero)
    let syz = syzygy_basis(&gens);
    let mut out = Vec::new();
    for s in syz {
        if let Some(q) = s.component(0) {
            out.push(q.neg());
        }
    }
    trim_ideal_generators(ring, out)
}

/// Drop zero, duplicate and redundant generators; degree-ascending greedy.
fn trim_ideal_generators(ring: &Ring, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let elems: Vec<ModuleElement> = gens
        .iter()
        .map(|g| ModuleElement::from_poly(g.clone()))
        .collect();
    let keep = minimal_generating_subset(&elems);
    let _ = ring;
    keep.into_iter().map(|i| gens[i].monic()).collect()
}

/// The colon ideal `(J : I) = { f : f I in J }`, computed per generator of
/// `I` and intersected.
pub fn colon_ideal(j: &IdealBasis, i: &IdealBasis) -> IdealBasis {
    assert!(
        crate::poly::same_ring(j.ring(), i.ring()),
        "colon of ideals in different rings"
    );
    let ring = Arc::clone(j.ring());
    let mut acc: Option<Vec<Polynomial>> = None;
    for g in i.generators() {
        let cg = colon_by_element(j, g);
        acc = Some(match acc {
            None => cg,
            Some(prev) => intersect_ideals(&ring, &prev, &cg),
        });
    }
    let gens = acc.expect("colon by an ideal with at least one generator");
    IdealBasis::new(&ring, gens).expect("colon generators are homogeneous and nonzero")
}
