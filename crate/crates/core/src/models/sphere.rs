//! Oriented simplicial spheres: Stanley-Reisner ideals, generic Artinian
//! reductions over large finite fields, the Kustin-Miller volume, the
//! closed-form `epsilon`, and the multinomial expansion of the identity's
//! right-hand side.

use super::ModelError;
use crate::field::{FieldConfig, FieldElement};
use crate::groebner::{IdealBasis, IdealGroebner};
use crate::parseval::{compute_vol, VolProvenance, VolumeFunctional};
use crate::poly::{Monomial, PolyRing, Polynomial, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeSet;

/// A pure simplicial complex homeomorphic to a sphere, with a positive vertex
/// order on every facet. Orientation compatibility (induced orientations on a
/// shared ridge are opposite) and the sphere Euler characteristic are checked
/// at construction; being an actual sphere is not certified.
#[derive(Debug, Clone)]
pub struct OrientedSimplicialSphere {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
    dimension: usize,
}

fn permutation_sign(from: &[usize], to: &[usize]) -> Option<i32> {
    if from.len() != to.len() {
        return None;
    }
    let mut perm: Vec<usize> = Vec::with_capacity(from.len());
    for t in to {
        perm.push(from.iter().position(|f| f == t)?);
    }
    let mut sign = 1i32;
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Some(sign)
}

impl OrientedSimplicialSphere {
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        if facets.is_empty() {
            return Err(ModelError::InvalidComplex("no facets".to_string()));
        }
        let k = facets[0].len();
        if k == 0 {
            return Err(ModelError::InvalidComplex("empty facet".to_string()));
        }
        for f in &facets {
            if f.len() != k {
                return Err(ModelError::InvalidComplex(
                    "complex is not pure".to_string(),
                ));
            }
            let set: BTreeSet<usize> = f.iter().copied().collect();
            if set.len() != f.len() {
                return Err(ModelError::InvalidComplex(
                    "facet repeats a vertex".to_string(),
                ));
            }
            if f.iter().any(|&v| v >= vertices.len()) {
                return Err(ModelError::InvalidComplex(
                    "facet references an unknown vertex".to_string(),
                ));
            }
        }
        let dimension = k - 1;
        let sphere = OrientedSimplicialSphere {
            vertices,
            facets,
            dimension,
        };
        sphere.check_ridges()?;
        sphere.check_euler()?;
        Ok(sphere)
    }

    /// Every ridge lies in exactly two facets, and the two induced
    /// orientations are opposite.
    fn check_ridges(&self) -> Result<(), ModelError> {
        use std::collections::HashMap;
        let mut ridges: HashMap<BTreeSet<usize>, Vec<(usize, usize)>> = HashMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            for drop in 0..f.len() {
                let key: BTreeSet<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                ridges.entry(key).or_default().push((fi, drop));
            }
        }
        for (ridge, occurrences) in &ridges {
            if occurrences.len() != 2 {
                return Err(ModelError::InvalidComplex(format!(
                    "ridge {:?} lies in {} facets, expected 2",
                    ridge,
                    occurrences.len()
                )));
            }
            let (f1, k1) = occurrences[0];
            let (f2, k2) = occurrences[1];
            let tuple = |fi: usize, drop: usize| -> Vec<usize> {
                self.facets[fi]
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &v)| v)
                    .collect()
            };
            let t1 = tuple(f1, k1);
            let t2 = tuple(f2, k2);
            let sgn = permutation_sign(&t1, &t2).expect("same underlying ridge");
            let s1 = if k1 % 2 == 0 { 1 } else { -1 };
            let s2 = if k2 % 2 == 0 { 1 } else { -1 };
            if s1 * s2 * sgn != -1 {
                return Err(ModelError::OrientationIncompatible(format!(
                    "facets {} and {} induce equal orientations on a shared ridge",
                    f1, f2
                )));
            }
        }
        Ok(())
    }

    fn check_euler(&self) -> Result<(), ModelError> {
        let expected: i64 = 1 + if self.dimension % 2 == 0 { 1 } else { -1 };
        if self.euler_characteristic() != expected {
            return Err(ModelError::InvalidComplex(format!(
                "Euler characteristic {} differs from the sphere value {}",
                self.euler_characteristic(),
                expected
            )));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// The sphere dimension `n` (facets have `n + 1` vertices).
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    fn all_faces(&self) -> BTreeSet<Vec<usize>> {
        let mut faces = BTreeSet::new();
        for f in &self.facets {
            let mut sorted = f.clone();
            sorted.sort_unstable();
            let k = sorted.len();
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| sorted[i])
                    .collect();
                faces.insert(face);
            }
        }
        faces
    }

    pub fn is_face(&self, subset: &[usize]) -> bool {
        self.facets
            .iter()
            .any(|f| subset.iter().all(|v| f.contains(v)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for face in self.all_faces() {
            chi += if (face.len() - 1) % 2 == 0 { 1 } else { -1 };
        }
        chi
    }

    /// `f_i` = number of `i`-faces for `i = 0..=n`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.dimension + 1];
        for face in self.all_faces() {
            f[face.len() - 1] += 1;
        }
        f
    }

    /// The h-vector, from the f-vector by the alternating binomial transform;
    /// for a simplicial n-sphere this is the Hilbert function of a generic
    /// Artinian reduction.
    pub fn h_vector(&self) -> Vec<i64> {
        let d = self.dimension as i64 + 1;
        let f = self.f_vector();
        let fm1 = |i: i64| -> i64 {
            if i == 0 {
                1
            } else {
                f[(i - 1) as usize] as i64
            }
        };
        (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let term = binom(d - i, k - i) * fm1(i);
                        if (k - i) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// Inclusion-minimal subsets that are not faces, in lexicographic order.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let n_verts = self.vertices.len();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << n_verts) {
            let subset: Vec<usize> = (0..n_verts).filter(|&v| mask & (1 << v) != 0).collect();
            if self.is_face(&subset) {
                continue;
            }
            let minimal = (0..subset.len()).all(|drop| {
                let smaller: Vec<usize> = subset
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                smaller.is_empty() || self.is_face(&smaller)
            });
            if minimal {
                out.push(subset);
            }
        }
        out.sort();
        out
    }

    /// Boundary of the 3-simplex: the 2-sphere on four vertices.
    pub fn simplex_boundary() -> Self {
        let vertices = (0..4).map(|i| format!("x{}", i)).collect();
        let facets = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        Self::new(vertices, facets).expect("valid by construction")
    }

    /// The 4-cycle: the circle on four vertices.
    pub fn square() -> Self {
        let vertices = (0..4).map(|i| format!("x{}", i)).collect();
        let facets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
        Self::new(vertices, facets).expect("valid by construction")
    }

    /// Boundary of the octahedron (cross-polytope): the 2-sphere on six
    /// vertices with antipodal pairs (0,3), (1,4), (2,5).
    pub fn octahedron() -> Self {
        let vertices = (0..6).map(|i| format!("x{}", i)).collect();
        let facets = vec![
            vec![0, 1, 2],
            vec![0, 4, 5],
            vec![3, 1, 5],
            vec![3, 4, 2],
            vec![3, 2, 1],
            vec![0, 2, 4],
            vec![0, 5, 1],
            vec![3, 5, 4],
        ];
        Self::new(vertices, facets).expect("valid by construction")
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Line-based sphere input: `vertices: v0 v1 ...` then one `facet:` line per
/// facet with the vertices in positive order.
pub fn parse_sphere_file(text: &str) -> Result<OrientedSimplicialSphere, ModelError> {
    let mut vertices: Option<Vec<String>> = None;
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| ModelError::Parse {
            line: lineno + 1,
            msg,
        };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(err("duplicate vertices line".to_string()));
            }
            let names: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
            if names.is_empty() {
                return Err(err("no vertices listed".to_string()));
            }
            vertices = Some(names);
        } else if let Some(rest) = line.strip_prefix("facet:") {
            let verts = vertices
                .as_ref()
                .ok_or_else(|| err("facet before vertices line".to_string()))?;
            let mut facet = Vec::new();
            for name in rest.split_whitespace() {
                let idx = verts
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| err(format!("unknown vertex '{}'", name)))?;
                facet.push(idx);
            }
            if facet.is_empty() {
                return Err(err("empty facet".to_string()));
            }
            facets.push(facet);
        } else {
            return Err(err("expected 'vertices:' or 'facet:'".to_string()));
        }
    }
    let vertices = vertices.ok_or(ModelError::Parse {
        line: 0,
        msg: "missing vertices line".to_string(),
    })?;
    OrientedSimplicialSphere::new(vertices, facets)
}

/// The nonface ideal: squarefree monomials of the minimal nonfaces, in
/// lexicographic subset order. The ring must have one variable per vertex.
pub fn stanley_reisner_ideal(
    x: &OrientedSimplicialSphere,
    ring: &Ring,
) -> Result<IdealBasis, ModelError> {
    assert_eq!(
        ring.num_vars(),
        x.vertices().len(),
        "ring must have one variable per vertex"
    );
    let gens: Vec<Polynomial> = x
        .minimal_nonfaces()
        .iter()
        .map(|subset| {
            let mut exps = vec![0u16; ring.num_vars()];
            for &v in subset {
                exps[v] = 1;
            }
            Polynomial::from_term(ring, Monomial::new(exps), ring.field().one())
        })
        .collect();
    Ok(IdealBasis::new(ring, gens)?)
}

/// A specialization of the generic linear forms: the `(n+1) x |X_0|` matrix
/// of coefficients, the forms themselves, the seed that produced them, and
/// the seeds of failed attempts.
#[derive(Debug, Clone)]
pub struct GenericReduction {
    pub theta: Vec<Vec<FieldElement>>,
    pub linear_forms: Vec<Polynomial>,
    pub seed: u64,
    pub failed_seeds: Vec<u64>,
}

/// Smallest `e` with `p^e >= 2^10`.
pub fn default_extension_degree(p: u64) -> usize {
    let mut e = 1;
    let mut q = p;
    while q < 1024 {
        q *= p;
        e += 1;
    }
    e
}

/// Ring with one variable per vertex over `F_{p^e}`.
pub fn sphere_ring(x: &OrientedSimplicialSphere, p: u64, e: usize) -> Result<Ring, ModelError> {
    let field =
        FieldConfig::new(p, e).map_err(|err| ModelError::InvalidComplex(err.to_string()))?;
    Ok(PolyRing::new(field, x.vertices().to_vec()))
}

/// Sample `n+1` linear forms from the seed and build the combined ideal
/// (minimal nonfaces first, then the forms, in that fixed order). Retries
/// with consecutive seeds until the reduction is Artinian of socle degree
/// `n+1` with the complex's h-vector as Hilbert function.
pub fn generic_artinian_reduction(
    x: &OrientedSimplicialSphere,
    ring: &Ring,
    seed: u64,
    max_retries: u32,
) -> Result<(IdealBasis, IdealGroebner, GenericReduction), ModelError> {
    let n = x.dimension();
    let nonfaces = stanley_reisner_ideal(x, ring)?;
    let h = x.h_vector();
    let field = ring.field();
    let mut failed = Vec::new();
    for attempt in 0..=max_retries {
        let attempt_seed = seed.wrapping_add(u64::from(attempt));
        let mut rng = ChaCha12Rng::seed_from_u64(attempt_seed);
        let theta: Vec<Vec<FieldElement>> = (0..=n)
            .map(|_| {
                (0..ring.num_vars())
                    .map(|_| field.random_element(&mut rng))
                    .collect()
            })
            .collect();
        let linear_forms: Vec<Polynomial> = theta
            .iter()
            .map(|row| {
                let mut f = Polynomial::zero(ring);
                for (v, c) in row.iter().enumerate() {
                    f = f.add(&Polynomial::var(ring, v).scale(c));
                }
                f
            })
            .collect();
        if linear_forms.iter().any(|f| f.is_zero()) {
            failed.push(attempt_seed);
            continue;
        }
        let mut gens = nonfaces.generators().to_vec();
        gens.extend(linear_forms.iter().cloned());
        let ideal = IdealBasis::new(ring, gens)?;
        let gb = ideal.groebner();
        let good = gb.is_artinian()
            && gb.socle_degree() == Ok(n as u32 + 1)
            && (0..=n as u32 + 1).all(|d| gb.dimension_in_degree(d) as i64 == h[d as usize]);
        if good {
            return Ok((
                ideal,
                gb,
                GenericReduction {
                    theta,
                    linear_forms,
                    seed: attempt_seed,
                    failed_seeds: failed,
                },
            ));
        }
        failed.push(attempt_seed);
    }
    Err(ModelError::GenericityFailure(failed))
}

fn determinant(field: &FieldConfig, mat: &[Vec<FieldElement>]) -> FieldElement {
    let n = mat.len();
    let mut m: Vec<Vec<FieldElement>> = mat.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return field.zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = field.neg(&det);
        }
        let inv = field.inv(&m[col][col]).unwrap();
        det = field.mul(&det, &m[col][col]);
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = field.mul(&m[r][col], &inv);
            for c in col..n {
                let sub = field.mul(&factor, &m[col][c]);
                m[r][c] = field.sub(&m[r][c], &sub);
            }
        }
    }
    det
}

/// Determinant of the theta matrix restricted to a facet's columns, vertices
/// taken in the facet's positive order.
pub fn facet_determinant(
    reduction: &GenericReduction,
    field: &FieldConfig,
    facet: &[usize],
) -> FieldElement {
    let rows: Vec<Vec<FieldElement>> = reduction
        .theta
        .iter()
        .map(|row| facet.iter().map(|&v| row[v].clone()).collect())
        .collect();
    determinant(field, &rows)
}

pub fn facet_monomial(ring: &Ring, facet: &[usize]) -> Monomial {
    let mut exps = vec![0u16; ring.num_vars()];
    for &v in facet {
        exps[v] = 1;
    }
    Monomial::new(exps)
}

/// The Kustin-Miller volume: the unique functional with
/// `vol(det(theta_F) x_F) = 1` for every positively ordered facet. It is
/// constructed from the first facet and the condition is then verified on all
/// others; a failure names the offending facet and indicates an orientation
/// error in the input.
pub fn kustin_miller_vol(
    x: &OrientedSimplicialSphere,
    reduction: &GenericReduction,
    ideal: &IdealBasis,
) -> Result<VolumeFunctional, ModelError> {
    let ring = ideal.ring();
    let field = ring.field();
    let f0 = &x.facets()[0];
    let det0 = facet_determinant(reduction, field, f0);
    if det0.is_zero() {
        return Err(ModelError::KustinMillerInconsistent { facet: 0 });
    }
    let value = field.inv(&det0).unwrap();
    let vol = compute_vol(ideal, &facet_monomial(ring, f0), &value)?
        .with_provenance(VolProvenance::KustinMiller(0));
    for (fi, facet) in x.facets().iter().enumerate().skip(1) {
        let det = facet_determinant(reduction, field, facet);
        let got = field.mul(&det, vol.value(&facet_monomial(ring, facet)));
        if got != field.one() {
            return Err(ModelError::KustinMillerInconsistent { facet: fi });
        }
    }
    Ok(vol)
}

/// The closed form `x_{X_0}^(p-1) theta_0^(p-1) ... theta_n^(p-1)`, expanded.
pub fn sphere_epsilon_oracle(
    x: &OrientedSimplicialSphere,
    reduction: &GenericReduction,
    ring: &Ring,
) -> Polynomial {
    let p = u32::from(ring.field().characteristic());
    let all: Vec<usize> = (0..x.vertices().len()).collect();
    let x_all = Polynomial::from_term(ring, facet_monomial(ring, &all), ring.field().one());
    let mut acc = x_all.pow(p - 1);
    for theta in &reduction.linear_forms {
        acc = acc.mul(&theta.pow(p - 1));
    }
    acc
}

fn compositions(total: u16, parts: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; parts];
    fn rec(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, pos: usize, left: u16) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(out, cur, pos + 1, left - v);
        }
        cur[pos] = 0;
    }
    rec(&mut out, &mut cur, 0, total);
    out
}

/// The multinomial form of the identity's right-hand side for an exponent
/// map `a` with `|a| = n+1`:
///
/// `(-1)^(n+1) * sum over (b_0, ..., b_n) with |b_i| = p-1 of
///    prod_i prod_v theta_iv^(b_i(v)) / b_i(v)!  *  vol(x_((a+b)/p))^p`
///
/// where the volume term is zero unless `p` divides `a(v) + b(v)` for every
/// vertex `v`. Factorial arguments never reach `p`, so the residues are
/// invertible.
pub fn multinomial_rhs(
    x: &OrientedSimplicialSphere,
    reduction: &GenericReduction,
    ring: &Ring,
    a: &[u16],
    vol: &VolumeFunctional,
) -> FieldElement {
    let field = ring.field();
    let n = x.dimension();
    let num_verts = ring.num_vars();
    assert_eq!(a.len(), num_verts);
    let total: u32 = a.iter().map(|&v| u32::from(v)).sum();
    assert_eq!(total as usize, n + 1, "|a| must equal n + 1");
    let p = u32::from(field.characteristic());

    let mut fact = vec![field.one()];
    for k in 1..p {
        let prev = fact[(k - 1) as usize].clone();
        fact.push(field.mul(&prev, &field.from_u64(u64::from(k))));
    }

    let comps = compositions(p as u16 - 1, num_verts);
    // weight of composition b in row i: prod_v theta_iv^(b(v)) / b(v)!
    let weights: Vec<Vec<FieldElement>> = (0..=n)
        .map(|i| {
            comps
                .iter()
                .map(|b| {
                    let mut w = field.one();
                    for (v, &bv) in b.iter().enumerate() {
                        if bv > 0 {
                            let powed = field.pow(&reduction.theta[i][v], u64::from(bv));
                            w = field.mul(&w, &powed);
                            let finv = field.inv(&fact[bv as usize]).unwrap();
                            w = field.mul(&w, &finv);
                        }
                    }
                    w
                })
                .collect()
        })
        .collect();

    let mut sum = field.zero();
    let mut choice = vec![0usize; n + 1];
    loop {
        let mut coeff = field.one();
        let mut b = vec![0u32; num_verts];
        for (i, &ci) in choice.iter().enumerate() {
            coeff = field.mul(&coeff, &weights[i][ci]);
            for (v, &bv) in comps[ci].iter().enumerate() {
                b[v] += u32::from(bv);
            }
        }
        if !coeff.is_zero() {
            let mut exps = vec![0u16; num_verts];
            let mut divisible = true;
            for v in 0..num_verts {
                let t = u32::from(a[v]) + b[v];
                if t % p != 0 {
                    divisible = false;
                    break;
                }
                exps[v] = (t / p) as u16;
            }
            if divisible {
                let value = vol.value(&Monomial::new(exps));
                if !value.is_zero() {
                    let term = field.mul(&coeff, &field.frobenius(value));
                    sum = field.add(&sum, &term);
                }
            }
        }
        // mixed-radix counter over the composition choices
        let mut pos = 0;
        loop {
            if pos > n {
                break;
            }
            choice[pos] += 1;
            if choice[pos] < comps.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos > n {
            break;
        }
    }
    if (n + 1) % 2 == 1 {
        sum = field.neg(&sum);
    }
    sum
}
