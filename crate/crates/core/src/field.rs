//! Exact arithmetic in prime fields `F_p` and their extensions `F_{p^e}`.
//!
//! A [`FieldConfig`] describes the field once; [`FieldElement`] values are plain
//! coefficient vectors and all arithmetic goes through the config. Elements are
//! always kept in canonical form: residues in `[0, p)`, exactly `e` coefficients.

use smallvec::SmallVec;
use std::fmt;

/// Coefficient storage; inline for the extension degrees the examples use.
pub type Coeffs = SmallVec<[u32; 8]>;

/// Largest supported characteristic. All examples use tiny primes, and the
/// bound keeps every product inside a `u64`.
pub const MAX_P: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} exceeds the supported bound 2^16")]
    TooLarge(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("no modulus shipped for p={0}, e={1}; supply one explicitly")]
    NoShippedModulus(u64, usize),
    #[error("modulus is not irreducible over F_{0}")]
    Reducible(u64),
    #[error("modulus has degree {got}, expected {want}")]
    ModulusDegree { got: usize, want: usize },
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of `F_{p^e}`, stored as `e` residues mod `p`, low degree first.
///
/// The characteristic is carried along so that accidental mixing of
/// configurations is caught; the modulus itself lives on the [`FieldConfig`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    p: u32,
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    /// Serialization used by the CLI: the decimal residue for prime fields,
    /// a bracketed low-degree-first coefficient list for extensions.
    pub fn serialize(&self) -> String {
        if self.coeffs.len() == 1 {
            format!("{}", self.coeffs[0])
        } else {
            let inner: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            format!("[{}]", inner.join(","))
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Description of a coefficient field `F_{p^e}`.
///
/// Immutable after construction and freely shareable. For `e > 1` the field is
/// `F_p[t]/(modulus)`; the shipped moduli (see [`FieldConfig::new`]) make
/// results reproducible across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldConfig {
    p: u32,
    e: usize,
    /// Non-leading coefficients of the monic modulus, low degree first.
    /// Present iff `e > 1`.
    modulus: Option<Vec<u32>>,
}

/// Shipped moduli: for each `(p, e)` the lexicographically smallest monic
/// irreducible polynomial of degree `e` over `F_p`, where candidates are
/// ordered by their non-leading coefficient vector read as a base-`p` integer.
/// Entries are the non-leading coefficients, low degree first.
/// For p=2, e=3 this is `t^3 + t + 1`.
const SHIPPED_MODULI: [(u32, &[&[u32]]); 3] = [
    (
        2,
        &[
            &[1, 1],
            &[1, 1, 0],
            &[1, 1, 0, 0],
            &[1, 0, 1, 0, 0],
            &[1, 1, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0, 0],
            &[1, 1, 0, 1, 1, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0, 0, 0, 0],
            &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0],
            &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        ],
    ),
    (
        3,
        &[
            &[1, 0],
            &[1, 2, 0],
            &[2, 1, 0, 0],
            &[1, 2, 0, 0, 0],
            &[2, 1, 0, 0, 0, 0],
            &[2, 0, 1, 0, 0, 0, 0],
            &[2, 0, 1, 0, 0, 0, 0, 0],
            &[1, 0, 1, 2, 0, 0, 0, 0, 0],
            &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0],
            &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        ],
    ),
    (
        5,
        &[
            &[2, 0],
            &[1, 1, 0],
            &[2, 0, 0, 0],
            &[1, 4, 0, 0, 0],
            &[2, 1, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0, 0],
            &[2, 0, 0, 0, 0, 0, 0, 0],
            &[3, 2, 1, 0, 0, 0, 0, 0, 0],
            &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0],
            &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        ],
    ),
];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldConfig {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::with_modulus(p, 1, None)
    }

    /// `F_{p^e}` with the shipped modulus for `(p, e)`.
    pub fn new(p: u64, e: usize) -> Result<Self, FieldError> {
        if e == 1 {
            return Self::prime(p);
        }
        let table = SHIPPED_MODULI
            .iter()
            .find(|(q, _)| u64::from(*q) == p)
            .ok_or(FieldError::NoShippedModulus(p, e))?;
        let row = table
            .1
            .get(e - 2)
            .ok_or(FieldError::NoShippedModulus(p, e))?;
        Self::with_modulus(p, e, Some(row.to_vec()))
    }

    /// `F_{p^e}` with an explicit monic modulus given by its non-leading
    /// coefficients, low degree first. Irreducibility is verified.
    pub fn with_modulus(p: u64, e: usize, modulus: Option<Vec<u32>>) -> Result<Self, FieldError> {
        if p >= MAX_P {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::BadDegree);
        }
        let p32 = p as u32;
        match (e, &modulus) {
            (1, None) => Ok(FieldConfig {
                p: p32,
                e,
                modulus: None,
            }),
            (1, Some(_)) | (_, None) => Err(FieldError::BadDegree),
            (_, Some(m)) => {
                if m.len() != e {
                    return Err(FieldError::ModulusDegree {
                        got: m.len(),
                        want: e,
                    });
                }
                let m: Vec<u32> = m.iter().map(|&c| c % p32).collect();
                if !modulus_irreducible(p32, &m) {
                    return Err(FieldError::Reducible(p));
                }
                Ok(FieldConfig {
                    p: p32,
                    e,
                    modulus: Some(m),
                })
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.e
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    /// Number of elements, `p^e`. Panics on overflow (not reachable for the
    /// shipped table).
    pub fn order(&self) -> u64 {
        (0..self.e).fold(1u64, |acc, _| acc.checked_mul(u64::from(self.p)).unwrap())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            p: self.p,
            coeffs: std::iter::repeat(0).take(self.e).collect(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// Element of the prime subfield from an integer.
    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut z = self.zero();
        z.coeffs[0] = (n % u64::from(self.p)) as u32;
        z
    }

    /// Element of the prime subfield from a signed integer.
    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = i64::from(self.p);
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Element from a low-degree-first coefficient vector (length `e`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        assert_eq!(coeffs.len(), self.e, "coefficient vector length mismatch");
        FieldElement {
            p: self.p,
            coeffs: coeffs.iter().map(|&c| c % self.p).collect(),
        }
    }

    /// The generator `t` of the extension (zero for `e = 1` makes no sense,
    /// so this panics there).
    pub fn gen(&self) -> FieldElement {
        assert!(self.e > 1, "prime field has no extension generator");
        let mut z = self.zero();
        z.coeffs[1] = 1;
        z
    }

    fn check(&self, a: &FieldElement) {
        assert!(
            a.p == self.p && a.coeffs.len() == self.e,
            "field config mismatch: element of F_{{{}^{}}} used in F_{{{}^{}}}",
            a.p,
            a.coeffs.len(),
            self.p,
            self.e
        );
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        FieldElement { p: self.p, coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement { p: self.p, coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if self.e == 1 {
            let prod = u64::from(a.coeffs[0]) * u64::from(b.coeffs[0]) % u64::from(self.p);
            let mut coeffs = Coeffs::new();
            coeffs.push(prod as u32);
            return FieldElement { p: self.p, coeffs };
        }
        // schoolbook product followed by reduction by the monic modulus
        let p = u64::from(self.p);
        let mut prod = vec![0u64; 2 * self.e - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        let m = self.modulus.as_ref().unwrap();
        for k in (self.e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // t^k = -sum m[i] t^{k-e+i}
            for (i, &mi) in m.iter().enumerate() {
                if mi == 0 {
                    continue;
                }
                let idx = k - self.e + i;
                let sub = c * u64::from(mi) % p;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        FieldElement {
            p: self.p,
            coeffs: prod[..self.e].iter().map(|&c| c as u32).collect(),
        }
    }

    pub fn pow(&self, a: &FieldElement, mut n: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a);
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // a^(p^e - 2); the order fits in u64 for the supported parameters
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The Frobenius map on scalars, `a -> a^p`, by repeated squaring.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, u64::from(self.p))
    }

    /// Uniform scalar from a seeded source; reproducible for a fixed stream.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> FieldElement {
        let coeffs = (0..self.e).map(|_| rng.random_range(0..self.p)).collect();
        FieldElement { p: self.p, coeffs }
    }
}

/// Dense univariate polynomials over `F_p`, used only for the irreducibility
/// check below. Coefficients low degree first, no trailing zeros.
mod univariate {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul_mod(p: u64, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p;
            }
        }
        rem(p, prod, m)
    }

    /// Remainder of `a` by the monic polynomial with non-leading coeffs `m`.
    pub fn rem(p: u64, mut a: Vec<u64>, m: &[u32]) -> Vec<u32> {
        let e = m.len();
        for k in (e..a.len()).rev() {
            let c = a[k];
            if c == 0 {
                continue;
            }
            a[k] = 0;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * u64::from(mi) % p;
                a[k - e + i] = (a[k - e + i] + p - sub) % p;
            }
        }
        a.truncate(e);
        a.iter().map(|&c| c as u32).collect()
    }

    pub fn pow_x_mod(p: u64, mut n: u64, m: &[u32]) -> Vec<u32> {
        // x^n mod (monic poly with non-leading coeffs m)
        let e = m.len();
        let mut base = vec![0u32; e];
        if e > 1 {
            base[1] = 1;
        } else {
            base = rem(p, vec![0, 1], m);
        }
        let mut acc = vec![0u32; e];
        acc[0] = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = mul_mod(p, &acc, &base, m);
            }
            base = mul_mod(p, &base, &base, m);
            n >>= 1;
        }
        acc
    }

    pub fn gcd(p: u64, a: Vec<u32>, b: Vec<u32>) -> Vec<u32> {
        let (mut a, mut b) = (a, b);
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem_general(p, &a, &b);
            a = b;
            b = r;
        }
        a
    }

    fn rem_general(p: u64, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a: Vec<u64> = a.iter().map(|&c| u64::from(c)).collect();
        let db = b.len() - 1;
        let lead_inv = inv_mod(u64::from(*b.last().unwrap()), p);
        while a.len() > db {
            let k = a.len() - 1;
            let c = a[k] % p;
            if c != 0 {
                let f = c * lead_inv % p;
                for (i, &bi) in b.iter().enumerate() {
                    let sub = f * u64::from(bi) % p;
                    a[k - db + i] = (a[k - db + i] + p - sub) % p;
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        a.iter().map(|&c| c as u32).collect()
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        // Fermat
        let mut acc = 1u64;
        let mut base = a % p;
        let mut n = p - 2;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            n >>= 1;
        }
        acc
    }
}

/// Rabin's irreducibility test for a monic degree-`e` polynomial over `F_p`,
/// given by its non-leading coefficients. Exact, and fast at the supported
/// sizes since `p^e` fits in a `u64`.
fn modulus_irreducible(p: u32, m: &[u32]) -> bool {
    let e = m.len() as u64;
    let pe: u64 = match (0..e).try_fold(1u64, |acc, _| acc.checked_mul(u64::from(p))) {
        Some(v) => v,
        None => return false,
    };
    let p64 = u64::from(p);
    if m.len() == 1 {
        // degree 1 is always irreducible
        return true;
    }
    // x^(p^e) == x mod m
    let mut xq = univariate::pow_x_mod(p64, pe, m);
    xq[1] = (xq[1] + p - 1) % p;
    univariate::trim(&mut xq);
    if !xq.is_empty() {
        return false;
    }
    // gcd(x^(p^(e/q)) - x, m) = 1 for every prime divisor q of e
    let mut n = e;
    let mut q = 2;
    let mut prime_divisors = Vec::new();
    while q * q <= n {
        if n % q == 0 {
            prime_divisors.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        prime_divisors.push(n);
    }
    for q in prime_divisors {
        let exp = (0..e / q).fold(1u64, |acc, _| acc * p64);
        let mut xs = univariate::pow_x_mod(p64, exp, m);
        xs[1] = (xs[1] + p - 1) % p;
        let mut full = m.to_vec();
        full.push(1);
        let g = univariate::gcd(p64, full, xs);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn mod_3_arithmetic() {
        let f3 = FieldConfig::prime(3).unwrap();
        let two = f3.from_u64(2);
        assert_eq!(f3.add(&two, &two), f3.one());
        assert_eq!(f3.inv(&two).unwrap(), two);
    }

    #[test]
    fn f8_generator_product() {
        // t * t^2 = t + 1 modulo t^3 + t + 1
        let f8 = FieldConfig::new(2, 3).unwrap();
        assert_eq!(f8.modulus(), Some(&[1, 1, 0][..]));
        let t = f8.gen();
        let t2 = f8.mul(&t, &t);
        assert_eq!(f8.mul(&t, &t2), f8.from_coeffs(&[1, 1, 0]));
    }

    #[test]
    fn inversion_of_zero_fails() {
        let f5 = FieldConfig::prime(5).unwrap();
        assert_eq!(f5.inv(&f5.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    #[should_panic(expected = "config mismatch")]
    fn config_mismatch_panics() {
        let f3 = FieldConfig::prime(3).unwrap();
        let f8 = FieldConfig::new(2, 3).unwrap();
        let _ = f3.add(&f3.one(), &f8.one());
    }

    #[test]
    fn frobenius_examples() {
        let f3 = FieldConfig::prime(3).unwrap();
        let two = f3.from_u64(2);
        assert_eq!(f3.frobenius(&two), two);

        let f8 = FieldConfig::new(2, 3).unwrap();
        let t = f8.gen();
        assert_eq!(f8.frobenius(&t), f8.mul(&t, &t));
        // order of Frobenius divides e
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = f8.random_element(&mut rng);
            let mut b = a.clone();
            for _ in 0..3 {
                b = f8.frobenius(&b);
            }
            assert_eq!(a, b);
        }
    }

    #[test]
    fn frobenius_is_ring_hom() {
        let cfg = FieldConfig::new(3, 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = cfg.random_element(&mut rng);
            let b = cfg.random_element(&mut rng);
            assert_eq!(
                cfg.frobenius(&cfg.add(&a, &b)),
                cfg.add(&cfg.frobenius(&a), &cfg.frobenius(&b))
            );
            assert_eq!(
                cfg.frobenius(&cfg.mul(&a, &b)),
                cfg.mul(&cfg.frobenius(&a), &cfg.frobenius(&b))
            );
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_primes() {
        for p in [2u64, 3, 5] {
            let cfg = FieldConfig::prime(p).unwrap();
            let elems: Vec<FieldElement> = (0..p).map(|n| cfg.from_u64(n)).collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(cfg.add(a, b), cfg.add(b, a));
                    assert_eq!(cfg.mul(a, b), cfg.mul(b, a));
                    if !b.is_zero() {
                        let q = cfg.div(a, b).unwrap();
                        assert_eq!(cfg.mul(&q, b), *a);
                    }
                    for c in &elems {
                        assert_eq!(cfg.add(&cfg.add(a, b), c), cfg.add(a, &cfg.add(b, c)));
                        assert_eq!(cfg.mul(&cfg.mul(a, b), c), cfg.mul(a, &cfg.mul(b, c)));
                        assert_eq!(
                            cfg.mul(a, &cfg.add(b, c)),
                            cfg.add(&cfg.mul(a, b), &cfg.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_random_extension() {
        let cfg = FieldConfig::new(2, 10).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = cfg.random_element(&mut rng);
            let b = cfg.random_element(&mut rng);
            let c = cfg.random_element(&mut rng);
            assert_eq!(cfg.add(&cfg.add(&a, &b), &c), cfg.add(&a, &cfg.add(&b, &c)));
            assert_eq!(cfg.mul(&cfg.mul(&a, &b), &c), cfg.mul(&a, &cfg.mul(&b, &c)));
            assert_eq!(
                cfg.mul(&a, &cfg.add(&b, &c)),
                cfg.add(&cfg.mul(&a, &b), &cfg.mul(&a, &c))
            );
            if !a.is_zero() {
                assert_eq!(cfg.mul(&a, &cfg.inv(&a).unwrap()), cfg.one());
            }
        }
    }

    #[test]
    fn shipped_table_is_valid() {
        for p in [2u64, 3, 5] {
            for e in 1..=16 {
                let cfg = FieldConfig::new(p, e).unwrap();
                assert_eq!(cfg.extension_degree(), e);
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 1 = (t+1)^2 over F_2
        assert_eq!(
            FieldConfig::with_modulus(2, 2, Some(vec![1, 0])),
            Err(FieldError::Reducible(2))
        );
        // t^2 - 1 factors over F_5
        assert_eq!(
            FieldConfig::with_modulus(5, 2, Some(vec![4, 0])),
            Err(FieldError::Reducible(5))
        );
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(FieldConfig::prime(4), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldConfig::prime(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn random_element_reproducible() {
        let cfg = FieldConfig::new(3, 6).unwrap();
        let mut r1 = ChaCha12Rng::seed_from_u64(42);
        let mut r2 = ChaCha12Rng::seed_from_u64(42);
        for _ in 0..10 {
            assert_eq!(cfg.random_element(&mut r1), cfg.random_element(&mut r2));
        }
        let f2 = FieldConfig::prime(2).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let a = f2.random_element(&mut rng);
        assert!(a.coefficients()[0] < 2);
    }

    #[test]
    fn serialization_formats() {
        let f3 = FieldConfig::prime(3).unwrap();
        assert_eq!(f3.from_u64(2).serialize(), "2");
        let f9 = FieldConfig::new(3, 2).unwrap();
        assert_eq!(f9.from_coeffs(&[1, 2]).serialize(), "[1,2]");
    }
}
