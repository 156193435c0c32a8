//! Small finite fields and their K-groups.
//!
//! Fields F_q with q ≤ 64 are built from the lexicographically least monic
//! irreducible modulus (coefficients compared low-degree first) and carry
//! full addition/multiplication tables, so discrete logs and coset searches
//! are exhaustive. On top of that: the unit group, the odd/even K-group
//! formulas, a brute-force Steinberg-relation computation of K₂, and the
//! multiplication-by-n coefficient sequence bookkeeping.

use crate::abelian::{cokernel, FGAbelianGroup, GroupOrder, IntMatrix};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;

/// Largest supported field size (keeps every search exhaustive).
pub const MAX_Q: u64 = 64;

/// F_q, q = p^e ≤ 64, with full arithmetic tables.
///
/// Elements are indices 0..q; index Σ cᵢ pⁱ stands for the coefficient
/// vector (c₀, …, c_{e−1}) in the power basis of the modulus.
#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    /// Modulus coefficients, low degree first, length e+1, monic.
    modulus: Vec<u64>,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Split a prime power into (p, e); None when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

// polynomial helpers over F_p, coefficients low degree first, normalized
// (no trailing zeros)

fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(out)
}

/// Remainder of a mod b (b monic), over F_p.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = poly_trim(a.to_vec());
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "modulus must be monic");
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for i in 0..=db {
                let idx = shift + i;
                r[idx] = (r[idx] + p * lead - (lead * b[i]) % p) % p;
            }
        }
        // top coefficient is now zero (b is monic)
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn poly_is_divisible(a: &[u64], b: &[u64], p: u64) -> bool {
    poly_rem(a, b, p).is_empty()
}

/// Exhaustive irreducibility test: no monic factor of degree 1..=deg/2.
fn poly_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // all monic polys of degree d: indices 0..p^d over the low coefficients
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut m = idx;
            for _ in 0..d {
                g.push(m % p);
                m /= p;
            }
            g.push(1);
            if poly_is_divisible(f, &g, p) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// The field with q elements, q = p^e ≤ 64.
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::input(format!("{q} is not a prime power")))?;
        if q > MAX_Q {
            return Err(Error::input(format!("field size {q} exceeds guard {MAX_Q}")));
        }
        if !is_prime(p) {
            return Err(Error::Internal(format!("prime-power split of {q} failed")));
        }
        // Lexicographically least monic irreducible of degree e,
        // coefficients compared low-degree first (c0 outermost).
        let modulus = Self::least_irreducible(p, e)?;
        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            add: vec![0; (q * q) as usize],
            mul: vec![0; (q * q) as usize],
        };
        field.build_tables();
        Ok(field)
    }

    fn least_irreducible(p: u64, e: u32) -> Result<Vec<u64>> {
        let d = e as usize;
        let mut digits = vec![0u64; d]; // c0..c_{e-1}; c0 is the most significant for the order
        loop {
            let mut f = digits.clone();
            f.push(1);
            if poly_irreducible(&f, p) {
                return Ok(f);
            }
            // next candidate in low-degree-first lexicographic order:
            // increment the last digit, carrying leftward
            let mut i = d;
            loop {
                if i == 0 {
                    return Err(Error::Internal(format!(
                        "no irreducible of degree {e} over F_{p}"
                    )));
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    fn index_to_poly(&self, mut idx: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            v.push(idx % self.p);
            idx /= self.p;
        }
        poly_trim(v)
    }

    fn poly_to_index(&self, poly: &[u64]) -> u64 {
        let mut idx = 0u64;
        for (i, &c) in poly.iter().enumerate() {
            idx += c * self.p.pow(i as u32);
        }
        idx
    }

    fn build_tables(&mut self) {
        let q = self.q;
        for a in 0..q {
            let pa = self.index_to_poly(a);
            for b in 0..q {
                let pb = self.index_to_poly(b);
                // addition: coefficient-wise mod p
                let len = pa.len().max(pb.len());
                let mut sum = vec![0u64; len];
                for i in 0..len {
                    let x = pa.get(i).copied().unwrap_or(0);
                    let y = pb.get(i).copied().unwrap_or(0);
                    sum[i] = (x + y) % self.p;
                }
                self.add[(a * q + b) as usize] = self.poly_to_index(&poly_trim(sum)) as u8;
                let prod = poly_rem(&poly_mul(&pa, &pb, self.p), &self.modulus, self.p);
                self.mul[(a * q + b) as usize] = self.poly_to_index(&prod) as u8;
            }
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Modulus coefficients, low degree first (monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    pub fn one_index(&self) -> u8 {
        1
    }

    pub fn add_elems(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn mul_elems(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg_elem(&self, a: u8) -> u8 {
        // exhaustive: the additive inverse exists and is unique
        (0..self.q as u8)
            .find(|&b| self.add_elems(a, b) == 0)
            .expect("additive inverse exists")
    }

    pub fn inv_elem(&self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        (1..self.q as u8).find(|&b| self.mul_elems(a, b) == 1)
    }

    pub fn pow_elem(&self, a: u8, mut n: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_elems(acc, base);
            }
            base = self.mul_elems(base, base);
            n >>= 1;
        }
        acc
    }

    /// Element from a coefficient vector (low degree first) with entries
    /// reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<u8> {
        if coeffs.len() > self.e as usize {
            return Err(Error::input(format!(
                "coefficient vector of length {} exceeds degree {}",
                coeffs.len(),
                self.e
            )));
        }
        let p = self.p as i64;
        let reduced: Vec<u64> =
            coeffs.iter().map(|&c| (((c % p) + p) % p) as u64).collect();
        Ok(self.poly_to_index(&poly_trim(reduced)) as u8)
    }

    pub fn render_elem(&self, a: u8) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        let poly = self.index_to_poly(a as u64);
        if poly.is_empty() {
            return "0".to_string();
        }
        let terms: Vec<String> = poly
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        terms.join("+")
    }

    /// Discrete log of a nonzero element with respect to a generator,
    /// by exhaustive search.
    pub fn discrete_log(&self, generator: u8, a: u8) -> Option<u64> {
        let mut acc = 1u8;
        for k in 0..(self.q - 1) {
            if acc == a {
                return Some(k);
            }
            acc = self.mul_elems(acc, generator);
        }
        None
    }
}

/// The unit group of F_q: brute-force verification that it is cyclic of
/// order q − 1, returning a verified generator (smallest index).
pub fn unit_group(f: &FiniteField) -> Result<(FGAbelianGroup, u8)> {
    let m = f.q() - 1;
    for g in 1..f.q() as u8 {
        // order of g by iteration
        let mut acc = g;
        let mut order = 1u64;
        while acc != 1 {
            acc = f.mul_elems(acc, g);
            order += 1;
            if order > m {
                return Err(Error::Internal(format!(
                    "element {g} of F_{} does not generate a finite cycle",
                    f.q()
                )));
            }
        }
        if order == m {
            return Ok((FGAbelianGroup::cyclic(BigInt::from(m)), g));
        }
    }
    Err(Error::Internal(format!(
        "no generator found in F_{}; field construction is broken",
        f.q()
    )))
}

/// K-group index: either (2i−1, 2i) via i, or a raw non-negative index.
#[derive(Clone, Copy, Debug)]
pub enum KIndex {
    /// The pair index i ≥ 1 of the formulas for K_{2i−1} and K_{2i}.
    OddOfPair(u64),
    EvenOfPair(u64),
    /// A raw index n ≥ 0.
    Raw(u64),
}

/// K_n(F_q): Z for n = 0, Z/(qⁱ − 1) for n = 2i−1, 0 for n = 2i > 0.
pub fn quillen_k(q: u64, index: KIndex) -> Result<FGAbelianGroup> {
    if prime_power(q).is_none() {
        return Err(Error::input(format!("{q} is not a prime power")));
    }
    let n = match index {
        KIndex::Raw(n) => n,
        KIndex::OddOfPair(i) => {
            if i == 0 {
                return Err(Error::input("pair index i must be >= 1"));
            }
            2 * i - 1
        }
        KIndex::EvenOfPair(i) => {
            if i == 0 {
                return Err(Error::input("pair index i must be >= 1"));
            }
            2 * i
        }
    };
    if n == 0 {
        return Ok(FGAbelianGroup::free(1));
    }
    if n % 2 == 0 {
        return Ok(FGAbelianGroup::trivial());
    }
    let i = (n + 1) / 2;
    let order = BigInt::from(q).pow(i as u32) - BigInt::one();
    Ok(FGAbelianGroup::cyclic(order))
}

/// One Steinberg relation: the class of log(x)·log(1−x) in Z/(q−1).
#[derive(Clone, Debug)]
pub struct SteinbergRelation {
    pub x: u8,
    pub one_minus_x: u8,
    pub log_x: u64,
    pub log_one_minus_x: u64,
    pub product_mod: u64,
}

/// Presentation of K₂(F_q) via the symbol map on the cyclic unit group:
/// F* ⊗ F* collapses to Z/m (m = q−1) by the generator pairing, and the
/// Steinberg relations x ⊗ (1−x) become lattice columns.
pub struct SymbolGroup {
    pub base_order: u64,
    pub generator: u8,
    pub relations: Vec<SteinbergRelation>,
    pub quotient: FGAbelianGroup,
}

/// Brute-force Milnor K₂ of F_q by Matsumoto's presentation.
pub fn milnor_k2(f: &FiniteField) -> Result<SymbolGroup> {
    let (_, generator) = unit_group(f)?;
    let m = f.q() - 1;
    let mut relations = Vec::new();
    for x in f.elements() {
        if x == 0 || x == 1 {
            continue;
        }
        let one_minus_x = f.add_elems(1, f.neg_elem(x));
        debug_assert_ne!(one_minus_x, 0);
        let log_x = f
            .discrete_log(generator, x)
            .ok_or_else(|| Error::Internal("discrete log failed".into()))?;
        let log_one_minus_x = f
            .discrete_log(generator, one_minus_x)
            .ok_or_else(|| Error::Internal("discrete log failed".into()))?;
        relations.push(SteinbergRelation {
            x,
            one_minus_x,
            log_x,
            log_one_minus_x,
            product_mod: if m == 0 { 0 } else { (log_x * log_one_minus_x) % m },
        });
    }
    // single generator (g ⊗ g), columns: m and every Steinberg product
    let mut cols: Vec<BigInt> = vec![BigInt::from(m)];
    cols.extend(relations.iter().map(|r| BigInt::from(r.product_mod)));
    let rel = IntMatrix::new(1, cols.len(), cols);
    let quotient = cokernel(&rel);
    Ok(SymbolGroup { base_order: m, generator, relations, quotient })
}

/// K₁(F_q; Z/n) = F*/(F*)ⁿ by exhaustive coset computation.
pub fn k1_mod_n(f: &FiniteField, n: u64) -> Result<FGAbelianGroup> {
    if n == 0 {
        return Err(Error::input("n must be >= 1"));
    }
    // the subgroup of n-th powers
    let mut powers: Vec<u8> = f
        .elements()
        .filter(|&x| x != 0)
        .map(|x| f.pow_elem(x, n))
        .collect();
    powers.sort_unstable();
    powers.dedup();
    let units = f.q() - 1;
    let index = units / powers.len() as u64;
    // the quotient of a cyclic group is cyclic; verify the index is exact
    if units % powers.len() as u64 != 0 {
        return Err(Error::Internal("subgroup size does not divide group".into()));
    }
    Ok(FGAbelianGroup::cyclic(BigInt::from(index)))
}

/// A finite group tagged with its Tate-twist label μ_n^{⊗i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedGroup {
    pub group: FGAbelianGroup,
    pub twist: Option<String>,
}

/// K_*(F; Z/n) of an algebraically closed field F with char(F) prime to n:
/// 0 in odd indices, μ_n^{⊗i} in index 2i.
pub fn suslin_mod_n(index: u64, n: u64) -> Result<TwistedGroup> {
    if n == 0 {
        return Err(Error::input("n must be >= 1"));
    }
    if index % 2 == 1 {
        return Ok(TwistedGroup { group: FGAbelianGroup::trivial(), twist: None });
    }
    let i = index / 2;
    Ok(TwistedGroup {
        group: FGAbelianGroup::cyclic(BigInt::from(n)),
        twist: Some(format!("μ_{n}^(⊗{i})")),
    })
}

/// The two determined pieces of K_i(A; Z/n) from the multiplication-by-n
/// sequence: an extension of `kernel_part` (= ker ·n on K_{i−1}) by
/// `quotient_part` (= coker ·n on K_i). The group itself is determined only
/// up to extension; `order` is always determined when both pieces are
/// finite.
#[derive(Clone, Debug)]
pub struct CoefficientPieces {
    pub quotient_part: FGAbelianGroup,
    pub kernel_part: FGAbelianGroup,
    pub order: GroupOrder,
}

pub fn coeff_from_sequence(
    k_i: &FGAbelianGroup,
    k_im1: &FGAbelianGroup,
    n: u64,
) -> Result<CoefficientPieces> {
    if n == 0 {
        return Err(Error::input("n must be >= 1"));
    }
    let n = BigInt::from(n);
    let (_, quotient_part) = k_i.mult_by_n_kernel_cokernel(&n)?;
    let (kernel_part, _) = k_im1.mult_by_n_kernel_cokernel(&n)?;
    let order = match (quotient_part.order(), kernel_part.order()) {
        (GroupOrder::Finite(a), GroupOrder::Finite(b)) => GroupOrder::Finite(a * b),
        _ => GroupOrder::Infinite,
    };
    Ok(CoefficientPieces { quotient_part, kernel_part, order })
}

/// All prime powers up to and including `bound`.
pub fn prime_powers_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&q| prime_power(q).is_some()).collect()
}
