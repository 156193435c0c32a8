//! Exact arithmetic for finitely generated abelian groups.
//!
//! Everything downstream (group completions, K-group tables, symbol
//! quotients) funnels into [`FGAbelianGroup`], the canonical form
//! `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/dₜ` with d₁ | d₂ | … and every dᵢ > 1. Two values
//! are isomorphic groups iff they are equal.

mod matrix;

pub use matrix::{smith_normal_form, IntMatrix, SmithNormalForm};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// A rational number with arbitrary-precision numerator and positive
/// denominator, always in lowest terms (zero is 0/1).
pub type BigRational = num_rational::BigRational;

/// Canonical form of a finitely generated abelian group.
///
/// `torsion` is the divisor chain d₁ | d₂ | … with every dᵢ > 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

/// Order of a group: a positive integer or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigInt),
    Infinite,
}

impl FGAbelianGroup {
    /// The trivial group.
    pub fn trivial() -> Self {
        FGAbelianGroup { free_rank: 0, torsion: vec![] }
    }

    /// Free abelian group Z^r.
    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: vec![] }
    }

    /// Cyclic group Z/n (n ≥ 1; n = 1 gives the trivial group).
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        assert!(n >= BigInt::one(), "cyclic order must be >= 1");
        if n.is_one() {
            Self::trivial()
        } else {
            FGAbelianGroup { free_rank: 0, torsion: vec![n] }
        }
    }

    /// Build from a free rank and an arbitrary list of cyclic orders;
    /// the list is renormalized into a divisor chain.
    pub fn from_parts(free_rank: usize, orders: &[BigInt]) -> Self {
        let nontrivial: Vec<BigInt> =
            orders.iter().filter(|d| !d.is_one()).cloned().collect();
        assert!(
            nontrivial.iter().all(|d| *d > BigInt::one()),
            "cyclic orders must be positive"
        );
        if nontrivial.is_empty() {
            return FGAbelianGroup { free_rank, torsion: vec![] };
        }
        if nontrivial
            .windows(2)
            .all(|w| (&w[1] % &w[0]).is_zero())
        {
            return FGAbelianGroup { free_rank, torsion: nontrivial };
        }
        // Renormalize via the Smith normal form of the diagonal matrix.
        let snf = smith_normal_form(&IntMatrix::diagonal(&nontrivial));
        let torsion: Vec<BigInt> =
            snf.diag.into_iter().filter(|d| !d.is_one()).collect();
        FGAbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Divisor chain d₁ | d₂ | …, every entry > 1.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Product of torsion divisors, or infinite when free_rank > 0.
    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.torsion.iter().product())
        }
    }

    /// Canonical form of the direct sum.
    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        FGAbelianGroup::from_parts(self.free_rank + other.free_rank, &orders)
    }

    /// Kernel and cokernel of multiplication by n, in canonical form.
    ///
    /// Each Z factor contributes 0 to the kernel and Z/n to the cokernel;
    /// each Z/d factor contributes Z/gcd(n, d) to both.
    pub fn mult_by_n_kernel_cokernel(
        &self,
        n: &BigInt,
    ) -> Result<(FGAbelianGroup, FGAbelianGroup)> {
        if *n < BigInt::one() {
            return Err(Error::input(format!("multiplier must be >= 1, got {n}")));
        }
        let mut ker = Vec::new();
        let mut coker = Vec::new();
        for d in &self.torsion {
            let g = num_integer::Integer::gcd(n, d);
            if !g.is_one() {
                ker.push(g.clone());
                coker.push(g);
            }
        }
        for _ in 0..self.free_rank {
            if !n.is_one() {
                coker.push(n.clone());
            }
        }
        Ok((
            FGAbelianGroup::from_parts(0, &ker),
            FGAbelianGroup::from_parts(0, &coker),
        ))
    }

    /// Primary decomposition view: list of prime powers p^k, grouped per
    /// torsion divisor, for display purposes.
    pub fn primary_decomposition(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for d in &self.torsion {
            let mut d = d.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= d {
                if (&d % &p).is_zero() {
                    let mut q = BigInt::one();
                    while (&d % &p).is_zero() {
                        d /= &p;
                        q *= &p;
                    }
                    out.push(q);
                }
                p += 1;
            }
            if d > BigInt::one() {
                out.push(d);
            }
        }
        out.sort();
        out
    }

    /// `{"free_rank": r, "torsion": [d1, ...]}` with exact integer torsion.
    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank,
            "torsion": self
                .torsion
                .iter()
                .map(|d| Value::Number(serde_json::Number::from_string_unchecked(d.to_string())))
                .collect::<Vec<_>>(),
        })
    }

    fn render(&self, sep: &str) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(sep)
        }
    }

    /// ASCII rendering, `Z^2 + Z/2 + Z/6`.
    pub fn to_string_ascii(&self) -> String {
        self.render(" + ")
    }

    /// Parse the group grammar `Z^r ⊕ Z/d ⊕ …` (also accepts `+` and `0`).
    pub fn parse(s: &str) -> Result<FGAbelianGroup> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::input("empty group expression"));
        }
        let mut free = 0usize;
        let mut orders: Vec<BigInt> = Vec::new();
        for raw in s.replace('⊕', "+").split('+') {
            let tok = raw.trim();
            if tok.is_empty() {
                return Err(Error::input(format!("empty summand in '{s}'")));
            }
            if tok == "0" {
                continue;
            }
            if tok == "Z" {
                free += 1;
            } else if let Some(r) = tok.strip_prefix("Z^") {
                let r: usize = r
                    .trim()
                    .parse()
                    .map_err(|_| Error::input(format!("bad free rank '{tok}'")))?;
                free += r;
            } else if let Some(d) = tok.strip_prefix("Z/") {
                let d: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| Error::input(format!("bad torsion order '{tok}'")))?;
                if d < BigInt::from(2) {
                    return Err(Error::input(format!(
                        "torsion order must be >= 2 in '{tok}'"
                    )));
                }
                orders.push(d);
            } else {
                return Err(Error::input(format!("unrecognized summand '{tok}'")));
            }
        }
        Ok(FGAbelianGroup::from_parts(free, &orders))
    }
}

impl std::fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render(" ⊕ "))
    }
}

impl std::fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render(" ⊕ "))
    }
}

/// Cokernel of an integer matrix: Z^rows / (column lattice), canonical form.
pub fn cokernel(m: &IntMatrix) -> FGAbelianGroup {
    cokernel_with_map(m).0
}

/// Cokernel together with the data needed to push vectors of Z^rows into
/// canonical coordinates (torsion coordinates first, then free ones).
pub fn cokernel_with_map(m: &IntMatrix) -> (FGAbelianGroup, CanonicalProjection) {
    let snf = smith_normal_form(m);
    let rows = m.rows();
    let n = snf.diag.len();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    let mut free_rows = Vec::new();
    for i in 0..rows {
        let d = if i < n { snf.diag[i].clone() } else { BigInt::zero() };
        if d.is_zero() {
            free_rows.push(i);
        } else if !d.is_one() {
            torsion_rows.push(i);
            torsion.push(d);
        }
    }
    let group = FGAbelianGroup { free_rank: free_rows.len(), torsion: torsion.clone() };
    let proj = CanonicalProjection {
        left: snf.left,
        torsion_rows,
        torsion,
        free_rows,
    };
    (group, proj)
}

/// Projection Z^g → canonical coordinates of Z^g / L for a fixed lattice L,
/// derived from a Smith normal form. Coordinates are ordered torsion-first
/// (aligned with the group's divisor chain), then free.
#[derive(Clone)]
pub struct CanonicalProjection {
    left: IntMatrix,
    torsion_rows: Vec<usize>,
    torsion: Vec<BigInt>,
    free_rows: Vec<usize>,
}

impl CanonicalProjection {
    pub fn coord_len(&self) -> usize {
        self.torsion_rows.len() + self.free_rows.len()
    }

    /// Canonical coordinates of a vector (torsion entries reduced to
    /// 0 ≤ c < d).
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.left.cols(), "vector length mismatch");
        let w = self.left.mul_vec(v);
        let mut out = Vec::with_capacity(self.coord_len());
        for (row, d) in self.torsion_rows.iter().zip(&self.torsion) {
            out.push(num_integer::Integer::mod_floor(&w[*row], d));
        }
        for row in &self.free_rows {
            out.push(w[*row].clone());
        }
        out
    }

    /// Whether a vector lies in the lattice (i.e. maps to zero).
    pub fn is_in_lattice(&self, v: &[BigInt]) -> bool {
        self.project(v).iter().all(|c| c.is_zero())
    }

    /// Reduce an arbitrary coordinate vector (e.g. a sum of projections)
    /// back to canonical range.
    pub fn reduce_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.coord_len());
        let mut out = coords.to_vec();
        for (i, d) in self.torsion.iter().enumerate() {
            out[i] = num_integer::Integer::mod_floor(&out[i], d);
        }
        out
    }
}

impl From<GroupOrder> for Value {
    fn from(o: GroupOrder) -> Value {
        match o {
            GroupOrder::Finite(n) => {
                Value::Number(serde_json::Number::from_string_unchecked(n.to_string()))
            }
            GroupOrder::Infinite => Value::String("infinite".to_string()),
        }
    }
}
