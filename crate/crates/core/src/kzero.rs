//! K₀ of concrete rings.
//!
//! Over an exact field, projective-module classes are idempotent matrices
//! classified by rank; the rank semigroup completes to Z through the
//! symmetrization machinery. Non-field rings from the classical table are
//! served as cited lookups, Morita transport reinterprets block idempotents,
//! and unitalization adjoins a unit to a non-unital coefficient ring with
//! the twisted product.

use crate::abelian::FGAbelianGroup;
use crate::error::{Error, Result};
use crate::field::{Field, FieldMatrix};
use crate::grothendieck::{symmetrize_presented, GroupCompletion, PresentedMonoid};
use crate::kfinite::FiniteField;
use num_bigint::BigInt;
use serde_json::Value;

/// Descriptor of an exact coefficient field.
#[derive(Clone, Debug)]
pub enum ExactField {
    Rationals,
    Finite(u64),
}

impl ExactField {
    /// Parse "Q", "F_5", "F_9", "F5".
    pub fn parse(s: &str) -> Result<ExactField> {
        let s = s.trim();
        if s == "Q" {
            return Ok(ExactField::Rationals);
        }
        let rest = s
            .strip_prefix("F_")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::input(format!("unknown field '{s}' (expected Q or F_q)")))?;
        let q: u64 = rest
            .parse()
            .map_err(|_| Error::input(format!("bad field size in '{s}'")))?;
        // validate now so errors surface at parse time
        FiniteField::new(q)?;
        Ok(ExactField::Finite(q))
    }

    pub fn finite(&self) -> Result<FiniteField> {
        match self {
            ExactField::Rationals => Err(Error::input("expected a finite field, got Q")),
            ExactField::Finite(q) => FiniteField::new(*q),
        }
    }
}

impl std::fmt::Display for ExactField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactField::Rationals => write!(f, "Q"),
            ExactField::Finite(q) => write!(f, "F_{q}"),
        }
    }
}

/// A validated idempotent: Q² = Q exactly.
#[derive(Clone)]
pub struct IdempotentMatrix<F: Field> {
    matrix: FieldMatrix<F>,
}

impl<F: Field> std::fmt::Debug for IdempotentMatrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Idempotent{:?}", self.matrix)
    }
}

impl<F: Field> IdempotentMatrix<F> {
    pub fn matrix(&self) -> &FieldMatrix<F> {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// 1 − Q, itself an idempotent.
    pub fn complement(&self) -> IdempotentMatrix<F> {
        let f = self.matrix.field().clone();
        let n = self.size();
        let mut m = FieldMatrix::identity(f.clone(), n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f.sub(&m[(i, j)], &self.matrix[(i, j)]);
            }
        }
        IdempotentMatrix { matrix: m }
    }

    /// Block direct sum of idempotents.
    pub fn direct_sum(&self, other: &IdempotentMatrix<F>) -> IdempotentMatrix<F> {
        IdempotentMatrix { matrix: self.matrix.direct_sum(&other.matrix) }
    }
}

/// Validate Q² = Q by exact comparison; the error names the first
/// offending entry.
pub fn verify_idempotent<F: Field>(m: FieldMatrix<F>) -> Result<IdempotentMatrix<F>> {
    if !m.is_square() {
        return Err(Error::input(format!(
            "idempotent must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let sq = m.mul(&m);
    let f = m.field();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if sq[(i, j)] != m[(i, j)] {
                return Err(Error::Verification(format!(
                    "Q^2 differs from Q first at entry ({i}, {j}): {} vs {}",
                    f.render(&sq[(i, j)]),
                    f.render(&m[(i, j)])
                )));
            }
        }
    }
    Ok(IdempotentMatrix { matrix: m })
}

/// Dimension of the image; over a field this decides the module class.
pub fn rank_class<F: Field>(q: &IdempotentMatrix<F>) -> usize {
    q.matrix.rank()
}

/// K₀ of a field: the rank semigroup (N, +) completed to Z, with the class
/// map sending an idempotent to its rank.
pub struct K0OfField {
    pub field: ExactField,
    pub completion: GroupCompletion,
}

impl K0OfField {
    /// Coordinates of an idempotent's class in the completion.
    pub fn class_of<F: Field>(&self, q: &IdempotentMatrix<F>) -> Vec<BigInt> {
        self.completion
            .map_formal_sum(&[rank_class(q) as u64])
            .expect("rank semigroup has one generator")
    }
}

pub fn k0_of_field(field: ExactField) -> K0OfField {
    let rank_semigroup = PresentedMonoid::free(&["rank"]);
    K0OfField { field, completion: symmetrize_presented(&rank_semigroup) }
}

/// Rings of the classical K₀/K₁ tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    /// Z
    Integers,
    /// Z(√−5)
    IntegersSqrtMinus5,
    /// C[G] for a finite group G with `irreducibles` irreducible
    /// representations
    GroupAlgebra { irreducibles: usize },
    /// complex continuous functions on S¹
    ContinuousComplexCircle,
    /// real continuous functions on S¹
    ContinuousRealCircle,
    /// complex continuous functions on S²
    ContinuousComplexSphere,
    /// real continuous functions on S²
    ContinuousRealSphere,
    /// M_n(inner)
    MatrixRing { n: usize, inner: Box<RingDescriptor> },
    /// compact operators on an infinite-dimensional Hilbert space
    CompactOperators,
    /// all bounded operators on an infinite-dimensional Hilbert space
    BoundedOperators,
    /// Z[x]/(1 + x + … + x^{p−1}), p an odd prime
    Cyclotomic { p: u64 },
}

impl RingDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::GroupAlgebra { irreducibles } if *irreducibles == 0 => {
                Err(Error::input("C[G] needs at least one irreducible representation"))
            }
            RingDescriptor::MatrixRing { n, inner } => {
                if *n == 0 {
                    return Err(Error::input("matrix ring size must be >= 1"));
                }
                inner.validate()
            }
            RingDescriptor::Cyclotomic { p } => {
                if *p < 3 || !crate::kfinite::prime_power(*p).map_or(false, |(_, e)| e == 1) {
                    return Err(Error::input(format!("cyclotomic parameter {p} must be an odd prime")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Parse the compact string grammar:
    /// `Z`, `Z(sqrt-5)`, `C[G;4]`, `C_C(S^1)`, `C_R(S^2)`, `M_3(Z)`,
    /// `K(H)`, `B(H)`, `cyclotomic(5)`.
    pub fn parse(s: &str) -> Result<RingDescriptor> {
        let s = s.trim();
        let d = match s {
            "Z" => RingDescriptor::Integers,
            "Z(sqrt-5)" | "Z(√-5)" | "Z(√−5)" => RingDescriptor::IntegersSqrtMinus5,
            "C_C(S^1)" | "C_C(S1)" => RingDescriptor::ContinuousComplexCircle,
            "C_R(S^1)" | "C_R(S1)" => RingDescriptor::ContinuousRealCircle,
            "C_C(S^2)" | "C_C(S2)" => RingDescriptor::ContinuousComplexSphere,
            "C_R(S^2)" | "C_R(S2)" => RingDescriptor::ContinuousRealSphere,
            "K(H)" => RingDescriptor::CompactOperators,
            "B(H)" => RingDescriptor::BoundedOperators,
            _ => {
                if let Some(rest) = s.strip_prefix("C[G;") {
                    let n = rest
                        .strip_suffix(']')
                        .and_then(|x| x.trim().parse::<usize>().ok())
                        .ok_or_else(|| Error::input(format!("bad group algebra '{s}'")))?;
                    RingDescriptor::GroupAlgebra { irreducibles: n }
                } else if let Some(rest) = s.strip_prefix("M_") {
                    let open = rest
                        .find('(')
                        .ok_or_else(|| Error::input(format!("bad matrix ring '{s}'")))?;
                    let n: usize = rest[..open]
                        .parse()
                        .map_err(|_| Error::input(format!("bad matrix size in '{s}'")))?;
                    let inner_src = rest[open + 1..]
                        .strip_suffix(')')
                        .ok_or_else(|| Error::input(format!("unbalanced parens in '{s}'")))?;
                    RingDescriptor::MatrixRing {
                        n,
                        inner: Box::new(RingDescriptor::parse(inner_src)?),
                    }
                } else if let Some(rest) = s.strip_prefix("cyclotomic(") {
                    let p = rest
                        .strip_suffix(')')
                        .and_then(|x| x.trim().parse::<u64>().ok())
                        .ok_or_else(|| Error::input(format!("bad cyclotomic ring '{s}'")))?;
                    RingDescriptor::Cyclotomic { p }
                } else {
                    return Err(Error::input(format!("unknown ring descriptor '{s}'")));
                }
            }
        };
        d.validate()?;
        Ok(d)
    }

    /// Parse the tagged JSON form, e.g.
    /// `{"ring": "M_n", "n": 3, "inner": {"ring": "Z"}}`.
    pub fn from_json(v: &Value) -> Result<RingDescriptor> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::input("ring descriptor must be a JSON object"))?;
        let tag = obj
            .get("ring")
            .and_then(|t| t.as_str())
            .ok_or_else(|| Error::input("ring descriptor needs a 'ring' tag"))?;
        let d = match tag {
            "Z" => RingDescriptor::Integers,
            "Z(sqrt-5)" => RingDescriptor::IntegersSqrtMinus5,
            "C[G]" => {
                let n = obj
                    .get("irreducibles")
                    .and_then(|n| n.as_u64())
                    .ok_or_else(|| Error::input("C[G] needs 'irreducibles'"))?;
                RingDescriptor::GroupAlgebra { irreducibles: n as usize }
            }
            "C_C(S^1)" => RingDescriptor::ContinuousComplexCircle,
            "C_R(S^1)" => RingDescriptor::ContinuousRealCircle,
            "C_C(S^2)" => RingDescriptor::ContinuousComplexSphere,
            "C_R(S^2)" => RingDescriptor::ContinuousRealSphere,
            "M_n" => {
                let n = obj
                    .get("n")
                    .and_then(|n| n.as_u64())
                    .ok_or_else(|| Error::input("M_n needs 'n'"))?;
                let inner = obj.get("inner").ok_or_else(|| Error::input("M_n needs 'inner'"))?;
                RingDescriptor::MatrixRing {
                    n: n as usize,
                    inner: Box::new(RingDescriptor::from_json(inner)?),
                }
            }
            "K(H)" => RingDescriptor::CompactOperators,
            "B(H)" => RingDescriptor::BoundedOperators,
            "cyclotomic" => {
                let p = obj
                    .get("p")
                    .and_then(|p| p.as_u64())
                    .ok_or_else(|| Error::input("cyclotomic needs 'p'"))?;
                RingDescriptor::Cyclotomic { p }
            }
            other => return Err(Error::input(format!("unknown ring tag '{other}'"))),
        };
        d.validate()?;
        Ok(d)
    }
}

impl std::fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::IntegersSqrtMinus5 => write!(f, "Z(√-5)"),
            RingDescriptor::GroupAlgebra { irreducibles } => write!(f, "C[G;{irreducibles}]"),
            RingDescriptor::ContinuousComplexCircle => write!(f, "C_C(S^1)"),
            RingDescriptor::ContinuousRealCircle => write!(f, "C_R(S^1)"),
            RingDescriptor::ContinuousComplexSphere => write!(f, "C_C(S^2)"),
            RingDescriptor::ContinuousRealSphere => write!(f, "C_R(S^2)"),
            RingDescriptor::MatrixRing { n, inner } => write!(f, "M_{n}({inner})"),
            RingDescriptor::CompactOperators => write!(f, "K(H)"),
            RingDescriptor::BoundedOperators => write!(f, "B(H)"),
            RingDescriptor::Cyclotomic { p } => write!(f, "Z[x]/(1+x+...+x^{})", p - 1),
        }
    }
}

/// A looked-up K-group value together with provenance notes.
#[derive(Clone, Debug)]
pub struct CitedGroup {
    pub group: FGAbelianGroup,
    pub notes: Vec<String>,
}

/// K₀ of the classical table rings.
pub fn k0_known(r: &RingDescriptor) -> Result<CitedGroup> {
    r.validate()?;
    let (group, note): (FGAbelianGroup, String) = match r {
        RingDescriptor::Integers => (
            FGAbelianGroup::free(1),
            "finitely generated projective Z-modules are free: every direct summand of Z^n \
             is itself Z^m"
                .into(),
        ),
        RingDescriptor::IntegersSqrtMinus5 => (
            FGAbelianGroup::parse("Z ⊕ Z/2").unwrap(),
            "the class group of Z[√-5] has order 2: a non-principal ideal exists".into(),
        ),
        RingDescriptor::GroupAlgebra { irreducibles } => (
            FGAbelianGroup::free(*irreducibles),
            format!(
                "C[G] is a product of matrix algebras, one per irreducible representation \
                 (N = {irreducibles})"
            ),
        ),
        RingDescriptor::ContinuousComplexCircle => (
            FGAbelianGroup::free(1),
            "every complex vector bundle over the circle is trivial".into(),
        ),
        RingDescriptor::ContinuousRealCircle => (
            FGAbelianGroup::parse("Z ⊕ Z/2").unwrap(),
            "the Moebius band generates the 2-torsion factor".into(),
        ),
        RingDescriptor::ContinuousComplexSphere => (
            FGAbelianGroup::free(2),
            "the canonical complex line bundle L over S^2 generates the second free factor"
                .into(),
        ),
        RingDescriptor::ContinuousRealSphere => (
            FGAbelianGroup::parse("Z ⊕ Z/2").unwrap(),
            "the real plane bundle underlying L is non-trivial with L' ⊕ L' trivial, \
             giving the 2-torsion"
                .into(),
        ),
        RingDescriptor::MatrixRing { n, inner } => {
            let mut inner_value = k0_known(inner)?;
            inner_value.notes.insert(
                0,
                format!("Morita invariance: K₀(M_{n}(A)) = K₀(A), applied to A = {inner}"),
            );
            return Ok(inner_value);
        }
        RingDescriptor::CompactOperators => (
            FGAbelianGroup::free(1),
            "finite-rank projections classify projectives over the compact operators".into(),
        ),
        RingDescriptor::BoundedOperators => (
            FGAbelianGroup::trivial(),
            "projective modules over B(H) are Hilbert-space summands; H ⊕ H ≅ H makes every \
             class absorbable"
                .into(),
        ),
        RingDescriptor::Cyclotomic { .. } => {
            return Err(Error::input(format!(
                "{r} has no closed-form K₀ in the table (its reduced K-theory is a finite \
                 class group)"
            )));
        }
    };
    Ok(CitedGroup { group, notes: vec![note] })
}

/// Reinterpret a k×k matrix of n×n blocks (given as an nk×nk matrix) as an
/// idempotent over the base field. The K₀ class corresponds under
/// rank-over-M_n × n = rank-over-field.
pub fn morita_transport<F: Field>(
    m: FieldMatrix<F>,
    n: usize,
) -> Result<IdempotentMatrix<F>> {
    if n == 0 {
        return Err(Error::input("block size must be >= 1"));
    }
    if !m.is_square() || m.rows() % n != 0 {
        return Err(Error::input(format!(
            "{}x{} matrix is not a square matrix of {n}x{n} blocks",
            m.rows(),
            m.cols()
        )));
    }
    verify_idempotent(m)
}

/// The unitalization A⁺ = A × Z with the twisted product
/// (a, λ)(a′, λ′) = (aa′ + λa′ + λ′a, λλ′).
pub struct Unitalization<R: NonUnitalRing> {
    base: R,
}

/// Minimal interface for a (possibly non-unital) coefficient ring with a
/// Z-action and test sampling.
pub trait NonUnitalRing: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn int_scale(&self, n: &BigInt, a: &Self::Elem) -> Self::Elem;
    /// Deterministic sample elements for randomized exact checks.
    fn sample(&self, count: usize, seed: u64) -> Vec<Self::Elem>;
}

/// Z as a coefficient ring.
#[derive(Clone, Debug)]
pub struct IntegerRing;

impl NonUnitalRing for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::from(0)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn int_scale(&self, n: &BigInt, a: &BigInt) -> BigInt {
        n * a
    }

    fn sample(&self, count: usize, seed: u64) -> Vec<BigInt> {
        // small deterministic LCG; exactness matters, distribution does not
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        (0..count)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                BigInt::from((state >> 33) as i64 % 19 - 9)
            })
            .collect()
    }
}

impl<R: NonUnitalRing> Unitalization<R> {
    pub fn new(base: R) -> Self {
        Unitalization { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// The adjoined unit (0, 1).
    pub fn unit(&self) -> (R::Elem, BigInt) {
        (self.base.zero(), BigInt::from(1))
    }

    pub fn add(&self, x: &(R::Elem, BigInt), y: &(R::Elem, BigInt)) -> (R::Elem, BigInt) {
        (self.base.add(&x.0, &y.0), &x.1 + &y.1)
    }

    /// (a, λ)(a′, λ′) = (aa′ + λa′ + λ′a, λλ′)
    pub fn multiply(&self, x: &(R::Elem, BigInt), y: &(R::Elem, BigInt)) -> (R::Elem, BigInt) {
        let (a, lam) = x;
        let (a2, lam2) = y;
        let mut first = self.base.mul(a, a2);
        first = self.base.add(&first, &self.base.int_scale(lam, a2));
        first = self.base.add(&first, &self.base.int_scale(lam2, a));
        (first, lam * lam2)
    }
}

/// Reduced K-theory: the cokernel of the unit map Z → K₀, i.e. the value
/// with `unit_image_rank` free generators stripped.
pub fn reduced_k0(value: &FGAbelianGroup, unit_image_rank: usize) -> Result<FGAbelianGroup> {
    if value.free_rank() < unit_image_rank {
        return Err(Error::input(format!(
            "cannot strip {unit_image_rank} free generator(s) from {value}: free rank is {}",
            value.free_rank()
        )));
    }
    Ok(FGAbelianGroup::from_parts(
        value.free_rank() - unit_image_rank,
        value.torsion(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use num_traits::{One, Zero};
    use std::str::FromStr;

    type Q = crate::abelian::BigRational;

    fn qmat(n: usize, entries: &[&str]) -> FieldMatrix<Rationals> {
        FieldMatrix::new(
            Rationals,
            n,
            n,
            entries.iter().map(|s| Q::from_str(s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn idempotent_accept_reject() {
        assert!(verify_idempotent(FieldMatrix::identity(Rationals, 2)).is_ok());
        let f5 = FiniteField::new(5).unwrap();
        let diag10 = FieldMatrix::new(f5.clone(), 2, 2, vec![1, 0, 0, 0]).unwrap();
        assert!(verify_idempotent(diag10).is_ok());
        let bad = qmat(2, &["1", "1", "0", "1"]);
        let err = verify_idempotent(bad).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
        assert!(err.to_string().contains("(0, 1)"), "{err}");
    }

    #[test]
    fn rank_classes() {
        let id3 = verify_idempotent(FieldMatrix::identity(Rationals, 3)).unwrap();
        assert_eq!(rank_class(&id3), 3);
        let zero = verify_idempotent(FieldMatrix::zero(Rationals, 2, 2)).unwrap();
        assert_eq!(rank_class(&zero), 0);
        // rank-1 projector with b+^2 + b-^2 = 1: [[bp^2, bp*bm],[bp*bm, bm^2]]
        // at the rational point bp^2 = 9/25, bm^2 = 16/25, bp*bm = 12/25
        let proj = qmat(2, &["9/25", "12/25", "12/25", "16/25"]);
        let p = verify_idempotent(proj).unwrap();
        assert_eq!(rank_class(&p), 1);
    }

    #[test]
    fn rank_plus_complement_rank_is_n() {
        let samples = vec![
            verify_idempotent(qmat(2, &["9/25", "12/25", "12/25", "16/25"])).unwrap(),
            verify_idempotent(FieldMatrix::identity(Rationals, 3)).unwrap(),
            verify_idempotent(FieldMatrix::zero(Rationals, 2, 2)).unwrap(),
        ];
        for q in samples {
            assert_eq!(rank_class(&q) + rank_class(&q.complement()), q.size());
        }
    }

    #[test]
    fn conjugate_idempotents_same_rank() {
        let p = verify_idempotent(qmat(2, &["1", "0", "0", "0"])).unwrap();
        let g = qmat(2, &["2", "1", "1", "1"]);
        let ginv = g.inverse().unwrap();
        let conj = g.mul(p.matrix()).mul(&ginv);
        let cp = verify_idempotent(conj).unwrap();
        assert_eq!(rank_class(&cp), rank_class(&p));
    }

    #[test]
    fn k0_of_field_is_z_with_rank_map() {
        for field in [ExactField::Rationals, ExactField::Finite(7)] {
            let k0 = k0_of_field(field);
            assert_eq!(*k0.completion.group(), FGAbelianGroup::free(1));
            let id2 = verify_idempotent(FieldMatrix::identity(Rationals, 2)).unwrap();
            assert_eq!(k0.class_of(&id2), vec![BigInt::from(2)]);
            // direct sums add ranks
            let id3 = verify_idempotent(FieldMatrix::identity(Rationals, 3)).unwrap();
            let sum = id2.direct_sum(&id3);
            assert_eq!(rank_class(&sum), 5);
            assert_eq!(k0.class_of(&sum), vec![BigInt::from(5)]);
        }
    }

    #[test]
    fn k0_table_values() {
        let check = |s: &str, expected: &str| {
            let d = RingDescriptor::parse(s).unwrap();
            let v = k0_known(&d).unwrap();
            assert_eq!(v.group, FGAbelianGroup::parse(expected).unwrap(), "{s}");
            assert!(!v.notes.is_empty());
        };
        check("Z", "Z");
        check("Z(sqrt-5)", "Z ⊕ Z/2");
        check("C[G;4]", "Z^4");
        check("C_C(S^1)", "Z");
        check("C_R(S^1)", "Z ⊕ Z/2");
        check("C_C(S^2)", "Z^2");
        check("C_R(S^2)", "Z ⊕ Z/2");
        check("M_3(Z)", "Z");
        check("M_2(C_C(S^2))", "Z^2");
        check("K(H)", "Z");
        check("B(H)", "0");
        assert!(k0_known(&RingDescriptor::Cyclotomic { p: 5 }).is_err());
        assert!(RingDescriptor::parse("Q[t]").is_err());
    }

    #[test]
    fn ring_descriptor_json_roundtrip() {
        let v: Value = serde_json::from_str(
            r#"{"ring": "M_n", "n": 3, "inner": {"ring": "C[G]", "irreducibles": 2}}"#,
        )
        .unwrap();
        let d = RingDescriptor::from_json(&v).unwrap();
        assert_eq!(
            d,
            RingDescriptor::MatrixRing {
                n: 3,
                inner: Box::new(RingDescriptor::GroupAlgebra { irreducibles: 2 })
            }
        );
        assert_eq!(k0_known(&d).unwrap().group, FGAbelianGroup::free(2));
    }

    #[test]
    fn morita_reinterprets_blocks() {
        // 1x1 block identity over M_2(Q) = 2x2 identity over Q, rank 2
        let id = FieldMatrix::identity(Rationals, 2);
        let t = morita_transport(id, 2).unwrap();
        assert_eq!(rank_class(&t), 2);
        // diag(1, 0) of 2x2 blocks: rank n = 2
        for n in 1..=4usize {
            let mut m = FieldMatrix::zero(Rationals, 2 * n, 2 * n);
            for i in 0..n {
                m[(i, i)] = Q::one();
            }
            let t = morita_transport(m, n).unwrap();
            assert_eq!(rank_class(&t), n);
            // block rank 1 of 2 blocks; field rank = 1 * n
        }
        // zero stays zero
        let z = morita_transport(FieldMatrix::zero(Rationals, 4, 4), 2).unwrap();
        assert_eq!(rank_class(&z), 0);
        // inconsistent block structure
        assert!(morita_transport(FieldMatrix::identity(Rationals, 3), 2).is_err());
    }

    #[test]
    fn morita_preserves_class_under_rank_correspondence() {
        // block-diagonal idempotents with full blocks: block rank r of k,
        // field rank r*n, for all block sizes <= 4
        for n in 1..=4usize {
            for k in 1..=3usize {
                for r in 0..=k {
                    let mut m = FieldMatrix::zero(Rationals, n * k, n * k);
                    for b in 0..r {
                        for i in 0..n {
                            m[(b * n + i, b * n + i)] = Q::one();
                        }
                    }
                    let t = morita_transport(m, n).unwrap();
                    assert_eq!(rank_class(&t), r * n, "n={n} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn unitalization_twisted_product() {
        let u = Unitalization::new(IntegerRing);
        let x = (BigInt::from(2), BigInt::from(3));
        let y = (BigInt::from(5), BigInt::from(7));
        // (2*5 + 3*5 + 7*2, 21) = (39, 21)
        assert_eq!(u.multiply(&x, &y), (BigInt::from(39), BigInt::from(21)));
        // unit laws
        let a = (BigInt::from(11), BigInt::zero());
        assert_eq!(u.multiply(&a, &u.unit()), a);
        assert_eq!(u.multiply(&u.unit(), &a), a);
    }

    #[test]
    fn unitalization_associative_distributive() {
        let u = Unitalization::new(IntegerRing);
        let base = IntegerRing.sample(300, 42);
        let lams = IntegerRing.sample(300, 99);
        let triples: Vec<((BigInt, BigInt), (BigInt, BigInt), (BigInt, BigInt))> = (0..100)
            .map(|i| {
                (
                    (base[3 * i].clone(), lams[3 * i].clone()),
                    (base[3 * i + 1].clone(), lams[3 * i + 1].clone()),
                    (base[3 * i + 2].clone(), lams[3 * i + 2].clone()),
                )
            })
            .collect();
        for (x, y, z) in &triples {
            assert_eq!(
                u.multiply(&u.multiply(x, y), z),
                u.multiply(x, &u.multiply(y, z)),
                "associativity"
            );
            assert_eq!(
                u.multiply(x, &u.add(y, z)),
                u.add(&u.multiply(x, y), &u.multiply(x, z)),
                "left distributivity"
            );
            assert_eq!(
                u.multiply(&u.add(x, y), z),
                u.add(&u.multiply(x, z), &u.multiply(y, z)),
                "right distributivity"
            );
        }
    }

    #[test]
    fn reduced_k0_strips_one_z() {
        let check = |value: &str, expected: &str| {
            let v = FGAbelianGroup::parse(value).unwrap();
            assert_eq!(
                reduced_k0(&v, 1).unwrap(),
                FGAbelianGroup::parse(expected).unwrap()
            );
        };
        check("Z ⊕ Z", "Z"); // complex functions on S^2
        check("Z ⊕ Z/2", "Z/2"); // real functions on S^2
        check("Z", "0"); // the integers
        assert!(reduced_k0(&FGAbelianGroup::parse("Z/2").unwrap(), 1).is_err());
    }
}
