//! Group completion (symmetrization) of commutative monoids.
//!
//! Two backends compute the universal abelian group receiving a monoid map:
//!
//! * [`symmetrize_finite`] works on a full addition table and follows the
//!   definition verbatim — pairs (a, b) modulo the relation
//!   (a, b) ~ (c, d) ⇔ ∃e, a + d + e = b + c + e — by exhaustive witness
//!   search. It doubles as an oracle for the other backend.
//! * [`symmetrize_presented`] works on a generators-and-relations
//!   presentation and computes the abelian group with the same presentation
//!   via Smith normal form; witnesses are never materialized.

use crate::abelian::{cokernel_with_map, CanonicalProjection, FGAbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Largest addition table accepted by the finite backend.
pub const FINITE_SIZE_GUARD: usize = 64;

/// A commutative monoid given by its full addition table.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    size: usize,
    zero: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    /// Validates commutativity, associativity (exhaustively) and the
    /// neutral element at construction.
    pub fn new(table: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::input("monoid must be non-empty"));
        }
        if size > FINITE_SIZE_GUARD {
            return Err(Error::input(format!(
                "finite monoid size {size} exceeds guard {FINITE_SIZE_GUARD}"
            )));
        }
        if zero >= size {
            return Err(Error::input(format!("zero index {zero} out of range")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::input(format!("row {i} has length {}", row.len())));
            }
            for &v in row {
                if v >= size {
                    return Err(Error::input(format!("table entry {v} out of range")));
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if table[i][j] != table[j][i] {
                    return Err(Error::input(format!(
                        "addition not commutative at ({i}, {j})"
                    )));
                }
            }
            if table[zero][i] != i {
                return Err(Error::input(format!("{zero} is not neutral at {i}")));
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::input(format!(
                            "addition not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMonoid { size, zero, table })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The cyclic group Z/n as a monoid.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteMonoid::new(table, 0).expect("cyclic table is a monoid")
    }

    /// Truncated addition on {0, 1, …, cap}: a + b saturates at cap.
    pub fn saturating(cap: usize) -> Self {
        let n = cap + 1;
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j).min(cap)).collect())
            .collect();
        FiniteMonoid::new(table, 0).expect("saturating table is a monoid")
    }

    /// Direct product of two monoids.
    pub fn product(&self, other: &FiniteMonoid) -> Result<Self> {
        let n = self.size * other.size;
        if n > FINITE_SIZE_GUARD {
            return Err(Error::input(format!(
                "product size {n} exceeds guard {FINITE_SIZE_GUARD}"
            )));
        }
        let idx = |a: usize, b: usize| a * other.size + b;
        let mut table = vec![vec![0; n]; n];
        for a1 in 0..self.size {
            for b1 in 0..other.size {
                for a2 in 0..self.size {
                    for b2 in 0..other.size {
                        table[idx(a1, b1)][idx(a2, b2)] =
                            idx(self.add(a1, a2), other.add(b1, b2));
                    }
                }
            }
        }
        FiniteMonoid::new(table, idx(self.zero, other.zero))
    }

    /// The presentation with one generator per element and one relation
    /// gᵢ + gⱼ = g_{table[i][j]} per unordered pair.
    pub fn to_presented(&self) -> PresentedMonoid {
        let generator_names: Vec<String> = (0..self.size).map(|i| format!("g{i}")).collect();
        let mut relations = Vec::new();
        for i in 0..self.size {
            for j in i..self.size {
                let mut left = vec![0u64; self.size];
                left[i] += 1;
                left[j] += 1;
                let mut right = vec![0u64; self.size];
                right[self.table[i][j]] += 1;
                relations.push((left, right));
            }
        }
        PresentedMonoid { generator_names, relations }
    }
}

/// A commutative monoid presented by generators and relations u = v between
/// formal non-negative integer combinations of the generators.
#[derive(Clone, Debug)]
pub struct PresentedMonoid {
    generator_names: Vec<String>,
    /// Pairs (u, v), each a coefficient vector over the generators.
    relations: Vec<(Vec<u64>, Vec<u64>)>,
}

impl PresentedMonoid {
    pub fn new(
        generator_names: Vec<String>,
        relations: Vec<(Vec<u64>, Vec<u64>)>,
    ) -> Result<Self> {
        let g = generator_names.len();
        for (i, (u, v)) in relations.iter().enumerate() {
            if u.len() != g || v.len() != g {
                return Err(Error::input(format!(
                    "relation {i} references undeclared generators (expected {g} coefficients)"
                )));
            }
        }
        Ok(PresentedMonoid { generator_names, relations })
    }

    /// The free commutative monoid on `names` (no relations); one generator
    /// gives the natural numbers.
    pub fn free(names: &[&str]) -> Self {
        PresentedMonoid {
            generator_names: names.iter().map(|s| s.to_string()).collect(),
            relations: vec![],
        }
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relations(&self) -> &[(Vec<u64>, Vec<u64>)] {
        &self.relations
    }

    /// Parse the text format
    /// `generators: a b; relations: a+a = a, a+b = b+a`.
    ///
    /// Terms are `g`, `k g` or `k*g`; an empty side may be written `0`.
    pub fn parse(input: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut relations_src: Option<String> = None;
        for part in input.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            if let Some(rest) = part.strip_prefix("generators:") {
                generators =
                    Some(rest.split_whitespace().map(|s| s.to_string()).collect());
            } else if let Some(rest) = part.strip_prefix("relations:") {
                relations_src = Some(rest.to_string());
            } else {
                return Err(Error::input(format!(
                    "expected 'generators:' or 'relations:' section, got '{part}'"
                )));
            }
        }
        let generator_names =
            generators.ok_or_else(|| Error::input("missing 'generators:' section"))?;
        if generator_names.is_empty() {
            return Err(Error::input("at least one generator required"));
        }
        let index: BTreeMap<&str, usize> = generator_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if index.len() != generator_names.len() {
            return Err(Error::input("duplicate generator name"));
        }
        let mut relations = Vec::new();
        if let Some(src) = relations_src {
            for eq in src.split(',') {
                let eq = eq.trim();
                if eq.is_empty() {
                    continue;
                }
                let (lhs, rhs) = eq
                    .split_once('=')
                    .ok_or_else(|| Error::input(format!("relation '{eq}' lacks '='")))?;
                relations.push((
                    parse_formal_sum(lhs, &index)?,
                    parse_formal_sum(rhs, &index)?,
                ));
            }
        }
        Ok(PresentedMonoid { generator_names, relations })
    }

    /// Parse a formal sum (`a+a+b`, `2a + b`, `0`) over this monoid's
    /// generators.
    pub fn parse_element(&self, s: &str) -> Result<Vec<u64>> {
        let index: BTreeMap<&str, usize> = self
            .generator_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        parse_formal_sum(s, &index)
    }
}

fn parse_formal_sum(s: &str, index: &BTreeMap<&str, usize>) -> Result<Vec<u64>> {
    let mut coeffs = vec![0u64; index.len()];
    let s = s.trim();
    if s == "0" {
        return Ok(coeffs);
    }
    for term in s.split('+') {
        let term = term.replace('*', " ");
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::input("empty term in formal sum"));
        }
        let (count, name) = match term.find(|c: char| !c.is_ascii_digit()) {
            Some(0) => (1u64, term.trim()),
            Some(pos) => {
                let k: u64 = term[..pos]
                    .parse()
                    .map_err(|_| Error::input(format!("bad coefficient in '{term}'")))?;
                (k, term[pos..].trim())
            }
            None => return Err(Error::input(format!("term '{term}' has no generator"))),
        };
        let &i = index
            .get(name)
            .ok_or_else(|| Error::input(format!("unknown generator '{name}'")))?;
        coeffs[i] += count;
    }
    Ok(coeffs)
}

/// The symmetrization S(M) of a monoid, with the canonical map M → S(M).
///
/// `canonical_map[i]` is the image of generator i (presented backend) or of
/// element i (finite backend) in canonical coordinates: torsion coordinates
/// first, aligned with the group's divisor chain, then free coordinates.
pub struct GroupCompletion {
    group: FGAbelianGroup,
    canonical_map: Vec<Vec<BigInt>>,
    projection: CanonicalProjection,
}

impl GroupCompletion {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn canonical_map(&self) -> &[Vec<BigInt>] {
        &self.canonical_map
    }

    /// Image of a formal sum (coefficients over generators/elements).
    pub fn map_formal_sum(&self, coeffs: &[u64]) -> Result<Vec<BigInt>> {
        if coeffs.len() != self.canonical_map.len() {
            return Err(Error::input(format!(
                "element has {} coefficients, monoid has {} generators",
                coeffs.len(),
                self.canonical_map.len()
            )));
        }
        let v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Ok(self.projection.project(&v))
    }

    /// Image of a single generator / element.
    pub fn map_generator(&self, i: usize) -> Result<&[BigInt]> {
        self.canonical_map
            .get(i)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::input(format!("unknown element index {i}")))
    }

    /// Do two formal sums have the same image? (Equality in the completion
    /// is lattice membership of the coordinate difference.)
    pub fn elements_equal(&self, a: &[u64], b: &[u64]) -> Result<bool> {
        Ok(self.map_formal_sum(a)? == self.map_formal_sum(b)?)
    }
}

/// Group completion of a presented monoid: the abelian group with the same
/// presentation, i.e. the cokernel of the relation-difference matrix.
pub fn symmetrize_presented(m: &PresentedMonoid) -> GroupCompletion {
    let g = m.generator_count();
    let r = m.relations.len();
    let mut rel = IntMatrix::zero(g, r);
    for (j, (u, v)) in m.relations.iter().enumerate() {
        for i in 0..g {
            rel[(i, j)] = BigInt::from(u[i]) - BigInt::from(v[i]);
        }
    }
    let (group, projection) = cokernel_with_map(&rel);
    let canonical_map = (0..g)
        .map(|i| {
            let mut e = vec![BigInt::zero(); g];
            e[i] = BigInt::from(1);
            projection.project(&e)
        })
        .collect();
    GroupCompletion { group, canonical_map, projection }
}

/// Group completion of a finite monoid by exhaustive witness search.
///
/// Follows the definition directly: classes of pairs (a, b) under
/// (a, b) ~ (c, d) ⇔ ∃e, a + d + e = b + c + e. The search first collapses
/// M by the congruence u ≈ v ⇔ ∃e, u + e = v + e (which the pair relation
/// factors through), then classifies pairs, checks the class set is a group,
/// and returns its canonical form.
pub fn symmetrize_finite(m: &FiniteMonoid) -> Result<GroupCompletion> {
    let n = m.size;

    // congruence u ≈ v ⇔ ∃e: u+e = v+e
    let mut collapse: Vec<usize> = (0..n).collect();
    for u in 0..n {
        for v in 0..u {
            if collapse[v] != v {
                continue;
            }
            let related = (0..n).any(|e| m.add(u, e) == m.add(v, e));
            if related {
                collapse[u] = v;
                break;
            }
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&i| collapse[i] == i).collect();
    let rep_index: BTreeMap<usize, usize> =
        reps.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let to_class = |x: usize| rep_index[&collapse[x]];
    let nn = reps.len();
    // addition on the collapsed monoid
    let add_c = |a: usize, b: usize| to_class(m.add(reps[a], reps[b]));

    // classify pairs (a, b) of collapsed elements:
    // (a, b) ~ (c, d) ⇔ a + d ≈ b + c, i.e. equal in the collapsed monoid
    let mut pair_class = vec![vec![usize::MAX; nn]; nn];
    let mut class_reps: Vec<(usize, usize)> = Vec::new();
    for a in 0..nn {
        for b in 0..nn {
            let mut found = None;
            for (ci, &(c, d)) in class_reps.iter().enumerate() {
                if add_c(a, d) == add_c(b, c) {
                    found = Some(ci);
                    break;
                }
            }
            pair_class[a][b] = match found {
                Some(ci) => ci,
                None => {
                    class_reps.push((a, b));
                    class_reps.len() - 1
                }
            };
        }
    }
    let classes = class_reps.len();

    // group structure on classes: (a,b) + (c,d) = (a+c, b+d)
    let class_add = |x: usize, y: usize| {
        let (a, b) = class_reps[x];
        let (c, d) = class_reps[y];
        pair_class[add_c(a, c)][add_c(b, d)]
    };
    let zero_class = pair_class[to_class(m.zero)][to_class(m.zero)];

    // verify the class set forms a group
    for x in 0..classes {
        if class_add(x, zero_class) != x {
            return Err(Error::Verification(format!(
                "class {x} not fixed by the zero class"
            )));
        }
        let (a, b) = class_reps[x];
        let inv = pair_class[b][a];
        if class_add(x, inv) != zero_class {
            return Err(Error::Verification(format!("class {x} has no inverse")));
        }
    }
    for x in 0..classes {
        for y in 0..classes {
            if class_add(x, y) != class_add(y, x) {
                return Err(Error::Verification("class addition not commutative".into()));
            }
            for z in 0..classes {
                if class_add(class_add(x, y), z) != class_add(x, class_add(y, z)) {
                    return Err(Error::Verification(
                        "class addition not associative".into(),
                    ));
                }
            }
        }
    }

    // canonical form via the presentation with one generator per class
    let mut relations = Vec::new();
    for i in 0..classes {
        for j in i..classes {
            let mut left = vec![0u64; classes];
            left[i] += 1;
            left[j] += 1;
            let mut right = vec![0u64; classes];
            right[class_add(i, j)] += 1;
            relations.push((left, right));
        }
    }
    let presented = PresentedMonoid {
        generator_names: (0..classes).map(|i| format!("c{i}")).collect(),
        relations,
    };
    let completion = symmetrize_presented(&presented);

    // canonical map: element x ↦ class of (x, 0)
    let canonical_map: Vec<Vec<BigInt>> = (0..n)
        .map(|x| {
            let cls = pair_class[to_class(x)][to_class(m.zero)];
            completion.canonical_map[cls].clone()
        })
        .collect();
    Ok(GroupCompletion {
        group: completion.group,
        canonical_map,
        projection: completion.projection,
    })
}

/// A monoid homomorphism between presented monoids, given by the images of
/// the source generators as formal sums over the target generators.
pub struct InducedMap {
    /// For each source generator, its image in the target completion's
    /// canonical coordinates.
    pub generator_images: Vec<Vec<BigInt>>,
}

/// The group map S(A) → S(B) induced by a monoid homomorphism A → B.
///
/// Validates that every relation of `a` is respected in `b`'s completion
/// before returning the coordinate images.
pub fn induced_map(
    a: &PresentedMonoid,
    b: &PresentedMonoid,
    b_completion: &GroupCompletion,
    assignment: &[Vec<u64>],
) -> Result<InducedMap> {
    let ga = a.generator_count();
    let gb = b.generator_count();
    if assignment.len() != ga {
        return Err(Error::input(format!(
            "assignment has {} images, source has {ga} generators",
            assignment.len()
        )));
    }
    for img in assignment {
        if img.len() != gb {
            return Err(Error::input(
                "assignment image has wrong number of coefficients".to_string(),
            ));
        }
    }
    let push = |sum: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; gb];
        for (i, &c) in sum.iter().enumerate() {
            for (j, &x) in assignment[i].iter().enumerate() {
                out[j] += c * x;
            }
        }
        out
    };
    for (u, v) in a.relations() {
        if !b_completion.elements_equal(&push(u), &push(v))? {
            return Err(Error::Verification(
                "assignment does not respect a source relation".to_string(),
            ));
        }
    }
    let generator_images = assignment
        .iter()
        .map(|img| b_completion.map_formal_sum(img))
        .collect::<Result<Vec<_>>>()?;
    Ok(InducedMap { generator_images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group_of(m: &FiniteMonoid) -> FGAbelianGroup {
        symmetrize_finite(m).unwrap().group().clone()
    }

    #[test]
    fn naturals_complete_to_z() {
        let n = PresentedMonoid::free(&["a"]);
        let s = symmetrize_presented(&n);
        assert_eq!(*s.group(), FGAbelianGroup::free(1));
        assert_eq!(s.canonical_map()[0], vec![BigInt::from(1)]);
        // N ∋ 5 ↦ 5 ∈ Z
        assert_eq!(s.map_formal_sum(&[5]).unwrap(), vec![BigInt::from(5)]);
    }

    #[test]
    fn free_on_two_generators() {
        let m = PresentedMonoid::free(&["a", "b"]);
        assert_eq!(*symmetrize_presented(&m).group(), FGAbelianGroup::free(2));
    }

    #[test]
    fn idempotent_generator_kills_group() {
        // a + a = a forces a = 0 in the completion
        let m = PresentedMonoid::parse("generators: a; relations: a+a = a").unwrap();
        let s = symmetrize_presented(&m);
        assert!(s.group().is_trivial());
        assert!(s.map_formal_sum(&[1]).unwrap().is_empty());
    }

    #[test]
    fn two_element_idempotent_monoid() {
        // {0, ∞} with ∞ + ∞ = ∞: completion is trivial, the canonical map
        // is not injective
        let m = FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        let s = symmetrize_finite(&m).unwrap();
        assert!(s.group().is_trivial());
        assert_eq!(s.map_generator(0).unwrap(), s.map_generator(1).unwrap());
    }

    #[test]
    fn cyclic_group_completes_to_itself() {
        for n in 1..=9 {
            let m = FiniteMonoid::cyclic(n);
            assert_eq!(group_of(&m), FGAbelianGroup::cyclic(n as i64));
        }
    }

    #[test]
    fn finite_monoid_validation() {
        // not associative: 1+1 = 1 but 1 is not neutral... build a bad table
        assert!(FiniteMonoid::new(vec![vec![0, 1], vec![1, 0]], 1).is_err());
        // non-commutative table
        assert!(FiniteMonoid::new(
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
            0
        )
        .is_err());
        // oversized
        let n = FINITE_SIZE_GUARD + 1;
        let table = (0..n).map(|_| vec![0; n]).collect();
        assert!(FiniteMonoid::new(table, 0).is_err());
    }

    #[test]
    fn backends_agree_on_tables() {
        let mut corpus: Vec<FiniteMonoid> = vec![];
        for n in 1..=12 {
            corpus.push(FiniteMonoid::cyclic(n));
        }
        for cap in 0..=11 {
            corpus.push(FiniteMonoid::saturating(cap));
        }
        corpus.push(FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(3)).unwrap());
        corpus.push(FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(2)).unwrap());
        corpus.push(FiniteMonoid::saturating(1).product(&FiniteMonoid::cyclic(3)).unwrap());
        corpus.push(FiniteMonoid::saturating(2).product(&FiniteMonoid::saturating(1)).unwrap());

        for m in &corpus {
            assert!(m.size() <= 12);
            let fin = symmetrize_finite(m).unwrap();
            let pres = symmetrize_presented(&m.to_presented());
            assert_eq!(fin.group(), pres.group(), "size {}", m.size());
            // compatible canonical maps: the two maps separate exactly the
            // same pairs of elements, and both are additive
            for x in 0..m.size() {
                for y in 0..m.size() {
                    let same_fin = fin.map_generator(x).unwrap() == fin.map_generator(y).unwrap();
                    let mut ex = vec![0u64; m.size()];
                    ex[x] += 1;
                    let mut ey = vec![0u64; m.size()];
                    ey[y] += 1;
                    let same_pres = pres.elements_equal(&ex, &ey).unwrap();
                    assert_eq!(same_fin, same_pres, "x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn map_is_additive_on_finite_monoids() {
        for m in [
            FiniteMonoid::cyclic(6),
            FiniteMonoid::saturating(3),
            FiniteMonoid::cyclic(2).product(&FiniteMonoid::cyclic(2)).unwrap(),
        ] {
            let s = symmetrize_finite(&m).unwrap();
            let proj = &s.projection;
            for x in 0..m.size() {
                for y in 0..m.size() {
                    let sum = s.map_generator(m.add(x, y)).unwrap().to_vec();
                    let parts: Vec<BigInt> = s
                        .map_generator(x)
                        .unwrap()
                        .iter()
                        .zip(s.map_generator(y).unwrap())
                        .map(|(a, b)| a + b)
                        .collect();
                    assert_eq!(sum, proj.reduce_coords(&parts));
                }
            }
        }
    }

    #[test]
    fn presented_map_additive() {
        let m = PresentedMonoid::parse("generators: a b; relations: 2a = 3b").unwrap();
        let s = symmetrize_presented(&m);
        let img_a = s.map_formal_sum(&[1, 0]).unwrap();
        let img_b = s.map_formal_sum(&[0, 1]).unwrap();
        let img_sum = s.map_formal_sum(&[1, 1]).unwrap();
        let combined: Vec<BigInt> =
            img_a.iter().zip(&img_b).map(|(x, y)| x + y).collect();
        assert_eq!(img_sum, s.projection.reduce_coords(&combined));
    }

    #[test]
    fn functoriality_on_samples() {
        // quotient N → Z/3 (as monoid hom N → cyclic table) modeled on
        // presentations: a ↦ g1 where g is the generator of Z/3
        let n = PresentedMonoid::free(&["a"]);
        let z3_table = FiniteMonoid::cyclic(3);
        let z3 = z3_table.to_presented();
        let z3c = symmetrize_presented(&z3);
        // a ↦ g1 (element index 1)
        let mut img = vec![0u64; 3];
        img[1] = 1;
        let hom = induced_map(&n, &z3, &z3c, &[img.clone()]).unwrap();
        // commutes on generators: image of a under (complete ∘ hom) equals
        // (induced ∘ complete)
        let lhs = z3c.map_formal_sum(&img).unwrap();
        assert_eq!(hom.generator_images[0], lhs);
        // 3a must die in Z/3
        let three_a = z3c.map_formal_sum(&[0, 3, 0]).unwrap();
        assert!(three_a.iter().all(|c| c.is_zero()));
        // a bad assignment violating relations is rejected
        let m2 = PresentedMonoid::parse("generators: a; relations: a+a = a").unwrap();
        let bad = induced_map(&m2, &z3, &z3c, &[img]);
        assert!(bad.is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(PresentedMonoid::parse("relations: a = a").is_err());
        assert!(PresentedMonoid::parse("generators: a; relations: a + b = a").is_err());
        assert!(PresentedMonoid::parse("generators: a a").is_err());
        let m = PresentedMonoid::free(&["x"]);
        assert!(m.parse_element("y").is_err());
        assert!(m.parse_element("2x + 1").is_err());
        assert_eq!(m.parse_element("3x").unwrap(), vec![3]);
        assert_eq!(m.parse_element("x + x").unwrap(), vec![2]);
        assert_eq!(m.parse_element("0").unwrap(), vec![0]);
    }
}
