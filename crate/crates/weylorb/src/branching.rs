//! Orbit branching rules: project every point of a source orbit, regroup the
//! images into target orbits with exact integer multiplicities, verify the
//! result by multiset identities, and the signed decomposition used when
//! projections are run backwards.

use std::fmt;

use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::orbits::{
    self, coords_to_string, generate_orbit, orbit_size, AlgebraTables, Strategy, Weight,
};
use crate::projections::ProjectionMatrix;
use crate::Rational;

/// A source orbit decomposed into target orbits: the dominant weights that
/// appear and their positive integer multiplicities, in descending
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingRule {
    source_seed: Weight,
    projection: ProjectionMatrix,
    terms: Vec<(Weight, u64)>,
}

impl BranchingRule {
    /// Assemble a rule from parts; used when reading structured output back.
    /// The terms must be dominant weights of the projection's target.
    pub fn new(
        source_seed: Weight,
        projection: ProjectionMatrix,
        mut terms: Vec<(Weight, u64)>,
    ) -> Result<Self> {
        if source_seed.algebra() != projection.source() {
            return Err(Error::AlgebraMismatch {
                expected: projection.source().to_string(),
                got: source_seed.algebra().to_string(),
            });
        }
        for (w, mult) in &terms {
            if w.algebra() != projection.target() {
                return Err(Error::AlgebraMismatch {
                    expected: projection.target().to_string(),
                    got: w.algebra().to_string(),
                });
            }
            if !w.is_dominant() || *mult == 0 {
                return Err(Error::NonDominant(w.to_string()));
            }
        }
        terms.sort_unstable_by(|a, b| b.0.coords().cmp(a.0.coords()));
        Ok(Self {
            source_seed,
            projection,
            terms,
        })
    }

    pub fn source_seed(&self) -> &Weight {
        &self.source_seed
    }

    pub fn projection(&self) -> &ProjectionMatrix {
        &self.projection
    }

    pub fn terms(&self) -> &[(Weight, u64)] {
        &self.terms
    }

    pub fn to_record(&self) -> BranchRecord {
        BranchRecord {
            source: self.projection.source().to_string(),
            target: self.projection.target().to_string(),
            seed: self.source_seed.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(w, m)| TermRecord {
                    weight: w.to_string(),
                    multiplicity: *m,
                })
                .collect(),
        }
    }

    /// Rebuild a rule from its structured record, given the projection it was
    /// computed with.
    pub fn from_record(record: &BranchRecord, projection: ProjectionMatrix) -> Result<Self> {
        let seed = orbits::parse_weight(projection.source(), &record.seed)?;
        let terms = record
            .terms
            .iter()
            .map(|t| {
                Ok((
                    orbits::parse_weight(projection.target(), &t.weight)?,
                    t.multiplicity,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(seed, projection, terms)
    }
}

impl fmt::Display for BranchingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, mult)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *mult > 1 {
                write!(f, "{mult}")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Line-oriented structured form of a branching rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRecord {
    pub source: String,
    pub target: String,
    pub seed: String,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub weight: String,
    pub multiplicity: u64,
}

/// Compute the branching rule of a dominant source orbit under a projection:
/// generate the orbit, project every point, map each image to its dominant
/// representative, and divide the per-dominant counts by the target orbit
/// sizes. A division that does not come out exact means the matrix is not a
/// valid projection for this pair and is reported as an error.
pub fn branch(seed: &Weight, p: &ProjectionMatrix) -> Result<BranchingRule> {
    let expected = orbit_size(seed)?;
    branch_with_strategy(seed, p, auto_strategy(expected))
}

#[doc(hidden)]
pub fn branch_with_strategy(
    seed: &Weight,
    p: &ProjectionMatrix,
    strategy: Strategy,
) -> Result<BranchingRule> {
    if seed.algebra() != p.source() {
        return Err(Error::AlgebraMismatch {
            expected: p.source().to_string(),
            got: seed.algebra().to_string(),
        });
    }
    let orbit = orbits::int_orbit(seed, None, strategy, false)?;
    let (m_scale, rows) = int_sparse_rows(p.matrix())?;
    let denom = orbit
        .scale
        .checked_mul(m_scale)
        .ok_or(Error::Overflow("projection scale"))?;

    let target = p.target().clone();
    let tables = AlgebraTables::new(&target);
    let counts = regroup(&orbit.points, &rows, &tables, strategy);

    let mut terms = Vec::with_capacity(counts.len());
    for (ints, count) in counts {
        let weight = Weight::new(target.clone(), orbits::from_scaled_ints(&ints, denom))?;
        let size = orbit_size(&weight)?;
        if u128::from(count) % size != 0 {
            return Err(Error::InexactMultiplicity {
                weight: weight.to_string(),
                count,
                orbit_size: size,
            });
        }
        let mult = (u128::from(count) / size) as u64;
        terms.push((weight, mult));
    }
    terms.sort_unstable_by(|a, b| b.0.coords().cmp(a.0.coords()));
    Ok(BranchingRule {
        source_seed: seed.clone(),
        projection: p.clone(),
        terms,
    })
}

fn auto_strategy(expected_points: u128) -> Strategy {
    if cfg!(feature = "parallel") && expected_points >= 20_000 {
        Strategy::Parallel
    } else {
        Strategy::Sequential
    }
}

/// Nonzero entries of each matrix row over a common denominator, so the hot
/// loops can project with integer arithmetic.
fn int_sparse_rows(matrix: &RatMatrix) -> Result<(i64, Vec<Vec<(usize, i64)>>)> {
    let scale = matrix
        .iter_rows()
        .flatten()
        .try_fold(1i64, |acc, c| orbits::lcm(acc, *c.denom()))?;
    let rows = matrix
        .iter_rows()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| {
                    (scale / v.denom())
                        .checked_mul(*v.numer())
                        .map(|scaled| (j, scaled))
                        .ok_or(Error::Overflow("matrix scale"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((scale, rows))
}

fn project_int(pt: &[i64], rows: &[Vec<(usize, i64)>]) -> Vec<i64> {
    rows.iter()
        .map(|row| row.iter().map(|&(j, v)| v * pt[j]).sum())
        .collect()
}

/// Project every point and count occurrences of each dominant representative.
fn regroup(
    points: &[Vec<i64>],
    rows: &[Vec<(usize, i64)>],
    target_tables: &AlgebraTables,
    strategy: Strategy,
) -> FxHashMap<Vec<i64>, u64> {
    let project_one = |pt: &Vec<i64>| -> Vec<i64> {
        let mut image = project_int(pt, rows);
        target_tables.dominize_int(&mut image);
        image
    };

    #[cfg(feature = "parallel")]
    if strategy == Strategy::Parallel && points.len() >= 4096 {
        return points
            .par_iter()
            .fold(FxHashMap::default, |mut map, pt| {
                *map.entry(project_one(pt)).or_insert(0u64) += 1;
                map
            })
            .reduce(FxHashMap::default, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            });
    }
    let _ = strategy;

    let mut map = FxHashMap::default();
    for pt in points {
        *map.entry(project_one(pt)).or_insert(0u64) += 1;
    }
    map
}

/// Outcome of independently re-checking a branching rule.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Sum of multiplicity times target orbit size equals the source orbit
    /// size.
    pub cardinality_ok: bool,
    /// The union of the regenerated target orbits, with multiplicities,
    /// equals the projected source orbit as a multiset.
    pub multiset_ok: bool,
    pub source_points: u128,
    pub expected_points: u128,
    /// A point whose counts differ, if any.
    pub first_mismatch: Option<String>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.cardinality_ok && self.multiset_ok
    }

    pub fn summary(&self) -> String {
        if self.pass() {
            return "ok".to_string();
        }
        let mut parts = Vec::new();
        if !self.cardinality_ok {
            parts.push(format!(
                "cardinality mismatch: {} orbit points vs {} from terms",
                self.source_points, self.expected_points
            ));
        }
        if !self.multiset_ok {
            match &self.first_mismatch {
                Some(p) => parts.push(format!("multiset mismatch at {p}")),
                None => parts.push("multiset mismatch".to_string()),
            }
        }
        parts.join("; ")
    }
}

/// Regenerate each target orbit of a rule, form their disjoint union with
/// multiplicities, and compare it exactly with the projected source orbit.
pub fn verify_branch(rule: &BranchingRule) -> VerifyReport {
    verify_branch_inner(rule).unwrap_or_else(|e| VerifyReport {
        cardinality_ok: false,
        multiset_ok: false,
        source_points: 0,
        expected_points: 0,
        first_mismatch: Some(e.to_string()),
    })
}

fn verify_branch_inner(rule: &BranchingRule) -> Result<VerifyReport> {
    let source_points = orbit_size(rule.source_seed())?;
    let mut expected_points = 0u128;
    for (w, mult) in rule.terms() {
        expected_points = expected_points
            .checked_add(u128::from(*mult) * orbit_size(w)?)
            .ok_or(Error::Overflow("expected point count"))?;
    }
    let cardinality_ok = expected_points == source_points;

    // A common denominator for both sides of the multiset comparison.
    let orbit = orbits::int_orbit(rule.source_seed(), None, auto_strategy(source_points), false)?;
    let (m_scale, rows) = int_sparse_rows(rule.projection().matrix())?;
    let mut denom = orbit
        .scale
        .checked_mul(m_scale)
        .ok_or(Error::Overflow("projection scale"))?;
    for (w, _) in rule.terms() {
        denom = orbits::lcm(denom, orbits::common_scale(w.coords())?)?;
    }
    let boost = denom / (orbit.scale * m_scale);

    // Actual multiset: the projected source orbit, pointwise.
    let mut diff: FxHashMap<Vec<i64>, i64> = FxHashMap::default();
    for pt in &orbit.points {
        let mut image = project_int(pt, &rows);
        for v in &mut image {
            *v *= boost;
        }
        *diff.entry(image).or_insert(0) += 1;
    }
    // Expected multiset: the regenerated target orbits, `mult` copies each.
    for (w, mult) in rule.terms() {
        let target_orbit = orbits::int_orbit(w, Some(denom), auto_strategy(orbit_size(w)?), false)?;
        for pt in target_orbit.points {
            *diff.entry(pt).or_insert(0) -= *mult as i64;
        }
    }
    let first_mismatch = diff
        .iter()
        .filter(|(_, &d)| d != 0)
        .map(|(pt, _)| {
            coords_to_string(
                rule.projection().target(),
                &orbits::from_scaled_ints(pt, denom),
            )
        })
        .min();
    Ok(VerifyReport {
        cardinality_ok,
        multiset_ok: first_mismatch.is_none(),
        source_points,
        expected_points,
        first_mismatch,
    })
}

/// Push a whole orbit of the inverted projection's source through the inverse
/// matrix. The image is an exact multiset of weights of the original source
/// algebra, in descending order; it is generally not a union of orbits.
pub fn pullback_points(p_inv: &ProjectionMatrix, seed: &Weight) -> Result<Vec<Weight>> {
    if p_inv.provenance() != crate::projections::Provenance::Inverted {
        return Err(Error::NotInverted(p_inv.provenance().to_string()));
    }
    if seed.algebra() != p_inv.source() {
        return Err(Error::AlgebraMismatch {
            expected: p_inv.source().to_string(),
            got: seed.algebra().to_string(),
        });
    }
    let orbit = generate_orbit(seed)?;
    let mut images: Vec<Vec<Rational>> = orbit
        .points()
        .iter()
        .map(|pt| p_inv.project_coords(pt))
        .collect();
    images.sort_unstable_by(|a, b| b.cmp(a));
    images
        .into_iter()
        .map(|coords| Weight::new(p_inv.target().clone(), coords))
        .collect()
}

/// An integer linear combination of orbits, by dominant weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedOrbitSum {
    terms: Vec<(Weight, i64)>,
}

impl SignedOrbitSum {
    pub fn terms(&self) -> &[(Weight, i64)] {
        &self.terms
    }
}

impl fmt::Display for SignedOrbitSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag > 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Decompose a signed multiset of weights into an integer combination of
/// whole orbits by greedily peeling maximal points under the dominance order.
///
/// Each round takes a maximal remaining point; for any integer combination of
/// orbit point sets that point is the dominant weight of its orbit, so a
/// non-dominant maximal point proves the input is not such a combination and
/// is reported with the offending point.
pub fn signed_orbit_decomposition(points: &[(Weight, i64)]) -> Result<SignedOrbitSum> {
    let Some(first) = points.first() else {
        return Ok(SignedOrbitSum { terms: Vec::new() });
    };
    let algebra = first.0.algebra().clone();
    let mut residue: FxHashMap<Vec<Rational>, i64> = FxHashMap::default();
    for (w, c) in points {
        if w.algebra() != &algebra {
            return Err(Error::AlgebraMismatch {
                expected: algebra.to_string(),
                got: w.algebra().to_string(),
            });
        }
        let entry = residue.entry(w.coords().to_vec()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            residue.remove(w.coords());
        }
    }

    let dominance = DominanceOrder::new(&algebra);
    let mut terms: Vec<(Weight, i64)> = Vec::new();
    while !residue.is_empty() {
        // Lexicographically greatest among the maximal elements, for
        // determinism.
        let mut pick: Option<&Vec<Rational>> = None;
        for cand in residue.keys() {
            let dominated = residue
                .keys()
                .any(|other| other != cand && dominance.ge(other, cand));
            if dominated {
                continue;
            }
            pick = Some(match pick {
                Some(best) if best > cand => best,
                _ => cand,
            });
        }
        let maximal = pick.expect("nonempty residue has a maximal point").clone();
        let weight = Weight::new(algebra.clone(), maximal.clone())?;
        if !weight.is_dominant() {
            return Err(Error::NonDominantResidue {
                point: weight.to_string(),
            });
        }
        let coeff = residue[&maximal];
        for pt in generate_orbit(&weight)?.points() {
            let entry = residue.entry(pt.clone()).or_insert(0);
            *entry -= coeff;
            if *entry == 0 {
                residue.remove(pt);
            }
        }
        terms.push((weight, coeff));
    }
    terms.sort_unstable_by(|a, b| b.0.coords().cmp(a.0.coords()));
    Ok(SignedOrbitSum { terms })
}

/// The dominance partial order: `a >= b` iff `a - b` is a nonnegative
/// rational combination of the simple roots (per component), with equal U1
/// coordinates.
struct DominanceOrder {
    /// Inverse Cartan matrix and coordinate offset per component.
    comps: Vec<(usize, RatMatrix)>,
    simple_dim: usize,
    total_dim: usize,
}

impl DominanceOrder {
    fn new(algebra: &crate::algebra::ReductiveAlgebra) -> Self {
        let mut comps = Vec::new();
        let mut offset = 0;
        for c in algebra.components() {
            let inv = crate::algebra::cartan_matrix(c)
                .to_rat_matrix()
                .inverse()
                .expect("Cartan matrices are invertible");
            comps.push((offset, inv));
            offset += c.rank();
        }
        Self {
            comps,
            simple_dim: offset,
            total_dim: algebra.total_dim(),
        }
    }

    fn ge(&self, a: &[Rational], b: &[Rational]) -> bool {
        for i in self.simple_dim..self.total_dim {
            if a[i] != b[i] {
                return false;
            }
        }
        for (offset, inv) in &self.comps {
            let rank = inv.rows();
            // Root-basis coefficients of the difference: c = d * C^{-1}.
            for j in 0..rank {
                let mut coeff = Rational::zero();
                for i in 0..rank {
                    let d = a[offset + i] - b[offset + i];
                    if !d.is_zero() {
                        coeff += d * inv[(i, j)];
                    }
                }
                if coeff.is_negative() {
                    return false;
                }
            }
        }
        true
    }
}
