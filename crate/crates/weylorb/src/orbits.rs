//! Weyl group orbits: reflections, dominance reduction, orbit generation by
//! breadth-first closure, and orbit sizes via parabolic stabilizers.

use std::fmt;

use num_traits::{Signed, Zero};
use rustc_hash::FxHashSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algebra::{parabolic_order, ReductiveAlgebra};
use crate::error::{Error, Result};
use crate::{algebra, Rational};

/// A weight in the fundamental-weight basis, laid out component by component
/// with U1 coordinates last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    algebra: ReductiveAlgebra,
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(algebra: ReductiveAlgebra, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != algebra.total_dim() {
            return Err(Error::CoordCount {
                algebra: algebra.to_string(),
                expected: algebra.total_dim(),
                got: coords.len(),
            });
        }
        Ok(Self { algebra, coords })
    }

    pub fn from_integers(algebra: ReductiveAlgebra, coords: &[i64]) -> Result<Self> {
        Self::new(
            algebra,
            coords.iter().map(|&c| Rational::from_integer(c)).collect(),
        )
    }

    pub fn zero(algebra: ReductiveAlgebra) -> Self {
        let coords = vec![Rational::zero(); algebra.total_dim()];
        Self { algebra, coords }
    }

    pub fn algebra(&self) -> &ReductiveAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Dominant means every simple-component coordinate is >= 0; U1
    /// coordinates are unrestricted.
    pub fn is_dominant(&self) -> bool {
        self.coords[..self.algebra.simple_dim()]
            .iter()
            .all(|c| !c.is_negative())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_coords(&self.algebra, &self.coords, f)
    }
}

pub(crate) fn format_coords(
    algebra: &ReductiveAlgebra,
    coords: &[Rational],
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let mut pos = 0;
    for c in algebra.components() {
        let group = &coords[pos..pos + c.rank()];
        let parts: Vec<String> = group.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))?;
        pos += c.rank();
    }
    for v in &coords[pos..] {
        write!(f, "({v})")?;
    }
    Ok(())
}

pub(crate) fn coords_to_string(algebra: &ReductiveAlgebra, coords: &[Rational]) -> String {
    struct D<'a>(&'a ReductiveAlgebra, &'a [Rational]);
    impl fmt::Display for D<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            format_coords(self.0, self.1, f)
        }
    }
    D(algebra, coords).to_string()
}

/// Parse a weight string: one parenthesized, comma-separated rational group
/// per simple component, then one single-entry group per U1 coordinate, e.g.
/// `(2,0,1)` or `(1)(1)(-3)`. Rationals are `a/b` or integers.
pub fn parse_weight(algebra: &ReductiveAlgebra, text: &str) -> Result<Weight> {
    let err = |reason: &str| Error::ParseWeight {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let mut groups: Vec<Vec<Rational>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(err("expected '('"));
        }
        let close = rest.find(')').ok_or_else(|| err("missing ')'"))?;
        let inner = &rest[1..close];
        let entries = inner
            .split(',')
            .map(|s| s.trim().parse::<Rational>().map_err(|e| err(&e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        groups.push(entries);
        rest = rest[close + 1..].trim_start();
    }
    let expected_groups = algebra.components().len() + algebra.u1_count();
    if groups.len() != expected_groups {
        return Err(err(&format!(
            "expected {} coordinate groups for {}, got {}",
            expected_groups,
            algebra,
            groups.len()
        )));
    }
    let mut coords = Vec::with_capacity(algebra.total_dim());
    for (i, c) in algebra.components().iter().enumerate() {
        if groups[i].len() != c.rank() {
            return Err(err(&format!(
                "group {} has {} entries, component {} needs {}",
                i + 1,
                groups[i].len(),
                c,
                c.rank()
            )));
        }
        coords.extend_from_slice(&groups[i]);
    }
    for g in &groups[algebra.components().len()..] {
        if g.len() != 1 {
            return Err(err("U1 groups hold exactly one entry"));
        }
        coords.push(g[0]);
    }
    Weight::new(algebra.clone(), coords)
}

/// A dominant seed together with the full point set of its Weyl group orbit,
/// in descending lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    seed: Weight,
    points: Vec<Vec<Rational>>,
}

impl Orbit {
    pub fn seed(&self) -> &Weight {
        &self.seed
    }

    /// Point coordinate vectors, canonically ordered.
    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter_weights(&self) -> impl Iterator<Item = Weight> + '_ {
        self.points.iter().map(|p| Weight {
            algebra: self.seed.algebra.clone(),
            coords: p.clone(),
        })
    }
}

/// Per-component reflection tables derived from the Cartan matrices.
pub(crate) struct AlgebraTables {
    pub comps: Vec<CompTable>,
    pub simple_dim: usize,
}

pub(crate) struct CompTable {
    pub offset: usize,
    pub rank: usize,
    /// Nonzero Cartan entries per row, local column indices.
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl AlgebraTables {
    pub fn new(a: &ReductiveAlgebra) -> Self {
        let mut comps = Vec::with_capacity(a.components().len());
        let mut offset = 0;
        for &c in a.components() {
            comps.push(CompTable {
                offset,
                rank: c.rank(),
                rows: algebra::cartan_matrix(&c).sparse_rows(),
            });
            offset += c.rank();
        }
        Self {
            comps,
            simple_dim: offset,
        }
    }

    /// Reflect `coords` at a node (local index) of one component, in place.
    pub fn reflect(&self, coords: &mut [Rational], comp: usize, node: usize) {
        let t = &self.comps[comp];
        let c = coords[t.offset + node];
        if c.is_zero() {
            return;
        }
        for &(j, v) in &t.rows[node] {
            coords[t.offset + j] -= c * Rational::from_integer(v);
        }
    }

    /// Reduce to the dominant representative: repeatedly reflect at the
    /// lowest-indexed negative coordinate until none is left.
    pub fn dominize(&self, coords: &mut [Rational]) {
        'outer: loop {
            for t in &self.comps {
                for node in 0..t.rank {
                    if coords[t.offset + node].is_negative() {
                        let c = coords[t.offset + node];
                        for &(j, v) in &t.rows[node] {
                            coords[t.offset + j] -= c * Rational::from_integer(v);
                        }
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }

    /// Same reduction over scaled integer coordinates.
    pub fn dominize_int(&self, coords: &mut [i64]) {
        'outer: loop {
            for t in &self.comps {
                for node in 0..t.rank {
                    if coords[t.offset + node] < 0 {
                        let c = coords[t.offset + node];
                        for &(j, v) in &t.rows[node] {
                            coords[t.offset + j] -= c * v;
                        }
                        continue 'outer;
                    }
                }
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Scaled-integer engine.
//
// Rational coordinates with a fixed seed are a lattice in disguise:
// reflections subtract integer multiples of coordinates, so every point of an
// orbit shares the denominators of its seed. Clearing them once lets the
// closure, projection and regrouping loops run on plain (overflow-checked)
// i64, an order of magnitude faster than reduced fractions. `scale` is the
// common denominator: true coordinates are `ints / scale`.
// ---------------------------------------------------------------------------

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

pub(crate) fn lcm(a: i64, b: i64) -> Result<i64> {
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("denominator lcm"))
}

/// Least common denominator of a coordinate vector.
pub(crate) fn common_scale(coords: &[Rational]) -> Result<i64> {
    coords.iter().try_fold(1i64, |acc, c| lcm(acc, *c.denom()))
}

/// Coordinates times `scale`, exactly; every denominator must divide `scale`.
pub(crate) fn to_scaled_ints(coords: &[Rational], scale: i64) -> Result<Vec<i64>> {
    coords
        .iter()
        .map(|c| {
            if scale % c.denom() != 0 {
                return Err(Error::Overflow("coordinate scale"));
            }
            (scale / c.denom())
                .checked_mul(*c.numer())
                .ok_or(Error::Overflow("coordinate scale"))
        })
        .collect()
}

pub(crate) fn from_scaled_ints(ints: &[i64], scale: i64) -> Vec<Rational> {
    ints.iter().map(|&v| Rational::new(v, scale)).collect()
}

/// An orbit's points over a common denominator.
pub(crate) struct IntOrbit {
    pub scale: i64,
    pub points: Vec<Vec<i64>>,
}

/// Generate an orbit on scaled integer coordinates. If `scale` is given, the
/// points use exactly that denominator (it must be divisible by every seed
/// denominator); otherwise the least common denominator of the seed is used.
/// With `canonical` the points come out in descending order; counting paths
/// skip the sort.
pub(crate) fn int_orbit(
    seed: &Weight,
    scale: Option<i64>,
    strategy: Strategy,
    canonical: bool,
) -> Result<IntOrbit> {
    if !seed.is_dominant() {
        return Err(Error::NonDominant(seed.to_string()));
    }
    let scale = match scale {
        Some(s) => s,
        None => common_scale(seed.coords())?,
    };
    let ints = to_scaled_ints(seed.coords(), scale)?;
    let tables = AlgebraTables::new(seed.algebra());

    let mut component_orbits: Vec<Vec<Vec<i64>>> = Vec::with_capacity(tables.comps.len());
    for t in &tables.comps {
        let local = ints[t.offset..t.offset + t.rank].to_vec();
        component_orbits.push(component_closure(local, t, strategy));
    }

    let u1 = &ints[tables.simple_dim..];
    let mut points = if component_orbits.len() == 1 && u1.is_empty() {
        component_orbits.pop().unwrap()
    } else {
        cartesian_product(&component_orbits, u1, ints.len())
    };
    if canonical {
        sort_points(&mut points, strategy);
    }
    debug_assert_eq!(points.len() as u128, orbit_size(seed).unwrap());
    Ok(IntOrbit { scale, points })
}

fn cartesian_product(
    component_orbits: &[Vec<Vec<i64>>],
    u1: &[i64],
    dim: usize,
) -> Vec<Vec<i64>> {
    let total: usize = component_orbits.iter().map(|o| o.len()).product();
    let mut points = Vec::with_capacity(total.max(1));
    let mut index = vec![0usize; component_orbits.len()];
    loop {
        let mut coords = Vec::with_capacity(dim);
        for (o, &i) in component_orbits.iter().zip(&index) {
            coords.extend_from_slice(&o[i]);
        }
        coords.extend_from_slice(u1);
        points.push(coords);
        // Advance the multi-index; done when it wraps around.
        let mut k = component_orbits.len();
        loop {
            if k == 0 {
                return points;
            }
            k -= 1;
            index[k] += 1;
            if index[k] < component_orbits[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

/// Reflect a weight at one node of a simple component. `component_index` is
/// 0-based over the algebra's simple components (indices past them address
/// U1 factors, which have no reflections); `node` is the 1-based Dynkin node.
pub fn apply_reflection(w: &Weight, component_index: usize, node: usize) -> Result<Weight> {
    let comps = w.algebra.components();
    if component_index >= comps.len() {
        if component_index < comps.len() + w.algebra.u1_count() {
            return Err(Error::ReflectionOnU1);
        }
        return Err(Error::InvalidComponent(component_index));
    }
    let c = comps[component_index];
    if node == 0 || node > c.rank() {
        return Err(Error::InvalidNode {
            component: c.to_string(),
            node,
        });
    }
    let tables = AlgebraTables::new(&w.algebra);
    let mut coords = w.coords.clone();
    tables.reflect(&mut coords, component_index, node - 1);
    Ok(Weight {
        algebra: w.algebra.clone(),
        coords,
    })
}

/// The unique dominant representative of the orbit through `w`. U1
/// coordinates pass through unchanged; dominant input is a fixpoint.
pub fn to_dominant(w: &Weight) -> Weight {
    let tables = AlgebraTables::new(&w.algebra);
    let mut coords = w.coords.clone();
    tables.dominize(&mut coords);
    Weight {
        algebra: w.algebra.clone(),
        coords,
    }
}

/// Reverse the coordinates of a weight of a single A-type algebra; the orbit
/// of the result consists of the negated, reversed points of the original.
pub fn contragredient(w: &Weight) -> Result<Weight> {
    if !w.algebra.is_pure_type_a() {
        return Err(Error::NotPureTypeA(w.algebra.to_string()));
    }
    let mut coords = w.coords.clone();
    coords.reverse();
    Ok(Weight {
        algebra: w.algebra.clone(),
        coords,
    })
}

/// Number of points in the orbit of a dominant weight: the Weyl order divided
/// by the order of the parabolic stabilizer generated by reflections at zero
/// coordinates.
pub fn orbit_size(seed: &Weight) -> Result<u128> {
    if !seed.is_dominant() {
        return Err(Error::NonDominant(seed.to_string()));
    }
    let mut size = 1u128;
    let mut offset = 0;
    for c in seed.algebra.components() {
        let local = &seed.coords[offset..offset + c.rank()];
        let zero_nodes: Vec<bool> = local.iter().map(|v| v.is_zero()).collect();
        let stab = parabolic_order(c, &zero_nodes);
        let full = c.weyl_order();
        debug_assert_eq!(full % stab, 0, "stabilizer must divide the Weyl order");
        size = size
            .checked_mul(full / stab)
            .ok_or(Error::Overflow("orbit size"))?;
        offset += c.rank();
    }
    Ok(size)
}

/// How the closure and regrouping loops execute. `Parallel` falls back to
/// sequential when the `parallel` feature is disabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

#[cfg(feature = "parallel")]
fn auto_strategy(expected_points: u128) -> Strategy {
    if expected_points >= 20_000 {
        Strategy::Parallel
    } else {
        Strategy::Sequential
    }
}

#[cfg(not(feature = "parallel"))]
fn auto_strategy(_expected_points: u128) -> Strategy {
    Strategy::Sequential
}

/// Generate the full orbit of a dominant seed: the closure of the seed under
/// all simple reflections. For reducible algebras this equals the Cartesian
/// product of the component orbits with U1 coordinates constant.
pub fn generate_orbit(seed: &Weight) -> Result<Orbit> {
    let expected = orbit_size(seed)?;
    generate_orbit_with_strategy(seed, auto_strategy(expected))
}

#[doc(hidden)]
pub fn generate_orbit_with_strategy(seed: &Weight, strategy: Strategy) -> Result<Orbit> {
    let int = int_orbit(seed, None, strategy, true)?;
    // Scaled integers sort the same way as the rationals they stand for, so
    // the canonical descending order carries over.
    let points = int
        .points
        .iter()
        .map(|p| from_scaled_ints(p, int.scale))
        .collect();
    Ok(Orbit {
        seed: seed.clone(),
        points,
    })
}

/// Breadth-first closure of one component orbit. From the dominant seed it is
/// enough to reflect at strictly positive coordinates: every orbit point lies
/// at the end of such a descending chain (reverse the chain that dominance
/// reduction walks upward). The walk is graded: each such reflection raises
/// the inversion count by exactly one, so a point only ever arises from the
/// previous level and deduplication within one candidate batch suffices.
fn component_closure(seed: Vec<i64>, t: &CompTable, strategy: Strategy) -> Vec<Vec<i64>> {
    let reflect_positive = |point: &Vec<i64>| -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(t.rank);
        for node in 0..t.rank {
            if point[node] > 0 {
                let mut next = point.clone();
                let c = next[node];
                for &(j, v) in &t.rows[node] {
                    next[j] -= c * v;
                }
                out.push(next);
            }
        }
        out
    };

    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut level = vec![seed];
    while !level.is_empty() {
        let candidates = expand_frontier(&level, &reflect_positive, strategy);
        points.append(&mut level);
        let mut batch: FxHashSet<Vec<i64>> =
            FxHashSet::with_capacity_and_hasher(candidates.len(), Default::default());
        batch.extend(candidates);
        level = batch.into_iter().collect();
    }
    points
}

#[cfg(feature = "parallel")]
fn expand_frontier(
    frontier: &[Vec<i64>],
    reflect: &(dyn Fn(&Vec<i64>) -> Vec<Vec<i64>> + Sync),
    strategy: Strategy,
) -> Vec<Vec<i64>> {
    if strategy == Strategy::Parallel && frontier.len() >= 1024 {
        frontier.par_iter().flat_map_iter(reflect).collect()
    } else {
        frontier.iter().flat_map(reflect).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn expand_frontier(
    frontier: &[Vec<i64>],
    reflect: &(dyn Fn(&Vec<i64>) -> Vec<Vec<i64>> + Sync),
    _strategy: Strategy,
) -> Vec<Vec<i64>> {
    frontier.iter().flat_map(reflect).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn sort_points(points: &mut [Vec<i64>], strategy: Strategy) {
    if strategy == Strategy::Parallel && points.len() >= 4096 {
        points.par_sort_unstable_by(|a, b| b.cmp(a));
    } else {
        points.sort_unstable_by(|a, b| b.cmp(a));
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn sort_points(points: &mut [Vec<i64>], _strategy: Strategy) {
    points.sort_unstable_by(|a, b| b.cmp(a));
}
