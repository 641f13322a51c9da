//! Projection matrices mapping weights of `A_n` onto weights of its maximal
//! reductive subalgebras: the fixed-rank catalog, the general-rank series
//! constructors, derivation from associated weight pairs, and matrix
//! composition and inversion.

mod catalog;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_algebra, ReductiveAlgebra};
use crate::branching;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::orbits::{Orbit, Weight};
use crate::Rational;

pub use catalog::{catalog, catalog_entries, catalog_subjoined};

/// Where a projection matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// A fixed-rank matrix printed in the tables.
    Catalog,
    /// An instance of one of the general-rank series.
    Series,
    /// Solved from associated weight pairs.
    Derived,
    /// Product of two projections.
    Composed,
    /// Exact inverse of a square projection.
    Inverted,
    /// The subjoining relation; not an algebra inclusion.
    Subjoined,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Catalog => "catalog",
            Provenance::Series => "series",
            Provenance::Derived => "derived",
            Provenance::Composed => "composed",
            Provenance::Inverted => "inverted",
            Provenance::Subjoined => "subjoined",
        }
    }

    fn from_str(s: &str) -> Option<Self> {
        Some(match s {
            "catalog" => Provenance::Catalog,
            "series" => Provenance::Series,
            "derived" => Provenance::Derived,
            "composed" => Provenance::Composed,
            "inverted" => Provenance::Inverted,
            "subjoined" => Provenance::Subjoined,
            _ => return None,
        })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An exact-rational matrix taking source weight coordinates (as a column) to
/// target weight coordinates. Catalog and series entries are integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMatrix {
    source: ReductiveAlgebra,
    target: ReductiveAlgebra,
    matrix: RatMatrix,
    provenance: Provenance,
}

impl ProjectionMatrix {
    pub fn new(
        source: ReductiveAlgebra,
        target: ReductiveAlgebra,
        matrix: RatMatrix,
        provenance: Provenance,
    ) -> Result<Self> {
        if matrix.rows() != target.total_dim() || matrix.cols() != source.total_dim() {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{} but {} > {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                source,
                target,
                target.total_dim(),
                source.total_dim(),
            )));
        }
        Ok(Self {
            source,
            target,
            matrix,
            provenance,
        })
    }

    pub(crate) fn from_int_rows(
        source: &str,
        target: &str,
        rows: &[&[i64]],
        provenance: Provenance,
    ) -> Self {
        Self::new(
            parse_algebra(source).unwrap(),
            parse_algebra(target).unwrap(),
            RatMatrix::from_int_rows(rows),
            provenance,
        )
        .unwrap()
    }

    pub fn source(&self) -> &ReductiveAlgebra {
        &self.source
    }

    pub fn target(&self) -> &ReductiveAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Apply to a column coordinate vector of the source algebra.
    pub fn project_coords(&self, coords: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(coords)
    }

    /// Apply to a source weight, yielding a target weight.
    pub fn project_weight(&self, w: &Weight) -> Result<Weight> {
        if w.algebra() != &self.source {
            return Err(Error::AlgebraMismatch {
                expected: self.source.to_string(),
                got: w.algebra().to_string(),
            });
        }
        Weight::new(self.target.clone(), self.project_coords(w.coords()))
    }

    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord {
            source: self.source.to_string(),
            target: self.target.to_string(),
            provenance: self.provenance.to_string(),
            rows: self.matrix.rows(),
            cols: self.matrix.cols(),
            entries: self
                .matrix
                .iter_rows()
                .flatten()
                .map(|v| v.to_string())
                .collect(),
        }
    }

    pub fn from_record(record: &MatrixRecord) -> Result<Self> {
        let source = parse_algebra(&record.source)?;
        let target = parse_algebra(&record.target)?;
        let provenance = Provenance::from_str(&record.provenance).ok_or_else(|| {
            Error::ShapeMismatch(format!("unknown provenance {:?}", record.provenance))
        })?;
        if record.entries.len() != record.rows * record.cols || record.rows == 0 {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} with {} entries",
                record.rows,
                record.cols,
                record.entries.len()
            )));
        }
        let rows = record
            .entries
            .chunks(record.cols)
            .map(|chunk| {
                chunk
                    .iter()
                    .map(|s| {
                        s.parse::<Rational>().map_err(|e| Error::ParseWeight {
                            text: s.clone(),
                            reason: e.to_string(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, RatMatrix::from_rows(rows), provenance)
    }
}

impl fmt::Display for ProjectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.matrix.iter_rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Stable on-disk form of a projection matrix: one record per entry with
/// source, target, row-major entries and provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub source: String,
    pub target: String,
    pub provenance: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

/// `A_n > A_{n-k-1} x A_k x U_1` (plain `A_{n-1} x U_1` for `k = 0`).
///
/// Identity blocks over each A factor and a final integer row carrying the
/// U1 label. For `k = 1` and odd `n` this is the doubled form; the catalog
/// additionally stores the halved variant under the same pair.
pub fn series_equidimensional(n: usize, k: usize) -> Result<ProjectionMatrix> {
    if k == 0 {
        if n < 1 {
            return Err(Error::SeriesRange("k = 0 needs n >= 1".into()));
        }
    } else if n < 3 || k > (n - 1) / 2 {
        return Err(Error::SeriesRange(format!(
            "need n >= 3 and 1 <= k <= (n-1)/2, got n = {n}, k = {k}"
        )));
    }
    let source = ReductiveAlgebra::simple(crate::Family::A, n)?;
    let target = equidimensional_target(n, k)?;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    for i in 0..n - k - 1 {
        let mut row = vec![0i64; n];
        row[i] = 1;
        rows.push(row);
    }
    for t in 0..k {
        let mut row = vec![0i64; n];
        row[n - k + t] = 1;
        rows.push(row);
    }
    let mut last = vec![0i64; n];
    let (kk, nk) = (k as i64 + 1, (n - k) as i64);
    for (j, slot) in last.iter_mut().enumerate().take(n - k - 1) {
        *slot = kk * (j as i64 + 1);
    }
    last[n - k - 1] = nk * kk;
    for t in 0..k {
        last[n - k + t] = (k - t) as i64 * nk;
    }
    rows.push(last);
    let rows_ref: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    ProjectionMatrix::new(
        source,
        target,
        RatMatrix::from_int_rows(&rows_ref),
        Provenance::Series,
    )
}

pub(crate) fn equidimensional_target(n: usize, k: usize) -> Result<ReductiveAlgebra> {
    let mut comps = Vec::new();
    if n - k - 1 >= 1 {
        comps.push(crate::SimpleComponent::new(crate::Family::A, n - k - 1)?);
    }
    if k >= 1 {
        comps.push(crate::SimpleComponent::new(crate::Family::A, k)?);
    }
    ReductiveAlgebra::new(comps, 1)
}

/// `A_{2n} > B_n`, `n >= 3`: identity and reversed-identity wings and a final
/// row with 2s on the two middle columns.
pub fn series_a2n_bn(n: usize) -> Result<ProjectionMatrix> {
    if n < 3 {
        return Err(Error::SeriesRange(format!("A2n > Bn needs n >= 3, got {n}")));
    }
    let cols = 2 * n;
    let mut rows = wing_rows(n, cols);
    let mut last = vec![0i64; cols];
    last[n - 1] = 2;
    last[n] = 2;
    rows.push(last);
    build_series(2 * n, crate::Family::B, n, rows)
}

/// `A_{2n-1} > C_n`, `n >= 2`: wings plus a single 1 on the middle column.
pub fn series_a2n1_cn(n: usize) -> Result<ProjectionMatrix> {
    if n < 2 {
        return Err(Error::SeriesRange(format!("A2n-1 > Cn needs n >= 2, got {n}")));
    }
    let cols = 2 * n - 1;
    let mut rows = wing_rows(n, cols);
    let mut last = vec![0i64; cols];
    last[n - 1] = 1;
    rows.push(last);
    build_series(2 * n - 1, crate::Family::C, n, rows)
}

/// `A_{2n-1} > D_n`, `n >= 4`: wings plus a final `1 2 1` centered row.
pub fn series_a2n1_dn(n: usize) -> Result<ProjectionMatrix> {
    if n < 4 {
        return Err(Error::SeriesRange(format!("A2n-1 > Dn needs n >= 4, got {n}")));
    }
    let cols = 2 * n - 1;
    let mut rows = wing_rows(n, cols);
    let mut last = vec![0i64; cols];
    last[n - 2] = 1;
    last[n - 1] = 2;
    last[n] = 1;
    rows.push(last);
    build_series(2 * n - 1, crate::Family::D, n, rows)
}

/// First `n-1` rows shared by the three semisimple series: 1 at column `i`
/// and at the mirrored column.
fn wing_rows(n: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..n - 1)
        .map(|i| {
            let mut row = vec![0i64; cols];
            row[i] = 1;
            row[cols - 1 - i] = 1;
            row
        })
        .collect()
}

fn build_series(
    source_rank: usize,
    family: crate::Family,
    target_rank: usize,
    rows: Vec<Vec<i64>>,
) -> Result<ProjectionMatrix> {
    let rows_ref: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    ProjectionMatrix::new(
        ReductiveAlgebra::simple(crate::Family::A, source_rank)?,
        ReductiveAlgebra::simple(family, target_rank)?,
        RatMatrix::from_int_rows(&rows_ref),
        Provenance::Series,
    )
}

/// Solve for the unique matrix sending each source weight of `pairs` to its
/// associate target weight. The source weights must span the source space;
/// pairs beyond a spanning subset are checked against the solved matrix.
pub fn derive_projection(
    source: &ReductiveAlgebra,
    target: &ReductiveAlgebra,
    pairs: &[(Weight, Weight)],
) -> Result<ProjectionMatrix> {
    let n = source.total_dim();
    let m = target.total_dim();
    for (v, w) in pairs {
        if v.algebra() != source {
            return Err(Error::AlgebraMismatch {
                expected: source.to_string(),
                got: v.algebra().to_string(),
            });
        }
        if w.algebra() != target {
            return Err(Error::AlgebraMismatch {
                expected: target.to_string(),
                got: w.algebra().to_string(),
            });
        }
    }

    // Columns of V are the source weights; pivot columns index a spanning
    // subset.
    let mut v_all = RatMatrix::zero(n, pairs.len());
    for (j, (v, _)) in pairs.iter().enumerate() {
        for i in 0..n {
            v_all[(i, j)] = v.coords()[i];
        }
    }
    let pivots = v_all.clone().row_reduce();
    if pivots.len() < n {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            dim: n,
        });
    }

    let mut v_sq = RatMatrix::zero(n, n);
    let mut w_sq = RatMatrix::zero(m, n);
    for (j, &col) in pivots.iter().enumerate() {
        for i in 0..n {
            v_sq[(i, j)] = pairs[col].0.coords()[i];
        }
        for i in 0..m {
            w_sq[(i, j)] = pairs[col].1.coords()[i];
        }
    }
    let p = w_sq.mul(&v_sq.inverse()?)?;

    for (v, w) in pairs {
        if p.mul_vec(v.coords()) != w.coords() {
            return Err(Error::InconsistentPair {
                from: v.to_string(),
                to: w.to_string(),
            });
        }
    }
    ProjectionMatrix::new(source.clone(), target.clone(), p, Provenance::Derived)
}

/// Pair up orbit points with candidate target points by sorting both sides in
/// descending lexicographic order and zipping. Best effort: the association
/// is only trusted after `derive_projection` plus `validate_projection`.
pub fn auto_associate(
    source_orbit: &Orbit,
    target_points: &[Weight],
) -> Result<Vec<(Weight, Weight)>> {
    if source_orbit.len() != target_points.len() {
        return Err(Error::CardinalityMismatch {
            left: source_orbit.len(),
            right: target_points.len(),
        });
    }
    let mut targets = target_points.to_vec();
    targets.sort_unstable_by(|a, b| b.coords().cmp(a.coords()));
    // Orbit points are already in descending canonical order.
    Ok(source_orbit.iter_weights().zip(targets).collect())
}

/// Matrix product `outer * inner`, projecting along a subalgebra chain.
pub fn compose_projection(
    outer: &ProjectionMatrix,
    inner: &ProjectionMatrix,
) -> Result<ProjectionMatrix> {
    if inner.target != outer.source {
        return Err(Error::AlgebraMismatch {
            expected: outer.source.to_string(),
            got: inner.target.to_string(),
        });
    }
    ProjectionMatrix::new(
        inner.source.clone(),
        outer.target.clone(),
        outer.matrix.mul(&inner.matrix)?,
        Provenance::Composed,
    )
}

/// Exact inverse of a square projection, with source and target swapped.
pub fn invert_projection(p: &ProjectionMatrix) -> Result<ProjectionMatrix> {
    let inv = p.matrix.inverse()?;
    ProjectionMatrix::new(
        p.target.clone(),
        p.source.clone(),
        inv,
        Provenance::Inverted,
    )
}

/// Outcome of validating one seed.
#[derive(Debug, Clone)]
pub struct SeedCheck {
    pub seed: Weight,
    pub pass: bool,
    pub detail: String,
}

/// Per-seed validation results for one projection matrix.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub matrix_source: String,
    pub matrix_target: String,
    pub checks: Vec<SeedCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Check, for each dominant seed, that the projected orbit multiset
/// decomposes exactly into target orbits with integer multiplicities.
/// Failures are reported, not thrown.
pub fn validate_projection(p: &ProjectionMatrix, seeds: &[Weight]) -> ValidationReport {
    let checks = seeds
        .iter()
        .map(|seed| match branching::branch(seed, p) {
            Err(e) => SeedCheck {
                seed: seed.clone(),
                pass: false,
                detail: e.to_string(),
            },
            Ok(rule) => {
                let report = branching::verify_branch(&rule);
                SeedCheck {
                    seed: seed.clone(),
                    pass: report.pass(),
                    detail: if report.pass() {
                        format!("{rule}")
                    } else {
                        report.summary()
                    },
                }
            }
        })
        .collect();
    ValidationReport {
        matrix_source: p.source.to_string(),
        matrix_target: p.target.to_string(),
        checks,
    }
}
