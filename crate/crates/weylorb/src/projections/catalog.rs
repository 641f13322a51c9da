//! The fixed table of projection matrices for source ranks up to 8, plus
//! resolution of arbitrary-rank series pairs.

use std::sync::OnceLock;

use crate::algebra::{Family, ReductiveAlgebra};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

use super::{
    series_a2n1_cn, series_a2n1_dn, series_a2n_bn, series_equidimensional, ProjectionMatrix,
    Provenance,
};

const MAX_LISTED_RANK: usize = 8;

/// Every entry with source rank at most 8: the printed fixed-rank matrices,
/// the series instances in that range, and the one subjoined matrix. Pairs
/// for which a printed matrix and a distinct series matrix both exist (the
/// halved and doubled `A_n > A_{n-2} x A_1 x U_1` forms for odd `n`) appear
/// twice, distinguished by provenance.
pub fn catalog_entries() -> &'static [ProjectionMatrix] {
    static ENTRIES: OnceLock<Vec<ProjectionMatrix>> = OnceLock::new();
    ENTRIES.get_or_init(build_entries)
}

fn build_entries() -> Vec<ProjectionMatrix> {
    let m = ProjectionMatrix::from_int_rows;
    let mut entries = vec![
        // Equidimensional fixed-rank tables.
        m("A1", "U1", &[&[1]], Provenance::Catalog),
        m("A2", "A1xU1", &[&[1, 0], &[1, 2]], Provenance::Catalog),
        m(
            "A3",
            "A2xU1",
            &[&[1, 0, 0], &[0, 1, 0], &[1, 2, 3]],
            Provenance::Catalog,
        ),
        m(
            "A4",
            "A2xA1xU1",
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[2, 4, 6, 3]],
            Provenance::Catalog,
        ),
        // Semisimple fixed-rank tables.
        m("A2", "A1", &[&[2, 2]], Provenance::Catalog),
        m("A3", "C2", &[&[1, 0, 1], &[0, 1, 0]], Provenance::Catalog),
        m("A3", "A1xA1", &[&[1, 0, 1], &[1, 2, 1]], Provenance::Catalog),
        m(
            "A4",
            "C2",
            &[&[0, 2, 2, 0], &[1, 0, 0, 1]],
            Provenance::Catalog,
        ),
        m(
            "A5",
            "A3",
            &[&[0, 1, 0, 1, 0], &[1, 0, 0, 0, 1], &[0, 1, 2, 1, 0]],
            Provenance::Catalog,
        ),
        m(
            "A5",
            "C3",
            &[&[1, 0, 0, 0, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 0]],
            Provenance::Catalog,
        ),
        m(
            "A5",
            "A2",
            &[&[0, 1, 3, 2, 2], &[2, 2, 0, 1, 0]],
            Provenance::Catalog,
        ),
        m(
            "A5",
            "A1xA2",
            &[&[1, 0, 1, 0, 1], &[1, 2, 1, 0, 0], &[0, 0, 1, 2, 1]],
            Provenance::Catalog,
        ),
        m(
            "A6",
            "B3",
            &[
                &[1, 0, 0, 0, 0, 1],
                &[0, 1, 0, 0, 1, 0],
                &[0, 0, 2, 2, 0, 0],
            ],
            Provenance::Catalog,
        ),
        m(
            "A7",
            "C4",
            &[
                &[1, 0, 0, 0, 0, 0, 1],
                &[0, 1, 0, 0, 0, 1, 0],
                &[0, 0, 1, 0, 1, 0, 0],
                &[0, 0, 0, 1, 0, 0, 0],
            ],
            Provenance::Catalog,
        ),
        m(
            "A7",
            "D4",
            &[
                &[1, 0, 0, 0, 0, 0, 1],
                &[0, 1, 0, 0, 0, 1, 0],
                &[0, 0, 1, 0, 1, 0, 0],
                &[0, 0, 1, 2, 1, 0, 0],
            ],
            Provenance::Catalog,
        ),
        m(
            "A7",
            "A1xA3",
            &[
                &[1, 0, 1, 0, 1, 0, 1],
                &[1, 2, 1, 0, 0, 0, 0],
                &[0, 0, 1, 2, 1, 0, 0],
                &[0, 0, 0, 0, 1, 2, 1],
            ],
            Provenance::Catalog,
        ),
        m(
            "A8",
            "B4",
            &[
                &[1, 0, 0, 0, 0, 0, 0, 1],
                &[0, 1, 0, 0, 0, 0, 1, 0],
                &[0, 0, 1, 0, 0, 1, 0, 0],
                &[0, 0, 0, 2, 2, 0, 0, 0],
            ],
            Provenance::Catalog,
        ),
        m(
            "A8",
            "A2xA2",
            &[
                &[1, 0, 1, 1, 0, 1, 1, 0],
                &[0, 1, 1, 0, 1, 1, 0, 1],
                &[1, 2, 1, 2, 1, 1, 0, 0],
                &[0, 0, 1, 1, 2, 1, 2, 1],
            ],
            Provenance::Catalog,
        ),
        // Subjoining: maps the A3 highest-weight orbit onto the C2 orbit
        // (0,1) even though there is no algebra inclusion behind it.
        m("A3", "C2", &[&[0, 2, 0], &[1, 0, 1]], Provenance::Subjoined),
    ];

    // The halved A_n > A_{n-2} x A_1 x U_1 matrices for odd n. The doubled
    // series form is a distinct entry under the same pair: the two differ by
    // a factor 2 on the U1 row.
    for n in [3, 5, 7] {
        entries.push(equidim_halved_odd(n).unwrap());
    }

    // Series instances across the listed rank range, skipping anything that
    // duplicates a printed matrix entry-for-entry.
    let mut series = Vec::new();
    for n in 1..=MAX_LISTED_RANK {
        for k in 0..=n.saturating_sub(1) / 2 {
            if k > 0 && n < 3 {
                continue;
            }
            series.push(series_equidimensional(n, k).unwrap());
        }
    }
    for n in 3..=MAX_LISTED_RANK / 2 {
        series.push(series_a2n_bn(n).unwrap());
    }
    for n in 2..=(MAX_LISTED_RANK + 1) / 2 {
        series.push(series_a2n1_cn(n).unwrap());
    }
    for n in 4..=(MAX_LISTED_RANK + 1) / 2 {
        series.push(series_a2n1_dn(n).unwrap());
    }
    for s in series {
        let duplicate = entries
            .iter()
            .any(|e| e.source() == s.source() && e.target() == s.target() && e.matrix() == s.matrix());
        if !duplicate {
            entries.push(s);
        }
    }

    entries.sort_by_key(|e| {
        (
            e.source().total_dim(),
            e.source().to_string(),
            e.target().to_string(),
            e.provenance().as_str(),
        )
    });
    entries
}

/// The odd-rank `A_n > A_{n-2} x A_1 x U_1` matrix with the halved last row
/// `(1, 2, ..., n-1, (n-1)/2)`.
fn equidim_halved_odd(n: usize) -> Result<ProjectionMatrix> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::SeriesRange(format!(
            "halved equidimensional form needs odd n >= 3, got {n}"
        )));
    }
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    for i in 0..n - 2 {
        let mut row = vec![0i64; n];
        row[i] = 1;
        rows.push(row);
    }
    let mut a1_row = vec![0i64; n];
    a1_row[n - 1] = 1;
    rows.push(a1_row);
    let mut last: Vec<i64> = (1..n as i64).collect();
    last.push((n as i64 - 1) / 2);
    rows.push(last);
    let rows_ref: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    ProjectionMatrix::new(
        ReductiveAlgebra::simple(Family::A, n)?,
        super::equidimensional_target(n, 1)?,
        RatMatrix::from_int_rows(&rows_ref),
        Provenance::Catalog,
    )
}

/// Look up the projection matrix for an algebra-subalgebra pair.
///
/// Fixed-rank printed matrices win over series instances when both exist for
/// a pair; pairs beyond the listed rank range are resolved through the series
/// constructors when their shape matches one.
pub fn catalog(source: &ReductiveAlgebra, target: &ReductiveAlgebra) -> Result<ProjectionMatrix> {
    let listed: Vec<&ProjectionMatrix> = catalog_entries()
        .iter()
        .filter(|e| {
            e.source() == source && e.target() == target && e.provenance() != Provenance::Subjoined
        })
        .collect();
    if let Some(entry) = listed
        .iter()
        .find(|e| e.provenance() == Provenance::Catalog)
        .or_else(|| listed.first())
    {
        return Ok((*entry).clone());
    }
    series_for_pair(source, target)?.ok_or_else(|| Error::UnknownPair {
        from: source.to_string(),
        to: target.to_string(),
    })
}

/// Look up a subjoined entry, a projection without an algebra inclusion
/// behind it.
pub fn catalog_subjoined(
    source: &ReductiveAlgebra,
    target: &ReductiveAlgebra,
) -> Result<ProjectionMatrix> {
    catalog_entries()
        .iter()
        .find(|e| {
            e.source() == source && e.target() == target && e.provenance() == Provenance::Subjoined
        })
        .cloned()
        .ok_or_else(|| Error::UnknownPair {
            from: source.to_string(),
            to: target.to_string(),
        })
}

/// Match a pair against the general-rank series shapes.
fn series_for_pair(
    source: &ReductiveAlgebra,
    target: &ReductiveAlgebra,
) -> Result<Option<ProjectionMatrix>> {
    if !source.is_pure_type_a() {
        return Ok(None);
    }
    let n = source.components()[0].rank();

    // Semisimple series: a single B/C/D component of matching rank.
    if target.u1_count() == 0 && target.components().len() == 1 {
        let t = target.components()[0];
        let matched = match t.family() {
            Family::B if n == 2 * t.rank() && t.rank() >= 3 => Some(series_a2n_bn(t.rank())?),
            Family::C if n == 2 * t.rank() - 1 && t.rank() >= 2 => Some(series_a2n1_cn(t.rank())?),
            Family::D if n == 2 * t.rank() - 1 && t.rank() >= 4 => Some(series_a2n1_dn(t.rank())?),
            _ => None,
        };
        return Ok(matched);
    }

    // Equidimensional series: A_{n-k-1} x A_k x U_1 with one U1 factor and
    // the larger rank first.
    if target.u1_count() == 1 {
        let comps = target.components();
        let all_a = comps.iter().all(|c| c.family() == Family::A);
        if !all_a {
            return Ok(None);
        }
        let k = match comps.len() {
            1 if comps[0].rank() + 1 == n => 0,
            2 if comps[0].rank() + comps[1].rank() + 1 == n
                && comps[0].rank() >= comps[1].rank() =>
            {
                comps[1].rank()
            }
            _ => return Ok(None),
        };
        if k == 0 || (n >= 3 && k <= (n - 1) / 2) {
            // Odd n, k = 1 resolves to the halved printed form, matching the
            // fixed-rank table's preference.
            if k == 1 && n % 2 == 1 {
                return Ok(Some(equidim_halved_odd(n)?));
            }
            return Ok(Some(series_equidimensional(n, k)?));
        }
    }
    Ok(None)
}
