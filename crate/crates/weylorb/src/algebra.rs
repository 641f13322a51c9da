//! The classical simple Lie algebras A, B, C, D and reductive products with
//! U1 factors: Cartan matrices, quadratic-form matrices, Dynkin-diagram
//! adjacency and Weyl group orders.
//!
//! Conventions (pinned once, used everywhere):
//! - Cartan matrix `C[i][j] = 2(a_i, a_j)/(a_j, a_j)`, so the simple
//!   reflection at node `i` subtracts `lambda_i` times row `i` of `C` from a
//!   weight's coordinates in the fundamental-weight basis.
//! - Dynkin numbering: `A_n` is the path `1..n`; in `B_n` node `n` is short;
//!   in `C_n` node `n` is long; `D_n` forks at node `n-2` with end nodes
//!   `n-1`, `n`.
//! - Long roots have squared length 2.
//! - `D_3` and `D_2` are not constructible; write `A_3` and `A_1xA_1`.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::Rational;

/// One of the four classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }
}

/// A classical simple algebra: a family plus a rank within its bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleComponent {
    family: Family,
    rank: usize,
}

impl SimpleComponent {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < family.min_rank() {
            let reason = match (family, rank) {
                (Family::D, 3) => "D3 coincides with A3; construct A3 instead",
                (Family::D, 2) => "D2 coincides with A1xA1; construct that instead",
                _ => "below the minimal rank of the family",
            };
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                reason,
            });
        }
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dynkin-diagram edges, 0-based node indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let r = self.rank;
        match self.family {
            Family::A | Family::B | Family::C => (0..r.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<(usize, usize)> = (0..r - 3).map(|i| (i, i + 1)).collect();
                e.push((r - 3, r - 2));
                e.push((r - 3, r - 1));
                e
            }
        }
    }

    /// Order of the component's Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        match self.family {
            Family::A => factorial(n + 1),
            Family::B | Family::C => (1u128 << self.rank) * factorial(n),
            Family::D => (1u128 << (self.rank - 1)) * factorial(n),
        }
    }

    /// Half squared lengths of the simple roots, `d_i = (a_i, a_i)/2`.
    fn root_half_norms(&self) -> Vec<Rational> {
        let r = self.rank;
        let one = Rational::one();
        let half = Rational::new(1, 2);
        match self.family {
            Family::A | Family::D => vec![one; r],
            Family::B => {
                let mut d = vec![one; r];
                d[r - 1] = half;
                d
            }
            Family::C => {
                let mut d = vec![half; r];
                d[r - 1] = one;
                d
            }
        }
    }
}

impl fmt::Display for SimpleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// An ordered product of simple components and U1 factors.
///
/// Coordinates of a weight are laid out component by component, with all U1
/// coordinates last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReductiveAlgebra {
    components: Vec<SimpleComponent>,
    u1_count: usize,
}

impl ReductiveAlgebra {
    pub fn new(components: Vec<SimpleComponent>, u1_count: usize) -> Result<Self> {
        if components.is_empty() && u1_count == 0 {
            return Err(Error::ParseAlgebra("empty algebra".into()));
        }
        Ok(Self {
            components,
            u1_count,
        })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Ok(Self {
            components: vec![SimpleComponent::new(family, rank)?],
            u1_count: 0,
        })
    }

    pub fn components(&self) -> &[SimpleComponent] {
        &self.components
    }

    pub fn u1_count(&self) -> usize {
        self.u1_count
    }

    /// Sum of the component ranks, without U1 coordinates.
    pub fn simple_dim(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// Total coordinate dimension: component ranks plus U1 factors.
    pub fn total_dim(&self) -> usize {
        self.simple_dim() + self.u1_count
    }

    /// Coordinate offset of component `idx`.
    pub fn component_offset(&self, idx: usize) -> usize {
        self.components[..idx].iter().map(|c| c.rank).sum()
    }

    /// Is this a single A-type component with nothing else?
    pub fn is_pure_type_a(&self) -> bool {
        self.u1_count == 0
            && self.components.len() == 1
            && self.components[0].family == Family::A
    }
}

impl fmt::Display for ReductiveAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        parts.extend(std::iter::repeat_n("U1".to_string(), self.u1_count));
        write!(f, "{}", parts.join("x"))
    }
}

/// Integer Cartan matrix of a simple component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i]
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(
            self.entries
                .iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    /// Nonzero entries per row as `(column, value)` pairs; reflections touch
    /// only these columns.
    pub(crate) fn sparse_rows(&self) -> Vec<Vec<(usize, i64)>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect()
    }
}

/// Gram matrix of the fundamental weights of a simple component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    entries: RatMatrix,
}

impl QuadraticForm {
    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    /// Exact squared norm of a coordinate vector.
    pub fn squared_norm(&self, coords: &[Rational]) -> Rational {
        let gv = self.entries.mul_vec(coords);
        coords.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }
}

/// Cartan matrix in the crate's pinned convention (see module docs).
pub fn cartan_matrix(c: &SimpleComponent) -> CartanMatrix {
    let r = c.rank();
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        m[i][i] = 2;
    }
    for (i, j) in c.edges() {
        m[i][j] = -1;
        m[j][i] = -1;
    }
    // The asymmetric bond: C[i][j] = 2(a_i,a_j)/(a_j,a_j) doubles the entry
    // pointing at the short root.
    match c.family() {
        Family::B => m[r - 2][r - 1] = -2,
        Family::C => m[r - 1][r - 2] = -2,
        Family::A | Family::D => {}
    }
    CartanMatrix { entries: m }
}

/// Matrix of scalar products of the fundamental weights, `G = C^{-1} D` with
/// `D = diag((a_i, a_i)/2)`. For A-type components this is the inverse Cartan
/// matrix.
pub fn quadratic_form(c: &SimpleComponent) -> QuadraticForm {
    let inv = cartan_matrix(c)
        .to_rat_matrix()
        .inverse()
        .expect("Cartan matrices are invertible");
    let d = c.root_half_norms();
    let r = c.rank();
    let mut g = RatMatrix::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            g[(i, j)] = inv[(i, j)] * d[j];
        }
    }
    QuadraticForm { entries: g }
}

/// Order of the Weyl group of a reductive algebra; U1 factors contribute 1.
pub fn weyl_order(a: &ReductiveAlgebra) -> u128 {
    a.components()
        .iter()
        .map(|c| c.weyl_order())
        .try_fold(1u128, u128::checked_mul)
        .expect("Weyl order exceeds u128")
}

/// Order of the parabolic subgroup generated by the reflections at the given
/// nodes of one component (0-based; `zero_nodes[i]` marks node `i+1` of the
/// diagram). Decomposes the induced subdiagram into connected pieces and
/// multiplies their Weyl orders, reading each piece's type off the diagram
/// shape.
pub(crate) fn parabolic_order(c: &SimpleComponent, zero_nodes: &[bool]) -> u128 {
    debug_assert_eq!(zero_nodes.len(), c.rank());
    let r = c.rank();
    let mut adj = vec![Vec::new(); r];
    for (i, j) in c.edges() {
        adj[i].push(j);
        adj[j].push(i);
    }

    let mut seen = vec![false; r];
    let mut order = 1u128;
    for start in 0..r {
        if !zero_nodes[start] || seen[start] {
            continue;
        }
        // Collect the connected piece containing `start`.
        let mut piece = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            piece.push(v);
            for &w in &adj[v] {
                if zero_nodes[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let k = piece.len() as u128;
        let piece_order = match c.family() {
            Family::A => factorial(k + 1),
            // A piece containing the end node carries the short/long root and
            // is of type B_k / C_k; any other piece is a path of long (short)
            // roots, type A_k. B_1 and C_1 coincide with A_1 (order 2).
            Family::B | Family::C => {
                if piece.contains(&(r - 1)) {
                    (1u128 << piece.len()) * factorial(k)
                } else {
                    factorial(k + 1)
                }
            }
            // A piece containing both fork ends (and then necessarily the
            // fork node) is type D_k; everything else is a path. D_1 = A_1
            // and D_2 = A_1xA_1 never arise as one piece because the fork
            // ends are not adjacent to each other.
            Family::D => {
                if piece.contains(&(r - 1)) && piece.contains(&(r - 2)) {
                    (1u128 << (piece.len() - 1)) * factorial(k)
                } else {
                    factorial(k + 1)
                }
            }
        };
        order = order.checked_mul(piece_order).expect("parabolic order overflow");
    }
    order
}

fn factorial(n: u128) -> u128 {
    (2..=n).try_fold(1u128, u128::checked_mul).expect("factorial overflow")
}

/// Parse an algebra name such as `A3`, `A2xA1xU1` or `B4`.
///
/// Grammar: `name := comp ("x" comp)*`, `comp := ("A"|"B"|"C"|"D") int | "U1"`,
/// case-insensitive. U1 factors are recorded after the simple components.
pub fn parse_algebra(text: &str) -> Result<ReductiveAlgebra> {
    let bad = || Error::ParseAlgebra(text.to_string());
    let mut components = Vec::new();
    let mut u1_count = 0usize;
    for part in text.trim().split(['x', 'X']) {
        let part = part.trim();
        let mut chars = part.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let digits = chars.as_str();
        let rank: usize = digits.parse().map_err(|_| bad())?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'U' => {
                if rank != 1 {
                    return Err(bad());
                }
                u1_count += 1;
                continue;
            }
            _ => return Err(bad()),
        };
        components.push(SimpleComponent::new(family, rank)?);
    }
    ReductiveAlgebra::new(components, u1_count)
}
