//! The six ring families with published structure: `n = p, p^2, p^3, pq,
//! p^2 q, pqr`.
//!
//! Three things live here:
//!
//! * display labels for ideal records, in the `A_{..}` notation of each family;
//! * [`family_tables`]: the published class cardinalities and vertex degrees;
//! * [`closed_form`]: the published eigenvalue families, evaluated as printed,
//!   plus the family's quotient matrix.
//!
//! Nothing here is fed back into the structural or oracle routes; the values
//! exist to be compared against them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::IdealLattice;
use crate::linalg::{self, DenseMatrix};
use crate::ring::{PolyElement, RingContext};
use crate::spectrum::SpectrumMultiset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum Family {
    /// `n = p`
    Prime { p: u64 },
    /// `n = p^2`
    PrimeSquare { p: u64 },
    /// `n = p^3`
    PrimeCube { p: u64 },
    /// `n = pq`, `p < q`
    TwoPrimes { p: u64, q: u64 },
    /// `n = p^2 q`; `p` is the squared prime, not necessarily the smaller one
    SquareTimesPrime { p: u64, q: u64 },
    /// `n = pqr`, `p < q < r`
    ThreePrimes { p: u64, q: u64, r: u64 },
}

impl Family {
    pub fn detect(ctx: &RingContext) -> Option<Family> {
        match *ctx.factorization() {
            [(p, 1)] => Some(Family::Prime { p }),
            [(p, 2)] => Some(Family::PrimeSquare { p }),
            [(p, 3)] => Some(Family::PrimeCube { p }),
            [(p, 1), (q, 1)] => Some(Family::TwoPrimes { p, q }),
            [(p, 2), (q, 1)] | [(q, 1), (p, 2)] => Some(Family::SquareTimesPrime { p, q }),
            [(p, 1), (q, 1), (r, 1)] => Some(Family::ThreePrimes { p, q, r }),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Prime { .. } => "p",
            Family::PrimeSquare { .. } => "p^2",
            Family::PrimeCube { .. } => "p^3",
            Family::TwoPrimes { .. } => "pq",
            Family::SquareTimesPrime { .. } => "p^2q",
            Family::ThreePrimes { .. } => "pqr",
        }
    }

    /// Number of distinct nonzero proper principal ideals.
    pub fn record_count(&self) -> usize {
        match *self {
            Family::Prime { .. } => 1,
            Family::PrimeSquare { p } => p as usize + 2,
            Family::PrimeCube { p } => 3 * p as usize + 2,
            Family::TwoPrimes { .. } => 7,
            Family::SquareTimesPrime { p, .. } => 3 * p as usize + 10,
            Family::ThreePrimes { .. } => 25,
        }
    }

    /// Order of the cozero-divisor graph.
    pub fn vertex_count(&self) -> u64 {
        match *self {
            Family::Prime { p } => p - 1,
            Family::PrimeSquare { p } => p.pow(3) - 1,
            Family::PrimeCube { p } => p.pow(5) - 1,
            Family::TwoPrimes { p, q } => p * q * (p + q - 1) - 1,
            Family::SquareTimesPrime { p, q } => {
                let n = p * p * q;
                n * (n - p * (p - 1) * (q - 1)) - 1
            }
            // Non-units of Z_pqr number pq + qr + rp - p - q - r + 1.
            Family::ThreePrimes { p, q, r } => {
                p * q * r * (p * q + q * r + r * p - p - q - r + 1) - 1
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Prime { p } => write!(f, "p (p={p})"),
            Family::PrimeSquare { p } => write!(f, "p^2 (p={p})"),
            Family::PrimeCube { p } => write!(f, "p^3 (p={p})"),
            Family::TwoPrimes { p, q } => write!(f, "pq (p={p}, q={q})"),
            Family::SquareTimesPrime { p, q } => write!(f, "p^2q (p={p}, q={q})"),
            Family::ThreePrimes { p, q, r } => write!(f, "pqr (p={p}, q={q}, r={r})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Labels

/// Renders `value = c * p^e` (with `p ∤ c`) as `c p^e`, dropping unit factors.
fn render_multiple(value: u64, p: u64) -> String {
    if value == 0 {
        return "0".into();
    }
    let (mut c, mut e) = (value, 0);
    while c % p == 0 {
        c /= p;
        e += 1;
    }
    let power = match e {
        0 => String::new(),
        1 => "p".into(),
        e => format!("p^{e}"),
    };
    match (c, power.is_empty()) {
        (1, true) => "1".into(),
        (1, false) => power,
        (c, _) => format!("{c}{power}"),
    }
}

/// `A_{a,b}` from the canonical generator of an ideal of `Z_{p^k}[x]/(x^2)`.
fn prime_power_label(generator: PolyElement, p: u64) -> String {
    format!(
        "A_{{{},{}}}",
        render_multiple(generator.a, p),
        render_multiple(generator.b, p)
    )
}

/// Smallest element of the unit orbit of `e`; equal elements generate equal
/// ideals, and `(0,0)` / `(0,1)` stand for the zero ideal / whole ring.
fn local_canonical(ctx: &RingContext, e: PolyElement) -> PolyElement {
    ctx.units()
        .map(|u| ctx.mul(u, e))
        .min()
        .expect("a ring always has units")
}

/// Position of a local ideal in the chain `0 ⊂ <x> ⊂ R` of `Z_p[x]/(x^2)`.
fn prime_field_index(g: PolyElement) -> usize {
    match (g.a, g.b) {
        (0, 0) => 1,
        (_, 0) => 2,
        _ => 3,
    }
}

/// Index `I_i` of a local ideal of `Z_{p^2}[x]/(x^2)`:
/// `0, <px>, <x>, <p>, <x + lp> (l = 1..p-1), R` map to `1, 2, 3, 4, l+4, p+4`.
fn prime_square_index(g: PolyElement, p: u64) -> usize {
    match (g.a, g.b) {
        (0, 0) => 1,
        (a, 0) if a == p => 2,
        (1, 0) => 3,
        (0, b) if b == p => 4,
        (1, b) if b % p == 0 => (b / p) as usize + 4,
        _ => p as usize + 4,
    }
}

fn index_label(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(usize::to_string).collect();
    format!("A_{{{}}}", parts.join(","))
}

pub(crate) fn assign_labels(lattice: &mut IdealLattice) {
    let ctx = lattice.ctx().clone();
    let Some(family) = Family::detect(&ctx) else {
        return;
    };
    let locals = ctx.local_contexts();
    let labels: Vec<String> = lattice
        .ideals()
        .iter()
        .map(|rec| {
            let g = rec.canonical_generator;
            match family {
                Family::Prime { p } | Family::PrimeSquare { p } | Family::PrimeCube { p } => {
                    prime_power_label(g, p)
                }
                Family::TwoPrimes { .. } | Family::ThreePrimes { .. } => {
                    let idx: Vec<usize> = ctx
                        .crt_split(g)
                        .into_iter()
                        .zip(&locals)
                        .map(|(e, lc)| prime_field_index(local_canonical(lc, e)))
                        .collect();
                    index_label(&idx)
                }
                Family::SquareTimesPrime { p, .. } => {
                    let parts = ctx.crt_split(g);
                    let square_first = ctx.factorization()[0].1 == 2;
                    let (sq, sq_ctx, pr, pr_ctx) = if square_first {
                        (parts[0], &locals[0], parts[1], &locals[1])
                    } else {
                        (parts[1], &locals[1], parts[0], &locals[0])
                    };
                    index_label(&[
                        prime_square_index(local_canonical(sq_ctx, sq), p),
                        prime_field_index(local_canonical(pr_ctx, pr)),
                    ])
                }
            }
        })
        .collect();
    for (i, label) in labels.into_iter().enumerate() {
        lattice.set_label(i, label);
    }
}

// ---------------------------------------------------------------------------
// Published tables

/// One published row: class label, class cardinality, and full-graph degree
/// of each vertex in the class (when published).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub label: String,
    pub cardinality: u64,
    pub degree: Option<u64>,
}

fn row(label: impl Into<String>, cardinality: u64, degree: Option<u64>) -> FamilyRow {
    FamilyRow {
        label: label.into(),
        cardinality,
        degree,
    }
}

/// Published cardinalities and degrees for every class of the family of `n`.
pub fn family_tables(ctx: &RingContext) -> Result<Vec<FamilyRow>> {
    let family = Family::detect(ctx).ok_or(Error::UnsupportedFamily(ctx.n()))?;
    Ok(match family {
        Family::Prime { p } => vec![row("A_{1,0}", p - 1, Some(0))],
        Family::PrimeSquare { p } => prime_square_table(p),
        Family::PrimeCube { p } => prime_cube_table(p),
        Family::TwoPrimes { p, q } => two_primes_table(p, q),
        Family::SquareTimesPrime { p, q } => square_times_prime_table(p, q),
        Family::ThreePrimes { p, q, r } => three_primes_table(p, q, r),
    })
}

fn prime_square_table(p: u64) -> Vec<FamilyRow> {
    // Every class except <px> sits in the clique; published D = p(p^2 - 1).
    let clique = Some(p * (p * p - 1));
    let mut rows = vec![
        row("A_{p,0}", p - 1, Some(0)),
        row("A_{1,0}", p * (p - 1), clique),
        row("A_{0,p}", p * (p - 1), clique),
    ];
    for l in 1..p {
        rows.push(row(
            format!("A_{{1,{}}}", render_multiple(l * p, p)),
            p * (p - 1),
            clique,
        ));
    }
    rows
}

fn prime_cube_table(p: u64) -> Vec<FamilyRow> {
    let p2 = p * p;
    let p3 = p2 * p;
    let mut rows = vec![
        row("A_{1,0}", p2 * (p - 1), Some(p3 * (p2 - 1))),
        row("A_{p^2,0}", p - 1, Some(0)),
        row("A_{p,0}", p * (p - 1), Some(p2 * (p - 1))),
        row("A_{0,p^2}", p * (p - 1), Some(p2 * (p2 - 1))),
        row("A_{0,p}", p3 * (p - 1), Some(p * (p - 1) * (p3 + p - 1))),
    ];
    // The three l-indexed clusters are published with a cluster-level D that
    // counts neighbours outside the cluster; a member also sees the other
    // p - 2 ideals of its own cluster.
    let clusters = [
        ("1", 1, p3 * (p - 1), 2 * p3 * (p - 1)),
        ("1", p, p2 * (p - 1), p2 * (p - 1) * (p2 + 2)),
        ("p", p, p * (p - 1), 2 * p * (p - 1) * (p2 + 1)),
    ];
    for (a, shift, size, d) in clusters {
        for l in 1..p {
            rows.push(row(
                format!("A_{{{a},{}}}", render_multiple(l * p * shift, p)),
                size,
                Some(d + (p - 2) * size),
            ));
        }
    }
    rows
}

fn two_primes_table(p: u64, q: u64) -> Vec<FamilyRow> {
    // D_{1,3} and D_{3,1} follow the diagonal of the printed quotient matrix,
    // q(p^2 - 1) and p(q^2 - 1).
    vec![
        row("A_{1,2}", q - 1, Some(p * p - 1)),
        row("A_{2,1}", p - 1, Some(q * q - 1)),
        row("A_{1,3}", q * (q - 1), Some(q * (p * p - 1))),
        row("A_{3,1}", p * (p - 1), Some(p * (q * q - 1))),
        row(
            "A_{2,2}",
            (p - 1) * (q - 1),
            Some(p * (p - 1) + q * (q - 1)),
        ),
        row("A_{2,3}", q * (p - 1) * (q - 1), Some(p * q * (p - 1))),
        row("A_{3,2}", p * (p - 1) * (q - 1), Some(p * q * (q - 1))),
    ]
}

fn square_times_prime_table(p: u64, q: u64) -> Vec<FamilyRow> {
    let (p2, p3, p4) = (p * p, p * p * p, p * p * p * p);
    let q2 = q * q;
    let i_card = |i: u64| -> u64 {
        match i {
            1 => 1,
            2 => p - 1,
            i if i == p + 4 => p3 * (p - 1),
            _ => p * (p - 1),
        }
    };
    let j_card = |j: u64| -> u64 {
        match j {
            1 => 1,
            2 => q - 1,
            _ => q * (q - 1),
        }
    };
    let degree = |i: u64, j: u64| -> Option<u64> {
        let cluster = (3..=p + 3).contains(&i);
        Some(match (i, j) {
            (1, 2) => p4 - 1,
            (1, 3) => (p - 1) * q * (p3 + p2 + p + 1),
            (2, 1) => q2 - 1,
            (2, 2) => p4 - p + q2 - q,
            (2, 3) => p * q * (p3 - 1),
            (_, 1) if cluster => p * (p2 * q2 - p * q2 + q2 - 1),
            (_, 2) if cluster => p * (p2 * q2 - p * q2 + p3 - p2 + q2 - q),
            (_, 3) if cluster => p2 * q * (p - 1) * (p + q),
            (i, 1) if i == p + 4 => p3 * (q2 - 1),
            (i, 2) if i == p + 4 => p3 * q * (q - 1),
            _ => return None,
        })
    };
    let mut rows = Vec::new();
    for i in 1..=p + 4 {
        for j in 1..=3 {
            if (i, j) == (1, 1) || (i, j) == (p + 4, 3) {
                continue;
            }
            rows.push(row(
                index_label(&[i as usize, j as usize]),
                i_card(i) * j_card(j),
                degree(i, j),
            ));
        }
    }
    rows
}

fn three_primes_table(p: u64, q: u64, r: u64) -> Vec<FamilyRow> {
    let (p2, q2, r2) = (p * p, q * q, r * r);
    // Shared expressions of the degree column.
    let t = p2 * q2 + p2 * r2 + q2 * r2 + 1 - p2 - q2 - r2 - 2 * p * q * r;
    let a = (p2 - 1) * (q2 + r - 1);
    let b = (q2 - 1) * (p2 + r - 1);
    let table: [(&str, u64, u64); 25] = [
        ("A_{1,1,2}", r - 1, p2 * q2 - 1),
        ("A_{1,1,3}", r * (r - 1), r * (p2 * q2 - 1)),
        ("A_{1,2,1}", q - 1, p2 * r2 - 1),
        ("A_{1,2,2}", (q - 1) * (r - 1), a),
        ("A_{1,2,3}", r * (q - 1) * (r - 1), r * a),
        ("A_{1,3,1}", q * (q - 1), q * (p2 * r2 - 1)),
        ("A_{1,3,2}", q * (q - 1) * (r - 1), q * a),
        ("A_{1,3,3}", q * r * (q - 1) * (r - 1), q * r * a),
        ("A_{2,1,1}", p - 1, q2 * r2 - 1),
        ("A_{2,1,2}", (p - 1) * (r - 1), b),
        ("A_{2,1,3}", r * (p - 1) * (r - 1), r * b),
        ("A_{2,2,1}", (p - 1) * (q - 1), p2 * q2 - 1),
        ("A_{2,2,2}", (p - 1) * (q - 1) * (r - 1), t),
        ("A_{2,2,3}", r * (p - 1) * (q - 1) * (r - 1), r * t),
        ("A_{2,3,1}", q * (p - 1) * (q - 1), q * (p2 * q2 - 1)),
        ("A_{2,3,2}", q * (p - 1) * (q - 1) * (r - 1), q * t),
        (
            "A_{2,3,3}",
            q * r * (p - 1) * (q - 1) * (r - 1),
            p * q * r * (p - 1) * (q + r - 1),
        ),
        ("A_{3,1,1}", p * (p - 1), p * (q2 * r2 - 1)),
        ("A_{3,1,2}", p * (p - 1) * (r - 1), p * b),
        ("A_{3,1,3}", p * r * (p - 1) * (r - 1), p * r * b),
        ("A_{3,2,1}", p * (p - 1) * (q - 1), p * (p2 * q2 - 1)),
        ("A_{3,2,2}", p * (p - 1) * (q - 1) * (r - 1), p * t),
        ("A_{3,2,3}", p * r * (p - 1) * (q - 1) * (r - 1), p * r * t),
        (
            "A_{3,3,1}",
            p * q * (p - 1) * (q - 1),
            p * q * (p2 * q2 - 1),
        ),
        (
            "A_{3,3,2}",
            p * q * (p - 1) * (q - 1) * (r - 1),
            p * q * r * (p + q - 1) * (r - 1),
        ),
    ];
    table
        .into_iter()
        .map(|(label, card, deg)| row(label, card, Some(deg)))
        .collect()
}

/// Unweighted degree of class `(i, j, k)` in the `pqr` reduced graph:
/// `28 - ijk - (4-i)(4-j)(4-k)`.
pub fn pqr_reduced_degree(i: usize, j: usize, k: usize) -> usize {
    28 - i * j * k - (4 - i) * (4 - j) * (4 - k)
}

/// A published row compared against the enumerated lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub label: String,
    pub expected_cardinality: u64,
    pub actual_cardinality: Option<u64>,
    pub expected_degree: Option<u64>,
    pub actual_degree: Option<u64>,
}

impl TableCheck {
    pub fn cardinality_ok(&self) -> bool {
        self.actual_cardinality == Some(self.expected_cardinality)
    }

    /// True when no degree is published or the published one is right.
    pub fn degree_ok(&self) -> bool {
        self.expected_degree.is_none() || self.expected_degree == self.actual_degree
    }
}

/// Matches every published row with the lattice record of the same label.
pub fn check_tables(lattice: &IdealLattice) -> Result<Vec<TableCheck>> {
    let rows = family_tables(lattice.ctx())?;
    let graph = lattice.reduced_graph();
    Ok(rows
        .into_iter()
        .map(|r| {
            let idx = graph.index_of_label(&r.label);
            TableCheck {
                actual_cardinality: idx.map(|i| graph.weights[i] as u64),
                actual_degree: idx.map(|i| graph.weighted_degree(i) as u64),
                label: r.label,
                expected_cardinality: r.cardinality,
                expected_degree: r.degree,
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Closed-form spectra

/// One printed eigenvalue family `value^[multiplicity]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaEntry {
    pub label: String,
    pub value: i64,
    pub multiplicity: i64,
}

fn entry(label: &str, value: u64, multiplicity: i64) -> FormulaEntry {
    FormulaEntry {
        label: label.into(),
        value: value as i64,
        multiplicity,
    }
}

/// The published spectrum of one family: explicit eigenvalue families plus
/// a quotient matrix whose eigenvalues complete the list.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub family: Family,
    /// Families with positive multiplicity; zero-multiplicity ones are dropped.
    pub entries: Vec<FormulaEntry>,
    /// Symmetric quotient matrix, when the published form has one.
    pub quotient: Option<DenseMatrix>,
}

impl ClosedForm {
    pub fn dimension(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.multiplicity as usize)
            .sum::<usize>()
            + self.quotient.as_ref().map_or(0, DenseMatrix::rows)
    }

    pub fn spectrum(&self, tol: f64) -> Result<SpectrumMultiset> {
        let mut values: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value as f64, e.multiplicity as usize))
            .collect();
        let mut scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        if let Some(q) = &self.quotient {
            scale = scale.max(q.inf_norm());
            values.extend(linalg::symmetric_eigen(q)?.values);
        }
        Ok(SpectrumMultiset::from_values(values, tol * scale))
    }
}

/// Published spectrum for the family of `n`.
pub fn closed_form(ctx: &RingContext) -> Result<ClosedForm> {
    let family = Family::detect(ctx).ok_or(Error::UnsupportedFamily(ctx.n()))?;
    let (entries, quotient) = match family {
        Family::Prime { p } => (vec![entry("0", 0, p as i64 - 1)], None),
        Family::PrimeSquare { p } => {
            if p == 2 {
                return Err(degenerate(
                    family,
                    "the p^2 closed form assumes an odd prime",
                ));
            }
            let (p3, pi) = (p.pow(3) as i64, p as i64);
            (
                vec![
                    entry("0", 0, pi),
                    entry("p(p^2-1)", p * (p * p - 1), p3 - pi - 1),
                ],
                None,
            )
        }
        Family::PrimeCube { p } => (prime_cube_entries(p), Some(prime_cube_quotient(p))),
        Family::TwoPrimes { p, q } => (
            two_primes_entries(p, q),
            Some(symmetrize(&two_primes_matrix(p, q))),
        ),
        Family::SquareTimesPrime { p, q } => (
            square_times_prime_entries(p, q),
            Some(frame_quotient(&square_times_prime_frame(p, q))),
        ),
        Family::ThreePrimes { p, q, r } => (
            three_primes_entries(p, q, r),
            Some(frame_quotient(&three_primes_frame(p, q, r))),
        ),
    };
    if let Some(bad) = entries.iter().find(|e| e.multiplicity < 0) {
        return Err(degenerate(
            family,
            &format!(
                "multiplicity of {} evaluates to {}",
                bad.label, bad.multiplicity
            ),
        ));
    }
    Ok(ClosedForm {
        family,
        entries: entries.into_iter().filter(|e| e.multiplicity > 0).collect(),
        quotient,
    })
}

/// Closed-form spectrum; see [`closed_form`].
pub fn closed_form_spectrum(ctx: &RingContext, tol: f64) -> Result<SpectrumMultiset> {
    closed_form(ctx)?.spectrum(tol)
}

fn degenerate(family: Family, reason: &str) -> Error {
    Error::DegenerateParameters {
        family: family.name(),
        params: family.to_string(),
        reason: format!("{reason}; use the structural spectrum instead"),
    }
}

fn prime_cube_entries(p: u64) -> Vec<FormulaEntry> {
    let (p2, p3, p4) = (p * p, p.pow(3), p.pow(4));
    let pi = p as i64;
    let m = |x: u64| x as i64;
    vec![
        entry("0", 0, pi - 1),
        entry("p^3(p^2-1)", p3 * (p2 - 1), m(p2 * (p - 1)) - 1),
        entry("p^4(p-1)", p4 * (p - 1), (pi - 1) * (m(p3 * (p - 1)) - 1)),
        entry("2p^3(p-1)", 2 * p3 * (p - 1), pi - 3),
        entry("(p-1)(2p^3+1)", (p - 1) * (2 * p3 + 1), 1),
        entry(
            "p^3(p^2-1)",
            p3 * (p2 - 1),
            (pi - 1) * (m(p2 * (p - 1)) - 1),
        ),
        entry("p^2(p-1)(p^2+2)", p2 * (p - 1) * (p2 + 2), pi - 3),
        entry("(p-1)(p^2+1)^2", (p - 1) * (p2 + 1) * (p2 + 1), 1),
        entry(
            "p^2(p-1)(2p+1)",
            p2 * (p - 1) * (2 * p + 1),
            (pi - 1) * (m(p * (p - 1)) - 1),
        ),
        entry("2p(p-1)(p^2+1)", 2 * p * (p - 1) * (p2 + 1), pi - 3),
        entry("(p-1)(p^3+2p+1)", (p - 1) * (p3 + 2 * p + 1), 1),
        entry(
            "p(p-1)(p^3+p-1)",
            p * (p - 1) * (p3 + p - 1),
            m(p3 * (p - 1)) - 1,
        ),
        entry("p^2(p^2-1)", p2 * (p2 - 1), m(p * (p - 1)) - 1),
        entry("p^2(p-1)", p2 * (p - 1), m(p * (p - 1)) - 1),
    ]
}

/// Symmetric form of the published 7x7 cluster matrix of `n = p^3`, cluster
/// order `<x>, <x+lp>, <x+lp^2>, <px+lp^2>, <px>, <p^2>, <p>`. The diagonal is
/// not published; it is the total neighbour weight of each row.
fn prime_cube_quotient(p: u64) -> DenseMatrix {
    let (p2, p3) = (p * p, p.pow(3));
    let w = [
        p2 * (p - 1),
        p3 * (p - 1) * (p - 1),
        p2 * (p - 1) * (p - 1),
        p * (p - 1) * (p - 1),
        p * (p - 1),
        p * (p - 1),
        p3 * (p - 1),
    ];
    // Off-diagonal pattern of the printed matrix.
    let pattern: [&[usize]; 7] = [
        &[1, 2, 3, 5, 6],
        &[0, 2, 6],
        &[0, 1, 3, 5, 6],
        &[0, 2, 4, 5, 6],
        &[3, 5],
        &[0, 2, 3, 4],
        &[0, 1, 2, 3],
    ];
    let mut weighted = DenseMatrix::zeros(7, 7);
    for (i, nbrs) in pattern.iter().enumerate() {
        for &j in *nbrs {
            weighted[(i, j)] = -(w[j] as f64);
            weighted[(i, i)] += w[j] as f64;
        }
    }
    symmetrize(&weighted)
}

fn two_primes_entries(p: u64, q: u64) -> Vec<FormulaEntry> {
    let (pi, qi) = (p as i64, q as i64);
    vec![
        entry("p^2-1", p * p - 1, qi - 2),
        entry("q^2-1", q * q - 1, pi - 2),
        entry(
            "p(p-1)+q(q-1)",
            p * (p - 1) + q * (q - 1),
            (pi - 1) * (qi - 1) - 1,
        ),
        entry("q(p^2-1)", q * (p * p - 1), qi * (qi - 1) - 1),
        entry("p(q^2-1)", p * (q * q - 1), pi * (pi - 1) - 1),
        entry("pq(p-1)", p * q * (p - 1), qi * (pi - 1) * (qi - 1) - 1),
        entry("pq(q-1)", p * q * (q - 1), pi * (pi - 1) * (qi - 1) - 1),
    ]
}

/// The published 7x7 vertex-weighted matrix of `n = pq`, class order
/// `A_{1,2}, A_{2,1}, A_{2,2}, A_{1,3}, A_{3,1}, A_{2,3}, A_{3,2}`.
pub fn two_primes_matrix(p: u64, q: u64) -> DenseMatrix {
    let (p, q) = (p as f64, q as f64);
    DenseMatrix::from_rows(&[
        vec![p * p - 1.0, -(p - 1.0), 0.0, 0.0, -p * (p - 1.0), 0.0, 0.0],
        vec![-(q - 1.0), q * q - 1.0, 0.0, -q * (q - 1.0), 0.0, 0.0, 0.0],
        vec![
            0.0,
            0.0,
            q * (q - 1.0) + p * (p - 1.0),
            -q * (q - 1.0),
            -p * (p - 1.0),
            0.0,
            0.0,
        ],
        vec![
            0.0,
            -(p - 1.0),
            -(p - 1.0) * (q - 1.0),
            q * (p * p - 1.0),
            -p * (p - 1.0),
            0.0,
            -p * (p - 1.0) * (q - 1.0),
        ],
        vec![
            -(q - 1.0),
            0.0,
            -(p - 1.0) * (q - 1.0),
            -q * (q - 1.0),
            p * (q * q - 1.0),
            -q * (p - 1.0) * (q - 1.0),
            0.0,
        ],
        vec![
            0.0,
            0.0,
            0.0,
            0.0,
            -p * (p - 1.0),
            p * q * (p - 1.0),
            -p * (p - 1.0) * (q - 1.0),
        ],
        vec![
            0.0,
            0.0,
            0.0,
            -q * (q - 1.0),
            0.0,
            -q * (p - 1.0) * (q - 1.0),
            p * q * (q - 1.0),
        ],
    ])
}

/// Class labels in the row order of [`two_primes_matrix`].
pub const TWO_PRIMES_MATRIX_ORDER: [&str; 7] = [
    "A_{1,2}", "A_{2,1}", "A_{2,2}", "A_{1,3}", "A_{3,1}", "A_{2,3}", "A_{3,2}",
];

/// `S_ij = -sqrt(M_ij M_ji)` off the diagonal: the symmetric matrix similar
/// to a vertex-weighted Laplacian `M`.
pub fn symmetrize(m: &DenseMatrix) -> DenseMatrix {
    let k = m.rows();
    let mut s = DenseMatrix::zeros(k, k);
    for i in 0..k {
        s[(i, i)] = m[(i, i)];
        for j in 0..k {
            if i != j && m[(i, j)] != 0.0 {
                s[(i, j)] = -(m[(i, j)] * m[(j, i)]).sqrt();
            }
        }
    }
    s
}

fn square_times_prime_entries(p: u64, q: u64) -> Vec<FormulaEntry> {
    let (p2, p3, p4, q2) = (p * p, p.pow(3), p.pow(4), q * q);
    let (pi, qi) = (p as i64, q as i64);
    let m = |x: u64| x as i64;
    vec![
        entry("p^4-1", p4 - 1, qi - 2),
        entry(
            "p(p^2q^2-pq^2+q^2-1)",
            p * (p2 * q2 - p * q2 + q2 - 1),
            m(p * (p - 1)) - 1,
        ),
        entry(
            "p(p^2q^2-pq^2+p^3-p^2+q^2-q)",
            p * (p2 * q2 - p * q2 + p3 - p2 + q2 - q),
            m(p * (p - 1) * (q - 1)) - 1,
        ),
        entry(
            "p^2q(p-1)(p+q)",
            p2 * q * (p - 1) * (p + q),
            m(p * q * (p - 1) * (q - 1)) - 1,
        ),
        entry("pq(p^3-1)", p * q * (p3 - 1), m(q * (p - 1) * (q - 1)) - 1),
        entry(
            "q(p-1)(p^3+p(q-1)+1)",
            q * (p - 1) * (p3 + p * (q - 1) + 1),
            qi * (qi - 1) - 1,
        ),
        entry("p^3q(q-1)", p3 * q * (q - 1), m(p3 * (p - 1) * (q - 1)) - 1),
        entry("p^3(q^2-1)", p3 * (q2 - 1), m(p3 * (p - 1)) - 1),
        entry("p^4-p+q^2-q", p4 - p + q2 - q, (pi - 1) * (qi - 1) - 1),
        entry("q^2-1", q2 - 1, pi - 2),
    ]
}

/// Weighted frame: vertex weights and adjacency predicate.
struct Frame {
    weights: Vec<u64>,
    adjacent: Vec<Vec<bool>>,
}

fn frame_quotient(frame: &Frame) -> DenseMatrix {
    let k = frame.weights.len();
    let mut s = DenseMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            if i != j && frame.adjacent[i][j] {
                s[(i, i)] += frame.weights[j] as f64;
                s[(i, j)] = -((frame.weights[i] * frame.weights[j]) as f64).sqrt();
            }
        }
    }
    s
}

/// The `(3p+10)`-vertex frame of `n = p^2 q` from the published adjacency
/// rule: classes `(i1, j1)`, `(i2, j2)` are joined when `i1 != i2` both lie in
/// `3..=p+3`, or when `i1 < i2` and `j1 > j2` (either orientation).
fn square_times_prime_frame(p: u64, q: u64) -> Frame {
    let rows = square_times_prime_table(p, q);
    let classes: Vec<(u64, u64)> = (1..=p + 4)
        .flat_map(|i| (1..=3).map(move |j| (i, j)))
        .filter(|&c| c != (1, 1) && c != (p + 4, 3))
        .collect();
    let cluster = |i: u64| (3..=p + 3).contains(&i);
    let joined = |(i1, j1): (u64, u64), (i2, j2): (u64, u64)| {
        (i1 != i2 && cluster(i1) && cluster(i2)) || (i1 < i2 && j1 > j2) || (i2 < i1 && j2 > j1)
    };
    Frame {
        weights: rows.iter().map(|r| r.cardinality).collect(),
        adjacent: classes
            .iter()
            .map(|&a| classes.iter().map(|&b| a != b && joined(a, b)).collect())
            .collect(),
    }
}

fn three_primes_entries(p: u64, q: u64, r: u64) -> Vec<FormulaEntry> {
    three_primes_table(p, q, r)
        .into_iter()
        .map(|row| FormulaEntry {
            value: row.degree.unwrap_or_default() as i64,
            multiplicity: row.cardinality as i64 - 1,
            label: format!("D{}", &row.label[1..]),
        })
        .collect()
}

/// The 25-vertex frame of `n = pqr`: classes `x`, `y` are joined when
/// `x_i < y_i` and `x_j > y_j` for some coordinates `i`, `j`.
fn three_primes_frame(p: u64, q: u64, r: u64) -> Frame {
    let rows = three_primes_table(p, q, r);
    let classes: Vec<[u64; 3]> = rows
        .iter()
        .map(|row| {
            let digits: Vec<u64> = row
                .label
                .chars()
                .filter_map(|c| c.to_digit(10))
                .map(u64::from)
                .collect();
            [digits[0], digits[1], digits[2]]
        })
        .collect();
    let joined =
        |x: &[u64; 3], y: &[u64; 3]| (0..3).any(|i| x[i] < y[i]) && (0..3).any(|j| x[j] > y[j]);
    Frame {
        weights: rows.iter().map(|r| r.cardinality).collect(),
        adjacent: classes
            .iter()
            .map(|x| classes.iter().map(|y| joined(x, y)).collect())
            .collect(),
    }
}
