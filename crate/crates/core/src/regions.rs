//! Exact representation of secure-degrees-of-freedom region polytopes and
//! their extreme points.
//!
//! A region is a rational inequality system `H d <= h`. The multiple access
//! family carries one secrecy row per user plus nonnegativity; the
//! interference family adds a pairwise sum cap for every user pair. Extreme
//! points are enumerated by brute force over n-row subsets: a feasible point
//! solving a nonsingular n-row subsystem is a vertex, and every vertex shows
//! up that way. All arithmetic is exact; no floating point enters this
//! module.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Subset enumeration guard for vertex search.
pub const SUBSET_GUARD: u128 = 10_000_000;

/// Provenance of one inequality row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowLabel {
    /// Secrecy-driven row centered on user `i`.
    Secrecy(usize),
    /// Interference cap on the pair `(i, j)`.
    Pairwise(usize, usize),
    /// Nonnegativity of coordinate `i`.
    Nonneg(usize),
}

/// One inequality: `coeffs . d <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRow {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub label: RowLabel,
}

impl RegionRow {
    /// Compact text form, e.g. `2d1+d2<=1` or `d1>=0`.
    pub fn render(&self) -> String {
        if let RowLabel::Nonneg(i) = self.label {
            let is_pure = self
                .coeffs
                .iter()
                .enumerate()
                .all(|(j, c)| if j == i { *c == Rational::from(-1) } else { c.is_zero() });
            if is_pure && self.rhs.is_zero() {
                return format!("d{}>=0", i + 1);
            }
        }
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() && !c.is_negative() {
                out.push('+');
            }
            if *c == Rational::from(1) {
                // coefficient elided
            } else if *c == Rational::from(-1) {
                out.push('-');
            } else {
                out.push_str(&c.to_string());
            }
            out.push_str(&format!("d{}", j + 1));
        }
        format!("{out}<={}", self.rhs)
    }
}

/// Rational inequality system `H d <= h` with labeled rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub n: usize,
    pub rows: Vec<RegionRow>,
}

impl RegionSpec {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("region dimension must be >= 1".into()));
        }
        if self.rows.len() < self.n {
            return Err(Error::Domain(format!(
                "need at least {} rows for dimension {}, got {}",
                self.n,
                self.n,
                self.rows.len()
            )));
        }
        for row in &self.rows {
            if row.coeffs.len() != self.n {
                return Err(Error::Domain(format!(
                    "row {} has {} coefficients, expected {}",
                    row.render(),
                    row.coeffs.len(),
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Exact membership test.
    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.n
            && self.rows.iter().all(|row| {
                let lhs: Rational = row
                    .coeffs
                    .iter()
                    .zip(point)
                    .map(|(c, x)| c * x)
                    .sum();
                lhs <= row.rhs
            })
    }

    /// Indices of rows satisfied with equality at `point`.
    pub fn tight_rows(&self, point: &[Rational]) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| {
                let lhs: Rational = row
                    .coeffs
                    .iter()
                    .zip(point)
                    .map(|(c, x)| c * x)
                    .sum();
                lhs == row.rhs
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// First violated row at `point`, if any.
    pub fn first_violation(&self, point: &[Rational]) -> Option<usize> {
        self.rows.iter().position(|row| {
            let lhs: Rational = row.coeffs.iter().zip(point).map(|(c, x)| c * x).sum();
            lhs > row.rhs
        })
    }

    /// Copy with one row removed.
    pub fn without_row(&self, index: usize) -> Result<RegionSpec> {
        if index >= self.rows.len() {
            return Err(Error::Domain(format!("row index {index} out of range")));
        }
        let mut rows = self.rows.clone();
        rows.remove(index);
        Ok(RegionSpec { n: self.n, rows })
    }

    /// LP-free boundedness verification: every coordinate needs a pure lower
    /// bound row and an all-nonnegative row with positive weight on it.
    pub fn verify_bounded(&self) -> Result<()> {
        for i in 0..self.n {
            let lower = self.rows.iter().any(|row| {
                row.coeffs[i].is_negative()
                    && row
                        .coeffs
                        .iter()
                        .enumerate()
                        .all(|(j, c)| j == i || c.is_zero())
            });
            let upper = self.rows.iter().any(|row| {
                !row.coeffs[i].is_zero()
                    && !row.coeffs[i].is_negative()
                    && row.coeffs.iter().all(|c| !c.is_negative())
            });
            if !lower || !upper {
                return Err(Error::Unbounded);
            }
        }
        Ok(())
    }

    /// Rows scaled to integers by each row's denominator lcm.
    fn integer_rows(&self) -> Vec<(Vec<BigInt>, BigInt)> {
        self.rows
            .iter()
            .map(|row| {
                let mut scale = BigInt::one();
                for c in row.coeffs.iter().chain(std::iter::once(&row.rhs)) {
                    scale = scale.lcm(c.denom());
                }
                let coeffs = row
                    .coeffs
                    .iter()
                    .map(|c| c.numer() * (&scale / c.denom()))
                    .collect();
                let rhs = row.rhs.numer() * (&scale / row.rhs.denom());
                (coeffs, rhs)
            })
            .collect()
    }
}

/// Deduplicated exact extreme points of a region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremePointSet {
    pub points: BTreeSet<Vec<Rational>>,
}

impl ExtremePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.points.contains(point)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<Rational>> {
        self.points.iter()
    }

    /// Maximum coordinate sum and all points attaining it.
    pub fn sum_optima(&self) -> Option<(Rational, Vec<Vec<Rational>>)> {
        let best = self
            .points
            .iter()
            .map(|p| p.iter().cloned().sum::<Rational>())
            .max()?;
        let args = self
            .points
            .iter()
            .filter(|p| p.iter().cloned().sum::<Rational>() == best)
            .cloned()
            .collect();
        Some((best, args))
    }
}

/// MAC wiretap region: rows `K d_i + (K-1) sum_{j != i} d_j <= K-1` plus
/// nonnegativity.
pub fn mac_region(k: usize) -> Result<RegionSpec> {
    if k < 2 {
        return Err(Error::Domain(format!("mac region needs K >= 2, got {k}")));
    }
    let mut rows = Vec::with_capacity(2 * k);
    for i in 0..k {
        let coeffs = (0..k)
            .map(|j| Rational::from(if j == i { k as i64 } else { k as i64 - 1 }))
            .collect();
        rows.push(RegionRow {
            coeffs,
            rhs: Rational::from(k as i64 - 1),
            label: RowLabel::Secrecy(i),
        });
    }
    push_nonneg(&mut rows, k);
    Ok(RegionSpec { n: k, rows })
}

/// Interference region: rows `K d_i + sum_{j != i} d_j <= K-1`, pairwise caps
/// `d_i + d_j <= 1`, and nonnegativity.
pub fn ic_region(k: usize) -> Result<RegionSpec> {
    if k < 2 {
        return Err(Error::Domain(format!("ic region needs K >= 2, got {k}")));
    }
    let mut rows = Vec::new();
    for i in 0..k {
        let coeffs = (0..k)
            .map(|j| Rational::from(if j == i { k as i64 } else { 1 }))
            .collect();
        rows.push(RegionRow {
            coeffs,
            rhs: Rational::from(k as i64 - 1),
            label: RowLabel::Secrecy(i),
        });
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let coeffs = (0..k)
                .map(|t| Rational::from(i64::from(t == i || t == j)))
                .collect();
            rows.push(RegionRow {
                coeffs,
                rhs: Rational::one(),
                label: RowLabel::Pairwise(i, j),
            });
        }
    }
    push_nonneg(&mut rows, k);
    Ok(RegionSpec { n: k, rows })
}

fn push_nonneg(rows: &mut Vec<RegionRow>, k: usize) {
    for i in 0..k {
        let coeffs = (0..k)
            .map(|j| {
                if j == i {
                    Rational::from(-1)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        rows.push(RegionRow {
            coeffs,
            rhs: Rational::zero(),
            label: RowLabel::Nonneg(i),
        });
    }
}

fn binomial(m: usize, n: usize) -> u128 {
    if n > m {
        return 0;
    }
    let n = n.min(m - n);
    let mut acc: u128 = 1;
    for i in 0..n {
        if acc > SUBSET_GUARD * (i as u128 + 1) {
            return u128::MAX;
        }
        acc = acc * (m - i) as u128 / (i as u128 + 1);
    }
    acc
}

/// Fraction-free (Bareiss) elimination of the augmented n x (n+1) system
/// picked by `subset`. Returns the unique solution when the coefficient
/// submatrix has full rank, `None` otherwise.
fn solve_subset(
    int_rows: &[(Vec<BigInt>, BigInt)],
    subset: &[usize],
    n: usize,
) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<BigInt>> = subset
        .iter()
        .map(|&r| {
            let (coeffs, rhs) = &int_rows[r];
            let mut row = coeffs.clone();
            row.push(rhs.clone());
            row
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(k, pivot);
        for i in (k + 1)..n {
            for j in (k + 1)..=n {
                let value = (&aug[k][k] * &aug[i][j] - &aug[i][k] * &aug[k][j]) / &prev;
                aug[i][j] = value;
            }
            aug[i][k] = BigInt::zero();
        }
        prev = aug[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut numer = Rational::from_bigints(aug[i][n].clone(), BigInt::one());
        for j in (i + 1)..n {
            numer = numer - Rational::from_bigints(aug[i][j].clone(), BigInt::one()) * x[j].clone();
        }
        x[i] = numer / Rational::from_bigints(aug[i][i].clone(), BigInt::one());
    }
    Some(x)
}

fn feasible(int_rows: &[(Vec<BigInt>, BigInt)], point: &[Rational]) -> bool {
    // Clear denominators once; every row check is then integer-only.
    let mut den = BigInt::one();
    for x in point {
        den = den.lcm(x.denom());
    }
    let nums: Vec<BigInt> = point.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    int_rows.iter().all(|(coeffs, rhs)| {
        let lhs: BigInt = coeffs.iter().zip(&nums).map(|(c, v)| c * v).sum();
        lhs <= rhs * &den
    })
}

/// Enumerates the exact extreme point set of a bounded region.
///
/// Every n-row subset with a nonsingular coefficient submatrix is solved
/// exactly; feasible solutions are vertices, and all vertices are found.
pub fn extreme_points(spec: &RegionSpec) -> Result<ExtremePointSet> {
    spec.validate()?;
    spec.verify_bounded()?;
    let m = spec.num_rows();
    let count = binomial(m, spec.n);
    if count > SUBSET_GUARD {
        return Err(Error::TooLarge {
            size: count,
            guard: SUBSET_GUARD,
        });
    }
    let int_rows = spec.integer_rows();
    let n = spec.n;
    let candidates: Vec<Vec<Rational>> = (0..m)
        .combinations(n)
        .par_bridge()
        .filter_map(|subset| {
            solve_subset(&int_rows, &subset, n).filter(|x| feasible(&int_rows, x))
        })
        .collect();
    Ok(ExtremePointSet {
        points: candidates.into_iter().collect(),
    })
}

/// True when removing the row leaves the extreme point set unchanged.
pub fn is_redundant(spec: &RegionSpec, row_index: usize) -> Result<bool> {
    let full = extreme_points(spec)?;
    let pruned = extreme_points(&spec.without_row(row_index)?)?;
    Ok(full == pruned)
}

/// Maximum coordinate sum over the region (attained at a vertex).
pub fn max_sum(spec: &RegionSpec) -> Result<Rational> {
    let ex = extreme_points(spec)?;
    ex.sum_optima()
        .map(|(best, _)| best)
        .ok_or_else(|| Error::Domain("region is empty".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(coords: &[(i64, i64)]) -> Vec<Rational> {
        coords.iter().map(|&(n, d)| Rational::new(n, d)).collect()
    }

    fn point_set(points: &[Vec<Rational>]) -> BTreeSet<Vec<Rational>> {
        points.iter().cloned().collect()
    }

    /// All distinct coordinate permutations of a point.
    fn perms(coords: &[(i64, i64)]) -> Vec<Vec<Rational>> {
        let k = coords.len();
        (0..k)
            .permutations(k)
            .map(|perm| perm.into_iter().map(|i| Rational::new(coords[i].0, coords[i].1)).collect())
            .collect::<BTreeSet<Vec<Rational>>>()
            .into_iter()
            .collect()
    }

    #[test]
    fn mac_region_k2_rows() {
        let spec = mac_region(2).unwrap();
        assert_eq!(spec.n, 2);
        assert_eq!(spec.num_rows(), 4);
        assert_eq!(spec.rows[0].render(), "2d1+d2<=1");
        assert_eq!(spec.rows[1].render(), "d1+2d2<=1");
        assert_eq!(spec.rows[2].render(), "d1>=0");
        assert_eq!(spec.rows[3].render(), "d2>=0");
    }

    #[test]
    fn ic_region_row_counts_and_forms() {
        let spec = ic_region(3).unwrap();
        assert_eq!(spec.num_rows(), 3 + 3 + 3);
        assert_eq!(spec.rows[0].render(), "3d1+d2+d3<=2");
        assert_eq!(spec.rows[3].render(), "d1+d2<=1");

        let spec4 = ic_region(4).unwrap();
        assert_eq!(spec4.num_rows(), 4 + 6 + 4);
        assert!(matches!(spec4.rows[4].label, RowLabel::Pairwise(0, 1)));

        assert!(mac_region(1).is_err());
        assert!(ic_region(0).is_err());
    }

    #[test]
    fn mac_k2_extreme_points_exact() {
        let ex = extreme_points(&mac_region(2).unwrap()).unwrap();
        let want = point_set(&[
            pt(&[(0, 1), (0, 1)]),
            pt(&[(1, 2), (0, 1)]),
            pt(&[(0, 1), (1, 2)]),
            pt(&[(1, 3), (1, 3)]),
        ]);
        assert_eq!(ex.points, want);
    }

    #[test]
    fn ic_k2_matches_mac_k2() {
        let a = extreme_points(&mac_region(2).unwrap()).unwrap();
        let b = extreme_points(&ic_region(2).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mac_k3_extreme_points_exact() {
        let ex = extreme_points(&mac_region(3).unwrap()).unwrap();
        let mut want: Vec<Vec<Rational>> = vec![pt(&[(0, 1), (0, 1), (0, 1)])];
        want.extend(perms(&[(2, 3), (0, 1), (0, 1)]));
        want.extend(perms(&[(2, 5), (2, 5), (0, 1)]));
        want.push(pt(&[(2, 7), (2, 7), (2, 7)]));
        assert_eq!(ex.points, point_set(&want));
        assert_eq!(ex.len(), 8);
    }

    #[test]
    fn ic_k4_extreme_points_exact() {
        let ex = extreme_points(&ic_region(4).unwrap()).unwrap();
        let mut want: Vec<Vec<Rational>> = vec![pt(&[(0, 1), (0, 1), (0, 1), (0, 1)])];
        want.extend(perms(&[(3, 4), (0, 1), (0, 1), (0, 1)]));
        want.extend(perms(&[(2, 3), (1, 3), (0, 1), (0, 1)]));
        want.extend(perms(&[(1, 2), (1, 2), (1, 2), (0, 1)]));
        want.push(pt(&[(3, 7), (3, 7), (3, 7), (3, 7)]));
        assert_eq!(want.iter().cloned().collect::<BTreeSet<_>>().len(), 22);
        assert_eq!(ex.points, point_set(&want));
    }

    #[test]
    fn interference_tight_row_structure() {
        // Interior-coordinate vertices lean on secrecy rows only; vertices
        // with zeros that saturate a pair lean on pairwise rows.
        for k in [4usize, 5] {
            let spec = ic_region(k).unwrap();
            let ex = extreme_points(&spec).unwrap();
            for point in ex.iter() {
                let tight = spec.tight_rows(point);
                let all_nonzero = point.iter().all(|d| !d.is_zero());
                if all_nonzero {
                    assert!(
                        tight.iter().all(|&r| matches!(spec.rows[r].label, RowLabel::Secrecy(_))),
                        "K={k}: interior vertex {point:?} tight on non-secrecy rows"
                    );
                } else {
                    let saturated_pair = (0..k).any(|i| {
                        ((i + 1)..k).any(|j| {
                            point[i].clone() + point[j].clone() == Rational::one()
                        })
                    });
                    if saturated_pair {
                        assert!(
                            tight
                                .iter()
                                .any(|&r| matches!(spec.rows[r].label, RowLabel::Pairwise(..))),
                            "K={k}: vertex {point:?} saturates a pair without a tight pairwise row"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_point_is_tight_on_all_secrecy_rows() {
        for k in 2..=5usize {
            let spec = mac_region(k).unwrap();
            let denom = (k * (k - 1) + 1) as i64;
            let point: Vec<Rational> =
                (0..k).map(|_| Rational::new(k as i64 - 1, denom)).collect();
            let tight = spec.tight_rows(&point);
            let secrecy: Vec<usize> = (0..k).collect();
            assert_eq!(tight, secrecy);
        }
    }

    #[test]
    fn contains_and_tight_rows() {
        let spec = mac_region(2).unwrap();
        assert!(spec.contains(&pt(&[(0, 1), (0, 1)])));
        let sym = pt(&[(1, 3), (1, 3)]);
        assert!(spec.contains(&sym));
        assert_eq!(spec.tight_rows(&sym), vec![0, 1]);

        let spec4 = ic_region(4).unwrap();
        let bad = pt(&[(3, 5), (3, 5), (0, 1), (0, 1)]);
        assert!(!spec4.contains(&bad));
        let violated = spec4.first_violation(&bad).unwrap();
        assert_eq!(spec4.rows[violated].render(), "d1+d2<=1");
        assert!(matches!(spec4.rows[violated].label, RowLabel::Pairwise(0, 1)));
    }

    #[test]
    fn redundancy_matches_region_structure() {
        // Pairwise caps add nothing for K = 3.
        let ic3 = ic_region(3).unwrap();
        for (i, row) in ic3.rows.iter().enumerate() {
            if matches!(row.label, RowLabel::Pairwise(..)) {
                assert!(is_redundant(&ic3, i).unwrap(), "row {}", row.render());
            }
        }
        // Secrecy rows are always load-bearing.
        let mac2 = mac_region(2).unwrap();
        assert!(!is_redundant(&mac2, 0).unwrap());
        assert!(!is_redundant(&mac2, 1).unwrap());
    }

    #[test]
    fn max_sum_fixtures() {
        assert_eq!(max_sum(&mac_region(2).unwrap()).unwrap(), Rational::new(2, 3));
        assert_eq!(max_sum(&mac_region(3).unwrap()).unwrap(), Rational::new(6, 7));
        assert_eq!(max_sum(&ic_region(4).unwrap()).unwrap(), Rational::new(12, 7));
    }

    #[test]
    fn unbounded_specs_are_rejected() {
        let spec = RegionSpec {
            n: 1,
            rows: vec![RegionRow {
                coeffs: vec![Rational::one()],
                rhs: Rational::one(),
                label: RowLabel::Secrecy(0),
            }],
        };
        assert!(matches!(extreme_points(&spec), Err(Error::Unbounded)));

        // Dropping a nonnegativity row opens the region downward.
        let mac2 = mac_region(2).unwrap();
        assert!(matches!(is_redundant(&mac2, 2), Err(Error::Unbounded)));
    }

    #[test]
    fn subset_guard_trips_for_large_k() {
        let spec = ic_region(10).unwrap();
        assert!(matches!(extreme_points(&spec), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn extreme_set_is_permutation_symmetric() {
        let ex = extreme_points(&ic_region(3).unwrap()).unwrap();
        let rotated: BTreeSet<Vec<Rational>> = ex
            .points
            .iter()
            .map(|p| vec![p[2].clone(), p[0].clone(), p[1].clone()])
            .collect();
        assert_eq!(ex.points, rotated);
    }

    #[test]
    fn every_vertex_has_full_rank_tight_set() {
        let spec = ic_region(3).unwrap();
        let ex = extreme_points(&spec).unwrap();
        for point in ex.iter() {
            assert!(spec.contains(point));
            assert!(spec.tight_rows(point).len() >= spec.n);
        }
    }

    #[test]
    fn region_serde_round_trip() {
        let spec = ic_region(3).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let back: RegionSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);

        let ex = extreme_points(&spec).unwrap();
        let json = serde_json::to_string(&ex).unwrap();
        assert!(json.contains("\"2/5\""));
        let back: ExtremePointSet = serde_json::from_str(&json).unwrap();
        assert_eq!(ex, back);
    }
}
