use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ShapeTag, TranslationQuiver};

/// Coordinates `X_ij` (`1 ≤ j ≤ i ≤ rank`) of a wing: row `i` is the τ-orbit
/// with `i` members, `X_i1` has no τ⁻ and `τX_ij = X_i,j+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WingChart {
    pub rank: usize,
    /// `(i, j)` per vertex, 1-based.
    pub coords: Vec<(usize, usize)>,
    /// `grid[i - 1][j - 1]` is the vertex `X_ij`.
    pub grid: Vec<Vec<usize>>,
    /// `X_11`.
    pub wing_vertex: usize,
    /// The bottom row `X_n1, …, X_nn`.
    pub quasi_simples: Vec<usize>,
}

impl WingChart {
    pub fn at(&self, i: usize, j: usize) -> usize {
        self.grid[i - 1][j - 1]
    }
}

/// Matches the triangular wing pattern: orbit lengths `1..=n`, arrows exactly
/// `X_ij → X_i+1,j` and `X_pq → X_p−1,q−1`, each of multiplicity one.
pub fn detect_wing(tq: &TranslationQuiver) -> Option<WingChart> {
    let orbits = tq.orbits();
    let rank = orbits.len();
    if rank == 0 || tq.vertex_count() != rank * (rank + 1) / 2 {
        return None;
    }
    let mut grid: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for orbit in &orbits {
        let i = orbit.len();
        if i > rank || !grid[i - 1].is_empty() {
            return None;
        }
        // orbits run from the τ-most member, X_ii, to X_i1
        grid[i - 1] = orbit.iter().rev().copied().collect();
    }
    let mut coords = vec![(0, 0); tq.vertex_count()];
    for (i, row) in grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            coords[v] = (i + 1, j + 1);
        }
    }
    let mut expected = BTreeSet::new();
    for i in 1..=rank {
        for j in 1..=i {
            if i < rank {
                expected.insert((grid[i - 1][j - 1], grid[i][j - 1]));
            }
            if j > 1 {
                expected.insert((grid[i - 1][j - 1], grid[i - 2][j - 2]));
            }
        }
    }
    let actual: BTreeSet<(usize, usize)> = tq.arrows().iter().map(|a| (a.source, a.target)).collect();
    if actual != expected || tq.arrows().iter().any(|a| a.multiplicity != 1) || actual.len() != tq.arrows().len() {
        return None;
    }
    let quasi_simples = grid[rank - 1].clone();
    Some(WingChart {
        rank,
        coords,
        wing_vertex: grid[0][0],
        grid,
        quasi_simples,
    })
}

/// The bottom row of a wing, or for windows tagged as `ZA∞`-like shapes the
/// vertices with at most one immediate predecessor and successor.
pub fn quasi_simples(tq: &TranslationQuiver) -> Vec<usize> {
    if let Some(chart) = detect_wing(tq) {
        return chart.quasi_simples;
    }
    match tq.shape {
        Some(ShapeTag::ZAInf | ShapeTag::NAInf | ShapeTag::NMinusAInf) => (0..tq.vertex_count())
            .filter(|&v| tq.predecessors(v).len() <= 1 && tq.successors(v).len() <= 1)
            .collect(),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::Field;
    use crate::knit::knit_full_dynkin;
    use crate::mesh::hom::mesh_hom_table;
    use crate::quiver::Family;

    fn component(f: Family) -> (crate::knit::ARQuiver, TranslationQuiver) {
        let q = Arc::new(f.build().unwrap());
        let ar = knit_full_dynkin(&q, Field::Rational).unwrap();
        let tq = TranslationQuiver::from_ar(&ar).unwrap();
        (ar, tq)
    }

    #[test]
    fn linear_a3_is_a_wing() {
        let (ar, tq) = component(Family::LinearA(3));
        let chart = detect_wing(&tq).unwrap();
        assert_eq!(chart.rank, 3);
        let mut simples: Vec<Vec<usize>> = chart
            .quasi_simples
            .iter()
            .map(|&v| ar.nodes[v].dims().0.clone())
            .collect();
        simples.sort();
        assert_eq!(simples, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(ar.nodes[chart.wing_vertex].dims().0, vec![1, 1, 1]);
        assert_eq!(quasi_simples(&tq), chart.quasi_simples);
    }

    #[test]
    fn mesh_table_is_schurian() {
        for n in 1..=5 {
            let (_, tq) = component(Family::LinearA(n));
            let chart = detect_wing(&tq).unwrap();
            assert_eq!(chart.rank, n);
            let table = mesh_hom_table(&tq);
            let reach = tq.reachability();
            for x in 0..tq.vertex_count() {
                for y in 0..tq.vertex_count() {
                    assert!(table[x][y] <= 1);
                    assert!(table[x][y] == 0 || reach[x][y]);
                }
            }
            let top = chart.at(1, 1);
            assert_eq!(table[chart.at(n, n)][top], 1);
        }
    }

    #[test]
    fn d4_is_not_a_wing() {
        let (_, tq) = component(Family::D {
            n: 4,
            orientation: None,
        });
        assert!(detect_wing(&tq).is_none());
        assert!(quasi_simples(&tq).is_empty());
    }

    #[test]
    fn rank_one() {
        let tq = TranslationQuiver::new(vec!["X".into()], Vec::new(), vec![None]).unwrap();
        let chart = detect_wing(&tq).unwrap();
        assert_eq!(chart.rank, 1);
        assert_eq!(chart.quasi_simples, vec![0]);
        assert_eq!(chart.wing_vertex, 0);
    }
}
