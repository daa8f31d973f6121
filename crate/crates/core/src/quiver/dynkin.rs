use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    /// Number of positive roots, which is the number of indecomposables.
    pub fn positive_root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(n) => unreachable!("E({n})"),
        }
    }
}

impl std::fmt::Display for DynkinType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

pub(super) fn classify(q: &Quiver) -> Result<DynkinType, QuiverError> {
    let n = q.vertex_count();
    let no = |why: &str| Err(QuiverError::NotDynkin(why.to_string()));
    if n == 0 {
        return no("empty quiver");
    }
    if !q.is_connected() {
        return no("disconnected");
    }
    if q.arrows().len() != n - 1 {
        return no("underlying graph is not a tree");
    }
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        if a.src == a.tgt {
            return no("loop");
        }
        adj[a.src].push(a.tgt);
        adj[a.tgt].push(a.src);
    }
    for nb in &adj {
        let mut s = nb.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != nb.len() {
            return no("multiple edges");
        }
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok(DynkinType::A(n)),
        [b] => {
            if adj[*b].len() > 3 {
                return no("vertex of degree > 3");
            }
            // Arm lengths counted without the branch vertex.
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*b, start, 1);
                    loop {
                        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                        match next.as_slice() {
                            [] => return len,
                            [w] => {
                                prev = cur;
                                cur = *w;
                                len += 1;
                            }
                            _ => unreachable!("single branch vertex"),
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => Ok(DynkinType::D(n)),
                (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => Ok(DynkinType::E(n)),
                _ => no("arm lengths outside A/D/E"),
            }
        }
        _ => no("more than one branch vertex"),
    }
}

#[cfg(test)]
mod tests {
    use super::super::Family;
    use super::*;

    #[test]
    fn classifies_families() {
        let t = |f: Family| f.build().unwrap().dynkin_type().unwrap();
        assert_eq!(t(Family::LinearA(5)), DynkinType::A(5));
        assert_eq!(
            t(Family::D {
                n: 4,
                orientation: None
            }),
            DynkinType::D(4)
        );
        assert_eq!(
            t(Family::D {
                n: 6,
                orientation: None
            }),
            DynkinType::D(6)
        );
        for n in 6..=8 {
            assert_eq!(t(Family::E { n, orientation: None }), DynkinType::E(n));
        }
        assert!(Family::Kronecker.build().unwrap().dynkin_type().is_err());
        // affine D4 (star with four arms) and affine E6
        let star = Quiver::from_edges(
            &["0", "1", "2", "3", "4"],
            &[("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0"), ("d", "4", "0")],
        )
        .unwrap();
        assert!(star.dynkin_type().is_err());
    }
}
