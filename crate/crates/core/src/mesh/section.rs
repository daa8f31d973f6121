use serde::{Deserialize, Serialize};

use super::{MeshError, TranslationQuiver};

pub const SECTION_LIMIT: usize = 100_000;

/// A section together with the orbit chart `v = τⁿX` (`X` in the section).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionView {
    /// Sorted vertex indices.
    pub members: Vec<usize>,
    /// Per vertex: `(X, n)` with `v = τⁿX`.
    pub chart: Vec<(usize, i64)>,
    /// `τⁿX` with `n < 0`.
    pub delta_plus: Vec<usize>,
    /// `τⁿX` with `n > 0`.
    pub delta_minus: Vec<usize>,
    pub no_left_infinite_path: bool,
    pub no_right_infinite_path: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSearch {
    pub sections: Vec<SectionView>,
    pub truncated: bool,
}

fn orbit_index(tq: &TranslationQuiver) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let orbits = tq.orbits();
    let mut place = vec![(0, 0); tq.vertex_count()];
    for (o, orbit) in orbits.iter().enumerate() {
        for (i, &v) in orbit.iter().enumerate() {
            place[v] = (o, i);
        }
    }
    (orbits, place)
}

fn connected(tq: &TranslationQuiver, members: &[usize], inside: &[bool]) -> bool {
    let mut seen = vec![false; tq.vertex_count()];
    let mut stack = vec![members[0]];
    seen[members[0]] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in tq.successors(v).into_iter().chain(tq.predecessors(v)) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == members.len()
}

fn convex(reach: &[Vec<bool>], members: &[usize], inside: &[bool]) -> bool {
    members.iter().all(|&u| {
        members
            .iter()
            .all(|&v| (0..inside.len()).all(|w| inside[w] || !(reach[u][w] && reach[w][v])))
    })
}

impl SectionView {
    /// The view of `candidate`, or `None` when it is not a section.
    pub fn of(tq: &TranslationQuiver, candidate: &[usize]) -> Option<SectionView> {
        let reach = tq.reachability();
        SectionView::with_reach(tq, &reach, candidate)
    }

    pub fn from_ids(tq: &TranslationQuiver, ids: &[&str]) -> Result<Option<SectionView>, MeshError> {
        let members = ids
            .iter()
            .map(|id| tq.vertex_index(id))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SectionView::of(tq, &members))
    }

    fn with_reach(tq: &TranslationQuiver, reach: &[Vec<bool>], candidate: &[usize]) -> Option<SectionView> {
        let n = tq.vertex_count();
        if candidate.is_empty() || candidate.iter().any(|&v| v >= n) {
            return None;
        }
        let mut members = candidate.to_vec();
        members.sort_unstable();
        members.dedup();
        let (orbits, place) = orbit_index(tq);
        let mut hit = vec![None; orbits.len()];
        for &v in &members {
            let (o, i) = place[v];
            if hit[o].replace(i).is_some() {
                return None;
            }
        }
        if hit.iter().any(Option::is_none) {
            return None;
        }
        let mut inside = vec![false; n];
        for &v in &members {
            inside[v] = true;
        }
        if !convex(reach, &members, &inside) || !connected(tq, &members, &inside) {
            return None;
        }
        let mut chart = Vec::with_capacity(n);
        let (mut delta_plus, mut delta_minus) = (Vec::new(), Vec::new());
        for (v, &(o, i)) in place.iter().enumerate() {
            let p = hit[o].expect("every orbit is hit");
            let shift = p as i64 - i as i64;
            chart.push((orbits[o][p], shift));
            match shift.signum() {
                -1 => delta_plus.push(v),
                1 => delta_minus.push(v),
                _ => {}
            }
        }
        Some(SectionView {
            members,
            chart,
            delta_plus,
            delta_minus,
            no_left_infinite_path: true,
            no_right_infinite_path: true,
        })
    }

    pub fn member_ids<'a>(&self, tq: &'a TranslationQuiver) -> Vec<&'a str> {
        self.members.iter().map(|&v| tq.vertex_id(v)).collect()
    }

    /// `τ(Δ)` and `τ⁻(Δ)` inside the data, skipping undefined translates.
    pub fn shifted(&self, tq: &TranslationQuiver) -> (Vec<usize>, Vec<usize>) {
        let tau = self.members.iter().filter_map(|&v| tq.tau(v)).collect();
        let tau_inv = self.members.iter().filter_map(|&v| tq.tau_inverse(v)).collect();
        (tau, tau_inv)
    }
}

pub fn is_section(tq: &TranslationQuiver, candidate: &[usize]) -> bool {
    SectionView::of(tq, candidate).is_some()
}

pub fn find_sections(tq: &TranslationQuiver) -> Vec<SectionView> {
    find_sections_capped(tq, SECTION_LIMIT).sections
}

struct Search<'a> {
    tq: &'a TranslationQuiver,
    reach: Vec<Vec<bool>>,
    orbits: Vec<Vec<usize>>,
    place: Vec<(usize, usize)>,
    order: Vec<usize>,
    limit: usize,
    tried: usize,
    truncated: bool,
    found: Vec<SectionView>,
}

impl Search<'_> {
    /// Whether `v` is compatible with the partial choice: arrows force
    /// neighbours into `{y, τy}` or `{y, τ⁻y}`, and nothing strictly between
    /// chosen vertices may lie elsewhere in its orbit.
    fn admissible(&self, chosen: &[Option<usize>], v: usize) -> bool {
        for u in chosen.iter().flatten().copied() {
            if !self.neighbour_ok(u, v) || !self.neighbour_ok(v, u) {
                return false;
            }
            for (w, row) in self.reach.iter().enumerate() {
                let between = (self.reach[u][w] && row[v]) || (self.reach[v][w] && row[u]);
                if between && w != u && w != v {
                    if let Some(c) = chosen[self.place[w].0] {
                        if c != w {
                            return false;
                        }
                    } else if self.place[w].0 == self.place[v].0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// For a chosen `x` and an arrow `x → y` the orbit of `y` must be hit in
    /// `y` or `τy`; for `y → x` in `y` or `τ⁻y`. Checks this for `x = u`
    /// against the candidate `c` in another orbit.
    fn neighbour_ok(&self, u: usize, c: usize) -> bool {
        let tq = self.tq;
        let orbit = self.place[c].0;
        for (_, a) in tq.out_arrows(u) {
            let y = a.target;
            if self.place[y].0 == orbit && c != y && tq.tau(y) != Some(c) {
                return false;
            }
        }
        for (_, a) in tq.in_arrows(u) {
            let y = a.source;
            if self.place[y].0 == orbit && c != y && tq.tau_inverse(y) != Some(c) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize, chosen: &mut Vec<Option<usize>>) {
        if self.truncated {
            return;
        }
        if depth == self.order.len() {
            if self.tried == self.limit {
                self.truncated = true;
                return;
            }
            self.tried += 1;
            let members: Vec<usize> = chosen.iter().flatten().copied().collect();
            if let Some(view) = SectionView::with_reach(self.tq, &self.reach, &members) {
                self.found.push(view);
            }
            return;
        }
        let o = self.order[depth];
        for i in 0..self.orbits[o].len() {
            let v = self.orbits[o][i];
            if self.admissible(chosen, v) {
                chosen[o] = Some(v);
                self.run(depth + 1, chosen);
                chosen[o] = None;
            }
        }
    }
}

/// Depth-first enumeration over one vertex per τ-orbit, with at most `limit`
/// complete candidates examined.
pub fn find_sections_capped(tq: &TranslationQuiver, limit: usize) -> SectionSearch {
    let (orbits, place) = orbit_index(tq);
    // visit orbits breadth-first along arrows so constraints bite early
    let k = orbits.len();
    let mut order = Vec::with_capacity(k);
    let mut queued = vec![false; k];
    for start in 0..k {
        if queued[start] {
            continue;
        }
        queued[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(o) = queue.pop_front() {
            order.push(o);
            for &v in &orbits[o] {
                for w in tq.successors(v).into_iter().chain(tq.predecessors(v)) {
                    let p = place[w].0;
                    if !queued[p] {
                        queued[p] = true;
                        queue.push_back(p);
                    }
                }
            }
        }
    }
    let mut search = Search {
        tq,
        reach: tq.reachability(),
        orbits,
        place,
        order,
        limit,
        tried: 0,
        truncated: false,
        found: Vec::new(),
    };
    let mut chosen = vec![None; k];
    if k > 0 {
        search.run(0, &mut chosen);
    }
    let mut sections = search.found;
    sections.sort_by(|a, b| a.members.cmp(&b.members));
    SectionSearch {
        sections,
        truncated: search.truncated,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactlin::Field;
    use crate::knit::{knit_full_dynkin, knit_preprojective};
    use crate::mesh::{build_shape, ShapeKind};
    use crate::quiver::{Family, Quiver};

    fn component(f: Family) -> TranslationQuiver {
        let q = Arc::new(f.build().unwrap());
        TranslationQuiver::from_ar(&knit_full_dynkin(&q, Field::Rational).unwrap()).unwrap()
    }

    /// Every choice of one vertex per orbit, filtered by the definition.
    fn exhaustive(tq: &TranslationQuiver) -> Vec<Vec<usize>> {
        let orbits = tq.orbits();
        let mut out = vec![Vec::new()];
        for orbit in &orbits {
            out = out
                .into_iter()
                .flat_map(|c: Vec<usize>| {
                    orbit.iter().map(move |&v| {
                        let mut c = c.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        let mut good: Vec<Vec<usize>> = out
            .into_iter()
            .filter(|c| is_section(tq, c))
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        good.sort();
        good
    }

    #[test]
    fn a2_candidates() {
        let tq = component(Family::LinearA(2));
        let view = SectionView::from_ids(&tq, &["P2", "P1"]).unwrap().unwrap();
        assert!(view.delta_minus.is_empty());
        assert_eq!(view.delta_plus, vec![tq.vertex_index("P2+1").unwrap()]);
        assert!(SectionView::from_ids(&tq, &["P2", "P2+1"]).unwrap().is_none());
        assert_eq!(find_sections(&tq).len(), 2);
    }

    #[test]
    fn projectives_form_a_section() {
        for f in [
            Family::LinearA(4),
            Family::D {
                n: 5,
                orientation: None,
            },
            Family::Kronecker,
        ] {
            let q = Arc::new(f.build().unwrap());
            let ar = knit_preprojective(&q, Field::Rational, 12).unwrap();
            let tq = TranslationQuiver::from_ar(&ar).unwrap();
            let projectives: Vec<usize> = (0..ar.node_count()).filter(|&i| ar.nodes[i].is_projective).collect();
            let view = SectionView::of(&tq, &projectives).expect("projectives form a section");
            assert!(view.delta_minus.is_empty());
        }
    }

    #[test]
    fn layer_of_a_window() {
        let q = Quiver::from_edges(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")]).unwrap();
        let tq = build_shape(&q, ShapeKind::Z, -1, 2).unwrap();
        let layer: Vec<usize> = ["(1,1)", "(1,2)", "(1,3)"]
            .iter()
            .map(|v| tq.vertex_index(v).unwrap())
            .collect();
        let view = SectionView::of(&tq, &layer).unwrap();
        assert_eq!(view.delta_plus.len(), 3);
        assert_eq!(view.delta_minus.len(), 6);
    }

    #[test]
    fn search_matches_exhaustive() {
        for f in [
            Family::LinearA(3),
            Family::LinearA(4),
            Family::D {
                n: 4,
                orientation: None,
            },
        ] {
            let tq = component(f);
            let found: Vec<Vec<usize>> = find_sections(&tq).into_iter().map(|s| s.members).collect();
            assert_eq!(found, exhaustive(&tq));
        }
    }

    #[test]
    fn cap_reports_truncation() {
        let tq = component(Family::LinearA(4));
        let search = find_sections_capped(&tq, 1);
        assert!(search.truncated);
        assert!(search.sections.len() <= 1);
    }
}
