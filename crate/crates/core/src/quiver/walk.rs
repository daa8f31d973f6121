use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Quiver, QuiverError};

/// A reduced walk: a start vertex followed by arrows traversed forward
/// (`true`) or backward (`false`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    start: usize,
    steps: Vec<(usize, bool)>,
}

impl Walk {
    /// Checks incidence and reducedness.
    pub fn new(q: &Quiver, start: usize, steps: Vec<(usize, bool)>) -> Result<Walk, QuiverError> {
        if start >= q.vertex_count() {
            return Err(QuiverError::BadWalk(format!("start index {start} out of range")));
        }
        let mut at = start;
        for (k, &(a, fwd)) in steps.iter().enumerate() {
            let arrow = q
                .arrows()
                .get(a)
                .ok_or_else(|| QuiverError::BadWalk(format!("arrow index {a} out of range")))?;
            let (from, to) = if fwd {
                (arrow.src, arrow.tgt)
            } else {
                (arrow.tgt, arrow.src)
            };
            if from != at {
                return Err(QuiverError::BadWalk(format!(
                    "step {k} ({}) does not leave vertex {}",
                    arrow.id,
                    q.vertex_id(at)
                )));
            }
            if k > 0 && steps[k - 1].0 == a && steps[k - 1].1 != fwd {
                return Err(QuiverError::BadWalk(format!(
                    "arrow {} is immediately followed by its inverse",
                    arrow.id
                )));
            }
            at = to;
        }
        Ok(Walk { start, steps })
    }

    /// Parses `start:arrow,arrow-,...`, a trailing `-` marking an inverse step.
    pub fn parse(q: &Quiver, s: &str) -> Result<Walk, QuiverError> {
        let (start, rest) = s.split_once(':').unwrap_or((s, ""));
        let start = q.vertex_index(start.trim())?;
        let mut steps = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (id, fwd) = match tok.strip_suffix('-') {
                Some(id) => (id, false),
                None => (tok, true),
            };
            steps.push((q.arrow_index(id)?, fwd));
        }
        Walk::new(q, start, steps)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn steps(&self) -> &[(usize, bool)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertices visited, in order, the start included.
    pub fn vertices(&self, q: &Quiver) -> Vec<usize> {
        let mut out = vec![self.start];
        for &(a, fwd) in &self.steps {
            let arrow = q.arrow(a);
            out.push(if fwd { arrow.tgt } else { arrow.src });
        }
        out
    }

    pub fn visits_each_vertex_once(&self, q: &Quiver) -> bool {
        let mut v = self.vertices(q);
        let n = v.len();
        v.sort_unstable();
        v.dedup();
        v.len() == n
    }

    /// A reproducible random walk of at most `max_len` steps that never
    /// revisits a vertex; it stops early when every exit is used up.
    pub fn random(q: &Quiver, max_len: usize, seed: u64) -> Result<Walk, QuiverError> {
        if q.vertex_count() == 0 {
            return Err(QuiverError::BadWalk("quiver has no vertices".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = rng.gen_range(0..q.vertex_count());
        let mut seen = vec![false; q.vertex_count()];
        seen[start] = true;
        let (mut at, mut steps) = (start, Vec::new());
        while steps.len() < max_len {
            let exits: Vec<(usize, bool, usize)> = q
                .arrows()
                .iter()
                .enumerate()
                .filter_map(|(i, a)| match (a.src == at, a.tgt == at) {
                    (true, _) if !seen[a.tgt] => Some((i, true, a.tgt)),
                    (_, true) if !seen[a.src] => Some((i, false, a.src)),
                    _ => None,
                })
                .collect();
            if exits.is_empty() {
                break;
            }
            let (a, fwd, next) = exits[rng.gen_range(0..exits.len())];
            steps.push((a, fwd));
            seen[next] = true;
            at = next;
        }
        Walk::new(q, start, steps)
    }

    pub fn display(&self, q: &Quiver) -> String {
        let steps: Vec<String> = self
            .steps
            .iter()
            .map(|&(a, fwd)| format!("{}{}", q.arrow(a).id, if fwd { "" } else { "-" }))
            .collect();
        format!("{}:{}", q.vertex_id(self.start), steps.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Family;

    #[test]
    fn parse_and_validate() {
        let q = Family::AlternatingA(3).build().unwrap(); // 1 -a1-> 2 <-a2- 3
        let w = Walk::parse(&q, "1:a1,a2-").unwrap();
        assert_eq!(w.vertices(&q), vec![0, 1, 2]);
        assert!(w.visits_each_vertex_once(&q));
        assert_eq!(w.display(&q), "1:a1,a2-");
        assert!(Walk::parse(&q, "1:a2").is_err());
        assert!(Walk::parse(&q, "1:a1,a1-").is_err());
        assert_eq!(Walk::parse(&q, "2").unwrap().len(), 0);
    }

    #[test]
    fn random_walks_are_reduced_and_reproducible() {
        let q = Family::TruncABiinf {
            n: 10,
            orientation: None,
        }
        .build()
        .unwrap();
        for seed in 0..20 {
            let w = Walk::random(&q, 6, seed).unwrap();
            assert!(w.len() <= 6);
            assert!(w.visits_each_vertex_once(&q));
            assert_eq!(w, Walk::random(&q, 6, seed).unwrap());
        }
    }
}
