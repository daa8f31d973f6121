use serde::{Deserialize, Serialize};

use crate::quiver::Quiver;

use super::{MeshError, TqArrow, TranslationQuiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeKind {
    Z,
    N,
    Nminus,
}

/// The window `[lo, hi] × Δ` of `ZΔ`, cut to `n ≥ 0` for `N` and `n ≤ 0` for
/// `Nminus`. Vertex `(n, x)` has arrows `(n, x) → (n, y)` and
/// `(n, y) → (n + 1, x)` for each arrow `x → y`, and `τ(n, x) = (n − 1, x)`.
pub fn build_shape(delta: &Quiver, kind: ShapeKind, lo: i64, hi: i64) -> Result<TranslationQuiver, MeshError> {
    let (lo, hi) = match kind {
        ShapeKind::Z => (lo, hi),
        ShapeKind::N => (lo.max(0), hi),
        ShapeKind::Nminus => (lo, hi.min(0)),
    };
    let m = delta.vertex_count();
    if lo > hi || m == 0 {
        return Err(MeshError::EmptyWindow);
    }
    if let Err(e) = delta.require_acyclic() {
        return Err(MeshError::Cycle(vec![e.to_string()]));
    }
    let layers = (hi - lo + 1) as usize;
    let at = |n: i64, x: usize| (n - lo) as usize * m + x;
    let mut vertices = Vec::with_capacity(layers * m);
    let mut translate = Vec::with_capacity(layers * m);
    for n in lo..=hi {
        for x in 0..m {
            vertices.push(format!("({},{})", n, delta.vertex_id(x)));
            translate.push((n > lo).then(|| at(n - 1, x)));
        }
    }
    let mut arrows = Vec::new();
    for n in lo..=hi {
        for a in delta.arrows() {
            arrows.push(TqArrow {
                source: at(n, a.src),
                target: at(n, a.tgt),
                multiplicity: 1,
            });
            if n < hi {
                arrows.push(TqArrow {
                    source: at(n, a.tgt),
                    target: at(n + 1, a.src),
                    multiplicity: 1,
                });
            }
        }
    }
    TranslationQuiver::new(vertices, arrows, translate)
}
