//! Corrupted components for negative controls. Each keeps the translation
//! quiver valid, so the damage is visible only to the standardness checks.

use std::collections::BTreeSet;

use crate::knit::ARQuiver;
use crate::rep::{Rep, RepError};

/// Adds one parallel copy of the arrow `x → y` and of every arrow the meshes
/// tie to it, duplicating a stored map for each new instance.
pub fn extra_arrow(ar: &ARQuiver, x: usize, y: usize) -> Option<ARQuiver> {
    let mut out = ar.clone();
    let mut todo = vec![(x, y)];
    let mut done = BTreeSet::new();
    while let Some((s, t)) = todo.pop() {
        if !done.insert((s, t)) {
            continue;
        }
        let arrow = out.arrows.iter_mut().find(|a| a.source == s && a.target == t)?;
        arrow.multiplicity += 1;
        arrow.valuation = (arrow.multiplicity, arrow.multiplicity);
        if let Some(f) = arrow.maps.first().cloned() {
            arrow.maps.push(f);
        }
        if let Some(u) = ar.tau(t) {
            todo.push((u, s));
        }
        if let Some(v) = ar.tau_inverse(s) {
            todo.push((t, v));
        }
    }
    Some(out)
}

/// Replaces the node by its double `X ⊕ X`, rewiring the stored maps through
/// the first summand.
pub fn non_brick(ar: &ARQuiver, node: usize) -> Result<ARQuiver, RepError> {
    let mut out = ar.clone();
    let rep = &ar.nodes[node].rep;
    let (sum, incl, proj) = Rep::direct_sum(&[rep, rep])?;
    out.nodes[node].rep = sum;
    for a in &mut out.arrows {
        if a.source == node {
            a.maps = a.maps.iter().map(|f| proj[0].then(f)).collect();
        }
        if a.target == node {
            a.maps = a.maps.iter().map(|f| f.then(&incl[0])).collect();
        }
    }
    Ok(out)
}

/// Gives `τX` and `τ⁻X` the representation of `X`, so `Hom(X, τX)` and
/// `Hom(τ⁻X, X)` become nonzero. Stored maps at those nodes go stale.
pub fn fabricated_hom(ar: &ARQuiver, node: usize) -> Option<ARQuiver> {
    let (before, after) = (ar.tau(node)?, ar.tau_inverse(node)?);
    let mut out = ar.clone();
    let rep = ar.nodes[node].rep.clone();
    out.nodes[before].rep = rep.clone();
    out.nodes[after].rep = rep;
    Some(out)
}
