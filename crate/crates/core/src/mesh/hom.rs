use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactlin::{Field, Mat};

use super::TranslationQuiver;

const K: Field = Field::Rational;

/// One step of a path: arrow index and the instance among its parallel copies.
type Step = (usize, usize);

/// All paths `x ⇝ y`, parallel arrows counted as distinct instances.
fn paths_between(tq: &TranslationQuiver, reach: &[Vec<bool>], x: usize, y: usize) -> Vec<Vec<Step>> {
    let mut out = Vec::new();
    if !reach[x][y] {
        return out;
    }
    let mut stack = vec![(x, Vec::new())];
    while let Some((v, path)) = stack.pop() {
        if v == y {
            out.push(path);
            continue;
        }
        for (ai, a) in tq.out_arrows(v) {
            if !reach[a.target][y] {
                continue;
            }
            for k in 0..a.multiplicity {
                let mut next = path.clone();
                next.push((ai, k));
                stack.push((a.target, next));
            }
        }
    }
    out.sort();
    out
}

/// Brute force: `#paths − rank` of the relations `p·δ_z·q` written in the path basis.
pub fn mesh_hom_dim(tq: &TranslationQuiver, x: usize, y: usize) -> usize {
    let reach = tq.reachability();
    let basis = paths_between(tq, &reach, x, y);
    if basis.is_empty() {
        return 0;
    }
    let index: HashMap<&[Step], usize> = basis.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for mesh in tq.meshes() {
        if !reach[x][mesh.tau_z] || !reach[mesh.z][y] {
            continue;
        }
        let heads = paths_between(tq, &reach, x, mesh.tau_z);
        let tails = paths_between(tq, &reach, mesh.z, y);
        for p in &heads {
            for q in &tails {
                let mut row = Vec::new();
                for &(_, ai, bi, m) in &mesh.middle {
                    for k in 0..m {
                        let mut term = p.clone();
                        term.push((ai, k));
                        term.push((bi, k));
                        term.extend_from_slice(q);
                        row.push(index[term.as_slice()]);
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    let mut rel = Mat::zeros(K, rows.len(), basis.len());
    for (r, cols) in rows.iter().enumerate() {
        for &c in cols {
            rel.set(r, c, K.one());
        }
    }
    basis.len() - rel.rank()
}

/// `dim Hom(x, y)` for every `y`, computed by building the representable
/// functor `Hom(x, −)` of the mesh category one vertex at a time in
/// topological order: each space is the sum over incoming arrow instances
/// modulo the image of the mesh relation.
pub fn mesh_hom_row(tq: &TranslationQuiver, x: usize) -> Vec<usize> {
    let n = tq.vertex_count();
    let mut dims = vec![0usize; n];
    // F(α) for every arrow instance, as a `dim F(target) × dim F(source)` matrix.
    let mut maps: HashMap<Step, Mat> = HashMap::new();
    for &z in tq.topo_order() {
        if z == x {
            dims[z] = 1;
            for (bi, b) in tq.in_arrows(z) {
                for k in 0..b.multiplicity {
                    maps.insert((bi, k), Mat::zeros(K, 1, 0));
                }
            }
            continue;
        }
        let incoming: Vec<(usize, Step)> = tq
            .in_arrows(z)
            .flat_map(|(bi, b)| (0..b.multiplicity).map(move |k| (b.source, (bi, k))))
            .collect();
        let offsets: Vec<usize> = incoming
            .iter()
            .scan(0, |acc, (w, _)| {
                let o = *acc;
                *acc += dims[*w];
                Some(o)
            })
            .collect();
        let total: usize = incoming.iter().map(|(w, _)| dims[*w]).sum();
        if total == 0 {
            for (_, step) in incoming {
                maps.insert(step, Mat::zeros(K, 0, 0));
            }
            continue;
        }
        let mut rel = Mat::zeros(K, total, 0);
        if let Some(mesh) = tq.mesh_at(z) {
            let t = mesh.tau_z;
            rel = Mat::zeros(K, total, dims[t]);
            if dims[t] > 0 {
                for &(_, ai, bi, m) in &mesh.middle {
                    for k in 0..m {
                        let slot = incoming
                            .iter()
                            .position(|(_, s)| *s == (bi, k))
                            .expect("mesh arrow enters z");
                        rel.set_block(offsets[slot], 0, &maps[&(ai, k)]);
                    }
                }
            }
        }
        let quotient = rel.left_kernel();
        dims[z] = quotient.rows();
        for (slot, (w, step)) in incoming.into_iter().enumerate() {
            maps.insert(step, quotient.block(0, offsets[slot], dims[z], dims[w]));
        }
    }
    dims
}

/// The full table `table[x][y] = dim Hom(x, y)`.
pub fn mesh_hom_table(tq: &TranslationQuiver) -> Vec<Vec<usize>> {
    (0..tq.vertex_count())
        .into_par_iter()
        .map(|x| mesh_hom_row(tq, x))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FastHom {
    pub value: usize,
    /// The additive recursion went negative on the way to `y`; `value` is then
    /// the brute-force dimension.
    pub clamped: bool,
}

/// Additive recursion `h(z) = Σ mult·h(w) − h(τz)` from `h(x) = 1`.
pub fn mesh_hom_dim_fast(tq: &TranslationQuiver, x: usize, y: usize) -> FastHom {
    let n = tq.vertex_count();
    let mut h = vec![0i64; n];
    let mut tainted = vec![false; n];
    let start = tq.topo_rank(x);
    for &z in &tq.topo_order()[start..] {
        if z == x {
            h[z] = 1;
            continue;
        }
        let mut sum = 0i64;
        let mut taint = false;
        for (_, a) in tq.in_arrows(z) {
            sum += a.multiplicity as i64 * h[a.source];
            taint |= tainted[a.source];
        }
        if let Some(t) = tq.tau(z) {
            sum -= h[t];
            taint |= tainted[t];
        }
        if sum < 0 {
            sum = 0;
            taint = true;
        }
        h[z] = sum;
        tainted[z] = taint;
        if z == y {
            break;
        }
    }
    if tainted[y] {
        FastHom {
            value: mesh_hom_dim(tq, x, y),
            clamped: true,
        }
    } else {
        FastHom {
            value: h[y] as usize,
            clamped: false,
        }
    }
}
