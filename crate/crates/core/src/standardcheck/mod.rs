//! Standardness of knitted components: direct comparison with the mesh
//! category, and the Hom-vanishing criteria over sections, wings and radicals.

pub mod fixtures;
mod verdict;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knit::ARQuiver;
use crate::mesh::{
    detect_wing, mesh_hom_table, quasi_simples, MeshError, SectionView, ShapeTag, TqArrow, TranslationQuiver, WingChart,
};
use crate::rep::{end_report, hom_dim, rad_power_dims, Morphism, RepError};

pub use verdict::{Criterion, Outcome, Table, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StandardError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("not a section of this component")]
    InvalidSection,
    #[error("component is neither a wing nor tagged with an A∞ shape")]
    ShapeNotDetected,
    #[error("stored irreducible maps do not fit the node representations: {0}")]
    BadMaps(String),
    #[error("criteria disagree: {0}")]
    Disagreement(String),
}

/// Node indices sorted by id; every sweep runs in this order.
fn id_order(ar: &ARQuiver) -> Vec<usize> {
    let mut order: Vec<usize> = (0..ar.node_count()).collect();
    order.sort_by(|&a, &b| ar.nodes[a].id.cmp(&ar.nodes[b].id));
    order
}

fn ids(ar: &ARQuiver, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| ar.nodes[v].id.clone()).collect()
}

/// `table[x][y] = dim Hom(X, Y)` over the realized representations.
pub fn rep_hom_table(ar: &ARQuiver) -> Result<Vec<Vec<usize>>, RepError> {
    let n = ar.node_count();
    (0..n)
        .into_par_iter()
        .map(|x| (0..n).map(|y| hom_dim(&ar.nodes[x].rep, &ar.nodes[y].rep)).collect())
        .collect()
}

/// Length of a longest path.
pub fn component_diameter(tq: &TranslationQuiver) -> usize {
    let mut depth = vec![0usize; tq.vertex_count()];
    for &v in tq.topo_order() {
        for (_, a) in tq.out_arrows(v) {
            depth[a.target] = depth[a.target].max(depth[v] + 1);
        }
    }
    depth.into_iter().max().unwrap_or(0)
}

fn full_table(ar: &ARQuiver, table: &[Vec<usize>]) -> Table {
    let order = id_order(ar);
    Table {
        rows: ids(ar, &order),
        cols: ids(ar, &order),
        values: order
            .iter()
            .map(|&x| order.iter().map(|&y| table[x][y]).collect())
            .collect(),
    }
}

fn window_witness(ar: &ARQuiver) -> Witness {
    Witness::Window {
        untested: ar.nodes.iter().filter(|n| !n.processed).map(|n| n.id.clone()).collect(),
    }
}

fn non_brick(ar: &ARQuiver, order: &[usize]) -> Result<Option<Witness>, RepError> {
    for &x in order {
        let report = end_report(&ar.nodes[x].rep)?;
        if report.auto_field_dim != Some(1) || !report.is_brick {
            return Ok(Some(Witness::NonBrick {
                node: ar.nodes[x].id.clone(),
                end_dim: report.end_dim,
                auto_field_dim: report.auto_field_dim,
            }));
        }
    }
    Ok(None)
}

fn check_maps(ar: &ARQuiver) -> Result<(), StandardError> {
    for a in &ar.arrows {
        let (s, t) = (&ar.nodes[a.source], &ar.nodes[a.target]);
        if a.maps.len() != a.multiplicity {
            return Err(StandardError::BadMaps(format!(
                "{} -> {} stores {} maps",
                s.id,
                t.id,
                a.maps.len()
            )));
        }
        for f in &a.maps {
            f.check(&s.rep, &t.rep)
                .map_err(|_| StandardError::BadMaps(format!("{} -> {}", s.id, t.id)))?;
        }
    }
    Ok(())
}

/// `Σ g_i ∘ f_i` over the mesh ending at `z`.
pub fn mesh_composite(ar: &ARQuiver, z: usize) -> Option<Morphism> {
    let x = ar.tau(z)?;
    let mut total: Option<Morphism> = None;
    for a in ar.in_arrows(z) {
        let out = ar.arrows.iter().find(|b| b.source == x && b.target == a.source)?;
        for (f, g) in out.maps.iter().zip(&a.maps) {
            let c = f.then(g);
            total = Some(match total {
                None => c,
                Some(t) => t.add(&c),
            });
        }
    }
    total
}

/// Dimension of the span of all composites of stored irreducible maps `x ⇝ y`, for every `y`.
pub fn realized_span_row(ar: &ARQuiver, tq: &TranslationQuiver, x: usize) -> Vec<usize> {
    let n = ar.node_count();
    let mut spans: Vec<Vec<Morphism>> = vec![Vec::new(); n];
    spans[x] = vec![Morphism::identity(&ar.nodes[x].rep)];
    for &z in &tq.topo_order()[tq.topo_rank(x) + 1..] {
        let mut gathered = Vec::new();
        for a in ar.in_arrows(z) {
            for s in &spans[a.source] {
                for g in &a.maps {
                    let c = s.then(g);
                    if !c.is_zero() {
                        gathered.push(c);
                    }
                }
            }
        }
        spans[z] = crate::rep::reduce_span(gathered);
    }
    spans.iter().map(Vec::len).collect()
}

/// Trivial automorphism fields, mesh Hom dimensions equal to representation
/// Hom dimensions, vanishing mesh composites of the stored irreducible maps,
/// and those composites spanning every Hom space.
pub fn check_standard_direct(ar: &ARQuiver) -> Result<Verdict, StandardError> {
    let tq = TranslationQuiver::from_ar(ar)?;
    let order = id_order(ar);
    let mut verdict = Verdict::new(Criterion::Direct);
    if let Some(w) = non_brick(ar, &order)? {
        verdict.conditions.insert("auto_fields_trivial".into(), false);
        return Ok(verdict.decide(ar.complete, Some(w), window_witness(ar)));
    }
    verdict.conditions.insert("auto_fields_trivial".into(), true);

    let mesh = mesh_hom_table(&tq);
    let rep = rep_hom_table(ar)?;
    verdict.tables.insert("mesh_hom".into(), full_table(ar, &mesh));
    verdict.tables.insert("rep_hom".into(), full_table(ar, &rep));
    let mismatch = order.iter().find_map(|&x| {
        order
            .iter()
            .find(|&&y| mesh[x][y] != rep[x][y])
            .map(|&y| Witness::HomMismatch {
                source: ar.nodes[x].id.clone(),
                target: ar.nodes[y].id.clone(),
                mesh: mesh[x][y],
                rep: rep[x][y],
            })
    });
    verdict.conditions.insert("hom_dims_match".into(), mismatch.is_none());
    if mismatch.is_some() {
        return Ok(verdict.decide(ar.complete, mismatch, window_witness(ar)));
    }

    check_maps(ar)?;
    let composite = order
        .iter()
        .find(|&&z| mesh_composite(ar, z).is_some_and(|c| !c.is_zero()))
        .map(|&z| Witness::MeshComposite {
            node: ar.nodes[z].id.clone(),
        });
    verdict
        .conditions
        .insert("mesh_relations_vanish".into(), composite.is_none());
    if composite.is_some() {
        return Ok(verdict.decide(ar.complete, composite, window_witness(ar)));
    }

    let spans: Vec<Vec<usize>> = (0..ar.node_count())
        .into_par_iter()
        .map(|x| realized_span_row(ar, &tq, x))
        .collect();
    let not_full = order.iter().find_map(|&x| {
        order
            .iter()
            .find(|&&y| spans[x][y] != rep[x][y])
            .map(|&y| Witness::NotFull {
                source: ar.nodes[x].id.clone(),
                target: ar.nodes[y].id.clone(),
                spanned: spans[x][y],
                hom: rep[x][y],
            })
    });
    verdict
        .conditions
        .insert("irreducibles_generate".into(), not_full.is_none());
    if not_full.is_some() {
        return Ok(verdict.decide(ar.complete, not_full, window_witness(ar)));
    }
    let certificate = Witness::Certificate {
        pairs_checked: order.len() * order.len(),
        meshes_checked: tq.meshes().len(),
    };
    Ok(verdict.decide(
        ar.complete,
        None,
        if ar.complete { certificate } else { window_witness(ar) },
    ))
}

fn section_of(tq: &TranslationQuiver, section: &SectionView) -> Result<SectionView, StandardError> {
    SectionView::of(tq, &section.members).ok_or(StandardError::InvalidSection)
}

/// First nonzero `Hom(X, Y)` with `X` in `from` and `Y` in `to`, both in id order.
fn first_nonzero(ar: &ARQuiver, condition: &str, from: &[usize], to: &[usize]) -> Result<Option<Witness>, RepError> {
    let sort = |vs: &[usize]| {
        let mut v = vs.to_vec();
        v.sort_by(|&a, &b| ar.nodes[a].id.cmp(&ar.nodes[b].id));
        v
    };
    let (from, to) = (sort(from), sort(to));
    let pairs: Vec<(usize, usize)> = from.iter().flat_map(|&x| to.iter().map(move |&y| (x, y))).collect();
    let dims = pairs
        .par_iter()
        .map(|&(x, y)| hom_dim(&ar.nodes[x].rep, &ar.nodes[y].rep))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(pairs
        .iter()
        .zip(dims)
        .find(|(_, d)| *d > 0)
        .map(|(&(x, y), dim)| Witness::NonzeroHom {
            condition: condition.to_string(),
            source: ar.nodes[x].id.clone(),
            target: ar.nodes[y].id.clone(),
            dim,
        }))
}

/// The section as a standalone translation quiver: its own arrows, no translate.
fn section_quiver(ar: &ARQuiver, members: &[usize]) -> Result<TranslationQuiver, MeshError> {
    let pos = |v: usize| members.iter().position(|&m| m == v);
    let arrows = ar
        .arrows
        .iter()
        .filter_map(|a| {
            Some(TqArrow {
                source: pos(a.source)?,
                target: pos(a.target)?,
                multiplicity: a.multiplicity,
            })
        })
        .collect();
    TranslationQuiver::new(ids(ar, members), arrows, vec![None; members.len()])
}

/// The section is standard: bricks with Hom dimensions given by path counts.
fn section_standard(ar: &ARQuiver, members: &[usize]) -> Result<Option<Witness>, StandardError> {
    if let Some(w) = non_brick(ar, members)? {
        return Ok(Some(w));
    }
    let sub = section_quiver(ar, members)?;
    let mesh = mesh_hom_table(&sub);
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            let rep = hom_dim(&ar.nodes[x].rep, &ar.nodes[y].rep)?;
            if rep != mesh[i][j] {
                return Ok(Some(Witness::HomMismatch {
                    source: ar.nodes[x].id.clone(),
                    target: ar.nodes[y].id.clone(),
                    mesh: mesh[i][j],
                    rep,
                }));
            }
        }
    }
    Ok(None)
}

fn section_verdict(criterion: Criterion, ar: &ARQuiver, section: &SectionView) -> Verdict {
    let mut verdict = Verdict::new(criterion);
    verdict.section = Some(ids(ar, &section.members));
    verdict
}

/// `Δ` standard, `Hom(Δ⁺, Δ ∪ Δ⁻) = 0` and `Hom(Δ, Δ⁻) = 0`.
pub fn check_theorem_sections(ar: &ARQuiver, section: &SectionView) -> Result<Verdict, StandardError> {
    let tq = TranslationQuiver::from_ar(ar)?;
    let s = section_of(&tq, section)?;
    let mut verdict = section_verdict(Criterion::Sections, ar, &s);
    let delta_std = section_standard(ar, &s.members)?;
    verdict
        .conditions
        .insert("section_standard".into(), delta_std.is_none());
    let mut target = s.members.clone();
    target.extend(&s.delta_minus);
    let plus = first_nonzero(ar, "Hom(Δ⁺, Δ ∪ Δ⁻)", &s.delta_plus, &target)?;
    verdict
        .conditions
        .insert("hom_plus_to_delta_and_minus_zero".into(), plus.is_none());
    let minus = first_nonzero(ar, "Hom(Δ, Δ⁻)", &s.members, &s.delta_minus)?;
    verdict
        .conditions
        .insert("hom_delta_to_minus_zero".into(), minus.is_none());
    let witness = delta_std.or(plus).or(minus);
    Ok(verdict.decide(ar.complete, witness, section_certificate(ar, &s)))
}

fn section_certificate(ar: &ARQuiver, s: &SectionView) -> Witness {
    if ar.complete {
        Witness::SectionCertificate {
            delta_plus: s.delta_plus.len(),
            delta_minus: s.delta_minus.len(),
        }
    } else {
        window_witness(ar)
    }
}

/// The single sweep `Hom(Δ⁺, Δ⁻) = 0`.
pub fn check_theorem_proper(ar: &ARQuiver, section: &SectionView) -> Result<Verdict, StandardError> {
    let tq = TranslationQuiver::from_ar(ar)?;
    let s = section_of(&tq, section)?;
    let mut verdict = section_verdict(Criterion::Proper, ar, &s);
    let w = first_nonzero(ar, "Hom(Δ⁺, Δ⁻)", &s.delta_plus, &s.delta_minus)?;
    verdict.conditions.insert("hom_plus_to_minus_zero".into(), w.is_none());
    Ok(verdict.decide(ar.complete, w, section_certificate(ar, &s)))
}

/// `Hom(Δ, τΔ) = 0` and `Hom(τ⁻Δ, Δ) = 0`; refuses to answer when they disagree.
pub fn check_module_criterion(ar: &ARQuiver, section: &SectionView) -> Result<Verdict, StandardError> {
    let tq = TranslationQuiver::from_ar(ar)?;
    let s = section_of(&tq, section)?;
    let (tau, tau_inv) = s.shifted(&tq);
    let mut verdict = section_verdict(Criterion::Module, ar, &s);
    let left = first_nonzero(ar, "Hom(Δ, τΔ)", &s.members, &tau)?;
    let right = first_nonzero(ar, "Hom(τ⁻Δ, Δ)", &tau_inv, &s.members)?;
    verdict
        .conditions
        .insert("hom_delta_to_tau_delta_zero".into(), left.is_none());
    verdict
        .conditions
        .insert("hom_tau_inverse_delta_to_delta_zero".into(), right.is_none());
    if left.is_none() != right.is_none() {
        return Err(StandardError::Disagreement(format!(
            "Hom(Δ, τΔ) = 0 is {} but Hom(τ⁻Δ, Δ) = 0 is {}",
            left.is_none(),
            right.is_none()
        )));
    }
    Ok(verdict.decide(ar.complete, left.or(right), section_certificate(ar, &s)))
}

/// Quasi-simples are pairwise orthogonal bricks. `shape` tags a window that
/// stands in for a `ZA∞`-like component.
pub fn check_wing_criterion(ar: &ARQuiver, shape: Option<ShapeTag>) -> Result<Verdict, StandardError> {
    let tq = TranslationQuiver::from_ar(ar)?.with_shape(shape);
    let chart = detect_wing(&tq);
    let simples = quasi_simples(&tq);
    if simples.is_empty() {
        return Err(StandardError::ShapeNotDetected);
    }
    let mut verdict = Verdict::new(Criterion::Wing);
    verdict.section = Some(ids(ar, &simples));
    let bricks = non_brick(ar, &simples)?;
    verdict
        .conditions
        .insert("quasi_simples_are_bricks".into(), bricks.is_none());
    let mut clash = None;
    'outer: for &x in &simples {
        for &y in &simples {
            if x == y {
                continue;
            }
            if let Some(w) = first_nonzero(ar, "orthogonality", &[x], &[y])? {
                clash = Some(w);
                break 'outer;
            }
        }
    }
    verdict.conditions.insert("pairwise_orthogonal".into(), clash.is_none());
    let window = !ar.complete || chart.is_none();
    let certificate = match &chart {
        Some(c) if ar.complete => Witness::WingCertificate {
            rank: c.rank,
            quasi_simples: ids(ar, &c.quasi_simples),
        },
        _ => Witness::Window {
            untested: vec![format!("outside the {}-vertex window", ar.node_count())],
        },
    };
    Ok(verdict.decide(!window, bricks.or(clash), certificate))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurianReport {
    pub table: Table,
    pub max_dim: usize,
    /// Nonzero Hom spaces `X → Y` with no path `X ⇝ Y`.
    pub off_successor: Vec<(String, String)>,
    pub schurian: bool,
    pub matches_mesh: bool,
}

/// Hom dimensions over a wing: at most one, and zero off the successor relation.
pub fn check_schurian(ar: &ARQuiver, chart: &WingChart) -> Result<SchurianReport, StandardError> {
    let tq = TranslationQuiver::from_ar(ar)?;
    let reach = tq.reachability();
    let rep = rep_hom_table(ar)?;
    let mesh = mesh_hom_table(&tq);
    let members: Vec<usize> = chart.grid.iter().flatten().copied().collect();
    let mut off_successor = Vec::new();
    let mut max_dim = 0;
    let mut matches_mesh = true;
    for &x in &members {
        for &y in &members {
            max_dim = max_dim.max(rep[x][y]);
            if rep[x][y] > 0 && !reach[x][y] {
                off_successor.push((ar.nodes[x].id.clone(), ar.nodes[y].id.clone()));
            }
            matches_mesh &= rep[x][y] == mesh[x][y];
        }
    }
    let labels: Vec<String> = members
        .iter()
        .map(|&v| {
            let (i, j) = chart.coords[v];
            format!("X{i}{j}:{}", ar.nodes[v].id)
        })
        .collect();
    Ok(SchurianReport {
        table: Table {
            rows: labels.clone(),
            cols: labels,
            values: members
                .iter()
                .map(|&x| members.iter().map(|&y| rep[x][y]).collect())
                .collect(),
        },
        max_dim,
        schurian: max_dim <= 1 && off_successor.is_empty(),
        off_successor,
        matches_mesh,
    })
}

/// Runs radical powers until they stabilize; standard iff they reach zero.
pub fn check_generalized_standard(ar: &ARQuiver) -> Result<Verdict, StandardError> {
    let tq = TranslationQuiver::from_ar(ar)?;
    let diameter = component_diameter(&tq);
    let table = rad_power_dims(&ar.reps(), diameter + 2)?;
    let mut verdict = Verdict::new(Criterion::Genstd);
    let order = id_order(ar);
    for (t, power) in table.powers.iter().enumerate() {
        verdict.tables.insert(
            format!("rad^{}", t + 1),
            Table {
                rows: ids(ar, &order),
                cols: ids(ar, &order),
                values: order
                    .iter()
                    .map(|&x| order.iter().map(|&y| power[x][y]).collect())
                    .collect(),
            },
        );
    }
    verdict.stabilized_at = table.stabilized_at;
    verdict.diameter = Some(diameter);
    verdict
        .conditions
        .insert("radical_reaches_zero".into(), table.reaches_zero);
    let last = table.powers.last().expect("at least one power");
    let witness = if table.reaches_zero {
        None
    } else {
        order.iter().find_map(|&x| {
            order
                .iter()
                .find(|&&y| last[x][y] > 0)
                .map(|&y| Witness::RadicalNonzero {
                    source: ar.nodes[x].id.clone(),
                    target: ar.nodes[y].id.clone(),
                    power: table.powers.len(),
                    dim: last[x][y],
                })
        })
    };
    let certificate = Witness::RadicalCertificate {
        stabilized_at: table.stabilized_at,
        diameter,
    };
    Ok(verdict.decide(
        ar.complete,
        witness,
        if ar.complete { certificate } else { window_witness(ar) },
    ))
}

/// Recomputes the evidence behind a `not_standard` witness; `true` when it holds.
pub fn witness_holds(ar: &ARQuiver, witness: &Witness) -> Result<bool, StandardError> {
    let find = |id: &str| {
        ar.node_index(id)
            .ok_or_else(|| StandardError::Mesh(MeshError::UnknownVertex(id.into())))
    };
    match witness {
        Witness::NonBrick { node, .. } => {
            let r = end_report(&ar.nodes[find(node)?].rep)?;
            Ok(!r.is_brick || r.auto_field_dim != Some(1))
        }
        Witness::HomMismatch { source, target, .. } => {
            let (x, y) = (find(source)?, find(target)?);
            let tq = TranslationQuiver::from_ar(ar)?;
            let mesh = crate::mesh::mesh_hom_dim(&tq, x, y);
            Ok(mesh != hom_dim(&ar.nodes[x].rep, &ar.nodes[y].rep)?)
        }
        Witness::NonzeroHom {
            source, target, dim, ..
        } => {
            let (x, y) = (find(source)?, find(target)?);
            let d = hom_dim(&ar.nodes[x].rep, &ar.nodes[y].rep)?;
            Ok(d > 0 && d == *dim)
        }
        Witness::MeshComposite { node } => Ok(mesh_composite(ar, find(node)?).is_some_and(|c| !c.is_zero())),
        Witness::NotFull { source, target, .. } => {
            let (x, y) = (find(source)?, find(target)?);
            let tq = TranslationQuiver::from_ar(ar)?;
            Ok(realized_span_row(ar, &tq, x)[y] != hom_dim(&ar.nodes[x].rep, &ar.nodes[y].rep)?)
        }
        Witness::RadicalNonzero {
            source, target, power, ..
        } => {
            let (x, y) = (find(source)?, find(target)?);
            Ok(rad_power_dims(&ar.reps(), *power)?.dim(*power, x, y) > 0)
        }
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests;
