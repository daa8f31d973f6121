use std::collections::BTreeMap;
use std::path::Path;

use arknit::artheory::{tau as tau_of, tau_inverse};
use arknit::exactlin::Field;
use arknit::knit::{knit_full_dynkin, knit_preprojective, to_dot, ARQuiver};
use arknit::mesh::{find_sections_capped, mesh_hom_dim, mesh_hom_dim_fast, SectionView, ShapeTag, TranslationQuiver};
use arknit::quiver::{DynkinType, ValidationReport, Walk};
use arknit::rep::{end_report, ext1_dim, hom_basis, rad_power_dims, MorphismJson, RepJson};
use arknit::standardcheck::{
    check_generalized_standard, check_module_criterion, check_standard_direct, check_theorem_proper,
    check_theorem_sections, check_wing_criterion, component_diameter, rep_hom_table, Criterion, Table, Verdict,
};
use serde::Serialize;

use crate::error::CliError;
use crate::inputs::{emit, load_ar, load_quiver, load_rep, load_tq};

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, &text)
}

#[derive(Serialize)]
struct ValidateOut {
    v: u32,
    #[serde(flatten)]
    report: ValidationReport,
    dynkin: Option<DynkinType>,
}

pub fn validate(quiver: &str, out: Option<&Path>) -> Result<(), CliError> {
    let q = load_quiver(quiver)?;
    let report = q.validate();
    let acyclic = report.acyclic;
    let cycle = report.cycle.clone();
    emit_json(
        out,
        &ValidateOut {
            v: 1,
            dynkin: q.dynkin_type().ok(),
            report,
        },
    )?;
    if acyclic {
        Ok(())
    } else {
        Err(CliError::refused(format!(
            "oriented cycle through {:?}",
            cycle.unwrap_or_default()
        )))
    }
}

pub fn knit(quiver: &str, field: Field, budget: usize, full: bool, out: Option<&Path>) -> Result<(), CliError> {
    let q = load_quiver(quiver)?;
    let ar = if full {
        knit_full_dynkin(&q, field)?
    } else {
        knit_preprojective(&q, field, budget)?
    };
    emit_json(out, &ar.to_json())
}

#[derive(Serialize)]
struct HomOut {
    v: u32,
    dim: usize,
    basis: Vec<MorphismJson>,
}

pub fn hom(from: &str, to: &str, quiver: Option<&str>, field: Field, out: Option<&Path>) -> Result<(), CliError> {
    let q = quiver.map(load_quiver).transpose()?;
    let m = load_rep(from, q.as_ref(), field)?;
    let n = load_rep(to, q.as_ref().or(Some(m.quiver())), field)?;
    let h = hom_basis(&m, &n)?;
    emit_json(
        out,
        &HomOut {
            v: 1,
            dim: h.dim(),
            basis: h.basis.iter().map(|f| f.to_json(m.quiver())).collect(),
        },
    )
}

pub fn tau(rep: &str, quiver: Option<&str>, field: Field, inverse: bool, out: Option<&Path>) -> Result<(), CliError> {
    let q = quiver.map(load_quiver).transpose()?;
    let m = load_rep(rep, q.as_ref(), field)?;
    let t = if inverse { tau_inverse(&m)? } else { tau_of(&m)? };
    emit_json(out, &t.to_json(true))
}

#[derive(Serialize)]
struct DimOut {
    v: u32,
    dim: usize,
}

pub fn ext1(from: &str, to: &str, quiver: Option<&str>, field: Field, out: Option<&Path>) -> Result<(), CliError> {
    let q = quiver.map(load_quiver).transpose()?;
    let m = load_rep(from, q.as_ref(), field)?;
    let n = load_rep(to, q.as_ref().or(Some(m.quiver())), field)?;
    emit_json(
        out,
        &DimOut {
            v: 1,
            dim: ext1_dim(&m, &n)?,
        },
    )
}

#[derive(Serialize)]
struct MeshHomOut {
    v: u32,
    from: String,
    to: String,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    clamped: Option<bool>,
}

pub fn mesh_hom(tq: &str, from: &str, to: &str, fast: bool, out: Option<&Path>) -> Result<(), CliError> {
    let tq = load_tq(tq)?;
    let (x, y) = (tq.vertex_index(from)?, tq.vertex_index(to)?);
    let (dim, clamped) = if fast {
        let f = mesh_hom_dim_fast(&tq, x, y);
        (f.value, Some(f.clamped))
    } else {
        (mesh_hom_dim(&tq, x, y), None)
    };
    emit_json(
        out,
        &MeshHomOut {
            v: 1,
            from: from.to_string(),
            to: to.to_string(),
            dim,
            clamped,
        },
    )
}

#[derive(Serialize)]
struct SectionOut {
    members: Vec<String>,
    delta_plus: Vec<String>,
    delta_minus: Vec<String>,
    /// Vertex to `(X, n)` with the vertex equal to `τⁿX`.
    chart: BTreeMap<String, (String, i64)>,
    no_left_infinite_path: bool,
    no_right_infinite_path: bool,
}

fn section_out(tq: &TranslationQuiver, s: &SectionView) -> SectionOut {
    let names = |vs: &[usize]| vs.iter().map(|&v| tq.vertex_id(v).to_string()).collect();
    SectionOut {
        members: names(&s.members),
        delta_plus: names(&s.delta_plus),
        delta_minus: names(&s.delta_minus),
        chart: s
            .chart
            .iter()
            .enumerate()
            .map(|(v, &(x, n))| (tq.vertex_id(v).to_string(), (tq.vertex_id(x).to_string(), n)))
            .collect(),
        no_left_infinite_path: s.no_left_infinite_path,
        no_right_infinite_path: s.no_right_infinite_path,
    }
}

#[derive(Serialize)]
struct SectionsOut {
    v: u32,
    truncated: bool,
    count: usize,
    sections: Vec<SectionOut>,
}

pub fn sections(tq: &str, limit: usize, out: Option<&Path>) -> Result<(), CliError> {
    let tq = load_tq(tq)?;
    let search = find_sections_capped(&tq, limit);
    emit_json(
        out,
        &SectionsOut {
            v: 1,
            truncated: search.truncated,
            count: search.sections.len(),
            sections: search.sections.iter().map(|s| section_out(&tq, s)).collect(),
        },
    )
}

fn pick_section(ar: &ARQuiver, section: Option<&str>) -> Result<SectionView, CliError> {
    let tq = TranslationQuiver::from_ar(ar)?;
    match section {
        Some(list) => {
            let ids: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            SectionView::from_ids(&tq, &ids)?.ok_or_else(|| CliError::refused(format!("{list:?} is not a section")))
        }
        None => find_sections_capped(&tq, 1)
            .sections
            .into_iter()
            .next()
            .ok_or_else(|| CliError::refused("component has no section")),
    }
}

fn parse_shape(shape: Option<&str>) -> Result<Option<ShapeTag>, CliError> {
    shape
        .map(|s| serde_json::from_value(serde_json::Value::String(s.to_string())))
        .transpose()
        .map_err(|_| CliError::malformed(format!("unknown shape {:?}", shape.unwrap_or_default())))
}

fn run_check(
    ar: &ARQuiver,
    criterion: Criterion,
    section: Option<&str>,
    shape: Option<ShapeTag>,
) -> Result<Verdict, CliError> {
    Ok(match criterion {
        Criterion::Direct => check_standard_direct(ar)?,
        Criterion::Genstd => check_generalized_standard(ar)?,
        Criterion::Wing => check_wing_criterion(ar, shape)?,
        Criterion::Sections => check_theorem_sections(ar, &pick_section(ar, section)?)?,
        Criterion::Proper => check_theorem_proper(ar, &pick_section(ar, section)?)?,
        Criterion::Module => check_module_criterion(ar, &pick_section(ar, section)?)?,
    })
}

pub fn check(
    ar: &str,
    criterion: Criterion,
    section: Option<&str>,
    shape: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let ar = load_ar(ar)?;
    let verdict = run_check(&ar, criterion, section, parse_shape(shape)?)?;
    emit_json(out, &verdict)
}

#[derive(Serialize)]
struct NodeRow {
    id: String,
    dims: Vec<usize>,
    is_projective: bool,
    is_injective: bool,
    level: usize,
    tau: Option<String>,
    end_dim: usize,
}

#[derive(Serialize)]
struct ArrowRow {
    source: String,
    target: String,
    multiplicity: usize,
    valuation: (usize, usize),
}

#[derive(Serialize)]
struct RadOut {
    stabilized_at: Option<usize>,
    reaches_zero: bool,
    diameter: usize,
    powers: Vec<Table>,
}

#[derive(Serialize)]
struct ReportOut {
    v: u32,
    field: Field,
    complete: bool,
    nodes: Vec<NodeRow>,
    arrows: Vec<ArrowRow>,
    hom: Table,
    rad: RadOut,
    verdicts: Vec<Verdict>,
    /// Criteria that refused to run, with the reason.
    refusals: BTreeMap<String, String>,
}

pub fn report(ar: &str, checks: &str, section: Option<&str>, out: Option<&Path>) -> Result<(), CliError> {
    let ar = load_ar(ar)?;
    let criteria = checks
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Criterion>().map_err(CliError::malformed))
        .collect::<Result<Vec<_>, _>>()?;
    let ids: Vec<String> = ar.nodes.iter().map(|n| n.id.clone()).collect();
    let nodes = ar
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            Ok(NodeRow {
                id: n.id.clone(),
                dims: n.dims().0.clone(),
                is_projective: n.is_projective,
                is_injective: n.is_injective,
                level: n.level,
                tau: ar.tau(i).map(|t| ids[t].clone()),
                end_dim: end_report(&n.rep)?.end_dim,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let arrows = ar
        .arrows
        .iter()
        .map(|a| ArrowRow {
            source: ids[a.source].clone(),
            target: ids[a.target].clone(),
            multiplicity: a.multiplicity,
            valuation: a.valuation,
        })
        .collect();
    let table = |values: Vec<Vec<usize>>| Table {
        rows: ids.clone(),
        cols: ids.clone(),
        values,
    };
    let hom = table(rep_hom_table(&ar)?);
    let diameter = component_diameter(&TranslationQuiver::from_ar(&ar)?);
    let rad_table = rad_power_dims(&ar.reps(), diameter + 2)?;
    let rad = RadOut {
        stabilized_at: rad_table.stabilized_at,
        reaches_zero: rad_table.reaches_zero,
        diameter,
        powers: rad_table.powers.into_iter().map(table).collect(),
    };
    let mut verdicts = Vec::new();
    let mut refusals = BTreeMap::new();
    for c in criteria {
        match run_check(&ar, c, section, None) {
            Ok(v) => verdicts.push(v),
            Err(CliError::Refused(msg)) => {
                refusals.insert(c.to_string(), msg);
            }
            Err(e) => return Err(e),
        }
    }
    emit_json(
        out,
        &ReportOut {
            v: 1,
            field: ar.field,
            complete: ar.complete,
            nodes,
            arrows,
            hom,
            rad,
            verdicts,
            refusals,
        },
    )
}

pub fn dot(ar: &str, out: Option<&Path>) -> Result<(), CliError> {
    emit(out, &to_dot(&load_ar(ar)?))
}

#[derive(Serialize)]
struct StringOut {
    v: u32,
    walk: String,
    end_dim: usize,
    rep: RepJson,
}

pub fn string(
    quiver: &str,
    walk: Option<&str>,
    random: Option<usize>,
    field: Field,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let q = load_quiver(quiver)?;
    let w = match (walk, random) {
        (Some(w), _) => Walk::parse(&q, w)?,
        (None, Some(len)) => Walk::random(&q, len, seed)?,
        (None, None) => return Err(CliError::malformed("string needs --walk or --random")),
    };
    let rep = arknit::rep::string_rep(&q, field, &w)?;
    emit_json(
        out,
        &StringOut {
            v: 1,
            walk: w.display(&q),
            end_dim: end_report(&rep)?.end_dim,
            rep: rep.to_json(true),
        },
    )
}
