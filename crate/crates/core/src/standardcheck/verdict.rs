use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Direct,
    Sections,
    Proper,
    Wing,
    Module,
    Genstd,
}

impl Criterion {
    pub const ALL: [Criterion; 6] = [
        Criterion::Direct,
        Criterion::Sections,
        Criterion::Proper,
        Criterion::Wing,
        Criterion::Module,
        Criterion::Genstd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Direct => "direct",
            Criterion::Sections => "sections",
            Criterion::Proper => "proper",
            Criterion::Wing => "wing",
            Criterion::Module => "module",
            Criterion::Genstd => "genstd",
        }
    }

    /// Whether the criterion is evaluated against a chosen section.
    pub fn needs_section(self) -> bool {
        matches!(self, Criterion::Sections | Criterion::Proper | Criterion::Module)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown criterion {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Standard,
    NotStandard,
    WindowInconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub values: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NonBrick {
        node: String,
        end_dim: usize,
        auto_field_dim: Option<usize>,
    },
    HomMismatch {
        source: String,
        target: String,
        mesh: usize,
        rep: usize,
    },
    MeshComposite {
        node: String,
    },
    NotFull {
        source: String,
        target: String,
        spanned: usize,
        hom: usize,
    },
    NonzeroHom {
        condition: String,
        source: String,
        target: String,
        dim: usize,
    },
    RadicalNonzero {
        source: String,
        target: String,
        power: usize,
        dim: usize,
    },
    Certificate {
        pairs_checked: usize,
        meshes_checked: usize,
    },
    SectionCertificate {
        delta_plus: usize,
        delta_minus: usize,
    },
    WingCertificate {
        rank: usize,
        quasi_simples: Vec<String>,
    },
    RadicalCertificate {
        stabilized_at: Option<usize>,
        diameter: usize,
    },
    /// Names the part of the component the data does not cover.
    Window {
        untested: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub v: u32,
    pub criterion: Criterion,
    pub result: Outcome,
    pub witness: Witness,
    #[serde(default)]
    pub conditions: BTreeMap<String, bool>,
    #[serde(default)]
    pub tables: BTreeMap<String, Table>,
    /// Section members, or the quasi-simples for the wing criterion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilized_at: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter: Option<usize>,
}

impl Verdict {
    pub(crate) fn new(criterion: Criterion) -> Verdict {
        Verdict {
            v: 1,
            criterion,
            result: Outcome::WindowInconclusive,
            witness: Witness::Window { untested: Vec::new() },
            conditions: BTreeMap::new(),
            tables: BTreeMap::new(),
            section: None,
            stabilized_at: None,
            diameter: None,
        }
    }

    /// A failure witness decides `not_standard`; otherwise `standard` on
    /// complete data and `window_inconclusive` on windows.
    pub(crate) fn decide(mut self, complete: bool, failure: Option<Witness>, otherwise: Witness) -> Verdict {
        (self.result, self.witness) = match failure {
            Some(w) => (Outcome::NotStandard, w),
            None if complete => (Outcome::Standard, otherwise),
            None => (Outcome::WindowInconclusive, otherwise),
        };
        self
    }

    pub fn is_standard(&self) -> bool {
        self.result == Outcome::Standard
    }

    pub fn is_not_standard(&self) -> bool {
        self.result == Outcome::NotStandard
    }
}
