use arknit::artheory::ArError;
use arknit::exactlin::LinAlgError;
use arknit::knit::KnitError;
use arknit::mesh::MeshError;
use arknit::quiver::QuiverError;
use arknit::rep::RepError;
use arknit::standardcheck::StandardError;
use thiserror::Error;

/// Exit code 1 for refusals on well-formed input, 2 for malformed input.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Malformed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Refused(_) => 1,
            CliError::Malformed(_) => 2,
        }
    }

    pub fn malformed(msg: impl Into<String>) -> CliError {
        CliError::Malformed(msg.into())
    }

    pub fn refused(msg: impl Into<String>) -> CliError {
        CliError::Refused(msg.into())
    }
}

fn quiver_refuses(e: &QuiverError) -> bool {
    matches!(e, QuiverError::Cyclic(_) | QuiverError::NotDynkin(_))
}

fn rep_refuses(e: &RepError) -> bool {
    match e {
        RepError::Quiver(q) => quiver_refuses(q),
        RepError::RadicalNeedsCharZero(_) => true,
        _ => false,
    }
}

fn ar_refuses(e: &ArError) -> bool {
    match e {
        ArError::Rep(r) => rep_refuses(r),
        _ => true,
    }
}

fn classify(refuse: bool, msg: String) -> CliError {
    if refuse {
        CliError::Refused(msg)
    } else {
        CliError::Malformed(msg)
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        classify(quiver_refuses(&e), e.to_string())
    }
}

impl From<LinAlgError> for CliError {
    fn from(e: LinAlgError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        classify(rep_refuses(&e), e.to_string())
    }
}

impl From<ArError> for CliError {
    fn from(e: ArError) -> Self {
        classify(ar_refuses(&e), e.to_string())
    }
}

impl From<KnitError> for CliError {
    fn from(e: KnitError) -> Self {
        let refuse = match &e {
            KnitError::Ar(a) => ar_refuses(a),
            KnitError::ZeroBudget | KnitError::Invalid(_) => false,
            _ => true,
        };
        classify(refuse, e.to_string())
    }
}

impl From<MeshError> for CliError {
    fn from(e: MeshError) -> Self {
        classify(matches!(e, MeshError::Cycle(_)), e.to_string())
    }
}

impl From<StandardError> for CliError {
    fn from(e: StandardError) -> Self {
        match e {
            StandardError::Rep(r) => r.into(),
            StandardError::Mesh(m) => m.into(),
            StandardError::BadMaps(_) => CliError::Malformed(e.to_string()),
            _ => CliError::Refused(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Malformed(e.to_string())
    }
}
