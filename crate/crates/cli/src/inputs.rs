use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use arknit::exactlin::Field;
use arknit::knit::ARQuiver;
use arknit::mesh::TranslationQuiver;
use arknit::quiver::{Quiver, Walk};
use arknit::rep::Rep;

use crate::error::CliError;

/// `Q`, `rational`, `F5`, `prime:5` or a bare prime.
pub fn parse_field(s: &str) -> Result<Field, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") || t.eq_ignore_ascii_case("rationals") {
        return Ok(Field::Rational);
    }
    let digits = t
        .strip_prefix("prime:")
        .or_else(|| t.strip_prefix('F'))
        .or_else(|| t.strip_prefix('f'))
        .unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("unknown field {s:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::malformed(format!("{path}: {e}")))
}

/// A `family:` shorthand or a path to quiver JSON.
pub fn load_quiver(arg: &str) -> Result<Arc<Quiver>, CliError> {
    let text = if arg.trim_start().starts_with("family:") {
        arg.to_string()
    } else {
        read(arg)?
    };
    Ok(Arc::new(Quiver::parse(&text)?))
}

fn need_quiver<'a>(quiver: Option<&'a Arc<Quiver>>, arg: &str) -> Result<&'a Arc<Quiver>, CliError> {
    quiver.ok_or_else(|| CliError::malformed(format!("{arg:?} needs --quiver")))
}

/// `proj:x`, `inj:x`, `simple:x`, `string:<walk>` (all against `--quiver`) or
/// a path to representation JSON.
pub fn load_rep(arg: &str, quiver: Option<&Arc<Quiver>>, field: Field) -> Result<Rep, CliError> {
    if let Some((kind, rest)) = arg.split_once(':') {
        if matches!(kind, "proj" | "inj" | "simple" | "string") {
            let q = need_quiver(quiver, arg)?.clone();
            return Ok(match kind {
                "proj" => Rep::projective(q.clone(), field, q.vertex_index(rest)?)?,
                "inj" => Rep::injective(q.clone(), field, q.vertex_index(rest)?)?,
                "simple" => Rep::simple(q.clone(), field, q.vertex_index(rest)?),
                _ => Rep::string(q.clone(), field, &Walk::parse(&q, rest)?)?,
            });
        }
    }
    Ok(Rep::parse_json(&read(arg)?, quiver.cloned(), field)?)
}

pub fn load_ar(path: &str) -> Result<ARQuiver, CliError> {
    Ok(ARQuiver::parse_json(&read(path)?)?)
}

/// Translation quiver JSON or AR quiver JSON.
pub fn load_tq(path: &str) -> Result<TranslationQuiver, CliError> {
    Ok(TranslationQuiver::parse_json(&read(path)?)?)
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::malformed(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}
