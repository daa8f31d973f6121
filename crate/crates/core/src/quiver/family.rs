use super::{Quiver, QuiverError};

/// Named quiver families. Orientation words carry one character per edge:
/// `>` orients the edge from its lower-numbered end, `<` the other way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `1 → 2 → … → n`.
    LinearA(usize),
    /// `1 → 2 ← 3 → 4 …`.
    AlternatingA(usize),
    /// Fork `1, 2 - 3`, then the chain `3 - 4 - … - n`.
    D {
        n: usize,
        orientation: Option<String>,
    },
    /// Chain `1 - … - n−1` with vertex `n` attached to `3`.
    E {
        n: usize,
        orientation: Option<String>,
    },
    Kronecker,
    /// Finite piece of `A_∞` on vertices `1..=n`.
    TruncAInf {
        n: usize,
        orientation: Option<String>,
    },
    /// Finite piece of `A_∞^∞`, vertices labelled symmetrically around `0`.
    TruncABiinf {
        n: usize,
        orientation: Option<String>,
    },
    /// Finite piece of `D_∞` (fork at the start).
    TruncDInf {
        n: usize,
        orientation: Option<String>,
    },
}

fn bad(msg: impl Into<String>) -> QuiverError {
    QuiverError::BadFamily(msg.into())
}

impl Family {
    /// Parses `family:<name>[:<n>[:<orientation>]]`.
    pub fn parse(s: &str) -> Result<Family, QuiverError> {
        let rest = s
            .strip_prefix("family:")
            .ok_or_else(|| bad(format!("{s:?} lacks the family: prefix")))?;
        let mut parts = rest.split(':');
        let name = parts.next().unwrap_or_default();
        let n = parts
            .next()
            .map(|x| x.parse::<usize>().map_err(|_| bad(format!("bad size {x:?}"))))
            .transpose()?;
        let orientation = parts.next().map(str::to_string);
        if parts.next().is_some() {
            return Err(bad("too many family parameters"));
        }
        let need = |n: Option<usize>| n.ok_or_else(|| bad(format!("family {name} needs a size")));
        Ok(match name {
            "linear_A" => Family::LinearA(need(n)?),
            "alternating_A" => Family::AlternatingA(need(n)?),
            "D" => Family::D {
                n: need(n)?,
                orientation,
            },
            "E" => Family::E {
                n: need(n)?,
                orientation,
            },
            "kronecker" => Family::Kronecker,
            "trunc_A_inf" => Family::TruncAInf {
                n: need(n)?,
                orientation,
            },
            "trunc_A_biinf" => Family::TruncABiinf {
                n: need(n)?,
                orientation,
            },
            "trunc_D_inf" => Family::TruncDInf {
                n: need(n)?,
                orientation,
            },
            other => return Err(bad(format!("unknown family {other:?}"))),
        })
    }

    pub fn build(&self) -> Result<Quiver, QuiverError> {
        match self {
            Family::LinearA(n) => {
                positive(*n)?;
                line(&labels(1, *n), &">".repeat(n - 1))
            }
            Family::AlternatingA(n) => {
                positive(*n)?;
                let word: String = (0..n - 1).map(|i| if i % 2 == 0 { '>' } else { '<' }).collect();
                line(&labels(1, *n), &word)
            }
            Family::D { n, orientation } | Family::TruncDInf { n, orientation } => {
                if *n < 4 {
                    return Err(bad(format!("D needs n >= 4, got {n}")));
                }
                let verts = labels(1, *n);
                let mut edges = vec![(0, 2), (1, 2)];
                edges.extend((2..n - 1).map(|i| (i, i + 1)));
                oriented(&verts, &edges, orientation.as_deref())
            }
            Family::E { n, orientation } => {
                if !(6..=8).contains(n) {
                    return Err(bad(format!("E({n}) is not a Dynkin diagram")));
                }
                let verts = labels(1, *n);
                let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
                edges.push((2, n - 1));
                oriented(&verts, &edges, orientation.as_deref())
            }
            Family::Kronecker => Quiver::from_edges(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]),
            Family::TruncAInf { n, orientation } => {
                positive(*n)?;
                let word = orientation.clone().unwrap_or_else(|| ">".repeat(n - 1));
                line(&labels(1, *n), &word)
            }
            Family::TruncABiinf { n, orientation } => {
                positive(*n)?;
                let lo = -((*n / 2) as i64);
                let verts: Vec<String> = (0..*n as i64).map(|i| (lo + i).to_string()).collect();
                let word = orientation.clone().unwrap_or_else(|| ">".repeat(n - 1));
                line(&verts, &word)
            }
        }
    }
}

fn positive(n: usize) -> Result<(), QuiverError> {
    if n == 0 {
        Err(bad("size must be positive"))
    } else {
        Ok(())
    }
}

fn labels(from: usize, n: usize) -> Vec<String> {
    (from..from + n).map(|i| i.to_string()).collect()
}

fn line(verts: &[String], word: &str) -> Result<Quiver, QuiverError> {
    let edges: Vec<(usize, usize)> = (0..verts.len().saturating_sub(1)).map(|i| (i, i + 1)).collect();
    oriented(verts, &edges, Some(word))
}

fn oriented(verts: &[String], edges: &[(usize, usize)], word: Option<&str>) -> Result<Quiver, QuiverError> {
    let word: Vec<char> = match word {
        Some(w) => w.chars().collect(),
        None => vec!['>'; edges.len()],
    };
    if word.len() != edges.len() {
        return Err(bad(format!(
            "orientation word has {} letters for {} edges",
            word.len(),
            edges.len()
        )));
    }
    let mut arrows = Vec::with_capacity(edges.len());
    for (k, (&(u, v), c)) in edges.iter().zip(&word).enumerate() {
        let (s, t) = match c {
            '>' => (u, v),
            '<' => (v, u),
            other => return Err(bad(format!("orientation letter {other:?}"))),
        };
        arrows.push((format!("a{}", k + 1), verts[s].clone(), verts[t].clone()));
    }
    Quiver::new(verts.to_vec(), arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_a3() {
        let q = Family::LinearA(3).build().unwrap();
        assert_eq!(q.vertices(), ["1", "2", "3"]);
        let arrows: Vec<_> = q
            .arrows()
            .iter()
            .map(|a| (q.vertex_id(a.src), q.vertex_id(a.tgt)))
            .collect();
        assert_eq!(arrows, vec![("1", "2"), ("2", "3")]);
    }

    #[test]
    fn kronecker_and_d4() {
        let k = Family::Kronecker.build().unwrap();
        assert_eq!((k.vertex_count(), k.arrows().len()), (2, 2));
        let d4 = Family::parse("family:D:4:><>").unwrap().build().unwrap();
        assert_eq!(d4.vertex_count(), 4);
        let hub = d4.vertex_index("3").unwrap();
        assert_eq!(d4.arrows().iter().filter(|a| a.src == hub || a.tgt == hub).count(), 3);
        assert_eq!(d4.in_arrows(hub).count(), 1);
    }

    #[test]
    fn invalid_parameters() {
        assert!(Family::E {
            n: 9,
            orientation: None
        }
        .build()
        .is_err());
        assert!(Family::D {
            n: 3,
            orientation: None
        }
        .build()
        .is_err());
        assert!(Family::parse("family:D:5:<>").unwrap().build().is_err());
        assert!(Family::parse("family:Z:3").is_err());
        assert!(Family::parse("family:linear_A").is_err());
    }

    #[test]
    fn biinfinite_labels() {
        let q = Family::parse("family:trunc_A_biinf:10:><<>><>><")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(q.vertices().first().unwrap(), "-5");
        assert_eq!(q.vertices().last().unwrap(), "4");
        assert!(q.is_acyclic() && q.is_connected());
    }

    #[test]
    fn alternating() {
        let q = Family::AlternatingA(4).build().unwrap();
        let sinks = (0..4).filter(|&v| q.out_arrows(v).count() == 0).count();
        assert_eq!(sinks, 2);
    }
}
