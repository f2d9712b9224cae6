//! Plain-text coefficient list:
//!
//! ```text
//! QUBO <num_vars> <offset> <penalty>
//! L <index> <coeff>
//! Q <i> <j> <coeff>
//! ```
//!
//! Floats are written in Rust's shortest round-trip form. Blank lines and
//! lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use super::{QuboError, QuboModel};

pub fn write_model(model: &QuboModel) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "QUBO {} {} {}",
        model.num_vars, model.offset, model.penalty
    );
    for (a, c) in &model.linear {
        let _ = writeln!(s, "L {a} {c}");
    }
    for ((a, b), c) in &model.quadratic {
        let _ = writeln!(s, "Q {a} {b} {c}");
    }
    s
}

fn format_err(line: usize, reason: impl Into<String>) -> QuboError {
    QuboError::Format {
        line,
        reason: reason.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, QuboError> {
    let tok = tok.ok_or_else(|| format_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| format_err(line, format!("cannot parse {what} `{tok}`")))
}

pub fn read_model(text: &str) -> Result<QuboModel, QuboError> {
    let mut model: Option<QuboModel> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        match (tag, model.as_mut()) {
            ("QUBO", None) => {
                let n: usize = field(toks.next(), line, "variable count")?;
                let offset: f64 = field(toks.next(), line, "offset")?;
                let penalty: f64 = field(toks.next(), line, "penalty")?;
                let mut m = QuboModel::new(n, penalty)?;
                m.offset = offset;
                model = Some(m);
            }
            ("QUBO", Some(_)) => return Err(format_err(line, "duplicate header")),
            (_, None) => return Err(format_err(line, "expected `QUBO` header")),
            ("L", Some(m)) => {
                let a = field(toks.next(), line, "index")?;
                let c = field(toks.next(), line, "coefficient")?;
                m.add_linear(a, c)?;
            }
            ("Q", Some(m)) => {
                let a: usize = field(toks.next(), line, "index")?;
                let b: usize = field(toks.next(), line, "index")?;
                if a == b {
                    return Err(format_err(line, "quadratic term needs distinct indices"));
                }
                let c = field(toks.next(), line, "coefficient")?;
                m.add_quadratic(a, b, c)?;
            }
            (other, Some(_)) => return Err(format_err(line, format!("unknown record `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(format_err(line, "trailing tokens"));
        }
    }
    model.ok_or_else(|| format_err(0, "empty model file"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::CvrpInstance;
    use crate::qubo::{build_qubo, QuboOptions};

    #[test]
    fn built_model_round_trips() {
        let inst = CvrpInstance::euclidean(
            "tri",
            2,
            1,
            vec![(0.0, 0.0), (0.0, 3.5), (4.25, 0.1)],
            vec![0, 1, 1],
        )
        .unwrap();
        let mut m = build_qubo(&inst, &QuboOptions::default()).unwrap();
        let text = write_model(&m);
        assert!(text.starts_with("QUBO 8 "));
        m.var_map = None;
        assert_eq!(read_model(&text).unwrap(), m);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            read_model(""),
            Err(QuboError::Format { line: 0, .. })
        ));
        assert!(matches!(
            read_model("L 0 1\n"),
            Err(QuboError::Format { line: 1, .. })
        ));
        assert!(matches!(
            read_model("QUBO 2 0 1\nQ 0 0 1\n"),
            Err(QuboError::Format { line: 2, .. })
        ));
        assert!(matches!(
            read_model("QUBO 2 0 1\nL 5 1\n"),
            Err(QuboError::IndexOutOfRange { index: 5, .. })
        ));
        assert!(matches!(
            read_model("QUBO 2 0 0\n"),
            Err(QuboError::InvalidPenalty(_))
        ));
    }

    #[test]
    fn comments_are_skipped() {
        let m = read_model("# exported\nQUBO 1 0.5 2\n\nL 0 -1\n").unwrap();
        assert_eq!(m.offset, 0.5);
        assert_eq!(m.linear[&0], -1.0);
    }
}
