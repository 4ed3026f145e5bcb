//! The plain-text table format for finite hoops.
//!
//! ```text
//! # Goedel chain
//! size 3
//! elements 0 m 1
//! one 1
//! zero 0
//! mul
//! 0 0 0
//! 0 m m
//! 0 m 1
//! imp
//! 1 1 1
//! 0 1 1
//! 0 m 1
//! ```
//!
//! `#` starts a comment running to the end of the line. Header lines may come
//! in any order before the blocks; `zero` is optional. Each block holds one
//! row per element, in the order of `elements`, with entries named by label.

use std::fmt::Write as _;

use thiserror::Error;

use crate::hoop::{BuildError, Elem, FiniteHoop, OpTable};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    /// Well-formed tables that fail certification; `labels` names the
    /// element indices in the error.
    #[error("tables are not a hoop: {source}")]
    Build {
        source: BuildError,
        labels: Vec<String>,
    },
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

/// Non-empty lines as token lists, comments removed.
fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices().chain([(content.len(), ' ')]) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        toks.push(Token {
                            text: &content[s..pos],
                            line: i + 1,
                            col: content[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!toks.is_empty()).then_some(toks)
        })
        .collect()
}

/// Parse and certify a hoop file.
pub fn parse_hoop_file(text: &str) -> Result<FiniteHoop, FormatError> {
    let lines = tokenize(text);
    let mut size: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut one: Option<&Token> = None;
    let mut zero: Option<&Token> = None;
    let mut blocks: [Option<Vec<&Vec<Token>>>; 2] = [None, None];
    let end_line = text.lines().count().max(1);

    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        let key = &line[0];
        let args = &line[1..];
        let expect_args = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                let at = args.get(k).unwrap_or(key);
                Err(syntax(
                    at.line,
                    at.col,
                    format!("`{}` takes {k} argument(s)", key.text),
                ))
            }
        };
        let dup = |seen: bool| {
            if seen {
                Err(syntax(
                    key.line,
                    key.col,
                    format!("duplicate `{}`", key.text),
                ))
            } else {
                Ok(())
            }
        };
        match key.text {
            "size" => {
                dup(size.is_some())?;
                expect_args(1)?;
                let n: usize = args[0]
                    .text
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| {
                        syntax(args[0].line, args[0].col, "size must be a positive integer")
                    })?;
                size = Some(n);
            }
            "elements" => {
                dup(labels.is_some())?;
                let mut ls: Vec<String> = Vec::new();
                for t in args {
                    if ls.iter().any(|l| l == t.text) {
                        return Err(syntax(
                            t.line,
                            t.col,
                            format!("duplicate label `{}`", t.text),
                        ));
                    }
                    ls.push(t.text.to_string());
                }
                if ls.is_empty() {
                    return Err(syntax(
                        key.line,
                        key.col,
                        "`elements` needs at least one label",
                    ));
                }
                labels = Some(ls);
            }
            "one" => {
                dup(one.is_some())?;
                expect_args(1)?;
                one = Some(&args[0]);
            }
            "zero" => {
                dup(zero.is_some())?;
                expect_args(1)?;
                zero = Some(&args[0]);
            }
            "mul" | "imp" => {
                let b = usize::from(key.text == "imp");
                dup(blocks[b].is_some())?;
                expect_args(0)?;
                let n = size
                    .ok_or_else(|| syntax(key.line, key.col, "`size` must precede the tables"))?;
                let rows: Vec<&Vec<Token>> = lines[i + 1..].iter().take(n).collect();
                if rows.len() < n {
                    return Err(syntax(
                        end_line,
                        1,
                        format!(
                            "`{}` block has {} row(s), expected {n}",
                            key.text,
                            rows.len()
                        ),
                    ));
                }
                blocks[b] = Some(rows);
                i += n;
            }
            other => {
                return Err(syntax(
                    key.line,
                    key.col,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
        i += 1;
    }

    let missing = |what: &str| syntax(end_line, 1, format!("missing `{what}`"));
    let n = size.ok_or_else(|| missing("size"))?;
    let labels = labels.ok_or_else(|| missing("elements"))?;
    if labels.len() != n {
        return Err(syntax(
            1,
            1,
            format!("{} labels declared for size {n}", labels.len()),
        ));
    }
    let lookup = |t: &Token| -> Result<Elem, FormatError> {
        labels
            .iter()
            .position(|l| l == t.text)
            .ok_or_else(|| syntax(t.line, t.col, format!("undeclared label `{}`", t.text)))
    };
    let one = lookup(one.ok_or_else(|| missing("one"))?)?;
    let zero = zero.map(lookup).transpose()?;
    let mut tables = Vec::new();
    for (b, name) in ["mul", "imp"].iter().enumerate() {
        let rows = blocks[b].take().ok_or_else(|| missing(name))?;
        let mut parsed = Vec::with_capacity(n);
        for row in rows {
            if row.len() != n {
                let at = row.get(n).unwrap_or(&row[0]);
                return Err(syntax(
                    at.line,
                    at.col,
                    format!("row has {} entries, expected {n}", row.len()),
                ));
            }
            parsed.push(row.iter().map(lookup).collect::<Result<Vec<_>, _>>()?);
        }
        tables.push(
            OpTable::from_rows(name, n, &parsed).map_err(|e| FormatError::Build {
                source: e.into(),
                labels: labels.clone(),
            })?,
        );
    }
    let imp = tables.pop().unwrap();
    let mul = tables.pop().unwrap();
    let h = FiniteHoop::from_tables(mul, imp, one, zero).map_err(|source| FormatError::Build {
        source,
        labels: labels.clone(),
    })?;
    Ok(h.with_labels(labels).expect("labels checked unique"))
}

/// Canonical text of a hoop: single spaces, fixed header order, no comments.
pub fn dump_hoop(h: &FiniteHoop) -> String {
    let mut out = String::new();
    let l = |x: Elem| h.label(x);
    writeln!(out, "size {}", h.size()).unwrap();
    writeln!(out, "elements {}", h.labels().join(" ")).unwrap();
    writeln!(out, "one {}", l(h.one())).unwrap();
    if let Some(z) = h.zero() {
        writeln!(out, "zero {}", l(z)).unwrap();
    }
    for (name, table) in [("mul", h.mul_table()), ("imp", h.imp_table())] {
        writeln!(out, "{name}").unwrap();
        for x in h.elements() {
            let row: Vec<&str> = table.row(x).iter().map(|&y| l(y)).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hoop::Axiom;

    const G3: &str = "# Goedel chain\nsize 3\nelements 0 m 1\none 1\nzero 0\nmul\n0 0 0\n0 m m\n0 m 1\nimp\n1 1 1\n0 1 1\n0 m 1\n";

    #[test]
    fn parses_and_round_trips() {
        let h = parse_hoop_file(G3).unwrap();
        assert_eq!(h, fixtures::g3());
        let text = dump_hoop(&h);
        assert_eq!(text, G3.trim_start_matches("# Goedel chain\n"));
        assert_eq!(parse_hoop_file(&text).unwrap(), h);
    }

    #[test]
    fn fixtures_round_trip() {
        for h in [
            fixtures::trivial(),
            fixtures::two(),
            fixtures::l3(),
            fixtures::b4(),
            fixtures::hoop6(),
        ] {
            let text = dump_hoop(&h);
            assert_eq!(dump_hoop(&parse_hoop_file(&text).unwrap()), text);
        }
    }

    #[test]
    fn short_row_is_a_syntax_error_on_its_line() {
        let bad = G3.replace("0 m m\n", "0 m\n");
        match parse_hoop_file(&bad) {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 8),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_label_and_unknown_keyword() {
        let bad = G3.replace("0 m m\n", "0 m q\n");
        assert_eq!(
            parse_hoop_file(&bad),
            Err(FormatError::Syntax {
                line: 8,
                col: 5,
                message: "undeclared label `q`".into()
            })
        );
        let bad = G3.replace("one 1", "unit 1");
        assert!(matches!(
            parse_hoop_file(&bad),
            Err(FormatError::Syntax {
                line: 4,
                col: 1,
                ..
            })
        ));
    }

    #[test]
    fn axiom_failures_are_reported() {
        let bad = G3.replace("0 m 1\nimp", "m m 1\nimp");
        match parse_hoop_file(&bad) {
            Err(FormatError::Build {
                source: BuildError::Axioms(r),
                ..
            }) => {
                assert!(r.violation(Axiom::Unit).is_some())
            }
            other => panic!("expected an axiom report, got {other:?}"),
        }
    }
}
