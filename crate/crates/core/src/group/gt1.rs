//! GT1 text format: a `GT1 <n>` header line followed by `n` rows of `n`
//! space-separated 0-based indices, LF line endings, no trailing whitespace.

use std::fmt::Write;

use super::{AssocCheck, FiniteGroup, TableError};

pub fn serialize_group(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = String::with_capacity(8 + n * n * 3);
    writeln!(out, "GT1 {n}").unwrap();
    for row in g.table().chunks(n) {
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses and fully validates a GT1 table.
pub fn parse_group_table(
    name: impl Into<String>,
    text: &str,
    assoc: AssocCheck,
) -> Result<FiniteGroup, TableError> {
    let mut lines = text.split('\n');
    let header = lines.next().unwrap_or_default();
    let n: usize = header
        .strip_prefix("GT1 ")
        .filter(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|rest| rest.parse().ok())
        .ok_or_else(|| TableError::MalformedHeader(header.to_string()))?;
    if n == 0 {
        return Err(TableError::EmptyGroup);
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let line_no = row + 2;
        let line = lines.next().ok_or(TableError::RowCount {
            expected: n,
            found: row,
        })?;
        if line.starts_with(' ') || line.ends_with(' ') || line.contains("  ") {
            return Err(TableError::MalformedRow {
                line: line_no,
                msg: "entries must be separated by single spaces".into(),
            });
        }
        let mut found = 0;
        for tok in line.split(' ') {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(TableError::MalformedRow {
                    line: line_no,
                    msg: format!("invalid entry {tok:?}"),
                });
            }
            let v: usize = tok.parse().map_err(|_| TableError::MalformedRow {
                line: line_no,
                msg: format!("invalid entry {tok:?}"),
            })?;
            if v >= n {
                return Err(TableError::EntryOutOfRange {
                    row,
                    col: found,
                    value: v,
                });
            }
            table.push(v as u32);
            found += 1;
        }
        if found != n {
            return Err(TableError::RowLength {
                row,
                expected: n,
                found,
            });
        }
    }
    // exactly one trailing LF after the last row
    match (lines.next(), lines.next()) {
        (Some(""), None) => {}
        _ => {
            return Err(TableError::MalformedRow {
                line: n + 2,
                msg: "unexpected content after the last row".into(),
            })
        }
    }
    FiniteGroup::from_table(name, n, table, assoc)
}

#[cfg(test)]
mod tests {
    use super::super::{build_group, parse_group_expr, BuildOptions};
    use super::*;

    fn build(s: &str) -> FiniteGroup {
        build_group(&parse_group_expr(s).unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn c2_bytes() {
        assert_eq!(serialize_group(&build("C2")), "GT1 2\n0 1\n1 0\n");
    }

    #[test]
    fn d8_round_trip() {
        let d8 = build("D8");
        let back = parse_group_table("D8", &serialize_group(&d8), AssocCheck::Auto).unwrap();
        assert_eq!(back, d8);
    }

    #[test]
    fn repeated_entry_is_not_latin() {
        let err = parse_group_table("x", "GT1 2\n0 1\n1 1\n", AssocCheck::Auto).unwrap_err();
        assert!(matches!(err, TableError::NotLatin(_)), "{err}");
    }

    #[test]
    fn malformed_inputs() {
        let cases = [
            ("GT1  2\n0 1\n1 0\n", "header"),
            ("GT2 2\n0 1\n1 0\n", "header"),
            ("GT1 2\r\n0 1\n1 0\n", "header"),
            ("GT1 2\n0 1\n1 0", "trailing"),
            ("GT1 2\n0 1 \n1 0\n", "whitespace"),
            ("GT1 2\n0 1\n1\n", "row length"),
            ("GT1 2\n0 1\n", "row count"),
            ("GT1 2\n0 1\n1 2\n", "range"),
            ("GT1 2\n1 0\n0 1\n", "identity"),
            ("GT1 2\n0 1\n1 0\n\n", "extra"),
        ];
        for (text, what) in cases {
            assert!(
                parse_group_table("x", text, AssocCheck::Auto).is_err(),
                "{what}: {text:?}"
            );
        }
        assert!(matches!(
            parse_group_table("x", "GT1 2\n0 1\n1\n", AssocCheck::Auto),
            Err(TableError::RowLength {
                row: 1,
                expected: 2,
                found: 1
            })
        ));
        assert_eq!(
            parse_group_table("x", "GT1 2\n1 0\n0 1\n", AssocCheck::Auto),
            Err(TableError::IdentityNotZero)
        );
    }
}
