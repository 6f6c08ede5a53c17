//! The `.cay` Cayley-table text format.
//!
//! ```text
//! # comments start with '#', anywhere on a line
//! 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Line 1 is the order `n`, followed by `n` rows of `n` space-separated
//! indices (row `i` holds the products `i·j`). Element 0 is the identity.

use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};
use crate::rightloop::RightLoop;

/// Parses the raw table; line numbers in errors are 1-based file lines.
pub fn parse_table(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing order line".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        msg: format!("expected the order, found {header:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: first,
            msg: "order must be positive".into(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = first;
    for (line, content) in lines {
        last = line;
        if rows.len() == n {
            return Err(Error::Parse {
                line,
                msg: format!("more than {n} rows"),
            });
        }
        let row = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad entry {tok:?}"),
                })
            })
            .collect::<Result<Vec<usize>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        if let Some(&v) = row.iter().find(|&&v| v >= n) {
            return Err(Error::Parse {
                line,
                msg: format!("entry {v} out of range 0..{n}"),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: last,
            msg: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Ok(rows)
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    FiniteGroup::from_table(&parse_table(text)?)
}

pub fn parse_loop(text: &str) -> Result<RightLoop> {
    RightLoop::from_table(&parse_table(text)?)
}

pub fn format_table(rows: &[Vec<usize>]) -> String {
    let mut out = format!("{}\n", rows.len());
    for row in rows {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a comma-separated index list such as `0,3,5`.
pub fn parse_index_list(text: &str) -> Result<ElementSet> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad index {t:?}"),
            })
        })
        .collect::<Result<Vec<usize>>>()
        .map(ElementSet::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let text = "# C3\n3\n0 1 2 # row 0\n1 2 0\n\n2 0 1\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g, cyclic(3).unwrap());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_table("2\n0 1\n1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                msg: "row has 1 entries, expected 2".into()
            }
        );
        assert!(matches!(
            parse_table("x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_table("2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_table("1\n0\n0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_table("2\n0 1\n1 7\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("3, 0,3").unwrap().elements(), &[0, 3]);
        assert!(parse_index_list("0,a").is_err());
    }

    proptest! {
        #[test]
        fn format_then_parse(n in 1usize..12) {
            let g = cyclic(n).unwrap();
            let back = parse_group(&format_table(&g.rows())).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
