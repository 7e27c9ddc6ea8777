//! Text formats for boards: ASCII diagrams, JSON objects, SVG and TikZ.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::board::{Board, Cell, Edge, RuleSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
    Tikz,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            _ => Err(Error::Parse(format!("unknown format '{s}'"))),
        }
    }
}

pub fn render(b: &Board, format: Format) -> String {
    match format {
        Format::Ascii => ascii(b),
        Format::Svg => svg(b),
        Format::Tikz => tikz(b),
    }
}

const DOT: char = '•';

/// Header line `<game> <n>` followed by one line per row. Grid boards use
/// `#` and `.`; dots-and-boxes boards draw `•` dots joined by `-` and `|`.
pub fn ascii(b: &Board) -> String {
    let n = b.n();
    let mut out = format!("{} {}\n", b.game(), n);
    if b.game().is_grid() {
        for r in 0..n {
            out.extend((0..n).map(|c| if b.is_occupied(r * n + c) { '#' } else { '.' }));
            out.push('\n');
        }
        return out;
    }
    for r in 0..n {
        for c in 0..n {
            out.push(DOT);
            if c + 1 < n {
                let drawn = b.is_occupied(Edge::H { row: r, col: c }.index(n));
                out.push(if drawn { '-' } else { ' ' });
            }
        }
        out.push('\n');
        if r + 1 < n {
            for c in 0..n {
                let drawn = b.is_occupied(Edge::V { row: r, col: c }.index(n));
                out.push(if drawn { '|' } else { ' ' });
                if c + 1 < n {
                    out.push(' ');
                }
            }
            out.push('\n');
        }
    }
    out
}

pub fn parse_ascii(text: &str) -> Result<Board> {
    let mut lines = text.lines().skip_while(|l| l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty board text".into()))?;
    let mut parts = header.split_whitespace();
    let game: RuleSet = parts.next().unwrap_or_default().parse()?;
    let n: usize =
        parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| Error::Parse(format!("bad header '{header}'")))?;
    game.check_side(n)?;
    let rows: Vec<Vec<char>> = lines.map(|l| l.trim_end_matches('\r').chars().collect()).collect();

    if game.is_grid() {
        if rows.len() < n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
        }
        let mut cells = Vec::new();
        for (r, row) in rows.iter().take(n).enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("row {r} has {} cells, expected {n}", row.len())));
            }
            for (c, ch) in row.iter().enumerate() {
                match ch {
                    '#' => cells.push((r, c)),
                    '.' => {}
                    other => return Err(Error::Parse(format!("unexpected '{other}' at ({r},{c})"))),
                }
            }
        }
        return Board::from_cells(game, n, cells);
    }

    let expected = 2 * n - 1;
    if rows.len() < expected {
        return Err(Error::Parse(format!("expected {expected} diagram lines, found {}", rows.len())));
    }
    let at = |line: &Vec<char>, i: usize| line.get(i).copied().unwrap_or(' ');
    let mut edges = Vec::new();
    for r in 0..n {
        let line = &rows[2 * r];
        for c in 0..n {
            if !matches!(at(line, 2 * c), '•' | 'o' | '+' | '*') {
                return Err(Error::Parse(format!("missing dot at ({r},{c})")));
            }
            if c + 1 < n {
                match at(line, 2 * c + 1) {
                    '-' => edges.push(Edge::H { row: r, col: c }),
                    ' ' => {}
                    other => return Err(Error::Parse(format!("unexpected '{other}' in dot row {r}"))),
                }
            }
        }
        if r + 1 < n {
            let line = &rows[2 * r + 1];
            for c in 0..n {
                match at(line, 2 * c) {
                    '|' => edges.push(Edge::V { row: r, col: c }),
                    ' ' => {}
                    other => return Err(Error::Parse(format!("unexpected '{other}' below dot row {r}"))),
                }
            }
        }
    }
    Board::from_edges(n, edges)
}

/// JSON object form of a board.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardJson {
    pub game: RuleSet,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(String, usize, usize)>>,
}

impl From<&Board> for BoardJson {
    fn from(b: &Board) -> Self {
        let n = b.n();
        if b.game().is_grid() {
            let cells = b.cells().into_iter().map(|Cell { row, col }| [row, col]).collect();
            BoardJson { game: b.game(), n, cells: Some(cells), edges: None }
        } else {
            let edges = b
                .edges()
                .into_iter()
                .map(|e| match e {
                    Edge::H { row, col } => ("h".to_string(), row, col),
                    Edge::V { row, col } => ("v".to_string(), row, col),
                })
                .collect();
            BoardJson { game: b.game(), n, cells: None, edges: Some(edges) }
        }
    }
}

impl TryFrom<BoardJson> for Board {
    type Error = Error;

    fn try_from(j: BoardJson) -> Result<Board> {
        if j.game.is_grid() {
            if j.edges.is_some() {
                return Err(Error::Parse("grid boards take \"cells\", not \"edges\"".into()));
            }
            let cells = j.cells.unwrap_or_default();
            Board::from_cells(j.game, j.n, cells.into_iter().map(|[r, c]| (r, c)))
        } else {
            if j.cells.is_some() {
                return Err(Error::Parse("dots-and-boxes boards take \"edges\", not \"cells\"".into()));
            }
            let edges = j
                .edges
                .unwrap_or_default()
                .into_iter()
                .map(|(kind, row, col)| match kind.as_str() {
                    "h" => Ok(Edge::H { row, col }),
                    "v" => Ok(Edge::V { row, col }),
                    other => Err(Error::Parse(format!("edge kind '{other}'"))),
                })
                .collect::<Result<Vec<_>>>()?;
            Board::from_edges(j.n, edges)
        }
    }
}

pub fn to_json(b: &Board) -> String {
    serde_json::to_string(&BoardJson::from(b)).expect("board serializes")
}

pub fn from_json(text: &str) -> Result<Board> {
    let j: BoardJson = serde_json::from_str(text)?;
    j.try_into()
}

/// Reads one board from either the ASCII or the JSON format.
pub fn parse_board(text: &str) -> Result<Board> {
    if text.trim_start().starts_with('{') {
        from_json(text.trim())
    } else {
        parse_ascii(text)
    }
}

/// Reads a JSON array of boards, JSON lines, or a single board.
pub fn parse_boards(text: &str) -> Result<Vec<Board>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let list: Vec<BoardJson> = serde_json::from_str(trimmed)?;
        return list.into_iter().map(Board::try_from).collect();
    }
    if trimmed.starts_with('{') {
        return trimmed.lines().filter(|l| !l.trim().is_empty()).map(from_json).collect();
    }
    parse_ascii(text).map(|b| vec![b])
}

pub fn svg(b: &Board) -> String {
    let n = b.n();
    let unit = 20;
    let mut out = String::new();
    if b.game().is_grid() {
        let side = n * unit;
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
        )
        .unwrap();
        for Cell { row, col } in b.cells() {
            writeln!(
                out,
                r#"  <rect x="{}" y="{}" width="{unit}" height="{unit}" fill="blue"/>"#,
                col * unit,
                row * unit
            )
            .unwrap();
        }
        for k in 0..=n {
            let p = k * unit;
            writeln!(out, r#"  <line x1="{p}" y1="0" x2="{p}" y2="{side}" stroke="black" stroke-width="0.5"/>"#)
                .unwrap();
            writeln!(out, r#"  <line x1="0" y1="{p}" x2="{side}" y2="{p}" stroke="black" stroke-width="0.5"/>"#)
                .unwrap();
        }
    } else {
        let side = (n + 1) * unit;
        let at = |k: usize| (k + 1) * unit;
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
        )
        .unwrap();
        for e in b.edges() {
            let (r1, c1, r2, c2) = match e {
                Edge::H { row, col } => (row, col, row, col + 1),
                Edge::V { row, col } => (row, col, row + 1, col),
            };
            writeln!(
                out,
                r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="red" stroke-width="2"/>"#,
                at(c1),
                at(r1),
                at(c2),
                at(r2)
            )
            .unwrap();
        }
        for r in 0..n {
            for c in 0..n {
                writeln!(out, r#"  <circle cx="{}" cy="{}" r="2.5" fill="black"/>"#, at(c), at(r)).unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// TikZ picture with unit cells: `x` is the column and `y` counts rows
/// upward from the bottom.
pub fn tikz(b: &Board) -> String {
    let n = b.n();
    let mut out = String::from("\\begin{tikzpicture}[scale=0.4]\n");
    if b.game().is_grid() {
        writeln!(out, "\\draw[step=1cm,black,very thin] (0,0) grid ({n},{n});").unwrap();
        for Cell { row, col } in b.cells() {
            let y = n - 1 - row;
            writeln!(out, "\\fill[blue] ({col},{y}) rectangle ({},{});", col + 1, y + 1).unwrap();
        }
    } else {
        let last = n - 1;
        writeln!(out, "\\foreach \\x in {{0,...,{last}}}\n\\foreach \\y in {{0,...,{last}}}\n{{\\node[black] at (\\x,\\y) {{$\\bullet$}};}}").unwrap();
        for e in b.edges() {
            let ((x1, y1), (x2, y2)) = match e {
                Edge::H { row, col } => ((col, last - row), (col + 1, last - row)),
                Edge::V { row, col } => ((col, last - row - 1), (col, last - row)),
            };
            writeln!(out, "\\draw[red, thick] ({x1},{y1}) -- ({x2},{y2});").unwrap();
        }
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_two_by_two() {
        let b = Board::empty(RuleSet::Tak, 2).unwrap();
        assert_eq!(ascii(&b), "tak 2\n..\n..\n");
    }

    #[test]
    fn dots_boxes_diagram() {
        let b = Board::from_edges(2, [Edge::H { row: 0, col: 0 }, Edge::V { row: 0, col: 1 }]).unwrap();
        assert_eq!(ascii(&b), "db 2\n•-•\n  |\n• •\n");
        assert_eq!(parse_ascii(&ascii(&b)).unwrap(), b);
    }

    #[test]
    fn json_shapes() {
        let b = Board::from_cells(RuleSet::Tak, 3, [(2, 0), (0, 1)]).unwrap();
        assert_eq!(to_json(&b), r#"{"game":"tak","n":3,"cells":[[0,1],[2,0]]}"#);
        let d = Board::from_edges(3, [Edge::V { row: 1, col: 1 }, Edge::H { row: 1, col: 0 }]).unwrap();
        assert_eq!(to_json(&d), r#"{"game":"db","n":3,"edges":[["h",1,0],["v",1,1]]}"#);
        assert_eq!(from_json(&to_json(&d)).unwrap(), d);
        assert!(from_json(r#"{"game":"tak","n":3,"cells":[[3,0]]}"#).is_err());
    }

    #[test]
    fn rejects_malformed_ascii() {
        assert!(parse_ascii("tak 2\n#.\n").is_err());
        assert!(parse_ascii("tak 2\n#x\n..\n").is_err());
        assert!(parse_ascii("chess 8\n").is_err());
    }

    #[test]
    fn tikz_counts_rows_from_the_bottom() {
        let b = Board::from_cells(RuleSet::Tak, 3, [(0, 2)]).unwrap();
        assert!(tikz(&b).contains("\\fill[blue] (2,2) rectangle (3,3);"));
    }

    fn arb_board() -> impl Strategy<Value = Board> {
        (0usize..4, 2usize..8).prop_flat_map(|(g, n)| {
            let game = RuleSet::ALL[g];
            proptest::collection::vec(any::<bool>(), game.universe_len(n)).prop_map(move |bits| {
                Board::from_indices(game, n, bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn ascii_and_json_round_trip(b in arb_board()) {
            prop_assert_eq!(parse_board(&ascii(&b)).unwrap(), b);
            prop_assert_eq!(parse_board(&to_json(&b)).unwrap(), b);
        }
    }
}
