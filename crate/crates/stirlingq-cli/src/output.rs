//! CSV assembly: comma-separated, header row, LF endings, '.' decimals,
//! numbers at 12 significant digits. Efficiency cells outside the engine
//! regime are left empty; the engine_regime flag column carries 0/1.

use std::io::Write;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Flag(bool),
    Empty,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// 12 significant digits, scientific, deterministic.
pub fn fmt_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Clone, Debug)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(header: Vec<String>) -> Self {
        CsvTable {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "rows must be rectangular");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&self.header.join(","));
        s.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    s.push(',');
                }
                first = false;
                match cell {
                    Cell::Num(x) => s.push_str(&fmt_sig12(*x)),
                    Cell::Int(i) => s.push_str(&i.to_string()),
                    Cell::Flag(b) => s.push(if *b { '1' } else { '0' }),
                    Cell::Empty => {}
                }
            }
            s.push('\n');
        }
        s
    }

    /// Write to the given path, or stdout when none.
    pub fn write(&self, out: &Option<PathBuf>) -> std::io::Result<()> {
        let rendered = self.render();
        match out {
            Some(path) => std::fs::write(path, rendered),
            None => std::io::stdout().write_all(rendered.as_bytes()),
        }
    }
}
