//! Text fixtures for the pattern tables and the unrealizable list.

use crate::exactalg::{fmt_rat, parse_rational, Rational};
use crate::lemmas::Rule;
use crate::patterns::{BranchingPattern, ExponentForm, RestrictionType};

use super::ShellError;

pub const TABLES_TEXT: &str = include_str!("../../data/tables.txt");
pub const UNREALIZABLE_TEXT: &str = include_str!("../../data/unrealizable.txt");

/// One row of the pattern tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub table: u8,
    pub ty: RestrictionType,
    pub heun: Vec<ExponentForm>,
    pub degree: u32,
    pub pattern: BranchingPattern,
    /// `H<n>` for a covering, `N<n>` for an unrealizable pattern.
    pub covering: String,
    /// Decompositions for coverings, `None` otherwise.
    pub composition: Option<String>,
    /// Set on rows that differ from the printed source.
    pub note: Option<String>,
}

impl TableRow {
    pub fn realizable(&self) -> bool {
        self.covering.starts_with('H')
    }

    pub fn composite(&self) -> bool {
        self.composition.as_deref().is_some_and(|c| c != "indecomposable")
    }

    pub fn to_line(&self) -> String {
        let ks: Vec<String> = self.ty.ks().iter().map(u32::to_string).collect();
        let heun: Vec<String> = self.heun.iter().map(ExponentForm::to_text).collect();
        format!(
            "{} | {} | {} | {} | {} | {} | {} | {}",
            self.table,
            ks.join(","),
            heun.join(","),
            self.degree,
            self.pattern.to_text(),
            self.covering,
            self.composition.as_deref().unwrap_or("-"),
            self.note.as_deref().unwrap_or("")
        )
        .trim_end()
        .to_string()
    }
}

/// One unrealizable pattern with the rule that refutes it and the base it is pulled back from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrealizableRow {
    pub id: String,
    pub pattern: BranchingPattern,
    pub rule: Rule,
    pub base: [Rational; 3],
    /// Singular exponent differences after the pull-back, sorted.
    pub differences: Vec<Rational>,
}

impl UnrealizableRow {
    pub fn to_line(&self) -> String {
        let list = |v: &[Rational]| v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ");
        format!("{} | {} | {} | {} | {}", self.id, self.pattern, self.rule, list(&self.base), list(&self.differences))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFixture {
    pub rows: Vec<TableRow>,
    pub unrealizable: Vec<UnrealizableRow>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn rationals(s: &str) -> Option<Vec<Rational>> {
    s.split(',').map(|t| parse_rational(t.trim()).ok()).collect()
}

fn parse_row(line: &str) -> Result<TableRow, String> {
    let cols: Vec<&str> = line.split('|').map(str::trim).collect();
    if cols.len() != 8 {
        return Err(format!("expected 8 columns, found {}", cols.len()));
    }
    let table = cols[0].parse().map_err(|_| format!("bad table number {:?}", cols[0]))?;
    let ty = RestrictionType::parse(cols[1]).map_err(|e| e.to_string())?;
    let heun = cols[2]
        .split(',')
        .map(|t| ExponentForm::parse(t.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let degree = cols[3].parse().map_err(|_| format!("bad degree {:?}", cols[3]))?;
    let pattern = BranchingPattern::parse(cols[4]).map_err(|e| e.to_string())?;
    if pattern.degree() != degree {
        return Err(format!("pattern degree {} differs from {degree}", pattern.degree()));
    }
    let covering = cols[5].to_string();
    if !(covering.starts_with('H') || covering.starts_with('N')) {
        return Err(format!("bad covering id {covering:?}"));
    }
    let composition = (cols[6] != "-").then(|| cols[6].to_string());
    let note = (!cols[7].is_empty()).then(|| cols[7].to_string());
    Ok(TableRow { table, ty, heun, degree, pattern, covering, composition, note })
}

fn parse_unrealizable(line: &str) -> Result<UnrealizableRow, String> {
    let cols: Vec<&str> = line.split('|').map(str::trim).collect();
    if cols.len() != 5 {
        return Err(format!("expected 5 columns, found {}", cols.len()));
    }
    let pattern = BranchingPattern::parse(cols[1]).map_err(|e| e.to_string())?;
    let rule = Rule::parse(cols[2]).ok_or_else(|| format!("unknown rule {:?}", cols[2]))?;
    let base: [Rational; 3] = rationals(cols[3])
        .and_then(|v| v.try_into().ok())
        .ok_or_else(|| format!("bad base {:?}", cols[3]))?;
    let mut differences = rationals(cols[4]).ok_or_else(|| format!("bad differences {:?}", cols[4]))?;
    differences.sort();
    Ok(UnrealizableRow { id: cols[0].to_string(), pattern, rule, base, differences })
}

impl TableFixture {
    pub fn parse(tables: &str, unrealizable: &str) -> Result<Self, ShellError> {
        let rows = data_lines(tables)
            .map(|(n, l)| parse_row(l).map_err(|msg| ShellError::Fixture { file: "tables", line: n, msg }))
            .collect::<Result<Vec<_>, _>>()?;
        let unrealizable = data_lines(unrealizable)
            .map(|(n, l)| parse_unrealizable(l).map_err(|msg| ShellError::Fixture { file: "unrealizable", line: n, msg }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TableFixture { rows, unrealizable })
    }

    pub fn builtin() -> Self {
        Self::parse(TABLES_TEXT, UNREALIZABLE_TEXT).expect("bundled fixtures parse")
    }

    /// Read `tables.txt` and `unrealizable.txt` from a directory.
    pub fn load(dir: &std::path::Path) -> Result<Self, ShellError> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|e| ShellError::Io(format!("{}: {e}", path.display())))
        };
        Self::parse(&read("tables.txt")?, &read("unrealizable.txt")?)
    }

    pub fn tables_text(&self) -> String {
        self.rows.iter().map(|r| r.to_line() + "\n").collect()
    }

    pub fn unrealizable_text(&self) -> String {
        self.unrealizable.iter().map(|r| r.to_line() + "\n").collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_counts() {
        let f = TableFixture::builtin();
        assert_eq!(f.rows.len(), 89);
        assert_eq!(f.rows.iter().filter(|r| r.realizable()).count(), 61);
        assert_eq!(f.rows.iter().filter(|r| r.composite()).count(), 28);
        assert_eq!(f.unrealizable.len(), 27);
        assert_eq!(f.rows.iter().filter(|r| r.note.is_some()).count(), 1);
    }

    #[test]
    fn text_round_trip() {
        let f = TableFixture::builtin();
        let again = TableFixture::parse(&f.tables_text(), &f.unrealizable_text()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn bad_lines_report_position() {
        let err = TableFixture::parse("# head\n1 | 2 | a | 4\n", "").unwrap_err();
        assert!(matches!(err, ShellError::Fixture { file: "tables", line: 2, .. }));
        let err = TableFixture::parse("", "N1 | [2]^2=3+1=2+2 | 9.9 | 1/2, 1/3, 1/2 | 1/3\n").unwrap_err();
        assert!(err.to_string().contains("unknown rule"));
    }
}
