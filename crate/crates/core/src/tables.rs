//! Reference classification tables and diff reports against the enumerator.
//!
//! A table file has `# title:`, `# label:` and `# mode:` headers, `@case`
//! lines opening a group, and one [`ClassificationRow`] per line. Files ship
//! embedded in the library; `PVFORM_REFERENCE_DIR` points to a directory of
//! `<label>.tbl` files that replace them.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use crate::enriques::{
    analyse, enumerate_separations, ClassificationRow, EnumerationOptions,
};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::surface::SurfaceUnion;

pub const REFERENCE_DIR_VAR: &str = "PVFORM_REFERENCE_DIR";

const EMBEDDED: [(&str, &str); 4] = [
    ("elliptic-4V1-2S", include_str!("../data/elliptic-4V1-2S.tbl")),
    ("parabolic", include_str!("../data/parabolic.tbl")),
    ("hyperbolic", include_str!("../data/hyperbolic.tbl")),
    ("other", include_str!("../data/other.tbl")),
];

pub fn table_labels() -> Vec<&'static str> {
    EMBEDDED.iter().map(|(l, _)| *l).collect()
}

/// How rows of a table are compared with computed ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMode {
    /// Every case's full enumeration must equal its rows.
    Full,
    /// Enumeration restricted to the half splits occurring in the rows.
    ListedSplits,
    /// Each row's half split yields exactly that row.
    PerSplit,
    /// Each row is satisfiable with the listed `P(w₁)`.
    PerRow,
}

impl TableMode {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "listed-splits" => Ok(Self::ListedSplits),
            "per-split" => Ok(Self::PerSplit),
            "per-row" => Ok(Self::PerRow),
            _ => Err(Error::Parse(format!("unknown table mode `{s}`"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::Full => "full",
            Self::ListedSplits => "listed-splits",
            Self::PerSplit => "per-split",
            Self::PerRow => "per-row",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReferenceCase {
    pub heading: String,
    pub rows: Vec<ClassificationRow>,
}

impl ReferenceCase {
    /// The component union when the heading names one.
    pub fn union(&self) -> Option<SurfaceUnion> {
        self.heading.parse().ok()
    }
}

#[derive(Clone, Debug)]
pub struct ReferenceTable {
    pub label: String,
    pub title: String,
    pub mode: TableMode,
    pub cases: Vec<ReferenceCase>,
}

impl ReferenceTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut label = None;
        let mut title = None;
        let mut mode = None;
        let mut cases: Vec<ReferenceCase> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let at = |e: Error| match e {
                Error::Parse(m) => Error::Parse(format!("line {}: {m}", no + 1)),
                other => other,
            };
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("title:") {
                    title = Some(v.trim().to_string());
                } else if let Some(v) = rest.strip_prefix("label:") {
                    label = Some(v.trim().to_string());
                } else if let Some(v) = rest.strip_prefix("mode:") {
                    mode = Some(TableMode::parse(v.trim()).map_err(at)?);
                }
                continue;
            }
            if let Some(h) = line.strip_prefix("@case") {
                cases.push(ReferenceCase {
                    heading: h.trim().to_string(),
                    rows: Vec::new(),
                });
                continue;
            }
            let row: ClassificationRow = line.parse().map_err(at)?;
            match cases.last_mut() {
                Some(c) => c.rows.push(row),
                None => {
                    return Err(Error::Parse(format!("line {}: row before any @case", no + 1)))
                }
            }
        }
        let missing = |what: &str| Error::Parse(format!("table lacks a `# {what}:` header"));
        let table = Self {
            label: label.ok_or_else(|| missing("label"))?,
            title: title.ok_or_else(|| missing("title"))?,
            mode: mode.ok_or_else(|| missing("mode"))?,
            cases,
        };
        if matches!(table.mode, TableMode::Full | TableMode::ListedSplits) {
            for c in &table.cases {
                let u = c.union().ok_or_else(|| {
                    Error::Parse(format!("case `{}` does not name a component union", c.heading))
                })?;
                if let Some(r) = c.rows.iter().find(|r| r.partition.union() != u) {
                    return Err(Error::Parse(format!("row `{r}` does not cover {u}")));
                }
            }
        }
        Ok(table)
    }

    pub fn row_count(&self) -> usize {
        self.cases.iter().map(|c| c.rows.len()).sum()
    }
}

/// Canonical rendering, suitable for writing back to a reference directory.
impl fmt::Display for ReferenceTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# title: {}", self.title)?;
        writeln!(f, "# label: {}", self.label)?;
        writeln!(f, "# mode: {}", self.mode.name())?;
        for c in &self.cases {
            writeln!(f, "@case {}", c.heading)?;
            for r in &c.rows {
                writeln!(f, "{r}")?;
            }
        }
        Ok(())
    }
}

/// Loads a table by label, from `PVFORM_REFERENCE_DIR` if set, else embedded.
pub fn load_table(label: &str) -> Result<ReferenceTable> {
    if let Some(dir) = std::env::var_os(REFERENCE_DIR_VAR) {
        let path = PathBuf::from(dir).join(format!("{label}.tbl"));
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Reference(format!("{}: {e}", path.display())))?;
        return ReferenceTable::parse(&text);
    }
    let text = EMBEDDED
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Reference(format!("no reference table `{label}`")))?;
    ReferenceTable::parse(text)
}

#[derive(Clone, Debug, Default)]
pub struct CaseReport {
    pub heading: String,
    pub expected: usize,
    /// Reference rows reproduced by the computation
    pub found: usize,
    /// Reference rows not produced by the computation
    pub missing: Vec<String>,
    /// Computed rows absent from the reference
    pub extra: Vec<String>,
    /// Informational lines that do not affect the verdict
    pub notes: Vec<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub label: String,
    pub title: String,
    pub mode: TableMode,
    pub cases: Vec<CaseReport>,
    pub elapsed: Duration,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseReport::passed)
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "table {} ({}) mode={} {}",
            self.label,
            self.title,
            self.mode.name(),
            if self.passed() { "MATCH" } else { "MISMATCH" }
        )?;
        for c in &self.cases {
            write!(f, "  case {}: {}/{} rows match", c.heading, c.found, c.expected)?;
            if !c.extra.is_empty() {
                write!(f, ", {} extra", c.extra.len())?;
            }
            writeln!(f, "{}", if c.passed() { "" } else { " DIFF" })?;
            for m in &c.missing {
                writeln!(f, "    - {m}")?;
            }
            for e in &c.extra {
                writeln!(f, "    + {e}")?;
            }
            for n in &c.notes {
                writeln!(f, "    note: {n}")?;
            }
        }
        Ok(())
    }
}

fn keys(rows: &[ClassificationRow]) -> BTreeSet<String> {
    rows.iter().map(ClassificationRow::key).collect()
}

fn diff(heading: &str, expected: &[ClassificationRow], found: &[ClassificationRow]) -> CaseReport {
    let want = keys(expected);
    let got = keys(found);
    CaseReport {
        heading: heading.to_string(),
        expected: want.len(),
        found: want.intersection(&got).count(),
        missing: want.difference(&got).cloned().collect(),
        extra: got.difference(&want).cloned().collect(),
        notes: Vec::new(),
    }
}

fn split_of(r: &ClassificationRow) -> (SurfaceUnion, SurfaceUnion) {
    (r.partition.half(0), r.partition.half(1))
}

/// Compares a reference table with the enumerator according to its mode.
pub fn check_table(table: &ReferenceTable, execution: Execution) -> Result<TableReport> {
    let start = Instant::now();
    let mut cases = Vec::new();
    for case in &table.cases {
        let report = match table.mode {
            TableMode::Full => {
                let u = case.union().expect("validated on parse");
                let opts = EnumerationOptions {
                    execution,
                    ..Default::default()
                };
                diff(&case.heading, &case.rows, &enumerate_separations(&u, &opts)?)
            }
            TableMode::ListedSplits => {
                let u = case.union().expect("validated on parse");
                let opts = EnumerationOptions {
                    half_splits: Some(case.rows.iter().map(split_of).collect()),
                    execution,
                    ..Default::default()
                };
                let mut r = diff(&case.heading, &case.rows, &enumerate_separations(&u, &opts)?);
                let all = enumerate_separations(
                    &u,
                    &EnumerationOptions {
                        execution,
                        ..Default::default()
                    },
                )?;
                let listed = keys(&case.rows);
                let unlisted: Vec<String> =
                    keys(&all).into_iter().filter(|k| !listed.contains(k)).collect();
                r.notes.push(format!(
                    "unrestricted enumeration: {} rows, {} outside the listed half splits",
                    all.len(),
                    unlisted.len()
                ));
                r.notes.extend(unlisted.into_iter().map(|k| format!("unlisted {k}")));
                r
            }
            TableMode::PerSplit => {
                let mut r = CaseReport {
                    heading: case.heading.clone(),
                    expected: case.rows.len(),
                    ..Default::default()
                };
                for row in &case.rows {
                    let u = row.partition.union();
                    let opts = EnumerationOptions {
                        half_splits: Some(vec![split_of(row)]),
                        execution,
                        ..Default::default()
                    };
                    let found = enumerate_separations(&u, &opts)?;
                    let d = diff(&case.heading, std::slice::from_ref(row), &found);
                    if found.len() == 1 && d.passed() {
                        r.found += 1;
                    } else {
                        r.missing.extend(d.missing);
                        r.extra.extend(d.extra);
                        if found.len() != 1 {
                            r.notes.push(format!(
                                "split of {} yields {} separations",
                                row.partition,
                                found.len()
                            ));
                        }
                    }
                }
                r
            }
            TableMode::PerRow => {
                let mut r = CaseReport {
                    heading: case.heading.clone(),
                    expected: case.rows.len(),
                    ..Default::default()
                };
                for row in &case.rows {
                    let a = analyse(&row.partition)?;
                    if a.satisfiable() && a.pw1 == row.pw1 {
                        r.found += 1;
                    } else {
                        r.missing.push(row.key());
                        if a.satisfiable() {
                            r.extra.push(ClassificationRow::new(row.partition.clone(), a.pw1).key());
                        }
                    }
                }
                r
            }
        };
        cases.push(report);
    }
    Ok(TableReport {
        label: table.label.clone(),
        title: table.title.clone(),
        mode: table.mode,
        cases,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse() {
        let counts: Vec<usize> = table_labels()
            .into_iter()
            .map(|l| load_table(l).unwrap().row_count())
            .collect();
        assert_eq!(counts, vec![20, 37, 18, 29]);
    }

    #[test]
    fn rendering_round_trips() {
        for l in table_labels() {
            let t = load_table(l).unwrap();
            let again = ReferenceTable::parse(&t.to_string()).unwrap();
            assert_eq!(again.to_string(), t.to_string());
        }
    }

    #[test]
    fn header_errors() {
        assert!(ReferenceTable::parse("# label: x\n# mode: full\n").is_err());
        assert!(ReferenceTable::parse("# title: t\n# label: x\n# mode: odd\n").is_err());
        assert!(ReferenceTable::parse("# title: t\n# label: x\n# mode: per-row\n{(S)+()}|{}  pw1=-\n").is_err());
    }
}
