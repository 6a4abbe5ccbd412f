//! Catalog table rows: derivation from a problem, parsing of the fixed-width
//! golden fixture and rendering in the same layout.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cps::VarType;
use crate::error::{OpmError, Result};
use crate::eval;
use crate::fstar::FStar;
use crate::problem::Problem;

const EMBEDDED: &str = include_str!("../fixtures/catalog_table.txt");

pub const COLUMNS: [&str; 17] = [
    "name", "fstar", "n", "mel", "nc", "ni", "nfree", "nlow", "nupp", "nboth", "nfix", "m", "mi",
    "me", "objtype", "constype", "classif",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub name: String,
    pub fstar: FStar,
    pub n: usize,
    pub mel: usize,
    pub nc: usize,
    pub ni: usize,
    pub nfree: usize,
    pub nlow: usize,
    pub nupp: usize,
    pub nboth: usize,
    pub nfix: usize,
    pub m: usize,
    pub mi: usize,
    pub me: usize,
    pub objtype: String,
    pub constype: String,
    pub classif: String,
}

impl CatalogRow {
    fn counts(&self) -> [usize; 12] {
        [
            self.n, self.mel, self.nc, self.ni, self.nfree, self.nlow, self.nupp, self.nboth,
            self.nfix, self.m, self.mi, self.me,
        ]
    }

    /// Column values as text, in table order.
    pub fn fields(&self) -> Vec<String> {
        let mut v = vec![self.name.clone(), self.fstar.render()];
        v.extend(self.counts().iter().map(usize::to_string));
        v.extend([self.objtype.clone(), self.constype.clone(), self.classif.clone()]);
        v
    }

    /// Names of the columns where `self` and `other` differ.
    pub fn diff(&self, other: &CatalogRow) -> Vec<&'static str> {
        self.fields()
            .iter()
            .zip(other.fields())
            .zip(COLUMNS)
            .filter(|((a, b), _)| *a != b)
            .map(|(_, c)| c)
            .collect()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let bad = |what: &str| Err(OpmError::InvalidParameter(format!("{}: {what}", self.name)));
        if self.nc + self.ni != self.n {
            return bad("nc + ni != n");
        }
        if self.nfree + self.nlow + self.nupp + self.nboth + self.nfix != self.n {
            return bad("variable kinds do not add up to n");
        }
        if self.mi + self.me > self.m {
            return bad("mi + me > m");
        }
        Ok(())
    }

    /// Parses one line of the fixture. The objective type may contain a
    /// space (`bad scal.`), so it is whatever lies between the 14 leading and
    /// 2 trailing tokens.
    pub fn parse_line(line: &str) -> Result<CatalogRow> {
        let tok: Vec<&str> = line.split_whitespace().collect();
        let malformed = |why: &str| OpmError::InvalidParameter(format!("table row '{line}': {why}"));
        if tok.len() < 17 {
            return Err(malformed("too few columns"));
        }
        let mut nums = [0usize; 12];
        for (k, t) in tok[2..14].iter().enumerate() {
            nums[k] = t.parse().map_err(|_| malformed("non-integer count"))?;
        }
        let [n, mel, nc, ni, nfree, nlow, nupp, nboth, nfix, m, mi, me] = nums;
        Ok(CatalogRow {
            name: tok[0].to_string(),
            fstar: FStar::parse(tok[1])?,
            n,
            mel,
            nc,
            ni,
            nfree,
            nlow,
            nupp,
            nboth,
            nfix,
            m,
            mi,
            me,
            objtype: tok[14..tok.len() - 2].join(" "),
            constype: tok[tok.len() - 2].to_string(),
            classif: tok[tok.len() - 1].to_string(),
        })
    }
}

/// Row for `problem` at dimension `n` (default when absent), derived from
/// its setup and structure.
pub fn catalog_row(problem: &dyn Problem, n: Option<usize>) -> Result<CatalogRow> {
    let meta = problem.meta();
    let n = n.unwrap_or(meta.default_n);
    let s = eval::setup(problem, &[n as f64])?;
    let structure = eval::cps_structure(problem, n)?;
    let mut row = CatalogRow {
        name: meta.name.to_string(),
        fstar: s.fstar.clone(),
        n,
        mel: structure.mel(),
        nc: s.xtype.iter().filter(|&&t| t == VarType::Continuous).count(),
        ni: s.xtype.iter().filter(|&&t| t != VarType::Continuous).count(),
        nfree: 0,
        nlow: 0,
        nupp: 0,
        nboth: 0,
        nfix: 0,
        m: s.clower.len(),
        mi: 0,
        me: 0,
        objtype: meta.objtype.to_string(),
        constype: "-".to_string(),
        classif: meta.class.to_string(),
    };
    for (&lo, &up) in s.xlower.iter().zip(&s.xupper) {
        match (lo.is_finite(), up.is_finite()) {
            _ if lo == up => row.nfix += 1,
            (false, false) => row.nfree += 1,
            (true, false) => row.nlow += 1,
            (false, true) => row.nupp += 1,
            (true, true) => row.nboth += 1,
        }
    }
    for (&lo, &up) in s.clower.iter().zip(&s.cupper) {
        if lo == up {
            row.me += 1;
        } else {
            row.mi += 1;
        }
    }
    Ok(row)
}

/// Column positions read off the fixture: the name field width, the fstar
/// field width, the end offset of each right-aligned count and the start
/// offset of each left-aligned trailing column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub name_width: usize,
    pub fstar_width: usize,
    pub count_ends: [usize; 12],
    pub tail_starts: [usize; 3],
    pub line_len: usize,
}

/// Byte spans of the whitespace-separated tokens of `line`.
fn spans(line: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, line.len()));
    }
    out
}

impl Layout {
    /// Infers the layout from fixture lines. Only rows whose objective type
    /// is a single word and whose fstar is numeric pin down positions, and
    /// every such row must agree.
    pub fn infer(lines: &[&str]) -> Result<Layout> {
        let mut found: Option<Layout> = None;
        for line in lines {
            let sp = spans(line);
            if sp.len() != 17 || !line[sp[1].0..sp[1].1].starts_with(['+', '-']) {
                continue;
            }
            if line[sp[1].0..sp[1].1].eq_ignore_ascii_case("-inf") {
                continue;
            }
            let mut count_ends = [0; 12];
            for k in 0..12 {
                count_ends[k] = sp[k + 2].1;
            }
            let l = Layout {
                name_width: sp[1].0,
                fstar_width: sp[1].1 - sp[1].0,
                count_ends,
                tail_starts: [sp[14].0, sp[15].0, sp[16].0],
                line_len: line.len(),
            };
            match &found {
                None => found = Some(l),
                Some(prev) if *prev != l => {
                    return Err(OpmError::InvalidParameter(format!(
                        "inconsistent column layout at row '{}'",
                        &line[sp[0].0..sp[0].1]
                    )))
                }
                _ => {}
            }
        }
        found.ok_or_else(|| OpmError::InvalidParameter("no row fixes the table layout".into()))
    }

    pub fn render(&self, row: &CatalogRow) -> String {
        let mut s = String::with_capacity(self.line_len);
        s.push_str(&row.name);
        pad_to(&mut s, self.name_width);
        let f = row.fstar.render();
        if let FStar::Known(_) = row.fstar {
            pad_to(&mut s, self.name_width + self.fstar_width.saturating_sub(f.len()));
        } else {
            let left = self.fstar_width.saturating_sub(f.len()) / 2;
            pad_to(&mut s, self.name_width + left);
        }
        s.push_str(&f);
        pad_to(&mut s, self.name_width + self.fstar_width);
        for (v, &end) in row.counts().iter().zip(&self.count_ends) {
            let t = v.to_string();
            pad_to(&mut s, end.saturating_sub(t.len()));
            if !s.ends_with(' ') {
                s.push(' ');
            }
            s.push_str(&t);
        }
        for (t, &start) in [&row.objtype, &row.constype, &row.classif]
            .into_iter()
            .zip(&self.tail_starts)
        {
            pad_to(&mut s, start);
            if !s.ends_with(' ') {
                s.push(' ');
            }
            s.push_str(t);
        }
        pad_to(&mut s, self.line_len);
        s
    }
}

fn pad_to(s: &mut String, width: usize) {
    while s.len() < width {
        s.push(' ');
    }
}

/// The parsed golden table: header, rows by name and the inferred layout.
#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub header: String,
    pub layout: Layout,
    rows: BTreeMap<String, CatalogRow>,
    lines: BTreeMap<String, String>,
}

impl GoldenTable {
    /// The fixture compiled into the library.
    pub fn embedded() -> GoldenTable {
        GoldenTable::parse(EMBEDDED).expect("embedded fixture parses")
    }

    pub fn load(path: &Path) -> Result<GoldenTable> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| OpmError::FixtureMissing(format!("{}: {e}", path.display())))?;
        GoldenTable::parse(&text)
    }

    pub fn parse(text: &str) -> Result<GoldenTable> {
        let mut it = text.lines();
        let header = it
            .next()
            .ok_or_else(|| OpmError::FixtureMissing("empty table".into()))?
            .to_string();
        let body: Vec<&str> = it.filter(|l| !l.trim().is_empty()).collect();
        let layout = Layout::infer(&body)?;
        let mut rows = BTreeMap::new();
        let mut lines = BTreeMap::new();
        for l in body {
            let row = CatalogRow::parse_line(l)?;
            if rows.contains_key(&row.name) {
                return Err(OpmError::DuplicateName(row.name));
            }
            lines.insert(row.name.clone(), l.to_string());
            rows.insert(row.name.clone(), row);
        }
        Ok(GoldenTable {
            header,
            layout,
            rows,
            lines,
        })
    }

    pub fn row(&self, name: &str) -> Option<&CatalogRow> {
        self.rows.get(name)
    }

    /// The fixture line for `name`, exactly as stored.
    pub fn line(&self, name: &str) -> Option<&str> {
        self.lines.get(name).map(String::as_str)
    }

    pub fn rows(&self) -> impl Iterator<Item = &CatalogRow> {
        self.rows.values()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds the rows of another table, keeping this table's header and layout.
    pub fn merge(&mut self, other: GoldenTable) {
        self.rows.extend(other.rows);
        self.lines.extend(other.lines);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_layout_matches_the_appendix() {
        let t = GoldenTable::embedded();
        assert_eq!(t.len(), 134);
        assert_eq!(t.layout.name_width, 16);
        assert_eq!(t.layout.fstar_width, 15);
        assert_eq!(t.layout.line_len, 127);
    }

    #[test]
    fn every_fixture_row_renders_back_identically() {
        let t = GoldenTable::embedded();
        for row in t.rows() {
            assert_eq!(t.layout.render(row), t.line(&row.name).unwrap(), "{}", row.name);
            row.check_invariants().unwrap();
        }
    }

    #[test]
    fn two_word_objective_type_is_kept_together() {
        let t = GoldenTable::embedded();
        let r = t.row("scurly10").unwrap();
        assert_eq!(r.objtype, "bad scal.");
        assert_eq!(r.constype, "-");
        assert_eq!(r.classif, "OUR2-AN-V-0");
        assert_eq!(r.fstar, FStar::Unknown("unknown".into()));
    }

    #[test]
    fn diff_names_changed_columns() {
        let t = GoldenTable::embedded();
        let a = t.row("tridia").unwrap().clone();
        let mut b = a.clone();
        b.mel = 3;
        b.classif = "QUR2-AY-V-1".into();
        assert_eq!(a.diff(&b), vec!["mel", "classif"]);
    }

    #[test]
    fn missing_fixture_file() {
        let e = GoldenTable::load(Path::new("/nonexistent/table.txt")).unwrap_err();
        assert_eq!(e.kind(), "FixtureMissing");
    }
}
