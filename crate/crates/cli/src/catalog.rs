//! Group ingestion and export: .gens permutation files, Cayley-table
//! CSV files, and .cat constructed-expression catalogs.

use std::collections::HashSet;
use std::path::Path;

use grpcover::error::{Error, Result};
use grpcover::{build, parse_group_expr, Budgets, GroupExpr, GroupTable, Permutation};

/// Where a catalog group comes from.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Constructed(GroupExpr),
    Generators {
        degree: usize,
        gens: Vec<Permutation>,
    },
    Cayley {
        rows: Vec<Vec<usize>>,
    },
}

impl GroupSource {
    /// Short human-readable descriptor for reports.
    pub fn describe(&self) -> String {
        match self {
            GroupSource::Constructed(e) => e.to_string(),
            GroupSource::Generators { degree, gens } => {
                format!(
                    "permutation generators (degree {degree}, {} gens)",
                    gens.len()
                )
            }
            GroupSource::Cayley { rows } => format!("cayley table (order {})", rows.len()),
        }
    }
}

/// A named group description, resolvable to a table.
#[derive(Clone, Debug)]
pub struct GroupRecord {
    pub name: String,
    pub source: GroupSource,
}

impl GroupRecord {
    pub fn resolve(&self, budgets: &Budgets) -> Result<GroupTable> {
        let mut table = match &self.source {
            GroupSource::Constructed(expr) => build(expr, budgets)?,
            GroupSource::Generators { gens, .. } => {
                grpcover::group_from_generators(gens, &self.name, budgets)?
            }
            GroupSource::Cayley { rows } => grpcover::group_from_cayley(rows, &self.name, budgets)?,
        };
        table.set_name(self.name.clone());
        Ok(table)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::SyntaxError {
        offset: line,
        message: format!("line {line}: {}", message.into()),
    }
}

/// Parse the .gens format: blocks separated by blank lines, block lines
/// "name: <text>", "degree: <d>", then one or more "gen: i0 i1 ..."
/// lines. "#" starts a comment.
pub fn parse_gens_str(text: &str) -> Result<Vec<GroupRecord>> {
    let mut records = Vec::new();
    let mut names = HashSet::new();

    struct Block {
        name: Option<(String, usize)>,
        degree: Option<usize>,
        gens: Vec<Permutation>,
    }
    let mut block = Block {
        name: None,
        degree: None,
        gens: Vec::new(),
    };

    let mut finish = |block: &mut Block, names: &mut HashSet<String>| -> Result<()> {
        let Some((name, line)) = block.name.take() else {
            return Ok(()); // empty block
        };
        if block.degree.is_none() || block.gens.is_empty() {
            return Err(syntax(
                line,
                format!("block '{name}' needs a degree and at least one gen"),
            ));
        }
        if !names.insert(name.clone()) {
            return Err(Error::DuplicateName(name));
        }
        records.push(GroupRecord {
            name,
            source: GroupSource::Generators {
                degree: block.degree.take().unwrap(),
                gens: std::mem::take(&mut block.gens),
            },
        });
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            finish(&mut block, &mut names)?;
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(syntax(line_no, "expected 'key: value'"));
        };
        let value = value.trim();
        match key.trim() {
            "name" => {
                if block.name.is_some() {
                    finish(&mut block, &mut names)?;
                }
                if value.is_empty() {
                    return Err(syntax(line_no, "empty name"));
                }
                block.name = Some((value.to_string(), line_no));
            }
            "degree" => {
                if block.name.is_none() {
                    return Err(syntax(line_no, "degree before name"));
                }
                let d: usize = value
                    .parse()
                    .map_err(|_| syntax(line_no, "degree is not an integer"))?;
                if d == 0 {
                    return Err(syntax(line_no, "degree must be positive"));
                }
                block.degree = Some(d);
            }
            "gen" => {
                let Some(degree) = block.degree else {
                    return Err(syntax(line_no, "gen before degree"));
                };
                let images: Vec<u16> = value
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<u16>()
                            .map_err(|_| syntax(line_no, "bad image value"))
                    })
                    .collect::<Result<_>>()?;
                if images.len() != degree {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: images.len(),
                    });
                }
                let perm = Permutation::from_images(images)
                    .map_err(|_| syntax(line_no, "image line is not a bijection"))?;
                block.gens.push(perm);
            }
            other => return Err(syntax(line_no, format!("unknown key '{other}'"))),
        }
    }
    finish(&mut block, &mut names)?;
    Ok(records)
}

pub fn parse_gens_file(path: &Path) -> Result<Vec<GroupRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::SyntaxError {
        offset: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_gens_str(&text)
}

/// Parse the Cayley CSV format: first line "order,<n>", then n rows of
/// n comma-separated 0-based indices.
pub fn parse_cayley_str(text: &str, name: &str) -> Result<GroupRecord> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line.to_string()))
        }
    });
    let Some((line_no, header)) = lines.next() else {
        return Err(syntax(1, "empty cayley file"));
    };
    let n: usize = header
        .strip_prefix("order,")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| syntax(line_no, "expected header 'order,<n>'"))?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((line_no, row)) = lines.next() else {
            return Err(syntax(line_no, format!("expected {n} rows")));
        };
        let row: Vec<usize> = row
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| syntax(line_no, "bad table entry"))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(syntax(
                line_no,
                format!("expected {n} entries per row, got {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(syntax(line_no, "trailing rows after table"));
    }
    Ok(GroupRecord {
        name: name.to_string(),
        source: GroupSource::Cayley { rows },
    })
}

pub fn parse_cayley_file(path: &Path) -> Result<GroupRecord> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::SyntaxError {
        offset: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "cayley".into());
    parse_cayley_str(&text, &name)
}

/// Parse the .cat format: one "name = expr" per line, "#" comments.
pub fn parse_cat_str(text: &str) -> Result<Vec<GroupRecord>> {
    let mut records = Vec::new();
    let mut names = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((name, expr_text)) = line.split_once('=') else {
            return Err(syntax(line_no, "expected 'name = expression'"));
        };
        let name = name.trim().to_string();
        if name.is_empty() {
            return Err(syntax(line_no, "empty name"));
        }
        if !names.insert(name.clone()) {
            return Err(Error::DuplicateName(name));
        }
        let expr = parse_group_expr(expr_text.trim())?;
        records.push(GroupRecord {
            name,
            source: GroupSource::Constructed(expr),
        });
    }
    Ok(records)
}

/// Load a catalog, dispatching on the file extension:
/// .gens (permutation blocks), .cayley/.csv (one Cayley table),
/// .cat (construction expressions).
pub fn load_catalog(path: &Path) -> Result<Vec<GroupRecord>> {
    let ext = path
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_default();
    match ext.as_str() {
        "gens" => parse_gens_file(path),
        "cayley" | "csv" => Ok(vec![parse_cayley_file(path)?]),
        "cat" => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::SyntaxError {
                offset: 0,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            parse_cat_str(&text)
        }
        other => Err(Error::BadParameter(format!(
            "unknown catalog extension '{other}' (expected .gens, .cayley, .csv or .cat)"
        ))),
    }
}

/// Render a group as a .gens block via its right regular representation.
pub fn gens_block(name: &str, table: &GroupTable) -> String {
    let gens = table.regular_generators();
    let mut out = format!("name: {name}\ndegree: {}\n", table.order());
    for g in gens {
        out.push_str("gen:");
        for p in 0..g.degree() {
            out.push_str(&format!(" {}", g.image(p)));
        }
        out.push('\n');
    }
    out
}
