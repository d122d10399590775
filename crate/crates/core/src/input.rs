//! Permutation-group files and group specifications.
//!
//! A group specification is a catalog name, `@path.perm` or `@path.pres`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{lookup, CatalogEntry};
use crate::error::{Error, Result};
use crate::fpres::{tc_enumerate, EnumerationLimits, Presentation};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// Parses the permutation-group file format:
///
/// ```text
/// # Klein four-group
/// degree 4
/// (0 1)(2 3)
/// (0 2)(1 3)
/// ```
pub fn parse_perm_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty permutation file".into()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .map(str::trim)
        .and_then(|d| d.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `degree N` with N > 0")))?;
    let gens = lines
        .map(|(lineno, l)| {
            Permutation::parse_cycles(l, degree)
                .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if gens.is_empty() {
        return Err(Error::Parse("permutation file lists no generators".into()));
    }
    Ok((degree, gens))
}

/// Writes generators back in the file format.
pub fn format_perm_file(degree: usize, gens: &[Permutation]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

/// Where a group came from, as recorded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputDescriptor {
    Catalog { name: String },
    PermFile { path: String },
    PresFile { path: String },
}

/// A resolved group specification.
#[derive(Debug)]
pub struct GroupInput {
    pub descriptor: InputDescriptor,
    pub group: FiniteGroup,
    /// Presentation on the group's generators, when one is known.
    pub compact: Option<Presentation>,
    /// Catalog entry, if the input named one.
    pub entry: Option<&'static CatalogEntry>,
}

impl GroupInput {
    /// Text identifying the group itself (generators and presentation), for
    /// cache keys. Independent of how the group was named.
    pub fn canonical_text(&self) -> String {
        let g = &self.group;
        let mut out = format_perm_file(g.degree(), g.generators());
        if let Some(p) = &self.compact {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

fn from_entry(entry: &'static CatalogEntry) -> Result<GroupInput> {
    Ok(GroupInput {
        descriptor: InputDescriptor::Catalog {
            name: entry.name.to_string(),
        },
        group: entry.group()?,
        compact: entry.compact_presentation(),
        entry: Some(entry),
    })
}

/// Group from permutation-file text.
pub fn group_from_perm_text(text: &str) -> Result<FiniteGroup> {
    let (_, gens) = parse_perm_file(text)?;
    FiniteGroup::new(gens)
}

/// Group from presentation text, by coset enumeration over the trivial
/// subgroup. The presentation is kept as the group's compact presentation.
pub fn group_from_pres_text(
    text: &str,
    limits: &EnumerationLimits,
) -> Result<(FiniteGroup, Presentation)> {
    let p = Presentation::parse(text)?;
    let table = tc_enumerate(&p, &[], limits)?;
    let g = table.to_perm_group(crate::group::DEFAULT_CAPACITY)?;
    let g = g.with_names(p.names().to_vec())?;
    Ok((g, p))
}

/// Resolves `spec`: a catalog name, `@file.perm` or `@file.pres`.
pub fn resolve(spec: &str, limits: &EnumerationLimits) -> Result<GroupInput> {
    let Some(path) = spec.strip_prefix('@') else {
        return from_entry(lookup(spec)?);
    };
    let text = std::fs::read_to_string(path)?;
    let ext = Path::new(path).extension().and_then(|e| e.to_str());
    match ext {
        Some("perm") => Ok(GroupInput {
            descriptor: InputDescriptor::PermFile {
                path: path.to_string(),
            },
            group: group_from_perm_text(&text)?,
            compact: None,
            entry: None,
        }),
        Some("pres") => {
            let (group, p) = group_from_pres_text(&text, limits)?;
            Ok(GroupInput {
                descriptor: InputDescriptor::PresFile {
                    path: path.to_string(),
                },
                group,
                compact: Some(p),
                entry: None,
            })
        }
        _ => Err(Error::Parse(format!(
            "{path}: expected a .perm or .pres file"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_file_round_trip() {
        let text = "# Klein four\ndegree 4\n(0 1)(2 3)  # first\n\n(0 2)(1 3)\n";
        let (degree, gens) = parse_perm_file(text).unwrap();
        assert_eq!(degree, 4);
        assert_eq!(gens.len(), 2);
        let again = parse_perm_file(&format_perm_file(degree, &gens)).unwrap();
        assert_eq!(again.1, gens);
        assert_eq!(group_from_perm_text(text).unwrap().order(), 4);
    }

    #[test]
    fn identity_generator() {
        let g = group_from_perm_text("degree 3\n()\n").unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn perm_file_errors() {
        assert!(parse_perm_file("").is_err());
        assert!(parse_perm_file("degree 0\n()").is_err());
        assert!(parse_perm_file("(0 1)\n").is_err());
        assert!(parse_perm_file("degree 2\n").is_err());
        assert!(parse_perm_file("degree 2\n(0 2)\n").is_err());
    }

    #[test]
    fn presentation_text() {
        let (g, p) = group_from_pres_text(
            "gens: a b\nrels: a^2, b^3, (a b)^2",
            &EnumerationLimits::default(),
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(p.satisfied_by(g.generators()));
        assert_eq!(g.generator_names(), ["a", "b"]);
    }

    #[test]
    fn catalog_names_resolve() {
        let d4 = resolve("D4", &EnumerationLimits::default()).unwrap();
        assert_eq!(d4.group.order(), 8);
        assert!(d4.compact.is_some());
        assert!(matches!(
            resolve("D99", &EnumerationLimits::default()),
            Err(Error::UnknownGroup(_))
        ));
        assert!(resolve("@missing.txt", &EnumerationLimits::default()).is_err());
    }
}
