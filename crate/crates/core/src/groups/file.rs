//! Group definition files.
//!
//! ```toml
//! name = "G4"
//! conductor = 3
//! dim = 2
//! generators = [
//!     [["z", "0"], ["z^2", "1"]],
//!     [["1", "-z^2"], ["0", "z"]],
//! ]
//! ```
//!
//! Entries use the cyclotomic literal syntax with `z = ζ_conductor`.

use serde::Deserialize;

use crate::exact::{format_literal, parse_literal, MAX_CONDUCTOR};

use super::{GroupBuilder, GroupError, Matrix, ReflGroup};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupFile {
    name: String,
    conductor: u32,
    dim: usize,
    generators: Vec<Vec<Vec<String>>>,
}

/// A parsed group definition.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub name: String,
    pub conductor: u32,
    pub dim: usize,
    pub generators: Vec<Matrix>,
}

pub fn parse_group_file(text: &str) -> Result<GroupSpec, GroupError> {
    let raw: RawGroupFile =
        toml::from_str(text).map_err(|e| GroupError::Definition(e.message().to_string()))?;
    if raw.conductor == 0 || raw.conductor > MAX_CONDUCTOR {
        return Err(GroupError::Definition(format!(
            "conductor must lie in 1..={MAX_CONDUCTOR}"
        )));
    }
    if raw.dim == 0 || raw.dim > 64 {
        return Err(GroupError::Definition("dim must lie in 1..=64".into()));
    }
    let mut generators = Vec::with_capacity(raw.generators.len());
    for (index, g) in raw.generators.iter().enumerate() {
        if g.len() != raw.dim || g.iter().any(|row| row.len() != raw.dim) {
            return Err(GroupError::BadShape {
                index,
                dim: raw.dim,
            });
        }
        let rows = g
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_literal(s, raw.conductor))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        generators.push(Matrix::from_rows(rows).expect("shape checked"));
    }
    Ok(GroupSpec {
        name: raw.name,
        conductor: raw.conductor,
        dim: raw.dim,
        generators,
    })
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

/// Canonical rendering; `parse_group_file` inverts it.
pub fn render_group_file(spec: &GroupSpec) -> Result<String, GroupError> {
    let mut out = format!(
        "name = {}\nconductor = {}\ndim = {}\ngenerators = [\n",
        quote(&spec.name),
        spec.conductor,
        spec.dim
    );
    for g in &spec.generators {
        let rows: Vec<String> = g
            .lift(spec.conductor)?
            .rows()
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|x| quote(&format_literal(x))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        out.push_str(&format!("    [{}],\n", rows.join(", ")));
    }
    out.push_str("]\n");
    Ok(out)
}

impl GroupSpec {
    pub fn build(&self, max_order: usize) -> Result<ReflGroup, GroupError> {
        GroupBuilder::new(&self.name)
            .dim(self.dim)
            .min_conductor(self.conductor)
            .max_order(max_order)
            .build(self.generators.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G4: &str = r#"name = "G4"
conductor = 3
dim = 2
generators = [
    [["z", "0"], ["z^2", "1"]],
    [["1", "-z^2"], ["0", "z"]],
]
"#;

    #[test]
    fn parses_and_round_trips() {
        let spec = parse_group_file(G4).unwrap();
        assert_eq!(spec.generators.len(), 2);
        // z^2 is stored canonically as -1 - z.
        let rendered = render_group_file(&spec).unwrap();
        assert!(rendered.contains("\"-1 - z\""));
        let again = parse_group_file(&rendered).unwrap();
        assert_eq!(again, spec);
        assert_eq!(render_group_file(&again).unwrap(), rendered);
        assert_eq!(spec.build(1000).unwrap().order(), 24);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_group_file("name = 1").is_err());
        let bad_shape = G4.replace("[\"1\", \"-z^2\"], ", "");
        assert!(matches!(
            parse_group_file(&bad_shape),
            Err(GroupError::BadShape { index: 1, .. })
        ));
        let bad_literal = G4.replace("z^2\", \"1\"", "z^2\", \"1/0\"");
        assert!(matches!(parse_group_file(&bad_literal), Err(GroupError::Exact(_))));
        let big = G4.replace("conductor = 3", "conductor = 500");
        assert!(parse_group_file(&big).is_err());
    }
}
