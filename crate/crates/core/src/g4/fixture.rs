//! The versioned fixture file holding the `G₄` fixed-point data.
//!
//! The checksum is the SHA-256 of the canonical rendering with the checksum
//! line left out, so any edit to the data without a matching checksum update
//! is rejected at load time.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::exact::{parse_literal, MAX_CONDUCTOR};
use crate::groups::{GroupBuilder, Matrix, ReflGroup};

use super::G4Error;

pub const FIXTURE_VERSION: u32 = 1;

const HEADER: &str = "# Fixed-point data for the G4 resolution.\n";

/// The fixture shipped with the crate.
pub const BUNDLED_FIXTURE: &str = include_str!("../../data/g4_fixture.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    version: u32,
    checksum: String,
    group: RawGroup,
    degrees: RawDegrees,
    fixed_points: RawFixedPoints,
    weights: BTreeMap<String, BTreeMap<String, i64>>,
    discriminant: RawPolynomial,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    name: String,
    conductor: u32,
    generators: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDegrees {
    z: Vec<i64>,
    b: Vec<i64>,
    a: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixedPoints {
    names: Vec<String>,
    psi: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    weights: Vec<i64>,
    terms: Vec<Vec<i64>>,
}

/// A polynomial as `(coefficient, exponents)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: Vec<(i64, Vec<u32>)>,
}

/// Parsed fixture contents. Weight maps are keyed by fixed-point name; a
/// missing name has weight zero.
#[derive(Debug, Clone, PartialEq)]
pub struct G4Fixture {
    pub version: u32,
    pub checksum: String,
    pub group_name: String,
    pub conductor: u32,
    pub generators: Vec<Matrix>,
    /// Generator entries as written in the file.
    pub generator_literals: Vec<Vec<Vec<String>>>,
    /// Degrees of the generators `z_1..z_8` of the invariant ring.
    pub z_degrees: Vec<i64>,
    /// Degrees of the generators `b_1..b_6` of the blown-up ideal.
    pub b_degrees: Vec<i64>,
    /// Degrees of `a_+, a_∘, a_-` cutting out the singular locus on chart 2.
    pub a_degrees: Vec<i64>,
    pub fixed_points: Vec<String>,
    /// `psi[i]` names the character whose idempotent is `Ψ(e_{fixed_points[i]})`.
    pub psi: Vec<String>,
    pub weights: BTreeMap<String, BTreeMap<String, i64>>,
    /// Equation of the pulled-back singular locus near `q3+`.
    pub discriminant: Polynomial,
    pub discriminant_weights: Vec<i64>,
}

fn bad(msg: impl Into<String>) -> G4Error {
    G4Error::Fixture(msg.into())
}

pub fn parse_g4_fixture(text: &str) -> Result<G4Fixture, G4Error> {
    let raw: RawFixture = toml::from_str(text).map_err(|e| bad(e.message()))?;
    if raw.version != FIXTURE_VERSION {
        return Err(bad(format!(
            "unsupported fixture version {} (expected {FIXTURE_VERSION})",
            raw.version
        )));
    }
    let conductor = raw.group.conductor;
    if conductor == 0 || conductor > MAX_CONDUCTOR {
        return Err(bad(format!("conductor must lie in 1..={MAX_CONDUCTOR}")));
    }
    let mut generators = Vec::new();
    for g in &raw.group.generators {
        let rows = g
            .iter()
            .map(|row| row.iter().map(|s| parse_literal(s, conductor)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let m = Matrix::from_rows(rows).ok_or_else(|| bad("generator is not a square matrix"))?;
        if m.dim() != 2 {
            return Err(bad("generators must be 2x2"));
        }
        generators.push(m);
    }

    let names = raw.fixed_points.names;
    let unique: BTreeSet<&String> = names.iter().collect();
    if unique.len() != names.len() {
        return Err(bad("repeated fixed-point name"));
    }
    if raw.fixed_points.psi.len() != names.len() {
        return Err(bad("psi must name one character per fixed point"));
    }
    for (class, map) in &raw.weights {
        if let Some(x) = map.keys().find(|x| !unique.contains(x)) {
            return Err(bad(format!("weights.{class} uses unknown fixed point {x:?}")));
        }
    }

    let vars = raw.discriminant.weights.len();
    let mut terms = Vec::new();
    for t in &raw.discriminant.terms {
        if t.len() != vars + 1 {
            return Err(bad("discriminant term has the wrong number of exponents"));
        }
        let exps = t[1..]
            .iter()
            .map(|&e| u32::try_from(e).map_err(|_| bad("negative exponent")))
            .collect::<Result<Vec<_>, _>>()?;
        terms.push((t[0], exps));
    }

    let fixture = G4Fixture {
        version: raw.version,
        checksum: raw.checksum,
        group_name: raw.group.name,
        conductor,
        generators,
        generator_literals: raw.group.generators,
        z_degrees: raw.degrees.z,
        b_degrees: raw.degrees.b,
        a_degrees: raw.degrees.a,
        fixed_points: names,
        psi: raw.fixed_points.psi,
        weights: raw.weights,
        discriminant: Polynomial { terms },
        discriminant_weights: raw.discriminant.weights,
    };
    let expected = fixture.compute_checksum();
    if fixture.checksum != expected {
        return Err(G4Error::Checksum {
            recorded: fixture.checksum.clone(),
            computed: expected,
        });
    }
    Ok(fixture)
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn ints(v: &[i64]) -> String {
    let cells: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", cells.join(", "))
}

fn strings(v: &[String]) -> String {
    let cells: Vec<String> = v.iter().map(|s| quote(s)).collect();
    format!("[{}]", cells.join(", "))
}

impl G4Fixture {
    pub fn bundled() -> Result<Self, G4Error> {
        parse_g4_fixture(BUNDLED_FIXTURE)
    }

    /// Everything except the checksum line.
    fn render_body(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("\n[group]\nname = {}\nconductor = {}\ngenerators = [\n", quote(&self.group_name), self.conductor));
        for g in &self.generator_literals {
            let rows: Vec<String> = g.iter().map(|row| strings(row)).collect();
            out.push_str(&format!("    [{}],\n", rows.join(", ")));
        }
        out.push_str("]\n");
        out.push_str(&format!(
            "\n[degrees]\nz = {}\nb = {}\na = {}\n",
            ints(&self.z_degrees),
            ints(&self.b_degrees),
            ints(&self.a_degrees)
        ));
        out.push_str(&format!(
            "\n[fixed_points]\nnames = {}\npsi = {}\n",
            strings(&self.fixed_points),
            strings(&self.psi)
        ));
        out.push_str("\n[weights]\n");
        for (class, map) in &self.weights {
            let cells: Vec<String> = self
                .fixed_points
                .iter()
                .filter_map(|x| map.get(x).map(|w| format!("{} = {w}", quote(x))))
                .collect();
            out.push_str(&format!("{class} = {{ {} }}\n", cells.join(", ")));
        }
        let terms: Vec<String> = self
            .discriminant
            .terms
            .iter()
            .map(|(c, e)| {
                let mut row = vec![*c];
                row.extend(e.iter().map(|&x| i64::from(x)));
                ints(&row)
            })
            .collect();
        out.push_str(&format!(
            "\n[discriminant]\nweights = {}\nterms = [{}]\n",
            ints(&self.discriminant_weights),
            terms.join(", ")
        ));
        out
    }

    pub fn compute_checksum(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("version = {}\n", self.version));
        hasher.update(self.render_body());
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }

    /// Canonical rendering with a freshly computed checksum.
    pub fn render(&self) -> String {
        format!(
            "{HEADER}version = {}\nchecksum = {}\n{}",
            self.version,
            quote(&self.compute_checksum()),
            self.render_body()
        )
    }

    /// Builds the group and checks that `psi` is a bijection onto `Irr(G₄)`.
    pub fn build_group(&self) -> Result<ReflGroup, G4Error> {
        let g = GroupBuilder::new(&self.group_name).min_conductor(self.conductor).build(self.generators.clone())?;
        if g.order() != 24 || g.num_classes() != 7 {
            return Err(bad(format!(
                "generators give a group of order {} with {} classes",
                g.order(),
                g.num_classes()
            )));
        }
        let table = g.character_table()?;
        let mut hit = BTreeSet::new();
        for name in &self.psi {
            let i = table.index_of(name).map_err(|_| bad(format!("psi names unknown character {name:?}")))?;
            if !hit.insert(i) {
                return Err(bad(format!("psi is not injective at {name:?}")));
            }
        }
        if hit.len() != table.len() {
            return Err(bad("psi is not surjective"));
        }
        Ok(g)
    }

    /// Weight map of a named divisor class.
    pub fn weights_of(&self, class: &str) -> Result<&BTreeMap<String, i64>, G4Error> {
        self.weights.get(class).ok_or_else(|| bad(format!("no weights for class {class:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_round_trip() {
        let f = G4Fixture::bundled().unwrap();
        assert_eq!(f.render(), BUNDLED_FIXTURE);
        assert_eq!(f.z_degrees, vec![0, 4, -4, 2, -2, -6, 6, 0]);
        assert_eq!(f.b_degrees, vec![2, 6, 0, 12, 8, 4]);
        assert_eq!(f.fixed_points.len(), 7);
        f.build_group().unwrap();
    }

    #[test]
    fn drift_is_detected() {
        let tampered = BUNDLED_FIXTURE.replace("b = [2, 6, 0, 12, 8, 4]", "b = [2, 6, 0, 12, 8, 5]");
        assert_ne!(tampered, BUNDLED_FIXTURE);
        assert!(matches!(parse_g4_fixture(&tampered), Err(G4Error::Checksum { .. })));
    }

    #[test]
    fn rejects_malformed() {
        let v2 = BUNDLED_FIXTURE.replace("version = 1", "version = 2");
        assert!(matches!(parse_g4_fixture(&v2), Err(G4Error::Fixture(_))));
        assert!(parse_g4_fixture("version = 1").is_err());
        let unknown = BUNDLED_FIXTURE.replace("\"q6\" = 4", "\"q7\" = 4");
        assert!(matches!(parse_g4_fixture(&unknown), Err(G4Error::Fixture(_))));
    }

    #[test]
    fn psi_must_be_bijective() {
        let mut f = G4Fixture::bundled().unwrap();
        f.psi[0] = "1".into();
        assert!(f.build_group().is_err());
    }
}
