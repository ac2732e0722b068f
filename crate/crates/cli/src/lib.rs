//! Report generation behind the `cmrees` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use cmrees::center::{parse_family_file, rees_lattice, FamilyPartition};
use cmrees::chartab::{fake_degree, inner_product};
use cmrees::chern::{default_order, verify_theorem_a, TheoremAReport};
use cmrees::exact::{format_literal_in, CycScalar};
use cmrees::g4::{parse_g4_fixture, verify_theorem_b, G4Fixture, TheoremBReport};
use cmrees::groups::{parse_group_file, registry, GroupError, ReflGroup, DEFAULT_MAX_ORDER};
use cmrees::identities::{verify_identities, IdentityReport};

pub const MAX_ORDER_ENV: &str = "CMREES_MAX_GROUP_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Chartab,
    Identities,
    TheoremA,
    TheoremB,
    Conjecture,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Chartab => "chartab",
            Suite::Identities => "identities",
            Suite::TheoremA => "theorem-a",
            Suite::TheoremB => "theorem-b",
            Suite::Conjecture => "conjecture",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSelector {
    Registry(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Chartab,
    /// Empty means every applicable suite.
    Verify(Vec<Suite>),
    Conjecture,
    Groups,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub group: Option<GroupSelector>,
    pub order: Option<usize>,
    pub families: Option<PathBuf>,
    /// Replacement for the bundled G4 fixture.
    pub fixture: Option<PathBuf>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub max_order: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

/// Reads the closure bound override; `None` when the variable is unset.
pub fn max_order_from_env(value: Option<String>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_MAX_ORDER),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{MAX_ORDER_ENV} must be a positive integer, got {v:?}"))),
    }
}

/// A rendered report and whether every selected check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
    pub first_witness: Option<String>,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_group(sel: &GroupSelector, max_order: usize) -> Result<ReflGroup, CliError> {
    let built = match sel {
        GroupSelector::Registry(name) => registry::build_with_bound(name, max_order),
        GroupSelector::File(path) => {
            let spec = parse_group_file(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            spec.build(max_order)
        }
    };
    built.map_err(|e| match e {
        GroupError::UnknownGroup(_)
        | GroupError::Definition(_)
        | GroupError::BadShape { .. }
        | GroupError::OrderBoundExceeded { .. } => CliError::Usage(e.to_string()),
        other => compute(other),
    })
}

/// Optional group name and blocks from a family file.
type FamilyFile = (Option<String>, Vec<Vec<String>>);

fn load_families(cfg: &RunConfig) -> Result<Option<FamilyFile>, CliError> {
    cfg.families
        .as_ref()
        .map(|p| parse_family_file(&read(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))))
        .transpose()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub size: usize,
    pub codim: usize,
    pub element_order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterRow {
    pub name: String,
    pub degree: String,
    pub fake_degree: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartabReport {
    pub group: String,
    pub order: usize,
    pub dim: usize,
    /// Character values are written over `z = ζ_conductor`.
    pub conductor: u32,
    pub invariant_degrees: Vec<u32>,
    pub classes: Vec<ClassRow>,
    pub characters: Vec<CharacterRow>,
}

impl ChartabReport {
    pub fn build(g: &ReflGroup) -> Result<Self, CliError> {
        let table = g.character_table().map_err(compute)?;
        let m = g.conductor();
        let lit = |x: &CycScalar| format_literal_in(x, m).map_err(compute);
        let classes = g
            .classes()
            .iter()
            .map(|c| ClassRow {
                size: c.size(),
                codim: c.codim,
                element_order: c.order,
            })
            .collect();
        let characters = table
            .names()
            .iter()
            .zip(table.characters())
            .map(|(name, chi)| {
                Ok(CharacterRow {
                    name: name.clone(),
                    degree: lit(chi.degree())?,
                    fake_degree: fake_degree(g, chi).map_err(compute)?.to_string(),
                    values: chi.values().iter().map(lit).collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(ChartabReport {
            group: g.name().to_string(),
            order: g.order(),
            dim: g.dim(),
            conductor: m,
            invariant_degrees: g.invariant_degrees().map_err(compute)?.to_vec(),
            classes,
            characters,
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!(
            "# group\t{}\n# order\t{}\n# dim\t{}\n# conductor\t{}\n",
            self.group, self.order, self.dim, self.conductor
        );
        let degrees: Vec<String> = self.invariant_degrees.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "# invariant_degrees\t{}", degrees.join(","));
        out.push_str("class\tsize\tcodim\telement_order\n");
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "C{i}\t{}\t{}\t{}", c.size, c.codim, c.element_order);
        }
        out.push_str("character\tdegree\tfake_degree");
        for i in 0..self.classes.len() {
            let _ = write!(out, "\tC{i}");
        }
        out.push('\n');
        for chi in &self.characters {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", chi.name, chi.degree, chi.fake_degree, chi.values.join("\t"));
        }
        out
    }
}

/// Consistency checks on the computed table and degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartabCheck {
    pub classes: usize,
    pub characters: usize,
    pub orthonormal: bool,
    pub sum_of_squares: bool,
    pub degree_product: bool,
    pub reflection_count: bool,
    pub passed: bool,
}

impl ChartabCheck {
    pub fn build(g: &ReflGroup) -> Result<Self, CliError> {
        let table = g.character_table().map_err(compute)?;
        let chars = table.characters();
        let mut orthonormal = true;
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip = inner_product(g, a, b).map_err(compute)?;
                let expected = CycScalar::from_integer(i64::from(i == j));
                orthonormal &= ip == expected;
            }
        }
        let squares = chars
            .iter()
            .fold(CycScalar::zero(), |acc, c| &acc + &(c.degree() * c.degree()));
        let sum_of_squares = squares == CycScalar::from_integer(g.order() as i64);
        let degrees = g.invariant_degrees().map_err(compute)?;
        let degree_product = degrees.iter().map(|&d| d as usize).product::<usize>() == g.order();
        let reflection_count = degrees.iter().map(|&d| d as usize - 1).sum::<usize>() == g.reflections().len();
        Ok(ChartabCheck {
            classes: g.num_classes(),
            characters: chars.len(),
            orthonormal,
            sum_of_squares,
            degree_product,
            reflection_count,
            passed: chars.len() == g.num_classes() && orthonormal && sum_of_squares && degree_product && reflection_count,
        })
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "check\tvalue\nclasses\t{}\ncharacters\t{}\northonormal\t{}\nsum_of_squares\t{}\ndegree_product\t{}\nreflection_count\t{}\npassed\t{}\n",
            self.classes, self.characters, self.orthonormal, self.sum_of_squares, self.degree_product, self.reflection_count, self.passed
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub degree: usize,
    pub gr_dim: usize,
    pub filtered_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub group: String,
    pub blocks: usize,
    pub rows: Vec<ConjectureRow>,
    /// For `n = 1`: degree 0 has dimension 1 and degree 1 carries the rest.
    pub rank_one_structure: Option<bool>,
    pub passed: bool,
}

impl ConjectureReport {
    pub fn build(g: &ReflGroup, blocks: Vec<Vec<String>>) -> Result<Self, CliError> {
        let fam = FamilyPartition::new(g, blocks).map_err(|e| CliError::Usage(e.to_string()))?;
        let lattice = rees_lattice(g, &fam).map_err(compute)?;
        let rows: Vec<ConjectureRow> = lattice
            .gr_dims
            .iter()
            .zip(&lattice.dims)
            .enumerate()
            .map(|(degree, (&gr_dim, &filtered_dim))| ConjectureRow {
                degree,
                gr_dim,
                filtered_dim,
            })
            .collect();
        let blocks = fam.blocks().len();
        let total: usize = lattice.gr_dims.iter().sum();
        let rank_one_structure = (g.dim() == 1).then(|| lattice.gr_dims == vec![1, blocks - 1]);
        let passed = total == blocks && lattice.gr_dims.first() == Some(&1) && rank_one_structure != Some(false);
        Ok(ConjectureReport {
            group: g.name().to_string(),
            blocks,
            rows,
            rank_one_structure,
            passed,
        })
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("# group\t{}\n# blocks\t{}\n", self.group, self.blocks);
        if let Some(s) = self.rank_one_structure {
            let _ = writeln!(out, "# rank_one_structure\t{s}");
        }
        let _ = writeln!(out, "# passed\t{}", self.passed);
        out.push_str("degree\tgr_dim\tfiltered_dim\n");
        for r in &self.rows {
            let _ = writeln!(out, "{}\t{}\t{}", r.degree, r.gr_dim, r.filtered_dim);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chartab: Option<ChartabCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<IdentityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_a: Option<TheoremAReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_b: Option<TheoremBReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureReport>,
}

impl VerifyReport {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# group\t{}\n# passed\t{}\n", self.group, self.passed);
        let mut section = |name: &str, body: String| {
            let _ = write!(out, "\n## suite\t{name}\n{body}");
        };
        if let Some(r) = &self.chartab {
            section("chartab", r.to_tsv());
        }
        if let Some(r) = &self.identities {
            section("identities", r.to_tsv());
        }
        if let Some(r) = &self.theorem_a {
            section("theorem-a", r.to_tsv());
        }
        if let Some(r) = &self.theorem_b {
            section("theorem-b", r.to_tsv());
        }
        if let Some(r) = &self.conjecture {
            section("conjecture", r.to_tsv());
        }
        out
    }

    fn first_witness(&self) -> Option<String> {
        if let Some(r) = self.chartab.as_ref().filter(|r| !r.passed) {
            return Some(format!("chartab: {r:?}"));
        }
        if let Some(r) = &self.identities {
            if let Some(c) = r.checks.iter().find(|c| !c.passed()) {
                return Some(format!("{}: {}", c.name, c.failures[0]));
            }
        }
        if let Some(w) = self.theorem_a.as_ref().and_then(|r| r.witnesses.first()) {
            return Some(format!("theorem-a: {w}"));
        }
        if let Some(w) = self.theorem_b.as_ref().and_then(|r| r.witnesses.first()) {
            return Some(format!("theorem-b: {w}"));
        }
        if let Some(r) = self.conjecture.as_ref().filter(|r| !r.passed) {
            return Some(format!("conjecture: gr dims {:?}", r.rows.iter().map(|x| x.gr_dim).collect::<Vec<_>>()));
        }
        None
    }
}

fn require_group(cfg: &RunConfig, fallback: Option<&str>) -> Result<ReflGroup, CliError> {
    match (&cfg.group, fallback) {
        (Some(sel), _) => load_group(sel, cfg.max_order),
        (None, Some(name)) => load_group(&GroupSelector::Registry(name.to_string()), cfg.max_order),
        (None, None) => Err(CliError::Usage("one of --group or --group-file is required".into())),
    }
}

fn render<T: Serialize>(cfg: &RunConfig, value: &T, tsv: impl FnOnce(&T) -> String) -> String {
    match cfg.format {
        Format::Json => json(value),
        Format::Tsv => tsv(value),
    }
}

pub fn cmd_chartab(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let g = require_group(cfg, None)?;
    let report = ChartabReport::build(&g)?;
    Ok(Outcome {
        text: render(cfg, &report, ChartabReport::to_tsv),
        passed: true,
        first_witness: None,
    })
}

pub fn cmd_conjecture(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let Some((file_group, blocks)) = load_families(cfg)? else {
        return Err(CliError::Usage("conjecture needs --families".into()));
    };
    let g = require_group(cfg, file_group.as_deref())?;
    check_family_group(&g, file_group.as_deref())?;
    let report = ConjectureReport::build(&g, blocks)?;
    Ok(Outcome {
        text: render(cfg, &report, ConjectureReport::to_tsv),
        passed: report.passed,
        first_witness: (!report.passed).then(|| format!("gr dims {:?}", report.rows.iter().map(|r| r.gr_dim).collect::<Vec<_>>())),
    })
}

fn check_family_group(g: &ReflGroup, file_group: Option<&str>) -> Result<(), CliError> {
    match file_group {
        Some(name) if name != g.name() => Err(CliError::Usage(format!(
            "family file is for group {name:?}, not {:?}",
            g.name()
        ))),
        _ => Ok(()),
    }
}

pub fn cmd_verify(cfg: &RunConfig, suites: &[Suite]) -> Result<Outcome, CliError> {
    let families = load_families(cfg)?;
    let only_b = !suites.is_empty() && suites.iter().all(|s| *s == Suite::TheoremB);
    let file_group = families.as_ref().and_then(|(g, _)| g.clone());
    let fallback = if only_b { Some("G4") } else { file_group.as_deref() };
    let g = require_group(cfg, fallback)?;

    let mut suites: Vec<Suite> = if suites.is_empty() {
        let mut all = vec![Suite::Chartab, Suite::Identities, Suite::TheoremA];
        if g.name() == "G4" {
            all.push(Suite::TheoremB);
        }
        if families.is_some() {
            all.push(Suite::Conjecture);
        }
        all
    } else {
        suites.to_vec()
    };
    suites.sort();
    suites.dedup();

    let order = cfg.order.unwrap_or_else(|| default_order(&g));
    let mut report = VerifyReport {
        group: g.name().to_string(),
        passed: true,
        chartab: None,
        identities: None,
        theorem_a: None,
        theorem_b: None,
        conjecture: None,
    };
    for suite in suites {
        match suite {
            Suite::Chartab => report.chartab = Some(ChartabCheck::build(&g)?),
            Suite::Identities => report.identities = Some(verify_identities(&g).map_err(compute)?),
            Suite::TheoremA => {
                if order < g.dim() + 2 {
                    return Err(CliError::Usage(format!("theorem-a needs --order at least {}", g.dim() + 2)));
                }
                report.theorem_a = Some(verify_theorem_a(&g, order).map_err(compute)?);
            }
            Suite::TheoremB => {
                if g.name() != "G4" {
                    return Err(CliError::Usage(format!("theorem-b applies to G4 only, not {}", g.name())));
                }
                let fixture = match &cfg.fixture {
                    None => G4Fixture::bundled().map_err(compute)?,
                    Some(p) => parse_g4_fixture(&read(p)?).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
                };
                report.theorem_b = Some(verify_theorem_b(&fixture).map_err(compute)?);
            }
            Suite::Conjecture => {
                let Some((file_group, blocks)) = families.clone() else {
                    return Err(CliError::Usage("the conjecture suite needs --families".into()));
                };
                check_family_group(&g, file_group.as_deref())?;
                report.conjecture = Some(ConjectureReport::build(&g, blocks)?);
            }
        }
    }
    report.passed = report.chartab.as_ref().is_none_or(|r| r.passed)
        && report.identities.as_ref().is_none_or(|r| r.passed)
        && report.theorem_a.as_ref().is_none_or(|r| r.equal)
        && report.theorem_b.as_ref().is_none_or(|r| r.passed)
        && report.conjecture.as_ref().is_none_or(|r| r.passed);
    Ok(Outcome {
        text: render(cfg, &report, VerifyReport::to_tsv),
        passed: report.passed,
        first_witness: report.first_witness(),
    })
}

#[derive(Debug, Clone, Serialize)]
struct GroupListing {
    name: String,
    order: usize,
    dim: usize,
}

pub fn cmd_groups(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let list = registry::names()
        .into_iter()
        .map(|name| {
            let g = registry::build_with_bound(&name, cfg.max_order).map_err(compute)?;
            Ok(GroupListing {
                order: g.order(),
                dim: g.dim(),
                name,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let text = render(cfg, &list, |l| {
        let mut out = String::from("name\torder\tdim\n");
        for g in l {
            let _ = writeln!(out, "{}\t{}\t{}", g.name, g.order, g.dim);
        }
        out
    });
    Ok(Outcome {
        text,
        passed: true,
        first_witness: None,
    })
}

/// Runs the command and writes the report to `--out` when given; otherwise
/// the caller prints `Outcome::text`.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    if cfg.order == Some(0) {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let outcome = match &cfg.command {
        Command::Chartab => cmd_chartab(cfg)?,
        Command::Verify(suites) => cmd_verify(cfg, suites)?,
        Command::Conjecture => cmd_conjecture(cfg)?,
        Command::Groups => cmd_groups(cfg)?,
    };
    if let Some(path) = &cfg.out {
        std::fs::write(path, &outcome.text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command, group: Option<&str>) -> RunConfig {
        RunConfig {
            command,
            group: group.map(|g| GroupSelector::Registry(g.into())),
            order: None,
            families: None,
            fixture: None,
            format: Format::Tsv,
            out: None,
            max_order: DEFAULT_MAX_ORDER,
        }
    }

    #[test]
    fn env_bound() {
        assert_eq!(max_order_from_env(None).unwrap(), DEFAULT_MAX_ORDER);
        assert_eq!(max_order_from_env(Some("50".into())).unwrap(), 50);
        assert!(matches!(max_order_from_env(Some("x".into())), Err(CliError::Usage(_))));
        assert!(matches!(max_order_from_env(Some("0".into())), Err(CliError::Usage(_))));
    }

    #[test]
    fn chartab_shapes() {
        let out = cmd_chartab(&cfg(Command::Chartab, Some("Cyc2"))).unwrap();
        assert!(out.text.contains("eps\t1\tq\t1\t-1\n"), "{}", out.text);
        let out = cmd_chartab(&cfg(Command::Chartab, Some("Cyc1"))).unwrap();
        assert!(out.text.ends_with("character\tdegree\tfake_degree\tC0\n1\t1\t1\t1\n"), "{}", out.text);
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(cmd_chartab(&cfg(Command::Chartab, None)), Err(CliError::Usage(_))));
        assert!(matches!(cmd_chartab(&cfg(Command::Chartab, Some("G99"))), Err(CliError::Usage(_))));
        let c = cfg(Command::Verify(vec![Suite::TheoremB]), Some("Cyc3"));
        assert!(matches!(run(&c), Err(CliError::Usage(_))));
        let mut c = cfg(Command::Verify(vec![Suite::TheoremA]), Some("G4"));
        c.order = Some(3);
        assert!(matches!(run(&c), Err(CliError::Usage(_))));
        c.order = Some(0);
        assert!(matches!(run(&c), Err(CliError::Usage(_))));
    }

    #[test]
    fn bound_too_small() {
        let mut c = cfg(Command::Chartab, Some("G4"));
        c.max_order = 10;
        assert!(matches!(run(&c), Err(CliError::Usage(_))));
    }
}
