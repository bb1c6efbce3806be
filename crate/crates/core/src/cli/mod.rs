//! Command-line surface: the braid and coset commands, and the genus-zero
//! census harness, with project-file output.

pub mod project;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num_bigint::BigUint;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::braid::ClassSignature;
use crate::config::Config;
use crate::count::structure_constant;
use crate::hurwitz::{
    genus_zero_signatures_in_range, reduced_genus, GenusVariant, HurwitzError,
};
use crate::orbit::{all_braid_orbits, CountMode, OrbitContext, OrbitError, RunResult};
use crate::perm::{
    coset_action, normalizer_in_sym, split_perm_list, PermError, PermGroup, Permutation,
};
use project::ProjectWriter;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl CliError {
    /// Exit codes: 0 success, 1 input error, 2 resource cap, 3 internal
    /// invariant failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::EnumerationBound { .. } | PermError::NormalizerDegree(..) => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        match e {
            OrbitError::CapExceeded { .. } | OrbitError::RoundCap(_) => {
                CliError::Resource(e.to_string())
            }
            OrbitError::MissingImage | OrbitError::AccountingUnderflow => {
                CliError::Internal(e.to_string())
            }
            OrbitError::Perm(p) => p.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<HurwitzError> for CliError {
    fn from(e: HurwitzError) -> Self {
        match e {
            HurwitzError::Orbit(o) => o.into(),
            HurwitzError::RelationFailure(..)
            | HurwitzError::Intransitive(_)
            | HurwitzError::NotBlockRespecting { .. }
            | HurwitzError::NegativeGenus { .. } => CliError::Internal(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Threshold,
    Unlimited,
}

impl From<Mode> for CountMode {
    fn from(m: Mode) -> CountMode {
        match m {
            Mode::Exact => CountMode::Exact,
            Mode::Threshold => CountMode::Threshold,
            Mode::Unlimited => CountMode::Unlimited,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Equivalence {
    Inner,
    Normalizer,
}

/// Options shared by the braid-orbit commands.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub project: String,
    pub project_parent: PathBuf,
    pub mode: Mode,
    pub seed: u64,
    pub equivalence: Equivalence,
    pub normalizer_gens: Option<PathBuf>,
    pub orbit_cap: Option<usize>,
    pub batch: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            project: "TEMP".into(),
            project_parent: PathBuf::from("."),
            mode: Mode::Exact,
            seed: 0,
            equivalence: Equivalence::Inner,
            normalizer_gens: None,
            orbit_cap: None,
            batch: None,
        }
    }
}

impl RunOptions {
    fn config(&self) -> Config {
        let mut cfg = Config::default().with_seed(self.seed);
        if let Some(cap) = self.orbit_cap {
            cfg.orbit_cap = cap;
        }
        if let Some(batch) = self.batch {
            cfg.batch_size = batch;
        }
        cfg
    }
}

/// Reads a group file: first line `degree n`, then one generator per line.
pub fn load_group_file(path: &Path) -> Result<PermGroup, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("empty group file".into()))?;
    let degree: usize = header
        .strip_prefix("degree ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| CliError::Input(format!("bad header {header:?}")))?;
    let mut gens = Vec::new();
    for line in lines {
        gens.push(Permutation::parse(line.trim(), degree)?);
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".into());
    Ok(PermGroup::build(degree, gens)?.with_name(name))
}

fn looks_like_class_label(s: &str) -> bool {
    let digits = s.chars().take_while(|c| c.is_ascii_digit()).count();
    digits > 0 && s[digits..].chars().all(|c| c.is_ascii_uppercase()) && s.len() > digits
}

/// Parses a tuple spec: comma-separated permutation strings or class labels.
fn resolve_tuple_spec(
    group: &PermGroup,
    spec: &str,
    cfg: &Config,
) -> Result<Vec<Permutation>, CliError> {
    let mut out = Vec::new();
    for part in split_perm_list(spec) {
        if looks_like_class_label(&part) {
            let data = group.class_data(cfg)?;
            let class = data
                .by_label(&part)
                .ok_or_else(|| CliError::Input(format!("no class labelled {part}")))?;
            out.push(class.representative.clone());
        } else {
            let p = Permutation::parse(&part, group.degree())?;
            if !group.contains(&p) {
                return Err(CliError::Input(format!("{p} lies outside the group")));
            }
            out.push(p);
        }
    }
    if out.len() < 3 {
        return Err(CliError::Input(format!(
            "tuple needs at least 3 entries, got {}",
            out.len()
        )));
    }
    Ok(out)
}

/// Block-ordered signature of the classes represented by the entries.
fn signature_from_entries(
    group: &PermGroup,
    entries: &[Permutation],
    cfg: &Config,
) -> Result<ClassSignature, CliError> {
    let data = group.class_data(cfg)?;
    let mut ids: Vec<usize> = entries
        .iter()
        .map(|e| {
            data.class_of(e)
                .ok_or_else(|| CliError::Input(format!("{e} lies outside the group")))
        })
        .collect::<Result<_, _>>()?;
    ids.sort_unstable();
    if ids.first() == Some(&0) && data.classes[0].element_order == 1 {
        return Err(CliError::Input(
            "tuple entries must be nontrivial (no identity classes)".into(),
        ));
    }
    let labels = ids.iter().map(|&i| data.classes[i].label.clone()).collect();
    ClassSignature::new(ids, labels).map_err(|e| CliError::Input(e.to_string()))
}

fn obtain_normalizer(
    group: &PermGroup,
    options: &RunOptions,
    cfg: &Config,
) -> Result<PermGroup, CliError> {
    let n = match &options.normalizer_gens {
        Some(path) => {
            let supplied = load_group_file(path)?;
            if supplied.degree() != group.degree() {
                return Err(CliError::Input(
                    "normalizer generators have the wrong degree".into(),
                ));
            }
            let mut gens = group.generators().to_vec();
            gens.extend(supplied.generators().iter().cloned());
            PermGroup::build(group.degree(), gens)?.with_name(format!("N({})", group.name()))
        }
        None => normalizer_in_sym(group, cfg)?,
    };
    // verify: contains the group, and conjugation by every generator
    // preserves it
    if !n.contains_group(group) {
        return Err(CliError::Input("normalizer does not contain the group".into()));
    }
    for t in n.generators() {
        for s in group.generators() {
            if !group.contains(&s.conjugate_by(t)) {
                return Err(CliError::Input(
                    "supplied generators do not normalize the group".into(),
                ));
            }
        }
    }
    Ok(n)
}

/// Per-orbit console block plus summary, shared by the braid commands.
fn run_and_report(
    equivalence: &PermGroup,
    target: &PermGroup,
    sig: ClassSignature,
    variant: GenusVariant,
    options: &RunOptions,
    cfg: &Config,
    out: &mut dyn Write,
) -> Result<RunResult, CliError> {
    writeln!(
        out,
        "Group: {} (degree {}, order {})",
        target.name(),
        target.degree(),
        target.order()
    )?;
    if variant == GenusVariant::Normalizer {
        writeln!(
            out,
            "Equivalence group: {} (order {})",
            equivalence.name(),
            equivalence.order()
        )?;
    }
    writeln!(out, "Classes: {}", sig.display_labels())?;
    writeln!(
        out,
        "Partition: [{}]",
        sig.blocks
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )?;
    let countdown = options.mode != Mode::Unlimited;
    if countdown {
        let c = structure_constant(equivalence, &sig, cfg)
            .map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(out, "Structure constant = {c}")?;
    }
    writeln!(out)?;
    writeln!(
        out,
        "Collecting {} random tuples per round (seed {})",
        cfg.batch_size, cfg.seed
    )?;
    writeln!(out)?;

    let ctx = OrbitContext::for_signature(equivalence, sig, cfg)?.with_target(target);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let result = all_braid_orbits(&ctx, options.mode.into(), &mut rng)?;

    for (k, orbit) in result.orbits.iter().enumerate() {
        writeln!(out, "Orbit {}:", k + 1)?;
        writeln!(out, "Length={}", orbit.len())?;
        writeln!(out, "Generated subgroup size={}", orbit.generated_subgroup_order)?;
        writeln!(out, "Centralizer size={}", orbit.centralizer_order)?;
        if countdown {
            writeln!(
                out,
                "Remaining portion of structure constant={}",
                result.remaining_trace[k]
            )?;
        }
        writeln!(out)?;
    }

    writeln!(out, "Summary: orbits of generating tuples")?;
    writeln!(out)?;
    for orbit in result.generating_orbits() {
        writeln!(out, "Orbit of Length {}", orbit.len())?;
        if ctx.tuple_len() == 4 {
            let report = reduced_genus(
                equivalence,
                &ctx.store_classes,
                orbit,
                variant,
                cfg,
            )?;
            match variant {
                GenusVariant::Inner => {
                    writeln!(out, "Inner Hurwitz curve genus = {}", report.inner.genus)?;
                    match report.straight_genus() {
                        Some(g) => {
                            writeln!(out, "Straight inner Hurwitz curve genus = {g}")?
                        }
                        None => {
                            for (ci, c) in report.straight.iter().enumerate() {
                                writeln!(
                                    out,
                                    "Straight inner Hurwitz curve genus (component {}) = {}",
                                    ci + 1,
                                    c.genus
                                )?;
                            }
                        }
                    }
                }
                GenusVariant::Normalizer => {
                    writeln!(out, "Hurwitz curve genus = {}", report.inner.genus)?;
                }
            }
        }
        writeln!(out)?;
    }
    Ok(result)
}

fn write_project(
    equivalence: &PermGroup,
    result: &RunResult,
    sig: &ClassSignature,
    options: &RunOptions,
    cfg: &Config,
) -> Result<PathBuf, CliError> {
    let writer = ProjectWriter::create(&options.project_parent, &options.project)?;
    for (k, orbit) in result.orbits.iter().enumerate() {
        writer.write_orbit(k + 1, equivalence.name(), equivalence.degree(), orbit)?;
    }
    let mut summary = String::new();
    summary.push_str(&format!("project {}\n", options.project));
    summary.push_str(&format!(
        "group {} degree {} order {}\n",
        equivalence.name(),
        equivalence.degree(),
        equivalence.order()
    ));
    summary.push_str(&format!("signature {}\n", sig.labels.join(",")));
    summary.push_str(&format!("mode {:?}\n", options.mode));
    summary.push_str(&format!("seed {}\n", cfg.seed));
    summary.push_str(&format!("schedule {}\n", crate::orbit::SCHEDULE_VERSION));
    if let Some(c) = &result.structure_constant {
        summary.push_str(&format!("structure_constant {c}\n"));
    }
    let mut total = BigUint::zero();
    for (k, orbit) in result.orbits.iter().enumerate() {
        total += &orbit.tuple_count;
        summary.push_str(&format!(
            "orbit {} length {} tuple_count {} subgroup {} centralizer {} generates {}\n",
            k + 1,
            orbit.len(),
            orbit.tuple_count,
            orbit.generated_subgroup_order,
            orbit.centralizer_order,
            orbit.generates_target
        ));
    }
    summary.push_str(&format!("total_tuples {total}\n"));
    writer.write_text("SUMMARY", &summary)?;
    Ok(writer.dir().to_path_buf())
}

/// The plain braid command: compute all orbits for the classes of a tuple.
pub fn cmd_braid(
    group_file: &Path,
    tuple_spec: &str,
    options: &RunOptions,
    out: &mut dyn Write,
) -> Result<RunResult, CliError> {
    let group = load_group_file(group_file)?;
    let cfg = options.config();
    let entries = resolve_tuple_spec(&group, tuple_spec, &cfg)?;
    match options.equivalence {
        Equivalence::Inner => {
            let sig = signature_from_entries(&group, &entries, &cfg)?;
            let result = run_and_report(
                &group,
                &group,
                sig.clone(),
                GenusVariant::Inner,
                options,
                &cfg,
                out,
            )?;
            let dir = write_project(&group, &result, &sig, options, &cfg)?;
            writeln!(out, "Project files written to {}", dir.display())?;
            Ok(result)
        }
        Equivalence::Normalizer => {
            let normalizer = obtain_normalizer(&group, options, &cfg)?;
            let sig = signature_from_entries(&normalizer, &entries, &cfg)?;
            let result = run_and_report(
                &normalizer,
                &group,
                sig.clone(),
                GenusVariant::Normalizer,
                options,
                &cfg,
                out,
            )?;
            let dir = write_project(&normalizer, &result, &sig, options, &cfg)?;
            writeln!(out, "Project files written to {}", dir.display())?;
            Ok(result)
        }
    }
}

/// The coset command: switch to the action on cosets of a core-free
/// subgroup, replace the equivalence group by the normalizer in the ambient
/// symmetric group, and run there.
pub fn cmd_braid_coset(
    group_file: &Path,
    tuple_spec: &str,
    subgroup_file: &Path,
    options: &RunOptions,
    out: &mut dyn Write,
) -> Result<RunResult, CliError> {
    let group = load_group_file(group_file)?;
    let subgroup = load_group_file(subgroup_file)?;
    if subgroup.degree() != group.degree() {
        return Err(CliError::Input("subgroup degree differs from group".into()));
    }
    let cfg = options.config();
    let action = coset_action(&group, subgroup.generators(), &cfg)?;
    let entries0 = resolve_tuple_spec(&group, tuple_spec, &cfg)?;
    let entries: Vec<Permutation> = entries0
        .iter()
        .map(|e| action.translate(e))
        .collect::<Result<_, _>>()?;
    let image = action
        .quotient
        .clone()
        .with_name(format!("{}_on_{}", group.name(), action.quotient.degree()));
    writeln!(
        out,
        "Coset action: degree {} on cosets of a subgroup of order {}",
        image.degree(),
        subgroup.order()
    )?;
    let normalizer = obtain_normalizer(&image, options, &cfg)?;
    let sig = signature_from_entries(&normalizer, &entries, &cfg)?;
    let result = run_and_report(
        &normalizer,
        &image,
        sig.clone(),
        GenusVariant::Normalizer,
        options,
        &cfg,
        out,
    )?;
    let dir = write_project(&normalizer, &result, &sig, options, &cfg)?;
    writeln!(out, "Project files written to {}", dir.display())?;
    Ok(result)
}

/// One census row: a signature with the orbit lengths and genera found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub signature: Vec<String>,
    pub r: usize,
    pub length: usize,
    pub count: usize,
    pub genus: Option<u64>,
    pub straight_genus: Option<u64>,
}

/// Runs the genus-zero census for one group: every admissible signature in
/// the length range, restricted to orbits of generating tuples.
pub fn cmd_census(
    group_file: &Path,
    r_min: usize,
    r_max: usize,
    options: &RunOptions,
    out: &mut dyn Write,
) -> Result<Vec<CensusRow>, CliError> {
    let group = load_group_file(group_file)?;
    let cfg = options.config();
    census_of_group(&group, r_min, r_max, options, &cfg, out)
}

pub fn census_of_group(
    group: &PermGroup,
    r_min: usize,
    r_max: usize,
    options: &RunOptions,
    cfg: &Config,
    out: &mut dyn Write,
) -> Result<Vec<CensusRow>, CliError> {
    if !group.is_transitive() {
        return Err(CliError::Input("census requires a transitive group".into()));
    }
    writeln!(
        out,
        "Genus zero census: {} (degree {}, order {}, {})",
        group.name(),
        group.degree(),
        group.order(),
        if group.is_primitive() {
            "primitive"
        } else {
            "imprimitive"
        }
    )?;
    let signatures = genus_zero_signatures_in_range(group, r_min, r_max, cfg)?;
    let mut rows: Vec<CensusRow> = Vec::new();
    for sig in signatures {
        let c = structure_constant(group, &sig, cfg)
            .map_err(|e| CliError::Input(e.to_string()))?;
        if c.is_zero() {
            continue;
        }
        let ctx = OrbitContext::for_signature(group, sig.clone(), cfg)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let result = all_braid_orbits(&ctx, options.mode.into(), &mut rng)?;
        // group the generating orbits by (length, genus)
        let mut buckets: BTreeMap<(usize, Option<u64>, Option<u64>), usize> = BTreeMap::new();
        for orbit in result.generating_orbits() {
            if sig.len() == 3 {
                // three-branch-point convention: the pure braids act
                // trivially on conjugation classes of triples, so the tables
                // list one length-1 family per class rather than the orbits
                // under the class-order-preserving braids
                *buckets.entry((1, None, None)).or_default() += orbit.len();
                continue;
            }
            let (genus, straight) = if sig.len() == 4 {
                let report = reduced_genus(
                    group,
                    &ctx.store_classes,
                    orbit,
                    GenusVariant::Inner,
                    cfg,
                )?;
                (Some(report.inner.genus), report.straight_genus())
            } else {
                (None, None)
            };
            *buckets.entry((orbit.len(), genus, straight)).or_default() += 1;
        }
        for ((length, genus, straight), count) in buckets {
            rows.push(CensusRow {
                signature: sig.labels.clone(),
                r: sig.len(),
                length,
                count,
                genus,
                straight_genus: straight,
            });
        }
    }
    // aligned report, one line per row
    writeln!(
        out,
        "{:<34} {:>10} {:>8} {:>7} {:>9}",
        "classes", "length", "orbits", "genus", "straight"
    )?;
    for row in &rows {
        writeln!(
            out,
            "{:<34} {:>10} {:>8} {:>7} {:>9}",
            format!("({})", row.signature.join(",")),
            row.length,
            row.count,
            row.genus.map(|g| g.to_string()).unwrap_or_default(),
            row.straight_genus
                .map(|g| g.to_string())
                .unwrap_or_default()
        )?;
    }
    // machine-readable rows
    let writer = ProjectWriter::create(&options.project_parent, &options.project)?;
    let mut csv = String::from("signature;r;length;count;genus;straight\n");
    for row in &rows {
        csv.push_str(&format!(
            "{};{};{};{};{};{}\n",
            row.signature.join(","),
            row.r,
            row.length,
            row.count,
            row.genus.map(|g| g.to_string()).unwrap_or_default(),
            row.straight_genus
                .map(|g| g.to_string())
                .unwrap_or_default()
        ));
    }
    writer.write_text("CENSUS.csv", &csv)?;
    Ok(rows)
}
