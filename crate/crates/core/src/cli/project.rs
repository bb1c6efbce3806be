//! Project directories: one file per orbit plus a summary, all byte-stable
//! for reproducible runs.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::braid::Tuple;
use crate::orbit::OrbitRecord;
use crate::perm::Permutation;

/// A project output directory. Creating it removes any previous contents of
/// the same name.
pub struct ProjectWriter {
    dir: PathBuf,
}

impl ProjectWriter {
    pub fn create(parent: &Path, name: &str) -> std::io::Result<ProjectWriter> {
        let dir = parent.join(name);
        if dir.exists() {
            std::fs::remove_dir_all(&dir)?;
        }
        std::fs::create_dir_all(&dir)?;
        Ok(ProjectWriter { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn write_orbit(
        &self,
        k: usize,
        group_name: &str,
        degree: usize,
        record: &OrbitRecord,
    ) -> std::io::Result<PathBuf> {
        let path = self.dir.join(format!("ORBIT_{k}"));
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(f, "orbit {k}")?;
        writeln!(f, "group {group_name}")?;
        writeln!(f, "degree {degree}")?;
        writeln!(f, "signature {}", record.signature.labels.join(","))?;
        writeln!(
            f,
            "partition {}",
            record
                .signature
                .blocks
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )?;
        writeln!(f, "length {}", record.len())?;
        writeln!(f, "tuple_count {}", record.tuple_count)?;
        writeln!(
            f,
            "generated_subgroup_order {}",
            record.generated_subgroup_order
        )?;
        writeln!(f, "centralizer_order {}", record.centralizer_order)?;
        writeln!(f, "generates_group {}", record.generates_target)?;
        writeln!(f, "representatives")?;
        for t in &record.representatives {
            writeln!(f, "{}", t.to_line())?;
        }
        writeln!(f, "actions")?;
        for (name, action) in record.generator_names.iter().zip(&record.generator_actions) {
            writeln!(f, "{name} {}", action_to_cycles(action))?;
        }
        writeln!(f, "pure_actions")?;
        for (name, action) in record.pure_names.iter().zip(&record.pure_actions) {
            writeln!(f, "{name} {}", action_to_cycles(action))?;
        }
        writeln!(f, "end")?;
        Ok(path)
    }

    pub fn write_text(&self, name: &str, contents: &str) -> std::io::Result<PathBuf> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents)?;
        Ok(path)
    }
}

fn action_to_cycles(action: &[u32]) -> String {
    let images: Vec<u32> = action.iter().map(|&x| x - 1).collect();
    Permutation::from_images(images)
        .expect("recorded actions are bijections")
        .to_string()
}

/// Parsed form of an orbit file; field order is fixed by the writer.
#[derive(Debug)]
pub struct ParsedOrbit {
    pub group: String,
    pub degree: usize,
    pub signature_labels: Vec<String>,
    pub length: usize,
    pub tuple_count: String,
    pub generated_subgroup_order: String,
    pub centralizer_order: String,
    pub generates_group: bool,
    pub representatives: Vec<Tuple>,
    pub actions: Vec<(String, Permutation)>,
    pub pure_actions: Vec<(String, Permutation)>,
}

pub fn parse_orbit_file(path: &Path) -> Result<ParsedOrbit, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut lines = text.lines().peekable();
    let mut field = |prefix: &str| -> Result<String, String> {
        loop {
            let line = lines.next().ok_or_else(|| format!("missing {prefix}"))?;
            if let Some(rest) = line.strip_prefix(prefix) {
                return Ok(rest.trim().to_string());
            }
            if line.starts_with("orbit ") || line.starts_with("partition ") {
                continue;
            }
            return Err(format!("expected {prefix:?}, found {line:?}"));
        }
    };
    let group = field("group ")?;
    let degree: usize = field("degree ")?.parse().map_err(|_| "degree")?;
    let signature_labels: Vec<String> = field("signature ")?
        .split(',')
        .map(|s| s.to_string())
        .collect();
    let length: usize = field("length ")?.parse().map_err(|_| "length")?;
    let tuple_count = field("tuple_count ")?;
    let generated_subgroup_order = field("generated_subgroup_order ")?;
    let centralizer_order = field("centralizer_order ")?;
    let generates_group = field("generates_group ")? == "true";
    let mut lines = text.lines().skip_while(|l| *l != "representatives");
    lines.next();
    let mut representatives = Vec::with_capacity(length);
    for _ in 0..length {
        let line = lines.next().ok_or("truncated representatives")?;
        representatives.push(Tuple::parse_line(line, degree).map_err(|e| e.to_string())?);
    }
    if lines.next() != Some("actions") {
        return Err("missing actions section".into());
    }
    let mut actions = Vec::new();
    let mut pure_actions = Vec::new();
    let mut in_pure = false;
    for line in lines {
        if line == "pure_actions" {
            in_pure = true;
            continue;
        }
        if line == "end" {
            break;
        }
        let (name, cycles) = line.split_once(' ').ok_or("malformed action line")?;
        let p = Permutation::parse(cycles, length).map_err(|e| e.to_string())?;
        if in_pure {
            pure_actions.push((name.to_string(), p));
        } else {
            actions.push((name.to_string(), p));
        }
    }
    Ok(ParsedOrbit {
        group,
        degree,
        signature_labels,
        length,
        tuple_count,
        generated_subgroup_order,
        centralizer_order,
        generates_group,
        representatives,
        actions,
        pure_actions,
    })
}
