//! `ropa`: ingest regulator ROPA templates, convert them to RDF, validate
//! them per jurisdiction and inspect the concept registry.
//!
//! Exit codes: 0 ok, 1 non-compliant, 2 invalid input, 3 unknown
//! jurisdiction, 4 mapping table does not cover the registry.

mod config;
mod exit;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use ropa_core::mapping::{self, MappingCategory};
use ropa_core::rdf::{self, Format, RdfMapper};
use ropa_core::{gap_analysis, parse_ropa_csv, validate, RopaRecord, ValidationReport};
use serde::Serialize;

use config::{CliConfig, ConfigArgs};
use exit::Failure;

#[derive(Debug, Parser)]
#[command(name = "ropa", version, about = "Consolidated ROPA toolchain")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a template CSV export into a dataset (JSON list of records)
    Ingest {
        csv: PathBuf,
        #[arg(long, short)]
        jurisdiction: String,
        /// Output file [default: standard output]
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Emit a dataset as RDF
    Convert {
        dataset: PathBuf,
        #[arg(long, short, default_value = "turtle")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check a dataset against one or all jurisdiction profiles
    #[command(group(ArgGroup::new("target").required(true).args(["jurisdiction", "all"])))]
    Validate {
        dataset: PathBuf,
        #[arg(long, short)]
        jurisdiction: Option<String>,
        #[arg(long)]
        all: bool,
        /// Write validation_<CODE>.json and .txt here
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print JSON instead of the text summary
        #[arg(long)]
        json: bool,
        /// Treat an empty dataset as non-compliant
        #[arg(long)]
        require_nonempty: bool,
    },
    /// Gap analysis of a dataset across jurisdiction profiles
    Report {
        dataset: PathBuf,
        /// Restrict to these jurisdictions [default: all loaded profiles]
        #[arg(long, short)]
        jurisdiction: Vec<String>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the registry and mapping table
    #[command(group(ArgGroup::new("view").required(true).args(["census", "extensions", "list"])))]
    Registry {
        #[arg(long)]
        census: bool,
        #[arg(long)]
        extensions: bool,
        /// Every concept with its mapping, as a Markdown table
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(f) => f.exit(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = CliConfig::load(&cli.config)?;
    match cli.command {
        Command::Ingest { csv, jurisdiction, output } => ingest(&config, &csv, &jurisdiction, output.as_deref()),
        Command::Convert { dataset, format, output } => convert(&config, &dataset, format, output.as_deref()),
        Command::Validate { dataset, jurisdiction, all: _, out_dir, json, require_nonempty } => validate_cmd(
            &config,
            &dataset,
            jurisdiction.as_deref(),
            out_dir.as_deref(),
            json,
            require_nonempty,
        ),
        Command::Report { dataset, jurisdiction, out_dir, json } => {
            report(&config, &dataset, &jurisdiction, out_dir.as_deref(), json)
        }
        Command::Registry { census, extensions, list: _, json } => {
            if census {
                registry_census(&config, json)
            } else if extensions {
                registry_extensions(&config, json)
            } else {
                registry_list(&config, json)
            }
        }
    }
}

fn emit(output: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::invalid(&format!("writing {}", path.display()), e)),
        None => io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|e| Failure::invalid("writing standard output", e)),
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn load_dataset(path: &Path) -> Result<Vec<RopaRecord>, Failure> {
    let file = fs::File::open(path).map_err(|e| Failure::invalid(&format!("dataset {}", path.display()), e))?;
    serde_json::from_reader(io::BufReader::new(file))
        .map_err(|e| Failure::invalid(&format!("dataset {}", path.display()), e))
}

fn ingest(config: &CliConfig, csv: &Path, code: &str, output: Option<&Path>) -> Result<(), Failure> {
    let profile = config.profile(code)?;
    let file = fs::File::open(csv).map_err(|e| Failure::invalid(&format!("CSV {}", csv.display()), e))?;
    let (records, diagnostics) = parse_ropa_csv(io::BufReader::new(file), &profile, &config.registry)
        .map_err(|e| Failure::invalid(&format!("CSV {}", csv.display()), e))?;
    for h in &diagnostics.unknown_headers {
        eprintln!("warning: column {} header `{}` matches no concept; ignored", h.column + 1, h.header);
    }
    if diagnostics.empty_rows_skipped > 0 {
        eprintln!("note: skipped {} empty rows", diagnostics.empty_rows_skipped);
    }
    for n in &diagnostics.coercion_notes {
        eprintln!("note: {} {}: {}", n.record_id, n.concept_name, n.note);
    }
    eprintln!("ingested {} records for {}", records.len(), profile.code);
    emit(output, to_json(&records).as_bytes())
}

fn convert(config: &CliConfig, dataset: &Path, format: Format, output: Option<&Path>) -> Result<(), Failure> {
    let records = load_dataset(dataset)?;
    let mapper = RdfMapper::new(
        &config.registry,
        &config.catalog,
        &config.mapping_table,
        &config.base_iri,
        &config.extension_namespace,
    )?;
    let graph = mapper.to_graph(&records)?;
    emit(output, rdf::serialize(&graph, format).as_bytes())
}

fn validate_cmd(
    config: &CliConfig,
    dataset: &Path,
    code: Option<&str>,
    out_dir: Option<&Path>,
    json: bool,
    require_nonempty: bool,
) -> Result<(), Failure> {
    let profiles = match code {
        Some(c) => vec![config.profile(c)?],
        None => config.profiles()?,
    };
    let records = load_dataset(dataset)?;
    if records.is_empty() {
        eprintln!("warning: dataset {} has no records; nothing to validate", dataset.display());
    }
    let reports: Vec<ValidationReport> =
        profiles.iter().map(|p| validate(&records, p, &config.registry)).collect();

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::invalid(&format!("creating {}", dir.display()), e))?;
        for r in &reports {
            let stem = dir.join(format!("validation_{}", r.jurisdiction));
            emit(Some(&stem.with_extension("json")), to_json(r).as_bytes())?;
            emit(Some(&stem.with_extension("txt")), r.to_text().as_bytes())?;
        }
    }
    if json {
        emit(None, to_json(&reports).as_bytes())?;
    } else {
        let text: String = reports.iter().map(ValidationReport::to_text).collect::<Vec<_>>().join("\n");
        emit(None, text.as_bytes())?;
    }

    let compliant = reports.iter().all(|r| r.compliant) && !(require_nonempty && records.is_empty());
    if compliant {
        Ok(())
    } else {
        Err(Failure::NonCompliant)
    }
}

fn report(
    config: &CliConfig,
    dataset: &Path,
    codes: &[String],
    out_dir: Option<&Path>,
    json: bool,
) -> Result<(), Failure> {
    let profiles = if codes.is_empty() {
        config.profiles()?
    } else {
        let mut ps = codes.iter().map(|c| config.profile(c)).collect::<Result<Vec<_>, _>>()?;
        ps.sort_by_key(|p| p.code);
        ps.dedup_by_key(|p| p.code);
        ps
    };
    let records = load_dataset(dataset)?;
    let gaps = gap_analysis(&records, &profiles, &config.registry);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::invalid(&format!("creating {}", dir.display()), e))?;
        emit(Some(&dir.join("gap_report.json")), to_json(&gaps).as_bytes())?;
        emit(Some(&dir.join("gap_report.txt")), gaps.to_text().as_bytes())?;
    }
    if json {
        emit(None, to_json(&gaps).as_bytes())
    } else {
        emit(None, gaps.to_text().as_bytes())
    }
}

#[derive(Serialize)]
struct CensusOut {
    total: usize,
    mandatory: usize,
    with_specified_values: usize,
    exact: usize,
    partial: usize,
    complex: usize,
    none: usize,
}

fn registry_census(config: &CliConfig, json: bool) -> Result<(), Failure> {
    let r = config.registry.census();
    let m = mapping::mapping_census(&config.mapping_table, &config.registry)?;
    let out = CensusOut {
        total: r.total,
        mandatory: r.mandatory,
        with_specified_values: r.with_specified_values,
        exact: m.exact_count,
        partial: m.partial_count,
        complex: m.complex_count,
        none: m.none_count,
    };
    let text = if json {
        to_json(&out)
    } else {
        format!(
            "concepts               {}\nmandatory              {}\nwith specified values  {}\n\
             exact                  {}\npartial                {}\ncomplex                {}\nnone                   {}\n",
            out.total, out.mandatory, out.with_specified_values, out.exact, out.partial, out.complex, out.none
        )
    };
    emit(None, text.as_bytes())
}

fn registry_extensions(config: &CliConfig, json: bool) -> Result<(), Failure> {
    let terms = mapping::extension_terms(&config.mapping_table, &config.registry, &config.extension_namespace)?;
    let text = if json {
        to_json(&terms)
    } else {
        terms.iter().map(|t| format!("{}\t{}\n", t.label, t.iri)).collect()
    };
    emit(None, text.as_bytes())
}

#[derive(Serialize)]
struct ListRow<'a> {
    name: &'a str,
    display_name: &'a str,
    mandatory: bool,
    cardinality: ropa_core::Cardinality,
    value_kind: ropa_core::ValueKind,
    specified_values: usize,
    category: MappingCategory,
    targets: &'a [String],
}

fn registry_list(config: &CliConfig, json: bool) -> Result<(), Failure> {
    mapping::check_coverage(&config.mapping_table, &config.registry)?;
    let rows: Vec<ListRow> = config
        .registry
        .concepts()
        .iter()
        .map(|c| {
            let entry = config
                .mapping_table
                .iter()
                .find(|e| e.concept_name == c.name)
                .expect("coverage checked");
            ListRow {
                name: &c.name,
                display_name: &c.display_name,
                mandatory: c.mandatory_art30,
                cardinality: c.cardinality,
                value_kind: c.value_kind,
                specified_values: c.specified().len(),
                category: entry.category,
                targets: &entry.target_iris,
            }
        })
        .collect();
    if json {
        return emit(None, to_json(&rows).as_bytes());
    }
    let mut text = String::from(
        "| concept | display name | mandatory | cardinality | kind | values | category | target |\n\
         |---|---|---|---|---|---|---|---|\n",
    );
    for r in &rows {
        let kind = serde_json::to_value(r.value_kind).expect("serializable");
        let card = serde_json::to_value(r.cardinality).expect("serializable");
        let values = if r.specified_values == 0 { String::new() } else { r.specified_values.to_string() };
        let targets: Vec<String> = r.targets.iter().map(|t| short_iri(t, &config.extension_namespace)).collect();
        text.push_str(&format!(
            "| `{}` | {} | {} | {} | {} | {} | {} | {} |\n",
            r.name,
            r.display_name,
            if r.mandatory { "yes" } else { "" },
            card.as_str().unwrap_or_default(),
            kind.as_str().unwrap_or_default(),
            values,
            r.category.as_str(),
            targets.join(" / "),
        ));
    }
    emit(None, text.as_bytes())
}

fn short_iri(iri: &str, extension_namespace: &str) -> String {
    if let Some(local) = iri.strip_prefix(mapping::DPV_NAMESPACE) {
        format!("dpv:{local}")
    } else if let Some(local) = iri.strip_prefix(extension_namespace) {
        format!("ext:{local}")
    } else {
        iri.to_string()
    }
}
