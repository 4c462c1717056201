//! Data-file configuration. Each setting resolves flag, then `ROPA_*`
//! environment variable, then the data compiled into `ropa-core`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use ropa_core::mapping::{self, DEFAULT_EXTENSION_NAMESPACE};
use ropa_core::rdf::DEFAULT_BASE_IRI;
use ropa_core::{load_profile, shipped, ConceptRegistry, DpvCatalog, Jurisdiction, JurisdictionProfile, MappingEntry};

use crate::exit::Failure;

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Concept registry JSON [default: built-in registry]
    #[arg(long, global = true, env = "ROPA_REGISTRY")]
    pub registry: Option<PathBuf>,
    /// Pinned DPV catalog JSON [default: built-in snapshot]
    #[arg(long, global = true, env = "ROPA_CATALOG")]
    pub catalog: Option<PathBuf>,
    /// Mapping table JSON [default: built-in table]
    #[arg(long, global = true, env = "ROPA_MAPPING_TABLE")]
    pub mapping_table: Option<PathBuf>,
    /// Directory of jurisdiction profile JSON files [default: built-in profiles]
    #[arg(long, global = true, env = "ROPA_PROFILES_DIR")]
    pub profiles_dir: Option<PathBuf>,
    /// Prefix for activity IRIs
    #[arg(long, global = true, env = "ROPA_BASE_IRI", default_value = DEFAULT_BASE_IRI)]
    pub base_iri: String,
    /// Namespace for terms with no DPV counterpart
    #[arg(long, global = true, env = "ROPA_EXTENSION_NAMESPACE", default_value = DEFAULT_EXTENSION_NAMESPACE)]
    pub extension_namespace: String,
}

/// Registry, catalog and mapping table, loaded before any subcommand runs.
/// Profiles depend on the registry and are loaded by the subcommands that
/// use them.
pub struct CliConfig {
    pub registry: ConceptRegistry,
    pub catalog: DpvCatalog,
    pub mapping_table: Vec<MappingEntry>,
    pub profiles_dir: Option<PathBuf>,
    pub base_iri: String,
    pub extension_namespace: String,
}

fn open(path: &Path, what: &str) -> Result<fs::File, Failure> {
    fs::File::open(path).map_err(|e| Failure::invalid(&format!("{what} {}", path.display()), e))
}

impl CliConfig {
    pub fn load(args: &ConfigArgs) -> Result<Self, Failure> {
        let registry = match &args.registry {
            Some(p) => ConceptRegistry::from_reader(open(p, "registry")?)
                .map_err(|e| Failure::invalid(&format!("registry {}", p.display()), e))?,
            None => shipped::registry(),
        };
        let catalog = match &args.catalog {
            Some(p) => DpvCatalog::from_reader(open(p, "catalog")?)
                .map_err(|e| Failure::invalid(&format!("catalog {}", p.display()), e))?,
            None => shipped::catalog(),
        };
        let ns = args.extension_namespace.as_str();
        let mapping_table = match &args.mapping_table {
            Some(p) => mapping::load_mapping_table(open(p, "mapping table")?, ns)
                .map_err(|e| Failure::invalid(&format!("mapping table {}", p.display()), e))?,
            None => mapping::load_mapping_table(shipped::MAPPING_TABLE_JSON.as_bytes(), ns)
                .map_err(|e| Failure::invalid("built-in mapping table", e))?,
        };
        Ok(CliConfig {
            registry,
            catalog,
            mapping_table,
            profiles_dir: args.profiles_dir.clone(),
            base_iri: args.base_iri.clone(),
            extension_namespace: args.extension_namespace.clone(),
        })
    }

    /// Every available profile, ordered by jurisdiction code.
    pub fn profiles(&self) -> Result<Vec<JurisdictionProfile>, Failure> {
        let mut out = Vec::new();
        match &self.profiles_dir {
            None => {
                for (code, text) in shipped::PROFILE_JSON {
                    let p = load_profile(text.as_bytes(), &self.registry)
                        .map_err(|e| Failure::invalid(&format!("built-in {code} profile"), e))?;
                    out.push(p);
                }
            }
            Some(dir) => {
                let entries = fs::read_dir(dir)
                    .map_err(|e| Failure::invalid(&format!("profiles directory {}", dir.display()), e))?;
                let mut paths: Vec<PathBuf> = entries
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect();
                paths.sort();
                for path in paths {
                    let p = load_profile(open(&path, "profile")?, &self.registry)
                        .map_err(|e| Failure::invalid(&format!("profile {}", path.display()), e))?;
                    if out.iter().any(|q: &JurisdictionProfile| q.code == p.code) {
                        return Err(Failure::Invalid(format!("profile {} is defined twice in {}", p.code, dir.display())));
                    }
                    out.push(p);
                }
            }
        }
        out.sort_by_key(|p| p.code);
        Ok(out)
    }

    pub fn profile(&self, code: &str) -> Result<JurisdictionProfile, Failure> {
        let wanted: Jurisdiction = code.parse().map_err(|e| Failure::UnknownJurisdiction(format!("{e}")))?;
        self.profiles()?
            .into_iter()
            .find(|p| p.code == wanted)
            .ok_or_else(|| Failure::UnknownJurisdiction(format!("no profile loaded for {wanted}")))
    }
}
