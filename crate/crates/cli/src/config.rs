use std::path::PathBuf;
use std::str::FromStr;

use crate::cache::TableCache;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Decompose,
    Cover,
    Act,
    Demo,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VerifyLevel {
    #[default]
    Fast,
    Full,
}

impl FromStr for VerifyLevel {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "fast" => Ok(VerifyLevel::Fast),
            "full" => Ok(VerifyLevel::Full),
            _ => Err(CliError::Parse(format!("verify level must be fast or full, got `{s}`"))),
        }
    }
}

/// Which isotypic components a report covers; index 0 is the trivial one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ComponentSelector {
    #[default]
    All,
    Index(usize),
}

impl ComponentSelector {
    pub fn indices(self, count: usize) -> Result<Vec<usize>, CliError> {
        match self {
            ComponentSelector::All => Ok((0..count).collect()),
            ComponentSelector::Index(i) if i < count => Ok(vec![i]),
            ComponentSelector::Index(i) => Err(CliError::Parse(format!(
                "component {i} does not exist; there are {count}"
            ))),
        }
    }
}

impl FromStr for ComponentSelector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "all" {
            return Ok(ComponentSelector::All);
        }
        s.parse()
            .map(ComponentSelector::Index)
            .map_err(|_| CliError::Parse(format!("component must be an index or `all`, got `{s}`")))
    }
}

/// Everything one invocation needs. Paths are resolved relative to the
/// working directory.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: Command,
    pub genus: Option<usize>,
    /// Group file path or built-in reference such as `symmetric:3`.
    pub group: Option<String>,
    pub hom: Option<PathBuf>,
    pub rose: bool,
    pub auts: Vec<String>,
    pub component: ComponentSelector,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub verify_level: VerifyLevel,
    pub seed: u64,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            genus: None,
            group: None,
            hom: None,
            rose: false,
            auts: Vec::new(),
            component: ComponentSelector::All,
            out: None,
            cache_dir: None,
            verify_level: VerifyLevel::Fast,
            seed: 0,
        }
    }

    pub fn cache(&self) -> Option<TableCache> {
        self.cache_dir.as_ref().map(TableCache::new)
    }

    /// Checks the invariants that do not need file contents.
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(g) = self.genus {
            if g < 2 {
                return Err(CliError::Parse(format!("--genus must be at least 2, got {g}")));
            }
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Parse(format!("{what} is required for this command")))
            }
        };
        match self.command {
            Command::Decompose => need(self.group.is_some(), "--group"),
            Command::Cover => need(self.hom.is_some(), "--hom"),
            Command::Act => {
                need(self.hom.is_some(), "--hom")?;
                need(!self.auts.is_empty(), "--aut")?;
                if self.rose {
                    return Err(CliError::Parse("act needs a surface homomorphism, not --rose".into()));
                }
                Ok(())
            }
            Command::Demo => Ok(()),
        }?;
        for path in self.hom.iter() {
            if !path.is_file() {
                return Err(CliError::Parse(format!("{} does not exist", path.display())));
            }
        }
        Ok(())
    }
}
