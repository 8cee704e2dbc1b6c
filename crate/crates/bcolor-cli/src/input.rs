use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use bcolor::{fixtures, Graph};

use crate::{CliError, InputArg};

fn fixture(name: &str) -> Option<Graph> {
    match name.to_ascii_uppercase().as_str() {
        "G_IM" => Some(fixtures::g_im()),
        "T_PIV" => Some(fixtures::t_piv()),
        "T_NP" => Some(fixtures::t_np()),
        "T_PIV18" => Some(fixtures::t_piv18()),
        "T_NP18" => Some(fixtures::t_np18()),
        _ => None,
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    if !path.exists() {
        if let Some(g) = path.to_str().and_then(fixture) {
            log::info!("using built-in fixture {}", path.display());
            return Ok(g);
        }
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(CliError::usage)?;
    Graph::parse(&text).with_context(|| format!("parsing {}", path.display())).map_err(CliError::usage)
}

impl InputArg {
    pub fn path(&self) -> Result<&PathBuf, CliError> {
        self.flag
            .as_ref()
            .or(self.positional.as_ref())
            .ok_or_else(|| CliError::usage(anyhow!("missing input graph (--input FILE)")))
    }

    pub fn read(&self) -> Result<(PathBuf, Graph), CliError> {
        let path = self.path()?.clone();
        let g = read_graph(&path)?;
        Ok((path, g))
    }
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(CliError::usage),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
