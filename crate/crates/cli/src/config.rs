use std::fs;
use std::path::{Path, PathBuf};

use nichols_core::diagram::{CartanPreset, GeneralizedDynkinDiagram, PresetAt};
use nichols_core::engine::NicholsEngine;
use nichols_core::roots::RootSystemData;

use crate::CliError;

/// Parses `k`, `a..b` (inclusive), `a..=b` or a comma list of those.
pub fn parse_orders(text: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let bad = || format!("invalid N value {part:?}");
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.contains(&0) {
        return Err("N must be positive".into());
    }
    Ok(out)
}

/// Exactly one input source.
#[derive(Debug, Clone)]
pub enum Source {
    Preset { preset: CartanPreset, orders: Vec<u32> },
    Diagram(PathBuf),
}

impl Source {
    pub fn new(preset: Option<&str>, diagram: Option<&Path>, orders: Option<Vec<u32>>) -> Result<Self, CliError> {
        match (preset, diagram) {
            (Some(text), None) => {
                if text.contains('@') {
                    let at: PresetAt = text.parse()?;
                    if orders.is_some() {
                        return Err(CliError::Usage(format!("{text} already fixes N; drop --N")));
                    }
                    Ok(Source::Preset {
                        preset: at.preset,
                        orders: vec![at.order],
                    })
                } else {
                    let orders = orders.ok_or_else(|| CliError::Usage("--N is required with --preset".into()))?;
                    Ok(Source::Preset {
                        preset: text.parse()?,
                        orders,
                    })
                }
            }
            (None, Some(path)) => {
                if orders.is_some() {
                    return Err(CliError::Usage("--N applies only to presets".into()));
                }
                Ok(Source::Diagram(path.to_path_buf()))
            }
            _ => Err(CliError::Usage("give exactly one of --preset and --diagram".into())),
        }
    }

    /// An engine for a single diagram. Presets default to the top degree as cutoff.
    pub fn engine(&self, cutoff: Option<u32>) -> Result<(String, NicholsEngine), CliError> {
        match self {
            Source::Preset { preset, orders } => {
                let [order] = orders[..] else {
                    return Err(CliError::Usage("this command takes a single N".into()));
                };
                let data = RootSystemData::new(*preset, order)?;
                let cutoff = cutoff.unwrap_or_else(|| data.top_degree());
                let engine = NicholsEngine::new(data.diagram().clone(), Some(cutoff))?;
                Ok((format!("{preset}@N={order}"), engine))
            }
            Source::Diagram(path) => {
                let diagram = read_diagram(path)?;
                Ok((path.display().to_string(), NicholsEngine::new(diagram, cutoff)?))
            }
        }
    }
}

pub fn read_diagram(path: &Path) -> Result<GeneralizedDynkinDiagram, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(GeneralizedDynkinDiagram::from_json(&text)?)
}
