//! Where graphs and lists come from on the command line.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use facethue_core::families::FamilyError;
use facethue_core::{generate, Family, ListAssignment, PlaneGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document;

/// A family shorthand (`wheel:10`) or a path to a graph document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Family(Family),
    File(PathBuf),
}

impl GraphSource {
    pub fn parse(s: &str) -> Result<Self> {
        match Family::parse(s) {
            Ok(f) => Ok(GraphSource::Family(f)),
            Err(FamilyError::UnknownFamily(_)) if Path::new(s).exists() => {
                Ok(GraphSource::File(PathBuf::from(s)))
            }
            Err(e) => Err(e.into()),
        }
    }

    /// The plane graph and any lists stored alongside it.
    pub fn load(&self) -> Result<(PlaneGraph, Option<Vec<Vec<u32>>>)> {
        match self {
            GraphSource::Family(f) => {
                let rs = generate(*f)?;
                Ok((PlaneGraph::build(rs)?, None))
            }
            GraphSource::File(p) => {
                let text =
                    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                document::parse_graph(&text).with_context(|| format!("in {}", p.display()))
            }
        }
    }
}

impl std::fmt::Display for GraphSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphSource::Family(fam) => write!(f, "{fam}"),
            GraphSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

/// List assignment source.
///
/// * `uniform:K`: every list is `1..=K`
/// * `random:K:SEED[:PALETTE]`: `K` distinct colours per edge drawn from
///   `1..=PALETTE` (default `2K`)
/// * `file:PATH`: a JSON array of lists, one per edge
/// * `doc`: the lists stored in the graph document
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListSource {
    Uniform(usize),
    Random { k: usize, seed: u64, palette: u32 },
    File(PathBuf),
    Document,
}

impl ListSource {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let int = |p: &str| {
            p.parse::<u64>()
                .with_context(|| format!("bad number `{p}` in list source `{s}`"))
        };
        Ok(match parts[..] {
            ["uniform", k] => ListSource::Uniform(int(k)? as usize),
            ["random", k, seed] => {
                let k = int(k)? as usize;
                ListSource::Random {
                    k,
                    seed: int(seed)?,
                    palette: 2 * k as u32,
                }
            }
            ["random", k, seed, palette] => ListSource::Random {
                k: int(k)? as usize,
                seed: int(seed)?,
                palette: int(palette)? as u32,
            },
            ["doc"] => ListSource::Document,
            _ => match s.strip_prefix("file:") {
                Some(p) => ListSource::File(PathBuf::from(p)),
                None => {
                    bail!("unknown list source `{s}` (uniform:K, random:K:SEED, file:PATH, doc)")
                }
            },
        })
    }

    pub fn load(&self, m: usize, stored: Option<&[Vec<u32>]>) -> Result<ListAssignment> {
        Ok(match self {
            ListSource::Uniform(k) => ListAssignment::uniform(m, *k)?,
            ListSource::Random { k, seed, palette } => random_lists(m, *k, *seed, *palette)?,
            ListSource::File(p) => {
                let text =
                    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                let lists: Vec<Vec<u32>> = serde_json::from_str(&text)
                    .with_context(|| format!("parsing lists in {}", p.display()))?;
                checked(lists, m)?
            }
            ListSource::Document => match stored {
                Some(l) => checked(l.to_vec(), m)?,
                None => bail!("the graph document has no lists"),
            },
        })
    }
}

impl std::fmt::Display for ListSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ListSource::Uniform(k) => write!(f, "uniform:{k}"),
            ListSource::Random { k, seed, palette } => write!(f, "random:{k}:{seed}:{palette}"),
            ListSource::File(p) => write!(f, "file:{}", p.display()),
            ListSource::Document => write!(f, "doc"),
        }
    }
}

fn checked(lists: Vec<Vec<u32>>, m: usize) -> Result<ListAssignment> {
    if lists.len() != m {
        bail!("{} lists given for {m} edges", lists.len());
    }
    Ok(ListAssignment::new(lists)?)
}

pub fn random_lists(m: usize, k: usize, seed: u64, palette: u32) -> Result<ListAssignment> {
    if (palette as usize) < k {
        bail!("palette of {palette} colours cannot fill lists of size {k}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colours: Vec<u32> = (1..=palette).collect();
    let lists = (0..m)
        .map(|_| {
            let (chosen, _) = colours.partial_shuffle(&mut rng, k);
            chosen.to_vec()
        })
        .collect();
    Ok(ListAssignment::new(lists)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_sources_parse() {
        assert_eq!(
            ListSource::parse("uniform:12").unwrap(),
            ListSource::Uniform(12)
        );
        assert_eq!(
            ListSource::parse("random:4:9").unwrap(),
            ListSource::Random {
                k: 4,
                seed: 9,
                palette: 8
            }
        );
        assert_eq!(
            ListSource::parse("file:lists.json").unwrap(),
            ListSource::File("lists.json".into())
        );
        assert!(ListSource::parse("uniform").is_err());
        assert!(ListSource::parse("uniform:x").is_err());
    }

    #[test]
    fn random_lists_are_distinct_and_reproducible() {
        let a = random_lists(30, 5, 3, 9).unwrap();
        assert_eq!(a, random_lists(30, 5, 3, 9).unwrap());
        assert_ne!(a, random_lists(30, 5, 4, 9).unwrap());
        for l in a.lists() {
            assert!(l.iter().all(|&c| (1..=9).contains(&c)));
        }
        assert!(random_lists(3, 5, 0, 4).is_err());
    }

    #[test]
    fn unknown_graph_source() {
        assert!(GraphSource::parse("torus:3").is_err());
        assert!(GraphSource::parse("wheel:2").is_err());
        assert_eq!(
            GraphSource::parse("grid:2x3").unwrap(),
            GraphSource::Family(Family::Grid(2, 3))
        );
    }
}
