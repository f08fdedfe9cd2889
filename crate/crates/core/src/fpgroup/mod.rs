//! Finitely presented groups: presentations of mapping-torus fundamental
//! groups, abelianization, coset enumeration, low-index subgroups and
//! Reidemeister–Schreier rewriting.

mod coset;
mod lowindex;
mod schreier;
mod tietze;
mod word;

use std::fmt;

use thiserror::Error;

use crate::homalg::{invariant_factors, HomologyGroup, IntMatrix};

pub use coset::{todd_coxeter, CosetTable, DEFAULT_COSET_CAP};
pub use lowindex::{fingerprint, low_index_subgroups, Fingerprint, SubgroupRecord, DEFAULT_NODE_CAP};
pub use schreier::subgroup_presentation;
pub use tietze::simplify;
pub use word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpGroupError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorOutOfRange { index: usize, count: usize },
    #[error("expected {expected} image words, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("coset enumeration exceeded {limit} cosets; the group may be infinite")]
    CosetLimit { limit: usize },
    #[error("low-index search exceeded {limit} nodes; result inconclusive")]
    NodeLimit { limit: usize },
    #[error("coset table is not closed")]
    TableNotClosed,
}

/// Group presentation `⟨gens | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: Vec<String>, relators: Vec<Word>) -> Result<Self, FpGroupError> {
        for r in &relators {
            if let Some(index) = r.max_generator().filter(|&g| g >= gens.len()) {
                return Err(FpGroupError::GeneratorOutOfRange {
                    index,
                    count: gens.len(),
                });
            }
        }
        Ok(Presentation { gens, relators })
    }

    pub fn free(gens: Vec<String>) -> Self {
        Presentation {
            gens,
            relators: Vec::new(),
        }
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Relators freely and cyclically reduced, trivial ones dropped,
    /// duplicates removed.
    pub fn normalized(&self) -> Presentation {
        let mut rels: Vec<Word> = Vec::new();
        for r in &self.relators {
            let c = r.cyclically_reduced();
            if !c.is_empty() && !rels.contains(&c) {
                rels.push(c);
            }
        }
        Presentation {
            gens: self.gens.clone(),
            relators: rels,
        }
    }

    /// Parses `gens: a, b, z` followed by `rel: u = v` or `rel: w` lines.
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Presentation, FpGroupError> {
        let mut gens: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let trimmed = line.trim_start();
            let indent = line.len() - trimmed.len();
            let trimmed = trimmed.trim_end();
            if trimmed.is_empty() {
                continue;
            }
            let err = |column: usize, message: String| FpGroupError::Parse {
                line: ln + 1,
                column,
                message,
            };
            if let Some(rest) = trimmed.strip_prefix("gens:") {
                let names = parse_names(rest).map_err(|m| err(indent + 6, m))?;
                gens = Some(names);
            } else if let Some(rest) = trimmed.strip_prefix("rel:") {
                let Some(g) = gens.as_ref() else {
                    return Err(err(indent + 1, "relation before the `gens:` line".into()));
                };
                let offset = indent + 4;
                let w = parse_relation(g, rest).map_err(|(c, m)| err(offset + c + 1, m))?;
                relators.push(w);
            } else {
                return Err(err(indent + 1, format!("expected `gens:` or `rel:`, found `{trimmed}`")));
            }
        }
        let gens = gens.ok_or(FpGroupError::Parse {
            line: 1,
            column: 1,
            message: "missing `gens:` line".into(),
        })?;
        Presentation::new(gens, relators)
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, s: &str) -> Result<Word, FpGroupError> {
        Word::parse(&self.gens, s).map_err(|(c, m)| FpGroupError::Parse {
            line: 1,
            column: c + 1,
            message: m,
        })
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.gens)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.gens.join(", "));
        for r in &self.relators {
            s.push_str(&format!("rel: {}\n", self.format_word(r)));
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        let side = |parts: &[String]| {
            if parts.is_empty() {
                String::new()
            } else {
                format!(" {}", parts.join(", "))
            }
        };
        write!(f, "<{} |{} >", side(&self.gens), side(&rels))
    }
}

fn parse_names(s: &str) -> Result<Vec<String>, String> {
    let names: Vec<String> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect();
    for (i, n) in names.iter().enumerate() {
        if !n.chars().all(|c| c.is_alphanumeric() || c == '_') || n.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(format!("invalid generator name `{n}`"));
        }
        if names[..i].contains(n) {
            return Err(format!("duplicate generator `{n}`"));
        }
    }
    Ok(names)
}

fn parse_relation(gens: &[String], s: &str) -> Result<Word, (usize, String)> {
    match s.split_once('=') {
        Some((lhs, rhs)) => {
            let u = Word::parse(gens, lhs)?;
            let v = Word::parse(gens, rhs).map_err(|(c, m)| (c + lhs.len() + 1, m))?;
            Ok(u.mul(&v.inverse()))
        }
        None => Word::parse(gens, s),
    }
}

/// Generator names `a, b, c, …` (skipping `z`), or `a1, a2, …` beyond 25.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 25 {
        (b'a'..=b'y').take(n).map(|c| (c as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("a{i}")).collect()
    }
}

fn check_images(names: &[String], images: &[Word]) -> Result<(), FpGroupError> {
    if names.len() != images.len() {
        return Err(FpGroupError::ImageCount {
            expected: names.len(),
            found: images.len(),
        });
    }
    for w in images {
        if let Some(index) = w.max_generator().filter(|&g| g >= names.len()) {
            return Err(FpGroupError::GeneratorOutOfRange {
                index,
                count: names.len(),
            });
        }
    }
    Ok(())
}

/// `⟨a₁,…,aₙ,z | aᵢ z = z φ(aᵢ)⟩`.
pub fn pi1_unreduced_torus(names: &[String], images: &[Word]) -> Result<Presentation, FpGroupError> {
    check_images(names, images)?;
    let n = names.len();
    let z = Word::generator(n);
    let relators = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            Word::generator(i)
                .mul(&z)
                .mul(&img.inverse())
                .mul(&z.inverse())
        })
        .collect();
    let mut gens = names.to_vec();
    gens.push(if names.iter().any(|g| g == "z") { "t".into() } else { "z".into() });
    Presentation::new(gens, relators)
}

/// `⟨a₁,…,aₙ | aᵢ = φ(aᵢ)⟩`.
pub fn pi1_reduced_torus(names: &[String], images: &[Word]) -> Result<Presentation, FpGroupError> {
    check_images(names, images)?;
    let relators = images
        .iter()
        .enumerate()
        .map(|(i, img)| Word::generator(i).mul(&img.inverse()))
        .collect();
    Presentation::new(names.to_vec(), relators)
}

/// Relator exponent-sum matrix, one row per relator.
pub fn exponent_matrix(p: &Presentation) -> IntMatrix {
    IntMatrix::from_fn(p.relators.len(), p.ngens(), |i, j| {
        p.relators[i].exponent_sum(j).into()
    })
}

/// `G/[G,G]` from the Smith form of the exponent matrix.
pub fn abelianization(p: &Presentation) -> HomologyGroup {
    let f = invariant_factors(&exponent_matrix(p));
    HomologyGroup::from_diagonal(p.ngens() - f.len(), &f)
}
