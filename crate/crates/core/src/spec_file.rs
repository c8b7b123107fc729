//! JSON specification files.
//!
//! ```json
//! { "forbid_words": ["11", "*2"], "forbid_tails": ["(1)^-"], "allow_tails": ["1"] }
//! ```
//!
//! `forbid_tails_containing` lists words whose occurrence anywhere in a left
//! ray forbids it; since every point has a tail ray at each index, these are
//! plain forbidden words. `alphabet` restricts points to the listed letters.
//! A recoded space is `{ "overlap_m": M, "base": { … } }`; its
//! `forbid_blocks` list is informational.

use crate::higher_block::{HbError, HigherBlockSpace};
use crate::space::{single_letter_pattern, ForbiddenSpec, Space};
use crate::text::{
    fmt_pattern, fmt_ray, parse_letters, parse_pattern, parse_ray, Style, TextError,
};
use crate::words::Letter;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("in `{field}`: {source}")]
    Text {
        field: &'static str,
        source: TextError,
    },
    #[error("a recoded spec needs both `overlap_m` and `base`")]
    Derived,
    #[error(transparent)]
    HigherBlock(#[from] HbError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbid_words: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbid_tails: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allow_tails: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbid_tails_containing: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<Letter>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overlap_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<SpecFile>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbid_blocks: Vec<String>,
}

/// A loaded specification: a plain space or a higher block recoding.
#[derive(Debug, Clone)]
pub enum LoadedSpace {
    Plain(Space),
    Recoded(HigherBlockSpace),
}

fn text<T>(field: &'static str, r: Result<T, TextError>) -> Result<T, SpecFileError> {
    r.map_err(|source| SpecFileError::Text { field, source })
}

impl SpecFile {
    pub fn parse(json: &str) -> Result<Self, SpecFileError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn is_recoded(&self) -> bool {
        self.overlap_m.is_some() || self.base.is_some()
    }

    /// The forbidden set of a plain spec, with tails-containing entries and
    /// the alphabet folded into words.
    pub fn forbidden(&self) -> Result<ForbiddenSpec, SpecFileError> {
        let mut words = self
            .forbid_words
            .iter()
            .chain(&self.forbid_tails_containing)
            .map(|w| text("forbid_words", parse_pattern(w)))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(a) = &self.alphabet {
            words.push(single_letter_pattern(&a.iter().copied().collect()));
        }
        let tails = self
            .forbid_tails
            .iter()
            .map(|r| text("forbid_tails", parse_ray(r)))
            .collect::<Result<Vec<_>, _>>()?;
        let allow = self
            .allow_tails
            .as_ref()
            .map(|ps| {
                ps.iter()
                    .map(|p| text("allow_tails", parse_letters(p)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Ok(ForbiddenSpec::new(words, tails, allow))
    }

    pub fn load(&self) -> Result<LoadedSpace, SpecFileError> {
        match (self.overlap_m, &self.base) {
            (None, None) => Ok(LoadedSpace::Plain(Space::new(self.forbidden()?))),
            (Some(m), Some(base)) if !base.is_recoded() => Ok(LoadedSpace::Recoded(
                HigherBlockSpace::new(m, Space::new(base.forbidden()?))?,
            )),
            _ => Err(SpecFileError::Derived),
        }
    }

    pub fn from_forbidden(spec: &ForbiddenSpec) -> Self {
        SpecFile {
            forbid_words: spec.patterns().iter().map(fmt_pattern).collect(),
            forbid_tails: spec.tails().iter().map(fmt_ray).collect(),
            allow_tails: spec
                .allow_tails()
                .map(|ps| ps.iter().map(|p| Style::Plain.compact(p)).collect()),
            ..Default::default()
        }
    }

    pub fn recoded(h: &HigherBlockSpace) -> Self {
        SpecFile {
            overlap_m: Some(h.block_size()),
            base: Some(Box::new(Self::from_forbidden(h.base().spec()))),
            forbid_blocks: h.recoded_patterns(),
            ..Default::default()
        }
    }
}
