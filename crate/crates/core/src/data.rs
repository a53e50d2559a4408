//! Language resources: phone set, lexicon, normalization tables, prosody
//! rules and acoustic configuration. A default copy of every file is
//! compiled in; [`Resources::from_dir`] overrides files one by one.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use thiserror::Error;

use crate::acoustics::{DurationTable, F0Config};
use crate::eval::MrtGrid;
use crate::frontend::{AbbreviationTable, NormalizationTables, NumeralTable};
use crate::linguistics::{EndingRules, FunctionWords, Lexicon, PhoneSet};
use crate::prosody::{parse_rules, tones::ToneMap, RewriteRule, WWords};

/// Environment variable naming a directory of override files.
pub const DATA_DIR_ENV: &str = "LUGTTS_DATA_DIR";

macro_rules! bundled_files {
    ($($name:literal),* $(,)?) => {
        const BUNDLED: &[(&str, &str)] = &[$(($name, include_str!(concat!("../data/", $name)))),*];
    };
}

bundled_files!(
    "phoneset.tsv",
    "lexicon.tsv",
    "function_words.tsv",
    "inflection_endings.tsv",
    "numerals.tsv",
    "abbreviations.tsv",
    "w_words.tsv",
    "tone_map.tsv",
    "postlexical.rules",
    "duration_table.tsv",
    "f0_config.tsv",
    "mrt_grid.tsv",
);

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{file}: {message}")]
    Invalid { file: String, message: String },
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Clone, Debug)]
pub struct Resources {
    pub phoneset: PhoneSet,
    pub lexicon: Lexicon,
    pub function_words: FunctionWords,
    pub inflection: EndingRules,
    pub normalization: NormalizationTables,
    pub w_words: WWords,
    pub tone_map: ToneMap,
    pub postlexical: Vec<RewriteRule>,
    pub durations: DurationTable,
    pub f0: F0Config,
    pub mrt_grid: MrtGrid,
}

fn invalid(file: &str, e: impl std::fmt::Display) -> DataError {
    DataError::Invalid { file: file.to_string(), message: e.to_string() }
}

impl Resources {
    /// The compiled-in resources.
    pub fn bundled() -> Resources {
        static CACHE: OnceLock<Resources> = OnceLock::new();
        CACHE
            .get_or_init(|| {
                Resources::load(|name| Ok(bundled_text(name).to_string())).expect("bundled data is valid")
            })
            .clone()
    }

    /// Files present in `dir` replace their bundled counterparts.
    pub fn from_dir(dir: &Path) -> Result<Resources, DataError> {
        Resources::load(|name| {
            let path = dir.join(name);
            if path.exists() {
                std::fs::read_to_string(&path).map_err(|source| DataError::Io { path, source })
            } else {
                Ok(bundled_text(name).to_string())
            }
        })
    }

    /// [`from_dir`](Self::from_dir) on `$LUGTTS_DATA_DIR` when set, else
    /// the bundled data.
    pub fn from_env() -> Result<Resources, DataError> {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) => Resources::from_dir(Path::new(&dir)),
            None => Ok(Resources::bundled()),
        }
    }

    fn load(read: impl Fn(&str) -> Result<String, DataError>) -> Result<Resources, DataError> {
        let phoneset = PhoneSet::parse(&read("phoneset.tsv")?).map_err(|e| invalid("phoneset.tsv", e))?;
        let lexicon = Lexicon::parse(&read("lexicon.tsv")?, &phoneset).map_err(|e| invalid("lexicon.tsv", e))?;
        let function_words =
            FunctionWords::parse(&read("function_words.tsv")?).map_err(|e| invalid("function_words.tsv", e))?;
        let inflection = EndingRules::parse(&read("inflection_endings.tsv")?, &phoneset)
            .map_err(|e| invalid("inflection_endings.tsv", e))?;
        let numerals = NumeralTable::parse(&read("numerals.tsv")?).map_err(|e| invalid("numerals.tsv", e))?;
        let abbreviations =
            AbbreviationTable::parse(&read("abbreviations.tsv")?).map_err(|e| invalid("abbreviations.tsv", e))?;
        let w_words = WWords::parse(&read("w_words.tsv")?);
        let tone_map = ToneMap::parse(&read("tone_map.tsv")?).map_err(|e| invalid("tone_map.tsv", e))?;
        let postlexical =
            parse_rules(&read("postlexical.rules")?, &phoneset).map_err(|e| invalid("postlexical.rules", e))?;
        let durations =
            DurationTable::parse(&read("duration_table.tsv")?).map_err(|e| invalid("duration_table.tsv", e))?;
        let f0 = F0Config::parse(&read("f0_config.tsv")?).map_err(|e| invalid("f0_config.tsv", e))?;
        let mrt_grid = MrtGrid::parse(&read("mrt_grid.tsv")?).map_err(|e| invalid("mrt_grid.tsv", e))?;
        Ok(Resources {
            phoneset,
            lexicon,
            function_words,
            inflection,
            normalization: NormalizationTables { numerals, abbreviations },
            w_words,
            tone_map,
            postlexical,
            durations,
            f0,
            mrt_grid,
        })
    }
}

fn bundled_text(name: &str) -> &'static str {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).expect("known data file")
}
