use std::collections::{BTreeSet, HashMap};
use std::str::FromStr;

use super::LinguisticsError;
use crate::tsv;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhoneCategory {
    Vowel,
    Consonant,
    Silence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PhoneFeature {
    Long,
    Geminate,
    Nasal,
    PrenasalClusterMember,
}

impl FromStr for PhoneFeature {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "LONG" => Ok(PhoneFeature::Long),
            "GEMINATE" => Ok(PhoneFeature::Geminate),
            "NASAL" => Ok(PhoneFeature::Nasal),
            "PRENASAL_CLUSTER_MEMBER" => Ok(PhoneFeature::PrenasalClusterMember),
            _ => Err(format!("unknown phone feature {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhoneDef {
    pub symbol: String,
    pub category: PhoneCategory,
    pub features: BTreeSet<PhoneFeature>,
}

/// The SAMPA phone inventory. Length (vowels) and gemination (consonants)
/// are written with a trailing `:`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhoneSet {
    phones: Vec<PhoneDef>,
    index: HashMap<String, usize>,
}

pub const LENGTH_MARK: char = ':';

impl PhoneSet {
    pub fn parse(text: &str) -> Result<Self, LinguisticsError> {
        let mut phones = Vec::new();
        let mut index = HashMap::new();
        for row in tsv::rows(text) {
            let bad = |reason: String| LinguisticsError::Data { file: "phoneset", line: row.line, reason };
            if row.fields.len() < 2 {
                return Err(bad("expected symbol<TAB>category[<TAB>features]".into()));
            }
            let symbol = row.fields[0].to_string();
            let category = match row.fields[1] {
                "VOWEL" => PhoneCategory::Vowel,
                "CONSONANT" => PhoneCategory::Consonant,
                "SILENCE" => PhoneCategory::Silence,
                other => return Err(bad(format!("unknown category {other:?}"))),
            };
            let mut features = BTreeSet::new();
            if let Some(f) = row.fields.get(2) {
                for name in f.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    features.insert(name.parse().map_err(bad)?);
                }
            }
            if index.insert(symbol.clone(), phones.len()).is_some() {
                return Err(bad(format!("duplicate symbol {symbol:?}")));
            }
            phones.push(PhoneDef { symbol, category, features });
        }
        Ok(PhoneSet { phones, index })
    }

    pub fn get(&self, symbol: &str) -> Option<&PhoneDef> {
        self.index.get(symbol).map(|&i| &self.phones[i])
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.index.contains_key(symbol)
    }

    pub fn phones(&self) -> &[PhoneDef] {
        &self.phones
    }

    pub fn category(&self, symbol: &str) -> Option<PhoneCategory> {
        self.get(symbol).map(|p| p.category)
    }

    pub fn is_vowel(&self, symbol: &str) -> bool {
        self.category(symbol) == Some(PhoneCategory::Vowel)
    }

    pub fn is_consonant(&self, symbol: &str) -> bool {
        self.category(symbol) == Some(PhoneCategory::Consonant)
    }

    pub fn has_feature(&self, symbol: &str, feature: PhoneFeature) -> bool {
        self.get(symbol).is_some_and(|p| p.features.contains(&feature))
    }

    /// The long/geminate counterpart, if the set has one.
    pub fn lengthened(&self, symbol: &str) -> Option<&str> {
        if symbol.ends_with(LENGTH_MARK) {
            return self.get(symbol).map(|p| p.symbol.as_str());
        }
        self.get(&format!("{symbol}{LENGTH_MARK}")).map(|p| p.symbol.as_str())
    }

    /// The short counterpart, if the set has one.
    pub fn shortened(&self, symbol: &str) -> Option<&str> {
        self.get(symbol.strip_suffix(LENGTH_MARK).unwrap_or(symbol)).map(|p| p.symbol.as_str())
    }
}

pub fn is_long(symbol: &str) -> bool {
    symbol.len() > 1 && symbol.ends_with(LENGTH_MARK)
}
