//! The nominal decision-table data model.
//!
//! A [`DecisionSystem`] is an immutable table of objects described by nominal
//! condition features plus one decision (class) column. Cell values are
//! interned per column into dense integer codes, assigned in order of first
//! appearance so that loading is deterministic. The missing-value token `?`
//! is interned like any other value: it equals itself and differs from
//! everything else.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One condition feature: its name and the distinct values seen in its column.
#[derive(Clone, Debug)]
pub struct FeatureInfo {
    name: String,
    /// Code -> original token, in first-appearance order.
    domain: Vec<String>,
}

impl FeatureInfo {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of distinct values in this column.
    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    /// The original token for a value code.
    pub fn value(&self, code: u32) -> &str {
        &self.domain[code as usize]
    }
}

/// An immutable nominal decision table.
///
/// Columns are stored feature-major so that partition refinement touches one
/// contiguous column at a time. The decision column is kept separate and is
/// never addressable as a feature.
#[derive(Clone, Debug)]
pub struct DecisionSystem {
    features: Vec<FeatureInfo>,
    /// Feature-major value codes; `columns[f][x]` is the code of object `x`
    /// on feature `f`.
    columns: Vec<Vec<u32>>,
    decision_name: String,
    decision_domain: Vec<String>,
    decision: Vec<u32>,
}

impl DecisionSystem {
    /// Builds a system from in-memory rows. Each row pairs the feature
    /// tokens with the decision token. Intended for tests, docs, and
    /// generated data; files go through [`DecisionSystem::load`].
    pub fn from_rows(
        feature_names: &[&str],
        decision_name: &str,
        rows: &[(&[&str], &str)],
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTable("no rows".into()));
        }
        if feature_names.is_empty() {
            return Err(Error::EmptyTable("no condition features".into()));
        }
        let mut builder = Builder::new(
            feature_names.iter().map(|s| s.to_string()).collect(),
            decision_name.to_string(),
        )?;
        for (i, (cells, decision)) in rows.iter().enumerate() {
            if cells.len() != feature_names.len() {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: feature_names.len(),
                    found: cells.len(),
                });
            }
            builder.push_row(cells.iter().copied(), decision);
        }
        Ok(builder.finish())
    }

    /// Loads a delimited text stream with a header row.
    ///
    /// Every cell is treated as a nominal string; `?` is a regular distinct
    /// value. The decision column is picked by [`LoadOptions::decision`] and
    /// identifier columns can be dropped via [`LoadOptions::drop_columns`].
    pub fn load<R: Read>(reader: R, options: &LoadOptions) -> Result<Self> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .delimiter(options.delimiter)
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let mut records = csv_reader.records();
        let header = match records.next() {
            Some(record) => record.map_err(|e| Error::Parse(e.to_string()))?,
            None => return Err(Error::EmptyTable("no header row".into())),
        };
        let names: Vec<String> = header.iter().map(|s| s.to_string()).collect();
        {
            let mut seen = HashMap::new();
            for name in &names {
                if seen.insert(name.clone(), ()).is_some() {
                    return Err(Error::DuplicateColumn { name: name.clone() });
                }
            }
        }

        let mut drop = vec![false; names.len()];
        for dropped in &options.drop_columns {
            let idx = names
                .iter()
                .position(|n| n == dropped)
                .ok_or_else(|| Error::UnknownColumn {
                    name: dropped.clone(),
                })?;
            drop[idx] = true;
        }

        let decision_idx = match &options.decision {
            DecisionColumn::Last => (0..names.len())
                .rev()
                .find(|&i| !drop[i])
                .ok_or_else(|| Error::EmptyTable("every column dropped".into()))?,
            DecisionColumn::Named(name) => names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownColumn { name: name.clone() })?,
        };
        if drop[decision_idx] {
            return Err(Error::UnknownColumn {
                name: names[decision_idx].clone(),
            });
        }

        let feature_indices: Vec<usize> = (0..names.len())
            .filter(|&i| !drop[i] && i != decision_idx)
            .collect();
        if feature_indices.is_empty() {
            return Err(Error::EmptyTable("no condition features left".into()));
        }

        let mut builder = Builder::new(
            feature_indices.iter().map(|&i| names[i].clone()).collect(),
            names[decision_idx].clone(),
        )?;

        let mut row_count = 0usize;
        for (row_number, record) in records.enumerate() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            if record.len() != names.len() {
                return Err(Error::RaggedRow {
                    row: row_number + 1,
                    expected: names.len(),
                    found: record.len(),
                });
            }
            builder.push_row(
                feature_indices.iter().map(|&i| record.get(i).unwrap()),
                record.get(decision_idx).unwrap(),
            );
            row_count += 1;
        }
        if row_count == 0 {
            return Err(Error::EmptyTable("header only, no data rows".into()));
        }
        Ok(builder.finish())
    }

    /// Loads a delimited file from disk. See [`DecisionSystem::load`].
    pub fn load_path(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::load(std::io::BufReader::new(file), options)
    }

    /// Number of objects `|U|`.
    pub fn num_objects(&self) -> usize {
        self.decision.len()
    }

    /// Number of condition features `|C|`.
    pub fn num_features(&self) -> usize {
        self.features.len()
    }

    pub fn features(&self) -> &[FeatureInfo] {
        &self.features
    }

    pub fn feature(&self, index: usize) -> &FeatureInfo {
        &self.features[index]
    }

    /// Looks a feature up by name.
    pub fn feature_index(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name() == name)
    }

    /// The value codes of one feature column, indexed by object.
    pub fn column(&self, feature: usize) -> &[u32] {
        &self.columns[feature]
    }

    /// Value code of `object` on `feature`.
    pub fn value_code(&self, object: usize, feature: usize) -> u32 {
        self.columns[feature][object]
    }

    pub fn decision_name(&self) -> &str {
        &self.decision_name
    }

    /// Number of distinct decision values.
    pub fn decision_domain_size(&self) -> usize {
        self.decision_domain.len()
    }

    /// The original token for a decision code.
    pub fn decision_value(&self, code: u32) -> &str {
        &self.decision_domain[code as usize]
    }

    /// Decision codes indexed by object.
    pub fn decisions(&self) -> &[u32] {
        &self.decision
    }

    pub(crate) fn check_feature(&self, index: usize) -> Result<()> {
        if index < self.num_features() {
            Ok(())
        } else {
            Err(Error::InvalidFeature {
                index,
                limit: self.num_features(),
            })
        }
    }
}

/// Which column holds the decision class.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum DecisionColumn {
    /// The last non-dropped column (the usual layout of class-last tables).
    #[default]
    Last,
    Named(String),
}

/// Options for [`DecisionSystem::load`].
#[derive(Clone, Debug)]
pub struct LoadOptions {
    /// Field delimiter, comma by default.
    pub delimiter: u8,
    pub decision: DecisionColumn,
    /// Identifier columns to remove before interning (e.g. an animal-name
    /// or row-id column that would otherwise shatter every partition).
    pub drop_columns: Vec<String>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            delimiter: b',',
            decision: DecisionColumn::Last,
            drop_columns: Vec::new(),
        }
    }
}

/// Per-column interner shared by the two construction paths.
struct Builder {
    names: Vec<String>,
    maps: Vec<HashMap<String, u32>>,
    domains: Vec<Vec<String>>,
    columns: Vec<Vec<u32>>,
    decision_name: String,
    decision_map: HashMap<String, u32>,
    decision_domain: Vec<String>,
    decision: Vec<u32>,
}

impl Builder {
    fn new(names: Vec<String>, decision_name: String) -> Result<Self> {
        let n = names.len();
        Ok(Builder {
            names,
            maps: vec![HashMap::new(); n],
            domains: vec![Vec::new(); n],
            columns: vec![Vec::new(); n],
            decision_name,
            decision_map: HashMap::new(),
            decision_domain: Vec::new(),
            decision: Vec::new(),
        })
    }

    fn push_row<'a>(&mut self, cells: impl Iterator<Item = &'a str>, decision: &str) {
        for (f, cell) in cells.enumerate() {
            let code = intern(&mut self.maps[f], &mut self.domains[f], cell);
            self.columns[f].push(code);
        }
        let code = intern(&mut self.decision_map, &mut self.decision_domain, decision);
        self.decision.push(code);
    }

    fn finish(self) -> DecisionSystem {
        let features = self
            .names
            .into_iter()
            .zip(self.domains)
            .map(|(name, domain)| FeatureInfo { name, domain })
            .collect();
        DecisionSystem {
            features,
            columns: self.columns,
            decision_name: self.decision_name,
            decision_domain: self.decision_domain,
            decision: self.decision,
        }
    }
}

fn intern(map: &mut HashMap<String, u32>, domain: &mut Vec<String>, token: &str) -> u32 {
    if let Some(&code) = map.get(token) {
        return code;
    }
    let code = domain.len() as u32;
    domain.push(token.to_string());
    map.insert(token.to_string(), code);
    code
}

/// A set of feature indices: the search state and output of every solver.
///
/// Kept sorted and duplicate-free so that equal subsets compare equal and
/// iteration order is canonical.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FeatureSubset {
    indices: Vec<usize>,
}

impl FeatureSubset {
    pub fn empty() -> Self {
        FeatureSubset::default()
    }

    /// Normalizes (sorts and deduplicates) the given indices.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        FeatureSubset { indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, feature: usize) -> bool {
        self.indices.binary_search(&feature).is_ok()
    }

    /// Inserts a feature, keeping the order invariant. No-op if present.
    pub fn insert(&mut self, feature: usize) {
        if let Err(pos) = self.indices.binary_search(&feature) {
            self.indices.insert(pos, feature);
        }
    }

    /// Removes a feature if present.
    pub fn remove(&mut self, feature: usize) {
        if let Ok(pos) = self.indices.binary_search(&feature) {
            self.indices.remove(pos);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_subset_of(&self, other: &FeatureSubset) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    /// Checks every index against the owning system.
    pub fn validate(&self, system: &DecisionSystem) -> Result<()> {
        for index in self.iter() {
            system.check_feature(index)?;
        }
        Ok(())
    }

    /// Member names resolved against the owning system, in index order.
    pub fn names<'a>(&self, system: &'a DecisionSystem) -> Vec<&'a str> {
        self.iter().map(|i| system.feature(i).name()).collect()
    }
}

impl FromIterator<usize> for FeatureSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        FeatureSubset::from_indices(iter)
    }
}
