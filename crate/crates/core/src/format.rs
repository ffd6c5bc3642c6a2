//! JSON file formats and report shapes.
//!
//! Semirings use `{ name, size, zero, one, add, mul }`, semimodules
//! `{ name, base, size, zero, add, action }`; row index is the left operand.
//! An expectation product is written as a semiring with an extra `pairing`
//! block mapping each product index to its `(s, m)` coordinates.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::classify::{
    additively_regular_elements, almost_clean_criterion, classify, classify_instance, is_domainlike_mod,
    is_presimplifiable_mod, is_strongly_associate_mod, module_zero_divisors, ClassReport,
};
use crate::error::{Error, Result};
use crate::expectation::ExpectationInstance;
use crate::ideals::{
    enumerate_ideals, is_maximal, is_prime, is_primary, is_subtractive, is_weakly_prime, radical, Ideal,
};
use crate::numeric::{GraphSpec, NumericWeight, WeightedDag};
use crate::tables::{
    validate_semimodule, validate_semiring, v_set, AdditiveMonoid, Elem, FiniteSemimodule, FiniteSemiring, RawSemimodule,
    RawSemiring, Subset,
};

pub const IDEALS_SCHEMA: &str = "idealize.ideals.v1";
pub const CLASSIFY_SCHEMA: &str = "idealize.classify.v1";
pub const EXPECT_SCHEMA: &str = "idealize.expect.v1";

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(fs::write(path, text)?)
}

/// `(s, m)` coordinates of every index of an expectation product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub semiring: String,
    pub module: String,
    pub pairs: Vec<(Elem, Elem)>,
}

/// A semiring file, possibly carrying a pairing block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(flatten)]
    pub raw: RawSemiring,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Pairing>,
}

impl InstanceFile {
    pub fn from_instance(inst: &ExpectationInstance) -> Self {
        let e = inst.product();
        InstanceFile {
            raw: e.to_raw(),
            pairing: Some(Pairing {
                semiring: inst.semiring().name().to_string(),
                module: inst.module().name().to_string(),
                pairs: (0..e.size()).map(|p| inst.pair(p)).collect(),
            }),
        }
    }

    /// Element labels: pairing coordinates when present, else indices.
    pub fn labels(&self) -> Vec<String> {
        match &self.pairing {
            Some(p) => p.pairs.iter().map(|(s, m)| format!("({s},{m})")).collect(),
            None => (0..self.raw.size).map(|i| i.to_string()).collect(),
        }
    }
}

pub fn read_semiring(path: &Path) -> Result<FiniteSemiring> {
    let file: InstanceFile = read_json(path)?;
    validate_semiring(file.raw)
}

/// Reads a semimodule and validates it over `base`. A `base` field naming a
/// different semiring is a [`Error::BaseMismatch`].
pub fn read_semimodule(path: &Path, base: &Arc<FiniteSemiring>) -> Result<FiniteSemimodule> {
    let raw: RawSemimodule = read_json(path)?;
    if !raw.base.is_empty() && raw.base != base.name() {
        return Err(Error::BaseMismatch(format!("module declares base `{}`, got `{}`", raw.base, base.name())));
    }
    validate_semimodule(base, raw)
}

pub fn read_graph(path: &Path) -> Result<WeightedDag> {
    let spec: GraphSpec = read_json(path)?;
    WeightedDag::from_spec(&spec)
}

/// One ideal with its predicate vector. Primeness and the like are `None`
/// on the whole semiring, where they are undefined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealEntry {
    pub members: Vec<Elem>,
    pub labels: Vec<String>,
    pub subtractive: bool,
    pub prime: Option<bool>,
    pub maximal: Option<bool>,
    pub primary: Option<bool>,
    pub weakly_prime: Option<bool>,
    pub radical: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealsReport {
    pub schema: &'static str,
    pub instance: String,
    pub size: usize,
    pub ideals: Vec<IdealEntry>,
}

pub fn ideals_report(s: &FiniteSemiring, labels: &[String]) -> Result<IdealsReport> {
    let describe = |set: &Subset| set.iter().map(|i| labels[i].clone()).collect();
    let mut ideals = Vec::new();
    for ideal in enumerate_ideals(s)? {
        let proper = |f: fn(&FiniteSemiring, &Ideal) -> Result<bool>| ideal.is_proper().then(|| f(s, &ideal)).transpose();
        ideals.push(IdealEntry {
            members: ideal.members().to_vec(),
            labels: describe(ideal.members()),
            subtractive: is_subtractive(s, ideal.members()),
            prime: proper(is_prime)?,
            maximal: proper(is_maximal)?,
            primary: proper(is_primary)?,
            weakly_prime: proper(is_weakly_prime)?,
            radical: radical(s, &ideal).members().to_vec(),
        });
    }
    Ok(IdealsReport { schema: IDEALS_SCHEMA, instance: s.name().to_string(), size: s.size(), ideals })
}

/// Semimodule-level classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub name: String,
    pub v_set: Subset,
    /// `None` for the zero module, where zero-divisors are undefined.
    pub zero_divisors: Option<Subset>,
    pub additively_regular: Subset,
    pub presimplifiable: bool,
    pub strongly_associate: bool,
    pub domainlike: bool,
    pub almost_clean_criterion: bool,
}

pub fn module_report(m: &FiniteSemimodule) -> ModuleReport {
    ModuleReport {
        name: m.name().to_string(),
        v_set: v_set(m),
        zero_divisors: (!m.is_zero_module()).then(|| module_zero_divisors(m)),
        additively_regular: additively_regular_elements(m),
        presimplifiable: is_presimplifiable_mod(m),
        strongly_associate: is_strongly_associate_mod(m),
        domainlike: is_domainlike_mod(m),
        almost_clean_criterion: almost_clean_criterion(m),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledClassReport {
    pub name: String,
    pub labels: Vec<String>,
    #[serde(flatten)]
    pub report: ClassReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyOutput {
    pub schema: &'static str,
    pub semiring: LabeledClassReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product: Option<LabeledClassReport>,
}

pub fn classify_output(s: &FiniteSemiring, labels: Vec<String>, inst: Option<&ExpectationInstance>) -> ClassifyOutput {
    ClassifyOutput {
        schema: CLASSIFY_SCHEMA,
        semiring: LabeledClassReport { name: s.name().to_string(), labels, report: classify(s) },
        module: inst.map(|i| module_report(i.module())),
        product: inst.map(|i| LabeledClassReport {
            name: i.product().name().to_string(),
            labels: (0..i.product().size()).map(|p| i.label(p)).collect(),
            report: classify_instance(i),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleComparison {
    pub paths: u64,
    pub total: NumericWeight,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectOutput {
    pub schema: &'static str,
    pub total: NumericWeight,
    /// `None` when the total mass is zero.
    pub expectation: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleComparison>,
}
