use std::collections::BTreeMap;

use einstab_core::aloff_wallach::AwInstability;
use einstab_core::nikonorov::NikInstability;
use einstab_core::spectra::NuReport;
use einstab_core::stiefel::StiefelInstability;
use einstab_core::{Classification, StabilityVerdict, Witness};
use serde::{Deserialize, Serialize};

use crate::real::{reals, Exact, Real};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessJson {
    SecondVariation {
        direction: Vec<Real>,
        value: Real,
        finite_difference: Option<Real>,
    },
    EigenvalueGap { eigenvalue: Real, einstein_constant: Real },
    OperatorEigenvalue { eigenvalue: Real, threshold: Real },
}

impl WitnessJson {
    pub fn to_core(&self) -> Witness {
        match self {
            WitnessJson::SecondVariation {
                direction,
                value,
                finite_difference,
            } => Witness::SecondVariation {
                direction: direction.iter().map(|r| r.0).collect(),
                value: value.0,
                finite_difference: finite_difference.map(|r| r.0),
            },
            WitnessJson::EigenvalueGap {
                eigenvalue,
                einstein_constant,
            } => Witness::EigenvalueGap {
                eigenvalue: eigenvalue.0,
                einstein_constant: einstein_constant.0,
            },
            WitnessJson::OperatorEigenvalue { eigenvalue, threshold } => Witness::OperatorEigenvalue {
                eigenvalue: eigenvalue.0,
                threshold: threshold.0,
            },
        }
    }
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::SecondVariation {
                direction,
                value,
                finite_difference,
            } => WitnessJson::SecondVariation {
                direction: reals(direction),
                value: Real(*value),
                finite_difference: finite_difference.map(Real),
            },
            Witness::EigenvalueGap {
                eigenvalue,
                einstein_constant,
            } => WitnessJson::EigenvalueGap {
                eigenvalue: Real(*eigenvalue),
                einstein_constant: Real(*einstein_constant),
            },
            Witness::OperatorEigenvalue { eigenvalue, threshold } => WitnessJson::OperatorEigenvalue {
                eigenvalue: Real(*eigenvalue),
                threshold: Real(*threshold),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub classification: String,
    pub witness: WitnessJson,
    pub coindex_lower_bound: usize,
}

impl VerdictJson {
    /// Classification recomputed from the witness, ignoring the stored label.
    pub fn derived(&self) -> Classification {
        self.witness.to_core().classify()
    }

    pub fn margin(&self) -> f64 {
        self.witness.to_core().margin()
    }

    pub fn is_consistent(&self) -> bool {
        self.derived().as_str() == self.classification
    }
}

impl From<&StabilityVerdict> for VerdictJson {
    fn from(v: &StabilityVerdict) -> Self {
        Self {
            classification: v.classification.as_str().to_owned(),
            witness: (&v.witness).into(),
            coindex_lower_bound: v.coindex_lower_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AwResult {
    pub p: i64,
    pub q: i64,
    pub branch: String,
    pub c: Real,
    pub c_residual: Real,
    /// `(alpha, beta, gamma, delta)`.
    pub metric: Vec<Real>,
    pub lambda: Real,
    pub einstein_defect: Real,
    pub structure_defect: Real,
    pub f3: Real,
    pub f4: Real,
    pub discriminant: Real,
    pub f_c: Real,
    pub identity_error: Real,
    pub forward_error: Real,
    pub divergence: Real,
    pub second_variation_generic: Real,
    pub verdict: VerdictJson,
}

impl From<&AwInstability> for AwResult {
    fn from(a: &AwInstability) -> Self {
        Self {
            p: a.p,
            q: a.q,
            branch: a.branch.to_string(),
            c: Real(a.c),
            c_residual: Real(a.c_residual),
            metric: reals(&a.metric.scales()),
            lambda: Real(a.lambda),
            einstein_defect: Real(a.einstein_defect),
            structure_defect: Real(a.structure_defect),
            f3: Real(a.f3f4.0),
            f4: Real(a.f3f4.1),
            discriminant: Real(a.discriminant),
            f_c: Real(a.f_c),
            identity_error: Real(a.identity_error),
            forward_error: Real(a.forward_error),
            divergence: Real(a.divergence),
            second_variation_generic: Real(a.second_variation_generic),
            verdict: (&a.verdict).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StiefelResult {
    pub n: usize,
    pub metric: Vec<Real>,
    pub ratios: Vec<Real>,
    pub lambda: Real,
    pub einstein_residual: Real,
    pub gradient_norm: Real,
    pub hessian_11: Real,
    pub closed_form: Real,
    pub closed_form_error: Real,
    pub divergence: Option<Real>,
    pub verdict: VerdictJson,
}

impl From<&StiefelInstability> for StiefelResult {
    fn from(s: &StiefelInstability) -> Self {
        Self {
            n: s.n,
            metric: reals(s.einstein.metric.x()),
            ratios: reals(&s.einstein.metric.ratios()),
            lambda: Real(s.einstein.lambda),
            einstein_residual: Real(s.einstein.max_residual()),
            gradient_norm: Real(s.einstein.gradient_norm),
            hessian_11: Real(s.hessian_11),
            closed_form: Real(s.closed_form),
            closed_form_error: Real(s.closed_form_error),
            divergence: s.divergence.map(Real),
            verdict: (&s.verdict).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NikResult {
    pub solution: usize,
    pub axis: usize,
    pub metric: Vec<Real>,
    pub lambda: Real,
    pub einstein_residual: Real,
    pub second_derivative: Real,
    pub simplified: Real,
    pub simplified_bracket: Real,
    pub ratio: Real,
    pub first_derivative_bracket: Real,
    pub divergence: Real,
    pub verdict: VerdictJson,
}

impl NikResult {
    pub fn new(solution: usize, n: &NikInstability) -> Self {
        Self {
            solution,
            axis: n.axis,
            metric: reals(n.solution.metric.x()),
            lambda: Real(n.solution.lambda),
            einstein_residual: Real(n.solution.max_residual()),
            second_derivative: Real(n.second_derivative),
            simplified: Real(n.simplified),
            simplified_bracket: Real(n.simplified_bracket),
            ratio: Real(n.ratio),
            first_derivative_bracket: Real(n.first_derivative_bracket),
            divergence: Real(n.divergence),
            verdict: (&n.verdict).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub case: String,
    pub group: String,
    pub subgroup: String,
    pub base_dimension: Option<i64>,
    pub einstein_constant: Exact,
    pub fiber_length: Option<Exact>,
    pub representation: String,
    pub representation_dimension: Option<String>,
    pub casimir_prime: Option<Exact>,
    pub casimir_q: Option<Exact>,
    pub eigenvalue: Exact,
    pub threshold: Exact,
    pub destabilizing_dimension: Option<String>,
    pub search_bound: Option<i64>,
    pub citation: String,
    pub verdict: VerdictJson,
}

impl From<&NuReport> for SpectralResult {
    fn from(r: &NuReport) -> Self {
        Self {
            case: r.case.to_string(),
            group: r.group.clone(),
            subgroup: r.subgroup.clone(),
            base_dimension: r.base_dimension,
            einstein_constant: Exact::new(&r.einstein_constant),
            fiber_length: r.fiber_length.as_ref().map(Exact::new),
            representation: r.representation.clone(),
            representation_dimension: r.representation_dimension.as_ref().map(ToString::to_string),
            casimir_prime: r.casimir_prime.as_ref().map(Exact::new),
            casimir_q: r.casimir_q.as_ref().map(Exact::new),
            eigenvalue: Exact::new(&r.eigenvalue),
            threshold: Exact::new(&r.threshold),
            destabilizing_dimension: r.destabilizing_dimension.as_ref().map(ToString::to_string),
            search_bound: r.search_bound,
            citation: r.citation.clone(),
            verdict: (&r.verdict).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowDimRow {
    pub dimension: u32,
    pub item: String,
    pub space: String,
    /// A classification label, or `open`.
    pub verdict: String,
    pub evidence: String,
    /// Computation in this report that backs the verdict, if any.
    pub computed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub label: String,
    pub error: String,
    pub exit_code: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ResultEntry {
    AloffWallach(AwResult),
    Stiefel(StiefelResult),
    Nikonorov(NikResult),
    Spectral(SpectralResult),
    LowDim(LowDimRow),
    Failure(Failure),
}

impl ResultEntry {
    pub fn verdict(&self) -> Option<&VerdictJson> {
        match self {
            ResultEntry::AloffWallach(r) => Some(&r.verdict),
            ResultEntry::Stiefel(r) => Some(&r.verdict),
            ResultEntry::Nikonorov(r) => Some(&r.verdict),
            ResultEntry::Spectral(r) => Some(&r.verdict),
            ResultEntry::LowDim(_) | ResultEntry::Failure(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: BTreeMap<String, String>,
    pub results: Vec<ResultEntry>,
    pub notes: Vec<String>,
    pub version: String,
    pub deterministic: bool,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>) -> Self {
        Self {
            config,
            results: Vec::new(),
            notes: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            deterministic: true,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.results.iter().filter_map(|r| match r {
            ResultEntry::Failure(f) => Some(f),
            _ => None,
        })
    }
}
