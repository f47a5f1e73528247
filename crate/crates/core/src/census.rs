//! Running the realization search over the named configurations and
//! summarizing the results one row per polyhedron or family.

use serde::Serialize;
use thiserror::Error;

use crate::field::FieldScalar;
use crate::flagmap::MapInvariants;
use crate::labels::{census_label, type_label, GORDAN_RELATIVES};
use crate::linalg::coplanar;
use crate::presentation::{build_map, PresentationError, DEFAULT_MAX_COSETS};
use crate::realization::{
    classify_face_centers, edge_traversal_check, search, CertificateError, FaceOrbitClass, FoundPolyhedron,
    OrbitCensus, PlanarityAnalysis, RealizationFamily, SearchDiagnostics, SearchError, SearchOptions,
    ValidationError,
};
use crate::symmetry::{standard_configuration, ConfigKind, SymmetryError, VertexConfiguration};

pub const SCHEMA: &str = "gordan-report/1";

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("validation failed: {0}")]
    Validation(#[from] ValidationError),
    #[error("index-2 certificate failed: {0}")]
    Certificate(#[from] CertificateError),
}

#[derive(Clone, Debug)]
pub struct RealizeOptions {
    /// Ratio used for the two-icosahedra configuration.
    pub lambda: FieldScalar,
    pub max_cosets: usize,
    pub search: SearchOptions,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self { lambda: FieldScalar::integer(2), max_cosets: DEFAULT_MAX_COSETS, search: SearchOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub aut_order: usize,
    pub symmetry_order: usize,
    pub index: usize,
}

/// Everything established about one found polyhedron.
#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub target: String,
    pub census_label: Option<String>,
    pub configuration: ConfigKind,
    pub lambda: Option<FieldScalar>,
    /// Member of a one-parameter family (two vertex orbits) rather than an
    /// individual polyhedron.
    pub family: bool,
    pub base_edge: [usize; 2],
    pub invariants: MapInvariants,
    pub orbit_census: OrbitCensus,
    /// Every face is planar at this configuration.
    pub planar_faces: bool,
    pub face_classes: Vec<FaceOrbitClass>,
    /// Present for families only.
    pub planarity: Option<PlanarityAnalysis>,
    /// Present for individual polyhedra only.
    pub edge_traversal: Option<bool>,
    pub certificate: CertificateSummary,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub config: VertexConfiguration,
    pub target: (usize, usize, usize),
    pub found: FoundPolyhedron,
    pub report: RealizationReport,
}

#[derive(Clone, Debug)]
pub struct ConfigOutcome {
    pub config: VertexConfiguration,
    pub target: (usize, usize, usize),
    pub realizations: Vec<Realization>,
    pub diagnostics: SearchDiagnostics,
}

fn analyze(
    config: &VertexConfiguration,
    target: (usize, usize, usize),
    found: FoundPolyhedron,
) -> Result<Realization, RealizeError> {
    let poly = &found.polyhedron;
    let (p, q, r) = target;
    let family = config.kind == ConfigKind::TwoIcosahedra;
    let cert = poly.index_two_certificate()?;
    let planar_faces = poly
        .faces
        .iter()
        .all(|f| coplanar(&f.iter().map(|&v| poly.vertices[v].clone()).collect::<Vec<_>>()));
    let planarity = if family { Some(RealizationFamily::from_found(&found, target).planarity()?) } else { None };
    let report = RealizationReport {
        target: type_label(p, q, r),
        census_label: census_label(p, q, r).map(str::to_string),
        configuration: config.kind,
        lambda: config.lambda.clone(),
        family,
        base_edge: found.base_edge,
        invariants: found.invariants.clone(),
        orbit_census: poly.orbit_census()?,
        planar_faces,
        face_classes: classify_face_centers(poly, config)?,
        planarity,
        edge_traversal: (!family).then(|| edge_traversal_check(poly, config)),
        certificate: CertificateSummary {
            aut_order: cert.aut_order,
            symmetry_order: cert.symmetry_order,
            index: cert.aut_order / cert.symmetry_order,
        },
    };
    Ok(Realization { config: config.clone(), target, found, report })
}

/// Searches one configuration for realizations of one relative.
pub fn realize(
    kind: ConfigKind,
    target: (usize, usize, usize),
    options: &RealizeOptions,
) -> Result<ConfigOutcome, RealizeError> {
    let lambda = (kind == ConfigKind::TwoIcosahedra).then(|| options.lambda.clone());
    let config = standard_configuration(kind, lambda)?;
    let map = build_map(target.0, target.1, target.2, options.max_cosets)?;
    let outcome = search(&config, &map, &options.search)?;
    let realizations =
        outcome.polyhedra.into_iter().map(|f| analyze(&config, target, f)).collect::<Result<Vec<_>, _>>()?;
    Ok(ConfigOutcome { config, target, realizations, diagnostics: outcome.diagnostics })
}

/// Every configuration against every relative, in a fixed order.
pub fn realize_all(options: &RealizeOptions) -> Result<Vec<ConfigOutcome>, RealizeError> {
    let mut out = Vec::new();
    for kind in ConfigKind::ALL {
        for target in GORDAN_RELATIVES {
            out.push(realize(kind, target, options)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanarStatus {
    /// Every face planar.
    Yes,
    /// A family with exactly one planar member.
    YesForOne,
    No,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub target: String,
    pub f_vector: [usize; 3],
    pub vertex_orbits: usize,
    pub census_label: Option<String>,
    pub planar_faces: PlanarStatus,
    pub family: bool,
    pub configuration: ConfigKind,
    /// Diameter ratio of the planar member, for families.
    pub distinguished_ratio: Option<FieldScalar>,
}

impl CensusRow {
    pub fn from_report(r: &RealizationReport) -> Self {
        let (planar_faces, distinguished_ratio) = match &r.planarity {
            Some(a) => match a.ratios.as_slice() {
                [only] => (PlanarStatus::YesForOne, Some(only.clone())),
                [] if a.identically_planar => (PlanarStatus::Yes, None),
                [] => (PlanarStatus::No, None),
                [first, ..] => (PlanarStatus::YesForOne, Some(first.clone())),
            },
            None if r.planar_faces => (PlanarStatus::Yes, None),
            None => (PlanarStatus::No, None),
        };
        Self {
            target: r.target.clone(),
            f_vector: r.invariants.f_vector,
            vertex_orbits: r.orbit_census.vertex_orbits,
            census_label: r.census_label.clone(),
            planar_faces,
            family: r.family,
            configuration: r.configuration,
            distinguished_ratio,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub schema: &'static str,
    pub rows: Vec<CensusRow>,
}

impl CensusReport {
    pub fn from_outcomes(outcomes: &[ConfigOutcome]) -> Self {
        let rows = outcomes.iter().flat_map(|o| &o.realizations).map(|r| CensusRow::from_report(&r.report)).collect();
        Self { schema: SCHEMA, rows }
    }

    pub fn families(&self) -> usize {
        self.rows.iter().filter(|r| r.family).count()
    }

    pub fn individuals(&self) -> usize {
        self.rows.iter().filter(|r| !r.family).count()
    }
}
