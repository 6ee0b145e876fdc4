//! Local singularity analysis over the base point and the branch curve.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::classify::{classify_parameters, DegenerationClass};
use super::model::CoverModel;
use super::planes::{decompose_three_planes, ThreePlanes};
use super::CoverError;
use crate::chern::{adjunction_genus, Lattice, NumClass, SurfaceGeom};
use crate::qpoly::{
    hilbert_series_with, int, jacobian_ideal, krull_dimension_with, GroebnerConfig, HilbertSeries,
    Rat,
};

/// The local analytic types that occur on the covering surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    /// The cone over a twisted cubic: a cyclic quotient of type 1/3(1, 1).
    ConeTwistedCubicOneThird11,
    /// An ordinary double point: a cyclic quotient of type 1/2(1, 1).
    OneHalf11,
    /// A cyclic quotient of type 1/3(1, 2).
    OneThird12,
    /// A union of three 2-planes; the local model is not normal.
    ThreePlanes,
    /// No singularity.
    SmoothPoint,
}

/// The exceptional curves of the minimal resolution of a quotient
/// singularity, with the corrections to the self-intersection of the
/// canonical class and the holomorphic Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionData {
    pub exceptional_self_intersections: Vec<i64>,
    pub delta_k2: i64,
    pub delta_chi: i64,
}

impl SingularityKind {
    /// Resolution data for the normal local types. The three-plane case
    /// is not normal, so it carries none.
    pub fn resolution(&self) -> Option<ResolutionData> {
        let curves = match self {
            SingularityKind::ConeTwistedCubicOneThird11 => vec![-3],
            SingularityKind::OneHalf11 => vec![-2],
            SingularityKind::OneThird12 => vec![-2, -2],
            SingularityKind::ThreePlanes => return None,
            SingularityKind::SmoothPoint => vec![],
        };
        Some(ResolutionData {
            exceptional_self_intersections: curves,
            delta_k2: 0,
            delta_chi: 0,
        })
    }

    /// True for the quotient singularities that change neither the
    /// self-intersection of the canonical class nor the holomorphic
    /// Euler characteristic under resolution.
    pub fn is_negligible(&self) -> bool {
        match self.resolution() {
            Some(r) => r.delta_k2 == 0 && r.delta_chi == 0,
            None => false,
        }
    }
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            SingularityKind::ConeTwistedCubicOneThird11 => {
                "cone over a twisted cubic, of type 1/3(1, 1)"
            }
            SingularityKind::OneHalf11 => "ordinary double point, of type 1/2(1, 1)",
            SingularityKind::OneThird12 => "cyclic quotient of type 1/3(1, 2)",
            SingularityKind::ThreePlanes => "three planes meeting along two lines",
            SingularityKind::SmoothPoint => "smooth point",
        };
        f.write_str(text)
    }
}

/// What was certified over the base point of a parameter pair.
#[derive(Debug, Clone)]
pub struct BasePointAnalysis {
    pub class: DegenerationClass,
    pub kind: SingularityKind,
    /// Hilbert series of the minor ideal, for the cone certificate.
    pub hilbert: Option<HilbertSeries>,
    /// Krull dimension of the Jacobian ideal, for the cone certificate.
    pub singular_dimension: Option<usize>,
    /// The plane decomposition, in the non-normal case.
    pub planes: Option<ThreePlanes>,
}

/// Certifies the local type of the model over the base point: a cone
/// over a twisted cubic away from the non-normal parameter lines, and a
/// three-plane decomposition on them. Certification failures are
/// reported, never silently ignored.
pub fn analyze_base_point(
    model: &CoverModel,
    s: &Rat,
    t: &Rat,
) -> Result<BasePointAnalysis, CoverError> {
    analyze_base_point_with(model, s, t, &GroebnerConfig::default())
}

/// As [`analyze_base_point`], with an explicit Gröbner configuration
/// bounding the certification work.
pub fn analyze_base_point_with(
    model: &CoverModel,
    s: &Rat,
    t: &Rat,
    config: &GroebnerConfig,
) -> Result<BasePointAnalysis, CoverError> {
    match model.data().params() {
        Some((ms, mt)) if ms == s && mt == t => {}
        Some((ms, mt)) => {
            return Err(CoverError::Shape(format!(
                "model was built at ({ms}, {mt}), not ({s}, {t})"
            )))
        }
        None => {
            return Err(CoverError::Shape(
                "base point analysis needs a model built at a rational parameter pair".into(),
            ))
        }
    }
    let class = classify_parameters(s, t)?;
    if class.is_non_normal() {
        let planes = decompose_three_planes(model)?;
        return Ok(BasePointAnalysis {
            class,
            kind: SingularityKind::ThreePlanes,
            hilbert: None,
            singular_dimension: None,
            planes: Some(planes),
        });
    }
    let series = hilbert_series_with(model.minors(), config)?;
    let expected_numerator = [BigInt::one(), BigInt::from(2)];
    if series.numerator() != expected_numerator || series.ambient() != 2 {
        return Err(CoverError::CertificationFailed(format!(
            "minor ideal has Hilbert series {series}, not that of a cone over a twisted cubic"
        )));
    }
    let jacobian = jacobian_ideal(model.minors(), 2)?;
    let singular_dim = krull_dimension_with(&jacobian, config)?;
    if singular_dim != 0 {
        return Err(CoverError::CertificationFailed(format!(
            "singular locus of the cone has dimension {singular_dim}, expected an isolated vertex"
        )));
    }
    Ok(BasePointAnalysis {
        class,
        kind: SingularityKind::ConeTwistedCubicOneThird11,
        hilbert: Some(series),
        singular_dimension: Some(singular_dim),
        planes: None,
    })
}

/// A singular point of the branch curve, described by the data that
/// determines the local type of the cover above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchPoint {
    /// Multiplicity of the branch divisor at the point.
    pub multiplicity: u32,
    /// Whether the branch divisor is reduced there.
    pub reduced: bool,
    /// Whether the cover is totally ramified over the point.
    pub totally_ramified: bool,
    /// Whether the point is the distinguished point of the polarization.
    pub at_origin: bool,
}

impl fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "multiplicity {}, {}, {}, {} the distinguished point",
            self.multiplicity,
            if self.reduced { "reduced" } else { "doubled" },
            if self.totally_ramified {
                "totally ramified"
            } else {
                "not totally ramified"
            },
            if self.at_origin { "at" } else { "away from" },
        )
    }
}

/// What lies on the cover above one singular branch point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchPointOutcome {
    pub point: BranchPoint,
    /// The local types above the point.
    pub over: Vec<SingularityKind>,
    /// Whether the canonical resolution over this point is already
    /// minimal. A double point without total ramification forces a
    /// (-1)-curve into the canonical resolution, which the minimal one
    /// contracts.
    pub canonical_resolution_minimal: bool,
}

/// The local types above a single singular branch point.
pub fn branch_point_outcome(point: &BranchPoint) -> Result<BranchPointOutcome, CoverError> {
    let over = match (
        point.multiplicity,
        point.reduced,
        point.totally_ramified,
        point.at_origin,
    ) {
        (4, true, true, _) => vec![SingularityKind::ConeTwistedCubicOneThird11],
        (2, true, false, _) => {
            return Ok(BranchPointOutcome {
                point: *point,
                over: vec![SingularityKind::SmoothPoint, SingularityKind::OneHalf11],
                canonical_resolution_minimal: false,
            })
        }
        (2, true, true, _) => {
            return Err(CoverError::InconsistentDescriptor(
                "a double point of a reduced branch curve cannot be totally ramified".into(),
            ))
        }
        (4, false, true, true) => vec![SingularityKind::ConeTwistedCubicOneThird11],
        (4, false, true, false) => vec![SingularityKind::OneThird12],
        _ => {
            return Err(CoverError::UnclassifiedCase(format!(
                "no classified local type for a branch point with {point}"
            )))
        }
    };
    Ok(BranchPointOutcome {
        point: *point,
        over,
        canonical_resolution_minimal: true,
    })
}

/// The four classified configurations of singular branch points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchCase {
    /// A reduced branch curve whose only singularity is a quadruple
    /// point at the distinguished point.
    ReducedQuadruple,
    /// A reduced branch curve with the quadruple point and one node.
    ReducedQuadrupleAndNode,
    /// A doubled irreducible curve with a node at the distinguished
    /// point.
    DoubledNodal,
    /// A doubled curve with two nodes, one of them at the distinguished
    /// point.
    DoubledTwoNodes,
}

impl BranchCase {
    pub fn letter(&self) -> char {
        match self {
            BranchCase::ReducedQuadruple => 'a',
            BranchCase::ReducedQuadrupleAndNode => 'b',
            BranchCase::DoubledNodal => 'c',
            BranchCase::DoubledTwoNodes => 'd',
        }
    }

    /// The singular branch points of this configuration.
    pub fn standard_points(&self) -> Vec<BranchPoint> {
        let quadruple_reduced = BranchPoint {
            multiplicity: 4,
            reduced: true,
            totally_ramified: true,
            at_origin: true,
        };
        let node_reduced = BranchPoint {
            multiplicity: 2,
            reduced: true,
            totally_ramified: false,
            at_origin: false,
        };
        let node_doubled = BranchPoint {
            multiplicity: 4,
            reduced: false,
            totally_ramified: true,
            at_origin: true,
        };
        let node_doubled_off = BranchPoint {
            multiplicity: 4,
            reduced: false,
            totally_ramified: true,
            at_origin: false,
        };
        match self {
            BranchCase::ReducedQuadruple => vec![quadruple_reduced],
            BranchCase::ReducedQuadrupleAndNode => vec![quadruple_reduced, node_reduced],
            BranchCase::DoubledNodal => vec![node_doubled],
            BranchCase::DoubledTwoNodes => vec![node_doubled, node_doubled_off],
        }
    }
}

impl fmt::Display for BranchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            BranchCase::ReducedQuadruple => "(a) reduced, one quadruple point",
            BranchCase::ReducedQuadrupleAndNode => "(b) reduced, a quadruple point and a node",
            BranchCase::DoubledNodal => "(c) doubled, one node",
            BranchCase::DoubledTwoNodes => "(d) doubled, two nodes",
        };
        f.write_str(text)
    }
}

/// The full singularity bookkeeping for one branch configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSingularityReport {
    pub case: BranchCase,
    pub outcomes: Vec<BranchPointOutcome>,
    /// The non-smooth local types on the cover, in point order.
    pub singular: Vec<SingularityKind>,
    /// Whether the canonical class of the covering surface is ample.
    pub canonical_ample: bool,
}

/// Matches a set of singular branch points against the classified
/// configurations and tabulates what lies above each point. The
/// canonical class is ample exactly when every singular branch point
/// sits at the distinguished point.
pub fn branch_singularity_table(
    points: &[BranchPoint],
) -> Result<CoverSingularityReport, CoverError> {
    let case = [
        BranchCase::ReducedQuadruple,
        BranchCase::ReducedQuadrupleAndNode,
        BranchCase::DoubledNodal,
        BranchCase::DoubledTwoNodes,
    ]
    .into_iter()
    .find(|case| {
        let expected = case.standard_points();
        expected.len() == points.len() && expected.iter().all(|p| points.contains(p))
    })
    .ok_or_else(|| {
        let shown: Vec<String> = points.iter().map(|p| format!("[{p}]")).collect();
        CoverError::UnclassifiedCase(format!(
            "the branch points {} match none of the classified configurations",
            shown.join(", ")
        ))
    })?;
    let outcomes: Vec<BranchPointOutcome> = points
        .iter()
        .map(branch_point_outcome)
        .collect::<Result<_, _>>()?;
    let singular: Vec<SingularityKind> = outcomes
        .iter()
        .flat_map(|o| o.over.iter().copied())
        .filter(|k| *k != SingularityKind::SmoothPoint)
        .collect();
    let canonical_ample = matches!(
        case,
        BranchCase::ReducedQuadruple | BranchCase::DoubledNodal
    );
    Ok(CoverSingularityReport {
        case,
        outcomes,
        singular,
        canonical_ample,
    })
}

/// The intersection numerology of the canonical class written as the
/// sum of two curves.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalDecomposition {
    pub k_squared: Rat,
    pub xi_self: Rat,
    pub pairing: Rat,
    pub phi_self: Rat,
    pub xi_genus: Rat,
    pub phi_genus: Rat,
    pub pass: bool,
}

/// Checks the decomposition K = Xi + Phi against the intersection
/// matrix [[-3, 4], [4, 0]]: the canonical degree is 5 on a surface
/// with Euler number 7 and chi = 1, Phi moves in a genus-3 pencil, and
/// Xi is a rational curve.
pub fn canonical_decomposition_check() -> Result<CanonicalDecomposition, CoverError> {
    let lattice = Lattice::new(&["Xi", "Phi"], &[vec![-3, 4], vec![4, 0]])?;
    let xi = NumClass::basis(&lattice, "Xi")?;
    let phi = NumClass::basis(&lattice, "Phi")?;
    let k = xi.checked_add(&phi)?;
    let geom = SurfaceGeom::new(k, 7, int(1))?;
    let xi_genus = adjunction_genus(&xi, &geom)?;
    let phi_genus = adjunction_genus(&phi, &geom)?;
    let observed = CanonicalDecomposition {
        k_squared: geom.k_squared(),
        xi_self: xi.self_intersection(),
        pairing: xi.pair(&phi)?,
        phi_self: phi.self_intersection(),
        xi_genus: xi_genus.genus.clone(),
        phi_genus: phi_genus.genus.clone(),
        pass: false,
    };
    let pass = xi_genus.integral
        && phi_genus.integral
        && observed.k_squared == int(5)
        && observed.xi_self == int(-3)
        && observed.pairing == int(4)
        && observed.phi_self == int(0)
        && observed.xi_genus == int(0)
        && observed.phi_genus == int(3);
    Ok(CanonicalDecomposition { pass, ..observed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::model::{build_model, MirandaData};
    use crate::qpoly::rat;

    #[test]
    fn general_parameters_certify_the_cone() {
        let model = build_model(&MirandaData::standard(&int(1), &int(2)));
        let analysis = analyze_base_point(&model, &int(1), &int(2)).unwrap();
        assert!(analysis.class.is_general());
        assert_eq!(analysis.kind, SingularityKind::ConeTwistedCubicOneThird11);
        let series = analysis.hilbert.unwrap();
        assert_eq!(series.numerator(), [BigInt::one(), BigInt::from(2)]);
        assert_eq!(series.ambient(), 2);
        assert_eq!(analysis.singular_dimension, Some(0));
        assert!(analysis.planes.is_none());
    }

    #[test]
    fn totally_ramified_parameters_certify_the_same_cone() {
        let model = build_model(&MirandaData::standard(&int(1), &int(1)));
        let analysis = analyze_base_point(&model, &int(1), &int(1)).unwrap();
        assert!(!analysis.class.is_general());
        assert!(!analysis.class.is_non_normal());
        assert_eq!(analysis.kind, SingularityKind::ConeTwistedCubicOneThird11);
    }

    #[test]
    fn non_normal_parameters_decompose_into_planes() {
        let model = build_model(&MirandaData::standard(&int(1), &int(0)));
        let analysis = analyze_base_point(&model, &int(1), &int(0)).unwrap();
        assert!(analysis.class.is_non_normal());
        assert_eq!(analysis.kind, SingularityKind::ThreePlanes);
        assert_eq!(analysis.planes.unwrap().components.len(), 3);
        assert!(analysis.hilbert.is_none());
    }

    #[test]
    fn parameter_mismatch_is_rejected() {
        let model = build_model(&MirandaData::standard(&int(1), &int(2)));
        let err = analyze_base_point(&model, &rat(1, 3), &int(2)).unwrap_err();
        assert!(matches!(err, CoverError::Shape(_)));
    }

    #[test]
    fn resolution_table() {
        let cone = SingularityKind::ConeTwistedCubicOneThird11.resolution().unwrap();
        assert_eq!(cone.exceptional_self_intersections, vec![-3]);
        assert_eq!((cone.delta_k2, cone.delta_chi), (0, 0));
        let half = SingularityKind::OneHalf11.resolution().unwrap();
        assert_eq!(half.exceptional_self_intersections, vec![-2]);
        let third = SingularityKind::OneThird12.resolution().unwrap();
        assert_eq!(third.exceptional_self_intersections, vec![-2, -2]);
        assert!(SingularityKind::ThreePlanes.resolution().is_none());
        assert!(!SingularityKind::ThreePlanes.is_negligible());
        assert!(SingularityKind::OneThird12.is_negligible());
        assert_eq!(
            SingularityKind::SmoothPoint
                .resolution()
                .unwrap()
                .exceptional_self_intersections,
            Vec::<i64>::new()
        );
    }

    #[test]
    fn branch_point_table_matches_the_case_analysis() {
        let quadruple = BranchPoint {
            multiplicity: 4,
            reduced: true,
            totally_ramified: true,
            at_origin: true,
        };
        let outcome = branch_point_outcome(&quadruple).unwrap();
        assert_eq!(outcome.over, vec![SingularityKind::ConeTwistedCubicOneThird11]);
        assert!(outcome.canonical_resolution_minimal);

        let node = BranchPoint {
            multiplicity: 2,
            reduced: true,
            totally_ramified: false,
            at_origin: false,
        };
        let outcome = branch_point_outcome(&node).unwrap();
        assert_eq!(
            outcome.over,
            vec![SingularityKind::SmoothPoint, SingularityKind::OneHalf11]
        );
        assert!(!outcome.canonical_resolution_minimal);

        let doubled_off = BranchPoint {
            multiplicity: 4,
            reduced: false,
            totally_ramified: true,
            at_origin: false,
        };
        let outcome = branch_point_outcome(&doubled_off).unwrap();
        assert_eq!(outcome.over, vec![SingularityKind::OneThird12]);
    }

    #[test]
    fn a_totally_ramified_reduced_node_is_inconsistent() {
        let bad = BranchPoint {
            multiplicity: 2,
            reduced: true,
            totally_ramified: true,
            at_origin: false,
        };
        let err = branch_point_outcome(&bad).unwrap_err();
        assert!(matches!(err, CoverError::InconsistentDescriptor(_)));
    }

    #[test]
    fn unknown_multiplicities_are_not_classified() {
        let odd = BranchPoint {
            multiplicity: 3,
            reduced: true,
            totally_ramified: true,
            at_origin: true,
        };
        let err = branch_point_outcome(&odd).unwrap_err();
        assert!(matches!(err, CoverError::UnclassifiedCase(_)));
    }

    #[test]
    fn the_four_configurations_tabulate_correctly() {
        use BranchCase::*;
        use SingularityKind::*;
        let expect = [
            (ReducedQuadruple, vec![ConeTwistedCubicOneThird11], true),
            (
                ReducedQuadrupleAndNode,
                vec![ConeTwistedCubicOneThird11, OneHalf11],
                false,
            ),
            (DoubledNodal, vec![ConeTwistedCubicOneThird11], true),
            (
                DoubledTwoNodes,
                vec![ConeTwistedCubicOneThird11, OneThird12],
                false,
            ),
        ];
        for (case, singular, ample) in expect {
            let report = branch_singularity_table(&case.standard_points()).unwrap();
            assert_eq!(report.case, case, "case {}", case.letter());
            assert_eq!(report.singular, singular, "case {}", case.letter());
            assert_eq!(report.canonical_ample, ample, "case {}", case.letter());
            for kind in &report.singular {
                assert!(kind.is_negligible(), "case {}", case.letter());
            }
        }
    }

    #[test]
    fn unlisted_configurations_are_rejected() {
        let quadruple = BranchPoint {
            multiplicity: 4,
            reduced: true,
            totally_ramified: true,
            at_origin: true,
        };
        let err = branch_singularity_table(&[quadruple, quadruple]).unwrap_err();
        assert!(matches!(err, CoverError::UnclassifiedCase(_)));
    }

    #[test]
    fn canonical_decomposition_numerology() {
        let check = canonical_decomposition_check().unwrap();
        assert!(check.pass);
        assert_eq!(check.k_squared, int(5));
        assert_eq!(check.xi_self, int(-3));
        assert_eq!(check.pairing, int(4));
        assert_eq!(check.phi_self, int(0));
        assert_eq!(check.xi_genus, int(0));
        assert_eq!(check.phi_genus, int(3));
    }
}
