//! Structural classification of graphs against the equality families of the
//! Gutman-bound characterization, the equal-|mu| lemma, and the lambda_1
//! equality family, plus the spectral equality condition of the spread-ratio
//! bound.
//!
//! Matching here is purely structural (component decomposition and shape
//! checks); the verifier cross-validates it against the spectral conditions.

use thiserror::Error;

use crate::graph::{FamilyTag, GraphError, SelfLoopGraph};
use crate::spectral::Spectrum;

#[derive(Debug, Error, PartialEq)]
pub enum ExtremalError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("spread below tolerance; equality condition undefined")]
    DegenerateSpread,
}

/// Result of classifying one graph against all equality characterizations.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EqualityClassification {
    pub gutman_family: Option<FamilyTag>,
    pub lemma23_family: Option<FamilyTag>,
    /// sigma of the matched "looped clique plus isolated vertices" pattern.
    pub lambda1_family_sigma: Option<usize>,
    /// None when the spectrum has no spread.
    pub thm38_condition: Option<bool>,
}

fn is_complete_with_all_loops(g: &SelfLoopGraph) -> bool {
    let n = g.order();
    g.loop_count() == n && g.edge_count() == n * (n - 1) / 2
}

/// Tags one connected graph by shape. Orders 1 and 2 get their specific
/// family; larger graphs only match the fully-looped clique.
pub fn classify_component(g: &SelfLoopGraph) -> Result<FamilyTag, ExtremalError> {
    if !g.is_connected() {
        return Err(GraphError::NotConnected.into());
    }
    Ok(match (g.order(), g.edge_count(), g.loop_count()) {
        (1, 0, 0) => FamilyTag::K1,
        (1, 0, 1) => FamilyTag::K1Hat,
        (2, 1, 0) => FamilyTag::K2,
        (2, 1, 1) => FamilyTag::K2Tilde,
        (2, 1, 2) => FamilyTag::K2Hat,
        _ if is_complete_with_all_loops(g) => FamilyTag::KnHat,
        _ => FamilyTag::Other,
    })
}

/// Matches `g` against the six families where the Gutman bound is tight:
/// nK1, (n/2)K2, (n/2)K1 + (n/2)K1^, (n/2)K2~, nK1^, (n/2)K2^.
pub fn matches_gutman_equality_family(g: &SelfLoopGraph) -> Option<FamilyTag> {
    gutman_family_of_components(&g.connected_components())
}

/// Same matching on a precomputed component decomposition.
pub fn gutman_family_of_components(comps: &[SelfLoopGraph]) -> Option<FamilyTag> {
    let mut k1 = 0usize;
    let mut k1_hat = 0usize;
    let mut k2 = 0usize;
    let mut k2_tilde = 0usize;
    let mut k2_hat = 0usize;
    for c in comps {
        match classify_component(c).expect("components are connected") {
            FamilyTag::K1 => k1 += 1,
            FamilyTag::K1Hat => k1_hat += 1,
            FamilyTag::K2 => k2 += 1,
            FamilyTag::K2Tilde => k2_tilde += 1,
            FamilyTag::K2Hat => k2_hat += 1,
            _ => return None,
        }
    }
    let total = comps.len();
    match (k1, k1_hat, k2, k2_tilde, k2_hat) {
        (x, 0, 0, 0, 0) if x == total => Some(FamilyTag::NK1),
        (0, x, 0, 0, 0) if x == total => Some(FamilyTag::NK1Hat),
        (0, 0, x, 0, 0) if x == total => Some(FamilyTag::HalfK2),
        (0, 0, 0, x, 0) if x == total => Some(FamilyTag::HalfK2Tilde),
        (0, 0, 0, 0, x) if x == total => Some(FamilyTag::HalfK2Hat),
        (a, b, 0, 0, 0) if a == b && a + b == total => Some(FamilyTag::HalfK1UnionHalfK1Hat),
        _ => None,
    }
}

/// Matches a connected graph against the families where all shifted
/// eigenvalue magnitudes coincide: K1, K1^, K2, K2~, K2^.
pub fn matches_lemma23_family(g: &SelfLoopGraph) -> Result<Option<FamilyTag>, ExtremalError> {
    let tag = classify_component(g)?;
    Ok(match tag {
        FamilyTag::K1
        | FamilyTag::K1Hat
        | FamilyTag::K2
        | FamilyTag::K2Tilde
        | FamilyTag::K2Hat => Some(tag),
        _ => None,
    })
}

/// Matches the "looped clique plus isolated vertices" pattern that makes
/// lambda_1 = sqrt(2m + sigma): returns sigma, with sigma = 0 for nK1.
pub fn lambda1_equality_family(g: &SelfLoopGraph) -> Option<usize> {
    lambda1_family_of_components(&g.connected_components())
}

/// Same matching on a precomputed component decomposition.
pub fn lambda1_family_of_components(comps: &[SelfLoopGraph]) -> Option<usize> {
    let mut clique_sigma: Option<usize> = None;
    for c in comps {
        match classify_component(c).expect("components are connected") {
            FamilyTag::K1 => {}
            t if t == FamilyTag::K1Hat
                || t == FamilyTag::K2Hat
                || t == FamilyTag::KnHat =>
            {
                if clique_sigma.replace(c.order()).is_some() {
                    return None;
                }
            }
            _ => return None,
        }
    }
    Some(clique_sigma.unwrap_or(0))
}

/// Spectral equality condition of the spread-ratio bound: every eigenvalue
/// above sigma/n equals lambda_1 and every one below equals lambda_n, within
/// tol. Eigenvalues within tol of sigma/n are unconstrained.
pub fn thm38_equality_condition(
    spec: &Spectrum,
    n: usize,
    sigma: usize,
    tol: f64,
) -> Result<bool, ExtremalError> {
    let lambda1 = spec.lambda_max();
    let lambda_n = spec.lambda_min();
    if lambda1 - lambda_n <= tol {
        return Err(ExtremalError::DegenerateSpread);
    }
    let shift = sigma as f64 / n as f64;
    Ok(spec.values().iter().all(|&l| {
        if l > shift + tol {
            (l - lambda1).abs() <= tol
        } else if l < shift - tol {
            (l - lambda_n).abs() <= tol
        } else {
            true
        }
    }))
}

/// Runs every classifier on one graph.
pub fn classify(
    g: &SelfLoopGraph,
    spec: &Spectrum,
    tol: f64,
) -> EqualityClassification {
    let lemma23_family = if g.is_connected() {
        matches_lemma23_family(g).expect("graph is connected")
    } else {
        None
    };
    EqualityClassification {
        gutman_family: matches_gutman_equality_family(g),
        lemma23_family,
        lambda1_family_sigma: lambda1_equality_family(g),
        thm38_condition: thm38_equality_condition(spec, g.order(), g.loop_count(), tol).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, FamilyTag, SelfLoopGraph};
    use crate::spectral::{eigenvalues, DEFAULT_TOL};

    #[test]
    fn classify_component_shapes() {
        let k1 = make_family(FamilyTag::K1, 1).unwrap();
        assert_eq!(classify_component(&k1).unwrap(), FamilyTag::K1);

        let k2t = make_family(FamilyTag::K2Tilde, 2).unwrap();
        assert_eq!(classify_component(&k2t).unwrap(), FamilyTag::K2Tilde);

        let k3h = make_family(FamilyTag::KnHat, 3).unwrap();
        assert_eq!(classify_component(&k3h).unwrap(), FamilyTag::KnHat);

        let p3 = SelfLoopGraph::from_edge_list(3, &[(0, 1), (1, 2)], &[]).unwrap();
        assert_eq!(classify_component(&p3).unwrap(), FamilyTag::Other);

        let disconnected = make_family(FamilyTag::NK1, 2).unwrap();
        assert_eq!(
            classify_component(&disconnected),
            Err(ExtremalError::Graph(crate::graph::GraphError::NotConnected))
        );
    }

    #[test]
    fn gutman_family_matching() {
        let g = make_family(FamilyTag::NK1, 4).unwrap();
        assert_eq!(matches_gutman_equality_family(&g), Some(FamilyTag::NK1));

        let g = make_family(FamilyTag::HalfK2Tilde, 4).unwrap();
        assert_eq!(
            matches_gutman_equality_family(&g),
            Some(FamilyTag::HalfK2Tilde)
        );

        let g = make_family(FamilyTag::HalfK1UnionHalfK1Hat, 6).unwrap();
        assert_eq!(
            matches_gutman_equality_family(&g),
            Some(FamilyTag::HalfK1UnionHalfK1Hat)
        );

        let k3h = make_family(FamilyTag::KnHat, 3).unwrap();
        assert_eq!(matches_gutman_equality_family(&k3h), None);

        // mixed component shapes do not qualify
        let k2 = make_family(FamilyTag::K2, 2).unwrap();
        let k2h = make_family(FamilyTag::K2Hat, 2).unwrap();
        assert_eq!(matches_gutman_equality_family(&k2.disjoint_union(&k2h)), None);
    }

    #[test]
    fn lemma23_family_matching() {
        let k2 = make_family(FamilyTag::K2, 2).unwrap();
        assert_eq!(matches_lemma23_family(&k2).unwrap(), Some(FamilyTag::K2));

        let k2h = make_family(FamilyTag::K2Hat, 2).unwrap();
        assert_eq!(matches_lemma23_family(&k2h).unwrap(), Some(FamilyTag::K2Hat));

        let p3 = SelfLoopGraph::from_edge_list(3, &[(0, 1), (1, 2)], &[]).unwrap();
        assert_eq!(matches_lemma23_family(&p3).unwrap(), None);
    }

    #[test]
    fn lambda1_family_matching() {
        let g = make_family(FamilyTag::KnHat, 3)
            .unwrap()
            .disjoint_union(&make_family(FamilyTag::NK1, 2).unwrap());
        assert_eq!(lambda1_equality_family(&g), Some(3));

        let k5h = make_family(FamilyTag::KnHat, 5).unwrap();
        assert_eq!(lambda1_equality_family(&k5h), Some(5));

        let k2 = make_family(FamilyTag::K2, 2).unwrap();
        assert_eq!(lambda1_equality_family(&k2), None);

        let nk1 = make_family(FamilyTag::NK1, 3).unwrap();
        assert_eq!(lambda1_equality_family(&nk1), Some(0));

        // two looped cliques do not qualify
        let k2h = make_family(FamilyTag::K2Hat, 2).unwrap();
        assert_eq!(lambda1_equality_family(&k2h.disjoint_union(&k2h)), None);
    }

    #[test]
    fn thm38_condition_checks() {
        let c4 = SelfLoopGraph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[]).unwrap();
        let spec = eigenvalues(&c4, DEFAULT_TOL).unwrap();
        assert!(thm38_equality_condition(&spec, 4, 0, 1e-9).unwrap());

        let star = SelfLoopGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)], &[]).unwrap();
        let spec = eigenvalues(&star, DEFAULT_TOL).unwrap();
        assert!(thm38_equality_condition(&spec, 4, 0, 1e-9).unwrap());

        let p4 = SelfLoopGraph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)], &[]).unwrap();
        let spec = eigenvalues(&p4, DEFAULT_TOL).unwrap();
        assert!(!thm38_equality_condition(&spec, 4, 0, 1e-9).unwrap());

        let nk1 = make_family(FamilyTag::NK1, 3).unwrap();
        let spec = eigenvalues(&nk1, DEFAULT_TOL).unwrap();
        assert_eq!(
            thm38_equality_condition(&spec, 3, 0, 1e-9),
            Err(ExtremalError::DegenerateSpread)
        );
    }
}
