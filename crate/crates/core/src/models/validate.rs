use crate::liealg::lie_closure;
use crate::mlinalg::Subspace;
use crate::torsioncurv::{bianchi_residual, pair_symmetry_failure, second_bianchi_failure, BIANCHI_SIGN};

use super::classify::{invariant_subspaces, torsion_splits};
use super::InfinitesimalModel;

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// First failing basis tuple, rendered with basis labels.
    pub detail: Option<String>,
}

impl Check {
    fn from_failure(name: &'static str, failure: Option<String>) -> Self {
        Check { name, passed: failure.is_none(), detail: failure }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposability {
    pub fixed_vectors_dim: usize,
    /// First proper nondegenerate invariant subspace found by the search.
    pub invariant_nondegenerate: Option<Subspace>,
    /// Whether the torsion splits along that subspace.
    pub torsion_splits: bool,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub holonomy_dim: usize,
    pub closure_dim: usize,
    pub decomposability: Decomposability,
    pub unchecked: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub const CHECK_CLOSURE: &str = "holonomy closed";
pub const CHECK_G_R: &str = "g·R = 0";
pub const CHECK_G_T: &str = "g·T = 0";
pub const CHECK_BIANCHI1: &str = "first Bianchi";
pub const CHECK_BIANCHI2: &str = "second Bianchi";
pub const CHECK_PAIR: &str = "pair symmetry";

/// Runs every identity an infinitesimal model has to satisfy.
pub fn validate(m: &InfinitesimalModel) -> ValidationReport {
    let space = m.space();
    let labels = space.labels();
    let r = m.curvature();
    let t = m.torsion();
    let g = m.holonomy();
    let closure = lie_closure(space, g.basis());

    let mut checks = Vec::new();
    checks.push(Check::from_failure(
        CHECK_CLOSURE,
        (closure.dim() != g.dim()).then(|| format!("span(im R) has dim {}, its closure {}", g.dim(), closure.dim())),
    ));
    let bad_r = g.basis().iter().find(|xi| !r.acted_on(xi).is_zero());
    checks.push(Check::from_failure(CHECK_G_R, bad_r.map(|xi| format!("{xi:?}"))));
    let bad_t = g.basis().iter().find(|xi| !t.acted_on(xi).is_zero());
    checks.push(Check::from_failure(CHECK_G_T, bad_t.map(|xi| format!("{xi:?}"))));

    let b1 = bianchi_residual(r, t, BIANCHI_SIGN).expect("same space");
    checks.push(Check::from_failure(
        CHECK_BIANCHI1,
        b1.first_failure().map(|(i, j, k)| format!("({}, {}, {})", labels[i], labels[j], labels[k])),
    ));
    checks.push(Check::from_failure(
        CHECK_BIANCHI2,
        second_bianchi_failure(r, t).map(|(i, j, k)| format!("({}, {}, {})", labels[i], labels[j], labels[k])),
    ));
    checks.push(Check::from_failure(
        CHECK_PAIR,
        pair_symmetry_failure(r)
            .map(|(i, j, k, l)| format!("({}, {}, {}, {})", labels[i], labels[j], labels[k], labels[l])),
    ));

    let fixed = g.fixed_vectors();
    let inv = invariant_subspaces(&g, m.candidates());
    let nondeg = inv.into_iter().find(|s| s.dim() > 0 && s.dim() < space.dim() && s.is_nondegenerate());
    let splits = nondeg.as_ref().is_some_and(|s| torsion_splits(t, s));
    ValidationReport {
        checks,
        holonomy_dim: g.dim(),
        closure_dim: closure.dim(),
        decomposability: Decomposability {
            fixed_vectors_dim: fixed.dim(),
            invariant_nondegenerate: nondeg,
            torsion_splits: splits,
        },
        unchecked: vec!["regularity of the reductive decomposition (closedness of G in F)".into()],
    }
}
