//! Class specifications: which family, which bounds, which id convention.

use serde::Serialize;

use crate::engine::PolyBound;

use super::SemanticsError;

/// The decision-class families the workbench evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Certificate-free, unbounded local time.
    Ld,
    /// Certificate-free, time polynomial in the graph size.
    Pld,
    /// Certificate-free, time polynomial in the view size, locally unique
    /// ids.
    Lp,
    /// As [`Family::Lp`] but with globally unique ids.
    LpStar,
    /// Existential certificates.
    Sigma1,
    /// Universal certificates.
    Pi1,
}

/// What a polynomial bound is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundScope {
    /// Evaluated at the number of nodes of the graph.
    GlobalN,
    /// Evaluated at the bit size of each node's own view.
    LocalView,
}

/// Which identifier convention the class quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdScope {
    GlobalUnique,
    /// Unique within distance t of each node, t the verifier radius.
    TLocalUnique,
}

/// Parameters of a class: family, optional time and certificate bounds,
/// the knows-n flag, and the id convention.
///
/// Certificate-bound scope encodes the flavor of the quantified classes:
/// no bound is the "local" flavor (finite exploration of an unbounded
/// space), a global-n bound is the "P-local" flavor, and a local-view bound
/// is the "LP" flavor. LP-flavored classes use locally unique ids; all
/// others use globally unique ids.
#[derive(Debug, Clone, Serialize)]
pub struct ClassSpec {
    pub family: Family,
    pub time_bound: Option<(PolyBound, BoundScope)>,
    pub cert_bound: Option<(PolyBound, BoundScope)>,
    pub knows_n: bool,
    pub id_scope: IdScope,
}

impl ClassSpec {
    pub fn ld() -> Self {
        ClassSpec {
            family: Family::Ld,
            time_bound: None,
            cert_bound: None,
            knows_n: false,
            id_scope: IdScope::GlobalUnique,
        }
    }

    pub fn pld(time: PolyBound) -> Self {
        ClassSpec {
            family: Family::Pld,
            time_bound: Some((time, BoundScope::GlobalN)),
            cert_bound: None,
            knows_n: false,
            id_scope: IdScope::GlobalUnique,
        }
    }

    pub fn lp(time: PolyBound) -> Self {
        ClassSpec {
            family: Family::Lp,
            time_bound: Some((time, BoundScope::LocalView)),
            cert_bound: None,
            knows_n: false,
            id_scope: IdScope::TLocalUnique,
        }
    }

    /// Locally-polynomial time under globally unique ids.
    pub fn lp_star(time: PolyBound) -> Self {
        ClassSpec {
            family: Family::LpStar,
            time_bound: Some((time, BoundScope::LocalView)),
            cert_bound: None,
            knows_n: false,
            id_scope: IdScope::GlobalUnique,
        }
    }

    pub fn sigma1_local() -> Self {
        ClassSpec {
            family: Family::Sigma1,
            time_bound: None,
            cert_bound: None,
            knows_n: false,
            id_scope: IdScope::GlobalUnique,
        }
    }

    pub fn sigma1_plocal(cert: PolyBound) -> Self {
        ClassSpec {
            family: Family::Sigma1,
            time_bound: None,
            cert_bound: Some((cert, BoundScope::GlobalN)),
            knows_n: false,
            id_scope: IdScope::GlobalUnique,
        }
    }

    pub fn sigma1_lp(cert: PolyBound) -> Self {
        ClassSpec {
            family: Family::Sigma1,
            time_bound: None,
            cert_bound: Some((cert, BoundScope::LocalView)),
            knows_n: false,
            id_scope: IdScope::TLocalUnique,
        }
    }

    pub fn pi1_local() -> Self {
        ClassSpec {
            family: Family::Pi1,
            time_bound: None,
            cert_bound: None,
            knows_n: false,
            id_scope: IdScope::GlobalUnique,
        }
    }

    pub fn pi1_plocal(cert: PolyBound) -> Self {
        ClassSpec {
            family: Family::Pi1,
            time_bound: None,
            cert_bound: Some((cert, BoundScope::GlobalN)),
            knows_n: false,
            id_scope: IdScope::GlobalUnique,
        }
    }

    /// P-local universal certificates with the graph size as extra input.
    pub fn pi1_plocal_knows_n(cert: PolyBound) -> Self {
        ClassSpec {
            knows_n: true,
            ..ClassSpec::pi1_plocal(cert)
        }
    }

    pub fn pi1_lp(cert: PolyBound) -> Self {
        ClassSpec {
            family: Family::Pi1,
            time_bound: None,
            cert_bound: Some((cert, BoundScope::LocalView)),
            knows_n: false,
            id_scope: IdScope::TLocalUnique,
        }
    }

    pub fn with_time_bound(mut self, time: PolyBound, scope: BoundScope) -> Self {
        self.time_bound = Some((time, scope));
        self
    }

    pub fn is_certificate_class(&self) -> bool {
        matches!(self.family, Family::Sigma1 | Family::Pi1)
    }

    /// Certificate flavor uses per-view bounds (and per-id semantics).
    pub fn is_lp_flavor(&self) -> bool {
        matches!(self.cert_bound, Some((_, BoundScope::LocalView)))
    }

    pub fn validate(&self) -> Result<(), SemanticsError> {
        let bad = |msg: &str| Err(SemanticsError::BadSpec(msg.to_string()));
        match self.family {
            Family::Ld | Family::Pld | Family::Lp | Family::LpStar => {
                if self.cert_bound.is_some() {
                    return bad("certificate-free families take no certificate bound");
                }
                if self.knows_n {
                    return bad("knows-n is only defined for the P-local universal class");
                }
                let expect = if self.family == Family::Lp {
                    IdScope::TLocalUnique
                } else {
                    IdScope::GlobalUnique
                };
                if self.id_scope != expect {
                    return bad("id convention does not match the family");
                }
            }
            Family::Sigma1 | Family::Pi1 => {
                let expect = if self.is_lp_flavor() {
                    IdScope::TLocalUnique
                } else {
                    IdScope::GlobalUnique
                };
                if self.id_scope != expect {
                    return bad("id convention does not match the certificate flavor");
                }
                if self.knows_n
                    && !(self.family == Family::Pi1
                        && matches!(self.cert_bound, Some((_, BoundScope::GlobalN))))
                {
                    return bad("knows-n requires the P-local universal flavor");
                }
            }
        }
        Ok(())
    }

    /// Short name for reports: `pi1-plocal`, `sigma1-lp`, ...
    pub fn semantics_name(&self) -> String {
        match self.family {
            Family::Ld => "ld".into(),
            Family::Pld => "pld".into(),
            Family::Lp => "lp".into(),
            Family::LpStar => "lpstar".into(),
            Family::Sigma1 | Family::Pi1 => {
                let fam = if self.family == Family::Sigma1 {
                    "sigma1"
                } else {
                    "pi1"
                };
                let flavor = match &self.cert_bound {
                    None => "local",
                    Some((_, BoundScope::GlobalN)) if self.knows_n => "plocal-n",
                    Some((_, BoundScope::GlobalN)) => "plocal",
                    Some((_, BoundScope::LocalView)) => "lp",
                };
                format!("{fam}-{flavor}")
            }
        }
    }
}
