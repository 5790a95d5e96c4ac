//! The quantum-double triples listed in the paper's Conclusions.

use rand::Rng;

use crate::scalar::{Assignment, Var};
use crate::tensor::SquareMatrix;

use super::{catalog, get, sample_point, CatalogError, NamedMatrix};

/// How a branch relates to the printed claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    /// Admissible under the printed constraints and expected to verify.
    Paper,
    /// Admissible under the printed constraints but the system fails there.
    Erratum,
    /// An emended matrix or narrowed constraint under which the triple verifies.
    Corrected,
}

#[derive(Debug, Clone)]
pub struct Branch {
    pub bind: Assignment,
    pub kind: BranchKind,
    pub note: &'static str,
}

impl Branch {
    pub fn expected_to_verify(&self) -> bool {
        self.kind != BranchKind::Erratum
    }
}

#[derive(Debug, Clone)]
pub struct Triple {
    pub label: String,
    pub roles: [&'static str; 3],
    pub branches: Vec<Branch>,
    /// When set, Z is instantiated on its own branch with its own parameters.
    pub z_branch: Option<usize>,
}

impl Triple {
    pub fn entries(&self) -> [&'static NamedMatrix; 3] {
        self.roles.map(|n| get(n).expect("triple refers to catalog entries"))
    }

    fn shared(&self) -> Vec<&'static NamedMatrix> {
        let [w, x, z] = self.entries();
        if self.z_branch.is_some() {
            vec![w, x]
        } else {
            vec![w, x, z]
        }
    }

    fn shared_defaults(&self) -> Assignment {
        self.shared().iter().fold(Assignment::new(), |acc, m| acc.merged(&m.defaults))
    }

    /// Per-role assignments at the witness point of `branch`.
    pub fn witness(&self, branch: usize) -> [Assignment; 3] {
        let shared = self.shared_defaults().merged(&self.branches[branch].bind);
        let z = match self.z_branch {
            Some(zb) => self.entries()[2].witness(zb),
            None => shared.clone(),
        };
        [shared.clone(), shared, z]
    }

    /// Per-role assignments leaving every unbound parameter symbolic.
    pub fn symbolic(&self, branch: usize) -> [Assignment; 3] {
        let shared = self.branches[branch].bind.clone();
        let z = match self.z_branch {
            Some(zb) => self.entries()[2].branch(zb).clone(),
            None => shared.clone(),
        };
        [shared.clone(), shared, z]
    }

    pub fn sample(&self, branch: usize, rng: &mut impl Rng) -> Result<[Assignment; 3], CatalogError> {
        let shared = sample_point(&self.shared(), &self.shared_defaults(), &self.branches[branch].bind, rng)
            .ok_or_else(|| CatalogError::NoAdmissiblePoint(self.label.clone()))?;
        let z = match self.z_branch {
            Some(zb) => self.entries()[2].sample(zb, rng)?,
            None => shared.clone(),
        };
        Ok([shared.clone(), shared, z])
    }

    pub fn instantiate(&self, at: &[Assignment; 3]) -> Result<[SquareMatrix; 3], CatalogError> {
        let [w, x, z] = self.entries();
        Ok([w.instantiate(&at[0])?, x.instantiate(&at[1])?, z.instantiate(&at[2])?])
    }
}

fn bind(pairs: &[(&str, &str)]) -> Assignment {
    super::parse_assignment(pairs.iter().copied()).expect("triple binding parses")
}

fn paper(pairs: &[(&str, &str)]) -> Branch {
    Branch { bind: bind(pairs), kind: BranchKind::Paper, note: "" }
}

fn erratum(pairs: &[(&str, &str)], note: &'static str) -> Branch {
    Branch { bind: bind(pairs), kind: BranchKind::Erratum, note }
}

fn corrected(pairs: &[(&str, &str)], note: &'static str) -> Branch {
    Branch { bind: bind(pairs), kind: BranchKind::Corrected, note }
}

fn both_t() -> Vec<Branch> {
    vec![paper(&[("t", "q")]), paper(&[("t", "-q^-1")])]
}

fn triple(roles: [&'static str; 3], branches: Vec<Branch>) -> Triple {
    Triple { label: format!("(W, {}, {})", roles[1], roles[2]), roles, branches, z_branch: None }
}

/// Every triple of the Conclusions, in the printed order, expanded over
/// sign branches. Errata branches are kept alongside their corrections.
pub fn conclusions() -> Vec<Triple> {
    let mut out = vec![
        triple(["W", "X1", "P"], both_t()),
        triple(["W", "X2", "P"], both_t()),
        triple(["W", "X3", "P"], both_t()),
        triple(["W", "X1", "Z10"], both_t()),
        triple(["W", "X1", "Z11"], both_t()),
        triple(["W", "X2", "Z20"], both_t()),
        triple(
            ["W", "X2", "Z21"],
            vec![
                paper(&[("q", "i"), ("t", "q"), ("delta", "0")]),
                erratum(
                    &[("q", "i"), ("t", "q"), ("b", "i")],
                    "delta != 0 at b^2 = -1 leaves [X,X,Z] residual -delta*(s^2+1)/s^2",
                ),
                corrected(&[("q", "i"), ("t", "q"), ("b", "i"), ("s", "i")], "delta != 0 also needs s^2 = -1"),
            ],
        ),
        triple(["W", "X3", "Z30"], both_t()),
        triple(["W", "X3", "Z31"], both_t()),
        triple(["W", "X3", "Z32"], both_t()),
    ];
    for x in ["X3_8v", "X3_8v_alt"] {
        let mut branches = Vec::new();
        for t in ["q", "-q^-1"] {
            for eps in ["1", "-1"] {
                branches.push(paper(&[("t", t), ("eps", eps)]));
            }
        }
        out.push(triple(["W", x, "Z8V"], branches));
    }
    for z in catalog().iter().filter(|m| !m.is_colour()) {
        if let Some(zb) = (0..z.branches.len()).find(|&b| z.solves_ybe(b)) {
            let mut t = triple(["W", "X3_ybe", z.name.as_str()], both_t());
            t.z_branch = Some(zb);
            out.push(t);
        }
    }
    let mut x4 = Vec::new();
    for t in ["q", "-q^-1"] {
        for s in ["1", "-1"] {
            x4.push(paper(&[("t", t), ("s", s)]));
        }
    }
    out.push(triple(["W", "X4", "P"], x4));
    let mut z41 = Vec::new();
    let mut z41c = Vec::new();
    for s in ["1", "-1"] {
        for (b, bc) in [("1", "i"), ("-1", "-i")] {
            z41.push(erratum(
                &[("q", "i"), ("t", "q"), ("s", s), ("b", b)],
                "printed Z41 fails [X4,X4,Z] for b^2 = 1",
            ));
            z41c.push(corrected(&[("q", "i"), ("t", "q"), ("s", s), ("b", bc)], "X4 with b^2 = -1"));
        }
    }
    out.push(triple(["W", "X4", "Z41"], z41));
    out.push(triple(["W", "X4", "Z41_corrected"], z41c));
    let w5 = [("q", "i"), ("s", "-i"), ("t", "q")];
    let with = |extra: &[(&'static str, &'static str)]| -> Vec<(&'static str, &'static str)> {
        w5.iter().copied().chain(extra.iter().copied()).collect()
    };
    out.push(triple(["W", "X5", "P"], vec![paper(&with(&[]))]));
    out.push(triple(
        ["W", "X5", "Z51"],
        vec![
            paper(&with(&[("eps", "-1")])),
            erratum(&with(&[("eps", "1")]), "eps = 1 leaves [X,X,Z] residuals +-2ab, +-2bc"),
        ],
    ));
    out.push(triple(["W", "X5", "Z52"], vec![paper(&with(&[("k", "c/a")]))]));
    out.push(triple(
        ["W", "X5", "Z53"],
        vec![
            paper(&with(&[("k", "c/a"), ("eps", "1")])),
            erratum(&with(&[("k", "c/a"), ("eps", "-1")]), "eps = -1 leaves residuals in [X,X,Z] and [Z,Z,Z]"),
        ],
    ));
    out.push(triple(["W", "X5", "Z54"], vec![paper(&with(&[("k", "c/a")]))]));
    out.push(triple(["W", "X6", "P"], vec![paper(&[("q", "i"), ("s", "1"), ("t", "q")])]));
    out
}

/// Variables bound by some branch of some triple.
pub fn bound_vars(t: &Triple) -> Vec<Var> {
    let mut v: Vec<Var> = t.branches.iter().flat_map(|b| b.bind.vars()).collect();
    v.sort();
    v.dedup();
    v
}
