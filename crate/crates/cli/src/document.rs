//! Machine-readable output documents.

use semifield::analysis::{self, SubalgebraReport};
use semifield::{Cube, Gf2Vector, StandardBasis, VerificationReport, Witness};
use serde::{Deserialize, Serialize};

pub const ANALYSIS_SCHEMA: &str = "semifield-analysis/1";

fn bits(v: &Gf2Vector) -> String {
    v.to_bit_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub passed: bool,
    pub failed_condition: Option<String>,
    /// 1-based matrix index, for identity and unit-column failures.
    pub witness_matrix: Option<usize>,
    /// Coefficients of the first singular combination.
    pub witness_combination: Option<String>,
}

impl From<&VerificationReport> for VerificationDoc {
    fn from(r: &VerificationReport) -> Self {
        let (witness_matrix, witness_combination) = match r.witness() {
            Some(Witness::Matrix(i)) => (Some(i + 1), None),
            Some(Witness::Combination(l)) => (None, Some(bits(&l))),
            None => (None, None),
        };
        Self {
            passed: r.passed(),
            failed_condition: r.failed_condition().map(|c| c.to_string()),
            witness_matrix,
            witness_combination,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub command: String,
    pub source: String,
    pub dimension: usize,
    pub verification: VerificationDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativityDoc {
    pub holds: bool,
    /// `[x, y]` with `xy != yx`.
    pub witness: Option<[String; 2]>,
    /// `[xy, yx]`.
    pub products: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityDoc {
    pub holds: bool,
    /// `[x, y, z]` with `(xy)z != x(yz)`.
    pub witness: Option<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NucleiDoc {
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub center: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub degree: usize,
    pub minimal_polynomial: String,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraDoc {
    pub basis: Vec<String>,
    pub order: u64,
    pub closed: bool,
    pub associative: bool,
    pub commutative: bool,
    pub field: Option<FieldDoc>,
}

impl From<&SubalgebraReport> for SubalgebraDoc {
    fn from(r: &SubalgebraReport) -> Self {
        Self {
            basis: r.subspace.basis().iter().map(bits).collect(),
            order: 1 << r.subspace.dim(),
            closed: r.closed,
            associative: r.associative,
            commutative: r.commutative,
            field: r.field.map(|f| FieldDoc {
                degree: f.degree,
                minimal_polynomial: f.minimal_polynomial.to_string(),
                generator: bits(&f.generator),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsemifieldScanDoc {
    pub dimension: usize,
    pub candidates: u64,
    pub subsemifields: Vec<SubalgebraDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalDimensionDoc {
    pub subsemifield: Vec<String>,
    pub n: usize,
    pub m: usize,
    /// `n/m` in lowest terms.
    pub value: String,
    pub fractional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema: String,
    pub source: String,
    pub dimension: usize,
    pub order: u64,
    pub verification: VerificationDoc,
    pub commutative: Option<CommutativityDoc>,
    pub associative: Option<AssociativityDoc>,
    pub nuclei: Option<NucleiDoc>,
    pub subsemifield_scans: Vec<SubsemifieldScanDoc>,
    /// One entry per detected maximal proper subsemifield.
    pub fractional_dimensions: Vec<FractionalDimensionDoc>,
}

/// `n/m` reduced, or just the integer when `m | n`.
pub fn dimension_ratio(n: usize, m: usize) -> String {
    let g = num_integer::gcd(n, m).max(1);
    let (p, q) = (n / g, m / g);
    if q == 1 {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

/// Builds the full document. Only the verification section is filled when
/// the basis fails verification.
pub fn analyze(
    source: &str,
    basis: &StandardBasis,
    sub_dims: &[usize],
) -> Result<AnalysisDocument, semifield::Error> {
    let n = basis.dim();
    let report = basis.verify();
    let mut doc = AnalysisDocument {
        schema: ANALYSIS_SCHEMA.to_string(),
        source: source.to_string(),
        dimension: n,
        order: 1 << n,
        verification: (&report).into(),
        commutative: None,
        associative: None,
        nuclei: None,
        subsemifield_scans: Vec::new(),
        fractional_dimensions: Vec::new(),
    };
    if !report.passed() {
        return Ok(doc);
    }
    let cube = Cube::from_basis(basis);

    doc.commutative = Some(match analysis::is_commutative(&cube).witness() {
        None => CommutativityDoc {
            holds: true,
            witness: None,
            products: None,
        },
        Some((x, y)) => CommutativityDoc {
            holds: false,
            witness: Some([bits(&x), bits(&y)]),
            products: Some([bits(&cube.multiply(x, y)?), bits(&cube.multiply(y, x)?)]),
        },
    });
    let assoc = analysis::is_associative(&cube, None)?;
    doc.associative = Some(AssociativityDoc {
        holds: assoc.holds(),
        witness: assoc
            .witness()
            .map(|(x, y, z)| [bits(&x), bits(&y), bits(&z)]),
    });
    let (left, middle, right, center) = analysis::nuclei(&cube).dims();
    doc.nuclei = Some(NucleiDoc {
        left,
        middle,
        right,
        center,
    });

    let mut found = Vec::new();
    for &m in sub_dims {
        let scan = analysis::find_subsemifields(&cube, m)?;
        doc.subsemifield_scans.push(SubsemifieldScanDoc {
            dimension: m,
            candidates: scan.candidates,
            subsemifields: scan.reports.iter().map(Into::into).collect(),
        });
        found.extend(scan.reports.into_iter().filter(|r| r.subspace.dim() < n));
    }
    found.sort_by(|a, b| a.subspace.cmp(&b.subspace));
    found.dedup_by(|a, b| a.subspace == b.subspace);
    for r in &found {
        let s = &r.subspace;
        let maximal = !found
            .iter()
            .any(|o| o.subspace.dim() > s.dim() && s.is_subspace_of(&o.subspace));
        if maximal {
            let m = s.dim();
            doc.fractional_dimensions.push(FractionalDimensionDoc {
                subsemifield: s.basis().iter().map(bits).collect(),
                n,
                m,
                value: dimension_ratio(n, m),
                fractional: !n.is_multiple_of(m),
            });
        }
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(dimension_ratio(7, 3), "7/3");
        assert_eq!(dimension_ratio(6, 3), "2");
        assert_eq!(dimension_ratio(6, 4), "3/2");
        assert_eq!(dimension_ratio(7, 1), "7");
    }
}
