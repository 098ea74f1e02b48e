//! Batch analysis over (group, prime) pairs: per-pair records with p-local
//! data, poset shape, exact homology over both rings, optional embedded and
//! top-homology checks, and JSON/CSV emission with stable ordering.

use serde::{Deserialize, Serialize};

use crate::chains::{qd_certificate, QdOutcome};
use crate::corpus::CorpusEntry;
use crate::group::Group;
use crate::homology::{homology, DegreeHomology, HomologyResult, OrderComplex, Ring};
use crate::local::LocalStructure;
use crate::poset::quillen_poset;
use crate::reduction::strongly_p_embedded;
use crate::{Caps, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QcVerdict {
    /// Nontrivial p-core: the poset is expected (and checked) to be acyclic.
    #[serde(rename = "op-nontrivial")]
    OpNontrivial,
    #[serde(rename = "nonzero-homology")]
    NonzeroHomology,
    /// Trivial p-core with vanishing integral homology — the finding this
    /// toolkit exists to (never) produce.
    #[serde(rename = "VIOLATION")]
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub schema: u32,
    pub group: String,
    pub prime: u64,
    pub order: usize,
    pub o_p_order: usize,
    pub o_p_prime_order: usize,
    pub p_rank: u32,
    pub poset_nodes: usize,
    pub poset_components: usize,
    pub homology_z: Vec<DegreeHomology>,
    pub homology_q: Vec<DegreeHomology>,
    pub embedded: EmbeddedStatus,
    /// Present when the top-homology check ran: true when a certificate in
    /// degree p_rank − 1 exists.
    pub has_top_homology: Option<bool>,
    pub qc_verdict: QcVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddedStatus {
    NotChecked,
    Connected,
    /// Order of the verified strongly p-embedded subgroup.
    Embedded(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Embedded,
    TopHomology,
}

/// Analyzes one (group, prime) pair.
pub fn analyze(g: &Group, p: u64, checks: &[Check], caps: &Caps) -> Result<AnalysisRecord> {
    if !g.order().is_multiple_of(p as usize) {
        return Err(Error::PreconditionViolated(format!(
            "{p} does not divide |{}| = {}",
            g.name(),
            g.order()
        )));
    }
    let top = g.top();
    let local = LocalStructure::compute(&top, p, caps.poset_cap)?;
    let poset = quillen_poset(&top, p, caps.poset_cap)?;
    let complex = OrderComplex::new(&poset, caps.poset_cap)?;
    let hz = homology(&complex, Ring::Integer);
    let hq = homology(&complex, Ring::Rational);
    let qc_verdict = if local.o_p.order() > 1 {
        if hz.is_nonzero() {
            return Err(Error::Internal(
                "nontrivial p-core but the poset is not acyclic".into(),
            ));
        }
        QcVerdict::OpNontrivial
    } else if hz.is_nonzero() {
        QcVerdict::NonzeroHomology
    } else {
        QcVerdict::Violation
    };
    let embedded = if checks.contains(&Check::Embedded) {
        let rep = strongly_p_embedded(g, p, caps)?;
        match rep.embedded_order {
            Some(order) => EmbeddedStatus::Embedded(order),
            None => EmbeddedStatus::Connected,
        }
    } else {
        EmbeddedStatus::NotChecked
    };
    let has_top_homology = if checks.contains(&Check::TopHomology) {
        Some(matches!(
            qd_certificate(&complex, p, caps.coeff_box)?,
            QdOutcome::Certified(_)
        ))
    } else {
        None
    };
    Ok(AnalysisRecord {
        schema: 1,
        group: g.name().to_string(),
        prime: p,
        order: g.order(),
        o_p_order: local.o_p.order(),
        o_p_prime_order: local.o_p_prime.order(),
        p_rank: local.p_rank,
        poset_nodes: poset.len(),
        poset_components: poset.component_count(),
        homology_z: hz.degrees,
        homology_q: hq.degrees,
        embedded,
        has_top_homology,
        qc_verdict,
    })
}

/// One entry of a batch run: either a record or an isolated error.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub group: String,
    pub prime: u64,
    pub record: Option<AnalysisRecord>,
    pub error: Option<String>,
}

/// Runs the suite over every corpus entry and prime with p | |G| and
/// |G| ≤ max_order, in deterministic order; per-entry failures are isolated
/// and never abort the batch.
pub fn run_suite(
    corpus: &[CorpusEntry],
    primes: &[u64],
    max_order: usize,
    checks: &[Check],
    caps: &Caps,
) -> Vec<SuiteEntry> {
    let mut out = Vec::new();
    for entry in corpus {
        if entry.group.order() > max_order {
            continue;
        }
        for &p in primes {
            if entry.group.order() % p as usize != 0 {
                continue;
            }
            match analyze(&entry.group, p, checks, caps) {
                Ok(rec) => out.push(SuiteEntry {
                    group: entry.name.clone(),
                    prime: p,
                    record: Some(rec),
                    error: None,
                }),
                Err(e) => out.push(SuiteEntry {
                    group: entry.name.clone(),
                    prime: p,
                    record: None,
                    error: Some(e.to_string()),
                }),
            }
        }
    }
    out
}

fn torsion_to_string(degrees: &[DegreeHomology]) -> String {
    degrees
        .iter()
        .map(|d| {
            let tors = d
                .torsion
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join("+");
            format!("{}:{}{}", d.degree, d.betti, if tors.is_empty() { String::new() } else { format!("[{tors}]") })
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn degrees_from_string(s: &str) -> Result<Vec<DegreeHomology>> {
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(';')
        .map(|part| {
            let (deg, rest) = part
                .split_once(':')
                .ok_or_else(|| Error::Internal(format!("bad homology cell '{part}'")))?;
            let (betti, torsion) = match rest.split_once('[') {
                Some((b, t)) => {
                    let t = t.trim_end_matches(']');
                    let torsion = t
                        .split('+')
                        .map(|x| x.parse::<u64>().map_err(|e| Error::Internal(e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    (b, torsion)
                }
                None => (rest, vec![]),
            };
            Ok(DegreeHomology {
                degree: deg.parse().map_err(|e: std::num::ParseIntError| {
                    Error::Internal(e.to_string())
                })?,
                betti: betti.parse().map_err(|e: std::num::ParseIntError| {
                    Error::Internal(e.to_string())
                })?,
                torsion,
            })
        })
        .collect()
}

/// Flat row for CSV emission; round-trips exactly to [`AnalysisRecord`].
#[derive(Serialize, Deserialize)]
struct CsvRow {
    schema: u32,
    group: String,
    prime: u64,
    order: usize,
    o_p_order: usize,
    o_p_prime_order: usize,
    p_rank: u32,
    poset_nodes: usize,
    poset_components: usize,
    homology_z: String,
    homology_q: String,
    embedded: String,
    top_homology: String,
    qc_verdict: String,
}

pub fn records_to_csv(records: &[AnalysisRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow {
            schema: r.schema,
            group: r.group.clone(),
            prime: r.prime,
            order: r.order,
            o_p_order: r.o_p_order,
            o_p_prime_order: r.o_p_prime_order,
            p_rank: r.p_rank,
            poset_nodes: r.poset_nodes,
            poset_components: r.poset_components,
            homology_z: torsion_to_string(&r.homology_z),
            homology_q: torsion_to_string(&r.homology_q),
            embedded: match r.embedded {
                EmbeddedStatus::NotChecked => "-".into(),
                EmbeddedStatus::Connected => "connected".into(),
                EmbeddedStatus::Embedded(o) => o.to_string(),
            },
            top_homology: match r.has_top_homology {
                None => "-".into(),
                Some(true) => "yes".into(),
                Some(false) => "no".into(),
            },
            qc_verdict: match r.qc_verdict {
                QcVerdict::OpNontrivial => "op-nontrivial".into(),
                QcVerdict::NonzeroHomology => "nonzero-homology".into(),
                QcVerdict::Violation => "VIOLATION".into(),
            },
        })?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Internal(e.to_string()))?)
        .map_err(|e| Error::Internal(e.to_string()))
}

pub fn records_from_csv(text: &str) -> Result<Vec<AnalysisRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in r.deserialize::<CsvRow>() {
        let row = row?;
        out.push(AnalysisRecord {
            schema: row.schema,
            group: row.group,
            prime: row.prime,
            order: row.order,
            o_p_order: row.o_p_order,
            o_p_prime_order: row.o_p_prime_order,
            p_rank: row.p_rank,
            poset_nodes: row.poset_nodes,
            poset_components: row.poset_components,
            homology_z: degrees_from_string(&row.homology_z)?,
            homology_q: degrees_from_string(&row.homology_q)?,
            embedded: match row.embedded.as_str() {
                "-" => EmbeddedStatus::NotChecked,
                "connected" => EmbeddedStatus::Connected,
                o => EmbeddedStatus::Embedded(o.parse().map_err(
                    |e: std::num::ParseIntError| Error::Internal(e.to_string()),
                )?),
            },
            has_top_homology: match row.top_homology.as_str() {
                "-" => None,
                "yes" => Some(true),
                _ => Some(false),
            },
            qc_verdict: match row.qc_verdict.as_str() {
                "op-nontrivial" => QcVerdict::OpNontrivial,
                "nonzero-homology" => QcVerdict::NonzeroHomology,
                _ => QcVerdict::Violation,
            },
        });
    }
    Ok(out)
}

/// Poset export: nodes with printable labels plus the cover relation.
#[derive(Serialize, Deserialize)]
pub struct PosetExport {
    pub schema: u32,
    pub nodes: Vec<PosetNodeExport>,
    pub covers: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
pub struct PosetNodeExport {
    pub id: usize,
    pub label: String,
    pub order: Option<usize>,
}

pub fn export_poset(p: &crate::poset::Poset) -> PosetExport {
    PosetExport {
        schema: 1,
        nodes: (0..p.len())
            .map(|i| PosetNodeExport {
                id: i,
                label: p.label(i).display(),
                order: p.label(i).subgroup().map(|s| s.order()),
            })
            .collect(),
        covers: p.covers(),
    }
}

/// Structured summary reused by the homology printers.
pub fn homology_summary(h: &HomologyResult) -> String {
    h.degrees
        .iter()
        .filter(|d| d.betti > 0 || !d.torsion.is_empty())
        .map(|d| {
            if d.torsion.is_empty() {
                format!("H~{} = Z^{}", d.degree, d.betti)
            } else {
                format!("H~{} = Z^{} + torsion{:?}", d.degree, d.betti, d.torsion)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}
