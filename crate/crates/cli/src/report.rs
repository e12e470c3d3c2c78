//! Report structures: the stable JSON schema and the plain-text renderers.
//! Field names are append-only; polynomials are echoed in canonical
//! grevlex-sorted form so reports are reproducible inputs.

use frobpair::{
    CartierManinMatrix, CurveClassification, FrobeniusCertificate, LevelOutcome, Monomial,
    MultiPoly, PeDecomposition, PrimeField, VarContext,
};
use serde::Serialize;

/// Render a bare monomial in the ring's variables ("1" for the unit).
pub fn monomial_text(m: &Monomial, field: PrimeField, ctx: &VarContext) -> String {
    MultiPoly::term(field, ctx, m.clone(), 1).to_string()
}

// ---------------------------------------------------------------------------
// level
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct LevelReport {
    pub query: LevelQueryEcho,
    pub outcome: OutcomeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

#[derive(Serialize)]
pub struct LevelQueryEcho {
    pub p: u64,
    pub vars: Vec<String>,
    pub num: String,
    pub den: String,
    pub e_max: u32,
}

#[derive(Serialize)]
pub struct OutcomeJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub e: u32,
    pub terms: Vec<CertTermJson>,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct CertTermJson {
    pub alpha: Vec<u32>,
    pub cofactor: String,
}

pub fn outcome_json(outcome: &LevelOutcome) -> OutcomeJson {
    match outcome {
        LevelOutcome::LevelZero => OutcomeJson { kind: "zero", e: None },
        LevelOutcome::Finite { e, .. } => OutcomeJson { kind: "finite", e: Some(*e) },
        LevelOutcome::ExceedsBound { .. } => OutcomeJson { kind: "exceeds_bound", e: None },
    }
}

pub fn certificate_json(cert: &FrobeniusCertificate) -> CertificateJson {
    CertificateJson {
        e: cert.e,
        terms: cert
            .terms
            .iter()
            .map(|t| CertTermJson {
                alpha: t.residue.exps().to_vec(),
                cofactor: t.cofactor.to_string(),
            })
            .collect(),
        verified: cert.verify(),
    }
}

pub fn outcome_text(outcome: &LevelOutcome, e_max: u32) -> String {
    match outcome {
        LevelOutcome::LevelZero => "level = 0".to_string(),
        LevelOutcome::Finite { e, .. } => format!("level = {e}"),
        LevelOutcome::ExceedsBound { .. } => format!("level > {e_max} (undetermined)"),
    }
}

pub fn print_certificate_text(cert: &FrobeniusCertificate, field: PrimeField, ctx: &VarContext) {
    let verified = if cert.verify() { "verified" } else { "NOT VERIFIED" };
    println!(
        "certificate (e = {}, {} term{}): {verified}",
        cert.e,
        cert.terms.len(),
        if cert.terms.len() == 1 { "" } else { "s" },
    );
    for term in &cert.terms {
        println!(
            "  residue {}: cofactor {}",
            monomial_text(&term.residue, field, ctx),
            term.cofactor
        );
    }
}

// ---------------------------------------------------------------------------
// roots
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct RootsReport {
    pub query: RootsQueryEcho,
    pub entries: Vec<RootEntryJson>,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct RootsQueryEcho {
    pub p: u64,
    pub vars: Vec<String>,
    pub e: u32,
    pub poly: String,
}

#[derive(Serialize)]
pub struct RootEntryJson {
    pub alpha: Vec<u32>,
    pub root: String,
}

pub fn root_entries_json(dec: &PeDecomposition) -> Vec<RootEntryJson> {
    dec.entries()
        .map(|(alpha, root)| RootEntryJson {
            alpha: alpha.exps().to_vec(),
            root: root.to_string(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct CurveReport {
    pub query: CurveQueryEcho,
    pub genus: usize,
    pub matrix: Vec<Vec<u64>>,
    pub a_number: usize,
    pub p_rank: usize,
    pub ordinary: bool,
    pub superspecial: bool,
    pub kernel: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratified: Option<StratifiedJson>,
}

#[derive(Serialize)]
pub struct CurveQueryEcho {
    pub p: u64,
    pub h: String,
}

#[derive(Serialize)]
pub struct StratifiedJson {
    pub vector: Vec<u64>,
    pub annihilates: bool,
}

pub fn print_curve_text(
    report: &CurveReport,
    matrix: &CartierManinMatrix,
    cls: &CurveClassification,
) {
    println!(
        "curve y^2 = {} over F_{} (genus {})",
        report.query.h, report.query.p, cls.genus
    );
    println!("cartier-manin matrix:");
    for row in matrix.entries() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        println!("  [ {} ]", cells.join(" "));
    }
    println!("a-number = {}", cls.a_number);
    println!("p-rank = {}", cls.p_rank);
    println!("ordinary: {}", yes_no(cls.ordinary));
    println!("superspecial: {}", yes_no(cls.superspecial));
    if report.kernel.is_empty() {
        println!("kernel: trivial (no annihilated differentials)");
    } else {
        println!("kernel basis:");
        for v in &report.kernel {
            println!("  {}", vector_text(v));
        }
    }
    if let Some(s) = &report.stratified {
        let verdict = if s.annihilates {
            "annihilates the matrix (lies in the kernel)"
        } else {
            "does not annihilate the matrix"
        };
        println!("stratified test for {}: {verdict}", vector_text(&s.vector));
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn vector_text(v: &[u64]) -> String {
    let cells: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", cells.join(", "))
}

// ---------------------------------------------------------------------------
// examples
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct ExamplesReport {
    pub cases: Vec<CaseJson>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Serialize)]
pub struct CaseJson {
    pub name: String,
    pub provenance: &'static str,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}
