//! Built-in regression table: frozen level values, operator identities, and
//! curve invariants. Cases run concurrently on a small thread pool; output
//! order is deterministic (sorted by case name).
//!
//! Provenance tags: `literature` marks expected values quoted from the
//! source material this suite tracks; `derived` marks values frozen from
//! independent computation (used where the quoted value failed
//! cross-checking — the octic curve p-ranks at p = 3 and p = 5).

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use frobpair::{
    cartier_manin, classify, level_pair_with_limit, level_single, operator_word_apply,
    parse_poly, stratification_kernel, stratified_test, HyperellipticModel, LevelOutcome,
    LevelQuery, OperatorAtom, OperatorWord, PrimeField, VarContext,
};

use crate::report::{CaseJson, ExamplesReport};
use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Literature,
    Derived,
}

impl Provenance {
    fn label(self) -> &'static str {
        match self {
            Provenance::Literature => "literature",
            Provenance::Derived => "derived",
        }
    }
}

type CaseFn = fn(Option<usize>) -> Result<String, String>;

pub struct RegressionCase {
    pub name: &'static str,
    pub provenance: Provenance,
    pub long: bool,
    run: CaseFn,
}

enum Status {
    Pass(String),
    Fail(String),
    Skipped,
}

// ---------------------------------------------------------------------------
// Case helpers
// ---------------------------------------------------------------------------

fn ring(p: u64, vars: &[&str]) -> (PrimeField, VarContext) {
    (
        PrimeField::new(p).expect("catalog prime"),
        VarContext::new(vars.to_vec()).expect("catalog vars"),
    )
}

fn level_case(
    p: u64,
    vars: &[&str],
    g: &str,
    f: &str,
    e_max: u32,
    expected: Option<u32>,
    cap: Option<usize>,
) -> Result<String, String> {
    let (field, ctx) = ring(p, vars);
    let g = parse_poly(g, field, &ctx).map_err(|e| e.to_string())?;
    let f = parse_poly(f, field, &ctx).map_err(|e| e.to_string())?;
    let query = LevelQuery::new(g, f).with_e_max(e_max);
    let outcome = level_pair_with_limit(&query, cap).map_err(|e| e.to_string())?;
    match (&outcome, expected) {
        (LevelOutcome::LevelZero, Some(0)) => Ok("level = 0".to_string()),
        (LevelOutcome::Finite { e, certificate }, Some(want)) if *e == want => {
            if certificate.verify() {
                Ok(format!("level = {e}, certificate verified"))
            } else {
                Err(format!("level = {e} but the certificate failed verification"))
            }
        }
        (LevelOutcome::ExceedsBound { e_max }, None) => {
            Ok(format!("level > {e_max} at every tested exponent"))
        }
        (other, _) => Err(format!(
            "expected {}, got {}",
            match expected {
                Some(e) => format!("level = {e}"),
                None => format!("level > {e_max}"),
            },
            crate::report::outcome_text(other, e_max)
        )),
    }
}

fn single_case(
    p: u64,
    vars: &[&str],
    f: &str,
    e_max: u32,
    expected: u32,
) -> Result<String, String> {
    let (field, ctx) = ring(p, vars);
    let f = parse_poly(f, field, &ctx).map_err(|e| e.to_string())?;
    let outcome = level_single(&f, e_max).map_err(|e| e.to_string())?;
    match outcome.level_value() {
        Some(e) if e == expected => Ok(format!("level = {e}")),
        Some(e) => Err(format!("expected level = {expected}, got {e}")),
        None => Err(format!("expected level = {expected}, got level > {e_max}")),
    }
}

fn curve_case(
    p: u64,
    h: &str,
    want_a: usize,
    want_p_rank: usize,
) -> Result<String, String> {
    let (field, ctx) = ring(p, &["x"]);
    let h = parse_poly(h, field, &ctx).map_err(|e| e.to_string())?;
    let model = HyperellipticModel::new(&h).map_err(|e| e.to_string())?;
    let cls = classify(&cartier_manin(&model));
    if (cls.a_number, cls.p_rank) != (want_a, want_p_rank) {
        return Err(format!(
            "expected a-number {want_a} and p-rank {want_p_rank}, got {} and {}",
            cls.a_number, cls.p_rank
        ));
    }
    Ok(format!(
        "a-number = {}, p-rank = {}{}{}",
        cls.a_number,
        cls.p_rank,
        if cls.ordinary { ", ordinary" } else { "" },
        if cls.superspecial { ", superspecial" } else { "" },
    ))
}

fn quintic_stratified_case(_cap: Option<usize>) -> Result<String, String> {
    // p = 13, h = x^5 + 1: M = [[0,0],[6,0]]; the row vector (1,0)
    // annihilates M, (0,1) does not, and the kernel basis is {(1,0)}.
    let (field, ctx) = ring(13, &["x"]);
    let h = parse_poly("x^5 + 1", field, &ctx).map_err(|e| e.to_string())?;
    let m = cartier_manin(&HyperellipticModel::new(&h).map_err(|e| e.to_string())?);
    if m.entries() != [vec![0, 0], vec![6, 0]] {
        return Err(format!("unexpected matrix {:?}", m.entries()));
    }
    let hit = stratified_test(&m, &[1, 0]).map_err(|e| e.to_string())?;
    let miss = stratified_test(&m, &[0, 1]).map_err(|e| e.to_string())?;
    if !hit || miss {
        return Err(format!("stratified tests returned ({hit}, {miss})"));
    }
    if stratification_kernel(&m) != vec![vec![1, 0]] {
        return Err("kernel basis is not {(1, 0)}".to_string());
    }
    Ok("matrix [[0,0],[6,0]]; kernel spanned by (1, 0)".to_string())
}

fn minors_operator_case(_cap: Option<usize>) -> Result<String, String> {
    // p = 2: the word D_{u,1} D_{y,1} D_{z,1} sends w * (vz-wy)(wx-uz)
    // to w^2, realizing the level-1 descent for the determinantal pair.
    let (field, ctx) = ring(2, &["u", "v", "w", "x", "y", "z"]);
    let target = parse_poly("w*(v*z - w*y)*(w*x - u*z)", field, &ctx)
        .map_err(|e| e.to_string())?;
    let word = OperatorWord::new(vec![
        OperatorAtom::DividedPower { var: 0, order: 1 },
        OperatorAtom::DividedPower { var: 4, order: 1 },
        OperatorAtom::DividedPower { var: 5, order: 1 },
    ]);
    let image = operator_word_apply(&word, &target).map_err(|e| e.to_string())?;
    let expected = parse_poly("w^2", field, &ctx).map_err(|e| e.to_string())?;
    if image != expected {
        return Err(format!("operator image is {image}, expected w^2"));
    }
    Ok("D_u D_y D_z maps w*f to w^2".to_string())
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

const SIX: [&str; 6] = ["u", "v", "w", "x", "y", "z"];

macro_rules! level_fn {
    ($p:expr, $vars:expr, $g:expr, $f:expr, $e_max:expr, $want:expr) => {
        |cap| level_case($p, $vars, $g, $f, $e_max, $want, cap)
    };
}

fn catalog() -> Vec<RegressionCase> {
    use Provenance::{Derived, Literature};
    let case = |name, provenance, long, run: CaseFn| RegressionCase {
        name,
        provenance,
        long,
        run,
    };
    let mut cases = vec![
        // Determinantal pairs: level 1 at every p.
        case("minors-w-p2", Literature, false,
             level_fn!(2, &SIX, "w", "(v*z - w*y)*(w*x - u*z)", 3, Some(1))),
        case("minors-w-p3", Literature, false,
             level_fn!(3, &SIX, "w", "(v*z - w*y)*(w*x - u*z)", 3, Some(1))),
        case("minors-w-p5", Literature, false,
             level_fn!(5, &SIX, "w", "(v*z - w*y)*(w*x - u*z)", 3, Some(1))),
        case("minors-v-p2", Literature, false,
             level_fn!(2, &SIX, "v", "(v*z - w*y)*(u*y - v*x)", 3, Some(1))),
        case("minors-v-p3", Literature, false,
             level_fn!(3, &SIX, "v", "(v*z - w*y)*(u*y - v*x)", 3, Some(1))),
        case("minors-v-p5", Literature, false,
             level_fn!(5, &SIX, "v", "(v*z - w*y)*(u*y - v*x)", 3, Some(1))),
        case("minors-u-p2", Literature, false,
             level_fn!(2, &SIX, "u", "(w*x - u*z)*(u*y - v*x)", 3, Some(1))),
        case("minors-u-p3", Literature, false,
             level_fn!(3, &SIX, "u", "(w*x - u*z)*(u*y - v*x)", 3, Some(1))),
        case("minors-u-p5", Literature, false,
             level_fn!(5, &SIX, "u", "(w*x - u*z)*(u*y - v*x)", 3, Some(1))),
        case("minors-operator-p2", Literature, false, minors_operator_case),
        // Fermat cubic with the monomial numerator.
        case("fermat-xyz-p2", Literature, false,
             level_fn!(2, &["x", "y", "z"], "x*y*z", "x^3 + y^3 + z^3", 3, Some(2))),
        case("fermat-xyz-p3", Literature, false,
             level_fn!(3, &["x", "y", "z"], "x*y*z", "x^3 + y^3 + z^3", 3, Some(2))),
        // Projective line, f = x^3 at p = 5: all degree-3 monomials.
        case("projline-x3-p5", Literature, false,
             level_fn!(5, &["x", "y"], "x^3", "x^3", 3, Some(0))),
        case("projline-x2y-p5", Literature, false,
             level_fn!(5, &["x", "y"], "x^2*y", "x^3", 3, Some(1))),
        case("projline-xy2-p5", Literature, false,
             level_fn!(5, &["x", "y"], "x*y^2", "x^3", 3, Some(2))),
        case("projline-y3-p5", Literature, false,
             level_fn!(5, &["x", "y"], "y^3", "x^3", 3, Some(2))),
        // Quadratic forms.
        case("quadric-xy-x2-p3", Literature, false,
             level_fn!(3, &["x", "y"], "x*y", "x^2", 3, Some(1))),
        case("quadric-xy-x2-p5", Literature, false,
             level_fn!(5, &["x", "y"], "x*y", "x^2", 3, Some(1))),
        case("quadric-y2-x2-p3", Literature, false,
             level_fn!(3, &["x", "y"], "y^2", "x^2", 3, Some(2))),
        case("quadric-y2-x2-p5", Literature, false,
             level_fn!(5, &["x", "y"], "y^2", "x^2", 3, Some(2))),
        case("quadric-x2-xy-p3", Literature, false,
             level_fn!(3, &["x", "y"], "x^2", "x*y", 3, Some(1))),
        // Degree-(p+2) pairs whose level exceeds the denominator's.
        case("shifted-pair-p2", Literature, false,
             level_fn!(2, &["x", "y", "z", "w"], "y", "x*y^3 + y*z^3 + z*w^3", 5, Some(4))),
        case("shifted-pair-p3", Literature, false,
             level_fn!(3, &["x", "y", "z", "w"], "y", "x*y^4 + y*z^4 + z*w^4", 5, Some(4))),
        case("shifted-pair-p5", Literature, true,
             level_fn!(5, &["x", "y", "z", "w"], "y", "x*y^6 + y*z^6 + z*w^6", 5, Some(4))),
        case("shifted-den-p2", Literature, false,
             |_cap| single_case(2, &["x", "y", "z", "w"], "x*y^3 + y*z^3 + z*w^3", 4, 2)),
        case("shifted-den-p3", Literature, false,
             |_cap| single_case(3, &["x", "y", "z", "w"], "x*y^4 + y*z^4 + z*w^4", 4, 2)),
        // Pairs of infinite level: undetermined at every tested bound.
        case("infinite-x-p2", Literature, false,
             level_fn!(2, &["x", "y"], "x", "x^3 + y^3", 5, None)),
        case("infinite-x-p3", Literature, false,
             level_fn!(3, &["x", "y"], "x", "x^4 + y^4", 5, None)),
        // Elliptic dichotomy for the Fermat cubic alone.
        case("elliptic-fermat-p2", Literature, false,
             |_cap| single_case(2, &["x", "y", "z"], "x^3 + y^3 + z^3", 3, 2)),
        case("elliptic-fermat-p5", Literature, false,
             |_cap| single_case(5, &["x", "y", "z"], "x^3 + y^3 + z^3", 3, 2)),
        case("elliptic-fermat-p7", Literature, false,
             |_cap| single_case(7, &["x", "y", "z"], "x^3 + y^3 + z^3", 3, 1)),
        case("elliptic-fermat-p11", Literature, false,
             |_cap| single_case(11, &["x", "y", "z"], "x^3 + y^3 + z^3", 3, 2)),
        case("elliptic-fermat-p13", Literature, false,
             |_cap| single_case(13, &["x", "y", "z"], "x^3 + y^3 + z^3", 3, 1)),
        // Cartier-Manin rows. The octic p-ranks at p = 3 and p = 5 are
        // frozen from direct computation (tagged derived); the quoted
        // values for them did not survive cross-checking.
        case("quintic-cm-p13", Literature, false, quintic_stratified_case),
        case("quintic-cm-p19", Literature, false, |_cap| curve_case(19, "x^5 + 1", 2, 0)),
        case("quintic-cm-p11", Literature, false, |_cap| curve_case(11, "x^5 + 1", 0, 2)),
        case("octic-prank-p7", Literature, false, |_cap| curve_case(7, "x^8 - 1", 3, 0)),
        case("octic-prank-p17", Literature, false, |_cap| curve_case(17, "x^8 - 1", 0, 3)),
        case("octic-prank-p3", Derived, false, |_cap| curve_case(3, "x^8 - 1", 1, 2)),
        case("octic-prank-p5", Derived, false, |_cap| curve_case(5, "x^8 - 1", 2, 1)),
    ];
    cases.sort_by_key(|c| c.name);
    cases
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

pub fn run(
    filter: Option<&str>,
    include_long: bool,
    json: bool,
    cap: Option<usize>,
) -> Result<(), CliError> {
    let cases: Vec<RegressionCase> = catalog()
        .into_iter()
        .filter(|c| filter.map_or(true, |needle| c.name.contains(needle)))
        .collect();
    let results: Mutex<Vec<Option<Status>>> = Mutex::new((0..cases.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(4)
        .min(cases.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cases.len() {
                    break;
                }
                let case = &cases[i];
                let status = if case.long && !include_long {
                    Status::Skipped
                } else {
                    match (case.run)(cap) {
                        Ok(detail) => Status::Pass(detail),
                        Err(message) => Status::Fail(message),
                    }
                };
                results.lock().unwrap()[i] = Some(status);
            });
        }
    });
    let results = results.into_inner().unwrap();

    let mut passed = 0;
    let mut failed = 0;
    let mut skipped = 0;
    let mut json_cases = Vec::with_capacity(cases.len());
    let width = cases.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for (case, status) in cases.iter().zip(&results) {
        let status = status.as_ref().expect("worker filled every slot");
        let (tag, detail) = match status {
            Status::Pass(detail) => {
                passed += 1;
                ("pass", Some(detail.clone()))
            }
            Status::Fail(message) => {
                failed += 1;
                ("fail", Some(message.clone()))
            }
            Status::Skipped => {
                skipped += 1;
                ("skipped", Some("long case; rerun with --include-long".to_string()))
            }
        };
        if json {
            json_cases.push(CaseJson {
                name: case.name.to_string(),
                provenance: case.provenance.label(),
                status: tag,
                detail: detail.clone(),
            });
        } else {
            println!(
                "{:<width$}  {:<7}  [{}]  {}",
                case.name,
                tag.to_uppercase(),
                case.provenance.label(),
                detail.unwrap_or_default(),
            );
        }
    }
    if json {
        let report = ExamplesReport { cases: json_cases, passed, failed, skipped };
        println!("{}", serde_json::to_string_pretty(&report).expect("serialize"));
    } else {
        println!("{passed} passed, {failed} failed, {skipped} skipped");
    }
    if failed > 0 {
        Err(CliError::Regression { failed })
    } else {
        Ok(())
    }
}
