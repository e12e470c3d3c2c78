//! Keeps the library example in the top-level README compiling and correct.

use frobpair::{level_pair, parse_poly, LevelOutcome, LevelQuery, PrimeField, VarContext};

#[test]
fn readme_library_example() -> Result<(), Box<dyn std::error::Error>> {
    let field = PrimeField::new(2)?;
    let ctx = VarContext::new(vec!["x", "y", "z"])?;
    let g = parse_poly("x*y*z", field, &ctx)?;
    let f = parse_poly("x^3 + y^3 + z^3", field, &ctx)?;
    match level_pair(&LevelQuery::new(g, f))? {
        LevelOutcome::Finite { e, certificate } => {
            assert_eq!(e, 2);
            assert!(certificate.verify());
        }
        other => panic!("unexpected: {other:?}"),
    }
    Ok(())
}
