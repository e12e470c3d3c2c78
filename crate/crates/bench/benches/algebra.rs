//! Benchmarks for the core algebra: level searches, Groebner bases,
//! polynomial powering, and Cartier-Manin matrices.
//!
//! Run with `cargo bench -p frobpair-bench`. Group filters work as usual,
//! e.g. `cargo bench -p frobpair-bench -- level/`.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use frobpair::{
    cartier_manin, classify, groebner_basis, ie_roots, level_pair, level_single, parse_poly,
    HyperellipticModel, IdealGens, LevelQuery, MonomialOrder, MultiPoly, PrimeField, VarContext,
};

fn ring(p: u64, vars: &[&str]) -> (PrimeField, VarContext) {
    let field = PrimeField::new(p).expect("prime");
    let ctx = VarContext::new(vars.to_vec()).expect("vars");
    (field, ctx)
}

fn poly(text: &str, field: PrimeField, ctx: &VarContext) -> MultiPoly {
    parse_poly(text, field, ctx).expect("parse")
}

// ---------------------------------------------------------------------------
// Level searches
// ---------------------------------------------------------------------------

fn bench_level(c: &mut Criterion) {
    let mut group = c.benchmark_group("level");

    let (f5, six) = ring(5, &["u", "v", "w", "x", "y", "z"]);
    let minor_num = poly("w", f5, &six);
    let minor_den = poly("(v*z - w*y)*(w*x - u*z)", f5, &six);
    group.bench_function("determinantal-pair-p5", |b| {
        b.iter(|| {
            let query = LevelQuery::new(minor_num.clone(), minor_den.clone()).with_e_max(3);
            level_pair(&query).expect("level")
        })
    });

    let (f3, xyz) = ring(3, &["x", "y", "z"]);
    let fermat = poly("x^3 + y^3 + z^3", f3, &xyz);
    group.bench_function("fermat-cubic-p3", |b| {
        b.iter(|| level_single(&fermat, 4).expect("level"))
    });

    let (f2, four) = ring(2, &["x", "y", "z", "w"]);
    let shifted2 = poly("x*y^3 + y*z^3 + z*w^3", f2, &four);
    let y2 = poly("y", f2, &four);
    group.bench_function("level-four-pair-p2", |b| {
        b.iter(|| {
            let query = LevelQuery::new(y2.clone(), shifted2.clone()).with_e_max(5);
            level_pair(&query).expect("level")
        })
    });

    let (f3b, four3) = ring(3, &["x", "y", "z", "w"]);
    let shifted3 = poly("x*y^4 + y*z^4 + z*w^4", f3b, &four3);
    let y3 = poly("y", f3b, &four3);
    group.sample_size(10);
    group.bench_function("level-four-pair-p3", |b| {
        b.iter(|| {
            let query = LevelQuery::new(y3.clone(), shifted3.clone()).with_e_max(5);
            level_pair(&query).expect("level")
        })
    });

    group.finish();
}

// ---------------------------------------------------------------------------
// Groebner bases
// ---------------------------------------------------------------------------

fn bench_groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner");

    let (f7, six) = ring(7, &["u", "v", "w", "x", "y", "z"]);
    let minors = IdealGens::new(
        f7,
        &six,
        vec![
            poly("v*z - w*y", f7, &six),
            poly("w*x - u*z", f7, &six),
            poly("u*y - v*x", f7, &six),
        ],
    )
    .expect("gens");
    group.bench_function("determinantal-minors-p7", |b| {
        b.iter(|| groebner_basis(&minors, MonomialOrder::GrevLex).expect("basis"))
    });

    let (f7b, xyz) = ring(7, &["x", "y", "z"]);
    let quintic = poly("x^5 + y^5 + z^5 + x*y*z*(x + y + z)", f7b, &xyz);
    let sextic = quintic.mul(&poly("x + 2*y + 3*z", f7b, &xyz)).expect("product");
    group.bench_function("root-ideal-sextic-p7", |b| {
        b.iter(|| {
            let gens = ie_roots(&sextic, 1);
            groebner_basis(&gens, MonomialOrder::GrevLex).expect("basis")
        })
    });

    group.finish();
}

// ---------------------------------------------------------------------------
// Powering: base-p decomposition versus naive repeated multiplication
// ---------------------------------------------------------------------------

fn naive_pow(f: &MultiPoly, n: u64) -> MultiPoly {
    let mut acc = MultiPoly::one(f.field(), f.context());
    for _ in 0..n {
        acc = acc.mul(f).expect("product");
    }
    acc
}

fn bench_powering(c: &mut Criterion) {
    let mut group = c.benchmark_group("powering");

    let (f5, four) = ring(5, &["x", "y", "z", "w"]);
    let f = poly("x + y + z + w", f5, &four);
    group.bench_function("base-p-pow-24", |b| {
        b.iter(|| f.pow(24).expect("power"))
    });
    group.bench_function("naive-pow-24", |b| b.iter(|| naive_pow(&f, 24)));

    // Frobenius-structured exponent: p^3 - 1 = 124 factors through twists.
    group.sample_size(20);
    group.bench_function("base-p-pow-124", |b| {
        b.iter(|| f.pow(124).expect("power"))
    });

    group.finish();
}

// ---------------------------------------------------------------------------
// Cartier-Manin matrices
// ---------------------------------------------------------------------------

fn bench_curves(c: &mut Criterion) {
    let mut group = c.benchmark_group("cartier-manin");

    for p in [13u64, 127, 997] {
        let (field, x) = ring(p, &["x"]);
        let h = poly("x^5 + x + 1", field, &x);
        let model = match HyperellipticModel::new(&h) {
            Ok(m) => m,
            Err(_) => {
                // Fall back to a squarefree quintic for this prime.
                let alt = poly("x^5 + 2*x + 1", field, &x);
                HyperellipticModel::new(&alt).expect("squarefree model")
            }
        };
        group.bench_function(format!("genus-2-p{p}"), |b| {
            b.iter(|| {
                let m = cartier_manin(&model);
                classify(&m)
            })
        });
    }

    group.finish();
}

fn config() -> Criterion {
    Criterion::default()
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(2))
}

criterion_group! {
    name = benches;
    config = config();
    targets = bench_level, bench_groebner, bench_powering, bench_curves
}
criterion_main!(benches);
