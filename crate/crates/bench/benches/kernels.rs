use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cubic_moduli::chow::{m1_chow_computation, space_betti, Space};
use cubic_moduli::complexes::hilbert_polynomial;
use cubic_moduli::deform::{build_family, verify_family_complex, FamilyData};
use cubic_moduli::moduli::{normal_form, sample, Fixture, Stratum};
use cubic_moduli::tangent::{tangent_dim_m, tangent_space_x};
use cubic_moduli_bench::fixture_sections;

fn linear_algebra(c: &mut Criterion) {
    let m = fixture_sections(Fixture::TwistedCubic, 6);
    c.bench_function("rank sparse (A, m = 6)", |b| b.iter(|| m.rank()));
    c.bench_function("rank Bareiss (A, m = 6)", |b| b.iter(|| m.rank_dense()));
}

fn moduli(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pair = sample::random_pair(&mut rng, Stratum::NonPlanar);
    c.bench_function("hilbert polynomial (random pair)", |b| b.iter(|| hilbert_polynomial(pair.a()).unwrap()));
    c.bench_function("normal form (random pair)", |b| b.iter(|| normal_form(&pair).unwrap()));
    c.bench_function("tangent dimension (random pair)", |b| b.iter(|| tangent_dim_m(&pair).unwrap()));
    let nodal = Fixture::PlanarNodal.load();
    c.bench_function("tangent space basis (FIX-PN)", |b| b.iter(|| tangent_space_x(&nodal).unwrap()));
}

fn deform_and_chow(c: &mut Criterion) {
    let fam = build_family(FamilyData::planar_nodal()).unwrap();
    c.bench_function("family complex check", |b| b.iter(|| verify_family_complex(&fam).unwrap()));
    c.bench_function("A*(M1) computation", |b| b.iter(|| m1_chow_computation().unwrap()));
    c.bench_function("Betti numbers of M", |b| b.iter(|| space_betti(Space::M).unwrap()));
}

criterion_group!(benches, linear_algebra, moduli, deform_and_chow);
criterion_main!(benches);
