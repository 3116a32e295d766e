use parseval_core::models::*;
use parseval_core::parseval::ParsevalContext;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let sphere = OrientedSimplicialSphere::octahedron();
    let ring = sphere_ring(&sphere, 3, 7).unwrap();
    let (ideal, _gb, red) = generic_artinian_reduction(&sphere, &ring, 0, 32).unwrap();
    eprintln!("reduction: {:?}", t0.elapsed());

    let t = Instant::now();
    let vol = kustin_miller_vol(&sphere, &red, &ideal).unwrap();
    eprintln!("km vol: {:?}", t.elapsed());

    let t = Instant::now();
    let gb = ideal.groebner();
    eprintln!("gb(I): {:?} ({} elements)", t.elapsed(), gb.basis_polynomials().len());

    let t = Instant::now();
    let bracket = ideal.bracket_power();
    let gbb = bracket.groebner();
    eprintln!("gb(I^[p]): {:?} ({} elements)", t.elapsed(), gbb.basis_polynomials().len());

    let t = Instant::now();
    let ctx = ParsevalContext::with_vol(ideal.clone(), gb, vol).unwrap();
    eprintln!("context (incl. hat tables): {:?}", t.elapsed());

    let t = Instant::now();
    let f = parseval_core::complexes::minimal_free_resolution(&ideal).unwrap();
    eprintln!("resolution: {:?} betti {:?}", t.elapsed(), f.betti_numbers());

    let t = Instant::now();
    let fhat = std::sync::Arc::new(f.frobenius_base_change());
    let farc = std::sync::Arc::new(f);
    let lift = parseval_core::lifting::lift_quotient_map(&fhat, &farc, ctx.groebner(), None).unwrap();
    eprintln!("lift: {:?}", t.elapsed());
    let top = parseval_core::lifting::top_component(&lift).unwrap();
    eprintln!("eps degree {} terms {}", top.polynomial.degree().unwrap(), top.polynomial.num_terms());
}
