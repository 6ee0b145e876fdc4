//! Seeded randomized properties of the Chern-class layer: splitting
//! principle consistency, additivity of Riemann-Roch, and the
//! Clebsch-Gordan identity for rank-2 tensor products.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tschirn_core::chern::{riemann_roch, BundleChern, Lattice, NumClass, SurfaceGeom};
use tschirn_core::qpoly::{int, rat, Rat};

fn random_lattice(rng: &mut ChaCha8Rng) -> Lattice {
    loop {
        let a = rng.gen_range(-4..=4);
        let b = rng.gen_range(-4..=4);
        let c = rng.gen_range(-4..=4);
        if let Ok(lat) = Lattice::new(&["D", "E"], &[vec![a, b], vec![b, c]]) {
            return lat;
        }
    }
}

fn random_class(rng: &mut ChaCha8Rng, lat: &Lattice) -> NumClass {
    NumClass::from_integers(lat, &[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]).unwrap()
}

fn random_rank2(rng: &mut ChaCha8Rng, lat: &Lattice) -> BundleChern {
    let c1 = random_class(rng, lat);
    let c2 = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
    BundleChern::new(2, c1, c2).unwrap()
}

fn same_bundle(a: &BundleChern, b: &BundleChern) -> bool {
    a.rank() == b.rank() && a.c1() == b.c1() && a.c2() == b.c2()
}

#[test]
fn symmetric_powers_follow_the_splitting_principle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5911);
    for _ in 0..50 {
        let lat = random_lattice(&mut rng);
        let b = random_rank2(&mut rng, &lat);
        let sym2 = b.sym(2).unwrap();
        assert_eq!(sym2.rank(), 3);
        assert_eq!(sym2.c1(), &b.c1().scale(&int(3)));
        for k in 0..=4 {
            assert_eq!(b.sym(k).unwrap().rank(), k + 1);
        }
        let line = BundleChern::line_bundle(random_class(&mut rng, &lat));
        let twisted = b.twist(line.c1()).unwrap();
        let tensored = b.tensor(&line).unwrap();
        assert!(same_bundle(&twisted, &tensored));
    }
}

fn random_surface(rng: &mut ChaCha8Rng, lat: &Lattice) -> SurfaceGeom {
    let k = random_class(rng, lat);
    let ksq = k.self_intersection();
    let chi: Rat = int(rng.gen_range(-2..=3));
    let e = &chi * int(12) - &ksq;
    assert!(e.is_integer());
    SurfaceGeom::new(k, e.to_integer().try_into().unwrap(), chi).unwrap()
}

#[test]
fn riemann_roch_is_additive_over_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xadd5);
    for _ in 0..50 {
        let lat = random_lattice(&mut rng);
        let surface = random_surface(&mut rng, &lat);
        let b1 = random_rank2(&mut rng, &lat);
        let b2 = random_rank2(&mut rng, &lat);
        let total = b1.direct_sum(&b2).unwrap();
        let left = riemann_roch(&total, &surface).unwrap();
        let right = riemann_roch(&b1, &surface).unwrap() + riemann_roch(&b2, &surface).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn clebsch_gordan_for_rank_two_tensors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1eb);
    for _ in 0..50 {
        let lat = random_lattice(&mut rng);
        let f = random_rank2(&mut rng, &lat);
        let trivial = BundleChern::line_bundle(NumClass::zero(&lat));
        let adjoint = f
            .sym(2)
            .unwrap()
            .tensor(&f.wedge2().unwrap().dual())
            .unwrap();
        let left = trivial.direct_sum(&adjoint).unwrap();
        let right = f.tensor(&f.dual()).unwrap();
        assert!(
            same_bundle(&left, &right),
            "left (r, c1, c2) = ({}, {:?}, {}), right = ({}, {:?}, {})",
            left.rank(),
            left.c1().coeffs(),
            left.c2(),
            right.rank(),
            right.c1().coeffs(),
            right.c2()
        );
    }
}

#[test]
fn cubic_symmetric_power_splits_at_chern_level_in_the_product_case() {
    let lat = Lattice::new(&["L"], &[vec![4]]).unwrap();
    let l = NumClass::basis(&lat, "L").unwrap();
    let abelian = SurfaceGeom::new(NumClass::zero(&lat), 0, int(0)).unwrap();
    let f = BundleChern::new(2, l, int(1)).unwrap();
    assert_eq!(riemann_roch(&f, &abelian).unwrap(), int(1));
    let cubic = f
        .sym(3)
        .unwrap()
        .tensor(&f.wedge2().unwrap().dual())
        .unwrap();
    let chi_cubic = riemann_roch(&cubic, &abelian).unwrap();
    let chi_f = riemann_roch(&f, &abelian).unwrap();
    assert_eq!(chi_cubic, &chi_f * int(2));
    assert_eq!(chi_cubic, int(2));
}
