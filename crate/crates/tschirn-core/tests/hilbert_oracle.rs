//! Cross-checks Hilbert series against brute-force dimension counts.
//!
//! The oracle computes the dimension of each graded piece of a quotient
//! directly: enumerate all monomials of the given degree, list the
//! degree-d multiples of every generator, and subtract the rank of that
//! span, found by Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tschirn_core::cover::{build_model, MirandaData};
use tschirn_core::qpoly::{hilbert_series, int, rat, Ideal, MultiPoly, Rat, VarSet};

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            let mut m = prefix.clone();
            m.push(degree);
            out.push(m);
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            go(nvars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(nvars, degree, &mut Vec::new(), &mut out);
    out
}

fn rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, Vec::len);
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &lead;
                for c in col..width {
                    let sub = &factor * &rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of degree-d part of the quotient by a homogeneous ideal.
fn brute_dimension(vars: &VarSet, gens: &[MultiPoly], degree: u32) -> usize {
    let basis = monomials(vars.len(), degree);
    let column: std::collections::BTreeMap<&Vec<u32>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut rows = Vec::new();
    for g in gens {
        let gd = g.total_degree().expect("nonzero generator");
        if gd > degree {
            continue;
        }
        for shift in monomials(vars.len(), degree - gd) {
            let multiple = g
                .mul(&MultiPoly::monomial(vars, shift, int(1)))
                .expect("same context");
            let mut row = vec![Rat::zero(); basis.len()];
            for (m, c) in multiple.terms() {
                row[column[m]] = c.clone();
            }
            rows.push(row);
        }
    }
    basis.len() - rank(rows)
}

fn check_series(vars: &VarSet, gens: Vec<MultiPoly>, through: u32, label: &str) {
    let ideal = Ideal::new(vars, gens.clone());
    let series = hilbert_series(&ideal).expect("homogeneous input");
    for d in 0..=through {
        let expected = BigInt::from(brute_dimension(vars, &gens, d));
        assert_eq!(
            series.coefficient(d as usize),
            expected,
            "{label}: degree {d}"
        );
    }
}

#[test]
fn minor_ideals_match_brute_force_through_degree_eight() {
    for (s, t) in [(int(1), int(2)), (int(1), int(1)), (int(1), int(0)), (rat(2, 3), int(-5))] {
        let model = build_model(&MirandaData::standard(&s, &t));
        let vars = model.vars().clone();
        let gens = model.minors().generators().to_vec();
        check_series(&vars, gens, 8, &format!("minors at ({s}, {t})"));
    }
}

#[test]
fn random_homogeneous_ideals_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bacce5);
    let vars = VarSet::new(["x", "y", "z"]);
    for instance in 0..15 {
        let gen_count = rng.gen_range(1..=3);
        let mut gens = Vec::new();
        for _ in 0..gen_count {
            let degree = rng.gen_range(1..=3u32);
            let mut g = MultiPoly::zero(&vars);
            for m in monomials(3, degree) {
                if rng.gen_bool(0.5) {
                    let c = int(rng.gen_range(-3..=3));
                    g = g.add(&MultiPoly::monomial(&vars, m, c)).unwrap();
                }
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            gens.push(MultiPoly::parse(&vars, "x^2 + y*z").unwrap());
        }
        check_series(&vars, gens, 6, &format!("random instance {instance}"));
    }
}

#[test]
fn principal_ideal_series_is_exact() {
    let vars = VarSet::new(["x", "y"]);
    let gens = vec![MultiPoly::parse(&vars, "x^2*y + x*y^2").unwrap()];
    check_series(&vars, gens, 8, "principal cubic");
}
