#![allow(dead_code)]

use std::path::PathBuf;

use jumploci::arrangement::{self, Arrangement, Hyperplane};
use jumploci::zeta::{DivisorRecord, ResolutionData, SpecializationMatrix, Stratum};
use jumploci::{IntVector, Rational, TorsionPoint, TranslatedSubtorus};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LINE_CORPUS: [&str; 6] = [
    "x.json",
    "xy.json",
    "xy_xpy.json",
    "xy_xpy_xmy.json",
    "x_xm1_y.json",
    "generic4.json",
];
pub const SPACE_CORPUS: [&str; 2] = ["braid3.json", "boolean3.json"];
pub const RESOLUTION_CORPUS: [&str; 2] = ["cusp.json", "cusp_axis.json"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_path(name)).unwrap()
}

pub fn load_arrangement(name: &str) -> Arrangement {
    arrangement::parse_arrangement(&read_data(name)).unwrap()
}

pub fn load_resolution(name: &str) -> ResolutionData {
    serde_json::from_str(&read_data(name)).unwrap()
}

pub fn all_arrangements() -> Vec<(String, Arrangement)> {
    LINE_CORPUS
        .iter()
        .chain(&SPACE_CORPUS)
        .map(|n| (n.to_string(), load_arrangement(n)))
        .collect()
}

/// Corpus resolution data plus the automatic resolutions of the line corpus.
pub fn all_resolutions() -> Vec<(String, ResolutionData)> {
    let mut out: Vec<_> = RESOLUTION_CORPUS
        .iter()
        .map(|n| (n.to_string(), load_resolution(n)))
        .collect();
    for n in LINE_CORPUS {
        out.push((
            format!("auto:{n}"),
            arrangement::line_arrangement_resolution(&load_arrangement(n)).unwrap(),
        ));
    }
    out
}

/// Lines through pairs of points of a small grid, so that multiple points are
/// common, mixed with a few lines with arbitrary small coefficients.
pub fn random_line_arrangement<R: Rng>(rng: &mut R, max_lines: usize) -> Arrangement {
    let target = rng.gen_range(1..=max_lines);
    let mut lines: Vec<Hyperplane> = Vec::new();
    while lines.len() < target {
        let form = if rng.gen_bool(0.8) {
            let (x1, y1, x2, y2) = (
                rng.gen_range(-1..=1i64),
                rng.gen_range(-1..=1i64),
                rng.gen_range(-1..=1i64),
                rng.gen_range(-1..=1i64),
            );
            if (x1, y1) == (x2, y2) {
                continue;
            }
            // (y1 - y2) x + (x2 - x1) y + (x1 y2 - x2 y1) = 0
            vec![x1 * y2 - x2 * y1, y1 - y2, x2 - x1]
        } else {
            let c = [
                rng.gen_range(-3..=3i64),
                rng.gen_range(-3..=3i64),
                rng.gen_range(-3..=3i64),
            ];
            if c[1] == 0 && c[2] == 0 {
                continue;
            }
            c.to_vec()
        };
        let form: Vec<Rational> = form.into_iter().map(Rational::from_int).collect();
        let h = Hyperplane::from_form(&form).unwrap();
        if !lines.contains(&h) {
            lines.push(h);
        }
    }
    Arrangement::new(2, lines).unwrap()
}

pub fn random_arrangements(seed: u64, count: usize, max_lines: usize) -> Vec<Arrangement> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_line_arrangement(&mut rng, max_lines))
        .collect()
}

pub fn random_rational<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    Rational::frac(rng.gen_range(0..d), d)
}

pub fn random_point<R: Rng>(rng: &mut R, r: usize, max_den: i64) -> TorsionPoint {
    TorsionPoint::new((0..r).map(|_| random_rational(rng, max_den)).collect())
}

/// A random torsion point on the component `{t^a = exp(2πi q)}`.
pub fn random_point_on<R: Rng>(rng: &mut R, c: &TranslatedSubtorus, max_den: i64) -> TorsionPoint {
    let a = c.a();
    let j = a.entries().iter().position(|x| !x.is_zero()).unwrap();
    let mut alpha: Vec<Rational> = (0..a.len()).map(|_| random_rational(rng, max_den)).collect();
    alpha[j] = Rational::zero();
    let rest = a.dot_rational(&alpha);
    let aj = Rational::from_int(a.entries()[j].clone());
    alpha[j] = (c.q() - &rest).checked_div(&aj).unwrap();
    TorsionPoint::new(alpha)
}

/// Random resolution-shaped data: a few strata of divisors with nonnegative
/// nonzero vectors and small Euler characteristics.
pub fn random_resolution<R: Rng>(rng: &mut R, r: usize) -> ResolutionData {
    let nstrata = rng.gen_range(1..=3);
    let mut strata = Vec::new();
    let mut label = 0;
    for s in 0..nstrata {
        let ndiv = rng.gen_range(1..=4);
        let mut divisors = Vec::new();
        for _ in 0..ndiv {
            let a = loop {
                let a: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=4)).collect();
                if a.iter().any(|&x| x != 0) {
                    break a;
                }
            };
            label += 1;
            divisors.push(DivisorRecord::new(
                format!("D{label}"),
                IntVector::from_i64s(&a),
                rng.gen_range(-2..=2),
            ));
        }
        strata.push(Stratum::new(format!("S{s}"), divisors));
    }
    ResolutionData::new(r, None, strata).unwrap()
}

/// A random `p × r` matrix of naturals, `p ≤ r`, non-degenerate for `noninvertible`.
pub fn random_nondegenerate<R: Rng>(rng: &mut R, r: usize, noninvertible: &[bool]) -> SpecializationMatrix {
    loop {
        let p = rng.gen_range(1..=r);
        let rows: Vec<IntVector> = (0..p)
            .map(|_| IntVector::from_i64s(&(0..r).map(|_| rng.gen_range(0..=3)).collect::<Vec<_>>()))
            .collect();
        let Ok(m) = SpecializationMatrix::new(rows) else {
            continue;
        };
        if jumploci::zeta::check_nondegenerate(&m, noninvertible).unwrap() {
            return m;
        }
    }
}

pub fn random_positive_weights<R: Rng>(rng: &mut R, r: usize) -> IntVector {
    IntVector::from_i64s(&(0..r).map(|_| rng.gen_range(1..=5)).collect::<Vec<_>>())
}

/// Relabels the hyperplanes of `arr` by a random permutation; returns the
/// permuted arrangement and `perm` with new index `k` holding old index `perm[k]`.
pub fn shuffled<R: Rng>(rng: &mut R, arr: &Arrangement) -> (Arrangement, Vec<usize>) {
    let mut perm: Vec<usize> = (0..arr.r()).collect();
    perm.shuffle(rng);
    let hs = perm.iter().map(|&i| arr.hyperplanes()[i].clone()).collect();
    (Arrangement::new(arr.n(), hs).unwrap(), perm)
}
