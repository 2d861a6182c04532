use mahavier_core::counting::{count_by_enumeration, count_series, count_series_with, CountOptions, Direction};
use mahavier_core::cover::minimal_subcover;
use mahavier_core::dynamics::{orbit_stream, wandering_partition, OrbitPolicy};
use mahavier_core::entropy::{box_dimension, entropy_transfer};
use mahavier_core::exec::Sequential;
use mahavier_core::fixtures;
use mahavier_core::grid::GridSpec;
use mahavier_core::mahavier::{kernel, star_power};
use mahavier_core::scalar::q;
use mahavier_core::{Relation, Scalar};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_points(rng: &mut ChaCha8Rng, max: usize, denom: i64) -> Relation {
    let k = rng.gen_range(1..=max);
    let pts = (0..k)
        .map(|_| vec![q(rng.gen_range(0..=denom), denom), q(rng.gen_range(0..=denom), denom)])
        .collect();
    Relation::points(2, pts).unwrap()
}

/// Points of `g` on the lattice of spacing `1/k`.
fn lattice_sample(g: &Relation, k: i64) -> Relation {
    let mut pts = Vec::new();
    for i in 0..=k {
        for j in 0..=k {
            let p = vec![q(i, k), q(j, k)];
            if g.member(&p).unwrap() {
                pts.push(p);
            }
        }
    }
    Relation::points(2, pts).unwrap()
}

fn assert_matches_sample(g: &Relation, n: usize, k: i64, m_max: usize) {
    let sample = lattice_sample(g, k);
    let grid = GridSpec::partition(n).unwrap();
    let s = count_series(g, &grid, m_max, 100_000).unwrap();
    for m in 1..=m_max {
        let by_sample = count_by_enumeration(&sample, &grid, m).unwrap();
        assert!(s.entry(m).exact());
        assert_eq!(s.entry(m).upper, by_sample, "n={n} m={m}");
    }
}

#[test]
fn continuum_counts_match_lattice_samples() {
    assert_matches_sample(&fixtures::maribor_segments(), 4, 8, 6);
    assert_matches_sample(&fixtures::triangle(), 4, 8, 5);
    assert_matches_sample(&fixtures::bl(), 4, 8, 6);
    assert_matches_sample(&fixtures::ingram_2_3(), 4, 8, 5);
    assert_matches_sample(&fixtures::diagonal_plus_two_points(), 4, 20, 5);
}

#[test]
fn maribor_small_cases_by_hand() {
    // bottom edge meets 4 boxes, the anti-diagonal 7, sharing the corner box
    let s = count_series(&fixtures::maribor_segments(), &GridSpec::partition(4).unwrap(), 1, 1000).unwrap();
    assert_eq!(s.entry(1).upper, BigUint::from(10u32));
}

#[test]
fn powers_count_like_deeper_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = GridSpec::partition(3).unwrap();
    for _ in 0..20 {
        let g = random_points(&mut rng, 6, 2);
        let p2 = star_power(&g, 2).unwrap().to_relation();
        let s1 = count_series(&g, &grid, 6, 100_000).unwrap();
        let s2 = count_series(&p2, &grid, 3, 100_000).unwrap();
        for m in 1..=3 {
            assert_eq!(s2.entry(m).upper, s1.entry(2 * m).upper);
            assert_eq!(s2.entry(m).upper, count_by_enumeration(&p2, &grid, m).unwrap());
        }
    }
}

#[test]
fn directions_agree() {
    let grid = GridSpec::partition(4).unwrap();
    for g in [fixtures::tent_inverse(), fixtures::kt_diamond(), fixtures::parabola(), fixtures::maribor_segments()] {
        let run = |direction| {
            let opts = CountOptions {
                direction,
                ..CountOptions::default()
            };
            count_series_with(&g, &grid, 8, &opts, &Sequential).unwrap()
        };
        let f = run(Direction::Forward);
        assert!(f.exact());
        assert_eq!(f, run(Direction::Auto));
        // reverse images of the parabola have irrational endpoints, so only a bracket is promised
        let r = run(Direction::Reverse);
        for (a, b) in f.entries.iter().zip(&r.entries) {
            assert!(b.lower <= a.upper && a.upper <= b.upper);
        }
    }
}

#[test]
fn kernel_keeps_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let g = random_points(&mut rng, 7, 3);
        let k = kernel(&g).unwrap();
        let (a, b) = (entropy_transfer(&g).unwrap(), entropy_transfer(&k).unwrap());
        assert!((a.value - b.value).abs() < 1e-9);
        assert_eq!(a.empty, b.empty);
        assert!(wandering_partition(&k).unwrap().wandering.is_empty());
    }
}

#[test]
fn subcover_never_exceeds_box_hits() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let g = random_points(&mut rng, 5, 4);
        for m in 1..=3 {
            let p = star_power(&g, m).unwrap();
            let part = GridSpec::partition(4).unwrap();
            let over = GridSpec::overlap_default(4).unwrap();
            // each point lies in exactly one partition box
            assert_eq!(
                BigUint::from(minimal_subcover(&p, &part).unwrap()),
                count_by_enumeration(&g, &part, m).unwrap()
            );
            let cover = BigUint::from(minimal_subcover(&p, &over).unwrap());
            assert!(cover <= count_by_enumeration(&g, &over, m).unwrap());
            assert!(cover <= count_by_enumeration(&g, &part, m).unwrap());
        }
    }
}

#[test]
fn orbit_streams_stay_in_the_product() {
    let g = fixtures::g_a(3, fixtures::GaReading::Figure).unwrap();
    for policy in [OrbitPolicy::Lexicographic, OrbitPolicy::RandomSeeded(1), OrbitPolicy::RandomSeeded(2)] {
        let s = orbit_stream(&g, &[q(0, 1), q(1, 3)], policy, 40).unwrap();
        assert!(!s.dead_end);
        assert_eq!(s.coords.len(), 40);
        for w in s.coords.windows(2) {
            assert!(g.member(w).unwrap());
        }
    }
    let corners = fixtures::four_corners();
    let s = orbit_stream(&corners, &[q(0, 1), q(1, 1)], OrbitPolicy::Lexicographic, 6).unwrap();
    let want: Vec<Scalar> = [0, 1, 0, 0, 0, 0].iter().map(|&v| q(v, 1)).collect();
    assert_eq!(s.coords, want);
}

#[test]
fn dimension_of_a_line_in_a_product() {
    let d = box_dimension(&fixtures::diagonal(), 3, &[2, 4, 8, 16], 100_000).unwrap();
    assert!((d.value.unwrap() - 1.0).abs() < 1e-9);
    let s = box_dimension(&fixtures::square(), 2, &[2, 4, 8], 1000).unwrap();
    assert!((s.value.unwrap() - 3.0).abs() < 1e-9);
}
