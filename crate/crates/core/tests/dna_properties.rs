mod common;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tanglekit::dna::{
    format_observations, observe, parse_observations, safe_index, solve, sufficient_index, Machine,
    Observation, SearchBounds, SolveStatus,
};

fn machines(pmax: i64, rmax: i64) -> Vec<Machine> {
    let mut out = Vec::new();
    for p in 1..=pmax {
        for q in -(p - 1).max(1)..=(p - 1).max(1) {
            if q == 0 || num_integer::gcd(p, q) != 1 {
                continue;
            }
            for r in (-rmax..=rmax).filter(|&r| r != 0) {
                out.push(Machine::new(p, q, r).unwrap());
            }
        }
    }
    out
}

#[test]
fn every_solution_reproduces_the_observations() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    for _ in 0..300 {
        let p = rng.gen_range(1..=30i64);
        let q = rng.gen_range(-30..=30i64);
        if q == 0 || num_integer::gcd(p, q) != 1 {
            continue;
        }
        let m = Machine::new(
            p,
            q,
            rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 },
        )
        .unwrap();
        // A random increasing subset of indices.
        let all = observe(&m, 8);
        let obs: Vec<Observation> = all.into_iter().filter(|_| rng.gen_bool(0.6)).collect();
        if obs.is_empty() {
            continue;
        }
        let sol = solve(&obs, SearchBounds::default()).unwrap();
        assert!(
            sol.machines.iter().any(|c| c.machine == m) || sol.bounded,
            "{m} missing"
        );
        for c in &sol.machines {
            for o in &obs {
                assert_eq!(
                    c.machine.product_class(o.n),
                    o.class,
                    "{} at {}",
                    c.machine,
                    o.n
                );
            }
        }
    }
}

#[test]
fn corrected_bound_recovers_every_machine() {
    for m in machines(50, 5) {
        let n = safe_index(&m).unwrap();
        let sol = solve(&observe(&m, n), SearchBounds::default()).unwrap();
        assert_eq!(
            sol.unique(),
            Some(&m),
            "{m} observed to {n}: {:?}",
            sol.machines
        );
    }
}

/// The stated bound `N >= |q| - p/(qr)` is not enough: these pairs agree on
/// every product up to it.
#[test]
fn stated_bound_admits_twins() {
    let twins = [
        (
            Machine::new(2, 1, -1).unwrap(),
            Machine::new(2, -1, 1).unwrap(),
        ),
        (
            Machine::new(2, -1, 3).unwrap(),
            Machine::new(2, 3, -1).unwrap(),
        ),
        (
            Machine::new(10, -3, -1).unwrap(),
            Machine::new(10, -23, 1).unwrap(),
        ),
    ];
    for (m, twin) in twins {
        let n = sufficient_index(&m).unwrap();
        assert_eq!(observe(&m, n), observe(&twin, n), "{m} vs {twin}");
        let sol = solve(&observe(&m, n), SearchBounds::default()).unwrap();
        assert_eq!(sol.status, SolveStatus::Ambiguous);
        assert!(sol.machines.iter().any(|c| c.machine == twin));
        assert!(sol.machines.iter().all(|c| c.bound_met || c.machine != m));
    }
    let scanned = machines(50, 5);
    let short = scanned
        .iter()
        .filter(|m| {
            let n = sufficient_index(m).unwrap();
            solve(&observe(m, n), SearchBounds::default())
                .unwrap()
                .unique()
                != Some(*m)
        })
        .count();
    assert_eq!((short, scanned.len()), (586, 15480));
}

#[test]
fn too_few_observations_are_ambiguous() {
    let m = Machine::new(1, -3, 1).unwrap();
    let sol = solve(&observe(&m, 1), SearchBounds::default()).unwrap();
    assert_eq!(sol.status, SolveStatus::Ambiguous);
    assert!(sol.machines.len() > 1);
    let sol = solve(&observe(&m, 4), SearchBounds::default()).unwrap();
    assert_eq!(sol.unique(), Some(&m));
}

/// Agreement at `n = 0` and `n = 1` forces equal `p`. Pairs further out do
/// not.
#[test]
fn consecutive_pairs_and_p() {
    let ms = machines(20, 4);
    let mut mismatched = [0usize; 3];
    for n in 0..3u64 {
        let mut groups: HashMap<_, Vec<&Machine>> = HashMap::new();
        for m in &ms {
            groups
                .entry((m.product_class(n), m.product_class(n + 1)))
                .or_default()
                .push(m);
        }
        for g in groups.values() {
            mismatched[n as usize] += g.iter().filter(|m| m.p != g[0].p).count();
        }
    }
    assert_eq!(mismatched[0], 0);
    assert!(mismatched[1] > 0);
    let (a, b) = (
        Machine::new(7, -2, 1).unwrap(),
        Machine::new(13, 2, -4).unwrap(),
    );
    assert_eq!(a.product_class(1), b.product_class(1));
    assert_eq!(a.product_class(2), b.product_class(2));
}

#[test]
fn observation_files_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let p = rng.gen_range(1..=40i64);
        let q = rng.gen_range(-40..=40i64);
        if q == 0 || num_integer::gcd(p, q) != 1 {
            continue;
        }
        let m = Machine::new(p, q, rng.gen_range(1..=5)).unwrap();
        let text = format_observations(&m, 6);
        assert_eq!(parse_observations(&text).unwrap(), observe(&m, 6));
        let back: Machine = format!("{} {}", m.substrate(), m.r).parse().unwrap();
        assert_eq!(back, m);
    }
}
