//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Every tolerance here is exact; a single mismatch fails the suite.

use std::time::Instant;

use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use hyperhull::bounds;
use hyperhull::exactmath::{int, quad_roots_floor, rat, rat_int, Int, Rat};
use hyperhull::factor;
use hyperhull::hull::{
    enumerate_hull, next_vertex_from_x, nextpt, prev_vertex, HullPath, NextResult,
};
use hyperhull::lattice::{standard_basis, AffineLattice, Basis2, Point2, Vec2};
use hyperhull::metrics;
use hyperhull::oracle;
use hyperhull::raycast::{raycast, StepCount};
use hyperhull::transform::{map_back, to_standard, BranchSelector, GeneralHyperbola};

/// Deterministic splitmix64; the suite must not depend on ambient entropy.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [lo, hi], inclusive.
    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + (self.next_u64() % ((hi - lo + 1) as u64)) as i64
    }
}

fn z2() -> AffineLattice {
    AffineLattice::z2()
}

fn assert_budgets_clean(context: &str) {
    assert_eq!(
        metrics::nextpt_budget_violations(),
        0,
        "{context}: a nextpt call exceeded its loop budget"
    );
    assert_eq!(
        metrics::raycast_budget_violations(),
        0,
        "{context}: a raycast exceeded its membership budget"
    );
}

#[test]
fn criterion_1_oracle_equivalence() {
    let started = Instant::now();
    for n in 1i64..=5000 {
        let level = rat_int(n);
        let walked = enumerate_hull(&level, &z2());
        let brute = oracle::brute_hull(&oracle::staircase(&level, &z2()).unwrap());
        assert_eq!(
            walked.points(),
            brute.points(),
            "hull mismatch at n={n}"
        );
        assert!(walked.is_strictly_convex_chain(), "convexity at n={n}");
    }
    assert_budgets_clean("criterion 1");
    assert!(
        started.elapsed().as_secs() < 120,
        "criterion 1 exceeded its 2-minute budget"
    );
    println!("acceptance criterion 1 (oracle equivalence, n <= 5000): PASS");
}

#[test]
fn criterion_2_named_values() {
    assert_eq!(bounds::count_vertices(&int(1)), 1);
    assert_eq!(bounds::count_vertices(&int(4)), 3);
    assert_eq!(bounds::count_vertices(&int(14)), 6);

    let chain = enumerate_hull(&rat_int(14), &z2());
    let expect: Vec<Point2> = [(1, 14), (2, 7), (3, 5), (5, 3), (7, 2), (14, 1)]
        .iter()
        .map(|&(x, y)| Point2::ints(x, y))
        .collect();
    assert_eq!(chain.points(), &expect[..]);

    // (4, 4) is a staircase point but collinear between (3, 5) and (5, 3).
    let st = oracle::staircase(&rat_int(14), &z2()).unwrap();
    assert!(st.points().contains(&Point2::ints(4, 4)));
    assert!(!chain.points().contains(&Point2::ints(4, 4)));

    assert_budgets_clean("criterion 2");
    println!("acceptance criterion 2 (named values V(1)=1, V(4)=3, V(14)=6): PASS");
}

#[test]
fn criterion_3_bound_scan() {
    let started = Instant::now();
    let mut rows = 0u64;
    let mut last_n = 0u64;
    bounds::scan(1, 100_000, |r| {
        rows += 1;
        assert!(r.lower_ok && r.upper_ok, "bound failed at n={}", r.n);
        assert!(r.n > last_n, "scan out of order at n={}", r.n);
        last_n = r.n;
    })
    .expect("scan must complete without violations");
    assert_eq!(rows, 100_000);
    assert_budgets_clean("criterion 3");
    assert!(
        started.elapsed().as_secs() < 600,
        "criterion 3 exceeded its 10-minute budget"
    );
    println!("acceptance criterion 3 (bound scan 1..=100000): PASS");
}

#[test]
fn criterion_4_distribution_lower_bound() {
    for n in 1i64..=2000 {
        let chain = enumerate_hull(&rat_int(n), &z2());
        let cbrt = n.cbrt();
        for line in 1..=cbrt {
            let line = rat_int(line);
            assert!(
                chain.points().iter().any(|p| p.x == line),
                "no vertex on column x={line} for n={n}"
            );
            assert!(
                chain.points().iter().any(|p| p.y == line),
                "no vertex on row y={line} for n={n}"
            );
        }
    }
    assert_budgets_clean("criterion 4");
    println!("acceptance criterion 4 (columns/rows 1..n^(1/3) hold vertices, n <= 2000): PASS");
}

#[test]
fn criterion_5_complexity_instrumentation() {
    // The budget check lives inside nextpt itself: on reduced lattices with
    // the query point outside the band y in (1,2), exceeding
    // 3*log2(n + det + 2) + 12 loop iterations panics in debug builds and
    // bumps a global violation counter in all builds. Drive a mixed reduced
    // workload here; every other criterion re-asserts the same counters.
    assert!(
        cfg!(debug_assertions),
        "acceptance must run with debug assertions armed"
    );

    let parity = AffineLattice::new(
        Point2::origin(),
        &Basis2::new(Vec2::ints(1, 1), Vec2::ints(0, 2)).unwrap(),
    );
    let half = AffineLattice::z2_at(Point2::new(rat_int(0), rat(1, 2)));
    let skew = AffineLattice::new(
        Point2::origin(),
        &Basis2::new(Vec2::ints(1, 3), Vec2::ints(0, 5)).unwrap(),
    );
    for lat in [z2(), parity, half, skew] {
        assert!(lat.is_reduced_sublattice());
        for n in 1i64..=400 {
            let level = rat_int(n);
            let chain = enumerate_hull(&level, &lat);
            assert!(chain.is_strictly_convex_chain(), "n={n}");
        }
    }
    for n in [999i64, 1500, 4999] {
        let level = rat_int(n);
        enumerate_hull(&level, &z2());
        next_vertex_from_x(&level, &z2(), &rat_int(n / 2));
    }
    // Non-reduced lattices take the unbudgeted path but must still finish.
    let doubled = AffineLattice::new(
        Point2::origin(),
        &Basis2::new(Vec2::ints(2, 0), Vec2::ints(0, 2)).unwrap(),
    );
    assert!(!doubled.is_reduced_sublattice());
    for n in 1i64..=60 {
        enumerate_hull(&rat_int(n), &doubled);
    }

    assert_budgets_clean("criterion 5");
    println!("acceptance criterion 5 (nextpt loop iterations within 3*log2(n+det+2)+12): PASS");
}

fn ceil_log2(m: u64) -> u64 {
    debug_assert!(m >= 1);
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros() as u64
    }
}

#[test]
fn criterion_6_next_vertex_from_x() {
    for n in 1u64..=2000 {
        let level = rat_int(n as i64);
        let chain = enumerate_hull(&level, &z2());
        let call_budget = 2 * (ceil_log2(n + 1) + 2) + 4;
        for xs in 1..=(n + 1) {
            let xs = rat_int(xs as i64);
            let want = chain
                .points()
                .iter()
                .find(|p| p.x >= xs)
                .cloned()
                .map(NextResult::Finite)
                .unwrap_or(NextResult::Infinite);
            let before = metrics::snapshot();
            let got = next_vertex_from_x(&level, &z2(), &xs);
            let used = metrics::snapshot().since(&before);
            assert_eq!(got, want, "n={n} x_start={xs}");
            let calls = used.nextpt_calls + used.prev_vertex_calls;
            assert!(
                calls <= call_budget,
                "n={n} x_start={xs}: {calls} calls > budget {call_budget}"
            );
        }
    }
    assert_budgets_clean("criterion 6");
    println!("acceptance criterion 6 (next-from-x equals chain filter, n <= 2000): PASS");
}

/// Checks that `chain` is exactly the vertex chain of the region points in
/// the scanned box: strict convex position, every region point on or left of
/// every supporting line, and the unbounded edges clean.
fn assert_chain_supports_box_points(n: &Rat, lat: &AffineLattice, chain: &HullPath) {
    let first = chain.points().first().unwrap();
    let last = chain.points().last().unwrap();
    let st = oracle::staircase(n, lat).unwrap();
    for col in st.points() {
        // Every staircase point (and hence every region lattice point, which
        // sits above one) lies in the half-planes of all chain edges.
        for e in chain.points().windows(2) {
            let edge = e[1].sub_point(&e[0]);
            let off = col.sub_point(&e[0]);
            assert!(
                !edge.cross(&off).is_negative(),
                "staircase point {col} below edge {}-{}",
                e[0],
                e[1]
            );
        }
        assert!(col.x >= first.x, "point left of the vertical tail");
        assert!(col.y >= last.y, "point below the horizontal tail");
    }
}

#[test]
fn criterion_7_general_hyperbola_roundtrip() {
    // (a, b, c) families with Δ = 1 and Δ = 2; positive branch via a sample
    // deep inside the component.
    for (a, b, c) in [(1i64, 3, 2), (1, 2, 0)] {
        for n in 1i64..=200 {
            let h = GeneralHyperbola::new(
                int(a),
                int(b),
                int(c),
                Rat::zero(),
                Rat::zero(),
                rat_int(n),
            )
            .unwrap();
            let sample = Point2::ints(n + 1, n + 1);
            let sp = to_standard(&h, &BranchSelector::Sample(sample)).unwrap();

            let standard = enumerate_hull(sp.n_prime(), sp.lattice());
            let brute =
                oracle::brute_hull(&oracle::staircase(sp.n_prime(), sp.lattice()).unwrap());
            assert_eq!(
                standard.points(),
                brute.points(),
                "standard-side mismatch a={a} b={b} c={c} n={n}"
            );
            assert_chain_supports_box_points(sp.n_prime(), sp.lattice(), &standard);

            let original = map_back(&sp, &standard).unwrap();
            let brute_back = map_back(&sp, &brute).unwrap();
            assert_eq!(original.points(), brute_back.points());
            for v in &original {
                assert!(v.x.is_integer() && v.y.is_integer());
                assert!(h.eval(v) >= rat_int(n), "vertex outside component");
                let roundtrip = sp.back().apply_point(&sp.forward().apply_point(v));
                assert_eq!(&roundtrip, v);
            }

            if (a, b, c) == (1, 2, 0) && n == 6 {
                assert_eq!(original.len(), 4, "x(x+2y) >= 6 must have 4 vertices");
            }
        }
    }
    assert_budgets_clean("criterion 7");
    println!("acceptance criterion 7 (general hyperbola round-trip, n <= 200): PASS");
}

#[test]
fn criterion_8_factorization() {
    // Hull divisors equal trial division everywhere at desk scale.
    for n in 1i64..=10_000 {
        let got = factor::divisors_via_hull(&int(n)).divisors;
        let mut want: Vec<Int> = Vec::new();
        for d in 1..=n {
            if n % d == 0 {
                want.push(int(d));
            }
        }
        assert_eq!(got, want, "divisors mismatch at n={n}");
    }

    // Chunk-count invariance of the reported divisor.
    for n in 2i64..=10_000 {
        let baseline = factor::find_factor(&int(n), 1);
        for chunks in [2u32, 4, 8] {
            assert_eq!(
                factor::find_factor(&int(n), chunks),
                baseline,
                "chunk variance at n={n} chunks={chunks}"
            );
        }
    }

    // A pseudo-random 12-digit composite factors in under five seconds.
    let mut rng = Rng::new(0x5EED_0001);
    let six_digit_prime = |rng: &mut Rng| -> i64 {
        loop {
            let c = rng.range(317_000, 999_999) | 1;
            let mut is_prime = true;
            let mut d = 3i64;
            while d * d <= c {
                if c % d == 0 {
                    is_prime = false;
                    break;
                }
                d += 2;
            }
            if is_prime {
                return c;
            }
        }
    };
    let p = six_digit_prime(&mut rng);
    let q = six_digit_prime(&mut rng);
    let n = int(p) * int(q);
    assert!(n >= int(10).pow(11), "n must have 12 digits");
    let started = Instant::now();
    let found = factor::find_factor(&n, 4).expect("composite must yield a factor");
    let elapsed = started.elapsed();
    assert_eq!(found, int(p.min(q)));
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "12-digit factorization took {elapsed:?}"
    );

    assert_budgets_clean("criterion 8");
    println!(
        "acceptance criterion 8 (factorization; {p}*{q} in {:.2}s): PASS",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_9_property_suites() {
    assert!(cfg!(debug_assertions), "search-basis asserts must be armed");

    // Root floors against the independent bisection oracle.
    let mut rng = Rng::new(0x5EED_0002);
    for case in 0..10_000 {
        let a = rat(rng.range(-60, 60), rng.range(1, 8));
        let b = rat(rng.range(-60, 60), rng.range(1, 8));
        let c = rat(rng.range(-60, 60), rng.range(1, 8));
        let got = quad_roots_floor(&a, &b, &c);
        let (count, floors, degenerate) = oracle::naive_root_floors(&a, &b, &c);
        assert_eq!(
            (got.count, &got.floors, got.degenerate),
            (count, &floors, degenerate),
            "case {case}: quad {a} {b} {c}"
        );
    }

    // Ray cast against the literal scanner.
    let mut rng = Rng::new(0x5EED_0003);
    for case in 0..10_000 {
        let n = rat(rng.range(1, 200), rng.range(1, 4));
        let p = Point2::new(
            rat(rng.range(-20, 20), rng.range(1, 3)),
            rat(rng.range(-20, 20), rng.range(1, 3)),
        );
        let vden = if rng.range(0, 9) < 7 { 1 } else { 2 };
        let v = Vec2::new(
            rat(rng.range(-5, 5), vden),
            rat(rng.range(-5, 5), vden),
        );
        if v.is_zero() {
            continue;
        }
        let budget = naive_budget(&n, &p, &v);
        let got = raycast(&n, &p, &v);
        let naive = oracle::naive_raycast(&n, &p, &v, budget + 50);
        match (got, naive) {
            (StepCount::Finite(m), oracle::NaiveStep::Hit(h)) => {
                assert_eq!(m, Int::from(h), "case {case}")
            }
            (StepCount::Infinite, oracle::NaiveStep::NoHitWithinBudget) => {}
            (got, naive) => panic!("case {case}: raycast {got:?} vs naive {naive:?}"),
        }
    }

    // Standard bases span the same lattice and are canonical.
    let mut rng = Rng::new(0x5EED_0004);
    let mut checked = 0;
    while checked < 1000 {
        let w1 = Vec2::new(
            rat(rng.range(-12, 12), rng.range(1, 4)),
            rat(rng.range(-12, 12), rng.range(1, 4)),
        );
        let w2 = Vec2::new(
            rat(rng.range(-12, 12), rng.range(1, 4)),
            rat(rng.range(-12, 12), rng.range(1, 4)),
        );
        let Ok(basis) = Basis2::new(w1.clone(), w2.clone()) else {
            continue;
        };
        checked += 1;
        let s = standard_basis(&basis);
        assert!(s.b1().x.is_positive());
        assert!(s.b2().x.is_zero() && s.b2().y.is_positive());
        assert!(!s.b1().y.is_negative() && s.b1().y < s.b2().y);
        assert!(s.contains_vector(&w1) && s.contains_vector(&w2));
        // And conversely both standard vectors lie in the original lattice.
        let det = basis.w1().cross(basis.w2());
        for v in [s.b1(), s.b2()] {
            let alpha = v.cross(basis.w2()) / &det;
            let beta = basis.w1().cross(v) / &det;
            assert!(alpha.is_integer() && beta.is_integer());
        }
        let again = standard_basis(&Basis2::new(s.b1().clone(), s.b2().clone()).unwrap());
        assert_eq!(&again, &s);
    }

    // Search-basis loop invariants are asserted on every iteration of every
    // debug-mode walk; exercise them across lattices once more.
    let half = AffineLattice::z2_at(Point2::new(rat_int(0), rat(1, 2)));
    for lat in [z2(), half] {
        for n in [3i64, 14, 97, 360, 1999] {
            let level = rat_int(n);
            let chain = enumerate_hull(&level, &lat);
            for pair in chain.points().windows(2) {
                assert_eq!(
                    nextpt(&level, &lat, &pair[0]),
                    NextResult::Finite(pair[1].clone())
                );
                assert_eq!(
                    prev_vertex(&level, &lat, &pair[1]),
                    NextResult::Finite(pair[0].clone())
                );
            }
        }
    }

    assert_budgets_clean("criterion 9");
    println!("acceptance criterion 9 (property suites, >= 10^4 root/raycast cases): PASS");
}

/// Independent upper bound on where a ray's membership can still flip: past
/// every root of the product quadratic and every coordinate zero, all three
/// membership predicates are constant.
fn naive_budget(n: &Rat, p: &Point2, v: &Vec2) -> u64 {
    let a = &v.x * &v.y;
    let b = &v.x * &p.y + &v.y * &p.x;
    let c = &p.x * &p.y - n;
    let mut bound = Rat::one();
    if !a.is_zero() {
        let rb = Rat::one() + (b.abs() + c.abs()) / a.abs();
        if rb > bound {
            bound = rb;
        }
    } else if !b.is_zero() {
        let rb = Rat::one() + c.abs() / b.abs();
        if rb > bound {
            bound = rb;
        }
    }
    for (num, den) in [(&p.x, &v.x), (&p.y, &v.y)] {
        if !den.is_zero() {
            let z = num.abs() / den.abs();
            if z > bound {
                bound = z;
            }
        }
    }
    let b = bound.ceil().to_integer();
    b.to_u64().unwrap_or(u64::MAX / 2) + 3
}
