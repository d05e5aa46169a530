use super::*;
use crate::distortion::check_cell;

fn sqrt_f(r: u64) -> u64 {
    SourceFamily::Sqrt.eval(r)
}

/// Smallest `m` with `m^k ≥ z`, by counting up.
fn brute_root(z: u64, k: u32) -> u64 {
    (0..).find(|m: &u64| m.pow(k) >= z).unwrap()
}

#[test]
fn ceil_roots() {
    for z in 0..2000 {
        for k in 1..=4 {
            assert_eq!(ceil_root(z, k), brute_root(z, k), "z={z} k={k}");
        }
    }
    let p = power_length(2).unwrap();
    assert_eq!((p.eval(9).unwrap(), p.eval(10).unwrap(), p.eval(-10).unwrap()), (3, 4, 4));
    let p = power_length(1).unwrap();
    assert!((-50..=50).all(|z| p.eval(z).unwrap() == z.unsigned_abs()));
    assert!(power_length(0).is_err());
}

#[test]
fn families() {
    assert_eq!(SourceFamily::parse("power:3").unwrap(), SourceFamily::Power(3));
    assert_eq!(SourceFamily::parse("log-scaled").unwrap().eval(8), 4);
    assert_eq!(SourceFamily::LogScaled.eval(7), 3);
    assert!(SourceFamily::parse("power:0").is_err());
    assert!(SourceFamily::parse("cube").is_err());
}

#[test]
fn sqrt_builder_properties() {
    let ell = build_ell(&sqrt_f, "sqrt", 3, 2000).unwrap();
    assert_eq!(ell.breakpoints[0], 1);
    assert_eq!(ell.eval(1).unwrap(), 1);
    assert_eq!(ell.eval(0).unwrap(), 0);
    let cert = certify(&ell, &sqrt_f, 2000, 0, 0);
    assert!(cert.holds(3), "{cert:?}");

    // plateau widths straight from the table
    for (i, &p) in ell.breakpoints.iter().enumerate() {
        let k = i as u64 + 1;
        let level = ell.eval(p as i64).unwrap();
        assert!((p..=k * p).all(|s| ell.eval(s as i64).unwrap() == level));
    }
}

#[test]
fn breakpoints_follow_threshold_rule() {
    let ell = build_ell(&sqrt_f, "sqrt", 4, 10_000).unwrap();
    let fact = [1u64, 1, 2, 6, 24];
    for k in 1..4usize {
        let p = ell.breakpoints[k];
        let kk = k as u64 + 1;
        // every r ≥ (k+1)p meets the bound; p − 1 would not (unless forced by k·p_k)
        assert!(((kk * p)..=10_000).all(|r| sqrt_f(r) * fact[k + 1] <= r));
        if p > k as u64 * ell.breakpoints[k - 1] {
            assert!(((kk * (p - 1))..=10_000).any(|r| sqrt_f(r) * fact[k + 1] > r));
        }
    }
    assert_eq!(ell.breakpoints, vec![1, 3, 14, 150]);
}

#[test]
fn builder_rejects_bad_sources() {
    assert!(matches!(build_ell(&|r| r + 1, "x", 3, 100), Err(Error::LengthPrecondition(_))));
    assert!(matches!(build_ell(&|r| if r == 5 { 1 } else { r.min(3) }, "x", 3, 100), Err(Error::LengthPrecondition(_))));
    assert!(matches!(build_ell(&sqrt_f, "sqrt", 5, 10_000), Err(Error::LengthPrecondition(_))));
}

#[test]
fn power_length_is_subadditive() {
    let ell = power_length(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let (m, n) = (rng.gen_range(0..1_000_000_000i64), rng.gen_range(0..1_000_000_000i64));
        assert!(ell.eval(m).unwrap() + ell.eval(n).unwrap() >= ell.eval(m + n).unwrap());
    }
    let cert = certify(&power_length(3).unwrap(), &|r| ceil_root(r, 3), 5000, 2000, 5);
    assert!(cert.holds(0));
}

#[test]
fn power_line_invariants() {
    let line = AbstractDistortedLine::new(power_length(2).unwrap());
    for m in 1..=60 {
        assert_eq!(line.delta(m).unwrap(), m * m);
        assert_eq!(line.nabla(m).unwrap(), m * m + 1);
    }
    for i in 1..=50 {
        assert!(line.mu(i, 4 * i).unwrap() <= 16);
    }
    assert_eq!(line.mu(3, 12).unwrap(), 16);
}

/// Shortest sums over `{±1..±c}` by plain dynamic programming.
fn dp_interval(c: u64, target: u64) -> u64 {
    let mut best = vec![u64::MAX; target as usize + 1];
    best[0] = 0;
    for t in 1..=target as usize {
        for s in 1..=(c as usize).min(t) {
            best[t] = best[t].min(best[t - s] + 1);
        }
    }
    best[target as usize]
}

#[test]
fn sqrt_line_breaks_bounded_ratios() {
    let ell = build_ell(&sqrt_f, "sqrt", 4, 10_000).unwrap();
    let line = AbstractDistortedLine::new(ell);
    let w = plateau_witnesses(&line).unwrap();
    assert_eq!(w.len(), 4);
    for x in &w {
        assert!(x.mu >= x.k as u64, "{x:?}");
        assert_eq!(x.mu, dp_interval(line.delta(x.m).unwrap(), line.delta(x.n).unwrap()));
    }
}

#[test]
fn abstract_sandwich() {
    let line = AbstractDistortedLine::new(build_ell(&sqrt_f, "sqrt", 3, 3000).unwrap());
    for m in 1..=20u32 {
        for n in 1..=40u32 {
            let c = check_cell(line.delta_at(m), line.delta_at(n), line.nabla_at(m), m, n, line.mu(m as u64, n as u64).unwrap())
                .unwrap();
            assert!(c.holds, "{c:?}");
        }
    }
}

#[test]
fn grid_exhaustion_is_reported() {
    let line = AbstractDistortedLine::new(build_ell(&sqrt_f, "sqrt", 2, 50).unwrap());
    assert!(matches!(line.delta(1000), Err(Error::GridExhausted { .. })));
    assert!(matches!(line.ell.eval(51), Err(Error::GridExhausted { .. })));
}
