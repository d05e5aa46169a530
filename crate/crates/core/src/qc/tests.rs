use super::*;
use crate::cayley::{enumerate_ball, DEFAULT_NODE_CAP};
use crate::group::{free_abelian_cyclic, heisenberg_center, FreeAbelianGroup, HeisenbergElem, HeisenbergGroup};

fn z2() -> (FreeAbelianGroup<i64>, Ball<FreeAbelianGroup<i64>>) {
    let g = FreeAbelianGroup::<i64>::new(2).unwrap();
    let ball = enumerate_ball(g.clone(), 14, DEFAULT_NODE_CAP).unwrap();
    (g, ball)
}

fn q(n: u64) -> QcParam {
    QcParam::from_integer(n)
}

#[test]
fn axis_is_flat() {
    let (g, ball) = z2();
    let sub = free_abelian_cyclic(&g, "axis", vec![1, 0]);
    let rep = quasiconvexity_report(&ball, &sub, &(1..=12).collect::<Vec<_>>(), 4).unwrap();
    assert!(rep.rows.iter().all(|r| r.m == 0 && r.exactness.is_exact()));
    let e = geodesic_excursion(&ball, &sub, &g.element(&[5, 0]), 4).unwrap();
    assert_eq!((e.value, e.geodesic_vertices), (0, 6));
}

#[test]
fn diagonal_excursion_matches_box_oracle() {
    let (g, ball) = z2();
    let sub = free_abelian_cyclic(&g, "diagonal", vec![1, 1]);
    for k in 0..=6i64 {
        let h = g.element(&[k, k]);
        // geodesics from 0 to (k,k) fill the box [0,k]²; (x,y) is |x−y| from the diagonal
        let oracle = (0..=k).flat_map(|x| (0..=k).map(move |y| (x - y).unsigned_abs())).max().unwrap();
        let e = geodesic_excursion(&ball, &sub, &h, 8).unwrap();
        assert_eq!(e.value, oracle);
        assert_eq!(e.geodesic_vertices, ((k + 1) * (k + 1)) as usize);
        assert!(verify_geodesic_vertices(&ball, &h).unwrap().is_empty());
        assert_eq!(e.value, geodesic_excursion(&ball, &sub, &g.element(&[-k, -k]), 8).unwrap().value);
    }
    let rep = quasiconvexity_report(&ball, &sub, &(1..=12).collect::<Vec<_>>(), 8).unwrap();
    for r in &rep.rows {
        assert_eq!(r.m, r.n as u64 / 2);
    }
    assert!(rep.rows.windows(2).all(|w| w[0].m <= w[1].m));
}

#[test]
fn whole_group_has_no_excursion() {
    let g = HeisenbergGroup::<i64>::new();
    let ball = enumerate_ball(g.clone(), 6, DEFAULT_NODE_CAP).unwrap();
    let rep = quasiconvexity_report(&ball, &MarkedSubgroup::whole(&g), &[1, 2, 3, 4], 2).unwrap();
    assert!(rep.rows.iter().all(|r| r.m == 0));
}

#[test]
fn heisenberg_center_against_brute_force() {
    let g = HeisenbergGroup::<i64>::new();
    let sub = heisenberg_center(&g);
    let ball = enumerate_ball(g.clone(), 12, DEFAULT_NODE_CAP).unwrap();
    let len = |e: &HeisenbergElem<i64>| ball.word_length(e).exact();
    for n in 1..=3i64 {
        let h = g.central(n * n);
        let lh = len(&h).unwrap();
        // every ball vertex with |v| + |v⁻¹h| = |h|, and its distance to the centre by scanning the ball
        let brute = ball
            .iter()
            .filter(|(v, l)| len(&g.mul(&g.inv(v), &h)).is_some_and(|r| l + r == lh))
            .map(|(v, _)| {
                ball.iter()
                    .filter(|(c, _)| c.is_central())
                    .filter_map(|(c, _)| len(&g.mul(&g.inv(v), c)))
                    .min()
                    .unwrap() as u64
            })
            .max()
            .unwrap();
        let e = geodesic_excursion(&ball, &sub, &h, 4).unwrap();
        assert_eq!(e.value, brute, "n = {n}");
        assert!(e.exactness.is_exact());
        assert!(verify_geodesic_vertices(&ball, &h).unwrap().is_empty());
        assert_eq!(e.value, geodesic_excursion(&ball, &sub, &g.inv(&h), 4).unwrap().value);
    }
    assert_eq!(geodesic_excursion(&ball, &sub, &g.identity(), 4).unwrap().value, 0);
    assert_eq!(geodesic_excursion(&ball, &sub, &HeisenbergElem::new(1, 0, 0), 4).unwrap_err(), Error::NotInSubgroup);
}

#[test]
fn unit_quasi_geodesics_are_geodesics() {
    let (g, ball) = z2();
    for (dir, k) in [(vec![1, 1], 1), (vec![1, 1], 2), (vec![1, 1], 3), (vec![1, 0], 3)] {
        let sub = free_abelian_cyclic(&g, "s", dir.clone());
        let h = g.element(&[dir[0] * k, dir[1] * k]);
        let geo = geodesic_excursion(&ball, &sub, &h, 8).unwrap();
        let qg = quasi_geodesic_excursion(&ball, &sub, q(1), q(0), &g.identity(), &h, 100_000, 8, 1).unwrap();
        assert!(qg.complete);
        assert_eq!(qg.value, geo.value);
    }
}

#[test]
fn detours_for_the_axis() {
    let (g, ball) = z2();
    let sub = free_abelian_cyclic(&g, "axis", vec![1, 0]);
    let e = g.identity();
    let r = quasi_geodesic_excursion(&ball, &sub, q(1), q(0), &e, &e, 10, 4, 0).unwrap();
    assert_eq!(r.value, 0);
    let r = quasi_geodesic_excursion(&ball, &sub, q(3), q(0), &e, &g.element(&[2, 0]), 1_000_000, 4, 9).unwrap();
    assert!(r.complete);
    assert!(r.value >= 1);
    assert!(is_quasi_geodesic(&ball, &r.path, q(3), q(0)).unwrap());
    let capped = quasi_geodesic_excursion(&ball, &sub, q(3), q(0), &e, &g.element(&[2, 0]), 3, 4, 9).unwrap();
    assert!(!capped.complete);
    assert_eq!(
        quasi_geodesic_excursion(&ball, &sub, q(3), q(0), &e, &g.element(&[2, 0]), 1_000_000, 4, 9).unwrap(),
        r
    );
}

#[test]
fn staircase_witness() {
    let (g, ball) = z2();
    let sub = free_abelian_cyclic(&g, "axis", vec![1, 0]);
    for k in 1..=6i64 {
        let mut path = vec![g.element(&[0, 0])];
        for i in 0..k {
            path.push(g.element(&[i + 1, i]));
            path.push(g.element(&[i + 1, i + 1]));
        }
        for i in 0..k {
            path.push(g.element(&[k + i + 1, k - i]));
            path.push(g.element(&[k + i + 1, k - i - 1]));
        }
        assert_eq!(path.last().unwrap(), &g.element(&[2 * k, 0]));
        assert_eq!(verify_witness_path(&ball, &sub, &path, q(3), q(0), 8).unwrap(), Some(k as u64));
        assert!(!is_quasi_geodesic(&ball, &path, q(1), q(0)).unwrap());
    }
    let bad = vec![g.element(&[0, 0]), g.element(&[2, 0])];
    assert_eq!(verify_witness_path(&ball, &sub, &bad, q(3), q(0), 8).unwrap(), None);
}
