use miura_core::critical::{is_fertile, is_generic, PolyTuple, ProblemData};
use miura_core::exactalg::{rat, ratio, wronskian, Poly, RatFunc, Rational};
use miura_core::liedata::{cartan_data, shifted_action, Family, Weight, WeylWord};
use miura_core::miura::{deform, miura_from_tuple, riccati_residual, riccati_solutions, twist_field, TwistedFunc};
use miura_core::population::{descend, reproduce_path, Projective};
use miura_core::solutions::{default_rep, solution_general_path};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| *q != rat(0))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..=max_degree + 1).prop_map(Poly::from_coeffs)
}

fn family_rank() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (1usize..=4).prop_map(|r| (Family::A, r)),
        (2usize..=3).prop_map(|r| (Family::B, r)),
        (2usize..=3).prop_map(|r| (Family::C, r)),
        Just((Family::D, 4)),
        Just((Family::G, 2)),
        Just((Family::F, 4)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(f in poly(4), g in poly(4), h in poly(3)) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!((&f * &g).derivative(), &(&f.derivative() * &g) + &(&f * &g.derivative()));
        if !h.is_zero() {
            let (q, r) = f.div_rem(&h).unwrap();
            prop_assert_eq!(&(&q * &h) + &r, f.clone());
            prop_assert!(r.is_zero() || r.deg() < h.deg());
        }
    }

    #[test]
    fn wronskian_identities(f in poly(4), g in poly(4), h in poly(2)) {
        prop_assert_eq!(wronskian(&f, &g), -wronskian(&g, &f));
        prop_assert_eq!(wronskian(&(&h * &f), &(&h * &g)), &(&h * &h) * &wronskian(&f, &g));
        prop_assert!(wronskian(&f, &f).is_zero());
    }

    #[test]
    fn twisted_derivation_rule(
        f in poly(3), g in poly(3),
        q1 in (-6i64..6, 1i64..4), q2 in (-6i64..6, 1i64..4),
    ) {
        let p = ProblemData::new(
            cartan_data(Family::A, 2).unwrap(),
            vec![Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 2])],
            vec![rat(0), rat(1)],
        ).unwrap();
        let k = twist_field(&p);
        let a = TwistedFunc::term(&k, RatFunc::from_poly(f), &[ratio(q1.0, q1.1), rat(0)]);
        let b = TwistedFunc::term(&k, RatFunc::from_poly(g), &[rat(0), ratio(q2.0, q2.1)]);
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!((&a + &b).derivative(), &a.derivative() + &b.derivative());
    }

    #[test]
    fn shifted_action_is_an_action(
        (family, rank) in family_rank(),
        letters in prop::collection::vec(0usize..8, 0..6),
        coords in prop::collection::vec(-3i64..4, 8),
    ) {
        let c = cartan_data(family, rank).unwrap();
        let letters: Vec<usize> = letters.into_iter().map(|l| l % rank).collect();
        let lambda = Weight::from_ints(&coords[..rank]);
        let w = WeylWord::new(letters.clone());
        let once = shifted_action(&w, &lambda, &c).unwrap();
        // s_i s_i = 1 and the word acts letter by letter
        let mut doubled = letters.clone();
        for &l in letters.iter().rev() {
            doubled.push(l);
        }
        let back = shifted_action(&WeylWord::new(doubled), &lambda, &c).unwrap();
        let inverse: Vec<usize> = letters.iter().rev().copied().collect();
        let undone = shifted_action(&WeylWord::new(inverse), &once, &c).unwrap();
        prop_assert_eq!(undone, lambda.clone());
        let mut stepwise = lambda.clone();
        for &l in letters.iter().rev() {
            stepwise = shifted_action(&WeylWord::new(vec![l]), &stepwise, &c).unwrap();
        }
        prop_assert_eq!(stepwise, once);
        prop_assert_eq!(back, lambda);
    }

    #[test]
    fn braid_relations_hold(
        (family, rank) in family_rank(),
        i in 0usize..8, j in 0usize..8,
        coords in prop::collection::vec(-3i64..4, 8),
    ) {
        let c = cartan_data(family, rank).unwrap();
        let (i, j) = (i % rank, j % rank);
        prop_assume!(i != j);
        let m = match c.a[i][j] * c.a[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        };
        let lhs: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
        let rhs: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
        let lambda = Weight::from_ints(&coords[..rank]);
        prop_assert_eq!(
            shifted_action(&WeylWord::new(lhs), &lambda, &c).unwrap(),
            shifted_action(&WeylWord::new(rhs), &lambda, &c).unwrap()
        );
    }

    #[test]
    fn riccati_members_solve(c in small_rational(), i in 0usize..2) {
        let p = ProblemData::new(
            cartan_data(Family::A, 2).unwrap(),
            vec![Weight::from_ints(&[0, 1]), Weight::from_ints(&[1, 0])],
            vec![rat(0), rat(1)],
        ).unwrap();
        let y = PolyTuple::from_roots(&[vec![ratio(2, 3)], vec![ratio(1, 3)]]);
        let d = miura_from_tuple(&y, &p).unwrap();
        let family = riccati_solutions(&d, i).unwrap();
        let g = family.member(&c).unwrap();
        prop_assert!(riccati_residual(&g, i, &d).is_zero());
        let deformed = deform(&d, i, &g).unwrap();
        if let Some((t, _)) = &deformed.provenance {
            if is_generic(t, &p).is_generic() {
                prop_assert_eq!(&miura_from_tuple(t, &p).unwrap().h_coords, &deformed.h_coords);
            }
        }
    }

    #[test]
    fn fertility_propagates(
        indices in prop::collection::vec(0usize..2, 1..4),
        params in prop::collection::vec(nonzero_rational(), 4),
    ) {
        let p = ProblemData::new(
            cartan_data(Family::B, 2).unwrap(),
            vec![Weight::from_ints(&[0, 1]), Weight::from_ints(&[1, 0])],
            vec![rat(0), rat(1)],
        ).unwrap();
        let mut y = PolyTuple::from_roots(&[vec![ratio(3, 5)], vec![ratio(1, 5)]]);
        for (&i, c) in indices.iter().zip(&params) {
            y = descend(&y, i, &Projective::affine(c.clone()), &p).unwrap();
            if is_generic(&y, &p).is_generic() {
                prop_assert!(is_fertile(&y, &p));
            }
        }
    }

    #[test]
    fn general_solutions_along_random_paths(
        indices in prop::collection::vec(0usize..2, 1..4),
        params in prop::collection::vec(nonzero_rational(), 4),
    ) {
        let p = ProblemData::new(
            cartan_data(Family::A, 2).unwrap(),
            vec![Weight::from_ints(&[0, 1]), Weight::from_ints(&[1, 0])],
            vec![rat(0), rat(1)],
        ).unwrap();
        let y = PolyTuple::from_roots(&[vec![ratio(2, 3)], vec![ratio(1, 3)]]);
        let params: Vec<Projective> = params.into_iter().take(indices.len()).map(Projective::affine).collect();
        let path = reproduce_path(&y, &indices, &params, &p).unwrap();
        let v = solution_general_path(&path, &default_rep(&p).unwrap(), &p).unwrap();
        prop_assert!(v.exponents_in_lattice());
    }
}
