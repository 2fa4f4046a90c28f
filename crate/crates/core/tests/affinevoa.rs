use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vosa::affinevoa::*;
use vosa::linalg::{frac, int, Scalar, Subspace};
use vosa::realizations::{make_osp1_2n, make_osp2_2n, make_sl1n, Realization};
use vosa::Error;

fn shipped() -> Vec<Realization> {
    vec![
        make_sl1n(2).unwrap(),
        make_sl1n(3).unwrap(),
        make_osp2_2n(1).unwrap(),
        make_osp2_2n(2).unwrap(),
        make_osp1_2n(1).unwrap(),
        make_osp1_2n(2).unwrap(),
    ]
}

fn in_range(m: &TruncatedModule, grade: i64) -> bool {
    grade >= 0 && grade <= m.cutoff() as i64
}

#[test]
fn grade_zero_and_one_dimensions() {
    for r in shipped() {
        let m = build_vacuum_for(&r, int(1), 2);
        assert_eq!(m.pbw_dim(0), 1);
        assert_eq!(m.pbw_dim(1), r.algebra.dim());
    }
}

#[test]
fn virasoro_relations_on_small_cutoff() {
    let r = make_sl1n(2).unwrap();
    let m = build_vacuum_for(&r, int(2), 4);
    let cd = conformal(&m).unwrap();
    for g in 0..=m.cutoff() as i64 {
        for i in 0..m.pbw_dim(g as usize) {
            let v = m.basis_state(g as usize, i);
            for a in -2..=2i32 {
                for b in -2..=2i32 {
                    let ga = g - a as i64;
                    let gb = g - b as i64;
                    let gab = g - (a + b) as i64;
                    if !(in_range(&m, ga) && in_range(&m, gb) && in_range(&m, gab)) {
                        continue;
                    }
                    let ab = virasoro(&m, &cd.omega, a, &virasoro(&m, &cd.omega, b, &v).unwrap())
                        .unwrap();
                    let ba = virasoro(&m, &cd.omega, b, &virasoro(&m, &cd.omega, a, &v).unwrap())
                        .unwrap();
                    let lhs = m.add(&ab, &m.scale(&ba, &int(-1)));
                    let mut rhs = m.scale(
                        &virasoro(&m, &cd.omega, a + b, &v).unwrap(),
                        &int((a - b) as i64),
                    );
                    if a + b == 0 {
                        let central = frac((a * a * a - a) as i64, 12) * &cd.c;
                        rhs = m.add(&rhs, &m.scale(&v, &central));
                    }
                    assert_eq!(lhs, rhs, "L({a}), L({b}) on grade {g} state {i}");
                }
            }
        }
    }
    assert_eq!(cd.c, cd.sugawara_c(&m));
}

#[test]
fn central_charge_of_osp12_level_one() {
    // Frozen from the vacuum commutator extraction.
    let m = build_vacuum_for(&make_osp1_2n(1).unwrap(), int(1), 2);
    let cd = conformal(&m).unwrap();
    assert_eq!(cd.h_dual, frac(3, 2));
    assert_eq!(cd.c, frac(2, 5));
    assert_eq!(cd.c, cd.sugawara_c(&m));
}

#[test]
fn translation_acts_as_derivative() {
    let r = make_osp1_2n(1).unwrap();
    let m = build_vacuum_for(&r, int(1), 5);
    let cd = conformal(&m).unwrap();
    for a in 0..=2usize {
        for i in 0..m.pbw_dim(a) {
            let u = m.basis_state(a, i);
            let du = virasoro(&m, &cd.omega, -1, &u).unwrap();
            for b in 0..=1usize {
                for j in 0..m.pbw_dim(b) {
                    let v = m.basis_state(b, j);
                    for n in -1..=2i32 {
                        let grade = (a + b) as i64 - n as i64;
                        if !in_range(&m, grade) {
                            continue;
                        }
                        let lhs = m.field_coeff(&du, n, &v).unwrap();
                        let rhs =
                            m.scale(&m.field_coeff(&u, n - 1, &v).unwrap(), &int(-(n as i64)));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn weight_one_structure_reproduces_the_algebra() {
    for r in shipped() {
        let g = &r.algebra;
        for k in [1, 2] {
            let m = build_vacuum_for(&r, int(k), 2);
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let (u, v) = (m.generator(i), m.generator(j));
                    let bracket = weight_one_bracket(&m, &u, &v).unwrap();
                    assert_eq!(bracket, m.weight_one(g.basis_bracket(i, j)).unwrap());
                    let form = weight_one_form(&m, &u, &v).unwrap();
                    assert_eq!(form, int(k) * g.basis_form(i, j));
                    let sign = g.parity(i).koszul(g.parity(j));
                    assert_eq!(form, sign * weight_one_form(&m, &v, &u).unwrap());
                }
            }
        }
    }
}

#[test]
fn field_of_generator_matches_mode_action() {
    let r = make_sl1n(2).unwrap();
    let m = build_vacuum_for(&r, int(1), 3);
    for x in 0..r.algebra.dim() {
        let u = m.generator(x);
        for g in 0..=3usize {
            for i in 0..m.pbw_dim(g) {
                let v = m.basis_state(g, i);
                for n in -3..=4i32 {
                    if !in_range(&m, g as i64 - n as i64) {
                        assert!(
                            matches!(m.field_coeff(&u, n, &v), Err(Error::CutoffExceeded { .. }))
                                || g as i64 - (n as i64) < 0
                        );
                        continue;
                    }
                    assert_eq!(
                        m.field_coeff(&u, n, &v).unwrap(),
                        m.mode_action(x, n, &v).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn commutator_formula_on_samples() {
    for r in shipped() {
        let m = build_vacuum_for(&r, int(1), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 100 {
            let (a, b, c) = (
                rng.gen_range(1..=2usize),
                rng.gen_range(1..=2usize),
                rng.gen_range(0..=2usize),
            );
            let (mm, n) = (rng.gen_range(-1..=1i32), rng.gen_range(-1..=1i32));
            let (a, b, c) = (a as i64, b as i64, c as i64);
            let top = a + b + c - (mm + n) as i64 - 2;
            let mid_v = c + b - n as i64 - 1;
            let mid_u = c + a - mm as i64 - 1;
            if !(top <= 4 && mid_u <= 4 && mid_v <= 4) {
                continue;
            }
            let pick = |rng: &mut ChaCha8Rng, g: i64| {
                let g = g as usize;
                m.basis_state(g, rng.gen_range(0..m.pbw_dim(g)))
            };
            let (u, v, w) = (pick(&mut rng, a), pick(&mut rng, b), pick(&mut rng, c));
            assert!(
                commutator_identity_check(&m, &u, &v, &w, mm, n).unwrap(),
                "{}",
                r.name
            );
            checked += 1;
        }
    }
}

#[test]
fn commutator_formula_trivial_cases() {
    let r = make_sl1n(2).unwrap();
    let m = build_vacuum_for(&r, int(1), 3);
    let one = m.vacuum();
    for mm in -1..=1 {
        for n in -1..=1 {
            assert!(commutator_identity_check(&m, &one, &one, &one, mm, n).unwrap());
        }
    }
    let (u, v) = (m.generator(r.e_theta()), m.generator(r.f_theta()));
    assert!(commutator_identity_check(&m, &u, &v, &one, 1, -1).unwrap());
}

#[test]
fn theta_power_is_singular() {
    for r in [make_sl1n(2).unwrap(), make_osp2_2n(1).unwrap()] {
        let m = build_vacuum_for(&r, int(1), 2);
        let raising = r.theta_raising();
        assert!(is_singular(&m, &m.vacuum(), &raising).unwrap());
        let s2 = theta_power(&m, r.e_theta(), 2).unwrap();
        assert!(!s2.is_zero());
        assert!(is_singular(&m, &s2, &raising).unwrap(), "{}", r.name);
        let s1 = theta_power(&m, r.e_theta(), 1).unwrap();
        assert!(!is_singular(&m, &s1, &raising).unwrap());
        // f_θ(1) e_θ(-1)1 = k(e_θ|f_θ)1.
        let back = m.mode_action(r.f_theta(), 1, &s1).unwrap();
        assert_eq!(
            back.vec.get(0),
            r.algebra.basis_form(r.f_theta(), r.e_theta()).clone()
        );
    }
}

#[test]
fn ideal_closure_trivial_generators() {
    let r = make_osp1_2n(1).unwrap();
    let m = build_vacuum_for(&r, int(1), 4);
    let full = ideal_closure(&m, &[m.vacuum()]).unwrap();
    let none = ideal_closure(&m, &[]).unwrap();
    for g in 0..=4 {
        assert_eq!(full[g].rank(), m.pbw_dim(g));
        assert_eq!(none[g].rank(), 0);
    }
}

#[test]
fn ideal_closure_is_closed() {
    for r in [
        make_sl1n(2).unwrap(),
        make_osp1_2n(1).unwrap(),
        make_osp2_2n(1).unwrap(),
    ] {
        let m = build_vacuum_for(&r, int(1), 4);
        let gen = theta_power(&m, r.e_theta(), 2).unwrap();
        let ideal = ideal_closure(&m, std::slice::from_ref(&gen)).unwrap();
        assert!(ideal[2].rank() >= 1);
        assert!(ideal[2].reduce(&gen.vec).unwrap().is_zero());
        assert!(is_closed(&m, &ideal).unwrap(), "{}", r.name);
    }
}

/// Independent saturation: apply every mode in range to every new vector
/// until nothing new appears.
fn saturate(m: &TruncatedModule, gen: &State) -> Vec<Subspace> {
    let n = m.cutoff() as i64;
    let mut spaces: Vec<Subspace> = (0..=m.cutoff())
        .map(|g| Subspace::zero(m.pbw_dim(g)))
        .collect();
    let mut work = vec![gen.clone()];
    while let Some(s) = work.pop() {
        let g = s.grade as usize;
        if spaces[g].reduce(&s.vec).unwrap().is_zero() {
            continue;
        }
        let mut rows = spaces[g].rows().to_vec();
        rows.push(s.vec.clone());
        spaces[g] = vosa::linalg::echelonize_dim(m.pbw_dim(g), &rows).unwrap();
        for x in 0..m.algebra().dim() {
            for k in (s.grade - n)..=s.grade {
                work.push(m.mode_action(x, k as i32, &s).unwrap());
            }
        }
    }
    spaces
}

#[test]
fn ideal_closure_matches_naive_saturation() {
    for r in [make_sl1n(2).unwrap(), make_osp1_2n(1).unwrap()] {
        let m = build_vacuum_for(&r, int(1), 3);
        let gen = theta_power(&m, r.e_theta(), 2).unwrap();
        assert_eq!(
            ideal_closure(&m, std::slice::from_ref(&gen)).unwrap(),
            saturate(&m, &gen),
            "{}",
            r.name
        );
    }
}

#[test]
fn simple_quotient_fixtures() {
    // Frozen from the saturation computation.
    let q = simple_quotient(&make_sl1n(2).unwrap(), &int(1), 5).unwrap();
    assert_eq!(q.module.pbw_dims(), vec![1, 8, 40, 160, 552, 1712]);
    assert_eq!(q.closure_ranks, vec![0, 0, 16, 88, 368, 1288]);
    assert_eq!(q.module.grade_dims(), vec![1, 8, 24, 72, 184, 424]);
    assert!(q.residual_singular.is_empty());

    let q = simple_quotient(&make_osp1_2n(1).unwrap(), &int(1), 6).unwrap();
    assert_eq!(q.module.grade_dims(), vec![1, 5, 9, 21, 42, 74, 131]);
    assert!(q.residual_singular.is_empty());

    let q = simple_quotient(&make_osp2_2n(1).unwrap(), &int(1), 4).unwrap();
    assert_eq!(q.module.grade_dims(), vec![1, 8, 24, 72, 184]);
}

#[test]
fn simple_quotient_dims_do_not_depend_on_cutoff() {
    for (r, n) in [
        (make_osp1_2n(1).unwrap(), 4),
        (make_sl1n(2).unwrap(), 3),
        (make_osp2_2n(1).unwrap(), 3),
    ] {
        let a = simple_quotient(&r, &int(1), n).unwrap().module.grade_dims();
        let b = simple_quotient(&r, &int(1), n + 1)
            .unwrap()
            .module
            .grade_dims();
        assert_eq!(a[..], b[..=n]);
    }
}

#[test]
fn simple_quotient_low_grades() {
    for r in shipped() {
        let q = simple_quotient(&r, &int(2), 2).unwrap();
        assert_eq!(q.module.grade_dim(0), 1);
        assert_eq!(q.module.grade_dim(1), r.algebra.dim());
    }
}

#[test]
fn simple_quotient_rejects_non_integer_level() {
    let r = make_sl1n(2).unwrap();
    for k in [frac(1, 2), int(0), int(-1)] {
        assert!(matches!(
            simple_quotient(&r, &k, 3),
            Err(Error::InvalidArgument(_))
        ));
    }
}

#[test]
fn cutoff_is_a_hard_error() {
    let r = make_sl1n(2).unwrap();
    let m = build_vacuum_for(&r, int(1), 2);
    let s = m.basis_state(2, 0);
    assert!(matches!(
        m.mode_action(0, -1, &s),
        Err(Error::CutoffExceeded {
            grade: 3,
            cutoff: 2
        })
    ));
    let u = m.generator(0);
    assert!(matches!(
        m.field_coeff(&u, -2, &u),
        Err(Error::CutoffExceeded { .. })
    ));
}

#[test]
fn zhu_products() {
    let r = make_osp1_2n(1).unwrap();
    let m = build_vacuum_for(&r, int(1), 5);
    let one = m.vacuum();
    for g in 0..=3usize {
        for i in 0..m.pbw_dim(g) {
            let v = m.basis_state(g, i);
            assert!(zhu_circle(&m, &one, &v).unwrap().is_empty());
            let star = zhu_star(&m, &one, &v).unwrap();
            assert_eq!(star.into_iter().collect::<Vec<_>>(), vec![(g as i64, v)]);
        }
    }
    for x in 0..r.algebra.dim() {
        let u = m.generator(x);
        let star = zhu_star(&m, &u, &one).unwrap();
        assert_eq!(star.into_values().collect::<Vec<_>>(), vec![u]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let a = rng.gen_range(0..=2usize);
        let b = rng.gen_range(0..=(4 - a));
        let u = m.basis_state(a, rng.gen_range(0..m.pbw_dim(a)));
        let v = m.basis_state(b, rng.gen_range(0..m.pbw_dim(b)));
        let circ = zhu_circle(&m, &u, &v).unwrap();
        let top = m.field_coeff(&u, -2, &v).unwrap();
        let got = circ
            .get(&((a + b + 1) as i64))
            .cloned()
            .unwrap_or_else(|| m.zero(top.grade));
        assert_eq!(got, top);
        assert!(circ.keys().all(|&g| g <= (a + b + 1) as i64));
    }
}

#[test]
fn critical_level_still_builds() {
    let r = make_sl1n(2).unwrap();
    let h: Scalar = r.algebra.dual_coxeter().unwrap();
    let m = build_vacuum_for(&r, -h, 2);
    assert!(m.is_critical().unwrap());
    assert!(matches!(conformal(&m), Err(Error::CriticalLevel(_))));
}
