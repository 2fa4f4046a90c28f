use vosa::affinevoa::*;
use vosa::c2::*;
use vosa::linalg::int;
use vosa::realizations::{make_osp1_2n, make_sl1n};
use vosa::Error;

#[test]
fn low_grades_are_empty() {
    let m = build_vacuum_for(&make_sl1n(2).unwrap(), int(1), 3);
    assert_eq!(c2_grade(&m, 0).unwrap().rank(), 0);
    assert_eq!(c2_grade(&m, 1).unwrap().rank(), 0);
    assert!(matches!(c2_grade(&m, 4), Err(Error::CutoffExceeded { .. })));
}

#[test]
fn x_minus_two_lies_in_c2() {
    let r = make_osp1_2n(1).unwrap();
    let m = build_vacuum_for(&r, int(1), 3);
    let c2 = c2_grade(&m, 2).unwrap();
    assert_eq!(c2.rank(), r.algebra.dim());
    for x in 0..r.algebra.dim() {
        let s = m.mode_action(x, -2, &m.vacuum()).unwrap();
        assert!(c2.reduce(&s.vec).unwrap().is_zero());
    }
}

#[test]
fn engine_matches_brute_force() {
    let r = make_osp1_2n(1).unwrap();
    let v = build_vacuum_for(&r, int(1), 4);
    let l = simple_quotient(&r, &int(1), 4).unwrap().module;
    for m in [&v, &l] {
        for g in 0..=4 {
            assert_eq!(
                c2_grade(m, g).unwrap(),
                c2_grade_brute_force(m, g).unwrap(),
                "grade {g}"
            );
        }
    }
    let s = make_sl1n(2).unwrap();
    let l = simple_quotient(&s, &int(1), 4).unwrap().module;
    for g in 0..=4 {
        assert_eq!(
            c2_grade(&l, g).unwrap(),
            c2_grade_brute_force(&l, g).unwrap()
        );
    }
}

#[test]
fn ranks_do_not_depend_on_cutoff() {
    let r = make_osp1_2n(1).unwrap();
    for n in 3..=4 {
        let a = c2_report(&simple_quotient(&r, &int(1), n).unwrap().module).unwrap();
        let b = c2_report(&simple_quotient(&r, &int(1), n + 1).unwrap().module).unwrap();
        assert_eq!(a.rows[..], b.rows[..=n]);
    }
}

#[test]
fn osp12_level_one_quotient_is_finite() {
    // Frozen from the first computation.
    let q = simple_quotient(&make_osp1_2n(1).unwrap(), &int(1), 6).unwrap();
    let rep = c2_report(&q.module).unwrap();
    let quotient: Vec<usize> = rep.rows.iter().map(|r| r.quotient_dim).collect();
    assert_eq!(quotient, vec![1, 5, 4, 0, 0, 0, 0]);
    assert_eq!(rep.m0, Some(3));
    for r in &rep.rows {
        assert_eq!(r.quotient_dim + r.c2_rank, r.dim);
    }
}

#[test]
fn vacuum_module_quotient_persists() {
    let v = build_vacuum_for(&make_osp1_2n(1).unwrap(), int(1), 6);
    let rep = c2_report(&v).unwrap();
    let quotient: Vec<usize> = rep.rows.iter().map(|r| r.quotient_dim).collect();
    assert_eq!(quotient, vec![1, 5, 13, 25, 41, 61, 85]);
    assert_eq!(rep.m0, None);
}

#[test]
fn sl12_level_one_quotient_persists() {
    let q = simple_quotient(&make_sl1n(2).unwrap(), &int(1), 5).unwrap();
    let rep = c2_report(&q.module).unwrap();
    let quotient: Vec<usize> = rep.rows.iter().map(|r| r.quotient_dim).collect();
    assert_eq!(quotient, vec![1, 8, 16, 16, 16, 16]);
    assert_eq!(rep.m0, None);
    assert!(rep.table().contains("no m0 up to grade 5"));
}

#[test]
fn closure_lemmas_hold_on_samples() {
    let m = build_vacuum_for(&make_sl1n(2).unwrap(), int(1), 5);
    let rep = closure_checks(&m, 200, 1).unwrap();
    assert_eq!(rep.samples, 200);
    assert!(rep.violations.is_empty(), "{:?}", rep.violations);
    assert!(rep.skipped < 20);
    assert_eq!(rep, closure_checks(&m, 200, 1).unwrap());
}

#[test]
fn closure_lemmas_hold_in_the_quotient() {
    let q = simple_quotient(&make_osp1_2n(1).unwrap(), &int(1), 5).unwrap();
    let rep = closure_checks(&q.module, 100, 3).unwrap();
    assert!(rep.violations.is_empty(), "{:?}", rep.violations);
}

#[test]
fn power_coefficients_match_the_normally_ordered_field() {
    // Commuting modes give Y(e,z)^p = Y(e(-1)^p 1, z), so E_n = (e(-1)^p 1)_{n+p-1}.
    let r = make_osp1_2n(1).unwrap();
    let m = build_vacuum_for(&r, int(1), 5);
    let e = r.e_theta();
    for p in 1..=3usize {
        let u = theta_power(&m, e, p).unwrap();
        for g in 0..=2usize {
            for i in 0..m.pbw_dim(g) {
                let v = m.basis_state(g, i);
                for n in (g as i64 - 5 + p as i64)..=g as i64 {
                    let direct = power_coefficient(&m, e, p, n, &v).unwrap();
                    let field = m.field_coeff(&u, (n + p as i64 - 1) as i32, &v).unwrap();
                    assert_eq!(direct, field, "p = {p}, n = {n}");
                }
            }
        }
    }
}

#[test]
fn constant_term_on_vacuum() {
    // The z^0 coefficient of Y(e_θ,z)^{k+1}1 is e_θ(-1)^{k+1}1 plus C_2 terms.
    let r = make_osp1_2n(1).unwrap();
    let m = build_vacuum_for(&r, int(1), 4);
    for p in 2..=3usize {
        let c = power_coefficient(&m, r.e_theta(), p, -(p as i64), &m.vacuum()).unwrap();
        let rest = m.add(
            &c,
            &m.scale(&theta_power(&m, r.e_theta(), p).unwrap(), &int(-1)),
        );
        assert!(c2_grade(&m, p)
            .unwrap()
            .reduce(&rest.vec)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn theta_field_is_nilpotent_on_osp12() {
    let r = make_osp1_2n(1).unwrap();
    let q = simple_quotient(&r, &int(1), 5).unwrap();
    assert!(nilpotency_check(&q.module, r.e_theta(), 2).unwrap());
    assert!(!nilpotency_check(&q.module, r.e_theta(), 1).unwrap());
    assert!(matches!(
        nilpotency_check(&q.module, r.e_theta(), 6),
        Err(Error::Untestable(6))
    ));
}

#[test]
fn short_root_field_needs_t_plus_one() {
    let r = make_osp1_2n(2).unwrap();
    let q = simple_quotient(&r, &int(1), 4).unwrap();
    let short = r
        .positive_roots()
        .into_iter()
        .find(|&a| r.t_value(a) == Some(int(2)))
        .expect("osp(1|4) has short even roots");
    let e = r.roots.roots[short].vector;
    assert!(nilpotency_check(&q.module, e, 3).unwrap());
    assert!(!nilpotency_check(&q.module, e, 2).unwrap());
}

#[test]
fn odd_root_vectors_are_rejected() {
    let r = make_osp1_2n(1).unwrap();
    let q = simple_quotient(&r, &int(1), 3).unwrap();
    let odd = (0..r.algebra.dim())
        .find(|&x| !r.algebra.basis_bracket(x, x).is_zero())
        .unwrap();
    assert!(matches!(
        nilpotency_check(&q.module, odd, 2),
        Err(Error::InvalidArgument(_))
    ));
}
