use pmbisect::{
    problems, solve, DerivativeMode, IntervalBox, NormKind, SolverConfig, Status, SystemDef,
};

fn run(p: problems::Problem, cfg: &SolverConfig) -> pmbisect::SolveResult {
    solve(&p.system(), &p.initial_box(), cfg).unwrap()
}

#[test]
fn accepted_boxes_nest_and_halve() {
    for p in problems::TESTING_MAPS {
        let r = run(p, &SolverConfig::default());
        for w in r.trace.records.windows(2) {
            let (outer, inner) = (&w[0].bbox, &w[1].bbox);
            assert!(inner.is_subset_of(outer), "{}", p.name);
            for (a, b) in outer.dims().iter().zip(inner.dims()) {
                let half = (a.hi() - a.lo()) / 2.0;
                let got = b.hi() - b.lo();
                assert!((got - half).abs() <= 2.0 * f64::EPSILON * a.hi().abs().max(a.lo().abs()));
            }
            assert_eq!(w[1].k, w[0].k + 1);
        }
    }
}

#[test]
fn runs_are_deterministic() {
    for p in [problems::F3, problems::F6] {
        let a = run(p, &SolverConfig::default());
        let b = run(p, &SolverConfig::default());
        assert_eq!(a, b);
    }
}

#[test]
fn converged_centers_satisfy_the_tolerance() {
    for p in problems::TESTING_MAPS {
        let r = run(p, &SolverConfig::default());
        if r.status == Status::Converged {
            let v = p.system().eval(&r.root).unwrap();
            assert!(NormKind::Two.apply(&v) <= 1e-15);
            assert!(r.final_box.contains_point(&r.root));
        }
    }
}

#[test]
fn centers_stay_within_the_error_bound_of_the_final_center() {
    for p in problems::TESTING_MAPS {
        let r = run(p, &SolverConfig::default());
        let k0 = p.initial_box();
        let last = r.iterations as u32;
        for rec in &r.trace.records {
            let d = rec
                .center
                .iter()
                .zip(&r.root)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let bound = pmbisect::error_bound(&k0, rec.k as u32) + pmbisect::error_bound(&k0, last);
            assert!(d <= bound, "{} k={}", p.name, rec.k);
        }
    }
}

#[test]
fn preconditioning_records_match_the_trace() {
    let r = run(problems::F3, &SolverConfig::default());
    let from_records: usize = r.trace.records.iter().map(|rec| rec.preconditionings).sum();
    assert_eq!(from_records, r.preconditionings);
    assert_eq!(r.trace.events.len(), r.preconditionings);
    for e in &r.trace.events {
        let rec = &r.trace.records[e.k - 1];
        assert!(rec.preconditioned());
        assert_eq!(e.system.center_used(), Some(rec.center.as_slice()));
        assert!(rec.passes.iter().skip(1).all(|p| p.after_preconditioning));
    }
}

#[test]
fn norm_choice_does_not_change_the_example_path() {
    for norm in [NormKind::Inf, NormKind::One, NormKind::Two] {
        let cfg = SolverConfig {
            norm,
            ..SolverConfig::with_delta(1e-5)
        };
        let r = run(problems::EXAMPLE1, &cfg);
        assert_eq!(r.iterations, 17);
    }
}

#[test]
fn finite_difference_mode_solves_the_example() {
    let cfg = SolverConfig {
        derivative_mode: DerivativeMode::PaperFd,
        ..SolverConfig::with_delta(1e-10)
    };
    let r = run(problems::EXAMPLE1, &cfg);
    assert_eq!(r.status, Status::Converged);
    assert_eq!(r.iterations, 34);
}

#[test]
fn three_dimensional_system() {
    let s = SystemDef::parse(
        &["x", "y", "z"],
        &["x+0.1*y*z-0.5", "y-0.2*sin(x)-0.4", "z+0.1*x^2-0.6"],
        None,
    )
    .unwrap();
    let k0 = IntervalBox::from_bounds(&[(0.0, 1.0); 3]).unwrap();
    let r = solve(&s, &k0, &SolverConfig::with_delta(1e-12)).unwrap();
    assert_eq!(r.status, Status::Converged);
    assert!(r.trace.records[0].passes[0].subcubes.len() <= 8);
    let v = s.eval(&r.root).unwrap();
    assert!(v.iter().all(|x| x.abs() <= 1e-12));
}

#[test]
fn explicit_and_numeric_jacobians_give_the_same_roots() {
    for p in problems::TESTING_MAPS {
        let a = run(p, &SolverConfig::default());
        let b = solve(
            &p.system_without_jacobian(),
            &p.initial_box(),
            &SolverConfig::default(),
        )
        .unwrap();
        for (x, y) in a.root.iter().zip(&b.root) {
            assert!((x - y).abs() < 1e-12, "{}", p.name);
        }
    }
}
