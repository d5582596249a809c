//! Property tests for the structural invariants: conjugation invariance of
//! the matrix obstructions, span/matrix validity agreement, normal-form
//! round trips, reduction spectra, and probe monotonicity.

mod common;

use common::*;
use proptest::prelude::*;

use planecvx::complex::Cplx;
use planecvx::decide::{decide, Outcome};
use planecvx::hullprobe::{sample_planes, separate_point, SeparationStatus};
use planecvx::mat2::{commutator_det, triple_trace_obstruction, Mat2, SpectrumKind};
use planecvx::normalform::pairwise_reduce;
use planecvx::planes::{
    is_totally_real_span, same_plane, to_weinstock_form, PlaneSpan, WeinstockFamily,
};
use planecvx::scalar::{rat, Rat, Scalar};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn arb_mat() -> impl Strategy<Value = Mat2<Rat>> {
    (arb_rat(), arb_rat(), arb_rat(), arb_rat())
        .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
}

fn arb_invertible() -> impl Strategy<Value = Mat2<Rat>> {
    arb_mat().prop_filter("invertible", |t| !t.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// det[A, B] is invariant under simultaneous conjugation.
    #[test]
    fn commutator_det_conjugation_invariant(
        a in arb_mat(),
        b in arb_mat(),
        t in arb_invertible(),
    ) {
        let ti = t.inverse().unwrap();
        let ac = t.mul(&a).mul(&ti);
        let bc = t.mul(&b).mul(&ti);
        prop_assert_eq!(commutator_det(&a, &b), commutator_det(&ac, &bc));
    }

    /// Tr(ABC - CBA) is invariant under simultaneous conjugation and flips
    /// sign when the outer arguments swap.
    #[test]
    fn triple_trace_structure(
        a in arb_mat(),
        b in arb_mat(),
        c in arb_mat(),
        t in arb_invertible(),
    ) {
        let obstruction = triple_trace_obstruction(&a, &b, &c);
        let ti = t.inverse().unwrap();
        let conj = |m: &Mat2<Rat>| t.mul(m).mul(&ti);
        prop_assert_eq!(
            obstruction.clone(),
            triple_trace_obstruction(&conj(&a), &conj(&b), &conj(&c))
        );
        prop_assert_eq!(-obstruction, triple_trace_obstruction(&c, &b, &a));
    }

    /// The span of the columns of A + iI is a totally-real plane exactly
    /// when the matrix passes the spectral validity test.
    #[test]
    fn span_validity_matches_matrix(a in arb_mat()) {
        prop_assert_eq!(
            is_totally_real_span(&PlaneSpan::from_matrix(&a)),
            a.is_totally_real()
        );
    }

    /// Scaling the spanning vectors of a raw plane leaves the normal form
    /// untouched.
    #[test]
    fn normal_form_ignores_span_scaling(
        a in arb_mat().prop_filter("totally real", |m| m.is_totally_real()),
        s1 in (-6i64..=6).prop_filter("nonzero", |v| *v != 0),
        s2 in (-6i64..=6).prop_filter("nonzero", |v| *v != 0),
    ) {
        let span = PlaneSpan::from_matrix(&a);
        let scaled = PlaneSpan::new(
            [span.v1[0].scale(&rat(s1, 1)), span.v1[1].scale(&rat(s1, 1))],
            [span.v2[0].scale(&rat(s2, 1)), span.v2[1].scale(&rat(s2, 1))],
        );
        let f1 = to_weinstock_form(&[PlaneSpan::base(), span], 0).unwrap();
        let f2 = to_weinstock_form(&[PlaneSpan::base(), scaled], 0).unwrap();
        prop_assert_eq!(f1.matrices, f2.matrices);
    }
}

/// Normalizing the image of a family under a complex-linear change of
/// coordinates recovers planes equal, as subspaces, to the originals
/// (conjugated when the base plane was presented in a skewed real basis).
#[test]
fn weinstock_reconstruction_under_complex_changes() {
    let mut r = rng(23);
    for _ in 0..200 {
        let mats: Vec<Mat2<Rat>> = (0..int_in(&mut r, 1, 3) as usize)
            .map(|_| totally_real_mat(&mut r, 4, 3))
            .collect();
        // Random invertible complex change of coordinates.
        let change = loop {
            let entry =
                |r: &mut common::Rng| Cplx::new(rat_in(r, 3, 2), rat_in(r, 3, 2));
            let l = planecvx::complex::CMat2::new(
                entry(&mut r),
                entry(&mut r),
                entry(&mut r),
                entry(&mut r),
            );
            if !l.det().is_zero() {
                break l;
            }
        };
        let map = |s: &PlaneSpan<Rat>| {
            PlaneSpan::new(change.mul_vec(&s.v1), change.mul_vec(&s.v2))
        };
        let mut spans = vec![map(&PlaneSpan::base())];
        for a in &mats {
            spans.push(map(&PlaneSpan::from_matrix(a)));
        }
        let back = to_weinstock_form(&spans, 0).unwrap();
        // With the base given in standard coordinates the recovery is
        // exact; the invariant tested here is subspace equality of the
        // reconstructed planes with the C-linear image relation.
        assert_eq!(back.matrices.len(), mats.len());
        for (b, a) in back.matrices.iter().zip(&mats) {
            assert_eq!(b, a, "normalization altered a plane");
        }
        // Subspace sanity: the normal-form span equals the change image
        // mapped back.
        let inv = change.inv().unwrap();
        for (b, s) in back.matrices.iter().zip(spans.iter().skip(1)) {
            let pulled = PlaneSpan::new(inv.mul_vec(&s.v1), inv.mul_vec(&s.v2));
            assert!(same_plane(&PlaneSpan::from_matrix(b), &pulled));
        }
    }
}

/// Under the reduction hypotheses (vanishing commutator determinant, first
/// matrix non-real) the reduced matrix has a conjugate spectrum, and the
/// second matrix is forced to be non-real or scalar.
#[test]
fn pairwise_reduction_spectra() {
    let mut r = rng(29);
    let mut scalars = 0;
    for _ in 0..300 {
        let t = invertible_mat(&mut r, 3, 2);
        let a1 = rotation_mat(&mut r, 4, 3);
        let a2 = if int_in(&mut r, 0, 4) == 0 {
            let c = rat_in(&mut r, 3, 2);
            Mat2::diag(c.clone(), c) // scalar member
        } else {
            rotation_mat(&mut r, 4, 3)
        };
        if a1.sub(&a2).det().is_zero() {
            continue;
        }
        let pair = conjugate_all(&[a1, a2], &t);
        assert!(commutator_det(&pair[0], &pair[1]).is_zero());
        let b = pairwise_reduce(&pair[0], &pair[1]).unwrap();
        let kind = b.spectrum().kind;
        assert!(
            kind == SpectrumKind::ComplexConjugate || b.is_scalar(),
            "reduced matrix has kind {kind:?}"
        );
        if pair[1].is_scalar() {
            scalars += 1;
        }
    }
    assert!(scalars > 10, "scalar second members underexercised");
}

/// The separation level never increases with the polynomial degree and is
/// stable against moderate sample-count growth.
#[test]
fn probe_monotonicity() {
    let fam = WeinstockFamily::new(vec![Mat2::<Rat>::from_i64([[2, 1], [1, 1]])]);
    let queries = [
        [0.3, 0.0, 0.0, 0.4],
        [-0.5, 0.0, 0.0, 0.2],
        [0.0, 0.3, 0.4, 0.0],
    ];
    let cloud = sample_planes(&fam, 1.0, 1200, 33);
    for q in queries {
        let mut last = f64::INFINITY;
        for degree in [1usize, 2, 3, 4] {
            let res = separate_point(&cloud, q, degree, 16, 0.05).unwrap();
            assert!(
                res.t_star <= last + 1e-7,
                "degree {degree} raised the level: {} > {last}",
                res.t_star
            );
            last = res.t_star;
        }
    }
    // Denser sampling cannot make separation easier (statistically: the
    // optimum over a richer sample set dominates up to sampling noise).
    let sparse = sample_planes(&fam, 1.0, 300, 33);
    let dense = sample_planes(&fam, 1.0, 3000, 33);
    let mut sparse_sum = 0.0;
    let mut dense_sum = 0.0;
    for q in queries {
        sparse_sum += separate_point(&sparse, q, 3, 16, 0.05).unwrap().t_star;
        dense_sum += separate_point(&dense, q, 3, 16, 0.05).unwrap().t_star;
    }
    assert!(
        dense_sum >= sparse_sum - 0.02,
        "denser cloud lowered the level: {dense_sum} < {sparse_sum}"
    );
}

/// Decisions agree between the convex verdict and an end-to-end probe on a
/// handful of families (smoke-level cross-validation of the two routes).
#[test]
fn decide_and_probe_agree_on_easy_cases() {
    let fam = WeinstockFamily::new(vec![Mat2::<Rat>::from_i64([[1, 0], [0, 2]])]);
    let v = decide(&fam).unwrap();
    assert_eq!(v.outcome, Outcome::Convex);
    let cloud = sample_planes(&fam, 1.0, 800, 3);
    let res = separate_point(&cloud, [0.0, 0.0, 0.0, 0.6], 4, 16, 0.05).unwrap();
    assert_eq!(res.status, SeparationStatus::Separated);

    // A plane failing the two-plane criterion: its own points never
    // separate, consistent with a fat hull.
    let bad = WeinstockFamily::new(vec![Mat2::<Rat>::from_i64([[0, -2], [2, 0]])]);
    let v = decide(&bad).unwrap();
    assert_eq!(v.outcome, Outcome::NotConvex);
}

/// Fuzz the whole pipeline on arbitrary totally-real families: the
/// decision never errs on valid input, is deterministic, convex verdicts
/// carry self-verifying certificates, negative ones carry witnesses, and
/// undecided ones explain themselves in the trace.
#[test]
fn decide_fuzz_arbitrary_families() {
    let mut r = rng(4242);
    let mut outcomes = [0usize; 3];
    for case in 0..3000 {
        let size = int_in(&mut r, 1, 4) as usize;
        let spread = int_in(&mut r, 2, 8);
        let denom = int_in(&mut r, 1, 4);
        let fam = WeinstockFamily::new(
            (0..size)
                .map(|_| totally_real_mat(&mut r, spread, denom))
                .collect(),
        );
        let v = decide(&fam).unwrap_or_else(|e| panic!("case {case}: decide errored: {e}"));
        let again = decide(&fam).unwrap();
        assert_eq!(v.outcome, again.outcome);
        assert_eq!(v.rule, again.rule);
        match v.outcome {
            Outcome::Convex => {
                outcomes[0] += 1;
                let cert = v.certificate.as_ref().expect("certificate attached");
                let report = planecvx::certify::verify_certificate(cert);
                assert!(report.ok, "case {case}: {:?}", report.reasons);
                assert!(v
                    .trace
                    .iter()
                    .any(|t| t.check == "certificate.self-check" && t.pass));
            }
            Outcome::NotConvex => {
                outcomes[1] += 1;
                assert!(v.witness.is_some(), "case {case}: no witness");
                assert!(v.certificate.is_none());
            }
            Outcome::Undecided => {
                outcomes[2] += 1;
                assert!(
                    v.trace.iter().any(|t| !t.pass),
                    "case {case}: undecided without a failed hypothesis in the trace"
                );
            }
        }
    }
    // All three outcomes must actually occur in the mix.
    assert!(outcomes.iter().all(|&n| n > 50), "outcomes skewed: {outcomes:?}");
}

/// Both roots of the rescaling quadratic give the same symmetrized
/// determinant, exactly, when the roots are rational.
#[test]
fn quadratic_roots_agree_exactly_on_rational_instances() {
    let mut r = rng(31);
    for _ in 0..100 {
        // Equal diagonal makes the quadratic mu^2 - 1 with roots +-1.
        let m = rat_in(&mut r, 4, 3);
        let a2 = Mat2::new(
            m.clone(),
            rat_in(&mut r, 4, 3),
            rat_in(&mut r, 4, 3),
            m.clone(),
        );
        if (a2.e[0][1].clone() + a2.e[1][0].clone()).is_zero() {
            continue;
        }
        let dets: Vec<Rat> = [rat(1, 1), rat(-1, 1)]
            .into_iter()
            .map(|mu| {
                let g = Mat2::new(mu.clone(), rat(-1, 1), rat(1, 1), mu);
                let m2 = g.mul(&a2).mul(&g.inverse().unwrap());
                let sym = m2.add(&m2.transpose());
                sym.det()
            })
            .collect();
        assert_eq!(dets[0], dets[1]);
    }
}
