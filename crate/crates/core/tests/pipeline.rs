use tailcovar::experiments::naive_covar;
use tailcovar::{
    covar_estimate, true_covar, CovarEstimate, FamilyKind, ModelSpec, PairedSample, SchemeSpec,
    Tuning, WeightScheme,
};

fn scheme(kind: FamilyKind) -> WeightScheme {
    let spec = match kind {
        FamilyKind::ParetoMixture => SchemeSpec::pareto_mixture_default(),
        FamilyKind::InvertedHuslerReiss => SchemeSpec::inverted_husler_reiss_default(),
    };
    WeightScheme::new(spec, kind.family()).unwrap()
}

#[test]
fn estimate_survives_csv_and_json_round_trips() {
    let model = ModelSpec::Model2 { theta: 0.93 };
    let sample = model.sample(3000, 17).unwrap();
    let mut buf = Vec::new();
    sample.write_csv(&mut buf).unwrap();
    let back = PairedSample::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back, sample);

    let kind = model.family_kind();
    let est = covar_estimate(&back, Tuning::uniform(0.05, 600), kind.family(), &scheme(kind)).unwrap();
    let json = serde_json::to_string(&est).unwrap();
    let parsed: CovarEstimate = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed, est);
}

#[test]
fn estimates_are_scale_equivariant_in_y() {
    let model = ModelSpec::Model1 { theta1: 0.85, theta2: 0.45 };
    let sample = model.sample(4000, 23).unwrap();
    let kind = model.family_kind();
    let s = scheme(kind);
    let t = Tuning::uniform(0.05, 800);
    let base = covar_estimate(&sample, t, kind.family(), &s).unwrap();
    let scaled = covar_estimate(&sample.map_y(|y| 4.0 * y).unwrap(), t, kind.family(), &s).unwrap();
    assert!((scaled.covar_hat / base.covar_hat - 4.0).abs() < 1e-12);
    assert_eq!(scaled.theta_hat, base.theta_hat);
}

#[test]
fn both_estimators_land_near_the_truth_for_model2() {
    let model = ModelSpec::Model2 { theta: 0.95 };
    let kind = model.family_kind();
    let s = scheme(kind);
    let reps = 40;
    let (mut prop, mut naive) = (0.0, 0.0);
    for rep in 0..reps {
        let sample = model.sample(5000, 4000 + rep).unwrap();
        prop += covar_estimate(&sample, Tuning::uniform(0.05, 1500), kind.family(), &s)
            .unwrap()
            .covar_hat;
        naive += naive_covar(&sample, 0.05).unwrap();
    }
    let truth = true_covar(&model, 0.05).unwrap();
    let (prop, naive) = (prop / reps as f64, naive / reps as f64);
    // sd of a single estimate is roughly 6 (proposed) and 10 (naive)
    assert!((prop - truth).abs() < 3.0 * 6.0 / (reps as f64).sqrt() + 2.0, "{prop} vs {truth}");
    assert!((naive - truth).abs() < 3.0 * 10.5 / (reps as f64).sqrt() + 4.0, "{naive} vs {truth}");
}
