use crate::io::{parse_scenario, ScenarioRecord};

// (id, scenario text, expected pass)
static SCENARIOS: &[(&str, &str, bool)] = &[
    (
        "prop1_single",
        r#"{"profile": "hopf", "c1_squared": 9, "point_indices": [-4, -5],
            "surfaces": [{"id": "sigma", "n": 1, "chi": 9, "replacement_indices": [4, 5]}]}"#,
        true,
    ),
    (
        "prop1_two_surfaces",
        r#"{"profile": "hopf", "c1_squared": 13,
            "surfaces": [{"id": "sigma1", "n": 1, "chi": 1, "replacement_indices": [-1]},
                         {"id": "sigma2", "n": 2, "chi": 3, "replacement_indices": [-7, -5]}]}"#,
        true,
    ),
    (
        "prop1_inconsistent",
        r#"{"profile": "hopf", "c1_squared": 2,
            "surfaces": [{"id": "sigma1", "n": 1, "chi": 1, "replacement_indices": [1]},
                         {"id": "sigma2", "n": 1, "chi": 1, "replacement_indices": [-1]}]}"#,
        false,
    ),
    (
        "prop1_cp2_a1",
        r#"{"profile": "hopf", "c1_class": {"manifold": "cp2", "coords": [1]}, "point_indices": [-1],
            "surfaces": [{"id": "line", "n": 1, "transversal": true,
                          "chi_class": {"manifold": "cp2", "coords": [1]}, "replacement_indices": [1]}]}"#,
        true,
    ),
    (
        "prop1_cp2_a2",
        r#"{"profile": "hopf", "c1_class": {"manifold": "cp2", "coords": [2]}, "point_indices": [-4],
            "surfaces": [{"id": "conic", "n": 1, "transversal": true,
                          "chi_class": {"manifold": "cp2", "coords": [2]}, "replacement_indices": [1, 3]}]}"#,
        true,
    ),
    (
        "prop1_cp2_a3",
        r#"{"profile": "hopf", "c1_class": {"manifold": "cp2", "coords": [3]}, "point_indices": [-9],
            "surfaces": [{"id": "cubic", "n": 1, "transversal": true,
                          "chi_class": {"manifold": "cp2", "coords": [3]}, "replacement_indices": [2, 3, 4]}]}"#,
        true,
    ),
    (
        "prop1_thom_e1",
        r#"{"profile": "hopf", "c1_squared": 4, "point_indices": [-4],
            "surfaces": [{"id": "base", "n": 2, "thom_model": "thom_e1", "replacement_indices": [4]}]}"#,
        true,
    ),
    (
        "prop2_match",
        r#"{"profile": "su3_s4", "surfaces": [{"id": "sigma", "n": 1, "w2": 1, "replacement_indices": [1, 0, 0]}]}"#,
        true,
    ),
    (
        "prop2_mismatch",
        r#"{"profile": "su3_s4", "surfaces": [{"id": "sigma", "n": 1, "w2": 0, "replacement_indices": [1]}]}"#,
        false,
    ),
    (
        "prop2_zero_n",
        r#"{"profile": "su3_s4", "surfaces": [{"id": "sigma", "n": 0, "w2": 1, "replacement_indices": [1, 1]}]}"#,
        true,
    ),
    (
        "prop2_residual",
        r#"{"profile": "su3_s4", "surfaces": [{"id": "sigma", "n": 1, "w2": 1, "replacement_indices": [0]}]}"#,
        false,
    ),
    (
        "prop2_thom",
        r#"{"profile": "su3_s4", "surfaces": [{"id": "sigma", "n": 1, "thom_model": "thom_w2_1", "replacement_indices": [1]}]}"#,
        true,
    ),
];

pub(super) fn text(id: &str) -> Option<&'static str> {
    SCENARIOS.iter().find(|s| s.0 == id).map(|s| s.1)
}

pub(super) fn record(id: &str) -> Option<ScenarioRecord> {
    text(id).map(|t| parse_scenario(t).expect("bundled scenarios parse"))
}

pub(super) fn expectation(id: &str) -> Option<bool> {
    SCENARIOS.iter().find(|s| s.0 == id).map(|s| s.2)
}
