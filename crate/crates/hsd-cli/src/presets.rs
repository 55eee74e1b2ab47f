//! Named configurations. `acceptance` bundles several experiments, each
//! written to its own subdirectory.

const OPTIMAL_RATE: &str = r#"
experiment = "optimal_rate"

[model]
a_inf = 1.0
delta = 1e-3

[sweep]
epsilon = [4e-3, 2e-3, 1e-3]
tau2 = [4e-3, 2e-3, 1e-3]
x = [1.0]
"#;

const GLOBAL_RATE: &str = r#"
experiment = "global_rate"
seed = 7

[model]
a_inf = 1.0

[scheme]
nu = 10
nu_ref = 14

[initial_data]
name = "random_bv"
tv = 0.5
pieces = 20

[sweep]
mu = [8e-3, 4e-3, 2e-3, 1e-3]
x = [0.5, 1.0, 2.0]
"#;

const RIEMANN_SINGLE: &str = r#"
experiment = "riemann_single"

[model]
a_inf = 1.0
epsilon = 4e-3
tau2 = 4e-3

[initial_data]
name = "riemann"
rho_l = 1.0
v_l = 0.1
rho_r = 1.2
v_r = -0.05
y0 = -1.0

[sweep]
x = [0.5, 1.0]
"#;

const FRONT_TRACKING_RUN: &str = r#"
experiment = "front_tracking_run"

[model]
a_inf = 1.0
epsilon = 2e-3
tau2 = 2e-3

[scheme]
nu = 10

[initial_data]
name = "n_wave"
amplitude = 0.1
pieces = 8

[sweep]
x = [0.5, 1.0]
"#;

const ASYMPTOTIC_CHECKS: &str = r#"
experiment = "asymptotic_checks"

[sweep]
a_inf = [0.5, 1.0, 2.0]
delta = [1e-3, 4e-4, 1.6e-4, 6.4e-5, 2.5e-5, 1e-5]
eps_ratio = 1.0
tau_ratio = 0.5
"#;

const SEMIGROUP_CHECK: &str = r#"
experiment = "semigroup_check"

[model]
a_inf = 1.0
epsilon = 4e-3
tau2 = 4e-3

[scheme]
nu = 10
functional_h = 1e-3
functional_samples = 16

[initial_data]
name = "n_wave"
amplitude = 0.1
pieces = 2

[sweep]
nu = [8, 10, 12]
x = [0.5, 1.0]
"#;

const ACCEPTANCE_OPTIMAL_A1: &str = r#"
[acceptance]
eps_coefficient = 0.375
tau2_coefficient = 1.5
rel_tol = 0.1
u_slope = [0.9, 1.1]
"#;

const ACCEPTANCE_OPTIMAL_A2: &str = r#"
[acceptance]
eps_coefficient = 0.3125
tau2_coefficient = 0.3125
rel_tol = 0.1
u_slope = [0.9, 1.1]
"#;

const ACCEPTANCE_GLOBAL: &str = r#"
[acceptance]
slope = [0.9, 1.1]
u_slope = [0.9, 1.1]
x_slope_max = 1.1
"#;

const ACCEPTANCE_ASYMPTOTIC: &str = r#"
[acceptance]
slope = [0.9, 1.1]
"#;

pub const NAMES: [&str; 7] =
    ["optimal_rate", "global_rate", "riemann_single", "front_tracking_run", "asymptotic_checks", "semigroup_check", "acceptance"];

/// Config texts of a preset as `(subdirectory, text)`; a single member
/// uses an empty subdirectory.
pub fn preset(name: &str) -> Option<Vec<(String, String)>> {
    let single = |text: &str| Some(vec![(String::new(), text.to_string())]);
    match name {
        "optimal_rate" => single(OPTIMAL_RATE),
        "global_rate" => single(GLOBAL_RATE),
        "riemann_single" => single(RIEMANN_SINGLE),
        "front_tracking_run" => single(FRONT_TRACKING_RUN),
        "asymptotic_checks" => single(ASYMPTOTIC_CHECKS),
        "semigroup_check" => single(SEMIGROUP_CHECK),
        "acceptance" => Some(vec![
            ("optimal_rate_a1".into(), format!("{OPTIMAL_RATE}{ACCEPTANCE_OPTIMAL_A1}")),
            ("optimal_rate_a2".into(), format!("{}{ACCEPTANCE_OPTIMAL_A2}", OPTIMAL_RATE.replace("a_inf = 1.0", "a_inf = 2.0"))),
            ("global_rate".into(), format!("{GLOBAL_RATE}{ACCEPTANCE_GLOBAL}")),
            ("asymptotic_checks".into(), format!("{ASYMPTOTIC_CHECKS}{ACCEPTANCE_ASYMPTOTIC}")),
        ]),
        _ => None,
    }
}
