//! Bulk property suites: seeded random-state batteries over the identities
//! the analytic formulas must satisfy.
//!
//! Sample `i` of a suite draws from seed `base + i`, and aggregation is an
//! order-independent fold, so serial and parallel runs produce identical
//! reports byte for byte.

use serde::Serialize;

use crate::exec::{map_indexed, Exec};
use crate::mat::Field;
use crate::qubit;
use crate::rebit;
use crate::roof::{roof_minimize, RoofConfig};
use crate::sample::{random_density, random_pure, random_pure_with, rng_for};
use crate::state::StateVector;
use crate::ubit;

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub samples: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl PropertyResult {
    fn from_residuals(name: &'static str, tol: f64, residuals: &[f64]) -> PropertyResult {
        let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
        let failures = residuals.iter().filter(|&&r| r > tol).count();
        PropertyResult {
            name,
            samples: residuals.len(),
            failures,
            max_residual,
            tol,
            pass: failures == 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    pub n: usize,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

fn finish(
    suite: &'static str,
    seed: u64,
    n: usize,
    properties: Vec<PropertyResult>,
) -> SuiteReport {
    let pass = properties.iter().all(|p| p.pass);
    SuiteReport {
        suite,
        seed,
        n,
        properties,
        pass,
    }
}

/// Residual of the four-term operator identity on random Gaussian pairs.
pub fn run_identity(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let residuals = map_indexed(exec, n, |i| {
        let mut rng = rng_for(seed.wrapping_add(i as u64));
        let a = random_pure_with(&mut rng, Field::Real, 2);
        let b = random_pure_with(&mut rng, Field::Real, 2);
        let av: Vec<f64> = a.amps().iter().map(|z| z.re).collect();
        let bv: Vec<f64> = b.amps().iter().map(|z| z.re).collect();
        ubit::identity_check(&av, &bv)
    });
    let prop = PropertyResult::from_residuals("operator_identity", 1e-12, &residuals);
    finish("identity", seed, n, vec![prop])
}

/// `tau_{A|BC} >= tau_{A|B} + tau_{A|C}` on random complex tripartite
/// pure states, with the pair tangles from the mixed-state formula, and
/// the residual part recovered by the hyperdeterminant:
/// `tau_{A|BC} - tau_{A|B} - tau_{A|C} = 4|d1 - 2 d2 + 4 d3|`.
pub fn run_monogamy(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let samples = map_indexed(exec, n, |i| {
        let psi = random_pure(Field::Complex, 3, seed.wrapping_add(i as u64));
        let tau_a_bc = qubit::bipartite_tangle_pure(&psi, 0).expect("pure tripartite");
        let tau_ab =
            qubit::mixed_tangle_2q(&psi.reduced(&[0, 1]).expect("reduction")).expect("pair tangle");
        let tau_ac =
            qubit::mixed_tangle_2q(&psi.reduced(&[0, 2]).expect("reduction")).expect("pair tangle");
        let violation = (tau_ab + tau_ac - tau_a_bc).max(0.0);
        let three = qubit::three_tangle(&psi).expect("three-tangle");
        let identity = (tau_a_bc - tau_ab - tau_ac - three).abs();
        (violation, identity)
    });
    let violations: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let identities: Vec<f64> = samples.iter().map(|s| s.1).collect();
    finish(
        "monogamy",
        seed,
        n,
        vec![
            PropertyResult::from_residuals("monogamy_violation", 1e-9, &violations),
            PropertyResult::from_residuals("residual_equals_three_tangle", 1e-8, &identities),
        ],
    )
}

struct HyperdetSample {
    combo: f64,
    permutation: f64,
    abs_vs_complex: f64,
    range: f64,
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The component-formula equivalences of the rebit three-tangle on random
/// real tripartite pure states.
pub fn run_hyperdet(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let samples = map_indexed(exec, n, |i| {
        let phi = random_pure(Field::Real, 3, seed.wrapping_add(i as u64));
        let sigma = rebit::rebit_three_tangle_pure(&phi).expect("real tripartite");

        let sigma_a_bc = rebit::rebit_bipartite(&phi, 0).expect("hinge");
        let sigma_ab = rebit::pair_sigma(&phi, 0, 1).expect("pair");
        let sigma_ac = rebit::pair_sigma(&phi, 0, 2).expect("pair");
        let combo = (sigma_a_bc - sigma_ab - sigma_ac - sigma).abs();

        let permutation = PERMS
            .iter()
            .map(|perm| {
                let permuted = phi.permute_factors(perm).expect("permutation");
                (rebit::rebit_three_tangle_pure(&permuted).expect("real tripartite") - sigma).abs()
            })
            .fold(0.0, f64::max);

        let tau = qubit::three_tangle(&phi.to_complex()).expect("complex view");
        let abs_vs_complex = (sigma.abs() - tau).abs();

        let range = (sigma.abs() - 1.0).max(0.0);
        HyperdetSample {
            combo,
            permutation,
            abs_vs_complex,
            range,
        }
    });
    let combo: Vec<f64> = samples.iter().map(|s| s.combo).collect();
    let perm: Vec<f64> = samples.iter().map(|s| s.permutation).collect();
    let abs_c: Vec<f64> = samples.iter().map(|s| s.abs_vs_complex).collect();
    let range: Vec<f64> = samples.iter().map(|s| s.range).collect();
    finish(
        "hyperdet",
        seed,
        n,
        vec![
            PropertyResult::from_residuals("component_combination", 1e-9, &combo),
            PropertyResult::from_residuals("permutation_invariance", 1e-12, &perm),
            PropertyResult::from_residuals("abs_equals_complex_three_tangle", 1e-12, &abs_c),
            PropertyResult::from_residuals("range_bound", 1e-12, &range),
        ],
    )
}

/// The pure-state theorem and its hinge forms on random complex two-qubit
/// states.
pub fn run_relation(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    struct RelationSample {
        routes: f64,
        sum_form: f64,
        hinge_a: f64,
        hinge_b: f64,
    }
    let samples = map_indexed(exec, n, |i| {
        let psi = random_pure(Field::Complex, 2, seed.wrapping_add(i as u64));
        let r = ubit::relation_report(&psi).expect("relation report");
        RelationSample {
            routes: r.residual_tau_routes,
            sum_form: r.residual_sum_form,
            hinge_a: r.residual_hinge_a,
            hinge_b: r.residual_hinge_b,
        }
    });
    let routes: Vec<f64> = samples.iter().map(|s| s.routes).collect();
    let sum_form: Vec<f64> = samples.iter().map(|s| s.sum_form).collect();
    let hinge_a: Vec<f64> = samples.iter().map(|s| s.hinge_a).collect();
    let hinge_b: Vec<f64> = samples.iter().map(|s| s.hinge_b).collect();
    finish(
        "relation",
        seed,
        n,
        vec![
            PropertyResult::from_residuals("tau_route_agreement", 1e-10, &routes),
            PropertyResult::from_residuals("tau_equals_sigma_ab_plus_sigma_uab", 1e-10, &sum_form),
            PropertyResult::from_residuals("hinge_form_a", 1e-10, &hinge_a),
            PropertyResult::from_residuals("hinge_form_b", 1e-10, &hinge_b),
        ],
    )
}

/// Convex-roof minimizer versus the closed mixed-state formulas, on random
/// densities of rank 1 through 4. `n` counts roofs per field.
pub fn run_roof_oracle(n: usize, seed: u64, exec: Exec) -> SuiteReport {
    let real = map_indexed(exec, n, |i| {
        let rank = 1 + i % 4;
        let rho = random_density(Field::Real, 2, rank, seed.wrapping_add(i as u64))
            .expect("random density");
        let cfg = RoofConfig {
            seed: seed.wrapping_add(0x5eed_0000 + i as u64),
            exec: Exec::Serial,
            ..Default::default()
        };
        let objective = |s: &StateVector| rebit::pure_tangle_2r(s).expect("real pure tangle");
        let roof = roof_minimize(&rho, objective, &cfg).expect("roof");
        let formula = rebit::mixed_tangle_2r(&rho).expect("trace formula");
        (roof.value - formula).abs()
    });
    let complex = map_indexed(exec, n, |i| {
        let rank = 1 + i % 4;
        let rho = random_density(
            Field::Complex,
            2,
            rank,
            seed.wrapping_add(0x1000 + i as u64),
        )
        .expect("random density");
        let cfg = RoofConfig {
            seed: seed.wrapping_add(0x5eed_1000 + i as u64),
            exec: Exec::Serial,
            ..Default::default()
        };
        let objective =
            |s: &StateVector| qubit::pure_tangle_2q_fast(s).expect("complex pure tangle");
        let roof = roof_minimize(&rho, objective, &cfg).expect("roof");
        let formula = qubit::mixed_tangle_2q(&rho).expect("lambda formula");
        (roof.value - formula).abs()
    });
    finish(
        "roof-oracle",
        seed,
        n,
        vec![
            PropertyResult::from_residuals("roof_vs_rebit_trace_formula", 1e-6, &real),
            PropertyResult::from_residuals("roof_vs_wootters_formula", 1e-6, &complex),
        ],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identity,
    Monogamy,
    Hyperdet,
    Relation,
    RoofOracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Identity,
        Suite::Monogamy,
        Suite::Hyperdet,
        Suite::Relation,
        Suite::RoofOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identity => "identity",
            Suite::Monogamy => "monogamy",
            Suite::Hyperdet => "hyperdet",
            Suite::Relation => "relation",
            Suite::RoofOracle => "roof-oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Sample count used when the caller does not override it. The roof
    /// suite counts whole minimizations, so its default is much smaller.
    pub fn default_n(self) -> usize {
        match self {
            Suite::Identity => 100_000,
            Suite::Monogamy | Suite::Hyperdet | Suite::Relation => 10_000,
            Suite::RoofOracle => 16,
        }
    }

    pub fn run(self, n: Option<usize>, seed: u64, exec: Exec) -> SuiteReport {
        let n = n.unwrap_or_else(|| self.default_n());
        match self {
            Suite::Identity => run_identity(n, seed, exec),
            Suite::Monogamy => run_monogamy(n, seed, exec),
            Suite::Hyperdet => run_hyperdet(n, seed, exec),
            Suite::Relation => run_relation(n, seed, exec),
            Suite::RoofOracle => run_roof_oracle(n, seed, exec),
        }
    }
}

/// Runs every suite. `n` overrides the statistical suites' sample counts;
/// `n_roof` overrides the roof-oracle count, which is a number of whole
/// minimizations and therefore scaled separately.
pub fn run_all(n: Option<usize>, n_roof: Option<usize>, seed: u64, exec: Exec) -> Vec<SuiteReport> {
    Suite::ALL
        .iter()
        .map(|s| {
            let count = if *s == Suite::RoofOracle { n_roof } else { n };
            s.run(count, seed, exec)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(run_identity(500, 1, Exec::default()).pass);
        assert!(run_monogamy(200, 2, Exec::default()).pass);
        assert!(run_hyperdet(200, 3, Exec::default()).pass);
        assert!(run_relation(200, 4, Exec::default()).pass);
    }

    #[test]
    fn suite_lookup() {
        assert_eq!(Suite::from_name("identity"), Some(Suite::Identity));
        assert_eq!(Suite::from_name("roof-oracle"), Some(Suite::RoofOracle));
        assert_eq!(Suite::from_name("bogus"), None);
    }

    #[test]
    fn reports_identical_across_exec() {
        let serial = run_hyperdet(100, 9, Exec::Serial);
        let parallel = run_hyperdet(100, 9, Exec::Parallel);
        assert_eq!(
            serde_json::to_string(&serial).unwrap(),
            serde_json::to_string(&parallel).unwrap()
        );
    }
}
