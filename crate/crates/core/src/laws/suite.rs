//! Seeded suites running every law on random cases of one instance.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gen;
use super::{
    check_ax0, check_ax1_ax2, check_ax3, check_ax4, check_bi_inductive, check_conway, check_group_identity, Conway,
    GroupTable, LawReport, Regrouping, Render,
};
use crate::energyfn::EnergyFn;
use crate::matrix::EnergyAlgebra;
use crate::omegaval::Threshold;
use crate::scalar::Scalar;
use crate::wordmodel::{LanguageAlgebra, RegularLang};

pub const ENERGY_LAWS: [&str; 13] = [
    "ax0",
    "ax1-ax2",
    "ax3",
    "ax4",
    "conway-star",
    "product-star",
    "omega-sum",
    "omega-product",
    "group-c2",
    "group-c3",
    "group-c4",
    "group-klein",
    "bi-inductive",
];

pub const WORD_LAWS: [&str; 5] = ["conway-star", "product-star", "omega-sum", "omega-product", "group-c2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 2024, cases: 60 }
    }
}

/// Seed of case `case` of the law at `law_index`; the case's inputs are
/// drawn from a generator seeded with it.
pub fn case_seed(seed: u64, law_index: usize, case: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(law_index as u64);
    rng.set_word_pos(2 * case as u128);
    rng.next_u64()
}

const ORBIT_BUDGET: usize = 100_000;

fn cycle<T: Scalar>(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Vec<EnergyFn<T>> {
    (0..rng.gen_range(min..=max)).map(|_| gen::energy_fn(rng)).collect()
}

fn blocks(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Vec<usize> {
    (0..rng.gen_range(min..=max)).map(|_| rng.gen_range(1..=3)).collect()
}

fn group_for(law: &str) -> Option<GroupTable> {
    law.strip_prefix("group-").map(|g| GroupTable::named(g).expect("shipped group"))
}

/// Runs one case of an energy law; `None` for an unknown law name.
pub fn energy_case<T: Scalar>(alg: &EnergyAlgebra<T>, law: &str, case_seed: u64) -> Option<LawReport> {
    let rng = &mut ChaCha8Rng::seed_from_u64(case_seed);
    let one = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { EnergyFn::identity() } else { gen::energy_fn(rng) };
    let report = match law {
        "ax0" => {
            let (f, g, h) = (one(rng), gen::energy_fn(rng), one(rng));
            let samples = gen::sample_points(rng, &[&f, &g, &h], 4);
            check_ax0(alg, &f, &g, &h, &samples, ORBIT_BUDGET)
        }
        "ax1-ax2" => {
            let (prefix, cycle) = (cycle::<T>(rng, 0, 2), cycle::<T>(rng, 1, 3));
            let regrouping = Regrouping { head: blocks(rng, 0, 2), period: blocks(rng, 1, 2) };
            check_ax1_ax2(&prefix, &cycle, &regrouping).expect("valid regrouping")
        }
        "ax3" => {
            let (prefix, cycle) = (cycle::<T>(rng, 0, 2), cycle::<T>(rng, 1, 2));
            let (y, z) = (gen::energy_fn(rng), gen::energy_fn(rng));
            let fs: Vec<&EnergyFn<T>> = prefix.iter().chain(&cycle).chain([&y, &z]).collect();
            let samples = gen::sample_points(rng, &fs, 4);
            check_ax3(&prefix, &cycle, &y, &z, &samples).expect("nonempty cycle")
        }
        "ax4" => {
            let (f, ys) = (gen::energy_fn(rng), cycle::<T>(rng, 1, 2));
            let fs: Vec<&EnergyFn<T>> = ys.iter().chain([&f]).collect();
            let samples = gen::sample_points(rng, &fs, 4);
            let mut report = None;
            for k in [4, 16, 64] {
                let r = check_ax4(alg, &f, &ys, &samples, k).expect("nonempty cycle");
                let decided = r.unknown.is_empty();
                report = Some(r);
                if decided {
                    break;
                }
            }
            report.expect("at least one bound")
        }
        "bi-inductive" => {
            let f = gen::energy_fn(rng);
            let v = if rng.gen_ratio(1, 4) {
                Threshold::Never
            } else {
                Threshold::from(T::ratio(rng.gen_range(0..=24), 4), rng.gen_bool(0.5))
            };
            let samples = gen::sample_points(rng, &[&f], 6);
            check_bi_inductive(alg, &f, &v, &samples, ORBIT_BUDGET)
        }
        _ => {
            if let Ok(identity) = law.parse::<Conway>() {
                let (x, y) = (gen::energy_fn(rng), gen::energy_fn(rng));
                check_conway(alg, identity, &x, &y)
            } else {
                let group = group_for(law)?;
                let elems: Vec<EnergyFn<T>> = (0..group.order()).map(|_| gen::energy_fn(rng)).collect();
                check_group_identity(alg, &group, &elems).expect("one element per group member")
            }
        }
    };
    Some(report)
}

/// Runs one case of a word law on random regexes over the algebra's
/// alphabet; findings list the regexes.
pub fn word_case(alg: &LanguageAlgebra, law: &str, case_seed: u64) -> Option<LawReport> {
    let rng = &mut ChaCha8Rng::seed_from_u64(case_seed);
    let group = group_for(law);
    let count = group.as_ref().map_or(2, GroupTable::order);
    let regexes: Vec<String> = (0..count).map(|_| gen::regex(rng, alg.letters(), 3)).collect();
    let langs: Vec<RegularLang> =
        regexes.iter().map(|r| RegularLang::parse(r, alg.letters()).expect("generated regex parses")).collect();
    let mut report = match group {
        Some(group) => check_group_identity(alg, &group, &langs).expect("one element per group member"),
        None => check_conway(alg, law.parse::<Conway>().ok()?, &langs[0], &langs[1]),
    };
    for f in report.failures.iter_mut().chain(report.unknown.iter_mut()) {
        f.inputs.clone_from(&regexes);
    }
    Some(report)
}

fn indexed<'a>(laws: &[&'a str]) -> Vec<(usize, &'a str)> {
    laws.iter().copied().enumerate().collect()
}

fn run<A: Render + Sync>(
    alg: &A,
    laws: &[(usize, &str)],
    config: SuiteConfig,
    case: impl Fn(&A, &str, u64) -> Option<LawReport> + Sync,
) -> Vec<LawReport> {
    laws.iter()
        .map(|&(i, law)| {
            let mut report = LawReport::new(law, alg.name());
            report.seed = config.seed;
            let found: Vec<(u64, LawReport)> = (0..config.cases)
                .into_par_iter()
                .map(|c| {
                    let s = case_seed(config.seed, i, c);
                    (s, case(alg, law, s).expect("known law"))
                })
                .collect();
            for (s, r) in found {
                report.absorb(r, s);
            }
            report
        })
        .collect()
}

/// One report per law in [`ENERGY_LAWS`].
pub fn run_energy<T: Scalar>(alg: &EnergyAlgebra<T>, config: SuiteConfig) -> Vec<LawReport> {
    run(alg, &indexed(&ENERGY_LAWS), config, energy_case)
}

/// One report per law in [`WORD_LAWS`].
pub fn run_word(alg: &LanguageAlgebra, config: SuiteConfig) -> Vec<LawReport> {
    run(alg, &indexed(&WORD_LAWS), config, word_case)
}

/// A single word law, for spot checks of one identity.
pub fn run_word_law(alg: &LanguageAlgebra, law: &str, config: SuiteConfig) -> Option<LawReport> {
    let i = WORD_LAWS.iter().position(|&l| l == law)?;
    run(alg, &[(i, WORD_LAWS[i])], config, word_case).pop()
}
