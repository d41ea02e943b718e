//! Seeded batches of lemma checks, one RNG stream per instance.

use serde::{Deserialize, Serialize};

use super::quadratic::{dichotomy_check, equal_y_check, random_dichotomy_instance, random_equal_y_instance};
use super::rayleigh::{random_rayleigh_instance, rayleigh_bound_check};
use crate::error::{Error, Result};
use crate::parallel::map_indexed;
use crate::rng::stream;

const RAYLEIGH_MAX_N: usize = 12;
const DICHOTOMY_MAX: (usize, usize) = (6, 4);
const EQUAL_Y_MAX: (usize, usize) = (5, 4);
// draws per stream before giving up on meeting the positivity hypothesis
const EQUAL_Y_REDRAWS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    A1,
    Dichotomy,
    EqualY,
}

impl Lemma {
    pub fn name(&self) -> &'static str {
        match self {
            Lemma::A1 => "a1",
            Lemma::Dichotomy => "dichotomy",
            Lemma::EqualY => "equal-y",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaTally {
    pub lemma: Lemma,
    pub n: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    /// Index and description of the first failing instance.
    pub first_failure: Option<(usize, String)>,
}

impl LemmaTally {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.passed == self.n
    }
}

fn check_one(lemma: Lemma, seed: u64, i: usize) -> Result<Option<String>> {
    let mut rng = stream(seed, i as u64);
    match lemma {
        Lemma::A1 => {
            let (a, b, x) = random_rayleigh_instance(RAYLEIGH_MAX_N, &mut rng);
            let c = rayleigh_bound_check(&a, &b, &x)?;
            Ok((!c.holds).then(|| format!("{c:?}")))
        }
        Lemma::Dichotomy => {
            let inst = random_dichotomy_instance(DICHOTOMY_MAX.0, DICHOTOMY_MAX.1, &mut rng);
            let rep = dichotomy_check(&inst)?;
            Ok((!rep.holds()).then(|| format!("{rep:?}")))
        }
        Lemma::EqualY => {
            for _ in 0..EQUAL_Y_REDRAWS {
                let inst = random_equal_y_instance(EQUAL_Y_MAX.0, EQUAL_Y_MAX.1, &mut rng);
                match equal_y_check(&inst) {
                    Ok(rep) => return Ok((!rep.holds).then(|| format!("{rep:?}"))),
                    Err(Error::Hypothesis(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Hypothesis(format!("no instance with a positive optimum in {EQUAL_Y_REDRAWS} draws")))
        }
    }
}

/// Runs `n` randomized checks of `lemma`; instance `i` uses stream `i` of `seed`.
pub fn run_lemma(lemma: Lemma, n: usize, seed: u64) -> LemmaTally {
    let outcomes = map_indexed(n, |i| check_one(lemma, seed, i));
    let mut tally = LemmaTally { lemma, n, seed, passed: 0, failed: 0, first_failure: None };
    for (i, o) in outcomes.into_iter().enumerate() {
        let failure = match o {
            Ok(None) => {
                tally.passed += 1;
                continue;
            }
            Ok(Some(why)) => why,
            Err(e) => e.to_string(),
        };
        tally.failed += 1;
        tally.first_failure.get_or_insert((i, failure));
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batches_pass_and_repeat() {
        for lemma in [Lemma::A1, Lemma::Dichotomy, Lemma::EqualY] {
            let t = run_lemma(lemma, 50, 4);
            assert!(t.all_passed(), "{t:?}");
            assert_eq!(t, run_lemma(lemma, 50, 4));
        }
    }
}
