//! Multiplicity series `G`, pairing series `F`, pairings, Hilbert series,
//! level and the effectivity test.
//!
//! `G_x` and `F_x` are computed by recursion on words:
//!
//! * `G_1 = 1`, `G_{bx} = b G_x`,
//!   `G_{a^n x} = a G_{(1 + ... + a^{n-1}) x} + b/(1-b) G_{a^{n-1} x}`;
//! * `F_1 = 1`, `F_{bx} = b/(1+b) F_x`,
//!   `F_{a^n x} = a F_{(1 + ... + a^{n-1}) x} + b F_{a^{n-1} x}`;
//!
//! where `x` is empty or starts with `b`. The base cases come from `Hom` out of
//! the trivial module picking the degree-zero part, and from that module being
//! both projective and injective.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::kgroup::KElement;
use crate::ncseries::{bigint_json, NCSeries, RationalFactor};
use crate::word::{Letter, Word};

/// Which of the two series families a recursion computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Family {
    G,
    F,
}

/// Memoizing evaluator for the `G` and `F` recursions.
///
/// The caches sit behind mutexes, so one engine can be shared across threads;
/// results do not depend on the order of calls.
#[derive(Debug, Default)]
pub struct Engine {
    cache: Mutex<HashMap<(Family, Word), NCSeries>>,
}

impl Engine {
    /// A fresh engine with empty caches.
    pub fn new() -> Engine {
        Engine::default()
    }

    fn word_series(&self, family: Family, w: &Word) -> NCSeries {
        let key = (family, w.clone());
        if let Some(s) = self.cache.lock().expect("cache lock").get(&key) {
            return s.clone();
        }
        let s = self.compute(family, w);
        self.cache.lock().expect("cache lock").insert(key, s.clone());
        s
    }

    fn compute(&self, family: Family, w: &Word) -> NCSeries {
        match w.first() {
            None => NCSeries::one(),
            Some(Letter::B) => {
                let rest = self.word_series(family, &w.tail());
                let factor = match family {
                    Family::G => RationalFactor::b_pow(1),
                    Family::F => RationalFactor::from_i64(&[0, 1], 0, 1),
                };
                rest.left_mul_rf(&factor)
            }
            Some(Letter::A) => {
                let (n, x) = w.split_leading_a();
                let mut head = NCSeries::zero();
                let mut prefix = x.clone();
                for _ in 0..n {
                    debug_assert!(prefix.len() < w.len());
                    head = head.add(&self.word_series(family, &prefix));
                    prefix = Word::repeat(Letter::A, 1).concat(&prefix);
                }
                let shorter = Word::repeat(Letter::A, n - 1).concat(&x);
                debug_assert!(shorter.len() < w.len());
                let factor = match family {
                    Family::G => RationalFactor::from_i64(&[0, 1], 1, 0),
                    Family::F => RationalFactor::b_pow(1),
                };
                head.left_mul_a()
                    .add(&self.word_series(family, &shorter).left_mul_rf(&factor))
            }
        }
    }

    fn series(&self, family: Family, x: &KElement) -> NCSeries {
        x.iter().fold(NCSeries::zero(), |acc, (w, c)| {
            acc.add(&self.word_series(family, w).scale(c))
        })
    }

    /// The multiplicity series `G_x`.
    pub fn gser(&self, x: &KElement) -> NCSeries {
        self.series(Family::G, x)
    }

    /// The smooth multiplicity series `G_{xi(x)}`.
    pub fn gser_smooth(&self, x: &KElement) -> NCSeries {
        self.gser(&x.xi())
    }

    /// The pairing series `F_x`.
    pub fn fser(&self, x: &KElement) -> NCSeries {
        self.series(Family::F, x)
    }

    /// The smooth pairing series `F_{xi(x)}`.
    pub fn fser_smooth(&self, x: &KElement) -> NCSeries {
        self.fser(&x.xi())
    }

    fn g_for(&self, x: &KElement, smooth: bool) -> NCSeries {
        if smooth {
            self.gser_smooth(x)
        } else {
            self.gser(x)
        }
    }

    fn f_for(&self, x: &KElement, smooth: bool) -> NCSeries {
        if smooth {
            self.fser_smooth(x)
        } else {
            self.fser(x)
        }
    }

    /// `<x, lambda>`: the Euler characteristic of `Ext(x, E^lambda)`.
    pub fn pair_right(&self, x: &KElement, lambda: &Word, smooth: bool) -> BigInt {
        self.f_for(x, smooth).word_coefficient(lambda)
    }

    /// `<lambda, x>`, read off the `F` series of the dual class.
    pub fn pair_left(&self, lambda: &Word, x: &KElement, smooth: bool) -> BigInt {
        let x = if smooth {
            x.gamma().transpose().sigma().transpose()
        } else {
            x.clone()
        };
        let c = self.fser(&x.dual()).word_coefficient(&lambda.conjugate());
        if lambda.len().is_multiple_of(2) {
            c
        } else {
            -c
        }
    }

    /// `<x, y>` extended bilinearly.
    pub fn pair(&self, x: &KElement, y: &KElement, smooth: bool) -> BigInt {
        let f = self.f_for(x, smooth);
        y.iter()
            .fold(BigInt::zero(), |acc, (w, c)| acc + c * f.word_coefficient(w))
    }

    /// The multiplicity of `lambda` in `x`.
    pub fn mult(&self, x: &KElement, lambda: &Word, smooth: bool) -> BigInt {
        self.g_for(x, smooth).word_coefficient(lambda)
    }

    /// Bounded effectivity test over all words of length at most `bound`.
    pub fn effective(&self, x: &KElement, bound: usize, smooth: bool) -> EffectivityVerdict {
        let coeffs = self.g_for(x, smooth).expand(bound);
        let mut entries: Vec<_> = coeffs.into_iter().collect();
        entries.sort_by(|(u, _), (v, _)| (u.len(), u).cmp(&(v.len(), v)));
        match entries.into_iter().find(|(_, c)| c.is_negative()) {
            Some((witness, coefficient)) => EffectivityVerdict::NotEffective { witness, coefficient },
            None => EffectivityVerdict::EffectiveUpTo(bound),
        }
    }
}

/// `G_x` with a fresh engine.
pub fn gser(x: &KElement) -> NCSeries {
    Engine::new().gser(x)
}

/// `G_{xi(x)}` with a fresh engine.
pub fn gser_smooth(x: &KElement) -> NCSeries {
    Engine::new().gser_smooth(x)
}

/// `F_x` with a fresh engine.
pub fn fser(x: &KElement) -> NCSeries {
    Engine::new().fser(x)
}

/// `F_{xi(x)}` with a fresh engine.
pub fn fser_smooth(x: &KElement) -> NCSeries {
    Engine::new().fser_smooth(x)
}

/// See [`Engine::pair_right`].
pub fn pair_right(x: &KElement, lambda: &Word, smooth: bool) -> BigInt {
    Engine::new().pair_right(x, lambda, smooth)
}

/// See [`Engine::pair_left`].
pub fn pair_left(lambda: &Word, x: &KElement, smooth: bool) -> BigInt {
    Engine::new().pair_left(lambda, x, smooth)
}

/// See [`Engine::pair`].
pub fn pair(x: &KElement, y: &KElement, smooth: bool) -> BigInt {
    Engine::new().pair(x, y, smooth)
}

/// See [`Engine::mult`].
pub fn mult(x: &KElement, lambda: &Word, smooth: bool) -> BigInt {
    Engine::new().mult(x, lambda, smooth)
}

/// See [`Engine::effective`].
pub fn effective(x: &KElement, bound: usize, smooth: bool) -> EffectivityVerdict {
    Engine::new().effective(x, bound, smooth)
}

/// A Hilbert series in `t` together with its pole order at `t = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hilbert {
    /// The rational function, in lowest terms.
    pub series: RationalFactor,
    /// Order of the pole at `t = 1`.
    pub pole_order: u32,
}

/// `sum_lambda c_lambda t^{len lambda} / (1-t)^{rank lambda}`, over `xi(x)` when smooth.
pub fn hilbert(x: &KElement, smooth: bool) -> Hilbert {
    let x = if smooth { x.xi() } else { x.clone() };
    let series = x.iter().fold(RationalFactor::zero(), |acc, (w, c)| {
        let mut num = vec![BigInt::zero(); w.len() + 1];
        num[w.len()] = c.clone();
        acc.add(&RationalFactor::new(num, w.rank() as u32, 0))
    });
    let pole_order = series.pole_order_at_one();
    Hilbert { series, pole_order }
}

/// Largest rank carrying a nonzero coefficient; `None` stands for minus infinity.
pub fn level_upper(x: &KElement) -> Option<usize> {
    x.max_rank()
}

/// Outcome of the bounded effectivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EffectivityVerdict {
    /// No negative multiplicity among words of length at most the bound.
    EffectiveUpTo(usize),
    /// A word with negative multiplicity; the class is certainly not effective.
    NotEffective {
        /// First offending word in length-then-lexicographic order.
        witness: Word,
        /// Its multiplicity, always negative.
        coefficient: BigInt,
    },
}

impl Serialize for EffectivityVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let value = match self {
            EffectivityVerdict::EffectiveUpTo(bound) => serde_json::json!({
                "verdict": "effective_up_to",
                "bound": bound,
            }),
            EffectivityVerdict::NotEffective { witness, coefficient } => serde_json::json!({
                "verdict": "not_effective",
                "witness": if witness.is_empty() { "1".to_string() } else { witness.to_string() },
                "coefficient": bigint_json::to_value(coefficient),
            }),
        };
        value.serialize(serializer)
    }
}
