use std::collections::HashMap;

use freegroup::bench::{alpha, run_experiment, Experiment, ExperimentConfig};
use freegroup::{Alphabet, Letter, WhiteheadGraph};

/// Exact probability that `W'(u)` of a uniform reduced word of length `n`
/// is disconnected or has a cut vertex, for every `n` in `2..=max`, by
/// dynamic programming over (edge set so far, last letter).
fn exact_failure_rates(alphabet: Alphabet, max: usize) -> Vec<f64> {
    let complete = WhiteheadGraph::complete(alphabet);
    let pairs: Vec<(Letter, Letter)> = complete.edges().collect();
    assert!(pairs.len() <= 16);
    let mut index = HashMap::new();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        index.insert((x, y), i);
        index.insert((y, x), i);
    }
    let letters: Vec<Letter> = alphabet.letters().collect();
    let bad: Vec<bool> = (0..1usize << pairs.len())
        .map(|mask| {
            let mut g = WhiteheadGraph::empty(alphabet);
            for (i, &(x, y)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(x, y);
                }
            }
            !g.connected_without_cutvertex()
        })
        .collect();

    // probability mass per (mask, last letter)
    let states = letters.len();
    let mut mass = vec![0.0f64; bad.len() * states];
    mass[..states].fill(1.0 / states as f64);
    let step = 1.0 / (states - 1) as f64;
    let mut rates = Vec::new();
    for _ in 2..=max {
        let mut next = vec![0.0f64; mass.len()];
        for mask in 0..bad.len() {
            for (s, &x) in letters.iter().enumerate() {
                let p = mass[mask * states + s];
                if p == 0.0 {
                    continue;
                }
                for (t, &y) in letters.iter().enumerate() {
                    if y == x.inverse() {
                        continue;
                    }
                    let m = mask | 1 << index[&(x, y.inverse())];
                    next[m * states + t] += p * step;
                }
            }
        }
        mass = next;
        rates.push(
            (0..bad.len()).filter(|&m| bad[m]).map(|m| mass[m * states..(m + 1) * states].iter().sum::<f64>()).sum(),
        );
    }
    rates
}

#[test]
fn sampled_rates_match_exact_rates() {
    let alphabet = Alphabet::new(2).unwrap();
    let exact = exact_failure_rates(alphabet, 14);
    let mut c = ExperimentConfig::new(Experiment::CutVertexDecay);
    c.rank = 2;
    c.lengths = vec![4, 6, 8, 10, 12, 14];
    c.samples = 20_000;
    let table = run_experiment(&c).unwrap();
    let rates = table.column_f64("failure_rate").unwrap();
    for (&n, &p) in c.lengths.iter().zip(&rates) {
        let q = exact[n - 2];
        let sigma = (q * (1.0 - q) / c.samples as f64).sqrt();
        assert!((p - q).abs() <= 5.0 * sigma + 1e-12, "n={n}: sampled {p}, exact {q}");
    }
}

#[test]
fn failure_rate_decays_at_alpha() {
    for (r, max) in [(2, 400), (3, 150)] {
        let alphabet = Alphabet::new(r).unwrap();
        let a: f64 = alpha(alphabet).unwrap();
        let bound = 1.0 - 0.5 / (r * r) as f64;
        let rates = exact_failure_rates(alphabet, max);
        let ratios: Vec<f64> = rates.windows(2).map(|w| w[1] / w[0]).collect();
        for w in rates[4..].windows(2) {
            assert!(w[1] < w[0]);
        }
        for &q in &ratios[8..] {
            assert!(q < bound, "{q}");
        }
        let last = ratios[ratios.len() - 1];
        eprintln!("r={r}: alpha {a}, ratio at n={max} {last}");
        assert!((last - a).abs() < 0.02 * a, "ratio {last} vs alpha {a}");
    }
}
