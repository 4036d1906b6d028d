//! Synthetic inputs shared by the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sembench_core::{CorrectnessMatrix, Entry, RankingTable, Sense};

const WORDS: &[&str] = &[
    "river", "money", "edge", "slope", "store", "deposit", "lend", "account", "water", "side", "row", "tier",
    "reserve", "supply", "pile", "mass", "turn", "flight", "ground", "shore",
];

fn phrase(rng: &mut ChaCha8Rng, words: usize) -> String {
    (0..words)
        .map(|_| WORDS[rng.random_range(0..WORDS.len())])
        .collect::<Vec<_>>()
        .join(" ")
}

/// A polysemous entry with `senses` random definitions of about twelve words.
pub fn entry(senses: usize, seed: u64) -> Entry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Entry {
        word: "bank".into(),
        senses: (0..senses)
            .map(|i| Sense {
                id: (i + 1).to_string(),
                pos: "noun".into(),
                definition: phrase(&mut rng, 12),
                example: Some(phrase(&mut rng, 16)),
            })
            .collect(),
    }
}

/// Definition-length texts for embedding throughput.
pub fn texts(count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| phrase(&mut rng, 12)).collect()
}

/// `models` rows over `instances` columns; model `m` is correct with
/// probability rising in `m`, so rankings are mostly stable.
pub fn matrix(models: usize, instances: usize, seed: u64) -> (CorrectnessMatrix, RankingTable) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..models).map(|m| format!("m{m:02}")).collect();
    let rows = (0..models)
        .map(|m| {
            let p = 0.4 + 0.5 * m as f64 / models as f64;
            (0..instances).map(|_| Some(rng.random_bool(p))).collect()
        })
        .collect();
    let wic = names
        .iter()
        .enumerate()
        .map(|(m, n)| (n.clone(), 0.5 + 0.02 * m as f64 + rng.random_range(0.0..0.03)))
        .collect();
    (
        CorrectnessMatrix::new(names, rows).expect("rectangular"),
        RankingTable::new("wic", wic).expect("distinct models"),
    )
}
