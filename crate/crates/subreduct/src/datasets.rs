//! Bundled benchmark tables.
//!
//! Nothing here is loaded from disk. [`tic_tac_toe`] reconstructs the
//! classic endgame table exactly by enumerating play; the other two
//! generate synthetic tables dimensioned like well-known benchmark sets,
//! for exercising the solvers at realistic sizes without shipping data
//! files.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::DecisionSystem;

const TTT_LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [2, 4, 6],
];

fn ttt_wins(board: &[u8; 9], player: u8) -> bool {
    TTT_LINES
        .iter()
        .any(|line| line.iter().all(|&i| board[i] == player))
}

fn ttt_explore(board: &mut [u8; 9], player: u8, out: &mut BTreeSet<[u8; 9]>) {
    for i in 0..9 {
        if board[i] != 0 {
            continue;
        }
        board[i] = player;
        let finished = ttt_wins(board, player) || board.iter().all(|&c| c != 0);
        if finished {
            out.insert(*board);
        } else {
            ttt_explore(board, 3 - player, out);
        }
        board[i] = 0;
    }
}

/// The complete tic-tac-toe endgame table: all 958 distinct final board
/// states reachable with x moving first, each square a nominal feature
/// with values x, o, or b (blank), classed positive exactly when x holds
/// three in a row (626 boards).
///
/// Built by playing out every game and collecting terminal positions, so
/// the table is exact and needs no data file.
pub fn tic_tac_toe() -> DecisionSystem {
    let mut boards = BTreeSet::new();
    ttt_explore(&mut [0u8; 9], 1, &mut boards);
    let names = [
        "top-left", "top-middle", "top-right", "middle-left", "middle-middle", "middle-right",
        "bottom-left", "bottom-middle", "bottom-right",
    ];
    let cell = |v: u8| match v {
        1 => "x",
        2 => "o",
        _ => "b",
    };
    let rows: Vec<(Vec<&str>, &str)> = boards
        .iter()
        .map(|board| {
            let cells: Vec<&str> = board.iter().map(|&v| cell(v)).collect();
            let class = if ttt_wins(board, 1) { "positive" } else { "negative" };
            (cells, class)
        })
        .collect();
    let borrowed: Vec<(&[&str], &str)> = rows.iter().map(|(c, d)| (c.as_slice(), *d)).collect();
    DecisionSystem::from_rows(&names, "class", &borrowed).expect("enumerated table is well-formed")
}

/// A synthetic table dimensioned like the classic 101-animal zoo data:
/// 101 rows, 16 nominal features (15 booleans plus one six-valued
/// leg-count-like column), 7 classes with the same skewed class sizes.
/// Rows are noisy copies of one random prototype per class, so features
/// correlate with the class and with each other, and small reducts exist.
/// Deterministic per seed.
pub fn synthetic_zoo(seed: u64) -> DecisionSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let class_sizes = [41usize, 20, 13, 10, 8, 5, 4];
    let legs_domain = ["0", "2", "4", "5", "6", "8"];
    let num_features = 16;
    let legs_index = 12;

    let prototypes: Vec<Vec<usize>> = (0..class_sizes.len())
        .map(|_| {
            (0..num_features)
                .map(|f| {
                    if f == legs_index {
                        rng.random_range(0..legs_domain.len())
                    } else {
                        rng.random_range(0..2)
                    }
                })
                .collect()
        })
        .collect();

    let mut rows: Vec<(Vec<&str>, String)> = Vec::with_capacity(101);
    for (class, &size) in class_sizes.iter().enumerate() {
        for _ in 0..size {
            let cells: Vec<&str> = (0..num_features)
                .map(|f| {
                    if f == legs_index {
                        let value = if rng.random_range(0..100) < 85 {
                            prototypes[class][f]
                        } else {
                            rng.random_range(0..legs_domain.len())
                        };
                        legs_domain[value]
                    } else {
                        let mut value = prototypes[class][f];
                        if rng.random_range(0..100) < 8 {
                            value = 1 - value;
                        }
                        if value == 0 {
                            "0"
                        } else {
                            "1"
                        }
                    }
                })
                .collect();
            rows.push((cells, format!("{}", class + 1)));
        }
    }

    let names: Vec<String> = (0..num_features)
        .map(|f| if f == legs_index { "legs".to_string() } else { format!("z{f:02}") })
        .collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let borrowed: Vec<(&[&str], &str)> = rows
        .iter()
        .map(|(c, d)| (c.as_slice(), d.as_str()))
        .collect();
    DecisionSystem::from_rows(&name_refs, "class", &borrowed)
        .expect("generated table is well-formed")
}

/// A synthetic two-class table dimensioned like the classic mushroom data:
/// 8124 rows, 22 nominal features. The class is the parity of four hidden
/// three-valued core columns, two of which also appear under bijective
/// relabelings, so the minimal sufficient subsets have four features and
/// come in several interchangeable variants; the remaining sixteen columns
/// are class-independent noise of assorted domain sizes. Deterministic per
/// seed.
pub fn synthetic_mushroom(seed: u64) -> DecisionSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let num_rows = 8124;
    let num_features = 22;
    let tokens = [
        "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l",
    ];
    // Feature layout: 0..4 are the three-valued core columns, 4 and 5
    // relabel cores 0 and 1, the rest are noise.
    let relabel_a = [2usize, 0, 1];
    let relabel_b = [1usize, 2, 0];
    let noise_domains = [2usize, 3, 4, 5, 6, 9, 2, 3, 4, 5, 6, 9, 2, 3, 4, 6, 8];

    let mut rows: Vec<(Vec<&str>, &str)> = Vec::with_capacity(num_rows);
    for _ in 0..num_rows {
        let core: Vec<usize> = (0..4).map(|_| rng.random_range(0..3)).collect();
        let mut cells: Vec<&str> = Vec::with_capacity(num_features);
        for &v in &core {
            cells.push(tokens[v]);
        }
        cells.push(tokens[relabel_a[core[0]]]);
        cells.push(tokens[relabel_b[core[1]]]);
        for f in 6..num_features {
            let domain = noise_domains[f - 6];
            cells.push(tokens[rng.random_range(0..domain)]);
        }
        let class = if core.iter().sum::<usize>() % 2 == 0 { "e" } else { "p" };
        rows.push((cells, class));
    }

    let names: Vec<String> = (0..num_features).map(|f| format!("m{f:02}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let borrowed: Vec<(&[&str], &str)> = rows
        .iter()
        .map(|(c, d)| (c.as_slice(), *d))
        .collect();
    DecisionSystem::from_rows(&name_refs, "class", &borrowed)
        .expect("generated table is well-formed")
}

/// The five-object, three-feature table used throughout the documentation:
/// two cheap features useless alone but decisive together, and one
/// expensive feature that almost works by itself. Two objects agree on
/// every feature yet disagree on the class, so no subset classifies them.
pub fn interlocking_demo() -> DecisionSystem {
    DecisionSystem::from_rows(
        &["a1", "a2", "a3"],
        "d",
        &[
            (&["Y", "Y", "Y"], "A"),
            (&["N", "Y", "N"], "B"),
            (&["Y", "N", "N"], "B"),
            (&["N", "N", "Y"], "A"),
            (&["Y", "Y", "Y"], "B"),
        ],
    )
    .expect("fixed table is well-formed")
}
