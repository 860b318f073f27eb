//! Writes the bundled synthetic corpus: 500 short documents with planted
//! structure.
//!
//! * triad documents close fixed triangles of neutral nouns;
//! * hub documents tie a few positive concepts to many positive words;
//! * negative documents give a few negative concepts a handful of links.
//!
//! Usage: `cargo run --example synthetic_corpus [out_dir]`

use std::fmt::Write as _;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;

const SEED: u64 = 2020;
const TRIAD_DOCS: usize = 200;
const HUB_DOCS: usize = 240;
const NEGATIVE_DOCS: usize = 60;

const HUBS: [&str; 8] = ["success", "talent", "kindness", "friendship", "courage", "wisdom", "freedom", "joy"];
const POSITIVE: [&str; 28] = [
    "happiness", "honor", "peace", "beauty", "gift", "passion", "pride", "glory", "victory", "harmony",
    "comfort", "delight", "generosity", "excellence", "inspiration", "triumph", "health", "laughter",
    "treasure", "miracle", "paradise", "sunshine", "celebration", "opportunity", "achievement", "respect",
    "loyalty", "love",
];
const NEGATIVE_CONCEPTS: [&str; 8] = [
    "bias", "stereotype", "failure", "harassment", "prejudice", "anxiety", "threat", "discrimination",
];
const NEGATIVE: [&str; 13] = [
    "misery", "pain", "sorrow", "cruelty", "danger", "disease", "poverty", "war", "violence", "grief", "shame",
    "disaster", "loss",
];
const PLACES: [&str; 8] = ["world", "school", "city", "family", "team", "village", "community", "home"];
const TRIAD_NOUNS: [&str; 60] = [
    "table", "window", "paper", "street", "number", "chair", "office", "meeting", "corner", "box", "river",
    "hour", "kitchen", "color", "minute", "train", "bridge", "desk", "floor", "wall", "letter", "folder",
    "shelf", "pencil", "tree", "field", "road", "clock", "door", "glass", "bottle", "coat", "page", "carpet",
    "lamp", "ticket", "bus", "bag", "garden", "stone", "cup", "plate", "fork", "spoon", "button", "wheel",
    "pocket", "blanket", "basket", "candle", "ladder", "mirror", "pillow", "curtain", "envelope", "hammer",
    "bucket", "cabinet", "drawer", "stair",
];

fn cap(w: &str) -> String {
    let mut c = w.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

fn triad_doc<R: Rng>(rng: &mut R) -> String {
    let t = rng.gen_range(0..TRIAD_NOUNS.len() / 3);
    let [a, b, c] = [TRIAD_NOUNS[3 * t], TRIAD_NOUNS[3 * t + 1], TRIAD_NOUNS[3 * t + 2]];
    format!("The {a} is a {b}. The {b} is a {c}. The {c} is a {a}.")
}

fn hub_doc<R: Rng>(rng: &mut R) -> String {
    let hub = *HUBS.choose(rng).unwrap();
    let mut out = String::new();
    for _ in 0..2 {
        let p = *POSITIVE.choose(rng).unwrap();
        let sentence = match rng.gen_range(0..4) {
            0 | 1 => format!("{} is {p}.", cap(hub)),
            2 => {
                let q = *POSITIVE.choose(rng).unwrap();
                format!("{} is {p} and {q}.", cap(hub))
            }
            _ => format!("{} brings {p} to the {}.", cap(hub), PLACES.choose(rng).unwrap()),
        };
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&sentence);
    }
    out
}

fn negative_doc<R: Rng>(rng: &mut R) -> String {
    let c = *NEGATIVE_CONCEPTS.choose(rng).unwrap();
    let n = *NEGATIVE.choose(rng).unwrap();
    if rng.gen_bool(0.3) {
        format!("{} is {n}. {} is not {}.", cap(c), cap(c), POSITIVE.choose(rng).unwrap())
    } else {
        format!("{} is {n}.", cap(c))
    }
}

fn main() -> std::io::Result<()> {
    let out_dir: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/synthetic")));
    let mut rng = tfmn::seed::rng(SEED);
    let mut kinds: Vec<u8> = [(0u8, TRIAD_DOCS), (1, HUB_DOCS), (2, NEGATIVE_DOCS)]
        .iter()
        .flat_map(|&(k, n)| std::iter::repeat_n(k, n))
        .collect();
    kinds.shuffle(&mut rng);

    let mut corpus = String::from("# synthetic corpus with planted structure; regenerate with the synthetic_corpus example\n");
    for (i, kind) in kinds.iter().enumerate() {
        let text = match kind {
            0 => triad_doc(&mut rng),
            1 => hub_doc(&mut rng),
            _ => negative_doc(&mut rng),
        };
        writeln!(corpus, "doc-{:04}\t{text}", i + 1).unwrap();
    }
    std::fs::write(out_dir.join("corpus.tsv"), corpus)?;

    let mut planted = String::from("# role<TAB>word\n");
    for w in HUBS {
        writeln!(planted, "positive_hub\t{w}").unwrap();
    }
    for w in NEGATIVE_CONCEPTS {
        writeln!(planted, "negative_concept\t{w}").unwrap();
    }
    std::fs::write(out_dir.join("planted.tsv"), planted)?;
    Ok(())
}
