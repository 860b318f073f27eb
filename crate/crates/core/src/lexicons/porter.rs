//! Porter's suffix-stripping stemmer (1980 rule set).
//!
//! Words of two letters or fewer are returned unchanged, as in Porter's own
//! reference implementation.

use crate::error::{Error, Result};

/// Stems a single word. The input is lowercased first; it must be nonempty
/// and consist only of alphabetic characters.
pub fn stem(word: &str) -> Result<String> {
    if word.is_empty() {
        return Err(Error::InvalidWord {
            word: word.to_string(),
            reason: "empty word",
        });
    }
    let lower = word.to_lowercase();
    if !lower.chars().all(char::is_alphabetic) {
        return Err(Error::InvalidWord {
            word: word.to_string(),
            reason: "non-alphabetic characters",
        });
    }
    Ok(stem_lowercase(&lower))
}

/// Stems a word that is already lowercase and alphabetic.
pub(crate) fn stem_lowercase(word: &str) -> String {
    let mut w: Vec<char> = word.chars().collect();
    if w.len() <= 2 {
        return word.to_string();
    }
    step1a(&mut w);
    step1b(&mut w);
    step1c(&mut w);
    step2(&mut w);
    step3(&mut w);
    step4(&mut w);
    step5a(&mut w);
    step5b(&mut w);
    w.into_iter().collect()
}

fn is_consonant(w: &[char], i: usize) -> bool {
    match w[i] {
        'a' | 'e' | 'i' | 'o' | 'u' => false,
        'y' => i == 0 || !is_consonant(w, i - 1),
        _ => true,
    }
}

/// Number of VC sequences in `s`, the `m` of [C](VC)^m[V].
fn measure(s: &[char]) -> usize {
    let n = s.len();
    let mut i = 0;
    while i < n && is_consonant(s, i) {
        i += 1;
    }
    let mut m = 0;
    loop {
        while i < n && !is_consonant(s, i) {
            i += 1;
        }
        if i >= n {
            return m;
        }
        while i < n && is_consonant(s, i) {
            i += 1;
        }
        m += 1;
    }
}

fn contains_vowel(s: &[char]) -> bool {
    (0..s.len()).any(|i| !is_consonant(s, i))
}

fn ends_double_consonant(s: &[char]) -> bool {
    let n = s.len();
    n >= 2 && s[n - 1] == s[n - 2] && is_consonant(s, n - 1)
}

/// `*o`: stem ends consonant-vowel-consonant, last consonant not w, x or y.
fn ends_cvc(s: &[char]) -> bool {
    let n = s.len();
    n >= 3
        && is_consonant(s, n - 3)
        && !is_consonant(s, n - 2)
        && is_consonant(s, n - 1)
        && !matches!(s[n - 1], 'w' | 'x' | 'y')
}

fn ends_with(w: &[char], suffix: &str) -> bool {
    let n = suffix.chars().count();
    w.len() >= n && w[w.len() - n..].iter().copied().eq(suffix.chars())
}

fn stem_len(w: &[char], suffix: &str) -> usize {
    w.len() - suffix.chars().count()
}

fn replace(w: &mut Vec<char>, suffix: &str, replacement: &str) {
    let keep = stem_len(w, suffix);
    w.truncate(keep);
    w.extend(replacement.chars());
}

/// Applies the rule with the longest matching suffix if its stem satisfies
/// `cond`. Returns true when some suffix matched, whether or not it fired.
fn apply_longest(
    w: &mut Vec<char>,
    rules: &[(&str, &str)],
    cond: impl Fn(&[char], &str) -> bool,
) -> bool {
    let best = rules
        .iter()
        .filter(|(suffix, _)| ends_with(w, suffix))
        .max_by_key(|(suffix, _)| suffix.len());
    match best {
        Some(&(suffix, replacement)) => {
            let stem = &w[..stem_len(w, suffix)];
            if cond(stem, suffix) {
                replace(w, suffix, replacement);
            }
            true
        }
        None => false,
    }
}

fn step1a(w: &mut Vec<char>) {
    if ends_with(w, "sses") {
        replace(w, "sses", "ss");
    } else if ends_with(w, "ies") {
        replace(w, "ies", "i");
    } else if ends_with(w, "ss") {
    } else if ends_with(w, "s") {
        w.pop();
    }
}

fn step1b(w: &mut Vec<char>) {
    if ends_with(w, "eed") {
        if measure(&w[..stem_len(w, "eed")]) > 0 {
            w.pop();
        }
        return;
    }
    let stripped = if ends_with(w, "ed") && contains_vowel(&w[..stem_len(w, "ed")]) {
        replace(w, "ed", "");
        true
    } else if ends_with(w, "ing") && contains_vowel(&w[..stem_len(w, "ing")]) {
        replace(w, "ing", "");
        true
    } else {
        false
    };
    if !stripped {
        return;
    }
    if ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz") {
        w.push('e');
    } else if ends_double_consonant(w) && !matches!(w[w.len() - 1], 'l' | 's' | 'z') {
        w.pop();
    } else if measure(w) == 1 && ends_cvc(w) {
        w.push('e');
    }
}

fn step1c(w: &mut [char]) {
    let n = w.len();
    if ends_with(w, "y") && contains_vowel(&w[..n - 1]) {
        w[n - 1] = 'i';
    }
}

fn step2(w: &mut Vec<char>) {
    const RULES: &[(&str, &str)] = &[
        ("ational", "ate"),
        ("tional", "tion"),
        ("enci", "ence"),
        ("anci", "ance"),
        ("izer", "ize"),
        ("abli", "able"),
        ("alli", "al"),
        ("entli", "ent"),
        ("eli", "e"),
        ("ousli", "ous"),
        ("ization", "ize"),
        ("ation", "ate"),
        ("ator", "ate"),
        ("alism", "al"),
        ("iveness", "ive"),
        ("fulness", "ful"),
        ("ousness", "ous"),
        ("aliti", "al"),
        ("iviti", "ive"),
        ("biliti", "ble"),
    ];
    apply_longest(w, RULES, |stem, _| measure(stem) > 0);
}

fn step3(w: &mut Vec<char>) {
    const RULES: &[(&str, &str)] = &[
        ("icate", "ic"),
        ("ative", ""),
        ("alize", "al"),
        ("iciti", "ic"),
        ("ical", "ic"),
        ("ful", ""),
        ("ness", ""),
    ];
    apply_longest(w, RULES, |stem, _| measure(stem) > 0);
}

fn step4(w: &mut Vec<char>) {
    const RULES: &[(&str, &str)] = &[
        ("al", ""),
        ("ance", ""),
        ("ence", ""),
        ("er", ""),
        ("ic", ""),
        ("able", ""),
        ("ible", ""),
        ("ant", ""),
        ("ement", ""),
        ("ment", ""),
        ("ent", ""),
        ("ion", ""),
        ("ou", ""),
        ("ism", ""),
        ("ate", ""),
        ("iti", ""),
        ("ous", ""),
        ("ive", ""),
        ("ize", ""),
    ];
    apply_longest(w, RULES, |stem, suffix| {
        measure(stem) > 1 && (suffix != "ion" || matches!(stem.last(), Some('s' | 't')))
    });
}

fn step5a(w: &mut Vec<char>) {
    if !ends_with(w, "e") {
        return;
    }
    let stem = &w[..w.len() - 1];
    let m = measure(stem);
    if m > 1 || (m == 1 && !ends_cvc(stem)) {
        w.pop();
    }
}

fn step5b(w: &mut Vec<char>) {
    if measure(w) > 1 && ends_double_consonant(w) && w[w.len() - 1] == 'l' {
        w.pop();
    }
}
