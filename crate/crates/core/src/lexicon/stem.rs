//! Porter suffix-stripping stemmer.
//!
//! Follows the widely deployed "extended" Porter variant: words of one or
//! two letters are left alone, a handful of irregular forms are mapped
//! directly, `y -> i` only fires after a consonant, and step 2 carries the
//! `alli`, `fulli` and `logi` refinements. Input is expected lowercase ASCII;
//! any other word is returned unchanged.

fn irregular(word: &str) -> Option<&'static str> {
    Some(match word {
        "sky" | "skies" => "sky",
        "dying" => "die",
        "lying" => "lie",
        "tying" => "tie",
        "news" => "news",
        "innings" | "inning" => "inning",
        "outings" | "outing" => "outing",
        "cannings" | "canning" => "canning",
        "howe" => "howe",
        "proceed" => "proceed",
        "exceed" => "exceed",
        "succeed" => "succeed",
        _ => return None,
    })
}

/// Stems one lowercase word.
pub fn stem(word: &str) -> String {
    if let Some(s) = irregular(word) {
        return s.to_string();
    }
    if word.len() <= 2
        || !word
            .bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
    {
        return word.to_string();
    }
    let mut w = word.as_bytes().to_vec();
    step1a(&mut w);
    step1b(&mut w);
    step1c(&mut w);
    step2(&mut w);
    step3(&mut w);
    step4(&mut w);
    step5a(&mut w);
    step5b(&mut w);
    // Only ASCII bytes were ever written.
    String::from_utf8(w).expect("ascii")
}

fn consonant_flags(w: &[u8]) -> Vec<bool> {
    let mut flags: Vec<bool> = Vec::with_capacity(w.len());
    for (i, &c) in w.iter().enumerate() {
        let f = match c {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !flags[i - 1],
            _ => true,
        };
        flags.push(f);
    }
    flags
}

fn is_consonant(w: &[u8], i: usize) -> bool {
    consonant_flags(&w[..=i])[i]
}

fn measure(stem: &[u8]) -> usize {
    let flags = consonant_flags(stem);
    flags.windows(2).filter(|p| !p[0] && p[1]).count()
}

fn contains_vowel(stem: &[u8]) -> bool {
    consonant_flags(stem).iter().any(|c| !c)
}

fn ends_double_consonant(w: &[u8]) -> bool {
    let n = w.len();
    n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1)
}

fn ends_cvc(w: &[u8]) -> bool {
    let n = w.len();
    if n >= 3 {
        let f = consonant_flags(w);
        if f[n - 3] && !f[n - 2] && f[n - 1] && !matches!(w[n - 1], b'w' | b'x' | b'y') {
            return true;
        }
    }
    n == 2 && !is_consonant(w, 0) && is_consonant(w, 1)
}

type Cond = fn(&[u8]) -> bool;

enum Rule {
    Suffix(&'static str, &'static str, Option<Cond>),
}

/// Applies the first rule whose suffix matches. Returns true when that rule
/// also rewrote the word.
fn apply_rules(w: &mut Vec<u8>, rules: &[Rule]) -> bool {
    for Rule::Suffix(suffix, repl, cond) in rules {
        if w.ends_with(suffix.as_bytes()) {
            let stem_len = w.len() - suffix.len();
            if cond.is_none_or(|c| c(&w[..stem_len])) {
                w.truncate(stem_len);
                w.extend_from_slice(repl.as_bytes());
                return true;
            }
            return false;
        }
    }
    false
}

fn m_gt0(s: &[u8]) -> bool {
    measure(s) > 0
}

fn m_gt1(s: &[u8]) -> bool {
    measure(s) > 1
}

fn step1a(w: &mut Vec<u8>) {
    if w.len() == 4 && w.ends_with(b"ies") {
        // "ties" -> "tie"
        w.truncate(3);
        return;
    }
    apply_rules(
        w,
        &[
            Rule::Suffix("sses", "ss", None),
            Rule::Suffix("ies", "i", None),
            Rule::Suffix("ss", "ss", None),
            Rule::Suffix("s", "", None),
        ],
    );
}

fn step1b(w: &mut Vec<u8>) {
    if w.ends_with(b"ied") {
        let keep = w.len() - 3;
        w.truncate(keep);
        w.extend_from_slice(if keep == 1 { b"ie" } else { b"i" });
        return;
    }
    if w.ends_with(b"eed") {
        let stem_len = w.len() - 3;
        if measure(&w[..stem_len]) > 0 {
            w.truncate(stem_len + 2);
        }
        return;
    }
    let mut stripped = false;
    for suffix in [&b"ed"[..], &b"ing"[..]] {
        if w.ends_with(suffix) {
            let stem_len = w.len() - suffix.len();
            if contains_vowel(&w[..stem_len]) {
                w.truncate(stem_len);
                stripped = true;
                break;
            }
        }
    }
    if !stripped {
        return;
    }
    for (suffix, repl) in [("at", "ate"), ("bl", "ble"), ("iz", "ize")] {
        if w.ends_with(suffix.as_bytes()) {
            w.truncate(w.len() - suffix.len());
            w.extend_from_slice(repl.as_bytes());
            return;
        }
    }
    if ends_double_consonant(w) {
        if !matches!(w[w.len() - 1], b'l' | b's' | b'z') {
            w.pop();
        }
        return;
    }
    if measure(w) == 1 && ends_cvc(w) {
        w.push(b'e');
    }
}

fn step1c(w: &mut [u8]) {
    let n = w.len();
    if n > 2 && w[n - 1] == b'y' && is_consonant(w, n - 2) {
        w[n - 1] = b'i';
    }
}

fn step2(w: &mut Vec<u8>) {
    if w.ends_with(b"alli") && m_gt0(&w[..w.len() - 4]) {
        w.truncate(w.len() - 2);
        step2(w);
        return;
    }
    if apply_rules(
        w,
        &[
            Rule::Suffix("ational", "ate", Some(m_gt0)),
            Rule::Suffix("tional", "tion", Some(m_gt0)),
            Rule::Suffix("enci", "ence", Some(m_gt0)),
            Rule::Suffix("anci", "ance", Some(m_gt0)),
            Rule::Suffix("izer", "ize", Some(m_gt0)),
            Rule::Suffix("bli", "ble", Some(m_gt0)),
            Rule::Suffix("alli", "al", Some(m_gt0)),
            Rule::Suffix("entli", "ent", Some(m_gt0)),
            Rule::Suffix("eli", "e", Some(m_gt0)),
            Rule::Suffix("ousli", "ous", Some(m_gt0)),
            Rule::Suffix("ization", "ize", Some(m_gt0)),
            Rule::Suffix("ation", "ate", Some(m_gt0)),
            Rule::Suffix("ator", "ate", Some(m_gt0)),
            Rule::Suffix("alism", "al", Some(m_gt0)),
            Rule::Suffix("iveness", "ive", Some(m_gt0)),
            Rule::Suffix("fulness", "ful", Some(m_gt0)),
            Rule::Suffix("ousness", "ous", Some(m_gt0)),
            Rule::Suffix("aliti", "al", Some(m_gt0)),
            Rule::Suffix("iviti", "ive", Some(m_gt0)),
            Rule::Suffix("biliti", "ble", Some(m_gt0)),
            Rule::Suffix("fulli", "ful", Some(m_gt0)),
        ],
    ) {
        return;
    }
    // The "l" of "logi" stays with the stem when measuring, so "geologi"
    // and "theologi" behave like longer stems.
    if w.ends_with(b"logi") && m_gt0(&w[..w.len() - 3]) {
        w.pop();
    }
}

fn step3(w: &mut Vec<u8>) {
    apply_rules(
        w,
        &[
            Rule::Suffix("icate", "ic", Some(m_gt0)),
            Rule::Suffix("ative", "", Some(m_gt0)),
            Rule::Suffix("alize", "al", Some(m_gt0)),
            Rule::Suffix("iciti", "ic", Some(m_gt0)),
            Rule::Suffix("ical", "ic", Some(m_gt0)),
            Rule::Suffix("ful", "", Some(m_gt0)),
            Rule::Suffix("ness", "", Some(m_gt0)),
        ],
    );
}

fn ion_cond(s: &[u8]) -> bool {
    measure(s) > 1 && matches!(s.last(), Some(b's') | Some(b't'))
}

fn step4(w: &mut Vec<u8>) {
    apply_rules(
        w,
        &[
            Rule::Suffix("al", "", Some(m_gt1)),
            Rule::Suffix("ance", "", Some(m_gt1)),
            Rule::Suffix("ence", "", Some(m_gt1)),
            Rule::Suffix("er", "", Some(m_gt1)),
            Rule::Suffix("ic", "", Some(m_gt1)),
            Rule::Suffix("able", "", Some(m_gt1)),
            Rule::Suffix("ible", "", Some(m_gt1)),
            Rule::Suffix("ant", "", Some(m_gt1)),
            Rule::Suffix("ement", "", Some(m_gt1)),
            Rule::Suffix("ment", "", Some(m_gt1)),
            Rule::Suffix("ent", "", Some(m_gt1)),
            Rule::Suffix("ion", "", Some(ion_cond)),
            Rule::Suffix("ou", "", Some(m_gt1)),
            Rule::Suffix("ism", "", Some(m_gt1)),
            Rule::Suffix("ate", "", Some(m_gt1)),
            Rule::Suffix("iti", "", Some(m_gt1)),
            Rule::Suffix("ous", "", Some(m_gt1)),
            Rule::Suffix("ive", "", Some(m_gt1)),
            Rule::Suffix("ize", "", Some(m_gt1)),
        ],
    );
}

fn step5a(w: &mut Vec<u8>) {
    if w.last() == Some(&b'e') {
        let stem = &w[..w.len() - 1];
        let m = measure(stem);
        if m > 1 || (m == 1 && !ends_cvc(stem)) {
            w.pop();
        }
    }
}

fn step5b(w: &mut Vec<u8>) {
    if w.ends_with(b"ll") && measure(&w[..w.len() - 1]) > 1 {
        w.pop();
    }
}
