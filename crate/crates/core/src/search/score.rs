use crate::extract::ApiToken;

/// Best in-order, non-overlapping placement of a subsequence of `words` in
/// `name`: returns (matched words, matched characters), maximizing the word
/// count first.
pub fn name_alignment<S: AsRef<str>>(words: &[S], name: &str) -> (usize, usize) {
    let n = name.len();
    let k = words.len();
    // best[i][p]: optimum for words[i..] placed in name[p..].
    let mut best = vec![vec![(0usize, 0usize); n + 1]; k + 1];
    for i in (0..k).rev() {
        let w = words[i].as_ref();
        for p in (0..=n).rev() {
            let mut b = best[i + 1][p];
            if !w.is_empty() && w.len() <= n - p {
                for q in p..=n - w.len() {
                    if name.as_bytes()[q..].starts_with(w.as_bytes()) {
                        let (m, c) = best[i + 1][q + w.len()];
                        b = b.max((m + 1, c + w.len()));
                    }
                }
            }
            best[i][p] = b;
        }
    }
    best[0][0]
}

/// Name score: (matched words / nq) x (matched characters / name length).
pub fn score_name<S: AsRef<str>>(words: &[S], nq: usize, name_lower: &str) -> f64 {
    if nq == 0 || name_lower.is_empty() {
        return 0.0;
    }
    let (m, c) = name_alignment(words, name_lower);
    (m as f64 / nq as f64) * (c as f64 / name_lower.len() as f64)
}

fn token_matches(word: &str, simple_lower: &str) -> bool {
    !word.is_empty() && simple_lower.contains(word)
}

/// The three factors of the body score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyTerms {
    /// Kept query words found in some API token.
    pub matched_words: usize,
    /// Longest common subsequence of query words and API tokens.
    pub ordered: usize,
    pub jdk_ratio: f64,
}

pub fn body_terms<S: AsRef<str>>(words: &[S], apis: &[ApiToken]) -> BodyTerms {
    let simple: Vec<String> = apis.iter().map(|t| t.simple.to_lowercase()).collect();
    let matched_words = words
        .iter()
        .filter(|w| simple.iter().any(|s| token_matches(w.as_ref(), s)))
        .count();

    let (k, n) = (words.len(), simple.len());
    let mut lcs = vec![vec![0usize; n + 1]; k + 1];
    for i in 1..=k {
        for j in 1..=n {
            lcs[i][j] = if token_matches(words[i - 1].as_ref(), &simple[j - 1]) {
                lcs[i - 1][j - 1] + 1
            } else {
                lcs[i - 1][j].max(lcs[i][j - 1])
            };
        }
    }
    let jdk_ratio = if apis.is_empty() {
        0.0
    } else {
        apis.iter().filter(|t| t.is_jdk).count() as f64 / apis.len() as f64
    };
    BodyTerms {
        matched_words,
        ordered: lcs[k][n],
        jdk_ratio,
    }
}

/// Body score: (matched words / nq) x (ordered matches / nq) x JDK ratio.
pub fn score_body<S: AsRef<str>>(words: &[S], nq: usize, apis: &[ApiToken]) -> f64 {
    if nq == 0 {
        return 0.0;
    }
    let t = body_terms(words, apis);
    (t.matched_words as f64 / nq as f64) * (t.ordered as f64 / nq as f64) * t.jdk_ratio
}
