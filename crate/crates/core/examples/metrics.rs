//! SuccessRate, MRR and Precision from first-relevant ranks.

use seqmatch::eval::{mrr, mrr_with, precision_at, success_rate, NotFoundPolicy, CUTOFFS};

fn main() {
    // First relevant rank per query; None when nothing relevant came back.
    let franks = [Some(1), Some(3), None, Some(1), Some(2), None, Some(7), Some(1)];
    for k in CUTOFFS {
        println!("SR@{k:<2} {:.3}", success_rate(&franks, k));
    }
    println!("MRR   {:.3}", mrr(&franks));
    println!("MRR   {:.3} (misses counted as rank 11)", mrr_with(&franks, NotFoundPolicy::BeyondCutoff(10)));

    let relevant = vec![
        vec![true, false, true, false, false],
        vec![false, false, false, false, true],
    ];
    println!("P@5   {:.3}", precision_at(&relevant, 5));
}
