use kkemeny::domains::{enumerate_euclidean, Embedding, unsigned_stirling_first};
fn main() {
    for m in [5usize, 6, 7, 8] {
        let expected: u64 = (0..=3).map(|i| unsigned_stirling_first(m, m - i)).sum();
        for seed in [1u64, 2] {
            let t0 = std::time::Instant::now();
            let emb = Embedding::sample_general_position(3, m, seed).unwrap();
            let dom = enumerate_euclidean(&emb).unwrap();
            println!("m={m} seed={seed}: {} / {} ({:.1}%) in {:?}", dom.len(), expected,
                100.0 * dom.len() as f64 / expected as f64, t0.elapsed());
        }
    }
}
