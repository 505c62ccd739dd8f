use cotame::corpus::{certification_corpus, DEFAULT_SEED};
use cotame::{nct, verify};
use cotame_core::cert::Verdict;
use cotame_engine::cotame::certify_normally_cotame;

#[test]
fn every_corpus_input_certifies_and_verifies() {
    let corpus = certification_corpus(DEFAULT_SEED).unwrap();
    assert!(corpus.len() >= 25);
    for e in &corpus {
        let t = std::time::Instant::now();
        let cert = certify_normally_cotame(&e.input).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let text = nct::serialize(&cert);
        let v = verify::verify_text(&text, Some(cotame_core::DEFAULT_DEGREE_CAP));
        assert_eq!(v.verdict, Verdict::Pass, "{}: {}", e.name, v.report);
        eprintln!("{} steps={} m={:?} {:?}", e.name, cert.steps.len(), cert.meta_value("m"), t.elapsed());
    }
}
