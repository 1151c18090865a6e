use super::*;

fn cfg(genus: usize, cases: usize) -> RunConfig {
    RunConfig { genus, case_count: cases, max_word_len: 3, ..RunConfig::default() }
}

#[test]
fn suites_pass_small() {
    for suite in SUITES {
        let r = run_suite(suite, &cfg(2, 5)).unwrap();
        assert!(r.passed(), "{suite}: {:?}", r.failures);
        assert!(r.cases > 0);
    }
}

#[test]
fn punctured_and_marked_identity() {
    for (b, p) in [(1, 1), (0, 2), (1, 2)] {
        let c = RunConfig { punctures: b, marked: p, ..cfg(2, 5) };
        let r = run_suite("cocycle-identity", &c).unwrap();
        assert!(r.passed(), "B={b} P={p}: {:?}", r.failures.first());
    }
}

#[test]
fn unknown_suite_is_parse_error() {
    assert!(matches!(run_suite("no-such", &cfg(2, 1)), Err(Error::Parse(_))));
}

#[test]
fn corpus_is_deterministic() {
    let t = GeneratorTable::standard(2, 0, 1).unwrap();
    let a = word_pair_corpus(&t, &cfg(2, 10));
    let b = word_pair_corpus(&t, &cfg(2, 10));
    assert_eq!(a, b);
    let other = word_pair_corpus(&t, &RunConfig { seed: 7, ..cfg(2, 10) });
    assert_ne!(a, other);
}
