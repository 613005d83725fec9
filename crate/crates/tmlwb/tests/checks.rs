use tmlwb::fixtures::committed_dir;
use tmlwb::ingest::import_corpus;
use tmlwb_core::finding::Severity;
use tmlwb_core::fold::FoldScheme;
use tmlwb_core::{Corpus, DocKey, Registry, Targets};

fn corpus() -> Corpus {
    import_corpus(&committed_dir(), "fx", &FoldScheme::none())
        .unwrap()
        .corpus
}

#[test]
fn all_documents_equals_each_document() {
    let corpus = corpus();
    let registry = Registry::new();
    for d in registry.list() {
        let all = registry.run(&d.name, &corpus, &Targets::All, None).unwrap();
        let mut each = Vec::new();
        for doc in &corpus.documents {
            let run = registry
                .run(&d.name, &corpus, &Targets::Keys(vec![DocKey::Id(doc.doc_id)]), None)
                .unwrap();
            each.extend(run.findings().cloned());
        }
        assert_eq!(all.findings().cloned().collect::<Vec<_>>(), each, "{}", d.name);
    }
}

#[test]
fn checks_leave_the_corpus_alone() {
    let corpus = corpus();
    let before = corpus.clone();
    let registry = Registry::new();
    for d in registry.list() {
        registry.run(&d.name, &corpus, &Targets::All, None).unwrap();
    }
    assert_eq!(corpus, before);
}

#[test]
fn fixture_verdicts() {
    let corpus = corpus();
    let registry = Registry::new();
    let errors = |check: &str, file: &str| {
        let run = registry
            .run(
                check,
                &corpus,
                &Targets::Keys(vec![DocKey::Filename(file.into())]),
                None,
            )
            .unwrap();
        run.count(Severity::Error)
    };
    for file in [
        "all_relations.tml",
        "consistent.tml",
        "event_loop.tml",
        "fractured.tml",
        "identity_loop.tml",
        "orphans.tml",
        "wsj_shape.tml",
    ] {
        assert_eq!(errors("consistent", file), 0, "{file}");
    }
    assert_eq!(errors("consistent", "conflict_direct.tml"), 1);
    assert_eq!(errors("consistent", "conflict_inferred.tml"), 1);
    for file in ["consistent.tml", "all_relations.tml", "wsj_shape.tml", "fractured.tml"] {
        assert_eq!(errors("orphans", file), 0, "{file}");
        assert_eq!(errors("tlink_loop", file), 0, "{file}");
    }
}

#[test]
fn unknown_targets_fail_before_running() {
    let corpus = corpus();
    let registry = Registry::new();
    let targets = Targets::Keys(vec![DocKey::Id(1), DocKey::Filename("consistnt.tml".into())]);
    let err = registry.run("orphans", &corpus, &targets, None).unwrap_err();
    assert!(err.to_string().contains("consistent.tml"), "{err}");
}
