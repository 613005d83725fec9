use std::fs;

use tmlwb::fixtures::committed_dir;
use tmlwb::ingest::{import_corpus, load_fold, IngestError};
use tmlwb_core::fold::{FoldError, FoldName, FoldScheme};

const GOOD: &str = r#"<TimeML><TEXT>Prices <EVENT eid="e1" class="OCCURRENCE">rose</EVENT> .</TEXT>
<MAKEINSTANCE eiid="ei1" eventID="e1" pos="VERB"/></TimeML>"#;

#[test]
fn bad_files_are_skipped_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.tml"), GOOD).unwrap();
    fs::write(dir.path().join("b.tml"), "<TimeML><TEXT>unclosed</TimeML>").unwrap();
    fs::write(dir.path().join("c.txt"), "plain notes, not markup").unwrap();
    fs::write(dir.path().join("d.bin"), [0xff, 0xfe, 0x00, 0x81]).unwrap();
    fs::write(dir.path().join("e.tml"), GOOD).unwrap();
    fs::create_dir(dir.path().join("sub")).unwrap();

    let imported = import_corpus(dir.path(), "mixed", &FoldScheme::none()).unwrap();
    let names: Vec<(u32, &str)> = imported
        .corpus
        .documents
        .iter()
        .map(|d| (d.doc_id, d.filename.as_str()))
        .collect();
    assert_eq!(names, vec![(1, "a.tml"), (2, "e.tml")]);
    let skipped: Vec<(&str, bool)> = imported.skipped.iter().map(|s| (s.file.as_str(), s.is_error)).collect();
    assert_eq!(skipped, vec![("b.tml", true), ("c.txt", false), ("d.bin", false)]);
    assert_eq!(imported.corpus.note, "fold=none");
}

#[test]
fn empty_or_missing_directories_fail() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        import_corpus(dir.path(), "x", &FoldScheme::none()),
        Err(IngestError::NoDocuments(_))
    ));
    let missing = dir.path().join("nope");
    assert!(matches!(
        import_corpus(&missing, "x", &FoldScheme::none()),
        Err(IngestError::NotADirectory(_))
    ));
}

#[test]
fn unpopulated_sputlink_fold_is_refused() {
    assert!(matches!(
        load_fold(FoldName::Sputlink, None),
        Err(IngestError::Fold(FoldError::Empty(FoldName::Sputlink)))
    ));
}

#[test]
fn fold_files_override_builtins() {
    let folds = tempfile::tempdir().unwrap();
    fs::write(folds.path().join("compact.fold"), "AFTER\tBEFORE\tswap\n").unwrap();
    let scheme = load_fold(FoldName::Compact, Some(folds.path())).unwrap();
    assert_eq!(scheme.rules().count(), 1);
    fs::write(folds.path().join("sputlink.fold"), "IAFTER\tIBEFORE\tswap\n").unwrap();
    assert_eq!(
        load_fold(FoldName::Sputlink, Some(folds.path()))
            .unwrap()
            .rules()
            .count(),
        1
    );
    // without an override the built-in compact table applies
    assert_eq!(load_fold(FoldName::Compact, None).unwrap(), FoldScheme::compact());
}

#[test]
fn folded_import_is_recorded() {
    let imported = import_corpus(&committed_dir(), "fx", &FoldScheme::cavat()).unwrap();
    assert_eq!(imported.corpus.note, "fold=cavat");
    assert_eq!(imported.corpus.documents.len(), 9);
}
