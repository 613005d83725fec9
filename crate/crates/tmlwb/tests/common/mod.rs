#![allow(dead_code)]

use tempfile::TempDir;
use tmlwb::fixtures::committed_dir;
use tmlwb::{Session, Status, Store};

/// A session over a fresh store with the fixture corpus imported as `fx`
/// and selected.
pub fn fixture_session() -> (TempDir, Session) {
    let home = tempfile::tempdir().unwrap();
    let mut session = Session::new(Store::open(home.path()).unwrap());
    let dir = committed_dir();
    for cmd in [
        format!("corpus import \"{}\" as fx", dir.display()),
        "corpus use fx".to_string(),
    ] {
        let out = session.execute(&cmd);
        assert_eq!(out.status, Status::Ok, "{cmd}: {}", out.stderr);
    }
    (home, session)
}

pub fn run(session: &mut Session, cmd: &str) -> String {
    let out = session.execute(cmd);
    assert_ne!(out.status, Status::Error, "{cmd}: {}", out.stderr);
    out.stdout
}
