//! Holds the end-to-end acceptance run in `tests/acceptance.rs`, kept in its
//! own package so it runs after every other test binary in the workspace.
