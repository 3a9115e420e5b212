//! Holds the `acceptance` test target; run it with
//! `cargo test -p atwo-validation --test acceptance`.
