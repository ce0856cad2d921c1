//! Holds the `acceptance` test target. Kept in its own package so that a
//! failing criterion does not stop the library's own tests from running.
