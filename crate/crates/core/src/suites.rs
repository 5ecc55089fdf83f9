//! placeholder for suites
