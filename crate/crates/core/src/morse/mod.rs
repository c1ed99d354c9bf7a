//! Matching trees and the discrete Morse matchings they define.

pub mod acyclic;
pub mod strategy;
pub mod tree;

pub use acyclic::{check_matching, enumerate_complex, verify_acyclic, AcyclicityReport, MatchingCheck};
pub use strategy::{make_strategy, PivotChoice, PivotStrategy, StrategyKind};
pub use tree::{grow_tree, Classification, MatchingTree, NodeKind, TreeNode, TreeStats};
