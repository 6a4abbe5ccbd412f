//! Coordinate-partially-separable test problems: structure, evaluation,
//! a problem catalog, derivative verification and sparse solvers.

pub mod catalog;
pub mod classification;
pub mod cps;
pub mod error;
pub mod eval;
pub mod exec;
pub mod fstar;
pub mod problem;
pub mod registry;
pub mod sparse;
pub mod table;

pub use classification::{parse_classification, render_classification, Classification};
pub use cps::{
    Bounds, CpsStructure, DimRule, ElementEvalResult, EvalRequest, EvalResult, Param, ParamValue,
    SetupResult, VarType,
};
pub use error::{OpmError, Result};
pub use eval::{assemble, cps_structure, eval_element, eval_objective, eval_objective_with, setup};
pub use exec::ExecPolicy;
pub use fstar::FStar;
pub use problem::{Problem, ProblemMeta};
pub use registry::{global, lookup, register_all, Registry, MANDATORY};
pub use sparse::{DenseSymMatrix, SparseSymMatrix, Triplet};
pub use table::{catalog_row, CatalogRow, GoldenTable};
pub mod facade;
pub mod solver;
pub mod verify;

pub use solver::{solve, Method, SolveOptions, SolveResult, Status};
pub use verify::{CheckKind, CheckReport};
