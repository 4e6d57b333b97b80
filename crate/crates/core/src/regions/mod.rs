//! Decomposition of low-dimensional parameter boxes into open cells on
//! which the number of real (or sign-constrained) solutions is constant.

pub mod cad;
pub mod count;
pub mod interval;
pub mod isolate;

pub use cad::{coprime_basis, open_cad_1d, open_cad_2d, Cell};
pub use count::{count_solutions, count_solutions_depth, CountError, CountMode};
pub use interval::Iv;
pub use isolate::{isolate_real_roots, isolate_roots_in, refine_root, RootIsolation};

use crate::discvar::ParametricSystem;
use crate::poly::Polynomial;
use rayon::prelude::*;

/// Per-cell solution counts over a parameter box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionReport {
    pub cells: Vec<Cell>,
    pub counts: Vec<usize>,
    /// Whether every candidate box in the cell's count was decided.
    pub certified: Vec<bool>,
    pub mode: CountMode,
}

/// Splits the box into open cells by the candidate set and counts solutions
/// at one rational sample per cell. Cells are ordered base-axis first, then
/// by sector, so reruns produce identical reports.
pub fn classify(
    sys: &ParametricSystem,
    candidates: &[Polynomial],
    windows: &[Iv],
    mode: CountMode,
) -> Result<RegionReport, CountError> {
    assert_eq!(
        windows.len(),
        sys.parameters.len(),
        "one window per parameter"
    );
    let cells = match sys.parameters.len() {
        1 => open_cad_1d(candidates, sys.parameters[0], &windows[0]),
        2 => open_cad_2d(
            candidates,
            sys.parameters[0],
            sys.parameters[1],
            &windows[0],
            &windows[1],
        ),
        n => panic!("classification supports one or two parameters, got {n}"),
    };
    let per_cell: Result<Vec<(usize, bool)>, CountError> = cells
        .par_iter()
        .map(|cell| count_solutions(sys, &cell.sample, mode))
        .collect();
    let per_cell = per_cell?;
    let (counts, certified) = per_cell.into_iter().unzip();
    Ok(RegionReport { cells, counts, certified, mode })
}
