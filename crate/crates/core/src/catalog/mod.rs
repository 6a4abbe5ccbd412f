//! The problem catalog. Each problem is a unit struct carrying its metadata;
//! families sharing an element core live in the same file.

mod blocks;
mod boundary;
mod chained;
mod dixmaan;
mod grid;
pub(crate) mod kit;
mod small;

use crate::cps::DimRule;
use crate::fstar::FStar;
use crate::problem::{Problem, ProblemMeta};

pub(crate) fn meta(
    name: &'static str,
    description: &'static str,
    default_n: usize,
    dim_rule: DimRule,
    fstar: FStar,
    class: &'static str,
) -> ProblemMeta {
    ProblemMeta {
        name,
        description,
        default_n,
        dim_rule,
        fstar,
        class,
        objtype: "nonlin",
    }
}

/// Every built-in problem, in name order.
pub fn builtin() -> Vec<Box<dyn Problem>> {
    let mut v: Vec<Box<dyn Problem>> = vec![
        Box::new(chained::Arwhead::new()),
        Box::new(small::Beale::new()),
        Box::new(small::Booth::new()),
        Box::new(small::Box3::new()),
        Box::new(small::Brownden::new()),
        Box::new(boundary::Broyden3d::new()),
        Box::new(small::Cliff::new()),
        Box::new(chained::Cosine::new()),
        Box::new(chained::Cube::new()),
        Box::new(dixmaan::Dixmaan::new('a')),
        Box::new(dixmaan::Dixmaan::new('e')),
        Box::new(dixmaan::Dixmaan::new('i')),
        Box::new(dixmaan::Dixmaan::new('l')),
        Box::new(chained::Dqrtic::new()),
        Box::new(chained::Edensch::new()),
        Box::new(chained::Engval1::new()),
        Box::new(chained::Extrosnb::new()),
        Box::new(chained::Freuroth::new()),
        Box::new(chained::Genhumps::new()),
        Box::new(blocks::Helix::new()),
        Box::new(small::Jensmp::new()),
        Box::new(small::Kowosb::new()),
        Box::new(grid::Lminsurf::new()),
        Box::new(boundary::Morebv::new()),
        Box::new(chained::Nondia::new()),
        Box::new(chained::Nondquar::new()),
        Box::new(blocks::Powellsg::new()),
        Box::new(chained::Rosenbr::new()),
        Box::new(chained::Tridia::new()),
        Box::new(chained::Vardim::new()),
        Box::new(blocks::Woods::new()),
        Box::new(small::Zangwil2::new()),
        Box::new(small::Zangwil3::new()),
    ];
    v.sort_by(|a, b| a.name().cmp(b.name()));
    v
}

/// A documented minimizer for problems whose source gives one, at dimension
/// `n`. Used to confirm the published optimal value.
pub fn known_minimizer(name: &str, n: usize) -> Option<Vec<f64>> {
    let ones = vec![1.0; n];
    Some(match name {
        "rosenbr" | "cube" | "extrosnb" | "nondia" | "vardim" | "woods" => ones,
        "arwhead" => {
            let mut x = ones;
            x[n - 1] = 0.0;
            x
        }
        "dqrtic" => (1..=n).map(|i| i as f64).collect(),
        "tridia" => (0..n).map(|i| 0.5f64.powi(i as i32)).collect(),
        "dixmaana" | "dixmaane" | "dixmaani" | "dixmaanl" | "powellsg" | "nondquar"
        | "zangwil3" | "genhumps" => vec![0.0; n],
        "helix" => (0..n)
            .map(|i| if i % 3 == 0 && i + 2 < n { 1.0 } else { 0.0 })
            .collect(),
        "beale" => vec![3.0, 0.5],
        "booth" => vec![1.0, 3.0],
        "box3" => vec![1.0, 10.0, 1.0],
        "zangwil2" => vec![4.0, 9.0],
        "lminsurf" => grid::plane(n),
        _ => return None,
    })
}
