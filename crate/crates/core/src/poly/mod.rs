//! Exact rational polynomials in one and two variables, with real-root
//! machinery.

mod algebra;
mod bi;
mod json;
mod roots;
mod uni;

pub use algebra::{determinant, discriminant, resultant, sylvester_matrix, wronskian};
pub use bi::BiPoly;
pub use roots::{
    all_roots_real, cauchy_bound, is_nonnegative_on_reals, is_nonpositive_on_reals, isolate_real_roots,
    real_root_count_with_multiplicity, squarefree_decomposition, squarefree_part, sturm_count, Bound,
    IsolatingInterval, RootIsolation, SturmChain,
};
pub use uni::UniPoly;
