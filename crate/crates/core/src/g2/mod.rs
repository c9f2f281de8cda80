//! The exceptional Lie algebra g2: Chevalley basis, adjoint orbits and the
//! invariant sextics cutting out the dual variety and its companion.

pub mod orbit;
pub mod roots;
pub mod sextics;
pub mod structure;

pub use orbit::{aut0_of_section, matrix_jordan_decomposition, Aut0, NilpotentKind, OrbitClass, OrbitTag};
pub use roots::{Root, RootSystemG2, ALPHA1, ALPHA2, POSITIVE_ROOTS, THETA};
pub use sextics::root_product_sextics;
pub use structure::{build_g2, root_index, G2Element, G2Structure, StructureTable, DIM, RANK};
