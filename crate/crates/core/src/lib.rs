//! Weak dominance drawings of DAGs with the minimum number of falsely
//! implied paths (fips).
//!
//! A `d`-dimensional drawing assigns each vertex one rank per dimension,
//! every dimension being a topological order. A path `u -> v` forces `u`
//! before `v` everywhere; an incomparable pair drawn that way is a fip.
//! The minimum over all drawings is computed bottom-up over the path-based
//! modular decomposition tree, with exhaustive search confined to the
//! quotients of prime nodes.
//!
//! Costs are generic over [`Weight`]; the aliases below fix them to the
//! common widths.

pub mod decomposition;
pub mod drawing;
pub mod error;
pub mod graph;
pub mod index;
pub mod optimizer;
pub mod svg;
pub mod weight;

pub use decomposition::{
    enumerate_all_modules, is_module, k_parameter, md_tree, minimal_module, quotient, MdNode,
    MdTree, ModuleCensus, ModuleKind,
};
pub use drawing::{
    check_valid, classify_fips, compaction, compaction_detailed, contract, fip_count, fips,
    is_compact, separator, validate, Compaction, Drawing, FipClass,
};
pub use error::{Error, Result};
pub use graph::{
    gen_antichain, gen_chain, gen_crown, gen_random_dag, parse_edge_list, topological_orders,
    write_edge_list, Dag, Generator, Reachability,
};
pub use index::{Answer, Index, IndexStats, Method, QueryResult};
pub use optimizer::{
    brute_force_min_cost, brute_force_min_fips, brute_force_quotient, coordinate_assignment,
    dominance_dimension, dominance_dimension_at_most, expand, expand_by_coordinates,
    fpt_min_fips, outer_fips_lower_bound_check, SearchLimits,
};
pub use svg::{render_svg, SvgOptions};
pub use weight::Weight;

/// Default cost type.
pub type Cost = u64;

pub type FipReport<W = Cost> = drawing::FipReport<W>;
pub type FipReport32 = drawing::FipReport<u32>;
pub type FipReport128 = drawing::FipReport<u128>;

pub type QuotientGraph<W = Cost> = decomposition::QuotientGraph<W>;
pub type QuotientGraph32 = decomposition::QuotientGraph<u32>;
pub type QuotientGraph128 = decomposition::QuotientGraph<u128>;

pub type OptResult<W = Cost> = optimizer::OptResult<W>;
pub type OptResult32 = optimizer::OptResult<u32>;
pub type OptResult128 = optimizer::OptResult<u128>;
