//! Tile approximations: F, the slices G(x), SRS tiles, and rigorous bounds.

mod bounds;
mod cloud;
mod context;

pub use bounds::TileBounds;
pub use cloud::{
    approximate_f, approximate_g, approximate_srs_tile, completion, preimage_tree, slice_decomposition, srs_tile_point,
    surrogate_value, CloudPoint, Origin, PointSource, SliceWindow, TileCloud, TileKind, TreeNode, TreeOptions,
    DEFAULT_LOOKAHEAD, DEFAULT_NODE_LIMIT,
};
pub use context::{TileContext, TileError};
