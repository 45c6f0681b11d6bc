pub mod budget;
pub mod catalog;
pub mod coline;
pub mod cover;
pub mod edges;
pub mod error;
pub mod graph;
pub mod interval_order;
pub mod line_box;
pub mod oracle;

pub use budget::Budget;
pub use edges::{EdgeIndex, EdgeSubset};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, LineVertex};
