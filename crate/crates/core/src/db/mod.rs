//! Operator files and the bundled dataset.

mod cyop;
mod dataset;

pub use cyop::{parse_cyop, serialize_cyop, CyopDoc, CyopError};
pub use dataset::{
    bundled, find, load_dataset, parse_dataset, serialize_dataset, DatasetError, DatasetRecord, Note,
};
