//! Persistence: a self-describing little-endian binary container for
//! realizations and strength grids, and CSV tables for far fields, band
//! averages, grids and traces.

mod container;
mod tables;

pub use container::{kind_to_f64, Container, Content, Header, Precision, FORMAT_VERSION, MAGIC};
pub use tables::{
    write_band_csv, write_farfield_csv, write_realization_csv, write_slice_csv, write_strength_csv, write_trace_csv,
};
