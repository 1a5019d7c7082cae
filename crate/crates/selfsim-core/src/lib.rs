//! Self-similar polygonal tilings from generating pairs.
//!
//! A *generating pair* is a polygon `p` together with similitudes
//! `f_1 .. f_N` whose images partition `p` and whose scaling ratios are all
//! integer powers of a common base `s` in `(0,1)`. From such a pair and an
//! infinite symbol stream θ over `{1..N}` one constructs tilings of
//! (part of) the plane by blowing `p` up along the inverse maps prescribed
//! by θ and subdividing down to a fixed scale band.
//!
//! The crate is `no_std` (with `alloc`); all types are immutable values and
//! all operations are pure functions, so everything here is safe to use from
//! multiple threads without synchronization. IO, file formats and the CLI
//! live in the companion `selfsim` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod addresses;
pub mod density;
pub mod geometry;
pub mod pairs;
pub mod tiling;

mod math;

pub use addresses::{Address, AddressError, Frontier, ThetaStream};
pub use density::{DensityError, DensityVector, SubdivisionMatrix};
pub use geometry::{
    Aabb, Disk, GeometryError, Location, Point, Polygon, Similitude, Tolerance,
};
pub use pairs::{CatalogName, GeneratingPair, PairError, ValidationReport};
pub use tiling::{Patch, PrototileSet, Tile, TilingCaps, TilingError, WindowTiling};
