//! Zonal and global kernels of the Landau–Zeeman operator: the point-spread
//! projection onto a zone, the Wiener and Schrödinger flows, and partition
//! functions.

mod flows;
mod partition;
mod projection;

pub use flows::{
    global_wiener_ball_trace, schrodinger_global, schrodinger_zonal, wiener_global, wiener_zonal, CAUSTIC_TOLERANCE,
    MAX_SPECTRAL_TERMS,
};
pub use partition::{partition_complex, partition_spectral, partition_zonal, FlowVariant};
pub use projection::{point_spread, spectral_kernel_oracle, zone_eigenfunction, KernelKind, KernelPoint, KernelValue};
