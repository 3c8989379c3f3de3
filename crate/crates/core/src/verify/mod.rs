//! Tiling certificates, covering multiplicity, volume balance, and almost periodicity.

mod certificate;
mod coverage;
mod frame;
mod hausdorff;
mod image;
mod standard;

pub use certificate::{
    check_certificate, find_exclusive_point, neighbor_set, CertificateCheck, CertificateError, SearchBudget,
    TilingCertificate,
};
pub use coverage::{
    estimate_multiplicity, estimate_multiplicity_in, sample_points, volume_balance, Coverage, MultiplicityReport,
    TranslateSet, VolumeBalance, Window,
};
pub use frame::LatticeFrame;
pub use hausdorff::{
    directed_hausdorff, hausdorff_distance, hausdorff_report, lattice_level, HausdorffReport, DEFAULT_LEVEL_CAP,
};
pub use image::{image_characterization, image_characterization_window, ImageCharacterization, DEFAULT_IMAGE_WINDOW};
pub use standard::{check_standard, greedy_point, witness_point};
