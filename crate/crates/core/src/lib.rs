//! Exact construction, point counting and structural analysis of
//! hypersurfaces over finite fields, centred on the hypersurfaces whose
//! number of rational points reaches the bound
//! `(d-1)q^n + d q^(n-1) + q^(n-2) + ... + q + 1`.

pub mod analysis;
pub mod bounds;
pub mod constructions;
pub mod equivalence;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod projgeo;
pub mod scan;
pub mod verify;

pub use analysis::{ConeReport, CoverageReport, SingularityReport};
pub use bounds::{BoundReport, Classification, ClassifyOptions, TheoremCase, Verdict};
pub use equivalence::{EquivalenceVerdict, Fingerprint, SearchOptions};
pub use error::{Error, Result};
pub use gf::{make_field, Elem, Field};
pub use linalg::Matrix;
pub use poly::{Hypersurface, MultiPoly};
pub use projgeo::{LinearSubspace, ProjectivePoint};
pub use scan::{Family, ScanConfig, ScanReport};
pub use verify::{Grid, VerifyOptions, VerifyReport};
