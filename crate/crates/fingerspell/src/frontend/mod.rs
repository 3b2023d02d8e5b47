//! Image-to-feature pipeline: multi-grid HoG on 128x128 grayscale images,
//! PCA dimensionality reduction, and multi-frame window concatenation.

mod hog;
mod pca;
mod window;

pub use hog::{hog, HogConfig};
pub use pca::{pca_fit, PcaModel};
pub use window::{window_concat, WindowConfig};
