//! Deterministic model of a continuous-wave ESR spectrometer operating inside
//! a transmission electron microscope: spin physics, lens-current calibration,
//! a reflection microresonator, lineshapes, the detection noise chain, and a
//! seeded sweep engine with lock-in demodulation.

pub mod calibration;
pub mod constants;
pub mod error;
pub mod lineshape;
pub mod lockin;
pub mod physics;
pub mod resonator;
pub mod sensitivity;
pub mod sweep;

pub use calibration::LensCalibration;
pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use lineshape::{FieldInhomogeneity, LineshapeParams, WidthAxis};
pub use lockin::{lockin_demodulate, LockInSettings};
pub use physics::SpinSystem;
pub use resonator::ResonatorModel;
pub use sensitivity::{
    EstimateMode, LedgerStage, NoiseLedger, SensitivityEstimate, SensitivityInputs,
};
pub use sweep::{
    AxisKind, AxisRange, ModulationSettings, Spectrum, Spectrum2d, SpectrumMeta, SweepAxis,
    SweepContext, SweepPlan,
};
