//! Speaker diarization and detection backbone for single-microphone recordings.
//!
//! The crate is organized as a pipeline of independent stages:
//!
//! * [`timeline`] — time-segment algebra, speaker annotations, RTTM/UEM parsing
//! * [`frontend`] — WAV ingestion, MFCC / log-mel features, sliding CMN, energy VAD
//! * [`embedding`] — sliding-window speaker embeddings behind a provider trait
//! * [`plda`] — two-covariance PLDA: EM training, adaptation, verification scoring
//! * [`diarizer`] — AHC clustering, VB-HMM resegmentation, overlap-aware assignment
//! * [`detection`] — enrollments, test chunking, trial generation, scoring, calibration
//! * [`metrics`] — DER with optimal speaker mapping, EER, minDCF/actDCF
//! * [`harness`] — synthetic-conversation generator and ablation runner
//!
//! Every stage is pure over immutable inputs; recordings can be processed
//! concurrently without shared state.

pub mod archive;
pub mod detection;
pub mod diarizer;
pub mod embedding;
pub mod frontend;
pub mod harness;
pub mod metrics;
pub mod plda;
pub mod timeline;
