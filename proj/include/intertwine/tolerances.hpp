#pragma once

namespace intertwine {

/// Acceptance thresholds.  All are configurable per run.
struct Tolerances {
  double relation = 1e-8;       // operator identities on test families
  double mapping = 1e-8;        // D psi_n against c psi_{n+m}
  double arithmetic = 1e-13;    // energy identities (relative)
  double eigenpair = 1e-9;      // ||(H - E) psi|| / ||psi||
  double orthogonality = 1e-8;  // |<psi_m, psi_n>|
  double closure = 1e-7;        // double-commutator identity
  double shape = 1e-9;          // shape-invariance residual
  double epsilon_spread = 1e-8; // spread of fitted shape-invariance offsets
  double scaling = 1e-9;        // hydrogen argument rescaling
  double annihilation = 1e-10;  // max |a psi_0| / max |psi_0|
  double gap = 1e-10;           // ladder energy gaps against alpha
  double overlap = 1e-7;        // 1 - overlap of chain-built states
  double oracle = 1e-5;         // finite-difference eigenvalues (relative)
  double oracle_overlap = 1e-5; // 1 - overlap of finite-difference eigenvectors
  double order_band = 0.3;      // |observed order - 2|
};

}  // namespace intertwine
