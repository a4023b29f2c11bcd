#pragma once

namespace ncsphere {

/// All numeric tolerances in one place, with their defaults. Every consumer
/// takes a Tolerances argument (defaulted), so the CLI can override any field.
struct Tolerances {
    double eps_eq = 1e-9;           // float-mode coefficient zero test
    double eps_rel = 1e-9;          // numeric homomorphism validation residual
    double rep_residual = 1e-12;    // rational-representation relation residual
    double det_parity = 1e-9;       // determinant antisymmetry residual
    double point_residual = 1e-12;  // sphere-point constraint residual
    double winding_closure = 1e-6;  // accumulated argument must be this close to 2*pi*Z
    double min_det = 1e-8;          // loops must stay this far from singular
    double invariance = 1e-9;       // loop invariance residual
    double grid_slack = 1e-9;       // allowed grid-vs-exact-bound slack
};

}  // namespace ncsphere
