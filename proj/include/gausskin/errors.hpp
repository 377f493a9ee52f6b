#pragma once

#include <stdexcept>
#include <string>

namespace gausskin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dimension mismatch between an operand and the object it is applied to
struct ShapeError : Error { using Error::Error; };
// a coefficient function produced a non-finite value
struct EvaluationError : Error { using Error::Error; };
// the propagator left the representable range; message carries the step index
struct DivergenceError : Error { using Error::Error; };
// AA^T + BB^T (or another SPD intermediate) lost positivity
struct FactorizationError : Error { using Error::Error; };
// s^2 of a state is not invertible
struct SingularStateError : Error { using Error::Error; };
// the irrotational/rotational flux split is undefined for this spec/time
struct SplitUndefinedError : Error { using Error::Error; };
// wavefunction grid too small, wrong size, or denormalized
struct GridError : Error { using Error::Error; };
// PDE oracle invoked with position-momentum coupling or n > 1
struct UnsupportedCouplingError : Error { using Error::Error; };
// Riccati trajectory left the Siegel upper half-space
struct BlowUpError : Error { using Error::Error; };
// scenario/input failed schema or invariant validation
struct ValidationError : Error { using Error::Error; };

}  // namespace gausskin
