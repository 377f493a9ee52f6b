#pragma once

namespace gausskin {

/// Physical constants plus the global check tolerance. Defaults are the
/// unit-scaled choices hbar = kb = 1; tolerance applies to "within
/// tolerance" checks on unit-scaled problems.
struct Constants {
    double hbar = 1.0;
    double kb = 1.0;
    double tol = 1e-9;
};

}  // namespace gausskin
