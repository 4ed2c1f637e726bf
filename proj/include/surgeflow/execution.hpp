#pragma once

namespace surgeflow {

/// Selects the OpenMP kernel or the serial reference. Both produce identical
/// results; the serial path exists for testing and benchmarking.
enum class Execution { Serial, Parallel };

}  // namespace surgeflow
