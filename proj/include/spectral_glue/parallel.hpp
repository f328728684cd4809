#pragma once

namespace spectral_glue {

/// Which implementation of a data-parallel kernel to run. The serial path is
/// the reference the OpenMP path is tested against; both produce identical
/// results.
enum class Execution { serial, parallel };

/// Worker count for OpenMP regions: the OpenMP default, capped by the
/// SPECTRAL_GLUE_THREADS environment variable when it holds a positive integer.
int worker_count();

}  // namespace spectral_glue
