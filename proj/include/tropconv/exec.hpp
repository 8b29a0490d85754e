#pragma once

namespace tropconv {

/// Selects the OpenMP kernels or the single-threaded reference path. Both
/// produce bitwise identical results.
enum class Exec { serial, parallel };

/// Applies TROPCONV_THREADS (if set) to the OpenMP runtime.
void configure_threads_from_env();

}  // namespace tropconv
