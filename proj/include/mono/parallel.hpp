#pragma once

#include <functional>

namespace mono {

// Execution mode for batches of independent jobs. Serial is the reference
// implementation; OpenMP distributes jobs across threads. Each job writes its
// own output slot, so results are identical bit for bit in either mode.
enum class ExecMode { Serial, OpenMP };

inline ExecMode default_exec_mode() {
#ifdef MONO_HAVE_OPENMP
    return ExecMode::OpenMP;
#else
    return ExecMode::Serial;
#endif
}

void parallel_for(int n, const std::function<void(int)>& fn, ExecMode mode);

} // namespace mono
