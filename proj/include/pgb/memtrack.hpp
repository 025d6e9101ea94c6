#ifndef PGB_MEMTRACK_HPP
#define PGB_MEMTRACK_HPP

#include <cstdint>

namespace pgb::memtrack {

/// Allocation high-water accounting, per thread, via the global
/// operator new/delete overrides. Best effort: usable malloc sizes are
/// counted, allocations freed on another thread are charged there.
void reset_thread();
std::uint64_t thread_current_bytes();
std::uint64_t thread_peak_bytes();

} // namespace pgb::memtrack

#endif
