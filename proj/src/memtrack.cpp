#include "pgb/memtrack.hpp"

#include <cstdlib>
#include <malloc.h>
#include <new>

namespace {

thread_local std::uint64_t t_current = 0;
thread_local std::uint64_t t_peak = 0;

inline void account_alloc(void* p) {
    t_current += malloc_usable_size(p);
    if (t_current > t_peak) t_peak = t_current;
}

inline void account_free(void* p) {
    std::uint64_t sz = malloc_usable_size(p);
    t_current = sz > t_current ? 0 : t_current - sz;
}

void* tracked_alloc(std::size_t size) {
    void* p = std::malloc(size ? size : 1);
    if (!p) throw std::bad_alloc();
    account_alloc(p);
    return p;
}

void* tracked_alloc_aligned(std::size_t size, std::size_t align) {
    void* p = nullptr;
    if (posix_memalign(&p, align, size ? size : align) != 0) throw std::bad_alloc();
    account_alloc(p);
    return p;
}

void tracked_free(void* p) noexcept {
    if (!p) return;
    account_free(p);
    std::free(p);
}

} // namespace

namespace pgb::memtrack {

void reset_thread() {
    t_current = 0;
    t_peak = 0;
}

std::uint64_t thread_current_bytes() { return t_current; }
std::uint64_t thread_peak_bytes() { return t_peak; }

} // namespace pgb::memtrack

void* operator new(std::size_t size) { return tracked_alloc(size); }
void* operator new[](std::size_t size) { return tracked_alloc(size); }
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
    try { return tracked_alloc(size); } catch (...) { return nullptr; }
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
    try { return tracked_alloc(size); } catch (...) { return nullptr; }
}
void* operator new(std::size_t size, std::align_val_t align) {
    return tracked_alloc_aligned(size, static_cast<std::size_t>(align));
}
void* operator new[](std::size_t size, std::align_val_t align) {
    return tracked_alloc_aligned(size, static_cast<std::size_t>(align));
}

void operator delete(void* p) noexcept { tracked_free(p); }
void operator delete[](void* p) noexcept { tracked_free(p); }
void operator delete(void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete[](void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { tracked_free(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { tracked_free(p); }
void operator delete(void* p, std::align_val_t) noexcept { tracked_free(p); }
void operator delete[](void* p, std::align_val_t) noexcept { tracked_free(p); }
void operator delete(void* p, std::size_t, std::align_val_t) noexcept { tracked_free(p); }
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept { tracked_free(p); }
