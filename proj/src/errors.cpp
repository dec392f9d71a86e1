#include "carpetlab/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace carpetlab {

namespace {

std::uint64_t initial_cap() {
    const char* env = std::getenv("CARPETLAB_MEMCAP");
    if (env == nullptr || *env == '\0') return std::uint64_t{1} << 26;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0)
        throw input_error("CARPETLAB_MEMCAP must be a positive integer, got \"" +
                          std::string(env) + "\"");
    return v;
}

std::atomic<std::uint64_t>& cap_slot() {
    static std::atomic<std::uint64_t> cap{initial_cap()};
    return cap;
}

}  // namespace

std::uint64_t cell_cap() { return cap_slot().load(std::memory_order_relaxed); }

void set_cell_cap(std::uint64_t cap) {
    if (cap == 0) throw input_error("cell cap must be positive");
    cap_slot().store(cap, std::memory_order_relaxed);
}

void require_cells(std::uint64_t n, const char* what) {
    std::uint64_t cap = cell_cap();
    if (n > cap)
        throw resource_error(std::string(what) + " needs " + std::to_string(n) +
                             " cells, above the cap of " + std::to_string(cap) +
                             " (raise with --memcap or CARPETLAB_MEMCAP)");
}

}  // namespace carpetlab
