#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace carpetlab {

// Malformed or out-of-contract user input. CLI maps this to exit code 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation was refused because it would exceed the configured cell cap.
// Not a wrong input; CLI maps this to exit code 1 with a "resource" prefix.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed. CLI maps this to exit code 2.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Cell-count cap for prefractal grids and Hata graph vertex sets.
// Default 2^26, overridable via the CARPETLAB_MEMCAP environment variable
// or set_cell_cap() (the CLI --memcap flag).
std::uint64_t cell_cap();
void set_cell_cap(std::uint64_t cap);

// Throws resource_error when n exceeds the cap.
void require_cells(std::uint64_t n, const char* what);

}  // namespace carpetlab
