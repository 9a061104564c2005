#pragma once

#include <cstdint>
#include <filesystem>

#include "swarmsim/types.hpp"

namespace swarmsim {

/// Every off-diagonal link at the same efficiency l.
Environment flat_env(std::size_t n, double l);

/// Symmetric Erdos-Renyi 0/1 environment: each unordered pair gets an
/// efficient link independently with probability p. Deterministic per
/// seed, so a sweep can reuse one network across loss values.
Environment er_env(std::size_t n, double p, std::uint64_t seed);

/// Read an environment from CSV: N rows of N comma-separated efficiencies,
/// row = sender, column = receiver. Throws ConfigError with row/column
/// diagnostics on parse failures, non-square input, or out-of-range cells.
Environment load_env(const std::filesystem::path& path);

/// Write the CSV form load_env reads; full precision, round-trip exact.
void save_env(const Environment& env, const std::filesystem::path& path);

}  // namespace swarmsim
