#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nbtower/tower_file.hpp"

namespace nbtower {

struct BenchRow {
  std::string operation;  // "multiply" or "frobenius"
  std::string basis;
  double serial_ops_per_sec = 0;
  double parallel_ops_per_sec = 0;
};

struct BenchReport {
  std::size_t ops = 0;
  std::size_t level = 0;        // 1-based
  std::size_t abs_degree = 0;
  std::size_t nonzero_structure_constants = 0;
  int threads = 1;
  /// Pairs whose table-driven product was compared with the polynomial-basis
  /// product, and how many disagreed.
  std::size_t gate_checked = 0;
  std::size_t gate_mismatches = 0;
  std::vector<BenchRow> rows;

  bool gate_ok() const noexcept { return gate_mismatches == 0; }
  std::string to_text() const;
};

/// The normal-basis table of a level: the delta table for Artin-Schreier
/// levels, the Kummer table otherwise.
const MultTable& normal_table(const LevelEntry& entry);

/// Multiplies `ops` seeded random pairs in both bases on `level` (1-based; 0
/// picks the last level) and applies the relative Frobenius both ways. Every
/// product is cross-checked before timing results are trusted. With
/// ops == 0 the report is empty.
BenchReport run_bench(const TowerFile& file, std::size_t ops, std::uint64_t seed, std::size_t level = 0);

}  // namespace nbtower
