#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nbtower/kummer.hpp"
#include "nbtower/oracle.hpp"
#include "nbtower/structure_tables.hpp"
#include "nbtower/tower.hpp"

namespace nbtower {

struct KummerEntry {
  KummerLevel level;
  MultTable table;
};

using LevelEntry = std::variant<TowerLevel, KummerEntry>;

/// In-memory form of a saved file. Artin-Schreier levels chain: level i is
/// built over level i-1 (the prime field for the first). A Kummer level stands
/// alone over its own F_{p^l}.
struct TowerFile {
  std::uint32_t p = 0;
  std::vector<LevelEntry> levels;
};

TowerFile tower_file(const TowerSpec& spec);
TowerFile tower_file(const KummerLevel& level);

/// Canonical JSON text (sorted keys, two-space indent, trailing newline).
std::string save(const TowerFile& file);
/// Throws Error(BadInput) on malformed JSON or structurally invalid content
/// (wrong lengths, out-of-range residues, non-prime p, non-monic moduli).
/// Mathematical correctness is left to verify_file.
TowerFile load(const std::string& text);

void save_file(const TowerFile& file, const std::string& path);
/// Throws Error(BadInput) when the file cannot be read.
TowerFile load_file(const std::string& path);

/// Re-runs every invariant on loaded data: level invariants and chaining,
/// each stored row against direct products, the stored tables against the
/// closed forms, and oracle irreducibility and minimal-polynomial checks where
/// the degree is within max_degree(). `deep` adds the m*m full-table check.
VerificationReport verify_file(const TowerFile& file, bool deep = false);

}  // namespace nbtower
