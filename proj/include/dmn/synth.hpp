#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dmn/model.hpp"

namespace dmn {

struct ColumnSpec {
  bool categorical = false;
  std::int64_t lo = 0;       // numeric columns: integer facet [lo..hi]
  std::int64_t hi = 10'000;
  std::size_t arity = 8;     // categorical columns: number of categories

  bool operator==(const ColumnSpec&) const = default;
};

struct GenSpec {
  std::vector<ColumnSpec> columns;
  std::size_t target_rules = 1;
  std::uint64_t seed = 0;
};

// The benchmark column mixes: 3 = 1 categorical + 2 numeric, 5 = 2 + 3,
// 7 = 2 + 5. Other counts put one categorical column first, rest numeric.
std::vector<ColumnSpec> standard_columns(std::size_t count);

// "7" for a standard mix, or an explicit list such as "cat:8,int:0:10000".
std::vector<ColumnSpec> parse_column_spec(std::string_view text);

// Guillotine partition of the universe into target_rules leaves, one rule per
// leaf, each with a random grade. No overlaps, no gaps.
DecisionTable generate_table(const GenSpec& spec);

enum class NoiseMode : std::uint8_t { Overlap, Missing };

// Perturbs ceil(fraction * |R|) distinct rules in one random column each:
// widening by one unit (or one extra category) for Overlap, shrinking for
// Missing. Columns that cannot change are skipped in favour of others.
DecisionTable inject_noise(const DecisionTable& table, NoiseMode mode, double fraction, std::uint64_t seed);

// Noise seed derived from a generator seed, one stream per mode.
std::uint64_t noise_seed(std::uint64_t seed, NoiseMode mode);

// Pairwise overlap reports in the non-maximal style: for every pair of rules,
// one entry per box fragment of their intersection, where fragments are cut
// by the boundaries of the other rules crossing it.
std::size_t pairwise_overlap_fragments(const DecisionTable& table);

struct BenchCell {
  std::size_t columns = 0;
  std::size_t rules = 0;
  double overlap_ms = 0;
  double missing_ms = 0;
  std::size_t overlap_groups = 0;
  std::size_t missing_regions = 0;
  std::size_t pairwise_fragments = 0;
  std::uint64_t seed = 0;
};

struct BenchReport {
  std::vector<BenchCell> cells;

  std::string to_json() const;
  std::string to_text() const;
};

// Overlap detection is timed on the overlap-noised copy and missing detection
// on the missing-noised copy, each averaged over `runs`.
BenchReport run_benchmark(const std::vector<GenSpec>& specs, double noise_fraction, std::size_t runs = 5);

struct BenchSuite {
  std::vector<GenSpec> specs;
  double noise_fraction = 0.1;
  std::size_t runs = 5;
};

// {"noiseFraction": 0.1, "runs": 5, "specs": [{"columns": "7", "rules": 1500, "seed": 1}, ...]}
BenchSuite load_suite(std::string_view document);

}  // namespace dmn
