#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polytree/model.hpp"

namespace polytree::cli {

struct BenchRow {
  std::string instance;
  std::size_t n = 0;
  std::string algo;
  Score score = kNegInf;
  Score opt = kNegInf;
  double ratio = 1.0;
  std::uint64_t states_visited = 0;
  double runtime_ms = 0.0;
  /// Proven ratio for approximation rows; exact rows have none.
  std::optional<double> bound;
};

/// Suites: "small" (n 4..8, every algorithm incl. component-bounded ones)
/// and "medium" (n 10..14, DP variants and the two unconstrained greedies).
std::vector<BenchRow> run_bench_suite(const std::string& suite, bool timing = true);

/// Header instance,n,algo,score,opt,ratio,states_visited,runtime_ms.
std::string write_bench_csv(const std::vector<BenchRow>& rows);

}  // namespace polytree::cli
