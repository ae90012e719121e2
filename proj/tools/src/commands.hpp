#pragma once

#include <cstdint>
#include <string>

#include "teichcells/cli/io.hpp"
#include "teichcells/cli/suites.hpp"
#include "teichcells/delaunay.hpp"

namespace teichcells::cli {

struct CommandOptions {
  std::string surface;
  std::string metric;
  int metric_index = 0;
  std::string point;
  double h = 0.0;
  double tolerance = delaunay::kDefaultZeroTolerance;
  bool emit_development = false;
  int anchor = 0;
  int count = 1;
  std::uint64_t seed = 0;
  std::string suite = "all";
  int samples = 200;
};

Json surface_info(const CommandOptions& o);
Json psi_command(const CommandOptions& o);
Json delaunay_command(const CommandOptions& o);
Json pi_command(const CommandOptions& o);
Json pi_inverse_command(const CommandOptions& o);
Json sample_command(const CommandOptions& o);
VerificationReport verify_command(const CommandOptions& o);

}  // namespace teichcells::cli
