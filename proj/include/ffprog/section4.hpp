#pragma once

// Numeric replication of the q >= 79 / n >= 13 existence argument for
// three consecutive 2-primitive elements with a 2-normal member.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ffprog {

struct ReplicationStep {
  std::string id;
  std::string claim;
  bool ok = false;
  std::vector<std::pair<std::string, std::string>> values;
};

struct ChainStage {
  std::uint64_t p0 = 0;
  std::string q_max;      // bound entering the stage
  std::string threshold;  // max over t of (3 Delta(t) 2^(3t+1))^(1/c)
  std::string threshold_3t3;  // same with 2^(3(t+1))
  unsigned t_at_max = 0;
  unsigned long u_at_max = 0;
  std::string Delta_at_max;
};

struct Section4Config {
  std::vector<std::uint64_t> p0_chain{223, 107, 73, 67, 61, 59, 59};
  bool throw_on_mismatch = true;
};

struct Section4Report {
  std::vector<ReplicationStep> steps;
  std::vector<ChainStage> chain;
  bool ok() const;
};

/// Throws Error(ReplicationMismatch) naming the first failing step unless disabled.
Section4Report replicate_section4(const Section4Config& config = {});

/// Round x (decimal scientific string) up to the given significant digits.
std::string round_up_sig(const std::string& x, int digits);

}  // namespace ffprog
