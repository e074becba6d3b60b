#pragma once

// Run configuration for the verification campaign.
//
// INI text with fixed sections and keys; unknown sections or keys are
// errors. serialize() writes every key in a fixed order, so
// parse_config(serialize(c)) == c and equal configs serialize identically.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vpa/checks.hpp"
#include "vpa/fourier.hpp"

namespace vpa {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// m = floor(n * num / den).
struct MRule {
  std::size_t num = 0;
  std::size_t den = 1;

  std::size_t apply(std::size_t n) const { return n * num / den; }
  friend bool operator==(const MRule&, const MRule&) = default;
};

struct RunConfig {
  // [run]
  std::vector<std::string> corpus;  // empty: the default corpus
  std::vector<Statement> statements = all_statements();
  std::string output = "reports";
  std::size_t samples = 4096;

  // [grid]
  std::vector<std::size_t> n_list{4, 8, 16, 32, 64, 128};
  std::vector<MRule> m_rules{{0, 1}, {1, 4}, {1, 2}, {1, 1}};
  std::size_t x_count = 17;
  std::vector<LebesgueExponent> p_list{LebesgueExponent::finite(1), LebesgueExponent::finite(2),
                                       LebesgueExponent::infinity()};

  // [tolerances]
  Tolerances tol;

  // [lemma1]
  std::vector<std::size_t> l1_n{1, 2, 4, 8};
  std::vector<LebesgueExponent> l1_p{LebesgueExponent::finite(2), LebesgueExponent::infinity()};
  std::size_t l1_x_count = 5;
  std::vector<std::size_t> l1_k{0, 1, 3, 7};

  // [lemma2]
  std::size_t l2_max_n = 32;
  std::size_t l2_max_m = 32;
  std::size_t l2_deltas = 20;  // delta_i = pi (i+1) / count

  // [c1]
  std::vector<std::size_t> c1_n{8, 16, 32, 64, 128, 256, 512};
  std::size_t c1_from = 16;
  std::size_t c1_to = 256;
  std::vector<double> c1_points{-2.0, 0.3, 1.5};
  std::vector<std::pair<std::string, double>> c1_controls{{"sawtooth", -kPi}};

  // [cmp]
  std::size_t cmp_samples = 2048;
  std::vector<std::size_t> cmp_k{0, 1, 3, 7, 15};

  // [fit]
  std::size_t fit_split = 32;  // K is also fitted on n <= fit_split

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError on syntax errors, unknown keys or invalid values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize(const RunConfig& c);

/// Throws ConfigError if the values are inconsistent (for example a sample
/// count too small for the requested degrees).
void validate(const RunConfig& c);

// List helpers shared with the command line.
std::vector<std::string> split_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<Statement> parse_statement_list(const std::string& text);

}  // namespace vpa
