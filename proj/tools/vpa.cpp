// vpa: coefficient dumps, index sequences and the verification campaign.

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "vpa/best_approx.hpp"
#include "vpa/campaign.hpp"
#include "vpa/config.hpp"
#include "vpa/corpus.hpp"
#include "vpa/report.hpp"
#include "vpa/sequences.hpp"

namespace {

using namespace vpa;

int cmd_coeffs(const std::string& name, std::size_t samples, std::size_t kmax) {
  const CorpusFunction& f = find_function(name);
  write_coefficients_csv(std::cout, compute_coefficients(f.sample(samples), kmax));
  return kExitOk;
}

int cmd_verify(const std::string& config_path, const std::string& out, const std::optional<std::string>& statements,
               const std::string& corpus, const std::string& grid_n, bool quiet) {
  RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
  if (statements) c.statements = parse_statement_list(*statements);
  if (!corpus.empty()) {
    c.corpus = split_list(corpus);
    if (c.corpus.size() == 1 && c.corpus[0] == "all") c.corpus.clear();
  }
  if (!grid_n.empty()) c.n_list = parse_size_list(grid_n);
  if (!out.empty()) c.output = out;
  validate(c);

  const CampaignResult result = run_campaign(c, quiet ? nullptr : &std::cerr);
  write_campaign(result, c, c.output);
  if (!quiet && !c.statements.empty()) {
    for (const auto& [id, rs] : result.reports) {
      std::size_t passed = 0;
      for (const auto& r : rs) passed += r.pass ? 1 : 0;
      std::cerr << to_string(id) << ": " << passed << "/" << rs.size() << " pass";
      if (auto it = result.fits.find(id); it != result.fits.end() && !it->second.vacuous) {
        std::cerr << ", K=" << it->second.K;
      }
      std::cerr << "\n";
    }
  }
  return result.exit_code();
}

int cmd_decreasing(std::size_t m) {
  const DecreasingSeq seq = decreasing_seq(m);
  std::cout << to_json(seq).dump(2) << "\n";
  return kExitOk;
}

int cmd_increasing(const std::string& name, std::size_t n, std::size_t m, double x, const std::string& p_text,
                   std::size_t samples) {
  if (m == 0 || m > n) throw std::invalid_argument("increasing sequence needs 0 < m <= n");
  const LebesgueExponent p = LebesgueExponent::parse(p_text);
  const GridFunction g = find_function(name).sample(samples);
  const BestApproxCache cache(g);
  std::map<std::pair<std::size_t, std::size_t>, double> memo;
  const FQuery F = [&](std::size_t degree, std::size_t mu) {
    auto [it, fresh] = memo.try_emplace({degree, mu}, 0.0);
    if (fresh) it->second = F_average(cache, degree, mu, x, p, WindowVariant::SupOverH).average;
    return it->second;
  };
  std::cout << to_json(increasing_seq(F, n, m)).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"de la Vallee-Poussin mean error bounds: computations and verification campaign"};
  app.require_subcommand(1);

  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients of a registry function as CSV");
  std::string fn_name;
  std::size_t samples = kDefaultSamples;
  std::size_t kmax = 8;
  coeffs->add_option("function", fn_name, "Function name")->required();
  coeffs->add_option("--samples,-N", samples, "Grid size")->capture_default_str();
  coeffs->add_option("--kmax", kmax, "Largest index")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the verification campaign");
  std::string config_path, out, corpus, grid_n;
  std::optional<std::string> statements;
  long seed = 0;
  bool quiet = false;
  verify->add_option("--config", config_path, "INI config (defaults when omitted)");
  verify->add_option("--out", out, "Output directory");
  verify->add_option("--statements", statements, "Comma-separated statement ids");
  verify->add_option("--corpus", corpus, "Comma-separated function names or 'all'");
  verify->add_option("--grid-n", grid_n, "Comma-separated n values");
  verify->add_option("--seed", seed, "Reserved; nothing is randomized");
  verify->add_flag("--quiet", quiet, "No progress output");

  auto* config = app.add_subcommand("config", "Print the canonical form of a config");
  std::string config_in;
  config->add_option("--config", config_in, "INI config (defaults when omitted)");

  auto* sequence = app.add_subcommand("sequence", "Index sequences as JSON");
  sequence->require_subcommand(1);
  auto* decreasing = sequence->add_subcommand("decreasing", "m_s = m_{s-1} - floor(m_{s-1}/2)");
  std::size_t seq_m = 0;
  decreasing->add_option("--m", seq_m, "Starting m (>= 2)")->required();
  auto* increasing = sequence->add_subcommand("increasing", "Adaptive increasing sequence at a point");
  std::string inc_fn, inc_p = "inf";
  std::size_t inc_n = 0, inc_m = 0, inc_samples = 4096;
  double inc_x = 0.0;
  increasing->add_option("--function", inc_fn, "Function name")->required();
  increasing->add_option("--n", inc_n, "Starting n")->required();
  increasing->add_option("--m", inc_m, "m, 0 < m <= n")->required();
  increasing->add_option("--x", inc_x, "Point")->capture_default_str();
  increasing->add_option("--p", inc_p, "Exponent: number >= 1 or inf")->capture_default_str();
  increasing->add_option("--samples,-N", inc_samples, "Grid size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(fn_name, samples, kmax);
    if (*verify) return cmd_verify(config_path, out, statements, corpus, grid_n, quiet);
    if (*config) {
      const RunConfig c = config_in.empty() ? RunConfig{} : load_config(config_in);
      validate(c);
      std::cout << serialize(c);
      return kExitOk;
    }
    if (*decreasing) return cmd_decreasing(seq_m);
    if (*increasing) return cmd_increasing(inc_fn, inc_n, inc_m, inc_x, inc_p, inc_samples);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnknownFunction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitUsage;
}
