// qident command-line interface. Talks to the shared library exclusively
// through the public C API in qident/qident.h.
//
// Exit codes: 0 success, 2 usage/validation error, 3 resource limit
// (dimension cap or integer range), 1 anything else.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qident/qident.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code(exit_code) {}
  int exit_code;
};

// Maps a failed C API call onto a CLI exit code.
void check(qident_status status) {
  if (status == QIDENT_OK) return;
  const std::string message = std::string(qident_status_name(status)) + ": " +
                              qident_last_error_message();
  switch (status) {
    case QIDENT_ERR_ARGUMENT:
      throw CliError(kExitUsage, message);
    case QIDENT_ERR_SIZE:
    case QIDENT_ERR_OVERFLOW:
      throw CliError(kExitResource, message);
    default:
      throw CliError(1, message);
  }
}

struct OpDeleter {
  void operator()(qident_op* op) const { qident_op_free(op); }
};
using OpHandle = std::unique_ptr<qident_op, OpDeleter>;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_csv(const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    std::cout << (i ? "," : "") << header[i];
  }
  std::cout << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::cout << (i ? "," : "") << row[i];
    }
    std::cout << '\n';
  }
}

struct CommonFlags {
  std::string format = "json";
  std::uint64_t cap = 0;  // 0 = library default
  bool cap_set = false;
};

// --cap beats QIDENT_CAP beats the library default.
std::uint64_t effective_cap(const CommonFlags& flags) {
  if (flags.cap_set) return flags.cap;
  if (const char* env = std::getenv("QIDENT_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw CliError(kExitUsage,
                     "QIDENT_CAP is not an unsigned integer: " +
                         std::string(env));
    }
    return v;
  }
  return 0;
}

std::vector<qident_term> fetch_terms(int n_copies, int d, double* value) {
  std::vector<qident_term> terms(static_cast<std::size_t>(n_copies));
  int32_t written = 0;
  check(qident_p_ident_general(n_copies, d, value, terms.data(),
                               static_cast<int32_t>(terms.size()), &written));
  terms.resize(static_cast<std::size_t>(written));
  return terms;
}

json terms_to_json(const std::vector<qident_term>& terms) {
  json arr = json::array();
  for (const auto& t : terms) {
    arr.push_back({{"lambda1", t.lambda1},
                   {"lambda2", t.lambda2},
                   {"multiplicity", t.multiplicity},
                   {"delta", t.delta}});
  }
  return arr;
}

// ------------------------------------------------------------------
// exact
// ------------------------------------------------------------------

int cmd_exact(int n_copies, int d, const CommonFlags& flags) {
  double p_ident = 0.0;
  const auto terms = fetch_terms(n_copies, d, &p_ident);
  double p_disc = 0.0;
  check(qident_p_disc_mean(d, &p_disc));
  const double gap = p_disc - p_ident;

  if (flags.format == "csv") {
    emit_csv({"N", "d", "p_ident", "p_disc", "gap"},
             {{std::to_string(n_copies), std::to_string(d),
               format_double(p_ident), format_double(p_disc),
               format_double(gap)}});
  } else {
    json out{{"command", "exact"}, {"N", n_copies}, {"d", d},
             {"p_ident", p_ident}, {"p_disc", p_disc}, {"gap", gap},
             {"terms", terms_to_json(terms)}};
    std::cout << out.dump() << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------
// spectrum
// ------------------------------------------------------------------

int cmd_spectrum(int n_copies, int d, bool full, const std::string& dump_path,
                 const CommonFlags& flags) {
  const std::uint64_t cap = effective_cap(flags);

  qident_op* raw = nullptr;
  if (full) {
    check(qident_build_identification_operator(n_copies, d, cap, &raw));
  } else {
    check(qident_build_identification_operator_sym(n_copies, d, cap, &raw));
  }
  OpHandle op(raw);

  const auto dim = static_cast<std::size_t>(qident_op_dim(op.get()));
  std::vector<double> eigenvalues(dim);
  check(qident_op_eigenvalues(op.get(), eigenvalues.data()));

  double p_ident = 0.0;
  const auto terms = fetch_terms(n_copies, d, &p_ident);

  // Predicted spectrum: +/-delta with the block multiplicity, zeros fill
  // the rest; compare sorted lists.
  std::vector<double> predicted;
  predicted.reserve(dim);
  for (const auto& t : terms) {
    for (std::uint64_t k = 0; k < t.multiplicity; ++k) {
      predicted.push_back(-t.delta);
      predicted.push_back(t.delta);
    }
  }
  if (predicted.size() > dim) {
    throw CliError(1, "predicted spectrum larger than operator dimension");
  }
  predicted.resize(dim, 0.0);
  std::sort(predicted.begin(), predicted.end());

  double max_deviation = 0.0;
  double spectral_radius = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    max_deviation = std::max(max_deviation,
                             std::abs(eigenvalues[i] - predicted[i]));
    spectral_radius = std::max(spectral_radius, std::abs(eigenvalues[i]));
  }
  const double tol = 1e-9 * std::max(spectral_radius, 1.0);

  // Cluster counts around each distinct predicted value.
  std::vector<double> distinct;
  for (const auto& t : terms) {
    distinct.push_back(-t.delta);
    distinct.push_back(t.delta);
  }
  distinct.push_back(0.0);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  struct Cluster {
    double value;
    std::size_t count;
    std::size_t predicted_count;
  };
  std::vector<Cluster> clusters;
  for (double v : distinct) {
    std::size_t count = 0;
    for (double e : eigenvalues) {
      if (std::abs(e - v) <= tol) ++count;
    }
    std::size_t expected = 0;
    for (double p : predicted) {
      if (p == v) ++expected;
    }
    clusters.push_back({v, count, expected});
  }

  if (!dump_path.empty()) {
    if (!full) {
      throw CliError(kExitUsage,
                     "--dump needs --full: the restricted operator does not "
                     "act on a uniform qudit register");
    }
    check(qident_op_dump(op.get(), dump_path.c_str()));
  }

  if (flags.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : clusters) {
      rows.push_back({format_double(c.value), std::to_string(c.count),
                      std::to_string(c.predicted_count)});
    }
    emit_csv({"eigenvalue", "multiplicity", "predicted_multiplicity"}, rows);
  } else {
    json cluster_json = json::array();
    for (const auto& c : clusters) {
      cluster_json.push_back({{"value", c.value},
                              {"multiplicity", c.count},
                              {"predicted_multiplicity", c.predicted_count}});
    }
    json out{{"command", "spectrum"},
             {"N", n_copies},
             {"d", d},
             {"build", full ? "full" : "sym"},
             {"dim", dim},
             {"clusters", cluster_json},
             {"predicted_blocks", terms_to_json(terms)},
             {"max_deviation", max_deviation}};
    if (!dump_path.empty()) out["dump"] = dump_path;
    std::cout << out.dump() << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------
// povm
// ------------------------------------------------------------------

int cmd_povm(int n_copies, int d, const std::string& dump_e1,
             const std::string& dump_e2, const CommonFlags& flags) {
  const std::uint64_t cap = effective_cap(flags);

  qident_op* raw = nullptr;
  check(qident_build_identification_operator(n_copies, d, cap, &raw));
  OpHandle d_op(raw);

  qident_op* raw_e1 = nullptr;
  qident_op* raw_e2 = nullptr;
  check(qident_build_optimal_povm(d_op.get(), 0.0, &raw_e1, &raw_e2));
  OpHandle e1(raw_e1);
  OpHandle e2(raw_e2);

  const auto dim = static_cast<std::size_t>(qident_op_dim(d_op.get()));
  std::vector<double> e1_eigenvalues(dim);
  check(qident_op_eigenvalues(e1.get(), e1_eigenvalues.data()));
  std::size_t rank = 0;
  for (double v : e1_eigenvalues) {
    if (v > 0.5) ++rank;
  }

  double bias = 0.0;
  check(qident_op_product_trace(e1.get(), d_op.get(), &bias));
  double norm = 0.0;
  check(qident_op_trace_norm(d_op.get(), &norm));
  double p_ident = 0.0;
  check(qident_probability_from_operator(d_op.get(), 1, n_copies, d,
                                         &p_ident));

  if (!dump_e1.empty()) check(qident_op_dump(e1.get(), dump_e1.c_str()));
  if (!dump_e2.empty()) check(qident_op_dump(e2.get(), dump_e2.c_str()));

  if (flags.format == "csv") {
    emit_csv({"N", "d", "dim", "rank_e1", "tr_e1_d", "half_trace_norm",
              "p_ident"},
             {{std::to_string(n_copies), std::to_string(d),
               std::to_string(dim), std::to_string(rank), format_double(bias),
               format_double(0.5 * norm), format_double(p_ident)}});
  } else {
    json out{{"command", "povm"},
             {"N", n_copies},
             {"d", d},
             {"dim", dim},
             {"rank_e1", rank},
             {"tr_e1_d", bias},
             {"half_trace_norm", 0.5 * norm},
             {"optimality_residual", bias - 0.5 * norm},
             {"p_ident", p_ident}};
    if (!dump_e1.empty()) out["dump_e1"] = dump_e1;
    if (!dump_e2.empty()) out["dump_e2"] = dump_e2;
    std::cout << out.dump() << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------
// simulate
// ------------------------------------------------------------------

int cmd_simulate(int n_copies, int d, std::uint64_t trials,
                 std::uint64_t seed, const std::string& mode, int workers,
                 const CommonFlags& flags) {
  const qident_sim_mode sim_mode = mode == "outcome"
                                       ? QIDENT_MODE_OUTCOME
                                       : QIDENT_MODE_CONDITIONAL;
  qident_estimate estimate{};
  check(qident_estimate_identification(n_copies, d, trials, seed, sim_mode,
                                       workers, effective_cap(flags),
                                       &estimate));
  double analytic = 0.0;
  check(qident_p_ident_general(n_copies, d, &analytic, nullptr, 0, nullptr));
  const double z = estimate.std_error > 0.0
                       ? (estimate.mean - analytic) / estimate.std_error
                       : 0.0;

  if (flags.format == "csv") {
    emit_csv({"N", "d", "trials", "seed", "mode", "workers", "estimate",
              "stderr", "analytic", "z_score"},
             {{std::to_string(n_copies), std::to_string(d),
               std::to_string(trials), std::to_string(seed), mode,
               std::to_string(workers), format_double(estimate.mean),
               format_double(estimate.std_error), format_double(analytic),
               format_double(z)}});
  } else {
    json out{{"command", "simulate"}, {"N", n_copies},   {"d", d},
             {"trials", trials},      {"seed", seed},    {"mode", mode},
             {"workers", workers},    {"estimate", estimate.mean},
             {"stderr", estimate.std_error}, {"analytic", analytic},
             {"z_score", z}};
    std::cout << out.dump() << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------
// mcopy
// ------------------------------------------------------------------

int cmd_mcopy(int m_copies, int n_copies, int d, const CommonFlags& flags) {
  qident_op* raw = nullptr;
  check(qident_build_mcopy_operator(m_copies, n_copies, d,
                                    effective_cap(flags), &raw));
  OpHandle op(raw);

  double norm = 0.0;
  check(qident_op_trace_norm(op.get(), &norm));
  double p_max = 0.0;
  check(qident_probability_from_operator(op.get(), m_copies, n_copies, d,
                                         &p_max));

  bool has_closed_form = m_copies == 1;
  double closed_form = 0.0;
  if (has_closed_form) {
    check(qident_p_ident_general(n_copies, d, &closed_form, nullptr, 0,
                                 nullptr));
  }

  if (flags.format == "csv") {
    emit_csv({"M", "N", "d", "p_max", "trace_norm", "closed_form"},
             {{std::to_string(m_copies), std::to_string(n_copies),
               std::to_string(d), format_double(p_max), format_double(norm),
               has_closed_form ? format_double(closed_form) : ""}});
  } else {
    json out{{"command", "mcopy"},
             {"M", m_copies},
             {"N", n_copies},
             {"d", d},
             {"dim", qident_op_dim(op.get())},
             {"p_max", p_max},
             {"trace_norm", norm}};
    if (has_closed_form) {
      out["closed_form"] = closed_form;
      out["closed_form_delta"] = p_max - closed_form;
    }
    std::cout << out.dump() << '\n';
  }
  return 0;
}

// ------------------------------------------------------------------
// sweep
// ------------------------------------------------------------------

int cmd_sweep(int n_max, const std::vector<int>& d_list,
              const CommonFlags& flags) {
  struct Row {
    int n, d;
    double p_ident, p_disc, gap;
  };
  std::vector<Row> rows;
  for (int d : d_list) {
    double p_disc = 0.0;
    check(qident_p_disc_mean(d, &p_disc));
    for (int n = 1; n <= n_max; ++n) {
      double p_ident = 0.0;
      check(qident_p_ident_general(n, d, &p_ident, nullptr, 0, nullptr));
      rows.push_back({n, d, p_ident, p_disc, p_disc - p_ident});
    }
  }

  if (flags.format == "csv") {
    std::vector<std::vector<std::string>> csv_rows;
    csv_rows.reserve(rows.size());
    for (const auto& r : rows) {
      csv_rows.push_back({std::to_string(r.n), std::to_string(r.d),
                          format_double(r.p_ident), format_double(r.p_disc),
                          format_double(r.gap)});
    }
    emit_csv({"N", "d", "p_ident", "p_disc", "gap"}, csv_rows);
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"N", r.n},
                     {"d", r.d},
                     {"p_ident", r.p_ident},
                     {"p_disc", r.p_disc},
                     {"gap", r.gap}});
    }
    json out{{"command", "sweep"}, {"N_max", n_max}, {"rows", arr}};
    std::cout << out.dump() << '\n';
  }
  return 0;
}

void add_format_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--cap", flags.cap,
                  "Dense dimension cap (overrides QIDENT_CAP; 0 = default "
                  "4096)")
      ->each([&flags](const std::string&) { flags.cap_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-probability calculator for quantum pure-state "
               "identification: closed forms, operator spectra, optimal "
               "measurements, and seeded Monte Carlo checks."};
  app.require_subcommand(1);

  CommonFlags flags;
  int n_copies = 1;
  int d = 2;
  int m_copies = 1;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  int n_max = 10;
  std::string mode = "conditional";
  std::string dump_path;
  std::string dump_e1;
  std::string dump_e2;
  std::vector<int> d_list{2};
  bool full_build = false;

  auto* exact = app.add_subcommand(
      "exact", "Closed-form identification and discrimination probabilities");
  exact->add_option("--N", n_copies, "Reference copies")->required();
  exact->add_option("--d", d, "Local dimension")->required();
  add_format_flags(exact, flags);

  auto* spectrum = app.add_subcommand(
      "spectrum", "Eigenvalues of the identification operator against the "
                  "predicted block spectrum");
  spectrum->add_option("--N", n_copies, "Reference copies")->required();
  spectrum->add_option("--d", d, "Local dimension")->required();
  spectrum->add_flag("--full", full_build,
                     "Build on the full (2N+1)-qudit register instead of the "
                     "symmetric-subspace restriction");
  spectrum->add_option("--dump", dump_path,
                       "Write the operator in QIDOP1 binary form (needs "
                       "--full)");
  add_format_flags(spectrum, flags);

  auto* povm = app.add_subcommand(
      "povm", "Optimal two-outcome measurement on the full register");
  povm->add_option("--N", n_copies, "Reference copies")->required();
  povm->add_option("--d", d, "Local dimension")->required();
  povm->add_option("--dump-e1", dump_e1, "Write E1 in QIDOP1 binary form");
  povm->add_option("--dump-e2", dump_e2, "Write E2 in QIDOP1 binary form");
  add_format_flags(povm, flags);

  auto* simulate = app.add_subcommand(
      "simulate", "Seeded Monte Carlo estimate of the identification "
                  "probability");
  simulate->add_option("--N", n_copies, "Reference copies")->required();
  simulate->add_option("--d", d, "Local dimension")->required();
  simulate->add_option("--trials", trials, "Trial count (>= 100)")
      ->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate->add_option("--mode", mode, "Estimator mode")
      ->check(CLI::IsMember({"conditional", "outcome"}))
      ->capture_default_str();
  simulate->add_option("--workers", workers, "Worker threads")
      ->capture_default_str();
  add_format_flags(simulate, flags);

  auto* mcopy = app.add_subcommand(
      "mcopy", "Identification probability with M input copies from the "
               "dense operator spectrum");
  mcopy->add_option("--M", m_copies, "Input copies")->required();
  mcopy->add_option("--N", n_copies, "Reference copies")->required();
  mcopy->add_option("--d", d, "Local dimension")->required();
  add_format_flags(mcopy, flags);

  auto* sweep = app.add_subcommand(
      "sweep", "Tabulate p_ident and p_disc for N = 1..N_max over a list of "
               "dimensions");
  sweep->add_option("--N-max", n_max, "Largest reference copy count")
      ->required();
  sweep->add_option("--d", d_list, "Local dimensions (repeat or "
                    "comma-separate)")
      ->delimiter(',');
  add_format_flags(sweep, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (exact->parsed()) return cmd_exact(n_copies, d, flags);
    if (spectrum->parsed()) {
      return cmd_spectrum(n_copies, d, full_build, dump_path, flags);
    }
    if (povm->parsed()) return cmd_povm(n_copies, d, dump_e1, dump_e2, flags);
    if (simulate->parsed()) {
      return cmd_simulate(n_copies, d, trials, seed, mode, workers, flags);
    }
    if (mcopy->parsed()) return cmd_mcopy(m_copies, n_copies, d, flags);
    if (sweep->parsed()) return cmd_sweep(n_max, d_list, flags);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
