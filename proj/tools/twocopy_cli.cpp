// twocopy: exact construction and verification of the irreducible
// decomposition of the Clifford group's two-copy conjugation representation,
// for 1 to 3 qubits.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twocopy/decomposition.hpp"
#include "twocopy/verification.hpp"

namespace {

using twocopy::ojson;

int write_output(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 1;
  }
  out << content;
  if (!out) {
    std::cerr << "error: failed writing output file: " << path << "\n";
    return 1;
  }
  return 0;
}

struct CommonOpts {
  int qubits = 1;
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--qubits,-q", opts->qubits, "number of qubits (1, 2 or 3)")
      ->required()
      ->check(CLI::IsMember({1, 2, 3}));
  cmd->add_option("--format,-f", opts->format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", opts->output, "output path (default: stdout)");
}

int run_decompose(const CommonOpts& opts, bool with_bases) {
  const twocopy::Decomposition dec(opts.qubits);
  const twocopy::DecompositionReport rep = dec.report();
  std::string content;
  if (opts.format == "json") {
    ojson j = twocopy::report_to_json(rep);
    if (with_bases) {
      ojson bases = ojson(ojson::value_t::object);
      for (const twocopy::Subspace& s : dec.subspaces()) {
        if (!s.empty()) bases[s.label] = ojson::parse(export_basis_json(dec, s));
      }
      j["bases"] = std::move(bases);
    }
    content = j.dump(2) + "\n";
  } else if (opts.format == "csv") {
    content = twocopy::report_to_csv(rep);
  } else {
    content = twocopy::report_to_text(rep);
  }
  return write_output(content, opts.output);
}

int run_verify(const CommonOpts& opts, const twocopy::SuiteConfig& cfg) {
  const twocopy::SuiteReport rep = twocopy::run_suite(cfg);
  std::string content;
  if (opts.format == "json") {
    content = rep.to_json().dump(2) + "\n";
  } else if (opts.format == "csv") {
    content = rep.to_csv();
  } else {
    content = rep.to_text();
  }
  const int io = write_output(content, opts.output);
  if (io != 0) return io;
  return rep.all_pass ? 0 : 1;
}

int run_character(int qubits, bool exact, bool mc, bool diagonal, long long samples,
                  uint64_t seed, int threads, const CommonOpts& opts) {
  const bool use_exact = exact || (!mc && qubits <= 2);
  ojson j;
  j["schema"] = 1;
  j["q"] = qubits;
  std::string text;
  if (use_exact) {
    const twocopy::Rat two = twocopy::char_inner_exact(qubits, twocopy::CharacterKind::two_copy);
    j["method"] = "exact";
    j["group_order"] = twocopy::clifford_group_order(qubits);
    j["two_copy_inner"] = twocopy::rat_to_string(two);
    text = "<chi_two,chi_two> = " + twocopy::rat_to_string(two) + "  (exact, " +
           std::to_string(twocopy::clifford_group_order(qubits)) + " elements)\n";
    if (diagonal) {
      const twocopy::Rat dv = twocopy::char_inner_exact(qubits, twocopy::CharacterKind::diagonal);
      j["diagonal_inner"] = twocopy::rat_to_string(dv);
      text += "<chi_d,chi_d>     = " + twocopy::rat_to_string(dv) + "  (exact)\n";
    }
  } else {
    const twocopy::MonteCarloEstimate est =
        twocopy::char_inner_monte_carlo(qubits, samples, seed, threads);
    j["method"] = "monte_carlo";
    j["samples"] = est.samples;
    j["seed"] = seed;
    j["estimate"] = twocopy::rat_to_string(est.estimate);
    j["variance_of_mean"] = twocopy::rat_to_string(est.variance_of_mean);
    j["stderr_approx"] = est.stderr_approx();
    std::ostringstream os;
    os << "<chi_two,chi_two> ~ " << twocopy::rat_to_string(est.estimate) << " ("
       << static_cast<double>(est.estimate) << ") +/- " << est.stderr_approx()
       << "  (monte carlo, " << est.samples << " samples, seed " << seed << ")\n";
    text = os.str();
  }
  std::string content = opts.format == "json" ? j.dump(2) + "\n" : text;
  return write_output(content, opts.output);
}

int run_lemma1(const CommonOpts& opts, uint64_t seed) {
  twocopy::SuiteConfig cfg;
  cfg.qubits = opts.qubits;
  cfg.seed = seed;
  cfg.selected = {"pauli_partition", "lemma_set_sizes"};
  const twocopy::SuiteReport rep = twocopy::run_suite(cfg);
  std::string content;
  if (opts.format == "json") {
    content = rep.to_json().dump(2) + "\n";
  } else if (opts.format == "csv") {
    content = rep.to_csv();
  } else {
    content = rep.to_text();
  }
  const int io = write_output(content, opts.output);
  if (io != 0) return io;
  return rep.all_pass ? 0 : 1;
}

int run_export_basis(const CommonOpts& opts, const std::string& label) {
  const twocopy::Decomposition dec(opts.qubits);
  const twocopy::Subspace& s = dec.subspace(label);
  const std::string content = opts.format == "json" ? export_basis_json(dec, s)
                                                    : export_basis_text(dec, s);
  return write_output(content, opts.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decomposition of the two-copy Clifford representation"};
  app.require_subcommand(1);

  CommonOpts dec_opts, ver_opts, chr_opts, lem_opts, exp_opts;
  bool with_bases = false;
  uint64_t seed = twocopy::kDefaultSeed;
  long long samples = 100000;
  int threads = 0;
  int cliffords = 100;
  bool exact = false, mc = false, diagonal = false;
  bool corrupt_basis = false, corrupt_tableau = false;
  std::string basis_label;

  CLI::App* dec_cmd = app.add_subcommand("decompose", "construct the full decomposition");
  add_common(dec_cmd, &dec_opts);
  dec_cmd->add_flag("--with-bases", with_bases, "embed exact bases in the JSON report");

  CLI::App* ver_cmd = app.add_subcommand("verify", "run the verification suite");
  add_common(ver_cmd, &ver_opts);
  ver_cmd->add_option("--seed,-s", seed, "random seed")->capture_default_str();
  ver_cmd->add_option("--samples,-n", samples, "monte-carlo samples (q=3)")
      ->capture_default_str();
  ver_cmd->add_option("--cliffords", cliffords, "random Cliffords per invariance check")
      ->capture_default_str();
  ver_cmd->add_option("--threads,-t", threads, "worker threads (0 = auto)")
      ->capture_default_str();
  ver_cmd->add_flag("--corrupt-basis", corrupt_basis, "fault injection: perturb one basis entry")
      ->group("");
  ver_cmd->add_flag("--corrupt-tableau", corrupt_tableau,
                    "fault injection: flip one derived tableau sign")
      ->group("");

  CLI::App* chr_cmd = app.add_subcommand("character", "character inner products");
  add_common(chr_cmd, &chr_opts);
  chr_cmd->add_flag("--exact", exact, "exact enumeration (q <= 2)");
  chr_cmd->add_flag("--mc", mc, "monte-carlo estimate");
  chr_cmd->add_flag("--diagonal", diagonal, "also report the diagonal-sector inner product");
  chr_cmd->add_option("--samples,-n", samples, "monte-carlo samples")->capture_default_str();
  chr_cmd->add_option("--seed,-s", seed, "random seed")->capture_default_str();
  chr_cmd->add_option("--threads,-t", threads, "worker threads (0 = auto)")
      ->capture_default_str();

  CLI::App* lem_cmd = app.add_subcommand("lemma1", "set-size identity checks");
  add_common(lem_cmd, &lem_opts);
  lem_cmd->add_option("--seed,-s", seed, "random seed")->capture_default_str();

  CLI::App* exp_cmd = app.add_subcommand("export-basis", "export one subspace basis exactly");
  add_common(exp_cmd, &exp_opts);
  exp_cmd->add_option("--subspace", basis_label, "subspace label, e.g. d1 or {adj}")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (dec_cmd->parsed()) return run_decompose(dec_opts, with_bases);
    if (ver_cmd->parsed()) {
      twocopy::SuiteConfig cfg;
      cfg.qubits = ver_opts.qubits;
      cfg.seed = seed;
      cfg.n_random_cliffords = cliffords;
      cfg.n_mc_samples = samples;
      cfg.threads = threads;
      cfg.corrupt_basis = corrupt_basis;
      cfg.corrupt_tableau_sign = corrupt_tableau;
      return run_verify(ver_opts, cfg);
    }
    if (chr_cmd->parsed()) {
      if (exact && mc) {
        std::cerr << "usage error: --exact and --mc are mutually exclusive\n";
        return 2;
      }
      if (exact && chr_opts.qubits > 2) {
        std::cerr << "usage error: --exact requires --qubits <= 2 (use --mc)\n";
        return 2;
      }
      if (!exact && !mc && chr_opts.qubits > 2) mc = true;
      return run_character(chr_opts.qubits, exact, mc, diagonal, samples, seed, threads,
                           chr_opts);
    }
    if (lem_cmd->parsed()) return run_lemma1(lem_opts, seed);
    if (exp_cmd->parsed()) return run_export_basis(exp_opts, basis_label);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
