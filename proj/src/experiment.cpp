#include "waring/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "waring/decomposition.hpp"
#include "waring/errors.hpp"
#include "waring/explicit_formula.hpp"
#include "waring/integrals.hpp"
#include "waring/parallel.hpp"
#include "waring/rep_count.hpp"

#ifndef WARING_DATA_DIR
#define WARING_DATA_DIR "data"
#endif

namespace waring {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json header_json(const RunConfig& c) { return {{"version", kVersion}, {"config", c.to_json()}}; }

fs::path prepare(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return c.out_dir / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

class CsvFile {
 public:
  CsvFile(const RunConfig& c, const std::string& name, const std::vector<std::string>& cols)
      : path_(prepare(c, name)), out_(open_out(path_)) {
    out_ << "# waring_lab " << kVersion << "\n# config " << c.to_json().dump() << "\n";
    row(cols);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ofstream out_;
};

fs::path write_json(const RunConfig& c, const std::string& name, const json& body) {
  const fs::path p = prepare(c, name);
  auto out = open_out(p);
  out << body.dump(2) << "\n";
  return p;
}

std::string tag(const RunConfig& c) {
  return "k" + std::to_string(c.k) + "_N" + std::to_string(c.N) + "_H" + std::to_string(c.H);
}

// Decade sweep ending at N, keeping values >= floor.
std::vector<std::uint64_t> decades(std::uint64_t N, int count, std::uint64_t floor) {
  std::vector<std::uint64_t> out;
  std::uint64_t div = 1;
  for (int i = 0; i < count - 1; ++i) div *= 10;
  for (int i = 0; i < count; ++i, div /= 10) {
    if (N / div >= floor) out.push_back(N / div);
  }
  return out;
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return std::nan("");
  return fit_loglog(x, y).slope;
}

// Uniform double in [0, 1) from the top 53 bits; stable across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::vector<unsigned> ells_at_least_two(const RunConfig& c) {
  std::vector<unsigned> out;
  for (unsigned l : c.ells) {
    if (l >= 2) out.push_back(l);
  }
  if (out.empty()) out.push_back(2);
  return out;
}

fs::path lemma_gap(const RunConfig& c, json& summary) {
  CsvFile csv(c, "lemma1_gap.csv",
              {"ell", "N", "max_abs", "argmax", "envelope", "fitted_constant", "slope",
               "expected_slope"});
  for (unsigned ell : c.ells) {
    std::vector<GapSweep> rows;
    std::vector<double> xs, ys;
    for (std::uint64_t n : decades(c.N, 4, 100)) {
      rows.push_back(gap_sweep(ell, n, 256, c.T));
      xs.push_back(static_cast<double>(n));
      ys.push_back(rows.back().max_abs);
    }
    const double slope = slope_of(xs, ys);
    const double expected = 1.0 / (2.0 * ell);
    for (const GapSweep& g : rows) {
      csv.row({std::to_string(ell), std::to_string(g.N), num(g.max_abs), num(g.argmax),
               num(g.envelope), num(g.fitted_constant), num(slope), num(expected)});
    }
    summary["lemma1"].push_back({{"ell", ell}, {"slope", slope}, {"expected_slope", expected}});
  }
  return csv.path();
}

fs::path lemma_explicit(const RunConfig& c, json& summary) {
  const ZeroTable zeros = load_zeros(resolve_zeros_path(c));
  CsvFile csv(c, "lemma2_explicit.csv",
              {"ell", "N", "K_used", "alpha", "residual_re", "residual_im", "residual_abs"});
  std::vector<std::size_t> ks;
  for (std::size_t k : {0, 10, 50, 100}) {
    if (k <= zeros.size()) ks.push_back(k);
  }
  constexpr int kAlphas = 64;
  const double span = 10.0 / static_cast<double>(c.N);
  for (unsigned ell : c.ells) {
    const DampedSum sum({ell, c.N, c.T}, SumKind::von_mangoldt);
    std::mt19937_64 rng(c.seed + ell);
    std::vector<double> mean(ks.size(), 0.0);
    for (int i = 0; i < kAlphas; ++i) {
      const double alpha = (2.0 * unit_draw(rng) - 1.0) * span;
      const ComplexPoint pt{alpha, c.N};
      const std::complex<double> base = sum(alpha) - singular_factor(ell, pt);
      for (std::size_t j = 0; j < ks.size(); ++j) {
        const std::complex<double> r = base + zero_sum(zeros, ell, pt, ks[j]).value;
        csv.row({std::to_string(ell), std::to_string(c.N), std::to_string(ks[j]), num(alpha),
                 num(r.real()), num(r.imag()), num(std::abs(r))});
        mean[j] += std::abs(r) / kAlphas;
      }
    }
    json entry{{"ell", ell}, {"zeros", zeros.source}, {"mean_abs_residual", json::array()}};
    for (std::size_t j = 0; j < ks.size(); ++j) {
      entry["mean_abs_residual"].push_back({{"K_used", ks[j]}, {"mean", mean[j]}});
    }
    summary["lemma2"].push_back(entry);
  }
  return csv.path();
}

fs::path lemma_laplace(const RunConfig& c, json& summary) {
  CsvFile csv(c, "lemma3_laplace.csv",
              {"mu", "n", "N", "lhs_re", "lhs_im", "rhs", "err", "err_times_n", "C_mu", "slope"});
  for (double mu : {0.5, 1.0, 1.5}) {
    std::vector<LaplaceCheck> rows;
    std::vector<double> xs, ys;
    double C = 0.0;
    for (std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
      rows.push_back(laplace_check(mu, n, c.N));
      xs.push_back(static_cast<double>(n));
      ys.push_back(rows.back().err);
      C = std::max(C, rows.back().err * static_cast<double>(n));
    }
    const double slope = slope_of(xs, ys);
    for (const LaplaceCheck& r : rows) {
      csv.row({num(mu), std::to_string(r.n), std::to_string(r.N), num(r.lhs.real()),
               num(r.lhs.imag()), num(r.rhs), num(r.err), num(r.err * static_cast<double>(r.n)),
               num(C), num(slope)});
    }
    summary["lemma3"].push_back({{"mu", mu}, {"C_mu", C}, {"slope", slope}});
  }
  return csv.path();
}

void mean_rows(CsvFile& csv, const MeanValueResult& r) {
  csv.row({r.integrand, std::to_string(r.ell), std::to_string(r.N), num(r.xi),
           std::to_string(r.M), r.method, num(r.value), num(r.envelope),
           num(r.fitted_constant), num(r.alt_envelope)});
}

const std::vector<std::string> kMeanColumns{"integrand", "ell", "N", "xi", "M", "method", "value",
                                            "predicted_envelope", "fitted_constant",
                                            "alt_envelope"};

fs::path lemma_major_arc(const RunConfig& c, json& summary) {
  CsvFile csv(c, "lemma4_major_arc.csv", kMeanColumns);
  const double n = static_cast<double>(c.N);
  for (unsigned ell : ells_at_least_two(c)) {
    double worst = 0.0;
    for (double xi : {1.0 / n, 10.0 / n, 100.0 / n}) {
      const MeanValueResult r = mean_square(MeanIntegrand::e_tilde, ell, c.N, std::min(xi, 0.5),
                                            {.T = c.T});
      mean_rows(csv, r);
      worst = std::max(worst, r.fitted_constant);
    }
    summary["lemma4"].push_back({{"ell", ell}, {"max_fitted_constant", worst}});
  }
  return csv.path();
}

fs::path lemma_mean_square(const RunConfig& c, json& summary) {
  CsvFile csv(c, "lemma5_mean_square.csv", kMeanColumns);
  const double n = static_cast<double>(c.N);
  for (unsigned ell : ells_at_least_two(c)) {
    for (MeanIntegrand which : {MeanIntegrand::s_tilde, MeanIntegrand::v_tilde}) {
      double worst = 0.0;
      for (double xi : {1.0 / n, 10.0 / n, 100.0 / n, 0.5}) {
        MeanSquareOptions opt;
        opt.T = c.T;
        opt.grid_override = c.M;
        const MeanValueResult r = mean_square(which, ell, c.N, std::min(xi, 0.5), opt);
        mean_rows(csv, r);
        worst = std::max(worst, r.fitted_constant);
      }
      summary["lemma5"].push_back({{"ell", ell},
                                   {"integrand", std::string(to_string(which))},
                                   {"max_fitted_constant", worst}});
    }
  }
  return csv.path();
}

fs::path lemma_fourth(const RunConfig& c, json& summary) {
  CsvFile csv(c, "lemma6_fourth_power.csv",
              {"N", "value", "envelope", "fitted_constant", "slope", "slope_from_N"});
  std::vector<double> xs, ys;
  MeanValueResult last;
  const auto ns = decades(c.N, 3, 100);
  for (std::uint64_t n : ns) {
    last = fourth_power(n, c.T);
    xs.push_back(static_cast<double>(n));
    ys.push_back(last.value);
  }
  const double slope = slope_of(xs, ys);
  csv.row({std::to_string(c.N), num(last.value), num(last.envelope), num(last.fitted_constant),
           num(slope), std::to_string(ns.front())});
  summary["lemma6"] = {{"N", c.N}, {"value", last.value}, {"slope", slope}};
  return csv.path();
}

std::string svg_escape_comment(std::string s) {
  for (std::size_t p; (p = s.find("--")) != std::string::npos;) s.replace(p, 2, "- -");
  return s;
}

std::string bar_chart(const RunConfig& c, const DecompositionReport& rep) {
  constexpr int W = 640, Hpx = 360, left = 60, bottom = 40, top = 30;
  const double ref = std::log10(rep.main_term_prediction);
  double lo = ref, hi = ref;
  std::vector<double> mags;
  for (const TermValue& t : rep.terms) {
    const double m = std::log10(std::max(std::abs(t.value), 1e-300));
    mags.push_back(m);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  lo = std::floor(std::max(lo, ref - 12.0)) - 1.0;
  hi = std::ceil(hi) + 0.5;
  const double plot_h = Hpx - bottom - top;
  auto y_of = [&](double v) { return top + plot_h * (hi - std::max(v, lo)) / (hi - lo); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hpx
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<!-- waring_lab " << kVersion << " config " << svg_escape_comment(c.to_json().dump())
    << " -->\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << left << "\" y=\"18\">log10 |term|, " << to_string(rep.config.mode)
    << ", k=" << c.k << " N=" << c.N << " H=" << c.H << "</text>\n";
  const double slot = static_cast<double>(W - left - 20) / static_cast<double>(mags.size());
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double x = left + slot * static_cast<double>(i) + slot * 0.15;
    const double y = y_of(mags[i]);
    s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << slot * 0.7 << "\" height=\""
      << (Hpx - bottom) - y << "\" fill=\"#4477aa\"/>\n";
    s << "<text x=\"" << x + slot * 0.35 << "\" y=\"" << Hpx - bottom + 16
      << "\" text-anchor=\"middle\">" << rep.terms[i].name << "</text>\n";
  }
  for (int t = static_cast<int>(lo); t <= static_cast<int>(hi); ++t) {
    s << "<text x=\"" << left - 6 << "\" y=\"" << y_of(t) + 4 << "\" text-anchor=\"end\">" << t
      << "</text>\n";
  }
  s << "<line x1=\"" << left << "\" x2=\"" << W - 20 << "\" y1=\"" << y_of(ref) << "\" y2=\""
    << y_of(ref) << "\" stroke=\"#cc3311\" stroke-dasharray=\"6 4\"/>\n";
  s << "<text x=\"" << W - 20 << "\" y=\"" << y_of(ref) - 4
    << "\" text-anchor=\"end\" fill=\"#cc3311\">main term</text>\n";
  s << "<line x1=\"" << left << "\" x2=\"" << left << "\" y1=\"" << top << "\" y2=\""
    << Hpx - bottom << "\" stroke=\"black\"/>\n</svg>\n";
  return s.str();
}

}  // namespace

void RunConfig::validate() const {
  if (k < 1) throw ConfigError("--k must be >= 1");
  if (N < 3) throw ConfigError("--N must be >= 3");
  if (H < 1 || H > N) throw ConfigError("--H must lie in [1, N]");
  if (ells.empty()) throw ConfigError("--ell list must not be empty");
  for (unsigned l : ells) {
    if (l < 1) throw ConfigError("--ell values must be >= 1");
  }
  if (!(T > 0.0)) throw ConfigError("--T must be positive");
  if (B && !(*B > 0.0)) throw ConfigError("--B must be positive");
  if (d && !(*d > 0.0)) throw ConfigError("--d must be positive");
  if (B && d) throw ConfigError("--B and --d are mutually exclusive");
  if (M != 0 && (M & (M - 1)) != 0) throw ConfigError("--M must be a power of two");
  parse_split_mode(mode);
  parse_lemma_ids(which);
}

json RunConfig::to_json() const {
  json j{{"command", command}, {"k", k},       {"N", N},       {"H", H},
         {"ells", ells},       {"T", T},       {"mode", mode}, {"which", which},
         {"M", M},             {"out_dir", out_dir.string()},  {"threads", threads},
         {"seed", seed},       {"oracle", oracle}};
  j["B"] = B ? json(*B) : json(nullptr);
  j["d"] = d ? json(*d) : json(nullptr);
  j["zeros"] = zeros ? json(zeros->string()) : json(nullptr);
  return j;
}

std::vector<int> parse_lemma_ids(const std::string& which) {
  if (which == "all") return {1, 2, 3, 4, 5, 6};
  std::vector<int> ids;
  std::stringstream in(which);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.size() != 1 || item[0] < '1' || item[0] > '6') {
      throw ConfigError("unknown lemma id '" + item + "' (expected 1-6 or all)");
    }
    const int id = item[0] - '0';
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  if (ids.empty()) throw ConfigError("--which selects no lemma");
  return ids;
}

fs::path resolve_zeros_path(const RunConfig& config) {
  if (config.zeros) return *config.zeros;
  const fs::path local = fs::path("data") / "zeta_zeros_100.txt";
  if (fs::exists(local)) return local;
  return fs::path(WARING_DATA_DIR) / "zeta_zeros_100.txt";
}

std::vector<fs::path> cmd_count(const RunConfig& c) {
  const IntervalSpec spec{c.N, c.H, c.k};
  spec.validate();
  const RepTable table = c.oracle ? rep_table_oracle(spec) : rep_table(spec);
  std::vector<fs::path> files;
  {
    const fs::path p = prepare(c, "count_" + tag(c) + ".csv");
    auto out = open_out(p);
    out << "# waring_lab " << kVersion << "\n# config " << c.to_json().dump() << "\n";
    write_rep_csv(out, table);
    files.push_back(p);
  }
  const double total = interval_sum(table, false);
  const double weighted = interval_sum(table, true);
  const Unweighted uw = unweight(spec, weighted);
  json body = header_json(c);
  body["method"] = std::string(to_string(table.method));
  body["interval_sum"] = total;
  body["weighted_interval_sum"] = weighted;
  body["main_term"] = main_term(spec, false);
  body["weighted_main_term"] = main_term(spec, true);
  body["ratio"] = total / main_term(spec, false);
  body["weighted_ratio"] = weighted / main_term(spec, true);
  body["unweighted_estimate"] = uw.estimate;
  body["unweighted_correction_bound"] = uw.correction_bound;
  files.push_back(write_json(c, "count_" + tag(c) + ".json", body));
  return files;
}

std::vector<fs::path> cmd_lemmas(const RunConfig& c) {
  const std::vector<int> ids = parse_lemma_ids(c.which);
  // Resolve the zeros file before any work so a missing file fails fast.
  if (std::find(ids.begin(), ids.end(), 2) != ids.end()) {
    const fs::path z = resolve_zeros_path(c);
    if (!fs::exists(z)) {
      throw fs::filesystem_error("zeros file not found", z,
                                 std::make_error_code(std::errc::no_such_file_or_directory));
    }
  }
  json summary = header_json(c);
  std::vector<fs::path> files;
  for (int id : ids) {
    switch (id) {
      case 1: files.push_back(lemma_gap(c, summary)); break;
      case 2: files.push_back(lemma_explicit(c, summary)); break;
      case 3: files.push_back(lemma_laplace(c, summary)); break;
      case 4: files.push_back(lemma_major_arc(c, summary)); break;
      case 5: files.push_back(lemma_mean_square(c, summary)); break;
      case 6: files.push_back(lemma_fourth(c, summary)); break;
      default: break;
    }
  }
  files.push_back(write_json(c, "lemmas_summary.json", summary));
  return files;
}

std::vector<fs::path> cmd_decompose(const RunConfig& c) {
  SplitConfig sc;
  sc.spec = {c.N, c.H, c.k};
  sc.mode = parse_split_mode(c.mode);
  sc.T = c.T;
  if (c.B) {
    sc.B = *c.B;
  } else if (c.d) {
    sc.B = default_B(c.N, *c.d);
  }
  const DecompositionReport rep =
      split_terms(sc, c.M ? std::optional<std::size_t>(c.M) : std::nullopt);

  json body = header_json(c);
  body["spec"] = {{"k", c.k}, {"N", c.N}, {"H", c.H}};
  body["mode"] = std::string(to_string(sc.mode));
  body["B"] = rep.B;
  body["d"] = rep.d;
  body["M"] = rep.M;
  body["terms"] = json::array();
  for (const TermValue& t : rep.terms) {
    body["terms"].push_back({{"name", t.name},
                             {"re", t.value.real()},
                             {"im", t.value.imag()},
                             {"bound", t.bound},
                             {"fitted_constant", t.fitted_constant}});
  }
  body["lhs"] = rep.lhs;
  body["integral"] = complex_json(rep.integral);
  body["rhs_total"] = complex_json(rep.rhs_total);
  body["main_term_prediction"] = rep.main_term_prediction;
  body["residuals"] = {{"partition", rep.partition_residual},
                       {"reconstruction", rep.reconstruction_residual},
                       {"imag_ratio", rep.imag_ratio}};

  const std::string stem = "decompose_" + tag(c) + "_" + c.mode;
  std::vector<fs::path> files{write_json(c, stem + ".json", body)};
  const fs::path svg = prepare(c, stem + ".svg");
  open_out(svg) << bar_chart(c, rep);
  files.push_back(svg);
  return files;
}

int run_command(const RunConfig& config) {
  try {
    config.validate();
    if (config.threads > 0) {
      set_threads(config.threads);
    } else if (const auto env = threads_from_env()) {
      set_threads(*env);
    }
    std::vector<fs::path> files;
    if (config.command == "count") {
      files = cmd_count(config);
    } else if (config.command == "lemmas") {
      files = cmd_lemmas(config);
    } else if (config.command == "decompose") {
      files = cmd_decompose(config);
    } else {
      throw ConfigError("unknown command '" + config.command + "'");
    }
    for (const fs::path& f : files) std::cout << f.string() << "\n";
    return kExitOk;
  } catch (const GridError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace waring
