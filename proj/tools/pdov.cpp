// Copyright 2026 The pdov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pdov: batch front end over the pdov library.

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pdov/coefficients.hpp"
#include "pdov/errors.hpp"
#include "pdov/format.hpp"
#include "pdov/ldp.hpp"
#include "pdov/mc.hpp"
#include "pdov/moments.hpp"
#include "pdov/tilted.hpp"
#include "pdov/verify.hpp"

namespace {

using nlohmann::ordered_json;
using pdov::format_number;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kPrecision = 3,
  kDegenerate = 4,
  kVerifyFailed = 5,
};

struct Output {
  std::string data;
  bool degenerate = false;
  bool checks_failed = false;
};

struct Common {
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  bool strict = false;
  std::string manifest;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string resolved_format(const Common& c, const std::string& natural, std::initializer_list<const char*> allowed) {
  const std::string f = c.format.empty() ? natural : c.format;
  for (const char* a : allowed) {
    if (f == a) {
      return f;
    }
  }
  throw UsageError("format '" + f + "' is not available for this command");
}

std::string csv(std::initializer_list<std::string> fields) {
  std::string line;
  for (const auto& f : fields) {
    if (!line.empty()) {
      line += ',';
    }
    line += f;
  }
  return line + '\n';
}

ordered_json number(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += fmt::format("{:02x}", digest[i]);
  }
  return hex;
}

ordered_json parameters_of(const CLI::App* sub) {
  ordered_json params = ordered_json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name() == "-h") {
      continue;
    }
    std::string name = opt->get_single_name();
    if (opt->count() > 0) {
      const auto& r = opt->results();
      params[name] = r.size() == 1 ? ordered_json(r.front()) : ordered_json(r);
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

// ---- commands ---------------------------------------------------------------

struct CoeffsArgs {
  double theta = 0.0;
  int kmax = 10;
};

Output cmd_coeffs(const CoeffsArgs& a, const Common& c) {
  const auto table = a.theta == 0.0 ? pdov::build_limit_table(a.kmax) : pdov::build_coeff_table(a.theta, a.kmax);
  if (resolved_format(c, "csv", {"csv", "json"}) == "json") {
    return {pdov::table_to_json(table) + "\n"};
  }
  std::ostringstream s;
  pdov::write_table_csv(s, table);
  return {s.str()};
}

struct MomentsArgs {
  double theta = 0.5;
  int kmax = 10;
  std::int64_t mc_check = 0;
};

Output cmd_moments(const MomentsArgs& a, const Common& c) {
  const auto mv = pdov::moments_from_table(pdov::build_coeff_table(a.theta, a.kmax), a.kmax);
  std::vector<pdov::TiltedEstimate> mc;
  if (a.mc_check > 0) {
    mc = pdov::mc_moments(a.theta, a.kmax, a.mc_check, c.seed);
  }
  const bool json = resolved_format(c, "csv", {"csv", "json"}) == "json";
  std::string out;
  ordered_json rows = ordered_json::array();
  if (!json) {
    out = mc.empty() ? csv({"k", "m_exact", "m_recursion"}) : csv({"k", "m_exact", "m_recursion", "m_mc", "se"});
  }
  for (int k = 1; k <= a.kmax; ++k) {
    const double rec = pdov::moment_via_recursion(a.theta, k);
    if (json) {
      ordered_json row = {{"k", k}, {"m_exact", mv(k)}, {"m_recursion", rec}};
      if (!mc.empty()) {
        row["m_mc"] = mc[k - 1].value;
        row["se"] = mc[k - 1].std_error;
      }
      rows.push_back(row);
    } else if (mc.empty()) {
      out += csv({std::to_string(k), format_number(mv(k)), format_number(rec)});
    } else {
      out += csv({std::to_string(k), format_number(mv(k)), format_number(rec), format_number(mc[k - 1].value),
                  format_number(mc[k - 1].std_error)});
    }
  }
  return {json ? rows.dump(2) + "\n" : out};
}

struct KnArgs {
  double lambda = 6.0;
  int n = 1;
  std::vector<double> thetas;
};

Output cmd_kn(const KnArgs& a, const Common& c) {
  const bool json = resolved_format(c, "csv", {"csv", "json"}) == "json";
  std::string out = json ? "" : csv({"theta", "x", "K", "K_tilde", "F", "G"});
  ordered_json rows = ordered_json::array();
  for (double theta : a.thetas) {
    const pdov::SelectionSpec spec(a.lambda, theta);
    const auto d = pdov::proof_diagnostics(spec, a.n);
    if (json) {
      rows.push_back({{"theta", theta}, {"x", spec.x()}, {"K", d.k}, {"K_tilde", d.k_tilde}, {"F", d.f}, {"G", d.g}});
    } else {
      out += csv({format_number(theta), format_number(spec.x()), format_number(d.k), format_number(d.k_tilde),
                  format_number(d.f), format_number(d.g)});
    }
  }
  return {json ? rows.dump(2) + "\n" : out};
}

struct MgfArgs {
  double lambda = 6.0;
  double theta = 0.3;
  std::vector<double> ts;
  int kmax = 0;
  std::string route = "auto";
};

Output cmd_mgf(const MgfArgs& a, const Common& c) {
  const pdov::SelectionSpec spec(a.lambda, a.theta);
  const pdov::MgfRoute route = a.route == "shifted" ? pdov::MgfRoute::kShifted
                               : a.route == "outer" ? pdov::MgfRoute::kOuterSeries
                                                    : pdov::MgfRoute::kAuto;
  const bool json = resolved_format(c, "csv", {"csv", "json"}) == "json";
  std::string out = json ? "" : csv({"t", "phi", "psi_limit"});
  ordered_json rows = ordered_json::array();
  for (double t : a.ts) {
    const double phi = pdov::mgf(spec, t, a.kmax, route);
    const double psi = pdov::limit_mgf(a.lambda, t);
    if (json) {
      rows.push_back({{"t", t}, {"phi", phi}, {"psi_limit", psi}});
    } else {
      out += csv({format_number(t), format_number(phi), format_number(psi)});
    }
  }
  return {json ? rows.dump(2) + "\n" : out};
}

struct PhaseArgs {
  double lambda_min = 0.5;
  double lambda_max = 13.0;
  double step = 0.5;
};

Output cmd_phase(const PhaseArgs& a, const Common& c) {
  pdov::detail::require(a.step > 0.0 && a.lambda_min > 0.0 && a.lambda_max >= a.lambda_min,
                        "phase sweep needs 0 < lambda-min <= lambda-max and step > 0");
  const bool json = resolved_format(c, "csv", {"csv", "json"}) == "json";
  std::string out = json ? "" : csv({"lambda", "u", "h_limit"});
  ordered_json rows = ordered_json::array();
  const auto count = static_cast<std::int64_t>(std::floor((a.lambda_max - a.lambda_min) / a.step + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) {
    // Grid points are rounded to 12 decimals so that critical values land exactly.
    const double lambda = std::round((a.lambda_min + static_cast<double>(i) * a.step) * 1e12) / 1e12;
    const auto p = pdov::classify_phase(lambda);
    if (json) {
      rows.push_back({{"lambda", lambda}, {"u", p.u}, {"h_limit", p.limit_homozygosity}});
    } else {
      out += csv({format_number(lambda), std::to_string(p.u), format_number(p.limit_homozygosity)});
    }
  }
  return {json ? rows.dump(2) + "\n" : out};
}

struct TailsArgs {
  double lambda = 6.0;
  std::vector<double> thetas;
};

Output cmd_tails(const TailsArgs& a, const Common& c) {
  const bool json = resolved_format(c, "csv", {"csv", "json"}) == "json";
  std::string out = json ? "" : csv({"lambda", "theta", "computed_tail", "analytic_bound"});
  ordered_json rows = ordered_json::array();
  for (double theta : a.thetas) {
    const auto b = pdov::tail_bound(pdov::SelectionSpec(a.lambda, theta));
    if (json) {
      rows.push_back({{"lambda", a.lambda}, {"theta", theta}, {"computed_tail", b.computed_tail},
                      {"analytic_bound", b.analytic_bound}});
    } else {
      out += csv({format_number(a.lambda), format_number(theta), format_number(b.computed_tail),
                  format_number(b.analytic_bound)});
    }
  }
  return {json ? rows.dump(2) + "\n" : out};
}

struct RateArgs {
  double lambda = 6.0;
  std::vector<double> config;
  int uniform = 0;
};

Output cmd_rate(const RateArgs& a, const Common& c) {
  resolved_format(c, "json", {"json"});
  if (a.uniform > 0 && !a.config.empty()) {
    throw UsageError("--config and --uniform are mutually exclusive");
  }
  if (a.uniform == 0 && a.config.empty()) {
    throw UsageError("one of --config or --uniform is required");
  }
  const pdov::Configuration x =
      a.uniform > 0 ? pdov::uniform_config(a.uniform) : pdov::Configuration::from_unsorted(a.config);
  ordered_json j = {{"J", number(pdov::j_rate(x))},
                    {"phi2", pdov::phi2(x)},
                    {"infTerm", pdov::inf_term(a.lambda).value},
                    {"S", number(pdov::s_rate(x, a.lambda))}};
  return {j.dump(2) + "\n"};
}

struct SampleArgs {
  double lambda = 6.0;
  double theta = 0.3;
  std::int64_t samples = 100'000;
  int hist_bins = 0;
  std::vector<double> ball;
  double mgf_t = std::numeric_limits<double>::quiet_NaN();
};

Output cmd_sample(const SampleArgs& a, const Common& c) {
  const pdov::SelectionSpec spec(a.lambda, a.theta);
  if (a.hist_bins > 0) {
    if (!a.ball.empty()) {
      throw UsageError("--hist-bins and --ball are mutually exclusive");
    }
    const auto h = pdov::homozygosity_histogram(spec, a.samples, a.hist_bins, c.seed);
    const bool json = resolved_format(c, "csv", {"csv", "json"}) == "json";
    Output o;
    o.degenerate = h.degenerate;
    if (json) {
      ordered_json rows = ordered_json::array();
      for (std::size_t i = 0; i < h.mass.size(); ++i) {
        rows.push_back({{"bin_lo", h.bin_lo[i]}, {"bin_hi", h.bin_hi[i]}, {"mass", h.mass[i]}});
      }
      o.data = rows.dump(2) + "\n";
    } else {
      o.data = csv({"bin_lo", "bin_hi", "mass"});
      for (std::size_t i = 0; i < h.mass.size(); ++i) {
        o.data += csv({format_number(h.bin_lo[i]), format_number(h.bin_hi[i]), format_number(h.mass[i])});
      }
    }
    return o;
  }
  resolved_format(c, "json", {"json"});
  pdov::TiltedEstimate est;
  if (!a.ball.empty()) {
    if (a.ball.size() != 2 || a.ball[0] != std::floor(a.ball[0])) {
      throw UsageError("--ball expects K,DELTA with integer K");
    }
    est = pdov::ball_probability(spec, static_cast<int>(a.ball[0]), a.ball[1], a.samples, c.seed);
  } else if (!std::isnan(a.mgf_t)) {
    const double t = a.mgf_t;
    est = pdov::tilted_estimate_h2(spec, [t](double h) { return std::exp(t * h); }, a.samples, c.seed);
  } else {
    est = pdov::tilted_estimate_h2(spec, [](double h) { return h; }, a.samples, c.seed);
  }
  ordered_json j = {{"estimate", est.value},
                    {"se", est.std_error},
                    {"ess", est.effective_sample_size},
                    {"n", est.n_samples}};
  if (est.degenerate) {
    j["warning"] = fmt::format("effective sample size {:.1f} is below {}", est.effective_sample_size,
                               pdov::kDegenerateEss);
  }
  Output o{j.dump(2) + "\n"};
  o.degenerate = est.degenerate;
  return o;
}

struct VerifyArgs {
  std::string suite = "all";
  std::int64_t mc_samples = 200'000;
};

Output cmd_verify(const VerifyArgs& a, const Common& c) {
  pdov::VerifyOptions opts;
  opts.seed = c.seed;
  opts.mc_samples = a.mc_samples;
  const auto results = pdov::run_suite(a.suite, opts);
  const bool json = resolved_format(c, "csv", {"csv", "json"}) == "json";
  Output o;
  ordered_json rows = ordered_json::array();
  if (!json) {
    o.data = csv({"suite", "check", "status", "worst_margin", "evaluated", "violations"});
  }
  for (const auto& r : results) {
    o.checks_failed = o.checks_failed || !r.passed();
    const std::string status = r.passed() ? "pass" : "fail";
    if (json) {
      rows.push_back({{"suite", r.suite}, {"check", r.check}, {"status", status}, {"worst_margin", r.worst_margin},
                      {"evaluated", r.evaluated}, {"violations", r.violations}});
    } else {
      o.data += csv({r.suite, "\"" + r.check + "\"", status, format_number(r.worst_margin),
                     std::to_string(r.evaluated), std::to_string(r.violations)});
    }
  }
  if (json) {
    o.data = rows.dump(2) + "\n";
  }
  return o;
}

// ---- driver -----------------------------------------------------------------

void write_output(const Common& c, const std::string& data) {
  if (c.out.empty() || c.out == "-") {
    std::cout << data << std::flush;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) {
    throw UsageError("cannot open output file " + c.out);
  }
  f << data;
}

void write_manifest(const Common& c, const CLI::App* sub, int argc, char** argv, const std::string& data) {
  std::vector<std::string> args(argv, argv + argc);
  ordered_json m;
  m["command_line"] = args;
  m["command"] = sub->get_name();
  m["parameters"] = parameters_of(sub);
  m["seed"] = c.seed;
  m["version"] = PDOV_VERSION;
  m["timestamp"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::now()));
  m["outputs"] = ordered_json::array({{{"path", c.out.empty() ? "-" : c.out}, {"sha256", sha256_hex(data)}}});
  std::ofstream f(c.manifest);
  if (!f) {
    throw UsageError("cannot open manifest file " + c.manifest);
  }
  f << m.dump(2) << '\n';
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output path (default stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", c.seed, "Root seed")->capture_default_str();
  sub->add_flag("--strict", c.strict, "Escalate Monte Carlo degeneracy to exit code 4");
  sub->add_option("--manifest", c.manifest, "Write a JSON run manifest to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdov: homozygosity under Poisson-Dirichlet with overdominant selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PDOV_VERSION);
  Common common;
  std::function<Output()> run;

  CoeffsArgs coeffs;
  auto* s_coeffs = app.add_subcommand("coeffs", "Coefficient table A_{k,l}(theta); theta = 0 gives the limit table");
  s_coeffs->add_option("--theta", coeffs.theta)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  s_coeffs->add_option("--kmax", coeffs.kmax)->check(CLI::PositiveNumber)->capture_default_str();
  s_coeffs->callback([&] { run = [&] { return cmd_coeffs(coeffs, common); }; });

  MomentsArgs moments;
  auto* s_moments = app.add_subcommand("moments", "Heterozygosity moments by table, recursion and optional Monte Carlo");
  s_moments->add_option("--theta", moments.theta)->required();
  s_moments->add_option("--kmax", moments.kmax)->required();
  s_moments->add_option("--mc-check", moments.mc_check, "Monte Carlo draws for the cross-check");

  s_moments->callback([&] { run = [&] { return cmd_moments(moments, common); }; });

  KnArgs kn;
  auto* s_kn = app.add_subcommand("kn", "Ratios K_n, K~_n and the F, G diagnostics over a theta list");
  s_kn->add_option("--lambda", kn.lambda)->required();
  s_kn->add_option("--n", kn.n)->capture_default_str();
  s_kn->add_option("--theta", kn.thetas)->required()->delimiter(',');
  s_kn->callback([&] { run = [&] { return cmd_kn(kn, common); }; });

  MgfArgs mgf;
  auto* s_mgf = app.add_subcommand("mgf", "Tilted moment generating function of H2 and its theta -> 0 limit");
  s_mgf->add_option("--lambda", mgf.lambda)->required();
  s_mgf->add_option("--theta", mgf.theta)->required();
  s_mgf->add_option("--t", mgf.ts)->required()->delimiter(',');
  s_mgf->add_option("--kmax", mgf.kmax, "Coefficient table size (0 = automatic)")->capture_default_str();
  s_mgf->add_option("--route", mgf.route)->check(CLI::IsMember({"auto", "shifted", "outer"}))->capture_default_str();
  s_mgf->callback([&] { run = [&] { return cmd_mgf(mgf, common); }; });

  PhaseArgs phase;
  auto* s_phase = app.add_subcommand("phase", "Phase map lambda -> u over a grid");
  s_phase->add_option("--lambda-min", phase.lambda_min)->capture_default_str();
  s_phase->add_option("--lambda-max", phase.lambda_max)->capture_default_str();
  s_phase->add_option("--step", phase.step)->capture_default_str();
  s_phase->callback([&] { run = [&] { return cmd_phase(phase, common); }; });

  TailsArgs tails;
  auto* s_tails = app.add_subcommand("tails", "Columns beyond [lambda] against their analytic bound");
  s_tails->add_option("--lambda", tails.lambda)->required();
  s_tails->add_option("--theta", tails.thetas)->required()->delimiter(',');
  s_tails->callback([&] { run = [&] { return cmd_tails(tails, common); }; });

  RateArgs rate;
  auto* s_rate = app.add_subcommand("rate", "Rate functions J, S_lambda at a configuration");
  s_rate->add_option("--lambda", rate.lambda)->required();
  s_rate->add_option("--config", rate.config)->delimiter(',');
  s_rate->add_option("--uniform", rate.uniform, "Use the uniform configuration with K entries");
  s_rate->callback([&] { run = [&] { return cmd_rate(rate, common); }; });

  SampleArgs sample;
  auto* s_sample = app.add_subcommand("sample", "Importance-sampling estimates under the tilted measure");
  s_sample->add_option("--lambda", sample.lambda)->required();
  s_sample->add_option("--theta", sample.theta)->required();
  s_sample->add_option("--samples", sample.samples)->capture_default_str();
  s_sample->add_option("--hist-bins", sample.hist_bins, "Emit a weighted histogram of H2");
  s_sample->add_option("--ball", sample.ball, "Ball probability around c_K with radius DELTA")->delimiter(',');
  s_sample->add_option("--mgf-t", sample.mgf_t, "Estimate E exp(t H2) instead of E H2");
  s_sample->callback([&] { run = [&] { return cmd_sample(sample, common); }; });

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "Run property suites and report worst margins");
  std::vector<std::string> suites = pdov::suite_names();
  suites.push_back("all");
  s_verify->add_option("--suite", verify.suite)->check(CLI::IsMember(suites))->capture_default_str();
  s_verify->add_option("--mc-samples", verify.mc_samples)->capture_default_str();
  s_verify->callback([&] { run = [&] { return cmd_verify(verify, common); }; });

  for (CLI::App* sub : app.get_subcommands({})) {
    add_common(sub, common);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Output o = run();
    write_output(common, o.data);
    if (!common.manifest.empty()) {
      write_manifest(common, app.get_subcommands().front(), argc, argv, o.data);
    }
    if (o.degenerate) {
      std::cerr << "warning: importance weights are degenerate (effective sample size below "
                << pdov::kDegenerateEss << ")\n";
      if (common.strict) {
        return kDegenerate;
      }
    }
    return o.checks_failed ? kVerifyFailed : kOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const pdov::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << '\n';
    return kPrecision;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
}
