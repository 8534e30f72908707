#include "spherequant/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "spherequant/berezin.hpp"
#include "spherequant/format.hpp"
#include "spherequant/kms.hpp"
#include "spherequant/models.hpp"
#include "spherequant/resolvent.hpp"
#include "spherequant/rng.hpp"
#include "spherequant/sdq.hpp"
#include "spherequant/sweep_report.hpp"

namespace sq::harness {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double_or_throw(const std::string& key, const std::string& raw) {
  double v = 0.0;
  const char* begin = raw.data();
  const char* end = raw.data() + raw.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw config_error("key '" + key + "': expected a number, got '" + raw + "'");
  }
  return v;
}

int parse_int_or_throw(const std::string& key, const std::string& raw) {
  int v = 0;
  const char* begin = raw.data();
  const char* end = raw.data() + raw.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw config_error("key '" + key + "': expected an integer, got '" + raw + "'");
  }
  return v;
}

std::vector<std::string> split_commas(const std::string& raw) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= raw.size()) {
    const std::size_t comma = raw.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(trim(std::string_view(raw).substr(start)));
      break;
    }
    parts.push_back(trim(std::string_view(raw).substr(start, comma - start)));
    start = comma + 1;
  }
  return parts;
}

json config_echo(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.values()) j[k] = v;
  return j;
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw config_error("cannot open output path '" + out_path + "'");
  f << payload;
}

std::string json_payload(const json& j) { return j.dump(2) + "\n"; }

struct CommandIo {
  std::string out_path;
  std::string format;  // resolved: "csv" or "json"
  bool check = false;
};

CommandIo resolve_io(const RunConfig& cfg, const CliOptions& options,
                     const std::string& default_format) {
  CommandIo io;
  io.out_path = !options.out_path.empty() ? options.out_path : cfg.get_string("out", "-");
  io.format = !options.format.empty() ? options.format : cfg.get_string("format", default_format);
  if (io.format != "csv" && io.format != "json") {
    throw config_error("format must be 'csv' or 'json', got '" + io.format + "'");
  }
  io.check = options.check;
  return io;
}

SitePolynomial parse_config_poly(const RunConfig& cfg, const std::string& key, int sites) {
  return parse_poly(cfg.get_string(key), sites);
}

std::vector<int> make_range(const RunConfig& cfg, const std::string& prefix, int default_step) {
  const int lo = cfg.get_int(prefix + "_min");
  const int hi = cfg.get_int(prefix + "_max");
  const int step = cfg.get_int(prefix + "_step", default_step);
  if (step < 1) throw config_error("key '" + prefix + "_step': must be >= 1");
  std::vector<int> range;
  for (int v = lo; v <= hi; v += step) range.push_back(v);
  if (range.empty()) throw config_error("empty " + prefix + " range");
  return range;
}

// ---------------------------------------------------------------------- //

int run_quantize(const RunConfig& cfg, const CliOptions& options) {
  cfg.check_schema({"poly", "sites", "two_j", "out", "format"}, {"poly", "two_j"});
  const CommandIo io = resolve_io(cfg, options, "json");
  const int sites = cfg.get_int("sites", 1);
  const int two_j = cfg.get_int("two_j");
  const SitePolynomial p = parse_config_poly(cfg, "poly", sites);
  const ComplexMatrix q = quantize_tensor(p, two_j);
  const double norm = spectral_norm(q);

  if (io.format == "json") {
    json entries = json::array();
    for (const cplx& v : q.data()) entries.push_back({v.real(), v.imag()});
    json j;
    j["command"] = "quantize";
    j["config"] = config_echo(cfg);
    j["matrix"] = {{"rows", q.rows()}, {"cols", q.cols()}, {"entries", entries}};
    j["spectral_norm"] = norm;
    write_output(io.out_path, json_payload(j));
  } else {
    std::string csv = "row,col,re,im\n";
    for (std::size_t i = 0; i < q.rows(); ++i) {
      for (std::size_t k = 0; k < q.cols(); ++k) {
        csv += std::to_string(i) + "," + std::to_string(k) + "," + format_double(q(i, k).real()) +
               "," + format_double(q(i, k).imag()) + "\n";
      }
    }
    csv += "# spectral_norm," + format_double(norm) + "\n";
    write_output(io.out_path, csv);
  }
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, const CliOptions& options) {
  const std::string observable = cfg.get_string("observable");
  const CommandIo io = resolve_io(cfg, options, "csv");

  const std::set<std::string> common = {"observable", "out", "format", "fit"};
  SweepReport report("J", {"defect"});

  if (observable == "dgr" || observable == "product") {
    auto allowed = common;
    allowed.insert({"f", "g", "sites", "two_j_min", "two_j_max", "two_j_step"});
    cfg.check_schema(allowed, {"f", "g", "two_j_min", "two_j_max"});
    const int sites = cfg.get_int("sites", 1);
    const SitePolynomial f = parse_config_poly(cfg, "f", sites);
    const SitePolynomial g = parse_config_poly(cfg, "g", sites);
    const auto kind = observable == "dgr" ? DefectKind::dgr : DefectKind::product;
    report = defect_sweep(kind, f, g, make_range(cfg, "two_j", 2));
  } else if (observable == "norm_gap") {
    auto allowed = common;
    allowed.insert({"f", "sites", "two_j_min", "two_j_max", "two_j_step"});
    cfg.check_schema(allowed, {"f", "two_j_min", "two_j_max"});
    const int sites = cfg.get_int("sites", 1);
    const SitePolynomial f = parse_config_poly(cfg, "f", sites);
    report = defect_sweep(DefectKind::norm_gap, f, f, make_range(cfg, "two_j", 2));
  } else if (observable == "cw_defect") {
    auto allowed = common;
    allowed.insert({"B", "d_min", "d_max", "d_step"});
    cfg.check_schema(allowed, {"d_min", "d_max"});
    const double b = cfg.get_double("B", 0.0);
    SweepReport cw("d", {"defect"});
    for (int d : make_range(cfg, "d", 10)) cw.add_row(d, {cw_defect(d, b)});
    report = std::move(cw);
  } else if (observable == "norm_limit") {
    auto allowed = common;
    allowed.insert({"model", "d", "B", "two_j_min", "two_j_max", "two_j_step", "d_min", "d_max",
                    "d_step"});
    cfg.check_schema(allowed, {"model"});
    const std::string model = cfg.get_string("model");
    ModelSpec spec;
    spec.B = cfg.get_double("B", 0.0);
    spec.d = cfg.get_int("d", 2);
    if (model == "ising") {
      spec.kind = ModelKind::ising;
    } else if (model == "heisenberg") {
      spec.kind = ModelKind::heisenberg;
    } else if (model == "curie_weiss") {
      spec.kind = ModelKind::curie_weiss;
      spec.d = 1;
    } else {
      throw config_error("key 'model': unknown model '" + model + "'");
    }
    const auto range = spec.kind == ModelKind::curie_weiss ? make_range(cfg, "d", 10)
                                                           : make_range(cfg, "two_j", 2);
    report = hamiltonian_norm_limit(spec, range);
  } else if (observable == "classical_limit") {
    auto allowed = common;
    allowed.insert({"family", "f", "theta", "phi", "symbol", "beta", "two_j_min", "two_j_max",
                    "two_j_step"});
    cfg.check_schema(allowed, {"family", "f", "two_j_min", "two_j_max"});
    const SitePolynomial f = parse_config_poly(cfg, "f", 1);
    const std::string family = cfg.get_string("family");
    const auto range = make_range(cfg, "two_j", 2);
    if (family == "coherent") {
      report = classical_limit_sweep(
          CoherentFamily{cfg.get_double("theta", 0.0), cfg.get_double("phi", 0.0)}, f, range);
    } else if (family == "gibbs") {
      report = classical_limit_sweep(
          GibbsFamily{parse_config_poly(cfg, "symbol", 1), cfg.get_double("beta", 1.0)}, f,
          range);
    } else {
      throw config_error("key 'family': must be 'coherent' or 'gibbs'");
    }
  } else {
    throw config_error("key 'observable': unknown observable '" + observable + "'");
  }

  if (cfg.has("fit")) report.fit = fit_rate(report, cfg.get_string("fit"));

  if (io.format == "json") {
    json j = report_json(report);
    j["command"] = "sweep";
    j["config"] = config_echo(cfg);
    write_output(io.out_path, json_payload(j));
  } else {
    write_output(io.out_path, to_csv(report));
    if (report.fit) {
      const json fit = {{"exponent", report.fit->exponent},
                        {"prefactor", report.fit->prefactor},
                        {"r_squared", report.fit->r_squared}};
      if (io.out_path.empty() || io.out_path == "-") {
        std::cout << fit.dump() << "\n";
      } else {
        write_output(io.out_path + ".fit.json", fit.dump() + "\n");
      }
    }
  }
  return kExitOk;
}

int run_kms(const RunConfig& cfg, const CliOptions& options) {
  const std::set<std::string> allowed = {"mode",   "beta",      "seed",   "t_values", "samples",
                                         "dim_a",  "dim_b",     "dim",    "state",    "tolerance",
                                         "out",    "format"};
  cfg.check_schema(allowed, {"mode", "beta", "seed"});
  const CommandIo io = resolve_io(cfg, options, "json");

  const double beta = cfg.get_double("beta");
  if (beta <= 0.0) throw config_error("key 'beta': must be positive");
  const std::uint64_t seed = cfg.get_seed("seed", 1);
  const double tolerance = cfg.get_double("tolerance", 1e-9);
  const int n_samples = cfg.get_int("samples", 5);
  std::vector<double> ts = {0.0, 0.5, 1.0};
  if (cfg.has("t_values")) ts = cfg.get_double_list("t_values");
  const std::string mode = cfg.get_string("mode");

  SplitMix64 rng(seed);
  json result;
  bool pass = false;

  // unit spectral radius keeps e^{beta H} conditioning independent of dim
  auto normalized_hermitian = [&rng](std::size_t n) {
    ComplexMatrix h = random_hermitian(rng, n);
    h *= cplx(1.0 / spectral_norm(h));
    return h;
  };

  if (mode == "product") {
    const std::size_t dim_a = static_cast<std::size_t>(cfg.get_int("dim_a", 2));
    const std::size_t dim_b = static_cast<std::size_t>(cfg.get_int("dim_b", 3));
    const GibbsState state_a = gibbs_state(normalized_hermitian(dim_a), beta);
    const GibbsState state_b = gibbs_state(normalized_hermitian(dim_b), beta);
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> samples;
    for (int k = 0; k < n_samples; ++k) {
      samples.emplace_back(random_hermitian(rng, dim_a), random_hermitian(rng, dim_b));
    }
    const ProductKmsResult res = product_kms_residual(state_a, state_b, samples, ts);
    pass = res.max_residual <= tolerance && res.max_factorization_error <= 1e-12;
    result["max_residual"] = res.max_residual;
    result["max_factorization_error"] = res.max_factorization_error;
  } else if (mode == "single") {
    const std::size_t dim = static_cast<std::size_t>(cfg.get_int("dim", 4));
    const std::string state_kind = cfg.get_string("state", "gibbs");
    const ComplexMatrix h = normalized_hermitian(dim);
    ComplexMatrix rho;
    if (state_kind == "gibbs") {
      rho = gibbs_state(h, beta).rho;
    } else if (state_kind == "mixed") {
      rho = cplx(1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim);
    } else {
      throw config_error("key 'state': must be 'gibbs' or 'mixed'");
    }
    double max_res = 0.0;
    for (int k = 0; k < n_samples; ++k) {
      const ComplexMatrix a = random_hermitian(rng, dim);
      const ComplexMatrix b = random_hermitian(rng, dim);
      for (double t : ts) {
        max_res = std::max(max_res, kms_boundary_residual(rho, h, beta, a, b, t));
      }
    }
    pass = max_res <= tolerance;
    result["max_residual"] = max_res;
  } else {
    throw config_error("key 'mode': must be 'product' or 'single'");
  }
  result["tolerance"] = tolerance;
  result["pass"] = pass;

  if (io.format == "json") {
    json j;
    j["command"] = "kms";
    j["config"] = config_echo(cfg);
    j["residuals"] = result;
    write_output(io.out_path, json_payload(j));
  } else {
    std::string csv = "metric,value\n";
    for (const auto& [k, v] : result.items()) {
      csv += k + "," + (v.is_number() ? format_double(v.get<double>()) : v.dump()) + "\n";
    }
    write_output(io.out_path, csv);
  }
  if (io.check && !pass) return kExitCheckFailed;
  return kExitOk;
}

int run_resolvent(const RunConfig& cfg, const CliOptions& options) {
  const std::set<std::string> allowed = {"lambda", "m_values", "tolerance", "h1_diag", "h2_diag",
                                         "h1_dim", "h2_dim",   "seed",      "out",     "format"};
  cfg.check_schema(allowed, {"lambda"});
  const CommandIo io = resolve_io(cfg, options, "csv");

  const double lambda = cfg.get_double("lambda");
  if (lambda == 0.0) throw config_error("key 'lambda': must be nonzero");
  const double tolerance = cfg.get_double("tolerance", 1e-8);
  std::vector<int> m_values = {16, 32, 64, 128, 256};
  if (cfg.has("m_values")) m_values = cfg.get_int_list("m_values");
  if (m_values.empty()) throw config_error("key 'm_values': empty list");

  ComplexMatrix h1, h2;
  if (cfg.has("h1_dim") || cfg.has("h2_dim")) {
    SplitMix64 rng(cfg.get_seed("seed", 1));
    h1 = random_hermitian(rng, static_cast<std::size_t>(cfg.get_int("h1_dim", 2)));
    h2 = random_hermitian(rng, static_cast<std::size_t>(cfg.get_int("h2_dim", 2)));
  } else {
    std::vector<double> d1 = {0.0, 1.0};
    std::vector<double> d2 = {0.0, 2.0};
    if (cfg.has("h1_diag")) d1 = cfg.get_double_list("h1_diag");
    if (cfg.has("h2_diag")) d2 = cfg.get_double_list("h2_diag");
    h1 = ComplexMatrix::diagonal_real(d1);
    h2 = ComplexMatrix::diagonal_real(d2);
  }

  SweepReport table("M", {"error"});
  for (int m : m_values) {
    if (m < 1) throw config_error("key 'm_values': node counts must be >= 1");
    table.add_row(m, {resolvent_error(h1, h2, lambda, m)});
  }
  const double final_error = table.value(table.n_rows() - 1, 0);
  const bool pass = final_error <= tolerance;

  if (io.format == "json") {
    json j = report_json(table);
    j["command"] = "resolvent";
    j["config"] = config_echo(cfg);
    j["final_error"] = final_error;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    write_output(io.out_path, json_payload(j));
  } else {
    write_output(io.out_path, to_csv(table));
  }
  if (io.check && !pass) return kExitCheckFailed;
  return kExitOk;
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) throw config_error("line " + std::to_string(line_no) + ": empty key");
    if (cfg.values_.count(key)) {
      throw config_error("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw config_error("missing required key '" + key + "'");
  return it->second;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

int RunConfig::get_int(const std::string& key) const {
  return parse_int_or_throw(key, get_string(key));
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double RunConfig::get_double(const std::string& key) const {
  return parse_double_or_throw(key, get_string(key));
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::uint64_t RunConfig::get_seed(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string raw = get_string(key);
  std::uint64_t v = 0;
  auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size()) {
    throw config_error("key '" + key + "': expected an unsigned integer, got '" + raw + "'");
  }
  return v;
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const std::string& part : split_commas(get_string(key))) {
    if (part.empty()) throw config_error("key '" + key + "': empty list element");
    out.push_back(parse_double_or_throw(key, part));
  }
  return out;
}

std::vector<int> RunConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const std::string& part : split_commas(get_string(key))) {
    if (part.empty()) throw config_error("key '" + key + "': empty list element");
    out.push_back(parse_int_or_throw(key, part));
  }
  return out;
}

void RunConfig::check_schema(const std::set<std::string>& allowed,
                             const std::vector<std::string>& required) const {
  for (const auto& [k, v] : values_) {
    if (!allowed.count(k)) throw config_error("unknown key '" + k + "'");
  }
  for (const std::string& k : required) {
    if (!has(k)) throw config_error("missing required key '" + k + "'");
  }
}

int run_command(const std::string& command, const CliOptions& options) {
  try {
    const RunConfig cfg = RunConfig::parse_file(options.config_path);
    if (command == "quantize") return run_quantize(cfg, options);
    if (command == "sweep") return run_sweep(cfg, options);
    if (command == "kms") return run_kms(cfg, options);
    if (command == "resolvent") return run_resolvent(cfg, options);
    std::cerr << "error: unknown command '" << command << "'\n";
    return kExitInputError;
  } catch (const cap_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace sq::harness
