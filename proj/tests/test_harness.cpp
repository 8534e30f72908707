#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "spherequant/harness.hpp"

using namespace sq::harness;
namespace fs = std::filesystem;

namespace {

const fs::path kTmp = "harness_tmp";

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SPHEREQUANT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = RunConfig::parse(
      "# comment\n"
      "poly = z1  # trailing comment\n"
      "two_j=4\n"
      "\n"
      "beta = 0.5\n"
      "m_values = 16, 32,64\n");
  CHECK(cfg.get_string("poly") == "z1");
  CHECK(cfg.get_int("two_j") == 4);
  CHECK(cfg.get_double("beta") == 0.5);
  CHECK(cfg.get_int_list("m_values") == std::vector<int>{16, 32, 64});
  CHECK(cfg.get_int("missing", 7) == 7);

  CHECK_THROWS_AS(RunConfig::parse("novalue\n"), config_error);
  CHECK_THROWS_AS(RunConfig::parse("a = 1\na = 2\n"), config_error);
  CHECK_THROWS_AS(cfg.get_int("poly"), config_error);
  CHECK_THROWS_AS(cfg.get_string("absent"), config_error);

  CHECK_THROWS_AS(cfg.check_schema({"poly", "two_j"}, {"poly"}), config_error);  // unknown keys
  CHECK_THROWS_AS(
      cfg.check_schema({"poly", "two_j", "beta", "m_values", "out"}, {"seed"}),
      config_error);  // missing required
}

TEST_CASE("quantize command writes the matrix and its norm") {
  const fs::path conf = kTmp / "quantize.conf";
  const fs::path out = kTmp / "quantize.json";
  write_file(conf, "poly = z1\ntwo_j = 1\n");
  REQUIRE(run_cli("quantize --config " + conf.string() + " --out " + out.string()) == 0);

  const nlohmann::json j = nlohmann::json::parse(read_file(out));
  CHECK(j["command"] == "quantize");
  CHECK(j["matrix"]["rows"] == 2);
  const auto entries = j["matrix"]["entries"];
  CHECK(std::abs(entries[0][0].get<double>() - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(entries[3][0].get<double>() + 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(entries[1][0].get<double>()) <= 1e-14);
  CHECK(std::abs(j["spectral_norm"].get<double>() - 1.0 / 3.0) <= 1e-12);

  const fs::path conf1 = kTmp / "quantize_unit.conf";
  const fs::path out1 = kTmp / "quantize_unit.json";
  write_file(conf1, "poly = 1\ntwo_j = 3\n");
  REQUIRE(run_cli("quantize --config " + conf1.string() + " --out " + out1.string()) == 0);
  const nlohmann::json j1 = nlohmann::json::parse(read_file(out1));
  CHECK(std::abs(j1["spectral_norm"].get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("quantize maps input errors and caps onto exit codes") {
  const fs::path bad_poly = kTmp / "bad_poly.conf";
  write_file(bad_poly, "poly = x9\nsites = 1\ntwo_j = 1\n");
  CHECK(run_cli("quantize --config " + bad_poly.string()) == 2);

  const fs::path unknown = kTmp / "unknown_key.conf";
  write_file(unknown, "poly = z1\ntwo_j = 1\nbogus = 1\n");
  CHECK(run_cli("quantize --config " + unknown.string()) == 2);

  const fs::path cap = kTmp / "cap.conf";
  write_file(cap, "poly = x1\nsites = 7\ntwo_j = 4\n");
  CHECK(run_cli("quantize --config " + cap.string()) == 3);

  CHECK(run_cli("quantize --config " + (kTmp / "absent.conf").string()) == 2);
}

TEST_CASE("sweep command emits the closed-form defect column") {
  const fs::path conf = kTmp / "dgr.conf";
  const fs::path out = kTmp / "dgr.csv";
  write_file(conf,
             "observable = dgr\nf = z1\ng = x1\n"
             "two_j_min = 2\ntwo_j_max = 8\ntwo_j_step = 2\nfit = defect\n");
  REQUIRE(run_cli("sweep --config " + conf.string() + " --out " + out.string()) == 0);

  std::istringstream csv(read_file(out));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "J,defect");
  int rows = 0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    const double j = std::stod(line.substr(0, comma));
    const double defect = std::stod(line.substr(comma + 1));
    CHECK(std::abs(defect - j / ((j + 1.0) * (j + 1.0))) <= 1e-10);
    ++rows;
  }
  CHECK(rows == 4);

  const nlohmann::json fit = nlohmann::json::parse(read_file(kTmp / "dgr.csv.fit.json"));
  CHECK(fit["exponent"].get<double>() < 0.0);
}

TEST_CASE("sweep rejects bad observables and empty ranges") {
  const fs::path bad = kTmp / "bad_obs.conf";
  write_file(bad, "observable = nope\nf = z1\ng = x1\ntwo_j_min = 2\ntwo_j_max = 4\n");
  CHECK(run_cli("sweep --config " + bad.string()) == 2);

  const fs::path empty = kTmp / "empty_range.conf";
  write_file(empty, "observable = dgr\nf = z1\ng = x1\ntwo_j_min = 10\ntwo_j_max = 2\n");
  CHECK(run_cli("sweep --config " + empty.string()) == 2);
}

TEST_CASE("identical config and seed give byte-identical reports") {
  const fs::path conf = kTmp / "det.conf";
  write_file(conf,
             "observable = norm_gap\nf = z1\n"
             "two_j_min = 2\ntwo_j_max = 10\ntwo_j_step = 2\nfit = gap\n");
  const fs::path out_a = kTmp / "det_a.csv";
  const fs::path out_b = kTmp / "det_b.csv";
  REQUIRE(run_cli("sweep --config " + conf.string() + " --out " + out_a.string()) == 0);
  REQUIRE(run_cli("sweep --config " + conf.string() + " --out " + out_b.string()) == 0);
  const std::string a = read_file(out_a);
  CHECK(!a.empty());
  CHECK(a == read_file(out_b));
  CHECK(read_file(kTmp / "det_a.csv.fit.json") == read_file(kTmp / "det_b.csv.fit.json"));

  const fs::path kconf = kTmp / "det_kms.conf";
  write_file(kconf, "mode = product\nbeta = 1\nseed = 42\ndim_a = 2\ndim_b = 3\n");
  const fs::path kout_a = kTmp / "det_kms_a.json";
  const fs::path kout_b = kTmp / "det_kms_b.json";
  REQUIRE(run_cli("kms --config " + kconf.string() + " --out " + kout_a.string()) == 0);
  REQUIRE(run_cli("kms --config " + kconf.string() + " --out " + kout_b.string()) == 0);
  const std::string ka = read_file(kout_a);
  CHECK(!ka.empty());
  CHECK(ka == read_file(kout_b));
}

TEST_CASE("kms command pass/fail exit codes") {
  const fs::path good = kTmp / "kms_good.conf";
  write_file(good, "mode = product\nbeta = 1\nseed = 42\ndim_a = 2\ndim_b = 3\n");
  CHECK(run_cli("kms --check --config " + good.string()) == 0);

  const fs::path mixed = kTmp / "kms_mixed.conf";
  write_file(mixed, "mode = single\nstate = mixed\nbeta = 1\nseed = 7\ndim = 4\n");
  CHECK(run_cli("kms --check --config " + mixed.string()) == 1);
  // without --check the run still reports, but exits 0
  CHECK(run_cli("kms --config " + mixed.string()) == 0);

  const fs::path bad_beta = kTmp / "kms_bad_beta.conf";
  write_file(bad_beta, "mode = product\nbeta = -1\nseed = 1\n");
  CHECK(run_cli("kms --config " + bad_beta.string()) == 2);
}

TEST_CASE("resolvent command") {
  const fs::path conf = kTmp / "res.conf";
  const fs::path out = kTmp / "res.csv";
  write_file(conf, "lambda = 1\nm_values = 16,32,64,128,256\ntolerance = 1e-8\n");
  REQUIRE(run_cli("resolvent --check --config " + conf.string() + " --out " + out.string()) == 0);

  std::istringstream csv(read_file(out));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "M,error");
  double prev = 1e300;
  int rows = 0;
  while (std::getline(csv, line)) {
    const double err = std::stod(line.substr(line.find(',') + 1));
    CHECK(err <= prev * 1.001);
    prev = err;
    ++rows;
  }
  CHECK(rows == 5);
  CHECK(prev <= 1e-8);

  const fs::path zero = kTmp / "res_zero.conf";
  write_file(zero, "lambda = 0\n");
  CHECK(run_cli("resolvent --config " + zero.string()) == 2);

  const fs::path coarse = kTmp / "res_coarse.conf";
  write_file(coarse, "lambda = 1\nm_values = 1\n");
  CHECK(run_cli("resolvent --check --config " + coarse.string()) == 1);
}
