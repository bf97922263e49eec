#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <limits>
#include <random>
#include <stdexcept>

#include "test_support.hpp"
#include "xydm/free_fermion.hpp"
#include "xydm/sweep.hpp"

using namespace xydm;
using xydm::testing::same_bits;

namespace {

ModelParams params(double J, double gamma, double D, double lambda, int N) { return ModelParams{J, gamma, D, lambda, N}; }

std::size_t column_index(const SweepTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (table.columns[i] == name) return i;
  }
  throw std::out_of_range("no column " + name);
}

SweepTable random_table(std::mt19937_64& rng) {
  // Mix of magnitudes, signs and subnormals.
  auto value = [&rng]() {
    std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
    std::uniform_int_distribution<int> exponent(-320, 300);
    return mantissa(rng) * std::pow(10.0, exponent(rng));
  };
  SweepTable table;
  table.axis_name = "lambda";
  const int columns = 1 + static_cast<int>(rng() % 5);
  for (int c = 0; c < columns; ++c) table.columns.push_back("c" + std::to_string(c));
  double axis = value();
  const int rows = static_cast<int>(rng() % 20);
  for (int r = 0; r < rows; ++r) {
    SweepRow row;
    row.axis_value = axis;
    for (int c = 0; c < columns; ++c) row.values.push_back(value());
    table.rows.push_back(row);
    axis = std::nextafter(axis, std::numeric_limits<double>::infinity()) + std::abs(value());
  }
  table.metadata.params = params(value(), value(), value(), value(), 2 + static_cast<int>(rng() % 1000));
  table.metadata.grid = "axis=lambda lo=0 hi=1";
  table.metadata.extra = {{"energy", format_real(value())}, {"note", "a b=c"}};
  return table;
}

}  // namespace

TEST_CASE("CSV round trip is lossless") {
  std::mt19937_64 rng(1);
  for (int draw = 0; draw < 300; ++draw) {
    const SweepTable table = random_table(rng);
    const SweepTable back = parse_csv(to_csv(table));
    CHECK(back == table);
    CHECK(to_csv(back) == to_csv(table));
  }
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(-2.0) == "-2");
}

TEST_CASE("CSV parser rejects malformed input") {
  CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("# axis=lambda\nlambda,a\n0,1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("lambda,a\n0,x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("lambda,a\n1,0\n0,0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("lambda,a\n# late=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("# axis=D\nlambda,a\n"), std::invalid_argument);
}

TEST_CASE("JSON layout") {
  const SweepTable table = spectrum_table(params(1, 0.5, 0.2, 0.8, 6), SectorTag::PaperGrid);
  const auto doc = nlohmann::json::parse(to_json(table));
  CHECK(doc["metadata"]["version"] == std::string(kVersion));
  CHECK(doc["metadata"]["params"]["N"] == 6);
  CHECK(doc["metadata"]["params"]["D"].get<double>() == 0.2);
  CHECK(doc["columns"] == nlohmann::json::array({"k", "x", "cos_theta", "sin_theta", "lambda_k"}));
  REQUIRE(doc["rows"].size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(doc["rows"][i][0].get<double>() == table.rows[i].axis_value);
    CHECK(doc["rows"][i][4].get<double>() == table.rows[i].values[3]);
  }
}

TEST_CASE("spectrum table") {
  const SweepTable t = spectrum_table(params(1, 1, 0, 1, 4), SectorTag::PaperGrid);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.axis_name == "k");
  CHECK(t.rows.front().axis_value == -1.5);
  CHECK(t.rows.back().axis_value == 1.5);

  const SweepTable no_dm = spectrum_table(params(1, 0.6, 0, 0.4, 40), SectorTag::PaperGrid);
  const SweepTable dm = spectrum_table(params(1, 0.6, 3, 0.4, 40), SectorTag::PaperGrid);
  for (std::size_t i = 0; i < no_dm.rows.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) CHECK(same_bits(no_dm.rows[i].values[c], dm.rows[i].values[c]));
  }
  CHECK(to_csv(no_dm) != to_csv(dm));
}

TEST_CASE("ground table summary metadata") {
  const ModelParams p = params(1, 1, 2, 0, 12);
  const SweepTable t = ground_table(p, SectorTag::PaperGrid);
  const auto summary = ground_state(p, SectorTag::PaperGrid);
  std::string energy;
  std::string vacuum;
  for (const auto& [key, value] : t.metadata.extra) {
    if (key == "energy") energy = value;
    if (key == "valid_vacuum") vacuum = value;
  }
  CHECK(energy == format_real(summary.energy));
  CHECK(vacuum == "false");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].values[2] == (summary.occupations[i] ? 1.0 : 0.0));
  }
}

TEST_CASE("lambda sweep finds the critical field") {
  SweepSpec spec;
  spec.axis = "lambda";
  spec.lo = 0.5;
  spec.hi = 1.5;
  spec.steps = 201;
  spec.observables = {"dbeta", "beta", "fidelity", "curvature", "gap", "energy"};
  const SweepTable t = run_sweep(params(1, 1, 0, 0, 201), spec);
  REQUIRE(t.rows.size() == 201);
  CHECK(t.rows.front().axis_value == 0.5);
  CHECK(t.rows.back().axis_value == 1.5);
  const std::size_t dbeta = column_index(t, "dbeta");
  const std::size_t fid = column_index(t, "fidelity");
  const std::size_t gap = column_index(t, "gap");
  std::size_t peak = 0;
  std::size_t fid_min = 0;
  std::size_t gap_min = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (std::abs(t.rows[i].values[dbeta]) > std::abs(t.rows[peak].values[dbeta])) peak = i;
    if (t.rows[i].values[fid] < t.rows[fid_min].values[fid]) fid_min = i;
    if (t.rows[i].values[gap] < t.rows[gap_min].values[gap]) gap_min = i;
  }
  CHECK(t.rows[peak].axis_value > 0.9);
  CHECK(t.rows[peak].axis_value < 1.1);
  CHECK(std::abs(t.rows[fid_min].axis_value - 1.0) < 0.05);
  CHECK(std::abs(t.rows[gap_min].axis_value - 1.0) < 0.01);
}

TEST_CASE("D sweep crosses into an invalid vacuum") {
  SweepSpec spec;
  spec.axis = "D";
  spec.lo = 0.0;
  spec.hi = 2.0;
  spec.steps = 401;
  spec.observables = {"min_lambda", "valid_vacuum"};
  const int N = 100;
  const SweepTable t = run_sweep(params(1, 1, 0, 0, N), spec);
  double max_sin = 0.0;
  for (const ModeLabel k : build_kgrid(N, SectorTag::PaperGrid)) max_sin = std::max(max_sin, std::abs(std::sin(M_PI * k.twice / N)));
  const double critical = 1.0 / max_sin;
  for (const SweepRow& row : t.rows) {
    CHECK(row.values[0] == doctest::Approx(2.0 - 2.0 * row.axis_value * max_sin).epsilon(1e-12).scale(1.0));
    CHECK((row.values[1] == 1.0) == (row.axis_value <= critical));
  }
}

TEST_CASE("sweep grid rules and errors") {
  SweepSpec spec;
  spec.axis = "N";
  spec.lo = 4;
  spec.hi = 6;
  spec.steps = 7;
  spec.observables = {"energy"};
  const SweepTable sizes = run_sweep(params(1, 1, 0, 1, 2), spec);
  REQUIRE(sizes.rows.size() == 3);
  CHECK(sizes.rows[1].axis_value == 5.0);
  CHECK(sizes.rows[1].values[0] == ground_state(params(1, 1, 0, 1, 5), SectorTag::PaperGrid).energy);

  SweepSpec bad;
  bad.steps = 1;
  CHECK_THROWS_AS(run_sweep(params(1, 1, 0, 1, 10), bad), std::invalid_argument);
  bad = SweepSpec{};
  bad.lo = 2;
  bad.hi = 1;
  CHECK_THROWS_AS(run_sweep(params(1, 1, 0, 1, 10), bad), std::invalid_argument);
  bad = SweepSpec{};
  bad.observables = {"entropy"};
  CHECK_THROWS_AS(run_sweep(params(1, 1, 0, 1, 10), bad), std::invalid_argument);
  bad = SweepSpec{};
  bad.axis = "J";
  CHECK_THROWS_AS(run_sweep(params(1, 1, 0, 1, 10), bad), std::invalid_argument);
  bad = SweepSpec{};
  bad.axis = "N";
  bad.lo = 0;
  bad.hi = 4;
  CHECK_THROWS_AS(run_sweep(params(1, 1, 0, 1, 10), bad), std::invalid_argument);
  bad = SweepSpec{};
  bad.h = 0;
  CHECK_THROWS_AS(run_sweep(params(1, 1, 0, 1, 10), bad), std::invalid_argument);
}

TEST_CASE("sweep output does not depend on the worker count") {
  SweepSpec spec;
  spec.axis = "gamma";
  spec.lo = -1;
  spec.hi = 1;
  spec.steps = 37;
  spec.observables = known_observables();
  const ModelParams templ = params(0.9, 0, 0.4, 0.7, 33);
  const SweepTable serial = run_sweep(templ, spec);
  spec.workers = 4;
  const SweepTable threaded = run_sweep(templ, spec);
  CHECK(to_csv(serial) == to_csv(threaded));
}

TEST_CASE("table validation") {
  SweepTable t;
  t.axis_name = "lambda";
  t.columns = {"a"};
  t.rows = {{0.0, {1.0}}, {0.0, {2.0}}};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t.rows = {{0.0, {1.0, 2.0}}};
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
  t.rows = {{0.0, {1.0}}, {1.0, {2.0}}};
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("random draws are reproducible") {
  std::mt19937_64 reference;
  reference.discard(9999);
  CHECK(reference() == 9981545732273789042ULL);

  UniformDraws draws(42);
  std::mt19937_64 engine(42);
  for (int i = 0; i < 1000; ++i) {
    const double expected = -2.0 + 4.0 * (static_cast<double>(engine() >> 11) * 0x1.0p-53);
    const double got = draws.next(-2.0, 2.0);
    CHECK(same_bits(got, expected));
    CHECK(got >= -2.0);
    CHECK(got < 2.0);
  }
}

TEST_CASE("oracle check") {
  CheckOptions options;
  options.sizes = {3, 4, 6};
  options.draws = 5;
  const CheckResult a = run_check(options);
  REQUIRE(a.entries.size() == 15);
  CHECK(a.passed);
  CHECK(a.entries[0].cross.params.N == 3);
  CHECK(a.entries[14].cross.params.N == 6);
  for (const CheckEntry& e : a.entries) {
    REQUIRE(e.jw.has_value());
    CHECK(e.cross.abs_error <= a.entries[a.worst].cross.abs_error);
  }
  options.workers = 3;
  const CheckResult b = run_check(options);
  CHECK(check_to_csv(a, options) == check_to_csv(b, options));
  const auto doc = nlohmann::json::parse(check_to_json(a, options));
  CHECK(doc["metadata"]["seed"] == 42);
  CHECK(doc["reports"].size() == 15);

  CheckOptions bad;
  bad.sizes = {16};
  CHECK_THROWS_AS(run_check(bad), std::invalid_argument);
  bad.sizes = {};
  CHECK_THROWS_AS(run_check(bad), std::invalid_argument);
  bad.sizes = {4};
  bad.draws = 0;
  CHECK_THROWS_AS(run_check(bad), std::invalid_argument);
}

TEST_CASE("scaling outputs ignore D apart from the recorded parameter") {
  const LambdaWindow window{0.5, 1.5};
  const ScalingOptions options{51, kDefaultPeakStep, 1};
  const ScalingFit a = scaling_study(1, 1, 0, {21, 31, 41}, window, options);
  const ScalingFit b = scaling_study(1, 1, 2, {21, 31, 41}, window, options);
  const std::string csv_a = scaling_to_csv(a, params(1, 1, 0, 1, 2), window, options);
  const std::string csv_b = scaling_to_csv(b, params(1, 1, 2, 1, 2), window, options);
  CHECK(csv_a != csv_b);
  auto strip_d = [](const std::string& text) {
    std::string out;
    std::size_t start = 0;
    while (start < text.size()) {
      const std::size_t end = text.find('\n', start);
      const std::string line = text.substr(start, end - start);
      if (line.rfind("# D=", 0) != 0) out += line + "\n";
      start = end == std::string::npos ? text.size() : end + 1;
    }
    return out;
  };
  CHECK(strip_d(csv_a) == strip_d(csv_b));

  auto ja = nlohmann::json::parse(scaling_to_json(a, params(1, 1, 0, 1, 2), window, options));
  auto jb = nlohmann::json::parse(scaling_to_json(b, params(1, 1, 2, 1, 2), window, options));
  CHECK(ja["metadata"]["params"]["D"] == 0.0);
  CHECK(jb["metadata"]["params"]["D"] == 2.0);
  CHECK(ja["fit"] == jb["fit"]);
  CHECK(ja["rows"] == jb["rows"]);
}
