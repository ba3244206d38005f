#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "squeezemap/dynamics.hpp"
#include "squeezemap/io.hpp"
#include "squeezemap/models.hpp"

using namespace sqz;

TEST_CASE("fixed float formatting") {
  CHECK(io::fmt(1.0) == "1.000000000000e+00");
  CHECK(io::fmt(-0.125) == "-1.250000000000e-01");
}

TEST_CASE("parameter hashing is canonical") {
  nlohmann::json a = {{"b", 2.0}, {"a", 1.0}};
  nlohmann::json b = {{"a", 1.0}, {"b", 2.0}};
  CHECK(io::param_hash(a) == io::param_hash(b));
  nlohmann::json c = {{"a", 1.0}, {"b", 2.5}};
  CHECK(io::param_hash(a) != io::param_hash(c));
}

TEST_CASE("model factory") {
  nlohmann::json cfg = {{"model", "pt-dimer"}, {"params", {{"g", 0.7}, {"gamma", 1.1}}}};
  const auto h = io::model_from_json(cfg);
  CHECK((h.matrix() - build_pt_dimer(0.7, 1.1).matrix()).norm() == 0.0);

  SUBCASE("unknown keys are rejected") {
    cfg["params"]["bogus"] = 1.0;
    CHECK_THROWS_AS(io::model_from_json(cfg), InvalidParameterError);
  }
  SUBCASE("missing keys are rejected") {
    nlohmann::json bad = {{"model", "pt-dimer"}, {"params", {{"g", 0.7}}}};
    CHECK_THROWS_AS(io::model_from_json(bad), InvalidParameterError);
  }
  SUBCASE("unknown model") {
    nlohmann::json bad = {{"model", "frobnicator"}};
    CHECK_THROWS_AS(io::model_from_json(bad), InvalidParameterError);
  }
  SUBCASE("chain from arrays") {
    nlohmann::json chain = {{"model", "pt-chain"},
                            {"params", {{"hoppings", {0.8}}, {"gains", {1.1, -1.1}}}}};
    const auto hc = io::model_from_json(chain);
    CHECK((hc.matrix() - build_pt_dimer(0.8, 1.1).matrix()).norm() < 1e-15);
  }
}

TEST_CASE("propagator series export") {
  PropagatorSeries series;
  series.times = (RVec(2) << 0.0, 1.0).finished();
  series.propagators = {Mat::Identity(2, 2), cplx(0, 1) * Mat::Identity(2, 2)};
  const auto path = std::filesystem::temp_directory_path() / "sqz_prop_test.csv";
  io::write_propagator_csv(path, series);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,reU_11,imU_11,reU_12,imU_12,reU_21,imU_21,reU_22,imU_22");
  std::getline(in, line);
  CHECK(line.rfind("0.000000000000e+00,1.000000000000e+00", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("gaussian state serialization") {
  const auto j = io::gaussian_state_json(GaussianState::vacuum(2));
  CHECK(j.at("mean").size() == 4);
  CHECK(j.at("cov").size() == 4);
  CHECK(j.at("cov")[0][0].get<double>() == 0.5);
  CHECK(j.at("cov")[0][1].get<double>() == 0.0);
}

TEST_CASE("csv writer emits fixed-format rows") {
  const auto path = std::filesystem::temp_directory_path() / "sqz_io_test.csv";
  io::write_csv(path, {"x", "y"}, {{1.0, 2.0}, {0.5, -1.0}});
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y");
  std::getline(in, line);
  CHECK(line == "1.000000000000e+00,2.000000000000e+00");
  std::filesystem::remove(path);
}
