#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "randfusion/error.hpp"
#include "randfusion/io.hpp"
#include "support.hpp"

using namespace randfusion;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "randfusion_test_io";
  fs::create_directories(dir);
  return dir / name;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(io::format_double(std::nan("")) == "nan");
  RngStream r = derive_stream(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = r.next_gaussian() * std::pow(10.0, static_cast<int>(r.next_u64() % 40) - 20);
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("frame JSON round-trip is lossless") {
  RngStream r = derive_stream(3, 0);
  std::vector<Subspace> subs;
  for (int i = 0; i < 4; ++i) subs.push_back(random_subspace(r, 7, 1 + i % 3));
  const FusionFrame ff(std::move(subs), {1.0, 0.5, 2.0, 1.25});
  const fs::path p = scratch("roundtrip.json");
  io::save_frame(ff, p);
  const FusionFrame back = io::load_frame(p);
  REQUIRE(back.size() == 4);
  CHECK(back.weights() == ff.weights());
  for (std::size_t k = 0; k < 4; ++k) CHECK(back[k].basis() == ff[k].basis());
}

TEST_CASE("frame JSON validation") {
  using io::json;
  const json good = io::frame_to_json(orthonormal_partition(4, 2));
  CHECK(io::frame_from_json(good).size() == 2);
  CHECK_FALSE(good.at("weights").is_null());

  json no_weights = good;
  no_weights.erase("weights");
  CHECK(io::frame_from_json(no_weights).weights() == std::vector<double>{1.0, 1.0});

  json bad = good;
  bad["subspaces"][1][0][2] = 0.5;
  try {
    io::frame_from_json(bad);
    FAIL("accepted a non-orthonormal basis");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOrthonormal);
    CHECK(std::string(e.what()).find("subspace 1") != std::string::npos);
  }

  json short_vec = good;
  short_vec["subspaces"][0][0] = json::array({1.0, 0.0});
  CHECK(kind_of([&] { io::frame_from_json(short_vec); }) == ErrorKind::ParseError);

  json no_dim = good;
  no_dim.erase("dim");
  CHECK(kind_of([&] { io::frame_from_json(no_dim); }) == ErrorKind::ParseError);

  json weights = good;
  weights["weights"] = json::array({1.0});
  CHECK(kind_of([&] { io::frame_from_json(weights); }) == ErrorKind::ParseError);

  const fs::path p = scratch("garbage.json");
  io::write_text_file(p, "{not json");
  CHECK(kind_of([&] { io::load_frame(p); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { io::load_frame(scratch("missing.json")); }) == ErrorKind::IoError);
}

TEST_CASE("config JSON") {
  using io::json;
  const json doc = {{"dim", 16}, {"subspace_dim", 2}, {"count", 8}, {"delta", 0.5},
                    {"trials", 10}, {"seed", 42}};
  const ExperimentConfig c = io::config_from_json(doc);
  CHECK(c.n == 16);
  CHECK(c.s == 2);
  CHECK(c.k == 8);
  CHECK(c.delta == 0.5);
  CHECK(c.trials == 10);
  CHECK(c.master_seed == 42);
  CHECK(c.outputs == std::vector<std::string>{"csv", "json"});
  CHECK(io::config_from_json(io::config_to_json(c)).master_seed == 42);

  json extra = doc;
  extra["color"] = "red";
  CHECK(kind_of([&] { io::config_from_json(extra); }) == ErrorKind::ConfigInvalid);
  json zero = doc;
  zero["trials"] = 0;
  CHECK(kind_of([&] { io::config_from_json(zero); }) == ErrorKind::ConfigInvalid);
  json neg = doc;
  neg["dim"] = -3;
  CHECK(kind_of([&] { io::config_from_json(neg); }) == ErrorKind::ConfigInvalid);
  json wrong = doc;
  wrong["outputs"] = "csv";
  CHECK(kind_of([&] { io::config_from_json(wrong); }) == ErrorKind::ConfigInvalid);
}

TEST_CASE("trial CSV layout") {
  std::vector<TrialResult> t(3);
  for (std::size_t i = 0; i < 3; ++i) t[i].trial_index = i;
  t[0].epsilon_tight = 0.5;
  t[0].window_pass = true;
  t[1].error = "error[RankDeficient]: x";
  t[2].welch_violated = true;
  std::ostringstream out;
  io::write_trial_csv(out, t);
  CHECK(out.str() ==
        "trial,eps_tight,frame_lower,frame_upper,hs_min,hs_max,hs_mean,welch_violated,window_pass\n"
        "0,0.5,0,0,0,0,0,0,1\n"
        "2,0,0,0,0,0,0,1,0\n");
}

TEST_CASE("bound set JSON") {
  const io::json j = io::bound_set_to_json(compute_bound_set(64, 4, 64, 0.1));
  CHECK(j["params"]["big_m"] == 256);
  CHECK(j["tightness"]["window"][0].get<double>() == doctest::Approx(2.2578957202151097));
  CHECK(j["tightness"]["window"][1].get<double>() == doctest::Approx(7.086244));
  CHECK(j["riesz_partition"]["vacuous"] == true);
  CHECK(j["asymptotic_regime"]["cond1"].contains("lhs"));
  CHECK(j["pair"]["r1"]["value"].is_number());

  const io::json v = io::bound_set_to_json(compute_bound_set(1000000, 1000000, 1, 0.5));
  CHECK(v["gaussian_frame"]["value"].is_null());
  CHECK(v["gaussian_frame"]["vacuous"] == true);
}

TEST_CASE("angle CSV") {
  const AngleReport r = angle_report(FusionFrame(
      {coordinate_subspace(3, 0, 1), coordinate_subspace(3, 0, 1), coordinate_subspace(3, 2, 1)}));
  std::ostringstream out;
  io::write_angle_csv(out, r);
  CHECK(out.str() == "j,l,tr,normalized\n0,1,1,3\n0,2,0,0\n1,2,0,0\n");
}
