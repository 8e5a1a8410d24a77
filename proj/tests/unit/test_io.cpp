#include "abnet/error.hpp"
#include "abnet/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

using namespace abnet;

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-1.5e-300) == "-1.5000000000000001e-300");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("params JSON round trip") {
  for (const auto& p : {ModelParams::krapivsky_redner(), ModelParams::standard(3, 2.0),
                        ModelParams::create(0.7, 2, 9.5, 3.25, {{2, 1.0}, {5, 0.5}}, ValidationMode::lenient)}) {
    const Json doc = to_json(p);
    const auto back = params_from_json(Json::parse(doc.dump()));
    CHECK(back.lambda() == p.lambda());
    CHECK(back.m() == p.m());
    CHECK(back.d0() == p.d0());
    CHECK(back.n0() == p.n0());
    CHECK(back.initial_counts() == p.initial_counts());
    CHECK(back.mode() == p.mode());
    CHECK(back.preset() == p.preset());
    CHECK(to_json(back) == doc);
  }
}

TEST_CASE("preset shorthand") {
  const auto kr = params_from_json(Json::parse(R"({"preset":"krapivsky_redner"})"));
  CHECK(kr.initial_count(1) == 2.0);
  const auto st = params_from_json(Json::parse(R"({"preset":"standard","m":3,"lambda":2})"));
  CHECK(st.m() == 3);
  CHECK(st.lambda() == 2.0);
  CHECK(st.mode() == ValidationMode::lenient);
}

TEST_CASE("params JSON errors name the field") {
  auto message = [](const std::string& text) {
    try {
      params_from_json(Json::parse(text), "/params");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"lambda":1,"m":1,"d0":2,"n0":2})").find("/params/initial_counts") != std::string::npos);
  CHECK(message(R"({"lambda":-1,"m":1,"d0":2,"n0":2,"initial_counts":{}})").find("/params/lambda") !=
        std::string::npos);
  CHECK(message(R"({"lambda":1,"m":1.5,"d0":2,"n0":2,"initial_counts":{}})").find("/params/m") != std::string::npos);
  CHECK(message(R"({"lambda":1,"m":1,"d0":2,"n0":2,"initial_counts":{"x":1}})").find("initial_counts/x") !=
        std::string::npos);
  CHECK(message(R"({"preset":"nope"})").find("/params/preset") != std::string::npos);
  CHECK(message(R"({"lambda":1,"m":1,"d0":3,"n0":2,"initial_counts":{"1":2}})").find("strict") !=
        std::string::npos);
  CHECK(message(R"([1,2])").find("/params") != std::string::npos);
}

TEST_CASE("exact constants export both forms") {
  const Json j = to_json(ExactRational(-3, 2));
  CHECK(j["numerator"] == "-3");
  CHECK(j["denominator"] == "2");
  CHECK(j["decimal"].get<std::string>().rfind("-1.5", 0) == 0);
}

TEST_CASE("trajectory CSV") {
  DegreeTrajectory t;
  t.source = TrajectorySource::ode;
  t.k_min = 1;
  t.k_max = 2;
  t.times = {3.0};
  t.counts = {{10.0 / 3.0, 0.5}};
  t.leaked = {0.0};
  std::ostringstream os;
  write_trajectory_csv(os, t, ModelParams::krapivsky_redner());
  CHECK(os.str() ==
        "source,k,t,N_k,p_k,leaked\n"
        "ode,1,3,3.3333333333333335,0.66666666666666674,0\n"
        "ode,2,3,0.5,0.10000000000000001,0\n");
}

TEST_CASE("identity CSV and JSON") {
  const auto probe = identity_probe(1, 1.0, 3.0, 3);
  std::ostringstream os;
  write_identity_csv(os, probe);
  std::string line;
  std::istringstream in(os.str());
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 5);
  const Json j = to_json(probe);
  CHECK(j["lhs"] == 0.0);
  CHECK(j["m"] == 1);
}

TEST_CASE("comparison report text and JSON status") {
  ComparisonReport r;
  r.source_a = "closed_form";
  r.source_b = "hypergeometric";
  r.report_only = true;
  r.pass = false;
  r.entries.push_back({1, 0.0, 1.0, 4.0 / 3.0, 1.0 / 3.0, 0.25, std::nullopt, true});
  CHECK(to_json(r)["status"] == "reported");
  const auto text = render_text(r);
  CHECK(text.find("REPORTED") != std::string::npos);
  std::ostringstream os;
  write_comparison_csv(os, r);
  CHECK(os.str().rfind("k,t,closed_form,hypergeometric,abs_diff,rel_diff\n", 0) == 0);
}

TEST_CASE("version string") { CHECK(std::string(version()).size() > 0); }
