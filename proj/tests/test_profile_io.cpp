#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "asym/errors.hpp"
#include "asym/profile_io.hpp"

using namespace asym;

TEST_CASE("dump and parse round trip") {
  for (const auto& d : {transmission_absorption_device(), reflection_absorption_device(),
                        half_transmission_reflection_device()}) {
    const auto back = parse_profile(dump_profile(d.profile));
    REQUIRE(back.terms.size() == d.profile.terms.size());
    for (std::size_t i = 0; i < back.terms.size(); ++i) {
      CHECK(back.terms[i].weight == d.profile.terms[i].weight);
      CHECK(back.terms[i].center == d.profile.terms[i].center);
      CHECK(back.terms[i].width == d.profile.terms[i].width);
    }
    CHECK(back.tau_delta == d.profile.tau_delta);
    CHECK(back.tau_gamma == d.profile.tau_gamma);
    CHECK_FALSE(back.d_meters);
  }
}

TEST_CASE("optional length scale") {
  const auto p = parse_profile(
      R"({"terms":[{"re":1,"im":2,"center_over_d":0.1,"w_over_d":0.2}],"tau_delta":3,"tau_gamma":0.5,"d_meters":1e-5})");
  REQUIRE(p.d_meters);
  CHECK(*p.d_meters == 1e-5);
  CHECK(p.terms[0].weight == cplx(1.0, 2.0));
  CHECK(parse_profile(dump_profile(p)).d_meters == p.d_meters);
}

TEST_CASE("empty term list is valid") {
  const auto p = parse_profile(R"({"terms":[],"tau_delta":0,"tau_gamma":0})");
  CHECK(p.terms.empty());
}

TEST_CASE("schema violations") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"tau_delta":0,"tau_gamma":0})",
      R"({"terms":{},"tau_delta":0,"tau_gamma":0})",
      R"({"terms":[],"tau_gamma":0})",
      R"({"terms":[],"tau_delta":"x","tau_gamma":0})",
      R"({"terms":[],"tau_delta":0,"tau_gamma":-1})",
      R"({"terms":[{"re":1,"im":0,"center_over_d":0}],"tau_delta":0,"tau_gamma":0})",
      R"({"terms":[{"re":1,"im":0,"center_over_d":0,"w_over_d":0}],"tau_delta":0,"tau_gamma":0})",
      R"({"terms":[3],"tau_delta":0,"tau_gamma":0})",
      R"({"terms":[],"tau_delta":0,"tau_gamma":0,"d_meters":-2})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_profile(text), ProfileFormatError);
  }
  try {
    parse_profile("[]");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 2);
  }
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "asym_profile_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "p.json";
  save_profile(path, transmission_absorption_device().profile);
  CHECK(load_profile(path).tau_delta == 1413.01);
  CHECK_THROWS_AS(load_profile(dir / "missing.json"), ProfileFormatError);
  std::filesystem::remove_all(dir);
}
