#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "tinv/tinv.h"

using json = nlohmann::json;

TEST_CASE("version and operations") {
  CHECK(std::string(tinv_version()) == "1.0.0");
  CHECK(tinv_operation_count() > 10);
  CHECK(tinv_operation_name(tinv_operation_count()) == nullptr);
  CHECK(json::parse(tinv_default_grid()).is_array());
}

TEST_CASE("run and status codes") {
  tinv_report* rep = nullptr;
  REQUIRE(tinv_run("gl2.landmarks", R"({"p":3,"r":2})", &rep) == TINV_OK);
  CHECK(tinv_report_passed(rep) == 1);
  CHECK(json::parse(tinv_report_json(rep)).at("operation") == "gl2.landmarks");
  tinv_report_free(rep);

  rep = nullptr;
  CHECK(tinv_run("gl2.landmarks", R"({"p":4,"r":1})", &rep) == TINV_INVALID_INPUT);
  CHECK(rep == nullptr);
  CHECK(std::strlen(tinv_last_error()) > 0);
  CHECK(tinv_run("gl2.landmarks", "{not json", &rep) == TINV_INVALID_INPUT);
  CHECK(tinv_run("nope", "{}", &rep) == TINV_INVALID_INPUT);
  CHECK(tinv_run("gl2.landmarks", "{}", nullptr) == TINV_INVALID_INPUT);
  CHECK(tinv_exponent_check(30, 3, 1, 0, 0, &rep) == TINV_RESOURCE_LIMIT);

  REQUIRE(tinv_essential_kernel(3, 5, &rep) == TINV_OK);
  CHECK(tinv_report_passed(rep) == 0);
  tinv_report_free(rep);
  REQUIRE(tinv_theorem_borel2(3, 2, &rep) == TINV_OK);
  CHECK(json::parse(tinv_report_json(rep)).at("results").at("dimension") == 2);
  tinv_report_free(rep);
  tinv_report_free(nullptr);
}

TEST_CASE("algebra handles") {
  tinv_algebra* alg = nullptr;
  REQUIRE(tinv_algebra_gl2(3, 1, &alg) == TINV_OK);
  CHECK(tinv_algebra_generator_count(alg) == 2);
  std::vector<uint64_t> dims(8);
  REQUIRE(tinv_algebra_series(alg, 7, TINV_FILTER_ALL, dims.data()) == TINV_OK);
  CHECK(dims == std::vector<uint64_t>{1, 1, 1, 1, 1, 1, 1, 1});
  REQUIRE(tinv_algebra_series(alg, 7, TINV_FILTER_INVARIANT, dims.data()) == TINV_OK);
  CHECK(dims == std::vector<uint64_t>{1, 0, 0, 1, 1, 0, 0, 1});
  const std::string spec = tinv_algebra_json(alg);
  const std::string hash = tinv_algebra_hash(alg);
  tinv_algebra* again = nullptr;
  REQUIRE(tinv_algebra_from_json(spec.c_str(), &again) == TINV_OK);
  CHECK(std::string(tinv_algebra_hash(again)) == hash);
  tinv_algebra_free(again);
  tinv_algebra_free(alg);

  CHECK(tinv_algebra_from_json("[]", &alg) == TINV_INVALID_INPUT);
  CHECK(tinv_algebra_gr_un(1, 3, 1, &alg) == TINV_INVALID_INPUT);
  REQUIRE(tinv_algebra_gr_un(3, 2, 2, &alg) == TINV_OK);
  CHECK(tinv_algebra_generator_count(alg) == 6);
  CHECK(tinv_algebra_series(alg, 2, TINV_FILTER_ALL, nullptr) == TINV_INVALID_INPUT);
  tinv_algebra_free(alg);
}
