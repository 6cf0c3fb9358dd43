#include "tinv/tinv.h"

#include <new>
#include <string>

#include "tinv/errors.hpp"
#include "tinv/gl2.hpp"
#include "tinv/grgln.hpp"
#include "tinv/report.hpp"

struct tinv_report {
  std::string json;
  bool passed = false;
};

struct tinv_algebra {
  tinv::AlgebraSpec spec;
  std::string json;
  std::string hash;
};

namespace {

thread_local std::string last_error;

template <class F>
tinv_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return TINV_OK;
  } catch (const tinv::invalid_input& e) {
    last_error = e.what();
    return TINV_INVALID_INPUT;
  } catch (const tinv::resource_limit& e) {
    last_error = e.what();
    return TINV_RESOURCE_LIMIT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TINV_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TINV_INTERNAL_ERROR;
  }
}

tinv_status run(const std::string& op, const tinv::report::json& params, tinv_report** out) {
  if (!out) {
    last_error = "null output pointer";
    return TINV_INVALID_INPUT;
  }
  *out = nullptr;
  return guarded([&] {
    const auto rep = tinv::report::run_operation(op, params);
    *out = new tinv_report{tinv::report::canonical(rep), rep.at("pass").get<bool>()};
  });
}

tinv_status wrap_algebra(tinv_algebra** out, const auto& make) {
  if (!out) {
    last_error = "null output pointer";
    return TINV_INVALID_INPUT;
  }
  *out = nullptr;
  return guarded([&] {
    tinv::AlgebraSpec spec = make();
    std::string json = tinv::report::canonical(tinv::report::algebra_to_json(spec));
    std::string hash = tinv::report::spec_hash(spec);
    *out = new tinv_algebra{std::move(spec), std::move(json), std::move(hash)};
  });
}

}  // namespace

extern "C" {

const char* tinv_version(void) { return tinv::report::kToolVersion; }

const char* tinv_last_error(void) { return last_error.c_str(); }

size_t tinv_operation_count(void) { return tinv::report::operations().size(); }

const char* tinv_operation_name(size_t index) {
  const auto& ops = tinv::report::operations();
  return index < ops.size() ? ops[index].c_str() : nullptr;
}

tinv_status tinv_run(const char* operation, const char* params_json, tinv_report** out) {
  if (!operation) {
    last_error = "null operation";
    return TINV_INVALID_INPUT;
  }
  tinv::report::json params = tinv::report::json::object();
  if (params_json) {
    try {
      params = tinv::report::json::parse(params_json);
    } catch (const tinv::report::json::exception& e) {
      last_error = std::string("params are not valid JSON: ") + e.what();
      if (out) *out = nullptr;
      return TINV_INVALID_INPUT;
    }
  }
  return run(operation, params, out);
}

const char* tinv_default_grid(void) {
  static const std::string grid = tinv::report::canonical(tinv::report::default_grid());
  return grid.c_str();
}

const char* tinv_report_json(const tinv_report* report) { return report ? report->json.c_str() : ""; }

int tinv_report_passed(const tinv_report* report) { return report && report->passed ? 1 : 0; }

void tinv_report_free(tinv_report* report) { delete report; }

tinv_status tinv_gl2_landmarks(uint32_t p, uint32_t r, tinv_report** out) {
  return run("gl2.landmarks", {{"p", p}, {"r", r}}, out);
}

tinv_status tinv_sl2_landmarks(uint32_t p, uint32_t r, tinv_report** out) {
  return run("sl2.landmarks", {{"p", p}, {"r", r}}, out);
}

tinv_status tinv_quillen_verify(uint32_t p, uint32_t r, tinv_report** out) {
  return run("check.quillen", {{"p", p}, {"r", r}}, out);
}

tinv_status tinv_exponent_check(uint32_t n, uint32_t p, uint32_t r, uint64_t samples, uint64_t seed,
                                tinv_report** out) {
  return run("check.exponent", {{"n", n}, {"p", p}, {"r", r}, {"samples", samples}, {"seed", seed}}, out);
}

tinv_status tinv_essential_kernel(uint32_t n, uint32_t p, tinv_report** out) {
  return run("grun.essential", {{"n", n}, {"p", p}}, out);
}

tinv_status tinv_theorem_lowest_gl(uint32_t n, uint32_t p, uint32_t r, tinv_report** out) {
  return run("theorem.lowest-gl", {{"n", n}, {"p", p}, {"r", r}}, out);
}

tinv_status tinv_theorem_borel2(uint32_t n, uint32_t r, tinv_report** out) {
  return run("theorem.borel2", {{"n", n}, {"r", r}}, out);
}

tinv_status tinv_algebra_from_json(const char* spec_json, tinv_algebra** out) {
  return wrap_algebra(out, [&] {
    if (!spec_json) throw tinv::invalid_input("null spec");
    tinv::report::json j;
    try {
      j = tinv::report::json::parse(spec_json);
    } catch (const tinv::report::json::exception& e) {
      throw tinv::invalid_input(std::string("spec is not valid JSON: ") + e.what());
    }
    return tinv::report::algebra_from_json(j);
  });
}

tinv_status tinv_algebra_gl2(uint32_t p, uint32_t r, tinv_algebra** out) {
  return wrap_algebra(out, [&] { return tinv::gl2_algebra(p, r); });
}

tinv_status tinv_algebra_sl2(uint32_t p, uint32_t r, tinv_algebra** out) {
  return wrap_algebra(out, [&] { return tinv::sl2_algebra(p, r); });
}

tinv_status tinv_algebra_gr_un(uint32_t n, uint32_t p, uint32_t r, tinv_algebra** out) {
  return wrap_algebra(out, [&] { return tinv::build_gr_un(n, p, r).algebra; });
}

size_t tinv_algebra_generator_count(const tinv_algebra* alg) { return alg ? alg->spec.size() : 0; }

const char* tinv_algebra_json(const tinv_algebra* alg) { return alg ? alg->json.c_str() : ""; }

const char* tinv_algebra_hash(const tinv_algebra* alg) { return alg ? alg->hash.c_str() : ""; }

tinv_status tinv_algebra_series(const tinv_algebra* alg, unsigned max_degree, tinv_filter filter, uint64_t* dims) {
  return guarded([&] {
    if (!alg || !dims) throw tinv::invalid_input("null argument");
    tinv::SeriesFilter f;
    switch (filter) {
      case TINV_FILTER_ALL: f = tinv::SeriesFilter::all; break;
      case TINV_FILTER_INVARIANT: f = tinv::SeriesFilter::invariant; break;
      case TINV_FILTER_NILPOTENT: f = tinv::SeriesFilter::invariant_nilpotent; break;
      default: throw tinv::invalid_input("unknown filter");
    }
    const auto s = tinv::dimension_series(alg->spec, max_degree, f);
    for (unsigned d = 0; d <= max_degree; ++d) dims[d] = s.dims[d];
  });
}

void tinv_algebra_free(tinv_algebra* alg) { delete alg; }

}  // extern "C"
