// SPDX-License-Identifier: Apache-2.0
#include "branchdual/branchdual.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "branchdual/expression.hpp"
#include "branchdual/inverse_system.hpp"
#include "branchdual/job.hpp"
#include "branchdual/semigroup.hpp"
#include "branchdual/subalgebra.hpp"

struct bd_algebra {
  branchdual::AlgebraInput input;
  branchdual::InvariantsReport report;
};

struct bd_semigroup {
  branchdual::NumericalSemigroup d;
};

namespace {

thread_local std::string last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
bd_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return BD_OK;
  } catch (const branchdual::Error& e) {
    last_error = e.what();
    return static_cast<bd_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BD_FAILURE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BD_FAILURE;
  }
}

bd_status null_argument(const char* name) {
  last_error = std::string("null argument: ") + name;
  return BD_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* bd_version(void) { return "1.0.0"; }

const char* bd_last_error(void) { return last_error.c_str(); }

void bd_string_free(char* s) { std::free(s); }

bd_status bd_run_job(const char* job_json, char** report_json, int* exit_code) {
  if (!job_json) return null_argument("job_json");
  if (!report_json) return null_argument("report_json");
  *report_json = nullptr;
  return guarded([&] {
    const auto outcome = branchdual::run_job_text(job_json);
    *report_json = copy_string(outcome.report.dump());
    if (exit_code) *exit_code = outcome.exit_code;
  });
}

bd_status bd_algebra_create(const char* generators, int trunc_ceiling, bd_algebra** out) {
  if (!generators) return null_argument("generators");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    branchdual::ClosureOptions opts;
    if (trunc_ceiling > 0) opts.trunc_ceiling = trunc_ceiling;
    auto a = std::make_unique<bd_algebra>();
    a->input.gens = branchdual::parse_series_list(generators, ',', opts.trunc_ceiling);
    a->report = branchdual::invariants_report(a->input, opts);
    *out = a.release();
  });
}

void bd_algebra_destroy(bd_algebra* a) { delete a; }

bd_status bd_algebra_invariants(const bd_algebra* a, bd_invariants* out) {
  if (!a) return null_argument("algebra");
  if (!out) return null_argument("out");
  const auto& r = a->report;
  *out = bd_invariants{r.delta, r.conductor, r.e0, r.e1, r.mu, r.embedding_dimension, r.gorenstein_by_c ? 1 : 0};
  last_error.clear();
  return BD_OK;
}

bd_status bd_algebra_gaps(const bd_algebra* a, int* gaps, size_t capacity, size_t* count) {
  if (!a) return null_argument("algebra");
  if (!gaps && capacity > 0) return null_argument("gaps");
  const auto& g = a->report.staircase.gaps;
  for (size_t i = 0; i < g.size() && i < capacity; ++i) gaps[i] = g[i];
  if (count) *count = g.size();
  last_error.clear();
  return BD_OK;
}

bd_status bd_algebra_inverse_system(const bd_algebra* a, char** basis) {
  if (!a) return null_argument("algebra");
  if (!basis) return null_argument("basis");
  *basis = nullptr;
  return guarded([&] {
    const auto v = branchdual::inverse_system(a->input, a->report.staircase);
    std::string text;
    for (const auto& g : v.basis) {
      if (!text.empty()) text += "; ";
      text += branchdual::to_expression(g);
    }
    *basis = copy_string(text);
  });
}

bd_status bd_algebra_contains(const bd_algebra* a, const char* series, int* result) {
  if (!a) return null_argument("algebra");
  if (!series) return null_argument("series");
  if (!result) return null_argument("result");
  return guarded([&] {
    const auto f = branchdual::parse_series(series);
    *result = branchdual::membership(f, a->report.staircase) ? 1 : 0;
  });
}

bd_status bd_semigroup_create(const int* generators, size_t count, bd_semigroup** out) {
  if (!generators && count > 0) return null_argument("generators");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto d = std::make_unique<bd_semigroup>();
    d->d = branchdual::from_generators(std::vector<int>(generators, generators + count));
    *out = d.release();
  });
}

void bd_semigroup_destroy(bd_semigroup* d) { delete d; }

int bd_semigroup_conductor(const bd_semigroup* d) { return d ? d->d.conductor : -1; }

int bd_semigroup_genus(const bd_semigroup* d) { return d ? d->d.genus() : -1; }

int bd_semigroup_contains(const bd_semigroup* d, int value) { return d && d->d.contains(value) ? 1 : 0; }

int bd_semigroup_is_symmetric(const bd_semigroup* d) { return d && branchdual::is_symmetric(d->d) ? 1 : 0; }

}  // extern "C"
