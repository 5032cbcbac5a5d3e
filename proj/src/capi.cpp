// SPDX-License-Identifier: Apache-2.0
#include "tht/tht.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "tht/error.hpp"
#include "tht/fixtures.hpp"
#include "tht/io.hpp"

struct tht_instance {
  tht::Instance inst;
};

namespace {

thread_local std::string last_error;

tht_status status_of(tht::ErrorKind kind) {
  switch (kind) {
    case tht::ErrorKind::Input: return THT_ERR_INPUT;
    case tht::ErrorKind::Structural: return THT_ERR_STRUCTURAL;
    case tht::ErrorKind::Unsupported: return THT_ERR_UNSUPPORTED;
    case tht::ErrorKind::Contract: return THT_ERR_CONTRACT;
    case tht::ErrorKind::Internal: return THT_ERR_INTERNAL;
  }
  return THT_ERR_INTERNAL;
}

template <class F>
tht_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const tht::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const tht::Json::exception& e) {
    last_error = e.what();
    return THT_ERR_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return THT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return THT_ERR_INTERNAL;
  }
}

tht_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return THT_ERR_NULL_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tht_status emit(tht::Instance inst, tht_instance** out) {
  *out = new tht_instance{std::move(inst)};
  return THT_OK;
}

}  // namespace

extern "C" {

const char* tht_version(void) { return "1.0.0"; }

const char* tht_last_error(void) { return last_error.c_str(); }

tht_status tht_instance_from_file(const char* path, tht_instance** out) {
  if (!path || !out) return null_argument("path/out");
  return guarded([&] { return emit(tht::load_instance(path), out); });
}

tht_status tht_instance_from_json(const char* json, tht_instance** out) {
  if (!json || !out) return null_argument("json/out");
  return guarded([&] {
    tht::Json j;
    try {
      j = tht::Json::parse(json);
    } catch (const tht::Json::exception& e) {
      tht::fail(tht::ErrorKind::Input, std::string("not valid JSON: ") + e.what());
    }
    return emit(tht::instance_from_json(j), out);
  });
}

tht_status tht_instance_fixture(const char* name, tht_instance** out) {
  if (!name || !out) return null_argument("name/out");
  return guarded([&] { return emit({std::string("FIX-") + name, "", tht::fixture(name), std::nullopt}, out); });
}

tht_status tht_instance_random(uint64_t seed, int petals, int h_edges, int max_image_len, tht_instance** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    auto psi = tht::random_instance(seed, {petals, h_edges, max_image_len});
    if (!psi) {
      last_error = "no instance found for seed " + std::to_string(seed);
      return THT_ERR_EXHAUSTED;
    }
    return emit({"random-" + std::to_string(seed), "", std::move(*psi), std::nullopt}, out);
  });
}

void tht_instance_free(tht_instance* instance) { delete instance; }

tht_status tht_instance_name(const tht_instance* instance, char** out) {
  if (!instance || !out) return null_argument("instance/out");
  return guarded([&] {
    *out = dup(instance->inst.name);
    return THT_OK;
  });
}

tht_status tht_instance_to_json(const tht_instance* instance, char** out) {
  if (!instance || !out) return null_argument("instance/out");
  return guarded([&] {
    *out = dup(tht::instance_to_json(instance->inst).dump(2));
    return THT_OK;
  });
}

tht_status tht_analyze(const tht_instance* instance, int cap, tht_verdict* verdict, char** report) {
  if (!instance || !verdict || !report) return null_argument("instance/verdict/report");
  return guarded([&] {
    const tht::GraphMap& psi = instance->inst.psi;
    tht::Certificate c = tht::decide_negative_immersions(psi, cap);
    tht::Json j;
    if (!instance->inst.name.empty()) j["instance"] = instance->inst.name;
    j.update(tht::certificate_to_json(c, psi));
    switch (c.kind) {
      case tht::Certificate::Kind::NegativeImmersions: *verdict = THT_VERDICT_NEGATIVE_IMMERSIONS; break;
      case tht::Certificate::Kind::ZeroEuler: *verdict = THT_VERDICT_ZERO_EULER_WITNESS; break;
      case tht::Certificate::Kind::NotInjective: *verdict = THT_VERDICT_NOT_PI1_INJECTIVE; break;
      case tht::Certificate::Kind::Unknown: *verdict = THT_VERDICT_UNKNOWN; break;
    }
    *report = dup(j.dump(2));
    return THT_OK;
  });
}

tht_status tht_fold(const tht_instance* instance, int* pi1_injective, char** report) {
  if (!instance || !pi1_injective || !report) return null_argument("instance/pi1_injective/report");
  return guarded([&] {
    tht::Factorization f = tht::fold_to_immersion(instance->inst.psi);
    *pi1_injective = f.pi1_injective ? 1 : 0;
    *report = dup(tht::factorization_to_json(f).dump(2));
    return THT_OK;
  });
}

tht_status tht_audit(const tht_instance* instance, const tht_audit_options* options, int* ok, char** report) {
  if (!instance || !options || !ok || !report) return null_argument("instance/options/ok/report");
  return guarded([&] {
    tht::AuditOptions o{options->max_faces, options->jobs, options->isolated_edge_cap};
    tht::AuditReport r = tht::audit_instance(instance->inst.psi, o, instance->inst.name);
    *ok = r.ok() ? 1 : 0;
    *report = dup(tht::audit_to_json(r, options->include_timings != 0).dump(2));
    return THT_OK;
  });
}

tht_status tht_export_dot(const tht_instance* instance, tht_dot_target target, char** out) {
  if (!instance || !out) return null_argument("instance/out");
  return guarded([&] {
    const tht::GraphMap& psi = instance->inst.psi;
    if (target == THT_DOT_F)
      *out = dup(tht::instance_dot(psi));
    else if (target == THT_DOT_X)
      *out = dup(tht::complex_dot(tht::build_mapping_torus(psi).complex));
    else
      tht::fail(tht::ErrorKind::Input, "unknown DOT target");
    return THT_OK;
  });
}

void tht_string_free(char* s) { std::free(s); }

}  // extern "C"
