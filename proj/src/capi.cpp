#include "evstab/evstab.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <string>

#include "evstab/commands.hpp"
#include "evstab/errors.hpp"

namespace {

char* dup_or_null(const std::string& s) {
  if (s.empty()) return nullptr;
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int fail_out(evstab_result* out, int code, const char* msg) {
  out->exit_code = code;
  out->error = dup_or_null(msg);
  return code;
}

} // namespace

extern "C" {

int evstab_command(const char* command, const char* const* keys,
                   const char* const* values, size_t n_params,
                   evstab_result* out) {
  if (!out) return evstab::EV_BAD_INPUT;
  out->exit_code = evstab::EV_INTERNAL;
  out->report_json = nullptr;
  out->table = nullptr;
  out->error = nullptr;
  try {
    if (!command || (n_params > 0 && (!keys || !values)))
      return fail_out(out, evstab::EV_BAD_INPUT, "null argument");
    std::map<std::string, std::string> params;
    for (size_t i = 0; i < n_params; ++i) {
      if (!keys[i] || !values[i])
        return fail_out(out, evstab::EV_BAD_INPUT, "null parameter");
      params[keys[i]] = values[i];
    }
    evstab::CommandResult r = evstab::run_command(command, params);
    out->exit_code = r.exit_code;
    out->report_json = dup_or_null(r.report_json);
    out->table = dup_or_null(r.table);
    out->error = dup_or_null(r.error);
    return out->exit_code;
  } catch (const std::exception& e) {
    return fail_out(out, evstab::EV_INTERNAL, e.what());
  } catch (...) {
    return fail_out(out, evstab::EV_INTERNAL, "unknown error");
  }
}

void evstab_result_free(evstab_result* r) {
  if (!r) return;
  std::free(r->report_json);
  std::free(r->table);
  std::free(r->error);
  r->report_json = r->table = r->error = nullptr;
}

const char* evstab_version(void) { return "0.1.0"; }

} // extern "C"
