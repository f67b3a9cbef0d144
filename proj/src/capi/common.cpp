#include <cstdlib>

#include "capi/guard.hpp"
#include "ring/field.hpp"

namespace tcwb::capi {
namespace {
thread_local std::string last_error;
}
void set_error(std::string message) { last_error = std::move(message); }
const char* last_error_ptr() { return last_error.c_str(); }
}  // namespace tcwb::capi

using namespace tcwb;

extern "C" {

const char* tcwb_version(void) { return TCWB_VERSION_STRING; }

const char* tcwb_last_error(void) { return capi::last_error_ptr(); }

const char* tcwb_status_name(tcwb_status status) {
  switch (status) {
    case TCWB_OK: return "ok";
    case TCWB_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case TCWB_ERR_PARSE: return "parse";
    case TCWB_ERR_IO: return "io";
    case TCWB_ERR_INCONSISTENT: return "inconsistent";
    case TCWB_ERR_GUARD: return "guard";
    case TCWB_ERR_VERIFICATION: return "verification";
    case TCWB_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void tcwb_string_free(char* s) { std::free(s); }

tcwb_status tcwb_field_parse(const char* text, tcwb_field* out) {
  return capi::guarded([&] {
    capi::require(text, "text");
    capi::require(out, "out");
    *out = ring::parse_field(text) == ring::FieldTag::gf2 ? TCWB_FIELD_F2 : TCWB_FIELD_Q;
  });
}

}  // extern "C"
