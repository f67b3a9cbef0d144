#pragma once

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "common/error.hpp"
#include "tcwb/tcwb.h"

namespace tcwb::capi {

void set_error(std::string message);
const char* last_error_ptr();

inline tcwb_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return TCWB_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return TCWB_ERR_PARSE;
    case ErrorCode::io: return TCWB_ERR_IO;
    case ErrorCode::inconsistent: return TCWB_ERR_INCONSISTENT;
    case ErrorCode::guard: return TCWB_ERR_GUARD;
    case ErrorCode::verification: return TCWB_ERR_VERIFICATION;
    case ErrorCode::internal: break;
  }
  return TCWB_ERR_INTERNAL;
}

// Runs body, translating exceptions into a status and the thread-local message.
template <class F>
tcwb_status guarded(F&& body) noexcept {
  try {
    body();
    return TCWB_OK;
  } catch (const Error& e) {
    set_error(e.what());
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return TCWB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return TCWB_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return TCWB_ERR_INTERNAL;
  }
}

inline void require(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

inline char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace tcwb::capi
