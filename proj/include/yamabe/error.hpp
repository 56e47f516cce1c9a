#pragma once

#include <stdexcept>
#include <string>

namespace yamabe {

// Error taxonomy shared by the library and mapped to CLI exit codes.
enum class errc {
  dimension_mismatch,
  domain,            // bad argument value (beta <= 1, k < 1, ...)
  singularity,       // evaluation at/near a pole or coincident points
  assumption,        // structural assumption (A1 dichotomy) violated
  numerical,         // quadrature produced NaN/inf or failed a gate
  io,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

} // namespace yamabe
