#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace oocrn {

enum class errc {
  not_applicable,  // reaction fired without enough reactants
  domain,          // point outside a grid / operation outside its domain
  integrality,     // exact-rational result is not a natural number
  cover,           // no spec piece contains the input
  range,           // synthesized state component out of representable range
  not_closed,      // reachability graph was cut off by the config bound
  parse,           // malformed .crn or spec file
  io,              // file system failure
};

class error : public std::runtime_error {
public:
  error(errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

// A non-throwing finding from validate_crn / validate_spec. The reaction
// index and species id are filled in when the finding points at one.
struct diagnostic {
  std::string code;
  std::string message;
  std::optional<std::size_t> reaction;
  std::optional<std::string> species;
};

}  // namespace oocrn
