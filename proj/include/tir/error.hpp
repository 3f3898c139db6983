#pragma once

#include <stdexcept>
#include <string>

namespace tir {

// Error taxonomy shared across the library. The CLI maps `config` to exit
// code 2 and everything else to exit code 1.
enum class ErrorKind { shape, domain, format, config, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_shape(const std::string& msg) { throw Error(ErrorKind::shape, msg); }
[[noreturn]] inline void throw_domain(const std::string& msg) { throw Error(ErrorKind::domain, msg); }
[[noreturn]] inline void throw_format(const std::string& msg) { throw Error(ErrorKind::format, msg); }
[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorKind::config, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorKind::io, msg); }

}  // namespace tir
