#pragma once
#include <stdexcept>
#include <string>

namespace polewave {

//! Failure category; the CLI maps these onto its exit codes.
enum class ErrorKind { validation, no_bound_state, numerical };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), m_kind(kind) {}
  ErrorKind kind() const noexcept { return m_kind; }

private:
  ErrorKind m_kind;
};

inline Error validation_error(const std::string &what) {
  return Error(ErrorKind::validation, what);
}
inline Error numerical_error(const std::string &what) {
  return Error(ErrorKind::numerical, what);
}

} // namespace polewave
