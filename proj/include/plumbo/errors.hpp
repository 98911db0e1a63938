#ifndef PLUMBO_ERRORS_HPP
#define PLUMBO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plumbo {

/// Bad user input: malformed documents, violated preconditions.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed: two computations that must agree did not,
/// or an invariant that can only fail through a definition bug fired.
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void check_consistent(bool ok, const std::string& what) {
  if (!ok) throw ConsistencyError(what);
}

}  // namespace plumbo

#endif  // PLUMBO_ERRORS_HPP
