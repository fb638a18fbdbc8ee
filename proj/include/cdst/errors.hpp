#pragma once

#include <stdexcept>
#include <string>

namespace cdst {

/// Bad user input: malformed files, out-of-domain parameters, refused sizes.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON that does not match the schema. The message starts with a JSON pointer.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& pointer, const std::string& what)
      : ValidationError(pointer + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// An edge set that is not a tree, or misses a required vertex.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proved invariant or bound failed at runtime. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cdst
