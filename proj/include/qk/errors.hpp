#pragma once

#include <stdexcept>
#include <string>

namespace qk {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An arc (v, v) was supplied; the library works on loop-free digraphs only.
struct SelfLoopError : Error {
  using Error::Error;
};

// A vertex id fell outside the universe of the digraph or set at hand.
struct OutOfRangeError : Error {
  using Error::Error;
};

// Malformed textual input. `line` is 1-based; 0 means the document as a whole.
struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  explicit ParseError(const std::string& what) : Error(what), line(0) {}
};

// A brute-force or enumeration request exceeded its configured resource cap.
struct CapExceededError : Error {
  using Error::Error;
};

struct NotAMemberError : Error {
  using Error::Error;
};

// The requested object cannot exist (e.g. a source-free digraph on one vertex).
struct UnsatisfiableError : Error {
  using Error::Error;
};

struct ShardConflictError : Error {
  using Error::Error;
};

// A solver was handed input violating its stated preconditions.
struct PreconditionError : Error {
  enum class Kind { not_source_free, not_a_kernel };
  Kind kind;

  explicit PreconditionError(Kind k) : Error(describe(k)), kind(k) {}

  static const char* describe(Kind k) {
    switch (k) {
      case Kind::not_source_free: return "precondition failed: not source-free";
      case Kind::not_a_kernel: return "precondition failed: not a kernel";
    }
    return "precondition failed";
  }
};

}  // namespace qk
