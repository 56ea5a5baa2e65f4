#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flowhom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define FLOWHOM_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

FLOWHOM_DEFINE_ERROR(CycleError);
FLOWHOM_DEFINE_ERROR(UnknownLabel);
FLOWHOM_DEFINE_ERROR(NotComparable);
FLOWHOM_DEFINE_ERROR(DegreeOutOfRange);
FLOWHOM_DEFINE_ERROR(CyclicCategory);
FLOWHOM_DEFINE_ERROR(InvalidComplex);
FLOWHOM_DEFINE_ERROR(LoopError);
FLOWHOM_DEFINE_ERROR(NonParallelRelation);
FLOWHOM_DEFINE_ERROR(InvalidWord);
FLOWHOM_DEFINE_ERROR(SizeLimit);
FLOWHOM_DEFINE_ERROR(UnknownState);
FLOWHOM_DEFINE_ERROR(NotAnArrow);
FLOWHOM_DEFINE_ERROR(UnknownSimplex);
FLOWHOM_DEFINE_ERROR(EmbeddingInvalid);
FLOWHOM_DEFINE_ERROR(DuplicateName);
FLOWHOM_DEFINE_ERROR(UnresolvedReference);

#undef FLOWHOM_DEFINE_ERROR

/// Syntax or semantic error in a document, tagged with a 1-based line number.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace flowhom
