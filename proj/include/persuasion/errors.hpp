#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace persuasion {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInstance : public Error {
 public:
  EmptyInstance() : Error("instance has no candidates") {}
};

class NegativeValue : public Error {
 public:
  explicit NegativeValue(std::size_t index)
      : Error("candidate " + std::to_string(index + 1) + " has a negative value"), index(index) {}
  std::size_t index;
};

class DegenerateInstance : public Error {
 public:
  using Error::Error;
};

class AllRemoved : public Error {
 public:
  AllRemoved() : Error("every candidate was removed") {}
};

class TooLarge : public Error {
 public:
  TooLarge(std::size_t n, std::size_t cap, const std::string& what)
      : Error(what + ": n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap)),
        n(n),
        cap(cap) {}
  std::size_t n, cap;
};

class TooSmall : public Error {
 public:
  using Error::Error;
};

class ZeroBenchmark : public Error {
 public:
  ZeroBenchmark() : Error("benchmark value is zero, ratio undefined") {}
};

class KnowledgeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace persuasion
