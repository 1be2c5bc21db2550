#pragma once

#include <stdexcept>
#include <string>

namespace reebscape {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root isolation could not resolve sign structure at the finest grid.
class TooOscillatory : public Error {
 public:
  explicit TooOscillatory(const std::string& what, double where)
      : Error(what), where_(where) {}
  double where() const noexcept { return where_; }

 private:
  double where_;
};

/// Critical events appear to accumulate at a point of a boundary curve.
class AccumulationSuspected : public Error {
 public:
  AccumulationSuspected(const std::string& what, double focus_x1,
                        double focus_x2, int levels)
      : Error(what), x1_(focus_x1), x2_(focus_x2), levels_(levels) {}
  double focus_x1() const noexcept { return x1_; }
  double focus_x2() const noexcept { return x2_; }
  int levels() const noexcept { return levels_; }

 private:
  double x1_, x2_;
  int levels_;
};

class RefinementExceeded : public Error {
 public:
  using Error::Error;
};

class LocateFailed : public Error {
 public:
  using Error::Error;
};

class EmptyRegion : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace reebscape
