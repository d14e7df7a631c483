#pragma once

// Semantic atomic vectors.
//
//   Random   (RV)  independent phases, pseudo-orthogonal symbols
//   Numeric  (NV)  v(x) = X^{(o x)}, so v(a) o v(b) = v(a + b)
//   Circular (CV)  p(r) = P^{(o r)} with P's phases on the L-th roots of
//                  unity, so p(r + L) = p(r)
//   Boolean  (BV)  circular vectors of period 2: e(0) = identity, e(1)
//
// Logic on booleans: NOT a = a o e(1), a XOR b = a o b,
// a AND b = a^{(o sim(a, b))}, a OR b = (a XOR b) o (a AND b).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "vsar/hd_vector.hpp"
#include "vsar/rng.hpp"

namespace vsar {

struct ArityError : Error {
  using Error::Error;
};
struct NonFiniteValue : Error {
  using Error::Error;
};

namespace detail {
inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw NonFiniteValue(std::string(what) + ": value must be finite");
}
}  // namespace detail

/// Fractional power encoding over a continuous random base.
class NumericCodec {
 public:
  NumericCodec() = default;
  NumericCodec(std::size_t d, Rng& rng) : base_phases_(d) {
    if (d == 0) throw InvalidDimension("NumericCodec: dimension must be positive");
    for (auto& t : base_phases_) t = std::numbers::pi - 2.0 * std::numbers::pi * rng.uniform();
  }

  [[nodiscard]] std::size_t dim() const noexcept { return base_phases_.size(); }
  [[nodiscard]] HdVector base() const { return encode(1.0); }

  [[nodiscard]] HdVector encode(double x) const {
    detail::require_finite(x, "fpe_encode");
    if (x == 0.0) return HdVector::identity(dim());
    HdVector v(dim());
    for (std::size_t i = 0; i < dim(); ++i) v[i] = std::polar(1.0, wrap_phase(x * base_phases_[i]));
    return v;
  }

 private:
  std::vector<double> base_phases_;
};

/// Periodic FPE. Each base phase is 2*pi*step/denominator with an integer
/// step, so integer exponents are evaluated in exact modular arithmetic.
class CircularCodec {
 public:
  CircularCodec() = default;
  CircularCodec(int period, int denominator, std::vector<int> steps)
      : period_(period), denominator_(denominator), steps_(std::move(steps)) {}

  [[nodiscard]] int period() const noexcept { return period_; }
  [[nodiscard]] std::size_t dim() const noexcept { return steps_.size(); }
  [[nodiscard]] HdVector base() const { return encode(1.0); }

  [[nodiscard]] HdVector encode(double x) const {
    detail::require_finite(x, "fpe_encode");
    HdVector v(dim());
    if (x == std::floor(x) && std::abs(x) < 1e9) {
      const auto r = static_cast<long long>(x) % denominator_;
      for (std::size_t i = 0; i < dim(); ++i) v[i] = rational_phasor(steps_[i] * r, denominator_);
      return v;
    }
    const double scale = 2.0 * std::numbers::pi * x / denominator_;
    for (std::size_t i = 0; i < dim(); ++i) v[i] = std::polar(1.0, wrap_phase(scale * steps_[i]));
    return v;
  }

 private:
  int period_ = 0;
  int denominator_ = 1;
  std::vector<int> steps_;
};

/// Base phases drawn from {2*pi*j/L : j = 1..L}. An odd period is obtained
/// as every other vector of a period-2L codec (the period-2L base squared).
inline CircularCodec make_circular_codec(int period, std::size_t d, Rng& rng) {
  if (period < 1) throw InvalidDimension("make_circular_codec: period must be >= 1");
  if (d == 0) throw InvalidDimension("make_circular_codec: dimension must be positive");
  std::vector<int> steps(d);
  if (period % 2 == 0) {
    for (auto& s : steps) s = rng.uniform_int(1, period) % period;
    return CircularCodec(period, period, std::move(steps));
  }
  for (auto& s : steps) s = (2 * rng.uniform_int(1, 2 * period)) % (2 * period);
  return CircularCodec(period, 2 * period, std::move(steps));
}

class BooleanCodec {
 public:
  BooleanCodec() = default;
  BooleanCodec(std::size_t d, Rng& rng)
      : codec_(make_circular_codec(2, d, rng)), e0_(codec_.encode(0)), e1_(codec_.encode(1)) {}

  [[nodiscard]] const HdVector& e0() const noexcept { return e0_; }
  [[nodiscard]] const HdVector& e1() const noexcept { return e1_; }
  [[nodiscard]] const HdVector& value(bool b) const noexcept { return b ? e1_ : e0_; }
  [[nodiscard]] const CircularCodec& circular() const noexcept { return codec_; }
  [[nodiscard]] std::size_t dim() const noexcept { return e0_.dim(); }

  /// Nearest boolean by similarity; ties resolve to false.
  [[nodiscard]] bool decode(const HdVector& v) const { return similarity(v, e1_) > similarity(v, e0_); }

 private:
  CircularCodec codec_;
  HdVector e0_;
  HdVector e1_;
};

inline HdVector fpe_encode(const NumericCodec& codec, double x) { return codec.encode(x); }
inline HdVector fpe_encode(const CircularCodec& codec, double x) { return codec.encode(x); }

enum class LogicOp { kNot, kXor, kAnd, kOr };

inline HdVector logic_not(const HdVector& a, const BooleanCodec& bv) { return bind(a, bv.e1()); }

inline HdVector logic_xor(const HdVector& a, const HdVector& b) { return bind(a, b); }

// The exponent is the raw similarity; noisy inputs may make it slightly negative.
inline HdVector logic_and(const HdVector& a, const HdVector& b) { return power(a, similarity(a, b)); }

inline HdVector logic_or(const HdVector& a, const HdVector& b) {
  return bind(logic_xor(a, b), logic_and(a, b));
}

inline HdVector logic(LogicOp op, const HdVector& a, const BooleanCodec& bv) {
  if (op != LogicOp::kNot) throw ArityError("logic: binary operation needs two operands");
  return logic_not(a, bv);
}

inline HdVector logic(LogicOp op, const HdVector& a, const HdVector& b, const BooleanCodec&) {
  switch (op) {
    case LogicOp::kNot:
      throw ArityError("logic: NOT takes one operand");
    case LogicOp::kXor:
      return logic_xor(a, b);
    case LogicOp::kAnd:
      return logic_and(a, b);
    case LogicOp::kOr:
      return logic_or(a, b);
  }
  throw ArityError("logic: unknown operation");
}

}  // namespace vsar
