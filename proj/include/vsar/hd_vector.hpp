#pragma once

// Complex hypervectors and the FHRR/HRR operation set.
//
// Every vector is stored in the spectral (FHRR) domain as d complex numbers.
// Atomic vectors are phase-only (|x_i| = 1); superpositions keep whatever
// moduli the sum produces and are never renormalized behind the caller's
// back. The HRR view of a vector is its inverse DFT (see to_real_domain).

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <fftw3.h>

#include "vsar/rng.hpp"

namespace vsar {

using Complex = std::complex<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDimension : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct SingularVector : Error {
  using Error::Error;
};
struct UndefinedSimilarity : Error {
  using Error::Error;
};
struct EmptyInput : Error {
  using Error::Error;
};

class HdVector {
 public:
  HdVector() = default;
  explicit HdVector(std::size_t d, Complex fill = Complex{0.0, 0.0}) : data_(d, fill) {}
  explicit HdVector(std::vector<Complex> data) : data_(std::move(data)) {}

  static HdVector zeros(std::size_t d) { return HdVector(d); }
  /// The binding identity: all phases zero.
  static HdVector identity(std::size_t d) { return HdVector(d, Complex{1.0, 0.0}); }

  [[nodiscard]] std::size_t dim() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  [[nodiscard]] std::span<const Complex> values() const noexcept { return data_; }
  [[nodiscard]] std::span<Complex> values() noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  friend bool operator==(const HdVector&, const HdVector&) = default;

 private:
  std::vector<Complex> data_;
};

namespace detail {

inline void require_same_dim(const HdVector& a, const HdVector& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()) + ")");
  }
}

// Plain complex product; avoids the Annex-G NaN recovery path of operator*.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline double squared_norm(const HdVector& a) noexcept {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

}  // namespace detail

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double phase) noexcept {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double w = std::remainder(phase, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

/// e^{j 2 pi num / den}, exact for quarter turns.
inline Complex rational_phasor(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  if (r == 0) return {1.0, 0.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == den) return {0.0, 1.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  const double phase = wrap_phase(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den));
  return std::polar(1.0, phase);
}

inline HdVector from_phases(std::span<const double> phases) {
  HdVector v(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) v[i] = std::polar(1.0, phases[i]);
  return v;
}

inline std::vector<double> phases(const HdVector& v) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = std::arg(v[i]);
  return out;
}

/// Random phase-only vector, phases i.i.d. uniform on (-pi, pi].
inline HdVector random_vector(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidDimension("random_vector: dimension must be positive");
  HdVector v(d);
  for (auto& z : v) z = std::polar(1.0, std::numbers::pi - 2.0 * std::numbers::pi * rng.uniform());
  return v;
}

inline HdVector bind(const HdVector& a, const HdVector& b) {
  detail::require_same_dim(a, b, "bind");
  HdVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = detail::mul(a[i], b[i]);
  return out;
}

inline HdVector bind(std::initializer_list<std::reference_wrapper<const HdVector>> vs) {
  if (vs.size() == 0) throw EmptyInput("bind: empty list");
  auto it = vs.begin();
  HdVector out = it->get();
  for (++it; it != vs.end(); ++it) out = bind(out, it->get());
  return out;
}

enum class Normalize { kNo, kYes };

/// Elementwise sum. With Normalize::kYes every entry is projected back onto
/// the unit circle (FHRR bundling); entries that cancel exactly get phase 0.
inline HdVector bundle(std::span<const HdVector> vs, Normalize normalize = Normalize::kNo) {
  if (vs.empty()) throw EmptyInput("bundle: empty list");
  HdVector out = vs.front();
  for (std::size_t k = 1; k < vs.size(); ++k) {
    detail::require_same_dim(out, vs[k], "bundle");
    for (std::size_t i = 0; i < out.dim(); ++i) out[i] += vs[k][i];
  }
  if (normalize == Normalize::kYes) {
    for (auto& z : out) {
      const double m = std::abs(z);
      z = m > 0.0 ? z / m : Complex{1.0, 0.0};
    }
  }
  return out;
}

inline HdVector bundle(std::initializer_list<HdVector> vs, Normalize normalize = Normalize::kNo) {
  return bundle(std::span<const HdVector>(vs.begin(), vs.size()), normalize);
}

/// acc += w * v
inline void add_scaled(HdVector& acc, const HdVector& v, double w) {
  detail::require_same_dim(acc, v, "add_scaled");
  for (std::size_t i = 0; i < acc.dim(); ++i) acc[i] += w * v[i];
}

inline HdVector scaled(const HdVector& v, double w) {
  HdVector out = v;
  for (auto& z : out) z *= w;
  return out;
}

/// Elementwise reciprocal. Throws on any zero-modulus entry.
inline HdVector inverse(const HdVector& a) {
  HdVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double n = std::norm(a[i]);
    if (n == 0.0) throw SingularVector("inverse: zero-modulus entry at index " + std::to_string(i));
    out[i] = std::conj(a[i]) / n;
  }
  return out;
}

/// a^{-1} o b
inline HdVector unbind(const HdVector& a, const HdVector& b) {
  detail::require_same_dim(a, b, "unbind");
  return bind(inverse(a), b);
}

/// Entries whose modulus falls below this fraction of the vector's largest
/// modulus are treated as exact zeros when raised to a negative power.
inline constexpr double kSingularRelTol = 1e-3;

/// Fractional binding power x^{(o p)}, principal branch per entry:
/// |z|^p e^{j p arg z}. On phase-only input this is phase multiplication.
/// For p < 0, (near-)zero entries map to 0 instead of infinity.
inline HdVector power(const HdVector& a, double p) {
  if (p == 1.0) return a;
  if (p == 0.0) return HdVector::identity(a.dim());
  HdVector out(a.dim());
  double max_mod = 0.0;
  if (p < 0.0) {
    for (const auto& z : a) max_mod = std::max(max_mod, std::abs(z));
  }
  const double floor = kSingularRelTol * max_mod;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const Complex z = a[i];
    const double m = std::abs(z);
    if (m == 0.0 || (p < 0.0 && m <= floor)) {
      out[i] = Complex{0.0, 0.0};
      continue;
    }
    if (p == -1.0) {
      out[i] = std::conj(z) / (m * m);
    } else {
      out[i] = std::polar(std::pow(m, p), p * std::arg(z));
    }
  }
  return out;
}

/// Re<a, b> / (|a| |b|).
inline double similarity(const HdVector& a, const HdVector& b) {
  detail::require_same_dim(a, b, "similarity");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0.0 || nb == 0.0) throw UndefinedSimilarity("similarity: zero vector");
  return dot / std::sqrt(na * nb);
}

/// Largest absolute wrapped phase difference between two vectors.
inline double max_phase_error(const HdVector& a, const HdVector& b) {
  detail::require_same_dim(a, b, "max_phase_error");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    worst = std::max(worst, std::abs(wrap_phase(std::arg(a[i]) - std::arg(b[i]))));
  }
  return worst;
}

/// Index of the codebook entry most similar to `query` (first wins on ties).
inline std::size_t cleanup(const HdVector& query, std::span<const HdVector> codebook) {
  if (codebook.empty()) throw EmptyInput("cleanup: empty codebook");
  std::size_t best = 0;
  double best_sim = similarity(query, codebook[0]);
  for (std::size_t k = 1; k < codebook.size(); ++k) {
    const double s = similarity(query, codebook[k]);
    if (s > best_sim) {
      best_sim = s;
      best = k;
    }
  }
  return best;
}

/// Phase-only vector with a conjugate-symmetric spectrum, i.e. the FHRR form
/// of a real HRR vector. Needed wherever the real-domain view must be exact.
inline HdVector random_real_spectrum_vector(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidDimension("random_real_spectrum_vector: dimension must be positive");
  HdVector v(d);
  v[0] = rng.coin() ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
  for (std::size_t k = 1; k <= (d - 1) / 2; ++k) {
    v[k] = std::polar(1.0, std::numbers::pi - 2.0 * std::numbers::pi * rng.uniform());
    v[d - k] = std::conj(v[k]);
  }
  if (d % 2 == 0) v[d / 2] = rng.coin() ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
  return v;
}

/// HRR view: real part of the inverse DFT with the 1/d factor on the inverse,
/// x_n = (1/d) sum_k X_k e^{+j 2 pi k n / d}. With this convention the stored
/// vector is exactly the forward DFT of x, so bind() is circular convolution
/// of the real views whenever the spectra are conjugate-symmetric.
inline std::vector<double> to_real_domain(const HdVector& a) {
  const auto n = static_cast<int>(a.dim());
  if (n == 0) throw InvalidDimension("to_real_domain: empty vector");
  std::vector<Complex> in(a.begin(), a.end());
  std::vector<Complex> out(a.dim());
  // FFTW planning is not thread-safe; execution is.
  static std::mutex planner_mutex;
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  std::vector<double> x(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) x[i] = out[i].real() / static_cast<double>(n);
  return x;
}

}  // namespace vsar
