#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levi/kernels.hpp"
#include "levi/quadrature.hpp"

namespace levi {

/// Point mass of size `mass` at `x != 0`.
struct Atom {
  double x = 1.0;
  double mass = 1.0;
};

/// Density piece g(x) = coef |x|^-q e^(-lambda |x|) |log|x| - log_shift|^-kappa
/// on the open interval (lo, hi), which must not contain 0. Negative pieces
/// use lo < hi <= 0.
struct DensityPiece {
  double coef = 1.0;
  double q = 0.0;
  double lambda = 0.0;
  double kappa = 0.0;
  double log_shift = 0.0;
  double lo = 1.0;
  double hi = kInf;

  double operator()(double x) const;
  bool positive_side() const { return lo >= 0.0; }
  /// |x| range of the piece.
  double abs_lo() const;
  double abs_hi() const;
};

/// Symmetric p-stable Levy measure c |x|^(-1-p) dx, 0 < p < 2.
struct StablePart {
  double c = 1.0;
  double p = 1.0;
  /// sigma with exponent -sigma |y|^p.
  double sigma() const;
};

class LevyMeasure;

/// Image of `source` x rho under (x, t) -> g(t) x for an integral map.
struct PushforwardPart {
  std::shared_ptr<const LevyMeasure> source;
  std::shared_ptr<const IntegralMap> map;
};

/// Verdict and value of an integrability functional.
struct Functional {
  bool finite = true;
  double value = 0.0;
};

/// Levy measure as a sum of atoms, density pieces, symmetric stable parts
/// and lazily evaluated pushforwards.
class LevyMeasure {
 public:
  LevyMeasure() = default;
  static LevyMeasure atomic(std::vector<Atom> atoms);
  static LevyMeasure density(std::vector<DensityPiece> pieces);
  static LevyMeasure stable(double c, double p);
  static LevyMeasure pushforward(std::shared_ptr<const LevyMeasure> source, std::shared_ptr<const IntegralMap> map);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& densities() const { return densities_; }
  const std::vector<StablePart>& stables() const { return stables_; }
  const std::vector<PushforwardPart>& pushforwards() const { return pushforwards_; }

  bool empty() const;
  bool is_atomic() const { return densities_.empty() && stables_.empty() && pushforwards_.empty(); }
  bool is_symmetric() const;
  /// Index of the measure when it is a single stable part.
  std::optional<double> stable_index() const;

  LevyMeasure operator+(const LevyMeasure& o) const;
  LevyMeasure scaled(double c) const;
  /// Image under x -> u x.
  LevyMeasure dilated(double u) const;

  /// int f(x) M(dx); abs_kinks lists |x| levels where f jumps.
  QuadResult integrate(const CFunction& f, std::span<const double> abs_kinks = {}, const QuadOptions& opts = {}) const;

  /// int (e^{iyx} - 1 - iyx 1_B(x)) M(dx).
  cplx lk_integral(double y, const QuadOptions& opts = {}) const;

  /// u int x (1_B(u x) - 1_B(x)) M(dx): the shift picked up under dilation.
  double dilation_shift(double u, const QuadOptions& opts = {}) const;

  /// int min(1, x^2) M(dx).
  Functional mass() const;
  /// int_{|x|>1} (log |x|)^m M(dx).
  Functional log_moment(double m = 1.0) const;
  /// int x^2 M(dx).
  Functional second_moment() const;
  /// int_{|x| > 1} |x| M(dx).
  Functional first_abs_moment_outside() const;
  /// int_{|x| > 1} |x|^p M(dx).
  Functional power_moment_outside(double p) const;

  /// M((v, inf)) for v > 0, M((-inf, v)) for v < 0.
  double tail(double v) const;

  std::string describe() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> densities_;
  std::vector<StablePart> stables_;
  std::vector<PushforwardPart> pushforwards_;
};

/// e^{iθ} - 1 - iθ 1_B(x) with θ = y x, accurate for small θ.
cplx lk_kernel(double y, double x);

/// Analytic finiteness of int_{piece} |x|^s |log|x||^m near 0 and infinity,
/// restricted to |x| <= 1 (region = -1), |x| > 1 (region = +1) or all (0).
bool density_moment_finite(const DensityPiece& d, double s, double m, int region);

/// Levy-Khintchine triple [z, R, M].
struct LevyTriple {
  double shift = 0.0;
  double gaussian_var = 0.0;
  LevyMeasure levy;

  LevyTriple() = default;
  LevyTriple(double z, double r, LevyMeasure m = {});

  /// Throws InputError unless R >= 0, z finite and int min(1, x^2) dM < inf.
  void validate() const;
  bool is_symmetric() const { return shift == 0.0 && levy.is_symmetric(); }
  std::string describe() const;
};

/// Callable exponent y -> Phi(y) with metadata.
struct ExponentFn {
  std::function<cplx(double)> eval;
  bool is_symmetric = false;
  std::optional<double> stable_index;

  cplx operator()(double y) const { return eval(y); }
};

cplx levy_exponent(const LevyTriple& t, double y, const QuadOptions& opts = {});
ExponentFn exponent_fn(const LevyTriple& t, const QuadOptions& opts = {});
/// Exponent -sigma |y|^p.
ExponentFn stable_exponent(double sigma, double p);

LevyTriple convolve(const LevyTriple& a, const LevyTriple& b);
LevyTriple convolution_power(const LevyTriple& t, double c);
LevyTriple dilate(const LevyTriple& t, double u, const QuadOptions& opts = {});
LevyTriple reflect(const LevyTriple& t);
Functional log_moment_finite(const LevyTriple& t);

}  // namespace levi
