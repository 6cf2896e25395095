#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/types.hpp"

namespace bergman {

class HoloFun;

/// z -> 1 / (z - pole)^2 with the pole outside the closed domain.
struct RationalSection {
  Complex pole;
};

/// z -> K(z, w), the reproducing kernel of the tagged domain at w.
struct KernelSection {
  Complex w;
};

/// w -> f(psi(w)) psi'(w), the transfer of f under the conformal map psi^{-1}.
struct MoebiusPullback {
  std::shared_ptr<const HoloFun> base;
  MoebiusMap psi;
};

struct LinearCombination {
  std::vector<Complex> coeffs;
  std::vector<HoloFun> parts;
};

/// scale * z^power; `power` = 0 gives constants and scale = 0 the zero function.
struct ClosedForm {
  Complex scale{0.0};
  int power = 0;
};

class HoloFun {
 public:
  using Form = std::variant<RationalSection, KernelSection, MoebiusPullback, LinearCombination,
                            ClosedForm>;

  HoloFun(DomainSpec domain, Form form);

  const DomainSpec& domain() const { return domain_; }
  const Form& form() const { return form_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&form_);
  }

  /// Value at z without the membership check.
  Complex value(Complex z) const;
  Complex operator()(Complex z) const { return value(z); }

  bool is_zero() const;

 private:
  DomainSpec domain_;
  Form form_;
};

// Validating constructors.
HoloFun rational_section(const DomainSpec& domain, Complex xi);
HoloFun kernel_section(const DomainSpec& domain, Complex w);
HoloFun zero_function(const DomainSpec& domain);
HoloFun monomial(const DomainSpec& domain, int power, Complex scale = 1.0);
HoloFun linear_combination(const DomainSpec& domain, std::vector<Complex> coeffs,
                           std::vector<HoloFun> parts);
HoloFun scaled(const HoloFun& f, Complex lambda);

/// Checked evaluation; throws ErrorCode::EvaluationOutsideDomain unless z is interior.
Complex eval(const HoloFun& f, Complex z);

bool has_kernel(const DomainSpec& domain);

/// Bergman kernel K_G(z, w), linear in z and conjugate-linear in w. Throws
/// ErrorCode::ChartUnavailable for the cusp domain.
Complex kernel(const DomainSpec& domain, Complex z, Complex w);

/// (r_a, r_b) over the domain, a and b outside its closure. Closed forms for
/// half-planes, disks, sectors and their Moebius images; a boundary integral
/// for the cusp domain.
Complex rational_pairing(const DomainSpec& domain, Complex a, Complex b);

/// out[j] = (r_a, r_{b_j}); the cusp boundary integral is swept once for all b.
void rational_pairings(const DomainSpec& domain, Complex a, std::span<const Complex> bs,
                       std::span<Complex> out);

/// (f, g) in B2 of f's domain by closed forms when every pair of parts admits
/// one; nullopt otherwise.
std::optional<Complex> inner_exact(const HoloFun& f, const HoloFun& g);

/// Quadrature route; linear in f and conjugate-linear in g.
QuadResult inner_b2(const HoloFun& f, const HoloFun& g, const DomainSpec& domain,
                    const QuadConfig& cfg);

struct NormResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t cells_used = 0;
  bool converged = false;
};

NormResult norm_b2(const HoloFun& f, const DomainSpec& domain, const QuadConfig& cfg);

/// The isometry B2(G) -> B2(m(G)), f -> f(m^{-1}(w)) (m^{-1})'(w). Throws
/// ErrorCode::PoleAtPoint when m sends an interior point of G to infinity.
HoloFun transfer_isometry(const HoloFun& f, const MoebiusMap& m);

struct SectionFamily {
  std::vector<Complex> points;     // xi_j, outside the domain
  std::vector<Complex> reflected;  // rho(xi_j), inside
  std::vector<HoloFun> kernels;    // K(., rho(xi_j))
  std::vector<HoloFun> rationals;  // 1 / (. - xi_j)^2
};

SectionFamily section_family(const DomainSpec& domain, std::span<const Complex> points);

}  // namespace bergman
