#pragma once

// Bound states: the ground state from the closed antiderivative of W/f, the
// excited states from the deformed polynomial recursions run down the
// parameter chain, quadrature normalization and the two admissibility tests
// (square integrability, vanishing of |psi|^2 f at the ends).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pdem/catalog.hpp"
#include "pdem/core.hpp"
#include "pdem/si_engine.hpp"

namespace pdem {

/// P_n in the class variable y (class 1 and 3: y = phi, class 2: y = phi^-2).
struct DeformedPolynomial {
    std::vector<double> coeffs;  // ascending powers, size degree + 1
    std::size_t degree = 0;
    SpClass class_id = SpClass::Class1;
    std::size_t chain_offset = 0;
    /// Class 3: the degree n+1 coefficient the last recursion step produced
    /// before truncation (cancels identically). Zero otherwise.
    double cancelled_top = 0.0;

    [[nodiscard]] double eval(double y) const;
    /// log|P(y)| and its sign, safe for |y| far beyond 1.
    [[nodiscard]] std::pair<double, int> log_eval(double y) const;
};

/// P_n at chain offset 0 from an explicit structure and a chain of depth >= n.
DeformedPolynomial polynomial_chain(const SiStructure& s, const ParameterChain& chain, std::size_t n);
DeformedPolynomial polynomial_chain(const CatalogEntry& entry, const Params& params, std::size_t n);

/// Closed antiderivative of W(lambda, mu)/f, i.e. of W / (f phi') in phi,
/// up to an additive constant.
double w_over_f_integral(const SuperpotentialClass& sp, double lambda, double mu, double x);

struct LogValue {
    double log_abs;
    int sign;
};

/// psi_n(x) = f^{-1/2} * prefactor * P_n(y) * exp(-int_{x_ref}^x W(lambda_n)/f), unnormalized.
class BoundState {
public:
    BoundState(const CatalogEntry& entry, const Params& params, std::size_t n);

    [[nodiscard]] LogValue log_eval(double x) const;
    [[nodiscard]] double operator()(double x) const;

    [[nodiscard]] std::size_t level() const { return n_; }
    [[nodiscard]] const DeformedPolynomial& polynomial() const { return poly_; }
    [[nodiscard]] const SiStructure& structure() const { return s_; }
    [[nodiscard]] const ParameterChain& chain() const { return chain_; }
    [[nodiscard]] double reference_point() const { return x_ref_; }

private:
    SiStructure s_;
    ParameterChain chain_;
    DeformedPolynomial poly_;
    std::size_t n_;
    double x_ref_;
    double i_ref_;
};

/// max |A^- psi_0| / max |psi_0| over xs, with A^- = sqrt f D sqrt f + W(lambda_0)
/// and D a five-point central difference of step h.
double factorization_residual(const BoundState& ground, std::span<const double> xs, double h);

double ground_state_numeric(const CatalogEntry& entry, const Params& params, double x);
double excited_state_eval(const CatalogEntry& entry, const Params& params, std::size_t n, double x);

struct Normalized {
    double norm_constant;
    std::vector<double> samples;
};

/// Scales samples so that the Simpson integral of |psi|^2 is 1. ZeroNorm below 1e-300.
Normalized normalize(std::span<const double> samples, const Grid& grid);

struct AdmissibilityVerdict {
    bool square_integrable = false;
    bool hermiticity_ok = false;
    bool admissible = false;
    std::string integrability_evidence;
    std::string hermiticity_evidence;
};

AdmissibilityVerdict admissibility_check(const CatalogEntry& entry, const Params& params, std::size_t n);

}  // namespace pdem
