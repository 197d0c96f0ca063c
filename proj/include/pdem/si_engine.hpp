#pragma once

// Deformed shape invariance: superpotential classes, chain solution of the
// factorization condition and its shape-invariance iterates, residuals and
// the first SUSY partner.

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "pdem/core.hpp"

namespace pdem {

enum class SpClass { Class1, Class2, Class3 };

/// Base functions phi(x) used by the catalog superpotentials.
enum class PhiKind { Tan, Tanh, Cot, Coth, Identity, Reciprocal, ExpNeg, Sin };

std::string_view phi_name(PhiKind kind);
double phi_value(PhiKind kind, double x);
/// d phi / dx from its closed form (independent of the class relation).
double phi_derivative(PhiKind kind, double x);

/// A superpotential class together with the constants of its phi' relation
///   class 1: phi' = A phi^2 + B phi + C,  g phi' = A' phi^2 + B' phi + C'
///   class 2: phi' = A phi^2 + B,          g phi' = A' phi^2 + B'
///   class 3: phi' = (C phi + D) s,        g phi' = (C' phi + D') s,  s = sqrt(A phi^2 + B)
/// Class 0 is class 1 with B = B' = 0 and mu = 0.
struct SuperpotentialClass {
    SpClass cls = SpClass::Class1;
    PhiKind phi = PhiKind::Identity;
    double A = 0, B = 0, C = 0, D = 0;
    double Ap = 0, Bp = 0, Cp = 0, Dp = 0;

    /// phi' evaluated through the class relation.
    [[nodiscard]] double phi_prime_rel(double y) const;
    /// f phi' as a function of y = phi (the deformed relation).
    [[nodiscard]] double f_phi_prime(double y) const;
    /// g reconstructed from the class formula at position x.
    [[nodiscard]] double g_from_class(double x) const;
};

struct WValue {
    double W;
    double W_prime;
};

WValue w_eval(const SuperpotentialClass& sp, double lambda, double mu, double x);

/// Sign choices for the quadratic roots met while solving the chain.
///   class 1: signs[0] picks lambda.
///   class 2: signs[0] picks lambda, signs[1] picks mu.
///   class 3: signs[0] / signs[1] pick t = lambda phi_r + mu at the roots
///            phi_r = +sqrt(-B/A) / -sqrt(-B/A).
struct BranchRule {
    std::array<int, 2> signs{+1, +1};
};

/// Everything needed to solve the chain for one potential instance.
///
/// `v_basis` holds V_eff in the class basis:
///   class 1: V_eff = v[0] phi^2 + v[1] phi + v[2]
///   class 2: V_eff = v[0] phi^2 + v[1] phi^-2 + v[2]
///   class 3: V_eff (A phi^2 + B) = v[0] phi^2 + v[1] phi + v[2]
struct SiStructure {
    SuperpotentialClass sp;
    DeformingFunction df;
    ScalarField v_eff;
    std::array<double, 3> v_basis{};
    BranchRule branch;
};

struct ParameterChain {
    std::vector<double> lambda;
    std::vector<double> mu;
    std::vector<double> eps;
    std::vector<double> energy;

    [[nodiscard]] std::size_t depth() const { return lambda.empty() ? 0 : lambda.size() - 1; }
};

ParameterChain solve_chain(const SiStructure& s, std::size_t depth);

struct SiResidual {
    double r1;
    double r2;
};

SiResidual si_residual(const SiStructure& s, const ParameterChain& chain, std::size_t i, double x);

/// V_eff + 2 f W'(lambda_0).
double partner_potential(const SiStructure& s, const ParameterChain& chain, double x);

}  // namespace pdem
