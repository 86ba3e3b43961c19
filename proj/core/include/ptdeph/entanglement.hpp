// entanglement.hpp: two-qubit concurrence and entanglement of formation.

#pragma once

#include <array>

#include <Eigen/Core>

namespace ptdeph {

/// 4x4 two-qubit density matrix in the |00>, |01>, |10>, |11> basis.
/// Construction checks Hermiticity and unit trace to 1e-12 and
/// eigenvalues >= -1e-10.
class TwoQubitState {
public:
    explicit TwoQubitState(const Eigen::Matrix4cd& rho);

    const Eigen::Matrix4cd& matrix() const { return rho_; }

private:
    Eigen::Matrix4cd rho_;
};

struct ConcurrenceResult {
    double concurrence{0.0};
    std::array<double, 4> lambdas{};  // descending, each >= 0
};

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l_i are the
/// square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
ConcurrenceResult concurrence(const TwoQubitState& state);

/// |Phi+><Phi+| after one qubit has dephased by exp(-gamma).
TwoQubitState dephased_bell(double gamma);

/// Binary entropy h(x) in bits, with 0 log 0 = 0.
double binary_entropy(double x);

/// E_f = h((1 + sqrt(1 - c^2)) / 2). Rejects c outside [0, 1].
double eof_from_concurrence(double c);

}  // namespace ptdeph
