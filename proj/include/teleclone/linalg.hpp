#pragma once

#include <complex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace teleclone {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Central tolerance table. Every numerical threshold used for validation
/// lives here so tests and library agree on a single knob per check.
namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double psd_floor = -1e-9;
inline constexpr double povm_sum = 1e-12;
inline constexpr double completeness = 1e-10;
inline constexpr double sqrt_residual = 1e-9;
inline constexpr double norm_one = 1e-10;
inline constexpr double oracle_match = 1e-10;
inline constexpr double ln_closed_match = 1e-6;
}  // namespace tol

/// Ordered list of named qubit slots. Tensor order is slot order with the
/// first slot most significant (big-endian index convention).
class SubsystemLayout {
 public:
  struct Slot {
    std::string name;
    int local_dim = 2;
  };

  SubsystemLayout() = default;
  explicit SubsystemLayout(std::vector<Slot> slots);

  /// Convenience: all-qubit layout from a list of names.
  static SubsystemLayout qubits(const std::vector<std::string>& names);

  int size() const { return static_cast<int>(slots_.size()); }
  long dim() const;
  const Slot& slot(int i) const { return slots_.at(i); }
  const std::vector<Slot>& slots() const { return slots_; }

  bool contains(const std::string& name) const;
  /// Position of a named slot; throws std::invalid_argument if unknown.
  int index_of(const std::string& name) const;

  /// Layout with the given slots removed, preserving relative order.
  SubsystemLayout without(const std::set<std::string>& names) const;

  std::vector<std::string> names() const;

 private:
  std::vector<Slot> slots_;
};

/// Trace-1 Hermitian PSD matrix over a labeled tensor product of slots.
/// Validates Hermiticity, trace and spectrum on construction.
struct DensityMatrix {
  SubsystemLayout layout;
  ComplexMatrix mat;

  DensityMatrix(SubsystemLayout l, ComplexMatrix m);
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out the named slots; remaining slots keep their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::set<std::string>& discard);

/// Raw partial trace on a matrix over an explicit layout (no density-matrix
/// validation of the result). Used internally where intermediate operators
/// are not states.
ComplexMatrix partial_trace_raw(const ComplexMatrix& m,
                                const SubsystemLayout& layout,
                                const std::set<std::string>& discard);

/// Transpose the tensor factors named in `part`.
ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                const std::set<std::string>& part);

/// Sum of singular values. For Hermitian input this equals the sum of
/// absolute eigenvalues.
double trace_norm(const ComplexMatrix& m);

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

/// Eigendecomposition of a Hermitian matrix. Symmetrizes (m+m†)/2 first;
/// rejects input that is non-Hermitian beyond tol::hermiticity.
EigResult herm_eig(const ComplexMatrix& m);

/// PSD square root. Eigenvalues below tol::psd_floor are an error; small
/// negatives above the floor are clamped to zero.
ComplexMatrix herm_sqrt(const ComplexMatrix& m);

ComplexMatrix identity(long dim);

// Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace teleclone
