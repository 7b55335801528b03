#include "teleclone/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace teleclone {

namespace {

void check_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) throw std::invalid_argument("matrix has NaN/Inf entries");
}

double herm_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<Slot> slots)
    : slots_(std::move(slots)) {
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (slots_[i].local_dim < 2)
      throw std::invalid_argument("slot local_dim must be >= 2");
    for (std::size_t j = i + 1; j < slots_.size(); ++j)
      if (slots_[i].name == slots_[j].name)
        throw std::invalid_argument("duplicate slot name: " + slots_[i].name);
  }
}

SubsystemLayout SubsystemLayout::qubits(
    const std::vector<std::string>& names) {
  std::vector<Slot> slots;
  slots.reserve(names.size());
  for (const auto& n : names) slots.push_back({n, 2});
  return SubsystemLayout(std::move(slots));
}

long SubsystemLayout::dim() const {
  long d = 1;
  for (const auto& s : slots_) d *= s.local_dim;
  return d;
}

bool SubsystemLayout::contains(const std::string& name) const {
  for (const auto& s : slots_)
    if (s.name == name) return true;
  return false;
}

int SubsystemLayout::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (slots_[i].name == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown slot name: " + name);
}

SubsystemLayout SubsystemLayout::without(
    const std::set<std::string>& names) const {
  for (const auto& n : names)
    if (!contains(n)) throw std::invalid_argument("unknown slot name: " + n);
  std::vector<Slot> kept;
  for (const auto& s : slots_)
    if (!names.count(s.name)) kept.push_back(s);
  return SubsystemLayout(std::move(kept));
}

std::vector<std::string> SubsystemLayout::names() const {
  std::vector<std::string> out;
  out.reserve(slots_.size());
  for (const auto& s : slots_) out.push_back(s.name);
  return out;
}

DensityMatrix::DensityMatrix(SubsystemLayout l, ComplexMatrix m)
    : layout(std::move(l)), mat(std::move(m)) {
  check_finite(mat);
  if (mat.rows() != mat.cols() || mat.rows() != layout.dim())
    throw std::invalid_argument("density matrix dimension mismatch");
  if (herm_defect(mat) > tol::hermiticity)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(mat.trace().real() - 1.0) > tol::trace_one ||
      std::abs(mat.trace().imag()) > tol::trace_one)
    throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      ComplexMatrix((mat + mat.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < tol::psd_floor)
    throw std::invalid_argument("density matrix has negative eigenvalue");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Row-major mixed-radix strides for a layout, most significant slot first.
std::vector<long> strides(const SubsystemLayout& layout) {
  std::vector<long> st(layout.size());
  long acc = 1;
  for (int i = layout.size() - 1; i >= 0; --i) {
    st[i] = acc;
    acc *= layout.slot(i).local_dim;
  }
  return st;
}

}  // namespace

ComplexMatrix partial_trace_raw(const ComplexMatrix& m,
                                const SubsystemLayout& layout,
                                const std::set<std::string>& discard) {
  for (const auto& n : discard)
    if (!layout.contains(n)) throw std::invalid_argument("unknown slot name: " + n);
  if (static_cast<int>(discard.size()) == layout.size())
    throw std::invalid_argument("cannot trace out every slot");
  if (m.rows() != layout.dim() || m.cols() != layout.dim())
    throw std::invalid_argument("matrix/layout dimension mismatch");

  const auto st = strides(layout);
  std::vector<int> keep_idx, drop_idx;
  for (int i = 0; i < layout.size(); ++i) {
    if (discard.count(layout.slot(i).name))
      drop_idx.push_back(i);
    else
      keep_idx.push_back(i);
  }
  long dk = 1, dd = 1;
  for (int i : keep_idx) dk *= layout.slot(i).local_dim;
  for (int i : drop_idx) dd *= layout.slot(i).local_dim;

  // Map a (kept-index, dropped-index) pair to a full index.
  auto full_index = [&](long k, long d) {
    long idx = 0;
    for (int pos = static_cast<int>(keep_idx.size()) - 1; pos >= 0; --pos) {
      int s = keep_idx[pos];
      idx += (k % layout.slot(s).local_dim) * st[s];
      k /= layout.slot(s).local_dim;
    }
    for (int pos = static_cast<int>(drop_idx.size()) - 1; pos >= 0; --pos) {
      int s = drop_idx[pos];
      idx += (d % layout.slot(s).local_dim) * st[s];
      d /= layout.slot(s).local_dim;
    }
    return idx;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (long r = 0; r < dk; ++r)
    for (long c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (long d = 0; d < dd; ++d) acc += m(full_index(r, d), full_index(c, d));
      out(r, c) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::set<std::string>& discard) {
  ComplexMatrix out = partial_trace_raw(rho.mat, rho.layout, discard);
  return DensityMatrix(rho.layout.without(discard), std::move(out));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                const std::set<std::string>& part) {
  const auto& layout = rho.layout;
  for (const auto& n : part)
    if (!layout.contains(n)) throw std::invalid_argument("unknown slot name: " + n);
  if (part.empty() || static_cast<int>(part.size()) == layout.size())
    throw std::invalid_argument("partial transpose needs a proper nonempty subset");

  const auto st = strides(layout);
  std::vector<bool> flip(layout.size());
  for (int i = 0; i < layout.size(); ++i)
    flip[i] = part.count(layout.slot(i).name) > 0;

  const long d = layout.dim();
  ComplexMatrix out(d, d);
  std::vector<int> rd(layout.size()), cd(layout.size());
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) {
      long rr = r, cc = c;
      for (int i = 0; i < layout.size(); ++i) {
        rd[i] = static_cast<int>(rr / st[i] % layout.slot(i).local_dim);
        cd[i] = static_cast<int>(cc / st[i] % layout.slot(i).local_dim);
      }
      long nr = 0, nc = 0;
      for (int i = 0; i < layout.size(); ++i) {
        nr += (flip[i] ? cd[i] : rd[i]) * st[i];
        nc += (flip[i] ? rd[i] : cd[i]) * st[i];
      }
      out(nr, nc) = rho.mat(r, c);
    }
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("trace_norm requires a square matrix");
  check_finite(m);
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

EigResult herm_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("herm_eig requires a square matrix");
  check_finite(m);
  if (herm_defect(m) > tol::hermiticity)
    throw std::invalid_argument("herm_eig: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      ComplexMatrix((m + m.adjoint()) / 2.0));
  EigResult out;
  out.eigenvalues.assign(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  out.eigenvectors = es.eigenvectors();
  return out;
}

ComplexMatrix herm_sqrt(const ComplexMatrix& m) {
  EigResult eig = herm_eig(m);
  const long d = m.rows();
  Eigen::VectorXd roots(d);
  for (long i = 0; i < d; ++i) {
    double ev = eig.eigenvalues[static_cast<std::size_t>(i)];
    if (ev < tol::psd_floor)
      throw std::invalid_argument("herm_sqrt: matrix not PSD");
    roots(i) = std::sqrt(std::max(ev, 0.0));
  }
  return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix identity(long dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace teleclone
