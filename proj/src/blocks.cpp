#include "landau/blocks.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

namespace landau::blocks {

std::vector<std::vector<Eigen::Index>> connected_blocks(const fock::SpMat& m) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (fock::SpMat::InnerIterator it(m, k); it; ++it) {
      if (it.value() == cplx{}) continue;
      const Eigen::Index a = find(it.row()), b = find(it.col());
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

Eigen::MatrixXcd extract(const fock::SpMat& m, const std::vector<Eigen::Index>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (fock::SpMat::InnerIterator it(m, idx[c]); it; ++it) {
      const auto pos = std::lower_bound(idx.begin(), idx.end(), it.row());
      if (pos != idx.end() && *pos == it.row()) d(pos - idx.begin(), c) = it.value();
    }
  return d;
}

std::vector<BlockEigen> hermitian_eigensystem(const fock::OperatorMatrix& h) {
  std::vector<BlockEigen> out;
  for (auto& idx : connected_blocks(h.mat())) {
    const Eigen::MatrixXcd d = extract(h.mat(), idx);
    BlockEigen be;
    be.index = std::move(idx);
    if (d.rows() == 1) {
      be.values = Eigen::VectorXd::Constant(1, d(0, 0).real());
      be.vectors = Eigen::MatrixXcd::Identity(1, 1);
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
      be.values = es.eigenvalues();
      be.vectors = es.eigenvectors();
    }
    out.push_back(std::move(be));
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const fock::OperatorMatrix& h) {
  std::vector<double> v;
  v.reserve(h.dim());
  for (const auto& b : hermitian_eigensystem(h)) v.insert(v.end(), b.values.data(), b.values.data() + b.values.size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace landau::blocks
