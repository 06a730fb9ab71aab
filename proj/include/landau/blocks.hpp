#pragma once

#include <vector>

#include "landau/fock.hpp"

namespace landau::blocks {

// Index sets of the connected components of the sparsity graph, each sorted.
// The model Hamiltonians split into one component per n2 sector.
std::vector<std::vector<Eigen::Index>> connected_blocks(const fock::SpMat& m);

Eigen::MatrixXcd extract(const fock::SpMat& m, const std::vector<Eigen::Index>& idx);

struct BlockEigen {
  std::vector<Eigen::Index> index;
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors;  // columns, in block coordinates
};

std::vector<BlockEigen> hermitian_eigensystem(const fock::OperatorMatrix& h);

std::vector<double> hermitian_eigenvalues(const fock::OperatorMatrix& h);

}  // namespace landau::blocks
