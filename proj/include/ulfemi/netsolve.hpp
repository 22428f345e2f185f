#pragma once

#include <vector>

#include "ulfemi/types.hpp"

namespace ulfemi {

/// Two-terminal element between two nodes, described by its complex
/// admittance. Either endpoint may be NodalNetwork::kGround.
struct Branch {
  int node_i;
  int node_j;
  Complex admittance;
};

/// Node clamped to a known phasor potential.
struct Source {
  int node;
  Complex potential;
};

/// Complex admittance graph with an implicit ground reference.
///
/// Node indices run 0..node_count-1. Ground is not a node; it is the
/// reference every potential is measured against. Parallel branches between
/// the same pair accumulate.
struct NodalNetwork {
  static constexpr int kGround = -1;

  int node_count = 0;
  std::vector<Branch> branches;
  std::vector<Source> sources;

  void add_branch(int node_i, int node_j, Complex admittance);
  void add_source(int node, Complex potential);

  /// Throws SimError(InvalidArgument) if any invariant is broken:
  /// endpoint out of range, self-loop, non-finite admittance, duplicate
  /// source node.
  void validate() const;
};

/// Reduced KCL system A v = i over the unknown (non-source) nodes.
/// The matrix is symmetric; source and ground contributions live in rhs.
struct AssembledSystem {
  int dim = 0;
  std::vector<Complex> matrix;   // row-major dim x dim
  std::vector<Complex> rhs;      // dim
  std::vector<int> node_of_row;  // row -> network node index

  Complex& at(int row, int col) { return matrix[static_cast<size_t>(row) * dim + col]; }
  const Complex& at(int row, int col) const {
    return matrix[static_cast<size_t>(row) * dim + col];
  }
};

struct SolveResult {
  /// Potential per node index; source nodes report their clamped value.
  std::vector<Complex> potentials;
  /// Relative residual of the reduced system, ||Av-i|| / max(||i||, eps).
  double residual_norm = 0.0;
};

/// Stamps the branch list into the reduced nodal-admittance system.
/// Throws SimError(EmptyNetwork) when no unknown node remains.
AssembledSystem assemble(const NodalNetwork& network);

/// Dense complex solve by Gaussian elimination with row partial pivoting.
/// `matrix` is row-major n*n with n == rhs.size(). Throws
/// SimError(SingularMatrix) when a pivot magnitude falls below 1e-300.
std::vector<Complex> solve_dense(std::vector<Complex> matrix, std::vector<Complex> rhs);

double relative_residual(const std::vector<Complex>& matrix, const std::vector<Complex>& x,
                         const std::vector<Complex>& rhs);

/// assemble + solve_dense + source back-substitution.
SolveResult solve_network(const NodalNetwork& network);

}  // namespace ulfemi
