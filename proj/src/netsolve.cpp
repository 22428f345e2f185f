#include "ulfemi/netsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ulfemi {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyNetwork: return "EmptyNetwork";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DegenerateDivider: return "DegenerateDivider";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::AsymmetricTerminals: return "AsymmetricTerminals";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::GeometryViolation: return "GeometryViolation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

constexpr double kPivotFloor = 1e-300;

}  // namespace

void NodalNetwork::add_branch(int node_i, int node_j, Complex admittance) {
  branches.push_back({node_i, node_j, admittance});
}

void NodalNetwork::add_source(int node, Complex potential) {
  sources.push_back({node, potential});
}

void NodalNetwork::validate() const {
  if (node_count < 0) {
    throw SimError(ErrorCode::InvalidArgument, "negative node count");
  }
  auto in_range = [this](int n) { return n == kGround || (n >= 0 && n < node_count); };
  for (const Branch& b : branches) {
    if (!in_range(b.node_i) || !in_range(b.node_j)) {
      throw SimError(ErrorCode::InvalidArgument, "branch endpoint out of range");
    }
    if (b.node_i == b.node_j) {
      throw SimError(ErrorCode::InvalidArgument, "branch connects a node to itself");
    }
    if (!finite(b.admittance)) {
      throw SimError(ErrorCode::InvalidArgument, "branch admittance is not finite");
    }
  }
  for (size_t i = 0; i < sources.size(); ++i) {
    const Source& s = sources[i];
    if (s.node < 0 || s.node >= node_count) {
      throw SimError(ErrorCode::InvalidArgument, "source node out of range");
    }
    if (!finite(s.potential)) {
      throw SimError(ErrorCode::InvalidArgument, "source potential is not finite");
    }
    for (size_t j = i + 1; j < sources.size(); ++j) {
      if (sources[j].node == s.node) {
        throw SimError(ErrorCode::InvalidArgument, "duplicate source node");
      }
    }
  }
}

AssembledSystem assemble(const NodalNetwork& network) {
  network.validate();

  std::vector<char> is_source(static_cast<size_t>(network.node_count), 0);
  std::vector<Complex> clamp(static_cast<size_t>(network.node_count), Complex{});
  for (const Source& s : network.sources) {
    is_source[static_cast<size_t>(s.node)] = 1;
    clamp[static_cast<size_t>(s.node)] = s.potential;
  }

  AssembledSystem sys;
  std::vector<int> row_of_node(static_cast<size_t>(network.node_count), -1);
  for (int n = 0; n < network.node_count; ++n) {
    if (!is_source[static_cast<size_t>(n)]) {
      row_of_node[static_cast<size_t>(n)] = sys.dim++;
      sys.node_of_row.push_back(n);
    }
  }
  if (sys.dim == 0) {
    throw SimError(ErrorCode::EmptyNetwork, "no unknown nodes remain after source clamping");
  }
  sys.matrix.assign(static_cast<size_t>(sys.dim) * sys.dim, Complex{});
  sys.rhs.assign(static_cast<size_t>(sys.dim), Complex{});

  for (const Branch& b : network.branches) {
    const Complex y = b.admittance;
    auto kind = [&](int n) {
      if (n == NodalNetwork::kGround) return 0;       // ground
      return is_source[static_cast<size_t>(n)] ? 1 : 2;  // source / unknown
    };
    const int ki = kind(b.node_i);
    const int kj = kind(b.node_j);
    if (ki == 2 && kj == 2) {
      const int ri = row_of_node[static_cast<size_t>(b.node_i)];
      const int rj = row_of_node[static_cast<size_t>(b.node_j)];
      sys.at(ri, ri) += y;
      sys.at(rj, rj) += y;
      sys.at(ri, rj) -= y;
      sys.at(rj, ri) -= y;
    } else if (ki == 2) {
      const int ri = row_of_node[static_cast<size_t>(b.node_i)];
      sys.at(ri, ri) += y;
      if (kj == 1) sys.rhs[static_cast<size_t>(ri)] += y * clamp[static_cast<size_t>(b.node_j)];
    } else if (kj == 2) {
      const int rj = row_of_node[static_cast<size_t>(b.node_j)];
      sys.at(rj, rj) += y;
      if (ki == 1) sys.rhs[static_cast<size_t>(rj)] += y * clamp[static_cast<size_t>(b.node_i)];
    }
    // branches between two clamped/ground terminals do not touch the unknowns
  }
  return sys;
}

std::vector<Complex> solve_dense(std::vector<Complex> matrix, std::vector<Complex> rhs) {
  const int n = static_cast<int>(rhs.size());
  if (matrix.size() != static_cast<size_t>(n) * n) {
    throw SimError(ErrorCode::InvalidArgument, "matrix/rhs dimension mismatch");
  }
  auto a = [&](int r, int c) -> Complex& { return matrix[static_cast<size_t>(r) * n + c]; };

  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double m = std::abs(a(r, k));
      if (m > best) {
        best = m;
        pivot = r;
      }
    }
    if (best < kPivotFloor) {
      throw SimError(ErrorCode::SingularMatrix, "pivot magnitude below 1e-300 at column " +
                                                    std::to_string(k));
    }
    if (pivot != k) {
      for (int c = k; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      std::swap(rhs[static_cast<size_t>(k)], rhs[static_cast<size_t>(pivot)]);
    }
    for (int r = k + 1; r < n; ++r) {
      const Complex f = a(r, k) / a(k, k);
      if (f == Complex{}) continue;
      a(r, k) = Complex{};
      for (int c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
      rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(k)];
    }
  }

  std::vector<Complex> x(static_cast<size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    Complex acc = rhs[static_cast<size_t>(r)];
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x[static_cast<size_t>(c)];
    x[static_cast<size_t>(r)] = acc / a(r, r);
  }
  return x;
}

double relative_residual(const std::vector<Complex>& matrix, const std::vector<Complex>& x,
                         const std::vector<Complex>& rhs) {
  const int n = static_cast<int>(rhs.size());
  double num = 0.0, den = 0.0;
  for (int r = 0; r < n; ++r) {
    Complex acc = -rhs[static_cast<size_t>(r)];
    for (int c = 0; c < n; ++c) {
      acc += matrix[static_cast<size_t>(r) * n + c] * x[static_cast<size_t>(c)];
    }
    num += std::norm(acc);
    den += std::norm(rhs[static_cast<size_t>(r)]);
  }
  return std::sqrt(num) / std::max(std::sqrt(den), kPivotFloor);
}

SolveResult solve_network(const NodalNetwork& network) {
  const AssembledSystem sys = assemble(network);
  const std::vector<Complex> x = solve_dense(sys.matrix, sys.rhs);

  SolveResult result;
  result.residual_norm = relative_residual(sys.matrix, x, sys.rhs);
  result.potentials.assign(static_cast<size_t>(network.node_count), Complex{});
  for (int r = 0; r < sys.dim; ++r) {
    result.potentials[static_cast<size_t>(sys.node_of_row[static_cast<size_t>(r)])] =
        x[static_cast<size_t>(r)];
  }
  for (const Source& s : network.sources) {
    result.potentials[static_cast<size_t>(s.node)] = s.potential;
  }
  return result;
}

}  // namespace ulfemi
