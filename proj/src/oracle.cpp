#include "permdist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "permdist/combinatorics.hpp"

namespace permdist::oracle {

WeightBasis::WeightBasis(int n, int l) : n_(n), l_(l) {
  validate_sector({n, l});
  if (n > 24) {
    throw std::domain_error("WeightBasis: n > 24 is outside the oracle scope");
  }
  strings_.reserve(BinomialCache::shared().binom(n, l));
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    if (__builtin_popcount(x) == l) strings_.push_back(x);
  }
}

bool WeightBasis::contains(std::uint32_t x) const {
  return x < (1u << n_) && __builtin_popcount(x) == l_;
}

DenseSymMatrix DenseSymMatrix::zero(int dim) {
  DenseSymMatrix m;
  m.dim = dim;
  m.a.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  return m;
}

double DenseSymMatrix::frobenius() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

DenseIntMatrix DenseIntMatrix::zero(int dim) {
  DenseIntMatrix m;
  m.dim = dim;
  m.a.assign(static_cast<std::size_t>(dim) * dim, 0);
  return m;
}

DenseSymMatrix to_double(const DenseIntMatrix& m) {
  DenseSymMatrix out = DenseSymMatrix::zero(m.dim);
  for (std::size_t i = 0; i < m.a.size(); ++i) {
    out.a[i] = static_cast<double>(m.a[i]);
  }
  return out;
}

DenseIntMatrix build_adjacency(const WeightBasis& basis, int k) {
  const int jm = std::min(basis.l(), basis.n() - basis.l());
  if (k < 0 || k > jm) {
    throw std::domain_error("build_adjacency: k outside [0, min(l, n-l)]");
  }
  const int dim = basis.size();
  DenseIntMatrix m = DenseIntMatrix::zero(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (WeightBasis::hamming(basis.string_at(r), basis.string_at(c)) == 2 * k) {
        m.at(r, c) = 1;
      }
    }
  }
  return m;
}

DenseSymMatrix build_rho_sector(const WeightBasis& basis, MixParam mix) {
  const double p = mix.p;
  if (std::abs(p) > 1.0) {
    throw std::domain_error("build_rho_sector: |p| must not exceed 1");
  }
  const int n = basis.n();
  const int dim = basis.size();
  const int jm = std::min(basis.l(), n - basis.l());
  const double scale = std::ldexp(1.0, -n);

  // Route 1: entry (x,y) = p^{d(x,y)} / 2^n.
  std::vector<double> p_pow(n + 1);
  p_pow[0] = 1.0;
  for (int d = 1; d <= n; ++d) p_pow[d] = p_pow[d - 1] * p;
  DenseSymMatrix direct = DenseSymMatrix::zero(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const int d = WeightBasis::hamming(basis.string_at(r), basis.string_at(c));
      direct.at(r, c) = scale * p_pow[d];
    }
  }

  // Route 2: sum_k p^{2k} A_k / 2^n, with (p^2)^k powered up independently.
  DenseSymMatrix from_adjacency = DenseSymMatrix::zero(dim);
  const double p2 = p * p;
  double p2k = 1.0;
  for (int k = 0; k <= jm; ++k) {
    const DenseIntMatrix ak = build_adjacency(basis, k);
    for (std::size_t i = 0; i < ak.a.size(); ++i) {
      if (ak.a[i]) from_adjacency.a[i] += scale * p2k;
    }
    p2k *= p2;
  }

  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double diff = std::abs(direct.at(r, c) - from_adjacency.at(r, c));
      if (!(diff <= 1e-15)) {
        throw std::runtime_error(
            "build_rho_sector: adjacency-sum and per-entry constructions "
            "disagree at (" + std::to_string(r) + "," + std::to_string(c) +
            ") by " + std::to_string(diff));
      }
    }
  }
  return direct;
}

namespace {

// Cyclic Jacobi with full-matrix storage.  Rotations touch rows p and q
// contiguously, then restore symmetry by copying into the columns.
struct JacobiWorkspace {
  std::vector<double>& a;
  std::vector<double>* w;  // eigenvector rows, optional
  int n;

  void rotate(int p, int q, double app, double aqq, double apq) {
    const double theta = (aqq - app) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
      t = 1.0 / (2.0 * theta);
    } else {
      t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    double* rp = a.data() + static_cast<std::size_t>(p) * n;
    double* rq = a.data() + static_cast<std::size_t>(q) * n;
    for (int i = 0; i < n; ++i) {
      const double aip = rp[i], aiq = rq[i];
      rp[i] = c * aip - s * aiq;
      rq[i] = s * aip + c * aiq;
    }
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i) * n + p] = rp[i];
      a[static_cast<std::size_t>(i) * n + q] = rq[i];
    }
    rp[p] = app - t * apq;
    rq[q] = aqq + t * apq;
    rp[q] = 0.0;
    rq[p] = 0.0;

    if (w) {
      double* wp = w->data() + static_cast<std::size_t>(p) * n;
      double* wq = w->data() + static_cast<std::size_t>(q) * n;
      for (int i = 0; i < n; ++i) {
        const double vip = wp[i], viq = wq[i];
        wp[i] = c * vip - s * viq;
        wq[i] = s * vip + c * viq;
      }
    }
  }

  double off_norm() const {
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
      const double* rp = a.data() + static_cast<std::size_t>(p) * n;
      for (int q = p + 1; q < n; ++q) s += rp[q] * rp[q];
    }
    return std::sqrt(2.0 * s);
  }
};

EigenSystem jacobi(DenseSymMatrix m, bool want_vectors, int max_sweeps) {
  const int n = m.dim;
  if (n > 2048) {
    throw std::domain_error("jacobi: solver is sized for dim <= 2048");
  }
  EigenSystem out;
  out.dim = n;
  if (n == 0) return out;

  std::vector<double> w;
  if (want_vectors) {
    w.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i) * n + i] = 1.0;
  }
  JacobiWorkspace ws{m.a, want_vectors ? &w : nullptr, n};

  const double fro = m.frobenius();
  const double stop = 1e-13 * fro;
  const double skip = stop / std::max(1, n);

  bool converged = (fro == 0.0) || (n == 1);
  for (int sweep = 0; !converged && sweep < max_sweeps; ++sweep) {
    if (ws.off_norm() <= stop) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) <= skip) continue;
        ws.rotate(p, q, m.at(p, p), m.at(q, q), apq);
      }
    }
  }
  if (!converged && ws.off_norm() > stop) {
    throw std::runtime_error("jacobi: no convergence after " +
                             std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return m.at(i, i) < m.at(j, j);
  });
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = m.at(order[i], order[i]);
  if (want_vectors) {
    out.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      std::copy_n(w.begin() + static_cast<std::size_t>(order[i]) * n, n,
                  out.vectors.begin() + static_cast<std::size_t>(i) * n);
    }
  }
  return out;
}

}  // namespace

std::vector<double> eigenvalues(DenseSymMatrix m, int max_sweeps) {
  return jacobi(std::move(m), false, max_sweeps).values;
}

EigenSystem eigensystem(DenseSymMatrix m, int max_sweeps) {
  return jacobi(std::move(m), true, max_sweeps);
}

namespace {

std::string triple(int i, int j, int k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," +
         std::to_string(k) + ")";
}

}  // namespace

IntersectionNumbers verify_cas_axioms(const WeightBasis& basis) {
  const int n = basis.n(), l = basis.l();
  if (n > 12) {
    throw std::domain_error("verify_cas_axioms: n > 12 unsupported");
  }
  const int classes = std::min(l, n - l);
  const int dim = basis.size();

  std::vector<DenseIntMatrix> adj;
  adj.reserve(classes + 1);
  for (int k = 0; k <= classes; ++k) adj.push_back(build_adjacency(basis, k));

  // (i') A_0 is the identity.
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (adj[0].at(r, c) != (r == c ? 1 : 0)) {
        throw std::runtime_error("CAS axiom (i') violated: A_0 != I at (" +
                                 std::to_string(r) + "," + std::to_string(c) +
                                 ")");
      }
    }
  }
  // (ii') the A_k partition the all-ones matrix.
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      std::int64_t s = 0;
      for (const auto& ak : adj) s += ak.at(r, c);
      if (s != 1) {
        throw std::runtime_error("CAS axiom (ii') violated: sum A_k != J at (" +
                                 std::to_string(r) + "," + std::to_string(c) +
                                 ")");
      }
    }
  }
  // (iii')/(vi') every relation is symmetric.
  for (int k = 0; k <= classes; ++k) {
    for (int r = 0; r < dim; ++r) {
      for (int c = r + 1; c < dim; ++c) {
        if (adj[k].at(r, c) != adj[k].at(c, r)) {
          throw std::runtime_error("CAS axiom (vi') violated: A_" +
                                   std::to_string(k) + " not symmetric at (" +
                                   std::to_string(r) + "," +
                                   std::to_string(c) + ")");
        }
      }
    }
  }

  // Distance class of every ordered pair, for the (iv') extraction.
  std::vector<int> pair_class(static_cast<std::size_t>(dim) * dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      pair_class[static_cast<std::size_t>(r) * dim + c] =
          WeightBasis::hamming(basis.string_at(r), basis.string_at(c)) / 2;
    }
  }

  IntersectionNumbers nums;
  nums.classes = classes;
  nums.p.assign(static_cast<std::size_t>(classes + 1) * (classes + 1) *
                    (classes + 1),
                -1);

  for (int i = 0; i <= classes; ++i) {
    for (int j = i; j <= classes; ++j) {
      // Exact integer product P = A_i * A_j.
      DenseIntMatrix prod = DenseIntMatrix::zero(dim);
      for (int r = 0; r < dim; ++r) {
        for (int t = 0; t < dim; ++t) {
          const std::int64_t art = adj[i].at(r, t);
          if (!art) continue;
          const std::int64_t* rowj = adj[j].a.data() +
                                     static_cast<std::size_t>(t) * dim;
          std::int64_t* rowp = prod.a.data() +
                               static_cast<std::size_t>(r) * dim;
          for (int c = 0; c < dim; ++c) rowp[c] += art * rowj[c];
        }
      }
      // (v') commutativity: since the A_k are symmetric, A_j A_i is the
      // transpose of A_i A_j, so commuting is symmetry of the product.
      for (int r = 0; r < dim; ++r) {
        for (int c = r + 1; c < dim; ++c) {
          if (prod.at(r, c) != prod.at(c, r)) {
            throw std::runtime_error(
                "CAS axiom (v') violated: A_" + std::to_string(i) + " A_" +
                std::to_string(j) + " not equal to A_" + std::to_string(j) +
                " A_" + std::to_string(i) + " at (" + std::to_string(r) + "," +
                std::to_string(c) + ")");
          }
        }
      }
      // (iv') the product must be constant on every distance class.
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
          const int k = pair_class[static_cast<std::size_t>(r) * dim + c];
          const std::int64_t v = prod.at(r, c);
          if (v < 0) {
            throw std::runtime_error("CAS axiom (iv') violated: negative "
                                     "coefficient at " + triple(i, j, k));
          }
          std::int64_t& slot = nums.at(i, j, k);
          if (slot == -1) {
            slot = v;
          } else if (slot != v) {
            throw std::runtime_error(
                "CAS axiom (iv') violated: A_" + std::to_string(i) + " A_" +
                std::to_string(j) + " not constant on class " +
                std::to_string(k) + ", witness " + triple(i, j, k));
          }
        }
      }
      for (int k = 0; k <= classes; ++k) {
        nums.at(j, i, k) = nums.at(i, j, k);
      }
    }
  }
  return nums;
}

std::int64_t count_distance_pairs(const WeightBasis& basis, std::uint32_t x,
                                  int k) {
  if (!basis.contains(x)) {
    throw std::domain_error("count_distance_pairs: x not in the basis");
  }
  std::int64_t count = 0;
  for (std::uint32_t y : basis.strings()) {
    if (WeightBasis::hamming(x, y) == 2 * k) ++count;
  }
  return count;
}

std::int64_t verify_young_counting(int n, int l, int j, int k, int m) {
  validate_sector({n, l});
  if (j < 0 || j > std::min(l, n - l)) {
    throw std::domain_error("verify_young_counting: j outside [0, min(l,n-l)]");
  }
  if (k < 0 || k > std::min(l, n - l)) {
    throw std::domain_error("verify_young_counting: k outside [0, min(l,n-l)]");
  }
  const WeightBasis basis(n, l);
  const std::uint32_t x0 = (1u << l) - 1;  // 0^{n-l} 1^l
  // First n-j positions = everything above the lowest j bits.
  const std::uint32_t first_rows_mask = ((1u << n) - 1) & ~((1u << j) - 1);

  std::int64_t count = 0;
  for (std::uint32_t y : basis.strings()) {
    if (WeightBasis::hamming(x0, y) != 2 * k) continue;
    if (__builtin_popcount(y & first_rows_mask) == m) ++count;
  }

  const auto& C = BinomialCache::shared();
  const std::int64_t closed =
      C.binom(n - l, k) * C.binom(l - j, m - k) * C.binom(j, l - m);
  if (count != closed) {
    throw std::runtime_error(
        "young counting mismatch at (n,l,j,k,m)=(" + std::to_string(n) + "," +
        std::to_string(l) + "," + std::to_string(j) + "," + std::to_string(k) +
        "," + std::to_string(m) + "): scan " + std::to_string(count) +
        " vs closed form " + std::to_string(closed));
  }
  return count;
}

}  // namespace permdist::oracle
