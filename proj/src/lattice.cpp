#include "hcount/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

namespace hcount {

namespace {

std::vector<QVec> gram_matrix(const std::vector<QVec>& basis) {
  size_t D = basis.size();
  std::vector<QVec> G(D, QVec(D, Quad(0)));
  for (size_t i = 0; i < D; ++i)
    for (size_t j = i; j < D; ++j) {
      Quad s(Rat(0));
      for (size_t k = 0; k < basis[i].size(); ++k)
        s += basis[i][k] * basis[j][k];
      G[i][j] = s;
      G[j][i] = s;
    }
  return G;
}

Quad det_quad(std::vector<QVec> A) {
  int n = static_cast<int>(A.size());
  Quad det(Rat(1));
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (A[row][col].sign() != 0) {
        piv = row;
        break;
      }
    if (piv < 0) return Quad(Rat(0));
    if (piv != col) {
      std::swap(A[piv], A[col]);
      det = -det;
    }
    det *= A[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (A[row][col].sign() == 0) continue;
      Quad f = A[row][col] / A[col][col];
      for (int k = col; k < n; ++k) A[row][k] -= f * A[col][k];
    }
  }
  return det;
}

Interval det_from_gram(const std::vector<QVec>& basis, int digits = 40) {
  Quad g = det_quad(gram_matrix(basis));
  if (g.sign() <= 0) throw std::invalid_argument("basis linearly dependent");
  if (g.is_rational()) return iv_sqrt(g.a, digits);
  return iv_sqrt(g.enclosure(digits), digits);
}

}  // namespace

QVec EuclideanLattice::vector_from_coords(const std::vector<BigInt>& a) const {
  QVec v(dim, Quad(Rat(0)));
  for (int k = 0; k < dim; ++k) {
    if (a[k] == 0) continue;
    Quad c{Rat(a[k])};
    for (int i = 0; i < dim; ++i) v[i] += c * basis[k][i];
  }
  return v;
}

Quad EuclideanLattice::norm_sq(const QVec& v) const {
  Quad s(Rat(0));
  for (const Quad& x : v) s += x * x;
  return s;
}

std::string EuclideanLattice::to_json() const {
  std::ostringstream os;
  os << "{\"dim\":" << dim << ",\"basis\":[";
  for (int k = 0; k < dim; ++k) {
    os << (k ? ",[" : "[");
    for (int i = 0; i < dim; ++i)
      os << (i ? "," : "") << to_double(basis[k][i]);
    os << "]";
  }
  os << "]}";
  return os.str();
}

EuclideanLattice integer_lattice(int D) {
  EuclideanLattice L;
  L.dim = D;
  L.M = 0;
  L.layout = CoordLayout{D, 0, 1};
  L.basis.assign(D, QVec(D, Quad(Rat(0))));
  for (int i = 0; i < D; ++i) L.basis[i][i] = Quad(Rat(1));
  L.det = Interval(Rat(1));
  return L;
}

EuclideanLattice lattice_from_basis(std::vector<QVec> basis, CoordLayout layout) {
  EuclideanLattice L;
  L.dim = static_cast<int>(basis.size());
  if (L.dim == 0 || layout.dim() != L.dim)
    throw std::invalid_argument("lattice basis/layout mismatch");
  for (const auto& v : basis)
    if (static_cast<int>(v.size()) != L.dim)
      throw std::invalid_argument("lattice basis not square");
  L.M = 0;
  for (const auto& v : basis)
    for (const Quad& x : v)
      if (x.b != 0) L.M = Quad::merge_radicand(Quad(Rat(0), Rat(1), L.M), x);
  L.basis = std::move(basis);
  L.layout = layout;
  L.det = det_from_gram(L.basis);
  return L;
}

EuclideanLattice minkowski_embed(const NumberField& K, const Submodule& O,
                                 int n) {
  if (n < 1) throw std::invalid_argument("minkowski_embed: n >= 1 required");
  if (!K.quad_exact)
    throw std::invalid_argument(
        "minkowski_embed: exact embeddings available only for degree <= 2");
  CoordLayout layout{K.r, K.s, n};
  int D = layout.dim();
  if (D != K.d * n) throw std::logic_error("layout dimension mismatch");

  // exact embedded images of the submodule basis
  std::vector<std::vector<Quad>> emb(K.d);  // emb[l] = flat block entries
  for (int l = 0; l < K.d; ++l) {
    std::vector<Rat> coords(K.d);
    for (int i = 0; i < K.d; ++i) coords[i] = Rat(O.basis[i][l]);
    FieldElem beta = K.from_integral_coords(coords);
    if (K.s == 0) {
      for (int i = 0; i < K.r; ++i) emb[l].push_back(K.embed_real_exact(beta, i));
    } else {
      auto [re, im] = K.embed_complex_exact(beta);
      emb[l].push_back(re);
      emb[l].push_back(im);
    }
  }

  EuclideanLattice L;
  L.dim = D;
  L.M = K.M;
  L.layout = layout;
  L.basis.assign(D, QVec(D, Quad(Rat(0))));
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < K.d; ++l) {
      QVec& v = L.basis[j * K.d + l];
      for (int i = 0; i < layout.blocks(); ++i) {
        int off = layout.offset(i, j);
        if (i < K.r) {
          v[off] = emb[l][i];
        } else {
          v[off] = emb[l][0];
          v[off + 1] = emb[l][1];
        }
      }
    }

  // det = (2^{-s} sqrt|disc| [O_K:O])^n, verified exactly on the square.
  Quad g = det_quad(gram_matrix(L.basis));
  Rat expected = pow_rat(Rat(abs_int(K.disc) * O.index * O.index, BigInt(1) << (2 * K.s)), n);
  if (!g.is_rational() || g.a != expected)
    throw std::logic_error("minkowski_embed: determinant check failed");
  L.det = iv_sqrt(expected, 40);
  return L;
}

// ---- flows ----------------------------------------------------------------

bool DiagonalFlow::admissible(const CoordLayout& layout) const {
  if (static_cast<int>(xi.size()) != layout.blocks()) return false;
  Rat p = 1;
  for (int i = 0; i < layout.blocks(); ++i) {
    if (xi[i] <= 0) return false;
    p *= pow_rat(xi[i], layout.block_dim(i));
  }
  return p == 1;
}

DiagonalFlow identity_flow(const CoordLayout& layout) {
  return DiagonalFlow{std::vector<Rat>(layout.blocks(), Rat(1))};
}

DiagonalFlow sample_flow(const CoordLayout& layout, std::mt19937_64& rng) {
  int B = layout.blocks();
  DiagonalFlow phi;
  phi.xi.assign(B, Rat(1));
  if (B == 1) return phi;  // the constraint forces the identity
  bool last_complex = layout.block_dim(B - 1) == 2;
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  Rat prod = 1;
  for (int i = 0; i + 1 < B; ++i) {
    // rational grid point near 2^u, positive by construction
    double u = expo(rng);
    long grid = std::lround(std::ldexp(std::pow(2.0, u), 20));
    if (grid < 1) grid = 1;
    Rat x(grid, BigInt(1) << 20);
    if (last_complex) x *= x;  // keep the residual product a perfect square
    phi.xi[i] = x;
    prod *= pow_rat(x, layout.block_dim(i));
  }
  if (last_complex) {
    BigInt nr, dr;
    if (!is_square(num(prod), &nr) || !is_square(den(prod), &dr))
      throw std::logic_error("sample_flow: residual product not a square");
    phi.xi[B - 1] = Rat(dr, nr);
  } else {
    phi.xi[B - 1] = Rat(1) / prod;
  }
  if (!phi.admissible(layout)) throw std::logic_error("sample_flow: inadmissible");
  return phi;
}

EuclideanLattice apply_flow(const EuclideanLattice& L, const DiagonalFlow& phi) {
  if (!phi.admissible(L.layout))
    throw std::invalid_argument("apply_flow: flow not admissible for layout");
  EuclideanLattice out = L;
  for (QVec& v : out.basis)
    for (int i = 0; i < L.layout.blocks(); ++i)
      for (int j = 0; j < L.layout.n; ++j) {
        int off = L.layout.offset(i, j);
        v[off] = Quad(phi.xi[i]) * v[off];
        if (L.layout.block_dim(i) == 2) v[off + 1] = Quad(phi.xi[i]) * v[off + 1];
      }
  // unit determinant: unchanged
  return out;
}

// ---- reduction and enumeration --------------------------------------------

namespace {

struct GSData {
  std::vector<QVec> mu;      // mu[i][j], j < i
  std::vector<Quad> B;       // |b_i*|^2
};

GSData gram_schmidt(const std::vector<QVec>& basis) {
  size_t D = basis.size();
  GSData gs;
  gs.mu.assign(D, QVec(D, Quad(Rat(0))));
  gs.B.assign(D, Quad(Rat(0)));
  std::vector<QVec> star(D, QVec(basis.empty() ? 0 : basis[0].size(), Quad(Rat(0))));
  for (size_t i = 0; i < D; ++i) {
    star[i] = basis[i];
    for (size_t j = 0; j < i; ++j) {
      Quad dot(Rat(0));
      for (size_t k = 0; k < star[i].size(); ++k) dot += basis[i][k] * star[j][k];
      Quad m = dot / gs.B[j];
      gs.mu[i][j] = m;
      for (size_t k = 0; k < star[i].size(); ++k) star[i][k] -= m * star[j][k];
    }
    Quad nsq(Rat(0));
    for (size_t k = 0; k < star[i].size(); ++k) nsq += star[i][k] * star[i][k];
    if (nsq.sign() <= 0) throw std::invalid_argument("dependent lattice basis");
    gs.B[i] = nsq;
  }
  return gs;
}

// Exact LLL with delta = 3/4; tracks the unimodular transform.
void lll_reduce(std::vector<QVec>& basis, std::vector<std::vector<BigInt>>& U) {
  size_t D = basis.size();
  U.assign(D, std::vector<BigInt>(D, 0));
  for (size_t i = 0; i < D; ++i) U[i][i] = 1;
  GSData gs = gram_schmidt(basis);
  auto size_reduce = [&](size_t i, size_t j) {
    Quad m = gs.mu[i][j];
    Quad half(Rat(1, 2));
    if (quad_abs(m) <= half) return;
    BigInt r = quad_floor(m + half);
    Quad c{Rat(r)};
    for (size_t k = 0; k < basis[i].size(); ++k) basis[i][k] -= c * basis[j][k];
    for (size_t k = 0; k < D; ++k) U[i][k] -= r * U[j][k];
    gs = gram_schmidt(basis);
  };
  size_t k = 1;
  size_t guard = 0;
  while (k < D) {
    if (++guard > 100000) throw std::runtime_error("LLL failed to terminate");
    for (size_t j = k; j-- > 0;) size_reduce(k, j);
    Quad lhs = gs.B[k];
    Quad rhs = (Quad(Rat(3, 4)) - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.B[k - 1];
    if ((lhs - rhs).sign() >= 0) {
      ++k;
    } else {
      std::swap(basis[k], basis[k - 1]);
      std::swap(U[k], U[k - 1]);
      gs = gram_schmidt(basis);
      if (k > 1) --k;
    }
  }
}

// integer range {a : (a - m)^2 <= W}, empty if W < 0
bool int_range(const Quad& m, const Quad& W, BigInt& lo, BigInt& hi) {
  int ws = W.sign();
  if (ws < 0) return false;
  auto pred = [&](const BigInt& a) {
    Quad d = Quad(Rat(a)) - m;
    return (d * d - W).sign() <= 0;
  };
  // approximate endpoints, then correct exactly
  Interval mi = m.enclosure(40);
  Interval wi = W.enclosure(40);
  Interval root = iv_sqrt(Interval(wi.lo < 0 ? Rat(0) : wi.lo, wi.hi), 40);
  lo = ceil_rat((mi - root).lo);
  hi = floor_rat((mi + root).hi);
  while (lo <= hi && !pred(lo)) ++lo;
  while (pred(lo - 1)) --lo;
  while (lo <= hi && !pred(hi)) --hi;
  while (pred(hi + 1)) ++hi;
  return lo <= hi;
}

}  // namespace

std::vector<std::vector<BigInt>> enumerate_in_ball(const EuclideanLattice& L,
                                                   const QVec& center,
                                                   const Quad& radius_sq) {
  int D = L.dim;
  // coordinates of the center with respect to the basis (solve over the field)
  std::vector<QVec> A(D, QVec(D));
  QVec rhs = center;
  for (int i = 0; i < D; ++i)
    for (int k = 0; k < D; ++k) A[i][k] = L.basis[k][i];
  // Gaussian elimination
  QVec gamma(D, Quad(Rat(0)));
  {
    std::vector<QVec> W = A;
    QVec x = rhs;
    for (int col = 0; col < D; ++col) {
      int piv = -1;
      for (int row = col; row < D; ++row)
        if (W[row][col].sign() != 0) {
          piv = row;
          break;
        }
      if (piv < 0) throw std::logic_error("singular lattice basis");
      std::swap(W[piv], W[col]);
      std::swap(x[piv], x[col]);
      for (int row = 0; row < D; ++row) {
        if (row == col) continue;
        if (W[row][col].sign() == 0) continue;
        Quad f = W[row][col] / W[col][col];
        for (int k = col; k < D; ++k) W[row][k] -= f * W[col][k];
        x[row] -= f * x[col];
      }
    }
    for (int i = 0; i < D; ++i) gamma[i] = x[i] / W[i][i];
  }

  GSData gs = gram_schmidt(L.basis);
  std::vector<std::vector<BigInt>> out;
  std::vector<Quad> shifted(D, Quad(Rat(0)));  // a_j - gamma_j at fixed levels
  std::vector<BigInt> a(D, 0);

  auto rec = [&](auto&& self, int k, const Quad& partial) -> void {
    Quad S(Rat(0));
    for (int j = k + 1; j < D; ++j) S += gs.mu[j][k] * shifted[j];
    Quad m = gamma[k] - S;
    Quad W = (radius_sq - partial) / gs.B[k];
    BigInt lo, hi;
    if (!int_range(m, W, lo, hi)) return;
    for (BigInt v = lo; v <= hi; ++v) {
      a[k] = v;
      shifted[k] = Quad(Rat(v)) - gamma[k];
      Quad t = shifted[k] + S;
      Quad np = partial + gs.B[k] * t * t;
      if ((np - radius_sq).sign() > 0) continue;
      if (k == 0)
        out.push_back(a);
      else
        self(self, k - 1, np);
    }
  };
  rec(rec, D - 1, Quad(Rat(0)));
  std::sort(out.begin(), out.end());
  return out;
}

// ---- box enumeration -------------------------------------------------------

std::vector<std::vector<BigInt>> enumerate_in_box(
    const EuclideanLattice& L, const std::vector<std::pair<Rat, Rat>>& bounds,
    std::uint64_t cap) {
  int D = L.dim;
  if (static_cast<int>(bounds.size()) != D)
    throw std::invalid_argument("enumerate_in_box: bounds size mismatch");
  for (const auto& [lo, hi] : bounds)
    if (lo > hi) return {};

  // inverse of the basis matrix (columns are basis vectors), over the field
  std::vector<QVec> inv(D, QVec(D, Quad(Rat(0))));
  {
    std::vector<QVec> W(D, QVec(2 * D, Quad(Rat(0))));
    for (int i = 0; i < D; ++i) {
      for (int k = 0; k < D; ++k) W[i][k] = L.basis[k][i];
      W[i][D + i] = Quad(Rat(1));
    }
    for (int col = 0; col < D; ++col) {
      int piv = -1;
      for (int row = col; row < D; ++row)
        if (W[row][col].sign() != 0) {
          piv = row;
          break;
        }
      if (piv < 0) throw std::logic_error("singular lattice basis");
      std::swap(W[piv], W[col]);
      Quad p = W[col][col];
      for (int k = 0; k < 2 * D; ++k) W[col][k] = W[col][k] / p;
      for (int row = 0; row < D; ++row) {
        if (row == col || W[row][col].sign() == 0) continue;
        Quad f = W[row][col];
        for (int k = 0; k < 2 * D; ++k) W[row][k] -= f * W[col][k];
      }
    }
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) inv[i][j] = W[i][D + j];
  }

  // coordinate ranges of a = inv * x over the box
  std::vector<BigInt> lo(D), hi(D);
  std::uint64_t total = 1;
  for (int k = 0; k < D; ++k) {
    Quad mn(Rat(0)), mx(Rat(0));
    for (int j = 0; j < D; ++j) {
      const Quad& c = inv[k][j];
      if (c.sign() >= 0) {
        mn += c * Quad(bounds[j].first);
        mx += c * Quad(bounds[j].second);
      } else {
        mn += c * Quad(bounds[j].second);
        mx += c * Quad(bounds[j].first);
      }
    }
    lo[k] = quad_ceil(mn);
    hi[k] = quad_floor(mx);
    if (hi[k] < lo[k]) return {};
    BigInt range = hi[k] - lo[k] + 1;
    if (range > BigInt(cap)) throw std::runtime_error("box too large");
    total *= range.convert_to<std::uint64_t>();
    if (total > cap) throw std::runtime_error("box too large");
  }

  // incremental odometer over [lo0, hi0] x [lo1, hi1] x ...: prefix[k]
  // accumulates the first k+1 coordinate contributions, so one step costs a
  // basis-vector addition instead of a full matrix multiply
  auto sweep = [&](const BigInt& lo0, const BigInt& hi0) {
    std::vector<BigInt> start(lo);
    start[0] = lo0;
    std::vector<QVec> low_step(D);
    for (int k = 0; k < D; ++k) {
      low_step[k] = QVec(D, Quad(Rat(0)));
      for (int i = 0; i < D; ++i)
        low_step[k][i] = Quad(Rat(start[k])) * L.basis[k][i];
    }
    std::vector<QVec> prefix(D);
    prefix[0] = low_step[0];
    for (int k = 1; k < D; ++k) {
      prefix[k] = prefix[k - 1];
      for (int i = 0; i < D; ++i) prefix[k][i] += low_step[k][i];
    }

    std::vector<std::vector<BigInt>> part;
    std::vector<BigInt> a(start);
    while (true) {
      const QVec& x = prefix[D - 1];
      bool inside = true;
      for (int i = 0; i < D && inside; ++i) {
        if ((x[i] - Quad(bounds[i].first)).sign() < 0 ||
            (x[i] - Quad(bounds[i].second)).sign() > 0)
          inside = false;
      }
      if (inside) part.push_back(a);
      int k = D - 1;
      while (k >= 0) {
        const BigInt& top = k == 0 ? hi0 : hi[k];
        if (a[k] < top) {
          ++a[k];
          for (int i = 0; i < D; ++i) prefix[k][i] += L.basis[k][i];
          for (int j = k + 1; j < D; ++j) {
            a[j] = lo[j];
            prefix[j] = prefix[j - 1];
            for (int i = 0; i < D; ++i) prefix[j][i] += low_step[j][i];
          }
          break;
        }
        --k;
      }
      if (k < 0) break;
    }
    return part;
  };

  // split the leading coordinate across workers; in-order concatenation
  // keeps the global lexicographic order
  BigInt range0 = hi[0] - lo[0] + 1;
  int workers = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  if (BigInt(workers) > range0) workers = range0.convert_to<int>();
  std::vector<std::vector<BigInt>> out;
  if (workers <= 1 || total < 4096) {
    out = sweep(lo[0], hi[0]);
  } else {
    std::vector<std::future<std::vector<std::vector<BigInt>>>> futs;
    BigInt chunk = range0 / workers, start0 = lo[0];
    for (int w = 0; w < workers; ++w) {
      BigInt end0 = w + 1 == workers ? hi[0] : start0 + chunk - 1;
      futs.push_back(std::async(std::launch::async, sweep, start0, end0));
      start0 = end0 + 1;
    }
    for (auto& f : futs) {
      auto part = f.get();
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
  }
  return out;  // odometer order is lexicographic
}

// ---- successive minima -----------------------------------------------------

SuccessiveMinima successive_minima(const EuclideanLattice& L, int cap) {
  if (L.dim > cap)
    throw std::invalid_argument("successive_minima: dimension cap exceeded");
  int D = L.dim;
  std::vector<QVec> red = L.basis;
  std::vector<std::vector<BigInt>> U;
  lll_reduce(red, U);

  // lambda_D <= max |b_i| over any basis, so this radius suffices
  Quad radius_sq(Rat(0));
  for (int i = 0; i < D; ++i) {
    Quad nsq(Rat(0));
    for (const Quad& x : red[i]) nsq += x * x;
    if (i == 0 || (nsq - radius_sq).sign() > 0) radius_sq = nsq;
  }

  EuclideanLattice reduced = L;
  reduced.basis = red;
  QVec origin(D, Quad(Rat(0)));
  auto pts = enumerate_in_ball(reduced, origin, radius_sq);

  struct Cand {
    Quad nsq;
    std::vector<BigInt> coords;  // wrt the original basis
    QVec vec;
  };
  std::vector<Cand> cands;
  for (const auto& ar : pts) {
    bool zero = true;
    for (const auto& c : ar)
      if (c != 0) zero = false;
    if (zero) continue;
    // convert to original-basis coordinates via the unimodular transform
    std::vector<BigInt> orig(D, 0);
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) orig[j] += ar[i] * U[i][j];
    QVec v = L.vector_from_coords(orig);
    cands.push_back({L.norm_sq(v), std::move(orig), std::move(v)});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    int c = (a.nsq - b.nsq).sign();
    if (c != 0) return c < 0;
    return a.coords < b.coords;
  });

  SuccessiveMinima out;
  std::vector<QVec> echelon;  // row echelon of selected vectors, field entries
  auto independent = [&](const QVec& v) {
    QVec w = v;
    for (const QVec& e : echelon) {
      int piv = -1;
      for (int i = 0; i < D; ++i)
        if (e[i].sign() != 0) {
          piv = i;
          break;
        }
      if (w[piv].sign() != 0) {
        Quad f = w[piv] / e[piv];
        for (int i = 0; i < D; ++i) w[i] -= f * e[i];
      }
    }
    for (int i = 0; i < D; ++i)
      if (w[i].sign() != 0) {
        echelon.push_back(w);
        return true;
      }
    return false;
  };
  for (const Cand& c : cands) {
    if (static_cast<int>(out.lambda_sq.size()) == D) break;
    if (independent(c.vec)) {
      out.lambda_sq.push_back(c.nsq);
      out.witnesses.push_back(c.vec);
      out.preimages.push_back(c.coords);
    }
  }
  if (static_cast<int>(out.lambda_sq.size()) != D)
    throw std::logic_error("successive_minima: enumeration radius too small");
  return out;
}

// ---- bounds ----------------------------------------------------------------

LipschitzCertificate box_certificate(
    const std::vector<std::pair<Rat, Rat>>& bounds) {
  LipschitzCertificate cert;
  cert.D = static_cast<int>(bounds.size());
  cert.M = 2 * cert.D;
  Rat side = 0;
  for (const auto& [lo, hi] : bounds) side = std::max(side, hi - lo);
  cert.L = to_double(side) * (1 + 1e-12);
  return cert;
}

double counting_bound(const LipschitzCertificate& cert,
                      const SuccessiveMinima& minima) {
  int D = cert.D;
  if (D != static_cast<int>(minima.lambda_sq.size()))
    throw std::invalid_argument("counting_bound: dimension mismatch");
  double c4 = std::pow(static_cast<double>(D), 1.5 * D * D);
  double best = 1.0;  // i = 0 term
  double term = 1.0;
  for (int i = 1; i < D; ++i) {
    double lam = std::sqrt(to_double(minima.lambda_sq[i - 1].enclosure(20).mid()));
    term *= cert.L / lam;
    best = std::max(best, term);
  }
  return c4 * cert.M * best;
}

double counting_bound_restricted(const LipschitzCertificate& cert,
                                 const SuccessiveMinima& minima, int a,
                                 double kappa_L) {
  int D = cert.D;
  if (a < 1 || a > D)
    throw std::invalid_argument("counting_bound_restricted: bad index");
  double c4 = std::pow(static_cast<double>(D), 1.5 * D * D);
  double c5 = c4 * std::pow(2 * 3.141592653589793 * D, D);
  double l1 = std::sqrt(to_double(minima.lambda_sq[0].enclosure(20).mid()));
  double la = std::sqrt(to_double(minima.lambda_sq[a - 1].enclosure(20).mid()));
  return c5 * cert.M * std::pow(kappa_L, D - 1) /
         (std::pow(l1, a - 1) * std::pow(la, D - a));
}

RestrictedLattice restrict_lattice(const EuclideanLattice& L,
                                   const SuccessiveMinima& minima, int a) {
  if (a < 1 || a > static_cast<int>(minima.lambda_sq.size()))
    throw std::invalid_argument("restrict_lattice: bad index");
  return RestrictedLattice{&L, a, minima.lambda_sq[a - 1]};
}

bool RestrictedLattice::contains(const std::vector<BigInt>& coords) const {
  QVec v = parent->vector_from_coords(coords);
  return (parent->norm_sq(v) - lambda_sq).sign() >= 0;
}

// ---- subalgebras and the critical index ------------------------------------

int subalgebra_degree(const NumberField& K, const std::vector<FieldElem>& gens) {
  int d = K.d;
  std::vector<std::vector<Rat>> echelon;  // reduced rows
  auto reduce_insert = [&](FieldElem v) {
    for (const auto& e : echelon) {
      int piv = -1;
      for (int i = 0; i < d; ++i)
        if (e[i] != 0) {
          piv = i;
          break;
        }
      if (v[piv] != 0) {
        Rat f = v[piv] / e[piv];
        for (int i = 0; i < d; ++i) v[i] -= f * e[i];
      }
    }
    for (int i = 0; i < d; ++i)
      if (v[i] != 0) {
        echelon.push_back(v);
        return true;
      }
    return false;
  };
  std::vector<FieldElem> elems{K.one()};
  reduce_insert(K.one());
  for (const auto& g : gens)
    if (reduce_insert(g)) elems.push_back(g);
  // close under multiplication by the generators
  bool grew = true;
  while (grew && static_cast<int>(echelon.size()) < d) {
    grew = false;
    std::vector<FieldElem> cur = elems;
    for (const auto& e : cur)
      for (const auto& g : gens) {
        FieldElem p = K.mul(e, g);
        if (reduce_insert(p)) {
          elems.push_back(p);
          grew = true;
        }
      }
  }
  return static_cast<int>(echelon.size());
}

CriticalIndex critical_index(const std::vector<FieldElem>& witnesses,
                             const ExtensionContext& ctx) {
  if (witnesses.empty())
    throw std::invalid_argument("critical_index: no witnesses");
  const NumberField& K = ctx.K;
  if (!ctx.k_generator_in_K)
    throw std::invalid_argument("critical_index: context lacks the embedding");
  FieldElem theta1 = witnesses[0];
  if (K.is_zero(theta1))
    throw std::invalid_argument("critical_index: zero leading witness");
  FieldElem inv1 = K.inv(theta1);

  std::vector<FieldElem> gens{*ctx.k_generator_in_K};
  CriticalIndex out;
  out.witnesses = witnesses;
  int prev_deg = subalgebra_degree(K, gens);  // degree of k itself
  int g_deg = prev_deg;
  for (size_t j = 0; j < witnesses.size(); ++j) {
    if (j > 0) gens.push_back(K.mul(witnesses[j], inv1));
    int deg = subalgebra_degree(K, gens);
    if (deg == K.d) {
      out.l = static_cast<int>(j + 1);
      out.g = g_deg / ctx.m;
      return out;
    }
    g_deg = deg;
  }
  throw std::invalid_argument("critical_index: witnesses do not generate K");
}

// ---- inequality checks -----------------------------------------------------

MinimaCheckReport verify_minima_inequalities(
    const NumberField& K, const Submodule& O, const ExtensionContext& ctx,
    const std::vector<DiagonalFlow>& flows,
    std::optional<std::pair<Quad, bool>> delta_g_sq) {
  MinimaCheckReport report;
  EuclideanLattice base = minkowski_embed(K, O, 1);
  int d = K.d;
  // eta^2 = ideal_norm^{2/d}, exact for d in {1, 2}
  Rat eta_sq;
  if (d == 1)
    eta_sq = Rat(O.ideal_norm * O.ideal_norm);
  else if (d == 2)
    eta_sq = Rat(O.ideal_norm);
  else
    throw std::invalid_argument("verify_minima_inequalities: degree cap");

  for (const DiagonalFlow& phi : flows) {
    MinimaCheckRecord rec;
    rec.flow = phi;
    EuclideanLattice L = apply_flow(base, phi);
    SuccessiveMinima mins = successive_minima(L);
    rec.lambda1_sq = mins.lambda_sq[0];
    rec.lower_bound_holds =
        (mins.lambda_sq[0] - Quad(Rat(d, 2) * eta_sq)).sign() >= 0;
    if (!rec.lower_bound_holds) ++report.failures;

    if (delta_g_sq) {
      std::vector<FieldElem> thetas;
      for (const auto& pre : mins.preimages) {
        std::vector<Rat> c(d);
        for (int i = 0; i < d; ++i) {
          c[i] = 0;
          for (int j = 0; j < d; ++j) c[i] += Rat(O.basis[i][j] * pre[j]);
        }
        thetas.push_back(K.from_integral_coords(c));
      }
      CriticalIndex ci = critical_index(thetas, ctx);
      rec.l = ci.l;
      rec.g = ci.g;
      rec.critical_checked = true;
      // lambda_l^2 >= eta^2 delta_g^2 / (2 e^2 d^2)
      Quad rhs = Quad(eta_sq) * delta_g_sq->first *
                 Quad(Rat(1, 2 * BigInt(ctx.e) * ctx.e * d * d));
      rec.critical_holds = (mins.lambda_sq[ci.l - 1] - rhs).sign() >= 0;
      rec.critical_caveat = !delta_g_sq->second;
      if (!rec.critical_holds && !rec.critical_caveat) ++report.failures;
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace hcount
