#include "hcount/numfield.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cctype>
#include <sstream>

namespace hcount {

namespace {

// ---- parsing ---------------------------------------------------------------

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

ZPoly parse_dense(const std::string& line) {
  ZPoly f;
  std::string body = strip(line);
  body = body.substr(1, body.size() - 2);  // strip [ ]
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) f.push_back(BigInt(strip(tok)));
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

ZPoly parse_sparse(const std::string& line) {
  // Terms like "3x^4", "-x^2", "+ 7", "x"; whitespace and '*' are ignored.
  std::string s;
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s += c;
  std::vector<std::pair<long, BigInt>> terms;
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+') ++i;
    else if (s[i] == '-') { sign = -1; ++i; }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      digits += s[i++];
    BigInt coeff = digits.empty() ? BigInt(1) : BigInt(digits);
    long exp = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          e += s[i++];
        if (e.empty()) throw std::invalid_argument("bad exponent in polynomial");
        exp = std::stol(e);
      }
    } else if (digits.empty()) {
      throw std::invalid_argument("cannot parse polynomial term");
    }
    terms.emplace_back(exp, sign * coeff);
  }
  if (terms.empty()) throw std::invalid_argument("empty polynomial");
  long dmax = 0;
  for (auto& [e, c] : terms) dmax = std::max(dmax, e);
  ZPoly f(dmax + 1, BigInt(0));
  for (auto& [e, c] : terms) f[e] += c;
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Rat parse_rat(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) return Rat(BigInt(strip(tok)));
  return Rat(BigInt(strip(tok.substr(0, slash))),
             BigInt(strip(tok.substr(slash + 1))));
}

std::vector<FieldElem> parse_basis(const std::string& val) {
  // [[a,b,...],[...],...] with rational entries "p/q"
  std::vector<FieldElem> rows;
  FieldElem cur;
  std::string tok;
  int depth = 0;
  for (char c : val) {
    if (c == '[') {
      ++depth;
      if (depth == 2) cur.clear();
    } else if (c == ']' || c == ',') {
      if (!strip(tok).empty()) cur.push_back(parse_rat(tok));
      tok.clear();
      if (c == ']') {
        if (depth == 2) rows.push_back(cur);
        --depth;
      }
    } else {
      tok += c;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced basis brackets");
  return rows;
}

}  // namespace

NumberFieldSpec parse_field_spec(const std::string& text) {
  NumberFieldSpec spec;
  std::stringstream ss(text);
  std::string line;
  bool have_poly = false;
  while (std::getline(ss, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("basis=", 0) == 0) {
      spec.basis = parse_basis(line.substr(6));
    } else if (line.rfind("disc=", 0) == 0) {
      spec.disc = BigInt(strip(line.substr(5)));
    } else if (!have_poly) {
      spec.defining = line[0] == '[' ? parse_dense(line) : parse_sparse(line);
      have_poly = true;
    } else {
      throw std::invalid_argument("unexpected line in field spec: " + line);
    }
  }
  if (!have_poly) throw std::invalid_argument("field spec has no polynomial");
  return spec;
}

// ---- field arithmetic ------------------------------------------------------

FieldElem NumberField::one() const {
  FieldElem e(d, Rat(0));
  e[0] = 1;
  return e;
}

FieldElem NumberField::from_rat(const Rat& x) const {
  FieldElem e(d, Rat(0));
  e[0] = x;
  return e;
}

FieldElem NumberField::add(const FieldElem& x, const FieldElem& y) const {
  FieldElem z(d);
  for (int i = 0; i < d; ++i) z[i] = x[i] + y[i];
  return z;
}

FieldElem NumberField::sub(const FieldElem& x, const FieldElem& y) const {
  FieldElem z(d);
  for (int i = 0; i < d; ++i) z[i] = x[i] - y[i];
  return z;
}

FieldElem NumberField::mul(const FieldElem& x, const FieldElem& y) const {
  QPoly p = hcount::mul(QPoly(x.begin(), x.end()), QPoly(y.begin(), y.end()));
  normalize(p);
  QPoly f = to_qpoly(defining), q, r;
  if (!p.empty() && degree(p) >= d)
    divmod(p, f, q, r);
  else
    r = p;
  FieldElem z(d, Rat(0));
  for (size_t i = 0; i < r.size(); ++i) z[i] = r[i];
  return z;
}

bool NumberField::is_zero(const FieldElem& x) const {
  for (const auto& c : x)
    if (c != 0) return false;
  return true;
}

bool NumberField::is_rational(const FieldElem& x) const {
  for (int i = 1; i < d; ++i)
    if (x[i] != 0) return false;
  return true;
}

FieldElem NumberField::inv(const FieldElem& x) const {
  if (is_zero(x)) throw std::domain_error("field inverse of zero");
  // extended Euclid in Q[t]: u*x + v*f = gcd = const
  QPoly a = to_qpoly(defining), b(x.begin(), x.end());
  normalize(b);
  QPoly u0{}, u1{Rat(1)};  // coefficients of b in the combination
  while (true) {
    if (b.empty()) throw std::logic_error("inverse: defining poly not coprime");
    if (degree(b) == 0) {
      QPoly res = scale(u1, Rat(1) / b[0]);
      FieldElem z(d, Rat(0));
      QPoly q, r, f = to_qpoly(defining);
      if (degree(res) >= d) {
        divmod(res, f, q, r);
        res = r;
      }
      for (size_t i = 0; i < res.size(); ++i) z[i] = res[i];
      return z;
    }
    QPoly q, r;
    divmod(a, b, q, r);
    QPoly u2 = hcount::add(u0, scale(hcount::mul(q, u1), Rat(-1)));
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
}

Quad NumberField::embed_real_exact(const FieldElem& x, int i) const {
  if (!quad_exact || s != 0)
    throw std::logic_error("embed_real_exact: no exact real embeddings");
  Quad theta(theta_a, i == 0 ? theta_b : -theta_b, M);
  if (d == 1) theta = Quad(theta_a);
  Quad v(Rat(0));
  for (int j = d - 1; j >= 0; --j) v = v * theta + Quad(x[j]);
  return v;
}

std::pair<Quad, Quad> NumberField::embed_complex_exact(const FieldElem& x) const {
  if (!quad_exact || s != 1)
    throw std::logic_error("embed_complex_exact: not an imaginary quadratic");
  // t = theta_a + i theta_b sqrt(M); x = x0 + x1 t
  return {Quad(x[0] + x[1] * theta_a), Quad(Rat(0), x[1] * theta_b, M)};
}

Interval NumberField::embed_iv(const FieldElem& x, int i, int digits) {
  if (quad_exact && s == 0) return embed_real_exact(x, i).enclosure(digits);
  if (i >= r) throw std::invalid_argument("embed_iv: not a real embedding");
  roots.real_roots[i].refine_below(pow_rat(Rat(1, 10), digits));
  return eval(QPoly(x.begin(), x.end()), roots.real_roots[i].iv());
}

std::pair<Interval, Interval> NumberField::embed_complex_iv(const FieldElem& x,
                                                            int i, int digits) {
  if (quad_exact && s == 1) {
    auto [re, im] = embed_complex_exact(x);
    return {re.enclosure(digits), im.enclosure(digits)};
  }
  if (i < r || i >= r + s)
    throw std::invalid_argument("embed_complex_iv: index out of range");
  const ComplexRoot& root = roots.complex_roots[i - r];
  Interval re{Rat(0), Rat(0)}, im{Rat(0), Rat(0)};
  for (int j = d - 1; j >= 0; --j) {
    Interval nre = re * root.re - im * root.im + Interval(x[j]);
    Interval nim = re * root.im + im * root.re;
    re = nre;
    im = nim;
  }
  return {re, im};
}

Interval NumberField::minkowski_constant(int digits) const {
  Interval v(Rat(BigInt(1) << r));
  Interval pi2 = Rat(2) * iv_pi(digits);
  for (int i = 0; i < s; ++i) v = v * pi2;
  return v / iv_sqrt(Rat(abs_int(disc)), digits);
}

// ---- linear algebra helpers ------------------------------------------------

namespace {

// Solves W c = x for square rational W by Gaussian elimination.
std::vector<Rat> gauss_solve(std::vector<std::vector<Rat>> W,
                             std::vector<Rat> x) {
  int n = static_cast<int>(W.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (W[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) throw std::domain_error("gauss_solve: singular matrix");
    std::swap(W[piv], W[col]);
    std::swap(x[piv], x[col]);
    for (int row = 0; row < n; ++row) {
      if (row == col || W[row][col] == 0) continue;
      Rat fct = W[row][col] / W[col][col];
      for (int k = col; k < n; ++k) W[row][k] -= fct * W[col][k];
      x[row] -= fct * x[col];
    }
  }
  std::vector<Rat> c(n);
  for (int i = 0; i < n; ++i) c[i] = x[i] / W[i][i];
  return c;
}

Rat det_rat(std::vector<std::vector<Rat>> W) {
  int n = static_cast<int>(W.size());
  Rat det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (W[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(W[piv], W[col]);
      det = -det;
    }
    det *= W[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (W[row][col] == 0) continue;
      Rat fct = W[row][col] / W[col][col];
      for (int k = col; k < n; ++k) W[row][k] -= fct * W[col][k];
    }
  }
  return det;
}

// Matrix with basis elements as columns (power coordinates as rows).
std::vector<std::vector<Rat>> basis_matrix(const NumberField& K) {
  std::vector<std::vector<Rat>> W(K.d, std::vector<Rat>(K.d));
  for (int j = 0; j < K.d; ++j)
    for (int i = 0; i < K.d; ++i) W[i][j] = K.integral_basis[j][i];
  return W;
}

}  // namespace

std::vector<Rat> NumberField::to_integral_coords(const FieldElem& x) const {
  return gauss_solve(basis_matrix(*this), std::vector<Rat>(x.begin(), x.end()));
}

FieldElem NumberField::from_integral_coords(const std::vector<Rat>& c) const {
  FieldElem x(d, Rat(0));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) x[i] += c[j] * integral_basis[j][i];
  return x;
}

// ---- build_field -----------------------------------------------------------

NumberField build_field(const NumberFieldSpec& spec) {
  NumberField K;
  K.defining = spec.defining;
  K.d = static_cast<int>(spec.defining.size()) - 1;
  if (K.d < 1) throw std::invalid_argument("defining polynomial is constant");
  if (spec.defining.back() != 1)
    throw std::invalid_argument("defining polynomial must be monic");
  if (!is_irreducible_monic(spec.defining))
    throw std::invalid_argument("defining polynomial is reducible");

  K.roots = isolate_all_roots(spec.defining);
  // real embeddings ordered by descending root, so sigma_1 maps the
  // presented generator (largest root) to itself
  std::reverse(K.roots.real_roots.begin(), K.roots.real_roots.end());
  K.r = static_cast<int>(K.roots.real_roots.size());
  K.s = static_cast<int>(K.roots.complex_roots.size());
  K.unit_rank = K.r + K.s - 1;

  if (K.d == 1) {
    K.disc = 1;
    K.integral_basis = {K.one()};
    K.quad_exact = true;
    K.M = 0;
    K.theta_a = Rat(-spec.defining[0]);
    K.theta_b = 0;
  } else if (K.d == 2) {
    BigInt c1 = spec.defining[1], c0 = spec.defining[0];
    BigInt discf = c1 * c1 - 4 * c0;
    BigInt mm;
    BigInt m0 = squarefree_kernel(discf, &mm);
    bool one_mod4 = ((m0 % 4) + 4) % 4 == 1;
    K.disc = one_mod4 ? m0 : 4 * m0;
    K.quad_exact = true;
    K.M = abs_int(m0);
    K.theta_a = Rat(-c1, 2);
    K.theta_b = Rat(mm, 2);
    // sqrt(m0) = (2t + c1)/mm in power coordinates
    FieldElem sq{Rat(c1, mm), Rat(2, mm)};
    FieldElem omega;
    if (one_mod4) {
      omega = {(Rat(1) + sq[0]) / 2, sq[1] / 2};
    } else {
      omega = sq;
    }
    K.integral_basis = {K.one(), omega};
  } else {
    if (!spec.basis || !spec.disc)
      throw std::invalid_argument(
          "degree > 2 needs an integral basis and field discriminant");
    K.integral_basis = *spec.basis;
    K.disc = *spec.disc;
    if (static_cast<int>(K.integral_basis.size()) != K.d)
      throw std::invalid_argument("integral basis has wrong size");
    for (const auto& b : K.integral_basis)
      if (static_cast<int>(b.size()) != K.d)
        throw std::invalid_argument("integral basis element has wrong size");
    // det^2 * disc(Z[t]) must equal the claimed field discriminant.
    Rat dt = det_rat(basis_matrix(K));
    if (dt == 0) throw std::invalid_argument("integral basis is singular");
    Rat check = dt * dt * Rat(poly_disc(spec.defining));
    if (check != Rat(K.disc))
      throw std::invalid_argument("discriminant inconsistent with basis");
    // the order must contain 1 and t and be closed under multiplication
    auto integral = [&](const FieldElem& x) {
      for (const Rat& c : K.to_integral_coords(x))
        if (den(c) != 1) return false;
      return true;
    };
    FieldElem t(K.d, Rat(0));
    t[1] = 1;
    if (!integral(K.one()) || !integral(t))
      throw std::invalid_argument("basis does not span an order over Z[t]");
    for (int i = 0; i < K.d; ++i)
      for (int j = i; j < K.d; ++j)
        if (!integral(K.mul(K.integral_basis[i], K.integral_basis[j])))
          throw std::invalid_argument("basis is not multiplicatively closed");
  }
  return K;
}

// ---- submodules ------------------------------------------------------------

namespace {

// Hermite-style column reduction; returns |det| of the spanned lattice.
BigInt hnf_norm(std::vector<std::vector<BigInt>> A) {
  int d = static_cast<int>(A.size());
  int n = d == 0 ? 0 : static_cast<int>(A[0].size());
  int col = 0;
  BigInt det = 1;
  for (int row = 0; row < d; ++row) {
    // Euclidean elimination across columns col..n-1 on this row.
    while (true) {
      int nz = -1;
      for (int j = col + 1; j < n; ++j)
        if (A[row][j] != 0) {
          nz = j;
          break;
        }
      if (nz < 0) break;
      if (A[row][col] == 0) {
        for (int i = 0; i < d; ++i) std::swap(A[i][col], A[i][nz]);
        continue;
      }
      BigInt q = A[row][nz] / A[row][col];
      for (int i = 0; i < d; ++i) A[i][nz] -= q * A[i][col];
      if (A[row][nz] != 0)
        for (int i = 0; i < d; ++i) std::swap(A[i][col], A[i][nz]);
    }
    if (A[row][col] == 0)
      throw std::invalid_argument("submodule basis not full rank");
    det *= abs_int(A[row][col]);
    ++col;
  }
  return det;
}

}  // namespace

Submodule submodule(const NumberField& K,
                    const std::vector<std::vector<BigInt>>& basis) {
  int d = K.d;
  if (static_cast<int>(basis.size()) != d)
    throw std::invalid_argument("submodule basis has wrong size");
  Submodule O;
  O.basis = basis;
  std::vector<std::vector<Rat>> B(d, std::vector<Rat>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B[i][j] = Rat(basis[i][j]);
  Rat dt = det_rat(B);
  if (dt == 0) throw std::invalid_argument("submodule basis is singular");
  O.index = abs_int(num(dt));
  if (den(dt) != 1) throw std::logic_error("submodule index not integral");

  // Ideal generated by the submodule: Z-span of beta_i * omega_j.
  std::vector<std::vector<BigInt>> gens(d);
  for (int jb = 0; jb < d; ++jb) {
    std::vector<Rat> coords(d);
    for (int i = 0; i < d; ++i) coords[i] = Rat(basis[i][jb]);
    FieldElem beta = K.from_integral_coords(coords);
    for (int jw = 0; jw < d; ++jw) {
      FieldElem prod = K.mul(beta, K.integral_basis[jw]);
      std::vector<Rat> pc = K.to_integral_coords(prod);
      for (int i = 0; i < d; ++i) {
        if (den(pc[i]) != 1)
          throw std::logic_error("ideal generator with non-integer coords");
        gens[i].push_back(num(pc[i]));
      }
    }
  }
  O.ideal_norm = hnf_norm(gens);
  O.eta = iv_pow(Rat(O.ideal_norm), 1, d, 40);
  return O;
}

Submodule maximal_order(const NumberField& K) {
  std::vector<std::vector<BigInt>> id(K.d, std::vector<BigInt>(K.d, 0));
  for (int i = 0; i < K.d; ++i) id[i][i] = 1;
  return submodule(K, id);
}

// ---- extensions ------------------------------------------------------------

std::vector<Rat> rational_roots_public(const QPoly& f);

namespace {

using BF = boost::multiprecision::cpp_bin_float_100;

// Best rational approximation p/q to x with |x - p/q| <= eps, by continued
// fractions.
Rat rationalize(BF x, const BF& eps) {
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BF orig = x;
  for (int it = 0; it < 200; ++it) {
    BF fl = boost::multiprecision::floor(x);
    BigInt a = fl.convert_to<BigInt>();
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    BF approx = BF(p2.convert_to<BF>()) / BF(q2.convert_to<BF>());
    if (boost::multiprecision::fabs(orig - approx) <= eps) return Rat(p2, q2);
    BF frac = x - fl;
    if (frac == 0) return Rat(p2, q2);
    x = 1 / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  throw std::runtime_error("rationalize: no convergent within tolerance");
}

// Looks for w in K with w^2 = c (rational c).  Exact for quadratic K;
// for totally real K of higher degree, solved by matching sign patterns of
// the embeddings and verifying the reconstruction exactly.
std::optional<FieldElem> sqrt_in_field(NumberField& K, const Rat& c) {
  if (c == 0) return K.zero();
  if (K.d == 1) {
    BigInt nr, dr;
    if (is_square(num(c), &nr) && is_square(den(c), &dr))
      return K.from_rat(Rat(nr, dr));
    return std::nullopt;
  }
  if (K.d == 2) {
    // (u0 + u1 t)^2 = c with t^2 = -c1 t - c0
    BigInt c1 = K.defining[1], c0 = K.defining[0];
    BigInt nr, dr;
    if (is_square(num(c), &nr) && is_square(den(c), &dr))
      return K.from_rat(Rat(nr, dr));
    Rat discf = Rat(c1 * c1 - 4 * c0);
    Rat u1sq = 4 * c / discf;
    if (u1sq > 0 && is_square(num(u1sq), &nr) && is_square(den(u1sq), &dr)) {
      Rat u1(nr, dr);
      return FieldElem{u1 * Rat(c1, 2), u1};
    }
    return std::nullopt;
  }
  if (K.s != 0 || c < 0) return std::nullopt;  // only the totally real case
  int d = K.d;
  // high-precision embedding matrix V[i][j] = sigma_i(t^j)
  std::vector<BF> theta(d);
  for (int i = 0; i < d; ++i) {
    K.roots.real_roots[i].refine_below(Rat(1, BigInt(1) << 200));
    Interval iv = K.roots.real_roots[i].iv();
    theta[i] = iv.mid().convert_to<BF>();
  }
  BF sq = boost::multiprecision::sqrt(BF(c.convert_to<BF>()));
  // w and -w are interchangeable: pin the first sign.
  for (long mask = 0; mask < (1L << (d - 1)); ++mask) {
    std::vector<std::vector<BF>> V(d, std::vector<BF>(d));
    std::vector<BF> rhs(d);
    for (int i = 0; i < d; ++i) {
      BF p = 1;
      for (int j = 0; j < d; ++j) {
        V[i][j] = p;
        p *= theta[i];
      }
      rhs[i] = (i > 0 && ((mask >> (i - 1)) & 1)) ? -sq : sq;
    }
    // Gaussian elimination in floating point.
    bool singular = false;
    for (int col = 0; col < d && !singular; ++col) {
      int piv = col;
      for (int row = col + 1; row < d; ++row)
        if (boost::multiprecision::fabs(V[row][col]) >
            boost::multiprecision::fabs(V[piv][col]))
          piv = row;
      if (V[piv][col] == 0) {
        singular = true;
        break;
      }
      std::swap(V[piv], V[col]);
      std::swap(rhs[piv], rhs[col]);
      for (int row = 0; row < d; ++row) {
        if (row == col) continue;
        BF f = V[row][col] / V[col][col];
        for (int k = col; k < d; ++k) V[row][k] -= f * V[col][k];
        rhs[row] -= f * rhs[col];
      }
    }
    if (singular) continue;
    FieldElem w(d);
    bool ok = true;
    BF eps = boost::multiprecision::pow(BF(10), -40);
    for (int j = 0; j < d && ok; ++j) {
      try {
        w[j] = rationalize(rhs[j] / V[j][j], eps);
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) continue;
    FieldElem w2 = K.mul(w, w);
    if (w2 == K.from_rat(c)) return w;
  }
  return std::nullopt;
}

bool quartic_has_quadratic_subfield(const ZPoly& f) {
  // resolvent cubic of x^4 + b x^3 + c x^2 + d x + e
  Rat b(f[3]), c(f[2]), dd(f[1]), e(f[0]);
  QPoly res{-(b * b * e - 4 * c * e + dd * dd), b * dd - 4 * e, -c, Rat(1)};
  return !rational_roots_public(res).empty();
}

}  // namespace

// small public shim so the anonymous helper above can reuse the root finder
std::vector<Rat> rational_roots_public(const QPoly& f) {
  std::vector<Rat> out;
  for (const auto& rr : isolate_real_roots(f))
    if (rr.exact) out.push_back(rr.value);
  return out;
}

ExtensionContext extension_context(const NumberField& K, const NumberField& k) {
  ExtensionContext ctx;
  ctx.K = K;
  ctx.k = k;
  ctx.m = k.d;
  if (K.d % k.d != 0)
    throw std::invalid_argument("degree of k does not divide degree of K");
  ctx.e = K.d / k.d;

  // locate k inside K
  if (k.d == 1) {
    ctx.k_generator_in_K = ctx.K.from_rat(Rat(-k.defining[0]));
  } else if (k.defining == K.defining) {
    FieldElem t(K.d, Rat(0));
    t[1] = 1;
    ctx.k_generator_in_K = t;
  } else if (k.d == 2) {
    // root of x^2 + p x + q in K: (-p + w)/2 with w^2 = p^2 - 4q
    Rat p(k.defining[1]), q(k.defining[0]);
    auto w = sqrt_in_field(ctx.K, p * p - 4 * q);
    if (!w) throw std::invalid_argument("k does not embed in K");
    FieldElem g = ctx.K.from_rat(-p / 2);
    for (int i = 0; i < K.d; ++i) g[i] += (*w)[i] / 2;
    ctx.k_generator_in_K = g;
  } else {
    throw std::invalid_argument(
        "embedding verification beyond quadratic base fields is unsupported");
  }

  // degrees of proper intermediate fields over k
  ctx.subfield_degrees.clear();
  if (ctx.e == 1) {
    // trivial extension: the degree set is {1} by convention
    ctx.subfield_degrees.push_back(1);
    ctx.exact_degrees = true;
  } else {
    ctx.subfield_degrees.push_back(1);
    bool prime = true;
    for (int t = 2; t * t <= ctx.e; ++t)
      if (ctx.e % t == 0) prime = false;
    if (prime) {
      ctx.exact_degrees = true;
    } else if (k.d == 1 && K.d == 4) {
      if (quartic_has_quadratic_subfield(K.defining))
        ctx.subfield_degrees.push_back(2);
      ctx.exact_degrees = true;
    } else {
      for (int g = 2; g < ctx.e; ++g)
        if (ctx.e % g == 0) ctx.subfield_degrees.push_back(g);
      ctx.exact_degrees = false;
    }
  }
  return ctx;
}

}  // namespace hcount
