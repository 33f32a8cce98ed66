#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hcount/regions.hpp"

using namespace hcount;

namespace {

NumberField quad_field(long c0) {
  NumberFieldSpec spec;
  spec.defining = {BigInt(c0), BigInt(0), BigInt(1)};
  return build_field(spec);
}

RegionSpec two_real(const Rat& T, std::vector<int> I = {0, 1}) {
  RegionSpec spec;
  spec.r = 2;
  spec.s = 0;
  spec.n = 1;
  spec.I = std::move(I);
  spec.T = T;
  return spec;
}

// Brute-force S_I count for sigma(O_{Q(sqrt2)}) with integral T.
long long sqrt2_oracle(long T, const std::vector<int>& I) {
  auto in_I = [&](int i) {
    return std::find(I.begin(), I.end(), i) != I.end();
  };
  long long count = 0;
  for (long a = -T; a <= T; ++a)
    for (long b = -T; b <= T; ++b) {
      Quad z1(Rat(a), Rat(b), 2), z2(Rat(a), Rat(-b), 2);
      Quad m1 = quad_abs(z1), m2 = quad_abs(z2);
      bool ok = true;
      Quad prod(1);
      Quad mods[2] = {m1, m2};
      for (int i = 0; i < 2; ++i) {
        if (in_I(i)) {
          if (mods[i] < Quad(1)) ok = false;
          prod *= mods[i];
        } else if (mods[i] >= Quad(1)) {
          ok = false;
        }
      }
      if (ok && prod <= Quad(Rat(T))) ++count;
    }
  return count;
}

double laguerre_direct(int q, double x) {
  double sum = 0, binom = 1, fact = 1, pw = 1;
  for (int i = 0; i <= q; ++i) {
    sum += binom / fact * pw;
    binom = binom * (q - i) / (i + 1);
    fact *= i + 1;
    pw *= -x;
  }
  return sum;
}

}  // namespace

TEST_CASE("membership in Z and S_I") {
  CoordLayout lay{2, 0, 1};
  QVec z{Quad(3), Quad(Rat(1, 2))};
  CHECK(member_Z(z, lay, Rat(3)));
  CHECK_FALSE(member_Z(z, lay, Rat(29, 10)));
  QVec zero{Quad(0), Quad(0)};
  CHECK(member_Z(zero, lay, Rat(1)));

  CHECK(member_SI(z, two_real(Rat(3), {0})));
  CHECK_FALSE(member_SI(z, two_real(Rat(3), {0, 1})));
  CHECK_FALSE(member_SI(z, two_real(Rat(3), {1})));
  // zero is accepted only by the empty set
  CHECK(member_SI(zero, two_real(Rat(5), {})));
  CHECK_FALSE(member_SI(zero, two_real(Rat(5), {0})));
  // |z_i| = 1 counts toward I
  QVec edge{Quad(1), Quad(Rat(1, 2))};
  CHECK(member_SI(edge, two_real(Rat(3), {0})));
  CHECK_FALSE(member_SI(edge, two_real(Rat(3), {})));

  // complex block: modulus decides, exactly
  CoordLayout cl{0, 1, 1};
  QVec w{Quad(Rat(3, 5)), Quad(Rat(4, 5))};  // |w| = 1
  RegionSpec cs;
  cs.r = 0;
  cs.s = 1;
  cs.I = {0};
  cs.T = Rat(2);
  CHECK(member_Z(w, cl, Rat(1)));
  CHECK(member_SI(w, cs));
}

TEST_CASE("volume formulas") {
  double T = 5;
  CHECK(vol_SI(2, 0, 1, 2, T) ==
        doctest::Approx(4 * (1 - T + T * std::log(T))).epsilon(1e-12));
  CHECK(vol_SI(2, 0, 1, 1, T) == doctest::Approx(4 * (T - 1)).epsilon(1e-12));
  CHECK(vol_SI(0, 1, 1, 1, T) == doctest::Approx(M_PI * (T - 1)).epsilon(1e-12));
  CHECK(vol_SI(2, 0, 1, 2, 1.0) == doctest::Approx(0.0));
  CHECK(vol_SI(2, 0, 1, 1, 1.0) == doctest::Approx(0.0));
  CHECK(vol_SI(2, 0, 1, 0, T) == doctest::Approx(4.0));
  CHECK(vol_Z(1, 0, 1, T) == doctest::Approx(2 * T).epsilon(1e-12));
  CHECK(vol_Z(2, 0, 1, T) ==
        doctest::Approx(4 * T * (1 + std::log(T))).epsilon(1e-12));
  CHECK_THROWS(vol_Z(1, 0, 1, 0.5));
  CHECK_THROWS(vol_SI(1, 0, 1, 1, 0.5));
}

TEST_CASE("vol_Z identities") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> rdist(0, 3), ndist(1, 3);
  std::uniform_real_distribution<double> udist(0.0, 10.0);
  int laguerre_checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int r = rdist(rng), s = rdist(rng), n = ndist(rng);
    if (r + s < 1) r = 1;
    double T = std::exp(udist(rng));
    int q = r + s - 1;
    double direct = vol_Z(r, s, n, T);
    double lag = std::pow(2.0, r * n) * std::pow(M_PI, s * n) *
                 std::pow(T, n) * laguerre_direct(q, -n * std::log(T));
    CHECK(std::fabs(direct - lag) <= 1e-12 * std::fabs(lag));
    ++laguerre_checked;

    // sum over all 2^{r+s} subsets, which only enter through their size
    double sum = 0, binom = 1;
    for (int k = 0; k <= r + s; ++k) {
      sum += binom * vol_SI(r, s, n, k, T);
      binom = binom * (r + s - k) / (k + 1);
    }
    CHECK(std::fabs(direct - sum) <= 1e-12 * std::fabs(direct));
  }
  CHECK(laguerre_checked == 100);
}

TEST_CASE("Monte Carlo volume oracle") {
  struct Case {
    int r, s, n;
    double T;
  } cases[] = {{2, 0, 1, 5}, {0, 1, 1, 5}, {2, 0, 2, 3}};
  std::uint64_t seed = 12345;
  for (const Case& c : cases) {
    McEstimate mc = mc_volume_Z(c.r, c.s, c.n, c.T, 1000000, seed++);
    double exact = vol_Z(c.r, c.s, c.n, c.T);
    CHECK(std::fabs(mc.estimate - exact) <= 3 * mc.sigma);
  }
  // S_I region as well
  RegionSpec spec = two_real(Rat(5));
  McEstimate mc = mc_volume_SI(spec, 1000000, 99);
  CHECK(std::fabs(mc.estimate - vol_SI(spec)) <= 3 * mc.sigma);
}

TEST_CASE("partition cells") {
  // log T = 2 exactly: F = [-sqrt2, sqrt2] e_1, so cells {-2,-1,0,1}
  PartitionData P = build_partition(two_real(Rat(8)), Rat(2));
  REQUIRE(P.sigma_basis.size() == 1);
  CHECK(P.sigma_basis[0].v == std::vector<Rat>{Rat(1), Rat(-1)});
  CHECK(P.sigma_basis[0].c == 2);
  CHECK(P.delta == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
  CHECK(P.m_F == std::vector<std::vector<long>>{{-2}, {-1}, {0}, {1}});

  // T = 1: the fixed set degenerates to the origin
  PartitionData P1 = build_partition(two_real(Rat(1)));
  CHECK(P1.m_F == std::vector<std::vector<long>>{{0}});
  PartitionData P1e = build_partition(two_real(Rat(1)), Rat(0));
  CHECK(P1e.m_F == std::vector<std::vector<long>>{{0}});

  // cell count doubles when log T doubles (q' = 1)
  PartitionData P4 = build_partition(two_real(Rat(8)), Rat(4));
  PartitionData P8 = build_partition(two_real(Rat(8)), Rat(8));
  double ratio = double(P8.m_F.size()) / double(P4.m_F.size());
  CHECK(ratio > 2.0 * 0.8);
  CHECK(ratio < 2.0 * 1.2);
  CHECK(P4.m_F.size() <= 17);  // (2 ceil(2 log T) + 1)^{q'}
  CHECK(P8.m_F.size() <= 33);

  // q' = 0: the whole fixed set is a single cell
  PartitionData P0 = build_partition(two_real(Rat(8), {0}));
  CHECK(P0.m_F == std::vector<std::vector<long>>{{}});
  CHECK(P0.sigma_basis.empty());
  CHECK(P0.in_mF({}));

  // q' = 2
  RegionSpec three;
  three.r = 3;
  three.I = {0, 1, 2};
  three.T = Rat(8);
  PartitionData P2 = build_partition(three, Rat(2));
  CHECK(P2.in_mF({0, 0}));
  CHECK(P2.m_F.size() <= 81);
}

TEST_CASE("cell transforms") {
  PartitionData P = build_partition(two_real(Rat(8)), Rat(2));
  CellTransform c0 = cell_transform(P, {0});
  CHECK(c0.invariants_ok);
  for (const Interval& g : c0.gamma) {
    CHECK(g.contains(Rat(1)));
    CHECK(to_double(g.width()) < 1e-9);
  }

  CellTransform c1 = cell_transform(P, {1});
  CHECK(c1.invariants_ok);
  double g0 = to_double(c1.gamma[0].mid()), g1 = to_double(c1.gamma[1].mid());
  CHECK(g0 == doctest::Approx(std::exp(-1 / std::sqrt(2.0))).epsilon(1e-9));
  CHECK(g1 == doctest::Approx(std::exp(1 / std::sqrt(2.0))).epsilon(1e-9));
  CHECK(g0 * g1 == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS(cell_transform(P, {7}));
}

TEST_CASE("direct counts") {
  EuclideanLattice Z1 = integer_lattice(1);
  RegionSpec zline;
  zline.r = 1;
  zline.I = {0};
  zline.T = Rat(5);
  CHECK(count_SI_direct(Z1, zline) == 10);
  zline.T = Rat(1);
  CHECK(count_SI_direct(Z1, zline) == 2);
  zline.I = {};
  zline.T = Rat(5);
  CHECK(count_SI_direct(Z1, zline) == 1);  // only the origin

  NumberField K = quad_field(-2);
  EuclideanLattice L = minkowski_embed(K, maximal_order(K), 1);
  for (long T : {2L, 4L}) {
    for (const std::vector<int>& I :
         {std::vector<int>{0, 1}, std::vector<int>{0}, std::vector<int>{1}}) {
      RegionSpec spec = two_real(Rat(T), I);
      CHECK(count_SI_direct(L, spec) == sqrt2_oracle(T, I));
    }
  }

  // Gaussian integers, 1 <= |z|^2 <= 4
  NumberField Ki = quad_field(1);
  EuclideanLattice Li = minkowski_embed(Ki, maximal_order(Ki), 1);
  RegionSpec gs;
  gs.r = 0;
  gs.s = 1;
  gs.I = {0};
  gs.T = Rat(4);
  long long expect = 0;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) {
      long nrm = a * a + b * b;
      if (nrm >= 1 && nrm <= 4) ++expect;
    }
  CHECK(count_SI_direct(Li, gs) == expect);
}

TEST_CASE("partitioned count equals direct") {
  NumberField K = quad_field(-2);
  EuclideanLattice L = minkowski_embed(K, maximal_order(K), 1);
  for (long T : {2L, 4L, 8L, 16L}) {
    RegionSpec spec = two_real(Rat(T));
    PartitionData P = build_partition(spec);
    PartitionedCount pc = count_SI_partitioned(L, spec, P);
    CHECK(pc.total == count_SI_direct(L, spec));
    CHECK(pc.kappa_ok);
    CHECK(pc.disjoint_ok);
    long long sum = 0;
    for (const auto& [j, c] : pc.per_cell) {
      CHECK(P.in_mF(j));
      sum += c;
    }
    CHECK(sum == pc.total);
  }

  // T = 1: a single populated cell at the origin
  RegionSpec unit = two_real(Rat(1));
  PartitionData Pu = build_partition(unit, Rat(0));
  PartitionedCount pcu = count_SI_partitioned(L, unit, Pu);
  CHECK(pcu.total == count_SI_direct(L, unit));
  REQUIRE(pcu.per_cell.size() == 1);
  CHECK(pcu.per_cell[0].first == std::vector<long>{0});

  // n = 2
  EuclideanLattice L2 = minkowski_embed(K, maximal_order(K), 2);
  RegionSpec spec2 = two_real(Rat(2));
  spec2.n = 2;
  PartitionData P2 = build_partition(spec2);
  PartitionedCount pc2 = count_SI_partitioned(L2, spec2, P2);
  CHECK(pc2.total == count_SI_direct(L2, spec2));
  CHECK(pc2.kappa_ok);

  // q' = 2 over Z^3
  EuclideanLattice Z3 = integer_lattice(3);
  RegionSpec cube;
  cube.r = 3;
  cube.I = {0, 1, 2};
  cube.T = Rat(30);
  long long expect = 0;
  for (long a = 1; a <= 30; ++a)
    for (long b = 1; a * b <= 30; ++b)
      for (long c = 1; a * b * c <= 30; ++c) expect += 8;
  CHECK(count_SI_direct(Z3, cube) == expect);
  PartitionData P3 = build_partition(cube);
  PartitionedCount pc3 = count_SI_partitioned(Z3, cube, P3);
  CHECK(pc3.total == expect);
  CHECK(pc3.kappa_ok);
  CHECK(pc3.disjoint_ok);
}

TEST_CASE("S_F scaling") {
  // Fixed F, T = 3^{d'}: the dilation by 3 maps S_F(1) onto S_F(T) exactly
  Rat F_log(2);
  RegionSpec base = two_real(Rat(1));
  RegionSpec big = two_real(Rat(9));
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> numd(-8, 8), dend(1, 4);
  int decided = 0;
  for (int trial = 0; trial < 40; ++trial) {
    long n1 = numd(rng), n2 = numd(rng);
    if (n1 == 0 || n2 == 0) continue;
    Rat x(n1, dend(rng)), y(n2, dend(rng));
    QVec v{Quad(x), Quad(y)};
    QVec v3{Quad(3 * x), Quad(3 * y)};
    auto small = member_SF(v, base, F_log);
    auto large = member_SF(v3, big, F_log);
    if (small && large) {
      CHECK(*small == *large);
      ++decided;
    }
  }
  CHECK(decided >= 25);
}

TEST_CASE("the S_I partition Z") {
  NumberField K = quad_field(-2);
  EuclideanLattice L = minkowski_embed(K, maximal_order(K), 1);
  Rat T(4);
  CoordLayout lay = L.layout;
  std::vector<std::pair<Rat, Rat>> box(2, {-T, T});
  auto pts = enumerate_in_box(L, box);
  long long in_Z = 0;
  std::vector<std::vector<int>> subsets = {{}, {0}, {1}, {0, 1}};
  for (const auto& a : pts) {
    QVec v = L.vector_from_coords(a);
    int acceptors = 0;
    for (const auto& I : subsets)
      if (member_SI(v, two_real(T, I))) ++acceptors;
    if (member_Z(v, lay, T)) {
      ++in_Z;
      CHECK(acceptors == 1);
    } else {
      CHECK(acceptors == 0);
    }
  }
  long long total = 0;
  for (const auto& I : subsets)
    total += count_SI_direct(L, two_real(T, I));
  CHECK(total == in_Z);
}
