#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace tcwb::symsq {

using cplx = std::complex<double>;

inline constexpr double kEps = 1e-9;
inline constexpr double kNeighbourhood = 0.05;  // chordal margin of the V chart around F

// Point [a:b:c] of CP^2, the quadratic a x^2 + b xy + c y^2.
struct ProjPoint {
  std::array<cplx, 3> v{};

  // Unit norm, first nonzero coordinate real positive. Throws on all-zero.
  ProjPoint canonical() const;
};

ProjPoint make_point(cplx a, cplx b, cplx c);
// sqrt(1 - |<p,q>|^2) on unit representatives; zero iff equal.
double distance(const ProjPoint& p, const ProjPoint& q);

// Riemann sphere point: finite z or infinity.
struct SpherePoint {
  bool infinite = false;
  cplx z{};

  static SpherePoint at(cplx z) { return {false, z}; }
  static SpherePoint inf() { return {true, {}}; }
  std::array<double, 3> chart() const;  // stereographic, infinity -> (0,0,1)
  static SpherePoint from_chart(const std::array<double, 3>& x);
  SpherePoint conj() const { return infinite ? *this : at(std::conj(z)); }
};

double chordal(const SpherePoint& p, const SpherePoint& q);

// Canonical unordered pair: members ordered lexicographically in the chart.
struct UnorderedPair {
  SpherePoint first, second;
  static UnorderedPair of(const SpherePoint& p, const SpherePoint& q);
  UnorderedPair conj() const { return of(first.conj(), second.conj()); }
};

// Max chordal error under the better of the two matchings.
double distance(const UnorderedPair& p, const UnorderedPair& q);

// Roots w = a_i/b_i of a factorisation (a_1 x + b_1 y)(a_2 x + b_2 y), i.e.
// the roots of c w^2 - b w + a with z/0 = infinity.
UnorderedPair roots(const ProjPoint& p);
ProjPoint quadratic_from_pair(const UnorderedPair& pair);

ProjPoint conjugate(const ProjPoint& p);

// Canonical representative of {P, conj P}.
struct OrbitPoint {
  UnorderedPair rep;
  static OrbitPoint of(const UnorderedPair& p);
};

enum class Chart { U, F };

struct Classification {
  Chart chart = Chart::U;
  // F: the finite member reflected to Im >= 0, or infinity.
  SpherePoint f_coordinate;
};

Classification classify(const OrbitPoint& o);
// Within chordal kNeighbourhood of F.
bool in_v(const OrbitPoint& o);

// U: both roots scaled by (1 - t), ending at {0,0}. V: first half sends c to
// 0, second half moves the F coordinate to i along a great circle, ending at
// {inf, i}. Throws Error(invalid_argument) outside the chart.
OrbitPoint contract_chart(const OrbitPoint& o, Chart chart, double t);
OrbitPoint designated_point(Chart chart);

struct SymsqReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double roundtrip_err = 0;        // p -> roots -> quadratic, random points
  double pair_roundtrip_err = 0;   // pair -> quadratic -> roots, random pairs
  double degenerate_err = 0;       // battery
  std::size_t degenerate_cases = 0;
  double equivariance_err = 0;
  double involution_err = 0;
  std::size_t fixed_mismatches = 0;  // fixed orbits vs the real locus
  std::size_t in_u = 0, in_f = 0, in_v = 0, unclassified = 0, overlap = 0;
  double contraction_start_err = 0;
  double contraction_end_err = 0;
  double contraction_equivariance_err = 0;

  bool passed() const;
  std::string to_json() const;
};

SymsqReport verify_symsq(std::size_t samples, std::uint64_t seed);

// "a+bi", "-2.5i", "3", "i", or "inf".
SpherePoint parse_sphere_point(const std::string& text);
cplx parse_complex(const std::string& text);
std::string format(const SpherePoint& p);
std::string format(const ProjPoint& p);

}  // namespace tcwb::symsq
