#include "symsq/symsq.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "common/error.hpp"

namespace tcwb::symsq {

namespace {

// Roots of A z^2 - B z + C = 0 with A != 0, sign-matched branch.
std::pair<cplx, cplx> stable_roots(cplx A, cplx B, cplx C) {
  const cplx sq = std::sqrt(B * B - 4.0 * A * C);
  const cplx q = std::abs(B + sq) >= std::abs(B - sq) ? (B + sq) / 2.0 : (B - sq) / 2.0;
  if (q == cplx(0)) return {0.0, 0.0};
  return {q / A, C / q};
}

std::array<double, 3> slerp(const std::array<double, 3>& a, const std::array<double, 3>& b, double tau) {
  double chord = 0;
  for (int i = 0; i < 3; ++i) chord += (a[i] - b[i]) * (a[i] - b[i]);
  const double theta = 2 * std::asin(std::min(1.0, std::sqrt(chord) / 2));
  std::array<double, 3> out{};
  if (theta < 1e-12) {
    for (int i = 0; i < 3; ++i) out[i] = (1 - tau) * a[i] + tau * b[i];
  } else {
    const double wa = std::sin((1 - tau) * theta) / std::sin(theta);
    const double wb = std::sin(tau * theta) / std::sin(theta);
    for (int i = 0; i < 3; ++i) out[i] = wa * a[i] + wb * b[i];
  }
  double n = std::sqrt(out[0] * out[0] + out[1] * out[1] + out[2] * out[2]);
  for (auto& v : out) v /= n;
  return out;
}

UnorderedPair scale_pair(const UnorderedPair& p, double s) {
  return UnorderedPair::of(SpherePoint::at(s * p.first.z), SpherePoint::at(s * p.second.z));
}

cplx random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

}  // namespace

ProjPoint ProjPoint::canonical() const {
  double big = 0;
  for (const auto& z : v) big = std::max(big, std::abs(z));
  if (!(big > 0) || !std::isfinite(big)) fail(ErrorCode::invalid_argument, "projective point needs a nonzero finite coordinate");
  std::array<cplx, 3> w;
  double n = 0;
  for (int i = 0; i < 3; ++i) {
    w[i] = v[i] / big;
    n += std::norm(w[i]);
  }
  n = std::sqrt(n);
  ProjPoint out;
  std::size_t pivot = 0;
  while (w[pivot] == cplx(0)) ++pivot;
  const cplx phase = std::conj(w[pivot]) / std::abs(w[pivot]);
  for (int i = 0; i < 3; ++i) out.v[i] = w[i] * phase / n;
  out.v[pivot] = std::abs(w[pivot]) / n;
  return out;
}

ProjPoint make_point(cplx a, cplx b, cplx c) { return ProjPoint{{a, b, c}}.canonical(); }

double distance(const ProjPoint& p, const ProjPoint& q) {
  const ProjPoint a = p.canonical(), b = q.canonical();
  cplx inner = 0;
  for (int i = 0; i < 3; ++i) inner += std::conj(a.v[i]) * b.v[i];
  const double m = std::min(1.0, std::abs(inner));
  // 1 - m^2 loses precision near 1; the phase-aligned difference does not.
  const cplx phase = std::abs(inner) > 0 ? inner / std::abs(inner) : cplx(1);
  double diff = 0;
  for (int i = 0; i < 3; ++i) diff += std::norm(a.v[i] * phase - b.v[i]);
  return std::min(std::sqrt(std::max(0.0, 1 - m * m)), std::sqrt(diff));
}

std::array<double, 3> SpherePoint::chart() const {
  if (infinite) return {0.0, 0.0, 1.0};
  const double r = std::abs(z);
  if (r <= 1) {
    const double d = 1 + r * r;
    return {2 * z.real() / d, 2 * z.imag() / d, (r * r - 1) / d};
  }
  const cplx u = 1.0 / z;
  const double s = std::abs(u);
  const double d = 1 + s * s;
  return {2 * u.real() / d, -2 * u.imag() / d, (1 - s * s) / d};
}

SpherePoint SpherePoint::from_chart(const std::array<double, 3>& x) {
  if (x[2] >= 1) return inf();
  if (x[2] <= 0) return at(cplx(x[0], x[1]) / (1 - x[2]));
  const cplx den(x[0], -x[1]);
  if (den == cplx(0)) return inf();
  return at((1 + x[2]) / den);
}

double chordal(const SpherePoint& p, const SpherePoint& q) {
  const auto a = p.chart(), b = q.chart();
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

UnorderedPair UnorderedPair::of(const SpherePoint& p, const SpherePoint& q) {
  if (q.chart() < p.chart()) return {q, p};
  return {p, q};
}

double distance(const UnorderedPair& p, const UnorderedPair& q) {
  const double straight = std::max(chordal(p.first, q.first), chordal(p.second, q.second));
  const double crossed = std::max(chordal(p.first, q.second), chordal(p.second, q.first));
  return std::min(straight, crossed);
}

UnorderedPair roots(const ProjPoint& input) {
  const ProjPoint p = input.canonical();
  const cplx a = p.v[0], b = p.v[1], c = p.v[2];
  if (std::abs(c) >= std::abs(a)) {
    if (c == cplx(0)) return UnorderedPair::of(SpherePoint::at(0), SpherePoint::inf());
    auto [w1, w2] = stable_roots(c, b, a);
    return UnorderedPair::of(SpherePoint::at(w1), SpherePoint::at(w2));
  }
  // Reciprocal equation a u^2 - b u + c = 0 in u = 1/w.
  auto [u1, u2] = stable_roots(a, b, c);
  auto inv = [](cplx u) { return u == cplx(0) ? SpherePoint::inf() : SpherePoint::at(1.0 / u); };
  return UnorderedPair::of(inv(u1), inv(u2));
}

ProjPoint quadratic_from_pair(const UnorderedPair& pair) {
  auto linear = [](const SpherePoint& p) -> std::pair<cplx, cplx> {
    if (p.infinite) return {1.0, 0.0};
    if (std::abs(p.z) <= 1) return {p.z, 1.0};
    return {1.0, 1.0 / p.z};
  };
  const auto [a1, b1] = linear(pair.first);
  const auto [a2, b2] = linear(pair.second);
  return make_point(a1 * a2, a1 * b2 + a2 * b1, b1 * b2);
}

ProjPoint conjugate(const ProjPoint& p) {
  const ProjPoint c = p.canonical();
  return ProjPoint{{std::conj(c.v[0]), std::conj(c.v[1]), std::conj(c.v[2])}}.canonical();
}

OrbitPoint OrbitPoint::of(const UnorderedPair& p) {
  const UnorderedPair q = p.conj();
  auto key = [](const UnorderedPair& x) { return std::make_pair(x.first.chart(), x.second.chart()); };
  return {key(q) < key(p) ? q : p};
}

Classification classify(const OrbitPoint& o) {
  const auto& [p, q] = o.rep;
  if (!p.infinite && !q.infinite) return {Chart::U, {}};
  const SpherePoint other = p.infinite ? q : p;
  if (other.infinite) return {Chart::F, SpherePoint::inf()};
  cplx z = other.z;
  if (z.imag() < 0) z = std::conj(z);
  return {Chart::F, SpherePoint::at(z)};
}

bool in_v(const OrbitPoint& o) {
  const auto inf = SpherePoint::inf();
  return std::min(chordal(o.rep.first, inf), chordal(o.rep.second, inf)) < kNeighbourhood;
}

OrbitPoint designated_point(Chart chart) {
  if (chart == Chart::U) return OrbitPoint::of(UnorderedPair::of(SpherePoint::at(0), SpherePoint::at(0)));
  return OrbitPoint::of(UnorderedPair::of(SpherePoint::inf(), SpherePoint::at({0, 1})));
}

OrbitPoint contract_chart(const OrbitPoint& o, Chart chart, double t) {
  if (t < 0 || t > 1) fail(ErrorCode::invalid_argument, "contraction time outside [0,1]");
  if (chart == Chart::U) {
    if (classify(o).chart != Chart::U) fail(ErrorCode::invalid_argument, "orbit has an infinite member; not in U");
    return OrbitPoint::of(scale_pair(o.rep, 1 - t));
  }
  if (!in_v(o)) fail(ErrorCode::invalid_argument, "orbit is not within the V margin of F");
  const ProjPoint p = quadratic_from_pair(o.rep);
  if (t <= 0.5) {
    const double s = 1 - 2 * t;
    return OrbitPoint::of(roots(ProjPoint{{p.v[0], p.v[1], s * p.v[2]}}));
  }
  const auto start = classify(OrbitPoint::of(roots(ProjPoint{{p.v[0], p.v[1], 0.0}}))).f_coordinate;
  const auto moved = SpherePoint::from_chart(slerp(start.chart(), SpherePoint::at({0, 1}).chart(), 2 * t - 1));
  return OrbitPoint::of(UnorderedPair::of(SpherePoint::inf(), moved));
}

bool SymsqReport::passed() const {
  return roundtrip_err < 1e-8 && pair_roundtrip_err < 1e-8 && degenerate_err < 1e-6 && equivariance_err < 1e-10 &&
         involution_err < 1e-12 && fixed_mismatches == 0 && unclassified == 0 && in_u + in_f == samples &&
         contraction_start_err < 1e-9 && contraction_end_err < 1e-9 && contraction_equivariance_err < 1e-10;
}

std::string SymsqReport::to_json() const {
  nlohmann::json j = {{"samples", samples},
                      {"seed", seed},
                      {"roundtrip_err", roundtrip_err},
                      {"pair_roundtrip_err", pair_roundtrip_err},
                      {"degenerate_err", degenerate_err},
                      {"degenerate_cases", degenerate_cases},
                      {"equivariance_err", equivariance_err},
                      {"involution_err", involution_err},
                      {"fixed_mismatches", fixed_mismatches},
                      {"charts", {{"U", in_u}, {"F", in_f}, {"V", in_v}, {"unclassified", unclassified}, {"U_and_V", overlap}}},
                      {"contraction_start_err", contraction_start_err},
                      {"contraction_end_err", contraction_end_err},
                      {"contraction_equivariance_err", contraction_equivariance_err},
                      {"neighbourhood", kNeighbourhood},
                      {"passed", passed()}};
  return j.dump(2);
}

SymsqReport verify_symsq(std::size_t samples, std::uint64_t seed) {
  SymsqReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> g;
  for (std::size_t i = 0; i < samples; ++i) {
    ProjPoint p;
    const int k = kind(rng);
    if (k == 0) {
      p = make_point(g(rng), g(rng), g(rng));  // real locus
    } else if (k == 1) {
      p = make_point(random_complex(rng), random_complex(rng), 0.0);  // an infinite root
    } else if (k == 2) {
      p = make_point(random_complex(rng), random_complex(rng), 1e-3 * random_complex(rng));  // near F
    } else {
      p = make_point(random_complex(rng), random_complex(rng), random_complex(rng));
    }
    ++rep.samples;
    const UnorderedPair r = roots(p);
    rep.roundtrip_err = std::max(rep.roundtrip_err, distance(quadratic_from_pair(r), p));
    rep.equivariance_err = std::max(rep.equivariance_err, distance(roots(conjugate(p)), r.conj()));
    const ProjPoint cc = conjugate(conjugate(p));
    for (int c = 0; c < 3; ++c) rep.involution_err = std::max(rep.involution_err, std::abs(cc.v[c] - p.v[c]));
    const bool real_locus = distance(conjugate(p), p) < 1e-9;
    const bool fixed_pair = distance(r.conj(), r) < 1e-7;
    if (real_locus != fixed_pair) ++rep.fixed_mismatches;

    const OrbitPoint o = OrbitPoint::of(r);
    const auto cls = classify(o);
    if (cls.chart == Chart::U) ++rep.in_u; else ++rep.in_f;
    const bool v = in_v(o);
    if (v) ++rep.in_v;
    if (cls.chart == Chart::U && v) ++rep.overlap;
    if (cls.chart == Chart::U) {
      rep.contraction_start_err = std::max(rep.contraction_start_err, distance(contract_chart(o, Chart::U, 0).rep, o.rep));
      rep.contraction_end_err = std::max(rep.contraction_end_err,
                                         distance(contract_chart(o, Chart::U, 1).rep, designated_point(Chart::U).rep));
      for (double t : {0.25, 0.5, 0.75})
        rep.contraction_equivariance_err = std::max(
            rep.contraction_equivariance_err, distance(scale_pair(r.conj(), 1 - t), scale_pair(r, 1 - t).conj()));
    }
    if (v) {
      rep.contraction_start_err = std::max(rep.contraction_start_err, distance(contract_chart(o, Chart::F, 0).rep, o.rep));
      rep.contraction_end_err = std::max(rep.contraction_end_err,
                                         distance(contract_chart(o, Chart::F, 1).rep, designated_point(Chart::F).rep));
      const double gap =
          distance(contract_chart(o, Chart::F, 0.5).rep, contract_chart(o, Chart::F, std::nextafter(0.5, 1.0)).rep);
      rep.contraction_start_err = std::max(rep.contraction_start_err, gap > 1e-6 ? gap : 0.0);
    }

    // Pair-side round trip on random pairs, sometimes with infinity.
    const SpherePoint s1 = k == 3 ? SpherePoint::inf() : SpherePoint::at(random_complex(rng));
    const SpherePoint s2 = SpherePoint::at(random_complex(rng) * std::exp(4 * g(rng)));
    const UnorderedPair pr = UnorderedPair::of(s1, s2);
    rep.pair_roundtrip_err = std::max(rep.pair_roundtrip_err, distance(roots(quadratic_from_pair(pr)), pr));
  }

  // Degenerate battery.
  std::vector<ProjPoint> points = {make_point(1, 0, 0),       make_point(0, 1, 0),      make_point(0, 0, 1),
                                   make_point(1, 0, 1),       make_point(1, 2, 1),      make_point(0, 1, 1),
                                   make_point(1, 1, 0),       make_point(1e-12, 1, 1),  make_point(1, 1, 1e-12),
                                   make_point(1e8, 1, 1e-8),  make_point(1, 1e-10, 1),  make_point(1e-300, 1, 1e300),
                                   make_point(0, 1e-20, 1),   make_point(cplx(0, 1), 0, 1)};
  std::vector<UnorderedPair> pairs = {
      UnorderedPair::of(SpherePoint::inf(), SpherePoint::inf()), UnorderedPair::of(SpherePoint::at(0), SpherePoint::at(0)),
      UnorderedPair::of(SpherePoint::at(0), SpherePoint::inf()),
      UnorderedPair::of(SpherePoint::at(1e-9), SpherePoint::at(1e9))};
  for (int i = 0; i < 50; ++i) {
    const cplx w = random_complex(rng) * std::exp(3 * g(rng));
    pairs.push_back(UnorderedPair::of(SpherePoint::at(w), SpherePoint::at(w)));
    points.push_back(make_point(0, random_complex(rng), random_complex(rng)));
    points.push_back(make_point(random_complex(rng), random_complex(rng), 0));
    points.push_back(make_point(1, -2.0 * w, w * w));
  }
  for (const auto& p : points) {
    ++rep.degenerate_cases;
    rep.degenerate_err = std::max(rep.degenerate_err, distance(quadratic_from_pair(roots(p)), p));
  }
  for (const auto& pr : pairs) {
    ++rep.degenerate_cases;
    rep.degenerate_err = std::max(rep.degenerate_err, distance(roots(quadratic_from_pair(pr)), pr));
  }
  return rep;
}

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto bad = [&]() -> cplx { fail(ErrorCode::parse, "cannot parse complex number '" + raw + "'"); };
  if (s.empty()) bad();
  auto number = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      bad();
    }
    if (used != t.size()) bad();
    return v;
  };
  if (s.back() != 'i') return {number(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  if (split == std::string::npos) {
    if (s.empty() || s == "+" || s == "-") return {0.0, number(s)};
    return {0.0, number(s)};
  }
  const std::string re = s.substr(0, split);
  if (re.empty()) bad();
  std::size_t used = 0;
  try {
    std::stod(re, &used);
  } catch (const std::exception&) {
    bad();
  }
  if (used != re.size()) bad();
  return {number(re), number(s.substr(split))};
}

SpherePoint parse_sphere_point(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return SpherePoint::inf();
  return SpherePoint::at(parse_complex(text));
}

std::string format(const SpherePoint& p) {
  if (p.infinite) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << p.z.real() << (p.z.imag() < 0 || std::signbit(p.z.imag()) ? "-" : "+") << std::abs(p.z.imag()) << "i";
  return os.str();
}

std::string format(const ProjPoint& p) {
  std::ostringstream os;
  os << "[" << format(SpherePoint::at(p.v[0])) << " : " << format(SpherePoint::at(p.v[1])) << " : "
     << format(SpherePoint::at(p.v[2])) << "]";
  return os.str();
}

}  // namespace tcwb::symsq
