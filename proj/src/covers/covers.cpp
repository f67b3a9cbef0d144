#include "covers/covers.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "common/error.hpp"

namespace tcwb::covers {

namespace {

std::string show(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

// Number of k-subsets of an m-set, saturating at limit+1.
std::size_t binomial_capped(std::size_t m, std::size_t k, std::size_t limit) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  unsigned long long r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (m - k + i) / i;
    if (r > limit) return limit + 1;
  }
  return static_cast<std::size_t>(r);
}

std::vector<std::vector<bool>> membership(const SetSystem& s) {
  std::vector<std::vector<bool>> in(s.sets.size(), std::vector<bool>(s.ground, false));
  for (std::size_t k = 0; k < s.sets.size(); ++k)
    for (auto x : s.sets[k]) in[k][x] = true;
  return in;
}

}  // namespace

void SetSystem::validate() const {
  if (ground == 0) fail(ErrorCode::invalid_argument, "ground set must be nonempty");
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto& s = sets[k];
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= ground)
        fail(ErrorCode::invalid_argument, "set " + std::to_string(k) + " has element " + std::to_string(s[i]) +
                                              " outside ground of size " + std::to_string(ground));
      if (i > 0 && s[i - 1] >= s[i])
        fail(ErrorCode::invalid_argument, "set " + std::to_string(k) + " is not strictly increasing");
    }
  }
}

bool SetSystem::contains(std::size_t set, std::size_t element) const {
  const auto& s = sets.at(set);
  return std::binary_search(s.begin(), s.end(), element);
}

bool SetSystem::covers_ground() const {
  std::vector<bool> seen(ground, false);
  for (const auto& s : sets)
    for (auto x : s) seen[x] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

SetSystem SetSystem::parse(std::istream& in) {
  SetSystem out;
  bool have_ground = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    auto number = [&](const std::string& t) -> std::size_t {
      if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); }))
        fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": expected nonnegative integer, got '" + t + "'");
      try {
        return std::stoull(t);
      } catch (const std::exception&) {
        fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": integer out of range '" + t + "'");
      }
    };
    if (!have_ground) {
      if (toks.size() != 1) fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": expected ground size N");
      out.ground = number(toks[0]);
      have_ground = true;
      continue;
    }
    Set s;
    if (!(toks.size() == 1 && toks[0] == "-")) {
      for (const auto& t : toks) s.push_back(number(t));
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        fail(ErrorCode::parse, "line " + std::to_string(lineno) + ": repeated element");
    }
    out.sets.push_back(std::move(s));
  }
  if (!have_ground) fail(ErrorCode::parse, "missing ground size line");
  out.validate();
  return out;
}

SetSystem SetSystem::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

SetSystem SetSystem::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open set system '" + path + "'");
  return parse(in);
}

std::string SetSystem::to_text() const {
  std::ostringstream os;
  os << ground << '\n';
  for (const auto& s : sets) {
    if (s.empty()) os << '-';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << '\n';
  }
  return os.str();
}

KCoverCheck check_k_cover(const SetSystem& s, std::size_t k) {
  s.validate();
  const std::size_t m = s.sets.size();
  if (k == 0 || k > m)
    fail(ErrorCode::invalid_argument, "k must lie in 1.." + std::to_string(m) + ", got " + std::to_string(k));
  if (binomial_capped(m, k, kEnumerationGuard) > kEnumerationGuard)
    fail(ErrorCode::guard, "C(" + std::to_string(m) + "," + std::to_string(k) + ") subfamilies exceed the enumeration guard");
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<bool> hit(s.ground);
  while (true) {
    std::fill(hit.begin(), hit.end(), false);
    for (auto j : idx)
      for (auto x : s.sets[j]) hit[x] = true;
    for (std::size_t x = 0; x < s.ground; ++x)
      if (!hit[x]) return {false, idx, x};
    // next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {};
}

bool is_k_cover(const SetSystem& s, std::size_t k) { return check_k_cover(s, k).ok; }

std::optional<std::size_t> minimal_k(const SetSystem& s) {
  s.validate();
  const std::size_t m = s.sets.size();
  std::vector<std::size_t> mult(s.ground, 0);
  for (const auto& set : s.sets)
    for (auto x : set) ++mult[x];
  std::size_t worst = 0;
  for (auto c : mult) {
    if (c == 0) return std::nullopt;
    worst = std::max(worst, m - c);
  }
  return worst + 1;
}

Extension extend_to_k_cover(const SetSystem& c, std::size_t m) {
  c.validate();
  if (c.sets.empty()) fail(ErrorCode::invalid_argument, "cover has no sets");
  const std::size_t n = c.sets.size() - 1;
  if (m < n) fail(ErrorCode::invalid_argument, "m must be at least n = " + std::to_string(n));
  if (!c.covers_ground()) {
    std::vector<bool> seen(c.ground, false);
    for (const auto& s : c.sets)
      for (auto x : s) seen[x] = true;
    std::size_t x = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), false) - seen.begin());
    fail(ErrorCode::invalid_argument, "input does not cover the ground set: element " + std::to_string(x) + " is missed");
  }
  std::vector<Piece> partition;
  std::vector<bool> taken(c.ground, false);
  for (std::size_t i = 0; i <= n; ++i) {
    Piece p{i, {}};
    for (auto x : c.sets[i])
      if (!taken[x]) {
        taken[x] = true;
        p.elements.push_back(x);
      }
    if (!p.elements.empty()) partition.push_back(std::move(p));
  }
  Extension out;
  out.system = c;
  for (std::size_t i = 0; i <= n; ++i) out.pieces.push_back({Piece{i, c.sets[i]}});
  Set whole(c.ground);
  for (std::size_t x = 0; x < c.ground; ++x) whole[x] = x;
  for (std::size_t k = n + 1; k <= m; ++k) {
    out.system.sets.push_back(whole);
    out.pieces.push_back(partition);
  }
  return out;
}

std::size_t ProductSystem::ground_size() const {
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.ground != 0 && total > kEnumerationGuard * 16 / f.ground) return kEnumerationGuard * 16;
    total *= f.ground;
  }
  return total;
}

bool ProductSystem::contains(std::size_t k, const std::vector<std::size_t>& point) const {
  if (point.size() != factors.size()) fail(ErrorCode::invalid_argument, "point arity does not match the product");
  for (std::size_t j = 0; j < factors.size(); ++j)
    if (!factors[j].contains(k, point[j])) return false;
  return true;
}

std::optional<std::size_t> ProductSystem::first_cover(const std::vector<std::size_t>& point) const {
  for (std::size_t k = 0; k < set_count; ++k)
    if (contains(k, point)) return k;
  return std::nullopt;
}

std::vector<std::size_t> ProductSystem::unrank(std::size_t index) const {
  std::vector<std::size_t> p(factors.size());
  for (std::size_t j = factors.size(); j-- > 0;) {
    p[j] = index % factors[j].ground;
    index /= factors[j].ground;
  }
  return p;
}

std::optional<std::vector<std::size_t>> ProductSystem::uncovered() const {
  const std::size_t total = ground_size();
  if (total > kEnumerationGuard)
    fail(ErrorCode::guard, "product ground of size " + std::to_string(total) + " exceeds the enumeration guard");
  std::vector<std::vector<std::vector<bool>>> in;
  for (const auto& f : factors) in.push_back(membership(f));
  for (std::size_t i = 0; i < total; ++i) {
    auto p = unrank(i);
    bool covered = false;
    for (std::size_t k = 0; k < set_count && !covered; ++k) {
      bool all = true;
      for (std::size_t j = 0; j < factors.size() && all; ++j) all = in[j][k][p[j]];
      covered = all;
    }
    if (!covered) return p;
  }
  return std::nullopt;
}

namespace {

void require_k_cover(const SetSystem& s, std::size_t k, const std::string& name) {
  auto r = check_k_cover(s, k);
  if (!r.ok)
    fail(ErrorCode::verification, name + " is not a " + std::to_string(k) + "-cover: subfamily " + show(r.violating) +
                                      " misses element " + std::to_string(*r.missed));
}

}  // namespace

ProductSystem product_cover(const SetSystem& a, const SetSystem& b, std::size_t n, std::size_t m) {
  const std::size_t count = n + m + 1;
  if (a.sets.size() != count || b.sets.size() != count)
    fail(ErrorCode::verification, "both factors need n+m+1 = " + std::to_string(count) + " sets (got " +
                                      std::to_string(a.sets.size()) + " and " + std::to_string(b.sets.size()) + ")");
  require_k_cover(a, n + 1, "A");
  require_k_cover(b, m + 1, "B");
  ProductSystem p{{a, b}, count};
  if (auto miss = p.uncovered())
    fail(ErrorCode::verification, "product sets miss the pair " + show(*miss));
  return p;
}

SpotCertificate certify_pair(const ProductSystem& p, std::size_t x, std::size_t y) {
  if (p.factors.size() != 2) fail(ErrorCode::invalid_argument, "spot certificates are for binary products");
  const auto& a = p.factors[0];
  const auto& b = p.factors[1];
  if (x >= a.ground || y >= b.ground) fail(ErrorCode::invalid_argument, "pair outside the product ground");
  SpotCertificate c;
  c.point = {x, y};
  for (std::size_t k = 0; k < p.set_count; ++k)
    if (a.contains(k, x)) c.covering_x.push_back(k);
  for (auto k : c.covering_x)
    if (b.contains(k, y)) {
      c.witness = k;
      return c;
    }
  fail(ErrorCode::verification, "no witness index for pair " + show(c.point));
}

ProductSystem nary_product_cover(const std::vector<SetSystem>& systems, const std::vector<std::size_t>& strengths) {
  if (systems.empty()) fail(ErrorCode::invalid_argument, "need at least one factor");
  if (systems.size() != strengths.size()) fail(ErrorCode::invalid_argument, "one strength per factor required");
  std::size_t count = 1;
  for (auto k : strengths) {
    if (k == 0) fail(ErrorCode::invalid_argument, "strengths must be positive");
    count += k - 1;
  }
  for (std::size_t j = 0; j < systems.size(); ++j) {
    if (systems[j].sets.size() != count)
      fail(ErrorCode::verification, "factor " + std::to_string(j) + " needs " + std::to_string(count) + " sets");
    require_k_cover(systems[j], strengths[j], "factor " + std::to_string(j));
  }
  ProductSystem p{systems, count};
  if (auto miss = p.uncovered())
    fail(ErrorCode::verification, "generalised product fails to cover " + show(*miss));
  return p;
}

}  // namespace tcwb::covers
